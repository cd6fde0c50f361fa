//! Relative monads in compact form: an object assignment, a unit family and
//! an extension operator, all checked against the base tables.

pub mod adjunction;
pub mod loose;
pub mod monoid;

use std::sync::Arc;

use crate::enriched::{hom_dist, loose_identity, same_fun, tuple_at, tuple_count, Cat, EnrichedFunctor, Form, Frame, Fun};
use crate::error::{Budget, Error, Result, ValidationReport};
use crate::vkernel::{mor_eq, Base, Mor};

pub use adjunction::*;
pub use loose::*;
pub use monoid::*;

#[derive(Debug, Clone)]
pub struct RelativeMonad {
    pub name: String,
    pub j: Fun,
    pub obj_map: Vec<usize>,
    /// `unit[x] : I -> E(jx, tx)`.
    pub unit: Vec<Mor>,
    /// `ext[x*n + y] : E(jx, ty) -> E(tx, ty)`.
    pub ext: Vec<Mor>,
}

pub type Monad = Arc<RelativeMonad>;

impl PartialEq for RelativeMonad {
    fn eq(&self, o: &Self) -> bool {
        same_fun(&self.j, &o.j) && self.obj_map == o.obj_map && self.unit == o.unit && self.ext == o.ext
    }
}

impl RelativeMonad {
    pub fn e(&self) -> &Cat {
        &self.j.cod
    }

    pub fn a(&self) -> &Cat {
        &self.j.dom
    }

    pub fn base(&self) -> &Base {
        &self.j.dom.base
    }

    pub fn t(&self, x: usize) -> usize {
        self.obj_map[x]
    }

    pub fn eta(&self, x: usize) -> &Mor {
        &self.unit[x]
    }

    pub fn dag(&self, x: usize, y: usize) -> &Mor {
        &self.ext[x * self.a().n() + y]
    }

    /// Over the Boolean base a monad is determined by its object map.
    pub fn bool_from_objects(name: &str, j: &Fun, obj_map: Vec<usize>) -> RelativeMonad {
        let e = j.cod.clone();
        let n = j.dom.n();
        let unit = (0..n).map(|x| Mor::new(1, e.hom(j.ob(x), obj_map[x]), vec![])).collect();
        let ext = (0..n * n)
            .map(|k| {
                let (x, y) = (k / n, k % n);
                Mor::new(e.hom(j.ob(x), obj_map[y]), e.hom(obj_map[x], obj_map[y]), vec![])
            })
            .collect();
        RelativeMonad { name: name.into(), j: j.clone(), obj_map, unit, ext }
    }

    /// The trivial monad: `t = j`, unit the identities, extension the identity.
    pub fn trivial(j: &Fun) -> RelativeMonad {
        let e = j.cod.clone();
        let v = e.base.clone();
        let n = j.dom.n();
        RelativeMonad {
            name: format!("triv({})", j.name),
            j: j.clone(),
            obj_map: j.obj_map.clone(),
            unit: (0..n).map(|x| e.ident(j.ob(x)).clone()).collect(),
            ext: (0..n * n).map(|k| v.identity(e.hom(j.ob(k / n), j.ob(k % n)))).collect(),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new(format!("monad {}", self.name));
        let (e, v) = (self.e().clone(), self.base().clone());
        let n = self.a().n();
        let j = &self.j;
        if self.obj_map.len() != n || self.unit.len() != n || self.ext.len() != n * n || self.obj_map.iter().any(|&t| t >= e.n()) {
            rep.push("well_typed", &[], "ragged or out-of-range tables");
            return rep;
        }
        for x in 0..n {
            let m = self.eta(x);
            if v.check_mor(m).is_err() || m.dom != v.unit() || m.cod != e.hom(j.ob(x), self.t(x)) {
                rep.push("well_typed.unit", &[x], format!("no unit I -> E(j{x}, t{x})"));
            }
            for y in 0..n {
                let m = self.dag(x, y);
                if v.check_mor(m).is_err() || m.dom != e.hom(j.ob(x), self.t(y)) || m.cod != e.hom(self.t(x), self.t(y)) {
                    rep.push("well_typed.ext", &[x, y], format!("extension E(j{x}, t{y}) -> E(t{x}, t{y}) is ill-typed"));
                }
            }
        }
        if !rep.is_ok() {
            return rep;
        }
        for x in 0..n {
            for y in 0..n {
                let (jx, tx, ty) = (j.ob(x), self.t(x), self.t(y));
                let lhs = v
                    .tensor_mor(self.eta(x), &v.identity(e.hom(tx, ty)))
                    .and_then(|m| v.compose(self.dag(x, y), &m))
                    .and_then(|m| v.compose(&m, e.comp(jx, tx, ty)));
                if !mor_eq(&lhs, &Ok(v.identity(e.hom(jx, ty)))) {
                    rep.push("extension_unit", &[x, y], "dag ; (eta (x) 1) ; comp != 1");
                }
            }
            let lhs = v.compose(self.eta(x), self.dag(x, x));
            if !mor_eq(&lhs, &Ok(e.ident(self.t(x)).clone())) {
                rep.push("unit_extension", &[x], "eta ; dag != identity of tx");
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (jx, tx, ty, tz) = (j.ob(x), self.t(x), self.t(y), self.t(z));
                    let lhs = v.tensor_mor(self.dag(x, y), self.dag(y, z)).and_then(|m| v.compose(&m, e.comp(tx, ty, tz)));
                    let rhs = v
                        .tensor_mor(&v.identity(e.hom(jx, ty)), self.dag(y, z))
                        .and_then(|m| v.compose(&m, e.comp(jx, ty, tz)))
                        .and_then(|m| v.compose(&m, self.dag(x, z)));
                    if !mor_eq(&lhs, &rhs) {
                        rep.push("extension_associativity", &[x, y, z], "(dag (x) dag) ; comp != (1 (x) dag) ; comp ; dag");
                    }
                }
            }
        }
        rep
    }

    /// `t_{x,y} = j_{x,y} ; (1 (x) eta_y) ; comp ; dag_{x,y}`.
    pub fn underlying_functor(&self) -> Result<Fun> {
        let (e, v) = (self.e().clone(), self.base().clone());
        let a = self.a().clone();
        let n = a.n();
        let j = &self.j;
        let mut hom_map = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let m = v.tensor_mor(j.map(x, y), self.eta(y))?;
                let m = v.compose(&m, e.comp(j.ob(x), j.ob(y), self.t(y)))?;
                hom_map.push(v.compose(&m, self.dag(x, y))?);
            }
        }
        Ok(Arc::new(EnrichedFunctor {
            name: format!("u({})", self.name),
            dom: a,
            cod: e,
            obj_map: self.obj_map.clone(),
            hom_map,
        }))
    }

    /// The unit as a nullary form `j => t` into `E(1,1)`.
    pub fn unit_form(&self, t: &Fun) -> Result<Form> {
        let frame = Frame::nullary(self.j.clone(), t.clone(), loose_identity(self.e()))?;
        Form::tabulate("eta", frame, |x| Ok(self.eta(x[0]).clone()))
    }

    /// The extension operator as a form `E(j, t) => E(t, t)`.
    pub fn ext_form(&self, t: &Fun) -> Result<Form> {
        let frame = Frame::plain(vec![hom_dist(&self.j, t)?], hom_dist(t, t)?)?;
        Form::tabulate("dag", frame, |x| Ok(self.dag(x[0], x[1]).clone()))
    }

    /// Every functor with the object map of `t` for which the unit and the
    /// extension are natural; the compact form is sound when this is exactly
    /// the derived functor.
    pub fn underlying_functor_candidates(&self, budget: Budget) -> Result<Vec<Fun>> {
        let (e, v) = (self.e().clone(), self.base().clone());
        let a = self.a().clone();
        let n = a.n();
        let mut cands: Vec<Vec<Mor>> = vec![];
        let mut space: u128 = 1;
        for x in 0..n {
            for y in 0..n {
                let (d, c) = (a.hom(x, y), e.hom(self.t(x), self.t(y)));
                space = space.saturating_mul(v.hom_count(d, c));
                budget.check(space)?;
                cands.push(v.hom_iter(d, c).collect());
            }
        }
        let sizes: Vec<usize> = cands.iter().map(|c| c.len()).collect();
        let mut out = vec![];
        for k in 0..tuple_count(&sizes) {
            let pick = tuple_at(&sizes, k);
            let t = Arc::new(EnrichedFunctor {
                name: format!("cand({})", self.name),
                dom: a.clone(),
                cod: e.clone(),
                obj_map: self.obj_map.clone(),
                hom_map: pick.iter().enumerate().map(|(i, &c)| cands[i][c].clone()).collect(),
            });
            if t.validate().is_ok()
                && self.unit_form(&t)?.validate().is_ok()
                && self.ext_form(&t)?.validate().is_ok()
            {
                out.push(t);
            }
        }
        Ok(out)
    }
}

/// `tau_x : I -> E(tx, t'x)` between monads on a common root.
#[derive(Debug, Clone, PartialEq)]
pub struct MonadMorphism {
    pub name: String,
    pub comps: Vec<Mor>,
}

impl MonadMorphism {
    pub fn identity(t: &RelativeMonad) -> MonadMorphism {
        MonadMorphism {
            name: format!("1_{}", t.name),
            comps: (0..t.a().n()).map(|x| t.e().ident(t.t(x)).clone()).collect(),
        }
    }

    /// The unit of `t` as a morphism out of the trivial monad.
    pub fn from_trivial(t: &RelativeMonad) -> MonadMorphism {
        MonadMorphism { name: format!("eta_{}", t.name), comps: t.unit.clone() }
    }

    pub fn validate(&self, src: &RelativeMonad, tgt: &RelativeMonad) -> ValidationReport {
        let mut rep = ValidationReport::new(format!("monad morphism {}", self.name));
        if !same_fun(&src.j, &tgt.j) {
            rep.push("well_typed", &[], "monads over different roots");
            return rep;
        }
        let (e, v) = (src.e().clone(), src.base().clone());
        let n = src.a().n();
        let j = &src.j;
        if self.comps.len() != n {
            rep.push("well_typed", &[], "wrong number of components");
            return rep;
        }
        for x in 0..n {
            let m = &self.comps[x];
            if v.check_mor(m).is_err() || m.dom != v.unit() || m.cod != e.hom(src.t(x), tgt.t(x)) {
                rep.push("well_typed", &[x], "component is not I -> E(tx, t'x)");
            }
        }
        if !rep.is_ok() {
            return rep;
        }
        for x in 0..n {
            let lhs = v.tensor_mor(src.eta(x), &self.comps[x]).and_then(|m| v.compose(&m, e.comp(j.ob(x), src.t(x), tgt.t(x))));
            if !mor_eq(&lhs, &Ok(tgt.eta(x).clone())) {
                rep.push("morphism_unit", &[x], "(eta (x) tau) ; comp != eta'");
            }
            for y in 0..n {
                let (jx, tx, ty, tx2, ty2) = (j.ob(x), src.t(x), src.t(y), tgt.t(x), tgt.t(y));
                let lhs = v
                    .tensor_mor(&v.identity(e.hom(tx, ty)), &self.comps[y])
                    .and_then(|m| v.compose(src.dag(x, y), &m))
                    .and_then(|m| v.compose(&m, e.comp(tx, ty, ty2)));
                let rhs = v
                    .tensor_mor(&v.identity(e.hom(jx, ty)), &self.comps[y])
                    .and_then(|m| v.compose(&m, e.comp(jx, ty, ty2)))
                    .and_then(|m| v.compose(&m, tgt.dag(x, y)))
                    .and_then(|m| v.tensor_mor(&self.comps[x], &v.identity(e.hom(tx2, ty2))).and_then(|t| v.compose(&m, &t)))
                    .and_then(|m| v.compose(&m, e.comp(tx, tx2, ty2)));
                if !mor_eq(&lhs, &rhs) {
                    rep.push("morphism_extension", &[x, y], "extension not preserved");
                }
            }
        }
        rep
    }
}

/// Every monad on `j` whose object map passes `keep`, by a pruned scan over
/// object maps, unit families and extension families.
pub fn enumerate_monads(j: &Fun, keep: impl Fn(&[usize]) -> bool, budget: Budget) -> Result<Vec<RelativeMonad>> {
    let (a, e) = (j.dom.clone(), j.cod.clone());
    let v = e.base.clone();
    let n = a.n();
    let mut out = vec![];
    let mut spent: u128 = 0;
    for k in 0..tuple_count(&vec![e.n(); n]) {
        let obj_map = tuple_at(&vec![e.n(); n], k);
        if !keep(&obj_map) {
            continue;
        }
        let unit_c: Vec<Vec<Mor>> = (0..n).map(|x| v.hom_iter(v.unit(), e.hom(j.ob(x), obj_map[x])).collect()).collect();
        let ext_c: Vec<Vec<Mor>> = (0..n * n)
            .map(|k| {
                let (x, y) = (k / n, k % n);
                v.hom_iter(e.hom(j.ob(x), obj_map[y]), e.hom(obj_map[x], obj_map[y])).collect()
            })
            .collect();
        let space = unit_c.iter().chain(&ext_c).fold(1u128, |s, c| s.saturating_mul(c.len() as u128));
        spent = spent.saturating_add(space);
        budget.check(spent)?;
        if space == 0 {
            continue;
        }
        let usizes: Vec<usize> = unit_c.iter().map(|c| c.len()).collect();
        for uk in 0..tuple_count(&usizes) {
            let upick = tuple_at(&usizes, uk);
            let unit: Vec<Mor> = upick.iter().enumerate().map(|(x, &i)| unit_c[x][i].clone()).collect();
            // extensions chosen one component at a time; the two unit laws
            // only involve a single component, so they prune early
            let mut ext: Vec<Mor> = Vec::with_capacity(n * n);
            let mut found = vec![];
            let probe = RelativeMonad { name: String::new(), j: j.clone(), obj_map: obj_map.clone(), unit: unit.clone(), ext: vec![] };
            fn go(p: &RelativeMonad, ext_c: &[Vec<Mor>], ext: &mut Vec<Mor>, found: &mut Vec<Vec<Mor>>, n: usize) {
                let k = ext.len();
                if k == n * n {
                    found.push(ext.clone());
                    return;
                }
                let (x, y) = (k / n, k % n);
                let (e, v) = (p.e(), p.base());
                let (jx, tx, ty) = (p.j.ob(x), p.t(x), p.t(y));
                for c in &ext_c[k] {
                    let l1 = v
                        .tensor_mor(p.eta(x), &v.identity(e.hom(tx, ty)))
                        .and_then(|m| v.compose(c, &m))
                        .and_then(|m| v.compose(&m, e.comp(jx, tx, ty)));
                    if !mor_eq(&l1, &Ok(v.identity(e.hom(jx, ty)))) {
                        continue;
                    }
                    if x == y && !mor_eq(&v.compose(p.eta(x), c), &Ok(e.ident(tx).clone())) {
                        continue;
                    }
                    ext.push(c.clone());
                    go(p, ext_c, ext, found, n);
                    ext.pop();
                }
            }
            go(&probe, &ext_c, &mut ext, &mut found, n);
            for ext in found {
                let m = RelativeMonad { name: String::new(), j: j.clone(), obj_map: obj_map.clone(), unit: unit.clone(), ext };
                if m.validate().is_ok() {
                    out.push(m);
                }
            }
        }
    }
    for (i, m) in out.iter_mut().enumerate() {
        m.name = format!("{}#{}", j.name, i);
    }
    Ok(out)
}

pub fn enumerate_monad_morphisms(src: &RelativeMonad, tgt: &RelativeMonad, budget: Budget) -> Result<Vec<MonadMorphism>> {
    if !same_fun(&src.j, &tgt.j) {
        return Err(Error::frame("monads over different roots"));
    }
    let (e, v) = (src.e().clone(), src.base().clone());
    let n = src.a().n();
    let cands: Vec<Vec<Mor>> = (0..n).map(|x| v.hom_iter(v.unit(), e.hom(src.t(x), tgt.t(x))).collect()).collect();
    let sizes: Vec<usize> = cands.iter().map(|c| c.len()).collect();
    budget.check(sizes.iter().fold(1u128, |s, &c| s.saturating_mul(c as u128)))?;
    let mut out = vec![];
    for k in 0..tuple_count(&sizes) {
        let pick = tuple_at(&sizes, k);
        let m = MonadMorphism {
            name: format!("{}->{}#{}", src.name, tgt.name, out.len()),
            comps: pick.iter().enumerate().map(|(x, &i)| cands[x][i].clone()).collect(),
        };
        if m.validate(src, tgt).is_ok() {
            out.push(m);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn trivial_and_tmax_validate() {
        let j = corpus::j01();
        assert!(RelativeMonad::trivial(&j).validate().is_ok());
        let tmax = corpus::tmax();
        assert!(tmax.validate().is_ok());
        // oracle: jx <= tx and (jx <= ty => tx <= ty)
        for x in 0..2 {
            assert!(j.ob(x) <= tmax.t(x));
        }
    }

    #[test]
    fn non_monotone_object_map_is_rejected() {
        let bad = RelativeMonad::bool_from_objects("bad", &corpus::j01(), vec![1, 2]);
        let rep = bad.validate();
        assert!(rep.violations.iter().any(|v| v.law == "well_typed.ext" && v.at == vec![1, 0]), "{rep:?}");
    }

    #[test]
    fn underlying_functors() {
        let j = corpus::j01();
        let triv = RelativeMonad::trivial(&j);
        assert_eq!(*triv.underlying_functor().unwrap(), *j);
        let t = corpus::tmax().underlying_functor().unwrap();
        assert_eq!(t.obj_map, vec![2, 2]);
        assert!(t.validate().is_ok());
        for m in corpus::inc1_monads() {
            let t = m.underlying_functor().unwrap();
            assert!(t.validate().is_ok());
            let cands = m.underlying_functor_candidates(Budget::default()).unwrap();
            assert_eq!(cands.len(), 1);
            assert_eq!(*cands[0], *t);
        }
    }

    #[test]
    fn inc1_swap_monad_underlying_map() {
        // t = 2, e0 = 0, dag(1) = swap: t_{*,*} picks eta ; dag = identity
        let m = corpus::inc1_monads().into_iter().find(|m| m.t(0) == 2 && m.eta(0).code == vec![0] && m.dag(0, 0).code == vec![1, 2]).unwrap();
        let t = m.underlying_functor().unwrap();
        assert_eq!(t.map(0, 0).code, vec![1]);
    }

    #[test]
    fn inc1_has_five_monads() {
        let ms = corpus::inc1_monads();
        assert_eq!(ms.len(), 5);
        assert_eq!(ms.iter().filter(|m| m.t(0) == 1).count(), 1);
    }

    #[test]
    fn enumeration_reproduces_the_hand_written_inc1_family() {
        let found = enumerate_monads(&corpus::inc1_j(), |t| t[0] <= 2, Budget::default()).unwrap();
        let hand = corpus::inc1_monads();
        assert_eq!(found.len(), hand.len());
        for m in &hand {
            assert!(found.iter().any(|f| f.obj_map == m.obj_map && f.unit == m.unit && f.ext == m.ext), "{}", m.name);
        }
    }

    #[test]
    fn unique_morphism_from_trivial_to_tmax() {
        let j = corpus::j01();
        let triv = RelativeMonad::trivial(&j);
        let tmax = corpus::tmax();
        let ms = enumerate_monad_morphisms(&triv, &tmax, Budget::default()).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].comps, MonadMorphism::from_trivial(&tmax).comps);
        let ids = enumerate_monad_morphisms(&triv, &triv, Budget::default()).unwrap();
        assert_eq!(ids.len(), 1);
        assert_eq!(ids[0].comps, MonadMorphism::identity(&triv).comps);
    }

    #[test]
    fn trivial_monad_is_initial_on_inc1() {
        let j = corpus::inc1_j();
        let triv = RelativeMonad::trivial(&j);
        for m in corpus::inc1_monads() {
            let ms = enumerate_monad_morphisms(&triv, &m, Budget::default()).unwrap();
            assert_eq!(ms.len(), 1, "{}", m.name);
            assert!(MonadMorphism::from_trivial(&m).validate(&triv, &m).is_ok());
        }
    }

    #[test]
    fn bool_monads_on_j01_match_a_direct_scan() {
        let j = corpus::j01();
        let ms = enumerate_monads(&j, |_| true, Budget::default()).unwrap();
        let e = j.cod.clone();
        let mut oracle = 0;
        for t0 in 0..3 {
            for t1 in 0..3 {
                let t = [t0, t1];
                let ok = (0..2).all(|x| j.ob(x) <= t[x])
                    && (0..2).all(|x| (0..2).all(|y| e.hom(j.ob(x), t[y]) == 0 || t[x] <= t[y]));
                oracle += usize::from(ok);
            }
        }
        assert_eq!(ms.len(), oracle);
    }
}
