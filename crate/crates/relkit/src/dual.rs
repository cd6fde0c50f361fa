//! Duality: `V-Cat` with 2-cells reversed is `V^rev-Cat`.
//!
//! Every co-construction is computed by dualizing, running the ordinary
//! construction and dualizing back. Relative comonads and coadjunctions
//! are stored in their own orientation and checked through their duals.

use std::sync::Arc;

use crate::algebra::{em_category, kleisli, resolution_from_em, resolution_from_kleisli};
use crate::enriched::{same_fun, Cat, Dist, Distributor, EnrichedCategory, EnrichedFunctor, Form, Frame, Fun};
use crate::error::{Budget, Error, Result, ValidationReport};
use crate::relmonad::{induced_monad, RelativeAdjunction, RelativeMonad};
use crate::vkernel::{Base, Mor, MonoidalBase};

fn op_name(name: &str) -> String {
    match name.strip_suffix("^op") {
        Some(s) => s.to_string(),
        None => format!("{name}^op"),
    }
}

pub fn op_base(v: &Base) -> Base {
    let name = match v.name.strip_suffix("^rev") {
        Some(s) => s.to_string(),
        None => format!("{}^rev", v.name),
    };
    Arc::new(MonoidalBase { name, backend: v.backend.clone(), reversed: !v.reversed })
}

pub fn op_category(c: &Cat) -> Cat {
    let n = c.n();
    let mut hom = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            hom.push(c.hom(y, x));
        }
    }
    let mut comp = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                comp.push(c.comp(z, y, x).clone());
            }
        }
    }
    Arc::new(EnrichedCategory {
        name: op_name(&c.name),
        base: op_base(&c.base),
        objects: c.objects.clone(),
        hom,
        ident: c.ident.clone(),
        comp,
    })
}

/// Dualizes a functor between already dualized categories.
pub fn op_functor_between(f: &Fun, dom: &Cat, cod: &Cat) -> Fun {
    let n = f.dom.n();
    let mut hom_map = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            hom_map.push(f.map(y, x).clone());
        }
    }
    Arc::new(EnrichedFunctor {
        name: op_name(&f.name),
        dom: dom.clone(),
        cod: cod.clone(),
        obj_map: f.obj_map.clone(),
        hom_map,
    })
}

pub fn op_functor(f: &Fun) -> Fun {
    op_functor_between(f, &op_category(&f.dom), &op_category(&f.cod))
}

/// `p^op(y, x) = p(x, y)`; the two actions trade places unchanged.
pub fn op_distributor(p: &Dist) -> Dist {
    let (l, r) = (p.left.n(), p.right.n());
    let mut obj = Vec::with_capacity(l * r);
    for y in 0..r {
        for x in 0..l {
            obj.push(p.at(x, y));
        }
    }
    let mut la = Vec::with_capacity(r * r * l);
    for y2 in 0..r {
        for y in 0..r {
            for x in 0..l {
                la.push(p.ract(x, y, y2).clone());
            }
        }
    }
    let mut ra = Vec::with_capacity(r * l * l);
    for y in 0..r {
        for x in 0..l {
            for x2 in 0..l {
                ra.push(p.lact(x2, x, y).clone());
            }
        }
    }
    Arc::new(Distributor {
        name: op_name(&p.name),
        left: op_category(&p.right),
        right: op_category(&p.left),
        obj,
        left_act: la,
        right_act: ra,
    })
}

/// Reverses the chain and the tuples; components are unchanged because the
/// reversed tensor pairs elements in the opposite order.
pub fn op_form(phi: &Form) -> Result<Form> {
    let fr = &phi.frame;
    let chain: Vec<Dist> = fr.chain.iter().rev().map(op_distributor).collect();
    let frame = Frame::new(chain, op_functor(&fr.g), op_functor(&fr.f), op_distributor(&fr.q))?;
    Form::tabulate(&op_name(&phi.name), frame, |t| {
        let rev: Vec<usize> = t.iter().rev().copied().collect();
        Ok(phi.at(&rev).clone())
    })
}

/// A relative comonad on the coroot `i : Z -> V`: `counit[x] : I -> V(dx, ix)`
/// and `coext[x*n + y] : V(dx, iy) -> V(dx, dy)`.
#[derive(Debug, Clone)]
pub struct RelativeComonad {
    pub name: String,
    pub i: Fun,
    pub obj_map: Vec<usize>,
    pub counit: Vec<Mor>,
    pub coext: Vec<Mor>,
}

impl PartialEq for RelativeComonad {
    fn eq(&self, o: &Self) -> bool {
        same_fun(&self.i, &o.i) && self.obj_map == o.obj_map && self.counit == o.counit && self.coext == o.coext
    }
}

impl RelativeComonad {
    pub fn d(&self, x: usize) -> usize {
        self.obj_map[x]
    }

    /// The same data read as a monad on `i^op` in `V^rev`-categories.
    pub fn to_dual(&self) -> RelativeMonad {
        let n = self.i.dom.n();
        RelativeMonad {
            name: op_name(&self.name),
            j: op_functor(&self.i),
            obj_map: self.obj_map.clone(),
            unit: self.counit.clone(),
            ext: (0..n * n).map(|k| self.coext[(k % n) * n + k / n].clone()).collect(),
        }
    }

    pub fn from_dual(m: &RelativeMonad) -> RelativeComonad {
        let n = m.a().n();
        RelativeComonad {
            name: op_name(&m.name),
            i: op_functor(&m.j),
            obj_map: m.obj_map.clone(),
            counit: m.unit.clone(),
            coext: (0..n * n).map(|k| m.dag(k % n, k / n).clone()).collect(),
        }
    }

    /// Over the Boolean base a comonad is determined by its object map.
    pub fn bool_from_objects(name: &str, i: &Fun, obj_map: Vec<usize>) -> RelativeComonad {
        let mut d = RelativeComonad::from_dual(&RelativeMonad::bool_from_objects(name, &op_functor(i), obj_map));
        d.name = name.into();
        d
    }

    pub fn trivial(i: &Fun) -> RelativeComonad {
        let mut d = RelativeComonad::from_dual(&RelativeMonad::trivial(&op_functor(i)));
        d.name = format!("triv({})", i.name);
        d
    }

    pub fn validate(&self) -> ValidationReport {
        validate_relative_comonad(self)
    }
}

fn co_law(law: &str) -> String {
    law.replace("extension", "coextension").replace("unit", "counit").replace(".ext", ".coext")
}

/// Validates the dual monad and translates the report back: law names gain
/// the `co` prefix and witnessing tuples are reversed.
pub fn validate_relative_comonad(d: &RelativeComonad) -> ValidationReport {
    let n = d.i.dom.n();
    let mut rep = ValidationReport::new(format!("comonad {}", d.name));
    if d.obj_map.len() != n || d.counit.len() != n || d.coext.len() != n * n {
        rep.push("well_typed", &[], "ragged tables");
        return rep;
    }
    for v in d.to_dual().validate().violations {
        let at: Vec<usize> = v.at.iter().rev().copied().collect();
        rep.push(co_law(&v.law), &at, v.detail);
    }
    rep
}

/// The co-Kleisli category with `cok : Z -> coKl(D)` and the identity
/// co-opextension, obtained as the dual of the Kleisli construction.
#[derive(Debug, Clone)]
pub struct CoKleisli {
    pub cat: Cat,
    pub cok: Fun,
    pub form: Form,
}

pub fn co_kleisli(d: &RelativeComonad) -> Result<CoKleisli> {
    let kl = kleisli(&d.to_dual())?;
    Ok(CoKleisli { cat: op_category(&kl.cat), cok: op_functor(&kl.k), form: op_form(&kl.opext)? })
}

/// A coalgebra: a carrier `e` with `coext[x] : V(e, ix) -> V(e, dx)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coalgebra {
    pub carrier: usize,
    pub coext: Vec<Mor>,
}

#[derive(Debug, Clone)]
pub struct CoEilenbergMoore {
    pub cat: Cat,
    pub coalgebras: Vec<Coalgebra>,
    pub cou: Fun,
    pub form: Form,
}

pub fn co_em(d: &RelativeComonad, budget: Budget) -> Result<CoEilenbergMoore> {
    let em = em_category(&d.to_dual(), budget)?;
    Ok(CoEilenbergMoore {
        cat: op_category(&em.cat),
        coalgebras: em.algebras.iter().map(|a| Coalgebra { carrier: a.carrier, coext: a.ext.clone() }).collect(),
        cou: op_functor(&em.u),
        form: op_form(&em.ext)?,
    })
}

/// A relative coadjunction on the coroot `i : Z -> V`, with legs
/// `r : Z -> X` and `l : X -> V`, and
/// `sharp[x*|Z| + z] : V(lx, iz) -> X(x, rz)` inverse to `flat`.
#[derive(Debug, Clone)]
pub struct RelativeCoadjunction {
    pub name: String,
    pub i: Fun,
    pub r: Fun,
    pub l: Fun,
    pub sharp: Vec<Mor>,
    pub flat: Vec<Mor>,
}

impl RelativeCoadjunction {
    fn swap(v: &[Mor], outer: usize, inner: usize) -> Vec<Mor> {
        (0..outer * inner).map(|k| v[(k % inner) * outer + k / inner].clone()).collect()
    }

    /// `r^op -|_{i^op} l^op`: the coadjunction's `flat` becomes the
    /// adjunction's `sharp`.
    pub fn to_dual(&self) -> RelativeAdjunction {
        let (nx, nz) = (self.l.dom.n(), self.i.dom.n());
        RelativeAdjunction {
            name: op_name(&self.name),
            j: op_functor(&self.i),
            l: op_functor(&self.r),
            r: op_functor(&self.l),
            sharp: Self::swap(&self.flat, nz, nx),
            flat: Self::swap(&self.sharp, nz, nx),
        }
    }

    pub fn from_dual(adj: &RelativeAdjunction) -> RelativeCoadjunction {
        let (nz, nx) = (adj.j.dom.n(), adj.apex().n());
        RelativeCoadjunction {
            name: op_name(&adj.name),
            i: op_functor(&adj.j),
            r: op_functor(&adj.l),
            l: op_functor(&adj.r),
            sharp: Self::swap(&adj.flat, nx, nz),
            flat: Self::swap(&adj.sharp, nx, nz),
        }
    }

    pub fn bool_from_legs(name: &str, i: &Fun, r: &Fun, l: &Fun) -> RelativeCoadjunction {
        let adj = RelativeAdjunction::bool_from_legs(name, &op_functor(i), &op_functor(r), &op_functor(l));
        let mut c = RelativeCoadjunction::from_dual(&adj);
        c.name = name.into();
        c
    }

    /// Validated through the dual adjunction; `sharp` and `flat` trade names.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new(format!("coadjunction {}", self.name));
        let (nx, nz) = (self.l.dom.n(), self.i.dom.n());
        if self.sharp.len() != nx * nz || self.flat.len() != nx * nz {
            rep.push("well_typed", &[], "ragged tables");
            return rep;
        }
        for v in self.to_dual().validate().violations {
            let law = v.law.replace("sharp", "\u{0}").replace("flat", "sharp").replace('\u{0}', "flat");
            let at: Vec<usize> = v.at.iter().rev().copied().collect();
            rep.push(law, &at, v.detail);
        }
        rep
    }

    /// With the identity coroot a coadjunction is an adjunction relative to
    /// the identity on `X`, on the same tables.
    pub fn as_identity_rooted_adjunction(&self) -> Result<RelativeAdjunction> {
        if !self.i.is_identity() {
            return Err(Error::PreconditionFailed("coroot is not an identity".into()));
        }
        Ok(RelativeAdjunction {
            name: self.name.clone(),
            j: EnrichedFunctor::identity(&self.l.dom),
            l: self.l.clone(),
            r: self.r.clone(),
            sharp: self.sharp.clone(),
            flat: self.flat.clone(),
        })
    }
}

pub fn induced_comonad(c: &RelativeCoadjunction) -> Result<RelativeComonad> {
    let mut d = RelativeComonad::from_dual(&induced_monad(&c.to_dual())?);
    d.name = format!("cmd({})", c.name);
    Ok(d)
}

/// The co-Kleisli coresolution of `D`, dual to the Kleisli resolution.
pub fn coresolution_from_co_kleisli(d: &RelativeComonad) -> Result<RelativeCoadjunction> {
    let (_, adj) = resolution_from_kleisli(&d.to_dual())?;
    Ok(RelativeCoadjunction::from_dual(&adj))
}

/// The co-Eilenberg-Moore coresolution of `D`.
pub fn coresolution_from_co_em(d: &RelativeComonad, budget: Budget) -> Result<RelativeCoadjunction> {
    let (_, adj) = resolution_from_em(&d.to_dual(), budget)?;
    Ok(RelativeCoadjunction::from_dual(&adj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::enriched::{composition_form, conjoint, id_form, loose_identity, paste, right_action_form};

    #[test]
    fn op_of_bool_base_is_bool_base() {
        let q = corpus::q2();
        assert_eq!(*op_base(&q), *q);
    }

    #[test]
    fn op_of_ch3_reverses_the_chain() {
        let c = op_category(&corpus::ch3());
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(c.hom(x, y) == 1, y <= x);
            }
        }
        assert!(c.validate().is_ok());
    }

    #[test]
    fn double_dual_is_identity() {
        for c in [corpus::ch3(), corpus::inc1_e(), corpus::broken_monoid()] {
            let cc = op_category(&op_category(&c));
            assert_eq!(*cc, *c);
            assert_eq!(cc.name, c.name);
        }
        let j = corpus::inc1_j();
        assert_eq!(*op_functor(&op_functor(&j)), *j);
        let p = conjoint(&j).unwrap();
        assert_eq!(*op_distributor(&op_distributor(&p)), *p);
        let phi = right_action_form(&p).unwrap();
        let back = op_form(&op_form(&phi).unwrap()).unwrap();
        assert!(back.equal(&phi).unwrap());
    }

    #[test]
    fn dualization_preserves_validity() {
        let e = corpus::inc1_e();
        assert!(op_category(&e).validate().is_ok());
        let p = conjoint(&corpus::inc1_j()).unwrap();
        assert!(op_distributor(&p).validate().is_ok());
        let phi = op_form(&right_action_form(&p).unwrap()).unwrap();
        assert!(phi.validate().is_ok(), "{:?}", phi.validate());
    }

    #[test]
    fn op_preserves_pasting() {
        let e = corpus::inc1_e();
        let comp = composition_form(&e).unwrap();
        let one = id_form(&loose_identity(&e)).unwrap();
        let pasted = paste(&[comp.clone(), one.clone()], &comp).unwrap();
        let dual_first = paste(
            &[op_form(&one).unwrap(), op_form(&comp).unwrap()],
            &op_form(&comp).unwrap(),
        )
        .unwrap();
        assert!(op_form(&pasted).unwrap().equal(&dual_first).unwrap());
    }
    #[test]
    fn interior_comonad_validates_and_its_perturbation_does_not() {
        let d = corpus::interior();
        assert!(d.validate().is_ok(), "{:?}", d.validate());
        let i = &d.i;
        for x in 0..3 {
            assert!(d.d(x) <= i.ob(x));
        }
        let bad = corpus::interior_broken();
        let rep = bad.validate();
        assert!(rep.laws().iter().any(|l| l.starts_with("well_typed") || l.contains("coextension")), "{rep:?}");
        assert!(!rep.is_ok());
        assert!(RelativeComonad::trivial(&corpus::j01()).validate().is_ok());
    }

    #[test]
    fn comonad_dual_round_trip() {
        let d = corpus::interior();
        assert_eq!(RelativeComonad::from_dual(&d.to_dual()), d);
    }

    #[test]
    fn co_kleisli_of_interior() {
        let d = corpus::interior();
        let ck = co_kleisli(&d).unwrap();
        assert!(ck.cat.validate().is_ok());
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(ck.cat.hom(x, y) == 1, d.d(x) <= y, "{x} {y}");
            }
        }
        assert!(ck.cok.validate().is_ok());
        assert!(ck.form.validate().is_ok());
    }

    #[test]
    fn co_em_of_interior() {
        let d = corpus::interior();
        let ce = co_em(&d, Budget::default()).unwrap();
        let carriers: Vec<usize> = ce.coalgebras.iter().map(|c| c.carrier).collect();
        let oracle: Vec<usize> = (0..3).filter(|&c| (0..3).all(|x| !(c <= x) || c <= d.d(x))).collect();
        assert_eq!(carriers, oracle);
        assert_eq!(carriers, vec![0, 1]);
        assert!(ce.cat.validate().is_ok());
        assert!(ce.cou.validate().is_ok());
    }

    #[test]
    fn coresolutions_induce_the_comonad() {
        let d = corpus::interior();
        let c = coresolution_from_co_kleisli(&d).unwrap();
        assert!(c.validate().is_ok(), "{:?}", c.validate());
        assert_eq!(induced_comonad(&c).unwrap(), d);
        let c = coresolution_from_co_em(&d, Budget::default()).unwrap();
        assert!(c.validate().is_ok());
        assert_eq!(induced_comonad(&c).unwrap(), d);
    }

    #[test]
    fn identity_coroot_coadjunction_is_an_adjunction() {
        let c = corpus::galois_coadjunction();
        assert!(c.validate().is_ok(), "{:?}", c.validate());
        assert!(c.as_identity_rooted_adjunction().unwrap().validate().is_ok());
        let mut bad = c.clone();
        bad.r = EnrichedFunctor::bool_functor("R0", &bad.r.dom, &bad.r.cod, vec![0, 0]);
        let bad = RelativeCoadjunction::bool_from_legs("bad", &bad.i, &bad.r, &bad.l);
        assert!(!bad.validate().is_ok());
        assert!(!bad.as_identity_rooted_adjunction().unwrap().validate().is_ok());
    }
}
