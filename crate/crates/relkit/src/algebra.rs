//! Algebras and opalgebras of a relative monad, the Kleisli and
//! Eilenberg-Moore categories, the resolutions they carry, and bounded
//! certification of their universal properties.

use std::sync::Arc;

use crate::corpus;
use crate::enriched::{
    companion, conjoint, hom_dist, id_form, loose_identity, paste, same_cat, same_dist, same_fun, tuple_at, Cat, Dist,
    EnrichedCategory, EnrichedFunctor, Form, Frame, Fun, enumerate_forms, enumerate_functors,
};
use crate::error::{Budget, Certified, Error, Result, ValidationReport};
use crate::formal::{nat_object, Presheaf};
use crate::relmonad::{induced_monad, to_loose_monad, LeftMorphism, LooseMonadMorphism, RelativeAdjunction, RelativeMonad};
use crate::vkernel::{mor_eq, Limit, Mor, Obj};

/// An Eilenberg-Moore algebra: a carrier `e` with `ext[x] : E(jx, e) -> E(tx, e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EMAlgebra {
    pub carrier: usize,
    pub ext: Vec<Mor>,
}

/// A `grade`-graded homomorphism `h : grade -> E(e, e')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedHom {
    pub grade: Obj,
    pub h: Mor,
}

pub fn validate_em_algebra(alg: &EMAlgebra, t: &RelativeMonad) -> ValidationReport {
    let mut rep = ValidationReport::new(format!("algebra on {}", alg.carrier));
    let (e, v) = (t.e().clone(), t.base().clone());
    let (n, c) = (t.a().n(), alg.carrier);
    if alg.ext.len() != n || c >= e.n() {
        rep.push("well_typed", &[], "wrong number of components or carrier out of range");
        return rep;
    }
    for x in 0..n {
        let m = &alg.ext[x];
        if v.check_mor(m).is_err() || m.dom != e.hom(t.j.ob(x), c) || m.cod != e.hom(t.t(x), c) {
            rep.push("well_typed", &[x], format!("no extension E(j{x}, e) -> E(t{x}, e)"));
        }
    }
    if !rep.is_ok() {
        return rep;
    }
    for x in 0..n {
        let (jx, tx) = (t.j.ob(x), t.t(x));
        let lhs = v
            .tensor_mor(t.eta(x), &v.identity(e.hom(tx, c)))
            .and_then(|m| v.compose(&alg.ext[x], &m))
            .and_then(|m| v.compose(&m, e.comp(jx, tx, c)));
        if !mor_eq(&lhs, &Ok(v.identity(e.hom(jx, c)))) {
            rep.push("algebra_unit", &[x], "ext ; (eta (x) 1) ; comp != 1");
        }
        for y in 0..n {
            let ty = t.t(y);
            let lhs = v.tensor_mor(t.dag(x, y), &alg.ext[y]).and_then(|m| v.compose(&m, e.comp(tx, ty, c)));
            let rhs = v
                .tensor_mor(&v.identity(e.hom(jx, ty)), &alg.ext[y])
                .and_then(|m| v.compose(&m, e.comp(jx, ty, c)))
                .and_then(|m| v.compose(&m, &alg.ext[x]));
            if !mor_eq(&lhs, &rhs) {
                rep.push("algebra_extension", &[x, y], "(dag (x) ext) ; comp != (1 (x) ext) ; comp ; ext");
            }
        }
    }
    rep
}

pub fn validate_graded_hom(g: &GradedHom, src: &EMAlgebra, tgt: &EMAlgebra, t: &RelativeMonad) -> ValidationReport {
    let mut rep = ValidationReport::new("graded homomorphism");
    let (e, v) = (t.e().clone(), t.base().clone());
    let (c, c2) = (src.carrier, tgt.carrier);
    if v.check_mor(&g.h).is_err() || g.h.dom != g.grade || g.h.cod != e.hom(c, c2) {
        rep.push("well_typed", &[], "h is not grade -> E(e, e')");
        return rep;
    }
    for x in 0..t.a().n() {
        let (jx, tx) = (t.j.ob(x), t.t(x));
        let lhs = v.tensor_mor(&src.ext[x], &g.h).and_then(|m| v.compose(&m, e.comp(tx, c, c2)));
        let rhs = v
            .tensor_mor(&v.identity(e.hom(jx, c)), &g.h)
            .and_then(|m| v.compose(&m, e.comp(jx, c, c2)))
            .and_then(|m| v.compose(&m, &tgt.ext[x]));
        if !mor_eq(&lhs, &rhs) {
            rep.push("graded_square", &[x], "(ext (x) h) ; comp != (1 (x) h) ; comp ; ext'");
        }
    }
    rep
}

/// Every Eilenberg-Moore algebra, carriers ascending and extension
/// families in lexicographic order.
pub fn em_objects(t: &RelativeMonad, budget: Budget) -> Result<Vec<EMAlgebra>> {
    let (e, v) = (t.e().clone(), t.base().clone());
    let n = t.a().n();
    let mut out = vec![];
    let mut spent: u128 = 0;
    for c in 0..e.n() {
        let cands: Vec<Vec<Mor>> = (0..n).map(|x| v.hom_iter(e.hom(t.j.ob(x), c), e.hom(t.t(x), c)).collect()).collect();
        let sizes: Vec<usize> = cands.iter().map(|k| k.len()).collect();
        let space = sizes.iter().fold(1u128, |s, &k| s.saturating_mul(k as u128));
        spent = spent.saturating_add(space);
        budget.check(spent)?;
        for k in 0..space as usize {
            let pick = tuple_at(&sizes, k);
            let alg = EMAlgebra { carrier: c, ext: pick.iter().enumerate().map(|(x, &i)| cands[x][i].clone()).collect() };
            if validate_em_algebra(&alg, t).is_ok() {
                out.push(alg);
            }
        }
    }
    Ok(out)
}

/// An algebra `(e : D -> E, ext : E(j, e) => E(t, e))`.
#[derive(Debug, Clone)]
pub struct TAlgebra {
    pub e: Fun,
    pub ext: Form,
}

impl TAlgebra {
    pub fn at(&self, d: usize) -> EMAlgebra {
        let n = self.ext.frame.cats[0].n();
        EMAlgebra { carrier: self.e.ob(d), ext: (0..n).map(|x| self.ext.at(&[x, d]).clone()).collect() }
    }

    pub fn frame(t: &RelativeMonad, e: &Fun) -> Result<Frame> {
        let tf = t.underlying_functor()?;
        Frame::plain(vec![hom_dist(&t.j, e)?], hom_dist(&tf, e)?)
    }

    pub fn validate(&self, t: &RelativeMonad) -> ValidationReport {
        let mut rep = ValidationReport::new(format!("algebra {}", self.e.name));
        match TAlgebra::frame(t, &self.e) {
            Ok(fr) if fr == self.ext.frame => {}
            Ok(_) => {
                rep.push("well_typed", &[], "extension must be E(j, e) => E(t, e)");
                return rep;
            }
            Err(err) => {
                rep.push("well_typed", &[], err.to_string());
                return rep;
            }
        }
        rep.absorb("natural", self.ext.validate());
        let d = self.e.dom.clone();
        for z in 0..d.n() {
            rep.absorb("object", validate_em_algebra(&self.at(z), t));
        }
        if !rep.is_ok() {
            return rep;
        }
        for y in 0..d.n() {
            for z in 0..d.n() {
                let g = GradedHom { grade: d.hom(y, z), h: self.e.map(y, z).clone() };
                let r = validate_graded_hom(&g, &self.at(y), &self.at(z), t);
                for vi in r.violations {
                    rep.push(format!("hom.{}", vi.law), &[y, z], vi.detail);
                }
            }
        }
        rep
    }
}

/// `(t, dag)` as an algebra.
pub fn monad_as_algebra(t: &RelativeMonad) -> Result<TAlgebra> {
    let tf = t.underlying_functor()?;
    Ok(TAlgebra { ext: t.ext_form(&tf)?, e: tf })
}

/// An opalgebra `(a : A -> B, opext : E(j, t) => B(a, a))`.
#[derive(Debug, Clone)]
pub struct Opalgebra {
    pub a: Fun,
    pub ext: Form,
}

impl Opalgebra {
    pub fn frame(t: &RelativeMonad, a: &Fun) -> Result<Frame> {
        let tf = t.underlying_functor()?;
        Frame::plain(vec![hom_dist(&t.j, &tf)?], hom_dist(a, a)?)
    }

    pub fn validate(&self, t: &RelativeMonad) -> ValidationReport {
        let mut rep = ValidationReport::new(format!("opalgebra {}", self.a.name));
        match Opalgebra::frame(t, &self.a) {
            Ok(fr) if fr == self.ext.frame => {}
            Ok(_) => {
                rep.push("well_typed", &[], "opextension must be E(j, t) => B(a, a)");
                return rep;
            }
            Err(err) => {
                rep.push("well_typed", &[], err.to_string());
                return rep;
            }
        }
        rep.absorb("natural", self.ext.validate());
        if !rep.is_ok() {
            return rep;
        }
        let (b, e, v) = (self.a.cod.clone(), t.e().clone(), t.base().clone());
        let a = &self.a;
        let n = t.a().n();
        for x in 0..n {
            if !mor_eq(&v.compose(t.eta(x), self.ext.at(&[x, x])), &Ok(b.ident(a.ob(x)).clone())) {
                rep.push("opalgebra_unit", &[x], "eta ; opext != identity");
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = v
                        .tensor_mor(self.ext.at(&[x, y]), self.ext.at(&[y, z]))
                        .and_then(|m| v.compose(&m, b.comp(a.ob(x), a.ob(y), a.ob(z))));
                    let rhs = v
                        .tensor_mor(&v.identity(e.hom(t.j.ob(x), t.t(y))), t.dag(y, z))
                        .and_then(|m| v.compose(&m, e.comp(t.j.ob(x), t.t(y), t.t(z))))
                        .and_then(|m| v.compose(&m, self.ext.at(&[x, z])));
                    if !mor_eq(&lhs, &rhs) {
                        rep.push("opalgebra_extension", &[x, y, z], "(opext (x) opext) ; comp != (1 (x) dag) ; comp ; opext");
                    }
                }
            }
        }
        rep
    }
}

/// `(t, dag)` as an opalgebra.
pub fn monad_as_opalgebra(t: &RelativeMonad) -> Result<Opalgebra> {
    let tf = t.underlying_functor()?;
    Ok(Opalgebra { ext: t.ext_form(&tf)?, a: tf })
}

/// An opalgebra structure on `1_A` for the trivial monad, if one exists;
/// it exists exactly when the root is fully faithful.
pub fn identity_opalgebra(t: &RelativeMonad, budget: Budget) -> Result<Option<Opalgebra>> {
    let id = EnrichedFunctor::identity(t.a());
    for ext in enumerate_forms(&Opalgebra::frame(t, &id)?, budget)? {
        let op = Opalgebra { a: id.clone(), ext };
        if op.validate(t).is_ok() {
            return Ok(Some(op));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone)]
pub struct Kleisli {
    pub cat: Cat,
    pub k: Fun,
    pub opext: Form,
}

impl Kleisli {
    pub fn opalgebra(&self) -> Opalgebra {
        Opalgebra { a: self.k.clone(), ext: self.opext.clone() }
    }
}

/// `Kl(T)(x, y) = E(jx, ty)`, identities `eta`, composition `(1 (x) dag) ; comp`.
pub fn kleisli(t: &RelativeMonad) -> Result<Kleisli> {
    let (a, e, v) = (t.a().clone(), t.e().clone(), t.base().clone());
    let n = a.n();
    let hom: Vec<Obj> = (0..n * n).map(|k| e.hom(t.j.ob(k / n), t.t(k % n))).collect();
    let mut comp = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let m = v.tensor_mor(&v.identity(e.hom(t.j.ob(x), t.t(y))), t.dag(y, z))?;
                comp.push(v.compose(&m, e.comp(t.j.ob(x), t.t(y), t.t(z)))?);
            }
        }
    }
    let cat = Arc::new(EnrichedCategory {
        name: format!("Kl({})", t.name),
        base: v.clone(),
        objects: a.objects.clone(),
        hom,
        ident: t.unit.clone(),
        comp,
    });
    let mut hom_map = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let m = v.tensor_mor(t.j.map(x, y), t.eta(y))?;
            hom_map.push(v.compose(&m, e.comp(t.j.ob(x), t.j.ob(y), t.t(y)))?);
        }
    }
    let k = Arc::new(EnrichedFunctor { name: format!("k_{}", t.name), dom: a, cod: cat.clone(), obj_map: (0..n).collect(), hom_map });
    let frame = Opalgebra::frame(t, &k)?;
    let fr = frame.clone();
    let opext = Form::tabulate("opext_T", frame, |s| Ok(v.identity(fr.cod_obj(s))))?;
    Ok(Kleisli { cat, k, opext })
}

/// `v_T : Kl(T) -> E`, acting by the extension operator.
pub fn kleisli_right_leg(t: &RelativeMonad, kl: &Kleisli) -> Fun {
    let n = t.a().n();
    Arc::new(EnrichedFunctor {
        name: format!("v_{}", t.name),
        dom: kl.cat.clone(),
        cod: t.e().clone(),
        obj_map: t.obj_map.clone(),
        hom_map: (0..n * n).map(|k| t.dag(k / n, k % n).clone()).collect(),
    })
}

#[derive(Debug, Clone)]
pub struct EilenbergMoore {
    pub cat: Cat,
    pub algebras: Vec<EMAlgebra>,
    pub u: Fun,
    pub ext: Form,
    /// `limits[a*n + b]`: the universal graded homomorphism into `E(e_a, e_b)`.
    pub limits: Vec<Limit>,
}

impl EilenbergMoore {
    pub fn index_of(&self, alg: &EMAlgebra) -> Option<usize> {
        self.algebras.iter().position(|a| a == alg)
    }

    pub fn algebra(&self) -> TAlgebra {
        TAlgebra { e: self.u.clone(), ext: self.ext.clone() }
    }

    /// Factors a graded homomorphism through the hom-object.
    pub fn factor(&self, a: usize, b: usize, h: &Mor) -> Result<Mor> {
        let v = &self.cat.base;
        v.equalizer_factor(&self.limits[a * self.algebras.len() + b], h)
    }
}

fn presheaf_along(t: &RelativeMonad, f: &[usize], fmap: impl Fn(usize, usize) -> Mor, c: usize) -> Result<Presheaf> {
    let (a, e, v) = (t.a().clone(), t.e().clone(), t.base().clone());
    let n = a.n();
    let mut act = Vec::with_capacity(n * n);
    for z2 in 0..n {
        for z in 0..n {
            let m = v.tensor_mor(&fmap(z2, z), &v.identity(e.hom(f[z], c)))?;
            act.push(v.compose(&m, e.comp(f[z2], f[z], c))?);
        }
    }
    Ok(Presheaf { cat: a, obj: (0..n).map(|z| e.hom(f[z], c)).collect(), act })
}

/// The Eilenberg-Moore category: all algebras, with hom-objects the
/// equalizers of the two maps into `<A>(E(j-, e), E(t-, e'))`.
pub fn em_category(t: &RelativeMonad, budget: Budget) -> Result<EilenbergMoore> {
    let (e, v) = (t.e().clone(), t.base().clone());
    let caps = v.capabilities();
    if !caps.equalizers {
        return Err(Error::CapabilityMissing("equalizers"));
    }
    if !caps.nat_objects || matches!(v.backend, crate::vkernel::Backend::Tables(_)) {
        return Err(Error::CapabilityMissing("nat_objects"));
    }
    let tf = t.underlying_functor()?;
    let algebras = em_objects(t, budget)?;
    let m = algebras.len();
    let n = t.a().n();
    let jobs: Vec<usize> = (0..n).map(|x| t.j.ob(x)).collect();
    let mut limits = Vec::with_capacity(m * m);
    for a in &algebras {
        let p = presheaf_along(t, &jobs, |x, y| t.j.map(x, y).clone(), a.carrier)?;
        for b in &algebras {
            let q = presheaf_along(t, &t.obj_map, |x, y| tf.map(x, y).clone(), b.carrier)?;
            let nat = nat_object(&p, &q, budget)?;
            let grade = e.hom(a.carrier, b.carrier);
            let mut z1 = Vec::with_capacity(n);
            let mut z2 = Vec::with_capacity(n);
            for x in 0..n {
                let m1 = v.tensor_mor(&a.ext[x], &v.identity(grade))?;
                z1.push(v.compose(&m1, e.comp(t.t(x), a.carrier, b.carrier))?);
                let m2 = v.compose(e.comp(jobs[x], a.carrier, b.carrier), &b.ext[x])?;
                z2.push(m2);
            }
            let zeta1 = nat.factor(&p, &z1, grade)?;
            let zeta2 = nat.factor(&p, &z2, grade)?;
            limits.push(v.equalizer(&zeta1, &zeta2)?);
        }
    }
    let lim = |a: usize, b: usize| &limits[a * m + b];
    let mut ident = Vec::with_capacity(m);
    for (i, a) in algebras.iter().enumerate() {
        ident.push(v.equalizer_factor(lim(i, i), e.ident(a.carrier))?);
    }
    let mut comp = Vec::with_capacity(m * m * m);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let (ea, eb, ec) = (algebras[a].carrier, algebras[b].carrier, algebras[c].carrier);
                let h = v.compose(&v.tensor_mor(&lim(a, b).map, &lim(b, c).map)?, e.comp(ea, eb, ec))?;
                comp.push(v.equalizer_factor(lim(a, c), &h)?);
            }
        }
    }
    let cat = Arc::new(EnrichedCategory {
        name: format!("EM({})", t.name),
        base: v.clone(),
        objects: algebras.iter().enumerate().map(|(i, a)| format!("{}#{i}", e.objects[a.carrier])).collect(),
        hom: (0..m * m).map(|k| lim(k / m, k % m).obj).collect(),
        ident,
        comp,
    });
    let u = Arc::new(EnrichedFunctor {
        name: format!("u_{}", t.name),
        dom: cat.clone(),
        cod: e.clone(),
        obj_map: algebras.iter().map(|a| a.carrier).collect(),
        hom_map: (0..m * m).map(|k| lim(k / m, k % m).map.clone()).collect(),
    });
    let ext = Form::tabulate("ext_T", TAlgebra::frame(t, &u)?, |s| Ok(algebras[s[1]].ext[s[0]].clone()))?;
    Ok(EilenbergMoore { cat, algebras, u, ext, limits })
}

/// The mediating functor `Kl(T) -> B` of an opalgebra: `opext` on homs.
pub fn factor_through_kleisli(t: &RelativeMonad, kl: &Kleisli, op: &Opalgebra) -> Result<Fun> {
    if !same_cat(&op.a.dom, t.a()) {
        return Err(Error::frame("opalgebra is not on the domain of the root"));
    }
    let n = t.a().n();
    Ok(Arc::new(EnrichedFunctor {
        name: format!("[]_{}", op.a.name),
        dom: kl.cat.clone(),
        cod: op.a.cod.clone(),
        obj_map: op.a.obj_map.clone(),
        hom_map: (0..n * n).map(|k| op.ext.at(&[k / n, k % n]).clone()).collect(),
    }))
}

/// Whether `f` mediates from the candidate opalgebra `cand` to `op`.
pub fn is_opalgebra_mediator(cand: &Opalgebra, op: &Opalgebra, f: &Fun) -> bool {
    let v = &f.dom.base;
    let n = cand.a.dom.n();
    let Ok(af) = cand.a.then(f) else { return false };
    same_fun(&af, &op.a)
        && (0..n).all(|x| {
            (0..n).all(|y| {
                let m = v.compose(cand.ext.at(&[x, y]), f.map(cand.a.ob(x), cand.a.ob(y)));
                mor_eq(&m, &Ok(op.ext.at(&[x, y]).clone()))
            })
        })
}

pub fn opalgebra_mediators(cand: &Opalgebra, op: &Opalgebra, budget: Budget) -> Result<Vec<Fun>> {
    Ok(enumerate_functors(&cand.a.cod, &op.a.cod, budget)?.into_iter().filter(|f| is_opalgebra_mediator(cand, op, f)).collect())
}

/// The mediating functor `D -> EM(T)` of an algebra.
pub fn factor_through_em(t: &RelativeMonad, em: &EilenbergMoore, alg: &TAlgebra) -> Result<Fun> {
    let d = alg.e.dom.clone();
    let n = d.n();
    let mut obj_map = Vec::with_capacity(n);
    for z in 0..n {
        let i = em
            .index_of(&alg.at(z))
            .ok_or_else(|| Error::LawViolation(format!("object {z} does not carry an algebra of {}", t.name)))?;
        obj_map.push(i);
    }
    let mut hom_map = Vec::with_capacity(n * n);
    for y in 0..n {
        for z in 0..n {
            hom_map.push(em.factor(obj_map[y], obj_map[z], alg.e.map(y, z))?);
        }
    }
    Ok(Arc::new(EnrichedFunctor { name: format!("<{}>", alg.e.name), dom: d, cod: em.cat.clone(), obj_map, hom_map }))
}

/// Whether `f` mediates from `alg` to the candidate algebra `cand`.
pub fn is_algebra_mediator(cand: &TAlgebra, alg: &TAlgebra, f: &Fun) -> bool {
    let na = cand.ext.frame.cats[0].n();
    let Ok(fu) = f.then(&cand.e) else { return false };
    same_fun(&fu, &alg.e)
        && (0..f.dom.n()).all(|d| (0..na).all(|x| cand.ext.at(&[x, f.ob(d)]) == alg.ext.at(&[x, d])))
}

pub fn algebra_mediators(cand: &TAlgebra, alg: &TAlgebra, budget: Budget) -> Result<Vec<Fun>> {
    Ok(enumerate_functors(&alg.e.dom, &cand.e.dom, budget)?.into_iter().filter(|f| is_algebra_mediator(cand, alg, f)).collect())
}

/// `k_T -|_j v_T` with identity transpositions.
pub fn resolution_from_kleisli(t: &RelativeMonad) -> Result<(Kleisli, RelativeAdjunction)> {
    let kl = kleisli(t)?;
    let vt = kleisli_right_leg(t, &kl);
    let v = t.base().clone();
    let (na, nc) = (t.a().n(), kl.cat.n());
    let ids: Vec<Mor> = (0..na * nc).map(|k| v.identity(kl.cat.hom(k / nc, k % nc))).collect();
    let adj = RelativeAdjunction {
        name: format!("Kl-res({})", t.name),
        j: t.j.clone(),
        l: kl.k.clone(),
        r: vt,
        sharp: ids.clone(),
        flat: ids,
    };
    Ok((kl, adj))
}

/// `f_T -|_j u_T`, with `f_T x = (tx, dag_{-,x})`.
pub fn resolution_from_em(t: &RelativeMonad, budget: Budget) -> Result<(EilenbergMoore, RelativeAdjunction)> {
    let em = em_category(t, budget)?;
    let free = free_algebra_functor(t, &em)?;
    let (e, v) = (t.e().clone(), t.base().clone());
    let (na, m) = (t.a().n(), em.algebras.len());
    let mut sharp = Vec::with_capacity(na * m);
    let mut flat = Vec::with_capacity(na * m);
    for x in 0..na {
        let fx = free.ob(x);
        for b in 0..m {
            let c = em.algebras[b].carrier;
            let s = v.compose(&em.limits[fx * m + b].map, &v.tensor_mor(t.eta(x), &v.identity(e.hom(t.t(x), c)))?)?;
            sharp.push(v.compose(&s, e.comp(t.j.ob(x), t.t(x), c))?);
            flat.push(em.factor(fx, b, &em.algebras[b].ext[x])?);
        }
    }
    let adj = RelativeAdjunction { name: format!("EM-res({})", t.name), j: t.j.clone(), l: free, r: em.u.clone(), sharp, flat };
    Ok((em, adj))
}

/// `f_T : A -> EM(T)`, the free algebras.
pub fn free_algebra_functor(t: &RelativeMonad, em: &EilenbergMoore) -> Result<Fun> {
    let f = factor_through_em(t, em, &monad_as_algebra(t)?)?;
    let mut f = (*f).clone();
    f.name = format!("f_{}", t.name);
    Ok(Arc::new(f))
}

/// `(r, flat ; r)`: the algebra carried by a right adjoint.
pub fn algebra_of_right_adjoint(adj: &RelativeAdjunction) -> Result<TAlgebra> {
    let t = induced_monad(adj)?;
    let v = t.base().clone();
    let ext = Form::tabulate("flat;r", TAlgebra::frame(&t, &adj.r)?, |s| {
        v.compose(adj.flat_at(s[0], s[1]), adj.r.map(adj.l.ob(s[0]), s[1]))
    })?;
    Ok(TAlgebra { e: adj.r.clone(), ext })
}

/// `(l, flat_{-, l-})`: the opalgebra carried by a left adjoint.
pub fn opalgebra_of_left_adjoint(adj: &RelativeAdjunction) -> Result<Opalgebra> {
    let t = induced_monad(adj)?;
    let ext = Form::tabulate("flat", Opalgebra::frame(&t, &adj.l)?, |s| Ok(adj.flat_at(s[0], adj.l.ob(s[1])).clone()))?;
    Ok(Opalgebra { a: adj.l.clone(), ext })
}

/// The comparison `i_T : Kl(T) -> EM(T)` and whether both triangles commute.
pub fn comparison(t: &RelativeMonad, budget: Budget) -> Result<(Fun, bool)> {
    let (kl, kres) = resolution_from_kleisli(t)?;
    let (em, eres) = resolution_from_em(t, budget)?;
    let i = factor_through_em(t, &em, &algebra_of_right_adjoint(&kres)?)?;
    let left = same_fun(&kl.k.then(&i)?, &eres.l);
    let right = same_fun(&i.then(&em.u)?, &kres.r);
    Ok((i, left && right))
}

/// Whether `l` presents the same Kleisli category as `T`: first the loose
/// monads `C(l, l)` and `E(j, t)` must be isomorphic, then the two Kleisli
/// categories must be isomorphic under `A`.
pub fn coincidence_check(t: &RelativeMonad, l: &Fun, budget: Budget) -> Result<bool> {
    if !same_cat(&l.dom, t.a()) {
        return Err(Error::frame("l must start at the domain of the root"));
    }
    let triv = RelativeMonad::trivial(l);
    let (lm1, lm2) = (to_loose_monad(&triv)?, to_loose_monad(t)?);
    let v = t.base().clone();
    let frame = Frame::plain(vec![lm1.carrier.clone()], lm2.carrier.clone())?;
    let iso = enumerate_forms(&frame, budget)?.into_iter().any(|f| {
        let m = LooseMonadMorphism { name: "iso".into(), form: f };
        m.form.comps.iter().all(|c| v.is_iso(c)) && m.validate(&lm1, &lm2).is_ok()
    });
    if !iso {
        return Err(Error::PreconditionFailed(format!("C(l,l) and E(j,{}) are not isomorphic loose monads", t.name)));
    }
    let (k1, k2) = (kleisli(t)?, kleisli(&triv)?);
    Ok(enumerate_functors(&k1.cat, &k2.cat, budget)?
        .into_iter()
        .any(|f| k1.k.then(&f).map(|kf| same_fun(&kf, &k2.k)).unwrap_or(false) && is_iso_functor(&f)))
}

pub fn is_iso_functor(f: &Fun) -> bool {
    let v = &f.dom.base;
    let n = f.dom.n();
    let mut seen = vec![false; f.cod.n()];
    for &o in &f.obj_map {
        if std::mem::replace(&mut seen[o], true) {
            return false;
        }
    }
    seen.iter().all(|&s| s) && f.hom_map.iter().all(|m| v.is_iso(m)) && n == f.cod.n()
}

/// Categories and distributors drawn on for the universality checks.
#[derive(Debug, Clone)]
pub struct GradingPool {
    pub cats: Vec<Cat>,
    pub dists: Vec<Dist>,
}

impl GradingPool {
    pub fn new(cats: Vec<Cat>, dists: Vec<Dist>) -> GradingPool {
        let mut p = GradingPool { cats: vec![], dists: vec![] };
        for c in cats {
            if !p.cats.iter().any(|d| same_cat(d, &c)) {
                p.cats.push(c);
            }
        }
        for d in dists {
            if !p.dists.iter().any(|x| same_dist(x, &d)) {
                p.dists.push(d);
            }
        }
        p
    }

    /// The Boolean pool: small corpus preorders plus the monad's own
    /// categories; loose identities, companions and conjoints of the corpus
    /// functors, and `E(j, t)`.
    pub fn corpus_bool(t: &RelativeMonad) -> Result<GradingPool> {
        let (kl, k, v) = corpus::tmax_kleisli_legs();
        let cats = vec![corpus::pt(), corpus::a2(), corpus::disc2(), kl, corpus::ch3(), t.a().clone(), t.e().clone()];
        let tf = t.underlying_functor()?;
        let mut dists: Vec<Dist> = vec![hom_dist(&t.j, &tf)?];
        for c in &cats {
            dists.push(loose_identity(c));
        }
        for f in [t.j.clone(), tf, corpus::j01(), corpus::tmax_functor(), corpus::disc2_to_top(), k, v] {
            dists.push(companion(&f)?);
            dists.push(conjoint(&f)?);
        }
        Ok(GradingPool::new(cats, dists))
    }

    /// The pool used for certifying `t`: the Boolean corpus pool, or the
    /// monad's own categories with `E(j, t)` on other bases, plus the loose
    /// identities of `extra`.
    pub fn for_monad(t: &RelativeMonad, extra: &[Cat]) -> Result<GradingPool> {
        let pool = if t.base().is_bool() {
            GradingPool::corpus_bool(t)?
        } else {
            let tf = t.underlying_functor()?;
            GradingPool::new(
                vec![t.a().clone(), t.e().clone()],
                vec![loose_identity(t.a()), loose_identity(t.e()), hom_dist(&t.j, &tf)?],
            )
        };
        let cats = [pool.cats, extra.to_vec()].concat();
        let dists = [pool.dists, extra.iter().map(loose_identity).collect()].concat();
        Ok(GradingPool::new(cats, dists))
    }

    /// Chains of length at most 2 from `from` to `to`.
    pub fn chains(&self, from: &Cat, to: &Cat) -> Vec<Vec<Dist>> {
        let mut out = vec![];
        if same_cat(from, to) {
            out.push(vec![]);
        }
        for p in &self.dists {
            if !same_cat(&p.left, from) {
                continue;
            }
            if same_cat(&p.right, to) {
                out.push(vec![p.clone()]);
            }
            for q in &self.dists {
                if same_cat(&q.left, &p.right) && same_cat(&q.right, to) {
                    out.push(vec![p.clone(), q.clone()]);
                }
            }
        }
        out
    }
}

fn refuted(budget: Budget, reason: impl Into<String>) -> Certified {
    Certified::Refuted { budget: budget.0, reason: reason.into() }
}

fn all_opalgebras(t: &RelativeMonad, pool: &GradingPool, budget: Budget) -> Result<Vec<Opalgebra>> {
    let mut out = vec![];
    for b in &pool.cats {
        if b.base != *t.base() {
            continue;
        }
        for a in enumerate_functors(t.a(), b, budget)? {
            for ext in enumerate_forms(&Opalgebra::frame(t, &a)?, budget)? {
                let op = Opalgebra { a: a.clone(), ext };
                if op.validate(t).is_ok() {
                    out.push(op);
                }
            }
        }
    }
    Ok(out)
}

fn all_algebras(t: &RelativeMonad, pool: &GradingPool, budget: Budget) -> Result<Vec<TAlgebra>> {
    let mut out = vec![];
    for d in &pool.cats {
        if d.base != *t.base() {
            continue;
        }
        for e in enumerate_functors(d, t.e(), budget)? {
            for ext in enumerate_forms(&TAlgebra::frame(t, &e)?, budget)? {
                let alg = TAlgebra { e: e.clone(), ext };
                if alg.validate(t).is_ok() {
                    out.push(alg);
                }
            }
        }
    }
    Ok(out)
}

/// `B(1, a), E(j, t) => B(1, a)`: the right action of an opalgebra.
fn opalgebra_action(op: &Opalgebra) -> Result<Form> {
    let b = op.a.cod.clone();
    let v = b.base.clone();
    let ba = hom_dist(&EnrichedFunctor::identity(&b), &op.a)?;
    let frame = Frame::plain(vec![ba.clone(), op.ext.frame.chain[0].clone()], ba)?;
    Form::tabulate("rho", frame, |s| {
        let m = v.tensor_mor(&v.identity(b.hom(s[0], op.a.ob(s[1]))), op.ext.at(&[s[1], s[2]]))?;
        v.compose(&m, b.comp(s[0], op.a.ob(s[1]), op.a.ob(s[2])))
    })
}

/// Bounded check that `cand` is an opalgebra object: every opalgebra over
/// the pool factors uniquely, and so does every graded opalgebra morphism
/// over pool chains of length at most 2.
pub fn check_opalgebra_object(t: &RelativeMonad, cand: &Opalgebra, pool: &GradingPool, budget: Budget) -> Result<Certified> {
    let rep = cand.validate(t);
    if !rep.is_ok() {
        return Ok(refuted(budget, format!("candidate is not an opalgebra: {:?}", rep.laws())));
    }
    let ops = all_opalgebras(t, pool, budget)?;
    let mut checked: u64 = 0;
    let mut meds = Vec::with_capacity(ops.len());
    for (i, op) in ops.iter().enumerate() {
        let ms = opalgebra_mediators(cand, op, budget)?;
        checked += 1;
        if ms.len() != 1 {
            return Ok(refuted(budget, format!("opalgebra {i} on {} has {} mediators", op.a.cod.name, ms.len())));
        }
        meds.push(ms.into_iter().next().unwrap());
    }
    let b0 = cand.a.cod.clone();
    for (i, op) in ops.iter().enumerate() {
        let b = op.a.cod.clone();
        let rho = opalgebra_action(op)?;
        let ba = hom_dist(&EnrichedFunctor::identity(&b), &op.a)?;
        let bf = hom_dist(&EnrichedFunctor::identity(&b), &meds[i])?;
        for (i2, op2) in ops.iter().enumerate() {
            let b2 = op2.a.cod.clone();
            let rho2 = opalgebra_action(op2)?;
            let target = hom_dist(&EnrichedFunctor::identity(&b2), &op2.a)?;
            let target_f = hom_dist(&EnrichedFunctor::identity(&b2), &meds[i2])?;
            for chain in pool.chains(&b2, &b) {
                let mut full = chain.clone();
                full.push(ba.clone());
                let frame = Frame::plain(full, target.clone())?;
                let mut fullf = chain.clone();
                fullf.push(bf.clone());
                let frame_f = Frame::plain(fullf, target_f.clone())?;
                let lifts = enumerate_forms(&frame_f, budget)?;
                let ids: Vec<Form> = chain.iter().map(id_form).collect::<Result<_>>()?;
                let ejt = id_form(&op.ext.frame.chain[0])?;
                for alpha in enumerate_forms(&frame, budget)? {
                    let lhs = paste(&[alpha.clone(), ejt.clone()], &rho2)?;
                    let mut up = ids.clone();
                    up.push(rho.clone());
                    let rhs = paste(&up, &alpha)?;
                    if lhs.comps != rhs.comps {
                        continue;
                    }
                    checked += 1;
                    let sizes = alpha.frame.sizes();
                    let hits = lifts
                        .iter()
                        .filter(|beta| {
                            (0..alpha.comps.len()).all(|k| {
                                let mut s = tuple_at(&sizes, k);
                                let last = s.len() - 1;
                                s[last] = cand.a.ob(s[last]);
                                *beta.at(&s) == alpha.comps[k]
                            })
                        })
                        .count();
                    if hits != 1 {
                        return Ok(refuted(
                            budget,
                            format!("graded morphism {i} -> {i2} over a chain of length {} has {hits} factorizations through {}", chain.len(), b0.name),
                        ));
                    }
                }
            }
        }
    }
    Ok(Certified::Certified { budget: budget.0, checked })
}

/// Bounded check that `cand` is an algebra object, dual in shape to
/// [`check_opalgebra_object`]; graded morphisms are forms into `E(e, e')`
/// whose components are graded homomorphisms.
pub fn check_algebra_object(t: &RelativeMonad, cand: &TAlgebra, pool: &GradingPool, budget: Budget) -> Result<Certified> {
    let rep = cand.validate(t);
    if !rep.is_ok() {
        return Ok(refuted(budget, format!("candidate is not an algebra: {:?}", rep.laws())));
    }
    let algs = all_algebras(t, pool, budget)?;
    let mut checked: u64 = 0;
    let mut meds = Vec::with_capacity(algs.len());
    for (i, alg) in algs.iter().enumerate() {
        let ms = algebra_mediators(cand, alg, budget)?;
        checked += 1;
        if ms.len() != 1 {
            return Ok(refuted(budget, format!("algebra {i} on {} has {} mediators", alg.e.dom.name, ms.len())));
        }
        meds.push(ms.into_iter().next().unwrap());
    }
    let (e, m0) = (t.e().clone(), cand.e.dom.clone());
    for (i, alg) in algs.iter().enumerate() {
        for (i2, alg2) in algs.iter().enumerate() {
            let (d, d2) = (alg.e.dom.clone(), alg2.e.dom.clone());
            for chain in pool.chains(&d, &d2) {
                let n = chain.len();
                let frame = Frame::new(chain.clone(), alg.e.clone(), alg2.e.clone(), loose_identity(&e))?;
                let frame_f = Frame::new(chain.clone(), meds[i].clone(), meds[i2].clone(), loose_identity(&m0))?;
                let lifts = enumerate_forms(&frame_f, budget)?;
                for phi in enumerate_forms(&frame, budget)? {
                    let sizes = phi.frame.sizes();
                    let graded = (0..phi.comps.len()).all(|k| {
                        let s = tuple_at(&sizes, k);
                        let g = GradedHom { grade: phi.comps[k].dom, h: phi.comps[k].clone() };
                        validate_graded_hom(&g, &alg.at(s[0]), &alg2.at(s[n]), t).is_ok()
                    });
                    if !graded {
                        continue;
                    }
                    checked += 1;
                    let hits = lifts
                        .iter()
                        .filter(|beta| beta.then_functor(&cand.e).map(|b| b.comps == phi.comps).unwrap_or(false))
                        .count();
                    if hits != 1 {
                        return Ok(refuted(
                            budget,
                            format!("graded morphism {i} -> {i2} over a chain of length {n} has {hits} factorizations through {}", m0.name),
                        ));
                    }
                }
            }
        }
    }
    Ok(Certified::Certified { budget: budget.0, checked })
}

/// Every Boolean preorder on `n` labelled objects.
pub fn enumerate_bool_preorders(n: usize) -> Vec<Cat> {
    let q = corpus::q2();
    let off: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y))).collect();
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut out = vec![];
    for mask in 0u64..(1 << off.len()) {
        let rel = |x: usize, y: usize| x == y || off.iter().position(|&p| p == (x, y)).is_some_and(|i| mask >> i & 1 == 1);
        let transitive = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| !(rel(x, y) && rel(y, z)) || rel(x, z))));
        if transitive {
            out.push(EnrichedCategory::bool_preorder(&format!("P{n}_{mask}"), &q, &refs, rel).unwrap());
        }
    }
    out
}

/// Every resolution of a Boolean monad whose apex has at most `max_apex`
/// objects.
pub fn enumerate_resolutions(t: &RelativeMonad, max_apex: usize, budget: Budget) -> Result<Vec<RelativeAdjunction>> {
    if !t.base().is_bool() {
        return Err(Error::CapabilityMissing("resolution enumeration needs the Boolean base"));
    }
    let mut out = vec![];
    for n in 1..=max_apex {
        for c in enumerate_bool_preorders(n) {
            let ls = enumerate_functors(t.a(), &c, budget)?;
            let rs = enumerate_functors(&c, t.e(), budget)?;
            for l in &ls {
                for r in &rs {
                    let adj = RelativeAdjunction::bool_from_legs(&format!("res{}", out.len()), &t.j, l, r);
                    if adj.validate().is_ok() && induced_monad(&adj)? == *t {
                        out.push(adj);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Strict morphisms of resolutions `src -> tgt`: functors between the
/// apices commuting with both legs and with the transpositions.
pub fn strict_morphisms(src: &RelativeAdjunction, tgt: &RelativeAdjunction, budget: Budget) -> Result<Vec<Fun>> {
    let mut out = vec![];
    for c in enumerate_functors(src.apex(), tgt.apex(), budget)? {
        let n = src.j.dom.n();
        if (0..n).any(|x| c.ob(src.l.ob(x)) != tgt.l.ob(x)) {
            continue;
        }
        let lambda = (0..n).map(|x| tgt.apex().ident(tgt.l.ob(x)).clone()).collect();
        let m = LeftMorphism { name: "strict".into(), c: c.clone(), lambda };
        if m.validate(src, tgt).is_ok() && m.is_strict(src, tgt) {
            out.push(c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::is_fully_faithful;

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn monad_is_algebra_and_opalgebra() {
        for t in corpus::all_monads() {
            assert!(monad_as_algebra(&t).unwrap().validate(&t).is_ok(), "{}", t.name);
            assert!(monad_as_opalgebra(&t).unwrap().validate(&t).is_ok(), "{}", t.name);
        }
    }

    #[test]
    fn em_objects_of_bool_monads_match_the_implication_scan() {
        for t in [corpus::tmax(), corpus::tcl(), RelativeMonad::trivial(&corpus::j01())] {
            let found: Vec<usize> = em_objects(&t, budget()).unwrap().iter().map(|a| a.carrier).collect();
            let e = t.e();
            let n = t.a().n();
            let oracle: Vec<usize> =
                (0..e.n()).filter(|&c| (0..n).all(|x| e.hom(t.j.ob(x), c) == 0 || e.hom(t.t(x), c) == 1)).collect();
            assert_eq!(found, oracle, "{}", t.name);
        }
        let tcl = em_objects(&corpus::tcl(), budget()).unwrap();
        assert_eq!(tcl.iter().map(|a| a.carrier).collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn tmax_zero_is_not_an_algebra() {
        let t = corpus::tmax();
        let bad = EMAlgebra { carrier: 0, ext: vec![Mor::new(1, 0, vec![]), Mor::new(0, 0, vec![])] };
        let rep = validate_em_algebra(&bad, &t);
        assert!(rep.violations.iter().any(|v| v.law == "well_typed" && v.at == vec![0]), "{rep:?}");
    }

    #[test]
    fn kleisli_of_bool_monads() {
        let t = corpus::tmax();
        let kl = kleisli(&t).unwrap();
        assert!(kl.cat.validate().is_ok());
        assert_eq!(kl.cat.hom, vec![1, 1, 1, 1]);
        assert!(kl.opalgebra().validate(&t).is_ok());
        let t = corpus::tcl();
        let kl = kleisli(&t).unwrap();
        assert!(kl.cat.validate().is_ok());
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(kl.cat.hom(x, y) == 1, x <= t.t(y));
            }
        }
        assert_eq!((kl.cat.hom(0, 1), kl.cat.hom(1, 0)), (1, 1));
    }

    #[test]
    fn kleisli_of_trivial_monad_on_ff_root_is_the_domain() {
        let j = corpus::j01();
        assert!(is_fully_faithful(&j));
        let kl = kleisli(&RelativeMonad::trivial(&j)).unwrap();
        assert!(is_iso_functor(&kl.k));
    }

    #[test]
    fn kleisli_of_finset_monads_validates() {
        for t in corpus::inc1_monads() {
            let kl = kleisli(&t).unwrap();
            assert!(kl.cat.validate().is_ok(), "{}", t.name);
            assert!(kl.opalgebra().validate(&t).is_ok(), "{}", t.name);
        }
    }

    #[test]
    fn em_categories() {
        let t = corpus::tmax();
        let em = em_category(&t, budget()).unwrap();
        assert_eq!(em.u.obj_map, vec![2]);
        assert!(em.cat.validate().is_ok());
        assert!(em.algebra().validate(&t).is_ok());
        let t = corpus::tcl();
        let em = em_category(&t, budget()).unwrap();
        assert_eq!(em.u.obj_map, vec![1, 2]);
        assert_eq!(em.cat.hom, vec![1, 1, 0, 1]);
        let triv = RelativeMonad::trivial(&corpus::j01());
        let em = em_category(&triv, budget()).unwrap();
        assert_eq!(em.u.obj_map, vec![0, 1, 2]);
        for t in corpus::inc1_monads() {
            let em = em_category(&t, budget()).unwrap();
            assert!(em.cat.validate().is_ok(), "{}", t.name);
            assert!(em.algebra().validate(&t).is_ok(), "{}", t.name);
        }
    }

    #[test]
    fn em_homs_are_exactly_the_graded_homomorphisms() {
        for t in corpus::inc1_monads() {
            let em = em_category(&t, budget()).unwrap();
            let (e, v) = (t.e().clone(), t.base().clone());
            let m = em.algebras.len();
            for a in 0..m {
                for b in 0..m {
                    let (ea, eb) = (em.algebras[a].carrier, em.algebras[b].carrier);
                    let direct = (0..e.hom(ea, eb))
                        .filter(|&h| {
                            let g = GradedHom { grade: v.unit(), h: v.element(e.hom(ea, eb), h) };
                            validate_graded_hom(&g, &em.algebras[a], &em.algebras[b], &t).is_ok()
                        })
                        .count();
                    assert_eq!(em.cat.hom(a, b), direct, "{} {a} {b}", t.name);
                }
            }
        }
    }

    #[test]
    fn mediators() {
        let t = corpus::tmax();
        let kl = kleisli(&t).unwrap();
        let f = factor_through_kleisli(&t, &kl, &kl.opalgebra()).unwrap();
        assert!(f.is_identity());
        let vt = factor_through_kleisli(&t, &kl, &monad_as_opalgebra(&t).unwrap()).unwrap();
        assert_eq!(vt.obj_map, vec![2, 2]);
        assert_eq!(*vt, *kleisli_right_leg(&t, &kl));
        let em = em_category(&t, budget()).unwrap();
        let g = factor_through_em(&t, &em, &em.algebra()).unwrap();
        assert!(g.is_identity());
        let ms = algebra_mediators(&em.algebra(), &monad_as_algebra(&t).unwrap(), budget()).unwrap();
        assert_eq!(ms.len(), 1);
        // TMAX into the codiscrete two-object category
        let (kl2, k, _) = corpus::tmax_kleisli_legs();
        let op = Opalgebra { a: k.clone(), ext: Form::bool_unique("x", Opalgebra::frame(&t, &k).unwrap()).unwrap() };
        assert!(op.validate(&t).is_ok());
        let ms = opalgebra_mediators(&kl.opalgebra(), &op, budget()).unwrap();
        assert_eq!(ms.len(), 1);
        assert!(same_cat(&ms[0].cod, &kl2));
    }

    #[test]
    fn tcl_inclusion_algebra_factors_as_identity() {
        let t = corpus::tcl();
        let em = em_category(&t, budget()).unwrap();
        let sub = EnrichedCategory::bool_preorder("S", &corpus::q2(), &["1", "2"], |x, y| x <= y).unwrap();
        let inc = EnrichedFunctor::bool_functor("inc", &sub, t.e(), vec![1, 2]);
        let alg = TAlgebra { ext: Form::bool_unique("x", TAlgebra::frame(&t, &inc).unwrap()).unwrap(), e: inc };
        assert!(alg.validate(&t).is_ok());
        let f = factor_through_em(&t, &em, &alg).unwrap();
        assert_eq!(f.obj_map, vec![0, 1]);
        assert!(is_algebra_mediator(&em.algebra(), &alg, &f));
    }

    #[test]
    fn resolutions_induce_the_monad() {
        for t in corpus::all_monads() {
            let (_, kres) = resolution_from_kleisli(&t).unwrap();
            assert!(kres.validate().is_ok(), "{} {:?}", t.name, kres.validate());
            assert_eq!(induced_monad(&kres).unwrap(), t, "{}", t.name);
            let (_, eres) = resolution_from_em(&t, budget()).unwrap();
            assert!(eres.validate().is_ok(), "{} {:?}", t.name, eres.validate());
            assert_eq!(induced_monad(&eres).unwrap(), t, "{}", t.name);
        }
    }

    #[test]
    fn comparison_triangles_commute() {
        for t in corpus::all_monads() {
            let (i, ok) = comparison(&t, budget()).unwrap();
            assert!(ok, "{}", t.name);
            assert!(i.validate().is_ok());
        }
        let (i, _) = comparison(&corpus::tcl(), budget()).unwrap();
        let em = em_category(&corpus::tcl(), budget()).unwrap();
        assert!(i.obj_map.iter().all(|&k| [1, 2].contains(&em.algebras[k].carrier)));
    }

    #[test]
    fn certification_of_tmax() {
        let t = corpus::tmax();
        let pool = GradingPool::corpus_bool(&t).unwrap();
        let kl = kleisli(&t).unwrap();
        assert!(check_opalgebra_object(&t, &kl.opalgebra(), &pool, budget()).unwrap().holds());
        let em = em_category(&t, budget()).unwrap();
        assert!(check_algebra_object(&t, &em.algebra(), &pool, budget()).unwrap().holds());
        // (t, dag) is an opalgebra but not the universal one
        let c = check_opalgebra_object(&t, &monad_as_opalgebra(&t).unwrap(), &pool, budget()).unwrap();
        assert!(!c.holds());
    }

    #[test]
    fn coincidence() {
        let t = corpus::tmax();
        let kl = kleisli(&t).unwrap();
        assert!(coincidence_check(&t, &kl.k, budget()).unwrap());
        let em = em_category(&t, budget()).unwrap();
        let f = free_algebra_functor(&t, &em).unwrap();
        assert!(coincidence_check(&t, &f, budget()).unwrap());
        let err = coincidence_check(&t, &corpus::j01(), budget()).unwrap_err();
        assert!(matches!(err, Error::PreconditionFailed(_)));
    }

    #[test]
    fn preorder_counts() {
        let counts: Vec<usize> = (1..=3).map(|n| enumerate_bool_preorders(n).len()).collect();
        assert_eq!(counts, vec![1, 4, 29]);
    }
}
