//! Loose monads (monads on a single category in the loose direction) and the
//! passage from relative monads to them.

use crate::enriched::{hom_dist, id_form, paste, restrict, tuple_at, Dist, EnrichedFunctor, Form, Frame, Fun};
use crate::error::{Error, Result, ValidationReport};
use crate::relmonad::{LooseRelativeMonad, MonadMorphism, RelativeMonad};

/// `t : A ⇸ A` with `mu : t, t => t` and a nullary unit `=> t`.
#[derive(Debug, Clone)]
pub struct LooseMonad {
    pub name: String,
    pub carrier: Dist,
    pub mult: Form,
    pub unit: Form,
}

/// A form `t => t'` between the carriers of two loose monads.
#[derive(Debug, Clone)]
pub struct LooseMonadMorphism {
    pub name: String,
    pub form: Form,
}

fn first_diff(a: &Form, b: &Form) -> Option<Vec<usize>> {
    let sizes = a.frame.sizes();
    a.comps.iter().zip(&b.comps).position(|(x, y)| x != y).map(|k| tuple_at(&sizes, k))
}

impl LooseMonad {
    fn check_frames(&self) -> Result<()> {
        let t = &self.carrier;
        if !crate::enriched::same_cat(&t.left, &t.right) {
            return Err(Error::frame("carrier of a loose monad must be an endo-distributor"));
        }
        if self.mult.frame != Frame::plain(vec![t.clone(), t.clone()], t.clone())? {
            return Err(Error::frame("multiplication must be t, t => t"));
        }
        let id = EnrichedFunctor::identity(&t.left);
        if self.unit.frame != Frame::nullary(id.clone(), id, t.clone())? {
            return Err(Error::frame("unit must be a nullary form into t"));
        }
        Ok(())
    }

    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new(format!("loose monad {}", self.name));
        if let Err(e) = self.check_frames() {
            rep.push("well_typed", &[], e.to_string());
            return rep;
        }
        rep.absorb("mult", self.mult.validate());
        rep.absorb("unit", self.unit.validate());
        if !rep.is_ok() {
            return rep;
        }
        if let Err(e) = self.laws(&mut rep) {
            rep.push("well_typed", &[], e.to_string());
        }
        rep
    }

    fn laws(&self, rep: &mut ValidationReport) -> Result<()> {
        let idt = id_form(&self.carrier)?;
        let l = paste(&[self.mult.clone(), idt.clone()], &self.mult)?;
        let r = paste(&[idt.clone(), self.mult.clone()], &self.mult)?;
        if let Some(at) = first_diff(&l, &r) {
            rep.push("associativity", &at, "(mu, 1) ; mu != (1, mu) ; mu");
        }
        let l = paste(&[self.unit.clone(), idt.clone()], &self.mult)?;
        if let Some(at) = first_diff(&l, &idt) {
            rep.push("left_unit", &at, "(eta, 1) ; mu != 1");
        }
        let r = paste(&[idt.clone(), self.unit.clone()], &self.mult)?;
        if let Some(at) = first_diff(&r, &idt) {
            rep.push("right_unit", &at, "(1, eta) ; mu != 1");
        }
        Ok(())
    }
}

impl LooseMonadMorphism {
    pub fn validate(&self, src: &LooseMonad, tgt: &LooseMonad) -> ValidationReport {
        let mut rep = ValidationReport::new(format!("loose monad morphism {}", self.name));
        let want = Frame::plain(vec![src.carrier.clone()], tgt.carrier.clone());
        if want.map(|w| w != self.form.frame).unwrap_or(true) {
            rep.push("well_typed", &[], "form must be t => t'");
            return rep;
        }
        rep.absorb("form", self.form.validate());
        if !rep.is_ok() {
            return rep;
        }
        let check = || -> Result<Vec<(&'static str, Vec<usize>)>> {
            let mut fails = vec![];
            let l = paste(&[self.form.clone(), self.form.clone()], &tgt.mult)?;
            let r = paste(&[src.mult.clone()], &self.form)?;
            if let Some(at) = first_diff(&l, &r) {
                fails.push(("preserves_multiplication", at));
            }
            let u = paste(&[src.unit.clone()], &self.form)?;
            if let Some(at) = first_diff(&u, &tgt.unit) {
                fails.push(("preserves_unit", at));
            }
            Ok(fails)
        };
        match check() {
            Ok(fails) => fails.into_iter().for_each(|(law, at)| rep.push(law, &at, "square fails")),
            Err(e) => rep.push("well_typed", &[], e.to_string()),
        }
        rep
    }
}

/// `E(j, t)` with multiplication `f, g |-> f ; g^dag` and unit `eta`.
pub fn to_loose_monad(m: &RelativeMonad) -> Result<LooseMonad> {
    let t = m.underlying_functor()?;
    let (e, v) = (m.e().clone(), m.base().clone());
    let j = m.j.clone();
    let p = hom_dist(&j, &t)?;
    let frame = Frame::plain(vec![p.clone(), p.clone()], p.clone())?;
    let mult = Form::tabulate("mu", frame, |s| {
        let (x0, x1, x2) = (s[0], s[1], s[2]);
        let mm = v.tensor_mor(&v.identity(e.hom(j.ob(x0), m.t(x1))), m.dag(x1, x2))?;
        v.compose(&mm, e.comp(j.ob(x0), m.t(x1), m.t(x2)))
    })?;
    let id = EnrichedFunctor::identity(m.a());
    let unit = Form::tabulate("eta", Frame::nullary(id.clone(), id, p.clone())?, |s| Ok(m.eta(s[0]).clone()))?;
    Ok(LooseMonad { name: format!("E(j,{})", m.name), carrier: p, mult, unit })
}

/// The image of a monad morphism: `f |-> f ; tau`.
pub fn loose_morphism(tau: &MonadMorphism, src: &RelativeMonad, tgt: &RelativeMonad) -> Result<LooseMonadMorphism> {
    let (a, b) = (to_loose_monad(src)?, to_loose_monad(tgt)?);
    let (e, v) = (src.e().clone(), src.base().clone());
    let j = src.j.clone();
    let frame = Frame::plain(vec![a.carrier.clone()], b.carrier.clone())?;
    let form = Form::tabulate("E(j,tau)", frame, |s| {
        let (x, y) = (s[0], s[1]);
        let mm = v.tensor_mor(&v.identity(e.hom(j.ob(x), src.t(y))), &tau.comps[y])?;
        v.compose(&mm, e.comp(j.ob(x), src.t(y), tgt.t(y)))
    })?;
    Ok(LooseMonadMorphism { name: format!("E(j,{})", tau.name), form })
}

/// Restriction along the root: carrier `p(j, 1)`, multiplication with an
/// identity inserted in the middle slot, unit `I ; unit`.
pub fn restrict_loose_relative(m: &LooseRelativeMonad) -> Result<LooseMonad> {
    let j = m.j.clone();
    let e = j.cod.clone();
    let v = e.base.clone();
    let ida = EnrichedFunctor::identity(&j.dom);
    let p = restrict(&m.carrier, &j, &ida)?;
    let frame = Frame::plain(vec![p.clone(), p.clone()], p.clone())?;
    let mult = Form::tabulate("mu|j", frame, |s| {
        let (x0, x1, x2) = (s[0], s[1], s[2]);
        let jx1 = j.ob(x1);
        let pre = v.tensor_mors(&[
            &v.identity(m.carrier.at(j.ob(x0), x1)),
            e.ident(jx1),
            &v.identity(m.carrier.at(jx1, x2)),
        ])?;
        v.compose(&pre, m.mult.at(&[j.ob(x0), x1, jx1, x2]))
    })?;
    let nu = m.nullary_unit()?;
    let unit = Form::tabulate("eta|j", Frame::nullary(ida.clone(), ida, p.clone())?, |s| Ok(nu.at(s).clone()))?;
    Ok(LooseMonad { name: format!("{}|j", m.name), carrier: p, mult, unit })
}

/// Inverse of restriction for an identity root: the middle slot is absorbed
/// by the right action and the unit is spread by the left action.
pub fn unrestrict(lm: &LooseMonad) -> Result<LooseRelativeMonad> {
    let p = lm.carrier.clone();
    let c = p.left.clone();
    let v = c.base.clone();
    let j: Fun = EnrichedFunctor::identity(&c);
    let one = hom_dist(&j, &j)?;
    let frame = Frame::plain(vec![p.clone(), one.clone(), p.clone()], p.clone())?;
    let mult = Form::tabulate("mu", frame, |s| {
        let (x0, x1, x2, x3) = (s[0], s[1], s[2], s[3]);
        let m = v.tensor_mor(p.ract(x0, x1, x2), &v.identity(p.at(x2, x3)))?;
        v.compose(&m, lm.mult.at(&[x0, x2, x3]))
    })?;
    let unit = Form::tabulate("unit", Frame::plain(vec![one], p.clone())?, |s| {
        let (x0, x1) = (s[0], s[1]);
        let m = v.tensor_mor(&v.identity(c.hom(x0, x1)), lm.unit.at(&[x1]))?;
        v.compose(&m, p.lact(x0, x1, x1))
    })?;
    Ok(LooseRelativeMonad { name: lm.name.clone(), j, carrier: p, mult, unit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::enriched::composition_form;
    use crate::relmonad::to_monoid_form;

    #[test]
    fn trivial_monad_gives_composition() {
        let j = corpus::inc1_j();
        let lm = to_loose_monad(&RelativeMonad::trivial(&j)).unwrap();
        assert!(lm.validate().is_ok());
        // E(j, j) with composition; here a single hom 1 -> 1 composed with itself
        assert_eq!(lm.carrier.obj, vec![1]);
        let j = corpus::j01();
        let lm = to_loose_monad(&RelativeMonad::trivial(&j)).unwrap();
        let comp = composition_form(&corpus::a2()).unwrap();
        assert_eq!(lm.mult.comps, comp.comps);
    }

    #[test]
    fn tmax_loose_monad_is_full() {
        let lm = to_loose_monad(&corpus::tmax()).unwrap();
        assert_eq!(lm.carrier.obj, vec![1, 1, 1, 1]);
        assert!(lm.validate().is_ok());
    }

    #[test]
    fn every_corpus_monad_gives_a_loose_monad() {
        for m in corpus::all_monads() {
            let lm = to_loose_monad(&m).unwrap();
            assert!(lm.validate().is_ok(), "{} {:?}", m.name, lm.validate());
        }
    }

    #[test]
    fn morphisms_map_to_loose_morphisms() {
        let j = corpus::j01();
        let triv = RelativeMonad::trivial(&j);
        let tmax = corpus::tmax();
        let tau = MonadMorphism::from_trivial(&tmax);
        let phi = loose_morphism(&tau, &triv, &tmax).unwrap();
        let (a, b) = (to_loose_monad(&triv).unwrap(), to_loose_monad(&tmax).unwrap());
        assert!(phi.validate(&a, &b).is_ok());
        for m in corpus::inc1_monads() {
            let triv = RelativeMonad::trivial(&m.j);
            let tau = MonadMorphism::from_trivial(&m);
            let phi = loose_morphism(&tau, &triv, &m).unwrap();
            let rep = phi.validate(&to_loose_monad(&triv).unwrap(), &to_loose_monad(&m).unwrap());
            assert!(rep.is_ok(), "{rep:?}");
        }
    }

    #[test]
    fn restriction_of_monoid_form_is_e_j_t() {
        for m in corpus::all_monads() {
            let mf = to_monoid_form(&m).unwrap();
            let r = restrict_loose_relative(&mf.monoid).unwrap();
            let l = to_loose_monad(&m).unwrap();
            assert_eq!(*r.carrier, *l.carrier, "{}", m.name);
            assert_eq!(r.mult.comps, l.mult.comps, "{}", m.name);
            assert_eq!(r.unit.comps, l.unit.comps, "{}", m.name);
        }
    }

    #[test]
    fn identity_root_round_trip() {
        let m = corpus::tcl();
        let mf = to_monoid_form(&m).unwrap();
        let lm = restrict_loose_relative(&mf.monoid).unwrap();
        let back = unrestrict(&lm).unwrap();
        assert!(back.mult.equal(&mf.monoid.mult).unwrap());
        assert!(back.unit.equal(&mf.monoid.unit).unwrap());
        assert_eq!(lm.validate().is_ok(), back.validate().is_ok());
        let again = restrict_loose_relative(&back).unwrap();
        assert_eq!(again.mult.comps, lm.mult.comps);
    }

    #[test]
    fn broken_associativity_is_located() {
        let m = corpus::inc1_monads().into_iter().find(|m| m.t(0) == 2).unwrap();
        let mut lm = to_loose_monad(&m).unwrap();
        // E(j,t) = E(1,2) has 2 elements; send everything to 0
        for c in lm.mult.comps.iter_mut() {
            c.code.iter_mut().for_each(|x| *x = 0);
        }
        let rep = lm.validate();
        assert!(!rep.is_ok());
        assert!(rep.violations.iter().all(|v| !v.at.is_empty()));
    }
}
