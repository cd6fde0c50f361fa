//! The monoid presentation: a multiplication `E(1,t), E(j,1), E(1,t) => E(1,t)`
//! and a unit `E(1,j) => E(1,t)`, and its translation to and from the
//! extension presentation.

use crate::enriched::{hom_dist, id_form, paste, Dist, EnrichedFunctor, Form, Frame, Fun};
use crate::error::{Error, Result, ValidationReport};
use crate::relmonad::RelativeMonad;

/// A loose `j`-relative monad: `p : E ⇸ A` with a multiplication
/// `p, E(j,1), p => p` and a unit `E(1,j) => p`.
#[derive(Debug, Clone)]
pub struct LooseRelativeMonad {
    pub name: String,
    pub j: Fun,
    pub carrier: Dist,
    pub mult: Form,
    pub unit: Form,
}

/// A relative monad in monoid form: a loose relative monad on `E(1,t)`.
#[derive(Debug, Clone)]
pub struct MonoidFormMonad {
    pub t: Fun,
    pub monoid: LooseRelativeMonad,
}

impl LooseRelativeMonad {
    fn ej1(&self) -> Result<Dist> {
        hom_dist(&self.j, &EnrichedFunctor::identity(&self.j.cod))
    }

    fn e1j(&self) -> Result<Dist> {
        hom_dist(&EnrichedFunctor::identity(&self.j.cod), &self.j)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new(format!("loose relative monad {}", self.name));
        if let Err(e) = self.check_frames() {
            rep.push("well_typed", &[], e.to_string());
            return rep;
        }
        rep.absorb("mult", self.mult.validate());
        rep.absorb("unit", self.unit.validate());
        if !rep.is_ok() {
            return rep;
        }
        match self.law_checks() {
            Ok(fails) => {
                for (law, at) in fails {
                    rep.push(law, &at, "pasting equation fails");
                }
            }
            Err(e) => rep.push("well_typed", &[], e.to_string()),
        }
        rep
    }

    fn check_frames(&self) -> Result<()> {
        let p = &self.carrier;
        let want = Frame::plain(vec![p.clone(), self.ej1()?, p.clone()], p.clone())?;
        if self.mult.frame != want {
            return Err(Error::frame("multiplication must be p, E(j,1), p => p"));
        }
        let want = Frame::plain(vec![self.e1j()?], p.clone())?;
        if self.unit.frame != want {
            return Err(Error::frame("unit must be E(1,j) => p"));
        }
        Ok(())
    }

    /// The canonical cell `E(1,j), E(j,1), p => p` composing through `j`.
    fn left_unitor(&self) -> Result<Form> {
        let (e, p) = (self.j.cod.clone(), self.carrier.clone());
        let v = e.base.clone();
        let e1j = self.e1j()?;
        let ej1 = self.ej1()?;
        let frame = Frame::plain(vec![e1j.clone(), ej1, p.clone()], p.clone())?;
        let j = self.j.clone();
        Form::tabulate("left_unitor", frame, |t| {
            let (x0, x1, x2, x3) = (t[0], t[1], t[2], t[3]);
            let m = v.tensor_mor(e.comp(x0, j.ob(x1), x2), &v.identity(p.at(x2, x3)))?;
            v.compose(&m, p.lact(x0, x2, x3))
        })
    }

    /// Nullary identities `=> E(j,1)` along `(1_A, j)`.
    fn nullary_identity(&self) -> Result<Form> {
        let e = self.j.cod.clone();
        let ida = EnrichedFunctor::identity(&self.j.dom);
        let frame = Frame::nullary(ida, self.j.clone(), self.ej1()?)?;
        let j = self.j.clone();
        Form::tabulate("ident_j", frame, |t| Ok(e.ident(j.ob(t[0])).clone()))
    }

    /// The unit restricted along `j`: nullary `=> p` along `(j, 1_A)`.
    pub fn nullary_unit(&self) -> Result<Form> {
        let e = self.j.cod.clone();
        let v = e.base.clone();
        let ida = EnrichedFunctor::identity(&self.j.dom);
        let frame = Frame::nullary(self.j.clone(), ida, self.carrier.clone())?;
        let j = self.j.clone();
        Form::tabulate("unit_j", frame, |t| v.compose(e.ident(j.ob(t[0])), self.unit.at(&[j.ob(t[0]), t[0]])))
    }

    /// Failing laws with the first witnessing tuple.
    fn law_checks(&self) -> Result<Vec<(&'static str, Vec<usize>)>> {
        let mut fails = vec![];
        let p = &self.carrier;
        let idp = id_form(p)?;
        let idj = id_form(&self.ej1()?)?;
        let first_diff = |a: &Form, b: &Form| -> Option<Vec<usize>> {
            let sizes = a.frame.sizes();
            a.comps
                .iter()
                .zip(&b.comps)
                .position(|(x, y)| x != y)
                .map(|k| crate::enriched::tuple_at(&sizes, k))
        };
        let lhs = paste(&[self.unit.clone(), idj.clone(), idp.clone()], &self.mult)?;
        if let Some(at) = first_diff(&lhs, &self.left_unitor()?) {
            fails.push(("left_unit", at));
        }
        let lhs = paste(&[idp.clone(), self.nullary_identity()?, self.nullary_unit()?], &self.mult)?;
        if let Some(at) = first_diff(&lhs, &idp) {
            fails.push(("right_unit", at));
        }
        let l = paste(&[self.mult.clone(), idj.clone(), idp.clone()], &self.mult)?;
        let r = paste(&[idp.clone(), idj.clone(), self.mult.clone()], &self.mult)?;
        if let Some(at) = first_diff(&l, &r) {
            fails.push(("associativity", at));
        }
        Ok(fails)
    }
}

impl MonoidFormMonad {
    pub fn validate(&self) -> ValidationReport {
        let mut rep = self.monoid.validate();
        let want = hom_dist(&EnrichedFunctor::identity(&self.t.cod), &self.t);
        if want.map(|d| *d != *self.monoid.carrier).unwrap_or(true) {
            rep.push("well_typed", &[], "carrier is not E(1,t)");
        }
        rep
    }
}

pub fn to_monoid_form(m: &RelativeMonad) -> Result<MonoidFormMonad> {
    let t = m.underlying_functor()?;
    let (e, v) = (m.e().clone(), m.base().clone());
    let ide = EnrichedFunctor::identity(&e);
    let j = m.j.clone();
    let p = hom_dist(&ide, &t)?;
    let ej1 = hom_dist(&j, &ide)?;
    let e1j = hom_dist(&ide, &j)?;
    let frame = Frame::plain(vec![p.clone(), ej1, p.clone()], p.clone())?;
    let mult = Form::tabulate("mu", frame, |s| {
        let (x0, x1, x2, x3) = (s[0], s[1], s[2], s[3]);
        let inner = v.compose(e.comp(j.ob(x1), x2, m.t(x3)), m.dag(x1, x3))?;
        let outer = v.tensor_mor(&v.identity(e.hom(x0, m.t(x1))), &inner)?;
        v.compose(&outer, e.comp(x0, m.t(x1), m.t(x3)))
    })?;
    let frame = Frame::plain(vec![e1j], p.clone())?;
    let unit = Form::tabulate("unit", frame, |s| {
        let (x0, x1) = (s[0], s[1]);
        let mm = v.tensor_mor(&v.identity(e.hom(x0, j.ob(x1))), m.eta(x1))?;
        v.compose(&mm, e.comp(x0, j.ob(x1), m.t(x1)))
    })?;
    Ok(MonoidFormMonad {
        t,
        monoid: LooseRelativeMonad { name: format!("mon({})", m.name), j, carrier: p, mult, unit },
    })
}

pub fn from_monoid_form(mf: &MonoidFormMonad) -> Result<RelativeMonad> {
    let lm = &mf.monoid;
    let (j, t) = (lm.j.clone(), mf.t.clone());
    let e = j.cod.clone();
    let v = e.base.clone();
    let n = j.dom.n();
    let mut unit = Vec::with_capacity(n);
    for x in 0..n {
        unit.push(v.compose(e.ident(j.ob(x)), lm.unit.at(&[j.ob(x), x]))?);
    }
    let mut ext = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let (tx, jx) = (t.ob(x), j.ob(x));
            let pre = v.tensor_mors(&[e.ident(tx), e.ident(jx), &v.identity(e.hom(jx, t.ob(y)))])?;
            ext.push(v.compose(&pre, lm.mult.at(&[tx, x, jx, y]))?);
        }
    }
    let name = lm.name.strip_prefix("mon(").and_then(|s| s.strip_suffix(')')).unwrap_or(&lm.name).to_string();
    Ok(RelativeMonad { name, j, obj_map: t.obj_map.clone(), unit, ext })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn round_trips_on_corpus() {
        for m in corpus::all_monads() {
            let mf = to_monoid_form(&m).unwrap();
            assert!(mf.validate().is_ok(), "{} {:?}", m.name, mf.validate());
            let back = from_monoid_form(&mf).unwrap();
            assert_eq!(back, m, "{}", m.name);
            let again = to_monoid_form(&back).unwrap();
            assert_eq!(again.monoid.mult.comps, mf.monoid.mult.comps);
            assert_eq!(again.monoid.unit.comps, mf.monoid.unit.comps);
        }
    }

    #[test]
    fn tmax_multiplication_is_the_unique_bool_form() {
        let mf = to_monoid_form(&corpus::tmax()).unwrap();
        let unique = Form::bool_unique("u", mf.monoid.mult.frame.clone()).unwrap();
        assert!(unique.equal(&mf.monoid.mult).unwrap());
    }

    #[test]
    fn injected_associativity_fault_is_named() {
        let m = corpus::inc1_monads().into_iter().find(|m| m.t(0) == 2).unwrap();
        let mut mf = to_monoid_form(&m).unwrap();
        // redirect one component of the multiplication to a constant map
        let sizes = mf.monoid.mult.frame.sizes();
        let k = (0..mf.monoid.mult.comps.len())
            .find(|&k| {
                let t = crate::enriched::tuple_at(&sizes, k);
                t == vec![2, 0, 1, 0]
            })
            .unwrap();
        let c = &mut mf.monoid.mult.comps[k];
        let first = c.code[0];
        for x in c.code.iter_mut() {
            *x = first;
        }
        let rep = mf.monoid.validate();
        assert!(!rep.is_ok());
    }
}
