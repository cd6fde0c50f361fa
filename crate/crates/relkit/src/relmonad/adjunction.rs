//! Relative adjunctions `l -|_j r`, stored as a hom-isomorphism
//! `C(lx, c) ≅ E(jx, rc)`, with the unit, counit and universal-arrow views.

use serde::{Deserialize, Serialize};

use crate::enriched::{conjoint, hom_dist, loose_identity, same_cat, same_fun, EnrichedFunctor, Form, Frame, Fun};
use crate::error::{Error, Result, ValidationReport};
use crate::relmonad::{MonadMorphism, RelativeMonad};
use crate::vkernel::{mor_eq, Mor};

#[derive(Debug, Clone)]
pub struct RelativeAdjunction {
    pub name: String,
    /// Root `A -> E`.
    pub j: Fun,
    /// Left leg `A -> C`.
    pub l: Fun,
    /// Right leg `C -> E`.
    pub r: Fun,
    /// `sharp[x*|C| + c] : C(lx, c) -> E(jx, rc)`.
    pub sharp: Vec<Mor>,
    /// `flat[x*|C| + c] : E(jx, rc) -> C(lx, c)`.
    pub flat: Vec<Mor>,
}

impl PartialEq for RelativeAdjunction {
    fn eq(&self, o: &Self) -> bool {
        same_fun(&self.j, &o.j) && same_fun(&self.l, &o.l) && same_fun(&self.r, &o.r) && self.sharp == o.sharp && self.flat == o.flat
    }
}

/// The four equivalent ways of giving an adjunction on fixed legs.
///
/// `eta[x] : I -> E(jx, rlx)`; `counit[(c'*|A| + x)*|C| + c] :
/// C(c', lx) (x) E(jx, rc) -> C(c', c)`; `sharp` and `flat` as above.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "presentation", rename_all = "snake_case")]
pub enum Presentation {
    HomIso { sharp: Vec<Mor>, flat: Vec<Mor> },
    UniversalArrow { eta: Vec<Mor>, flat: Vec<Mor> },
    UnitCounit { eta: Vec<Mor>, counit: Vec<Mor> },
    Couniversal { sharp: Vec<Mor>, counit: Vec<Mor> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PresentationKind {
    HomIso,
    UniversalArrow,
    UnitCounit,
    Couniversal,
}

impl PresentationKind {
    pub const ALL: [PresentationKind; 4] =
        [PresentationKind::HomIso, PresentationKind::UniversalArrow, PresentationKind::UnitCounit, PresentationKind::Couniversal];
}

impl Presentation {
    pub fn kind(&self) -> PresentationKind {
        match self {
            Presentation::HomIso { .. } => PresentationKind::HomIso,
            Presentation::UniversalArrow { .. } => PresentationKind::UniversalArrow,
            Presentation::UnitCounit { .. } => PresentationKind::UnitCounit,
            Presentation::Couniversal { .. } => PresentationKind::Couniversal,
        }
    }
}

/// Shared accessors for the three legs.
struct Legs<'a> {
    j: &'a Fun,
    l: &'a Fun,
    r: &'a Fun,
}

impl Legs<'_> {
    fn na(&self) -> usize {
        self.j.dom.n()
    }
    fn nc(&self) -> usize {
        self.l.cod.n()
    }
    fn check(&self) -> Result<()> {
        if !same_cat(&self.j.dom, &self.l.dom) || !same_cat(&self.l.cod, &self.r.dom) || !same_cat(&self.r.cod, &self.j.cod) {
            return Err(Error::frame(format!("legs {} and {} do not fit the root {}", self.l.name, self.r.name, self.j.name)));
        }
        Ok(())
    }
    fn xc(&self, x: usize, c: usize) -> usize {
        x * self.nc() + c
    }
    fn eps(&self, c2: usize, x: usize, c: usize) -> usize {
        (c2 * self.na() + x) * self.nc() + c
    }

    /// `sharp = r ; (eta (x) 1) ; comp`.
    fn sharp_from_eta(&self, eta: &[Mor]) -> Result<Vec<Mor>> {
        let (c, e) = (&self.l.cod, &self.j.cod);
        let v = &c.base;
        let mut out = Vec::with_capacity(self.na() * self.nc());
        for x in 0..self.na() {
            for y in 0..self.nc() {
                let (lx, jx) = (self.l.ob(x), self.j.ob(x));
                let m = v.tensor_mor(&eta[x], &v.identity(e.hom(self.r.ob(lx), self.r.ob(y))))?;
                let m = v.compose(self.r.map(lx, y), &m)?;
                out.push(v.compose(&m, e.comp(jx, self.r.ob(lx), self.r.ob(y)))?);
            }
        }
        Ok(out)
    }

    /// `eta = I_{lx} ; sharp`.
    fn eta_from_sharp(&self, sharp: &[Mor]) -> Result<Vec<Mor>> {
        let c = &self.l.cod;
        (0..self.na())
            .map(|x| c.base.compose(c.ident(self.l.ob(x)), &sharp[self.xc(x, self.l.ob(x))]))
            .collect()
    }

    /// `counit = (1 (x) flat) ; comp`.
    fn counit_from_flat(&self, flat: &[Mor]) -> Result<Vec<Mor>> {
        let c = &self.l.cod;
        let v = &c.base;
        let mut out = Vec::with_capacity(self.nc() * self.na() * self.nc());
        for c2 in 0..self.nc() {
            for x in 0..self.na() {
                for y in 0..self.nc() {
                    let lx = self.l.ob(x);
                    let m = v.tensor_mor(&v.identity(c.hom(c2, lx)), &flat[self.xc(x, y)])?;
                    out.push(v.compose(&m, c.comp(c2, lx, y))?);
                }
            }
        }
        Ok(out)
    }

    /// `flat = (I_{lx} (x) 1) ; counit`.
    fn flat_from_counit(&self, counit: &[Mor]) -> Result<Vec<Mor>> {
        let (c, e) = (&self.l.cod, &self.j.cod);
        let v = &c.base;
        let mut out = Vec::with_capacity(self.na() * self.nc());
        for x in 0..self.na() {
            for y in 0..self.nc() {
                let lx = self.l.ob(x);
                let m = v.tensor_mor(c.ident(lx), &v.identity(e.hom(self.j.ob(x), self.r.ob(y))))?;
                out.push(v.compose(&m, &counit[self.eps(lx, x, y)])?);
            }
        }
        Ok(out)
    }

    fn identity_on_e(&self, x: usize, y: usize) -> Mor {
        self.j.cod.base.identity(self.j.cod.hom(self.j.ob(x), self.r.ob(y)))
    }

    fn identity_on_c(&self, x: usize, y: usize) -> Mor {
        self.l.cod.base.identity(self.l.cod.hom(self.l.ob(x), y))
    }

    /// Each given family must be a form: natural in every index.
    fn natural(&self, p: &Presentation) -> Result<()> {
        let (c, e) = (&self.l.cod, &self.j.cod);
        let idc = EnrichedFunctor::identity(c);
        let ejr = hom_dist(self.j, self.r)?;
        let mut forms = vec![];
        let (eta, sharp, flat, counit) = match p {
            Presentation::HomIso { sharp, flat } => (None, Some(sharp), Some(flat), None),
            Presentation::UniversalArrow { eta, flat } => (Some(eta), None, Some(flat), None),
            Presentation::UnitCounit { eta, counit } => (Some(eta), None, None, Some(counit)),
            Presentation::Couniversal { sharp, counit } => (None, Some(sharp), None, Some(counit)),
        };
        if let Some(eta) = eta {
            let fr = Frame::nullary(self.j.clone(), self.l.then(self.r)?, loose_identity(e))?;
            forms.push(("unit", Form::tabulate("eta", fr, |t| Ok(eta[t[0]].clone()))?));
        }
        if let Some(sharp) = sharp {
            let fr = Frame::plain(vec![conjoint(self.l)?], ejr.clone())?;
            forms.push(("sharp", Form::tabulate("sharp", fr, |t| Ok(sharp[self.xc(t[0], t[1])].clone()))?));
        }
        if let Some(flat) = flat {
            let fr = Frame::plain(vec![ejr.clone()], conjoint(self.l)?)?;
            forms.push(("flat", Form::tabulate("flat", fr, |t| Ok(flat[self.xc(t[0], t[1])].clone()))?));
        }
        if let Some(counit) = counit {
            let fr = Frame::plain(vec![hom_dist(&idc, self.l)?, ejr.clone()], loose_identity(c))?;
            forms.push(("counit", Form::tabulate("eps", fr, |t| Ok(counit[self.eps(t[0], t[1], t[2])].clone()))?));
        }
        for (what, f) in forms {
            let rep = f.validate();
            if let Some(v) = rep.violations.first() {
                return Err(Error::LawViolation(format!("{what} is not natural: {} at {:?}", v.law, v.at)));
            }
        }
        Ok(())
    }

    /// The diagrams of each presentation, reported as the first failure.
    fn laws(&self, p: &Presentation) -> Result<()> {
        self.natural(p)?;
        let (c, e) = (&self.l.cod, &self.j.cod);
        let v = &c.base;
        let fail = |diagram: &str, at: Vec<usize>| Err(Error::LawViolation(format!("{diagram} fails at {at:?}")));
        match p {
            Presentation::HomIso { sharp, flat } => {
                for x in 0..self.na() {
                    for y in 0..self.nc() {
                        let k = self.xc(x, y);
                        if !mor_eq(&v.compose(&sharp[k], &flat[k]), &Ok(self.identity_on_c(x, y))) {
                            return fail("sharp ; flat = 1", vec![x, y]);
                        }
                        if !mor_eq(&v.compose(&flat[k], &sharp[k]), &Ok(self.identity_on_e(x, y))) {
                            return fail("flat ; sharp = 1", vec![x, y]);
                        }
                    }
                }
            }
            Presentation::UniversalArrow { eta, flat } => {
                let sharp = self.sharp_from_eta(eta)?;
                for x in 0..self.na() {
                    for y in 0..self.na() {
                        let (jx, jy, ly) = (self.j.ob(x), self.j.ob(y), self.l.ob(y));
                        let lhs = v
                            .tensor_mor(self.j.map(x, y), &eta[y])
                            .and_then(|m| v.compose(&m, e.comp(jx, jy, self.r.ob(ly))))
                            .and_then(|m| v.compose(&m, &flat[self.xc(x, ly)]));
                        if !mor_eq(&lhs, &Ok(self.l.map(x, y).clone())) {
                            return fail("l = j ; (1 (x) eta) ; comp ; flat", vec![x, y]);
                        }
                    }
                    for y in 0..self.nc() {
                        let k = self.xc(x, y);
                        if !mor_eq(&v.compose(&flat[k], &sharp[k]), &Ok(self.identity_on_e(x, y))) {
                            return fail("flat ; r ; (eta (x) 1) ; comp = 1", vec![x, y]);
                        }
                    }
                }
            }
            Presentation::UnitCounit { eta, counit } => {
                for c2 in 0..self.nc() {
                    for x in 0..self.na() {
                        let lx = self.l.ob(x);
                        let lhs = v
                            .tensor_mor(&v.identity(c.hom(c2, lx)), &eta[x])
                            .and_then(|m| v.compose(&m, &counit[self.eps(c2, x, lx)]));
                        if !mor_eq(&lhs, &Ok(v.identity(c.hom(c2, lx)))) {
                            return fail("(1 (x) eta) ; counit = 1", vec![c2, x]);
                        }
                    }
                }
                let flat = self.flat_from_counit(counit)?;
                let sharp = self.sharp_from_eta(eta)?;
                for x in 0..self.na() {
                    for y in 0..self.nc() {
                        let k = self.xc(x, y);
                        if !mor_eq(&v.compose(&flat[k], &sharp[k]), &Ok(self.identity_on_e(x, y))) {
                            return fail("(I (x) 1) ; counit ; r ; (eta (x) 1) ; comp = 1", vec![x, y]);
                        }
                    }
                }
            }
            Presentation::Couniversal { sharp, counit } => {
                for c2 in 0..self.nc() {
                    for x in 0..self.na() {
                        for y in 0..self.nc() {
                            let lx = self.l.ob(x);
                            let lhs = v
                                .tensor_mor(&v.identity(c.hom(c2, lx)), &sharp[self.xc(x, y)])
                                .and_then(|m| v.compose(&m, &counit[self.eps(c2, x, y)]));
                            if !mor_eq(&lhs, &Ok(c.comp(c2, lx, y).clone())) {
                                return fail("(1 (x) sharp) ; counit = comp", vec![c2, x, y]);
                            }
                        }
                    }
                }
                let flat = self.flat_from_counit(counit)?;
                for x in 0..self.na() {
                    for y in 0..self.nc() {
                        let k = self.xc(x, y);
                        if !mor_eq(&v.compose(&flat[k], &sharp[k]), &Ok(self.identity_on_e(x, y))) {
                            return fail("(I (x) 1) ; counit ; sharp = 1", vec![x, y]);
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl RelativeAdjunction {
    fn legs(&self) -> Legs<'_> {
        Legs { j: &self.j, l: &self.l, r: &self.r }
    }

    pub fn apex(&self) -> &crate::enriched::Cat {
        &self.l.cod
    }

    pub fn sharp_at(&self, x: usize, c: usize) -> &Mor {
        &self.sharp[x * self.apex().n() + c]
    }

    pub fn flat_at(&self, x: usize, c: usize) -> &Mor {
        &self.flat[x * self.apex().n() + c]
    }

    /// Over the Boolean base the transpositions are forced; the legs decide
    /// whether they exist.
    pub fn bool_from_legs(name: &str, j: &Fun, l: &Fun, r: &Fun) -> RelativeAdjunction {
        let (c, e) = (l.cod.clone(), j.cod.clone());
        let (na, nc) = (j.dom.n(), c.n());
        let mut sharp = Vec::with_capacity(na * nc);
        let mut flat = Vec::with_capacity(na * nc);
        for x in 0..na {
            for y in 0..nc {
                let (p, q) = (c.hom(l.ob(x), y), e.hom(j.ob(x), r.ob(y)));
                sharp.push(Mor::new(p, q, vec![]));
                flat.push(Mor::new(q, p, vec![]));
            }
        }
        RelativeAdjunction { name: name.into(), j: j.clone(), l: l.clone(), r: r.clone(), sharp, flat }
    }

    /// `j -|_j 1_E` with identity transpositions.
    pub fn identity(j: &Fun) -> RelativeAdjunction {
        let e = j.cod.clone();
        let v = e.base.clone();
        let (na, ne) = (j.dom.n(), e.n());
        let ids: Vec<Mor> = (0..na * ne).map(|k| v.identity(e.hom(j.ob(k / ne), k % ne))).collect();
        RelativeAdjunction {
            name: format!("{} -| 1", j.name),
            j: j.clone(),
            l: j.clone(),
            r: EnrichedFunctor::identity(&e),
            sharp: ids.clone(),
            flat: ids,
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new(format!("adjunction {}", self.name));
        let lg = self.legs();
        if let Err(e) = lg.check() {
            rep.push("well_typed", &[], e.to_string());
            return rep;
        }
        let (c, e) = (self.apex().clone(), self.j.cod.clone());
        let v = c.base.clone();
        let (na, nc) = (lg.na(), lg.nc());
        if self.sharp.len() != na * nc || self.flat.len() != na * nc {
            rep.push("well_typed", &[], "transposition tables have the wrong length");
            return rep;
        }
        for x in 0..na {
            for y in 0..nc {
                let (p, q) = (c.hom(self.l.ob(x), y), e.hom(self.j.ob(x), self.r.ob(y)));
                let s = self.sharp_at(x, y);
                if v.check_mor(s).is_err() || s.dom != p || s.cod != q {
                    rep.push("well_typed.sharp", &[x, y], "sharp is not C(lx, c) -> E(jx, rc)");
                }
                let f = self.flat_at(x, y);
                if v.check_mor(f).is_err() || f.dom != q || f.cod != p {
                    rep.push("well_typed.flat", &[x, y], "flat is not E(jx, rc) -> C(lx, c)");
                }
            }
        }
        if !rep.is_ok() {
            return rep;
        }
        for x in 0..na {
            for y in 0..nc {
                let (s, f) = (self.sharp_at(x, y), self.flat_at(x, y));
                if !mor_eq(&v.compose(s, f), &Ok(lg.identity_on_c(x, y))) {
                    rep.push("sharp_flat_inverse", &[x, y], "sharp ; flat != 1");
                }
                if !mor_eq(&v.compose(f, s), &Ok(lg.identity_on_e(x, y))) {
                    rep.push("flat_sharp_inverse", &[x, y], "flat ; sharp != 1");
                }
            }
        }
        match self.sharp_form() {
            Ok(f) => rep.absorb("sharp_natural", f.validate()),
            Err(e) => rep.push("well_typed", &[], e.to_string()),
        }
        match self.flat_form() {
            Ok(f) => rep.absorb("flat_natural", f.validate()),
            Err(e) => rep.push("well_typed", &[], e.to_string()),
        }
        rep
    }

    /// `sharp : C(l, 1) => E(j, r)`.
    pub fn sharp_form(&self) -> Result<Form> {
        let frame = Frame::plain(vec![conjoint(&self.l)?], hom_dist(&self.j, &self.r)?)?;
        Form::tabulate("sharp", frame, |t| Ok(self.sharp_at(t[0], t[1]).clone()))
    }

    /// `flat : E(j, r) => C(l, 1)`.
    pub fn flat_form(&self) -> Result<Form> {
        let frame = Frame::plain(vec![hom_dist(&self.j, &self.r)?], conjoint(&self.l)?)?;
        Form::tabulate("flat", frame, |t| Ok(self.flat_at(t[0], t[1]).clone()))
    }

    pub fn unit(&self) -> Result<Vec<Mor>> {
        self.legs().eta_from_sharp(&self.sharp)
    }

    pub fn counit(&self) -> Result<Vec<Mor>> {
        self.legs().counit_from_flat(&self.flat)
    }

    /// The unit as a nullary form `j => l ; r`.
    pub fn unit_form(&self) -> Result<Form> {
        let eta = self.unit()?;
        let frame = Frame::nullary(self.j.clone(), self.l.then(&self.r)?, loose_identity(&self.j.cod))?;
        Form::tabulate("eta", frame, |t| Ok(eta[t[0]].clone()))
    }

    /// The counit as a form `C(1, l), E(j, r) => C(1, 1)`.
    pub fn counit_form(&self) -> Result<Form> {
        let eps = self.counit()?;
        let c = self.apex().clone();
        let cp = hom_dist(&EnrichedFunctor::identity(&c), &self.l)?;
        let frame = Frame::plain(vec![cp, hom_dist(&self.j, &self.r)?], loose_identity(&c))?;
        let lg = self.legs();
        Form::tabulate("eps", frame, |t| Ok(eps[lg.eps(t[0], t[1], t[2])].clone()))
    }

    pub fn to_presentation(&self, kind: PresentationKind) -> Result<Presentation> {
        Ok(match kind {
            PresentationKind::HomIso => Presentation::HomIso { sharp: self.sharp.clone(), flat: self.flat.clone() },
            PresentationKind::UniversalArrow => Presentation::UniversalArrow { eta: self.unit()?, flat: self.flat.clone() },
            PresentationKind::UnitCounit => Presentation::UnitCounit { eta: self.unit()?, counit: self.counit()? },
            PresentationKind::Couniversal => Presentation::Couniversal { sharp: self.sharp.clone(), counit: self.counit()? },
        })
    }

    /// Rebuilds the hom-isomorphism from any presentation after checking
    /// that presentation's own diagrams.
    pub fn from_presentation(name: &str, j: &Fun, l: &Fun, r: &Fun, p: &Presentation) -> Result<RelativeAdjunction> {
        let lg = Legs { j, l, r };
        lg.check()?;
        let (na, nc) = (lg.na(), lg.nc());
        let lens_ok = match p {
            Presentation::HomIso { sharp, flat } => sharp.len() == na * nc && flat.len() == na * nc,
            Presentation::UniversalArrow { eta, flat } => eta.len() == na && flat.len() == na * nc,
            Presentation::UnitCounit { eta, counit } => eta.len() == na && counit.len() == nc * na * nc,
            Presentation::Couniversal { sharp, counit } => sharp.len() == na * nc && counit.len() == nc * na * nc,
        };
        if !lens_ok {
            return Err(Error::malformed("presentation tables have the wrong length"));
        }
        lg.laws(p)?;
        let (sharp, flat) = match p {
            Presentation::HomIso { sharp, flat } => (sharp.clone(), flat.clone()),
            Presentation::UniversalArrow { eta, flat } => (lg.sharp_from_eta(eta)?, flat.clone()),
            Presentation::UnitCounit { eta, counit } => (lg.sharp_from_eta(eta)?, lg.flat_from_counit(counit)?),
            Presentation::Couniversal { sharp, counit } => (sharp.clone(), lg.flat_from_counit(counit)?),
        };
        Ok(RelativeAdjunction { name: name.into(), j: j.clone(), l: l.clone(), r: r.clone(), sharp, flat })
    }
}

/// `t = l ; r`, `eta = I ; sharp`, `dag = flat ; r`.
pub fn induced_monad(adj: &RelativeAdjunction) -> Result<RelativeMonad> {
    let v = adj.apex().base.clone();
    let n = adj.j.dom.n();
    let (l, r) = (&adj.l, &adj.r);
    let mut ext = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            ext.push(v.compose(adj.flat_at(x, l.ob(y)), r.map(l.ob(x), l.ob(y)))?);
        }
    }
    Ok(RelativeMonad {
        name: format!("mnd({})", adj.name),
        j: adj.j.clone(),
        obj_map: (0..n).map(|x| r.ob(l.ob(x))).collect(),
        unit: adj.unit()?,
        ext,
    })
}

pub fn is_resolution(adj: &RelativeAdjunction, t: &RelativeMonad) -> Result<bool> {
    Ok(induced_monad(adj)? == *t)
}

fn check_outer(inner_j: &Fun, outer: &RelativeAdjunction, lprime: &Fun) -> Result<()> {
    let lj = lprime.then(inner_j)?;
    if !same_fun(&lj, &outer.l) {
        return Err(Error::frame(format!("outer left leg {} is not {} ; {}", outer.l.name, lprime.name, inner_j.name)));
    }
    if !same_cat(&outer.r.dom, &inner_j.cod) {
        return Err(Error::frame("outer right leg does not start at the codomain of the inner root"));
    }
    Ok(())
}

/// Composite of `l -|_j r` with `l' ; j -|_{j'} r'`: the adjunction
/// `l' ; l -|_{j'} r ; r'`, whose transposition runs through both.
pub fn compose_adjunctions(inner: &RelativeAdjunction, outer: &RelativeAdjunction, lprime: &Fun) -> Result<RelativeAdjunction> {
    check_outer(&inner.j, outer, lprime)?;
    let v = inner.apex().base.clone();
    let (l, r) = (lprime.then(&inner.l)?, inner.r.then(&outer.r)?);
    let (nb, nc) = (lprime.dom.n(), inner.apex().n());
    let mut sharp = Vec::with_capacity(nb * nc);
    let mut flat = Vec::with_capacity(nb * nc);
    for x in 0..nb {
        for c in 0..nc {
            let (x1, rc) = (lprime.ob(x), inner.r.ob(c));
            sharp.push(v.compose(inner.sharp_at(x1, c), outer.sharp_at(x, rc))?);
            flat.push(v.compose(outer.flat_at(x, rc), inner.flat_at(x1, c))?);
        }
    }
    Ok(RelativeAdjunction { name: format!("{};{}", inner.name, outer.name), j: outer.j.clone(), l, r, sharp, flat })
}

/// The `j'`-monad `l' ; t ; r'` obtained by pushing `T` along the outer
/// adjunction, together with the comparison from the outer adjunction's
/// own monad.
pub fn pushforward_monad(outer: &RelativeAdjunction, lprime: &Fun, t: &RelativeMonad) -> Result<(RelativeMonad, MonadMorphism)> {
    check_outer(&t.j, outer, lprime)?;
    let v = t.base().clone();
    let (rp, n) = (&outer.r, lprime.dom.n());
    let mut unit = Vec::with_capacity(n);
    let mut tau = Vec::with_capacity(n);
    for x in 0..n {
        let x1 = lprime.ob(x);
        unit.push(v.compose(t.eta(x1), outer.sharp_at(x, t.t(x1)))?);
        tau.push(v.compose(t.eta(x1), rp.map(t.j.ob(x1), t.t(x1)))?);
    }
    let mut ext = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let (x1, y1) = (lprime.ob(x), lprime.ob(y));
            let m = v.compose(outer.flat_at(x, t.t(y1)), t.dag(x1, y1))?;
            ext.push(v.compose(&m, rp.map(t.t(x1), t.t(y1)))?);
        }
    }
    let obj_map = (0..n).map(|x| rp.ob(t.t(lprime.ob(x)))).collect();
    let m = RelativeMonad { name: format!("push({})", t.name), j: outer.j.clone(), obj_map, unit, ext };
    Ok((m, MonadMorphism { name: format!("tau({})", t.name), comps: tau }))
}

/// `c : C -> C'` with `r = c ; r'` and `lambda : l' => l ; c`.
#[derive(Debug, Clone)]
pub struct LeftMorphism {
    pub name: String,
    pub c: Fun,
    /// `lambda[x] : I -> C'(l'x, c l x)`.
    pub lambda: Vec<Mor>,
}

/// `c : C -> C'` with `l ; c = l'` and `rho : r => c ; r'`.
#[derive(Debug, Clone)]
pub struct RightMorphism {
    pub name: String,
    pub c: Fun,
    /// `rho[y] : I -> E(ry, r' c y)`.
    pub rho: Vec<Mor>,
}

fn same_root(src: &RelativeAdjunction, tgt: &RelativeAdjunction, c: &Fun) -> Option<&'static str> {
    if !same_fun(&src.j, &tgt.j) {
        return Some("adjunctions over different roots");
    }
    if !same_cat(&c.dom, src.apex()) || !same_cat(&c.cod, tgt.apex()) {
        return Some("c does not run between the apices");
    }
    None
}

impl LeftMorphism {
    pub fn identity(adj: &RelativeAdjunction) -> LeftMorphism {
        let c = adj.apex().clone();
        LeftMorphism {
            name: format!("1_{}", adj.name),
            c: EnrichedFunctor::identity(&c),
            lambda: (0..adj.j.dom.n()).map(|x| c.ident(adj.l.ob(x)).clone()).collect(),
        }
    }

    /// `(r, eta)` into `j -|_j 1`.
    pub fn to_identity(adj: &RelativeAdjunction) -> Result<LeftMorphism> {
        Ok(LeftMorphism { name: format!("(r,eta)_{}", adj.name), c: adj.r.clone(), lambda: adj.unit()? })
    }

    /// From `compose(inner, outer)` to `outer`: the leg `r` with `eta` at `l'`.
    pub fn from_composite(inner: &RelativeAdjunction, lprime: &Fun) -> Result<LeftMorphism> {
        let eta = inner.unit()?;
        Ok(LeftMorphism {
            name: format!("(r,eta l')_{}", inner.name),
            c: inner.r.clone(),
            lambda: (0..lprime.dom.n()).map(|x| eta[lprime.ob(x)].clone()).collect(),
        })
    }

    pub fn is_strict(&self, src: &RelativeAdjunction, tgt: &RelativeAdjunction) -> bool {
        let n = src.j.dom.n();
        let c2 = tgt.apex();
        src.l.then(&self.c).map(|lc| same_fun(&lc, &tgt.l)).unwrap_or(false)
            && self.lambda.len() == n
            && (0..n).all(|x| self.lambda[x] == *c2.ident(tgt.l.ob(x)))
    }

    pub fn validate(&self, src: &RelativeAdjunction, tgt: &RelativeAdjunction) -> ValidationReport {
        let mut rep = ValidationReport::new(format!("left morphism {}", self.name));
        if let Some(msg) = same_root(src, tgt, &self.c) {
            rep.push("well_typed", &[], msg);
            return rep;
        }
        let n = src.j.dom.n();
        let (c2, e) = (tgt.apex().clone(), src.j.cod.clone());
        let v = e.base.clone();
        match self.c.then(&tgt.r) {
            Ok(cr) if same_fun(&cr, &src.r) => {}
            _ => rep.push("right_legs", &[], "r != c ; r'"),
        }
        if self.lambda.len() != n {
            rep.push("well_typed", &[], "wrong number of lambda components");
            return rep;
        }
        for x in 0..n {
            let m = &self.lambda[x];
            if v.check_mor(m).is_err() || m.dom != v.unit() || m.cod != c2.hom(tgt.l.ob(x), self.c.ob(src.l.ob(x))) {
                rep.push("well_typed.lambda", &[x], "lambda is not I -> C'(l'x, c l x)");
            }
        }
        if !rep.is_ok() {
            return rep;
        }
        let nat = src
            .l
            .then(&self.c)
            .and_then(|lc| Frame::nullary(tgt.l.clone(), lc, loose_identity(&c2)))
            .and_then(|fr| Form::tabulate("lambda", fr, |t| Ok(self.lambda[t[0]].clone())));
        match nat {
            Ok(f) => rep.absorb("lambda_natural", f.validate()),
            Err(err) => rep.push("well_typed", &[], err.to_string()),
        }
        for x in 0..n {
            for y in 0..src.apex().n() {
                let lx = src.l.ob(x);
                let (clx, cy) = (self.c.ob(lx), self.c.ob(y));
                let rhs = v
                    .tensor_mor(&self.lambda[x], &v.identity(c2.hom(clx, cy)))
                    .and_then(|m| v.compose(self.c.map(lx, y), &m))
                    .and_then(|m| v.compose(&m, c2.comp(tgt.l.ob(x), clx, cy)))
                    .and_then(|m| v.compose(&m, tgt.sharp_at(x, cy)));
                if !mor_eq(&Ok(src.sharp_at(x, y).clone()), &rhs) {
                    rep.push("left_square", &[x, y], "sharp != c ; (lambda (x) 1) ; comp ; sharp'");
                }
            }
        }
        rep
    }
}

impl RightMorphism {
    pub fn identity(adj: &RelativeAdjunction) -> RightMorphism {
        let c = adj.apex().clone();
        let e = adj.j.cod.clone();
        RightMorphism {
            name: format!("1_{}", adj.name),
            c: EnrichedFunctor::identity(&c),
            rho: (0..c.n()).map(|y| e.ident(adj.r.ob(y)).clone()).collect(),
        }
    }

    pub fn is_strict(&self, src: &RelativeAdjunction, tgt: &RelativeAdjunction) -> bool {
        let e = &src.j.cod;
        self.c.then(&tgt.r).map(|cr| same_fun(&cr, &src.r)).unwrap_or(false)
            && self.rho.len() == src.apex().n()
            && (0..self.rho.len()).all(|y| self.rho[y] == *e.ident(src.r.ob(y)))
    }

    pub fn validate(&self, src: &RelativeAdjunction, tgt: &RelativeAdjunction) -> ValidationReport {
        let mut rep = ValidationReport::new(format!("right morphism {}", self.name));
        if let Some(msg) = same_root(src, tgt, &self.c) {
            rep.push("well_typed", &[], msg);
            return rep;
        }
        let nc = src.apex().n();
        let e = src.j.cod.clone();
        let v = e.base.clone();
        match src.l.then(&self.c) {
            Ok(lc) if same_fun(&lc, &tgt.l) => {}
            _ => rep.push("left_legs", &[], "l ; c != l'"),
        }
        if self.rho.len() != nc {
            rep.push("well_typed", &[], "wrong number of rho components");
            return rep;
        }
        for y in 0..nc {
            let m = &self.rho[y];
            if v.check_mor(m).is_err() || m.dom != v.unit() || m.cod != e.hom(src.r.ob(y), tgt.r.ob(self.c.ob(y))) {
                rep.push("well_typed.rho", &[y], "rho is not I -> E(ry, r' c y)");
            }
        }
        if !rep.is_ok() {
            return rep;
        }
        let nat = self
            .c
            .then(&tgt.r)
            .and_then(|cr| Frame::nullary(src.r.clone(), cr, loose_identity(&e)))
            .and_then(|fr| Form::tabulate("rho", fr, |t| Ok(self.rho[t[0]].clone())));
        match nat {
            Ok(f) => rep.absorb("rho_natural", f.validate()),
            Err(err) => rep.push("well_typed", &[], err.to_string()),
        }
        for x in 0..src.j.dom.n() {
            for y in 0..nc {
                let (jx, ry, rcy) = (src.j.ob(x), src.r.ob(y), tgt.r.ob(self.c.ob(y)));
                let lhs = v
                    .tensor_mor(&v.identity(e.hom(jx, ry)), &self.rho[y])
                    .and_then(|m| v.compose(src.sharp_at(x, y), &m))
                    .and_then(|m| v.compose(&m, e.comp(jx, ry, rcy)));
                let rhs = v.compose(self.c.map(src.l.ob(x), y), tgt.sharp_at(x, self.c.ob(y)));
                if !mor_eq(&lhs, &rhs) {
                    rep.push("right_square", &[x, y], "sharp ; (1 (x) rho) ; comp != c ; sharp'");
                }
            }
        }
        rep
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::formal::check_left_lift;

    fn tmax_kleisli_resolution() -> RelativeAdjunction {
        let (kl, k, vt) = corpus::tmax_kleisli_legs();
        let _ = kl;
        RelativeAdjunction::bool_from_legs("KL(TMAX)", &corpus::j01(), &k, &vt)
    }

    #[test]
    fn identity_adjunction_validates() {
        for j in [corpus::j01(), corpus::inc1_j()] {
            let adj = RelativeAdjunction::identity(&j);
            assert!(adj.validate().is_ok(), "{:?}", adj.validate());
            assert_eq!(induced_monad(&adj).unwrap(), RelativeMonad::trivial(&j));
            let e = j.cod.clone();
            assert_eq!(adj.unit().unwrap(), (0..j.dom.n()).map(|x| e.ident(j.ob(x)).clone()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn tmax_kleisli_resolution_is_a_resolution() {
        let adj = tmax_kleisli_resolution();
        assert!(adj.validate().is_ok(), "{:?}", adj.validate());
        assert!(is_resolution(&adj, &corpus::tmax()).unwrap());
    }

    #[test]
    fn injected_non_inverse_flat_is_reported() {
        let j = corpus::inc1_j();
        let mut adj = RelativeAdjunction::identity(&j);
        // E(1, 2) has two elements; make flat constant
        let k = 2;
        assert_eq!(adj.flat[k].dom, 2);
        adj.flat[k].code = vec![0, 0];
        let rep = adj.validate();
        assert!(rep.laws().contains(&"sharp_flat_inverse".to_string()), "{rep:?}");
    }

    #[test]
    fn all_presentations_round_trip() {
        for adj in [RelativeAdjunction::identity(&corpus::j01()), RelativeAdjunction::identity(&corpus::inc1_j()), tmax_kleisli_resolution()] {
            for a in PresentationKind::ALL {
                let pa = adj.to_presentation(a).unwrap();
                let back = RelativeAdjunction::from_presentation(&adj.name, &adj.j, &adj.l, &adj.r, &pa).unwrap();
                assert_eq!(back, adj);
                for b in PresentationKind::ALL {
                    let pb = back.to_presentation(b).unwrap();
                    let again = RelativeAdjunction::from_presentation(&adj.name, &adj.j, &adj.l, &adj.r, &pb).unwrap();
                    assert_eq!(again.to_presentation(a).unwrap(), pa);
                }
            }
        }
    }

    #[test]
    fn zig_zag_fault_raises_law_violation() {
        let j = corpus::inc1_j();
        let adj = RelativeAdjunction::identity(&j);
        let Presentation::UnitCounit { eta, mut counit } = adj.to_presentation(PresentationKind::UnitCounit).unwrap() else {
            unreachable!()
        };
        // counit at (c'=1, x=*, c=2): E(1,1) (x) E(1,2) -> E(1,2); collapse it
        let lg = Legs { j: &adj.j, l: &adj.l, r: &adj.r };
        let k = lg.eps(1, 0, 2);
        counit[k].code.iter_mut().for_each(|c| *c = 0);
        let err = RelativeAdjunction::from_presentation("bad", &adj.j, &adj.l, &adj.r, &Presentation::UnitCounit { eta, counit }).unwrap_err();
        assert!(matches!(err, Error::LawViolation(ref s) if s.contains("counit")), "{err}");
    }

    #[test]
    fn morphisms_into_the_identity_adjunction() {
        let adj = tmax_kleisli_resolution();
        let id = RelativeAdjunction::identity(&adj.j);
        let m = LeftMorphism::to_identity(&adj).unwrap();
        assert!(m.validate(&adj, &id).is_ok(), "{:?}", m.validate(&adj, &id));
        let one = LeftMorphism::identity(&adj);
        assert!(one.validate(&adj, &adj).is_ok());
        assert!(one.is_strict(&adj, &adj));
        let one = RightMorphism::identity(&adj);
        assert!(one.validate(&adj, &adj).is_ok());
        assert!(one.is_strict(&adj, &adj));
    }

    #[test]
    fn rho_is_unique_over_a_dense_root() {
        // identity roots are dense; every component of rho is forced
        let adj = RelativeAdjunction::identity(&EnrichedFunctor::identity(&corpus::inc1_e()));
        let e = adj.j.cod.clone();
        let v = e.base.clone();
        let sizes: Vec<usize> = (0..e.n()).map(|y| e.hom(y, y)).collect();
        let total: usize = sizes.iter().product();
        assert_eq!(total, 4);
        let mut valid = vec![];
        for k in 0..total {
            let mut rest = k;
            let rho: Vec<Mor> = sizes
                .iter()
                .map(|&s| {
                    let m = Mor::new(v.unit(), s, vec![(rest % s) as u32]);
                    rest /= s;
                    m
                })
                .collect();
            let m = RightMorphism { name: format!("rho{k}"), c: EnrichedFunctor::identity(adj.apex()), rho };
            if m.validate(&adj, &adj).is_ok() {
                valid.push(m);
            }
        }
        assert_eq!(valid.len(), 1);
        assert!(valid[0].is_strict(&adj, &adj));
    }

    #[test]
    fn left_adjoint_is_a_left_lift() {
        let adj = tmax_kleisli_resolution();
        let eta = adj.unit_form().unwrap();
        let c = check_left_lift(&adj.j, &adj.r, &adj.l, &eta).unwrap();
        assert!(c.verdict);
    }

    #[test]
    fn composite_and_pushforward_agree() {
        let inner = tmax_kleisli_resolution();
        let (outer, lprime) = corpus::coreflection_outer();
        assert!(outer.validate().is_ok(), "{:?}", outer.validate());
        let comp = compose_adjunctions(&inner, &outer, &lprime).unwrap();
        assert!(comp.validate().is_ok(), "{:?}", comp.validate());
        let lm = LeftMorphism::from_composite(&inner, &lprime).unwrap();
        assert!(lm.validate(&comp, &outer).is_ok(), "{:?}", lm.validate(&comp, &outer));
        let (push, tau) = pushforward_monad(&outer, &lprime, &corpus::tmax()).unwrap();
        assert!(push.validate().is_ok());
        let induced = induced_monad(&comp).unwrap();
        assert_eq!(push, induced);
        assert_eq!(push.obj_map, vec![1, 1]);
        let own = induced_monad(&outer).unwrap();
        assert!(tau.validate(&own, &push).is_ok());
    }

    #[test]
    fn identity_outer_leaves_things_unchanged() {
        let inner = tmax_kleisli_resolution();
        let j = inner.j.clone();
        let outer = RelativeAdjunction::identity(&j);
        let lprime = EnrichedFunctor::identity(&j.dom);
        let comp = compose_adjunctions(&inner, &outer, &lprime).unwrap();
        assert_eq!(comp.sharp, inner.sharp);
        assert_eq!(comp.l.obj_map, inner.l.obj_map);
        let (push, _) = pushforward_monad(&outer, &lprime, &corpus::tmax()).unwrap();
        assert_eq!(push, corpus::tmax());
        for m in corpus::inc1_monads() {
            let outer = RelativeAdjunction::identity(&m.j);
            let lprime = EnrichedFunctor::identity(&m.j.dom);
            assert_eq!(pushforward_monad(&outer, &lprime, &m).unwrap().0, m);
        }
    }
}
