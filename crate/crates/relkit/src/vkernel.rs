//! Finite strict monoidal bases.
//!
//! Three backends share one interface: the Boolean quantale, the skeleton of
//! finite sets (strictified by the pairing `<i,j> = i*n + j`) and explicit
//! tables loaded from JSON. Composition is written diagrammatically:
//! `compose(f, g)` is `f ; g`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Budget, Error, Result, ValidationReport};

pub type Obj = usize;

/// Largest finite-set object covered by the arithmetic strictness checks.
pub const FINSET_OBJECT_CHECK: usize = 32;

/// A morphism of the base, compared extensionally.
///
/// `code` is empty for the Boolean backend, the function table for finite
/// sets and a single local index for table bases.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mor {
    pub dom: Obj,
    pub cod: Obj,
    pub code: Vec<u32>,
}

impl Mor {
    pub fn new(dom: Obj, cod: Obj, code: Vec<u32>) -> Self {
        Mor { dom, cod, code }
    }
}

impl fmt::Debug for Mor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}{:?}", self.dom, self.cod, self.code)
    }
}

// Serialized as a flat integer array `[dom, cod, code...]`.
impl Serialize for Mor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2 + self.code.len()))?;
        seq.serialize_element(&self.dom)?;
        seq.serialize_element(&self.cod)?;
        for c in &self.code {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Mor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Mor;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer array [dom, cod, code...]")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut a: A) -> std::result::Result<Mor, A::Error> {
                let dom: usize = a.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let cod: usize = a.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
                let mut code = Vec::new();
                while let Some(c) = a.next_element::<u32>()? {
                    code.push(c);
                }
                Ok(Mor { dom, cod, code })
            }
        }
        d.deserialize_seq(V)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Capabilities {
    #[serde(default)]
    pub equalizers: bool,
    #[serde(default)]
    pub coequalizers: bool,
    #[serde(default)]
    pub nat_objects: bool,
    #[serde(default)]
    pub coend_objects: bool,
    #[serde(default)]
    pub morphism_enumeration: bool,
}

impl Capabilities {
    pub fn all() -> Self {
        Capabilities {
            equalizers: true,
            coequalizers: true,
            nat_objects: true,
            coend_objects: true,
            morphism_enumeration: true,
        }
    }
}

/// An explicit finite strict monoidal category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableBase {
    pub n: usize,
    /// `homs[a*n + b]` is the number of morphisms `a -> b`.
    pub homs: Vec<usize>,
    /// `compose[(a*n + b)*n + c][f * |hom(b,c)| + g]` is the index of `f ; g`.
    pub compose: Vec<Vec<u32>>,
    pub identities: Vec<u32>,
    pub unit: Obj,
    pub tensor_obj: Vec<Option<Obj>>,
    pub tensor_mor: HashMap<(Obj, Obj, u32, Obj, Obj, u32), u32>,
    pub capabilities: Capabilities,
}

impl TableBase {
    fn hom(&self, a: Obj, b: Obj) -> usize {
        self.homs[a * self.n + b]
    }

    /// Checks index completeness: every composite and identity is in range.
    pub fn check_complete(&self) -> Result<()> {
        let n = self.n;
        if self.homs.len() != n * n {
            return Err(Error::malformed("homs must be an n x n table"));
        }
        if self.identities.len() != n || self.tensor_obj.len() != n * n {
            return Err(Error::malformed("identities / tensor_obj have the wrong length"));
        }
        if self.unit >= n {
            return Err(Error::malformed("unit out of range"));
        }
        if self.compose.len() != n * n * n {
            return Err(Error::malformed("compose must cover every object triple"));
        }
        for a in 0..n {
            if self.identities[a] as usize >= self.hom(a, a) {
                return Err(Error::malformed(format!("identity of {a} out of range")));
            }
            for b in 0..n {
                if let Some(t) = self.tensor_obj[a * n + b] {
                    if t >= n {
                        return Err(Error::malformed(format!("tensor_obj({a},{b}) out of range")));
                    }
                }
                for c in 0..n {
                    let tab = &self.compose[(a * n + b) * n + c];
                    if tab.len() != self.hom(a, b) * self.hom(b, c) {
                        return Err(Error::malformed(format!("compose table ({a},{b},{c}) is ragged")));
                    }
                    if tab.iter().any(|&k| k as usize >= self.hom(a, c)) {
                        return Err(Error::malformed(format!("compose table ({a},{b},{c}) out of range")));
                    }
                }
            }
        }
        for (&(a, b, f, c, d, g), &k) in &self.tensor_mor {
            let ok = a < n && b < n && c < n && d < n && (f as usize) < self.hom(a, b) && (g as usize) < self.hom(c, d);
            let dom = self.tensor_obj.get(a * n + c).copied().flatten();
            let cod = self.tensor_obj.get(b * n + d).copied().flatten();
            match (ok, dom, cod) {
                (true, Some(x), Some(y)) if (k as usize) < self.hom(x, y) => {}
                _ => return Err(Error::malformed(format!("tensor_mor entry ({a},{b},{f},{c},{d},{g}) invalid"))),
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Backend {
    Bool,
    FinSet { max_card: usize },
    Tables(TableBase),
}

/// A finite strict monoidal category.
///
/// `reversed` flips the tensor (`x (x)rev y := y (x) x`); it is how the dual
/// base of the duality module is represented.
#[derive(Debug, Clone)]
pub struct MonoidalBase {
    pub name: String,
    pub backend: Backend,
    pub reversed: bool,
}

impl PartialEq for MonoidalBase {
    fn eq(&self, other: &Self) -> bool {
        self.backend == other.backend && self.effective_reversed() == other.effective_reversed()
    }
}

impl Eq for MonoidalBase {}

pub type Base = Arc<MonoidalBase>;

pub fn make_bool_quantale() -> Base {
    Arc::new(MonoidalBase { name: "Q2".into(), backend: Backend::Bool, reversed: false })
}

pub fn make_finset_skeleton(max_card: usize) -> Result<Base> {
    if max_card == 0 {
        return Err(Error::malformed("max_card must be positive"));
    }
    Ok(Arc::new(MonoidalBase {
        name: format!("FS{max_card}"),
        backend: Backend::FinSet { max_card },
        reversed: false,
    }))
}

pub fn make_table_base(name: &str, tables: TableBase) -> Result<Base> {
    tables.check_complete()?;
    if tables.capabilities.nat_objects || tables.capabilities.coend_objects {
        return Err(Error::malformed("table bases cannot provide nat_objects or coend_objects"));
    }
    Ok(Arc::new(MonoidalBase { name: name.into(), backend: Backend::Tables(tables), reversed: false }))
}

/// Equalizer or coequalizer: the object and its structure map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limit {
    pub obj: Obj,
    pub map: Mor,
}

impl MonoidalBase {
    pub fn is_bool(&self) -> bool {
        matches!(self.backend, Backend::Bool)
    }

    pub fn is_finset(&self) -> bool {
        matches!(self.backend, Backend::FinSet { .. })
    }

    /// The Boolean tensor is commutative, so reversal is invisible there.
    fn effective_reversed(&self) -> bool {
        self.reversed && !self.is_bool()
    }

    pub fn n_objects(&self) -> usize {
        match &self.backend {
            Backend::Bool => 2,
            Backend::FinSet { max_card } => max_card + 1,
            Backend::Tables(t) => t.n,
        }
    }

    pub fn capabilities(&self) -> Capabilities {
        match &self.backend {
            Backend::Bool | Backend::FinSet { .. } => Capabilities::all(),
            Backend::Tables(t) => t.capabilities,
        }
    }

    pub fn unit(&self) -> Obj {
        match &self.backend {
            Backend::Bool => 1,
            Backend::FinSet { .. } => 1,
            Backend::Tables(t) => t.unit,
        }
    }

    fn check_obj(&self, a: Obj) -> Result<()> {
        if a < self.n_objects() {
            Ok(())
        } else {
            Err(Error::malformed(format!("object {a} out of range in base {}", self.name)))
        }
    }

    pub fn hom_count(&self, a: Obj, b: Obj) -> u128 {
        match &self.backend {
            Backend::Bool => u128::from(a <= b),
            Backend::FinSet { .. } => (b as u128).checked_pow(a as u32).unwrap_or(u128::MAX),
            Backend::Tables(t) => t.hom(a, b) as u128,
        }
    }

    /// All morphisms `a -> b` in canonical (lexicographic) order.
    pub fn hom_iter(&self, a: Obj, b: Obj) -> HomIter {
        let state = match &self.backend {
            Backend::Bool => HomState::Index { next: 0, count: usize::from(a <= b) },
            Backend::Tables(t) => HomState::Index { next: 0, count: t.hom(a, b) },
            Backend::FinSet { .. } => {
                if a > 0 && b == 0 {
                    HomState::Done
                } else {
                    HomState::Table { cur: vec![0; a] }
                }
            }
        };
        HomIter { a, b, bool_like: self.is_bool(), state }
    }

    pub fn homs(&self, a: Obj, b: Obj, budget: Budget) -> Result<Vec<Mor>> {
        budget.check(self.hom_count(a, b))?;
        Ok(self.hom_iter(a, b).collect())
    }

    pub fn identity(&self, a: Obj) -> Mor {
        match &self.backend {
            Backend::Bool => Mor::new(a, a, vec![]),
            Backend::FinSet { .. } => Mor::new(a, a, (0..a as u32).collect()),
            Backend::Tables(t) => Mor::new(a, a, vec![t.identities[a]]),
        }
    }

    /// Checks that `f` is a well-formed morphism of this base.
    pub fn check_mor(&self, f: &Mor) -> Result<()> {
        self.check_obj(f.dom)?;
        self.check_obj(f.cod)?;
        let ok = match &self.backend {
            Backend::Bool => f.dom <= f.cod && f.code.is_empty(),
            Backend::FinSet { .. } => f.code.len() == f.dom && f.code.iter().all(|&c| (c as usize) < f.cod),
            Backend::Tables(t) => f.code.len() == 1 && (f.code[0] as usize) < t.hom(f.dom, f.cod),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::malformed(format!("{f:?} is not a morphism of base {}", self.name)))
        }
    }

    /// Diagrammatic composite `f ; g`.
    pub fn compose(&self, f: &Mor, g: &Mor) -> Result<Mor> {
        if f.cod != g.dom {
            return Err(Error::malformed(format!("cannot compose {f:?} ; {g:?}")));
        }
        Ok(match &self.backend {
            Backend::Bool => Mor::new(f.dom, g.cod, vec![]),
            Backend::FinSet { .. } => Mor::new(f.dom, g.cod, f.code.iter().map(|&i| g.code[i as usize]).collect()),
            Backend::Tables(t) => {
                let (a, b, c) = (f.dom, f.cod, g.cod);
                let k = t.compose[(a * t.n + b) * t.n + c][f.code[0] as usize * t.hom(b, c) + g.code[0] as usize];
                Mor::new(a, c, vec![k])
            }
        })
    }

    /// Composite of a nonempty path.
    pub fn compose_all(&self, fs: &[&Mor]) -> Result<Mor> {
        let mut acc = fs.first().ok_or_else(|| Error::malformed("empty composite"))?.to_owned().clone();
        for f in &fs[1..] {
            acc = self.compose(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn tensor_obj(&self, a: Obj, b: Obj) -> Result<Obj> {
        let (a, b) = if self.effective_reversed() { (b, a) } else { (a, b) };
        match &self.backend {
            Backend::Bool => Ok(a.min(b)),
            Backend::FinSet { max_card } => {
                let p = a * b;
                if p > *max_card {
                    Err(Error::CardinalityOverflow(p, *max_card))
                } else {
                    Ok(p)
                }
            }
            Backend::Tables(t) => t.tensor_obj[a * t.n + b]
                .ok_or_else(|| Error::malformed(format!("tensor_obj({a},{b}) is outside the carrier"))),
        }
    }

    pub fn tensor_objs(&self, objs: &[Obj]) -> Result<Obj> {
        let mut acc = self.unit();
        for &o in objs {
            acc = self.tensor_obj(acc, o)?;
        }
        Ok(acc)
    }

    pub fn tensor_mor(&self, f: &Mor, g: &Mor) -> Result<Mor> {
        let dom = self.tensor_obj(f.dom, g.dom)?;
        let cod = self.tensor_obj(f.cod, g.cod)?;
        Ok(match &self.backend {
            Backend::Bool => Mor::new(dom, cod, vec![]),
            Backend::FinSet { .. } => {
                let code = (0..dom)
                    .map(|k| {
                        let (i, j) = self.unpair(f.dom, g.dom, k);
                        self.pair(f.cod, g.cod, f.code[i] as usize, g.code[j] as usize) as u32
                    })
                    .collect();
                Mor::new(dom, cod, code)
            }
            Backend::Tables(t) => {
                let (f, g) = if self.effective_reversed() { (g, f) } else { (f, g) };
                let key = (f.dom, f.cod, f.code[0], g.dom, g.cod, g.code[0]);
                let k = t.tensor_mor.get(&key).ok_or_else(|| {
                    Error::malformed(format!("tensor_mor({f:?},{g:?}) is outside the carrier"))
                })?;
                Mor::new(dom, cod, vec![*k])
            }
        })
    }

    pub fn tensor_mors(&self, fs: &[&Mor]) -> Result<Mor> {
        let u = self.unit();
        let mut acc = self.identity(u);
        for f in fs {
            acc = self.tensor_mor(&acc, f)?;
        }
        Ok(acc)
    }

    // Element-level access for the finite-set backend.

    /// Index in `a (x) b` of the pair `(i, j)`; respects reversal.
    pub fn pair(&self, a: usize, b: usize, i: usize, j: usize) -> usize {
        if self.effective_reversed() {
            j * a + i
        } else {
            i * b + j
        }
    }

    pub fn unpair(&self, a: usize, b: usize, k: usize) -> (usize, usize) {
        if self.effective_reversed() {
            (k % a, k / a)
        } else {
            (k / b, k % b)
        }
    }

    /// The global element `e : I -> n` of a finite set.
    pub fn element(&self, n: Obj, e: usize) -> Mor {
        Mor::new(self.unit(), n, vec![e as u32])
    }

    pub fn inverse(&self, f: &Mor) -> Option<Mor> {
        match &self.backend {
            Backend::Bool => (f.dom == f.cod).then(|| f.clone()),
            Backend::FinSet { .. } => {
                if f.dom != f.cod {
                    return None;
                }
                let mut inv = vec![u32::MAX; f.dom];
                for (i, &c) in f.code.iter().enumerate() {
                    if inv[c as usize] != u32::MAX {
                        return None;
                    }
                    inv[c as usize] = i as u32;
                }
                Some(Mor::new(f.cod, f.dom, inv))
            }
            Backend::Tables(_) => self.hom_iter(f.cod, f.dom).find(|g| {
                self.compose(f, g).ok() == Some(self.identity(f.dom))
                    && self.compose(g, f).ok() == Some(self.identity(f.cod))
            }),
        }
    }

    pub fn is_iso(&self, f: &Mor) -> bool {
        self.inverse(f).is_some()
    }

    pub fn equalizer(&self, f: &Mor, g: &Mor) -> Result<Limit> {
        if !self.capabilities().equalizers {
            return Err(Error::CapabilityMissing("equalizers"));
        }
        if f.dom != g.dom || f.cod != g.cod {
            return Err(Error::NotParallel);
        }
        match &self.backend {
            Backend::Bool => Ok(Limit { obj: f.dom, map: self.identity(f.dom) }),
            Backend::FinSet { .. } => {
                let keep: Vec<u32> = (0..f.dom as u32).filter(|&i| f.code[i as usize] == g.code[i as usize]).collect();
                Ok(Limit { obj: keep.len(), map: Mor::new(keep.len(), f.dom, keep) })
            }
            Backend::Tables(_) => self.search_equalizer(f, g),
        }
    }

    /// The unique `u` with `u ; eq.map = h`, for `h` equalizing the pair.
    pub fn equalizer_factor(&self, eq: &Limit, h: &Mor) -> Result<Mor> {
        if h.cod != eq.map.cod {
            return Err(Error::NotParallel);
        }
        match &self.backend {
            Backend::Bool => {
                if h.dom <= eq.obj {
                    Ok(Mor::new(h.dom, eq.obj, vec![]))
                } else {
                    Err(Error::LawViolation("morphism does not factor through the equalizer".into()))
                }
            }
            Backend::FinSet { .. } => {
                let mut code = Vec::with_capacity(h.dom);
                for &x in &h.code {
                    match eq.map.code.iter().position(|&y| y == x) {
                        Some(p) => code.push(p as u32),
                        None => {
                            return Err(Error::LawViolation("morphism does not factor through the equalizer".into()))
                        }
                    }
                }
                Ok(Mor::new(h.dom, eq.obj, code))
            }
            Backend::Tables(_) => {
                let hits: Vec<Mor> =
                    self.hom_iter(h.dom, eq.obj).filter(|u| self.compose(u, &eq.map).ok().as_ref() == Some(h)).collect();
                match hits.len() {
                    1 => Ok(hits.into_iter().next().unwrap()),
                    _ => Err(Error::LawViolation(format!("{} factorizations through the equalizer", hits.len()))),
                }
            }
        }
    }

    pub fn coequalizer(&self, f: &Mor, g: &Mor) -> Result<Limit> {
        if !self.capabilities().coequalizers {
            return Err(Error::CapabilityMissing("coequalizers"));
        }
        if f.dom != g.dom || f.cod != g.cod {
            return Err(Error::NotParallel);
        }
        match &self.backend {
            Backend::Bool => Ok(Limit { obj: f.cod, map: self.identity(f.cod) }),
            Backend::FinSet { .. } => {
                let pairs: Vec<(usize, usize)> =
                    f.code.iter().zip(&g.code).map(|(&a, &b)| (a as usize, b as usize)).collect();
                let (k, proj) = quotient(f.cod, &pairs);
                Ok(Limit { obj: k, map: Mor::new(f.cod, k, proj) })
            }
            Backend::Tables(_) => self.search_coequalizer(f, g),
        }
    }

    /// The unique `u` with `co.map ; u = h`, for `h` coequalizing the pair.
    pub fn coequalizer_factor(&self, co: &Limit, h: &Mor) -> Result<Mor> {
        if h.dom != co.map.dom {
            return Err(Error::NotParallel);
        }
        match &self.backend {
            Backend::Bool => {
                if co.obj <= h.cod {
                    Ok(Mor::new(co.obj, h.cod, vec![]))
                } else {
                    Err(Error::LawViolation("morphism does not factor through the coequalizer".into()))
                }
            }
            Backend::FinSet { .. } => {
                let mut code = vec![u32::MAX; co.obj];
                for (x, &cls) in co.map.code.iter().enumerate() {
                    let slot = &mut code[cls as usize];
                    if *slot == u32::MAX {
                        *slot = h.code[x];
                    } else if *slot != h.code[x] {
                        return Err(Error::LawViolation("morphism does not coequalize the pair".into()));
                    }
                }
                Ok(Mor::new(co.obj, h.cod, code))
            }
            Backend::Tables(_) => {
                let hits: Vec<Mor> =
                    self.hom_iter(co.obj, h.cod).filter(|u| self.compose(&co.map, u).ok().as_ref() == Some(h)).collect();
                match hits.len() {
                    1 => Ok(hits.into_iter().next().unwrap()),
                    _ => Err(Error::LawViolation(format!("{} factorizations through the coequalizer", hits.len()))),
                }
            }
        }
    }

    fn all_mors_into(&self, b: Obj) -> Vec<Mor> {
        (0..self.n_objects()).flat_map(|o| self.hom_iter(o, b).collect::<Vec<_>>()).collect()
    }

    fn all_mors_from(&self, a: Obj) -> Vec<Mor> {
        (0..self.n_objects()).flat_map(|o| self.hom_iter(a, o).collect::<Vec<_>>()).collect()
    }

    fn search_equalizer(&self, f: &Mor, g: &Mor) -> Result<Limit> {
        let equalizes = |m: &Mor| self.compose(m, f).ok() == self.compose(m, g).ok();
        let cones: Vec<Mor> = self.all_mors_into(f.dom).into_iter().filter(|m| equalizes(m)).collect();
        for m in &cones {
            let universal = cones.iter().all(|c| {
                self.hom_iter(c.dom, m.dom).filter(|u| self.compose(u, m).ok().as_ref() == Some(c)).count() == 1
            });
            if universal {
                return Ok(Limit { obj: m.dom, map: m.clone() });
            }
        }
        Err(Error::LawViolation("no equalizer exists in this table base".into()))
    }

    fn search_coequalizer(&self, f: &Mor, g: &Mor) -> Result<Limit> {
        let coequalizes = |m: &Mor| self.compose(f, m).ok() == self.compose(g, m).ok();
        let cocones: Vec<Mor> = self.all_mors_from(f.cod).into_iter().filter(|m| coequalizes(m)).collect();
        for m in &cocones {
            let universal = cocones.iter().all(|c| {
                self.hom_iter(m.cod, c.cod).filter(|u| self.compose(m, u).ok().as_ref() == Some(c)).count() == 1
            });
            if universal {
                return Ok(Limit { obj: m.cod, map: m.clone() });
            }
        }
        Err(Error::LawViolation("no coequalizer exists in this table base".into()))
    }

    /// Bounded check that `eq` is an equalizer: every competing cone from an
    /// object of size at most `max_obj` factors uniquely.
    pub fn certify_equalizer(&self, f: &Mor, g: &Mor, eq: &Limit, max_obj: Obj, budget: Budget) -> Result<bool> {
        let incl = &eq.map;
        if self.compose(incl, f)? != self.compose(incl, g)? {
            return Ok(false);
        }
        let mut spent: u128 = 0;
        for o in 0..=max_obj.min(self.n_objects() - 1) {
            spent = spent.saturating_add(self.hom_count(o, f.dom).saturating_mul(self.hom_count(o, eq.obj).max(1)));
            budget.check(spent)?;
            for c in self.hom_iter(o, f.dom) {
                if self.compose(&c, f)? != self.compose(&c, g)? {
                    continue;
                }
                let n = self.hom_iter(o, eq.obj).filter(|u| self.compose(u, incl).ok().as_ref() == Some(&c)).count();
                if n != 1 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Exhaustive check of the category, functoriality and strictness laws.
    ///
    /// Finite-set skeleta are checked at the morphism level on objects of
    /// size at most 3 and arithmetically on objects up to
    /// `FINSET_OBJECT_CHECK`.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new(format!("base {}", self.name));
        // large skeleta are checked arithmetically on an initial segment
        let n = match &self.backend {
            Backend::FinSet { max_card } => (*max_card).min(FINSET_OBJECT_CHECK) + 1,
            _ => self.n_objects(),
        };
        let mor_level: Vec<Obj> = match &self.backend {
            Backend::FinSet { max_card } => (0..=(*max_card).min(3)).collect(),
            _ => (0..n).collect(),
        };
        let u = self.unit();
        // strictness on objects
        for a in 0..n {
            match (self.tensor_obj(u, a), self.tensor_obj(a, u)) {
                (Ok(x), Ok(y)) if x == a && y == a => {}
                _ => rep.push("strict_unit", &[a], "I (x) a = a = a (x) I fails"),
            }
            for b in 0..n {
                for c in 0..n {
                    let l = self.tensor_obj(a, b).and_then(|ab| self.tensor_obj(ab, c));
                    let r = self.tensor_obj(b, c).and_then(|bc| self.tensor_obj(a, bc));
                    match (l, r) {
                        (Ok(x), Ok(y)) if x != y => rep.push("strict_assoc", &[a, b, c], "tensor_obj not associative"),
                        // a bracketing may leave the carrier of a partial tensor
                        _ => {}
                    }
                }
            }
        }
        if self.is_finset() {
            // pairing associativity, element by element
            let max = n - 1;
            for m in 1..=max {
                for nn in 1..=(max / m) {
                    for p in 1..=(max / (m * nn)) {
                        for i in 0..m {
                            for j in 0..nn {
                                for k in 0..p {
                                    let l = self.pair(m * nn, p, self.pair(m, nn, i, j), k);
                                    let r = self.pair(m, nn * p, i, self.pair(nn, p, j, k));
                                    if l != r {
                                        rep.push("pairing_assoc", &[m, nn, p, i, j, k], "pairing not associative");
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        let mors: Vec<Mor> = mor_level
            .iter()
            .flat_map(|&a| mor_level.iter().flat_map(move |&b| self.hom_iter(a, b).collect::<Vec<_>>()))
            .collect();
        for f in &mors {
            let (a, b) = (f.dom, f.cod);
            if self.compose(&self.identity(a), f).ok().as_ref() != Some(f) {
                rep.push("left_unit", &[a, b, f.code.first().copied().unwrap_or(0) as usize], format!("id ; {f:?}"));
            }
            if self.compose(f, &self.identity(b)).ok().as_ref() != Some(f) {
                rep.push("right_unit", &[a, b, f.code.first().copied().unwrap_or(0) as usize], format!("{f:?} ; id"));
            }
            let iu = self.identity(u);
            if let (Ok(l), Ok(r)) = (self.tensor_mor(&iu, f), self.tensor_mor(f, &iu)) {
                if &l != f || &r != f {
                    rep.push("strict_unit_mor", &[a, b], format!("id_I (x) {f:?}"));
                }
            }
        }
        for f in &mors {
            for g in mors.iter().filter(|g| g.dom == f.cod) {
                let fg = match self.compose(f, g) {
                    Ok(x) => x,
                    Err(_) => continue,
                };
                for h in mors.iter().filter(|h| h.dom == g.cod) {
                    let l = self.compose(&fg, h).ok();
                    let r = self.compose(g, h).and_then(|gh| self.compose(f, &gh)).ok();
                    if l != r {
                        rep.push(
                            "associativity",
                            &[f.dom, g.dom, h.dom, h.cod],
                            format!("({f:?};{g:?});{h:?} != {f:?};({g:?};{h:?})"),
                        );
                    }
                }
            }
        }
        // functoriality of the tensor
        for &a in &mor_level {
            for &b in &mor_level {
                if let (Ok(ab), Ok(_)) = (self.tensor_obj(a, b), self.tensor_obj(b, a)) {
                    let t = self.tensor_mor(&self.identity(a), &self.identity(b));
                    if t.ok() != Some(self.identity(ab)) {
                        rep.push("tensor_identity", &[a, b], "id (x) id != id");
                    }
                }
            }
        }
        if !self.is_finset() {
            for f in &mors {
                for f2 in mors.iter().filter(|x| x.dom == f.cod) {
                    for g in &mors {
                        for g2 in mors.iter().filter(|x| x.dom == g.cod) {
                            let l = self.tensor_mor(f, g).and_then(|fg| {
                                self.tensor_mor(f2, g2).and_then(|fg2| self.compose(&fg, &fg2))
                            });
                            let r = self.compose(f, f2).and_then(|ff| {
                                self.compose(g, g2).and_then(|gg| self.tensor_mor(&ff, &gg))
                            });
                            if let (Ok(l), Ok(r)) = (l, r) {
                                if l != r {
                                    rep.push("tensor_interchange", &[f.dom, f.cod, g.dom, g.cod], "interchange fails");
                                }
                            }
                        }
                    }
                }
            }
        }
        rep
    }
}

/// Equality of two computed morphisms; a failed computation is never equal.
pub fn mor_eq(a: &Result<Mor>, b: &Result<Mor>) -> bool {
    matches!((a, b), (Ok(a), Ok(b)) if a == b)
}

/// Quotient of `0..n` by the equivalence generated by `pairs`; classes are
/// numbered in order of their least element.
pub fn quotient(n: usize, pairs: &[(usize, usize)]) -> (usize, Vec<u32>) {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi] = lo;
        }
    }
    let mut class = vec![u32::MAX; n];
    let mut next = 0u32;
    let mut proj = Vec::with_capacity(n);
    for x in 0..n {
        let r = find(&mut parent, x);
        if class[r] == u32::MAX {
            class[r] = next;
            next += 1;
        }
        proj.push(class[r]);
    }
    (next as usize, proj)
}

enum HomState {
    Index { next: usize, count: usize },
    Table { cur: Vec<u32> },
    Done,
}

pub struct HomIter {
    a: Obj,
    b: Obj,
    bool_like: bool,
    state: HomState,
}

impl Iterator for HomIter {
    type Item = Mor;

    fn next(&mut self) -> Option<Mor> {
        match &mut self.state {
            HomState::Done => None,
            HomState::Index { next, count } => {
                if *next >= *count {
                    return None;
                }
                let k = *next;
                *next += 1;
                let code = if self.bool_like { vec![] } else { vec![k as u32] };
                Some(Mor::new(self.a, self.b, code))
            }
            HomState::Table { cur } => {
                let out = Mor::new(self.a, self.b, cur.clone());
                // advance the odometer, last position fastest
                let mut i = cur.len();
                loop {
                    if i == 0 {
                        self.state = HomState::Done;
                        break;
                    }
                    i -= 1;
                    cur[i] += 1;
                    if (cur[i] as usize) < self.b {
                        break;
                    }
                    cur[i] = 0;
                }
                Some(out)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bool_quantale_basics() {
        let q = make_bool_quantale();
        assert_eq!(q.tensor_obj(1, 0).unwrap(), 0);
        assert_eq!(q.hom_count(0, 1), 1);
        assert_eq!(q.hom_count(1, 0), 0);
        let id = q.identity(1);
        assert_eq!(q.equalizer(&id, &id).unwrap().obj, 1);
        assert!(q.validate().is_ok());
    }

    #[test]
    fn finset_skeleton_validates() {
        let fs = make_finset_skeleton(3).unwrap();
        assert!(fs.validate().is_ok(), "{:?}", fs.validate());
        assert_eq!(fs.hom_count(2, 3), 9);
        assert_eq!(fs.hom_iter(2, 3).count(), 9);
        assert_eq!(fs.tensor_obj(1, 3).unwrap(), 3);
        assert_eq!(fs.pair(1, 3, 0, 2), 2);
        assert!(matches!(fs.tensor_obj(2, 2), Err(Error::CardinalityOverflow(4, 3))));
    }

    #[test]
    fn pairing_is_associative_up_to_three() {
        for m in 1..=3usize {
            for n in 1..=3usize {
                for p in 1..=3usize {
                    for i in 0..m {
                        for j in 0..n {
                            for k in 0..p {
                                assert_eq!((i * n + j) * p + k, i * (n * p) + (j * p + k));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn finset_equalizer_selects_agreeing_points() {
        let fs = make_finset_skeleton(3).unwrap();
        let f = Mor::new(3, 2, vec![0, 0, 1]);
        let g = Mor::new(3, 2, vec![0, 1, 1]);
        let eq = fs.equalizer(&f, &g).unwrap();
        assert_eq!(eq.obj, 2);
        assert_eq!(eq.map.code, vec![0, 2]);
        assert!(fs.certify_equalizer(&f, &g, &eq, 3, Budget::default()).unwrap());
        let same = fs.equalizer(&f, &f).unwrap();
        assert_eq!(same.map, fs.identity(3));
    }

    #[test]
    fn finset_coequalizer_glues() {
        let fs = make_finset_skeleton(3).unwrap();
        let f = Mor::new(1, 2, vec![0]);
        let g = Mor::new(1, 2, vec![1]);
        let co = fs.coequalizer(&f, &g).unwrap();
        assert_eq!(co.obj, 1);
        let same = fs.coequalizer(&f, &f).unwrap();
        assert_eq!(same.map, fs.identity(2));
    }

    #[test]
    fn equalizer_then_coequalizer_of_inclusion_is_idempotent() {
        let fs = make_finset_skeleton(3).unwrap();
        let f = Mor::new(3, 2, vec![0, 0, 1]);
        let g = Mor::new(3, 2, vec![0, 1, 1]);
        let eq = fs.equalizer(&f, &g).unwrap();
        let co = fs.coequalizer(&eq.map, &eq.map).unwrap();
        assert_eq!(co.obj, 3);
    }

    #[test]
    fn reversed_pairing_is_strict() {
        let fs = make_finset_skeleton(12).unwrap();
        let rev = MonoidalBase { reversed: true, ..(*fs).clone() };
        let f = Mor::new(2, 3, vec![2, 0]);
        let g = Mor::new(2, 2, vec![1, 0]);
        let fg = rev.tensor_mor(&f, &g).unwrap();
        let gf = fs.tensor_mor(&g, &f).unwrap();
        assert_eq!(fg, gf);
        assert!(rev.validate().is_ok());
    }

    #[test]
    fn tensor_with_unit_identity_is_strict_on_morphisms() {
        let fs = make_finset_skeleton(3).unwrap();
        for a in 0..=3 {
            for b in 0..=3 {
                for f in fs.hom_iter(a, b) {
                    assert_eq!(fs.tensor_mor(&fs.identity(1), &f).unwrap(), f);
                }
            }
        }
    }

    #[test]
    fn mor_serializes_as_flat_array() {
        let f = Mor::new(2, 3, vec![1, 2]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, "[2,3,1,2]");
        let back: Mor = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
