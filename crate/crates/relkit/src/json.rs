//! JSON workspace: one object per file with a `"kind"` discriminator,
//! cross-references by name, integer tables everywhere else.
//!
//! Emission writes dependencies first and renames clashing names with a
//! `#k` suffix, so that every emitted bundle reloads on its own and
//! re-emits byte-identically.

use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dual::{op_base, op_category, op_distributor, op_form, op_functor, RelativeCoadjunction, RelativeComonad};
use crate::enriched::{
    same_cat, same_dist, same_fun, tuple_count, Cat, Dist, Distributor, EnrichedCategory, EnrichedFunctor, Form, Frame,
    Fun,
};
use crate::error::{Budget, Error, Result, ValidationReport};
use crate::relmonad::{MonadMorphism, Presentation, PresentationKind, RelativeAdjunction, RelativeMonad};
use crate::vkernel::{make_table_base, Backend, Base, Capabilities, MonoidalBase, Mor, Obj, TableBase};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "backend", rename_all = "snake_case")]
pub enum BaseSpec {
    Bool,
    Finset {
        max_card: usize,
    },
    Tables {
        n: usize,
        homs: Vec<usize>,
        compose: Vec<Vec<u32>>,
        identities: Vec<u32>,
        unit: Obj,
        tensor_obj: Vec<Option<Obj>>,
        /// Rows `[a, b, f, c, d, g, f (x) g]`.
        tensor_mor: Vec<[u32; 7]>,
        #[serde(default)]
        capabilities: Capabilities,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Item {
    Base {
        name: String,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        reversed: bool,
        #[serde(flatten)]
        spec: BaseSpec,
    },
    Category {
        name: String,
        base: String,
        objects: Vec<String>,
        hom: Vec<Obj>,
        ident: Vec<Mor>,
        comp: Vec<Mor>,
    },
    Functor {
        name: String,
        dom: String,
        cod: String,
        obj_map: Vec<usize>,
        hom_map: Vec<Mor>,
    },
    Distributor {
        name: String,
        left: String,
        right: String,
        obj: Vec<Obj>,
        left_act: Vec<Mor>,
        right_act: Vec<Mor>,
    },
    Form {
        name: String,
        chain: Vec<String>,
        f: String,
        g: String,
        q: String,
        comps: Vec<Mor>,
    },
    Monad {
        name: String,
        root: String,
        obj_map: Vec<usize>,
        unit: Vec<Mor>,
        ext: Vec<Mor>,
    },
    Comonad {
        name: String,
        coroot: String,
        obj_map: Vec<usize>,
        counit: Vec<Mor>,
        coext: Vec<Mor>,
    },
    Adjunction {
        name: String,
        root: String,
        left: String,
        right: String,
        data: Presentation,
    },
    Coadjunction {
        name: String,
        coroot: String,
        left: String,
        right: String,
        sharp: Vec<Mor>,
        flat: Vec<Mor>,
    },
    MonadMorphism {
        name: String,
        source: String,
        target: String,
        comps: Vec<Mor>,
    },
    Config {
        budget: u64,
    },
    Bundle {
        items: Vec<Item>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Base,
    Category,
    Functor,
    Distributor,
    Form,
    Monad,
    Comonad,
    Adjunction,
    Coadjunction,
    MonadMorphism,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Base => "base",
            Kind::Category => "category",
            Kind::Functor => "functor",
            Kind::Distributor => "distributor",
            Kind::Form => "form",
            Kind::Monad => "monad",
            Kind::Comonad => "comonad",
            Kind::Adjunction => "adjunction",
            Kind::Coadjunction => "coadjunction",
            Kind::MonadMorphism => "monad_morphism",
        }
    }
}

/// A resolved workspace object.
#[derive(Debug, Clone)]
pub enum Entry {
    Base(Base),
    Category(Cat),
    Functor(Fun),
    Distributor(Dist),
    Form(Form),
    Monad(RelativeMonad),
    Comonad(RelativeComonad),
    Adjunction(RelativeAdjunction, PresentationKind),
    Coadjunction(RelativeCoadjunction),
    MonadMorphism { m: MonadMorphism, source: RelativeMonad, target: RelativeMonad },
}

impl Entry {
    pub fn kind(&self) -> Kind {
        match self {
            Entry::Base(_) => Kind::Base,
            Entry::Category(_) => Kind::Category,
            Entry::Functor(_) => Kind::Functor,
            Entry::Distributor(_) => Kind::Distributor,
            Entry::Form(_) => Kind::Form,
            Entry::Monad(_) => Kind::Monad,
            Entry::Comonad(_) => Kind::Comonad,
            Entry::Adjunction(..) => Kind::Adjunction,
            Entry::Coadjunction(_) => Kind::Coadjunction,
            Entry::MonadMorphism { .. } => Kind::MonadMorphism,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Entry::Base(b) => &b.name,
            Entry::Category(c) => &c.name,
            Entry::Functor(f) => &f.name,
            Entry::Distributor(p) => &p.name,
            Entry::Form(f) => &f.name,
            Entry::Monad(m) => &m.name,
            Entry::Comonad(d) => &d.name,
            Entry::Adjunction(a, _) => &a.name,
            Entry::Coadjunction(c) => &c.name,
            Entry::MonadMorphism { m, .. } => &m.name,
        }
    }

    /// The same object read in the dual equipment. Monads and comonads trade
    /// places, as do adjunctions and coadjunctions.
    pub fn dual(&self) -> Result<Entry> {
        Ok(match self {
            Entry::Base(b) => Entry::Base(op_base(b)),
            Entry::Category(c) => Entry::Category(op_category(c)),
            Entry::Functor(f) => Entry::Functor(op_functor(f)),
            Entry::Distributor(p) => Entry::Distributor(op_distributor(p)),
            Entry::Form(f) => Entry::Form(op_form(f)?),
            Entry::Monad(m) => Entry::Comonad(RelativeComonad::from_dual(m)),
            Entry::Comonad(d) => Entry::Monad(d.to_dual()),
            Entry::Adjunction(a, _) => Entry::Coadjunction(RelativeCoadjunction::from_dual(a)),
            Entry::Coadjunction(c) => Entry::Adjunction(c.to_dual(), PresentationKind::HomIso),
            Entry::MonadMorphism { .. } => {
                return Err(Error::PreconditionFailed("monad morphisms have no dual in this workspace format".into()))
            }
        })
    }

    /// Structural equality, names aside.
    pub fn same(&self, o: &Entry) -> bool {
        match (self, o) {
            (Entry::Base(a), Entry::Base(b)) => a == b && a.reversed == b.reversed,
            (Entry::Category(a), Entry::Category(b)) => same_cat(a, b) && a.objects == b.objects,
            (Entry::Functor(a), Entry::Functor(b)) => same_fun(a, b),
            (Entry::Distributor(a), Entry::Distributor(b)) => same_dist(a, b),
            (Entry::Form(a), Entry::Form(b)) => a.frame == b.frame && a.comps == b.comps,
            (Entry::Monad(a), Entry::Monad(b)) => a == b,
            (Entry::Comonad(a), Entry::Comonad(b)) => a == b,
            (Entry::Adjunction(a, k), Entry::Adjunction(b, l)) => a == b && k == l,
            (Entry::Coadjunction(a), Entry::Coadjunction(b)) => {
                same_fun(&a.i, &b.i) && same_fun(&a.l, &b.l) && same_fun(&a.r, &b.r) && a.sharp == b.sharp && a.flat == b.flat
            }
            (Entry::MonadMorphism { m: a, source: s, target: t }, Entry::MonadMorphism { m: b, source: s2, target: t2 }) => {
                a.comps == b.comps && s == s2 && t == t2
            }
            _ => false,
        }
    }

    /// Runs the validator of the object's own kind.
    pub fn validate(&self) -> ValidationReport {
        match self {
            Entry::Base(b) => b.validate(),
            Entry::Category(c) => c.validate(),
            Entry::Functor(f) => f.validate(),
            Entry::Distributor(p) => p.validate(),
            Entry::Form(f) => f.validate(),
            Entry::Monad(m) => m.validate(),
            Entry::Comonad(d) => d.validate(),
            Entry::Adjunction(a, _) => a.validate(),
            Entry::Coadjunction(c) => c.validate(),
            Entry::MonadMorphism { m, source, target } => m.validate(source, target),
        }
    }
}

/// Serializes objects with their dependencies, deduplicating by structure.
#[derive(Debug, Default)]
pub struct Emitter {
    items: Vec<Item>,
    seen: HashMap<(Kind, String), Entry>,
}

impl Emitter {
    pub fn new() -> Emitter {
        Emitter::default()
    }

    pub fn into_items(self) -> Vec<Item> {
        self.items
    }

    pub fn into_bundle(self) -> Item {
        Item::Bundle { items: self.items }
    }

    /// The name under which `e` is (or will be) emitted, and whether it is new.
    fn claim(&mut self, e: Entry) -> (String, bool) {
        let (kind, base) = (e.kind(), e.name().to_string());
        let mut name = base.clone();
        let mut k = 2;
        loop {
            match self.seen.get(&(kind, name.clone())) {
                Some(old) if old.same(&e) => return (name, false),
                Some(_) => {
                    name = format!("{base}#{k}");
                    k += 1;
                }
                None => {
                    self.seen.insert((kind, name.clone()), e);
                    return (name, true);
                }
            }
        }
    }

    pub fn entry(&mut self, e: &Entry) -> String {
        match e {
            Entry::Base(b) => self.base(b),
            Entry::Category(c) => self.category(c),
            Entry::Functor(f) => self.functor(f),
            Entry::Distributor(p) => self.distributor(p),
            Entry::Form(f) => self.form(f),
            Entry::Monad(m) => self.monad(m),
            Entry::Comonad(d) => self.comonad(d),
            Entry::Adjunction(a, k) => self.adjunction(a, *k),
            Entry::Coadjunction(c) => self.coadjunction(c),
            Entry::MonadMorphism { m, source, target } => self.monad_morphism(m, source, target),
        }
    }

    pub fn base(&mut self, b: &Base) -> String {
        let (name, new) = self.claim(Entry::Base(b.clone()));
        if new {
            let spec = match &b.backend {
                Backend::Bool => BaseSpec::Bool,
                Backend::FinSet { max_card } => BaseSpec::Finset { max_card: *max_card },
                Backend::Tables(t) => {
                    let mut rows: Vec<[u32; 7]> = t
                        .tensor_mor
                        .iter()
                        .map(|(&(a, b, f, c, d, g), &k)| [a as u32, b as u32, f, c as u32, d as u32, g, k])
                        .collect();
                    rows.sort();
                    BaseSpec::Tables {
                        n: t.n,
                        homs: t.homs.clone(),
                        compose: t.compose.clone(),
                        identities: t.identities.clone(),
                        unit: t.unit,
                        tensor_obj: t.tensor_obj.clone(),
                        tensor_mor: rows,
                        capabilities: t.capabilities,
                    }
                }
            };
            self.items.push(Item::Base { name: name.clone(), reversed: b.reversed, spec });
        }
        name
    }

    pub fn category(&mut self, c: &Cat) -> String {
        let base = self.base(&c.base);
        let (name, new) = self.claim(Entry::Category(c.clone()));
        if new {
            self.items.push(Item::Category {
                name: name.clone(),
                base,
                objects: c.objects.clone(),
                hom: c.hom.clone(),
                ident: c.ident.clone(),
                comp: c.comp.clone(),
            });
        }
        name
    }

    pub fn functor(&mut self, f: &Fun) -> String {
        let dom = self.category(&f.dom);
        let cod = self.category(&f.cod);
        let (name, new) = self.claim(Entry::Functor(f.clone()));
        if new {
            self.items.push(Item::Functor {
                name: name.clone(),
                dom,
                cod,
                obj_map: f.obj_map.clone(),
                hom_map: f.hom_map.clone(),
            });
        }
        name
    }

    pub fn distributor(&mut self, p: &Dist) -> String {
        let left = self.category(&p.left);
        let right = self.category(&p.right);
        let (name, new) = self.claim(Entry::Distributor(p.clone()));
        if new {
            self.items.push(Item::Distributor {
                name: name.clone(),
                left,
                right,
                obj: p.obj.clone(),
                left_act: p.left_act.clone(),
                right_act: p.right_act.clone(),
            });
        }
        name
    }

    pub fn form(&mut self, phi: &Form) -> String {
        let fr = &phi.frame;
        let chain: Vec<String> = fr.chain.iter().map(|p| self.distributor(p)).collect();
        let f = self.functor(&fr.f);
        let g = self.functor(&fr.g);
        let q = self.distributor(&fr.q);
        let (name, new) = self.claim(Entry::Form(phi.clone()));
        if new {
            self.items.push(Item::Form { name: name.clone(), chain, f, g, q, comps: phi.comps.clone() });
        }
        name
    }

    pub fn monad(&mut self, m: &RelativeMonad) -> String {
        let root = self.functor(&m.j);
        let (name, new) = self.claim(Entry::Monad(m.clone()));
        if new {
            self.items.push(Item::Monad {
                name: name.clone(),
                root,
                obj_map: m.obj_map.clone(),
                unit: m.unit.clone(),
                ext: m.ext.clone(),
            });
        }
        name
    }

    pub fn comonad(&mut self, d: &RelativeComonad) -> String {
        let coroot = self.functor(&d.i);
        let (name, new) = self.claim(Entry::Comonad(d.clone()));
        if new {
            self.items.push(Item::Comonad {
                name: name.clone(),
                coroot,
                obj_map: d.obj_map.clone(),
                counit: d.counit.clone(),
                coext: d.coext.clone(),
            });
        }
        name
    }

    pub fn adjunction(&mut self, a: &RelativeAdjunction, kind: PresentationKind) -> String {
        let root = self.functor(&a.j);
        let left = self.functor(&a.l);
        let right = self.functor(&a.r);
        let (name, new) = self.claim(Entry::Adjunction(a.clone(), kind));
        if new {
            // conversions out of a validated adjunction do not fail; fall
            // back to the stored tables if they somehow do
            let data = a
                .to_presentation(kind)
                .unwrap_or_else(|_| Presentation::HomIso { sharp: a.sharp.clone(), flat: a.flat.clone() });
            self.items.push(Item::Adjunction { name: name.clone(), root, left, right, data });
        }
        name
    }

    pub fn coadjunction(&mut self, c: &RelativeCoadjunction) -> String {
        let coroot = self.functor(&c.i);
        let left = self.functor(&c.l);
        let right = self.functor(&c.r);
        let (name, new) = self.claim(Entry::Coadjunction(c.clone()));
        if new {
            self.items.push(Item::Coadjunction {
                name: name.clone(),
                coroot,
                left,
                right,
                sharp: c.sharp.clone(),
                flat: c.flat.clone(),
            });
        }
        name
    }

    pub fn monad_morphism(&mut self, m: &MonadMorphism, src: &RelativeMonad, tgt: &RelativeMonad) -> String {
        let source = self.monad(src);
        let target = self.monad(tgt);
        let e = Entry::MonadMorphism { m: m.clone(), source: src.clone(), target: tgt.clone() };
        let (name, new) = self.claim(e);
        if new {
            self.items.push(Item::MonadMorphism { name: name.clone(), source, target, comps: m.comps.clone() });
        }
        name
    }
}

/// Named objects loaded from JSON, in load order.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    pub entries: Vec<Entry>,
    index: HashMap<(Kind, String), usize>,
    pub budget: Option<Budget>,
}

fn missing(kind: Kind, name: &str) -> Error {
    Error::malformed(format!("missing reference: {} {name}", kind.as_str()))
}

fn check_len(what: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::malformed(format!("{what} has {got} entries, expected {want}")));
    }
    Ok(())
}

impl Workspace {
    pub fn new() -> Workspace {
        Workspace::default()
    }

    pub fn budget(&self) -> Budget {
        self.budget.unwrap_or_default()
    }

    pub fn insert(&mut self, e: Entry) -> Result<()> {
        let key = (e.kind(), e.name().to_string());
        if let Some(&i) = self.index.get(&key) {
            if self.entries[i].same(&e) {
                return Ok(());
            }
            return Err(Error::malformed(format!("duplicate {} named {}", key.0.as_str(), key.1)));
        }
        self.index.insert(key, self.entries.len());
        self.entries.push(e);
        Ok(())
    }

    pub fn get(&self, kind: Kind, name: &str) -> Option<&Entry> {
        self.index.get(&(kind, name.to_string())).map(|&i| &self.entries[i])
    }

    /// Looks a name up across all kinds; ambiguity is an error.
    pub fn find(&self, name: &str) -> Result<&Entry> {
        let hits: Vec<&Entry> = self.entries.iter().filter(|e| e.name() == name).collect();
        match hits.len() {
            0 => Err(Error::malformed(format!("nothing named {name} in the workspace"))),
            1 => Ok(hits[0]),
            _ => Err(Error::malformed(format!("{name} names objects of several kinds"))),
        }
    }

    pub fn base(&self, n: &str) -> Result<Base> {
        match self.get(Kind::Base, n) {
            Some(Entry::Base(b)) => Ok(b.clone()),
            _ => Err(missing(Kind::Base, n)),
        }
    }

    pub fn category(&self, n: &str) -> Result<Cat> {
        match self.get(Kind::Category, n) {
            Some(Entry::Category(c)) => Ok(c.clone()),
            _ => Err(missing(Kind::Category, n)),
        }
    }

    pub fn functor(&self, n: &str) -> Result<Fun> {
        match self.get(Kind::Functor, n) {
            Some(Entry::Functor(f)) => Ok(f.clone()),
            _ => Err(missing(Kind::Functor, n)),
        }
    }

    pub fn distributor(&self, n: &str) -> Result<Dist> {
        match self.get(Kind::Distributor, n) {
            Some(Entry::Distributor(p)) => Ok(p.clone()),
            _ => Err(missing(Kind::Distributor, n)),
        }
    }

    pub fn monad(&self, n: &str) -> Result<RelativeMonad> {
        match self.get(Kind::Monad, n) {
            Some(Entry::Monad(m)) => Ok(m.clone()),
            _ => Err(missing(Kind::Monad, n)),
        }
    }

    pub fn comonad(&self, n: &str) -> Result<RelativeComonad> {
        match self.get(Kind::Comonad, n) {
            Some(Entry::Comonad(d)) => Ok(d.clone()),
            _ => Err(missing(Kind::Comonad, n)),
        }
    }

    pub fn adjunction(&self, n: &str) -> Result<RelativeAdjunction> {
        match self.get(Kind::Adjunction, n) {
            Some(Entry::Adjunction(a, _)) => Ok(a.clone()),
            _ => Err(missing(Kind::Adjunction, n)),
        }
    }

    /// Resolves one item; `Ok(false)` means a reference is not loaded yet.
    fn resolve(&mut self, item: &Item) -> Result<bool> {
        macro_rules! need {
            ($e:expr) => {
                match $e {
                    Ok(x) => x,
                    Err(Error::MalformedTables(m)) if m.starts_with("missing reference") => return Ok(false),
                    Err(e) => return Err(e),
                }
            };
        }
        let entry = match item {
            Item::Bundle { .. } => unreachable!("bundles are flattened before resolution"),
            Item::Config { budget } => {
                self.budget = Some(Budget(*budget as u128));
                return Ok(true);
            }
            Item::Base { name, reversed, spec } => {
                let backend = match spec {
                    BaseSpec::Bool => Backend::Bool,
                    BaseSpec::Finset { max_card } => {
                        if *max_card == 0 {
                            return Err(Error::malformed("max_card must be positive"));
                        }
                        Backend::FinSet { max_card: *max_card }
                    }
                    BaseSpec::Tables { n, homs, compose, identities, unit, tensor_obj, tensor_mor, capabilities } => {
                        let tables = TableBase {
                            n: *n,
                            homs: homs.clone(),
                            compose: compose.clone(),
                            identities: identities.clone(),
                            unit: *unit,
                            tensor_obj: tensor_obj.clone(),
                            tensor_mor: tensor_mor
                                .iter()
                                .map(|r| ((r[0] as usize, r[1] as usize, r[2], r[3] as usize, r[4] as usize, r[5]), r[6]))
                                .collect(),
                            capabilities: *capabilities,
                        };
                        make_table_base(name, tables.clone())?;
                        Backend::Tables(tables)
                    }
                };
                Entry::Base(Arc::new(MonoidalBase { name: name.clone(), backend, reversed: *reversed }))
            }
            Item::Category { name, base, objects, hom, ident, comp } => {
                let base = need!(self.base(base));
                let n = objects.len();
                check_len("hom", hom.len(), n * n)?;
                check_len("ident", ident.len(), n)?;
                check_len("comp", comp.len(), n * n * n)?;
                Entry::Category(Arc::new(EnrichedCategory {
                    name: name.clone(),
                    base,
                    objects: objects.clone(),
                    hom: hom.clone(),
                    ident: ident.clone(),
                    comp: comp.clone(),
                }))
            }
            Item::Functor { name, dom, cod, obj_map, hom_map } => {
                let (dom, cod) = (need!(self.category(dom)), need!(self.category(cod)));
                check_len("obj_map", obj_map.len(), dom.n())?;
                check_len("hom_map", hom_map.len(), dom.n() * dom.n())?;
                if obj_map.iter().any(|&y| y >= cod.n()) {
                    return Err(Error::malformed(format!("functor {name} maps outside {}", cod.name)));
                }
                Entry::Functor(Arc::new(EnrichedFunctor {
                    name: name.clone(),
                    dom,
                    cod,
                    obj_map: obj_map.clone(),
                    hom_map: hom_map.clone(),
                }))
            }
            Item::Distributor { name, left, right, obj, left_act, right_act } => {
                let (left, right) = (need!(self.category(left)), need!(self.category(right)));
                let (l, r) = (left.n(), right.n());
                check_len("obj", obj.len(), l * r)?;
                check_len("left_act", left_act.len(), l * l * r)?;
                check_len("right_act", right_act.len(), l * r * r)?;
                Entry::Distributor(Arc::new(Distributor {
                    name: name.clone(),
                    left,
                    right,
                    obj: obj.clone(),
                    left_act: left_act.clone(),
                    right_act: right_act.clone(),
                }))
            }
            Item::Form { name, chain, f, g, q, comps } => {
                let mut ch = Vec::with_capacity(chain.len());
                for p in chain {
                    ch.push(need!(self.distributor(p)));
                }
                let (f, g, q) = (need!(self.functor(f)), need!(self.functor(g)), need!(self.distributor(q)));
                let frame = Frame::new(ch, f, g, q)?;
                check_len("comps", comps.len(), tuple_count(&frame.sizes()))?;
                Entry::Form(Form::new(name, frame, comps.clone()))
            }
            Item::Monad { name, root, obj_map, unit, ext } => {
                let j = need!(self.functor(root));
                let n = j.dom.n();
                check_len("obj_map", obj_map.len(), n)?;
                check_len("unit", unit.len(), n)?;
                check_len("ext", ext.len(), n * n)?;
                if obj_map.iter().any(|&y| y >= j.cod.n()) {
                    return Err(Error::malformed(format!("monad {name} maps outside {}", j.cod.name)));
                }
                Entry::Monad(RelativeMonad { name: name.clone(), j, obj_map: obj_map.clone(), unit: unit.clone(), ext: ext.clone() })
            }
            Item::Comonad { name, coroot, obj_map, counit, coext } => {
                let i = need!(self.functor(coroot));
                let n = i.dom.n();
                check_len("obj_map", obj_map.len(), n)?;
                check_len("counit", counit.len(), n)?;
                check_len("coext", coext.len(), n * n)?;
                if obj_map.iter().any(|&y| y >= i.cod.n()) {
                    return Err(Error::malformed(format!("comonad {name} maps outside {}", i.cod.name)));
                }
                Entry::Comonad(RelativeComonad {
                    name: name.clone(),
                    i,
                    obj_map: obj_map.clone(),
                    counit: counit.clone(),
                    coext: coext.clone(),
                })
            }
            Item::Adjunction { name, root, left, right, data } => {
                let (j, l, r) = (need!(self.functor(root)), need!(self.functor(left)), need!(self.functor(right)));
                let adj = match data {
                    Presentation::HomIso { sharp, flat } => {
                        let k = j.dom.n() * l.cod.n();
                        check_len("sharp", sharp.len(), k)?;
                        check_len("flat", flat.len(), k)?;
                        RelativeAdjunction { name: name.clone(), j, l, r, sharp: sharp.clone(), flat: flat.clone() }
                    }
                    p => RelativeAdjunction::from_presentation(name, &j, &l, &r, p)?,
                };
                Entry::Adjunction(adj, data.kind())
            }
            Item::Coadjunction { name, coroot, left, right, sharp, flat } => {
                let (i, l, r) = (need!(self.functor(coroot)), need!(self.functor(left)), need!(self.functor(right)));
                let k = i.dom.n() * l.dom.n();
                check_len("sharp", sharp.len(), k)?;
                check_len("flat", flat.len(), k)?;
                Entry::Coadjunction(RelativeCoadjunction { name: name.clone(), i, r, l, sharp: sharp.clone(), flat: flat.clone() })
            }
            Item::MonadMorphism { name, source, target, comps } => {
                let (source, target) = (need!(self.monad(source)), need!(self.monad(target)));
                Entry::MonadMorphism { m: MonadMorphism { name: name.clone(), comps: comps.clone() }, source, target }
            }
        };
        self.insert(entry)?;
        Ok(true)
    }

    /// Loads items in order, retrying deferred ones until nothing moves.
    pub fn add_items(&mut self, items: Vec<Item>) -> Result<()> {
        let mut pending = vec![];
        flatten(items, &mut pending);
        while !pending.is_empty() {
            let before = pending.len();
            let mut rest = vec![];
            for item in pending {
                if !self.resolve(&item)? {
                    rest.push(item);
                }
            }
            if rest.len() == before {
                // report the first dangling reference
                let item = &rest[0];
                let refs = references(item);
                for (kind, n) in refs {
                    if self.get(kind, &n).is_none() {
                        return Err(missing(kind, &n));
                    }
                }
                return Err(Error::malformed("unresolvable references"));
            }
            pending = rest;
        }
        Ok(())
    }

    pub fn from_items(items: Vec<Item>) -> Result<Workspace> {
        let mut ws = Workspace::new();
        ws.add_items(items)?;
        Ok(ws)
    }

    pub fn parse(text: &str) -> Result<Vec<Item>> {
        serde_json::from_str::<Item>(text).map(|i| vec![i]).map_err(|e| Error::malformed(format!("bad JSON: {e}")))
    }

    /// Loads a file, or every `.json` file under a directory in path order.
    pub fn load(path: &Path) -> Result<Workspace> {
        let mut ws = Workspace::new();
        ws.load_into(path)?;
        Ok(ws)
    }

    pub fn load_into(&mut self, path: &Path) -> Result<()> {
        let mut files = vec![];
        collect_json(path, &mut files)?;
        let mut items = vec![];
        for f in files {
            let text = std::fs::read_to_string(&f).map_err(|e| Error::malformed(format!("{}: {e}", f.display())))?;
            items.extend(Workspace::parse(&text).map_err(|e| Error::malformed(format!("{}: {e}", f.display())))?);
        }
        self.add_items(items)
    }

    /// Every object, dependencies first, in load order otherwise.
    pub fn to_items(&self) -> Vec<Item> {
        let mut em = Emitter::new();
        for e in &self.entries {
            em.entry(e);
        }
        let mut items = em.into_items();
        if let Some(b) = self.budget {
            items.push(Item::Config { budget: b.0 as u64 });
        }
        items
    }

    pub fn validate_all(&self) -> Vec<ValidationReport> {
        self.entries.iter().map(|e| e.validate()).collect()
    }
}

fn flatten(items: Vec<Item>, out: &mut Vec<Item>) {
    for i in items {
        match i {
            Item::Bundle { items } => flatten(items, out),
            other => out.push(other),
        }
    }
}

fn references(item: &Item) -> Vec<(Kind, String)> {
    let f = |s: &String| (Kind::Functor, s.clone());
    let c = |s: &String| (Kind::Category, s.clone());
    match item {
        Item::Category { base, .. } => vec![(Kind::Base, base.clone())],
        Item::Functor { dom, cod, .. } => vec![c(dom), c(cod)],
        Item::Distributor { left, right, .. } => vec![c(left), c(right)],
        Item::Form { chain, f: ff, g, q, .. } => {
            let mut v: Vec<(Kind, String)> = chain.iter().map(|p| (Kind::Distributor, p.clone())).collect();
            v.extend([f(ff), f(g), (Kind::Distributor, q.clone())]);
            v
        }
        Item::Monad { root, .. } => vec![f(root)],
        Item::Comonad { coroot, .. } => vec![f(coroot)],
        Item::Adjunction { root, left, right, .. } => vec![f(root), f(left), f(right)],
        Item::Coadjunction { coroot, left, right, .. } => vec![f(coroot), f(left), f(right)],
        Item::MonadMorphism { source, target, .. } => vec![(Kind::Monad, source.clone()), (Kind::Monad, target.clone())],
        _ => vec![],
    }
}

fn collect_json(path: &Path, out: &mut Vec<std::path::PathBuf>) -> Result<()> {
    if path.is_dir() {
        let mut kids: Vec<_> = std::fs::read_dir(path)
            .map_err(|e| Error::malformed(format!("{}: {e}", path.display())))?
            .filter_map(|d| d.ok().map(|d| d.path()))
            .collect();
        kids.sort();
        for k in kids {
            if k.is_dir() || k.extension().is_some_and(|x| x == "json") {
                collect_json(&k, out)?;
            }
        }
        Ok(())
    } else if path.exists() {
        out.push(path.to_path_buf());
        Ok(())
    } else {
        Err(Error::malformed(format!("{} does not exist", path.display())))
    }
}

/// Pretty JSON with integer arrays kept on one line and a trailing
/// newline; the byte-stable output format.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = collapse_number_arrays(&serde_json::to_string_pretty(v).expect("items always serialize"));
    s.push('\n');
    s
}

fn collapse_number_arrays(s: &str) -> String {
    let cs: Vec<char> = s.chars().collect();
    let mut out = String::with_capacity(s.len());
    let (mut i, mut in_str) = (0, false);
    while i < cs.len() {
        let c = cs[i];
        out.push(c);
        if in_str {
            if c == '\\' && i + 1 < cs.len() {
                out.push(cs[i + 1]);
                i += 1;
            } else if c == '"' {
                in_str = false;
            }
        } else if c == '"' {
            in_str = true;
        } else if c == '[' {
            let body = cs[i + 1..].iter().position(|&d| !(d.is_ascii_digit() || d.is_ascii_whitespace() || d == ',' || d == '-'));
            if let Some(k) = body.map(|k| i + 1 + k).filter(|&k| cs[k] == ']') {
                let inner: String = cs[i + 1..k].iter().collect();
                let nums: Vec<&str> = inner.split(',').map(str::trim).filter(|t| !t.is_empty()).collect();
                out.push_str(&nums.join(", "));
                out.push(']');
                i = k;
            }
        }
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn monad_round_trips_through_a_bundle() {
        let mut em = Emitter::new();
        em.monad(&corpus::tmax());
        let text = to_json(&em.into_bundle());
        let ws = Workspace::from_items(Workspace::parse(&text).unwrap()).unwrap();
        assert_eq!(ws.monad("TMAX").unwrap(), corpus::tmax());
        let again = to_json(&Item::Bundle { items: ws.to_items() });
        assert_eq!(text, again);
    }

    #[test]
    fn clashing_names_are_suffixed() {
        let mut em = Emitter::new();
        let a = em.category(&corpus::ch3());
        let mut other = (*corpus::a2()).clone();
        other.name = "CH3".into();
        let b = em.category(&Arc::new(other));
        assert_eq!((a.as_str(), b.as_str()), ("CH3", "CH3#2"));
    }

    #[test]
    fn integer_arrays_stay_on_one_line() {
        let v = serde_json::json!({ "a": [[1, 2], []], "s": "x[1,\n 2]≅" });
        let text = to_json(&v);
        assert!(text.contains("[1, 2]"), "{text}");
        assert!(text.contains("[]"));
        assert!(text.contains(r#""x[1,\n 2]≅""#), "{text}");
        let back: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn dangling_reference_is_named() {
        let text = r#"{"kind": "functor", "name": "F", "dom": "X", "cod": "Y", "obj_map": [], "hom_map": []}"#;
        let err = Workspace::from_items(Workspace::parse(text).unwrap()).unwrap_err();
        assert!(err.to_string().contains("missing reference: category X"), "{err}");
    }

    #[test]
    fn non_hom_iso_presentations_load() {
        let (adj, _) = corpus::coreflection_outer();
        let mut em = Emitter::new();
        em.adjunction(&adj, PresentationKind::UnitCounit);
        let text = to_json(&em.into_bundle());
        assert!(text.contains("\"unit_counit\""));
        let ws = Workspace::from_items(Workspace::parse(&text).unwrap()).unwrap();
        assert_eq!(ws.adjunction("COREFL").unwrap(), adj);
    }
}
