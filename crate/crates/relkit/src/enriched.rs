//! Enriched categories, functors, distributors and forms over a finite base.
//!
//! Index conventions: a distributor `p` has entries `p(x, y)` with `x` in
//! `p.left` and `y` in `p.right`. A form with chain `p_1, ..., p_n` has
//! components at tuples `(x_0, ..., x_n)` where `p_i` is evaluated at
//! `(x_{i-1}, x_i)`, stored densely in lexicographic tuple order.

use std::sync::Arc;

use crate::error::{Budget, Error, Result, ValidationReport};
use crate::vkernel::{Base, Mor, Obj};

#[derive(Debug, Clone)]
pub struct EnrichedCategory {
    pub name: String,
    pub base: Base,
    pub objects: Vec<String>,
    /// `hom[x*n + y] = C(x, y)`.
    pub hom: Vec<Obj>,
    /// `ident[x] : I -> C(x, x)`.
    pub ident: Vec<Mor>,
    /// `comp[(x*n + y)*n + z] : C(x, y) (x) C(y, z) -> C(x, z)`.
    pub comp: Vec<Mor>,
}

pub type Cat = Arc<EnrichedCategory>;

impl PartialEq for EnrichedCategory {
    fn eq(&self, o: &Self) -> bool {
        self.base == o.base && self.hom == o.hom && self.ident == o.ident && self.comp == o.comp
    }
}

impl Eq for EnrichedCategory {}

pub fn same_cat(a: &Cat, b: &Cat) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl EnrichedCategory {
    pub fn n(&self) -> usize {
        self.objects.len()
    }

    pub fn hom(&self, x: usize, y: usize) -> Obj {
        self.hom[x * self.n() + y]
    }

    pub fn ident(&self, x: usize) -> &Mor {
        &self.ident[x]
    }

    pub fn comp(&self, x: usize, y: usize, z: usize) -> &Mor {
        let n = self.n();
        &self.comp[(x * n + y) * n + z]
    }

    /// A category over the Boolean base; identities and composites are the
    /// unique candidates, so only the hom relation is given.
    pub fn bool_preorder(name: &str, base: &Base, objects: &[&str], leq: impl Fn(usize, usize) -> bool) -> Result<Cat> {
        if !base.is_bool() {
            return Err(Error::malformed("bool_preorder needs the Boolean base"));
        }
        let n = objects.len();
        let hom: Vec<Obj> = (0..n * n).map(|k| usize::from(leq(k / n, k % n))).collect();
        let mut c = EnrichedCategory {
            name: name.into(),
            base: base.clone(),
            objects: objects.iter().map(|s| s.to_string()).collect(),
            hom,
            ident: vec![],
            comp: vec![],
        };
        c.fill_bool_structure();
        Ok(Arc::new(c))
    }

    /// Fills identities and composites with the unique Boolean candidates.
    pub fn fill_bool_structure(&mut self) {
        let n = self.n();
        let u = self.base.unit();
        self.ident = (0..n).map(|x| Mor::new(u, self.hom(x, x), vec![])).collect();
        let mut comp = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    comp.push(Mor::new(self.hom(x, y).min(self.hom(y, z)), self.hom(x, z), vec![]));
                }
            }
        }
        self.comp = comp;
    }

    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new(format!("category {}", self.name));
        let v = &self.base;
        let n = self.n();
        if self.hom.len() != n * n || self.ident.len() != n || self.comp.len() != n * n * n {
            rep.push("well_typed", &[], "ragged tables");
            return rep;
        }
        for x in 0..n {
            let i = &self.ident[x];
            if v.check_mor(i).is_err() || i.dom != v.unit() || i.cod != self.hom(x, x) {
                rep.push("well_typed", &[x], "identity has the wrong type");
            }
            for y in 0..n {
                for z in 0..n {
                    let c = self.comp(x, y, z);
                    let dom = v.tensor_obj(self.hom(x, y), self.hom(y, z));
                    if v.check_mor(c).is_err() || dom.ok() != Some(c.dom) || c.cod != self.hom(x, z) {
                        rep.push("well_typed", &[x, y, z], "composition has the wrong type");
                    }
                }
            }
        }
        if !rep.is_ok() {
            return rep;
        }
        for x in 0..n {
            for y in 0..n {
                let idxy = v.identity(self.hom(x, y));
                let l = v
                    .tensor_mor(self.ident(x), &idxy)
                    .and_then(|t| v.compose(&t, self.comp(x, x, y)));
                if l.ok() != Some(idxy.clone()) {
                    rep.push("left_unit", &[x, y], "(I_x (x) 1) ; comp != 1");
                }
                let r = v
                    .tensor_mor(&idxy, self.ident(y))
                    .and_then(|t| v.compose(&t, self.comp(x, y, y)));
                if r.ok() != Some(idxy) {
                    rep.push("right_unit", &[x, y], "(1 (x) I_y) ; comp != 1");
                }
            }
        }
        for w in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let l = v
                            .tensor_mor(self.comp(w, x, y), &v.identity(self.hom(y, z)))
                            .and_then(|t| v.compose(&t, self.comp(w, y, z)));
                        let r = v
                            .tensor_mor(&v.identity(self.hom(w, x)), self.comp(x, y, z))
                            .and_then(|t| v.compose(&t, self.comp(w, x, z)));
                        match (l, r) {
                            (Ok(l), Ok(r)) if l == r => {}
                            (Ok(_), Ok(_)) => rep.push("associativity", &[w, x, y, z], "composition not associative"),
                            _ => rep.push("well_typed", &[w, x, y, z], "associativity domain outside the base"),
                        }
                    }
                }
            }
        }
        rep
    }
}

#[derive(Debug, Clone)]
pub struct EnrichedFunctor {
    pub name: String,
    pub dom: Cat,
    pub cod: Cat,
    pub obj_map: Vec<usize>,
    /// `hom_map[x*n + y] : C(x, y) -> D(fx, fy)`.
    pub hom_map: Vec<Mor>,
}

pub type Fun = Arc<EnrichedFunctor>;

impl PartialEq for EnrichedFunctor {
    fn eq(&self, o: &Self) -> bool {
        same_cat(&self.dom, &o.dom) && same_cat(&self.cod, &o.cod) && self.obj_map == o.obj_map && self.hom_map == o.hom_map
    }
}

impl Eq for EnrichedFunctor {}

pub fn same_fun(a: &Fun, b: &Fun) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl EnrichedFunctor {
    pub fn ob(&self, x: usize) -> usize {
        self.obj_map[x]
    }

    pub fn map(&self, x: usize, y: usize) -> &Mor {
        &self.hom_map[x * self.dom.n() + y]
    }

    pub fn identity(c: &Cat) -> Fun {
        let n = c.n();
        Arc::new(EnrichedFunctor {
            name: format!("1_{}", c.name),
            dom: c.clone(),
            cod: c.clone(),
            obj_map: (0..n).collect(),
            hom_map: (0..n * n).map(|k| c.base.identity(c.hom(k / n, k % n))).collect(),
        })
    }

    /// Boolean functors are determined by their object map.
    pub fn bool_functor(name: &str, dom: &Cat, cod: &Cat, obj_map: Vec<usize>) -> Fun {
        let n = dom.n();
        let hom_map = (0..n * n)
            .map(|k| {
                let (x, y) = (k / n, k % n);
                Mor::new(dom.hom(x, y), cod.hom(obj_map[x], obj_map[y]), vec![])
            })
            .collect();
        Arc::new(EnrichedFunctor { name: name.into(), dom: dom.clone(), cod: cod.clone(), obj_map, hom_map })
    }

    /// Diagrammatic composite `self ; g`.
    pub fn then(self: &Fun, g: &Fun) -> Result<Fun> {
        if !same_cat(&self.cod, &g.dom) {
            return Err(Error::frame(format!("cannot compose {} ; {}", self.name, g.name)));
        }
        let n = self.dom.n();
        let v = &self.dom.base;
        let mut hom_map = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                hom_map.push(v.compose(self.map(x, y), g.map(self.ob(x), self.ob(y)))?);
            }
        }
        Ok(Arc::new(EnrichedFunctor {
            name: format!("{};{}", self.name, g.name),
            dom: self.dom.clone(),
            cod: g.cod.clone(),
            obj_map: self.obj_map.iter().map(|&x| g.ob(x)).collect(),
            hom_map,
        }))
    }

    pub fn is_identity(&self) -> bool {
        same_cat(&self.dom, &self.cod) && *self == *EnrichedFunctor::identity(&self.dom)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new(format!("functor {}", self.name));
        let (c, d) = (&self.dom, &self.cod);
        let v = &c.base;
        let n = c.n();
        if c.base != d.base {
            rep.push("well_typed", &[], "domain and codomain over different bases");
            return rep;
        }
        if self.obj_map.len() != n || self.hom_map.len() != n * n || self.obj_map.iter().any(|&y| y >= d.n()) {
            rep.push("well_typed", &[], "ragged or out-of-range tables");
            return rep;
        }
        for x in 0..n {
            for y in 0..n {
                let f = self.map(x, y);
                if v.check_mor(f).is_err() || f.dom != c.hom(x, y) || f.cod != d.hom(self.ob(x), self.ob(y)) {
                    rep.push("well_typed", &[x, y], format!("hom_map has the wrong type {f:?}"));
                }
            }
        }
        if !rep.is_ok() {
            return rep;
        }
        for x in 0..n {
            if v.compose(c.ident(x), self.map(x, x)).ok().as_ref() != Some(d.ident(self.ob(x))) {
                rep.push("preserves_identity", &[x], "I_x ; f != I_fx");
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let l = v.compose(c.comp(x, y, z), self.map(x, z));
                    let r = v
                        .tensor_mor(self.map(x, y), self.map(y, z))
                        .and_then(|t| v.compose(&t, d.comp(self.ob(x), self.ob(y), self.ob(z))));
                    if l.ok() != r.ok() {
                        rep.push("preserves_composition", &[x, y, z], "comp ; f != (f (x) f) ; comp");
                    }
                }
            }
        }
        rep
    }
}

#[derive(Debug, Clone)]
pub struct Distributor {
    pub name: String,
    pub left: Cat,
    pub right: Cat,
    /// `obj[x*|right| + y] = p(x, y)`.
    pub obj: Vec<Obj>,
    /// `left_act[(x'*|L| + x)*|R| + y] : L(x', x) (x) p(x, y) -> p(x', y)`.
    pub left_act: Vec<Mor>,
    /// `right_act[(x*|R| + y)*|R| + y'] : p(x, y) (x) R(y, y') -> p(x, y')`.
    pub right_act: Vec<Mor>,
}

pub type Dist = Arc<Distributor>;

impl PartialEq for Distributor {
    fn eq(&self, o: &Self) -> bool {
        same_cat(&self.left, &o.left)
            && same_cat(&self.right, &o.right)
            && self.obj == o.obj
            && self.left_act == o.left_act
            && self.right_act == o.right_act
    }
}

impl Eq for Distributor {}

pub fn same_dist(a: &Dist, b: &Dist) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Distributor {
    pub fn at(&self, x: usize, y: usize) -> Obj {
        self.obj[x * self.right.n() + y]
    }

    pub fn lact(&self, x2: usize, x: usize, y: usize) -> &Mor {
        let (l, r) = (self.left.n(), self.right.n());
        &self.left_act[(x2 * l + x) * r + y]
    }

    pub fn ract(&self, x: usize, y: usize, y2: usize) -> &Mor {
        let r = self.right.n();
        &self.right_act[(x * r + y) * r + y2]
    }

    /// Boolean distributors are determined by their relation.
    pub fn bool_relation(name: &str, left: &Cat, right: &Cat, rel: impl Fn(usize, usize) -> bool) -> Dist {
        let (l, r) = (left.n(), right.n());
        let obj: Vec<Obj> = (0..l * r).map(|k| usize::from(rel(k / r, k % r))).collect();
        let mut d = Distributor {
            name: name.into(),
            left: left.clone(),
            right: right.clone(),
            obj,
            left_act: vec![],
            right_act: vec![],
        };
        d.fill_bool_actions();
        Arc::new(d)
    }

    pub fn fill_bool_actions(&mut self) {
        let (l, r) = (self.left.n(), self.right.n());
        let mut la = Vec::with_capacity(l * l * r);
        for x2 in 0..l {
            for x in 0..l {
                for y in 0..r {
                    la.push(Mor::new(self.left.hom(x2, x).min(self.at(x, y)), self.at(x2, y), vec![]));
                }
            }
        }
        let mut ra = Vec::with_capacity(l * r * r);
        for x in 0..l {
            for y in 0..r {
                for y2 in 0..r {
                    ra.push(Mor::new(self.at(x, y).min(self.right.hom(y, y2)), self.at(x, y2), vec![]));
                }
            }
        }
        self.left_act = la;
        self.right_act = ra;
    }

    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new(format!("distributor {}", self.name));
        let (lc, rc) = (&self.left, &self.right);
        let v = &lc.base;
        let (l, r) = (lc.n(), rc.n());
        if lc.base != rc.base {
            rep.push("well_typed", &[], "sides over different bases");
            return rep;
        }
        if self.obj.len() != l * r || self.left_act.len() != l * l * r || self.right_act.len() != l * r * r {
            rep.push("well_typed", &[], "ragged tables");
            return rep;
        }
        for x2 in 0..l {
            for x in 0..l {
                for y in 0..r {
                    let m = self.lact(x2, x, y);
                    let dom = v.tensor_obj(lc.hom(x2, x), self.at(x, y)).ok();
                    if v.check_mor(m).is_err() || dom != Some(m.dom) || m.cod != self.at(x2, y) {
                        rep.push("well_typed", &[x2, x, y], "left action has the wrong type");
                    }
                }
            }
        }
        for x in 0..l {
            for y in 0..r {
                for y2 in 0..r {
                    let m = self.ract(x, y, y2);
                    let dom = v.tensor_obj(self.at(x, y), rc.hom(y, y2)).ok();
                    if v.check_mor(m).is_err() || dom != Some(m.dom) || m.cod != self.at(x, y2) {
                        rep.push("well_typed", &[x, y, y2], "right action has the wrong type");
                    }
                }
            }
        }
        if !rep.is_ok() {
            return rep;
        }
        let eqm = |a: Result<Mor>, b: Result<Mor>| matches!((a, b), (Ok(a), Ok(b)) if a == b);
        for x in 0..l {
            for y in 0..r {
                let id = v.identity(self.at(x, y));
                let lu = v.tensor_mor(lc.ident(x), &id).and_then(|t| v.compose(&t, self.lact(x, x, y)));
                if !eqm(lu, Ok(id.clone())) {
                    rep.push("left_unit", &[x, y], "(I (x) 1) ; act != 1");
                }
                let ru = v.tensor_mor(&id, rc.ident(y)).and_then(|t| v.compose(&t, self.ract(x, y, y)));
                if !eqm(ru, Ok(id)) {
                    rep.push("right_unit", &[x, y], "(1 (x) I) ; act != 1");
                }
            }
        }
        for x3 in 0..l {
            for x2 in 0..l {
                for x in 0..l {
                    for y in 0..r {
                        let a = v
                            .tensor_mor(lc.comp(x3, x2, x), &v.identity(self.at(x, y)))
                            .and_then(|t| v.compose(&t, self.lact(x3, x, y)));
                        let b = v
                            .tensor_mor(&v.identity(lc.hom(x3, x2)), self.lact(x2, x, y))
                            .and_then(|t| v.compose(&t, self.lact(x3, x2, y)));
                        if !eqm(a, b) {
                            rep.push("left_associativity", &[x3, x2, x, y], "left action not associative");
                        }
                    }
                }
            }
        }
        for x in 0..l {
            for y in 0..r {
                for y2 in 0..r {
                    for y3 in 0..r {
                        let a = v
                            .tensor_mor(self.ract(x, y, y2), &v.identity(rc.hom(y2, y3)))
                            .and_then(|t| v.compose(&t, self.ract(x, y2, y3)));
                        let b = v
                            .tensor_mor(&v.identity(self.at(x, y)), rc.comp(y, y2, y3))
                            .and_then(|t| v.compose(&t, self.ract(x, y, y3)));
                        if !eqm(a, b) {
                            rep.push("right_associativity", &[x, y, y2, y3], "right action not associative");
                        }
                    }
                }
            }
        }
        for x2 in 0..l {
            for x in 0..l {
                for y in 0..r {
                    for y2 in 0..r {
                        let a = v
                            .tensor_mor(self.lact(x2, x, y), &v.identity(rc.hom(y, y2)))
                            .and_then(|t| v.compose(&t, self.ract(x2, y, y2)));
                        let b = v
                            .tensor_mor(&v.identity(lc.hom(x2, x)), self.ract(x, y, y2))
                            .and_then(|t| v.compose(&t, self.lact(x2, x, y2)));
                        if !eqm(a, b) {
                            rep.push("action_compatibility", &[x2, x, y, y2], "left and right actions do not commute");
                        }
                    }
                }
            }
        }
        rep
    }
}

/// `C(x, y)` as a distributor, acted on by composition.
pub fn loose_identity(c: &Cat) -> Dist {
    let n = c.n();
    let mut la = Vec::with_capacity(n * n * n);
    for x2 in 0..n {
        for x in 0..n {
            for y in 0..n {
                la.push(c.comp(x2, x, y).clone());
            }
        }
    }
    Arc::new(Distributor {
        name: format!("{}(1,1)", c.name),
        left: c.clone(),
        right: c.clone(),
        obj: c.hom.clone(),
        left_act: la.clone(),
        right_act: la,
    })
}

/// `q(f, g)`: entries `q(fx, gy)` with actions precomposed by `f` and `g`.
pub fn restrict(q: &Dist, f: &Fun, g: &Fun) -> Result<Dist> {
    if !same_cat(&f.cod, &q.left) || !same_cat(&g.cod, &q.right) {
        return Err(Error::frame(format!("cannot restrict {} along {} and {}", q.name, f.name, g.name)));
    }
    let (a, b) = (&f.dom, &g.dom);
    let v = &a.base;
    let (l, r) = (a.n(), b.n());
    let mut obj = Vec::with_capacity(l * r);
    for x in 0..l {
        for y in 0..r {
            obj.push(q.at(f.ob(x), g.ob(y)));
        }
    }
    let mut la = Vec::with_capacity(l * l * r);
    for x2 in 0..l {
        for x in 0..l {
            for y in 0..r {
                let t = v.tensor_mor(f.map(x2, x), &v.identity(q.at(f.ob(x), g.ob(y))))?;
                la.push(v.compose(&t, q.lact(f.ob(x2), f.ob(x), g.ob(y)))?);
            }
        }
    }
    let mut ra = Vec::with_capacity(l * r * r);
    for x in 0..l {
        for y in 0..r {
            for y2 in 0..r {
                let t = v.tensor_mor(&v.identity(q.at(f.ob(x), g.ob(y))), g.map(y, y2))?;
                ra.push(v.compose(&t, q.ract(f.ob(x), g.ob(y), g.ob(y2)))?);
            }
        }
    }
    let name = match (f.is_identity(), g.is_identity()) {
        (true, true) => q.name.clone(),
        _ => format!("{}({},{})", q.name, f.name, g.name),
    };
    Ok(Arc::new(Distributor { name, left: a.clone(), right: b.clone(), obj, left_act: la, right_act: ra }))
}

/// `D(1, f)`, with entries `D(d, fa)`.
pub fn companion(f: &Fun) -> Result<Dist> {
    let d = restrict(&loose_identity(&f.cod), &EnrichedFunctor::identity(&f.cod), f)?;
    Ok(renamed(d, format!("{}(1,{})", f.cod.name, f.name)))
}

/// `D(f, 1)`, with entries `D(fa, d)`.
pub fn conjoint(f: &Fun) -> Result<Dist> {
    let d = restrict(&loose_identity(&f.cod), f, &EnrichedFunctor::identity(&f.cod))?;
    Ok(renamed(d, format!("{}({},1)", f.cod.name, f.name)))
}

/// `E(f, g)` for functors into a common category.
pub fn hom_dist(f: &Fun, g: &Fun) -> Result<Dist> {
    let d = restrict(&loose_identity(&f.cod), f, g)?;
    Ok(renamed(d, format!("{}({},{})", f.cod.name, f.name, g.name)))
}

fn renamed(d: Dist, name: String) -> Dist {
    let mut d = (*d).clone();
    d.name = name;
    Arc::new(d)
}

pub fn tuple_count(sizes: &[usize]) -> usize {
    sizes.iter().product()
}

pub fn tuple_at(sizes: &[usize], mut k: usize) -> Vec<usize> {
    let mut t = vec![0; sizes.len()];
    for i in (0..sizes.len()).rev() {
        t[i] = k % sizes[i];
        k /= sizes[i];
    }
    t
}

pub fn tuple_index(sizes: &[usize], t: &[usize]) -> usize {
    t.iter().zip(sizes).fold(0, |acc, (&x, &s)| acc * s + x)
}

#[derive(Debug, Clone)]
pub struct Frame {
    /// Categories `C_0, ..., C_n` of the tuple positions.
    pub cats: Vec<Cat>,
    pub chain: Vec<Dist>,
    pub f: Fun,
    pub g: Fun,
    pub q: Dist,
}

impl PartialEq for Frame {
    fn eq(&self, o: &Self) -> bool {
        self.cats.len() == o.cats.len()
            && self.cats.iter().zip(&o.cats).all(|(a, b)| same_cat(a, b))
            && self.chain.iter().zip(&o.chain).all(|(a, b)| same_dist(a, b))
            && same_fun(&self.f, &o.f)
            && same_fun(&self.g, &o.g)
            && same_dist(&self.q, &o.q)
    }
}

impl Frame {
    pub fn new(chain: Vec<Dist>, f: Fun, g: Fun, q: Dist) -> Result<Frame> {
        let first = chain.first().map(|p| p.left.clone()).unwrap_or_else(|| f.dom.clone());
        let mut cats = vec![first];
        for (i, p) in chain.iter().enumerate() {
            if !same_cat(&cats[i], &p.left) {
                return Err(Error::frame(format!("chain breaks before {}", p.name)));
            }
            cats.push(p.right.clone());
        }
        if !same_cat(&f.dom, &cats[0]) || !same_cat(&g.dom, cats.last().unwrap()) {
            return Err(Error::frame("boundary functors do not start at the chain ends"));
        }
        if !same_cat(&f.cod, &q.left) || !same_cat(&g.cod, &q.right) {
            return Err(Error::frame(format!("boundary functors do not land in the sides of {}", q.name)));
        }
        Ok(Frame { cats, chain, f, g, q })
    }

    /// A frame with identity boundaries.
    pub fn plain(chain: Vec<Dist>, q: Dist) -> Result<Frame> {
        let f = EnrichedFunctor::identity(&q.left);
        let g = EnrichedFunctor::identity(&q.right);
        Frame::new(chain, f, g, q)
    }

    /// A nullary frame over `c` into `q(f-, g-)`.
    pub fn nullary(f: Fun, g: Fun, q: Dist) -> Result<Frame> {
        Frame::new(vec![], f, g, q)
    }

    pub fn arity(&self) -> usize {
        self.chain.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.cats.iter().map(|c| c.n()).collect()
    }

    pub fn base(&self) -> &Base {
        &self.q.left.base
    }

    pub fn dom_obj(&self, t: &[usize]) -> Result<Obj> {
        let objs: Vec<Obj> = (0..self.arity()).map(|i| self.chain[i].at(t[i], t[i + 1])).collect();
        self.base().tensor_objs(&objs)
    }

    pub fn cod_obj(&self, t: &[usize]) -> Obj {
        self.q.at(self.f.ob(t[0]), self.g.ob(*t.last().unwrap()))
    }

    pub fn describe(&self) -> String {
        let names: Vec<&str> = self.chain.iter().map(|p| p.name.as_str()).collect();
        format!("[{}] => {} along ({}, {})", names.join(", "), self.q.name, self.f.name, self.g.name)
    }
}

#[derive(Debug, Clone)]
pub struct Form {
    pub name: String,
    pub frame: Frame,
    pub comps: Vec<Mor>,
}

impl Form {
    pub fn new(name: &str, frame: Frame, comps: Vec<Mor>) -> Form {
        Form { name: name.into(), frame, comps }
    }

    /// Builds a form by evaluating `comp` at each tuple.
    pub fn tabulate(name: &str, frame: Frame, mut comp: impl FnMut(&[usize]) -> Result<Mor>) -> Result<Form> {
        let sizes = frame.sizes();
        let mut comps = Vec::with_capacity(tuple_count(&sizes));
        for k in 0..tuple_count(&sizes) {
            comps.push(comp(&tuple_at(&sizes, k))?);
        }
        Ok(Form::new(name, frame, comps))
    }

    /// The form whose components are the unique Boolean candidates.
    pub fn bool_unique(name: &str, frame: Frame) -> Result<Form> {
        if !frame.base().is_bool() {
            return Err(Error::malformed("bool_unique needs the Boolean base"));
        }
        let fr = frame.clone();
        Form::tabulate(name, frame, |t| Ok(Mor::new(fr.dom_obj(t)?, fr.cod_obj(t), vec![])))
    }

    pub fn at(&self, t: &[usize]) -> &Mor {
        &self.comps[tuple_index(&self.frame.sizes(), t)]
    }

    pub fn equal(&self, other: &Form) -> Result<bool> {
        if self.frame != other.frame {
            return Err(Error::frame(format!("{} and {} have different frames", self.name, other.name)));
        }
        Ok(self.comps == other.comps)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new(format!("form {}", self.name));
        let fr = &self.frame;
        let v = fr.base().clone();
        let sizes = fr.sizes();
        let n = fr.arity();
        if self.comps.len() != tuple_count(&sizes) {
            rep.push("well_typed", &[], "wrong number of components");
            return rep;
        }
        for (k, c) in self.comps.iter().enumerate() {
            let t = tuple_at(&sizes, k);
            if v.check_mor(c).is_err() || fr.dom_obj(&t).ok() != Some(c.dom) || c.cod != fr.cod_obj(&t) {
                rep.push("well_typed", &t, format!("component {c:?} has the wrong type"));
            }
        }
        if !rep.is_ok() {
            return rep;
        }
        let (f, g, q) = (&fr.f, &fr.g, &fr.q);
        let eqm = |a: Result<Mor>, b: Result<Mor>| matches!((a, b), (Ok(a), Ok(b)) if a == b);
        let id_chain = |t: &[usize], from: usize, to: usize| -> Result<Mor> {
            let objs: Vec<Obj> = (from..to).map(|i| fr.chain[i].at(t[i], t[i + 1])).collect();
            Ok(v.identity(v.tensor_objs(&objs)?))
        };
        if n == 0 {
            let c = &fr.cats[0];
            for x in 0..c.n() {
                for y in 0..c.n() {
                    let (fx, fy, gx, gy) = (f.ob(x), f.ob(y), g.ob(x), g.ob(y));
                    let a = v
                        .tensor_mor(self.at(&[x]), g.map(x, y))
                        .and_then(|m| v.compose(&m, q.ract(fx, gx, gy)));
                    let b = v
                        .tensor_mor(f.map(x, y), self.at(&[y]))
                        .and_then(|m| v.compose(&m, q.lact(fx, fy, gy)));
                    if !eqm(a, b) {
                        rep.push("wedge", &[x, y], "nullary naturality fails");
                    }
                }
            }
            return rep;
        }
        for k in 0..tuple_count(&sizes) {
            let t = tuple_at(&sizes, k);
            let xn = t[n];
            // left naturality
            for x2 in 0..sizes[0] {
                let mut t2 = t.clone();
                t2[0] = x2;
                let a = id_chain(&t, 1, n)
                    .and_then(|rest| v.tensor_mor(fr.chain[0].lact(x2, t[0], t[1]), &rest))
                    .and_then(|m| v.compose(&m, self.at(&t2)));
                let b = v
                    .tensor_mor(f.map(x2, t[0]), self.at(&t))
                    .and_then(|m| v.compose(&m, q.lact(f.ob(x2), f.ob(t[0]), g.ob(xn))));
                if !eqm(a, b) {
                    let mut w = t.clone();
                    w.insert(0, x2);
                    rep.push("left_naturality", &w, "left action not preserved");
                }
            }
            // right naturality
            for y2 in 0..sizes[n] {
                let mut t2 = t.clone();
                t2[n] = y2;
                let a = id_chain(&t, 0, n - 1)
                    .and_then(|rest| v.tensor_mor(&rest, fr.chain[n - 1].ract(t[n - 1], xn, y2)))
                    .and_then(|m| v.compose(&m, self.at(&t2)));
                let b = v
                    .tensor_mor(self.at(&t), g.map(xn, y2))
                    .and_then(|m| v.compose(&m, q.ract(f.ob(t[0]), g.ob(xn), g.ob(y2))));
                if !eqm(a, b) {
                    let mut w = t.clone();
                    w.push(y2);
                    rep.push("right_naturality", &w, "right action not preserved");
                }
            }
            // internal naturality at each joint
            for i in 1..n {
                for x2 in 0..sizes[i] {
                    let mut t2 = t.clone();
                    t2[i] = x2;
                    let res = (|| -> Result<bool> {
                        let pre = id_chain(&t, 0, i - 1)?;
                        let post = id_chain(&t, i + 1, n)?;
                        let pi = &fr.chain[i - 1];
                        let pj = &fr.chain[i];
                        let mid_a = v.tensor_mor(pi.ract(t[i - 1], t[i], x2), &v.identity(pj.at(x2, t[i + 1])))?;
                        let a = v.compose(&v.tensor_mors(&[&pre, &mid_a, &post])?, self.at(&t2))?;
                        let mid_b = v.tensor_mor(&v.identity(pi.at(t[i - 1], t[i])), pj.lact(t[i], x2, t[i + 1]))?;
                        let b = v.compose(&v.tensor_mors(&[&pre, &mid_b, &post])?, self.at(&t))?;
                        Ok(a == b)
                    })();
                    if res != Ok(true) {
                        let mut w = t.clone();
                        w.insert(i + 1, x2);
                        rep.push("internal_naturality", &w, format!("joint {i} not balanced"));
                    }
                }
            }
        }
        rep
    }

    /// Post-composes a form into a loose identity with a functor.
    pub fn then_functor(&self, h: &Fun) -> Result<Form> {
        let fr = &self.frame;
        if !same_cat(&fr.q.left, &h.dom) || !same_cat(&fr.q.right, &h.dom) || *fr.q != *loose_identity(&h.dom) {
            return Err(Error::frame("then_functor needs a form into a loose identity"));
        }
        let frame = Frame::new(fr.chain.clone(), fr.f.then(h)?, fr.g.then(h)?, loose_identity(&h.cod))?;
        let v = fr.base().clone();
        let n = fr.arity();
        Form::tabulate(&format!("{};{}", self.name, h.name), frame, |t| {
            v.compose(self.at(t), h.map(fr.f.ob(t[0]), fr.g.ob(t[n])))
        })
    }
}

/// The identity form `p => p`.
pub fn id_form(p: &Dist) -> Result<Form> {
    let frame = Frame::plain(vec![p.clone()], p.clone())?;
    let v = p.left.base.clone();
    Form::tabulate(&format!("1_{}", p.name), frame, |t| Ok(v.identity(p.at(t[0], t[1]))))
}

/// The identity 2-cell of a functor: nullary, components `I_{fx}`.
pub fn tight_identity(f: &Fun) -> Result<Form> {
    let frame = Frame::nullary(f.clone(), f.clone(), loose_identity(&f.cod))?;
    Form::tabulate(&format!("1_{}", f.name), frame, |t| Ok(f.cod.ident(f.ob(t[0])).clone()))
}

/// `L(1,1), p => p` given by the left action.
pub fn left_action_form(p: &Dist) -> Result<Form> {
    let frame = Frame::plain(vec![loose_identity(&p.left), p.clone()], p.clone())?;
    Form::tabulate(&format!("lact_{}", p.name), frame, |t| Ok(p.lact(t[0], t[1], t[2]).clone()))
}

/// `p, R(1,1) => p` given by the right action.
pub fn right_action_form(p: &Dist) -> Result<Form> {
    let frame = Frame::plain(vec![p.clone(), loose_identity(&p.right)], p.clone())?;
    Form::tabulate(&format!("ract_{}", p.name), frame, |t| Ok(p.ract(t[0], t[1], t[2]).clone()))
}

/// Composition `C(1,1), C(1,1) => C(1,1)`.
pub fn composition_form(c: &Cat) -> Result<Form> {
    let id = loose_identity(c);
    let frame = Frame::plain(vec![id.clone(), id.clone()], id)?;
    Form::tabulate(&format!("comp_{}", c.name), frame, |t| Ok(c.comp(t[0], t[1], t[2]).clone()))
}

/// The cartesian cell `q(f, g) => q` with boundaries `f` and `g`.
pub fn cartesian_cell(q: &Dist, f: &Fun, g: &Fun) -> Result<Form> {
    let r = restrict(q, f, g)?;
    let frame = Frame::new(vec![r.clone()], f.clone(), g.clone(), q.clone())?;
    let v = q.left.base.clone();
    Form::tabulate(&format!("cart_{}", r.name), frame, |t| Ok(v.identity(r.at(t[0], t[1]))))
}

/// The four bending cells of a functor `l : A -> C`.
pub struct Bends {
    /// Nullary into `C(1,l)` with boundaries `(l, 1)`.
    pub cp_unit: Form,
    /// `C(1,l) => C(1,1)` with boundaries `(1, l)`.
    pub cp_counit: Form,
    /// Nullary into `C(l,1)` with boundaries `(1, l)`.
    pub pc_unit: Form,
    /// `C(l,1) => C(1,1)` with boundaries `(l, 1)`.
    pub pc_counit: Form,
}

pub fn bends(l: &Fun) -> Result<Bends> {
    let c = &l.cod;
    let v = c.base.clone();
    let (ida, idc) = (EnrichedFunctor::identity(&l.dom), EnrichedFunctor::identity(c));
    let cp = companion(l)?;
    let pc = conjoint(l)?;
    let cp_unit = Form::tabulate(
        "cp_unit",
        Frame::nullary(l.clone(), ida.clone(), cp.clone())?,
        |t| Ok(c.ident(l.ob(t[0])).clone()),
    )?;
    let cp_counit = Form::tabulate(
        "cp_counit",
        Frame::new(vec![cp.clone()], idc.clone(), l.clone(), loose_identity(c))?,
        |t| Ok(v.identity(cp.at(t[0], t[1]))),
    )?;
    let pc_unit = Form::tabulate(
        "pc_unit",
        Frame::nullary(ida, l.clone(), pc.clone())?,
        |t| Ok(c.ident(l.ob(t[0])).clone()),
    )?;
    let pc_counit = Form::tabulate(
        "pc_counit",
        Frame::new(vec![pc.clone()], l.clone(), idc, loose_identity(c))?,
        |t| Ok(v.identity(pc.at(t[0], t[1]))),
    )?;
    Ok(Bends { cp_unit, cp_counit, pc_unit, pc_counit })
}

/// Pastes a row of forms onto the chain of `lower`.
///
/// The `k`-th upper form must land in the `k`-th distributor of the lower
/// chain, and adjacent upper forms must share their vertical boundary.
pub fn paste(upper: &[Form], lower: &Form) -> Result<Form> {
    let lf = &lower.frame;
    if upper.len() != lf.arity() {
        return Err(Error::frame(format!("{} upper forms against a chain of {}", upper.len(), lf.arity())));
    }
    if upper.is_empty() {
        return Err(Error::frame("pasting needs at least one upper form"));
    }
    for (k, u) in upper.iter().enumerate() {
        if !same_dist(&u.frame.q, &lf.chain[k]) {
            return Err(Error::frame(format!("{} does not land in {}", u.name, lf.chain[k].name)));
        }
        if k + 1 < upper.len() && !same_fun(&u.frame.g, &upper[k + 1].frame.f) {
            return Err(Error::frame(format!("{} and {} disagree on their shared boundary", u.name, upper[k + 1].name)));
        }
    }
    let mut cats: Vec<Cat> = vec![upper[0].frame.cats[0].clone()];
    let mut chain: Vec<Dist> = vec![];
    let mut starts = vec![];
    for (k, u) in upper.iter().enumerate() {
        if k > 0 && !same_cat(cats.last().unwrap(), &u.frame.cats[0]) {
            return Err(Error::frame("upper forms do not meet"));
        }
        starts.push(cats.len() - 1);
        cats.extend(u.frame.cats[1..].iter().cloned());
        chain.extend(u.frame.chain.iter().cloned());
    }
    let f = upper[0].frame.f.then(&lf.f)?;
    let g = upper.last().unwrap().frame.g.then(&lf.g)?;
    let frame = Frame::new(chain, f, g, lf.q.clone())?;
    let v = lf.base().clone();
    let name = format!("({});{}", upper.iter().map(|u| u.name.as_str()).collect::<Vec<_>>().join(","), lower.name);
    Form::tabulate(&name, frame, |t| {
        let mut parts = Vec::with_capacity(upper.len());
        let mut low = Vec::with_capacity(upper.len() + 1);
        for (k, u) in upper.iter().enumerate() {
            let s = starts[k];
            let slice = &t[s..=s + u.frame.arity()];
            parts.push(u.at(slice).clone());
            if k == 0 {
                low.push(u.frame.f.ob(slice[0]));
            }
            low.push(u.frame.g.ob(*slice.last().unwrap()));
        }
        let refs: Vec<&Mor> = parts.iter().collect();
        v.compose(&v.tensor_mors(&refs)?, lower.at(&low))
    })
}

/// Every form of `frame`, in lexicographic order of component choices.
pub fn enumerate_forms(frame: &Frame, budget: Budget) -> Result<Vec<Form>> {
    let v = frame.base().clone();
    if !v.capabilities().morphism_enumeration {
        return Err(Error::CapabilityMissing("morphism_enumeration"));
    }
    let sizes = frame.sizes();
    let total = tuple_count(&sizes);
    let mut cands: Vec<Vec<Mor>> = Vec::with_capacity(total);
    let mut space: u128 = 1;
    for k in 0..total {
        let t = tuple_at(&sizes, k);
        let d = frame.dom_obj(&t)?;
        let c = frame.cod_obj(&t);
        space = space.saturating_mul(v.hom_count(d, c));
        budget.check(space)?;
        cands.push(v.hom_iter(d, c).collect());
    }
    let mut out = vec![];
    if cands.iter().any(|c| c.is_empty()) {
        return Ok(out);
    }
    let mut idx = vec![0usize; total];
    loop {
        let comps: Vec<Mor> = idx.iter().enumerate().map(|(k, &i)| cands[k][i].clone()).collect();
        let f = Form::new("enum", frame.clone(), comps);
        if f.validate().is_ok() {
            out.push(f);
        }
        let mut k = total;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < cands[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Every functor `dom -> cod`, by brute force over object and hom maps.
pub fn enumerate_functors(dom: &Cat, cod: &Cat, budget: Budget) -> Result<Vec<Fun>> {
    let v = dom.base.clone();
    let (n, m) = (dom.n(), cod.n());
    let mut out = vec![];
    let obj_space = (m as u128).saturating_pow(n as u32);
    budget.check(obj_space)?;
    for ok in 0..obj_space as usize {
        let obj_map = tuple_at(&vec![m; n], ok);
        let mut cands: Vec<Vec<Mor>> = vec![];
        let mut space: u128 = obj_space;
        for x in 0..n {
            for y in 0..n {
                let c = v.hom_count(dom.hom(x, y), cod.hom(obj_map[x], obj_map[y]));
                space = space.saturating_mul(c.max(1));
                budget.check(space)?;
                cands.push(v.hom_iter(dom.hom(x, y), cod.hom(obj_map[x], obj_map[y])).collect());
            }
        }
        if cands.iter().any(|c| c.is_empty()) {
            continue;
        }
        let sizes: Vec<usize> = cands.iter().map(|c| c.len()).collect();
        for k in 0..tuple_count(&sizes) {
            let pick = tuple_at(&sizes, k);
            let hom_map = pick.iter().enumerate().map(|(i, &j)| cands[i][j].clone()).collect();
            let f = EnrichedFunctor {
                name: "enum".into(),
                dom: dom.clone(),
                cod: cod.clone(),
                obj_map: obj_map.clone(),
                hom_map,
            };
            if f.validate().is_ok() {
                out.push(Arc::new(f));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn chain_preorder_validates() {
        let ch3 = corpus::ch3();
        assert!(ch3.validate().is_ok());
        assert!(EnrichedFunctor::identity(&ch3).validate().is_ok());
    }

    #[test]
    fn non_associative_monoid_is_rejected() {
        let bad = corpus::broken_monoid();
        let rep = bad.validate();
        assert!(rep.laws().contains(&"associativity".to_string()), "{rep:?}");
        assert!(rep.violations.iter().any(|v| v.law == "associativity" && v.at == vec![0, 0, 0, 0]));
    }

    #[test]
    fn loose_identity_validates_on_corpus() {
        for c in [corpus::ch3(), corpus::disc2(), corpus::pt(), corpus::a2(), corpus::inc1_e()] {
            let d = loose_identity(&c);
            assert!(d.validate().is_ok(), "{}", c.name);
        }
    }

    #[test]
    fn restriction_along_identities_is_trivial() {
        let ch3 = corpus::ch3();
        let id = EnrichedFunctor::identity(&ch3);
        let d = loose_identity(&ch3);
        let r = restrict(&d, &id, &id).unwrap();
        assert_eq!(*r, *d);
    }

    #[test]
    fn conjoint_of_j01_reads_the_order() {
        let j = corpus::j01();
        let ej1 = conjoint(&j).unwrap();
        let cp = companion(&j).unwrap();
        for a in 0..2 {
            for e in 0..3 {
                assert_eq!(ej1.at(a, e) == 1, j.ob(a) <= e);
                assert_eq!(cp.at(e, a) == 1, e <= j.ob(a));
            }
        }
        assert!(ej1.validate().is_ok() && cp.validate().is_ok());
        let direct = restrict(&loose_identity(&j.cod), &j, &EnrichedFunctor::identity(&j.cod)).unwrap();
        assert_eq!(direct.obj, ej1.obj);
    }

    #[test]
    fn companion_of_identity_is_loose_identity() {
        let ch3 = corpus::ch3();
        let id = EnrichedFunctor::identity(&ch3);
        assert_eq!(companion(&id).unwrap().obj, loose_identity(&ch3).obj);
    }

    #[test]
    fn restriction_is_pseudofunctorial() {
        let j = corpus::j01();
        let e = j.cod.clone();
        let d = loose_identity(&e);
        let id_a = EnrichedFunctor::identity(&j.dom);
        let once = restrict(&d, &j, &j).unwrap();
        let twice = restrict(&once, &id_a, &id_a).unwrap();
        let direct = restrict(&d, &id_a.then(&j).unwrap(), &id_a.then(&j).unwrap()).unwrap();
        assert_eq!(twice.obj, direct.obj);
        assert_eq!(twice.left_act, direct.left_act);
    }

    #[test]
    fn bending_zigzags_hold() {
        for l in [corpus::j01(), corpus::inc1_j()] {
            let b = bends(&l).unwrap();
            let cp = companion(&l).unwrap();
            let pc = conjoint(&l).unwrap();
            let lhs = paste(&[b.cp_unit.clone()], &b.cp_counit).unwrap();
            assert!(lhs.equal(&tight_identity(&l).unwrap()).unwrap());
            let lhs = paste(&[b.pc_unit.clone()], &b.pc_counit).unwrap();
            assert!(lhs.equal(&tight_identity(&l).unwrap()).unwrap());
            let z = paste(&[b.cp_counit.clone(), b.cp_unit.clone()], &left_action_form(&cp).unwrap()).unwrap();
            assert!(z.equal(&id_form(&cp).unwrap()).unwrap());
            let z = paste(&[b.pc_unit.clone(), b.pc_counit.clone()], &right_action_form(&pc).unwrap()).unwrap();
            assert!(z.equal(&id_form(&pc).unwrap()).unwrap());
        }
    }

    #[test]
    fn pasting_identities_is_neutral() {
        let j = corpus::inc1_j();
        let p = conjoint(&j).unwrap();
        let act = right_action_form(&p).unwrap();
        let ids = [id_form(&p).unwrap(), id_form(&loose_identity(&j.cod)).unwrap()];
        let pasted = paste(&ids, &act).unwrap();
        assert!(pasted.equal(&act).unwrap());
        let below = paste(&[act.clone()], &id_form(&p).unwrap()).unwrap();
        assert!(below.equal(&act).unwrap());
    }

    #[test]
    fn pasting_is_associative_on_a_three_row_grid() {
        let e = corpus::inc1_e();
        let id = loose_identity(&e);
        let comp = composition_form(&e).unwrap();
        let one = id_form(&id).unwrap();
        // ((comp, 1) ; comp) ; 1  versus  (comp, 1) ; (comp ; 1)
        let top = paste(&[comp.clone(), one.clone()], &comp).unwrap();
        let l = paste(&[top], &one).unwrap();
        let bottom = paste(&[comp.clone()], &one).unwrap();
        let r = paste(&[comp.clone(), one.clone()], &bottom).unwrap();
        assert!(l.equal(&r).unwrap());
        assert!(l.validate().is_ok());
        // direct table evaluation
        for (k, c) in l.comps.iter().enumerate() {
            let t = tuple_at(&l.frame.sizes(), k);
            let v = &e.base;
            let direct = v
                .compose(&v.tensor_mor(e.comp(t[0], t[1], t[2]), &v.identity(e.hom(t[2], t[3]))).unwrap(), e.comp(t[0], t[2], t[3]))
                .unwrap();
            assert_eq!(*c, direct);
        }
    }

    #[test]
    fn stacked_nullary_bool_forms() {
        let j = corpus::j01();
        let t = tight_identity(&j).unwrap();
        let one = id_form(&loose_identity(&j.cod)).unwrap();
        let p = paste(&[t.clone()], &one).unwrap();
        let unique = Form::bool_unique("u", p.frame.clone()).unwrap();
        assert!(p.equal(&unique).unwrap());
    }

    #[test]
    fn form_equality() {
        let fs = corpus::inc1_e();
        let two = EnrichedFunctor::identity(&fs);
        let fr = Frame::nullary(two.clone(), two.clone(), loose_identity(&fs)).unwrap();
        let forms = enumerate_forms(&fr, Budget::default()).unwrap();
        assert!(forms.len() >= 2 || forms.len() == 1);
        assert!(forms[0].equal(&forms[0]).unwrap());
        if forms.len() > 1 {
            assert!(!forms[0].equal(&forms[1]).unwrap());
        }
    }

    #[test]
    fn nullary_finset_frame_without_constraints_counts_two() {
        let (pt, two) = corpus::pt_fs_two();
        let id = EnrichedFunctor::identity(&pt);
        let fr = Frame::nullary(id.clone(), id, two).unwrap();
        assert_eq!(enumerate_forms(&fr, Budget::default()).unwrap().len(), 2);
        assert!(matches!(enumerate_forms(&fr, Budget(0)), Err(Error::EnumerationBudgetExceeded { .. })));
    }

    #[test]
    fn bool_frames_have_at_most_one_form() {
        let j = corpus::j01();
        let fr = Frame::nullary(j.clone(), j.clone(), loose_identity(&j.cod)).unwrap();
        assert!(enumerate_forms(&fr, Budget::default()).unwrap().len() <= 1);
    }

    #[test]
    fn restriction_is_fully_faithful_on_corpus() {
        // nullary forms f => g correspond to forms D(1,f) => D(1,g)
        let cases = [(corpus::j01(), corpus::j01()), (corpus::j01(), corpus::tmax_functor())];
        for (f, g) in cases {
            let nullary = Frame::nullary(f.clone(), g.clone(), loose_identity(&f.cod)).unwrap();
            let unary = Frame::plain(vec![companion(&f).unwrap()], companion(&g).unwrap()).unwrap();
            let a = enumerate_forms(&nullary, Budget::default()).unwrap().len();
            let b = enumerate_forms(&unary, Budget::default()).unwrap().len();
            assert_eq!(a, b);
        }
    }
}
