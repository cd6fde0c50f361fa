//! Built-in fixtures shared by the tests, the CLI and the shipped JSON files.

use std::sync::Arc;

use crate::enriched::{Cat, Dist, Distributor, EnrichedCategory, EnrichedFunctor, Fun};
use crate::dual::{RelativeCoadjunction, RelativeComonad};
use crate::json::Entry;
use crate::relmonad::{MonadMorphism, PresentationKind, RelativeAdjunction, RelativeMonad};
use crate::vkernel::{make_bool_quantale, make_finset_skeleton, Base, Mor};

pub fn q2() -> Base {
    make_bool_quantale()
}

pub fn fs3() -> Base {
    make_finset_skeleton(3).unwrap()
}

/// Base for the INC1 family. Its largest tensor is the five-fold chain in
/// the associativity pasting of the monoid form, of size 4*2*4*2*4.
pub fn fs_inc1() -> Base {
    make_finset_skeleton(256).unwrap()
}

pub fn ch3() -> Cat {
    EnrichedCategory::bool_preorder("CH3", &q2(), &["0", "1", "2"], |x, y| x <= y).unwrap()
}

pub fn disc2() -> Cat {
    EnrichedCategory::bool_preorder("DISC2", &q2(), &["a", "b"], |x, y| x == y).unwrap()
}

pub fn pt() -> Cat {
    EnrichedCategory::bool_preorder("PT", &q2(), &["p"], |_, _| true).unwrap()
}

/// The chain `a <= b`, domain of the root J01.
pub fn a2() -> Cat {
    EnrichedCategory::bool_preorder("A2", &q2(), &["a", "b"], |x, y| x <= y).unwrap()
}

pub fn j01() -> Fun {
    EnrichedFunctor::bool_functor("J01", &a2(), &ch3(), vec![0, 1])
}

/// The constant functor at `2`, underlying TMAX.
pub fn tmax_functor() -> Fun {
    EnrichedFunctor::bool_functor("T2", &a2(), &ch3(), vec![2, 2])
}

/// DISC2 collapsed onto the top of CH3.
pub fn disc2_to_top() -> Fun {
    EnrichedFunctor::bool_functor("K2", &disc2(), &ch3(), vec![2, 2])
}

/// A one-object FinSet category with hom 2 whose composite `x.y = 1 - x`
/// is not associative.
pub fn broken_monoid() -> Cat {
    let v = make_finset_skeleton(8).unwrap();
    Arc::new(EnrichedCategory {
        name: "BROKEN".into(),
        base: v.clone(),
        objects: vec!["*".into()],
        hom: vec![2],
        ident: vec![v.element(2, 0)],
        comp: vec![Mor::new(4, 2, (0..4).map(|k| 1 - v.unpair(2, 2, k).0 as u32).collect())],
    })
}

/// The one-object FinSet category with trivial hom, over FS4.
pub fn pt_fs() -> Cat {
    let v = make_finset_skeleton(4).unwrap();
    Arc::new(EnrichedCategory {
        name: "PTFS".into(),
        base: v.clone(),
        objects: vec!["*".into()],
        hom: vec![1],
        ident: vec![v.identity(1)],
        comp: vec![v.identity(1)],
    })
}

/// `PTFS` together with the distributor whose only entry is 2.
pub fn pt_fs_two() -> (Cat, Dist) {
    let c = pt_fs();
    let v = c.base.clone();
    let d = Distributor {
        name: "TWO".into(),
        left: c.clone(),
        right: c.clone(),
        obj: vec![2],
        left_act: vec![v.identity(2)],
        right_act: vec![v.identity(2)],
    };
    (c, Arc::new(d))
}

/// Index of a function `m -> n` in `n^m`, with `f(0)` most significant.
pub fn encode_fn(n: usize, f: &[usize]) -> usize {
    f.iter().fold(0, |acc, &x| acc * n + x)
}

pub fn decode_fn(m: usize, n: usize, mut code: usize) -> Vec<usize> {
    let mut f = vec![0; m];
    for i in (0..m).rev() {
        f[i] = code % n.max(1);
        code /= n.max(1);
    }
    f
}

/// The full subcategory of finite sets on `{0, 1, 2}`, with `E(m, n) = n^m`.
pub fn inc1_e() -> Cat {
    let v = fs_inc1();
    let pow = |m: usize, n: usize| n.pow(m as u32);
    let objs = 3;
    let mut hom = vec![];
    for m in 0..objs {
        for n in 0..objs {
            hom.push(pow(m, n));
        }
    }
    let ident = (0..objs)
        .map(|m| v.element(pow(m, m), encode_fn(m, &(0..m).collect::<Vec<_>>())))
        .collect();
    let mut comp = vec![];
    for x in 0..objs {
        for y in 0..objs {
            for z in 0..objs {
                let (a, b) = (pow(x, y), pow(y, z));
                let dom = a * b;
                let code = (0..dom)
                    .map(|k| {
                        let (f, g) = v.unpair(a, b, k);
                        let (f, g) = (decode_fn(x, y, f), decode_fn(y, z, g));
                        let fg: Vec<usize> = f.iter().map(|&i| g[i]).collect();
                        encode_fn(z, &fg) as u32
                    })
                    .collect();
                comp.push(Mor::new(dom, pow(x, z), code));
            }
        }
    }
    Arc::new(EnrichedCategory {
        name: "FIN3".into(),
        base: v,
        objects: vec!["0".into(), "1".into(), "2".into()],
        hom,
        ident,
        comp,
    })
}

/// The one-object domain of the INC1 root.
pub fn inc1_a() -> Cat {
    let v = fs_inc1();
    Arc::new(EnrichedCategory {
        name: "ONE".into(),
        base: v.clone(),
        objects: vec!["*".into()],
        hom: vec![1],
        ident: vec![v.identity(1)],
        comp: vec![v.identity(1)],
    })
}

/// The root picking the singleton: `* |-> 1`.
pub fn inc1_j() -> Fun {
    let e = inc1_e();
    let v = e.base.clone();
    Arc::new(EnrichedFunctor {
        name: "INC1".into(),
        dom: inc1_a(),
        cod: e,
        obj_map: vec![1],
        hom_map: vec![v.identity(1)],
    })
}

/// `t = 2` everywhere over J01.
pub fn tmax() -> RelativeMonad {
    RelativeMonad::bool_from_objects("TMAX", &j01(), vec![2, 2])
}

/// The closure operator `(1, 1, 2)` on CH3 over its identity root.
pub fn tcl() -> RelativeMonad {
    let c = ch3();
    RelativeMonad::bool_from_objects("TCL", &EnrichedFunctor::identity(&c), vec![1, 1, 2])
}

/// The monads on INC1 with `t(*) <= 2`, written out by hand.
///
/// With `t = 2` the unit picks `e0` and the extension of the point `e0` is
/// forced to be the identity; the other point extends to the swap or to a
/// constant.
pub fn inc1_monads() -> Vec<RelativeMonad> {
    let j = inc1_j();
    let v = j.cod.base.clone();
    let (id2, swap) = (encode_fn(2, &[0, 1]) as u32, encode_fn(2, &[1, 0]) as u32);
    let (k0, k1) = (encode_fn(2, &[0, 0]) as u32, encode_fn(2, &[1, 1]) as u32);
    let two = |name: &str, e0: u32, ext: [u32; 2]| RelativeMonad {
        name: name.into(),
        j: j.clone(),
        obj_map: vec![2],
        unit: vec![Mor::new(v.unit(), 2, vec![e0])],
        ext: vec![Mor::new(2, 4, ext.to_vec())],
    };
    let mut t1 = RelativeMonad::trivial(&j);
    t1.name = "INC1_T1".into();
    vec![
        t1,
        two("INC1_E0_SWAP", 0, [id2, swap]),
        two("INC1_E0_CONST", 0, [id2, k1]),
        two("INC1_E1_SWAP", 1, [swap, id2]),
        two("INC1_E1_CONST", 1, [k0, id2]),
    ]
}

/// Every monad of the corpus.
pub fn all_monads() -> Vec<RelativeMonad> {
    let mut out = vec![RelativeMonad::trivial(&j01()), tmax(), tcl()];
    out.extend(inc1_monads());
    out
}

/// The codiscrete preorder on `{a, b}` with the identity-on-objects
/// `A2 -> KL` and the constant map at `2`; the Kleisli legs of TMAX.
pub fn tmax_kleisli_legs() -> (Cat, Fun, Fun) {
    let kl = EnrichedCategory::bool_preorder("KL", &q2(), &["a", "b"], |_, _| true).unwrap();
    let k = EnrichedFunctor::bool_functor("k", &a2(), &kl, vec![0, 1]);
    let r = EnrichedFunctor::bool_functor("v", &kl, &ch3(), vec![2, 2]);
    (kl, k, r)
}

/// The two-element chain `0 <= 1`, as the codomain of the outer root.
pub fn e2() -> Cat {
    EnrichedCategory::bool_preorder("E2", &q2(), &["0", "1"], |x, y| x <= y).unwrap()
}

/// `J01 -|_{j'} min(-, 1)` with `j' : A2 ≅ E2`; CH3 coreflects onto `{0, 1}`.
/// Returned together with `l' = 1_A2`.
pub fn coreflection_outer() -> (RelativeAdjunction, Fun) {
    let jp = EnrichedFunctor::bool_functor("J'", &a2(), &e2(), vec![0, 1]);
    let rp = EnrichedFunctor::bool_functor("MIN1", &ch3(), &e2(), vec![0, 1, 1]);
    let adj = RelativeAdjunction::bool_from_legs("COREFL", &jp, &j01(), &rp);
    (adj, EnrichedFunctor::identity(&a2()))
}

/// The interior operator `d = (0, 1, 1)` on the identity coroot of CH3.
pub fn interior() -> RelativeComonad {
    let i = EnrichedFunctor::identity(&ch3());
    RelativeComonad::bool_from_objects("INT", &i, vec![0, 1, 1])
}

/// `d = (0, 0, 1)`: deflationary but not idempotent on `2`.
pub fn interior_broken() -> RelativeComonad {
    let i = EnrichedFunctor::identity(&ch3());
    RelativeComonad::bool_from_objects("INT_BAD", &i, vec![0, 0, 1])
}

/// `l = min(-, 1) : CH3 -> E2` left adjoint to `r : E2 -> CH3, (0, 2)`,
/// as a coadjunction on the identity coroot of E2.
pub fn galois_coadjunction() -> RelativeCoadjunction {
    let e = e2();
    let i = EnrichedFunctor::identity(&e);
    let r = EnrichedFunctor::bool_functor("R", &e, &ch3(), vec![0, 2]);
    let l = EnrichedFunctor::bool_functor("MIN1", &ch3(), &e, vec![0, 1, 1]);
    RelativeCoadjunction::bool_from_legs("GAL", &i, &r, &l)
}

/// Every shipped fixture, in dependency order.
pub fn entries() -> Vec<Entry> {
    let mut out = vec![Entry::Base(q2()), Entry::Base(fs3()), Entry::Base(fs_inc1())];
    for c in [pt(), a2(), ch3(), disc2(), e2(), pt_fs(), inc1_a(), inc1_e()] {
        out.push(Entry::Category(c));
    }
    let (kl, k, v) = tmax_kleisli_legs();
    out.push(Entry::Category(kl));
    for f in [j01(), tmax_functor(), disc2_to_top(), inc1_j(), k, v, EnrichedFunctor::identity(&a2())] {
        out.push(Entry::Functor(f));
    }
    out.push(Entry::Distributor(pt_fs_two().1));
    for m in all_monads() {
        out.push(Entry::Monad(m));
    }
    let tmax = tmax();
    let triv = RelativeMonad::trivial(&j01());
    out.push(Entry::MonadMorphism { m: MonadMorphism::from_trivial(&tmax), source: triv, target: tmax });
    out.push(Entry::Comonad(interior()));
    let (_, k, v) = tmax_kleisli_legs();
    out.push(Entry::Adjunction(RelativeAdjunction::bool_from_legs("TMAX_KL", &j01(), &k, &v), PresentationKind::HomIso));
    let mut id = RelativeAdjunction::identity(&j01());
    id.name = "J01_ID".into();
    out.push(Entry::Adjunction(id, PresentationKind::HomIso));
    out.push(Entry::Adjunction(coreflection_outer().0, PresentationKind::HomIso));
    out.push(Entry::Coadjunction(galois_coadjunction()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_categories_validate() {
        for c in [ch3(), disc2(), pt(), a2(), pt_fs(), inc1_e(), inc1_a()] {
            assert!(c.validate().is_ok(), "{} {:?}", c.name, c.validate());
        }
        for f in [j01(), tmax_functor(), disc2_to_top(), inc1_j()] {
            assert!(f.validate().is_ok(), "{}", f.name);
        }
        let (_, two) = pt_fs_two();
        assert!(two.validate().is_ok());
    }

    #[test]
    fn fin3_composition_is_function_composition() {
        let e = inc1_e();
        let v = &e.base;
        // diagrammatic: swap ; const0 = const0 and const0 ; swap = const1
        let swap = encode_fn(2, &[1, 0]);
        let c0 = encode_fn(2, &[0, 0]);
        let k = v.pair(4, 4, swap, c0);
        assert_eq!(e.comp(2, 2, 2).code[k] as usize, c0);
        let k = v.pair(4, 4, c0, swap);
        assert_eq!(e.comp(2, 2, 2).code[k] as usize, encode_fn(2, &[1, 1]));
    }
}
