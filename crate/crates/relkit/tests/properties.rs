//! Randomized laws over small Boolean preorders and finite-set maps.

use proptest::prelude::*;

use relkit::algebra::{comparison, resolution_from_em, resolution_from_kleisli};
use relkit::corpus;
use relkit::dual::op_category;
use relkit::enriched::{loose_identity, Cat, EnrichedCategory, EnrichedFunctor};
use relkit::error::Budget;
use relkit::json::{Emitter, Workspace};
use relkit::relmonad::{enumerate_monads, induced_monad};
use relkit::vkernel::{make_finset_skeleton, Mor};

const NAMES: [&str; 4] = ["a", "b", "c", "d"];

/// Reflexive-transitive closure of a random relation on `n` points.
fn preorder(n: usize, bits: &[bool]) -> Cat {
    let mut r: Vec<bool> = (0..n * n).map(|k| k / n == k % n || bits[k]).collect();
    for m in 0..n {
        for x in 0..n {
            for y in 0..n {
                if r[x * n + m] && r[m * n + y] {
                    r[x * n + y] = true;
                }
            }
        }
    }
    EnrichedCategory::bool_preorder("P", &corpus::q2(), &NAMES[..n], |x, y| r[x * n + y]).unwrap()
}

fn arb_preorder(max: usize) -> impl Strategy<Value = Cat> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(any::<bool>(), n * n).prop_map(move |b| preorder(n, &b)))
}

fn arb_map(dom: usize, cod: usize) -> impl Strategy<Value = Mor> {
    prop::collection::vec(0..cod.max(1) as u32, dom).prop_map(move |code| Mor::new(dom, cod, code))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn preorders_validate_and_dualize_involutively(c in arb_preorder(4)) {
        prop_assert!(c.validate().is_ok());
        prop_assert!(loose_identity(&c).validate().is_ok());
        let op = op_category(&c);
        prop_assert!(op.validate().is_ok());
        prop_assert_eq!(&*op_category(&op), &*c);
        for x in 0..c.n() {
            for y in 0..c.n() {
                prop_assert_eq!(op.hom(x, y), c.hom(y, x));
            }
        }
    }

    #[test]
    fn categories_survive_json(c in arb_preorder(4)) {
        let mut em = Emitter::new();
        let name = em.category(&c);
        let text = relkit::json::to_json(&em.into_bundle());
        let ws = Workspace::from_items(Workspace::parse(&text).unwrap()).unwrap();
        prop_assert_eq!(&*ws.category(&name).unwrap(), &*c);
    }

    #[test]
    fn every_monad_on_an_identity_root_is_resolved(c in arb_preorder(3)) {
        let j = EnrichedFunctor::identity(&c);
        let budget = Budget::default();
        for t in enumerate_monads(&j, |_| true, budget).unwrap() {
            prop_assert!(t.validate().is_ok());
            let (_, kl) = resolution_from_kleisli(&t).unwrap();
            prop_assert_eq!(&induced_monad(&kl).unwrap(), &t);
            let (_, em) = resolution_from_em(&t, budget).unwrap();
            prop_assert_eq!(&induced_monad(&em).unwrap(), &t);
            prop_assert!(comparison(&t, budget).unwrap().1);
        }
    }

    #[test]
    fn finset_tensor_is_functorial(
        (a, b, f, g, f2, g2) in (1usize..=3, 1usize..=3).prop_flat_map(|(a, b)| {
            (Just(a), Just(b), arb_map(a, 2), arb_map(b, 3), arb_map(2, a), arb_map(3, b))
        })
    ) {
        let v = make_finset_skeleton(9).unwrap();
        let lhs = v.compose(&v.tensor_mor(&f, &g).unwrap(), &v.tensor_mor(&f2, &g2).unwrap()).unwrap();
        let rhs = v.tensor_mor(&v.compose(&f, &f2).unwrap(), &v.compose(&g, &g2).unwrap()).unwrap();
        prop_assert_eq!(lhs.dom, a * b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn finset_composition_is_associative(
        (f, g, h) in (1usize..=4, 1usize..=4, 1usize..=4, 1usize..=4)
            .prop_flat_map(|(a, b, c, d)| (arb_map(a, b), arb_map(b, c), arb_map(c, d)))
    ) {
        let v = make_finset_skeleton(4).unwrap();
        let l = v.compose(&v.compose(&f, &g).unwrap(), &h).unwrap();
        let r = v.compose(&f, &v.compose(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }
}
