mod common;

use std::collections::BTreeSet;

use common::infinite_upset;
use proptest::prelude::*;
use topcube::functions::{fn_in_space, FnFlavor, FnSpace, PartialFn, Tail};
use topcube::UpSet;

const FLAVORS: [FnFlavor; 4] = [FnFlavor::All, FnFlavor::Injective, FnFlavor::Onto, FnFlavor::FiniteOnly];

/// Direct reading of the space definition for a finite relation.
fn brute_member(pairs: &[(u64, u64)], a: u64, b: u64, flavor: FnFlavor) -> bool {
    let firsts: BTreeSet<u64> = pairs.iter().map(|p| p.0).collect();
    let values: BTreeSet<u64> = pairs.iter().map(|p| p.1).collect();
    let functional = firsts.len() == pairs.len();
    let inside = pairs.iter().all(|&(x, y)| x < a && y < b);
    functional
        && inside
        && match flavor {
            FnFlavor::All | FnFlavor::FiniteOnly => true,
            FnFlavor::Injective => values.len() == pairs.len(),
            FnFlavor::Onto => values.len() as u64 == b,
        }
}

fn tailed_fn() -> impl Strategy<Value = PartialFn> {
    (
        prop::collection::btree_map(0u64..12, 0u64..8, 0..5),
        infinite_upset(4, 4),
        infinite_upset(3, 3),
        0u64..8,
        any::<bool>(),
    )
        .prop_map(|(map, dom, cod, value, constant)| {
            let taken = UpSet::from_elements(map.keys().copied()).unwrap();
            let domain = dom.difference(&taken).unwrap();
            let tail = if constant {
                Tail::Const { domain, value }
            } else {
                Tail::Enumerate { domain, codomain: cod }
            };
            PartialFn::new(map, Some(tail)).unwrap()
        })
}

proptest! {
    #[test]
    fn agrees_with_brute_force(
        pairs in prop::collection::btree_set((0u64..4, 0u64..4), 0..7),
        a in 0u64..=3,
        b in 0u64..=3,
    ) {
        let pairs: Vec<(u64, u64)> = pairs.into_iter().collect();
        let rel = PartialFn::relation(pairs.iter().copied(), None).unwrap();
        for flavor in FLAVORS {
            if flavor == FnFlavor::Onto && a < b {
                continue;
            }
            let space = FnSpace::new(
                UpSet::from_elements(0..a).unwrap(),
                UpSet::from_elements(0..b).unwrap(),
                flavor,
            ).unwrap();
            prop_assert_eq!(
                fn_in_space(&rel, &space).unwrap().member,
                brute_member(&pairs, a, b, flavor),
                "{:?} over A={} B={}", flavor, a, b
            );
        }
    }

    #[test]
    fn unfolding_keeps_membership(
        f in tailed_fn(),
        k in 0u64..10,
        a in infinite_upset(3, 3),
        b in infinite_upset(3, 3),
    ) {
        let g = f.unfold(k).unwrap();
        prop_assert_eq!(g.graph_prefix(30).unwrap().len(), 30);
        for flavor in FLAVORS {
            let space = FnSpace::new(a.clone(), b.clone(), flavor).unwrap();
            prop_assert_eq!(
                fn_in_space(&f, &space).unwrap().member,
                fn_in_space(&g, &space).unwrap().member
            );
        }
        for x in 0..40 {
            prop_assert_eq!(f.apply(x).unwrap(), g.apply(x).unwrap());
        }
    }

    #[test]
    fn infinite_tail_means_infinite_graph(f in tailed_fn()) {
        prop_assert!(!f.cardinality().is_finite());
        let finite_space = FnSpace::new(UpSet::naturals(), UpSet::naturals(), FnFlavor::FiniteOnly).unwrap();
        prop_assert!(!fn_in_space(&f, &finite_space).unwrap().member);
        let head = PartialFn::finite(f.graph_prefix(5).unwrap()).unwrap();
        prop_assert!(fn_in_space(&head, &finite_space).unwrap().member);
    }

    #[test]
    fn json_round_trip(f in tailed_fn()) {
        prop_assert_eq!(PartialFn::from_json(&f.to_json()).unwrap(), f);
    }
}
