use proptest::prelude::*;
use topcube::cube::FinSet;
use topcube::{Clopen, FiniteFamily, GroundSet, Neighborhood, Universe};

fn set(n: u8, mask: u32) -> GroundSet {
    GroundSet::Finite(FinSet::new(n, mask).unwrap())
}

/// A universe size with a family mask, and required/forbidden subset masks.
fn case() -> impl Strategy<Value = (u8, u64, Vec<u32>, Vec<u32>)> {
    (1u8..=3).prop_flat_map(|n| {
        let subsets = 1u32 << n;
        (
            Just(n),
            0u64..1 << subsets,
            prop::collection::vec(0..subsets, 0..4),
            prop::collection::vec(0..subsets, 0..4),
        )
    })
}

fn clopen(n: u8, pos: &[u32], neg: &[u32]) -> Clopen {
    Neighborhood::make(
        Universe::Finite(n),
        pos.iter().map(|&m| set(n, m)),
        neg.iter().map(|&m| set(n, m)),
    )
    .unwrap()
}

proptest! {
    #[test]
    fn membership_is_brute_force((n, fam, pos, neg) in case()) {
        let family = FiniteFamily::from_mask(n, fam);
        let expected = pos.iter().all(|&m| fam >> m & 1 == 1) && neg.iter().all(|&m| fam >> m & 1 == 0);
        prop_assert_eq!(clopen(n, &pos, &neg).contains(&family), expected);
    }

    #[test]
    fn intersection_is_conjunction((n, fam, pos, neg) in case(), (pos2, neg2) in (
        prop::collection::vec(0u32..8, 0..3),
        prop::collection::vec(0u32..8, 0..3),
    )) {
        let mask = (1u32 << n) - 1;
        let pos2: Vec<u32> = pos2.into_iter().map(|m| m & mask).collect();
        let neg2: Vec<u32> = neg2.into_iter().map(|m| m & mask).collect();
        let family = FiniteFamily::from_mask(n, fam);
        let (a, b) = (clopen(n, &pos, &neg), clopen(n, &pos2, &neg2));
        let both = match (&a, &b) {
            (Clopen::Basic(x), Clopen::Basic(y)) => x.intersect(y).unwrap(),
            _ => Clopen::Empty { conflict: set(n, 0) },
        };
        prop_assert_eq!(both.contains(&family), a.contains(&family) && b.contains(&family));
    }

    #[test]
    fn plus_and_minus_partition((n, fam, pos, _neg) in case()) {
        let family = FiniteFamily::from_mask(n, fam);
        for m in pos {
            let plus = Neighborhood::plus(set(n, m)).contains(&family);
            let minus = Neighborhood::minus(set(n, m)).contains(&family);
            prop_assert!(plus != minus);
        }
    }

    #[test]
    fn json_round_trip((n, _fam, pos, neg) in case()) {
        let c = clopen(n, &pos, &neg);
        prop_assert_eq!(Neighborhood::<GroundSet>::from_json(&c.to_json()).unwrap(), c);
    }
}
