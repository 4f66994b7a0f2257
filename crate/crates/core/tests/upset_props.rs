mod common;

use common::{by_fields, infinite_upset, upset};
use proptest::prelude::*;
use topcube::{Cardinality, UpSet};

fn lcm(a: u64, b: u64) -> u64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

proptest! {
    #[test]
    fn boolean_laws(a in upset(8, 8), b in upset(8, 8), c in upset(8, 8)) {
        let u = |x: &UpSet, y: &UpSet| x.union(y).unwrap();
        let i = |x: &UpSet, y: &UpSet| x.intersect(y).unwrap();
        prop_assert_eq!(u(&a, &b), u(&b, &a));
        prop_assert_eq!(i(&a, &b), i(&b, &a));
        prop_assert_eq!(u(&u(&a, &b), &c), u(&a, &u(&b, &c)));
        prop_assert_eq!(i(&i(&a, &b), &c), i(&a, &i(&b, &c)));
        prop_assert_eq!(i(&a, &u(&b, &c)), u(&i(&a, &b), &i(&a, &c)));
        prop_assert_eq!(u(&a, &i(&b, &c)), i(&u(&a, &b), &u(&a, &c)));
        prop_assert_eq!(u(&a, &b).complement(), i(&a.complement(), &b.complement()));
        prop_assert_eq!(i(&a, &b).complement(), u(&a.complement(), &b.complement()));
        prop_assert_eq!(a.complement().complement(), a.clone());
        prop_assert_eq!(u(&a, &i(&a, &b)), a.clone());
        prop_assert_eq!(i(&a, &u(&a, &b)), a.clone());
        prop_assert_eq!(a.difference(&b).unwrap(), i(&a, &b.complement()));
    }

    #[test]
    fn membership_matches_fields(a in upset(10, 10), b in upset(10, 10)) {
        let bound = 5 * (a.threshold().max(b.threshold()) + lcm(a.period(), b.period()));
        let (u, i) = (a.union(&b).unwrap(), a.intersect(&b).unwrap());
        for n in 0..=bound {
            prop_assert_eq!(a.contains(n), by_fields(&a, n));
            prop_assert_eq!(by_fields(&u, n), by_fields(&a, n) || by_fields(&b, n));
            prop_assert_eq!(by_fields(&i, n), by_fields(&a, n) && by_fields(&b, n));
        }
    }

    #[test]
    fn canonical_form_is_unique(a in upset(8, 6), extra_t in 0u64..6, mult in 1u64..4) {
        let again = UpSet::from_residues(a.period(), &a.residues(), a.threshold(), &a.transient()).unwrap();
        prop_assert_eq!(&again, &a);
        // Spell the same set out with a longer threshold and period.
        let (t, p) = (a.threshold() + extra_t, a.period() * mult);
        let residues: Vec<u64> = (0..p).filter(|&r| by_fields(&a, t.div_ceil(p) * p + r)).collect();
        let transient: Vec<u64> = (0..t).filter(|&n| a.contains(n)).collect();
        let wide = UpSet::from_residues(p, &residues, t, &transient).unwrap();
        prop_assert_eq!(wide.threshold(), a.threshold());
        prop_assert_eq!(wide.period(), a.period());
        prop_assert_eq!(wide.transient(), a.transient());
        prop_assert_eq!(wide.residues(), a.residues());
    }

    #[test]
    fn finite_count(a in upset(12, 6)) {
        if let Cardinality::Finite(k) = a.classify() {
            prop_assert!(a.residues().is_empty());
            prop_assert_eq!((0..a.threshold()).filter(|&n| a.contains(n)).count() as u64, k);
        } else {
            prop_assert!(!a.residues().is_empty());
        }
    }

    #[test]
    fn index_filter_partitions(a in infinite_upset(8, 6), q in 1u64..6) {
        let parts: Vec<UpSet> = (0..q).map(|r| a.index_filter(q, r).unwrap()).collect();
        let mut all = UpSet::empty();
        for (i, p) in parts.iter().enumerate() {
            prop_assert!(p.is_infinite());
            for other in &parts[i + 1..] {
                prop_assert!(p.intersect(other).unwrap().is_empty());
            }
            all = all.union(p).unwrap();
        }
        prop_assert_eq!(all, a);
    }

    #[test]
    fn nth_inverts_rank(a in infinite_upset(8, 6), k in 0u64..200) {
        let x = a.nth(k).unwrap();
        prop_assert!(a.contains(x));
        prop_assert_eq!(a.rank(x), k);
        prop_assert_eq!(a.iter().nth(k as usize), Some(x));
    }

    #[test]
    fn json_round_trip(a in upset(8, 8)) {
        let v = serde_json::to_value(&a).unwrap();
        prop_assert_eq!(serde_json::from_value::<UpSet>(v).unwrap(), a);
    }
}
