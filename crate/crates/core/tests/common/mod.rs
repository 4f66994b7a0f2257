#![allow(dead_code)]

use proptest::prelude::*;
use topcube::UpSet;

/// Sets with threshold below `max_t` and period at most `max_p`.
pub fn upset(max_t: u64, max_p: u64) -> impl Strategy<Value = UpSet> {
    (0..=max_t, 1..=max_p, any::<u64>(), any::<u64>()).prop_map(|(t, p, rmask, tmask)| {
        let residues: Vec<u64> = (0..p).filter(|r| rmask >> r & 1 == 1).collect();
        let transient: Vec<u64> = (0..t).filter(|i| tmask >> i & 1 == 1).collect();
        UpSet::from_residues(p, &residues, t, &transient).unwrap()
    })
}

pub fn infinite_upset(max_t: u64, max_p: u64) -> impl Strategy<Value = UpSet> {
    upset(max_t, max_p).prop_filter("infinite", UpSet::is_infinite)
}

/// Membership computed from the stored fields alone.
pub fn by_fields(s: &UpSet, n: u64) -> bool {
    if n < s.threshold() {
        s.transient().contains(&n)
    } else {
        s.residues().contains(&(n % s.period()))
    }
}
