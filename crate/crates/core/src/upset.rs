//! Ultimately periodic subsets of ℕ.
//!
//! An [`UpSet`] is stored as a finite transient part below a threshold `T`
//! and a set of residues modulo a period `p` that decides membership from
//! `T` onwards:
//!
//! ```text
//! n ∈ S  ⇔  (n < T ∧ n ∈ transient) ∨ (n ≥ T ∧ n mod p ∈ R)
//! ```
//!
//! Every constructor and operation returns the canonical representative:
//! the period is the least period of the tail pattern and the threshold is
//! the least one compatible with that period. Two sets are therefore equal
//! exactly when their fields are equal, and the derived `Eq`/`Hash` are
//! extensional.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use bitvec::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) type Bits = BitVec<u64, Lsb0>;

/// Default bound on the period of any set produced by an operation.
pub const DEFAULT_PERIOD_CAP: u64 = 1 << 20;

/// Bound on thresholds; elements above it cannot be stored in a transient.
pub const THRESHOLD_CAP: u64 = 1 << 24;

/// Size of a subset of ℕ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cardinality {
    Finite(u64),
    Infinite,
}

impl Cardinality {
    pub fn is_finite(self) -> bool {
        matches!(self, Cardinality::Finite(_))
    }
}

impl PartialOrd for Cardinality {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cardinality {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Cardinality::Finite(a), Cardinality::Finite(b)) => a.cmp(b),
            (Cardinality::Finite(_), Cardinality::Infinite) => Ordering::Less,
            (Cardinality::Infinite, Cardinality::Finite(_)) => Ordering::Greater,
            (Cardinality::Infinite, Cardinality::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(k) => write!(f, "{k}"),
            Cardinality::Infinite => f.write_str("ω"),
        }
    }
}

/// A canonical ultimately periodic subset of ℕ.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "UpSetRepr", try_from = "UpSetJson")]
pub struct UpSet {
    threshold: u64,
    /// `transient[i]` for `i < threshold`.
    transient: Bits,
    period: u64,
    /// `residues[r]` for `r < period`.
    residues: Bits,
}

impl UpSet {
    pub fn empty() -> Self {
        Self::canonical(0, Bits::new(), 1, bitvec![u64, Lsb0; 0])
    }

    /// All of ℕ.
    pub fn naturals() -> Self {
        Self::canonical(0, Bits::new(), 1, bitvec![u64, Lsb0; 1])
    }

    /// The finite set holding exactly `elems` (duplicates are ignored).
    pub fn from_elements<I: IntoIterator<Item = u64>>(elems: I) -> Result<Self> {
        let elems: Vec<u64> = elems.into_iter().collect();
        let threshold = elems.iter().max().map_or(0, |&m| m + 1);
        check_threshold(threshold)?;
        let mut transient = Bits::repeat(false, threshold as usize);
        for e in elems {
            transient.set(e as usize, true);
        }
        Ok(Self::canonical(threshold, transient, 1, bitvec![u64, Lsb0; 0]))
    }

    /// Builds a set from explicit fields, validating ranges.
    pub fn from_residues(
        period: u64,
        residues: &[u64],
        threshold: u64,
        transient: &[u64],
    ) -> Result<Self> {
        if period == 0 {
            return Err(Error::Validation("period must be at least 1".into()));
        }
        if period > DEFAULT_PERIOD_CAP {
            return Err(Error::Resource(format!(
                "period {period} exceeds cap {DEFAULT_PERIOD_CAP}"
            )));
        }
        check_threshold(threshold)?;
        let mut res = Bits::repeat(false, period as usize);
        for &r in residues {
            if r >= period {
                return Err(Error::Validation(format!(
                    "residue {r} is not below period {period}"
                )));
            }
            res.set(r as usize, true);
        }
        let mut tr = Bits::repeat(false, threshold as usize);
        for &t in transient {
            if t >= threshold {
                return Err(Error::Validation(format!(
                    "transient element {t} is not below threshold {threshold}"
                )));
            }
            tr.set(t as usize, true);
        }
        Ok(Self::canonical(threshold, tr, period, res))
    }

    /// `{n : n ≡ r (mod p)}`.
    pub fn residue_class(p: u64, r: u64) -> Result<Self> {
        Self::from_residues(p, &[r], 0, &[])
    }

    pub fn multiples_of(k: u64) -> Result<Self> {
        Self::residue_class(k, 0)
    }

    pub fn evens() -> Self {
        Self::residue_class(2, 0).expect("valid residue class")
    }

    pub fn odds() -> Self {
        Self::residue_class(2, 1).expect("valid residue class")
    }

    /// ℕ with the given finite set removed.
    pub fn cofinite<I: IntoIterator<Item = u64>>(missing: I) -> Result<Self> {
        Ok(Self::from_elements(missing)?.complement())
    }

    fn canonical(threshold: u64, transient: Bits, period: u64, residues: Bits) -> Self {
        debug_assert_eq!(transient.len() as u64, threshold);
        debug_assert_eq!(residues.len() as u64, period);
        let mut period = period;
        let mut residues = residues;
        for q in prime_factors(period) {
            while period % q == 0 && has_period(&residues, (period / q) as usize) {
                period /= q;
            }
        }
        residues.truncate(period as usize);

        let mut threshold = threshold;
        let mut transient = transient;
        while threshold > 0 {
            let n = threshold - 1;
            if transient[n as usize] != residues[(n % period) as usize] {
                break;
            }
            threshold = n;
        }
        transient.truncate(threshold as usize);
        for w in [&mut transient, &mut residues] {
            w.force_align();
            w.set_uninitialized(false);
            w.shrink_to_fit();
        }
        UpSet {
            threshold,
            transient,
            period,
            residues,
        }
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    /// Transient elements in increasing order.
    pub fn transient(&self) -> Vec<u64> {
        self.transient.iter_ones().map(|i| i as u64).collect()
    }

    /// Residues in increasing order.
    pub fn residues(&self) -> Vec<u64> {
        self.residues.iter_ones().map(|i| i as u64).collect()
    }

    pub fn contains(&self, n: u64) -> bool {
        if n < self.threshold {
            self.transient[n as usize]
        } else {
            self.residues[(n % self.period) as usize]
        }
    }

    pub fn classify(&self) -> Cardinality {
        if self.residues.any() {
            Cardinality::Infinite
        } else {
            Cardinality::Finite(self.transient.count_ones() as u64)
        }
    }

    pub fn is_finite(&self) -> bool {
        self.residues.not_any()
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    pub fn is_empty(&self) -> bool {
        self.is_finite() && self.transient.not_any()
    }

    pub fn is_naturals(&self) -> bool {
        self.threshold == 0 && self.residues.all()
    }

    pub fn complement(&self) -> Self {
        UpSet::canonical(
            self.threshold,
            !self.transient.clone(),
            self.period,
            !self.residues.clone(),
        )
    }

    pub fn union(&self, other: &UpSet) -> Result<Self> {
        self.combine(other, DEFAULT_PERIOD_CAP, |a, b| a | b)
    }

    pub fn intersect(&self, other: &UpSet) -> Result<Self> {
        self.combine(other, DEFAULT_PERIOD_CAP, |a, b| a & b)
    }

    /// `self \ other`.
    pub fn difference(&self, other: &UpSet) -> Result<Self> {
        self.combine(other, DEFAULT_PERIOD_CAP, |a, b| a & !b)
    }

    /// Pointwise boolean combination on the common frame
    /// `(max threshold, lcm period)`.
    pub fn combine(&self, other: &UpSet, cap: u64, op: impl Fn(u64, u64) -> u64) -> Result<Self> {
        let frame = Frame::for_sets([self, other], cap)?;
        let a = frame.encode(self);
        let b = frame.encode(other);
        let mut out = a;
        for (w, &v) in out.as_raw_mut_slice().iter_mut().zip(b.as_raw_slice()) {
            *w = op(*w, v);
        }
        Ok(frame.decode(&out))
    }

    /// `self ⊆ other`, decided without materialising the common period.
    pub fn is_subset(&self, other: &UpSet) -> bool {
        let m = self.threshold.max(other.threshold);
        if (0..m).any(|n| self.contains(n) && !other.contains(n)) {
            return false;
        }
        // Beyond m, residues a mod p and b mod q co-occur infinitely often iff
        // a ≡ b (mod gcd(p, q)).
        !residues_meet(
            &self.residues,
            self.period,
            &other.residues,
            other.period,
            true,
        )
    }

    pub fn is_disjoint(&self, other: &UpSet) -> bool {
        let m = self.threshold.max(other.threshold);
        if (0..m).any(|n| self.contains(n) && other.contains(n)) {
            return false;
        }
        !residues_meet(
            &self.residues,
            self.period,
            &other.residues,
            other.period,
            false,
        )
    }

    /// Whether `self ∩ other` is infinite.
    pub fn meets_infinitely(&self, other: &UpSet) -> bool {
        residues_meet(
            &self.residues,
            self.period,
            &other.residues,
            other.period,
            false,
        )
    }

    /// Tail elements in `[T, T + p)` in increasing order.
    fn tail_block(&self) -> Vec<u64> {
        (self.threshold..self.threshold + self.period)
            .filter(|&n| self.residues[(n % self.period) as usize])
            .collect()
    }

    /// The `k`-th smallest element (0-indexed).
    pub fn nth(&self, k: u64) -> Result<u64> {
        let head = self.transient.count_ones() as u64;
        if k < head {
            let idx = self
                .transient
                .iter_ones()
                .nth(k as usize)
                .expect("k below the transient count");
            return Ok(idx as u64);
        }
        let block = self.tail_block();
        if block.is_empty() {
            return Err(Error::OutOfRange {
                index: k,
                len: head,
            });
        }
        let j = k - head;
        let per = block.len() as u64;
        (j / per)
            .checked_mul(self.period)
            .and_then(|off| off.checked_add(block[(j % per) as usize]))
            .ok_or_else(|| Error::Resource(format!("element {k} overflows u64")))
    }

    /// Number of elements strictly below `n`.
    pub fn rank(&self, n: u64) -> u64 {
        if n <= self.threshold {
            return self.transient[..n as usize].count_ones() as u64;
        }
        let head = self.transient.count_ones() as u64;
        let span = n - self.threshold;
        let per = self.residues.count_ones() as u64;
        let partial = (self.threshold..self.threshold + span % self.period)
            .filter(|&m| self.residues[(m % self.period) as usize])
            .count() as u64;
        head + (span / self.period) * per + partial
    }

    /// Elements in increasing order; unbounded for infinite sets.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        let head = self.transient.iter_ones().map(|i| i as u64);
        let block = self.tail_block();
        let period = self.period;
        let tail = (0u64..)
            .take(if block.is_empty() { 0 } else { usize::MAX })
            .flat_map(move |cycle| {
                let block = block.clone();
                block.into_iter().map(move |b| b + cycle * period)
            });
        head.chain(tail)
    }

    /// `{nth(i) : i ≡ r (mod q)}` for an infinite set.
    pub fn index_filter(&self, q: u64, r: u64) -> Result<Self> {
        self.index_filter_with_cap(q, r, DEFAULT_PERIOD_CAP)
    }

    pub fn index_filter_with_cap(&self, q: u64, r: u64, cap: u64) -> Result<Self> {
        if q == 0 || r >= q {
            return Err(Error::Validation(format!(
                "index filter needs 0 <= r < q, got q={q}, r={r}"
            )));
        }
        if self.is_finite() {
            return Err(Error::Unsupported(
                "index filtering requires an infinite set".into(),
            ));
        }
        let head = self.transient.count_ones() as u64;
        let block = self.tail_block();
        let per = block.len() as u64;
        // Index pattern repeats every lcm(q, per) tail elements, which span
        // period * lcm / per naturals.
        let cycle = lcm(q, per);
        let new_period = self
            .period
            .checked_mul(cycle / per)
            .filter(|&p| p <= cap)
            .ok_or_else(|| {
                Error::Resource(format!(
                    "index filter period exceeds cap {cap} (p={}, q={q})",
                    self.period
                ))
            })?;

        let mut transient = Bits::repeat(false, self.threshold as usize);
        for (i, e) in self.transient.iter_ones().enumerate() {
            if i as u64 % q == r {
                transient.set(e, true);
            }
        }
        let mut residues = Bits::repeat(false, new_period as usize);
        for j in 0..cycle {
            if (head + j) % q == r {
                let e = block[(j % per) as usize] + (j / per) * self.period;
                residues.set((e % new_period) as usize, true);
            }
        }
        Ok(UpSet::canonical(
            self.threshold,
            transient,
            new_period,
            residues,
        ))
    }
}

fn check_threshold(threshold: u64) -> Result<()> {
    if threshold > THRESHOLD_CAP {
        Err(Error::Resource(format!(
            "threshold {threshold} exceeds cap {THRESHOLD_CAP}"
        )))
    } else {
        Ok(())
    }
}

fn has_period(word: &BitSlice<u64, Lsb0>, d: usize) -> bool {
    d >= word.len() || word[d..] == word[..word.len() - d]
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            out.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Does some residue of `a` (mod p) co-occur with some residue of `b` (mod q)
/// in the tail? With `negate_b`, the residues *missing* from `b` are used.
fn residues_meet(a: &Bits, p: u64, b: &Bits, q: u64, negate_b: bool) -> bool {
    let g = gcd(p, q) as usize;
    let mut classes = vec![false; g];
    for r in a.iter_ones() {
        classes[r % g] = true;
    }
    (0..q as usize).any(|r| (b[r] != negate_b) && classes[r % g])
}

/// A common `(threshold, period)` frame in which several sets become plain
/// bit vectors of length `threshold + period`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Frame {
    pub threshold: u64,
    pub period: u64,
}

impl Frame {
    pub fn for_sets<'a>(sets: impl IntoIterator<Item = &'a UpSet>, cap: u64) -> Result<Self> {
        let mut threshold = 0;
        let mut period = 1u64;
        for s in sets {
            threshold = threshold.max(s.threshold);
            period = period
                .checked_mul(s.period / gcd(period, s.period))
                .filter(|&p| p <= cap)
                .ok_or_else(|| Error::Resource(format!("common period exceeds cap {cap}")))?;
        }
        Ok(Frame { threshold, period })
    }

    pub fn len(&self) -> usize {
        (self.threshold + self.period) as usize
    }

    pub fn encode(&self, set: &UpSet) -> Bits {
        let mut bits = Bits::repeat(false, self.len());
        for n in 0..self.len() {
            if set.contains(n as u64) {
                bits.set(n, true);
            }
        }
        bits
    }

    pub fn decode(&self, bits: &BitSlice<u64, Lsb0>) -> UpSet {
        let t = self.threshold as usize;
        let transient = bits[..t].to_bitvec();
        let mut residues = bits[t..self.len()].to_bitvec();
        residues.rotate_right((self.threshold % self.period) as usize);
        UpSet::canonical(self.threshold, transient, self.period, residues)
    }
}

impl Hash for UpSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.threshold.hash(state);
        self.period.hash(state);
        // Canonical storage is aligned with zeroed dead bits, so raw words
        // agree exactly when the bits do.
        self.transient.as_raw_slice().hash(state);
        self.residues.as_raw_slice().hash(state);
    }
}

impl fmt::Debug for UpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tr = self.transient();
        if self.is_finite() {
            return write!(f, "{tr:?}");
        }
        write!(
            f,
            "{tr:?} ∪ {{n ≥ {} : n mod {} ∈ {:?}}}",
            self.threshold,
            self.period,
            self.residues()
        )
    }
}

/// Canonical wire form: `{"T", "transient", "p", "R"}`.
#[derive(Serialize, Deserialize)]
struct UpSetRepr {
    #[serde(rename = "T")]
    threshold: u64,
    transient: Vec<u64>,
    p: u64,
    #[serde(rename = "R")]
    residues: Vec<u64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum UpSetJson {
    Full(UpSetRepr),
    Elems { elems: Vec<u64> },
}

impl From<UpSet> for UpSetRepr {
    fn from(s: UpSet) -> Self {
        UpSetRepr {
            threshold: s.threshold,
            transient: s.transient(),
            p: s.period,
            residues: s.residues(),
        }
    }
}

impl TryFrom<UpSetJson> for UpSet {
    type Error = Error;

    fn try_from(json: UpSetJson) -> Result<Self> {
        match json {
            UpSetJson::Full(r) => UpSet::from_residues(r.p, &r.residues, r.threshold, &r.transient),
            UpSetJson::Elems { elems } => UpSet::from_elements(elems),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(p: u64, r: &[u64], t: u64, tr: &[u64]) -> UpSet {
        UpSet::from_residues(p, r, t, tr).unwrap()
    }

    #[test]
    fn equal_sets_hash_alike() {
        use std::collections::hash_map::DefaultHasher;
        let h = |s: &UpSet| {
            let mut st = DefaultHasher::new();
            s.hash(&mut st);
            st.finish()
        };
        let via_ops = UpSet::evens().union(&UpSet::odds()).unwrap();
        assert_eq!(h(&via_ops), h(&UpSet::naturals()));
        let odd: Vec<u64> = (1..70).step_by(2).collect();
        let wide = up(6, &[1, 3, 5], 70, &odd);
        let filtered = UpSet::naturals().index_filter(2, 1).unwrap();
        assert_eq!(wide, filtered);
        assert_eq!(h(&wide), h(&filtered));
    }

    #[test]
    fn empty_from_no_elements() {
        let e = UpSet::from_elements([]).unwrap();
        assert_eq!(e, UpSet::empty());
        assert_eq!((e.threshold(), e.period()), (0, 1));
        assert!(e.residues().is_empty());
        assert_eq!(e.classify(), Cardinality::Finite(0));
    }

    #[test]
    fn duplicates_collapse() {
        let s = UpSet::from_elements([1, 2, 2]).unwrap();
        assert_eq!(s.transient(), vec![1, 2]);
        assert_eq!(UpSet::from_elements(0..10).unwrap().classify(), Cardinality::Finite(10));
    }

    #[test]
    fn residue_constructor_cases() {
        let evens = up(2, &[0], 0, &[]);
        assert!(evens.contains(4) && !evens.contains(7));
        let cof = up(1, &[0], 3, &[]);
        assert_eq!(cof, UpSet::cofinite([0, 1, 2]).unwrap());
        assert!(!cof.contains(2) && cof.contains(3));
        assert_eq!(up(4, &[0, 2], 0, &[]), evens);
        assert_eq!(up(4, &[0, 2], 0, &[]).period(), 2);
    }

    #[test]
    fn residue_constructor_validation() {
        assert!(matches!(
            UpSet::from_residues(2, &[2], 0, &[]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            UpSet::from_residues(2, &[0], 3, &[3]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            UpSet::from_residues(0, &[], 0, &[]),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn threshold_is_minimised() {
        // {0, 2} ∪ evens from 4 is just evens.
        assert_eq!(up(2, &[0], 4, &[0, 2]), UpSet::evens());
        // A hole at 2 keeps the threshold at 3.
        let s = up(2, &[0], 4, &[0]);
        assert_eq!(s.threshold(), 3);
        assert_eq!(s.transient(), vec![0]);
    }

    #[test]
    fn boolean_ops() {
        let (e, o) = (UpSet::evens(), UpSet::odds());
        assert_eq!(e.union(&o).unwrap(), UpSet::naturals());
        let m6 = e.intersect(&UpSet::multiples_of(3).unwrap()).unwrap();
        assert_eq!(m6, UpSet::multiples_of(6).unwrap());
        assert_eq!(e.intersect(&o).unwrap().classify(), Cardinality::Finite(0));
        assert_eq!(e.complement(), o);
    }

    #[test]
    fn period_cap_is_enforced() {
        let a = UpSet::multiples_of(1024).unwrap();
        let b = UpSet::multiples_of(1023).unwrap();
        assert!(matches!(a.combine(&b, 1 << 16, |x, y| x | y), Err(Error::Resource(_))));
        assert!(a.combine(&b, 1 << 20, |x, y| x | y).is_ok());
    }

    #[test]
    fn nth_and_rank() {
        assert_eq!(UpSet::evens().nth(3).unwrap(), 6);
        assert_eq!(UpSet::odds().nth(0).unwrap(), 1);
        let s = up(3, &[0], 2, &[1]);
        let got: Vec<u64> = (0..5).map(|k| s.nth(k).unwrap()).collect();
        assert_eq!(got, vec![1, 3, 6, 9, 12]);
        let fin = UpSet::from_elements([4, 9]).unwrap();
        assert!(matches!(fin.nth(2), Err(Error::OutOfRange { index: 2, len: 2 })));
        for k in 0..40 {
            assert_eq!(s.rank(s.nth(k).unwrap()), k);
        }
    }

    #[test]
    fn subset_and_disjoint() {
        let m6 = UpSet::multiples_of(6).unwrap();
        assert!(UpSet::empty().is_subset(&UpSet::odds()));
        assert!(m6.is_subset(&UpSet::evens()));
        assert!(!UpSet::evens().is_subset(&UpSet::odds()));
        assert!(UpSet::evens().is_disjoint(&UpSet::odds()));
        assert!(!m6.is_disjoint(&UpSet::multiples_of(4).unwrap()));
    }

    #[test]
    fn index_filter_cases() {
        assert_eq!(UpSet::naturals().index_filter(2, 0).unwrap(), UpSet::evens());
        assert_eq!(
            UpSet::evens().index_filter(2, 1).unwrap(),
            UpSet::residue_class(4, 2).unwrap()
        );
        let a = up(5, &[1, 3], 7, &[0, 4]);
        assert_eq!(a.index_filter(1, 0).unwrap(), a);
        assert!(matches!(
            UpSet::from_elements([1]).unwrap().index_filter(2, 0),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn iter_is_ascending_enumeration() {
        let s = up(3, &[0], 2, &[1]);
        let v: Vec<u64> = s.iter().take(5).collect();
        assert_eq!(v, vec![1, 3, 6, 9, 12]);
        assert_eq!(UpSet::from_elements([3, 1]).unwrap().iter().collect::<Vec<_>>(), vec![1, 3]);
    }

    #[test]
    fn json_forms() {
        let s = up(4, &[0, 2], 3, &[1]);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"T":3,"transient":[1],"p":2,"R":[0]}"#);
        let back: UpSet = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        let short: UpSet = serde_json::from_str(r#"{"elems":[3,1,3]}"#).unwrap();
        assert_eq!(short, UpSet::from_elements([1, 3]).unwrap());
        assert!(serde_json::from_str::<UpSet>(r#"{"T":0,"transient":[],"p":2,"R":[5]}"#).is_err());
    }
}
