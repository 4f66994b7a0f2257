//! Partial function spaces over ℕ.
//!
//! A partial function is a set of ordered pairs, so it is a point of the
//! cube whose coordinates are pairs. Pairs are native values here; the
//! set-theoretic encoding `⟨a,b⟩ = {{a},{a,b}}` is available through
//! [`encode_kuratowski`] for small universes only.

use std::fmt;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cube::{Constraint, FamilyOracle, Membership, Predicate};
use crate::error::{Error, Result};
use crate::upset::{Cardinality, UpSet};

/// Tag of the cube whose coordinates are [`GraphItem`]s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pairs;

/// A coordinate of the pair cube: an ordered pair, or some other set that
/// is not a pair (and so never belongs to a function).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraphItem {
    Pair(u64, u64),
    Raw(Vec<u64>),
}

impl GraphItem {
    pub fn raw(elems: impl IntoIterator<Item = u64>) -> Self {
        let mut v: Vec<u64> = elems.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        GraphItem::Raw(v)
    }

    pub fn as_pair(&self) -> Option<(u64, u64)> {
        match *self {
            GraphItem::Pair(a, b) => Some((a, b)),
            GraphItem::Raw(_) => None,
        }
    }
}

impl fmt::Display for GraphItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphItem::Pair(a, b) => write!(f, "⟨{a},{b}⟩"),
            GraphItem::Raw(v) => write!(f, "{v:?}"),
        }
    }
}

impl Constraint for GraphItem {
    type Universe = Pairs;

    fn universe(&self) -> Pairs {
        Pairs
    }

    fn to_json(&self) -> Value {
        match self {
            GraphItem::Pair(a, b) => json!([a, b]),
            GraphItem::Raw(v) => json!({ "raw": v }),
        }
    }

    fn from_json(_: Pairs, v: &Value) -> Result<Self> {
        if let Some(raw) = v.get("raw") {
            let elems: Vec<u64> = serde_json::from_value(raw.clone())?;
            return Ok(GraphItem::raw(elems));
        }
        let (a, b): (u64, u64) = serde_json::from_value(v.clone())?;
        Ok(GraphItem::Pair(a, b))
    }

    fn universe_to_json(_: Pairs) -> Value {
        json!("pairs")
    }

    fn universe_from_json(v: &Value) -> Result<Pairs> {
        match v.as_str() {
            Some("pairs") => Ok(Pairs),
            _ => Err(Error::Validation(format!("expected universe \"pairs\", got {v}"))),
        }
    }
}

/// The infinite part of a partial function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tail {
    /// Every element of `domain` maps to `value`.
    #[serde(rename = "const")]
    Const { domain: UpSet, value: u64 },
    /// The i-th element of `domain` maps to the i-th element of `codomain`
    /// (taken cyclically when the codomain is finite).
    #[serde(rename = "enum")]
    Enumerate { domain: UpSet, codomain: UpSet },
}

impl Tail {
    pub fn domain(&self) -> &UpSet {
        match self {
            Tail::Const { domain, .. } | Tail::Enumerate { domain, .. } => domain,
        }
    }

    fn apply(&self, a: u64) -> Result<Option<u64>> {
        match self {
            Tail::Const { domain, value } => Ok(domain.contains(a).then_some(*value)),
            Tail::Enumerate { domain, codomain } => {
                if !domain.contains(a) {
                    return Ok(None);
                }
                let i = domain.rank(a);
                let j = match codomain.classify() {
                    Cardinality::Finite(k) => i % k,
                    Cardinality::Infinite => i,
                };
                codomain.nth(j).map(Some)
            }
        }
    }

    /// The `i`-th pair of the tail, in domain order.
    fn nth_pair(&self, i: u64) -> Result<(u64, u64)> {
        let a = self.domain().nth(i)?;
        let b = self.apply(a)?.expect("a is in the tail domain");
        Ok((a, b))
    }

    fn image(&self) -> Result<UpSet> {
        match self {
            Tail::Const { domain, value } => {
                if domain.is_empty() {
                    Ok(UpSet::empty())
                } else {
                    UpSet::from_elements([*value])
                }
            }
            Tail::Enumerate { domain, codomain } => match domain.classify() {
                Cardinality::Infinite => Ok(codomain.clone()),
                Cardinality::Finite(m) => {
                    let hit = m.min(match codomain.classify() {
                        Cardinality::Finite(k) => k,
                        Cardinality::Infinite => m,
                    });
                    UpSet::from_elements((0..hit).map(|j| codomain.nth(j)).collect::<Result<Vec<_>>>()?)
                }
            },
        }
    }

    /// Some domain element of the tail that maps to `b`, if any.
    fn preimage_of(&self, b: u64) -> Result<Option<u64>> {
        match self {
            Tail::Const { domain, value } => {
                Ok((*value == b && !domain.is_empty()).then(|| domain.nth(0)).transpose()?)
            }
            Tail::Enumerate { domain, codomain } => {
                if !codomain.contains(b) {
                    return Ok(None);
                }
                let j = codomain.rank(b);
                match domain.classify() {
                    Cardinality::Finite(m) if j >= m => Ok(None),
                    _ => domain.nth(j).map(Some),
                }
            }
        }
    }
}

/// A relation given by finitely many pairs plus an optional rule-based
/// tail. The tail's domain never meets the first coordinates of the finite
/// part, and constructors built with [`PartialFn::new`] are functional.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialFn {
    map: Vec<(u64, u64)>,
    tail: Option<Tail>,
}

impl PartialFn {
    /// A finite-plus-tail relation that may fail to be functional on its
    /// finite part. Useful for describing candidate points.
    pub fn relation(pairs: impl IntoIterator<Item = (u64, u64)>, tail: Option<Tail>) -> Result<Self> {
        let mut map: Vec<(u64, u64)> = pairs.into_iter().collect();
        map.sort_unstable();
        map.dedup();
        if let Some(t) = &tail {
            if let Some(&(a, _)) = map.iter().find(|(a, _)| t.domain().contains(*a)) {
                return Err(Error::Validation(format!(
                    "tail domain overlaps the finite part at {a}"
                )));
            }
            if let Tail::Enumerate { domain, codomain } = t {
                if codomain.is_empty() && !domain.is_empty() {
                    return Err(Error::Validation(
                        "enumerating tail needs a nonempty codomain".into(),
                    ));
                }
            }
        }
        Ok(PartialFn { map, tail })
    }

    /// A partial function; rejects two pairs sharing a first coordinate.
    pub fn new(pairs: impl IntoIterator<Item = (u64, u64)>, tail: Option<Tail>) -> Result<Self> {
        let f = Self::relation(pairs, tail)?;
        if let Some((a, b1, b2)) = f.conflict() {
            return Err(Error::Validation(format!(
                "not a function: {a} maps to both {b1} and {b2}"
            )));
        }
        Ok(f)
    }

    pub fn finite(pairs: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        Self::new(pairs, None)
    }

    pub fn empty() -> Self {
        PartialFn {
            map: Vec::new(),
            tail: None,
        }
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.map
    }

    pub fn tail(&self) -> Option<&Tail> {
        self.tail.as_ref()
    }

    fn conflict(&self) -> Option<(u64, u64, u64)> {
        self.map
            .windows(2)
            .find(|w| w[0].0 == w[1].0)
            .map(|w| (w[0].0, w[0].1, w[1].1))
    }

    pub fn is_functional(&self) -> bool {
        self.conflict().is_none()
    }

    pub fn contains_pair(&self, a: u64, b: u64) -> bool {
        if self.map.binary_search(&(a, b)).is_ok() {
            return true;
        }
        match &self.tail {
            Some(t) => t.apply(a).ok().flatten() == Some(b),
            None => false,
        }
    }

    /// The value at `a`, for functional relations.
    pub fn apply(&self, a: u64) -> Result<Option<u64>> {
        if let Some(&(_, b)) = self.map.iter().find(|(x, _)| *x == a) {
            return Ok(Some(b));
        }
        match &self.tail {
            Some(t) => t.apply(a),
            None => Ok(None),
        }
    }

    pub fn tail_domain(&self) -> UpSet {
        self.tail.as_ref().map_or_else(UpSet::empty, |t| t.domain().clone())
    }

    pub fn domain(&self) -> Result<UpSet> {
        UpSet::from_elements(self.map.iter().map(|p| p.0))?.union(&self.tail_domain())
    }

    pub fn image(&self) -> Result<UpSet> {
        let head = UpSet::from_elements(self.map.iter().map(|p| p.1))?;
        match &self.tail {
            Some(t) => head.union(&t.image()?),
            None => Ok(head),
        }
    }

    /// Size of the graph as a set of pairs.
    pub fn cardinality(&self) -> Cardinality {
        match self.tail_domain().classify() {
            Cardinality::Infinite => Cardinality::Infinite,
            Cardinality::Finite(k) => Cardinality::Finite(k + self.map.len() as u64),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.cardinality().is_finite()
    }

    /// Up to `limit` pairs of the graph: the finite part, then the tail in
    /// domain order.
    pub fn graph_prefix(&self, limit: usize) -> Result<Vec<(u64, u64)>> {
        let mut out: Vec<(u64, u64)> = self.map.iter().copied().take(limit).collect();
        if let Some(t) = &self.tail {
            let avail = match t.domain().classify() {
                Cardinality::Finite(k) => k,
                Cardinality::Infinite => u64::MAX,
            };
            let want = (limit - out.len()) as u64;
            for i in 0..want.min(avail) {
                out.push(t.nth_pair(i)?);
            }
        }
        Ok(out)
    }

    /// Moves the first `k` tail pairs into the finite part; the graph is
    /// unchanged.
    pub fn unfold(&self, k: u64) -> Result<PartialFn> {
        let Some(t) = &self.tail else {
            return Ok(self.clone());
        };
        let k = match t.domain().classify() {
            Cardinality::Finite(m) => k.min(m),
            Cardinality::Infinite => k,
        };
        let moved: Vec<(u64, u64)> = (0..k).map(|i| t.nth_pair(i)).collect::<Result<_>>()?;
        let taken = UpSet::from_elements(moved.iter().map(|p| p.0))?;
        let rest = t.domain().difference(&taken)?;
        // Re-express the tail on the remaining domain with the same graph.
        let tail = match t {
            Tail::Const { value, .. } => Tail::Const {
                domain: rest,
                value: *value,
            },
            Tail::Enumerate { codomain, .. } => {
                let shifted = match codomain.classify() {
                    Cardinality::Infinite => codomain.difference(&UpSet::from_elements(
                        (0..k).map(|j| codomain.nth(j)).collect::<Result<Vec<_>>>()?,
                    )?)?,
                    Cardinality::Finite(_) if k == 0 => codomain.clone(),
                    Cardinality::Finite(_) => {
                        return Err(Error::Unsupported(
                            "unfolding a cyclic tail would change its phase".into(),
                        ))
                    }
                };
                Tail::Enumerate {
                    domain: rest,
                    codomain: shifted,
                }
            }
        };
        PartialFn::relation(self.map.iter().copied().chain(moved), Some(tail))
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("partial function serialises")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let raw: PartialFn = serde_json::from_value(v.clone())?;
        PartialFn::relation(raw.map, raw.tail)
    }
}

impl Membership<GraphItem> for PartialFn {
    fn universe(&self) -> Option<Pairs> {
        Some(Pairs)
    }

    fn contains(&self, item: &GraphItem) -> bool {
        match *item {
            GraphItem::Pair(a, b) => self.contains_pair(a, b),
            GraphItem::Raw(_) => false,
        }
    }
}

/// A finite point of the pair cube: a finite set of pairs and other sets.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GraphPoint {
    items: IndexSet<GraphItem>,
}

impl GraphPoint {
    pub fn new(items: impl IntoIterator<Item = GraphItem>) -> Self {
        GraphPoint {
            items: items.into_iter().collect(),
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, u64)>) -> Self {
        Self::new(pairs.into_iter().map(|(a, b)| GraphItem::Pair(a, b)))
    }

    pub fn items(&self) -> impl Iterator<Item = &GraphItem> {
        self.items.iter()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.items.iter().filter_map(GraphItem::as_pair)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.items.iter().map(GraphItem::to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Validation("a point is a list of pairs or raw sets".into()))?;
        Ok(GraphPoint::new(
            arr.iter()
                .map(|x| GraphItem::from_json(Pairs, x))
                .collect::<Result<Vec<_>>>()?,
        ))
    }
}

impl Membership<GraphItem> for GraphPoint {
    fn universe(&self) -> Option<Pairs> {
        Some(Pairs)
    }

    fn contains(&self, item: &GraphItem) -> bool {
        self.items.contains(item)
    }
}

impl FamilyOracle<GraphItem> {
    /// The point holding every pair of `A × B` (and nothing else).
    pub fn product(a: UpSet, b: UpSet) -> Self {
        FamilyOracle::Predicate(Predicate::new("all-pairs(A×B)", Pairs, move |item| {
            matches!(*item, GraphItem::Pair(x, y) if a.contains(x) && b.contains(y))
        }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FnFlavor {
    All,
    Injective,
    Onto,
    #[serde(rename = "finite")]
    FiniteOnly,
}

/// A space of partial functions from subsets of `A` into `B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FnSpaceJson")]
pub struct FnSpace {
    #[serde(rename = "A")]
    a: UpSet,
    #[serde(rename = "B")]
    b: UpSet,
    flavor: FnFlavor,
}

#[derive(Deserialize)]
struct FnSpaceJson {
    #[serde(rename = "A")]
    a: UpSet,
    #[serde(rename = "B")]
    b: UpSet,
    flavor: FnFlavor,
}

impl TryFrom<FnSpaceJson> for FnSpace {
    type Error = Error;

    fn try_from(j: FnSpaceJson) -> Result<Self> {
        FnSpace::new(j.a, j.b, j.flavor)
    }
}

impl FnSpace {
    /// Onto spaces require `|A| ≥ |B|`.
    pub fn new(a: UpSet, b: UpSet, flavor: FnFlavor) -> Result<Self> {
        if flavor == FnFlavor::Onto && a.classify() < b.classify() {
            return Err(Error::Validation(format!(
                "onto space needs |A| >= |B|, got {} < {}",
                a.classify(),
                b.classify()
            )));
        }
        Ok(FnSpace { a, b, flavor })
    }

    pub fn all(a: UpSet, b: UpSet) -> Self {
        FnSpace {
            a,
            b,
            flavor: FnFlavor::All,
        }
    }

    pub fn domain(&self) -> &UpSet {
        &self.a
    }

    pub fn codomain(&self) -> &UpSet {
        &self.b
    }

    pub fn flavor(&self) -> FnFlavor {
        self.flavor
    }

    pub fn with_flavor(&self, flavor: FnFlavor) -> Result<Self> {
        FnSpace::new(self.a.clone(), self.b.clone(), flavor)
    }
}

/// Why a relation is not in a function space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FnViolation {
    NotFunctional { a: u64, b1: u64, b2: u64 },
    OutsideDomain { a: u64, b: u64 },
    OutsideCodomain { a: u64, b: u64 },
    NotInjective { a1: u64, a2: u64, b: u64 },
    NotOnto { missing: u64 },
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceCheck {
    pub member: bool,
    pub violation: Option<FnViolation>,
}

/// Membership of `f` in `space`, with the first violation found.
///
/// Checks run in order: functionality, domain, codomain, then the flavor
/// (injectivity, surjectivity or finiteness).
pub fn fn_in_space(f: &PartialFn, space: &FnSpace) -> Result<SpaceCheck> {
    let v = first_violation(f, space)?;
    Ok(SpaceCheck {
        member: v.is_none(),
        violation: v,
    })
}

fn first_violation(f: &PartialFn, space: &FnSpace) -> Result<Option<FnViolation>> {
    if let Some((a, b1, b2)) = f.conflict() {
        return Ok(Some(FnViolation::NotFunctional { a, b1, b2 }));
    }
    if let Some(&(a, b)) = f.map.iter().find(|(a, _)| !space.a.contains(*a)) {
        return Ok(Some(FnViolation::OutsideDomain { a, b }));
    }
    if let Some(t) = &f.tail {
        let stray = t.domain().difference(&space.a)?;
        if !stray.is_empty() {
            let a = stray.nth(0)?;
            let b = t.apply(a)?.expect("a is in the tail domain");
            return Ok(Some(FnViolation::OutsideDomain { a, b }));
        }
    }
    if let Some(&(a, b)) = f.map.iter().find(|(_, b)| !space.b.contains(*b)) {
        return Ok(Some(FnViolation::OutsideCodomain { a, b }));
    }
    if let Some(t) = &f.tail {
        let stray = t.image()?.difference(&space.b)?;
        if !stray.is_empty() {
            let b = stray.nth(0)?;
            let a = t.preimage_of(b)?.expect("b is in the tail image");
            return Ok(Some(FnViolation::OutsideCodomain { a, b }));
        }
    }
    match space.flavor {
        FnFlavor::All => Ok(None),
        FnFlavor::Injective => injectivity_violation(f),
        FnFlavor::Onto => {
            let missing = space.b.difference(&f.image()?)?;
            if missing.is_empty() {
                Ok(None)
            } else {
                Ok(Some(FnViolation::NotOnto {
                    missing: missing.nth(0)?,
                }))
            }
        }
        FnFlavor::FiniteOnly => Ok((!f.is_finite()).then_some(FnViolation::Infinite)),
    }
}

fn injectivity_violation(f: &PartialFn) -> Result<Option<FnViolation>> {
    let mut by_value: Vec<(u64, u64)> = f.map.iter().map(|&(a, b)| (b, a)).collect();
    by_value.sort_unstable();
    if let Some(w) = by_value.windows(2).find(|w| w[0].0 == w[1].0) {
        return Ok(Some(FnViolation::NotInjective {
            a1: w[0].1,
            a2: w[1].1,
            b: w[0].0,
        }));
    }
    let Some(t) = &f.tail else {
        return Ok(None);
    };
    match t {
        Tail::Const { domain, value } => {
            if domain.classify() >= Cardinality::Finite(2) {
                return Ok(Some(FnViolation::NotInjective {
                    a1: domain.nth(0)?,
                    a2: domain.nth(1)?,
                    b: *value,
                }));
            }
        }
        Tail::Enumerate { domain, codomain } => {
            if let Cardinality::Finite(k) = codomain.classify() {
                if domain.classify() > Cardinality::Finite(k) {
                    return Ok(Some(FnViolation::NotInjective {
                        a1: domain.nth(0)?,
                        a2: domain.nth(k)?,
                        b: codomain.nth(0)?,
                    }));
                }
            }
        }
    }
    for &(a, b) in &f.map {
        if let Some(a2) = t.preimage_of(b)? {
            return Ok(Some(FnViolation::NotInjective { a1: a, a2, b }));
        }
    }
    Ok(None)
}

/// Largest `Y` for which the Kuratowski demo runs.
pub const MAX_KURATOWSKI_Y: u64 = 8;

/// `⟨a,b⟩ = {{a},{a,b}}` as a subset of `X = Y ∪ P(Y)` with `Y = {0..n-1}`.
///
/// Points of `Y` are indices `0..n`; a subset `s ⊆ Y` with mask `m` is the
/// index `n + m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KuratowskiPair {
    y_size: u64,
    members: Vec<u64>,
}

impl KuratowskiPair {
    pub fn y_size(&self) -> u64 {
        self.y_size
    }

    /// Indices of the members in `X`.
    pub fn members(&self) -> &[u64] {
        &self.members
    }

    /// The members written as subsets of `Y`.
    pub fn as_sets(&self) -> Vec<Vec<u64>> {
        self.members
            .iter()
            .map(|&idx| {
                let mask = idx - self.y_size;
                (0..self.y_size).filter(|i| mask >> i & 1 == 1).collect()
            })
            .collect()
    }
}

pub fn encode_kuratowski(a: u64, b: u64, y_size: u64) -> Result<KuratowskiPair> {
    if y_size > MAX_KURATOWSKI_Y {
        return Err(Error::Resource(format!(
            "Kuratowski encoding is limited to |Y| <= {MAX_KURATOWSKI_Y}"
        )));
    }
    if a >= y_size || b >= y_size {
        return Err(Error::Validation(format!(
            "({a},{b}) is not a pair over Y = {{0..{}}}",
            y_size.saturating_sub(1)
        )));
    }
    let single = y_size + (1 << a);
    let double = y_size + ((1 << a) | (1 << b));
    let mut members = vec![single, double];
    members.sort_unstable();
    members.dedup();
    Ok(KuratowskiPair { y_size, members })
}

pub fn decode_kuratowski(p: &KuratowskiPair) -> Result<(u64, u64)> {
    let bad = || Error::Validation(format!("{:?} is not a Kuratowski pair", p.members));
    let sets = p.as_sets();
    match sets.as_slice() {
        [s] if s.len() == 1 => Ok((s[0], s[0])),
        [x, y] => {
            let (single, double) = if x.len() == 1 { (x, y) } else { (y, x) };
            if single.len() != 1 || double.len() != 2 || !double.contains(&single[0]) {
                return Err(bad());
            }
            let a = single[0];
            let b = *double.iter().find(|&&e| e != a).ok_or_else(bad)?;
            Ok((a, b))
        }
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(a: UpSet, b: UpSet, flavor: FnFlavor) -> FnSpace {
        FnSpace::new(a, b, flavor).unwrap()
    }

    #[test]
    fn contains_pair_cases() {
        let f = PartialFn::finite([(1, 2)]).unwrap();
        assert!(f.contains_pair(1, 2));
        let c = PartialFn::new([], Some(Tail::Const { domain: UpSet::evens(), value: 5 })).unwrap();
        assert!(c.contains_pair(4, 5));
        assert!(!c.contains_pair(4, 6));
        let e = PartialFn::new(
            [],
            Some(Tail::Enumerate {
                domain: UpSet::evens(),
                codomain: UpSet::odds(),
            }),
        )
        .unwrap();
        for i in 0..=20 {
            assert!(e.contains_pair(UpSet::evens().nth(i).unwrap(), UpSet::odds().nth(i).unwrap()));
        }
        assert!(!e.contains_pair(2, 1));
    }

    #[test]
    fn cyclic_enumerate() {
        let e = PartialFn::new(
            [],
            Some(Tail::Enumerate {
                domain: UpSet::naturals(),
                codomain: UpSet::from_elements([7, 9]).unwrap(),
            }),
        )
        .unwrap();
        assert_eq!(e.graph_prefix(4).unwrap(), vec![(0, 7), (1, 9), (2, 7), (3, 9)]);
    }

    #[test]
    fn non_function_witness() {
        let f = PartialFn::relation([(0, 1), (0, 2)], None).unwrap();
        let r = fn_in_space(&f, &FnSpace::all(UpSet::naturals(), UpSet::naturals())).unwrap();
        assert!(!r.member);
        assert_eq!(r.violation, Some(FnViolation::NotFunctional { a: 0, b1: 1, b2: 2 }));
        assert!(PartialFn::new([(0, 1), (0, 2)], None).is_err());
    }

    #[test]
    fn injective_witness() {
        let f = PartialFn::finite([(0, 5), (2, 5)]).unwrap();
        let s = space(UpSet::naturals(), UpSet::naturals(), FnFlavor::Injective);
        assert_eq!(
            fn_in_space(&f, &s).unwrap().violation,
            Some(FnViolation::NotInjective { a1: 0, a2: 2, b: 5 })
        );
    }

    #[test]
    fn enumerate_is_onto() {
        let (a, b) = (UpSet::evens(), UpSet::odds());
        let f = PartialFn::new(
            [],
            Some(Tail::Enumerate {
                domain: a.clone(),
                codomain: b.clone(),
            }),
        )
        .unwrap();
        assert!(fn_in_space(&f, &space(a, b.clone(), FnFlavor::Onto)).unwrap().member);
        let prefix: Vec<u64> = f.graph_prefix(51).unwrap().iter().map(|p| p.1).collect();
        let want: Vec<u64> = b.iter().take(51).collect();
        assert_eq!(prefix, want);
    }

    #[test]
    fn domain_and_codomain_violations() {
        let s = FnSpace::all(UpSet::evens(), UpSet::from_elements([0, 1]).unwrap());
        let f = PartialFn::finite([(1, 0)]).unwrap();
        assert_eq!(
            fn_in_space(&f, &s).unwrap().violation,
            Some(FnViolation::OutsideDomain { a: 1, b: 0 })
        );
        let g = PartialFn::new([], Some(Tail::Const { domain: UpSet::multiples_of(4).unwrap(), value: 3 })).unwrap();
        assert_eq!(
            fn_in_space(&g, &s).unwrap().violation,
            Some(FnViolation::OutsideCodomain { a: 0, b: 3 })
        );
        let h = PartialFn::new([], Some(Tail::Const { domain: UpSet::naturals(), value: 0 })).unwrap();
        assert_eq!(
            fn_in_space(&h, &s).unwrap().violation,
            Some(FnViolation::OutsideDomain { a: 1, b: 0 })
        );
    }

    #[test]
    fn const_tail_never_onto_infinite() {
        let f = PartialFn::new([], Some(Tail::Const { domain: UpSet::naturals(), value: 0 })).unwrap();
        let s = space(UpSet::naturals(), UpSet::evens(), FnFlavor::Onto);
        assert_eq!(
            fn_in_space(&f, &s).unwrap().violation,
            Some(FnViolation::NotOnto { missing: 2 })
        );
        assert!(FnSpace::new(UpSet::from_elements([0]).unwrap(), UpSet::evens(), FnFlavor::Onto).is_err());
    }

    #[test]
    fn finite_only_flavor() {
        let s = space(UpSet::naturals(), UpSet::naturals(), FnFlavor::FiniteOnly);
        let inf = PartialFn::new([], Some(Tail::Const { domain: UpSet::odds(), value: 1 })).unwrap();
        assert_eq!(fn_in_space(&inf, &s).unwrap().violation, Some(FnViolation::Infinite));
        assert!(fn_in_space(&PartialFn::finite([(3, 3)]).unwrap(), &s).unwrap().member);
    }

    #[test]
    fn unfold_keeps_graph() {
        let f = PartialFn::new(
            [(1, 4)],
            Some(Tail::Enumerate {
                domain: UpSet::evens(),
                codomain: UpSet::multiples_of(3).unwrap(),
            }),
        )
        .unwrap();
        let g = f.unfold(5).unwrap();
        assert_eq!(g.pairs().len(), 6);
        for a in 0..60 {
            for b in 0..100 {
                assert_eq!(f.contains_pair(a, b), g.contains_pair(a, b), "({a},{b})");
            }
        }
    }

    #[test]
    fn kuratowski() {
        let p = encode_kuratowski(0, 0, 4).unwrap();
        assert_eq!(p.as_sets(), vec![vec![0]]);
        let p = encode_kuratowski(0, 1, 4).unwrap();
        assert_eq!(p.as_sets(), vec![vec![0], vec![0, 1]]);
        assert_eq!(decode_kuratowski(&encode_kuratowski(3, 5, 8).unwrap()).unwrap(), (3, 5));
        assert_eq!(decode_kuratowski(&encode_kuratowski(5, 3, 8).unwrap()).unwrap(), (5, 3));
        assert!(encode_kuratowski(8, 0, 8).is_err());
        assert!(encode_kuratowski(0, 0, 9).is_err());
    }

    #[test]
    fn json_shapes() {
        let v = serde_json::json!({"map": [[1, 3]], "tail": {"const": {"domain": {"T": 0, "transient": [], "p": 2, "R": [0]}, "value": 5}}});
        let f = PartialFn::from_json(&v).unwrap();
        assert!(f.contains_pair(1, 3) && f.contains_pair(2, 5));
        assert!(PartialFn::from_json(&v).unwrap().to_json() == v);
        let s: FnSpace = serde_json::from_value(serde_json::json!({"A": {"elems": [0, 1]}, "B": {"elems": [0]}, "flavor": "injective"})).unwrap();
        assert_eq!(s.flavor(), FnFlavor::Injective);
    }
}
