//! Finite families of sets: lattice and topology closures, class
//! predicates, continuity of self-maps, almost disjoint families and the
//! exhaustive classification of every family over a tiny universe.

use std::collections::HashMap;
use std::hash::Hash;
use std::ops::Range;

use indexmap::IndexSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cube::{full_mask, FamilyOracle, FinSet, GroundSet, Membership, Universe};
use crate::error::{Error, Result};
use crate::upset::{Bits, Cardinality, Frame, UpSet, DEFAULT_PERIOD_CAP};

/// Default bound on the size of a closure.
pub const DEFAULT_CLOSURE_CAP: usize = 1 << 17;

/// Largest universe for which every family is enumerated.
pub const MAX_ENUMERATION_N: u8 = 4;

/// A finite family of subsets of one universe, without duplicates.
///
/// Equality is set equality; member order is kept for deterministic output.
#[derive(Debug, Clone)]
pub struct FiniteFamily {
    universe: Universe,
    members: IndexSet<GroundSet>,
}

impl PartialEq for FiniteFamily {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe
            && self.members.len() == other.members.len()
            && self.members.iter().all(|m| other.members.contains(m))
    }
}

impl Eq for FiniteFamily {}

impl FiniteFamily {
    pub fn new(universe: Universe, sets: impl IntoIterator<Item = GroundSet>) -> Result<Self> {
        let members: IndexSet<GroundSet> = sets.into_iter().collect();
        if let Some(bad) = members.iter().find(|s| s.universe() != universe) {
            return Err(Error::UniverseMismatch(format!("{bad} is not a subset of {universe}")));
        }
        Ok(FiniteFamily { universe, members })
    }

    pub fn empty(universe: Universe) -> Self {
        FiniteFamily {
            universe,
            members: IndexSet::new(),
        }
    }

    pub fn symbolic(sets: impl IntoIterator<Item = UpSet>) -> Self {
        FiniteFamily {
            universe: Universe::Nat,
            members: sets.into_iter().map(GroundSet::Symbolic).collect(),
        }
    }

    /// A family over `X_n` given by element lists.
    pub fn finite(n: u8, sets: &[&[u64]]) -> Result<Self> {
        let sets = sets
            .iter()
            .map(|s| GroundSet::finite(n, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(Universe::Finite(n), sets)
    }

    /// Every subset of `X_n`.
    pub fn powerset(n: u8) -> Result<Self> {
        if n > 6 {
            return Err(Error::Resource(format!("powerset of X_{n} is too large")));
        }
        Self::new(
            Universe::Finite(n),
            (0..1u32 << n).map(|m| GroundSet::Finite(FinSet::new(n, m).expect("in range"))),
        )
    }

    /// Decodes a family over `X_n` (n ≤ 6) whose bit `s` marks the subset
    /// with mask `s`.
    pub fn from_mask(n: u8, mask: u64) -> Self {
        assert!(n <= 6, "family masks only cover n <= 6");
        let members = (0..1u32 << n)
            .filter(|s| mask >> s & 1 == 1)
            .map(|s| GroundSet::Finite(FinSet::new(n, s).expect("in range")))
            .collect();
        FiniteFamily {
            universe: Universe::Finite(n),
            members,
        }
    }

    /// Inverse of [`FiniteFamily::from_mask`].
    pub fn to_mask(&self) -> Option<u64> {
        match self.universe {
            Universe::Finite(n) if n <= 6 => Some(
                self.members
                    .iter()
                    .filter_map(GroundSet::as_finite)
                    .fold(0u64, |acc, s| acc | 1 << s.mask()),
            ),
            _ => None,
        }
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn members(&self) -> &IndexSet<GroundSet> {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroundSet> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: &GroundSet) -> bool {
        self.members.contains(set)
    }

    pub fn is_subfamily(&self, other: &FiniteFamily) -> bool {
        self.members.iter().all(|m| other.contains(m))
    }

    /// Adds the members of `other` that are not already present.
    pub fn union(&self, other: &FiniteFamily) -> Result<FiniteFamily> {
        Self::new(
            self.universe,
            self.members.iter().chain(other.iter()).cloned(),
        )
    }

    pub fn intersection(&self, other: &FiniteFamily) -> FiniteFamily {
        FiniteFamily {
            universe: self.universe,
            members: self
                .members
                .iter()
                .filter(|m| other.contains(m))
                .cloned()
                .collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "universe": self.universe,
            "sets": self.members.iter().map(GroundSet::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let universe: Universe = serde_json::from_value(
            v.get("universe")
                .cloned()
                .ok_or_else(|| Error::Validation("family needs a universe".into()))?,
        )?;
        let sets = match v.get("sets") {
            Some(Value::Array(items)) => items
                .iter()
                .map(|x| GroundSet::from_json(universe, x))
                .collect::<Result<Vec<_>>>()?,
            None | Some(Value::Null) => Vec::new(),
            Some(other) => return Err(Error::Validation(format!("`sets` must be a list, got {other}"))),
        };
        Self::new(universe, sets)
    }
}

impl Membership<GroundSet> for FiniteFamily {
    fn universe(&self) -> Option<Universe> {
        Some(self.universe)
    }

    fn contains(&self, set: &GroundSet) -> bool {
        self.members.contains(set)
    }
}

impl From<FiniteFamily> for FamilyOracle {
    fn from(f: FiniteFamily) -> Self {
        FamilyOracle::Materialized {
            universe: f.universe,
            members: f.members,
        }
    }
}

/// Meet-closes `gens`, then join-closes the result. In a distributive
/// lattice of sets the second stage preserves the first, so this is the
/// least family containing `gens` closed under binary ∪ and ∩.
fn close<T: Clone + Eq + Hash>(
    gens: Vec<T>,
    meet: impl Fn(&T, &T) -> T,
    join: impl Fn(&T, &T) -> T,
    cap: usize,
) -> Result<IndexSet<T>> {
    let too_big = || Error::Resource(format!("lattice closure exceeds {cap} members"));
    let mut meets: IndexSet<T> = IndexSet::new();
    for g in &gens {
        let fresh: Vec<T> = meets.iter().map(|r| meet(r, g)).collect();
        meets.insert(g.clone());
        meets.extend(fresh);
        if meets.len() > cap {
            return Err(too_big());
        }
    }
    let mut out: IndexSet<T> = gens.into_iter().collect();
    out.extend(meets.iter().cloned());
    for m in &meets {
        let fresh: Vec<T> = out.iter().map(|r| join(r, m)).collect();
        out.extend(fresh);
        if out.len() > cap {
            return Err(too_big());
        }
    }
    Ok(out)
}

/// The least family containing `gens` and closed under binary ∪ and ∩.
pub fn lattice_closure(gens: &FiniteFamily) -> Result<FiniteFamily> {
    lattice_closure_with_cap(gens, DEFAULT_CLOSURE_CAP)
}

pub fn lattice_closure_with_cap(gens: &FiniteFamily, cap: usize) -> Result<FiniteFamily> {
    let members = match gens.universe {
        Universe::Finite(n) => {
            let masks: Vec<u32> = gens
                .iter()
                .filter_map(GroundSet::as_finite)
                .map(|s| s.mask())
                .collect();
            close(masks, |a, b| a & b, |a, b| a | b, cap)?
                .into_iter()
                .map(|m| GroundSet::Finite(FinSet::new(n, m).expect("closure stays in X_n")))
                .collect()
        }
        Universe::Nat => {
            let sets: Vec<&UpSet> = gens.iter().filter_map(GroundSet::as_upset).collect();
            symbolic_closure(&sets, cap)?
                .into_iter()
                .map(GroundSet::Symbolic)
                .collect()
        }
    };
    Ok(FiniteFamily {
        universe: gens.universe,
        members,
    })
}

/// Symbolic closure. All generators are laid out in a common frame, and
/// frame positions with the same membership signature are merged into one
/// class, so the closure itself runs on short class bitmasks.
fn symbolic_closure(gens: &[&UpSet], cap: usize) -> Result<Vec<UpSet>> {
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    let frame = Frame::for_sets(gens.iter().copied(), DEFAULT_PERIOD_CAP)?;
    let encoded: Vec<Bits> = gens.iter().map(|g| frame.encode(g)).collect();
    let sig_words = gens.len().div_ceil(64);
    let mut class_of = Vec::with_capacity(frame.len());
    let mut classes: HashMap<Vec<u64>, usize> = HashMap::new();
    for pos in 0..frame.len() {
        let mut sig = vec![0u64; sig_words];
        for (g, bits) in encoded.iter().enumerate() {
            if bits[pos] {
                sig[g / 64] |= 1 << (g % 64);
            }
        }
        let next = classes.len();
        class_of.push(*classes.entry(sig).or_insert(next));
    }
    let words = classes.len().div_ceil(64);
    let class_gens: Vec<Vec<u64>> = encoded
        .iter()
        .map(|bits| {
            let mut v = vec![0u64; words];
            for pos in bits.iter_ones() {
                let c = class_of[pos];
                v[c / 64] |= 1 << (c % 64);
            }
            v
        })
        .collect();
    let zip = |a: &Vec<u64>, b: &Vec<u64>, f: fn(u64, u64) -> u64| -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect()
    };
    let closed = close(
        class_gens,
        |a, b| zip(a, b, |x, y| x & y),
        |a, b| zip(a, b, |x, y| x | y),
        cap,
    )?;
    let mut class_bits = vec![Bits::repeat(false, frame.len()); classes.len()];
    for (pos, &c) in class_of.iter().enumerate() {
        class_bits[c].set(pos, true);
    }
    Ok(closed
        .into_iter()
        .map(|v| {
            let mut bits = Bits::repeat(false, frame.len());
            for (c, cb) in class_bits.iter().enumerate() {
                if v[c / 64] >> (c % 64) & 1 == 1 {
                    for (x, y) in bits.as_raw_mut_slice().iter_mut().zip(cb.as_raw_slice()) {
                        *x |= y;
                    }
                }
            }
            frame.decode(&bits)
        })
        .collect())
}

/// The topology generated by `gens` as a subbase: the lattice closure
/// together with ∅ and X.
pub fn topology_from_subbase(gens: &FiniteFamily) -> Result<FiniteFamily> {
    let u = gens.universe;
    let with_bounds = FiniteFamily::new(
        u,
        gens.iter()
            .cloned()
            .chain([GroundSet::bottom(u), GroundSet::top(u)]),
    )?;
    lattice_closure(&with_bounds)
}

/// Meet of two topologies in the lattice of topologies (intersection).
pub fn meet_topologies(a: &FiniteFamily, b: &FiniteFamily) -> FiniteFamily {
    a.intersection(b)
}

/// Join of two topologies: the topology generated by their union.
pub fn join_topologies(a: &FiniteFamily, b: &FiniteFamily) -> Result<FiniteFamily> {
    topology_from_subbase(&a.union(b)?)
}

/// Why a family fails to be a (bounded) lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassWitness {
    MissingJoin(GroundSet, GroundSet),
    MissingMeet(GroundSet, GroundSet),
    MissingBottom,
    MissingTop,
}

impl ClassWitness {
    pub fn to_json(&self) -> Value {
        match self {
            ClassWitness::MissingJoin(a, b) => json!({"missing_join": [a.to_json(), b.to_json()]}),
            ClassWitness::MissingMeet(a, b) => json!({"missing_meet": [a.to_json(), b.to_json()]}),
            ClassWitness::MissingBottom => json!("missing_bottom"),
            ClassWitness::MissingTop => json!("missing_top"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub is_lattice: bool,
    /// Contains ∅ and X.
    pub is_bounded: bool,
    pub is_topology: bool,
    /// `None` for symbolic families, where the question is not decided here.
    pub is_t1: Option<bool>,
    pub witness: Option<ClassWitness>,
}

impl ClassReport {
    pub fn to_json(&self) -> Value {
        json!({
            "is_lattice": self.is_lattice,
            "is_bounded": self.is_bounded,
            "is_topology": self.is_topology,
            "is_t1": self.is_t1,
            "witness": self.witness.as_ref().map(ClassWitness::to_json),
        })
    }
}

/// First pair (in member order) whose join, then meet, is missing.
pub(crate) fn lattice_failure(f: &FiniteFamily) -> Result<Option<ClassWitness>> {
    let m: Vec<&GroundSet> = f.iter().collect();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            if !f.contains(&m[i].union(m[j])?) {
                return Ok(Some(ClassWitness::MissingJoin(m[i].clone(), m[j].clone())));
            }
            if !f.contains(&m[i].intersect(m[j])?) {
                return Ok(Some(ClassWitness::MissingMeet(m[i].clone(), m[j].clone())));
            }
        }
    }
    Ok(None)
}

/// Lattice, boundedness, topology and T1 flags for a finite family.
///
/// A finite lattice is join complete, so for finite families a bounded
/// lattice is exactly a topology. T1 is decided only over `X_n`, as
/// "contains every cofinite subset" (which there means every subset).
pub fn classify_family(f: &FiniteFamily) -> Result<ClassReport> {
    let lattice_witness = lattice_failure(f)?;
    let has_top = f.contains(&GroundSet::top(f.universe));
    let has_bottom = f.contains(&GroundSet::bottom(f.universe));
    let is_lattice = lattice_witness.is_none();
    let is_bounded = has_top && has_bottom;
    let is_topology = is_lattice && is_bounded;
    let is_t1 = match f.universe {
        Universe::Finite(n) => Some(is_topology && f.len() as u64 == 1u64 << n),
        Universe::Nat => None,
    };
    let witness = lattice_witness.or(if !has_top {
        Some(ClassWitness::MissingTop)
    } else if !has_bottom {
        Some(ClassWitness::MissingBottom)
    } else {
        None
    });
    Ok(ClassReport {
        is_lattice,
        is_bounded,
        is_topology,
        is_t1,
        witness,
    })
}

/// The cardinal bound λ on pairwise intersections of an a.d. family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AdBound {
    Finite(u64),
    Omega,
}

impl AdBound {
    /// `|x ∩ y| ≥ λ`.
    fn reached_by(self, x: &UpSet, y: &UpSet) -> Result<bool> {
        Ok(match self {
            AdBound::Omega => x.meets_infinitely(y),
            AdBound::Finite(k) => x.intersect(y)?.classify() >= Cardinality::Finite(k),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdViolation {
    /// A member of size below ω.
    SmallMember(UpSet),
    /// Two members whose intersection reaches λ.
    LargeIntersection(UpSet, UpSet),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdReport {
    pub is_ad: bool,
    pub violation: Option<AdViolation>,
}

impl AdReport {
    pub fn to_json(&self) -> Value {
        let violation = self.violation.as_ref().map(|v| match v {
            AdViolation::SmallMember(x) => json!({"small_member": x}),
            AdViolation::LargeIntersection(x, y) => json!({"large_intersection": [x, y]}),
        });
        json!({"is_ad": self.is_ad, "violation": violation})
    }
}

/// Is `f` (over ℕ) a family of infinite sets with pairwise intersections
/// of size below `lambda`?
pub fn is_ad_family(f: &FiniteFamily, lambda: AdBound) -> Result<AdReport> {
    if f.universe() != Universe::Nat {
        return Err(Error::Precondition(
            "almost disjoint families live over ℕ".into(),
        ));
    }
    let sets: Vec<&UpSet> = f.iter().filter_map(GroundSet::as_upset).collect();
    let fail = |v| AdReport {
        is_ad: false,
        violation: Some(v),
    };
    if let Some(small) = sets.iter().find(|s| s.is_finite()) {
        return Ok(fail(AdViolation::SmallMember((*small).clone())));
    }
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if lambda.reached_by(sets[i], sets[j])? {
                return Ok(fail(AdViolation::LargeIntersection(
                    sets[i].clone(),
                    sets[j].clone(),
                )));
            }
        }
    }
    Ok(AdReport {
        is_ad: true,
        violation: None,
    })
}

/// A self-map of `X_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct EndoMap {
    images: Vec<u8>,
}

impl TryFrom<Vec<u8>> for EndoMap {
    type Error = Error;

    fn try_from(images: Vec<u8>) -> Result<Self> {
        EndoMap::new(images)
    }
}

impl From<EndoMap> for Vec<u8> {
    fn from(f: EndoMap) -> Self {
        f.images
    }
}

impl EndoMap {
    pub fn new(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        if n > crate::cube::MAX_FINITE_UNIVERSE as usize {
            return Err(Error::Resource(format!("maps on {n} points are not supported")));
        }
        if let Some(bad) = images.iter().find(|&&x| x as usize >= n) {
            return Err(Error::Validation(format!("image {bad} is outside X_{n}")));
        }
        Ok(EndoMap { images })
    }

    pub fn identity(n: u8) -> Self {
        EndoMap {
            images: (0..n).collect(),
        }
    }

    pub fn constant(n: u8, c: u8) -> Result<Self> {
        EndoMap::new(vec![c; n as usize])
    }

    pub fn n(&self) -> u8 {
        self.images.len() as u8
    }

    pub fn apply(&self, x: u8) -> u8 {
        self.images[x as usize]
    }

    pub fn preimage(&self, a: FinSet) -> FinSet {
        let mask = (0..self.n())
            .filter(|&x| a.contains(self.apply(x) as u64))
            .fold(0u32, |m, x| m | 1 << x);
        FinSet::new(self.n(), mask).expect("preimage stays in X_n")
    }

    pub fn image(&self, a: FinSet) -> FinSet {
        let mask = (0..self.n())
            .filter(|&x| a.contains(x as u64))
            .fold(0u32, |m, x| m | 1 << self.apply(x));
        FinSet::new(self.n(), mask).expect("image stays in X_n")
    }
}

fn require_topology_on(f: &EndoMap, rho: &FiniteFamily) -> Result<()> {
    if rho.universe() != Universe::Finite(f.n()) {
        return Err(Error::Precondition(format!(
            "family lives in {}, map acts on X_{}",
            rho.universe(),
            f.n()
        )));
    }
    if !classify_family(rho)?.is_topology {
        return Err(Error::Precondition("family is not a topology".into()));
    }
    Ok(())
}

/// The largest topology making `f : (X, σ) → (X, τ)` continuous:
/// `{X} ∪ {A : f⁻¹(A) ∈ σ}`, found by scanning every subset of `X_n`.
pub fn tau_f(sigma: &FiniteFamily, f: &EndoMap) -> Result<FiniteFamily> {
    require_topology_on(f, sigma)?;
    let n = f.n();
    let members = (0..1u32 << n)
        .map(|m| FinSet::new(n, m).expect("in range"))
        .filter(|&a| a.mask() == full_mask(n) || sigma.contains(&GroundSet::Finite(f.preimage(a))))
        .map(GroundSet::Finite);
    FiniteFamily::new(Universe::Finite(n), members)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapProperty {
    Continuous,
    Open,
    Closed,
}

/// A set witnessing that a map lacks a property: `required` is in ρ while
/// `forbidden` is not, yet the property would force `forbidden` in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MapFailure {
    pub property: MapProperty,
    pub required: FinSet,
    pub forbidden: FinSet,
}

/// First witness (by subset mask) that `f` lacks `property` on `(X_n, ρ)`.
///
/// * continuous: `A ∈ ρ`, `f⁻¹(A) ∉ ρ`
/// * open: `A ∈ ρ`, `f(A) ∉ ρ`
/// * closed: `X∖C ∈ ρ`, `X∖f(C) ∉ ρ`
pub fn map_failure(
    property: MapProperty,
    f: &EndoMap,
    rho: &FiniteFamily,
) -> Result<Option<MapFailure>> {
    require_topology_on(f, rho)?;
    let opens: Vec<FinSet> = rho.iter().filter_map(GroundSet::as_finite).collect();
    let in_rho = |s: FinSet| rho.contains(&GroundSet::Finite(s));
    Ok(opens.into_iter().find_map(|open| {
        let forbidden = match property {
            MapProperty::Continuous => f.preimage(open),
            MapProperty::Open => f.image(open),
            MapProperty::Closed => f.image(open.complement()).complement(),
        };
        (!in_rho(forbidden)).then_some(MapFailure {
            property,
            required: open,
            forbidden,
        })
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MapFlags {
    pub continuous: bool,
    pub open: bool,
    pub closed: bool,
}

pub fn map_check(f: &EndoMap, rho: &FiniteFamily) -> Result<MapFlags> {
    Ok(MapFlags {
        continuous: map_failure(MapProperty::Continuous, f, rho)?.is_none(),
        open: map_failure(MapProperty::Open, f, rho)?.is_none(),
        closed: map_failure(MapProperty::Closed, f, rho)?.is_none(),
    })
}

/// Flags of one family over `X_n` given as a family mask (see
/// [`FiniteFamily::from_mask`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaskClass {
    pub lattice: bool,
    pub bounded: bool,
    pub topology: bool,
    pub t1: bool,
}

pub fn classify_mask(n: u8, mask: u64) -> MaskClass {
    let members: Vec<u32> = (0..1u32 << n).filter(|s| mask >> s & 1 == 1).collect();
    let has = |s: u32| mask >> s & 1 == 1;
    let lattice = members.iter().enumerate().all(|(i, &a)| {
        members[i + 1..]
            .iter()
            .all(|&b| has(a | b) && has(a & b))
    });
    let bounded = has(0) && has(full_mask(n));
    let topology = lattice && bounded;
    let t1 = topology && members.len() as u64 == 1u64 << n;
    MaskClass {
        lattice,
        bounded,
        topology,
        t1,
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub families: u64,
    pub lattices: u64,
    pub bounded_lattices: u64,
    pub topologies: u64,
    pub t1_topologies: u64,
}

impl ClassCounts {
    fn add(mut self, c: MaskClass) -> Self {
        self.families += 1;
        self.lattices += c.lattice as u64;
        self.bounded_lattices += (c.lattice && c.bounded) as u64;
        self.topologies += c.topology as u64;
        self.t1_topologies += c.t1 as u64;
        self
    }

    fn merge(self, o: ClassCounts) -> Self {
        ClassCounts {
            families: self.families + o.families,
            lattices: self.lattices + o.lattices,
            bounded_lattices: self.bounded_lattices + o.bounded_lattices,
            topologies: self.topologies + o.topologies,
            t1_topologies: self.t1_topologies + o.t1_topologies,
        }
    }
}

fn check_enumerable(n: u8) -> Result<()> {
    if n == 0 || n > MAX_ENUMERATION_N {
        return Err(Error::Resource(format!(
            "exhaustive enumeration supports 1 <= n <= {MAX_ENUMERATION_N}, got {n}"
        )));
    }
    Ok(())
}

/// Number of families of subsets of `X_n`.
pub fn family_count(n: u8) -> u64 {
    1u64 << (1u32 << n)
}

/// Counts over the family masks in `range` (a slice of
/// `0..family_count(n)`), for splitting the enumeration across workers.
pub fn enumerate_classify_range(n: u8, range: Range<u64>) -> Result<ClassCounts> {
    check_enumerable(n)?;
    if range.end > family_count(n) {
        return Err(Error::Validation(format!(
            "range end {} exceeds {} families",
            range.end,
            family_count(n)
        )));
    }
    Ok(range
        .map(|m| classify_mask(n, m))
        .fold(ClassCounts::default(), ClassCounts::add))
}

/// Classifies every family of subsets of `X_n`.
pub fn enumerate_classify(n: u8) -> Result<ClassCounts> {
    check_enumerable(n)?;
    let total = family_count(n);
    let chunk = (total / 64).max(1);
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    starts
        .into_par_iter()
        .map(|s| enumerate_classify_range(n, s..(s + chunk).min(total)))
        .try_reduce(ClassCounts::default, |a, b| Ok(a.merge(b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: u8, sets: &[&[u64]]) -> FiniteFamily {
        FiniteFamily::finite(n, sets).unwrap()
    }

    fn sym(sets: Vec<UpSet>) -> FiniteFamily {
        FiniteFamily::symbolic(sets)
    }

    #[test]
    fn closure_of_two_points() {
        let c = lattice_closure(&fam(2, &[&[0], &[1]])).unwrap();
        assert_eq!(c, fam(2, &[&[], &[0], &[1], &[0, 1]]));
    }

    #[test]
    fn closure_of_chain_is_itself() {
        let chain = fam(3, &[&[0], &[0, 1], &[0, 1, 2]]);
        assert_eq!(lattice_closure(&chain).unwrap(), chain);
    }

    #[test]
    fn closure_of_complementary_pair() {
        let c = lattice_closure(&sym(vec![UpSet::evens(), UpSet::odds()])).unwrap();
        assert_eq!(
            c,
            sym(vec![UpSet::empty(), UpSet::evens(), UpSet::odds(), UpSet::naturals()])
        );
    }

    #[test]
    fn closure_cap() {
        let gens = fam(4, &[&[0], &[1], &[2], &[3]]);
        assert!(matches!(
            lattice_closure_with_cap(&gens, 8),
            Err(Error::Resource(_))
        ));
        assert_eq!(lattice_closure(&gens).unwrap().len(), 16);
    }

    #[test]
    fn subbase_cases() {
        assert_eq!(
            topology_from_subbase(&FiniteFamily::empty(Universe::Finite(2))).unwrap(),
            fam(2, &[&[], &[0, 1]])
        );
        assert_eq!(
            topology_from_subbase(&sym(vec![UpSet::evens()])).unwrap(),
            sym(vec![UpSet::empty(), UpSet::evens(), UpSet::naturals()])
        );
        assert_eq!(
            topology_from_subbase(&fam(3, &[&[0], &[0, 1]])).unwrap(),
            fam(3, &[&[], &[0], &[0, 1], &[0, 1, 2]])
        );
    }

    #[test]
    fn classify_examples() {
        let r = classify_family(&fam(2, &[&[], &[0], &[0, 1]])).unwrap();
        assert!(r.is_lattice && r.is_bounded && r.is_topology);
        assert_eq!(r.is_t1, Some(false));

        let r = classify_family(&fam(2, &[&[0], &[1]])).unwrap();
        assert!(!r.is_lattice);
        assert_eq!(
            r.witness,
            Some(ClassWitness::MissingJoin(
                GroundSet::finite(2, &[0]).unwrap(),
                GroundSet::finite(2, &[1]).unwrap()
            ))
        );

        let r = classify_family(&FiniteFamily::powerset(2).unwrap()).unwrap();
        assert!(r.is_topology);
        assert_eq!(r.is_t1, Some(true));
    }

    #[test]
    fn classify_symbolic_has_no_t1_verdict() {
        let r = classify_family(&sym(vec![UpSet::empty(), UpSet::naturals()])).unwrap();
        assert!(r.is_topology);
        assert_eq!(r.is_t1, None);
    }

    #[test]
    fn ad_examples() {
        let m4 = UpSet::multiples_of(4).unwrap();
        let r = is_ad_family(&sym(vec![UpSet::evens(), UpSet::odds()]), AdBound::Omega).unwrap();
        assert!(r.is_ad);
        let r = is_ad_family(&sym(vec![UpSet::evens(), m4.clone()]), AdBound::Omega).unwrap();
        assert_eq!(
            r.violation,
            Some(AdViolation::LargeIntersection(UpSet::evens(), m4))
        );
        let small = UpSet::from_elements([0, 1]).unwrap();
        let r = is_ad_family(&sym(vec![UpSet::evens(), small.clone()]), AdBound::Omega).unwrap();
        assert_eq!(r.violation, Some(AdViolation::SmallMember(small)));
    }

    #[test]
    fn ad_with_finite_lambda() {
        // evens ∩ ({0,2,4} ∪ odds) = {0,2,4}
        let x = UpSet::from_elements([0, 2, 4]).unwrap().union(&UpSet::odds()).unwrap();
        let f = sym(vec![UpSet::evens(), x]);
        assert!(is_ad_family(&f, AdBound::Finite(4)).unwrap().is_ad);
        assert!(!is_ad_family(&f, AdBound::Finite(3)).unwrap().is_ad);
        assert!(is_ad_family(&f, AdBound::Omega).unwrap().is_ad);
        assert!(is_ad_family(&fam(2, &[]), AdBound::Omega).is_err());
    }

    #[test]
    fn tau_f_examples() {
        let indiscrete = fam(3, &[&[], &[0, 1, 2]]);
        assert_eq!(tau_f(&indiscrete, &EndoMap::identity(3)).unwrap(), indiscrete);
        let discrete = FiniteFamily::powerset(2).unwrap();
        let swap = EndoMap::new(vec![1, 0]).unwrap();
        assert_eq!(tau_f(&discrete, &swap).unwrap(), discrete);
        // f ≡ 0 pulls every subset back to ∅ or X_2, so every subset qualifies.
        let sigma = fam(2, &[&[], &[0], &[0, 1]]);
        let c0 = EndoMap::constant(2, 0).unwrap();
        assert_eq!(tau_f(&sigma, &c0).unwrap(), discrete);
        assert!(matches!(
            tau_f(&fam(2, &[&[0]]), &c0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn map_check_examples() {
        let rho = fam(2, &[&[], &[0], &[0, 1]]);
        let all = MapFlags {
            continuous: true,
            open: true,
            closed: true,
        };
        assert_eq!(map_check(&EndoMap::identity(2), &rho).unwrap(), all);
        let discrete = FiniteFamily::powerset(2).unwrap();
        assert_eq!(
            map_check(&EndoMap::constant(2, 0).unwrap(), &discrete).unwrap(),
            all
        );
        let swap = EndoMap::new(vec![1, 0]).unwrap();
        assert!(!map_check(&swap, &rho).unwrap().continuous);
        let w = map_failure(MapProperty::Continuous, &swap, &rho).unwrap().unwrap();
        assert_eq!(w.required.elements(), vec![0]);
        assert_eq!(w.forbidden.elements(), vec![1]);
    }

    #[test]
    fn endomap_validation() {
        assert!(EndoMap::new(vec![0, 2]).is_err());
        let f: EndoMap = serde_json::from_str("[1,0]").unwrap();
        assert_eq!(f.apply(0), 1);
    }

    #[test]
    fn enumerate_small() {
        let c1 = enumerate_classify(1).unwrap();
        assert_eq!(c1.topologies, 1);
        let c2 = enumerate_classify(2).unwrap();
        assert_eq!(c2.families, 16);
        assert_eq!(c2.topologies, 4);
        assert_eq!(c2.lattices, 13);
        assert!(enumerate_classify(5).is_err());
        assert!(enumerate_classify(0).is_err());
    }

    #[test]
    fn enumerate_ranges_partition() {
        let whole = enumerate_classify_range(3, 0..256).unwrap();
        let split = enumerate_classify_range(3, 0..100)
            .unwrap()
            .merge(enumerate_classify_range(3, 100..256).unwrap());
        assert_eq!(whole, split);
        assert_eq!(whole, enumerate_classify(3).unwrap());
    }

    #[test]
    fn mask_round_trip() {
        for m in 0..256u64 {
            assert_eq!(FiniteFamily::from_mask(3, m).to_mask(), Some(m));
        }
    }

    #[test]
    fn family_json() {
        let v = serde_json::json!({"universe": {"finite": 2}, "sets": [[0], [1]]});
        let f = FiniteFamily::from_json(&v).unwrap();
        assert_eq!(f, fam(2, &[&[0], &[1]]));
        assert_eq!(f.to_json(), v);
    }
}
