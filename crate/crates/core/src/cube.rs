//! The clopen subbasic calculus of the Cantor cube 2^P(X).
//!
//! A point of the cube is a family of subsets of X. The subbasic clopen
//! sets are `A⁺` (families containing `A`) and `A⁻` (families omitting `A`);
//! a basic neighborhood is a finite intersection of them, represented here
//! by its positive and negative constraint lists.
//!
//! Infinite families never get materialised: they enter as decidable
//! predicates ([`FamilyOracle::Predicate`]), and every question asked of a
//! neighborhood consults only its finitely many constraints.

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::upset::UpSet;

/// Largest finite universe that fits a bitmask ground set.
pub const MAX_FINITE_UNIVERSE: u8 = 16;

/// Which X a set lives in: ℕ (symbolic) or `X_n = {0, …, n-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Universe {
    Nat,
    Finite(u8),
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Universe::Nat => f.write_str("ℕ"),
            Universe::Finite(n) => write!(f, "X_{n}"),
        }
    }
}

/// A subset of `X_n` stored as a bitmask; bit `i` is element `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinSet {
    n: u8,
    mask: u32,
}

impl FinSet {
    pub fn new(n: u8, mask: u32) -> Result<Self> {
        if n > MAX_FINITE_UNIVERSE {
            return Err(Error::Resource(format!(
                "finite universes are limited to {MAX_FINITE_UNIVERSE} points, got {n}"
            )));
        }
        if mask >> n != 0 {
            return Err(Error::Validation(format!(
                "mask {mask:#b} has bits outside X_{n}"
            )));
        }
        Ok(FinSet { n, mask })
    }

    pub fn from_elements<I: IntoIterator<Item = u64>>(n: u8, elems: I) -> Result<Self> {
        let mut mask = 0u32;
        for e in elems {
            if e >= n as u64 {
                return Err(Error::Validation(format!("element {e} is not in X_{n}")));
            }
            mask |= 1 << e;
        }
        FinSet::new(n, mask)
    }

    pub fn empty(n: u8) -> Self {
        FinSet { n, mask: 0 }
    }

    pub fn full(n: u8) -> Self {
        FinSet {
            n,
            mask: full_mask(n),
        }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn contains(&self, x: u64) -> bool {
        x < self.n as u64 && self.mask >> x & 1 == 1
    }

    pub fn elements(&self) -> Vec<u64> {
        (0..self.n as u64).filter(|&i| self.contains(i)).collect()
    }

    pub fn union(&self, other: &FinSet) -> FinSet {
        FinSet {
            n: self.n,
            mask: self.mask | other.mask,
        }
    }

    pub fn intersect(&self, other: &FinSet) -> FinSet {
        FinSet {
            n: self.n,
            mask: self.mask & other.mask,
        }
    }

    pub fn complement(&self) -> FinSet {
        FinSet {
            n: self.n,
            mask: !self.mask & full_mask(self.n),
        }
    }
}

pub(crate) fn full_mask(n: u8) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// A subset `A ⊆ X`, either of ℕ or of a small finite universe.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum GroundSet {
    Symbolic(UpSet),
    Finite(FinSet),
}

impl GroundSet {
    pub fn finite(n: u8, elems: &[u64]) -> Result<Self> {
        FinSet::from_elements(n, elems.iter().copied()).map(GroundSet::Finite)
    }

    pub fn universe(&self) -> Universe {
        match self {
            GroundSet::Symbolic(_) => Universe::Nat,
            GroundSet::Finite(s) => Universe::Finite(s.n),
        }
    }

    /// The empty set of a universe.
    pub fn bottom(u: Universe) -> Self {
        match u {
            Universe::Nat => GroundSet::Symbolic(UpSet::empty()),
            Universe::Finite(n) => GroundSet::Finite(FinSet::empty(n)),
        }
    }

    /// The whole universe.
    pub fn top(u: Universe) -> Self {
        match u {
            Universe::Nat => GroundSet::Symbolic(UpSet::naturals()),
            Universe::Finite(n) => GroundSet::Finite(FinSet::full(n)),
        }
    }

    pub fn is_bottom(&self) -> bool {
        match self {
            GroundSet::Symbolic(s) => s.is_empty(),
            GroundSet::Finite(s) => s.mask == 0,
        }
    }

    pub fn is_top(&self) -> bool {
        match self {
            GroundSet::Symbolic(s) => s.is_naturals(),
            GroundSet::Finite(s) => s.mask == full_mask(s.n),
        }
    }

    pub fn as_upset(&self) -> Option<&UpSet> {
        match self {
            GroundSet::Symbolic(s) => Some(s),
            GroundSet::Finite(_) => None,
        }
    }

    pub fn as_finite(&self) -> Option<FinSet> {
        match self {
            GroundSet::Finite(s) => Some(*s),
            GroundSet::Symbolic(_) => None,
        }
    }

    fn same_universe(&self, other: &GroundSet) -> Result<()> {
        if self.universe() == other.universe() {
            Ok(())
        } else {
            Err(Error::UniverseMismatch(format!(
                "{} vs {}",
                self.universe(),
                other.universe()
            )))
        }
    }

    pub fn union(&self, other: &GroundSet) -> Result<GroundSet> {
        self.same_universe(other)?;
        Ok(match (self, other) {
            (GroundSet::Symbolic(a), GroundSet::Symbolic(b)) => GroundSet::Symbolic(a.union(b)?),
            (GroundSet::Finite(a), GroundSet::Finite(b)) => GroundSet::Finite(a.union(b)),
            _ => unreachable!("universes already compared"),
        })
    }

    pub fn intersect(&self, other: &GroundSet) -> Result<GroundSet> {
        self.same_universe(other)?;
        Ok(match (self, other) {
            (GroundSet::Symbolic(a), GroundSet::Symbolic(b)) => {
                GroundSet::Symbolic(a.intersect(b)?)
            }
            (GroundSet::Finite(a), GroundSet::Finite(b)) => GroundSet::Finite(a.intersect(b)),
            _ => unreachable!("universes already compared"),
        })
    }

    pub fn complement(&self) -> GroundSet {
        match self {
            GroundSet::Symbolic(a) => GroundSet::Symbolic(a.complement()),
            GroundSet::Finite(a) => GroundSet::Finite(a.complement()),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            GroundSet::Symbolic(s) => serde_json::to_value(s).expect("upset serialises"),
            GroundSet::Finite(s) => json!(s.elements()),
        }
    }

    /// Finite sets are element arrays; symbolic sets are UpSet objects (an
    /// array is accepted as a finite subset of ℕ).
    pub fn from_json(u: Universe, v: &Value) -> Result<Self> {
        match u {
            Universe::Finite(n) => {
                let elems: Vec<u64> = serde_json::from_value(v.clone())?;
                GroundSet::finite(n, &elems)
            }
            Universe::Nat => {
                if let Some(arr) = v.as_array() {
                    let elems = arr
                        .iter()
                        .map(|x| {
                            x.as_u64()
                                .ok_or_else(|| Error::Validation(format!("not a natural: {x}")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    return Ok(GroundSet::Symbolic(UpSet::from_elements(elems)?));
                }
                Ok(GroundSet::Symbolic(serde_json::from_value(v.clone())?))
            }
        }
    }
}

impl From<UpSet> for GroundSet {
    fn from(s: UpSet) -> Self {
        GroundSet::Symbolic(s)
    }
}

impl From<FinSet> for GroundSet {
    fn from(s: FinSet) -> Self {
        GroundSet::Finite(s)
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundSet::Symbolic(s) => write!(f, "{s}"),
            GroundSet::Finite(s) => {
                let items: Vec<String> = s.elements().iter().map(u64::to_string).collect();
                write!(f, "{{{}}}", items.join(","))
            }
        }
    }
}

/// Anything that can appear as a subbasic constraint: a coordinate of the
/// cube together with the tag of the cube it belongs to.
pub trait Constraint: Clone + Eq + Hash + fmt::Debug + Send + Sync + 'static {
    type Universe: Copy + Eq + fmt::Debug + Send + Sync + 'static;

    fn universe(&self) -> Self::Universe;
    fn to_json(&self) -> Value;
    fn from_json(universe: Self::Universe, v: &Value) -> Result<Self>;
    fn universe_to_json(universe: Self::Universe) -> Value;
    fn universe_from_json(v: &Value) -> Result<Self::Universe>;
}

impl Constraint for GroundSet {
    type Universe = Universe;

    fn universe(&self) -> Universe {
        GroundSet::universe(self)
    }

    fn to_json(&self) -> Value {
        GroundSet::to_json(self)
    }

    fn from_json(universe: Universe, v: &Value) -> Result<Self> {
        GroundSet::from_json(universe, v)
    }

    fn universe_to_json(universe: Universe) -> Value {
        serde_json::to_value(universe).expect("universe serialises")
    }

    fn universe_from_json(v: &Value) -> Result<Universe> {
        Ok(serde_json::from_value(v.clone())?)
    }
}

/// A point of the cube, queried one coordinate at a time.
pub trait Membership<S: Constraint> {
    /// The cube this point lives in, when known.
    fn universe(&self) -> Option<S::Universe> {
        None
    }

    fn contains(&self, set: &S) -> bool;
}

/// A consistent basic clopen set `⋂ pos⁺ ∩ ⋂ neg⁻`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Neighborhood<S: Constraint = GroundSet> {
    universe: S::Universe,
    pos: Vec<S>,
    neg: Vec<S>,
}

/// A basic clopen set that may be empty. The empty case records the set
/// demanded both in and out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Clopen<S: Constraint = GroundSet> {
    Basic(Neighborhood<S>),
    Empty { conflict: S },
}

impl<S: Constraint> Clopen<S> {
    pub fn contains<F: Membership<S> + ?Sized>(&self, family: &F) -> bool {
        match self {
            Clopen::Basic(n) => n.contains(family),
            Clopen::Empty { .. } => false,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Clopen::Empty { .. })
    }

    pub fn basic(&self) -> Result<&Neighborhood<S>> {
        match self {
            Clopen::Basic(n) => Ok(n),
            Clopen::Empty { .. } => Err(Error::InconsistentNeighborhood),
        }
    }

    pub fn into_basic(self) -> Result<Neighborhood<S>> {
        match self {
            Clopen::Basic(n) => Ok(n),
            Clopen::Empty { .. } => Err(Error::InconsistentNeighborhood),
        }
    }
}

fn dedup<S: Constraint>(items: impl IntoIterator<Item = S>) -> Vec<S> {
    items.into_iter().collect::<IndexSet<S>>().into_iter().collect()
}

impl<S: Constraint> Neighborhood<S> {
    /// Builds `⋂ pos⁺ ∩ ⋂ neg⁻`, deduplicating constraints. A set required
    /// both in and out yields [`Clopen::Empty`].
    pub fn make(
        universe: S::Universe,
        pos: impl IntoIterator<Item = S>,
        neg: impl IntoIterator<Item = S>,
    ) -> Result<Clopen<S>> {
        let pos = dedup(pos);
        let neg = dedup(neg);
        if let Some(bad) = pos.iter().chain(&neg).find(|s| s.universe() != universe) {
            return Err(Error::UniverseMismatch(format!(
                "constraint {bad:?} does not live in {universe:?}"
            )));
        }
        if let Some(conflict) = pos.iter().find(|p| neg.contains(p)) {
            return Ok(Clopen::Empty {
                conflict: conflict.clone(),
            });
        }
        Ok(Clopen::Basic(Neighborhood { universe, pos, neg }))
    }

    /// Like [`Neighborhood::make`] but treats an empty result as an error.
    pub fn new(
        universe: S::Universe,
        pos: impl IntoIterator<Item = S>,
        neg: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        Self::make(universe, pos, neg)?.into_basic()
    }

    /// The whole cube.
    pub fn everything(universe: S::Universe) -> Self {
        Neighborhood {
            universe,
            pos: Vec::new(),
            neg: Vec::new(),
        }
    }

    /// `A⁺`.
    pub fn plus(set: S) -> Self {
        Neighborhood {
            universe: set.universe(),
            pos: vec![set],
            neg: Vec::new(),
        }
    }

    /// `A⁻`.
    pub fn minus(set: S) -> Self {
        Neighborhood {
            universe: set.universe(),
            pos: Vec::new(),
            neg: vec![set],
        }
    }

    pub fn universe(&self) -> S::Universe {
        self.universe
    }

    pub fn pos(&self) -> &[S] {
        &self.pos
    }

    pub fn neg(&self) -> &[S] {
        &self.neg
    }

    /// Does the family lie in this neighborhood?
    pub fn contains<F: Membership<S> + ?Sized>(&self, family: &F) -> bool {
        if family.universe().is_some_and(|u| u != self.universe) {
            return false;
        }
        self.pos.iter().all(|a| family.contains(a)) && !self.neg.iter().any(|b| family.contains(b))
    }

    pub fn intersect(&self, other: &Neighborhood<S>) -> Result<Clopen<S>> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch(format!(
                "{:?} vs {:?}",
                self.universe, other.universe
            )));
        }
        Self::make(
            self.universe,
            self.pos.iter().chain(&other.pos).cloned(),
            self.neg.iter().chain(&other.neg).cloned(),
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "universe": S::universe_to_json(self.universe),
            "pos": self.pos.iter().map(S::to_json).collect::<Vec<_>>(),
            "neg": self.neg.iter().map(S::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Clopen<S>> {
        let universe = S::universe_from_json(
            v.get("universe")
                .ok_or_else(|| Error::Validation("neighborhood needs a universe".into()))?,
        )?;
        let list = |key: &str| -> Result<Vec<S>> {
            match v.get(key) {
                None | Some(Value::Null) => Ok(Vec::new()),
                Some(Value::Array(items)) => {
                    items.iter().map(|x| S::from_json(universe, x)).collect()
                }
                Some(other) => Err(Error::Validation(format!("`{key}` must be a list, got {other}"))),
            }
        };
        if v.get("empty") == Some(&Value::Bool(true)) {
            let conflict = v
                .get("conflict")
                .ok_or_else(|| Error::Validation("an empty neighborhood names its conflict".into()))?;
            return Ok(Clopen::Empty {
                conflict: S::from_json(universe, conflict)?,
            });
        }
        Self::make(universe, list("pos")?, list("neg")?)
    }
}

impl<S: Constraint> Clopen<S> {
    pub fn to_json(&self) -> Value {
        match self {
            Clopen::Basic(n) => n.to_json(),
            Clopen::Empty { conflict } => json!({
                "universe": S::universe_to_json(conflict.universe()),
                "empty": true,
                "conflict": conflict.to_json(),
            }),
        }
    }
}

type PredicateFn<S> = dyn Fn(&S) -> bool + Send + Sync;

/// A named decidable membership test standing in for a possibly infinite
/// family.
#[derive(Clone)]
pub struct Predicate<S: Constraint> {
    name: String,
    universe: S::Universe,
    test: Arc<PredicateFn<S>>,
}

impl<S: Constraint> Predicate<S> {
    pub fn new(
        name: impl Into<String>,
        universe: S::Universe,
        test: impl Fn(&S) -> bool + Send + Sync + 'static,
    ) -> Self {
        Predicate {
            name: name.into(),
            universe,
            test: Arc::new(test),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl<S: Constraint> fmt::Debug for Predicate<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Predicate({})", self.name)
    }
}

/// A point of the cube: either a finite list of sets or a predicate.
#[derive(Debug, Clone)]
pub enum FamilyOracle<S: Constraint = GroundSet> {
    Materialized {
        universe: S::Universe,
        members: IndexSet<S>,
    },
    Predicate(Predicate<S>),
}

impl<S: Constraint> FamilyOracle<S> {
    pub fn materialized(universe: S::Universe, members: impl IntoIterator<Item = S>) -> Self {
        FamilyOracle::Materialized {
            universe,
            members: members.into_iter().collect(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            FamilyOracle::Materialized { members, .. } => {
                format!("materialized({} sets)", members.len())
            }
            FamilyOracle::Predicate(p) => p.name.clone(),
        }
    }

    pub fn oracle_universe(&self) -> S::Universe {
        match self {
            FamilyOracle::Materialized { universe, .. } => *universe,
            FamilyOracle::Predicate(p) => p.universe,
        }
    }

    /// The members, when the family is finite and listed.
    pub fn members(&self) -> Option<&IndexSet<S>> {
        match self {
            FamilyOracle::Materialized { members, .. } => Some(members),
            FamilyOracle::Predicate(_) => None,
        }
    }
}

impl FamilyOracle<GroundSet> {
    /// The cofinite topology on ℕ: ∅ together with every cofinite set.
    pub fn cofinite_topology() -> Self {
        FamilyOracle::Predicate(Predicate::new("cofinite-topology", Universe::Nat, |s: &GroundSet| {
            match s {
                GroundSet::Symbolic(a) => a.is_empty() || a.complement().is_finite(),
                GroundSet::Finite(_) => false,
            }
        }))
    }

    /// Every subset of `X_n`.
    pub fn discrete(n: u8) -> Self {
        FamilyOracle::Predicate(Predicate::new(
            format!("discrete({n})"),
            Universe::Finite(n),
            move |s: &GroundSet| s.universe() == Universe::Finite(n),
        ))
    }
}

impl<S: Constraint> Membership<S> for FamilyOracle<S> {
    fn universe(&self) -> Option<S::Universe> {
        Some(self.oracle_universe())
    }

    fn contains(&self, set: &S) -> bool {
        match self {
            FamilyOracle::Materialized { members, .. } => members.contains(set),
            FamilyOracle::Predicate(p) => (p.test)(set),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(n: u8, e: &[u64]) -> GroundSet {
        GroundSet::finite(n, e).unwrap()
    }

    fn sym(s: UpSet) -> GroundSet {
        GroundSet::Symbolic(s)
    }

    #[test]
    fn make_plus_single() {
        let a = fin(2, &[0]);
        let n = Neighborhood::new(Universe::Finite(2), [a.clone()], []).unwrap();
        assert_eq!(n, Neighborhood::plus(a));
    }

    #[test]
    fn make_conflict_is_empty_clopen() {
        let e = sym(UpSet::evens());
        let c = Neighborhood::make(Universe::Nat, [e.clone()], [e.clone()]).unwrap();
        assert_eq!(c, Clopen::Empty { conflict: e.clone() });
        assert!(!c.contains(&FamilyOracle::cofinite_topology()));
        assert!(matches!(
            Neighborhood::new(Universe::Nat, [e.clone()], [e]),
            Err(Error::InconsistentNeighborhood)
        ));
    }

    #[test]
    fn make_dedups() {
        let a = fin(3, &[1]);
        let b = fin(3, &[2]);
        let n = Neighborhood::new(Universe::Finite(3), [a.clone(), a.clone()], [b.clone()]).unwrap();
        assert_eq!(n.pos(), &[a]);
        assert_eq!(n.neg(), &[b]);
    }

    #[test]
    fn make_rejects_mixed_universes() {
        let r = Neighborhood::make(Universe::Finite(2), [fin(3, &[0])], []);
        assert!(matches!(r, Err(Error::UniverseMismatch(_))));
    }

    #[test]
    fn member_cofinite_topology() {
        let n = Neighborhood::new(
            Universe::Nat,
            [sym(UpSet::cofinite([0]).unwrap())],
            [sym(UpSet::from_elements([0]).unwrap())],
        )
        .unwrap();
        assert!(n.contains(&FamilyOracle::cofinite_topology()));
    }

    #[test]
    fn member_materialized() {
        let f = FamilyOracle::materialized(
            Universe::Nat,
            [sym(UpSet::empty()), sym(UpSet::naturals())],
        );
        let both = Neighborhood::new(
            Universe::Nat,
            [sym(UpSet::empty()), sym(UpSet::naturals())],
            [],
        )
        .unwrap();
        assert!(both.contains(&f));
        assert!(!Neighborhood::plus(sym(UpSet::evens())).contains(&f));
    }

    #[test]
    fn intersect_cases() {
        let a = fin(2, &[0]);
        let b = fin(2, &[1]);
        let ab = Neighborhood::plus(a.clone())
            .intersect(&Neighborhood::minus(b.clone()))
            .unwrap();
        assert_eq!(ab.basic().unwrap().pos(), &[a.clone()]);
        assert_eq!(ab.basic().unwrap().neg(), &[b]);
        assert!(Neighborhood::plus(a.clone())
            .intersect(&Neighborhood::minus(a.clone()))
            .unwrap()
            .is_empty());
        let n = Neighborhood::plus(a);
        assert_eq!(n.intersect(&n).unwrap(), Clopen::Basic(n));
    }

    #[test]
    fn universe_mismatch_is_not_a_member() {
        let n = Neighborhood::minus(fin(2, &[0]));
        assert!(!n.contains(&FamilyOracle::discrete(3)));
        assert!(!n.contains(&FamilyOracle::discrete(2)));
        assert!(Neighborhood::minus(fin(3, &[0])).intersect(&n).is_err());
    }

    #[test]
    fn json_round_trip() {
        let v = serde_json::json!({"universe": {"finite": 2}, "pos": [[0]], "neg": [[0, 1]]});
        let n = Neighborhood::<GroundSet>::from_json(&v).unwrap().into_basic().unwrap();
        assert_eq!(n.to_json(), v);
        let s = serde_json::json!({"universe": "nat", "pos": [{"T": 0, "transient": [], "p": 2, "R": [0]}]});
        let n = Neighborhood::<GroundSet>::from_json(&s).unwrap().into_basic().unwrap();
        assert_eq!(n.pos(), &[sym(UpSet::evens())]);
    }
}
