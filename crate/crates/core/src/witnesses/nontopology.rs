//! A bounded lattice inside a neighborhood of a topology that is not
//! itself join complete.
//!
//! The construction picks an infinite set `S` on which every constraint set
//! is either empty or everything, splits `S` into parts
//! `P_k = {s_i : i ≡ 2^k − 1 (mod 2^(k+1))}` and closes the positive sets
//! together with the parts. Finitely many parts never union to `S`, so `S`
//! stays outside every finite stage `L_m` while being the union of all
//! parts.

use serde::Serialize;
use serde_json::{json, Value};

use super::{checks_json, density_topology, Check, Rejection};
use crate::cube::{Clopen, GroundSet, Neighborhood, Universe};
use crate::error::{Error, Result};
use crate::families::{lattice_closure, FiniteFamily};
use crate::upset::UpSet;

/// Parts materialized when the caller does not say.
pub const DEFAULT_PARTS: u32 = 8;

/// Refinements tried before giving up on an `S` that the positive sets
/// already generate.
const MAX_REFINEMENTS: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `S` is the complement of every constraint set.
    Complement,
    /// `S` comes from the chain of infinite intersections.
    Chain,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonTopologyLattice {
    pub s: UpSet,
    pub parts: Vec<UpSet>,
    pub lattice: FiniteFamily,
    pub residual: UpSet,
    pub branch: Branch,
    /// How many times `S` was halved because the positive sets generated it.
    pub refinements: u32,
    /// Whether trimming by finite constraint sets changed `S`.
    pub finite_sets_trimmed: bool,
    pub checks: Vec<Check>,
}

impl NonTopologyLattice {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "S": self.s,
            "parts": self.parts,
            "L_m": self.lattice.to_json(),
            "residual": self.residual,
            "branch": self.branch,
            "refinements": self.refinements,
            "finite_sets_trimmed": self.finite_sets_trimmed,
            "checks": checks_json(&self.checks),
        })
    }
}

fn upsets(sets: &[GroundSet]) -> Vec<UpSet> {
    sets.iter().filter_map(GroundSet::as_upset).cloned().collect()
}

/// `C_n` minus every finite trace `C_n ∩ D`, over the sets `trim`.
fn trimmed(c: &UpSet, trim: &[&UpSet]) -> Result<UpSet> {
    let mut s = c.clone();
    for d in trim {
        let trace = c.intersect(d)?;
        if trace.is_finite() {
            s = s.difference(&trace)?;
        }
    }
    Ok(s)
}

/// Builds `S`, the parts and `L_m` for a neighborhood of a topology on ℕ.
///
/// `S` is the complement of all constraint sets when that is infinite.
/// Otherwise the infinite constraint sets (positives first, each in list
/// order) are intersected in turn whenever the running intersection stays
/// infinite, and every finite trace of a constraint set is removed. When
/// the positive sets (with ∅ and ℕ) already generate `S`, it is replaced by
/// every other element of itself until they no longer do.
pub fn nontopology_lattice(n: &Neighborhood, m: u32) -> Result<NonTopologyLattice> {
    if n.universe() != Universe::Nat {
        return Err(Error::Precondition("the construction runs over ℕ".into()));
    }
    if m == 0 || m > 30 {
        return Err(Error::Validation(format!("part count must be in 1..=30, got {m}")));
    }
    let generated = density_topology(&Clopen::Basic(n.clone()))?;
    let pos = upsets(n.pos());
    let neg = upsets(n.neg());
    let all: Vec<&UpSet> = pos.iter().chain(&neg).collect();

    let mut covered = UpSet::empty();
    for a in &all {
        covered = covered.union(a)?;
    }
    let rest = covered.complement();
    let (branch, mut s, finite_sets_trimmed) = if rest.is_infinite() {
        (Branch::Complement, rest, false)
    } else {
        let mut chain: Option<UpSet> = None;
        for c in all.iter().filter(|a| a.is_infinite()) {
            chain = Some(match chain {
                None => (*c).clone(),
                Some(prev) => {
                    let meet = prev.intersect(c)?;
                    if meet.is_infinite() {
                        meet
                    } else {
                        prev
                    }
                }
            });
        }
        let c = chain.expect("a finite complement forces an infinite constraint set");
        let s = trimmed(&c, &all)?;
        let infinite_only: Vec<&UpSet> = all.iter().copied().filter(|a| a.is_infinite()).collect();
        let changed = trimmed(&c, &infinite_only)? != s;
        (Branch::Chain, s, changed)
    };

    let mut refinements = 0;
    while generated.contains(&GroundSet::Symbolic(s.clone())) {
        if refinements == MAX_REFINEMENTS {
            return Err(reject(
                "the positive sets generate every refinement of S",
                vec![],
            ));
        }
        s = s.index_filter(2, 0)?;
        refinements += 1;
    }

    let parts = (1..=m)
        .map(|k| s.index_filter(1 << (k + 1), (1 << k) - 1))
        .collect::<Result<Vec<_>>>()?;
    let mut union_parts = UpSet::empty();
    for p in &parts {
        union_parts = union_parts.union(p)?;
    }
    let residual = s.difference(&union_parts)?;

    let gens = FiniteFamily::new(
        Universe::Nat,
        n.pos()
            .iter()
            .cloned()
            .chain(parts.iter().cloned().map(GroundSet::Symbolic))
            .chain([GroundSet::bottom(Universe::Nat), GroundSet::top(Universe::Nat)]),
    )?;
    let lattice = lattice_closure(&gens)?;

    let disjoint = parts
        .iter()
        .enumerate()
        .all(|(i, p)| parts[i + 1..].iter().all(|q| p.is_disjoint(q)));
    let traces_ok = all.iter().all(|a| {
        a.intersect(&s)
            .map(|t| t.is_empty() || t == s)
            .unwrap_or(false)
    });
    let checks = vec![
        Check::new("s_infinite", s.is_infinite()),
        Check::new(
            "parts_infinite_disjoint_within_s",
            disjoint && parts.iter().all(|p| p.is_infinite() && p.is_subset(&s)),
        ),
        Check::new(
            "partition_identity",
            union_parts.union(&residual)? == s && residual.is_disjoint(&union_parts),
        ),
        Check::new("traces_empty_or_s", traces_ok),
        Check::new("pos_in_lattice", n.pos().iter().all(|a| lattice.contains(a))),
        Check::new(
            "neg_and_s_outside_lattice",
            !n.neg().iter().any(|b| lattice.contains(b))
                && !lattice.contains(&GroundSet::Symbolic(s.clone())),
        ),
    ];
    if checks.iter().any(|c| !c.pass) {
        return Err(reject("a postcondition failed", checks));
    }
    Ok(NonTopologyLattice {
        s,
        parts,
        lattice,
        residual,
        branch,
        refinements,
        finite_sets_trimmed,
        checks,
    })
}

fn reject(reason: &str, checks: Vec<Check>) -> Error {
    Error::Rejected(Box::new(Rejection {
        reason: reason.to_string(),
        checks,
    }))
}
