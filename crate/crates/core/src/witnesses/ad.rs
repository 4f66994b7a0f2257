use serde_json::{json, Value};

use super::{Check, ClassTag, Rationale, SeparationCertificate};
use crate::cube::{GroundSet, Neighborhood, Universe};
use crate::error::{Error, Result};
use crate::families::{is_ad_family, AdBound, AdViolation, FiniteFamily};
use crate::upset::{Cardinality, UpSet};

/// Separates a family that is not almost disjoint: `α⁺` for a finite
/// member, or `α⁺ ∩ β⁺` for two members meeting in at least λ points.
pub fn separate_ad(p: &FiniteFamily, lambda: AdBound) -> Result<SeparationCertificate> {
    let report = is_ad_family(p, lambda)?;
    let Some(violation) = report.violation else {
        return Err(Error::NotSeparable("the family is almost disjoint".into()));
    };
    let (pos, rationale, check) = match violation {
        AdViolation::SmallMember(a) => {
            let small = a.is_finite();
            (vec![a], Rationale::SmallMember, Check::new("pos_is_finite", small))
        }
        AdViolation::LargeIntersection(a, b) => {
            let big = match lambda {
                AdBound::Omega => a.meets_infinitely(&b),
                AdBound::Finite(k) => a.intersect(&b)?.classify() >= Cardinality::Finite(k),
            };
            (vec![a, b], Rationale::LargeIntersection, Check::new("pos_meet_reaches_bound", big))
        }
    };
    let nbhd = Neighborhood::new(Universe::Nat, pos.into_iter().map(GroundSet::Symbolic), [])?;
    Ok(SeparationCertificate::new(
        p.to_json(),
        ClassTag::AlmostDisjoint,
        nbhd.clone(),
        rationale,
        nbhd.contains(p),
        vec![check],
    ))
}

/// Result of trying to add one more member to an a.d. family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdExtension {
    Extended(UpSet),
    /// No ultimately periodic set extends the family.
    NotExtendable,
}

impl AdExtension {
    pub fn to_json(&self) -> Value {
        match self {
            AdExtension::Extended(x) => json!({ "extended": x }),
            AdExtension::NotExtendable => json!("not_extendable"),
        }
    }
}

/// An infinite set almost disjoint from every member of `f`.
///
/// Candidates are drawn from the complement of `⋃f`. When that complement
/// is finite no ultimately periodic set works: an infinite `x` would be
/// covered, up to finitely many points, by finitely many sets it meets
/// finitely.
pub fn extend_ad(f: &FiniteFamily) -> Result<AdExtension> {
    if !is_ad_family(f, AdBound::Omega)?.is_ad {
        return Err(Error::Precondition("the family is not almost disjoint".into()));
    }
    let mut covered = UpSet::empty();
    for a in f.iter().filter_map(GroundSet::as_upset) {
        covered = covered.union(a)?;
    }
    let free = covered.complement();
    if free.is_finite() {
        return Ok(AdExtension::NotExtendable);
    }
    Ok(AdExtension::Extended(free))
}
