//! Certificates of separation and density.
//!
//! A separation certificate is a basic neighborhood that contains a given
//! point and meets no member of a class. Density operations go the other
//! way: given a neighborhood, they build a class member inside it.

mod ad;
mod density;
mod nontopology;
mod separate;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::cube::{Constraint, GroundSet, Membership, Neighborhood};

pub use ad::{extend_ad, separate_ad, AdExtension};
pub use density::{density_finite_fn, density_onto, density_topology, extend_infinite_fn};
pub use nontopology::{nontopology_lattice, Branch, NonTopologyLattice, DEFAULT_PARTS};
pub use separate::{
    separate_function, separate_lat_b, separate_lattice, separate_map, separate_t1,
    separate_updown, Direction, MAX_T1_BOUND,
};

/// A named pass/fail check recorded on an output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
}

impl Check {
    pub fn new(name: &'static str, pass: bool) -> Self {
        Check { name, pass }
    }
}

pub(crate) fn checks_json(checks: &[Check]) -> Value {
    let map: Map<String, Value> = checks
        .iter()
        .map(|c| (c.name.to_string(), json!(if c.pass { "pass" } else { "fail" })))
        .collect();
    Value::Object(map)
}

/// An instance a construction declined to certify, with the checks that
/// were run before it gave up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    pub reason: String,
    pub checks: Vec<Check>,
}

impl Rejection {
    pub fn to_json(&self) -> Value {
        json!({ "reason": self.reason, "checks": checks_json(&self.checks) })
    }
}

/// The class a certificate excludes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassTag {
    Lattice,
    BoundedLattice,
    /// Subfamilies of the reference family.
    DownSet,
    /// Superfamilies of the reference family.
    UpSet,
    T1,
    Continuous,
    Open,
    Closed,
    Functions,
    InjectiveFunctions,
    OntoFunctions,
    FiniteFunctions,
    AlmostDisjoint,
}

/// Which argument produced the neighborhood.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rationale {
    MissingJoin,
    MissingMeet,
    MissingTop,
    MissingBottom,
    MemberOutsideReference,
    ReferenceMemberMissing,
    CofiniteSetMissing,
    PreimageNotOpen,
    ImageNotOpen,
    ImageNotClosed,
    NotAPair,
    OutsideProduct,
    TwoValues,
    SharedValue,
    PinnedNotOnto,
    SmallMember,
    LargeIntersection,
}

/// A neighborhood of `point` disjoint from `class`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparationCertificate<S: Constraint = GroundSet> {
    pub point: Value,
    pub class: ClassTag,
    pub neighborhood: Neighborhood<S>,
    pub rationale: Rationale,
    pub checks: Vec<Check>,
}

impl<S: Constraint> SeparationCertificate<S> {
    pub(crate) fn new(
        point: Value,
        class: ClassTag,
        neighborhood: Neighborhood<S>,
        rationale: Rationale,
        in_point: bool,
        mut checks: Vec<Check>,
    ) -> Self {
        checks.insert(0, Check::new("point_in_neighborhood", in_point));
        SeparationCertificate {
            point,
            class,
            neighborhood,
            rationale,
            checks,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Re-checks that `point` lies in the neighborhood.
    pub fn admits<F: Membership<S> + ?Sized>(&self, point: &F) -> bool {
        self.neighborhood.contains(point)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "point": self.point,
            "class": self.class,
            "neighborhood": self.neighborhood.to_json(),
            "rationale": self.rationale,
            "checks": checks_json(&self.checks),
        })
    }
}
