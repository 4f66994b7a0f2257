//! Seeded acceptance criteria, each checked against a reference oracle.

mod criteria;
mod gen;
pub mod oracle;

use std::time::{Duration, Instant};

use serde_json::{json, Value};

pub use criteria::Outcome;
pub use gen::Gen;

/// One acceptance criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    /// Wall-clock budget, when the criterion has one.
    pub limit: Option<Duration>,
}

pub const CRITERIA: [Criterion; 8] = [
    Criterion { id: 1, name: "upset_algebra", limit: Some(Duration::from_secs(10)) },
    Criterion { id: 2, name: "topology_counts", limit: Some(Duration::from_secs(60)) },
    Criterion { id: 3, name: "lattice_separation", limit: Some(Duration::from_secs(120)) },
    Criterion { id: 4, name: "universal_certificates", limit: None },
    Criterion { id: 5, name: "topology_density", limit: None },
    Criterion { id: 6, name: "nontopology_lattice", limit: None },
    Criterion { id: 7, name: "function_spaces", limit: None },
    Criterion { id: 8, name: "almost_disjoint", limit: None },
];

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub criterion: Criterion,
    pub pass: bool,
    pub within_limit: bool,
    pub elapsed: Duration,
    pub detail: Value,
}

impl CriterionResult {
    /// JSON view; the elapsed time is included only on request so that
    /// reports stay reproducible.
    pub fn to_json(&self, timing: bool) -> Value {
        let mut v = json!({
            "id": self.criterion.id,
            "name": self.criterion.name,
            "pass": self.pass,
            "within_limit": self.within_limit,
            "limit_ms": self.criterion.limit.map(|d| d.as_millis() as u64),
            "detail": self.detail,
        });
        if timing {
            v["elapsed_ms"] = json!(self.elapsed.as_millis() as u64);
        }
        v
    }

    /// `criterion 3 lattice_separation: PASS`
    pub fn line(&self) -> String {
        format!(
            "criterion {} {}: {}",
            self.criterion.id,
            self.criterion.name,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

pub fn criterion(id: u8) -> Option<Criterion> {
    CRITERIA.iter().copied().find(|c| c.id == id)
}

/// Runs one criterion. Library errors count as failures and are reported
/// in the detail.
pub fn run_criterion(c: Criterion, seed: u64) -> CriterionResult {
    let start = Instant::now();
    let outcome = match c.id {
        1 => criteria::upset_algebra(seed),
        2 => criteria::topology_counts(),
        3 => criteria::lattice_separation(),
        4 => criteria::universal_certificates(),
        5 => criteria::topology_density(seed),
        6 => criteria::nontopology(seed),
        7 => criteria::function_spaces(seed),
        8 => criteria::almost_disjoint(seed),
        _ => unreachable!("criterion ids run from 1 to 8"),
    };
    let elapsed = start.elapsed();
    let within_limit = c.limit.map_or(true, |l| elapsed <= l);
    let (ok, detail) = match outcome {
        Ok(o) => (o.pass, o.detail),
        Err(e) => (false, json!({ "error": e.to_string(), "code": e.code() })),
    };
    CriterionResult {
        criterion: c,
        pass: ok && within_limit,
        within_limit,
        elapsed,
        detail,
    }
}

pub fn run_acceptance(seed: u64) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|&c| run_criterion(c, seed)).collect()
}
