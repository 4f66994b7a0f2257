//! Exact computation over the cube `2^P(X)` of families of subsets.

pub mod cube;
pub mod error;
pub mod families;
pub mod functions;
pub mod logic;
pub mod suite;
pub mod upset;
pub mod witnesses;

pub use cube::{Clopen, FamilyOracle, GroundSet, Neighborhood, Universe};
pub use error::{Error, Result};
pub use families::FiniteFamily;
pub use upset::{Cardinality, UpSet};
