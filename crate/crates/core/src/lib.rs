//! Equational reasoning for non-associative bialgebras: string diagrams,
//! a rewrite engine over them, exact finite models, octonions and
//! truncated deformations.

pub mod deform;
pub mod diagram;
pub mod dsl;
pub mod linalg;
pub mod models;
pub mod octonion;
pub mod rewrite;
pub mod scalar;
pub mod theories;

pub use diagram::{Diagram, DiagramError, Generator, Kind, Label};
pub use scalar::Scalar;
