//! Graded-commutative cohomology rings of compact duals, restriction maps
//! between them, and the Poincaré-duality tests that decide whether a
//! fundamental class survives the Borel map.

pub mod algebra;
pub mod catalog;
pub mod checks;
pub mod duality;
pub mod element;
pub mod error;
pub mod linalg;
pub mod monomial;
pub mod oracles;
pub mod morphism;
pub mod poly;
pub mod rational;
pub mod report;

pub use algebra::{AlgebraKind, GradedAlgebra, Limits, SparseVec, DEFAULT_MONOMIAL_CAP};
pub use catalog::{
    decide_ghost, decide_nonvanishing, FamilyId, FamilyInstance, FamilyParams, GhostCertificate, IdentityCheck, Verdict,
};
pub use element::Element;
pub use error::{Error, Result};
pub use monomial::{Generator, Monomial};
pub use morphism::{FundamentalClass, Morphism};
pub use poly::FreePolynomial;
pub use rational::Rational;
pub use checks::{run_checks, CheckConfig, CheckResult, Suite};
pub use report::{run_family, run_sweep, OutputFormat, ReportDocument, RunConfig, SweepRanges, SweepReport};
