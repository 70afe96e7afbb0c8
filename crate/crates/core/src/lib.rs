//! Exact symbolic engine for the symplectic Dirac operator, its twist under
//! the standard complex structure, and the Lie algebras they generate.
//!
//! Everything is computed over the Gaussian rationals with no floating point:
//! operator identities are structural equalities of normal-ordered term maps
//! and kernel dimensions come from exact elimination.

pub mod arith;
pub mod cli;
pub mod lie;
pub mod kernel;
pub mod linalg;
pub mod space;
pub mod verify;
pub mod weyl;

pub use arith::{ArithError, GaussianRational, GQ};
pub use weyl::{catalog, family, Family, MultiIndex, TermKey, Var, WeylError, WeylOperator};
