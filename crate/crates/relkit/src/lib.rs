//! Verification kernel for finite enriched category theory and relative
//! monads.

pub mod algebra;
pub mod cli;
pub mod corpus;
pub mod dual;
pub mod enriched;
pub mod error;
pub mod formal;
pub mod json;
pub mod relmonad;
pub mod vkernel;

pub use error::{Budget, Certified, Error, Result, ValidationReport, Violation};
