//! Exact sign calculus for selfdual and conjugate-dual Weil-Deligne parameters.
//!
//! Representations are formal multisets of opaque atoms, root numbers are
//! validated table data, and every component group is an F2 vector space
//! packed into a `u64`.

pub mod char_calculus;
pub mod classifier;
pub mod component_groups;
pub mod f2;
pub mod field_model;
pub mod global_packets;
pub mod rep_algebra;
pub mod sign;

pub use sign::{FourthRoot, Sign};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid data: {0}")]
    Validation(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("incomplete table: {0}")]
    IncompleteTable(String),
    #[error("classification error: {0}")]
    Classification(String),
    #[error("unknown id: {0}")]
    UnknownId(String),
    #[error("enumeration too large: {0}")]
    Unbounded(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
