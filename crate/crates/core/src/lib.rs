//! Computer algebra for the P̂-matrices of finite reflection groups.

pub mod error;
pub mod invariants;
pub mod oracle;
pub mod pmatrix;
pub mod polyring;
pub mod transform;

pub use error::{Error, Result};
