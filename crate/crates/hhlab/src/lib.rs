//! Exact computations with quadratic quiver algebras: Koszulity certification
//! via quadratic Groebner bases, quadratic duals, graded centers of Yoneda
//! algebras, minimal bimodule resolutions, and Hochschild cohomology rings.

use std::fmt;

pub mod center;
pub mod families;
pub mod field;
pub mod hochschild;
pub mod linalg;
pub mod quadratic;
pub mod quiver;
pub mod report;
pub mod resolution;

/// Error type shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Error {
    message: String,
}

impl Error {
    pub fn new(message: impl Into<String>) -> Error {
        Error {
            message: message.into(),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for Error {}
