//! Placement delivery arrays (PDAs) for coded caching: exact validation,
//! the classic constructions, Blackburn-compatibility checks, lifting, and
//! an XOR delivery simulator.

pub mod compat;
pub mod constructions;
pub mod error;
pub mod format;
pub mod lifting;
pub mod params;
pub mod pda;
pub mod random;
pub mod sim;
pub mod subsets;
pub mod table;
pub mod validate;

pub use error::{Error, Result};
pub use params::{params, PdaParams, Rational};
pub use pda::{Cell, Pda};
pub use validate::{validate, ValidationReport, Violation};
