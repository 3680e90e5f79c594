//! Finite-field computations around Joubert generators of sextic extensions
//! in characteristic 2.
//!
//! The crate is organised bottom-up: [`ffield`] and [`fpoly`] provide exact
//! arithmetic, [`sigma`] the σ-coefficient predicates, and the remaining
//! modules the searches, point counts and the fixed-point obstruction.

pub mod ascurve;
pub mod cubic;
pub mod error;
pub mod ffield;
pub mod fpoly;
pub mod jsearch;
pub mod linalg;
pub mod obstruct;
mod scan;
pub mod sigma;

pub use error::{Budget, Error, Result};
pub use ffield::{make_field, ExtDesc, FElt, FieldDesc};
pub use fpoly::UPoly;
