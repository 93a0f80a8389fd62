//! Exact symbolic engines for red/black strand diagram algebras.
//!
//! Everything is computed over an exact coefficient field (arbitrary-precision
//! rationals or a prime field) and every algebra element is represented by its
//! action on a faithful polynomial module, so equality of elements is equality
//! of operators and can be decided exactly.

pub mod field;
pub mod poly;
pub mod sym;

pub mod hecke;
pub mod klr;
pub mod schur;
pub mod qschur;
pub mod complete;
pub mod cyclotomic;

pub mod expr;
pub mod report;
pub mod driver;

mod error;
pub use error::{Error, Result};
pub mod smash;
