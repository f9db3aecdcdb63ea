//! Exact Kazhdan-Lusztig theory for Hecke algebras with unequal parameters.

pub mod afun;
pub mod cells;
pub mod coxeter;
pub mod dihedral;
pub mod error;
pub mod hecke;
pub mod io;
pub mod jring;
pub mod kl;
pub mod laurent;
pub mod report;
pub mod symbols;

pub use error::{Error, Result};
pub use laurent::{BiLaurentPoly, Int, LaurentPoly};
