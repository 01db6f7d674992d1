//! Exact computation of Kerov character polynomials and the symmetric
//! functions describing their graded components.
//!
//! The pipeline runs from Young diagrams to free cumulants
//! ([`cumulants`]), fits `K_r` against exact symmetric-group characters
//! ([`character`], [`kerov`]), and compares the result with closed forms and
//! coefficient tables ([`lab`]).

pub mod character;
pub mod cumulants;
pub mod error;
pub mod kerov;
pub mod lab;
pub mod linalg;
pub mod partition;
pub mod rational;
pub mod series;
pub mod symfunc;

pub use error::{Error, Result};
pub use partition::Partition;
pub use rational::Rational;
pub use symfunc::{Basis, SymFunc};
