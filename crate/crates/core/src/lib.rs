//! Fourier analysis, symbol calculus and Toeplitz index computations on the
//! circle and on SU(2).
//!
//! Functions are stored by their matrix Fourier coefficients
//! ([`group::BandlimitedFunction`]), operators as dense compressions to a
//! truncated Peter-Weyl basis ([`operator::TruncatedOperator`]). The
//! [`index`] module computes the Fredholm index of `Pi M_f Pi` by winding
//! number, by the Connes commutator trace and by kernel counting.

pub mod builtin;
pub mod cli;
pub mod circle;
pub mod error;
pub mod group;
pub mod index;
pub mod linalg;
pub mod operator;
pub mod peter_weyl;
pub mod su2;
pub mod symbol;

pub use error::{Error, Result};
pub use group::{BandlimitedFunction, DualIndex, GroupPoint, GroupTag, QuadratureRule, SpectrumSide, TruncationSpec};
pub use linalg::{CMat, C64};
