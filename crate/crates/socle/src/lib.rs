//! Exact commutative-algebra toolkit for graded quotients of polynomial
//! rings: Groebner bases, ideal arithmetic, socle ideals, index of
//! reducibility, Hilbert and socle polynomial coefficients, dimension
//! filtrations, and ring-property checks built from them.
//!
//! All arithmetic is exact, over the rationals or a prime field. Nothing
//! in the crate uses floating point.

pub mod cache;
pub mod checkers;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod field;
pub mod filtration;
pub mod groebner;
pub mod ideal;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod report;
pub mod ring;
pub mod socle_hilbert;

pub use error::{Error, Result};
