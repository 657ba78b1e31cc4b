//! Comaximal graphs of `Z_n` and their independent domination and
//! independence polynomials.
//!
//! Each polynomial is available three ways: closed forms keyed on the shape
//! of the factorization of `n`, a structured computation on the divisor
//! graph, and brute-force enumeration on the full graph. The [`analysis`]
//! module then inspects coefficient sequences (unimodality, log-concavity,
//! oscillation) and zeros (Eneström–Kakeya annulus, simultaneous iteration).

pub mod analysis;
pub mod bitset;
pub mod closed_forms;
pub mod config;
pub mod enumeration;
pub mod error;
pub mod export;
pub mod graph;
pub mod number_theory;
pub mod polynomial;
pub mod precision;
pub mod survey;

pub use error::{Error, Result};
pub use graph::{CompactGraph, DivisorPartition};
pub use number_theory::Factorization;
pub use polynomial::{IntPolynomial, Method, PolyKind};
