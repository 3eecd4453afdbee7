//! Exact-arithmetic engine for the classification of 32-dimensional pointed
//! Hopf algebras over an algebraically closed field of characteristic zero.
//!
//! The engine enumerates Yetter-Drinfeld modules over the 2-groups of order
//! at most 16, computes Nichols-algebra dimensions inside the quantum
//! shuffle algebra, classifies module sums up to bosonization isomorphism,
//! and derives lifting families with a symbolic diamond-lemma rewriting
//! engine. All arithmetic happens in the 16th cyclotomic field with
//! arbitrary-precision rational coefficients; no floating point anywhere.

pub mod classify;
pub mod cyclotomic;
pub mod error;
pub mod groups;
pub mod lifting;
pub mod linalg;
pub mod matrix;
pub mod nichols;
pub mod ydmod;

/// The engine's scalar type: an exact element of the 16th cyclotomic field.
pub type Scalar = cyclotomic::CycScalar;

pub use cyclotomic::{CycScalar, Nq};
pub use error::Error;
pub use groups::{catalogue, Character, FinGroup, GroupMap, Representation, CATALOGUE};
pub use matrix::Mat;
pub use ydmod::{BraidingMatrix, InducedRep, YdModule};
