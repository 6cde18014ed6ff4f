//! Exact constructions and brute-force verifiers for the objects behind
//! monotone circuit lower bounds: graph polynomials and their depth-3
//! circuits, binary codes from Reed–Solomon codes, rank functions and their
//! hard distributions, and the sunflower-based DNF approximation pipeline.
//!
//! Containers are generic over the scalar ([`scalar::Ring`]); the aliases
//! below fix the exact rational instantiation used by every verifier.

pub mod approx;
pub mod boolcircuit;
pub mod circuit;
pub mod codes;
pub mod error;
pub mod f2;
pub mod gf2e;
pub mod graph;
pub mod io;
pub mod matrix;
pub mod pit;
pub mod poly;
pub mod rank;
pub mod rng;
pub mod scalar;
pub mod stats;

pub use error::{Error, Result};

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rational = num_rational::BigRational;
/// Sparse polynomial with rational coefficients.
pub type Poly = poly::SparsePoly<Rational>;
/// Arithmetic circuit with rational constants.
pub type Circuit = circuit::ArithCircuit<Rational>;
/// Dense rational matrix.
pub type QMatrix = matrix::Matrix<Rational>;
