//! Exact analysis of nonnegative rational matrices: Hoffman polynomials of
//! λ-doubly stochastic irreducible matrices, predistance polynomial bases, and
//! detection of commutative association schemes whose Bose–Mesner algebra is
//! the polynomial algebra of the matrix.

pub mod digraph;
pub mod exact;
pub mod fixtures;
pub mod io;
pub mod matrix;
pub mod minpoly;
pub mod predistance;
pub mod report;
pub mod scheme;
pub mod spectral;
pub mod stochastic;

pub use exact::{parse_rational, rational, Polynomial, Rational};
pub use matrix::RationalMatrix;
pub use io::{parse_matrix, serialize_matrix};
pub use minpoly::{hoffman_polynomial, minimal_polynomial};
pub use predistance::predistance_basis;
pub use scheme::detect_scheme;
pub use stochastic::classify;
