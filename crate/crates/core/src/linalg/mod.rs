//! Exact linear algebra and polynomial arithmetic over the rationals.

pub mod gcd;
pub mod lattice;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod symbolic;
pub mod upoly;

pub use gcd::{multi_gcd, multi_gcd_all};
pub use lattice::in_integer_span;
pub use matrix::{greedy_extension, intersect_spans, rank_of, Matrix, SplitFailure};
pub use poly::{Monomial, MultiPoly};
pub use scalar::{format_scalar, frac, int, parse_scalar, Scalar};
pub use symbolic::{symbolic_determinant, symbolic_rank, PolyMatrix};
