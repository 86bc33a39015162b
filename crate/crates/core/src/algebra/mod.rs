//! Exact arithmetic: rationals, sparse multivariate polynomials and reduced
//! rational functions over Q.

pub mod gcd;
pub mod monomial;
pub mod poly;
pub mod ratfunc;

pub use gcd::poly_gcd;
pub use monomial::Exponent;
pub use poly::{content_primitive, q, q_frac, MultiPoly, Q};
pub use ratfunc::RatFunc;
