//! Exact computations with D-finite systems of linear partial differential
//! equations: Gröbner bases of left ideals of differential operators,
//! classification of points, removal of apparent singularities and
//! truncated power-series solutions.

pub mod algebra;
pub mod cli;
pub mod desing;
pub mod error;
pub mod groebner;
pub mod ideals;
pub mod indicial;
pub mod linalg;
pub mod ore;
pub mod series;
pub mod syntax;

pub use algebra::{Exponent, MultiPoly, RatFunc, Q};
pub use error::{Error, Result};
pub use groebner::{buchberger, GroebnerBasis, MonomialOrder, NormalFormTable};
pub use ore::{EulerForm, OreOperator};
pub use series::{SolutionBasis, TruncatedSeries};
