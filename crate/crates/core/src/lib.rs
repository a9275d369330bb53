//! Exact algebra of power series: truncated series arithmetic, diagonals of
//! rational functions, Hensel lifting, Weierstrass division, and the
//! construction of rational functions whose diagonal is a given algebraic
//! series.
//!
//! Everything is generic over a [`Scalar`] coefficient field. The aliases at
//! the crate root fix the field to the rationals, which is what the rest of
//! the tooling (parser, CLI, corpus) uses.

pub mod artin_mazur;
pub mod denef_lipshitz;
pub mod diagonal;
pub mod error;
pub mod hensel;
pub mod monomial;
pub mod parser;
pub mod poly;
pub mod ratfun;
pub mod resultant;
pub mod scalar;
pub mod series;
pub mod vars;
pub mod weierstrass;

pub use error::{Error, ErrorKind, Result};
pub use monomial::Monomial;
pub use poly::MultiPoly;
pub use ratfun::RationalFunction;
pub use scalar::Scalar;
pub use series::{compose, eval_poly_at_series, SeriesOrder, TruncSeries};
pub use vars::VarSet;

pub use num_bigint::BigInt;

/// Exact rational numbers, the default coefficient field.
pub type Rational = num_rational::BigRational;
pub type QPoly = MultiPoly<Rational>;
pub type QSeries = TruncSeries<Rational>;
pub type FPoly = MultiPoly<f64>;
pub type FSeries = TruncSeries<f64>;
