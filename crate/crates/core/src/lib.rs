//! Exact arithmetic for level-one modular forms, Weierstrass formal group
//! laws and the Adams–Novikov E2-page of tmf.
//!
//! The algebra is generic over a coefficient [`Ring`]; the aliases below
//! name the instantiations used throughout.

pub mod anss;
pub mod elliptic;
pub mod expr;
pub mod modforms;
pub mod moonshine;
pub mod mpoly;
pub mod qseries;
pub mod ring;
pub mod series;

pub use mpoly::MPoly;
pub use ring::{Fp, Ring};
pub use series::{SeriesError, TruncSeries};

/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;
/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

pub type IntPoly = MPoly<Integer>;
pub type RatPoly = MPoly<Rational>;
pub type IntSeries = TruncSeries<Integer>;
pub type RatSeries = TruncSeries<Rational>;
/// Truncated series whose coefficients are integer polynomials.
pub type PolySeries = TruncSeries<IntPoly>;
pub type RatPolySeries = TruncSeries<RatPoly>;
/// Laurent expansion in `q` with integer coefficients.
pub type QExpansion = TruncSeries<Integer>;
