//! Exact arithmetic: rationals, polynomials in s, Q(s), and multivariate
//! polynomials over Q(s) with weighted orders.

mod multipoly;
mod spoly;
mod srat;
mod zpoly;

pub use multipoly::{default_names, render_monomial, weighted_degree, Exponent, MultiPoly, WeightedOrder};
pub use spoly::SPoly;
pub use srat::SRat;
pub use zpoly::ZPoly;

/// Arbitrary-precision rational number.
pub type BigRat = num_rational::BigRational;

/// Rational from an integer numerator and denominator.
pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(n.into(), d.into())
}

/// Integer as a rational.
pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(n.into())
}
