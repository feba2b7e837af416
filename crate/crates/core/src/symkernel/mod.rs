//! Exact rational polynomial arithmetic over named coordinate charts.

mod chart;
mod parse;
mod poly;

pub use chart::{Chart, Coordinate, Role};
pub use parse::parse_poly;
pub use poly::{Monomial, Polynomial};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `n/d`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Parses a rational literal such as `-3/4` or `5`.
pub fn parse_rational(text: &str) -> crate::Result<Rational> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let chart = Chart::point();
    let p = parse_poly(body, &chart)?;
    let v = p.constant_value().ok_or(crate::Error::Syntax {
        offset: 0,
        message: format!("`{text}` is not a rational literal"),
    })?;
    Ok(if neg { -v } else { v })
}
