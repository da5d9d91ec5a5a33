//! Exact scalars, polynomials and truncated power series.

mod divided;
mod json;
mod parse;
mod poly;
mod polynomial;
mod ratfunc;
mod rational;
mod series;
mod value;

pub use divided::divided_difference;
pub use json::{polynomial_to_json, scalar_from_json, scalar_to_json};
pub use parse::parse_polynomial;
pub use poly::{GcdDomain, Poly, Ring};
pub use polynomial::Polynomial;
pub use ratfunc::RatFunc;
pub use rational::{binomial, factorial, parse_rational, rat, rat_pow, ratio, to_decimal, Rational};
pub use series::{series_exp, series_inverse, series_mul, TruncatedSeries};
pub use value::{scalar_arith, ArithOp, PQFrac, PQPoly, QFrac, QPoly, Scalar, Tag};
