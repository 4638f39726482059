//! Exact scalars (ℚ, ℚ[t], ℚ(t)) and dense linear algebra over them.

mod elim;
mod matrix;
mod poly;
mod ratfn;
mod scalar;
mod spectral;

pub use elim::*;
pub use matrix::{dot, lin_comb, vec_is_zero, Matrix};
pub use poly::UniPoly;
pub use spectral::*;
pub use ratfn::{limit_at_zero, RationalFn};
pub use scalar::{
    abs, is_integer, one, parse_rational, q, qf, to_f64, zero, Domain, Field, Fraction, Rational, Ring,
};
