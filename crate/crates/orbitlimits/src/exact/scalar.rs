use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed as _;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Commutative ring with identity.  Method names avoid clashing with `std::ops`
/// and `num_traits`, which are implemented on the same types.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
}

/// Integral domain with exact division (the caller guarantees divisibility).
pub trait Domain: Ring {
    fn exact_div(&self, other: &Self) -> Self;
}

pub trait Field: Domain {
    fn inverse(&self) -> Self;
    fn divide(&self, other: &Self) -> Self {
        self.times(&other.inverse())
    }
}

/// A field that is the fraction field of a domain we can eliminate over
/// without denominators.
pub trait Fraction: Field {
    type Base: Domain;
    /// Multiply a row by a common denominator, landing in the base domain.
    fn clear_row(row: &[Self]) -> Vec<Self::Base>;
    fn embed(b: &Self::Base) -> Self;
}

impl Ring for BigInt {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
}

impl Domain for BigInt {
    fn exact_div(&self, o: &Self) -> Self {
        debug_assert!(num_traits::Zero::is_zero(&(self % o)));
        self / o
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
}

impl Domain for Rational {
    fn exact_div(&self, o: &Self) -> Self {
        self / o
    }
}

impl Field for Rational {
    fn inverse(&self) -> Self {
        self.recip()
    }
    fn divide(&self, o: &Self) -> Self {
        self / o
    }
}

impl Fraction for Rational {
    type Base = BigInt;
    fn clear_row(row: &[Self]) -> Vec<BigInt> {
        let l = row.iter().fold(<BigInt as Ring>::one(), |acc, x| acc.lcm(x.denom()));
        row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
    }
    fn embed(b: &BigInt) -> Self {
        Rational::from_integer(b.clone())
    }
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Accepts `"p"`, `"-p/q"`, and plain decimals such as `"0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Input(format!("not a rational number: {s:?}"));
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rational::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    s.parse::<Rational>().map_err(|_| bad())
}

pub fn to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        // Scale down huge numerators/denominators before converting.
        let (n, d) = (x.numer().to_string(), x.denom().to_string());
        let shift = n.len().max(d.len()).saturating_sub(300) as i32;
        let trim = |s: &str| s[..s.len() - shift as usize].parse::<f64>().unwrap_or(0.0);
        trim(&n) / trim(&d)
    })
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

pub fn is_integer(x: &Rational) -> bool {
    x.is_integer()
}

pub fn zero() -> Rational {
    <Rational as Ring>::zero()
}

pub fn one() -> Rational {
    <Rational as Ring>::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("-3/6").unwrap(), qf(-1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), qf(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), qf(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), q(7));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn lowest_terms() {
        let r = qf(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(q(0).denom(), &BigInt::from(1));
    }

    #[test]
    fn clear_row_is_primitive_in_denominators() {
        let row = [qf(1, 2), qf(1, 3), q(0)];
        let c = Rational::clear_row(&row);
        assert_eq!(c, vec![BigInt::from(3), BigInt::from(2), BigInt::from(0)]);
    }
}
