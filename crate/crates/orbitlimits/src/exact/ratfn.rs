use std::fmt;

use super::poly::UniPoly;
use super::scalar::{Domain, Field, Fraction, Rational, Ring};
use crate::error::{Error, Result};

/// Element of ℚ(t), kept as a reduced fraction with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFn {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::from_poly(UniPoly::zero());
        }
        // Skip the Euclidean gcd when the denominator is a unit.
        if den.is_constant() {
            let c = den.leading().inverse();
            return RationalFn {
                num: num.scale(&c),
                den: UniPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = (num.exact_div(&g), den.exact_div(&g));
        let c = den.leading().inverse();
        RationalFn {
            num: num.scale(&c),
            den: den.scale(&c),
        }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RationalFn {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Value at a rational point; `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x).divide(&d))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }
}

/// `lim_{t→0} f(t)` for a function regular at 0.
pub fn limit_at_zero(f: &RationalFn) -> Result<Rational> {
    f.eval(&Rational::zero()).ok_or(Error::PoleAtZero)
}

impl Ring for RationalFn {
    fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num.plus(&o.num), self.den.clone());
        }
        Self::new(
            self.num.times(&o.den).plus(&o.num.times(&self.den)),
            self.den.times(&o.den),
        )
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }
    fn times(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Self::new(self.num.times(&o.num), self.den.times(&o.den))
    }
    fn negate(&self) -> Self {
        RationalFn {
            num: self.num.negate(),
            den: self.den.clone(),
        }
    }
}

impl Domain for RationalFn {
    fn exact_div(&self, o: &Self) -> Self {
        self.divide(o)
    }
}

impl Field for RationalFn {
    fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::new(self.den.clone(), self.num.clone())
    }
    fn divide(&self, o: &Self) -> Self {
        assert!(!o.is_zero(), "division by zero");
        Self::new(self.num.times(&o.den), self.den.times(&o.num))
    }
}

impl Fraction for RationalFn {
    type Base = UniPoly;
    fn clear_row(row: &[Self]) -> Vec<UniPoly> {
        let l = row.iter().fold(UniPoly::one(), |acc, x| acc.lcm(&x.den));
        row.iter()
            .map(|x| x.num.times(&l.exact_div(&x.den)))
            .collect()
    }
    fn embed(b: &UniPoly) -> Self {
        Self::from_poly(b.clone())
    }
}

impl From<UniPoly> for RationalFn {
    fn from(p: UniPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
