//! Polynomial invariants of rational square matrices: minimal and
//! characteristic polynomials, nilpotency, the additive Jordan decomposition
//! and exponentials of nilpotent matrices.

use super::elim::{coordinates, determinant, inverse};
use super::matrix::Matrix;
use super::poly::UniPoly;
use super::scalar::{Field, Rational, Ring};
use crate::error::{Error, Result};

/// `p(A)` by Horner's rule.
pub fn eval_poly_at_matrix(p: &UniPoly, a: &Matrix<Rational>) -> Matrix<Rational> {
    let n = a.rows();
    let mut acc = Matrix::zeros(n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.times(a).plus(&Matrix::identity(n).scale(c));
    }
    acc
}

/// Monic minimal polynomial, found as the first linear relation among
/// `I, A, A², …`.
pub fn minimal_polynomial(a: &Matrix<Rational>) -> UniPoly {
    assert!(a.is_square(), "minimal polynomial of a non-square matrix");
    let n = a.rows();
    let mut powers: Vec<Vec<Rational>> = vec![Matrix::identity(n).data().to_vec()];
    let mut cur = Matrix::identity(n);
    for _ in 0..=n {
        cur = cur.times(a);
        let flat = cur.data().to_vec();
        if let Some(c) = coordinates(&powers, &flat) {
            let mut coeffs: Vec<Rational> = c.iter().map(|x| x.negate()).collect();
            coeffs.push(Rational::one());
            return UniPoly::new(coeffs);
        }
        powers.push(flat);
    }
    unreachable!("Cayley–Hamilton bounds the degree by n")
}

/// `det(tI − A)`.
pub fn characteristic_polynomial(a: &Matrix<Rational>) -> UniPoly {
    let n = a.rows();
    let m = Matrix::from_fn(n, n, |i, j| {
        let c = UniPoly::constant(a[(i, j)].negate());
        if i == j {
            c.plus(&UniPoly::t())
        } else {
            c
        }
    });
    determinant(&m)
}

pub fn is_nilpotent(a: &Matrix<Rational>) -> bool {
    a.pow(a.rows() as u32).is_zero()
}

/// Smallest `k` with `A^k = 0`, if any.
pub fn nilpotency_index(a: &Matrix<Rational>) -> Option<usize> {
    let n = a.rows();
    let mut cur = Matrix::identity(n);
    for k in 1..=n {
        cur = cur.times(a);
        if cur.is_zero() {
            return Some(k);
        }
    }
    None
}

/// Squarefree part `p / gcd(p, p')`, monic.
pub fn squarefree_part(p: &UniPoly) -> UniPoly {
    let g = p.gcd(&p.derivative());
    p.div_rem(&g).0.monic()
}

/// Additive Jordan decomposition `A = S + N` over ℚ: `S` semisimple (its
/// minimal polynomial is squarefree), `N` nilpotent, both polynomials in `A`.
/// Newton iteration on the squarefree part of the minimal polynomial.
pub fn jordan_chevalley(a: &Matrix<Rational>) -> Result<(Matrix<Rational>, Matrix<Rational>)> {
    let p = squarefree_part(&minimal_polynomial(a));
    let dp = p.derivative();
    let mut s = a.clone();
    for _ in 0..=a.rows().max(1) {
        let ps = eval_poly_at_matrix(&p, &s);
        if ps.is_zero() {
            let nil = a.minus(&s);
            return Ok((s, nil));
        }
        let inv = inverse(&eval_poly_at_matrix(&dp, &s)).map_err(|_| Error::Singular)?;
        s = s.minus(&ps.times(&inv));
    }
    Err(Error::Verification("Jordan decomposition did not converge".into()))
}

/// `exp(N)` for nilpotent `N`, as the terminating series.
pub fn exp_nilpotent(nm: &Matrix<Rational>) -> Result<Matrix<Rational>> {
    let n = nm.rows();
    let mut term = Matrix::identity(n);
    let mut acc = Matrix::identity(n);
    for k in 1..=n {
        term = term.times(nm).scale(&Rational::from_integer(k.into()).inverse());
        if term.is_zero() {
            return Ok(acc);
        }
        acc = acc.plus(&term);
    }
    if term.times(nm).is_zero() {
        Ok(acc)
    } else {
        Err(Error::Input("exponential of a non-nilpotent matrix".into()))
    }
}

fn divisors(n: u128) -> Vec<u128> {
    let mut small = vec![];
    let mut large = vec![];
    let mut d = 1u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Rational roots of `p` with multiplicities, ascending. Candidates come from
/// the rational root theorem on the squarefree part with cleared denominators.
pub fn rational_roots(p: &UniPoly) -> Result<Vec<(Rational, usize)>> {
    use num_integer::Integer;
    use num_traits::{Signed, ToPrimitive};
    if p.degree().is_none() {
        return Err(Error::Input("roots of the zero polynomial".into()));
    }
    let sq = squarefree_part(p);
    let lcm = sq.coeffs().iter().fold(num_bigint::BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<num_bigint::BigInt> = sq.coeffs().iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let mut cands = vec![];
    let v = ints.iter().position(|c| c.sign() != num_bigint::Sign::NoSign).unwrap_or(0);
    if v > 0 {
        cands.push(Rational::zero());
    }
    let too_big = || Error::Input("coefficients too large for rational root search".into());
    let a0 = ints[v].abs().to_u128().ok_or_else(too_big)?;
    let an = ints.last().expect("nonzero").abs().to_u128().ok_or_else(too_big)?;
    if a0 > 1u128 << 48 || an > 1u128 << 48 {
        return Err(too_big());
    }
    for num in divisors(a0) {
        for den in divisors(an) {
            for sign in [1i64, -1] {
                let r = Rational::new((num as i128 * sign as i128).into(), (den as i128).into());
                if !cands.contains(&r) && sq.eval(&r).is_zero() {
                    cands.push(r);
                }
            }
        }
    }
    cands.sort();
    let mut out = vec![];
    for r in cands {
        let lin = UniPoly::new(vec![r.negate(), Rational::one()]);
        let mut m = 0;
        let mut cur = p.clone();
        loop {
            let (qt, rem) = cur.div_rem(&lin);
            if rem.degree().is_some() {
                break;
            }
            m += 1;
            cur = qt;
        }
        out.push((r, m));
    }
    Ok(out)
}
