//! Fraction-free elimination over domains, Gauss–Jordan over fields, and the
//! normalization of polynomial kernel bases at `t = 0`.

use super::matrix::{lin_comb, Matrix};
use super::poly::UniPoly;
use super::ratfn::RationalFn;
use super::scalar::{Domain, Field, Fraction, Rational, Ring};
use crate::error::{Error, Result};

pub struct Echelon<D> {
    pub u: Matrix<D>,
    pub pivots: Vec<usize>,
    pub swaps: usize,
}

/// Bareiss elimination; only columns `< pivot_cols` are eligible as pivots, the
/// remaining columns are carried along (augmented right-hand sides).
fn bareiss_limited<D: Domain>(m: &Matrix<D>, pivot_cols: usize) -> Echelon<D> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut prev = D::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap_rows(p, r);
            swaps += 1;
        }
        let piv = a[(r, c)].clone();
        let trivial_prev = prev == D::one();
        for i in r + 1..rows {
            let lead = a[(i, c)].clone();
            for j in c + 1..cols {
                let mut v = piv.times(&a[(i, j)]);
                if !lead.is_zero() && !a[(r, j)].is_zero() {
                    v = v.minus(&lead.times(&a[(r, j)]));
                }
                a[(i, j)] = if trivial_prev || v.is_zero() {
                    v
                } else {
                    v.exact_div(&prev)
                };
            }
            a[(i, c)] = D::zero();
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    Echelon { u: a, pivots, swaps }
}

pub fn bareiss<D: Domain>(m: &Matrix<D>) -> Echelon<D> {
    bareiss_limited(m, m.cols())
}

fn clear<F: Fraction>(m: &Matrix<F>) -> Matrix<F::Base> {
    Matrix::from_rows(m.row_vecs().iter().map(|r| F::clear_row(r)).collect())
}

pub fn rank<F: Fraction>(m: &Matrix<F>) -> usize {
    bareiss(&clear(m)).pivots.len()
}

pub fn rank_domain<D: Domain>(m: &Matrix<D>) -> usize {
    bareiss(m).pivots.len()
}

/// Basis of `{v : m v = 0}`; the `k`-th vector has a 1 in the `k`-th free
/// column and 0 in the other free columns, which makes the basis canonical.
pub fn nullspace<F: Fraction>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let ech = bareiss(&clear(m));
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !ech.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![F::zero(); n];
            x[f] = F::one();
            for (k, &c) in ech.pivots.iter().enumerate().rev() {
                let mut s = F::zero();
                for j in c + 1..n {
                    let u = &ech.u[(k, j)];
                    if !u.is_zero() && !x[j].is_zero() {
                        s = s.plus(&F::embed(u).times(&x[j]));
                    }
                }
                if !s.is_zero() {
                    x[c] = s.negate().divide(&F::embed(&ech.u[(k, c)]));
                }
            }
            x
        })
        .collect()
}

pub fn determinant<D: Domain>(m: &Matrix<D>) -> D {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return D::one();
    }
    let ech = bareiss(m);
    if ech.pivots.len() < n {
        return D::zero();
    }
    let d = ech.u[(n - 1, n - 1)].clone();
    if ech.swaps % 2 == 1 {
        d.negate()
    } else {
        d
    }
}

/// Solve `a x = b` without fractions: returns `(det a, adj(a)·b)`.
pub fn solve_fraction_free<D: Domain>(a: &Matrix<D>, b: &Matrix<D>) -> Result<(D, Matrix<D>)> {
    if !a.is_square() || a.rows() != b.rows() {
        return Err(Error::Dimension(format!(
            "solve: {}x{} with {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let n = a.rows();
    if n == 0 {
        return Ok((D::one(), b.clone()));
    }
    let ech = bareiss_limited(&a.hcat(b), n);
    if ech.pivots.len() < n {
        return Err(Error::Singular);
    }
    let u = &ech.u;
    let d = u[(n - 1, n - 1)].clone();
    let k = b.cols();
    let mut y = Matrix::<D>::zeros(n, k);
    for col in 0..k {
        for i in (0..n).rev() {
            let mut s = d.times(&u[(i, n + col)]);
            for j in i + 1..n {
                if !u[(i, j)].is_zero() && !y[(j, col)].is_zero() {
                    s = s.minus(&u[(i, j)].times(&y[(j, col)]));
                }
            }
            y[(i, col)] = if s.is_zero() { s } else { s.exact_div(&u[(i, i)]) };
        }
    }
    if ech.swaps % 2 == 1 {
        Ok((d.negate(), y.negate()))
    } else {
        Ok((d, y))
    }
}

/// `(det m, adj m)` with `m · adj = det · I`.
pub fn invert_via_adjugate<D: Domain>(m: &Matrix<D>) -> Result<(D, Matrix<D>)> {
    solve_fraction_free(m, &Matrix::identity(m.rows()))
}

/// `Σ_k (−θ)^k`, available when θ is nilpotent; `None` otherwise.
pub fn neumann_inverse<S: Ring>(theta: &Matrix<S>) -> Option<Matrix<S>> {
    let n = theta.rows();
    let neg = theta.negate();
    let mut term = Matrix::identity(n);
    let mut sum = Matrix::zeros(n, n);
    for _ in 0..=n {
        if term.is_zero() {
            return Some(sum);
        }
        sum = sum.plus(&term);
        term = term.times(&neg);
    }
    term.is_zero().then_some(sum)
}

/// Reduced row echelon form over a field (zero entries are skipped).
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let inv = a[(r, c)].inverse();
        for j in c..cols {
            if !a[(r, j)].is_zero() {
                a[(r, j)] = a[(r, j)].times(&inv);
            }
        }
        let support: Vec<usize> = (c + 1..cols).filter(|&j| !a[(r, j)].is_zero()).collect();
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for &j in &support {
                a[(i, j)] = a[(i, j)].minus(&f.times(&a[(r, j)]));
            }
            a[(i, c)] = F::zero();
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn inverse<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>> {
    if !m.is_square() {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    let n = m.rows();
    let (r, piv) = rref(&m.hcat(&Matrix::identity(n)));
    if piv.len() < n || piv[n - 1] != n - 1 {
        return Err(Error::Singular);
    }
    Ok(Matrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
}

/// One solution of `a x = b` (free variables set to 0), or `None` if inconsistent.
pub fn solve<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Option<Matrix<F>> {
    let n = a.cols();
    let (r, piv) = rref(&a.hcat(b));
    if piv.iter().any(|&c| c >= n) {
        return None;
    }
    let mut x = Matrix::zeros(n, b.cols());
    for (k, &c) in piv.iter().enumerate() {
        for j in 0..b.cols() {
            x[(c, j)] = r[(k, n + j)].clone();
        }
    }
    Some(x)
}

/// Coordinates of `v` in the (independent) family `basis`.
pub fn coordinates<F: Field>(basis: &[Vec<F>], v: &[F]) -> Option<Vec<F>> {
    let a = Matrix::from_cols(v.len(), basis);
    let b = Matrix::from_cols(v.len(), &[v.to_vec()]);
    solve(&a, &b).map(|x| x.col(0))
}

pub fn in_span<F: Field>(basis: &[Vec<F>], v: &[F]) -> bool {
    coordinates(basis, v).is_some()
}

/// Indices of a maximal independent subfamily, chosen greedily from the front.
pub fn independent_subset<F: Fraction>(vecs: &[Vec<F>], len: usize) -> Vec<usize> {
    if vecs.is_empty() {
        return vec![];
    }
    bareiss(&clear(&Matrix::from_cols(len, vecs))).pivots
}

pub fn rank_of<F: Fraction>(vecs: &[Vec<F>], len: usize) -> usize {
    independent_subset(vecs, len).len()
}

/// Replace a family by an independent spanning subfamily.
pub fn basis_of_span<F: Fraction>(vecs: &[Vec<F>], len: usize) -> Vec<Vec<F>> {
    independent_subset(vecs, len)
        .into_iter()
        .map(|i| vecs[i].clone())
        .collect()
}

/// Whether two families span the same space.
pub fn same_span<F: Fraction>(a: &[Vec<F>], b: &[Vec<F>], len: usize) -> bool {
    let ra = rank_of(a, len);
    let rb = rank_of(b, len);
    let both: Vec<Vec<F>> = a.iter().chain(b).cloned().collect();
    ra == rb && rank_of(&both, len) == ra
}

/// Value at `t = 0` of a polynomial matrix.
pub fn eval_poly_matrix(m: &Matrix<UniPoly>, t: &Rational) -> Matrix<Rational> {
    m.map(|p| p.eval(t))
}

/// Turn a ℚ(t)-basis (as columns) into polynomial columns with the same span
/// whose values at `t = 0` are linearly independent.
pub fn column_normalize(a: &Matrix<RationalFn>) -> Result<Matrix<UniPoly>> {
    let rows = a.rows();
    let mut cols: Vec<Vec<UniPoly>> = a
        .columns()
        .iter()
        .map(|c| strip_t_power(RationalFn::clear_row(c)))
        .collect();
    loop {
        let at0: Vec<Vec<Rational>> = cols
            .iter()
            .map(|c| c.iter().map(|p| p.coeff(0)).collect())
            .collect();
        let rel = nullspace(&Matrix::from_cols(rows, &at0));
        let Some(c) = rel.first() else { break };
        // Replace the highest-degree column in the relation's support; the total
        // degree strictly drops, so the loop terminates.
        let deg = |v: &Vec<UniPoly>| v.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
        let j = (0..cols.len())
            .filter(|&j| !c[j].is_zero())
            .max_by_key(|&j| (deg(&cols[j]), std::cmp::Reverse(j)))
            .expect("nonzero relation");
        let coeffs: Vec<UniPoly> = c
            .iter()
            .map(|x| UniPoly::constant(x.divide(&c[j])))
            .collect();
        cols[j] = strip_t_power(lin_comb(&coeffs, &cols, rows));
        if cols[j].iter().all(|p| p.is_zero()) {
            return Err(Error::Input("column_normalize: columns are dependent over Q(t)".into()));
        }
    }
    Ok(Matrix::from_cols(rows, &cols))
}

fn strip_t_power(col: Vec<UniPoly>) -> Vec<UniPoly> {
    let v = col.iter().filter_map(|p| p.valuation()).min().unwrap_or(0);
    col.into_iter().map(|p| p.shift_down(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{q, qf};
    use num_bigint::BigInt;

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn nullspace_trivial_cases() {
        assert_eq!(nullspace(&Matrix::<Rational>::zeros(2, 2)).len(), 2);
        assert!(nullspace(&Matrix::<Rational>::identity(3)).is_empty());
    }

    #[test]
    fn nullspace_vectors_are_killed() {
        let m = qm(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(rank(&m) + ns.len(), 4);
    }

    #[test]
    fn determinant_with_row_swaps() {
        let m = qm(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(determinant(&m), q(-2));
        let z = Matrix::from_rows(vec![
            vec![BigInt::from(0), BigInt::from(2)],
            vec![BigInt::from(3), BigInt::from(1)],
        ]);
        assert_eq!(determinant(&z), BigInt::from(-6));
    }

    #[test]
    fn adjugate_identity_and_product() {
        let (d, adj) = invert_via_adjugate(&Matrix::<UniPoly>::identity(3)).unwrap();
        assert_eq!(d, UniPoly::one());
        assert_eq!(adj, Matrix::identity(3));
        let m = Matrix::from_rows(vec![
            vec![p(&[0, 1]), p(&[1]), p(&[2, 0, 1])],
            vec![p(&[1, 1]), p(&[0]), p(&[0, 3])],
            vec![p(&[0]), p(&[1, -1]), p(&[5])],
        ]);
        let (d, adj) = invert_via_adjugate(&m).unwrap();
        assert_eq!(m.times(&adj), Matrix::identity(3).scale(&d));
        assert_eq!(d, determinant(&m));
    }

    #[test]
    fn singular_adjugate_is_reported() {
        let m = Matrix::from_rows(vec![vec![p(&[0, 1]), p(&[0, 2])], vec![p(&[1]), p(&[2])]]);
        assert!(matches!(invert_via_adjugate(&m), Err(Error::Singular)));
    }

    #[test]
    fn neumann_matches_inverse_for_nilpotent() {
        let theta = qm(&[&[0, 1, 2], &[0, 0, 3], &[0, 0, 0]]);
        let s = neumann_inverse(&theta).unwrap();
        let inv = inverse(&Matrix::identity(3).plus(&theta)).unwrap();
        assert_eq!(s, inv);
        assert!(neumann_inverse(&Matrix::<Rational>::identity(2)).is_none());
    }

    #[test]
    fn column_normalize_examples() {
        let f = |c: &[i64]| RationalFn::from_poly(p(c));
        // Columns (1, t) and (1, t + t²): equal at 0, independent over ℚ(t).
        let a = Matrix::from_rows(vec![vec![f(&[1]), f(&[1])], vec![f(&[0, 1]), f(&[0, 1, 1])]]);
        let out = column_normalize(&a).unwrap();
        assert_eq!(rank(&eval_poly_matrix(&out, &q(0))), 2);
        assert!(same_span(&out.map(|p| RationalFn::from_poly(p.clone())).columns(), &a.columns(), 2));
        // (1, t) and (t, t²) are proportional, so no normalization exists.
        let dep = Matrix::from_rows(vec![vec![f(&[1]), f(&[0, 1])], vec![f(&[0, 1]), f(&[0, 0, 1])]]);
        assert!(column_normalize(&dep).is_err());
        let single = Matrix::from_rows(vec![vec![f(&[0, 0, 0, 1])], vec![f(&[0, 0, 0, 0, 0, 1])]]);
        let out = column_normalize(&single).unwrap();
        assert_eq!(out.col(0), vec![p(&[1]), p(&[0, 0, 1])]);
        // A denominator is cleared.
        let frac = Matrix::from_rows(vec![vec![RationalFn::new(p(&[1]), p(&[1, 1]))], vec![f(&[2])]]);
        let out = column_normalize(&frac).unwrap();
        assert_eq!(out.col(0), vec![p(&[1]), p(&[2, 2])]);
    }

    #[test]
    fn solve_and_coordinates() {
        let a = qm(&[&[1, 1], &[1, -1], &[2, 0]]);
        let b = Matrix::from_cols(3, &[vec![q(3), q(1), q(4)]]);
        assert_eq!(solve(&a, &b).unwrap().col(0), vec![q(2), q(1)]);
        let bad = Matrix::from_cols(3, &[vec![q(3), q(1), q(5)]]);
        assert!(solve(&a, &bad).is_none());
        assert_eq!(
            coordinates(&[vec![q(2), q(0)], vec![q(0), q(4)]], &[q(1), q(1)]).unwrap(),
            vec![qf(1, 2), qf(1, 4)]
        );
    }
}
