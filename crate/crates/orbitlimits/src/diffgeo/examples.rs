//! The sphere, diagonal-adjoint and two-block orbits.

use super::curvature::{curvature_tables, riemann_and_ricci, second_fundamental_form, CurvatureData, OrbitFrame};
use crate::error::{Error, Result};
use crate::exact::{q, Field, Matrix, Rational, Ring};
use crate::lie::{LieElement, Representation};

fn unit_vec(m: usize, i: usize) -> Vec<Rational> {
    (0..m).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()
}

/// `SO(n)` on `ℝⁿ` at `x = r·e₁`, fields `S^i` with `S^i(1,i) = −1/r`,
/// `S^i(i,1) = 1/r` (so `X_i(x) = e_i`), normal basis `e₁`.
pub fn sphere_frame(n: usize, r: &Rational) -> Result<OrbitFrame> {
    if n < 2 || r.is_zero() {
        return Err(Error::Input("sphere needs n ≥ 2 and r ≠ 0".into()));
    }
    let inv = r.inverse();
    let gens = (1..n)
        .map(|i| {
            let mut s = Matrix::zeros(n, n);
            s[(0, i)] = inv.negate();
            s[(i, 0)] = inv.clone();
            s
        })
        .collect();
    let mut x = vec![Rational::zero(); n];
    x[0] = r.clone();
    OrbitFrame::with_normal(x, gens, vec![unit_vec(n, 0)])
}

pub fn sphere_curvature(n: usize, r: &Rational) -> Result<CurvatureData> {
    Ok(riemann_and_ricci(second_fundamental_form(&sphere_frame(n, r)?)?))
}

/// The printed Ricci value `(n−1)/r²` on the diagonal.
pub fn sphere_ricci_printed(n: usize, r: &Rational) -> Result<Rational> {
    if r.is_zero() {
        return Err(Error::Input("r must be nonzero".into()));
    }
    Ok(q(n as i64 - 1).divide(&r.times(r)))
}

fn diag(d: &[Rational]) -> Matrix<Rational> {
    let n = d.len();
    Matrix::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { Rational::zero() })
}

/// `e_ij = E_ij/(λ_j − λ_i)`
fn adjoint_field(lambda: &[Rational], i: usize, j: usize) -> LieElement {
    LieElement::unit(lambda.len(), i, j).scale(&lambda[j].minus(&lambda[i]).inverse())
}

/// Adjoint orbit of `diag(λ)` with fields `e_ij = E_ij/(λ_j − λ_i)`, `i ≠ j`
/// (in row-major order), so that `e_ij · x = E_ij`; normal basis `E_ii`.
pub fn adjoint_frame(lambda: &[Rational]) -> Result<(OrbitFrame, Vec<(usize, usize)>)> {
    let n = lambda.len();
    for i in 0..n {
        for j in 0..i {
            if lambda[i] == lambda[j] {
                return Err(Error::Input("eigenvalues must be distinct".into()));
            }
        }
    }
    let rep = Representation::conj(n);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let fields: Vec<LieElement> = pairs.iter().map(|&(i, j)| adjoint_field(lambda, i, j)).collect();
    let x = rep.matrix_to_vec(&diag(lambda));
    let normal = (0..n).map(|i| unit_vec(n * n, i * n + i)).collect();
    let frame = OrbitFrame::from_rep(&rep, x, &fields)?.replace_normal(normal)?;
    Ok((frame, pairs))
}

#[derive(Clone, Debug)]
pub struct AdjointEntry {
    pub p: usize,
    pub q: usize,
    /// Diagonal of `Π(X_qp, X_pq)` on the orthonormal tangent frame `X_ij(x) = E_ij`:
    /// `(E_pp − E_qq)/(λ_q − λ_p)`.
    pub computed: Vec<Rational>,
    /// Diagonal of `[e_pq, e_qp]`, the section's recipe (derivative of the
    /// field `ρ(e_pq)` along the direction `e_qp`).
    pub bracket: Vec<Rational>,
    /// The printed `d_pq`: `−(λ_q−λ_p)²` at `p`, `(λ_q−λ_p)²` at `q`.
    pub printed: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub struct AdjointReport {
    pub entries: Vec<AdjointEntry>,
    /// `Π(e_rs, e_pq) = 0` unless `(r,s) = (q,p)`.
    pub support_ok: bool,
    /// `bracket = computed/(λ_p − λ_q)`: the two differ only by the scaling
    /// of the direction `e_qp = E_qp/(λ_p − λ_q)`.
    pub bracket_is_rescaled_frame: bool,
    pub bracket_equals_printed: bool,
    /// Signs and support of the printed table agree with the bracket recipe.
    pub sign_pattern_matches: bool,
    /// The printed entries are the reciprocals of the recipe's.
    pub printed_is_reciprocal: bool,
    /// `yᵀS_i y = 0`: the osculation condition of the projective chart.
    pub osculates: bool,
}

pub fn adjoint_report(lambda: &[Rational]) -> Result<AdjointReport> {
    let n = lambda.len();
    let (frame, pairs) = adjoint_frame(lambda)?;
    let data = curvature_tables(&frame)?;
    let idx = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).expect("off-diagonal pair");
    let support_ok = pairs.iter().enumerate().all(|(a, &(r, s))| {
        pairs.iter().enumerate().all(|(b, &(p, qq))| (r, s) == (qq, p) || data.pi[a][b].iter().all(|c| c.is_zero()))
    });
    let mut entries = vec![];
    for p in 0..n {
        for qq in 0..n {
            if p == qq {
                continue;
            }
            let computed = data.pi[idx(qq, p)][idx(p, qq)].clone();
            let br = adjoint_field(lambda, p, qq).matrix().commutator(adjoint_field(lambda, qq, p).matrix());
            let bracket = (0..n).map(|i| br[(i, i)].clone()).collect();
            let d = lambda[qq].minus(&lambda[p]);
            let d2 = d.times(&d);
            let printed = (0..n)
                .map(|i| {
                    if i == p {
                        d2.negate()
                    } else if i == qq {
                        d2.clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            entries.push(AdjointEntry { p, q: qq, computed, bracket, printed });
        }
    }
    let sign = |x: &Rational| if x.is_zero() { 0 } else if *x > Rational::zero() { 1 } else { -1 };
    let osculates = (0..frame.len()).all(|i| crate::exact::dot(&frame.x, &frame.tangent_vector(i)).is_zero());
    Ok(AdjointReport {
        support_ok,
        bracket_is_rescaled_frame: entries.iter().all(|e| {
            let s = lambda[e.p].minus(&lambda[e.q]);
            e.computed.iter().zip(&e.bracket).all(|(c, b)| c.divide(&s) == *b)
        }),
        bracket_equals_printed: entries.iter().all(|e| e.bracket == e.printed),
        sign_pattern_matches: entries
            .iter()
            .all(|e| e.bracket.iter().zip(&e.printed).all(|(a, b)| sign(a) == sign(b))),
        printed_is_reciprocal: entries
            .iter()
            .all(|e| e.bracket.iter().zip(&e.printed).all(|(a, b)| (a.is_zero() && b.is_zero()) || a.times(b) == Rational::one())),
        osculates,
        entries,
    })
}

/// `x = diag(λI_m, μI_m)`; returns `(Π(X,Y), Π(Y,X))` for `X ∈ 𝒮⁺`, `Y ∈ 𝒮⁻`
/// given by their off-diagonal blocks, each as a `2m×2m` matrix.
pub fn block_pi(
    lambda: &Rational,
    mu: &Rational,
    x_block: &Matrix<Rational>,
    y_block: &Matrix<Rational>,
) -> Result<(Matrix<Rational>, Matrix<Rational>)> {
    let m = x_block.rows();
    if lambda == mu || lambda.is_zero() || mu.is_zero() || !x_block.is_square() || y_block.rows() != m || !y_block.is_square() {
        return Err(Error::Input("block example needs λ ≠ μ nonzero and m×m blocks".into()));
    }
    let n = 2 * m;
    let rep = Representation::conj(n);
    let x = Matrix::from_fn(n, n, |i, j| match (i == j, i < m) {
        (true, true) => lambda.clone(),
        (true, false) => mu.clone(),
        _ => Rational::zero(),
    });
    let plus = Matrix::from_fn(n, n, |i, j| if i < m && j >= m { x_block[(i, j - m)].clone() } else { Rational::zero() });
    let minus = Matrix::from_fn(n, n, |i, j| if i >= m && j < m { y_block[(i - m, j)].clone() } else { Rational::zero() });
    // [s⁺, x] = (μ−λ)s⁺ and [s⁻, x] = (λ−μ)s⁻: rescale so the fields pass through the blocks.
    let gp = LieElement::from_matrix(plus.scale(&mu.minus(lambda).inverse()))?;
    let gm = LieElement::from_matrix(minus.scale(&lambda.minus(mu).inverse()))?;
    let frame = OrbitFrame::from_rep(&rep, rep.matrix_to_vec(&x), &[gp, gm])?;
    Ok((rep.vec_to_matrix(&frame.pi_vector(0, 1)), rep.vec_to_matrix(&frame.pi_vector(1, 0))))
}

/// The printed value `block-diag(XY, −YX)` for `X ∈ 𝒮⁺`, `Y ∈ 𝒮⁻`.
pub fn block_pi_printed(x_block: &Matrix<Rational>, y_block: &Matrix<Rational>) -> Matrix<Rational> {
    let m = x_block.rows();
    let xy = x_block.times(y_block);
    let yx = y_block.times(x_block);
    Matrix::from_fn(2 * m, 2 * m, |i, j| match (i < m, j < m) {
        (true, true) => xy[(i, j)].clone(),
        (false, false) => yx[(i - m, j - m)].negate(),
        _ => Rational::zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffgeo::curvature::riemann_antisymmetric;
    use crate::exact::qf;

    #[test]
    fn sphere_second_fundamental_form() {
        let r = qf(3, 2);
        let c = sphere_curvature(4, &r).unwrap();
        let inv = r.inverse();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { inv.negate() } else { Rational::zero() };
                assert_eq!(c.pi[i][j], vec![want]);
            }
        }
        assert!(c.skew);
        assert_eq!(c.beta_is_minus_alpha, Some(true));
        assert!(riemann_antisymmetric(c.riemann.as_ref().unwrap()));
    }

    #[test]
    fn sphere_ricci_by_gauss_equation() {
        // The Gauss equation gives (n−2)/r² on S^{n−1} ⊂ ℝⁿ.
        for n in 3..=5 {
            let r = q(2);
            let c = sphere_curvature(n, &r).unwrap();
            let ric = c.ricci.unwrap();
            let want = qf(n as i64 - 2, 4);
            for j in 0..n - 1 {
                for k in 0..n - 1 {
                    assert_eq!(ric[j][k], if j == k { want.clone() } else { Rational::zero() });
                }
            }
            assert_ne!(want, sphere_ricci_printed(n, &r).unwrap());
        }
    }

    #[test]
    fn sphere_rejects_non_orthonormal_fields() {
        let r = q(2);
        let f = sphere_frame(3, &r).unwrap();
        let scaled = OrbitFrame::with_normal(f.x.clone(), f.generators.iter().map(|s| s.scale(&q(2))).collect(), f.normal.clone())
            .unwrap();
        assert!(second_fundamental_form(&scaled).is_err());
    }

    #[test]
    fn adjoint_table() {
        let lam = [q(1), q(2), q(4)];
        let r = adjoint_report(&lam).unwrap();
        assert!(r.support_ok && r.bracket_is_rescaled_frame && r.sign_pattern_matches && r.osculates);
        assert!(!r.bracket_equals_printed && r.printed_is_reciprocal);
        let e = r.entries.iter().find(|e| e.p == 0 && e.q == 2).unwrap();
        assert_eq!(e.computed, vec![qf(1, 3), q(0), qf(-1, 3)]);
        assert_eq!(e.bracket, vec![qf(-1, 9), q(0), qf(1, 9)]);
        assert_eq!(e.printed, vec![q(-9), q(0), q(9)]);
        assert!(adjoint_frame(&[q(1), q(1)]).is_err());
    }

    #[test]
    fn block_case() {
        let x = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(0), q(-1)]]);
        let y = Matrix::from_rows(vec![vec![q(3), q(0)], vec![q(1), q(1)]]);
        let (pxy, pyx) = block_pi(&q(2), &q(3), &x, &y).unwrap();
        assert_eq!(pxy, block_pi_printed(&x, &y));
        assert_eq!(pxy, pyx);
        let (p2, _) = block_pi(&q(1), &q(3), &x, &y).unwrap();
        assert_eq!(p2, block_pi_printed(&x, &y).scale(&qf(1, 2)));
    }
}
