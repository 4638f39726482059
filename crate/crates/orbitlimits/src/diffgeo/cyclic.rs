//! The cyclic shift `c` under conjugation: the tables `p_{ij}^k` of
//! `Π(L_i, L_j) = Σ_k p_{ij}^k c^k`, the chart form, and the compression `γ`.

use nalgebra::DMatrix;

use super::curvature::{chart_second_fundamental_form, curvature_tables, riemann_and_ricci, riemann_antisymmetric, OrbitFrame};
use crate::error::{Error, Result};
use crate::exact::{basis_of_span, q, qf, to_f64, Field, Matrix, Rational, Ring};
use crate::lie::{LieElement, Representation};

/// `P[i][j]`.
pub type IntTable = Vec<Vec<i64>>;

/// `c(i, j) = 1` iff `j − i ≡ 1 (mod n)`, indices in `ℤ_n`.
pub fn cyclic_shift(n: usize) -> Matrix<Rational> {
    Matrix::from_fn(n, n, |i, j| if (i + 1) % n == j { Rational::one() } else { Rational::zero() })
}

/// Diagonal bases for the tables: `ℓ = diag(1..n)`, its centred form
/// `ℓ̄ = ℓ − (n+1)/2`, and `diag(0..n−1)` (the indexing of the closed form).
/// They differ by multiples of `I = c⁰`, which leave every `p_{ij}^k` unchanged.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagonalBase {
    Ell,
    Centered,
    ZeroBased,
}

pub fn diagonal(n: usize, base: DiagonalBase) -> Matrix<Rational> {
    let shift = match base {
        DiagonalBase::Ell => q(1),
        DiagonalBase::Centered => q(1).minus(&qf(n as i64 + 1, 2)),
        DiagonalBase::ZeroBased => q(0),
    };
    Matrix::from_fn(n, n, |i, j| if i == j { q(i as i64).plus(&shift) } else { Rational::zero() })
}

/// `L_i = ℓ·c^i`.
pub fn l_basis(n: usize, base: DiagonalBase) -> Vec<Matrix<Rational>> {
    let d = diagonal(n, base);
    let c = cyclic_shift(n);
    (0..n).map(|i| d.times(&c.pow(i as u32))).collect()
}

/// `(1/n)·Tr([L_j, [L_i, c]]·(c^k)ᵀ)`.
pub fn p_trace(n: usize, ls: &[Matrix<Rational>], i: usize, j: usize, k: usize) -> Rational {
    let c = cyclic_shift(n);
    let m = ls[j].commutator(&ls[i].commutator(&c));
    m.times(&c.pow(k as u32).transpose()).trace().divide(&q(n as i64))
}

/// `(n−1) − (i+j)` when `k ≠ 0` and `k ≡ i+j+1 (mod n)`, else 0.
pub fn p_closed(n: usize, i: usize, j: usize, k: usize) -> i64 {
    if k != 0 && (i + j + 1) % n == k {
        n as i64 - 1 - (i + j) as i64
    } else {
        0
    }
}

/// `P^k = (p_{ij}^k)` for `k = 0..n−1`, from the trace formula.
pub fn p_tables(n: usize, base: DiagonalBase) -> Result<Vec<IntTable>> {
    let ls = l_basis(n, base);
    (0..n)
        .map(|k| {
            let mut out = vec![vec![0i64; n]; n];
            for i in 0..n {
                for j in 0..n {
                    let p = p_trace(n, &ls, i, j, k);
                    if !p.is_integer() {
                        return Err(Error::Verification(format!("p_{i}{j}^{k} = {p} is not an integer")));
                    }
                    out[i][j] = p.to_integer().try_into().map_err(|_| Error::Verification("overflow".into()))?;
                }
            }
            Ok(out)
        })
        .collect()
}

/// The four printed tables `P¹ … P⁴` at `n = 5`.
pub fn printed_p5() -> Vec<[[i64; 5]; 5]> {
    vec![
        [[4, 0, 0, 0, 0], [0, 0, 0, 0, -1], [0, 0, 0, -1, 0], [0, 0, -1, 0, 0], [0, -1, 0, 0, 0]],
        [[0, 3, 0, 0, 0], [3, 0, 0, 0, 0], [0, 0, 0, 0, -2], [0, 0, 0, -2, 0], [0, 0, -2, 0, 0]],
        [[0, 0, 2, 0, 0], [0, 2, 0, 0, 0], [2, 0, 0, 0, 0], [0, 0, 0, 0, -3], [0, 0, 0, -3, 0]],
        [[0, 0, 0, 1, 0], [0, 0, 1, 0, 0], [0, 1, 0, 0, 0], [1, 0, 0, 0, 0], [0, 0, 0, 0, -4]],
    ]
}

pub fn format_table(m: &IntTable) -> String {
    let w = m.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
    m.iter()
        .map(|row| row.iter().map(|x| format!("{x:>w$}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

/// `γ(s)² = ‖[s, c]‖² / ‖s‖²` (Frobenius norms).
pub fn gamma_sq(s: &Matrix<Rational>) -> Result<Rational> {
    let n = s.rows();
    let t = s.commutator(&cyclic_shift(n));
    let nt = t.data().iter().fold(Rational::zero(), |a, x| a.plus(&x.times(x)));
    let ns = s.data().iter().fold(Rational::zero(), |a, x| a.plus(&x.times(x)));
    if ns.is_zero() {
        return Err(Error::Input("γ is undefined at 0".into()));
    }
    Ok(nt.divide(&ns))
}

/// Minimum of `γ²` over `𝒮_k` (support on the `k`-th cyclic diagonal, zero sum).
pub fn gamma_sq_min_on_sk(n: usize, k: usize) -> f64 {
    // Orthonormal basis of {d : Σd = 0} from the centring projector.
    let center = DMatrix::<f64>::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 } - 1.0 / n as f64);
    let svd = center.svd(true, false);
    let u = svd.u.expect("left singular vectors");
    let cols: Vec<usize> = (0..n).filter(|&i| svd.singular_values[i] > 0.5).collect();
    let basis = DMatrix::<f64>::from_fn(n, cols.len(), |i, j| u[(i, cols[j])]);
    // d ↦ [diag(d)c^k, c], as an n²×n map.
    let to_dm = |m: &Matrix<Rational>| DMatrix::<f64>::from_fn(n, n, |i, j| to_f64(&m[(i, j)]));
    let (c, ck) = (to_dm(&cyclic_shift(n)), to_dm(&cyclic_shift(n).pow(k as u32)));
    let mut map = DMatrix::<f64>::zeros(n * n, n);
    for r in 0..n {
        let mut d = DMatrix::<f64>::zeros(n, n);
        d[(r, r)] = 1.0;
        let s = &d * &ck;
        let t = &s * &c - &c * &s;
        for (idx, v) in t.transpose().iter().enumerate() {
            map[(idx, r)] = *v;
        }
    }
    let a = &map * &basis;
    let form = a.transpose() * a;
    form.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min)
}

#[derive(Clone, Debug)]
pub struct CyclicReport {
    pub n: usize,
    /// `P^k`, `k = 0..n−1`, by the trace formula with the `ℓ̄` basis.
    pub tables: Vec<IntTable>,
    pub closed_form_matches: bool,
    /// `ℓ`, `ℓ̄` and `diag(0..n−1)` give identical tables.
    pub base_independent: bool,
    /// `p_{ij}^0 = 0`.
    pub no_identity_component: bool,
    /// `ℓ̄ ∈ 𝒮`, and `ℓ_{ij} = c^i ℓ̄ c^{−j}` lies in `𝒮_{i−j}`.
    pub ell_ij_in_sk: bool,
    /// Rank of `L_0 = {ℓ_{jj}}` inside `𝒮_0` (dimension `n−1`).
    pub lk_rank: usize,
    pub gamma_sq_ell_bar: Rational,
    /// `min γ²` on each `𝒮_k`.
    pub gamma_sq_min: Vec<f64>,
    /// `ℓ̄` attains the minimum of `γ`.
    pub ell_bar_minimizes_gamma: bool,
}

fn cyclic_diag_index(n: usize, i: usize, j: usize) -> usize {
    (j + n - i) % n
}

fn in_sk(m: &Matrix<Rational>, k: usize) -> bool {
    let n = m.rows();
    let support = (0..n).all(|i| (0..n).all(|j| cyclic_diag_index(n, i, j) == k || m[(i, j)].is_zero()));
    let sum = (0..n).fold(Rational::zero(), |a, i| a.plus(&m[(i, (i + k) % n)]));
    support && sum.is_zero()
}

pub fn cyclic_shift_suite(n: usize) -> Result<CyclicReport> {
    if n < 3 {
        return Err(Error::Input("the cyclic-shift suite needs n ≥ 3".into()));
    }
    let tables = p_tables(n, DiagonalBase::Centered)?;
    let closed_form_matches =
        (0..n).all(|k| (0..n).all(|i| (0..n).all(|j| tables[k][i][j] == p_closed(n, i, j, k))));
    let base_independent =
        [DiagonalBase::Ell, DiagonalBase::ZeroBased].iter().map(|&b| p_tables(n, b)).all(|t| t.as_ref() == Ok(&tables));
    let no_identity_component = tables[0].iter().flatten().all(|&x| x == 0);

    let c = cyclic_shift(n);
    let cinv = c.pow(n as u32 - 1);
    let lbar = diagonal(n, DiagonalBase::Centered);
    let ell_ij = |i: usize, j: usize| c.pow(i as u32).times(&lbar).times(&cinv.pow(j as u32));
    let ell_ij_in_sk = in_sk(&lbar, 0) && (0..n).all(|i| (0..n).all(|j| in_sk(&ell_ij(i, j), (i + n - j) % n)));
    let lk_rank = {
        let vecs: Vec<Vec<Rational>> = (0..n).map(|j| ell_ij(j, j).data().to_vec()).collect();
        basis_of_span(&vecs, n * n).len()
    };
    let gamma_sq_ell_bar = gamma_sq(&lbar)?;
    let gamma_sq_min: Vec<f64> = (0..n).map(|k| gamma_sq_min_on_sk(n, k)).collect();
    let global_min = gamma_sq_min.iter().cloned().fold(f64::INFINITY, f64::min);
    let ell_bar_minimizes_gamma = (to_f64(&gamma_sq_ell_bar) - global_min).abs() < 1e-9;
    Ok(CyclicReport {
        n,
        tables,
        closed_form_matches,
        base_independent,
        no_identity_component,
        ell_ij_in_sk,
        lk_rank,
        gamma_sq_ell_bar,
        gamma_sq_min,
        ell_bar_minimizes_gamma,
    })
}

/// The frame at `c` with fields `L_0 … L_{n−1}` and normal basis `c⁰ … c^{n−1}`.
pub fn cyclic_frame(n: usize) -> Result<OrbitFrame> {
    let rep = Representation::conj(n);
    let c = cyclic_shift(n);
    let fields: Vec<LieElement> =
        l_basis(n, DiagonalBase::Centered).into_iter().map(LieElement::from_matrix).collect::<Result<_>>()?;
    let normal = (0..n).map(|k| rep.matrix_to_vec(&c.pow(k as u32))).collect();
    OrbitFrame::from_rep(&rep, rep.matrix_to_vec(&c), &fields)?.replace_normal(normal)
}

#[derive(Clone, Debug)]
pub struct CyclicCurvature {
    /// Coordinates of `Π(L_i, L_j)` on `c^k` agree with the trace tables.
    pub frame_matches_tables: bool,
    pub riemann_antisymmetric: bool,
    pub ricci: Vec<Vec<Rational>>,
    /// Tangent space `⟂ c` (osculation).
    pub osculates: bool,
    pub chart_matches_projected_ambient: bool,
    /// The `i` with `Π_C(L_i, L_i) = 0` in the projective chart.
    pub chart_self_zero: Vec<usize>,
}

pub fn cyclic_curvature(n: usize) -> Result<CyclicCurvature> {
    let frame = cyclic_frame(n)?;
    let tables = p_tables(n, DiagonalBase::Centered)?;
    let data = riemann_and_ricci(curvature_tables(&frame)?);
    let frame_matches_tables = (0..n)
        .all(|i| (0..n).all(|j| (0..n).all(|k| data.pi[i][j][k] == q(tables[k][i][j]))));
    let chart = chart_second_fundamental_form(&frame)?;
    let chart_self_zero = (0..n).filter(|&i| chart.pi_vectors[i][i].iter().all(|x| x.is_zero())).collect();
    Ok(CyclicCurvature {
        frame_matches_tables,
        riemann_antisymmetric: riemann_antisymmetric(data.riemann.as_ref().expect("computed")),
        ricci: data.ricci.expect("computed"),
        osculates: chart.osculates,
        chart_matches_projected_ambient: chart.matches_projected_ambient == Some(true),
        chart_self_zero,
    })
}
