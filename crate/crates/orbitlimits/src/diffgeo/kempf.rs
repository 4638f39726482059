//! Weight supports for the diagonal torus and the minimization of
//! `f(t, ℓ) = Σ_χ ‖v_χ‖² t^{−⟨ℓ,χ⟩}` over `O_{n−2} = {Σp = 0, ‖p‖ = 1}`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{dot, to_f64, vec_is_zero, Rational, Ring};
use crate::lie::Representation;

/// `Ξ(v)` with `‖v_χ‖²` (standard coordinates of `V`).
#[derive(Clone, Debug, PartialEq)]
pub struct WeightSupport {
    pub n: usize,
    /// Sorted by weight; every `norm_sq > 0`.
    pub entries: Vec<(Vec<i64>, Rational)>,
}

/// Weight of basis vector `k`: the exponent vector on forms, `e_i − e_j` for
/// the matrix entry `(i, j)`.
pub fn basis_weight_vector(rep: &Representation, k: usize) -> Vec<i64> {
    let n = rep.n();
    match rep {
        Representation::Sym(_) => {
            rep.monomial_basis().expect("forms have a monomial basis")[k].iter().map(|&e| e as i64).collect()
        }
        Representation::Conj(_) => {
            let mut w = vec![0; n];
            w[k / n] += 1;
            w[k % n] -= 1;
            w
        }
    }
}

pub fn kempf_support(rep: &Representation, v: &[Rational]) -> Result<WeightSupport> {
    if v.len() != rep.dim() {
        return Err(Error::Dimension(format!("vector of length {} in a space of dimension {}", v.len(), rep.dim())));
    }
    if vec_is_zero(v) {
        return Err(Error::ZeroPoint);
    }
    let mut groups: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
    for (k, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let e = groups.entry(basis_weight_vector(rep, k)).or_insert_with(Rational::zero);
        *e = e.plus(&c.times(c));
    }
    Ok(WeightSupport { n: rep.n(), entries: groups.into_iter().collect() })
}

fn pairing_q(ell: &[Rational], chi: &[i64]) -> Rational {
    ell.iter().zip(chi).fold(Rational::zero(), |a, (l, &c)| a.plus(&l.times(&Rational::from_integer(c.into()))))
}

fn pairing(ell: &[f64], chi: &[i64]) -> f64 {
    ell.iter().zip(chi).map(|(l, &c)| l * c as f64).sum()
}

/// `μ(ℓ, v) = min_{χ ∈ Ξ(v)} ⟨ℓ, χ⟩`, exactly.
pub fn mu_exact(ell: &[Rational], support: &WeightSupport) -> Result<Rational> {
    if ell.len() != support.n {
        return Err(Error::Dimension("ℓ and the torus".into()));
    }
    Ok(support.entries.iter().map(|(chi, _)| pairing_q(ell, chi)).min().expect("nonempty support"))
}

pub fn mu(ell: &[f64], support: &WeightSupport) -> Result<f64> {
    if ell.len() != support.n {
        return Err(Error::Dimension("ℓ and the torus".into()));
    }
    Ok(support.entries.iter().map(|(chi, _)| pairing(ell, chi)).fold(f64::INFINITY, f64::min))
}

/// `v_ℓ = Σ_{⟨ℓ,χ⟩ = μ} v_χ` and its degree `μ(ℓ, v)`.
pub fn leading_term_along(rep: &Representation, ell: &[Rational], v: &[Rational]) -> Result<(Rational, Vec<Rational>)> {
    let support = kempf_support(rep, v)?;
    let m = mu_exact(ell, &support)?;
    let out = v
        .iter()
        .enumerate()
        .map(|(k, c)| if pairing_q(ell, &basis_weight_vector(rep, k)) == m { c.clone() } else { Rational::zero() })
        .collect();
    Ok((m, out))
}

/// As `leading_term_along` for a float `ℓ`; pairings within `tol` of the
/// minimum count as minimal.
pub fn leading_term_along_f64(rep: &Representation, ell: &[f64], v: &[Rational], tol: f64) -> Result<(f64, Vec<Rational>)> {
    let support = kempf_support(rep, v)?;
    let m = mu(ell, &support)?;
    let out = v
        .iter()
        .enumerate()
        .map(|(k, c)| if pairing(ell, &basis_weight_vector(rep, k)) <= m + tol { c.clone() } else { Rational::zero() })
        .collect();
    Ok((m, out))
}

/// `ln f(t, ℓ)` with `s = ln t`, by log-sum-exp (same minimizers as `f`).
pub fn log_f(s: f64, ell: &[f64], w: &[(Vec<f64>, f64)]) -> f64 {
    let e: Vec<f64> = w.iter().map(|(chi, ln_norm)| ln_norm - s * dot_f(ell, chi)).collect();
    let mx = e.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    mx + e.iter().map(|x| (x - mx).exp()).sum::<f64>().ln()
}

/// `∇ ln f = (∇f)/f`, with `∂f/∂ℓ_i = −ln t · Σ_χ χ_i ‖v_χ‖² t^{−⟨ℓ,χ⟩}`.
fn grad_log_f(s: f64, ell: &[f64], w: &[(Vec<f64>, f64)]) -> Vec<f64> {
    let e: Vec<f64> = w.iter().map(|(chi, ln_norm)| ln_norm - s * dot_f(ell, chi)).collect();
    let mx = e.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let p: Vec<f64> = e.iter().map(|x| (x - mx).exp()).collect();
    let z: f64 = p.iter().sum();
    let mut g = vec![0.0; ell.len()];
    for ((chi, _), pi) in w.iter().zip(&p) {
        for (gi, ci) in g.iter_mut().zip(chi) {
            *gi -= s * ci * pi / z;
        }
    }
    g
}

fn dot_f(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot_f(a, a).sqrt()
}

/// Centre and normalize onto `O_{n−2}`.
pub fn retract(p: &[f64]) -> Option<Vec<f64>> {
    let mean = p.iter().sum::<f64>() / p.len() as f64;
    let c: Vec<f64> = p.iter().map(|x| x - mean).collect();
    let nr = norm(&c);
    (nr > 1e-300).then(|| c.iter().map(|x| x / nr).collect())
}

/// Tangential part at `p`: subtract the mean, then the radial component.
fn project_tangent(p: &[f64], g: &[f64]) -> Vec<f64> {
    let mean = g.iter().sum::<f64>() / g.len() as f64;
    let c: Vec<f64> = g.iter().map(|x| x - mean).collect();
    let r = dot_f(&c, p);
    c.iter().zip(p).map(|(x, y)| x - r * y).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct DescentOptions {
    pub max_iter: usize,
    pub grad_tol: f64,
    pub seed: u64,
    pub random_starts: usize,
    /// Warm-start continuation in `ln t` from `ln t = 1` up to the target.
    pub continuation: bool,
}

impl Default for DescentOptions {
    fn default() -> Self {
        DescentOptions { max_iter: 5000, grad_tol: 1e-10, seed: 0, random_starts: 8, continuation: true }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DescentRun {
    pub start: Vec<f64>,
    pub ell: Vec<f64>,
    pub log_f: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Every accepted step decreased `f`.
    pub monotone: bool,
    /// Largest `|Σp|` and `|‖p‖−1|` after any projection.
    pub max_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DescentResult {
    /// `+∞` when `ln_t` exceeds the `f64` range.
    pub t: f64,
    pub ln_t: f64,
    pub ell: Vec<f64>,
    pub log_f: f64,
    pub mu: f64,
    pub converged: bool,
    pub runs: Vec<DescentRun>,
}

fn weights(support: &WeightSupport) -> Vec<(Vec<f64>, f64)> {
    support.entries.iter().map(|(chi, nsq)| (chi.iter().map(|&c| c as f64).collect(), to_f64(nsq).ln())).collect()
}

fn descend(s: f64, start: &[f64], w: &[(Vec<f64>, f64)], opts: &DescentOptions) -> DescentRun {
    let mut p = start.to_vec();
    let mut val = log_f(s, &p, w);
    let mut monotone = true;
    let mut max_residual: f64 = 0.0;
    let mut step = 1.0 / s.max(1.0);
    let mut converged = false;
    let mut it = 0;
    while it < opts.max_iter {
        let g = project_tangent(&p, &grad_log_f(s, &p, w));
        let gn = norm(&g);
        if gn < opts.grad_tol {
            converged = true;
            break;
        }
        // Backtracking (Armijo) along the retraction.
        let mut accepted = None;
        let mut h = step * 2.0;
        while h > 1e-18 {
            let trial: Vec<f64> = p.iter().zip(&g).map(|(x, y)| x - h * y).collect();
            if let Some(q) = retract(&trial) {
                let v = log_f(s, &q, w);
                if v <= val - 1e-4 * h * gn * gn {
                    accepted = Some((q, v, h));
                    break;
                }
            }
            h *= 0.5;
        }
        let Some((q, v, h)) = accepted else {
            // No decrease representable in floating point: stationary to machine precision.
            converged = gn < 1e-6 * s.max(1.0);
            break;
        };
        monotone &= v <= val;
        let sum: f64 = q.iter().sum();
        max_residual = max_residual.max(sum.abs()).max((norm(&q) - 1.0).abs());
        p = q;
        val = v;
        step = h;
        it += 1;
    }
    DescentRun { start: start.to_vec(), ell: p, log_f: val, iterations: it, converged, monotone, max_residual }
}

/// Starting points: `(e_i − e_j)/√2` for `i ≠ j`, then seeded uniform points.
pub fn start_points(n: usize, opts: &DescentOptions) -> Vec<Vec<f64>> {
    let mut out = vec![];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut p = vec![0.0; n];
                p[i] = 1.0;
                p[j] = -1.0;
                out.extend(retract(&p));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    while out.len() < n * (n - 1) + opts.random_starts {
        let p: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        out.extend(retract(&p));
    }
    out
}

/// Minimize `f(t, ·)` on `O_{n−2}` by projected gradient descent with
/// backtracking, multi-started; the best run is returned with all runs.
pub fn kempf_descent(rep: &Representation, v: &[Rational], t: f64, opts: &DescentOptions) -> Result<DescentResult> {
    if !(t > 1.0) || !t.is_finite() {
        return Err(Error::Input(format!("t must be a finite number > 1, got {t}")));
    }
    kempf_descent_ln(rep, v, t.ln(), opts)
}

/// As [`kempf_descent`], parametrized by `s = ln t` so that `t` beyond the
/// range of `f64` can be reached (`log f` only ever needs `s`).
pub fn kempf_descent_ln(rep: &Representation, v: &[Rational], ln_t: f64, opts: &DescentOptions) -> Result<DescentResult> {
    if !(ln_t > 0.0) || !ln_t.is_finite() {
        return Err(Error::Input(format!("ln t must be a finite number > 0, got {ln_t}")));
    }
    let support = kempf_support(rep, v)?;
    let n = support.n;
    if n < 2 {
        return Err(Error::Input("O_{n−2} is empty for n < 2".into()));
    }
    let w = weights(&support);
    let target = ln_t;
    let schedule: Vec<f64> = if opts.continuation {
        let mut s = vec![];
        let mut x = target.min(1.0);
        while x < target {
            s.push(x);
            x *= 4.0;
        }
        s.push(target);
        s
    } else {
        vec![target]
    };
    let runs: Vec<DescentRun> = start_points(n, opts)
        .iter()
        .map(|p0| {
            let mut p = p0.clone();
            let mut total = 0;
            let mut monotone = true;
            let mut res: f64 = 0.0;
            let mut last = None;
            for &s in &schedule {
                let r = descend(s, &p, &w, opts);
                p = r.ell.clone();
                total += r.iterations;
                monotone &= r.monotone;
                res = res.max(r.max_residual);
                last = Some(r);
            }
            let r = last.expect("nonempty schedule");
            DescentRun { start: p0.clone(), iterations: total, monotone, max_residual: res, ..r }
        })
        .collect();
    let best = runs
        .iter()
        .min_by(|a, b| a.log_f.partial_cmp(&b.log_f).expect("finite values"))
        .expect("at least one start");
    Ok(DescentResult {
        t: ln_t.exp(),
        ln_t,
        ell: best.ell.clone(),
        log_f: best.log_f,
        mu: mu(&best.ell, &support)?,
        converged: best.converged,
        runs: runs.clone(),
    })
}

/// Directions `a/‖a‖` for integer `a` with `Σa = 0`, `|a_i| ≤ res` (first
/// `n−1` coordinates free): the grid of resolution `1/res` on `O_{n−2}`.
pub fn grid_points(n: usize, res: i64) -> Vec<Vec<f64>> {
    let mut out = vec![];
    let mut a = vec![-res; n - 1];
    loop {
        let last: i64 = -a.iter().sum::<i64>();
        if last.abs() <= res && (a.iter().any(|&x| x != 0) || last != 0) {
            let mut p: Vec<f64> = a.iter().map(|&x| x as f64).collect();
            p.push(last as f64);
            let nr = norm(&p);
            out.push(p.iter().map(|x| x / nr).collect());
        }
        let mut i = 0;
        loop {
            if i == n - 1 {
                return out;
            }
            a[i] += 1;
            if a[i] <= res {
                break;
            }
            a[i] = -res;
            i += 1;
        }
    }
}

/// `max μ` over the grid, with the maximizing direction.
pub fn grid_mu_max(support: &WeightSupport, res: i64) -> (f64, Vec<f64>) {
    grid_points(support.n, res)
        .into_iter()
        .map(|p| (mu(&p, support).expect("length matches"), p))
        .max_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"))
        .expect("nonempty grid")
}

#[derive(Clone, Debug, Serialize)]
pub struct KempfPropertyCheck {
    pub alpha: f64,
    /// `(t, μ(ℓ_f(t), v))` over the tested `t`.
    pub samples: Vec<(f64, f64)>,
    /// Smallest tested `t₀` with `μ > α` at every tested `t ≥ t₀`.
    pub t0: Option<f64>,
    /// `t₀` exists and at least `min_tail` tested values lie at or beyond it.
    pub holds: bool,
}

/// Empirical check of the property: past some `t₀`, minimizers of `f(t,·)`
/// lie in `L_α(v)`.
pub fn check_kempf_property(
    rep: &Representation,
    v: &[Rational],
    alpha: f64,
    ts: &[f64],
    min_tail: usize,
    opts: &DescentOptions,
) -> Result<KempfPropertyCheck> {
    let samples: Vec<(f64, f64)> =
        ts.iter().map(|&t| Ok((t, kempf_descent(rep, v, t, opts)?.mu))).collect::<Result<_>>()?;
    let tail = samples.iter().rev().take_while(|(_, m)| *m > alpha).count();
    let t0 = (tail > 0).then(|| samples[samples.len() - tail].0);
    Ok(KempfPropertyCheck { alpha, samples, t0, holds: tail >= min_tail })
}

/// `μ` of a rational direction (exact pairing, then float normalization).
pub fn mu_normalized(ell: &[Rational], support: &WeightSupport) -> Result<f64> {
    let m = to_f64(&mu_exact(ell, support)?);
    Ok(m / to_f64(&dot(ell, ell)).sqrt())
}

/// `ln t` at which descent is compared with the grid; the bias of the
/// minimizer of `log f` is `O(1/ln t)`.
pub const SUITE_LN_T: f64 = 1e5;
/// Grid resolution `1/20`.
pub const SUITE_GRID_RES: i64 = 20;
/// `t` values of the property check, with `α = 0.9·μ*` and at least
/// [`PROPERTY_MIN_TAIL`] trailing values in `L_α`.
pub const PROPERTY_TS: [f64; 8] = [1e1, 1e2, 1e4, 1e8, 1e16, 1e32, 1e64, 1e128];
pub const PROPERTY_ALPHA_FRACTION: f64 = 0.9;
pub const PROPERTY_MIN_TAIL: usize = 3;

#[derive(Clone, Debug)]
pub struct KempfVector {
    pub name: String,
    pub rep: Representation,
    pub v: Vec<Rational>,
}

/// The test set for `n ≤ 4`: nilpotent matrices under conjugation, forms,
/// and two vectors with `max μ = 0`.
pub fn kempf_test_set() -> Vec<KempfVector> {
    let conj = |name: &str, n: usize, entries: &[(usize, usize, i64)]| {
        let rep = Representation::conj(n);
        let mut m = crate::exact::Matrix::zeros(n, n);
        for &(i, j, c) in entries {
            m[(i, j)] = Rational::from_integer(c.into());
        }
        KempfVector { name: name.into(), v: rep.matrix_to_vec(&m), rep }
    };
    let form = |name: &str, nvars: usize, degree: u32, exp: Vec<u32>| {
        let rep = Representation::sym(nvars, degree);
        let v = rep
            .monomial_basis()
            .expect("forms")
            .iter()
            .map(|e| if *e == exp { Rational::one() } else { Rational::zero() })
            .collect();
        KempfVector { name: name.into(), rep, v }
    };
    vec![
        conj("J2", 2, &[(0, 1, 1)]),
        conj("J3", 3, &[(0, 1, 1), (1, 2, 1)]),
        conj("J4", 4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]),
        conj("E13", 3, &[(0, 2, 1)]),
        conj("upper3", 3, &[(0, 1, 1), (0, 2, 2), (1, 2, 3)]),
        conj("J2+J2", 4, &[(0, 1, 1), (2, 3, 1)]),
        conj("E12+E21 in gl3", 3, &[(0, 1, 1), (1, 0, 1)]),
        form("x1^2", 2, 2, vec![2, 0]),
        form("x1^2*x2", 3, 3, vec![2, 1, 0]),
        form("x1*x2", 2, 2, vec![1, 1]),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct KempfCase {
    pub name: String,
    pub n: usize,
    pub mu_descent: f64,
    pub mu_grid: f64,
    pub ell: Vec<f64>,
    pub converged: bool,
    /// Every run decreased `f` monotonically with constraint residuals ≤ 1e-12.
    pub monotone: bool,
    /// Present when `μ* > 0`.
    pub property: Option<KempfPropertyCheck>,
}

pub fn kempf_case(x: &KempfVector, opts: &DescentOptions) -> Result<KempfCase> {
    let support = kempf_support(&x.rep, &x.v)?;
    let r = kempf_descent_ln(&x.rep, &x.v, SUITE_LN_T, opts)?;
    let (mu_grid, _) = grid_mu_max(&support, SUITE_GRID_RES);
    let property = if mu_grid > 1e-9 {
        let alpha = PROPERTY_ALPHA_FRACTION * mu_grid;
        Some(check_kempf_property(&x.rep, &x.v, alpha, &PROPERTY_TS, PROPERTY_MIN_TAIL, opts)?)
    } else {
        None
    };
    Ok(KempfCase {
        name: x.name.clone(),
        n: support.n,
        mu_descent: r.mu,
        mu_grid,
        ell: r.ell.clone(),
        converged: r.converged,
        monotone: r.runs.iter().all(|run| run.monotone && run.max_residual <= 1e-12),
        property,
    })
}

pub fn kempf_suite(opts: &DescentOptions) -> Result<Vec<KempfCase>> {
    kempf_test_set().iter().map(|x| kempf_case(x, opts)).collect()
}
