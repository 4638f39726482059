//! Normal slices at the nilpotents `J_n` and `J_{a,b}` under conjugation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::partition::Partition;
use super::spec::{nilpotent_matrix, nilpotent_signature};
use crate::error::{Error, Result};
use crate::exact::{
    characteristic_polynomial, minimal_polynomial, nullspace, q, rank_of, rational_roots, Matrix, Rational, Ring,
};
use crate::lie::{stabilizer_algebra, tangent_space, LieElement, MPoly, Representation};
use crate::local_model::{build_local_model, ComplementPolicy, LocalModel};

fn unit_matrix(n: usize, i: usize, j: usize) -> Matrix<Rational> {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = Rational::one();
    m
}

/// `𝒞_n(c)`: first column `(−c_{n−1}, …, −c_0)`; `c` is given as `(c_{n−1}, …, c_0)`.
pub fn companion_normal(c: &[Rational]) -> Matrix<Rational> {
    let n = c.len();
    Matrix::from_fn(n, n, |i, j| if j == 0 { c[i].negate() } else { Rational::zero() })
}

/// The model at `J_n` with `𝒮` = matrices vanishing on the first row and
/// `N = 𝒞_n`.
pub fn jn_model(n: usize) -> Result<LocalModel> {
    let rep = Representation::conj(n);
    let x = rep.matrix_to_vec(&nilpotent_matrix(&Partition::single(n)));
    let s: Vec<LieElement> = (1..n).flat_map(|i| (0..n).map(move |j| LieElement::unit(n, i, j))).collect();
    let normals: Vec<Vec<Rational>> = (0..n).map(|i| rep.matrix_to_vec(&unit_matrix(n, i, 0))).collect();
    build_local_model(&rep, &x, &ComplementPolicy::Explicit { s, n: normals })
}

#[derive(Clone, Debug, Serialize)]
pub struct JnSliceReport {
    pub n: usize,
    /// `T_{J_n}O` is cut out by the `n` diagonal-sum conditions.
    pub tangent_is_trace_conditions: bool,
    pub normal_is_companion: bool,
    /// `det(X − J_n − 𝒞_n(c)) = Xⁿ + c_{n−1}X^{n−1} + … + c_0` symbolically.
    pub charpoly_is_companion: bool,
    pub min_poly_degree_n: bool,
    pub theta_squared_zero: bool,
    /// Stabilizer dimensions at the sampled slice points.
    pub stabilizer_dims: Vec<usize>,
}

impl JnSliceReport {
    pub fn all_ok(&self) -> bool {
        self.tangent_is_trace_conditions
            && self.normal_is_companion
            && self.charpoly_is_companion
            && self.min_poly_degree_n
            && self.theta_squared_zero
            && self.stabilizer_dims.iter().all(|&d| d == self.n)
    }
}

pub fn jn_slice_report(n: usize, samples: usize, seed: u64) -> Result<JnSliceReport> {
    if n < 2 {
        return Err(Error::Input("J_n slices need n ≥ 2".into()));
    }
    let model = jn_model(n)?;
    let rep = &model.rep;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Σ_i b_{i,i+k} = 0 for k = 0, −1, …, −(n−1)
    let conditions: Vec<Vec<Rational>> = (0..n)
        .map(|k| {
            let m = Matrix::from_fn(n, n, |i, j| if i == j + k { Rational::one() } else { Rational::zero() });
            rep.matrix_to_vec(&m)
        })
        .collect();
    let cut = nullspace(&Matrix::from_rows(conditions));
    let to = tangent_space(rep, &model.x);
    let tangent_is_trace_conditions = cut.len() == to.len() && crate::exact::same_span(&cut, &to, n * n);

    let normal_is_companion = model.n.iter().all(|v| {
        let m = rep.vec_to_matrix(v);
        (0..n).all(|i| (1..n).all(|j| m[(i, j)].is_zero()))
    }) && model.n.len() == n;

    // symbolic: variables c_{n−1}, …, c_0, X
    let nv = n + 1;
    let xvar = MPoly::var(nv, n);
    let rows: Vec<Vec<MPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut e = MPoly::zero(nv);
                    if i == j {
                        e = e.add(&xvar);
                    }
                    if j == i + 1 {
                        e = e.sub(&MPoly::constant(nv, Rational::one()));
                    }
                    if j == 0 {
                        e = e.add(&MPoly::var(nv, i));
                    }
                    e
                })
                .collect()
        })
        .collect();
    let mut expected = xvar.pow(n as u32);
    for i in 0..n {
        // c_{n−1−i} multiplies X^{n−1−i}
        expected = expected.add(&MPoly::var(nv, i).mul(&xvar.pow((n - 1 - i) as u32)));
    }
    let charpoly_is_companion = MPoly::det(&rows) == expected;

    let mut min_poly_degree_n = true;
    let mut theta_squared_zero = true;
    for v in &model.n {
        let t = model.theta_matrix(v);
        theta_squared_zero &= t.times(&t).is_zero();
    }
    let mut stabilizer_dims = vec![];
    for _ in 0..samples {
        let c: Vec<Rational> = (0..n).map(|_| q(rng.gen_range(-5..=5))).collect();
        let nm = companion_normal(&c);
        let nv = rep.matrix_to_vec(&nm);
        let t = model.theta_matrix(&nv);
        theta_squared_zero &= t.times(&t).is_zero();
        let point = nilpotent_matrix(&Partition::single(n)).plus(&nm);
        min_poly_degree_n &= minimal_polynomial(&point).degree() == Some(n);
        let stab = model.slice_stabilizer(&nv)?;
        stabilizer_dims.push(stab.elements.len());
    }
    Ok(JnSliceReport {
        n,
        tangent_is_trace_conditions,
        normal_is_companion,
        charpoly_is_companion,
        min_poly_degree_n,
        theta_squared_zero,
        stabilizer_dims,
    })
}

/// Stabilizer of `Z_4 = J_4 + C_4` via 𝒮-completion; returns the completion
/// of `h = J_4³`.
pub fn z4_completion() -> Result<(LieElement, LieElement)> {
    let model = jn_model(4)?;
    let rep = &model.rep;
    let nv = rep.matrix_to_vec(&unit_matrix(4, 3, 0));
    let stab = model.slice_stabilizer(&nv)?;
    let h = LieElement(nilpotent_matrix(&Partition::single(4)).pow(3));
    let hc = crate::lie::lie_coordinates(&stab.h_parts, &h)
        .ok_or_else(|| Error::Verification("J_4³ is not in the parameterizing subspace".into()))?;
    let g = crate::lie::combine(&hc, &stab.elements);
    Ok((h, g))
}

/// Coordinates of `J_{a,b} + 𝒞` in the order `c_{a−1}..c_0, d_{b−1}..d_0, α_1..α_b, β_1..β_b`.
pub fn jab_normal(a: usize, b: usize, c: &[Rational], d: &[Rational], alpha: &[Rational], beta: &[Rational]) -> Matrix<Rational> {
    let n = a + b;
    let mut m = Matrix::zeros(n, n);
    for i in 0..a {
        m[(i, 0)] = c[i].negate();
    }
    for i in 0..b {
        m[(a + i, a)] = d[i].negate();
        m[(a - 1, a + i)] = alpha[i].clone();
        m[(a + i, 0)] = beta[i].clone();
    }
    m
}

pub fn jab(a: usize, b: usize) -> Matrix<Rational> {
    nilpotent_matrix(&Partition::from_unsorted(vec![a, b]))
}

#[derive(Clone, Debug, Serialize)]
pub struct JabSliceReport {
    pub a: usize,
    pub b: usize,
    pub stabilizer_dim: usize,
    pub normal_dim: usize,
    pub normal_transverse: bool,
    pub samples: usize,
    /// Every sample has minimal polynomial of degree ≥ a.
    pub min_poly_bound: bool,
    /// Every checked eigenspace has dimension ≤ 2 and is determined by `(v_1, v_{a+1})`.
    pub kernel_bound: bool,
    /// Samples with minimal polynomial of degree exactly `a`, and whether the
    /// divisibility statement held on all of them.
    pub degree_a_samples: usize,
    pub degree_a_divisibility: bool,
    /// `(i, signature of J_i(1))` for `i = 1..b`.
    pub family_signatures: Vec<(usize, Partition)>,
}

impl JabSliceReport {
    pub fn all_ok(&self) -> bool {
        self.stabilizer_dim == self.a + 3 * self.b
            && self.normal_dim == self.a + 3 * self.b
            && self.normal_transverse
            && self.min_poly_bound
            && self.kernel_bound
            && self.degree_a_divisibility
            && self
                .family_signatures
                .iter()
                .all(|(i, s)| *s == Partition::from_unsorted(vec![self.a + self.b - i + 1, i - 1]))
    }
}

fn eigenspace_ok(t: &Matrix<Rational>, lam: &Rational, a: usize) -> bool {
    let n = t.rows();
    let shifted = t.minus(&Matrix::identity(n).scale(lam));
    let ker = nullspace(&shifted);
    if ker.len() > 2 {
        return false;
    }
    // the projection v ↦ (v_1, v_{a+1}) is injective on the eigenspace
    let proj: Vec<Vec<Rational>> = ker.iter().map(|v| vec![v[0].clone(), v[a].clone()]).collect();
    rank_of(&proj, 2) == ker.len()
}

pub fn jab_slice_report(a: usize, b: usize, samples: usize, seed: u64) -> Result<JabSliceReport> {
    if b == 0 || a < b {
        return Err(Error::Input("J_{a,b} slices need a ≥ b ≥ 1".into()));
    }
    let n = a + b;
    let rep = Representation::conj(n);
    let x = jab(a, b);
    let xv = rep.matrix_to_vec(&x);
    let stabilizer_dim = stabilizer_algebra(&rep, &xv).len();
    let zeros = |k: usize| vec![Rational::zero(); k];
    let mut normals = vec![];
    for slot in 0..(a + 3 * b) {
        let mut v = zeros(a + 3 * b);
        v[slot] = Rational::one();
        let (c, rest) = v.split_at(a);
        let (d, rest) = rest.split_at(b);
        let (al, be) = rest.split_at(b);
        normals.push(rep.matrix_to_vec(&jab_normal(a, b, c, d, al, be)));
    }
    let normal_dim = rank_of(&normals, n * n);
    let to = tangent_space(&rep, &xv);
    let all: Vec<Vec<Rational>> = to.iter().chain(&normals).cloned().collect();
    let normal_transverse = to.len() + normals.len() == n * n && rank_of(&all, n * n) == n * n;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rnd = |k: usize, rng: &mut ChaCha8Rng| -> Vec<Rational> { (0..k).map(|_| q(rng.gen_range(-3..=3))).collect() };
    let mut min_poly_bound = true;
    let mut kernel_bound = true;
    let mut degree_a_samples = 0;
    let mut degree_a_divisibility = true;
    for s in 0..samples {
        let (c, d, alpha, beta) = if s % 2 == 0 {
            (rnd(a, &mut rng), rnd(b, &mut rng), rnd(b, &mut rng), rnd(b, &mut rng))
        } else {
            // β = 0 and T_b's polynomial dividing T_a's: T_a = companion of
            // (X − r)^{a−b}·p_b with p_b = (X − r')^b
            let (r1, r2) = (q(rng.gen_range(-2..=2)), q(rng.gen_range(-2..=2)));
            let lin = |r: &Rational| crate::exact::UniPoly::new(vec![r.negate(), Rational::one()]);
            let pb = lin(&r2).pow(b as u32);
            let pa = lin(&r1).pow((a - b) as u32).times(&pb);
            let coeffs = |p: &crate::exact::UniPoly, m: usize| -> Vec<Rational> { (0..m).map(|i| p.coeff(m - 1 - i)).collect() };
            let alpha = if s % 4 == 1 { zeros(b) } else { rnd(b, &mut rng) };
            (coeffs(&pa, a), coeffs(&pb, b), alpha, zeros(b))
        };
        let t = x.plus(&jab_normal(a, b, &c, &d, &alpha, &beta));
        let mp = minimal_polynomial(&t);
        let deg = mp.degree().unwrap_or(0);
        min_poly_bound &= deg >= a;
        let mut lams = vec![Rational::zero()];
        for (r, _) in rational_roots(&characteristic_polynomial(&t))? {
            if !lams.contains(&r) {
                lams.push(r);
            }
        }
        lams.push(q(rng.gen_range(-4..=4)));
        kernel_bound &= lams.iter().all(|l| eigenspace_ok(&t, l, a));
        if deg == a {
            degree_a_samples += 1;
            let ta = Matrix::from_fn(a, a, |i, j| t[(i, j)].clone());
            let tb = Matrix::from_fn(b, b, |i, j| t[(a + i, a + j)].clone());
            let pb = minimal_polynomial(&tb);
            degree_a_divisibility &= mp == minimal_polynomial(&ta) && mp.div_rem(&pb).1.degree().is_none();
        }
    }

    let mut family_signatures = vec![];
    for i in 1..=b {
        let sig_at = |t: Rational| -> Result<Partition> {
            let mut alpha = zeros(b);
            alpha[i - 1] = t;
            nilpotent_signature(&x.plus(&jab_normal(a, b, &zeros(a), &zeros(b), &alpha, &zeros(b))))
        };
        let sig = sig_at(Rational::one())?;
        if sig_at(crate::exact::qf(7, 3))? != sig {
            return Err(Error::Verification(format!("J_{i}(t) changes signature with t")));
        }
        family_signatures.push((i, sig));
    }
    Ok(JabSliceReport {
        a,
        b,
        stabilizer_dim,
        normal_dim,
        normal_transverse,
        samples,
        min_poly_bound,
        kernel_bound,
        degree_a_samples,
        degree_a_divisibility,
        family_signatures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn jn_reports() {
        for n in [2, 3, 4, 5] {
            let r = jn_slice_report(n, 4, 11).unwrap();
            assert!(r.all_ok(), "{r:?}");
        }
    }

    #[test]
    fn j2_stabilizer_at_zero() {
        let model = jn_model(2).unwrap();
        let zero = vec![Rational::zero(); 4];
        assert_eq!(model.slice_stabilizer(&zero).unwrap().elements.len(), 2);
    }

    #[test]
    fn z4_cyclic_stabilizer() {
        let (h, g) = z4_completion().unwrap();
        let cyc = LieElement::from_ints(&[&[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        assert_eq!(g, cyc);
        let s = g.sub(&h);
        assert_eq!(s, LieElement::from_ints(&[&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]));
    }

    #[test]
    fn jab_reports() {
        let r = jab_slice_report(2, 1, 12, 3).unwrap();
        assert_eq!(r.stabilizer_dim, 5);
        assert!(r.all_ok(), "{r:?}");
        let r = jab_slice_report(3, 2, 12, 5).unwrap();
        assert!(r.all_ok(), "{r:?}");
        let sigs: Vec<Partition> = r.family_signatures.iter().map(|(_, s)| s.clone()).collect();
        assert_eq!(sigs, vec![p(&[5]), p(&[4, 1])]);
        assert!(r.degree_a_samples > 0);
        let r = jab_slice_report(2, 2, 8, 9).unwrap();
        assert!(r.all_ok(), "{r:?}");
    }

    #[test]
    fn jab_kernel_at_zero() {
        let x = jab(3, 2);
        assert_eq!(nullspace(&x).len(), 2);
    }
}
