//! Nilpotent points in the projective closure of a conjugation orbit: the
//! separating varieties `X_k^r`, the dominance test `θ ⊴ χ`, and the
//! constructive 1-PS family reaching `J_χ`.

use serde::Serialize;

use super::partition::Partition;
use super::spec::{block_diagonal, nilpotent_matrix, JordanSpec};
use crate::error::{Error, Result};
use crate::exact::{Matrix, Rational, Ring, UniPoly};

/// Membership of a spec in `X_k^r` with the multiplicity choice that
/// minimizes `rank Π (x − μ_i)^{m_i}` over `Σ m_i = k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XkrMembership {
    pub k: usize,
    pub r: usize,
    pub member: bool,
    pub min_rank: usize,
    pub multiplicities: Vec<usize>,
}

/// Rank of `Π (x − μ_i)^{m_i}` for the given multiplicities.
pub fn product_rank(spec: &JordanSpec, m: &[usize]) -> usize {
    spec.blocks().iter().zip(m).map(|(b, &mi)| b.sizes.nilpotent_power_rank(mi)).sum()
}

/// Raising `m_i` by one lowers the rank by `(λ_i^T)_{m_i+1}`, which is
/// non-increasing in `m_i`, so taking the `k` largest gains is optimal.
pub fn in_xkr(spec: &JordanSpec, k: usize, r: usize) -> XkrMembership {
    let transposes: Vec<Partition> = spec.blocks().iter().map(|b| b.sizes.transpose()).collect();
    let mut m = vec![0usize; transposes.len()];
    for _ in 0..k {
        let (best, _) = transposes
            .iter()
            .enumerate()
            .map(|(i, t)| (i, t.part(m[i])))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("non-empty spec");
        m[best] += 1;
    }
    let min_rank = product_rank(spec, &m);
    XkrMembership { k, r, member: min_rank <= r, min_rank, multiplicities: m }
}

/// The nilpotent criterion `Σ_{θ_i > k} (θ_i − k) ≤ r`.
pub fn nilpotent_in_xkr(theta: &Partition, k: usize, r: usize) -> bool {
    theta.nilpotent_power_rank(k) <= r
}

/// The diagonalizable criterion `λ_1 + … + λ_k ≥ n − r`.
pub fn diagonalizable_in_xkr(spectrum: &Partition, k: usize, r: usize) -> bool {
    spectrum.prefix_sums(k).last().copied().unwrap_or(0) + r >= spectrum.n()
}

#[derive(Clone, Debug, Serialize)]
pub struct Separator {
    /// Least `ℓ` (1-based) with `θ_1+…+θ_ℓ > χ_1+…+χ_ℓ`.
    pub ell: usize,
    pub k: usize,
    pub r: usize,
    /// The multiplicities `λ_{i,ℓ+1}` and the resulting rank (equal to `r`).
    pub spec_side: XkrMembership,
    /// `rank(J_θ^k)`, which exceeds `r`.
    pub theta_rank: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClosureEvidence {
    Separator(Separator),
    /// `J_χ` is reached by the witness family; `J_θ` lies in the closure of
    /// `J_χ` because `θ ⊴ χ`.
    Family { family: Option<WitnessFamily>, theta_is_chi: bool },
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureDecision {
    pub chi: Partition,
    pub theta: Partition,
    pub contained: bool,
    /// `θ = (1,…,1)` is the zero matrix, which is not a projective point.
    pub theta_is_zero: bool,
    pub evidence: ClosureEvidence,
}

pub fn closure_contains_nilpotent(spec: &JordanSpec, theta: &Partition) -> Result<ClosureDecision> {
    let n = spec.n();
    if theta.n() != n {
        return Err(Error::Dimension(format!("θ is a partition of {} but the matrix is {n}×{n}", theta.n())));
    }
    if spec.is_zero_matrix() {
        return Err(Error::ZeroPoint);
    }
    let chi = spec.chi();
    let contained = chi.dominates(theta)?;
    let theta_is_zero = theta.part(0) == 1;
    let evidence = if contained {
        let family = if spec.values().is_ok() { Some(witness_family(spec)?) } else { None };
        ClosureEvidence::Family { family, theta_is_chi: *theta == chi }
    } else {
        ClosureEvidence::Separator(separator(spec, theta, &chi)?)
    };
    Ok(ClosureDecision { chi, theta: theta.clone(), contained, theta_is_zero, evidence })
}

fn separator(spec: &JordanSpec, theta: &Partition, chi: &Partition) -> Result<Separator> {
    let len = theta.len().max(chi.len());
    let (ts, cs) = (theta.prefix_sums(len), chi.prefix_sums(len));
    let ell = (0..len).find(|&i| ts[i] > cs[i]).ok_or_else(|| Error::Verification("θ ⊴ χ has no violation".into()))? + 1;
    let k = chi.part(ell);
    let r: usize = (0..ell).map(|i| chi.part(i) - k).sum();
    let m: Vec<usize> = spec.blocks().iter().map(|b| b.sizes.part(ell)).collect();
    let spec_rank = product_rank(spec, &m);
    let theta_rank = theta.nilpotent_power_rank(k);
    if spec_rank != r || theta_rank <= r || m.iter().sum::<usize>() != k {
        return Err(Error::Verification(format!("separator (k, r) = ({k}, {r}) failed: ranks {spec_rank}, {theta_rank}")));
    }
    Ok(Separator {
        ell,
        k,
        r,
        spec_side: XkrMembership { k, r, member: true, min_rank: spec_rank, multiplicities: m },
        theta_rank,
    })
}

/// Companion matrix of a monic `p = Xᵐ + c_{m−1}X^{m−1} + … + c_0`: first
/// column `(−c_{m−1}, …, −c_0)`, ones on the superdiagonal.
pub fn companion(p: &UniPoly) -> Matrix<Rational> {
    let m = p.degree().expect("nonzero polynomial");
    Matrix::from_fn(m, m, |i, j| {
        if j == 0 {
            p.coeff(m - 1 - i).negate()
        } else if j == i + 1 {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessFamily {
    /// Block sizes `χ_1 ≥ χ_2 ≥ …` of `x′ = x′_1 ⊕ x′_2 ⊕ …`.
    pub chi: Partition,
    #[serde(skip)]
    pub x_prime: Matrix<Rational>,
    /// `A(t) = diag(t, t², …, tⁿ)`.
    pub weights: Vec<usize>,
    /// `t·A(t) x′ A(t)⁻¹`, entries `t^{1+i−j} x′_{ij}`.
    #[serde(skip)]
    pub curve: Matrix<UniPoly>,
    #[serde(skip)]
    pub leading: Matrix<Rational>,
}

/// Group one Jordan block per eigenvalue into `x_j` (size `χ_j`), replace each
/// by its companion matrix, and scale by `diag(t, …, tⁿ)`.
pub fn witness_family(spec: &JordanSpec) -> Result<WitnessFamily> {
    let vals = spec.values()?;
    let chi = spec.chi();
    let mut companions = vec![];
    for j in 0..chi.len() {
        let mut p = UniPoly::constant(Rational::one());
        for (b, mu) in spec.blocks().iter().zip(&vals) {
            let e = b.sizes.part(j);
            p = p.times(&UniPoly::new(vec![mu.negate(), Rational::one()]).pow(e as u32));
        }
        companions.push(companion(&p));
    }
    let x_prime = block_diagonal(&companions);
    let back = JordanSpec::from_matrix(&x_prime)?;
    if !same_jordan_data(spec, &back) {
        return Err(Error::Verification("x′ is not conjugate to x".into()));
    }
    let n = spec.n();
    let curve = Matrix::from_fn(n, n, |i, j| {
        let c = &x_prime[(i, j)];
        if c.is_zero() {
            UniPoly::zero()
        } else {
            assert!(i + 1 >= j, "companion blocks have no entries above the superdiagonal");
            UniPoly::monomial(c.clone(), 1 + i - j)
        }
    });
    let leading = crate::exact::eval_poly_matrix(&curve, &Rational::zero());
    if leading != nilpotent_matrix(&chi) {
        return Err(Error::Verification("leading term of the family is not J_χ".into()));
    }
    Ok(WitnessFamily { chi, x_prime, weights: (1..=n).collect(), curve, leading })
}

/// Same eigenvalues with the same block sizes, in any order.
pub fn same_jordan_data(a: &JordanSpec, b: &JordanSpec) -> bool {
    a.blocks().len() == b.blocks().len()
        && a.blocks().iter().all(|x| b.blocks().iter().any(|y| x.eigenvalue == y.eigenvalue && x.sizes == y.sizes))
}

/// `J_n + 𝒞(c(t))` with `c(t) = (t c_{n−1}, t² c_{n−2}, …, tⁿ c_0)`; its
/// eigenvalues are `tλ_i` where `λ_i` are the roots of `Xⁿ + Σ c_i X^i`.
pub fn jn_family(c: &[Rational]) -> Matrix<UniPoly> {
    let n = c.len();
    Matrix::from_fn(n, n, |i, j| {
        let mut e = if j == i + 1 { UniPoly::constant(Rational::one()) } else { UniPoly::zero() };
        if j == 0 {
            // row i carries −c_{n−1−i} t^{i+1}; c is given as (c_{n−1}, …, c_0)
            e = e.plus(&UniPoly::monomial(c[i].negate(), i + 1));
        }
        e
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conj::partition::partitions_of;
    use crate::exact::{characteristic_polynomial, eval_poly_matrix, q, qf};

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn x1() -> JordanSpec {
        JordanSpec::from_values(&[(q(1), &[1, 1]), (q(-1), &[1])]).unwrap()
    }

    fn x2() -> JordanSpec {
        JordanSpec::from_values(&[(q(1), &[2]), (q(-1), &[1])]).unwrap()
    }

    #[test]
    fn closing_example_decisions() {
        let (y1, y2) = (p(&[3]), p(&[2, 1]));
        assert!(closure_contains_nilpotent(&x1(), &y2).unwrap().contained);
        let d = closure_contains_nilpotent(&x1(), &y1).unwrap();
        assert!(!d.contained);
        match d.evidence {
            ClosureEvidence::Separator(s) => {
                assert_eq!((s.ell, s.k, s.r), (1, 1, 1));
                assert!(in_xkr(&x1(), s.k, s.r).member);
                assert!(!nilpotent_in_xkr(&y1, s.k, s.r));
            }
            _ => panic!("expected a separator"),
        }
        assert!(closure_contains_nilpotent(&x2(), &y1).unwrap().contained);
        assert!(closure_contains_nilpotent(&x2(), &y2).unwrap().contained);
    }

    #[test]
    fn distinct_eigenvalues_reach_jn() {
        let s = JordanSpec::from_values(&[(q(1), &[1]), (q(2), &[1]), (q(3), &[1]), (q(5), &[1])]).unwrap();
        assert!(closure_contains_nilpotent(&s, &p(&[4])).unwrap().contained);
    }

    #[test]
    fn xkr_criteria() {
        assert!(diagonalizable_in_xkr(&p(&[2, 1]), 1, 1));
        assert!(in_xkr(&x1(), 1, 1).member);
        assert!(!nilpotent_in_xkr(&p(&[3]), 1, 1));
        assert!(!in_xkr(&JordanSpec::nilpotent(&p(&[3])).unwrap(), 1, 1).member);
        let got: Vec<bool> = (0..=3).map(|r| in_xkr(&x2(), 1, r).member).collect();
        assert_eq!(got, vec![false, false, true, true]);
    }

    #[test]
    fn size_mismatch_and_zero_matrix() {
        assert!(closure_contains_nilpotent(&x1(), &p(&[2])).is_err());
        let zero = JordanSpec::nilpotent(&p(&[1, 1])).unwrap();
        assert!(closure_contains_nilpotent(&zero, &p(&[1, 1])).is_err());
        assert!(closure_contains_nilpotent(&x1(), &p(&[1, 1, 1])).unwrap().theta_is_zero);
    }

    #[test]
    fn witness_families() {
        let d = JordanSpec::from_values(&[(q(1), &[1]), (q(2), &[1]), (q(3), &[1])]).unwrap();
        let w = witness_family(&d).unwrap();
        assert_eq!(w.leading, nilpotent_matrix(&p(&[3])));
        let w = witness_family(&x2()).unwrap();
        assert_eq!(w.chi, p(&[3]));
        // x′ is a single companion block of (X − 1)²(X + 1)
        assert_eq!(characteristic_polynomial(&w.x_prime), UniPoly::from_ints(&[1, -1, -1, 1]));
        let w = witness_family(&x1()).unwrap();
        assert_eq!(w.leading, nilpotent_matrix(&p(&[2, 1])));
    }

    #[test]
    fn jn_family_scales_eigenvalues() {
        // roots 1, 2, −3: X³ − 7X + 6
        let c = [q(0), q(-7), q(6)];
        let fam = jn_family(&c);
        assert_eq!(eval_poly_matrix(&fam, &q(0)), nilpotent_matrix(&p(&[3])));
        let t0 = qf(1, 3);
        let roots = crate::exact::rational_roots(&characteristic_polynomial(&eval_poly_matrix(&fam, &t0))).unwrap();
        let got: Vec<Rational> = roots.into_iter().map(|(r, _)| r).collect();
        assert_eq!(got, vec![q(-1), qf(1, 3), qf(2, 3)]);
    }

    #[test]
    fn optimal_choice_matches_exact_rank() {
        let spec = JordanSpec::from_values(&[(q(0), &[3, 1]), (q(1), &[2, 2]), (q(-2), &[1])]).unwrap();
        let x = spec.matrix().unwrap();
        let n = spec.n();
        let vals = spec.values().unwrap();
        for k in 0..=n {
            let best = in_xkr(&spec, k, 0).min_rank;
            // brute force over all multiplicity vectors with sum k
            let mut min = usize::MAX;
            for a in 0..=k {
                for b in 0..=(k - a) {
                    let c = k - a - b;
                    let mut prod = Matrix::identity(n);
                    for (mu, e) in vals.iter().zip([a, b, c]) {
                        let f = x.minus(&Matrix::identity(n).scale(mu));
                        prod = prod.times(&f.pow(e as u32));
                    }
                    min = min.min(crate::exact::rank(&prod));
                }
            }
            assert_eq!(best, min, "k = {k}");
        }
    }

    fn specs_of(n: usize) -> Vec<JordanSpec> {
        // multisets of partitions with total size n
        fn go(rem: usize, min_key: Option<&Partition>, cur: &mut Vec<Partition>, out: &mut Vec<Vec<Partition>>) {
            if rem == 0 {
                out.push(cur.clone());
                return;
            }
            for m in 1..=rem {
                for part in partitions_of(m) {
                    if min_key.is_some_and(|k| (part.n(), &part) < (k.n(), k)) {
                        continue;
                    }
                    cur.push(part.clone());
                    go(rem - m, Some(&part), cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = vec![];
        go(n, None, &mut vec![], &mut out);
        out.iter().map(|ps| JordanSpec::from_partitions(ps).unwrap()).collect()
    }

    #[test]
    fn separators_are_sound_and_decision_is_monotone() {
        for n in 1..=6 {
            let thetas = partitions_of(n);
            for spec in specs_of(n) {
                for theta in &thetas {
                    let d = closure_contains_nilpotent(&spec, theta).unwrap();
                    match &d.evidence {
                        ClosureEvidence::Separator(s) => {
                            assert!(in_xkr(&spec, s.k, s.r).member);
                            assert!(!nilpotent_in_xkr(theta, s.k, s.r));
                        }
                        ClosureEvidence::Family { .. } => assert!(d.contained),
                    }
                    if d.contained {
                        for lower in &thetas {
                            if theta.dominates(lower).unwrap() {
                                assert!(closure_contains_nilpotent(&spec, lower).unwrap().contained);
                            }
                        }
                    }
                }
            }
        }
    }
}
