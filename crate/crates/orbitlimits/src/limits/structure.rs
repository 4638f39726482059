//! Triple stabilizers, the (A)/(B) dichotomy for `𝒦₀`, and the regularity
//! flag for the first-order analysis.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::pipeline::{filtered_dims, homogeneous_basis, limit_algebra_by_conjugation};
use super::{expand_orbit_curve, OnePS, Subject};
use crate::error::{Error, Result};
use crate::exact::{
    exp_nilpotent, inverse, is_nilpotent, jordan_chevalley, nullspace, q, rank_of, solve, vec_is_zero, Matrix,
    Rational, Ring,
};
use crate::lie::{
    bracket, combine, group_act, stabilizer_algebra, stabilizer_in, weight_components, LieElement, Representation,
};

#[derive(Clone, Debug)]
pub struct TripleStabilizers {
    /// Weight-homogeneous elements of `𝒦`, by weight.
    pub pure: Vec<(i64, LieElement)>,
    /// `{k ∈ 𝒦 : [k, ℓ] ∈ 𝒦}`
    pub klf: Vec<LieElement>,
    /// Dimension of the stabilizer of `ℓ·f` inside `𝒦`, computed directly.
    pub klf_direct_dim: usize,
}

impl TripleStabilizers {
    pub fn pure_dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (c, _) in &self.pure {
            *out.entry(*c).or_insert(0) += 1;
        }
        out
    }
}

/// Units `E_ij` shifting V-weights by `chi`.
pub(crate) fn weight_units(rep: &Representation, w: &[i64], chi: i64) -> Vec<LieElement> {
    let n = rep.n();
    let mut out = vec![];
    for i in 0..n {
        for j in 0..n {
            if rep.unit_weight(i, j, w) == chi {
                out.push(LieElement::unit(n, i, j));
            }
        }
    }
    out
}

pub(crate) fn unit_weights(rep: &Representation, w: &[i64]) -> Vec<i64> {
    let n = rep.n();
    let mut ws: Vec<i64> = (0..n * n).map(|k| rep.unit_weight(k / n, k % n, w)).collect();
    ws.sort_unstable();
    ws.dedup();
    ws
}

/// Functionals (as rows) cutting out the span of `basis` in gl(n).
pub(crate) fn annihilator(basis: &[LieElement], n: usize) -> Vec<Vec<Rational>> {
    if basis.is_empty() {
        return (0..n * n)
            .map(|k| (0..n * n).map(|j| if j == k { Rational::one() } else { Rational::zero() }).collect())
            .collect();
    }
    nullspace(&Matrix::from_rows(basis.iter().map(|b| b.to_vec()).collect()))
}

pub(crate) fn apply_rows(rows: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    rows.iter().map(|r| crate::exact::dot(r, v)).collect()
}

pub fn triple_stabilizers(subject: &Subject, lam: &OnePS) -> Result<TripleStabilizers> {
    let rep = &subject.rep;
    let w = &lam.weights;
    let n = rep.n();
    let comps = super::weight_decompose(rep, &subject.v, lam);
    let mut pure = vec![];
    for chi in unit_weights(rep, w) {
        for e in stabilizer_in(rep, &subject.v, &weight_units(rep, w, chi)) {
            for fc in comps.values() {
                if !vec_is_zero(&rep.act(&e, fc)) {
                    return Err(Error::Verification("a pure stabilizer misses a graded component".into()));
                }
            }
            pure.push((chi, e));
        }
    }
    let kb = stabilizer_algebra(rep, &subject.v);
    let ell = lam.ell();
    let ann = annihilator(&kb, n);
    let cols: Vec<Vec<Rational>> = kb
        .iter()
        .map(|k| apply_rows(&ann, &bracket(k, &ell).expect("same gl").to_vec()))
        .collect();
    let klf: Vec<LieElement> = if ann.is_empty() {
        kb.clone()
    } else {
        nullspace(&Matrix::from_cols(ann.len(), &cols))
            .iter()
            .map(|c| combine(c, &kb))
            .collect()
    };
    let ell_f = rep.act(&ell, &subject.v);
    let klf_direct_dim = stabilizer_in(rep, &ell_f, &kb).len();
    Ok(TripleStabilizers {
        pure,
        klf,
        klf_direct_dim,
    })
}

/// Certificates for the two cases of the graded stabilizer split.
#[derive(Clone, Debug)]
pub enum CaseWitness {
    /// `𝒦₀ ⊆ ⊕_{χ<0} 𝒢_χ`: dims of the lower central series of `𝒦₀` (ending
    /// in 0) and whether every basis element is a nilpotent matrix.
    A {
        lower_central_series: Vec<usize>,
        nilpotent_elements: bool,
    },
    /// `k ∈ 𝒦`, `u ∈ U(λ)` and the triple stabilizer `k^u = u k u⁻¹` of
    /// `(f^u, g, ℓ f^u)`; `u = I` when `k` is pure.
    B {
        k: LieElement,
        u: Matrix<Rational>,
        k_u: LieElement,
        pure: bool,
    },
}

fn lower_central_series(basis: &[LieElement]) -> Vec<usize> {
    let Some(first) = basis.first() else { return vec![0] };
    let len = first.dim() * first.dim();
    let mut dims = vec![basis.len()];
    let mut cur = basis.to_vec();
    while !cur.is_empty() {
        let next: Vec<Vec<Rational>> = basis
            .iter()
            .flat_map(|a| cur.iter().map(move |b| bracket(a, b).expect("same gl").to_vec()))
            .collect();
        let span = crate::exact::basis_of_span(&next, len);
        let stalled = span.len() == cur.len();
        dims.push(span.len());
        cur = span.iter().map(|v| LieElement::from_vec(first.dim(), v)).collect();
        if stalled {
            break;
        }
    }
    dims
}

/// Conjugate a semisimple `s ∈ 𝒫(λ)` into `𝒢₀` by `u ∈ U(λ)`, cancelling
/// positive-weight components from the lowest weight up.
fn conjugate_into_levi(rep: &Representation, s: &LieElement, w: &[i64]) -> Option<Matrix<Rational>> {
    let n = s.dim();
    let mut u = Matrix::identity(n);
    let mut cur = s.clone();
    let positive: Vec<i64> = unit_weights(rep, w).into_iter().filter(|&c| c > 0).collect();
    for _round in 0..=positive.len() {
        let comps = weight_components(rep, &cur, w);
        let Some((&c, sc)) = comps.iter().find(|(c, _)| **c > 0) else {
            return Some(u);
        };
        let s0 = comps.get(&0).cloned().unwrap_or_else(|| LieElement::zero(n));
        let units = weight_units(rep, w, c);
        // [s₀, x] = s_c  ⇒  exp(x)·cur·exp(−x) has no weight-c part.
        let cols: Vec<Vec<Rational>> = units.iter().map(|e| bracket(&s0, e).expect("same gl").to_vec()).collect();
        let a = Matrix::from_cols(n * n, &cols);
        let b = Matrix::from_cols(n * n, &[sc.to_vec()]);
        let x = solve(&a, &b)?;
        let xe = combine(&x.col(0), &units);
        let g = exp_nilpotent(&xe.0).ok()?;
        let ginv = exp_nilpotent(&xe.0.negate()).ok()?;
        cur = LieElement(g.times(&cur.0).times(&ginv));
        u = g.times(&u);
    }
    weight_components(rep, &cur, w).keys().all(|&c| c <= 0).then_some(u)
}

fn verify_triple(subject: &Subject, lam: &OnePS, g: &[Rational], k: &LieElement, u: &Matrix<Rational>) -> Option<LieElement> {
    let rep = &subject.rep;
    let uinv = inverse(u).ok()?;
    let k_u = LieElement(u.times(&k.0).times(&uinv));
    let fu = group_act(rep, u, &subject.v).ok()?;
    let exp_u = expand_orbit_curve(&subject.with_vector(fu.clone()), lam).ok()?;
    let same_limit = exp_u.g == g;
    let ell_fu = rep.act(&lam.ell(), &fu);
    let ok = same_limit
        && vec_is_zero(&rep.act(&k_u, &fu))
        && vec_is_zero(&rep.act(&k_u, g))
        && vec_is_zero(&rep.act(&k_u, &ell_fu));
    ok.then_some(k_u)
}

pub fn classify_case(subject: &Subject, lam: &OnePS) -> Result<CaseWitness> {
    let rep = &subject.rep;
    let w = &lam.weights;
    let n = rep.n();
    let exp = expand_orbit_curve(subject, lam)?;
    let g = exp.g.clone();

    // (B) with u = I: a pure element of 𝒦.
    let ts = triple_stabilizers(subject, lam)?;
    if let Some((_, p)) = ts.pure.first() {
        let u = Matrix::identity(n);
        if let Some(k_u) = verify_triple(subject, lam, &g, p, &u) {
            return Ok(CaseWitness::B {
                k: p.clone(),
                u,
                k_u,
                pure: true,
            });
        }
    }

    // (A): Π₋ injective on 𝒦.
    let kb = stabilizer_algebra(rep, &subject.v);
    let neg: Vec<Vec<Rational>> = kb
        .iter()
        .map(|k| {
            let mut v = vec![Rational::zero(); n * n];
            for (c, piece) in weight_components(rep, k, w) {
                if c < 0 {
                    for (o, x) in v.iter_mut().zip(piece.to_vec()) {
                        *o = o.plus(&x);
                    }
                }
            }
            v
        })
        .collect();
    if rank_of(&neg, n * n) == kb.len() {
        let k0 = limit_algebra_by_conjugation(subject, lam)?.k0;
        let lcs = lower_central_series(&k0);
        if lcs.last() == Some(&0) {
            return Ok(CaseWitness::A {
                nilpotent_elements: k0.iter().all(|x| is_nilpotent(&x.0)),
                lower_central_series: lcs,
            });
        }
    }

    // (B) via a semisimple element of 𝒫(λ) ∩ 𝒦.
    let p_cap_k: Vec<LieElement> = nullspace(&Matrix::from_cols(n * n, &neg))
        .iter()
        .map(|c| combine(c, &kb))
        .collect();
    let mut candidates = p_cap_k.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..8 {
        if p_cap_k.is_empty() {
            break;
        }
        let c: Vec<Rational> = p_cap_k.iter().map(|_| q(rng.gen_range(-5..=5))).collect();
        candidates.push(combine(&c, &p_cap_k));
    }
    let mut evidence = vec![];
    for k in &candidates {
        let (s, _) = jordan_chevalley(&k.0)?;
        if s.is_zero() {
            evidence.push("nilpotent".to_string());
            continue;
        }
        let s = LieElement(s);
        match conjugate_into_levi(rep, &s, w) {
            Some(u) => {
                if let Some(k_u) = verify_triple(subject, lam, &g, &s, &u) {
                    return Ok(CaseWitness::B { k: s, u, k_u, pure: false });
                }
                evidence.push("conjugated semisimple part failed verification".into());
            }
            None => evidence.push("semisimple part not conjugable into L(λ) over Q".into()),
        }
    }
    let k0 = limit_algebra_by_conjugation(subject, lam)?.k0;
    let graded = homogeneous_basis(rep, &k0, w)?;
    let nil_by_weight: Vec<String> = graded
        .iter()
        .map(|(c, x)| format!("weight {c}: nilpotent={}", is_nilpotent(&x.0)))
        .collect();
    Err(Error::SearchExhausted(format!(
        "P(λ)∩K candidates: [{}]; K0 pieces: [{}]",
        evidence.join(", "),
        nil_by_weight.join(", ")
    )))
}

/// Regular limit: exponents in `a + ℤ(b−a)` and `𝒦 ⊄ 𝓗`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regularity {
    pub exponents_regular: bool,
    pub k_not_in_h: bool,
}

impl Regularity {
    pub fn is_regular(&self) -> bool {
        self.exponents_regular && self.k_not_in_h
    }
}

pub fn regularity(subject: &Subject, lam: &OnePS) -> Result<Regularity> {
    let exp = expand_orbit_curve(subject, lam)?;
    let kb = stabilizer_algebra(&subject.rep, &subject.v);
    let k_not_in_h = kb.iter().any(|k| !vec_is_zero(&subject.rep.act(k, &exp.g)));
    Ok(Regularity {
        exponents_regular: exp.exponents_regular(),
        k_not_in_h,
    })
}

/// `dim 𝒦^{≥χ} − dim 𝒦^{>χ}` for each weight, from the filtration.
pub fn filtered_quotient_dims(subject: &Subject, lam: &OnePS) -> Result<BTreeMap<i64, usize>> {
    let fd = filtered_dims(subject, lam)?;
    let mut out = BTreeMap::new();
    for (i, &(c, d)) in fd.iter().enumerate() {
        let next = fd.get(i + 1).map_or(0, |x| x.1);
        if d > next {
            out.insert(c, d - next);
        }
    }
    Ok(out)
}
