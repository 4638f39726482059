//! `𝒦(t)` and its limit `𝒦₀`, computed two ways: from the matrices
//! `M_N(t)`, `M_S(t)` of the local model at the limit, and by conjugating the
//! stabilizer with `λ(t)` and taking leading terms.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{expand_orbit_curve, LimitExpansion, OnePS, Subject};
use crate::error::{Error, Result};
use crate::exact::{
    column_normalize, eval_poly_matrix, independent_subset, nullspace, rank_of, same_span, solve_fraction_free,
    Matrix, Rational, RationalFn, Ring, UniPoly,
};
use crate::lie::{
    combine, is_subalgebra, stabilizer_algebra, weight_components, LieElement, PolyLieElement, Representation,
};
use crate::local_model::{build_graded_model, LocalModel};

/// `M_N = P/Δ`, `M_S = Y/Δ` with `Δ = det(I + Φ(t))`.
#[derive(Clone, Debug)]
pub struct MnMs {
    pub delta: UniPoly,
    /// `Φ(t)`: columns `λ_S(s_j · f⁺(t))`.
    pub phi: Matrix<UniPoly>,
    /// `adj(I + Φ) · λ_S(h_i · f⁺(t))`
    pub y: Matrix<UniPoly>,
    /// `Δ·λ_N(h_i · f⁺) − Ψ·Y`
    pub p: Matrix<UniPoly>,
}

impl MnMs {
    pub fn mn(&self) -> Matrix<RationalFn> {
        divide(&self.p, &self.delta)
    }

    pub fn ms(&self) -> Matrix<RationalFn> {
        divide(&self.y, &self.delta)
    }
}

fn divide(m: &Matrix<UniPoly>, d: &UniPoly) -> Matrix<RationalFn> {
    m.map(|x| RationalFn::new(x.clone(), d.clone()))
}

/// Graded local model at the limit `g`, with the higher terms of the curve
/// placed in `N`.
pub fn limit_model(exp: &LimitExpansion, lam: &OnePS) -> Result<LocalModel> {
    if !exp.transverse {
        return Err(Error::NotTransverse(
            "span of the higher terms meets the tangent space of the limit orbit".into(),
        ));
    }
    let normals: Vec<Vec<Rational>> = exp.tail.values().cloned().collect();
    build_graded_model(&exp.rep, &exp.g, &lam.weights, &normals)
}

/// `(λ_S(e·f⁺(t)), λ_N(e·f⁺(t)))` for each `e`, as polynomial matrices.
fn projected_columns(
    exp: &LimitExpansion,
    model: &LocalModel,
    elems: &[LieElement],
) -> (Matrix<UniPoly>, Matrix<UniPoly>) {
    let (p, m) = (model.dim_s(), model.dim_n());
    let mut sm: Matrix<UniPoly> = Matrix::zeros(p, elems.len());
    let mut nm: Matrix<UniPoly> = Matrix::zeros(m, elems.len());
    for (j, e) in elems.iter().enumerate() {
        for (c, fc) in &exp.tail {
            let k = (c - exp.a) as usize;
            let v = model.rep.act(e, fc);
            for (i, x) in model.lam_s(&v).into_iter().enumerate() {
                if !x.is_zero() {
                    sm[(i, j)] = sm[(i, j)].plus(&UniPoly::monomial(x, k));
                }
            }
            for (i, x) in model.lam_n(&v).into_iter().enumerate() {
                if !x.is_zero() {
                    nm[(i, j)] = nm[(i, j)].plus(&UniPoly::monomial(x, k));
                }
            }
        }
    }
    (sm, nm)
}

pub fn build_mn_ms(exp: &LimitExpansion, model: &LocalModel) -> Result<MnMs> {
    for fc in exp.tail.values() {
        if !model.in_n(fc) {
            return Err(Error::NotTransverse("a higher term of the curve is not in N".into()));
        }
    }
    let p = model.dim_s();
    let (phi, psi) = projected_columns(exp, model, &model.s);
    let (ws, wn) = projected_columns(exp, model, &model.h);
    let (delta, y) = if p == 0 {
        (UniPoly::one(), Matrix::zeros(0, model.h.len()))
    } else {
        solve_fraction_free(&Matrix::identity(p).plus(&phi), &ws)?
    };
    let p_mat = if p == 0 { wn.scale(&delta) } else { wn.scale(&delta).minus(&psi.times(&y)) };
    Ok(MnMs {
        delta,
        phi,
        y,
        p: p_mat,
    })
}

#[derive(Clone, Debug)]
pub struct LimitOptions {
    /// Structure constants over ℚ(t) are computed when `dim 𝒦 ≤` this bound.
    pub structure_constants_up_to: usize,
    pub seed: u64,
}

impl Default for LimitOptions {
    fn default() -> Self {
        LimitOptions {
            structure_constants_up_to: 8,
            seed: 7,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LimitAlgebraData {
    pub kt: Vec<PolyLieElement>,
    pub k0: Vec<LieElement>,
    /// `𝓗`-parts of the `k_i(t)` (M_N route only).
    pub ht: Vec<PolyLieElement>,
    pub graded_dims: BTreeMap<i64, usize>,
    /// `[k_i, k_j] = Σ_l c_ij^l k_l`, indexed `[i][j][l]`.
    pub structure_constants: Option<Vec<Vec<Vec<RationalFn>>>>,
    pub delta: Option<UniPoly>,
    /// Point at which `k_i(t₀)·f(t₀) = 0` was checked.
    pub t0: Option<Rational>,
    pub h_dim: usize,
}

pub fn limit_algebra(subject: &Subject, lam: &OnePS) -> Result<LimitAlgebraData> {
    limit_algebra_with(subject, lam, &LimitOptions::default())
}

pub fn limit_algebra_with(subject: &Subject, lam: &OnePS, opts: &LimitOptions) -> Result<LimitAlgebraData> {
    let exp = expand_orbit_curve(subject, lam)?;
    let model = limit_model(&exp, lam)?;
    let mm = build_mn_ms(&exp, &model)?;
    let n = subject.rep.n();
    let r = model.h.len();
    let alpha: Vec<Vec<RationalFn>> = if mm.p.rows() == 0 {
        (0..r)
            .map(|i| (0..r).map(|j| if i == j { RationalFn::one() } else { RationalFn::zero() }).collect())
            .collect()
    } else {
        nullspace(&mm.p.map(|x| RationalFn::from_poly(x.clone())))
    };
    let k = alpha.len();
    let alpha = if k == 0 {
        Matrix::zeros(r, 0)
    } else {
        column_normalize(&Matrix::from_cols(r, &alpha))?
    };

    let h_poly: Vec<PolyLieElement> = model.h.iter().map(|h| h.to_poly()).collect();
    let s_poly: Vec<PolyLieElement> = model.s.iter().map(|s| s.to_poly()).collect();
    let y_alpha = mm.y.times(&alpha);
    let mut kt = Vec::with_capacity(k);
    let mut ht = Vec::with_capacity(k);
    for i in 0..k {
        let a: Vec<UniPoly> = alpha.col(i);
        let h = poly_combine(&a, &h_poly, n).scale(&mm.delta);
        let s = poly_combine(&y_alpha.col(i), &s_poly, n);
        kt.push(h.minus(&s));
        ht.push(h);
    }
    let k0: Vec<LieElement> = kt
        .iter()
        .map(|x| LieElement(eval_poly_matrix(x, &Rational::zero())))
        .collect();

    // K₀ ⊆ H, independent, closed, of the right dimension.
    let len = n * n;
    let hv: Vec<Vec<Rational>> = model.h.iter().map(|h| h.to_vec()).collect();
    let kv: Vec<Vec<Rational>> = k0.iter().map(|x| x.to_vec()).collect();
    if rank_of(&kv, len) != k {
        return Err(Error::Verification("K0 basis is dependent".into()));
    }
    let both: Vec<Vec<Rational>> = hv.iter().chain(&kv).cloned().collect();
    if rank_of(&both, len) != rank_of(&hv, len) {
        return Err(Error::Verification("K0 is not contained in H".into()));
    }
    if !is_subalgebra(&k0) {
        return Err(Error::Verification("K0 is not closed under the bracket".into()));
    }
    let kdim = stabilizer_algebra(&subject.rep, &subject.v).len();
    if kdim != k {
        return Err(Error::Verification(format!("dim K(t) = {k} but the stabilizer of f has dimension {kdim}")));
    }
    let t0 = check_generic_point(&exp, &kt, &mm.delta, opts.seed)?;

    let graded_dims = graded_dims(&subject.rep, &k0, &lam.weights)?;
    let structure_constants = if k <= opts.structure_constants_up_to {
        Some(poly_structure_constants(&kt)?)
    } else {
        None
    };
    Ok(LimitAlgebraData {
        kt,
        k0,
        ht,
        graded_dims,
        structure_constants,
        delta: Some(mm.delta),
        t0: Some(t0),
        h_dim: r,
    })
}

pub(crate) fn poly_combine(c: &[UniPoly], basis: &[PolyLieElement], n: usize) -> PolyLieElement {
    let mut acc = Matrix::zeros(n, n);
    for (x, b) in c.iter().zip(basis) {
        if !x.is_zero() {
            acc = acc.plus(&b.scale(x));
        }
    }
    acc
}

/// Random rational `t₀` off the roots of `Δ`; checks `k_i(t₀)·f(t₀) = 0` and
/// that the `k_i(t₀)` stay independent.
fn check_generic_point(exp: &LimitExpansion, kt: &[PolyLieElement], delta: &UniPoly, seed: u64) -> Result<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = exp.rep.n();
    for _ in 0..32 {
        let t0 = Rational::new(rng.gen_range(1..=97i64).into(), rng.gen_range(1..=89i64).into());
        if delta.eval(&t0).is_zero() {
            continue;
        }
        let at: Vec<LieElement> = kt.iter().map(|x| LieElement(eval_poly_matrix(x, &t0))).collect();
        let vecs: Vec<Vec<Rational>> = at.iter().map(|x| x.to_vec()).collect();
        if rank_of(&vecs, n * n) != kt.len() {
            continue;
        }
        let ft = exp.normalized_at(&t0);
        for (i, x) in at.iter().enumerate() {
            if !crate::exact::vec_is_zero(&exp.rep.act(x, &ft)) {
                return Err(Error::Verification(format!("k_{}(t0) does not annihilate f(t0) at t0 = {t0}", i + 1)));
            }
        }
        return Ok(t0);
    }
    Err(Error::Verification("no generic rational t0 found".into()))
}

/// Dimensions of the weight pieces of a graded subspace; errors when the
/// span is not the sum of its weight pieces.
pub fn graded_dims(rep: &Representation, elems: &[LieElement], w: &[i64]) -> Result<BTreeMap<i64, usize>> {
    let hb = homogeneous_basis(rep, elems, w)?;
    let mut out = BTreeMap::new();
    for (c, _) in hb {
        *out.entry(c).or_insert(0) += 1;
    }
    Ok(out)
}

/// A weight-homogeneous basis of a graded subspace of gl(n).
pub fn homogeneous_basis(rep: &Representation, elems: &[LieElement], w: &[i64]) -> Result<Vec<(i64, LieElement)>> {
    let Some(first) = elems.first() else { return Ok(vec![]) };
    let len = first.dim() * first.dim();
    let mut pieces: BTreeMap<i64, Vec<LieElement>> = BTreeMap::new();
    for x in elems {
        for (c, p) in weight_components(rep, x, w) {
            pieces.entry(c).or_default().push(p);
        }
    }
    let mut out = vec![];
    for (c, ps) in pieces {
        let vecs: Vec<Vec<Rational>> = ps.iter().map(|p| p.to_vec()).collect();
        for i in independent_subset(&vecs, len) {
            out.push((c, ps[i].clone()));
        }
    }
    let ev: Vec<Vec<Rational>> = elems.iter().map(|e| e.to_vec()).collect();
    let hv: Vec<Vec<Rational>> = out.iter().map(|(_, e)| e.to_vec()).collect();
    if !same_span(&ev, &hv, len) {
        return Err(Error::Verification("subspace is not graded".into()));
    }
    Ok(out)
}

/// Structure constants of a family of polynomial Lie elements over ℚ(t).
/// The family must be independent at `t = 0`.
pub fn poly_structure_constants(kt: &[PolyLieElement]) -> Result<Vec<Vec<Vec<RationalFn>>>> {
    let k = kt.len();
    if k == 0 {
        return Ok(vec![]);
    }
    let n = kt[0].rows();
    let flat = |m: &PolyLieElement| -> Vec<UniPoly> { m.data().to_vec() };
    let at0: Vec<Vec<Rational>> = (0..n * n)
        .map(|e| kt.iter().map(|x| x.data()[e].coeff(0)).collect())
        .collect();
    let rows = independent_subset(&at0, k);
    if rows.len() != k {
        return Err(Error::Input("family is dependent at t = 0".into()));
    }
    let a = Matrix::from_fn(k, k, |i, j| kt[j].data()[rows[i]].clone());
    let brackets: Vec<PolyLieElement> = (0..k * k).map(|ij| kt[ij / k].commutator(&kt[ij % k])).collect();
    let b = Matrix::from_fn(k, k * k, |i, ij| brackets[ij].data()[rows[i]].clone());
    let (d, x) = solve_fraction_free(&a, &b)?;
    let mut out = vec![vec![Vec::with_capacity(k); k]; k];
    for ij in 0..k * k {
        let coeffs = x.col(ij);
        let lhs = poly_combine(&coeffs, kt, n);
        if flat(&lhs) != flat(&brackets[ij].scale(&d)) {
            return Err(Error::Verification("family is not closed under the bracket over Q(t)".into()));
        }
        out[ij / k][ij % k] = coeffs.into_iter().map(|c| RationalFn::new(c, d.clone())).collect();
    }
    Ok(out)
}

/// Filtration `𝒦^{≥χ}` by leading weight, with the adapted basis.
struct Filtration {
    /// `(χ, dim 𝒦^{≥χ})` for every weight occurring, ascending.
    dims: Vec<(i64, usize)>,
    /// `(χ, leading term k_χ, k(t) = Σ_{χ' ≥ χ} t^{χ'−χ} k_χ')`
    adapted: Vec<(i64, LieElement, PolyLieElement)>,
}

fn filtration(rep: &Representation, basis: &[LieElement], w: &[i64]) -> Filtration {
    let comps: Vec<BTreeMap<i64, LieElement>> = basis.iter().map(|x| weight_components(rep, x, w)).collect();
    let mut weights: Vec<i64> = comps.iter().flat_map(|c| c.keys().copied()).collect();
    weights.sort_unstable();
    weights.dedup();
    let n = basis.first().map_or(0, |b| b.dim());
    let len = n * n;
    let mut dims = vec![];
    let mut adapted = vec![];
    for &chi in &weights {
        // Coefficient vectors c with Σ c_i k_i free of weights < χ.
        let lower: Vec<i64> = weights.iter().copied().filter(|&x| x < chi).collect();
        let sub: Vec<Vec<Rational>> = if lower.is_empty() {
            (0..basis.len())
                .map(|i| (0..basis.len()).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
                .collect()
        } else {
            let cols: Vec<Vec<Rational>> = comps
                .iter()
                .map(|c| {
                    lower
                        .iter()
                        .flat_map(|x| c.get(x).map_or_else(|| vec![Rational::zero(); len], |e| e.to_vec()))
                        .collect()
                })
                .collect();
            nullspace(&Matrix::from_cols(lower.len() * len, &cols))
        };
        dims.push((chi, sub.len()));
        let elems: Vec<LieElement> = sub.iter().map(|c| combine(c, basis)).collect();
        let leads: Vec<Vec<Rational>> = elems
            .iter()
            .map(|e| weight_components(rep, e, w).remove(&chi).map_or_else(|| vec![Rational::zero(); len], |x| x.to_vec()))
            .collect();
        for i in independent_subset(&leads, len) {
            let e = &elems[i];
            let mut kt: PolyLieElement = Matrix::zeros(n, n);
            for (c, piece) in weight_components(rep, e, w) {
                let shift = (c - chi) as usize;
                kt = kt.plus(&piece.0.map(|x| UniPoly::monomial(x.clone(), shift)));
            }
            adapted.push((chi, LieElement::from_vec(n, &leads[i]), kt));
        }
    }
    Filtration { dims, adapted }
}

/// `𝒦(t) = λ(t)𝒦λ(t)⁻¹`: weight-`χ` pieces scale by `t^χ`; the limit is
/// spanned by leading terms of a filtration-adapted basis.
pub fn limit_algebra_by_conjugation(subject: &Subject, lam: &OnePS) -> Result<LimitAlgebraData> {
    let exp = expand_orbit_curve(subject, lam)?;
    let kb = stabilizer_algebra(&subject.rep, &subject.v);
    let fl = filtration(&subject.rep, &kb, &lam.weights);
    let k0: Vec<LieElement> = fl.adapted.iter().map(|(_, l, _)| l.clone()).collect();
    let kt: Vec<PolyLieElement> = fl.adapted.iter().map(|(_, _, k)| k.clone()).collect();
    let mut graded = BTreeMap::new();
    for (chi, _, _) in &fl.adapted {
        *graded.entry(*chi).or_insert(0) += 1;
    }
    Ok(LimitAlgebraData {
        kt,
        k0,
        ht: vec![],
        graded_dims: graded,
        structure_constants: None,
        delta: None,
        t0: None,
        h_dim: stabilizer_algebra(&subject.rep, &exp.g).len(),
    })
}

/// `(χ, dim 𝒦^{≥χ})` for every weight occurring in `𝒦`, ascending.
pub fn filtered_dims(subject: &Subject, lam: &OnePS) -> Result<Vec<(i64, usize)>> {
    let kb = stabilizer_algebra(&subject.rep, &subject.v);
    Ok(filtration(&subject.rep, &kb, &lam.weights).dims)
}

/// `h ⋆ n = λ_N(h·n)` on `N ≅ V/TO_g`; `h` must lie in the span of `𝓗`.
pub fn star_action(model: &LocalModel, h: &LieElement, n: &[Rational]) -> Result<Vec<Rational>> {
    let (_, sc) = model.split(h)?;
    if sc.iter().any(|x| !x.is_zero()) {
        return Err(Error::Input("element is not in the stabilizer of the limit".into()));
    }
    Ok(model.lam_n(&model.rep.act(h, n)))
}

/// Whether two families of Lie elements span the same subspace.
pub fn same_subspace(a: &[LieElement], b: &[LieElement]) -> bool {
    let Some(x) = a.first().or(b.first()) else { return true };
    let len = x.dim() * x.dim();
    let av: Vec<Vec<Rational>> = a.iter().map(|e| e.to_vec()).collect();
    let bv: Vec<Vec<Rational>> = b.iter().map(|e| e.to_vec()).collect();
    same_span(&av, &bv, len)
}

/// Values of the structure constants at `t = 0`, when they are regular there.
pub fn structure_constants_at_zero(c: &[Vec<Vec<RationalFn>>]) -> Result<Vec<Vec<Vec<Rational>>>> {
    c.iter()
        .map(|row| {
            row.iter()
                .map(|v| v.iter().map(crate::exact::limit_at_zero).collect::<Result<Vec<_>>>())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, vec_is_zero};
    use crate::limits::examples;

    fn o2() -> (Subject, OnePS) {
        let (f, lam, _) = examples::o2();
        (Subject::form(&f).unwrap(), lam)
    }

    fn t_poly(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn o2_kt_and_k0() {
        let (s, lam) = o2();
        let d = limit_algebra(&s, &lam).unwrap();
        assert_eq!(d.kt.len(), 1);
        // e12 − t² e21, up to a scalar.
        let k = &d.kt[0];
        let c = k[(0, 1)].coeff(0);
        assert!(!c.is_zero());
        assert_eq!(k[(0, 1)], UniPoly::constant(c.clone()));
        assert_eq!(k[(1, 0)], t_poly(&[0, 0, -1]).scale(&c));
        assert!(k[(0, 0)].is_zero() && k[(1, 1)].is_zero());
        assert_eq!(d.k0, vec![LieElement::unit(2, 0, 1).scale(&c)]);
        assert_eq!(d.graded_dims, BTreeMap::from([(-1, 1)]));
        assert_eq!(d.h_dim, 2);
    }

    #[test]
    fn o2_mn_shape() {
        let (s, lam) = o2();
        let exp = expand_orbit_curve(&s, &lam).unwrap();
        let model = limit_model(&exp, &lam).unwrap();
        let mm = build_mn_ms(&exp, &model).unwrap();
        let mn = mm.mn();
        assert_eq!((mn.rows(), mn.cols()), (model.dim_n(), 2));
        let rank = crate::exact::rank(&mn);
        assert_eq!(rank, 1);
        // M_S(0) = 0, and t^{b−a} divides both.
        for x in mm.ms().data().iter().chain(mn.data()) {
            assert!(x.num().is_zero() || x.num().valuation().unwrap() >= 2);
        }
        // Kernel is the e12 direction of H.
        let ker = nullspace(&mn);
        assert_eq!(ker.len(), 1);
        let h_e12 = model.h.iter().position(|h| h == &LieElement::unit(2, 0, 1)).unwrap();
        for (i, x) in ker[0].iter().enumerate() {
            assert_eq!(x.is_zero(), i != h_e12);
        }
    }

    #[test]
    fn delta_shape() {
        for (f, lam, _) in [examples::o2(), examples::o3()] {
            let s = Subject::form(&f).unwrap();
            let exp = expand_orbit_curve(&s, &lam).unwrap();
            let model = limit_model(&exp, &lam).unwrap();
            let mm = build_mn_ms(&exp, &model).unwrap();
            let gap = (exp.b.unwrap() - exp.a) as usize;
            assert_eq!(mm.delta.coeff(0), q(1));
            for k in 1..2 * gap {
                assert!(mm.delta.coeff(k).is_zero(), "Δ has a t^{k} term");
            }
        }
    }

    #[test]
    fn o3_structure_constants() {
        let (f, lam, _) = examples::o3();
        let s = Subject::form(&f).unwrap();
        let d = limit_algebra(&s, &lam).unwrap();
        assert_eq!(d.kt.len(), 3);
        assert_eq!(d.h_dim, 4);
        // Same Q(t)-span as the printed basis: check at a few points.
        for t in [q(2), q(3), Rational::new(1.into(), 5.into())] {
            let printed = examples::o3_kt_printed(&t);
            let ours: Vec<LieElement> = d.kt.iter().map(|x| LieElement(eval_poly_matrix(x, &t))).collect();
            assert!(same_subspace(&printed, &ours));
        }
        // Printed basis brackets: [k1,k2] = −t²k3, [k1,k3] = k2, [k2,k3] = −k1.
        let t = q(3);
        let [k1, k2, k3] = examples::o3_kt_printed(&t);
        let br = |a: &LieElement, b: &LieElement| crate::lie::bracket(a, b).unwrap();
        assert_eq!(br(&k1, &k2), k3.scale(&q(-9)));
        assert_eq!(br(&k1, &k3), k2);
        assert_eq!(br(&k2, &k3), k1.scale(&q(-1)));
        let sc = d.structure_constants.as_ref().unwrap();
        let at0 = structure_constants_at_zero(sc).unwrap();
        assert_eq!(Some(at0), crate::lie::structure_constants(&d.k0));
    }

    #[test]
    fn conjugation_route_agrees() {
        for (f, lam, _) in [examples::o2(), examples::o3()] {
            let s = Subject::form(&f).unwrap();
            let a = limit_algebra(&s, &lam).unwrap();
            let b = limit_algebra_by_conjugation(&s, &lam).unwrap();
            assert!(same_subspace(&a.k0, &b.k0));
            assert_eq!(a.graded_dims, b.graded_dims);
        }
    }

    #[test]
    fn trivial_ps_gives_k() {
        let (f, _, _) = examples::o3();
        let s = Subject::form(&f).unwrap();
        let lam = OnePS::trivial(3);
        let b = limit_algebra_by_conjugation(&s, &lam).unwrap();
        assert!(same_subspace(&b.k0, &stabilizer_algebra(&s.rep, &s.v)));
        let a = limit_algebra(&s, &lam).unwrap();
        assert!(same_subspace(&a.k0, &b.k0));
        assert_eq!(filtered_dims(&s, &lam).unwrap(), vec![(0, 3)]);
    }

    #[test]
    fn star_action_on_o2() {
        let (s, lam) = o2();
        let exp = expand_orbit_curve(&s, &lam).unwrap();
        let model = limit_model(&exp, &lam).unwrap();
        let fb = exp.f_b.clone().unwrap();
        // e12·f_b = 4y³z lies in TO_g.
        let e12 = LieElement::unit(2, 0, 1);
        let img = s.rep.act(&e12, &fb);
        assert_eq!(s.rep.vec_to_form(&img).fmt_with(&["z".into(), "y".into()]), "4*z*y^3");
        assert!(vec_is_zero(&star_action(&model, &e12, &fb).unwrap()));
        // e11 (z∂z) scales f_b by 2.
        let e11 = LieElement::unit(2, 0, 0);
        let fb_n = model.lam_n(&fb);
        let want: Vec<Rational> = fb_n.iter().map(|x| x * q(2)).collect();
        assert_eq!(star_action(&model, &e11, &fb).unwrap(), want);
        assert!(star_action(&model, &LieElement::unit(2, 1, 0), &fb).is_err());
    }
}
