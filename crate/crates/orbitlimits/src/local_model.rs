//! The local model at a point `x`: complements `𝒮` (to the stabilizer `𝓗`) and
//! `N` (to the tangent space `𝒮·x`), the projections `λ_S`, `λ_N`, the map
//! `θ(n)(Δv) = λ_S(Δv)·n`, and the induced action on the normal slice.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{
    basis_of_span, inverse, lin_comb, nullspace, rank_of, solve_fraction_free, vec_is_zero, Field, Matrix,
    Rational, Ring,
};
use crate::lie::{combine, gl_basis, lie_coordinates, LieElement, Representation};

#[derive(Clone, Debug, Default)]
pub enum ComplementPolicy {
    /// Frobenius-orthogonal `𝒮` inside the ambient algebra, coefficientwise-orthogonal `N`.
    #[default]
    Orthogonal,
    /// Caller-supplied bases, validated for transversality.
    Explicit { s: Vec<LieElement>, n: Vec<Vec<Rational>> },
}

/// A reductive part `R` and nilradical `Q` of the stabilizer, when known.
#[derive(Clone, Debug)]
pub struct LeviData {
    pub r: Vec<LieElement>,
    pub q: Vec<LieElement>,
}

/// Weights attached to a model built from a 1-PS grading.
#[derive(Clone, Debug)]
pub struct Grading {
    pub var_weights: Vec<i64>,
    pub h: Vec<i64>,
    pub s: Vec<i64>,
    pub n: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct LocalModel {
    pub rep: Representation,
    pub x: Vec<Rational>,
    pub algebra: Vec<LieElement>,
    pub h: Vec<LieElement>,
    pub s: Vec<LieElement>,
    pub to: Vec<Vec<Rational>>,
    pub n: Vec<Vec<Rational>>,
    /// Rows: coordinates of a V-vector in the basis `[TO | N]`.
    coords: Matrix<Rational>,
    pub levi: Option<LeviData>,
    pub grading: Option<Grading>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceTangent {
    pub s_part: Vec<Rational>,
    pub n_part: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub s: Vec<Rational>,
    pub n_prime: Vec<Rational>,
    pub det: Rational,
}

#[derive(Clone, Debug)]
pub struct SliceStabilizer {
    pub elements: Vec<LieElement>,
    pub h_parts: Vec<LieElement>,
}

pub fn build_local_model(rep: &Representation, x: &[Rational], policy: &ComplementPolicy) -> Result<LocalModel> {
    build_local_model_in(rep, x, &gl_basis(rep.n()), policy, None)
}

/// Local model for the action of the subalgebra spanned by `algebra`.
pub fn build_local_model_in(
    rep: &Representation,
    x: &[Rational],
    algebra: &[LieElement],
    policy: &ComplementPolicy,
    levi: Option<LeviData>,
) -> Result<LocalModel> {
    if x.len() != rep.dim() {
        return Err(Error::Dimension(format!("point of length {} in a {}-dim space", x.len(), rep.dim())));
    }
    if vec_is_zero(x) {
        return Err(Error::ZeroPoint);
    }
    let dv = rep.dim();
    let h = crate::lie::stabilizer_in(rep, x, algebra);
    let (s, n) = match policy {
        ComplementPolicy::Orthogonal => {
            let gram = Matrix::from_fn(h.len(), algebra.len(), |i, k| h[i].frobenius(&algebra[k]));
            let s: Vec<LieElement> = if h.is_empty() {
                algebra.to_vec()
            } else {
                nullspace(&gram).iter().map(|c| combine(c, algebra)).collect()
            };
            let to: Vec<Vec<Rational>> = s.iter().map(|e| rep.act(e, x)).collect();
            (s, orthogonal_complement(&to, dv))
        }
        ComplementPolicy::Explicit { s, n } => (s.clone(), n.clone()),
    };
    let to: Vec<Vec<Rational>> = s.iter().map(|e| rep.act(e, x)).collect();
    if h.len() + s.len() != algebra.len() {
        return Err(Error::BadComplement(format!(
            "dim H + dim S = {} + {} but the algebra has dimension {}",
            h.len(),
            s.len(),
            algebra.len()
        )));
    }
    let hs: Vec<Vec<Rational>> = h.iter().chain(&s).map(|e| e.to_vec()).collect();
    if rank_of(&hs, rep.n() * rep.n()) != algebra.len() {
        return Err(Error::BadComplement("S meets the stabilizer".into()));
    }
    if n.iter().any(|v| v.len() != dv) {
        return Err(Error::Dimension("normal vector of the wrong length".into()));
    }
    let coords = projection_coords(&to, &n, dv)?;
    let model = LocalModel {
        rep: rep.clone(),
        x: x.to_vec(),
        algebra: algebra.to_vec(),
        h,
        s,
        to,
        n,
        coords,
        levi: None,
        grading: None,
    };
    match levi {
        Some(l) => model.with_levi(l),
        None => Ok(model),
    }
}

fn orthogonal_complement(vecs: &[Vec<Rational>], len: usize) -> Vec<Vec<Rational>> {
    if vecs.is_empty() {
        return (0..len)
            .map(|k| {
                let mut e = vec![Rational::zero(); len];
                e[k] = Rational::one();
                e
            })
            .collect();
    }
    nullspace(&Matrix::from_rows(vecs.to_vec()))
}

fn projection_coords(to: &[Vec<Rational>], n: &[Vec<Rational>], dv: usize) -> Result<Matrix<Rational>> {
    if to.len() + n.len() != dv {
        return Err(Error::NotTransverse(format!(
            "dim TO + dim N = {} + {} ≠ dim V = {dv}",
            to.len(),
            n.len()
        )));
    }
    let cols: Vec<Vec<Rational>> = to.iter().chain(n).cloned().collect();
    inverse(&Matrix::from_cols(dv, &cols))
        .map_err(|_| Error::NotTransverse("TO + N is not all of V (or s ↦ s·x is not injective)".into()))
}

/// Local model whose complements respect the grading by the 1-PS with
/// variable weights `w`.  `normals` are weight-homogeneous vectors that must
/// appear in `N` (e.g. the higher terms of an orbit curve); the rest of `N` is
/// orthogonal to `TO + span(normals)` inside each weight space.
pub fn build_graded_model(
    rep: &Representation,
    x: &[Rational],
    w: &[i64],
    normals: &[Vec<Rational>],
) -> Result<LocalModel> {
    let dv = rep.dim();
    let n = rep.n();
    if vec_is_zero(x) {
        return Err(Error::ZeroPoint);
    }
    let vweights: Vec<i64> = (0..dv).map(|k| rep.basis_weight(k, w)).collect();
    let weight_of = |v: &[Rational]| -> Result<i64> {
        let ws: Vec<i64> = (0..dv).filter(|&k| !v[k].is_zero()).map(|k| vweights[k]).collect();
        match ws.first() {
            Some(&a) if ws.iter().all(|&b| b == a) => Ok(a),
            Some(_) => Err(Error::NotApplicable("vector is not weight-homogeneous".into())),
            None => Err(Error::NotTransverse("zero normal vector".into())),
        }
    };
    let wx = weight_of(x)?;

    let mut gl_classes: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            gl_classes.entry(rep.unit_weight(i, j, w)).or_default().push((i, j));
        }
    }
    let (mut h, mut hw, mut s, mut sw) = (vec![], vec![], vec![], vec![]);
    for (&u, units) in &gl_classes {
        let basis: Vec<LieElement> = units.iter().map(|&(i, j)| LieElement::unit(n, i, j)).collect();
        let cols: Vec<Vec<Rational>> = units.iter().map(|&(i, j)| rep.act_unit(i, j, x)).collect();
        let hu = nullspace(&Matrix::from_cols(dv, &cols));
        let su = if hu.is_empty() {
            (0..units.len())
                .map(|k| {
                    let mut e = vec![Rational::zero(); units.len()];
                    e[k] = Rational::one();
                    e
                })
                .collect()
        } else {
            nullspace(&Matrix::from_rows(hu.clone()))
        };
        for c in &hu {
            h.push(combine(c, &basis));
            hw.push(u);
        }
        for c in &su {
            s.push(combine(c, &basis));
            sw.push(u);
        }
    }
    let to: Vec<Vec<Rational>> = s.iter().map(|e| rep.act(e, x)).collect();

    let mut extra: BTreeMap<i64, Vec<Vec<Rational>>> = BTreeMap::new();
    for v in normals {
        extra.entry(weight_of(v)?).or_default().push(v.clone());
    }
    let mut classes: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (k, &c) in vweights.iter().enumerate() {
        classes.entry(c).or_default().push(k);
    }
    let mut coords = Matrix::zeros(dv, dv);
    let mut nvecs = vec![];
    let mut nw = vec![];
    let mut n_rows = vec![];
    for (&c, idx) in &classes {
        let restrict = |v: &Vec<Rational>| -> Vec<Rational> { idx.iter().map(|&k| v[k].clone()).collect() };
        let to_idx: Vec<usize> = (0..s.len()).filter(|&k| sw[k] + wx == c).collect();
        let mut block: Vec<Vec<Rational>> = to_idx.iter().map(|&k| restrict(&to[k])).collect();
        let ex: Vec<Vec<Rational>> = extra.get(&c).map(|e| e.iter().map(restrict).collect()).unwrap_or_default();
        let before = block.len();
        block.extend(ex.iter().cloned());
        if rank_of(&block, idx.len()) != block.len() {
            return Err(Error::NotTransverse(format!(
                "the weight-{c} component of the curve lies in the tangent space of the limit orbit"
            )));
        }
        let comp = orthogonal_complement(&block, idx.len());
        let mut local_n: Vec<Vec<Rational>> = ex;
        local_n.extend(comp);
        let mut all = block[..before].to_vec();
        all.extend(local_n.iter().cloned());
        let binv = inverse(&Matrix::from_cols(idx.len(), &all)).map_err(|_| Error::NotTransverse("graded block".into()))?;
        let mut rows: Vec<usize> = to_idx.clone();
        for v in &local_n {
            let mut full = vec![Rational::zero(); dv];
            for (&k, x) in idx.iter().zip(v) {
                full[k] = x.clone();
            }
            rows.push(dv + nvecs.len());
            nvecs.push(full);
            nw.push(c);
        }
        n_rows.push((rows, idx.clone(), binv));
    }
    // N rows come after the p TO rows.
    let p = s.len();
    for (rows, idx, binv) in n_rows {
        for (a, &r) in rows.iter().enumerate() {
            let r = if r >= dv { p + (r - dv) } else { r };
            for (b, &k) in idx.iter().enumerate() {
                coords[(r, k)] = binv[(a, b)].clone();
            }
        }
    }
    if p + nvecs.len() != dv {
        return Err(Error::NotTransverse("graded complement dimension".into()));
    }
    Ok(LocalModel {
        rep: rep.clone(),
        x: x.to_vec(),
        algebra: gl_basis(n),
        h,
        s,
        to,
        n: nvecs,
        coords,
        levi: None,
        grading: Some(Grading {
            var_weights: w.to_vec(),
            h: hw,
            s: sw,
            n: nw,
        }),
    })
}

impl LocalModel {
    pub fn with_levi(mut self, levi: LeviData) -> Result<Self> {
        let len = self.rep.n() * self.rep.n();
        let hv: Vec<Vec<Rational>> = self.h.iter().map(|e| e.to_vec()).collect();
        let rq: Vec<Vec<Rational>> = levi.r.iter().chain(&levi.q).map(|e| e.to_vec()).collect();
        if rq.len() != hv.len() || !crate::exact::same_span(&hv, &rq, len) {
            return Err(Error::BadComplement("R ⊕ Q must be a basis of the stabilizer".into()));
        }
        for r in &levi.r {
            for nv in &self.n {
                if !vec_is_zero(&self.lam_s(&self.rep.act(r, nv))) {
                    return Err(Error::BadComplement("N is not R-invariant".into()));
                }
            }
        }
        self.levi = Some(levi);
        Ok(self)
    }

    pub fn dim_s(&self) -> usize {
        self.s.len()
    }

    pub fn dim_n(&self) -> usize {
        self.n.len()
    }

    fn coords_of(&self, dv: &[Rational]) -> Vec<Rational> {
        self.coords.mul_vec(dv)
    }

    /// `𝒮`-coordinates of the `TO`-component of `dv`.
    pub fn lam_s(&self, dv: &[Rational]) -> Vec<Rational> {
        let mut c = self.coords_of(dv);
        c.truncate(self.s.len());
        c
    }

    /// `N`-coordinates of the `N`-component of `dv`.
    pub fn lam_n(&self, dv: &[Rational]) -> Vec<Rational> {
        self.coords_of(dv).split_off(self.s.len())
    }

    pub fn lam_s_matrix(&self) -> Matrix<Rational> {
        Matrix::from_fn(self.s.len(), self.rep.dim(), |i, j| self.coords[(i, j)].clone())
    }

    pub fn lam_n_matrix(&self) -> Matrix<Rational> {
        let p = self.s.len();
        Matrix::from_fn(self.n.len(), self.rep.dim(), |i, j| self.coords[(p + i, j)].clone())
    }

    pub fn s_element(&self, c: &[Rational]) -> LieElement {
        combine(c, &self.s)
    }

    pub fn n_vector(&self, c: &[Rational]) -> Vec<Rational> {
        lin_comb(c, &self.n, self.rep.dim())
    }

    pub fn in_n(&self, v: &[Rational]) -> bool {
        vec_is_zero(&self.lam_s(v))
    }

    /// `θ(n)(Δv) = λ_S(Δv)·n`
    pub fn theta(&self, n: &[Rational], dv: &[Rational]) -> Vec<Rational> {
        self.rep.act(&self.s_element(&self.lam_s(dv)), n)
    }

    /// Matrix of `θ(n)` acting on coordinate columns.
    pub fn theta_matrix(&self, n: &[Rational]) -> Matrix<Rational> {
        let dv = self.rep.dim();
        let sn: Vec<Vec<Rational>> = self.s.iter().map(|e| self.rep.act(e, n)).collect();
        if sn.is_empty() {
            return Matrix::zeros(dv, dv);
        }
        Matrix::from_cols(dv, &sn).times(&self.lam_s_matrix())
    }

    /// `Φ(s ⊗ n) = λ_S(s·n)`
    pub fn phi(&self, s: &[Rational], n: &[Rational]) -> Vec<Rational> {
        self.lam_s(&self.rep.act(&self.s_element(s), n))
    }

    fn check_normal(&self, n: &[Rational]) -> Result<()> {
        if n.len() != self.rep.dim() || !self.in_n(n) {
            return Err(Error::Input("slice point is not in N".into()));
        }
        Ok(())
    }

    /// `(1+θ(n))⁻¹ dv` via determinant and adjugate; errors when singular.
    pub fn inverse_apply(&self, n: &[Rational], dv: &[Rational]) -> Result<(Rational, Vec<Rational>)> {
        let d = self.rep.dim();
        let m = Matrix::identity(d).plus(&self.theta_matrix(n));
        let (det, y) = solve_fraction_free(&m, &Matrix::from_cols(d, &[dv.to_vec()]))?;
        let inv = det.inverse();
        Ok((det, y.col(0).iter().map(|x| x.times(&inv)).collect()))
    }

    /// Solve `s·(x+n) + n′ = dv` with `s ∈ 𝒮`, `n′ ∈ N`.
    pub fn solve_decomposition(&self, n: &[Rational], dv: &[Rational]) -> Result<Decomposition> {
        self.check_normal(n)?;
        let (det, u) = self.inverse_apply(n, dv)?;
        let s = self.lam_s(&u);
        let n_prime = self.lam_n(&u);
        let xn: Vec<Rational> = self.x.iter().zip(n).map(|(a, b)| a.plus(b)).collect();
        let lhs: Vec<Rational> = self
            .rep
            .act(&self.s_element(&s), &xn)
            .iter()
            .zip(self.n_vector(&n_prime))
            .map(|(a, b)| a.plus(&b))
            .collect();
        if lhs != dv {
            return Err(Error::Verification("reconstruction s·(x+n) + n′ = dv failed".into()));
        }
        Ok(Decomposition { s, n_prime, det })
    }

    /// Split `g` into its `𝓗` and `𝒮` coordinates.
    pub fn split(&self, g: &LieElement) -> Result<(Vec<Rational>, Vec<Rational>)> {
        let hs: Vec<LieElement> = self.h.iter().chain(&self.s).cloned().collect();
        let c = lie_coordinates(&hs, g).ok_or_else(|| Error::Input("element is outside the acting algebra".into()))?;
        let (a, b) = c.split_at(self.h.len());
        Ok((a.to_vec(), b.to_vec()))
    }

    /// Infinitesimal action of `g` on the chart `(e, n) ↦ x + n`.
    pub fn local_action(&self, g: &LieElement, n: &[Rational]) -> Result<SliceTangent> {
        self.check_normal(n)?;
        let (hc, sc) = self.split(g)?;
        let h = combine(&hc, &self.h);
        let (r_part, q_part) = match &self.levi {
            Some(levi) => {
                let rq: Vec<LieElement> = levi.r.iter().chain(&levi.q).cloned().collect();
                let c = lie_coordinates(&rq, &h).expect("R ⊕ Q spans H");
                let (a, b) = c.split_at(levi.r.len());
                (Some(combine(a, &levi.r)), combine(b, &levi.q))
            }
            None => (None, h),
        };
        let (_, u) = self.inverse_apply(n, &self.rep.act(&q_part, n))?;
        let s_part: Vec<Rational> = sc.iter().zip(self.lam_s(&u)).map(|(a, b)| a.plus(&b)).collect();
        let mut n_part = self.lam_n(&u);
        if let Some(r) = r_part.filter(|r| r.dim() > 0) {
            let rn = self.lam_n(&self.rep.act(&r, n));
            n_part = n_part.iter().zip(rn).map(|(a, b)| a.plus(&b)).collect();
        }
        Ok(SliceTangent { s_part, n_part })
    }

    /// Stabilizer of `x + n`: each element is `h + s` with `h ∈ 𝓗` and `s` its 𝒮-completion.
    pub fn slice_stabilizer(&self, n: &[Rational]) -> Result<SliceStabilizer> {
        self.check_normal(n)?;
        let mut lam_s_u = Vec::with_capacity(self.h.len());
        let mut cols = Vec::with_capacity(self.h.len());
        for h in &self.h {
            let (_, u) = self.inverse_apply(n, &self.rep.act(h, n))?;
            lam_s_u.push(self.lam_s(&u));
            cols.push(self.lam_n(&u));
        }
        let ker = if self.h.is_empty() {
            vec![]
        } else if self.n.is_empty() {
            crate::exact::Matrix::<Rational>::identity(self.h.len()).columns()
        } else {
            nullspace(&Matrix::from_cols(self.n.len(), &cols))
        };
        let xn: Vec<Rational> = self.x.iter().zip(n).map(|(a, b)| a.plus(b)).collect();
        let mut elements = vec![];
        let mut h_parts = vec![];
        for c in ker {
            let h = combine(&c, &self.h);
            let sc = lin_comb(&c, &lam_s_u, self.s.len());
            let g = h.sub(&self.s_element(&sc));
            if !vec_is_zero(&self.rep.act(&g, &xn)) {
                return Err(Error::Verification("slice stabilizer element does not fix x+n".into()));
            }
            elements.push(g);
            h_parts.push(h);
        }
        Ok(SliceStabilizer { elements, h_parts })
    }

    /// Check `λ_S(Δv)·x + λ_N(Δv) = Δv` on the standard basis of V.
    pub fn verify(&self) -> Result<()> {
        let d = self.rep.dim();
        for k in 0..d {
            let mut e = vec![Rational::zero(); d];
            e[k] = Rational::one();
            let back: Vec<Rational> = self
                .rep
                .act(&self.s_element(&self.lam_s(&e)), &self.x)
                .iter()
                .zip(self.n_vector(&self.lam_n(&e)))
                .map(|(a, b)| a.plus(&b))
                .collect();
            if back != e {
                return Err(Error::Verification("projection identity".into()));
            }
        }
        if rank_of(&self.to, d) != self.s.len() {
            return Err(Error::Verification("s ↦ s·x is not injective".into()));
        }
        Ok(())
    }

    /// `N` basis reduced to an independent family (diagnostics).
    pub fn normal_span(&self) -> Vec<Vec<Rational>> {
        basis_of_span(&self.n, self.rep.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qf};
    use crate::lie::{Form, LieElement};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn g_abc(a: Rational, b: Rational, c: Rational) -> LieElement {
        LieElement(Matrix::from_rows(vec![vec![a.clone(), b], vec![c, -a]]))
    }

    fn sl2_model_at_x2() -> LocalModel {
        let rep = Representation::sym(2, 2);
        let x = vec![q(1), q(0), q(0)];
        let sl2 = vec![g_abc(q(1), q(0), q(0)), g_abc(q(0), q(1), q(0)), g_abc(q(0), q(0), q(1))];
        build_local_model_in(&rep, &x, &sl2, &ComplementPolicy::Orthogonal, None).unwrap()
    }

    #[test]
    fn sl2_projections_match_example() {
        let m = sl2_model_at_x2();
        m.verify().unwrap();
        assert_eq!(m.h, vec![g_abc(q(0), q(0), q(1))]);
        assert_eq!(m.n, vec![vec![q(0), q(0), q(1)]]);
        // λ_S(x²) = g_{1/2,0,0}, λ_S(xy) = g_{0,1/2,0}, λ_S(y²) = 0
        assert_eq!(m.s_element(&m.lam_s(&[q(1), q(0), q(0)])), g_abc(qf(1, 2), q(0), q(0)));
        assert_eq!(m.s_element(&m.lam_s(&[q(0), q(1), q(0)])), g_abc(q(0), qf(1, 2), q(0)));
        assert!(vec_is_zero(&m.lam_s(&[q(0), q(0), q(1)])));
    }

    #[test]
    fn sl2_theta_and_inverse() {
        let m = sl2_model_at_x2();
        let n = vec![q(0), q(0), q(1)];
        let th = m.theta_matrix(&n);
        // Column action: θ(n)(x²) = −y², i.e. entry (y², x²).
        let mut expect = Matrix::zeros(3, 3);
        expect[(2, 0)] = q(-1);
        assert_eq!(th, expect);
        assert!(vec_is_zero(&m.theta(&n, &n)));
        assert!(m.theta_matrix(&[q(0), q(0), q(0)]).is_zero());
    }

    #[test]
    fn sl2_completion() {
        let m = sl2_model_at_x2();
        let n = vec![q(0), q(0), q(1)];
        let qel = g_abc(q(0), q(0), q(1));
        let d = m.solve_decomposition(&n, &m.rep.act(&qel, &n)).unwrap();
        assert_eq!(m.s_element(&d.s), g_abc(q(0), q(1), q(0)));
        assert!(vec_is_zero(&d.n_prime));
        let st = m.slice_stabilizer(&n).unwrap();
        assert_eq!(st.elements, vec![g_abc(q(0), q(-1), q(1))]);
        let act = m.local_action(&qel, &n).unwrap();
        assert_eq!(m.s_element(&act.s_part), g_abc(q(0), q(1), q(0)));
    }

    #[test]
    fn o2_model_explicit_matches_orthogonal() {
        let nm = names(&["z", "y"]);
        let rep = Representation::sym(2, 4);
        let x = rep.form_to_vec(&Form::parse("y^4", &nm, None).unwrap()).unwrap();
        let m = build_local_model(&rep, &x, &ComplementPolicy::Orthogonal).unwrap();
        let nvec = |s: &str| rep.form_to_vec(&Form::parse(s, &nm, None).unwrap()).unwrap();
        assert_eq!(m.s, vec![LieElement::unit(2, 1, 0), LieElement::unit(2, 1, 1)]);
        assert!(crate::exact::same_span(&m.n, &[nvec("y^2*z^2"), nvec("y*z^3"), nvec("z^4")], 5));
        let explicit = ComplementPolicy::Explicit {
            s: vec![LieElement::unit(2, 1, 0), LieElement::unit(2, 1, 1)],
            n: vec![nvec("y^2*z^2"), nvec("y*z^3"), nvec("z^4")],
        };
        build_local_model(&rep, &x, &explicit).unwrap().verify().unwrap();
        let bad = ComplementPolicy::Explicit {
            s: vec![LieElement::unit(2, 1, 0), LieElement::unit(2, 1, 1)],
            n: vec![nvec("y^4"), nvec("y*z^3"), nvec("z^4")],
        };
        assert!(matches!(build_local_model(&rep, &x, &bad), Err(Error::NotTransverse(_))));
    }

    #[test]
    fn zero_point_rejected() {
        let rep = Representation::sym(2, 2);
        assert_eq!(
            build_local_model(&rep, &[q(0), q(0), q(0)], &ComplementPolicy::Orthogonal).unwrap_err(),
            Error::ZeroPoint
        );
    }

    #[test]
    fn graded_model_agrees_with_plain_model_on_o2() {
        let nm = names(&["z", "y"]);
        let rep = Representation::sym(2, 4);
        let x = rep.form_to_vec(&Form::parse("y^4", &nm, None).unwrap()).unwrap();
        let fb = rep.form_to_vec(&Form::parse("2*y^2*z^2", &nm, None).unwrap()).unwrap();
        let g = build_graded_model(&rep, &x, &[1, 0], std::slice::from_ref(&fb)).unwrap();
        g.verify().unwrap();
        assert!(g.n.contains(&fb));
        let plain = build_local_model(&rep, &x, &ComplementPolicy::Orthogonal).unwrap();
        assert!(crate::exact::same_span(&g.to, &plain.to, 5));
        // Curve component inside TO is rejected.
        let bad = rep.form_to_vec(&Form::parse("y^3*z", &nm, None).unwrap()).unwrap();
        assert!(matches!(build_graded_model(&rep, &x, &[1, 0], &[bad]), Err(Error::NotTransverse(_))));
    }
}
