//! First-order data at the limit: the derivation `d_b : 𝓗_b → 𝒢/𝓗`, the
//! linear system deciding whether it lifts to `𝒦₀ → 𝒢/𝒦₀`, Hofmann's
//! trichotomy for codimension-one pairs, and the graded identities
//! `s·g = h·f_b`.

use super::pipeline::{homogeneous_basis, limit_model};
use super::structure::{annihilator, apply_rows, weight_units};
use super::{expand_orbit_curve, OnePS, Subject};
use crate::error::{Error, Result};
use crate::exact::{independent_subset, nullspace, solve, vec_is_zero, Matrix, Rational, Ring};
use crate::lie::{bracket, combine, lie_coordinates, structure_constants, LieElement, Representation};
use crate::local_model::LocalModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quotient {
    /// Values are cosets in `𝒢/𝓗`.
    ModH,
    /// Values are cosets in `𝒢/𝒦₀`.
    ModK0,
}

#[derive(Clone, Debug)]
pub struct DerivationData {
    pub domain: Vec<LieElement>,
    /// Coset representatives, one per domain element.
    pub values: Vec<LieElement>,
    pub target: Quotient,
    /// The tangent of approach the values were computed from.
    pub f_b: Vec<Rational>,
}

fn in_h(model: &LocalModel, x: &LieElement) -> Result<bool> {
    let (_, sc) = model.split(x)?;
    Ok(sc.iter().all(|c| c.is_zero()))
}

/// `d_b(h) = {s}` with `s·g = h·f_b`; `s` is taken in `𝒮`.
pub fn derivation_db(model: &LocalModel, f_b: &[Rational], domain: &[LieElement]) -> Result<DerivationData> {
    let rep = &model.rep;
    let mut values = Vec::with_capacity(domain.len());
    for h in domain {
        if !in_h(model, h)? {
            return Err(Error::NotApplicable("domain element is not in the stabilizer of g".into()));
        }
        let v = rep.act(h, f_b);
        if !vec_is_zero(&model.lam_n(&v)) {
            return Err(Error::NotApplicable("h·f_b is not in the tangent space of g".into()));
        }
        let s = model.s_element(&model.lam_s(&v));
        if rep.act(&s, &model.x) != v {
            return Err(Error::Verification("s·g ≠ h·f_b".into()));
        }
        values.push(s);
    }
    let d = DerivationData {
        domain: domain.to_vec(),
        values,
        target: Quotient::ModH,
        f_b: f_b.to_vec(),
    };
    // d([h1,h2]) − [h1, d h2] + [h2, d h1] ∈ 𝓗 on all pairs.
    for i in 0..domain.len() {
        for j in i + 1..domain.len() {
            let hij = bracket(&domain[i], &domain[j])?;
            let v = rep.act(&hij, f_b);
            let dij = model.s_element(&model.lam_s(&v));
            let defect = dij
                .sub(&bracket(&domain[i], &d.values[j])?)
                .add(&bracket(&domain[j], &d.values[i])?);
            if !in_h(model, &defect)? {
                return Err(Error::Verification(format!("derivation identity fails on pair ({i}, {j})")));
            }
        }
    }
    Ok(d)
}

/// Result of the lifting problem for `d_b` along `𝒢/𝒦₀ → 𝒢/𝓗`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub feasible: bool,
    /// `d̄(k_i)` representatives (free parameters set to 0), when feasible.
    pub lift: Option<DerivationData>,
    /// Generators `k_i + ε·s_i` of the ε-extension, `s_i ∈ d̄(−k_i)`.
    pub generators: Vec<(LieElement, LieElement)>,
    pub unknowns: usize,
    pub equations: usize,
}

pub fn extension_feasible(model: &LocalModel, k0: &[LieElement], db: &DerivationData) -> Result<Extension> {
    let n = model.rep.n();
    let len = n * n;
    let kk = k0.len();
    let sc = structure_constants(k0).ok_or_else(|| Error::Input("K0 is not a subalgebra".into()))?;
    if db.domain.len() != kk {
        return Err(Error::Input("derivation domain must be the K0 basis".into()));
    }
    // η_m: complement of K0 inside H.
    let mut fam: Vec<Vec<Rational>> = k0.iter().map(|x| x.to_vec()).collect();
    fam.extend(model.h.iter().map(|x| x.to_vec()));
    let eta: Vec<LieElement> = independent_subset(&fam, len)
        .into_iter()
        .filter(|&i| i >= kk)
        .map(|i| model.h[i - kk].clone())
        .collect();
    let mm = eta.len();
    let ann = annihilator(k0, n);
    let unknowns = kk * mm;
    let var = |l: usize, m: usize| l * mm + m;

    let mut rows: Vec<Vec<Rational>> = vec![];
    let mut rhs: Vec<Rational> = vec![];
    for i in 0..kk {
        for j in i + 1..kk {
            // E_ij(0) = Σ_l c^l s_l − [k_i, s_j] + [k_j, s_i]
            let mut e0 = bracket(&k0[j], &db.values[i])?.sub(&bracket(&k0[i], &db.values[j])?);
            for (l, c) in sc[i][j].iter().enumerate() {
                if !c.is_zero() {
                    e0 = e0.add(&db.values[l].scale(c));
                }
            }
            let mut cols = vec![vec![Rational::zero(); len]; unknowns];
            for (l, c) in sc[i][j].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for m in 0..mm {
                    cols[var(l, m)] = add_vec(&cols[var(l, m)], &eta[m].scale(c).to_vec());
                }
            }
            for m in 0..mm {
                let a = bracket(&k0[i], &eta[m])?.to_vec();
                let b = bracket(&k0[j], &eta[m])?.to_vec();
                cols[var(j, m)] = sub_vec(&cols[var(j, m)], &a);
                cols[var(i, m)] = add_vec(&cols[var(i, m)], &b);
            }
            let proj_cols: Vec<Vec<Rational>> = cols.iter().map(|c| apply_rows(&ann, c)).collect();
            let b0 = apply_rows(&ann, &e0.to_vec());
            for (r, b) in b0.iter().enumerate() {
                rows.push(proj_cols.iter().map(|c| c[r].clone()).collect());
                rhs.push(b.negate());
            }
        }
    }
    let equations = rows.len();
    let y: Vec<Rational> = if equations == 0 || unknowns == 0 {
        if rhs.iter().any(|x| !x.is_zero()) {
            return Ok(Extension {
                feasible: false,
                lift: None,
                generators: vec![],
                unknowns,
                equations,
            });
        }
        vec![Rational::zero(); unknowns]
    } else {
        let a = Matrix::from_rows(rows);
        let b = Matrix::from_cols(equations, &[rhs]);
        match solve(&a, &b) {
            Some(x) => x.col(0),
            None => {
                return Ok(Extension {
                    feasible: false,
                    lift: None,
                    generators: vec![],
                    unknowns,
                    equations,
                })
            }
        }
    };
    let values: Vec<LieElement> = (0..kk)
        .map(|l| {
            let c: Vec<Rational> = (0..mm).map(|m| y[var(l, m)].clone()).collect();
            db.values[l].add(&combine(&c, &eta))
        })
        .collect();
    let lift = DerivationData {
        domain: k0.to_vec(),
        values,
        target: Quotient::ModK0,
        f_b: db.f_b.clone(),
    };
    verify_lift(model, k0, &lift, &sc, &ann)?;
    let generators = k0
        .iter()
        .zip(&lift.values)
        .map(|(k, d)| (k.clone(), d.scale(&Rational::one().negate())))
        .collect();
    Ok(Extension {
        feasible: true,
        lift: Some(lift),
        generators,
        unknowns,
        equations,
    })
}

fn add_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x.plus(y)).collect()
}

fn sub_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x.minus(y)).collect()
}

/// The ε-extension `{k_i − ε d̄(k_i)} ⊕ ε𝒦₀` stabilizes `g + ε f_b` and is
/// closed under the bracket modulo ε².
fn verify_lift(
    model: &LocalModel,
    k0: &[LieElement],
    lift: &DerivationData,
    sc: &[Vec<Vec<Rational>>],
    ann: &[Vec<Rational>],
) -> Result<()> {
    let rep = &model.rep;
    for (k, d) in k0.iter().zip(&lift.values) {
        // (k − εd)·(g + ε f_b) = 0 mod ε²
        if !vec_is_zero(&rep.act(k, &model.x)) || rep.act(k, &lift.f_b) != rep.act(d, &model.x) {
            return Err(Error::Verification("ε-extension does not stabilize g + ε f_b".into()));
        }
    }
    for i in 0..k0.len() {
        for j in i + 1..k0.len() {
            // [k_i − εd_i, k_j − εd_j] ≡ Σ c^l (k_l − ε d_l) mod ε𝒦₀
            let eps = bracket(&k0[i], &lift.values[j])?
                .add(&bracket(&lift.values[i], &k0[j])?)
                .scale(&Rational::one().negate());
            let mut target = LieElement::zero(k0[0].dim());
            for (l, c) in sc[i][j].iter().enumerate() {
                target = target.add(&lift.values[l].scale(&c.negate()));
            }
            if !vec_is_zero(&apply_rows(ann, &eps.sub(&target).to_vec())) {
                return Err(Error::Verification(format!("ε-extension not closed on ({i}, {j})")));
            }
        }
    }
    Ok(())
}

/// Hofmann's trichotomy for a codimension-one subalgebra `𝒦 ⊂ 𝓗`, read off
/// from the largest ideal `𝓘` of `𝓗` inside `𝒦`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HofmannCase {
    /// `𝓗/𝓘 ≅ sl₂`, `𝒦/𝓘` a Borel.
    Sl2,
    /// `𝓗/𝓘` two-dimensional non-abelian, `𝒦/𝓘` its torus.
    Affine,
    /// `𝒦` is an ideal.
    Ideal,
}

pub fn hofmann_case(h: &[LieElement], k: &[LieElement]) -> Result<(HofmannCase, usize)> {
    let Some(first) = h.first() else {
        return Err(Error::Input("empty algebra".into()));
    };
    let n = first.dim();
    if k.len() + 1 != h.len() {
        return Err(Error::NotApplicable("subalgebra is not of codimension one".into()));
    }
    let mut ideal = k.to_vec();
    loop {
        let ann = annihilator(&ideal, n);
        let cols: Vec<Vec<Rational>> = ideal
            .iter()
            .map(|x| {
                h.iter()
                    .flat_map(|y| apply_rows(&ann, &bracket(y, x).expect("same gl").to_vec()))
                    .collect()
            })
            .collect();
        let next: Vec<LieElement> = if ann.is_empty() || ideal.is_empty() {
            ideal.clone()
        } else {
            nullspace(&Matrix::from_cols(ann.len() * h.len(), &cols))
                .iter()
                .map(|c| combine(c, &ideal))
                .collect()
        };
        if next.len() == ideal.len() {
            break;
        }
        ideal = next;
    }
    let case = match h.len() - ideal.len() {
        1 => HofmannCase::Ideal,
        2 => HofmannCase::Affine,
        3 => HofmannCase::Sl2,
        d => return Err(Error::Verification(format!("core ideal of codimension {d}"))),
    };
    Ok((case, ideal.len()))
}

/// One graded identity `s·g = h·f_b` with `h ∈ (𝒦₀)_χ`, `s ∈ 𝒢_{χ+b−a}`.
#[derive(Clone, Debug)]
pub struct GradedCheck {
    pub weight: i64,
    pub s_weight: i64,
    pub element: LieElement,
    pub s: Option<LieElement>,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct GradedConditions {
    /// `b − a`
    pub gap: i64,
    pub checks: Vec<GradedCheck>,
}

impl GradedConditions {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    /// `"b-a=1"`, `"b-a=2"` or `"b-a>2"`.
    pub fn case_label(&self) -> &'static str {
        match self.gap {
            1 => "b-a=1",
            2 => "b-a=2",
            _ => "b-a>2",
        }
    }
}

pub fn check_graded_conditions(rep: &Representation, lam: &OnePS, g: &[Rational], f_b: &[Rational], gap: i64, k0: &[LieElement]) -> Result<GradedConditions> {
    let mut distinct = lam.weights.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != 2 {
        return Err(Error::NotApplicable("graded conditions need a two-block 1-PS".into()));
    }
    let w = &lam.weights;
    let mut checks = vec![];
    for (chi, h) in homogeneous_basis(rep, k0, w)? {
        let target = rep.act(&h, f_b);
        let sw = chi + gap;
        let units = weight_units(rep, w, sw);
        let (s, ok) = if units.is_empty() {
            (None, vec_is_zero(&target))
        } else {
            let cols: Vec<Vec<Rational>> = units.iter().map(|e| rep.act(e, g)).collect();
            let a = Matrix::from_cols(rep.dim(), &cols);
            match solve(&a, &Matrix::from_cols(rep.dim(), std::slice::from_ref(&target))) {
                Some(x) => {
                    let s = combine(&x.col(0), &units);
                    let ok = rep.act(&s, g) == target;
                    (Some(s), ok)
                }
                None => (None, false),
            }
        };
        checks.push(GradedCheck {
            weight: chi,
            s_weight: sw,
            element: h,
            s,
            ok,
        });
    }
    Ok(GradedConditions { gap, checks })
}

/// Everything at the limit of `f` along `λ` needed for the first-order
/// analysis: the model, `𝒦₀`, and `d_b` on `𝒦₀`.
#[derive(Clone, Debug)]
pub struct FirstOrder {
    pub model: LocalModel,
    pub g: Vec<Rational>,
    pub f_b: Vec<Rational>,
    pub gap: i64,
    pub k0: Vec<LieElement>,
    pub db: DerivationData,
}

pub fn first_order(subject: &Subject, lam: &OnePS) -> Result<FirstOrder> {
    let exp = expand_orbit_curve(subject, lam)?;
    let (Some(b), Some(f_b)) = (exp.b, exp.f_b.clone()) else {
        return Err(Error::NotApplicable("f is an eigenvector of λ: no tangent of approach".into()));
    };
    let model = limit_model(&exp, lam)?;
    let k0 = super::limit_algebra_by_conjugation(subject, lam)?.k0;
    let db = derivation_db(&model, &f_b, &k0)?;
    Ok(FirstOrder {
        g: exp.g.clone(),
        gap: b - exp.a,
        f_b,
        k0,
        db,
        model,
    })
}

/// `d_b(h)` must match `s` modulo `𝓗`.
pub fn same_coset_mod_h(model: &LocalModel, a: &LieElement, b: &LieElement) -> Result<bool> {
    in_h(model, &a.sub(b))
}

/// Coordinates of `x` in `basis` (convenience re-export for reports).
pub fn coords_in(basis: &[LieElement], x: &LieElement) -> Option<Vec<Rational>> {
    lie_coordinates(basis, x)
}
