//! Limits of points under one-parameter subgroups and polynomial families:
//! graded expansions, the limit `𝒦₀` of the stabilizers `𝒦(t)`, triple
//! stabilizers, and the first-order derivation data at the limit.

mod derivation;
pub mod examples;
mod pipeline;
mod structure;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{rank_of, vec_is_zero, Matrix, Rational, Ring, UniPoly};
use crate::lie::{tangent_space, Form, LieElement, MPoly, Representation};

pub use derivation::*;
pub use pipeline::*;
pub use structure::*;

/// Diagonal 1-PS `λ(t)·x_i = t^{d_i} x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OnePS {
    pub weights: Vec<i64>,
}

impl OnePS {
    pub fn new(weights: Vec<i64>) -> Self {
        OnePS { weights }
    }

    pub fn trivial(n: usize) -> Self {
        OnePS { weights: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// `ℓ = log_t λ(t) = diag(d̄)`.
    pub fn ell(&self) -> LieElement {
        let d: Vec<Rational> = self.weights.iter().map(|&w| Rational::from_integer(w.into())).collect();
        LieElement::diag(&d)
    }
}

/// A point of a representation: a form or a matrix, as a coordinate vector.
#[derive(Clone, Debug)]
pub struct Subject {
    pub rep: Representation,
    pub v: Vec<Rational>,
}

impl Subject {
    pub fn form(f: &Form) -> Result<Self> {
        let rep = Representation::sym(f.nvars(), f.degree());
        let v = rep.form_to_vec(f)?;
        Ok(Subject { rep, v })
    }

    pub fn matrix(m: &Matrix<Rational>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension("conjugation needs a square matrix".into()));
        }
        let rep = Representation::conj(m.rows());
        let v = rep.matrix_to_vec(m);
        Ok(Subject { rep, v })
    }

    pub fn with_vector(&self, v: Vec<Rational>) -> Self {
        Subject { rep: self.rep.clone(), v }
    }

    pub fn as_form(&self) -> Option<Form> {
        matches!(self.rep, Representation::Sym(_)).then(|| self.rep.vec_to_form(&self.v))
    }

    fn check(&self, lam: &OnePS) -> Result<()> {
        if lam.n() != self.rep.n() {
            return Err(Error::Dimension(format!(
                "1-PS on {} coordinates acting on gl({})",
                lam.n(),
                self.rep.n()
            )));
        }
        Ok(())
    }
}

/// `v = Σ_χ v_χ` with `λ(t)·v_χ = t^χ v_χ`; zero components omitted.
pub fn weight_decompose(rep: &Representation, v: &[Rational], lam: &OnePS) -> BTreeMap<i64, Vec<Rational>> {
    let mut out: BTreeMap<i64, Vec<Rational>> = BTreeMap::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = out
            .entry(rep.basis_weight(k, &lam.weights))
            .or_insert_with(|| vec![Rational::zero(); v.len()]);
        e[k] = c.clone();
    }
    out
}

pub fn weight_decompose_form(f: &Form, lam: &OnePS) -> Result<BTreeMap<i64, Form>> {
    let s = Subject::form(f)?;
    s.check(lam)?;
    Ok(weight_decompose(&s.rep, &s.v, lam)
        .into_iter()
        .map(|(c, v)| (c, s.rep.vec_to_form(&v)))
        .collect())
}

/// `f(t) = t^a g + t^b f_b + …`
#[derive(Clone, Debug)]
pub struct LimitExpansion {
    pub rep: Representation,
    pub a: i64,
    pub g: Vec<Rational>,
    pub b: Option<i64>,
    pub f_b: Option<Vec<Rational>>,
    /// Every component with exponent `> a`, including `f_b`.
    pub tail: BTreeMap<i64, Vec<Rational>>,
    /// `span{f_c : c > a} ∩ T_g O(g) = 0`.
    pub transverse: bool,
}

impl LimitExpansion {
    fn from_components(rep: &Representation, mut comps: BTreeMap<i64, Vec<Rational>>) -> Result<Self> {
        comps.retain(|_, v| !vec_is_zero(v));
        let (a, g) = comps.pop_first().ok_or(Error::ZeroPoint)?;
        let (b, f_b) = match comps.first_key_value() {
            Some((b, fb)) => (Some(*b), Some(fb.clone())),
            None => (None, None),
        };
        let to = tangent_space(rep, &g);
        let tail: Vec<Vec<Rational>> = comps.values().cloned().collect();
        let mut all = to.clone();
        all.extend(tail.iter().cloned());
        let dim = rep.dim();
        let transverse = rank_of(&all, dim) == to.len() + rank_of(&tail, dim);
        Ok(LimitExpansion {
            rep: rep.clone(),
            a,
            g,
            b,
            f_b,
            tail: comps,
            transverse,
        })
    }

    pub fn g_form(&self) -> Option<Form> {
        matches!(self.rep, Representation::Sym(_)).then(|| self.rep.vec_to_form(&self.g))
    }

    pub fn f_b_form(&self) -> Option<Form> {
        match (&self.rep, &self.f_b) {
            (Representation::Sym(_), Some(v)) => Some(self.rep.vec_to_form(v)),
            _ => None,
        }
    }

    /// `t^{-a} f(t)` at a rational `t`.
    pub fn normalized_at(&self, t: &Rational) -> Vec<Rational> {
        let mut out = self.g.clone();
        for (c, v) in &self.tail {
            let tc = pow_i(t, c - self.a);
            for (o, x) in out.iter_mut().zip(v) {
                if !x.is_zero() {
                    *o = o.plus(&x.times(&tc));
                }
            }
        }
        out
    }

    /// Whether every exponent `c` has `c − a` a multiple of `b − a`.
    pub fn exponents_regular(&self) -> bool {
        match self.b {
            None => true,
            Some(b) => self.tail.keys().all(|c| (c - self.a) % (b - self.a) == 0),
        }
    }
}

pub(crate) fn pow_i(t: &Rational, e: i64) -> Rational {
    let p = (0..e.unsigned_abs()).fold(Rational::one(), |acc, _| acc.times(t));
    if e < 0 {
        Rational::one() / p
    } else {
        p
    }
}

/// Graded expansion of `λ(t)·v`.
pub fn expand_orbit_curve(subject: &Subject, lam: &OnePS) -> Result<LimitExpansion> {
    subject.check(lam)?;
    LimitExpansion::from_components(&subject.rep, weight_decompose(&subject.rep, &subject.v, lam))
}

/// Expansion of `f(A(t) x)` for an arbitrary polynomial family `A(t)`.
pub fn expand_family(f: &Form, a: &Matrix<UniPoly>) -> Result<LimitExpansion> {
    let n = f.nvars();
    if a.rows() != n || a.cols() != n {
        return Err(Error::Dimension("family A(t) must be n×n".into()));
    }
    // Variable n stands for t.
    let mut subs: Vec<MPoly> = (0..n)
        .map(|i| {
            let mut acc = MPoly::zero(n + 1);
            for j in 0..n {
                for (k, c) in a[(i, j)].coeffs().iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut e = vec![0u32; n + 1];
                    e[j] = 1;
                    e[n] = k as u32;
                    acc = acc.add(&MPoly::term(n + 1, e, c.clone()));
                }
            }
            acc
        })
        .collect();
    subs.push(MPoly::var(n + 1, n));
    let lifted = MPoly::from_terms(
        n + 1,
        f.poly().terms().iter().map(|(e, c)| {
            let mut e2 = e.clone();
            e2.push(0);
            (e2, c.clone())
        }),
    );
    let rep = Representation::sym(n, f.degree());
    let mut comps = BTreeMap::new();
    for (k, p) in lifted.substitute(&subs).split_by_var(n) {
        let p = MPoly::from_terms(n, p.terms().iter().map(|(e, c)| (e[..n].to_vec(), c.clone())));
        comps.insert(k as i64, rep.form_to_vec(&Form::new(f.degree(), p)?)?);
    }
    LimitExpansion::from_components(&rep, comps)
}

/// `(ℓ·f, ℓ′·f)` with `ℓ′ = ℓ − (a/d)·I`, which acts by `c − a` on `f_c`.
/// For matrices under conjugation scalars act trivially and both agree.
pub fn tangent_of_exit(subject: &Subject, lam: &OnePS) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let exp = expand_orbit_curve(subject, lam)?;
    let ell_f = subject.rep.act(&lam.ell(), &subject.v);
    let shifted = match subject.rep {
        Representation::Sym(_) => {
            let a = Rational::from_integer(exp.a.into());
            ell_f.iter().zip(&subject.v).map(|(x, v)| x.minus(&a.times(v))).collect()
        }
        Representation::Conj(_) => ell_f.clone(),
    };
    Ok((ell_f, shifted))
}

/// `ℓ′ = ℓ − (a/d)·I` for a form of degree `d`.
pub fn shifted_ell(lam: &OnePS, a: i64, degree: u32) -> LieElement {
    let shift = Rational::new(a.into(), (degree as i64).into());
    lam.ell().sub(&LieElement::identity(lam.n()).scale(&shift))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::lie::default_names;

    fn form(src: &str, names: &[&str]) -> Form {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        Form::parse(src, &names, None).unwrap()
    }

    #[test]
    fn o2_expansion() {
        let f = form("(y^2+z^2)^2", &["z", "y"]);
        let s = Subject::form(&f).unwrap();
        let e = expand_orbit_curve(&s, &OnePS::new(vec![1, 0])).unwrap();
        let names = vec!["z".to_string(), "y".to_string()];
        assert_eq!((e.a, e.b), (0, Some(2)));
        assert_eq!(e.g_form().unwrap(), form("y^4", &["z", "y"]));
        assert_eq!(e.f_b_form().unwrap(), form("2*y^2*z^2", &["z", "y"]));
        assert_eq!(e.rep.vec_to_form(&e.tail[&4]).fmt_with(&names), "z^4");
        assert!(e.transverse);
        assert!(e.exponents_regular());
    }

    #[test]
    fn trivial_ps_single_component() {
        let f = form("x1^3 + x1*x2^2", &["x1", "x2"]);
        let comps = weight_decompose_form(&f, &OnePS::trivial(2)).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[&0], f);
    }

    #[test]
    fn components_sum_back() {
        let f = form("x1^2*x2 + 3*x2^3 - x1*x2*x3 + x3^3", &["x1", "x2", "x3"]);
        let comps = weight_decompose_form(&f, &OnePS::new(vec![2, -1, 0])).unwrap();
        let sum = comps.values().fold(Form::zero(3, 3), |acc, g| acc.add(g));
        assert_eq!(sum, f);
    }

    #[test]
    fn family_hook_matches_diagonal_ps() {
        let f = form("(y^2+z^2)^2", &["z", "y"]);
        let a = Matrix::from_rows(vec![
            vec![UniPoly::t(), UniPoly::zero()],
            vec![UniPoly::zero(), UniPoly::one()],
        ]);
        let e1 = expand_family(&f, &a).unwrap();
        let e2 = expand_orbit_curve(&Subject::form(&f).unwrap(), &OnePS::new(vec![1, 0])).unwrap();
        assert_eq!((e1.a, e1.b, &e1.g, &e1.tail), (e2.a, e2.b, &e2.g, &e2.tail));
    }

    #[test]
    fn exit_tangent_of_eigenform() {
        let f = form("x1^2*x2", &["x1", "x2"]);
        let s = Subject::form(&f).unwrap();
        let (lf, lpf) = tangent_of_exit(&s, &OnePS::new(vec![1, 3])).unwrap();
        let five: Vec<Rational> = s.v.iter().map(|x| x.times(&q(5))).collect();
        assert_eq!(lf, five);
        assert!(vec_is_zero(&lpf));
        let _ = default_names(2);
    }

    #[test]
    fn non_transverse_is_flagged() {
        // x^2 + t·xy: xy = (1/2)·(y∂x)(x²) lies in the tangent space of x².
        let f = form("x^2 + x*y", &["x", "y"]);
        let e = expand_orbit_curve(&Subject::form(&f).unwrap(), &OnePS::new(vec![0, 1])).unwrap();
        assert!(!e.transverse);
    }
}
