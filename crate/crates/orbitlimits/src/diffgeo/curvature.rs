//! Second fundamental form of a linear orbit `O(x) ⊂ V = ℚ^m` (standard inner
//! product), its projective-chart version, and curvature by the Gauss equation.
//!
//! An orbit is described by matrices `S_i`; `X_i = S_i v` are the linear vector
//! fields and `Π(X_a, X_b)(x) = λ_N(D_{X_a} X_b)(x) = λ_N(S_b S_a x)`.

use crate::error::{Error, Result};
use crate::exact::{basis_of_span, coordinates, dot, inverse, nullspace, vec_is_zero, Matrix, Rational, Ring};
use crate::lie::{gl_basis, sl_basis, LieElement, Representation};

pub type Table3 = Vec<Vec<Vec<Rational>>>;
pub type Table4 = Vec<Vec<Vec<Vec<Rational>>>>;

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x.minus(y)).collect()
}

/// Orthogonal projection onto a span and onto its complement.
#[derive(Clone, Debug)]
pub struct Projector {
    basis: Vec<Vec<Rational>>,
    gram_inv: Matrix<Rational>,
    len: usize,
}

impl Projector {
    pub fn onto_span(vecs: &[Vec<Rational>], len: usize) -> Result<Self> {
        let basis = basis_of_span(vecs, len);
        let k = basis.len();
        let gram = Matrix::from_fn(k, k, |i, j| dot(&basis[i], &basis[j]));
        let gram_inv = if k == 0 { gram } else { inverse(&gram)? };
        Ok(Projector { basis, gram_inv, len })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn along(&self, v: &[Rational]) -> Vec<Rational> {
        let b: Vec<Rational> = self.basis.iter().map(|u| dot(u, v)).collect();
        let c = self.gram_inv.mul_vec(&b);
        let mut out = vec![Rational::zero(); self.len];
        for (ci, u) in c.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(u) {
                *o = o.plus(&ci.times(x));
            }
        }
        out
    }

    pub fn complement(&self, v: &[Rational]) -> Vec<Rational> {
        sub(v, &self.along(v))
    }
}

/// Point `x`, generators `S_i` of the fields, and a basis of `N = (T_x O)^⊥`.
#[derive(Clone, Debug)]
pub struct OrbitFrame {
    pub x: Vec<Rational>,
    pub generators: Vec<Matrix<Rational>>,
    pub normal: Vec<Vec<Rational>>,
    tangent: Projector,
}

impl OrbitFrame {
    /// The fields' values `S_i x` span the tangent space.
    pub fn new(x: Vec<Rational>, generators: Vec<Matrix<Rational>>) -> Result<Self> {
        let tv: Vec<Vec<Rational>> = generators.iter().map(|s| s.mul_vec(&x)).collect();
        OrbitFrame::with_tangent(x, generators, &tv)
    }

    /// Fields `S_i` together with vectors spanning the whole tangent space.
    pub fn with_tangent(x: Vec<Rational>, generators: Vec<Matrix<Rational>>, tangent_span: &[Vec<Rational>]) -> Result<Self> {
        let m = x.len();
        if generators.iter().any(|s| s.rows() != m || s.cols() != m) || tangent_span.iter().any(|v| v.len() != m) {
            return Err(Error::Dimension(format!("generators must be {m}×{m}")));
        }
        let tangent = Projector::onto_span(tangent_span, m)?;
        let normal = complement_basis(&tangent, m);
        Ok(OrbitFrame { x, generators, normal, tangent })
    }

    /// As `new`, with a prescribed normal basis (checked to span `(T_x O)^⊥`).
    pub fn with_normal(x: Vec<Rational>, generators: Vec<Matrix<Rational>>, normal: Vec<Vec<Rational>>) -> Result<Self> {
        OrbitFrame::new(x, generators)?.replace_normal(normal)
    }

    pub fn replace_normal(mut self, normal: Vec<Vec<Rational>>) -> Result<Self> {
        let m = self.x.len();
        if normal.iter().any(|v| v.len() != m) {
            return Err(Error::Dimension("normal vectors".into()));
        }
        if normal.iter().any(|v| !vec_is_zero(&self.tangent.along(v))) {
            return Err(Error::BadComplement("normal basis is not orthogonal to the tangent space".into()));
        }
        if basis_of_span(&normal, m).len() != normal.len() || normal.len() + self.tangent.rank() != m {
            return Err(Error::BadComplement("normal basis does not span the orthogonal complement".into()));
        }
        self.normal = normal;
        Ok(self)
    }

    /// Fields from Lie algebra elements through `rep`; the tangent space is
    /// `gl·x` under conjugation and `sl·x` on forms.
    pub fn from_rep(rep: &Representation, x: Vec<Rational>, fields: &[LieElement]) -> Result<Self> {
        let algebra = match rep {
            Representation::Conj(_) => gl_basis(rep.n()),
            Representation::Sym(_) => sl_basis(rep.n()),
        };
        let span: Vec<Vec<Rational>> = algebra.iter().map(|g| rep.act(g, &x)).collect();
        OrbitFrame::with_tangent(x, fields.iter().map(|g| rep.action_matrix(g)).collect(), &span)
    }

    /// `x ∉ T_x O`, i.e. no element of the acting algebra moves `x` along itself.
    pub fn is_simple(&self) -> bool {
        !vec_is_zero(&self.x) && !vec_is_zero(&self.tangent.complement(&self.x))
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn tangent_rank(&self) -> usize {
        self.tangent.rank()
    }

    pub fn tangent_vector(&self, i: usize) -> Vec<Rational> {
        self.generators[i].mul_vec(&self.x)
    }

    pub fn project_normal(&self, v: &[Rational]) -> Vec<Rational> {
        self.tangent.complement(v)
    }

    /// `Π(X_a, X_b)(x) = λ_N(S_b S_a x)` as a vector of `V`.
    pub fn pi_vector(&self, a: usize, b: usize) -> Vec<Rational> {
        let sa = self.generators[a].mul_vec(&self.x);
        self.project_normal(&self.generators[b].mul_vec(&sa))
    }

    pub fn pi_vectors(&self) -> Vec<Vec<Vec<Rational>>> {
        (0..self.len()).map(|a| (0..self.len()).map(|b| self.pi_vector(a, b)).collect()).collect()
    }

    pub fn normal_coordinates(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        coordinates(&self.normal, v).ok_or_else(|| Error::Verification("vector is not normal".into()))
    }

    /// `S_iᵀ = −S_i` for every generator.
    pub fn generators_skew(&self) -> bool {
        self.generators.iter().all(|s| s.transpose() == s.negate())
    }

    fn orthonormal(vs: &[Vec<Rational>]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, u)| vs.iter().enumerate().all(|(j, v)| dot(u, v) == if i == j { Rational::one() } else { Rational::zero() }))
    }
}

#[derive(Clone, Debug)]
pub struct CurvatureData {
    /// `α_{ij}^r = −xᵀ S_j S_i v_r`; only with orthonormal bases.
    pub alpha: Option<Table3>,
    /// `Π(X_i, X_j)` in coordinates of the normal basis.
    pub pi: Table3,
    /// `Π(X_i, X_j)` as vectors of `V`.
    pub pi_vectors: Table3,
    pub skew: bool,
    /// `β = −α`, checked when the generators are skew.
    pub beta_is_minus_alpha: Option<bool>,
    pub pi_symmetric: bool,
    pub riemann: Option<Table4>,
    pub ricci: Option<Vec<Vec<Rational>>>,
}

fn coefficient_table(frame: &OrbitFrame, vecs: &Table3) -> Result<Table3> {
    vecs.iter().map(|row| row.iter().map(|v| frame.normal_coordinates(v)).collect()).collect()
}

/// `Π` on the frame's fields, with `α` whenever the tangent vectors `S_i x`
/// and the normal basis are orthonormal.
pub fn curvature_tables(frame: &OrbitFrame) -> Result<CurvatureData> {
    let pi_vectors = frame.pi_vectors();
    let pi = coefficient_table(frame, &pi_vectors)?;
    let tangents: Vec<Vec<Rational>> = (0..frame.len()).map(|i| frame.tangent_vector(i)).collect();
    let orthonormal = OrbitFrame::orthonormal(&tangents) && OrbitFrame::orthonormal(&frame.normal);
    let skew = frame.generators_skew();
    let alpha = orthonormal.then(|| {
        (0..frame.len())
            .map(|i| {
                (0..frame.len())
                    .map(|j| {
                        let sjx = frame.generators[j].transpose().mul_vec(&frame.x);
                        let row = frame.generators[i].transpose().mul_vec(&sjx);
                        frame.normal.iter().map(|v| dot(&row, v).negate()).collect()
                    })
                    .collect()
            })
            .collect::<Table3>()
    });
    let beta_is_minus_alpha = match (&alpha, skew) {
        (Some(a), true) => Some(a.iter().zip(&pi).all(|(ra, rp)| {
            ra.iter().zip(rp).all(|(va, vp)| va.iter().zip(vp).all(|(x, y)| x.negate() == *y))
        })),
        _ => None,
    };
    let n = frame.len();
    let pi_symmetric = (0..n).all(|a| (0..n).all(|b| pi_vectors[a][b] == pi_vectors[b][a]));
    Ok(CurvatureData { alpha, pi, pi_vectors, skew, beta_is_minus_alpha, pi_symmetric, riemann: None, ricci: None })
}

/// The orthonormal setting: tangent vectors `S_i x` and normal basis.
pub fn second_fundamental_form(frame: &OrbitFrame) -> Result<CurvatureData> {
    let data = curvature_tables(frame)?;
    if data.alpha.is_none() {
        return Err(Error::Input("tangent vectors S_i·x and the normal basis must be orthonormal".into()));
    }
    Ok(data)
}

/// `r_{ijkl} = ⟨Π(X_i,X_l), Π(X_j,X_k)⟩ − ⟨Π(X_j,X_l), Π(X_i,X_k)⟩` and
/// `R_{jk} = Σ_i r_{ijki}`.
pub fn riemann_and_ricci(mut curv: CurvatureData) -> CurvatureData {
    let p = &curv.pi_vectors;
    let n = p.len();
    let g: Vec<Vec<Vec<Vec<Rational>>>> = (0..n)
        .map(|a| (0..n).map(|b| (0..n).map(|c| (0..n).map(|d| dot(&p[a][b], &p[c][d])).collect()).collect()).collect())
        .collect();
    let r: Table4 = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| (0..n).map(|l| g[i][l][j][k].minus(&g[j][l][i][k])).collect()).collect())
                .collect()
        })
        .collect();
    let ricci = (0..n)
        .map(|j| (0..n).map(|k| (0..n).fold(Rational::zero(), |acc, i| acc.plus(&r[i][j][k][i]))).collect())
        .collect();
    curv.riemann = Some(r);
    curv.ricci = Some(ricci);
    curv
}

/// `r_{ijkl} = −r_{jikl}` and `r_{ijkl} = −r_{ijlk}`.
pub fn riemann_antisymmetric(r: &Table4) -> bool {
    let n = r.len();
    (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|k| (0..n).all(|l| r[i][j][k][l] == r[j][i][k][l].negate() && r[i][j][k][l] == r[i][j][l][k].negate()))
        })
    })
}

fn complement_basis(p: &Projector, m: usize) -> Vec<Vec<Rational>> {
    if p.rank() == 0 {
        (0..m).map(|i| (0..m).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
    } else {
        nullspace(&Matrix::from_rows(p.basis.clone()))
    }
}

#[derive(Clone, Debug)]
pub struct ChartCurvature {
    /// `yᵀ S_i y = 0` for all fields.
    pub osculates: bool,
    /// `Ñ = π*(y)(N)`.
    pub normal_is_projected: bool,
    /// `Π_C(X̃_a, X̃_b) = λ_Ñ(S̃_b S̃_a y)` as vectors.
    pub pi_vectors: Table3,
    /// Under osculation, equality with the projected ambient `Π`.
    pub matches_projected_ambient: Option<bool>,
    pub curvature: CurvatureData,
}

/// Second fundamental form of `Õ(y)` inside the sphere chart `‖v‖ = ‖y‖`.
pub fn chart_second_fundamental_form(frame: &OrbitFrame) -> Result<ChartCurvature> {
    let y = &frame.x;
    let m = y.len();
    if !frame.is_simple() {
        return Err(Error::NotApplicable("y is not a simple point".into()));
    }
    let radial = Projector::onto_span(std::slice::from_ref(y), m)?;
    let proj = |v: &[Rational]| radial.complement(v);
    let tilde: Vec<Vec<Rational>> = (0..frame.len()).map(|i| proj(&frame.tangent_vector(i))).collect();
    // The chart orbit's tangent space is the projection of the whole of T_y O.
    let mut span: Vec<Vec<Rational>> = frame.tangent.basis.iter().map(|v| proj(v)).collect();
    span.push(y.clone());
    let tangent_and_radial = Projector::onto_span(&span, m)?;
    let n = frame.len();
    let pi_vectors: Table3 = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let sa = &tilde[a];
                    let v = proj(&frame.generators[b].mul_vec(sa));
                    tangent_and_radial.complement(&v)
                })
                .collect()
        })
        .collect();
    let osculates = (0..n).all(|i| dot(y, &frame.tangent_vector(i)).is_zero());
    let projected_n: Vec<Vec<Rational>> = frame.normal.iter().map(|v| proj(v)).collect();
    let chart_normal_dim = m - tangent_and_radial.rank();
    let normal_is_projected = basis_of_span(&projected_n, m).len() == chart_normal_dim
        && projected_n.iter().all(|v| vec_is_zero(&tangent_and_radial.along(v)));
    let matches_projected_ambient = osculates.then(|| {
        (0..n).all(|a| (0..n).all(|b| proj(&frame.pi_vector(a, b)) == pi_vectors[a][b]))
    });
    let chart_basis = complement_basis(&tangent_and_radial, m);
    let pi = pi_vectors
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| coordinates(&chart_basis, v).ok_or_else(|| Error::Verification("chart Π is not normal".into())))
                .collect()
        })
        .collect::<Result<Table3>>()?;
    let pi_symmetric = (0..n).all(|a| (0..n).all(|b| pi_vectors[a][b] == pi_vectors[b][a]));
    let curvature = riemann_and_ricci(CurvatureData {
        alpha: None,
        pi,
        pi_vectors: pi_vectors.clone(),
        skew: frame.generators_skew(),
        beta_is_minus_alpha: None,
        pi_symmetric,
        riemann: None,
        ricci: None,
    });
    Ok(ChartCurvature { osculates, normal_is_projected, pi_vectors, matches_projected_ambient, curvature })
}
