use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::form::{Form, MPoly};
use crate::error::{Error, Result};
use crate::exact::{basis_of_span, nullspace, q, Field, Matrix, Rational, Ring, UniPoly};

/// Element of gl(n) over ℚ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LieElement(pub Matrix<Rational>);

/// Element of gl(n) over ℚ[t].
pub type PolyLieElement = Matrix<UniPoly>;

impl LieElement {
    pub fn zero(n: usize) -> Self {
        LieElement(Matrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        LieElement(Matrix::identity(n))
    }

    /// Matrix unit `E_ij` (0-based).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        m[(i, j)] = Rational::one();
        LieElement(m)
    }

    pub fn diag(d: &[Rational]) -> Self {
        let n = d.len();
        LieElement(Matrix::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { Rational::zero() }))
    }

    pub fn from_matrix(m: Matrix<Rational>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension("Lie algebra element must be square".into()));
        }
        Ok(LieElement(m))
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        LieElement(Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(),
        ))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.0[(i, j)]
    }

    /// Row-major coordinate vector.
    pub fn to_vec(&self) -> Vec<Rational> {
        self.0.data().to_vec()
    }

    pub fn from_vec(n: usize, v: &[Rational]) -> Self {
        LieElement(Matrix::new(n, n, v.to_vec()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        LieElement(self.0.plus(&o.0))
    }

    pub fn sub(&self, o: &Self) -> Self {
        LieElement(self.0.minus(&o.0))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LieElement(self.0.scale(c))
    }

    pub fn trace(&self) -> Rational {
        self.0.trace()
    }

    /// Frobenius inner product `Σ a_ij b_ij`.
    pub fn frobenius(&self, o: &Self) -> Rational {
        crate::exact::dot(self.0.data(), o.0.data())
    }

    pub fn to_poly(&self) -> PolyLieElement {
        self.0.map(|x| UniPoly::constant(x.clone()))
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.dim())
            .map(|i| {
                let r: Vec<String> = self.0.row(i).iter().map(|x| x.to_string()).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `[a, b] = ab − ba`
pub fn bracket(a: &LieElement, b: &LieElement) -> Result<LieElement> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension(format!("bracket of gl({}) and gl({})", a.dim(), b.dim())));
    }
    Ok(LieElement(a.0.commutator(&b.0)))
}

pub fn poly_bracket(a: &PolyLieElement, b: &PolyLieElement) -> PolyLieElement {
    a.commutator(b)
}

/// Standard basis `E_11, E_12, …` of gl(n), row-major.
pub fn gl_basis(n: usize) -> Vec<LieElement> {
    (0..n * n).map(|k| LieElement::unit(n, k / n, k % n)).collect()
}

/// Basis of sl(n): `E_ii − E_{i+1,i+1}` then the off-diagonal units.
pub fn sl_basis(n: usize) -> Vec<LieElement> {
    let mut out: Vec<LieElement> = (0..n.saturating_sub(1))
        .map(|i| LieElement::unit(n, i, i).sub(&LieElement::unit(n, i + 1, i + 1)))
        .collect();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(LieElement::unit(n, i, j));
            }
        }
    }
    out
}

/// Derivation action: entry `g(i,j)` acts as `x_j ∂/∂x_i`.
pub fn act_on_form(g: &LieElement, f: &Form) -> Result<Form> {
    let n = f.nvars();
    if g.dim() != n {
        return Err(Error::Dimension(format!("gl({}) acting on forms in {} variables", g.dim(), n)));
    }
    let mut out = MPoly::zero(n);
    for i in 0..n {
        let di = f.poly().derivative(i);
        if di.is_zero() {
            continue;
        }
        for j in 0..n {
            let c = g.get(i, j);
            if !c.is_zero() {
                out = out.add(&di.mul(&MPoly::var(n, j)).scale(c));
            }
        }
    }
    Form::new(f.degree(), out)
}

/// Conjugation action `g·y = gy − yg`.
pub fn act_on_matrix(g: &LieElement, y: &Matrix<Rational>) -> Result<Matrix<Rational>> {
    if !y.is_square() || y.rows() != g.dim() {
        return Err(Error::Dimension("conjugation action shape".into()));
    }
    Ok(g.0.commutator(y))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymRep {
    nvars: usize,
    degree: u32,
    basis: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

/// A representation of gl(n) with a fixed basis of V.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Representation {
    /// Degree-`d` forms, monomial basis in descending lexicographic order.
    Sym(SymRep),
    /// n×n matrices under conjugation, row-major entry basis.
    Conj(usize),
}

/// Exponent vectors of degree `d` in `n` variables, descending lexicographic.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(n, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

impl Representation {
    pub fn sym(nvars: usize, degree: u32) -> Self {
        let basis = monomials(nvars, degree);
        let index = basis.iter().enumerate().map(|(k, e)| (e.clone(), k)).collect();
        Representation::Sym(SymRep {
            nvars,
            degree,
            basis,
            index,
        })
    }

    pub fn conj(n: usize) -> Self {
        Representation::Conj(n)
    }

    /// n for gl(n).
    pub fn n(&self) -> usize {
        match self {
            Representation::Sym(s) => s.nvars,
            Representation::Conj(n) => *n,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Representation::Sym(s) => s.basis.len(),
            Representation::Conj(n) => n * n,
        }
    }

    pub fn degree(&self) -> Option<u32> {
        match self {
            Representation::Sym(s) => Some(s.degree),
            Representation::Conj(_) => None,
        }
    }

    pub fn monomial_basis(&self) -> Option<&[Vec<u32>]> {
        match self {
            Representation::Sym(s) => Some(&s.basis),
            Representation::Conj(_) => None,
        }
    }

    pub fn label(&self, k: usize, names: &[String]) -> String {
        match self {
            Representation::Sym(s) => {
                MPoly::term(s.nvars, s.basis[k].clone(), Rational::one()).fmt_with(names)
            }
            Representation::Conj(n) => format!("E{}{}", k / n + 1, k % n + 1),
        }
    }

    pub fn form_to_vec(&self, f: &Form) -> Result<Vec<Rational>> {
        let Representation::Sym(s) = self else {
            return Err(Error::Input("forms live in a Sym representation".into()));
        };
        if f.nvars() != s.nvars || (f.degree() != s.degree && !f.is_zero()) {
            return Err(Error::Dimension(format!(
                "form in {} variables of degree {} vs Sym^{}({} vars)",
                f.nvars(),
                f.degree(),
                s.degree,
                s.nvars
            )));
        }
        let mut v = vec![Rational::zero(); s.basis.len()];
        for (e, c) in f.poly().terms() {
            v[s.index[e]] = c.clone();
        }
        Ok(v)
    }

    pub fn vec_to_form(&self, v: &[Rational]) -> Form {
        let Representation::Sym(s) = self else {
            panic!("vec_to_form on a matrix representation");
        };
        let p = MPoly::from_terms(
            s.nvars,
            v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (s.basis[k].clone(), c.clone())),
        );
        Form::new(s.degree, p).expect("homogeneous by construction")
    }

    pub fn matrix_to_vec(&self, m: &Matrix<Rational>) -> Vec<Rational> {
        m.data().to_vec()
    }

    pub fn vec_to_matrix(&self, v: &[Rational]) -> Matrix<Rational> {
        let n = self.n();
        Matrix::new(n, n, v.to_vec())
    }

    /// `e_ij · v` for the matrix unit `E_ij`.
    pub fn act_unit(&self, i: usize, j: usize, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        match self {
            Representation::Sym(s) => {
                for (k, c) in v.iter().enumerate() {
                    if c.is_zero() || s.basis[k][i] == 0 {
                        continue;
                    }
                    let e = &s.basis[k];
                    let mut e2 = e.clone();
                    e2[i] -= 1;
                    e2[j] += 1;
                    let t = s.index[&e2];
                    out[t] = out[t].plus(&c.times(&q(e[i] as i64)));
                }
            }
            Representation::Conj(n) => {
                let n = *n;
                // (E_ij Y)_{i,c} = Y_{j,c};  (Y E_ij)_{r,j} = Y_{r,i}
                for c in 0..n {
                    let y = &v[j * n + c];
                    if !y.is_zero() {
                        out[i * n + c] = out[i * n + c].plus(y);
                    }
                }
                for r in 0..n {
                    let y = &v[r * n + i];
                    if !y.is_zero() {
                        out[r * n + j] = out[r * n + j].minus(y);
                    }
                }
            }
        }
        out
    }

    pub fn act(&self, g: &LieElement, v: &[Rational]) -> Vec<Rational> {
        let n = self.n();
        assert_eq!(g.dim(), n, "Lie element dimension");
        let mut out = vec![Rational::zero(); self.dim()];
        for i in 0..n {
            for j in 0..n {
                let c = g.get(i, j);
                if c.is_zero() {
                    continue;
                }
                for (o, x) in out.iter_mut().zip(self.act_unit(i, j, v)) {
                    if !x.is_zero() {
                        *o = o.plus(&c.times(&x));
                    }
                }
            }
        }
        out
    }

    /// Columns `E_ij · v` in row-major order of `(i, j)`: the orbit map at `v`.
    pub fn orbit_matrix(&self, v: &[Rational]) -> Matrix<Rational> {
        let n = self.n();
        let cols: Vec<Vec<Rational>> = (0..n * n).map(|k| self.act_unit(k / n, k % n, v)).collect();
        Matrix::from_cols(self.dim(), &cols)
    }

    /// Matrix of `ρ(g)` acting on coordinate column vectors.
    pub fn action_matrix(&self, g: &LieElement) -> Matrix<Rational> {
        let d = self.dim();
        let cols: Vec<Vec<Rational>> = (0..d)
            .map(|k| {
                let mut e = vec![Rational::zero(); d];
                e[k] = Rational::one();
                self.act(g, &e)
            })
            .collect();
        Matrix::from_cols(d, &cols)
    }

    /// Weight of basis vector `k` under the 1-PS with diagonal weights `w`.
    pub fn basis_weight(&self, k: usize, w: &[i64]) -> i64 {
        match self {
            Representation::Sym(s) => s.basis[k].iter().zip(w).map(|(&e, &x)| e as i64 * x).sum(),
            Representation::Conj(n) => w[k / n] - w[k % n],
        }
    }

    /// Weight by which `E_ij` shifts V-weights.
    pub fn unit_weight(&self, i: usize, j: usize, w: &[i64]) -> i64 {
        match self {
            Representation::Sym(_) => w[j] - w[i],
            Representation::Conj(_) => w[i] - w[j],
        }
    }
}

/// Group action normalized so that `Stab(a ⋅ v) = a Stab(v) a⁻¹`: forms are
/// pulled back along `a⁻¹`, matrices are conjugated.
pub fn group_act(rep: &Representation, a: &Matrix<Rational>, v: &[Rational]) -> Result<Vec<Rational>> {
    let ainv = crate::exact::inverse(a)?;
    match rep {
        Representation::Sym(_) => rep.form_to_vec(&rep.vec_to_form(v).compose_linear(&ainv)),
        Representation::Conj(_) => Ok(rep.matrix_to_vec(&a.times(&rep.vec_to_matrix(v)).times(&ainv))),
    }
}

/// Split `x` into pieces that shift V-weights by a fixed amount.
pub fn weight_components(rep: &Representation, x: &LieElement, w: &[i64]) -> BTreeMap<i64, LieElement> {
    let n = x.dim();
    let mut out: BTreeMap<i64, LieElement> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let c = x.get(i, j);
            if c.is_zero() {
                continue;
            }
            let e = out.entry(rep.unit_weight(i, j, w)).or_insert_with(|| LieElement::zero(n));
            e.0[(i, j)] = c.clone();
        }
    }
    out
}

/// Basis of the stabilizer of `v` in gl(n).
pub fn stabilizer_algebra(rep: &Representation, v: &[Rational]) -> Vec<LieElement> {
    let n = rep.n();
    nullspace(&rep.orbit_matrix(v))
        .into_iter()
        .map(|c| LieElement::from_vec(n, &c))
        .collect()
}

/// Stabilizer of `v` inside the subalgebra spanned by `basis`.
pub fn stabilizer_in(rep: &Representation, v: &[Rational], basis: &[LieElement]) -> Vec<LieElement> {
    let cols: Vec<Vec<Rational>> = basis.iter().map(|b| rep.act(b, v)).collect();
    nullspace(&Matrix::from_cols(rep.dim(), &cols))
        .into_iter()
        .map(|c| combine(&c, basis))
        .collect()
}

/// `Σ c_k b_k`
pub fn combine(c: &[Rational], basis: &[LieElement]) -> LieElement {
    let n = basis.first().map_or(0, |b| b.dim());
    let mut acc = LieElement::zero(n);
    for (x, b) in c.iter().zip(basis) {
        if !x.is_zero() {
            acc = acc.add(&b.scale(x));
        }
    }
    acc
}

/// Basis of `gl(n)·v ⊆ V`.
pub fn tangent_space(rep: &Representation, v: &[Rational]) -> Vec<Vec<Rational>> {
    basis_of_span(&rep.orbit_matrix(v).columns(), rep.dim())
}

/// Coordinates of `x` in an independent family of Lie elements.
pub fn lie_coordinates(basis: &[LieElement], x: &LieElement) -> Option<Vec<Rational>> {
    let vecs: Vec<Vec<Rational>> = basis.iter().map(|b| b.to_vec()).collect();
    crate::exact::coordinates(&vecs, &x.to_vec())
}

/// Structure constants `[b_i, b_j] = Σ_k c_ij^k b_k`; `None` if not closed.
pub fn structure_constants(basis: &[LieElement]) -> Option<Vec<Vec<Vec<Rational>>>> {
    let mut out = Vec::with_capacity(basis.len());
    for a in basis {
        let mut row = Vec::with_capacity(basis.len());
        for b in basis {
            row.push(lie_coordinates(basis, &bracket(a, b).ok()?)?);
        }
        out.push(row);
    }
    Some(out)
}

pub fn is_subalgebra(basis: &[LieElement]) -> bool {
    structure_constants(basis).is_some()
}

/// `a / b` for proportional Lie elements (b ≠ 0).
pub fn ratio(a: &LieElement, b: &LieElement) -> Option<Rational> {
    let k = b.0.data().iter().position(|x| !x.is_zero())?;
    let r = a.0.data()[k].divide(&b.0.data()[k]);
    (a == &b.scale(&r)).then_some(r)
}
