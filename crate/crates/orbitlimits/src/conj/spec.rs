//! Jordan data of a matrix: eigenvalues with the sizes of their Jordan blocks.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::partition::Partition;
use crate::error::{Error, Result};
use crate::exact::{characteristic_polynomial, parse_rational, rank, rational_roots, Matrix, Rational, Ring};

/// A rational eigenvalue, or a symbolic label standing for one outside ℚ.
/// Only the multiplicity structure enters the closure decision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Eigenvalue {
    Value(Rational),
    Label(String),
}

impl Eigenvalue {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Eigenvalue::Value(v) => Some(v),
            Eigenvalue::Label(_) => None,
        }
    }
}

impl TryFrom<String> for Eigenvalue {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::Input("empty eigenvalue".into()));
        }
        Ok(parse_rational(t).map(Eigenvalue::Value).unwrap_or_else(|_| Eigenvalue::Label(t.to_string())))
    }
}

impl From<Eigenvalue> for String {
    fn from(e: Eigenvalue) -> Self {
        e.to_string()
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eigenvalue::Value(v) => write!(f, "{v}"),
            Eigenvalue::Label(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenBlocks {
    pub eigenvalue: Eigenvalue,
    pub sizes: Partition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<EigenBlocks>", into = "Vec<EigenBlocks>")]
pub struct JordanSpec {
    blocks: Vec<EigenBlocks>,
}

impl TryFrom<Vec<EigenBlocks>> for JordanSpec {
    type Error = Error;
    fn try_from(v: Vec<EigenBlocks>) -> Result<Self> {
        JordanSpec::new(v)
    }
}

impl From<JordanSpec> for Vec<EigenBlocks> {
    fn from(s: JordanSpec) -> Self {
        s.blocks
    }
}

impl JordanSpec {
    pub fn new(blocks: Vec<EigenBlocks>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::Input("a Jordan specification needs at least one eigenvalue".into()));
        }
        for (i, b) in blocks.iter().enumerate() {
            if b.sizes.is_empty() {
                return Err(Error::Input(format!("eigenvalue {} has no blocks", b.eigenvalue)));
            }
            if blocks[..i].iter().any(|c| c.eigenvalue == b.eigenvalue) {
                return Err(Error::Input(format!("eigenvalue {} listed twice", b.eigenvalue)));
            }
        }
        Ok(JordanSpec { blocks })
    }

    /// Rational eigenvalues with block sizes.
    pub fn from_values(data: &[(Rational, &[usize])]) -> Result<Self> {
        let blocks = data
            .iter()
            .map(|(v, sizes)| {
                Ok(EigenBlocks { eigenvalue: Eigenvalue::Value(v.clone()), sizes: Partition::new(sizes.to_vec())? })
            })
            .collect::<Result<Vec<_>>>()?;
        JordanSpec::new(blocks)
    }

    /// Anonymous distinct eigenvalues `μ1, μ2, …` with the given block sizes.
    pub fn from_partitions(parts: &[Partition]) -> Result<Self> {
        JordanSpec::new(
            parts
                .iter()
                .enumerate()
                .map(|(i, p)| EigenBlocks { eigenvalue: Eigenvalue::Label(format!("μ{}", i + 1)), sizes: p.clone() })
                .collect(),
        )
    }

    /// Nilpotent matrix with signature `θ`.
    pub fn nilpotent(theta: &Partition) -> Result<Self> {
        JordanSpec::new(vec![EigenBlocks { eigenvalue: Eigenvalue::Value(Rational::zero()), sizes: theta.clone() }])
    }

    pub fn blocks(&self) -> &[EigenBlocks] {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(|b| b.sizes.n()).sum()
    }

    /// The transpose block-spectrum partition `χ_j = Σ_i λ_{ij}`.
    pub fn chi(&self) -> Partition {
        self.blocks.iter().fold(Partition::from_unsorted(vec![]), |acc, b| acc.add(&b.sizes))
    }

    pub fn is_diagonalizable(&self) -> bool {
        self.blocks.iter().all(|b| b.sizes.part(0) == 1)
    }

    /// Multiplicities of the eigenvalues, for diagonalizable specs.
    pub fn spectrum_partition(&self) -> Option<Partition> {
        self.is_diagonalizable().then(|| Partition::from_unsorted(self.blocks.iter().map(|b| b.sizes.n()).collect()))
    }

    pub fn is_nilpotent(&self) -> bool {
        self.blocks.len() == 1 && self.blocks[0].eigenvalue == Eigenvalue::Value(Rational::zero())
    }

    /// The zero matrix has no image in projective space.
    pub fn is_zero_matrix(&self) -> bool {
        self.is_nilpotent() && self.is_diagonalizable()
    }

    /// Rational eigenvalues, if all are rational.
    pub fn values(&self) -> Result<Vec<Rational>> {
        self.blocks
            .iter()
            .map(|b| {
                b.eigenvalue
                    .value()
                    .cloned()
                    .ok_or_else(|| Error::Input(format!("eigenvalue {} is symbolic", b.eigenvalue)))
            })
            .collect()
    }

    /// The Jordan matrix (upper bidiagonal blocks, in listed order).
    pub fn matrix(&self) -> Result<Matrix<Rational>> {
        let vals = self.values()?;
        let sizes: Vec<(Rational, usize)> =
            self.blocks.iter().zip(vals).flat_map(|(b, v)| b.sizes.parts().iter().map(move |&s| (v.clone(), s))).collect();
        Ok(block_diagonal(&sizes.iter().map(|(v, s)| jordan_block(v, *s)).collect::<Vec<_>>()))
    }

    /// Jordan data of a rational matrix whose eigenvalues are all rational.
    pub fn from_matrix(m: &Matrix<Rational>) -> Result<Self> {
        if !m.is_square() || m.rows() == 0 {
            return Err(Error::Dimension("Jordan data of a non-square or empty matrix".into()));
        }
        let n = m.rows();
        let roots = rational_roots(&characteristic_polynomial(m))?;
        if roots.iter().map(|(_, k)| k).sum::<usize>() != n {
            return Err(Error::Input(
                "the spectrum is not rational; supply the Jordan data with symbolic eigenvalues instead".into(),
            ));
        }
        let blocks = roots
            .into_iter()
            .map(|(mu, mult)| {
                let shifted = m.minus(&Matrix::identity(n).scale(&mu));
                Ok(EigenBlocks { eigenvalue: Eigenvalue::Value(mu), sizes: block_sizes(&shifted, mult) })
            })
            .collect::<Result<Vec<_>>>()?;
        JordanSpec::new(blocks)
    }
}

impl fmt::Display for JordanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| format!("{}:{}", b.eigenvalue, b.sizes)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Jordan block sizes of the eigenvalue 0 of `a`, from the ranks of powers;
/// `mult` bounds the largest block.
fn block_sizes(a: &Matrix<Rational>, mult: usize) -> Partition {
    let n = a.rows();
    let mut ranks = vec![n];
    let mut cur = Matrix::identity(n);
    for _ in 0..=mult {
        cur = cur.times(a);
        ranks.push(rank(&cur));
    }
    // number of blocks of size ≥ k is r_{k−1} − r_k
    let at_least: Vec<usize> = (1..ranks.len()).map(|k| ranks[k - 1] - ranks[k]).collect();
    let mut parts = vec![];
    for k in 0..at_least.len() {
        let exactly = at_least[k] - at_least.get(k + 1).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(k + 1, exactly));
    }
    Partition::from_unsorted(parts)
}

/// Partition signature of a nilpotent matrix.
pub fn nilpotent_signature(m: &Matrix<Rational>) -> Result<Partition> {
    if !m.is_square() {
        return Err(Error::Dimension("signature of a non-square matrix".into()));
    }
    if !crate::exact::is_nilpotent(m) {
        return Err(Error::Input("matrix is not nilpotent".into()));
    }
    Ok(block_sizes(m, m.rows()))
}

pub fn jordan_block(mu: &Rational, size: usize) -> Matrix<Rational> {
    Matrix::from_fn(size, size, |i, j| {
        if i == j {
            mu.clone()
        } else if j == i + 1 {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// `J_θ = J_{θ_1} ⊕ J_{θ_2} ⊕ …`.
pub fn nilpotent_matrix(theta: &Partition) -> Matrix<Rational> {
    block_diagonal(&theta.parts().iter().map(|&s| jordan_block(&Rational::zero(), s)).collect::<Vec<_>>())
}

pub fn block_diagonal(blocks: &[Matrix<Rational>]) -> Matrix<Rational> {
    let n: usize = blocks.iter().map(|b| b.rows()).sum();
    let mut out = Matrix::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                out[(off + i, off + j)] = b[(i, j)].clone();
            }
        }
        off += b.rows();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn chi_of_the_closing_examples() {
        let x1 = JordanSpec::from_values(&[(q(1), &[1, 1]), (q(-1), &[1])]).unwrap();
        assert_eq!(x1.spectrum_partition(), Some(p(&[2, 1])));
        assert_eq!(x1.chi(), p(&[2, 1]));
        let x2 = JordanSpec::from_values(&[(q(1), &[2]), (q(-1), &[1])]).unwrap();
        assert_eq!(x2.chi(), p(&[3]));
        assert_eq!(JordanSpec::from_values(&[(q(5), &[4])]).unwrap().chi(), p(&[4]));
    }

    #[test]
    fn diagonalizable_chi_is_transposed_spectrum() {
        let s = JordanSpec::from_values(&[(q(0), &[1, 1, 1]), (q(2), &[1]), (q(3), &[1, 1])]).unwrap();
        assert_eq!(s.chi(), s.spectrum_partition().unwrap().transpose());
    }

    #[test]
    fn signatures_from_ranks() {
        assert_eq!(nilpotent_signature(&nilpotent_matrix(&p(&[3]))).unwrap(), p(&[3]));
        assert_eq!(nilpotent_signature(&nilpotent_matrix(&p(&[2, 1]))).unwrap(), p(&[2, 1]));
        assert!(nilpotent_signature(&Matrix::identity(2)).is_err());
    }

    #[test]
    fn round_trip_through_a_conjugated_matrix() {
        let spec = JordanSpec::from_values(&[(q(-1), &[2, 1]), (q(1), &[1]), (crate::exact::qf(1, 2), &[2])]).unwrap();
        let j = spec.matrix().unwrap();
        // conjugate by a unimodular upper-triangular matrix
        let u = Matrix::from_fn(6, 6, |i, k| if k >= i { q(1 + (i + k) as i64 % 3) } else { q(0) });
        let u = Matrix::from_fn(6, 6, |i, k| if i == k { q(1) } else { u[(i, k)].clone() });
        let m = u.times(&j).times(&crate::exact::inverse(&u).unwrap());
        let back = JordanSpec::from_matrix(&m).unwrap();
        assert_eq!(back.n(), 6);
        assert_eq!(back.chi(), spec.chi());
        let find = |v: Rational| back.blocks().iter().find(|b| b.eigenvalue == Eigenvalue::Value(v.clone())).unwrap().sizes.clone();
        assert_eq!(find(q(-1)), p(&[2, 1]));
        assert_eq!(find(crate::exact::qf(1, 2)), p(&[2]));
    }

    #[test]
    fn irrational_spectrum_is_rejected() {
        let m = Matrix::from_rows(vec![vec![q(0), q(2)], vec![q(1), q(0)]]);
        assert!(JordanSpec::from_matrix(&m).is_err());
    }

    #[test]
    fn eigenvalue_parsing() {
        assert_eq!(Eigenvalue::try_from("3/4".to_string()).unwrap(), Eigenvalue::Value(crate::exact::qf(3, 4)));
        assert_eq!(Eigenvalue::try_from("i".to_string()).unwrap(), Eigenvalue::Label("i".into()));
        assert!(JordanSpec::from_values(&[(q(1), &[1]), (q(1), &[1])]).is_err());
    }
}
