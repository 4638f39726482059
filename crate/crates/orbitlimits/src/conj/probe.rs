//! Floating-point probe of the witness families: evaluate the curve at small
//! `t` and compare conjugation invariants (ranks of powers) with `J_χ`.

use nalgebra::DMatrix;
use serde::Serialize;

use super::closure::witness_family;
use super::partition::{partitions_of, Partition};
use super::spec::JordanSpec;
use crate::error::Result;
use crate::exact::{Matrix, UniPoly};

pub const PROBE_TS: [f64; 4] = [1e-1, 1e-2, 1e-3, 1e-4];

/// Ranks of `M, M², …, Mⁿ`; singular values below `tol·max(1, ‖M^k‖)` count as zero.
pub fn numeric_rank_sequence(m: &DMatrix<f64>, tol: f64) -> Vec<usize> {
    let n = m.nrows();
    let mut p = DMatrix::<f64>::identity(n, n);
    (0..n)
        .map(|_| {
            p = &p * m;
            let scale = p.norm().max(1.0);
            p.singular_values().iter().filter(|&&s| s > tol * scale).count()
        })
        .collect()
}

pub fn nilpotent_rank_sequence(theta: &Partition) -> Vec<usize> {
    (1..=theta.n()).map(|k| theta.nilpotent_power_rank(k)).collect()
}

fn eval_f64(m: &Matrix<UniPoly>, t: f64) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].eval_f64(t))
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub chi: Partition,
    pub target: Vec<usize>,
    /// `(t, rank sequence of the curve at t)`.
    pub samples: Vec<(f64, Vec<usize>)>,
    /// The sequence is constant and equal to `target` from some `t` on.
    pub stabilizes_to_target: bool,
    /// Partitions `θ ⋬ χ` whose rank sequence is nowhere above the limit's
    /// (lower semicontinuity would then not separate them).
    pub unseparated: Vec<Partition>,
}

/// Tolerance `√t`: the curve is `J_χ + O(t)`, so spurious singular values are
/// `O(t)` while genuine ones stay of order one.
pub fn probe_witness(spec: &JordanSpec) -> Result<ProbeReport> {
    let fam = witness_family(spec)?;
    let target = nilpotent_rank_sequence(&fam.chi);
    let samples: Vec<(f64, Vec<usize>)> =
        PROBE_TS.iter().map(|&t| (t, numeric_rank_sequence(&eval_f64(&fam.curve, t), t.sqrt()))).collect();
    let last = samples.len() - 1;
    let stabilizes_to_target = samples[last].1 == target && samples[last - 1].1 == target;
    let limit = &samples[last].1;
    let unseparated = partitions_of(spec.n())
        .into_iter()
        .filter(|th| !fam.chi.dominates(th).unwrap_or(true))
        .filter(|th| nilpotent_rank_sequence(th).iter().zip(limit).all(|(a, b)| a <= b))
        .collect();
    Ok(ProbeReport { chi: fam.chi, target, samples, stabilizes_to_target, unseparated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn probe_distinct_and_repeated() {
        let s = JordanSpec::from_values(&[(q(1), &[1]), (q(2), &[1]), (q(-1), &[1])]).unwrap();
        let r = probe_witness(&s).unwrap();
        assert!(r.stabilizes_to_target, "{r:?}");
        assert!(r.unseparated.is_empty());
        let s = JordanSpec::from_values(&[(q(1), &[1, 1]), (q(-1), &[1])]).unwrap();
        let r = probe_witness(&s).unwrap();
        assert_eq!(r.target, vec![1, 0, 0]);
        assert!(r.stabilizes_to_target && r.unseparated.is_empty(), "{r:?}");
    }

    #[test]
    fn rank_sequences() {
        let p = Partition::new(vec![3, 1]).unwrap();
        assert_eq!(nilpotent_rank_sequence(&p), vec![2, 1, 0, 0]);
    }
}
