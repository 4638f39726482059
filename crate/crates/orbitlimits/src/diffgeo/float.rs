//! Floating-point second fundamental form, for inputs whose norms are not
//! rational squares and as a cross-check of the exact path.

use nalgebra::{DMatrix, DVector};

use super::curvature::OrbitFrame;
use crate::exact::{to_f64, Matrix, Rational};

fn to_dm(m: &Matrix<Rational>) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| to_f64(&m[(i, j)]))
}

fn to_dv(v: &[Rational]) -> DVector<f64> {
    DVector::from_iterator(v.len(), v.iter().map(to_f64))
}

/// `λ_N(S_b S_a x)` with `N` the orthogonal complement of the span of
/// `tangent_span`, via an SVD-orthonormalized tangent basis.
pub fn pi_vectors_f64(x: &DVector<f64>, generators: &[DMatrix<f64>], tangent_span: &[DVector<f64>]) -> Vec<Vec<DVector<f64>>> {
    let m = x.len();
    let q = if tangent_span.is_empty() {
        DMatrix::<f64>::zeros(m, 0)
    } else {
        let t = DMatrix::from_columns(tangent_span);
        let svd = t.svd(true, false);
        let u = svd.u.expect("left singular vectors");
        let tol = 1e-10 * svd.singular_values.max().max(1.0);
        let keep: Vec<usize> = (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i] > tol).collect();
        DMatrix::from_fn(m, keep.len(), |i, j| u[(i, keep[j])])
    };
    let project = |v: DVector<f64>| -> DVector<f64> {
        let c = q.transpose() * &v;
        v - &q * c
    };
    generators
        .iter()
        .map(|sa| generators.iter().map(|sb| project(sb * (sa * x))).collect())
        .collect()
}

/// Largest `‖Π_float − Π_exact‖ / max(1, ‖Π_exact‖)` over all pairs.
pub fn exact_float_discrepancy(frame: &OrbitFrame) -> f64 {
    let x = to_dv(&frame.x);
    let gens: Vec<DMatrix<f64>> = frame.generators.iter().map(to_dm).collect();
    // The tangent space is the complement of the frame's normal space, which may
    // be larger than the span of the fields' values.
    let m = x.len();
    let normal: Vec<DVector<f64>> = frame.normal.iter().map(|v| to_dv(v)).collect();
    let complement = if normal.is_empty() {
        DMatrix::<f64>::identity(m, m)
    } else {
        let svd = DMatrix::from_columns(&normal).svd(true, false);
        let u = svd.u.expect("left singular vectors");
        let k = svd.singular_values.iter().filter(|&&s| s > 1e-10).count();
        let uk = DMatrix::from_fn(m, k, |i, j| u[(i, j)]);
        DMatrix::<f64>::identity(m, m) - &uk * uk.transpose()
    };
    let tangent_span: Vec<DVector<f64>> = (0..m).map(|j| complement.column(j).into_owned()).collect();
    let fl = pi_vectors_f64(&x, &gens, &tangent_span);
    let ex = frame.pi_vectors();
    let mut worst: f64 = 0.0;
    for (ra, rb) in fl.iter().zip(&ex) {
        for (a, b) in ra.iter().zip(rb) {
            let b = to_dv(b);
            worst = worst.max((a - &b).norm() / b.norm().max(1.0));
        }
    }
    worst
}
