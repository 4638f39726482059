//! The worked examples: the quartic `(Σ y_i² + z²)²` in two and three
//! variables, and `det₃` under the one-parameter subgroups `λ₁`, `λ₂`, `λ₄`.

use super::OnePS;
use crate::exact::{q, Rational};
use crate::lie::{default_names, Form, LieElement, MPoly};

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn parse(src: &str, vars: &[String]) -> Form {
    Form::parse(src, vars, None).expect("built-in example parses")
}

/// Variables `(z, y)`; `λ` scales `z`.
pub fn o2() -> (Form, OnePS, Vec<String>) {
    let v = names(&["z", "y"]);
    (parse("(y^2+z^2)^2", &v), OnePS::new(vec![1, 0]), v)
}

/// Variables `(z, y1, y2)`; `λ` scales `z`.
pub fn o3() -> (Form, OnePS, Vec<String>) {
    let v = names(&["z", "y1", "y2"]);
    (parse("(y1^2+y2^2+z^2)^2", &v), OnePS::new(vec![1, 0, 0]), v)
}

/// The printed basis of `𝒦(t)` for the three-variable quartic.
pub fn o3_kt_printed(t: &Rational) -> [LieElement; 3] {
    let t2 = t * t;
    let z = q(0);
    let one = q(1);
    let m = |rows: [[Rational; 3]; 3]| LieElement(crate::exact::Matrix::from_rows(rows.map(|r| r.to_vec()).to_vec()));
    [
        m([[z.clone(), one.clone(), z.clone()], [-t2.clone(), z.clone(), z.clone()], [z.clone(), z.clone(), z.clone()]]),
        m([[z.clone(), z.clone(), one.clone()], [z.clone(), z.clone(), z.clone()], [-t2, z.clone(), z.clone()]]),
        m([[z.clone(), z.clone(), z.clone()], [z.clone(), z.clone(), one.clone()], [z.clone(), -one, z]]),
    ]
}

pub fn det3_names() -> Vec<String> {
    default_names(9)
}

fn det_of(entries: &[[MPoly; 3]; 3]) -> Form {
    let rows: Vec<Vec<MPoly>> = entries.iter().map(|r| r.to_vec()).collect();
    Form::new(3, MPoly::det(&rows)).expect("cubic")
}

/// `det₃` in the standard coordinates `X = (x_ij)`, row-major.
pub fn det3() -> Form {
    let x = |k: usize| MPoly::var(9, k);
    det_of(&[[x(0), x(1), x(2)], [x(3), x(4), x(5)], [x(6), x(7), x(8)]])
}

/// Coordinates `(x1, …, x8, z)` with `x9 = z − x1 − x5`; `λ₁` scales `z`.
pub fn det3_lambda1() -> (Form, OnePS, Vec<String>) {
    let mut v = default_names(8);
    v.push("z".into());
    let x = |k: usize| MPoly::var(9, k);
    let x9 = x(8).sub(&x(0)).sub(&x(4));
    let f = det_of(&[[x(0), x(1), x(2)], [x(3), x(4), x(5)], [x(6), x(7), x9]]);
    (f, OnePS::new(vec![0, 0, 0, 0, 0, 0, 0, 0, 1]), v)
}

pub fn q1() -> Form {
    let x = |k: usize| MPoly::var(9, k);
    let c = x(0).add(&x(4)).scale(&q(-1));
    det_of(&[[x(0), x(1), x(2)], [x(3), x(4), x(5)], [x(6), x(7), c]])
}

pub fn q1_prime() -> Form {
    let (_, _, v) = det3_lambda1();
    parse("z*(x1*x5 - x2*x4)", &v)
}

/// `det(Y + Z)` with `Y` skew in `x1..x3` and `Z` symmetric in `x4..x9`;
/// `λ₂` scales `Z`.
pub fn det3_lambda2() -> (Form, OnePS, Vec<String>) {
    let x = |k: usize| MPoly::var(9, k);
    let two = |p: MPoly| p.scale(&q(2));
    let neg = |p: MPoly| p.scale(&q(-1));
    let y = [
        [MPoly::zero(9), x(0), neg(x(1))],
        [neg(x(0)), MPoly::zero(9), x(2)],
        [x(1), neg(x(2)), MPoly::zero(9)],
    ];
    let z = [[two(x(5)), x(7), x(8)], [x(7), two(x(4)), x(6)], [x(8), x(6), two(x(3))]];
    let sum: [[MPoly; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| y[i][j].add(&z[i][j])));
    (det_of(&sum), OnePS::new(vec![0, 0, 0, 1, 1, 1, 1, 1, 1]), det3_names())
}

pub fn q2() -> Form {
    parse("x4*x1^2 + x5*x2^2 + x6*x3^2 + x7*x1*x2 + x8*x2*x3 + x9*x1*x3", &det3_names())
}

pub fn q3() -> Form {
    parse("8*x4*x5*x6 - 2*x6*x7^2 - 2*x4*x8^2 - 2*x5*x9^2 + 2*x7*x8*x9", &det3_names())
}

/// `det₃` in standard coordinates with `x1..x4` of weight one, which gives
/// the displayed expansion `t·Q₄ + t²·Q₄′`.
pub fn det3_lambda4() -> (Form, OnePS, Vec<String>) {
    (det3(), OnePS::new(vec![1, 1, 1, 1, 0, 0, 0, 0, 0]), det3_names())
}

pub fn q4() -> Form {
    parse("x1*(x5*x9 - x6*x8) + x7*(x2*x6 - x3*x5)", &det3_names())
}

pub fn q4_prime() -> Form {
    parse("-x4*(x2*x9 - x3*x8)", &det3_names())
}

/// The operator list for `r` (from `[E₂₃, Y]`) and `s` as usually written
/// down; `r` misses the `(3,3)` entry and does not annihilate `Q₁`.
pub fn r_and_s_e23() -> (LieElement, LieElement) {
    let mut r = LieElement::zero(9);
    for &(i, j, c) in &[(2, 3, 1), (4, 7, -1), (5, 6, 1), (5, 8, -1), (6, 1, 1), (6, 5, 1), (8, 1, -1), (8, 5, -1)] {
        r.0[(i - 1, j - 1)] = q(c);
    }
    let mut s = LieElement::zero(9);
    s.0[(5, 8)] = q(-1);
    s.0[(7, 8)] = q(1);
    (r, s)
}

/// `Y ↦ [E₂₃, Y]` on trace-free `Y`, written in the coordinates of
/// `det3_lambda1`: `−x2∂3 + x7∂4 + x8∂5 − (x1 + 2x5)∂6`.
pub fn conj_e23() -> LieElement {
    let mut r = LieElement::zero(9);
    for &(i, j, c) in &[(3, 2, -1), (4, 7, 1), (5, 8, 1), (6, 1, -1), (6, 5, -2)] {
        r.0[(i - 1, j - 1)] = q(c);
    }
    r
}
