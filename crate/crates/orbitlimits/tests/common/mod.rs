//! Seeded instance generators shared by the property suites and the
//! acceptance harness.
#![allow(dead_code)]

use orbitlimits::conj::{partitions_of, JordanSpec, Partition};
use orbitlimits::exact::{q, Rational};
use orbitlimits::lie::{Form, LieElement, Representation};
use orbitlimits::limits::{OnePS, Subject};
use orbitlimits::local_model::{build_local_model, build_local_model_in, ComplementPolicy, LocalModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small(rng: &mut ChaCha8Rng, k: usize, r: i64) -> Vec<Rational> {
    (0..k).map(|_| q(rng.gen_range(-r..=r))).collect()
}

/// A sparse form in 2 or 3 variables of degree 2–4 with a non-constant 1-PS
/// with weights in {0,1,2}.
pub fn random_form_and_ps(rng: &mut ChaCha8Rng) -> (Subject, OnePS) {
    loop {
        let n = rng.gen_range(2..=3);
        let d = rng.gen_range(2..=if n == 2 { 4 } else { 3 });
        let rep = Representation::sym(n, d);
        let terms = rng.gen_range(1..=3);
        let mut v = vec![q(0); rep.dim()];
        for _ in 0..terms {
            let k = rng.gen_range(0..rep.dim());
            v[k] = q(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 });
        }
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        if w.iter().all(|&x| x == w[0]) {
            continue;
        }
        let f: Form = rep.vec_to_form(&v);
        return (Subject::form(&f).expect("nonzero form"), OnePS::new(w));
    }
}

/// Fixed local models on which reconstruction is exercised.
pub fn reconstruction_models() -> Vec<(&'static str, LocalModel)> {
    let g = |a: i64, b: i64, c: i64| LieElement::from_ints(&[&[a, b], &[c, -a]]);
    let sl2 = [g(1, 0, 0), g(0, 1, 0), g(0, 0, 1)];
    let sym = |n: usize, d: u32, idx: &[usize]| {
        let rep = Representation::sym(n, d);
        let mut v = vec![q(0); rep.dim()];
        for &k in idx {
            v[k] = q(1);
        }
        (rep, v)
    };
    let (r1, x1) = sym(2, 2, &[0]);
    let (r2, x2) = sym(2, 4, &[0]);
    let (r3, x3) = sym(3, 3, &[4]);
    let r4 = Representation::conj(3);
    let mut j3 = vec![q(0); 9];
    j3[1] = q(1);
    j3[5] = q(1);
    vec![
        ("sl(2) at x² in Sym²", build_local_model_in(&r1, &x1, &sl2, &ComplementPolicy::Orthogonal, None).unwrap()),
        ("gl(2) at a fourth power", build_local_model(&r2, &x2, &ComplementPolicy::Orthogonal).unwrap()),
        ("gl(3) at a cubic monomial", build_local_model(&r3, &x3, &ComplementPolicy::Orthogonal).unwrap()),
        ("gl(3) conjugation at J₃", build_local_model(&r4, &j3, &ComplementPolicy::Orthogonal).unwrap()),
    ]
}

/// A slice point `n ∈ N` and a vector `Δv ∈ V`.
pub fn random_slice_pair(rng: &mut ChaCha8Rng, m: &LocalModel) -> (Vec<Rational>, Vec<Rational>) {
    let c = small(rng, m.n.len(), 3);
    (m.n_vector(&c), small(rng, m.rep.dim(), 3))
}

/// Every multiplicity structure of size `n`: multisets of nonempty partitions,
/// one per eigenvalue.
pub fn specs_of(n: usize) -> Vec<JordanSpec> {
    fn go(rem: usize, min_key: Option<&Partition>, cur: &mut Vec<Partition>, out: &mut Vec<Vec<Partition>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for m in 1..=rem {
            for part in partitions_of(m) {
                if min_key.is_some_and(|k| (part.n(), &part) < (k.n(), k)) {
                    continue;
                }
                cur.push(part.clone());
                go(rem - m, Some(&part), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = vec![];
    go(n, None, &mut vec![], &mut out);
    out.iter().map(|ps| JordanSpec::from_partitions(ps).unwrap()).collect()
}

/// As `specs_of`, with eigenvalues `1, −1, 2, −2, …`.
pub fn rational_specs_of(n: usize) -> Vec<JordanSpec> {
    specs_of(n)
        .iter()
        .map(|s| {
            let vals: Vec<Rational> =
                (0..s.blocks().len()).map(|i| q((i as i64 / 2 + 1) * if i % 2 == 0 { 1 } else { -1 })).collect();
            let data: Vec<(Rational, &[usize])> = vals.iter().cloned().zip(s.blocks().iter().map(|b| b.sizes.parts())).collect();
            JordanSpec::from_values(&data).unwrap()
        })
        .collect()
}
