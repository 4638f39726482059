//! One PASS/FAIL line per acceptance criterion. Criteria listed in
//! `KNOWN_FAILURES` check printed values that the computation contradicts;
//! they are reported as FAIL but do not fail the run. Any other FAIL does.

mod common;

use std::time::{Duration, Instant};

use orbitlimits::conj::{
    closure_contains_nilpotent, in_xkr, nilpotent_in_xkr, nilpotent_rank_sequence, partitions_of, probe_witness,
    ClosureEvidence, PROBE_TS,
};
use orbitlimits::diffgeo::{
    adjoint_report, cyclic_shift_suite, format_table, kempf_suite, printed_p5, sphere_curvature, sphere_ricci_printed,
    DescentOptions,
};
use orbitlimits::exact::{inverse, q, qf, vec_is_zero, Matrix};
use orbitlimits::lie::{bracket, lie_coordinates};
use orbitlimits::limits::{
    expand_orbit_curve, limit_algebra, limit_algebra_by_conjugation, limit_model, same_subspace, star_action,
};
use orbitlimits::reproduce;
use orbitlimits::Error;

const KNOWN_FAILURES: [usize; 1] = [8];

/// `|μ_descent − μ_grid|` bound for criterion 9.
const KEMPF_TOL: f64 = 1e-3;
/// Rank-sequence distance bound at `t = 10⁻³` for criterion 5.
const PROBE_TOL: f64 = 1e-6;
const PROBE_T: f64 = 1e-3;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn reproduce_ids(ids: &[&str]) -> Outcome {
    let mut failed = vec![];
    for id in ids {
        match reproduce::run(id, 0) {
            Ok(r) if r.passed() => {}
            Ok(r) => failed.extend(r.checks.iter().filter(|c| !c.pass).map(|c| format!("{id}: {}", c.name))),
            Err(e) => failed.push(format!("{id}: {e}")),
        }
    }
    outcome(failed.is_empty(), if failed.is_empty() { format!("{} pinned checks", ids.join(", ")) } else { failed.join("; ") })
}

fn criterion_5() -> Outcome {
    let final_example = reproduce_ids(&["conj-final"]);
    let mut cases = 0;
    let mut bad = vec![];
    for n in 1..=6 {
        let thetas = partitions_of(n);
        for spec in common::specs_of(n) {
            for theta in &thetas {
                cases += 1;
                let d = closure_contains_nilpotent(&spec, theta).unwrap();
                let dominance = spec.chi().dominates(theta).unwrap();
                let sound = match &d.evidence {
                    ClosureEvidence::Separator(s) => {
                        !d.contained && in_xkr(&spec, s.k, s.r).member && !nilpotent_in_xkr(theta, s.k, s.r)
                    }
                    ClosureEvidence::Family { .. } => d.contained,
                };
                if d.contained != dominance || !sound {
                    bad.push(format!("{spec:?} vs {theta}"));
                }
            }
        }
    }
    let i = PROBE_TS.iter().position(|&t| t == PROBE_T).expect("probe samples t = 1e-3");
    let mut worst = 0.0f64;
    let mut families = 0;
    for n in 1..=4 {
        for spec in common::rational_specs_of(n) {
            families += 1;
            let r = probe_witness(&spec).unwrap();
            let target = nilpotent_rank_sequence(&r.chi);
            let dist = r.samples[i].1.iter().zip(&target).map(|(a, b)| a.abs_diff(*b)).sum::<usize>() as f64;
            worst = worst.max(dist);
            if !r.unseparated.is_empty() {
                bad.push(format!("probe reaches a non-dominated θ from {spec:?}"));
            }
        }
    }
    let pass = final_example.pass && bad.is_empty() && worst < PROBE_TOL;
    outcome(
        pass,
        format!(
            "final example: {}; {cases} (spec, θ) pairs n ≤ 6 consistent: {}; {families} witness families n ≤ 4, max rank-sequence distance at t=1e-3: {worst}",
            if final_example.pass { "4 verdicts" } else { &final_example.detail },
            bad.is_empty()
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut parts = vec![];
    let mut pass = true;
    let sphere_ok = (3..=5).all(|n| {
        [q(2), qf(3, 2)].iter().all(|r| {
            let ricci = sphere_curvature(n, r).unwrap().ricci.unwrap();
            let want = sphere_ricci_printed(n, r).unwrap();
            ricci.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, x)| *x == if i == j { want.clone() } else { q(0) }))
        })
    });
    pass &= sphere_ok;
    parts.push(format!("sphere Ricci = (n−1)/r²: {}", if sphere_ok { "yes" } else { "no, computed (n−2)/r²" }));
    let adj = [vec![q(1), q(2), q(4)], vec![q(-1), qf(1, 2), q(3), q(5)]].map(|l| adjoint_report(&l).unwrap());
    let adj_ok = adj.iter().all(|r| r.bracket_equals_printed);
    pass &= adj_ok;
    parts.push(format!(
        "adjoint d_pq = printed: {}",
        if adj_ok { "yes".into() } else { format!("no, printed is the reciprocal: {}", adj.iter().all(|r| r.printed_is_reciprocal)) }
    ));
    let r5 = cyclic_shift_suite(5).unwrap();
    let tables_ok = printed_p5().iter().enumerate().all(|(k, p)| {
        let p: Vec<Vec<i64>> = p.iter().map(|row| row.to_vec()).collect();
        format_table(&p) == format_table(&r5.tables[k + 1])
    });
    pass &= tables_ok;
    parts.push(format!("P¹…P⁴ byte-identical: {tables_ok}"));
    let closed = (3..=7).all(|n| cyclic_shift_suite(n).unwrap().closed_form_matches);
    pass &= closed;
    parts.push(format!("closed form ≡ trace formula n=3..7: {closed}"));
    outcome(pass, parts.join("; "))
}

fn criterion_9() -> Outcome {
    let cases = kempf_suite(&DescentOptions::default()).unwrap();
    let mut worst = 0.0f64;
    let mut bad = vec![];
    let mut property_cases = 0;
    for c in cases.iter().filter(|c| c.n <= 4) {
        worst = worst.max((c.mu_descent - c.mu_grid).abs());
        if let Some(p) = &c.property {
            property_cases += 1;
            if !p.holds {
                bad.push(c.name.clone());
            }
        }
    }
    outcome(
        worst < KEMPF_TOL && bad.is_empty(),
        format!(
            "{} vectors, max |μ_descent − μ_grid| = {worst:.2e}; property holds on {}/{property_cases}{}",
            cases.len(),
            property_cases - bad.len(),
            if bad.is_empty() { String::new() } else { format!(" (fails: {})", bad.join(", ")) }
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut bad = vec![];
    let mut rng = common::rng(2024);
    let (mut closure_cases, mut dual_cases, mut with_fb, mut attempts) = (0, 0, 0, 0);
    while dual_cases < 25 && attempts < 10_000 {
        attempts += 1;
        let (s, lam) = common::random_form_and_ps(&mut rng);
        let exp = expand_orbit_curve(&s, &lam).unwrap();
        let b = limit_algebra_by_conjugation(&s, &lam).unwrap();
        let a = match limit_algebra(&s, &lam) {
            Ok(a) => a,
            Err(Error::NotTransverse(_)) => continue,
            Err(e) => {
                bad.push(format!("limit algebra: {e}"));
                continue;
            }
        };
        dual_cases += 1;
        if !same_subspace(&a.k0, &b.k0) || a.graded_dims != b.graded_dims {
            bad.push(format!("dual pipeline disagrees on {}", s.rep.vec_to_form(&s.v)));
        }
        closure_cases += 1;
        let closed = a.k0.iter().all(|x| a.k0.iter().all(|y| lie_coordinates(&a.k0, &bracket(x, y).unwrap()).is_some()));
        let in_h = a.k0.iter().all(|k| vec_is_zero(&s.rep.act(k, &exp.g)));
        let annihilates = match &exp.f_b {
            Some(fb) => {
                with_fb += 1;
                let model = limit_model(&exp, &lam).unwrap();
                a.k0.iter().all(|k| vec_is_zero(&star_action(&model, k, fb).unwrap()))
            }
            None => true,
        };
        if !(closed && in_h && annihilates) {
            bad.push(format!("K0 property fails on {}", s.rep.vec_to_form(&s.v)));
        }
    }
    let models = common::reconstruction_models();
    let mut rng = common::rng(7);
    let mut recon = 0;
    for i in 0..100 {
        let (name, m) = &models[i % models.len()];
        let (n, dv) = common::random_slice_pair(&mut rng, m);
        match m.solve_decomposition(&n, &dv) {
            Ok(_) => recon += 1,
            Err(Error::Singular) if inverse(&Matrix::identity(m.rep.dim()).plus(&m.theta_matrix(&n))).is_err() => recon += 1,
            Err(e) => bad.push(format!("reconstruction on {name}: {e}")),
        }
    }
    let mut dominance_ok = true;
    for n in 1..=8 {
        let ps = partitions_of(n);
        for a in &ps {
            dominance_ok &= a.dominates(a).unwrap();
            for b in &ps {
                let ab = a.dominates(b).unwrap();
                dominance_ok &= !(ab && b.dominates(a).unwrap()) || a == b;
                dominance_ok &= ab == b.transpose().dominates(&a.transpose()).unwrap();
                for c in &ps {
                    dominance_ok &= !(ab && b.dominates(c).unwrap()) || a.dominates(c).unwrap();
                }
            }
        }
    }
    if !dominance_ok {
        bad.push("dominance axioms".into());
    }
    if dual_cases < 25 {
        bad.push(format!("only {dual_cases} transverse instances in {attempts} draws"));
    }
    outcome(
        bad.is_empty(),
        format!(
            "K0 closure/⊆H/⋆-annihilation on {closure_cases} ({with_fb} with f_b), dual pipeline on {dual_cases}, {recon}/100 reconstructions, dominance axioms n ≤ 8: {dominance_ok}{}",
            if bad.is_empty() { String::new() } else { format!(" — {}", bad.join("; ")) }
        ),
    )
}

type Criterion = (usize, &'static str, Duration, Box<dyn Fn() -> Outcome>);

fn main() {
    let criteria: Vec<Criterion> = vec![
        (1, "O2 limit algebra and extension", Duration::from_secs(1), Box::new(|| reproduce_ids(&["o2"]))),
        (2, "O3 structure constants", Duration::from_secs(1), Box::new(|| reproduce_ids(&["o3"]))),
        (3, "sl(2) on Sym² local model", Duration::from_secs(1), Box::new(|| reproduce_ids(&["sl2-sym2"]))),
        (4, "det₃ suite", Duration::from_secs(300), Box::new(|| reproduce_ids(&["det3-table", "det3-q1", "det3-q2"]))),
        (5, "conjugation closures", Duration::from_secs(120), Box::new(criterion_5)),
        (6, "J_n slice", Duration::from_secs(60), Box::new(|| reproduce_ids(&["jn-slice"]))),
        (7, "J_{a,b} slice", Duration::from_secs(60), Box::new(|| reproduce_ids(&["jab-slice"]))),
        (8, "curvature", Duration::from_secs(30), Box::new(criterion_8)),
        (9, "Kempf optimizer", Duration::from_secs(120), Box::new(criterion_9)),
        (10, "property suites", Duration::from_secs(180), Box::new(criterion_10)),
    ];
    let mut unexpected = vec![];
    for (k, name, budget, f) in criteria {
        let start = Instant::now();
        let o = f();
        let elapsed = start.elapsed();
        let pass = o.pass && elapsed <= budget;
        let known = KNOWN_FAILURES.contains(&k);
        println!(
            "criterion {k:>2} {}: {name} ({:.2}s / {}s) — {}{}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            o.detail,
            if !pass && known { " [known: printed value contradicted by the computation]" } else { "" }
        );
        if !pass && !known {
            unexpected.push(k);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
