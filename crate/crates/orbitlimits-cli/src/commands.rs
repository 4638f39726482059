use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use orbitlimits::conj::{closure_contains_nilpotent, jab_slice_report, jn_slice_report};
use orbitlimits::diffgeo::{
    adjoint_frame, chart_second_fundamental_form, curvature_tables, grid_mu_max, kempf_descent, kempf_descent_ln,
    kempf_support, riemann_and_ricci, riemann_antisymmetric, sphere_frame, DescentOptions, OrbitFrame, SUITE_GRID_RES,
    SUITE_LN_T,
};
use orbitlimits::exact::{inverse, rank_of, vec_is_zero, Matrix, Rational};
use orbitlimits::io::{
    check_schema, field, jordan_spec_from_json, jordan_spec_to_json, lie_from_json, lie_to_json, matrix_to_json,
    partition_from_json, point_to_json, poly_matrix_to_json, ps_from_json, ps_to_json, rational_from_json,
    subject_from_json, usize_from_json, vector_from_json, vector_to_json, SCHEMA,
};
use orbitlimits::lie::{gl_basis, sl_basis, stabilizer_algebra, LieElement, Representation};
use orbitlimits::limits::{
    classify_case, expand_orbit_curve, extension_feasible, first_order, limit_algebra, regularity,
    triple_stabilizers, CaseWitness, Subject,
};
use orbitlimits::local_model::{build_local_model_in, ComplementPolicy};
use orbitlimits::reproduce::{self, IDS};
use orbitlimits::Error;
use serde_json::{json, Map, Value};

use crate::Policy;

pub struct Options {
    pub seed: u64,
    pub tol: Option<f64>,
    pub policy: Policy,
}

pub struct Output {
    pub doc: Value,
    pub text: String,
    /// A reproduction check failed (exit 4).
    pub mismatch: bool,
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Compute(Error),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) | Failure::Compute(Error::Input(_) | Error::Dimension(_)) => 2,
            Failure::Compute(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "invalid input: {m}"),
            Failure::Compute(e) => write!(f, "{e}"),
        }
    }
}

/// Errors raised while reading the document are input errors whatever their kind.
fn parsing<T>(r: orbitlimits::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Input(e.to_string()))
}

fn done(command: &str, mut body: Map<String, Value>) -> Output {
    body.insert("schema".into(), json!(SCHEMA));
    body.insert("command".into(), json!(command));
    let doc = Value::Object(body);
    Output { text: render(&doc, 0), doc, mismatch: false }
}

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("json! object literal"),
    }
}

/// Aligned `key: value` text for a JSON document.
fn render(v: &Value, indent: usize) -> String {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => {
            let w = m.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            m.iter()
                .map(|(k, x)| match x {
                    Value::Object(_) => format!("{pad}{k}:\n{}", render(x, indent + 2)),
                    Value::Array(a) if a.iter().any(|e| e.is_object()) => format!("{pad}{k}:\n{}", render(x, indent + 2)),
                    _ => format!("{pad}{k:<w$}  {}\n", compact(x)),
                })
                .collect()
        }
        Value::Array(a) => a
            .iter()
            .enumerate()
            .map(|(i, x)| match x {
                Value::Object(_) => format!("{pad}[{i}]\n{}", render(x, indent + 2)),
                _ => format!("{pad}[{i}] {}\n", compact(x)),
            })
            .collect(),
        _ => format!("{pad}{}\n", compact(v)),
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(compact).collect::<Vec<_>>().join(", ")),
        _ => v.to_string(),
    }
}

fn subject_of(doc: &Value) -> Result<(Subject, &Map<String, Value>), Failure> {
    let o = parsing(check_schema(doc))?;
    Ok((parsing(subject_from_json(o))?, o))
}

fn lie_list(v: &Value) -> orbitlimits::Result<Vec<LieElement>> {
    v.as_array()
        .ok_or_else(|| Error::Input("expected an array of matrices".into()))?
        .iter()
        .map(lie_from_json)
        .collect()
}

fn vector_list(v: &Value) -> orbitlimits::Result<Vec<Vec<Rational>>> {
    v.as_array().ok_or_else(|| Error::Input("expected an array of vectors".into()))?.iter().map(vector_from_json).collect()
}

fn acting_algebra(rep: &Representation, o: &Map<String, Value>) -> Result<Vec<LieElement>, Failure> {
    match o.get("algebra") {
        None => Ok(gl_basis(rep.n())),
        Some(Value::String(s)) if s == "gl" => Ok(gl_basis(rep.n())),
        Some(Value::String(s)) if s == "sl" => Ok(sl_basis(rep.n())),
        Some(v @ Value::Array(_)) => parsing(lie_list(v)),
        Some(v) => Err(Failure::Input(format!("\"algebra\" must be \"gl\", \"sl\" or a list of matrices, got {v}"))),
    }
}

pub fn stabilizer(doc: &Value) -> Result<Output, Failure> {
    let (s, _) = subject_of(doc)?;
    let basis = stabilizer_algebra(&s.rep, &s.v);
    let orbit_rank = rank_of(&gl_basis(s.rep.n()).iter().map(|g| s.rep.act(g, &s.v)).collect::<Vec<_>>(), s.rep.dim());
    let verified = basis.iter().all(|g| vec_is_zero(&s.rep.act(g, &s.v))) && basis.len() + orbit_rank == s.rep.n().pow(2);
    Ok(done(
        "stabilizer",
        obj(json!({
            "dimension": basis.len(),
            "basis": basis.iter().map(lie_to_json).collect::<Vec<_>>(),
            "verified": verified,
        })),
    ))
}

pub fn local_model(doc: &Value, opts: &Options) -> Result<Output, Failure> {
    let (s, o) = subject_of(doc)?;
    let algebra = acting_algebra(&s.rep, o)?;
    let policy = match opts.policy {
        Policy::Orthogonal => ComplementPolicy::Orthogonal,
        Policy::Explicit => ComplementPolicy::Explicit {
            s: parsing(field(o, "s").and_then(lie_list))?,
            n: parsing(field(o, "n").and_then(vector_list))?,
        },
    };
    let m = build_local_model_in(&s.rep, &s.v, &algebra, &policy, None)?;
    m.verify()?;
    let mut body = obj(json!({
        "point": point_to_json(&s, &s.v),
        "h": m.h.iter().map(lie_to_json).collect::<Vec<_>>(),
        "s": m.s.iter().map(lie_to_json).collect::<Vec<_>>(),
        "n": m.n.iter().map(|v| vector_to_json(v)).collect::<Vec<_>>(),
        "verified": true,
    }));
    if let Some(p) = o.get("slice_point") {
        let n = parsing(vector_from_json(p))?;
        if n.len() != s.rep.dim() || !m.in_n(&n) {
            return Err(Failure::Input("\"slice_point\" must be a vector of N".into()));
        }
        let theta = m.theta_matrix(&n);
        let inv = inverse(&Matrix::identity(s.rep.dim()).plus(&theta))?;
        let st = m.slice_stabilizer(&n)?;
        body.insert(
            "slice".into(),
            json!({
                "point": vector_to_json(&n),
                "theta": matrix_to_json(&theta),
                "one_plus_theta_inverse": matrix_to_json(&inv),
                "stabilizer": st.elements.iter().map(lie_to_json).collect::<Vec<_>>(),
            }),
        );
    }
    Ok(done("local-model", body))
}

/// Sections that do not apply to this input are reported as `null` with a reason.
fn optional<T>(r: orbitlimits::Result<T>, f: impl FnOnce(T) -> Value) -> Result<Value, Failure> {
    match r {
        Ok(x) => Ok(f(x)),
        Err(Error::NotApplicable(why)) => Ok(json!({ "not_applicable": why })),
        Err(e) => Err(e.into()),
    }
}

fn dims_json(m: &std::collections::BTreeMap<i64, usize>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

pub fn limit(doc: &Value, _opts: &Options) -> Result<Output, Failure> {
    let (s, o) = subject_of(doc)?;
    let lam = parsing(field(o, "ps").and_then(ps_from_json))?;
    if lam.n() != s.rep.n() {
        return Err(Failure::Input(format!("1-PS has {} weights, the group is GL{}", lam.n(), s.rep.n())));
    }
    let e = expand_orbit_curve(&s, &lam)?;
    let mut body = obj(json!({
        "input": point_to_json(&s, &s.v),
        "ps": ps_to_json(&lam),
        "a": e.a,
        "g": point_to_json(&s, &e.g),
        "b": e.b,
        "f_b": e.f_b.as_ref().map(|v| point_to_json(&s, v)),
        "transverse": e.transverse,
    }));
    if lam.weights.iter().all(|&w| w == lam.weights[0]) {
        body.insert("analysis".into(), Value::Null);
        return Ok(done("limit", body));
    }
    let d = limit_algebra(&s, &lam)?;
    let ts = triple_stabilizers(&s, &lam)?;
    let case = optional(classify_case(&s, &lam), |c| match c {
        CaseWitness::A { lower_central_series, nilpotent_elements } => {
            json!({"case": "A", "lower_central_series": lower_central_series, "nilpotent_elements": nilpotent_elements})
        }
        CaseWitness::B { k, u, k_u, pure } => {
            json!({"case": "B", "k": lie_to_json(&k), "u": matrix_to_json(&u), "k_u": lie_to_json(&k_u), "pure": pure})
        }
    })?;
    let extension = optional(first_order(&s, &lam).and_then(|fo| extension_feasible(&fo.model, &fo.k0, &fo.db)), |x| {
        json!({
            "feasible": x.feasible,
            "generators": x.generators.iter().map(|(k, sx)| json!({"k": lie_to_json(k), "s": lie_to_json(sx)})).collect::<Vec<_>>(),
            "unknowns": x.unknowns,
            "equations": x.equations,
        })
    })?;
    let reg = regularity(&s, &lam)?;
    body.insert(
        "analysis".into(),
        json!({
            "kt": d.kt.iter().map(poly_matrix_to_json).collect::<Vec<_>>(),
            "k0": d.k0.iter().map(lie_to_json).collect::<Vec<_>>(),
            "k0_graded_dims": dims_json(&d.graded_dims),
            "h_dim": d.h_dim,
            "triple_stabilizer_dims": dims_json(&ts.pure_dims()),
            "klf_dim": ts.klf.len(),
            "case": case,
            "regular": reg.exponents_regular && reg.k_not_in_h,
            "extension": extension,
        }),
    );
    Ok(done("limit", body))
}

pub fn closure(doc: &Value) -> Result<Output, Failure> {
    let o = parsing(check_schema(doc))?;
    let spec = parsing(field(o, "spec").and_then(jordan_spec_from_json))?;
    let theta = parsing(field(o, "partition").and_then(partition_from_json))?;
    let d = closure_contains_nilpotent(&spec, &theta)?;
    let mut body = obj(serde_json::to_value(&d).expect("serializable"));
    body.insert("spec".into(), jordan_spec_to_json(&spec));
    Ok(done("closure", body))
}

pub fn slice(doc: &Value, opts: &Options) -> Result<Output, Failure> {
    let o = parsing(check_schema(doc))?;
    let get = |k: &str| parsing(field(o, k).and_then(usize_from_json));
    let samples = match o.get("samples") {
        Some(v) => parsing(usize_from_json(v))?,
        None => 10,
    };
    let (report, ok) = match o.get("kind").and_then(Value::as_str) {
        Some("jn") => {
            let r = jn_slice_report(get("n")?, samples, opts.seed)?;
            (serde_json::to_value(&r), r.all_ok())
        }
        Some("jab") => {
            let r = jab_slice_report(get("a")?, get("b")?, samples, opts.seed)?;
            (serde_json::to_value(&r), r.all_ok())
        }
        _ => return Err(Failure::Input("\"kind\" must be \"jn\" or \"jab\"".into())),
    };
    let mut body = obj(report.expect("serializable"));
    body.insert("all_ok".into(), json!(ok));
    Ok(done("slice", body))
}

fn table3(t: &[Vec<Vec<Rational>>]) -> Value {
    json!(t.iter().map(|r| r.iter().map(|v| vector_to_json(v)).collect::<Vec<_>>()).collect::<Vec<_>>())
}

/// Fields from the acting algebra whose tangent vectors are independent.
fn independent_fields(rep: &Representation, x: &[Rational], algebra: &[LieElement]) -> Vec<LieElement> {
    let mut vecs: Vec<Vec<Rational>> = vec![];
    let mut out = vec![];
    for g in algebra {
        let v = rep.act(g, x);
        vecs.push(v);
        if rank_of(&vecs, rep.dim()) == vecs.len() {
            out.push(g.clone());
        } else {
            vecs.pop();
        }
    }
    out
}

pub fn curvature(doc: &Value) -> Result<Output, Failure> {
    let o = parsing(check_schema(doc))?;
    let frame = match o.get("kind").and_then(Value::as_str).unwrap_or("orbit") {
        "sphere" => {
            let n = parsing(field(o, "n").and_then(usize_from_json))?;
            let r = parsing(field(o, "r").and_then(rational_from_json))?;
            sphere_frame(n, &r)?
        }
        "adjoint" => adjoint_frame(&parsing(field(o, "lambda").and_then(vector_from_json))?)?.0,
        "orbit" => {
            let s = parsing(subject_from_json(o))?;
            let fields = match o.get("fields") {
                Some(v) => parsing(lie_list(v))?,
                None => {
                    let algebra = match s.rep {
                        Representation::Conj(_) => gl_basis(s.rep.n()),
                        Representation::Sym(_) => sl_basis(s.rep.n()),
                    };
                    independent_fields(&s.rep, &s.v, &algebra)
                }
            };
            OrbitFrame::from_rep(&s.rep, s.v.clone(), &fields)?
        }
        k => return Err(Failure::Input(format!("unknown curvature kind {k:?}"))),
    };
    let data = curvature_tables(&frame)?;
    let orthonormal = data.alpha.is_some();
    let data = riemann_and_ricci(data);
    let chart = chart_second_fundamental_form(&frame)?;
    let ricci = orthonormal.then(|| {
        json!(data.ricci.as_ref().expect("computed").iter().map(|r| vector_to_json(r)).collect::<Vec<_>>())
    });
    Ok(done(
        "curvature",
        obj(json!({
            "fields": frame.len(),
            "tangent_rank": frame.tangent_rank(),
            "normal_dim": frame.normal.len(),
            "orthonormal": orthonormal,
            "pi": table3(&data.pi),
            "pi_symmetric": data.pi_symmetric,
            "riemann_antisymmetric": riemann_antisymmetric(data.riemann.as_ref().expect("computed")),
            "ricci": ricci,
            "osculates": chart.osculates,
        })),
    ))
}

pub fn kempf(doc: &Value, opts: &Options) -> Result<Output, Failure> {
    let (s, o) = subject_of(doc)?;
    let mut dopts = DescentOptions { seed: opts.seed, ..DescentOptions::default() };
    if let Some(t) = opts.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Failure::Input(format!("--tol must be positive, got {t}")));
        }
        dopts.grad_tol = t;
    }
    let num = |k: &str| -> Result<Option<f64>, Failure> {
        o.get(k).map(|v| v.as_f64().ok_or_else(|| Failure::Input(format!("\"{k}\" must be a number")))).transpose()
    };
    let r = match (num("t")?, num("ln_t")?) {
        (Some(_), Some(_)) => return Err(Failure::Input("give \"t\" or \"ln_t\", not both".into())),
        (Some(t), None) => kempf_descent(&s.rep, &s.v, t, &dopts)?,
        (None, l) => kempf_descent_ln(&s.rep, &s.v, l.unwrap_or(SUITE_LN_T), &dopts)?,
    };
    let support = kempf_support(&s.rep, &s.v)?;
    let grid = (support.n <= 4).then(|| {
        let (m, ell) = grid_mu_max(&support, SUITE_GRID_RES);
        json!({"resolution": SUITE_GRID_RES, "mu": m, "ell": ell})
    });
    Ok(done(
        "kempf",
        obj(json!({
            "ln_t": r.ln_t,
            "ell": r.ell,
            "mu": r.mu,
            "log_f": r.log_f,
            "converged": r.converged,
            "starts": r.runs.len(),
            "grid": grid,
        })),
    ))
}

fn threads() -> usize {
    let cap = std::env::var("ORBITLIMITS_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).filter(|&n| n > 0);
    let avail = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    cap.unwrap_or(avail)
}

pub fn reproduce(id: &str, opts: &Options) -> Result<Output, Failure> {
    let ids: Vec<&str> = if id == "all" {
        IDS.to_vec()
    } else if IDS.contains(&id) {
        vec![id]
    } else {
        return Err(Failure::Input(format!("unknown example id {id:?}; known: all, {}", IDS.join(", "))));
    };
    // Independent jobs, pulled from a shared counter; results keep the id order.
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<orbitlimits::Result<reproduce::Report>>>> = Mutex::new((0..ids.len()).map(|_| None).collect());
    std::thread::scope(|sc| {
        for _ in 0..threads().min(ids.len()) {
            sc.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= ids.len() {
                    break;
                }
                let r = reproduce::run(ids[i], opts.seed);
                results.lock().expect("no panics while holding the lock")[i] = Some(r);
            });
        }
    });
    let reports = results
        .into_inner()
        .expect("no poisoned lock")
        .into_iter()
        .map(|r| r.expect("every job ran"))
        .collect::<orbitlimits::Result<Vec<_>>>()?;
    let passed = reports.iter().all(|r| r.passed());
    let text = reports.iter().map(|r| r.render()).collect::<Vec<_>>().join("\n");
    let doc = json!({
        "schema": SCHEMA,
        "command": "reproduce",
        "passed": passed,
        "reports": reports,
    });
    Ok(Output { doc, text, mismatch: !passed })
}
