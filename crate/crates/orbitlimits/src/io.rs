//! JSON documents for forms, matrices, 1-PS weights and Jordan data.
//!
//! Scalars are rational strings `"p"` or `"p/q"` (JSON integers are also
//! accepted on input), so values survive serialization exactly. Every
//! top-level document carries `"schema": 1`.

use serde_json::{json, Map, Value};

use crate::conj::{EigenBlocks, Eigenvalue, JordanSpec, Partition};
use crate::error::{Error, Result};
use crate::exact::{Matrix, Rational, UniPoly};
use crate::lie::{default_names, Form, LieElement, MPoly};
use crate::limits::{OnePS, Subject};

pub const SCHEMA: u64 = 1;

fn bad(what: &str, v: &Value) -> Error {
    Error::Input(format!("expected {what}, got {v}"))
}

/// The document must be an object with `"schema": 1`.
pub fn check_schema(doc: &Value) -> Result<&Map<String, Value>> {
    let obj = doc.as_object().ok_or_else(|| bad("a JSON object", doc))?;
    match obj.get("schema") {
        Some(Value::Number(n)) if n.as_u64() == Some(SCHEMA) => Ok(obj),
        Some(v) => Err(Error::Input(format!("unsupported schema version {v}"))),
        None => Err(Error::Input("missing \"schema\" field".into())),
    }
}

pub fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Input(format!("missing field {key:?}")))
}

pub fn usize_from_json(v: &Value) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad("a non-negative integer", v))
}

pub fn rational_to_json(x: &Rational) -> Value {
    Value::String(x.to_string())
}

/// Decimal-free: `"3"`, `"-2/5"`, or a JSON integer.
pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => s.trim().parse::<Rational>().map_err(|_| bad("a rational string \"p/q\"", v)),
        Value::Number(n) => n.as_i64().map(|i| Rational::from_integer(i.into())).ok_or_else(|| bad("an integer", v)),
        _ => Err(bad("a rational string", v)),
    }
}

pub fn vector_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_to_json).collect())
}

pub fn vector_from_json(v: &Value) -> Result<Vec<Rational>> {
    v.as_array().ok_or_else(|| bad("an array", v))?.iter().map(rational_from_json).collect()
}

pub fn matrix_to_json(m: &Matrix<Rational>) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_to_json(m.row(i))).collect())
}

/// Row-major array of rows.
pub fn matrix_from_json(v: &Value) -> Result<Matrix<Rational>> {
    let rows: Vec<Vec<Rational>> =
        v.as_array().ok_or_else(|| bad("an array of rows", v))?.iter().map(vector_from_json).collect::<Result<_>>()?;
    if rows.is_empty() {
        return Err(Error::Input("empty matrix".into()));
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) || rows[0].is_empty() {
        return Err(Error::Dimension("matrix rows have different lengths".into()));
    }
    Ok(Matrix::from_rows(rows))
}

pub fn poly_matrix_to_json(m: &Matrix<UniPoly>) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array((0..m.cols()).map(|j| json!(m[(i, j)].to_string())).collect())).collect())
}

pub fn lie_to_json(x: &LieElement) -> Value {
    matrix_to_json(x.matrix())
}

pub fn lie_from_json(v: &Value) -> Result<LieElement> {
    LieElement::from_matrix(matrix_from_json(v)?)
}

/// `{"schema": 1, "nvars", "degree", "terms": [{"exp", "coef"}]}`; terms in
/// descending lexicographic order of exponents.
pub fn form_to_json(f: &Form) -> Value {
    let terms: Vec<Value> = f
        .poly()
        .terms()
        .iter()
        .rev()
        .map(|(e, c)| json!({"exp": e, "coef": rational_to_json(c)}))
        .collect();
    json!({"schema": SCHEMA, "nvars": f.nvars(), "degree": f.degree(), "terms": terms})
}

/// Accepts the term list, or `"expr"` with optional `"names"` (default
/// `x1, …, xn`). A nested `"schema"`, if present, must be 1.
pub fn form_from_json(v: &Value) -> Result<Form> {
    let obj = v.as_object().ok_or_else(|| bad("a form object", v))?;
    if obj.contains_key("schema") {
        check_schema(v)?;
    }
    let nvars = usize_from_json(field(obj, "nvars")?)?;
    if nvars == 0 {
        return Err(Error::Input("a form needs at least one variable".into()));
    }
    let degree = u32::try_from(usize_from_json(field(obj, "degree")?)?).map_err(|_| Error::Input("degree too large".into()))?;
    if let Some(src) = obj.get("expr") {
        let src = src.as_str().ok_or_else(|| bad("an expression string", src))?;
        let names = match obj.get("names") {
            Some(n) => n
                .as_array()
                .ok_or_else(|| bad("an array of names", n))?
                .iter()
                .map(|s| s.as_str().map(str::to_string).ok_or_else(|| bad("a name", s)))
                .collect::<Result<Vec<_>>>()?,
            None => default_names(nvars),
        };
        if names.len() != nvars {
            return Err(Error::Dimension(format!("{} names for {nvars} variables", names.len())));
        }
        return Form::parse(src, &names, Some(degree));
    }
    let terms = field(obj, "terms")?.as_array().ok_or_else(|| bad("an array of terms", v))?;
    let mut poly = MPoly::zero(nvars);
    for t in terms {
        let to = t.as_object().ok_or_else(|| bad("a term object", t))?;
        let exp: Vec<u32> = field(to, "exp")?
            .as_array()
            .ok_or_else(|| bad("an exponent array", t))?
            .iter()
            .map(|e| e.as_u64().and_then(|x| u32::try_from(x).ok()).ok_or_else(|| bad("an exponent", e)))
            .collect::<Result<_>>()?;
        if exp.len() != nvars {
            return Err(Error::Dimension(format!("exponent {exp:?} has length {} ≠ nvars {nvars}", exp.len())));
        }
        if exp.iter().sum::<u32>() != degree {
            return Err(Error::Input(format!("exponent {exp:?} does not have degree {degree}")));
        }
        let c = rational_from_json(field(to, "coef")?)?;
        poly = poly.add(&MPoly::term(nvars, exp, c));
    }
    Form::new(degree, poly)
}

pub fn ps_to_json(lam: &OnePS) -> Value {
    json!(lam.weights)
}

pub fn ps_from_json(v: &Value) -> Result<OnePS> {
    let w = v
        .as_array()
        .ok_or_else(|| bad("an integer weight array", v))?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| bad("an integer weight", x)))
        .collect::<Result<Vec<i64>>>()?;
    if w.is_empty() {
        return Err(Error::Input("empty 1-PS".into()));
    }
    Ok(OnePS::new(w))
}

/// Parts in any order; zero parts are rejected.
pub fn partition_from_json(v: &Value) -> Result<Partition> {
    let mut parts = v
        .as_array()
        .ok_or_else(|| bad("an array of parts", v))?
        .iter()
        .map(usize_from_json)
        .collect::<Result<Vec<_>>>()?;
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(parts)
}

pub fn partition_to_json(p: &Partition) -> Value {
    json!(p.parts())
}

/// `[{"eig": "p/q" | {"label": "μ1"}, "sizes": [..]}]`
pub fn jordan_spec_from_json(v: &Value) -> Result<JordanSpec> {
    let blocks = v
        .as_array()
        .ok_or_else(|| bad("an array of eigenvalue blocks", v))?
        .iter()
        .map(|b| {
            let o = b.as_object().ok_or_else(|| bad("an eigenvalue block", b))?;
            let e = field(o, "eig")?;
            let eigenvalue = match e {
                Value::Object(l) => Eigenvalue::Label(
                    field(l, "label")?.as_str().ok_or_else(|| bad("a label string", e))?.to_string(),
                ),
                _ => Eigenvalue::Value(rational_from_json(e)?),
            };
            Ok(EigenBlocks { eigenvalue, sizes: partition_from_json(field(o, "sizes")?)? })
        })
        .collect::<Result<Vec<_>>>()?;
    JordanSpec::new(blocks)
}

pub fn jordan_spec_to_json(s: &JordanSpec) -> Value {
    Value::Array(
        s.blocks()
            .iter()
            .map(|b| {
                let eig = match &b.eigenvalue {
                    Eigenvalue::Value(x) => rational_to_json(x),
                    Eigenvalue::Label(l) => json!({ "label": l }),
                };
                json!({"eig": eig, "sizes": b.sizes.parts()})
            })
            .collect(),
    )
}

/// A subject is given by a `"form"` or a `"matrix"` field.
pub fn subject_from_json(obj: &Map<String, Value>) -> Result<Subject> {
    match (obj.get("form"), obj.get("matrix")) {
        (Some(f), None) => Subject::form(&form_from_json(f)?),
        (None, Some(m)) => Subject::matrix(&matrix_from_json(m)?),
        (Some(_), Some(_)) => Err(Error::Input("give either \"form\" or \"matrix\", not both".into())),
        (None, None) => Err(Error::Input("missing \"form\" or \"matrix\"".into())),
    }
}

/// A vector of the subject's representation as a form or matrix document.
pub fn point_to_json(subject: &Subject, v: &[Rational]) -> Value {
    match subject.with_vector(v.to_vec()).as_form() {
        Some(f) => form_to_json(&f),
        None => matrix_to_json(&subject.rep.vec_to_matrix(v)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qf};
    use crate::limits::examples;

    #[test]
    fn form_round_trip() {
        let f = examples::det3();
        let doc = form_to_json(&f);
        assert_eq!(doc["terms"].as_array().unwrap().len(), 6);
        assert_eq!(form_from_json(&doc).unwrap(), f);
        let expr = json!({"nvars": 2, "degree": 4, "expr": "(y^2+z^2)^2", "names": ["z", "y"]});
        assert_eq!(form_from_json(&expr).unwrap(), examples::o2().0);
    }

    #[test]
    fn rejects_bad_forms() {
        let inhom = json!({"nvars": 2, "degree": 2, "terms": [{"exp": [2, 0], "coef": "1"}, {"exp": [1, 0], "coef": "1"}]});
        assert!(form_from_json(&inhom).is_err());
        let decimal = json!({"nvars": 1, "degree": 1, "terms": [{"exp": [1], "coef": "0.5"}]});
        assert!(form_from_json(&decimal).is_err());
        let wrong_len = json!({"nvars": 2, "degree": 1, "terms": [{"exp": [1], "coef": "1"}]});
        assert!(matches!(form_from_json(&wrong_len), Err(Error::Dimension(_))));
        assert!(check_schema(&json!({"schema": 2})).is_err());
        assert!(check_schema(&json!({})).is_err());
    }

    #[test]
    fn matrix_and_spec_round_trip() {
        let m = Matrix::from_rows(vec![vec![q(1), qf(-2, 3)], vec![q(0), q(5)]]);
        assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m);
        assert_eq!(matrix_to_json(&m), json!([["1", "-2/3"], ["0", "5"]]));
        assert!(matrix_from_json(&json!([["1"], ["1", "2"]])).is_err());
        let spec = json!([{"eig": "1/2", "sizes": [1, 2]}, {"eig": {"label": "μ1"}, "sizes": [3]}]);
        let s = jordan_spec_from_json(&spec).unwrap();
        assert_eq!(s.n(), 6);
        assert_eq!(s.blocks()[0].sizes.parts(), &[2, 1]);
        assert_eq!(jordan_spec_from_json(&jordan_spec_to_json(&s)).unwrap(), s);
        assert!(partition_from_json(&json!([2, 0])).is_err());
    }
}
