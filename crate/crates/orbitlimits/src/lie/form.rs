use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{parse_rational, q, Field, Matrix, Rational, Ring};

/// Multivariate polynomial over ℚ, sparse in the monomial basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(nvars, vec![0; nvars], c)
    }

    pub fn term(nvars: usize, exp: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exp.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// The variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(nvars, e, Rational::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry = entry.plus(&c);
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Total degree; `None` for zero.
    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&vec![0; self.nvars]).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&q(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x.times(c))).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let entry = p.terms.entry(e).or_insert_with(Rational::zero);
                *entry = entry.plus(&c1.times(c2));
            }
        }
        p.terms.retain(|_, v| !v.is_zero());
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(self.nvars, Rational::one()), |acc, _| acc.mul(self))
    }

    /// `∂/∂x_i`
    pub fn derivative(&self, i: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                p.add_term(e2, c.times(&q(e[i] as i64)));
            }
        }
        p
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let m = e
                .iter()
                .zip(x)
                .fold(c.clone(), |m, (&k, xi)| m.times(&pow_q(xi, k)));
            acc.plus(&m)
        })
    }

    /// Substitute polynomials for the variables: `x_i ↦ subs[i]`.
    pub fn substitute(&self, subs: &[MPoly]) -> MPoly {
        assert_eq!(subs.len(), self.nvars, "substitution arity");
        let target = subs.first().map_or(0, |s| s.nvars);
        let mut cache: Vec<Vec<MPoly>> = subs.iter().map(|s| vec![MPoly::constant(target, Rational::one()), s.clone()]).collect();
        let mut out = MPoly::zero(target);
        for (e, c) in &self.terms {
            let mut m = MPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().unwrap().mul(&subs[i]);
                    cache[i].push(next);
                }
                if k > 0 {
                    m = m.mul(&cache[i][k as usize]);
                }
            }
            out = out.add(&m);
        }
        out
    }

    /// Determinant of a square matrix of polynomials (cofactor expansion).
    pub fn det(m: &[Vec<MPoly>]) -> MPoly {
        let n = m.len();
        let nv = m.first().and_then(|r| r.first()).map_or(0, |p| p.nvars);
        if n == 0 {
            return MPoly::constant(nv, Rational::one());
        }
        if n == 1 {
            return m[0][0].clone();
        }
        let mut out = MPoly::zero(nv);
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<MPoly>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect())
                .collect();
            let term = m[0][j].mul(&MPoly::det(&minor));
            out = if j % 2 == 0 { out.add(&term) } else { out.sub(&term) };
        }
        out
    }

    /// Split by the exponent of variable `i`, dropping that variable.
    pub fn split_by_var(&self, i: usize) -> BTreeMap<u32, MPoly> {
        let mut out: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2.remove(i);
            out.entry(k)
                .or_insert_with(|| MPoly::zero(self.nvars - 1))
                .add_term(e2, c.clone());
        }
        out
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        // Print in descending lexicographic order, the basis order used elsewhere.
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Rational::zero();
            let a = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { names[i].clone() } else { format!("{}^{}", names[i], p) })
                .collect();
            if mono.is_empty() {
                s.push_str(&a.to_string());
            } else if a == Rational::one() {
                s.push_str(&mono.join("*"));
            } else {
                s.push_str(&format!("{}*{}", a, mono.join("*")));
            }
        }
        s
    }

    /// Parse an expression such as `"2*x1^2*x2 - 3/4*x3"` or `"(y^2+z^2)^2"`
    /// over the given variable names. Division is only by nonzero constants.
    pub fn parse(src: &str, names: &[String]) -> Result<MPoly> {
        let toks = tokenize(src)?;
        if toks.is_empty() {
            return Err(Error::Input("empty polynomial".into()));
        }
        let mut p = Parser { toks, pos: 0, names, nv: names.len() };
        let out = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Input(format!("unexpected {:?} in polynomial", p.toks[p.pos])));
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = src.chars().collect();
    let mut out = vec![];
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_digit() || cs[i] == '.') {
                i += 1;
            }
            out.push(Tok::Num(cs[st..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Input(format!("unexpected character {c:?} in polynomial")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    names: &'a [String],
    nv: usize,
}

impl Parser<'_> {
    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let f = self.unary()?;
            acc = if c == '*' {
                acc.mul(&f)
            } else {
                let d = f.constant_value().filter(|d| !d.is_zero());
                let d = d.ok_or_else(|| Error::Input("division by a non-constant or zero".into()))?;
                acc.scale(&d.inverse())
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(self.unary()?.scale(&q(-1)))
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            let e = match self.toks.get(self.pos) {
                Some(Tok::Num(s)) => s.parse::<u32>().map_err(|_| Error::Input(format!("bad exponent {s:?}")))?,
                other => return Err(Error::Input(format!("expected an exponent, found {other:?}"))),
            };
            self.pos += 1;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly> {
        let tok = self.toks.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Num(s)) => Ok(MPoly::constant(self.nv, parse_rational(&s)?)),
            Some(Tok::Ident(name)) => match self.names.iter().position(|n| *n == name) {
                Some(i) => Ok(MPoly::var(self.nv, i)),
                None => Err(Error::Input(format!("unknown variable {name:?}"))),
            },
            Some(Tok::Op('(')) => {
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::Input("unbalanced parentheses".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            other => Err(Error::Input(format!("unexpected {other:?} in polynomial"))),
        }
    }
}

pub fn pow_q(x: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc.times(x))
}

pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&default_names(self.nvars)))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Homogeneous form of degree `d` in `nvars` variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    degree: u32,
    poly: MPoly,
}

impl Form {
    pub fn new(degree: u32, poly: MPoly) -> Result<Form> {
        if let Some(bad) = poly.terms.keys().find(|e| e.iter().sum::<u32>() != degree) {
            return Err(Error::Input(format!(
                "monomial {bad:?} is not of degree {degree}"
            )));
        }
        Ok(Form { degree, poly })
    }

    /// Form from a nonzero homogeneous polynomial.
    pub fn from_poly(poly: MPoly) -> Result<Form> {
        let d = poly
            .degree()
            .ok_or_else(|| Error::Input("cannot infer the degree of the zero polynomial".into()))?;
        Form::new(d, poly)
    }

    pub fn zero(nvars: usize, degree: u32) -> Form {
        Form {
            degree,
            poly: MPoly::zero(nvars),
        }
    }

    pub fn parse(src: &str, names: &[String], degree: Option<u32>) -> Result<Form> {
        let p = MPoly::parse(src, names)?;
        match degree {
            Some(d) => Form::new(d, p),
            None => Form::from_poly(p),
        }
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn poly(&self) -> &MPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, o: &Form) -> Form {
        assert_eq!(self.degree, o.degree, "adding forms of different degree");
        Form {
            degree: self.degree,
            poly: self.poly.add(&o.poly),
        }
    }

    pub fn sub(&self, o: &Form) -> Form {
        self.add(&o.scale(&q(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Form {
        Form {
            degree: self.degree,
            poly: self.poly.scale(c),
        }
    }

    /// Linear change of variables `f(x) ↦ f(L x)`.
    pub fn compose_linear(&self, l: &Matrix<Rational>) -> Form {
        let n = self.nvars();
        assert_eq!((l.rows(), l.cols()), (n, n), "substitution matrix shape");
        let subs: Vec<MPoly> = (0..n)
            .map(|i| MPoly::from_terms(n, (0..n).map(|j| (unit(n, j), l[(i, j)].clone()))))
            .collect();
        Form {
            degree: self.degree,
            poly: self.poly.substitute(&subs),
        }
    }

    /// Whether `self = c · o` for some nonzero rational `c`; returns `c`.
    pub fn proportionality(&self, o: &Form) -> Option<Rational> {
        let (e, c) = o.poly.terms.iter().next()?;
        let r = self.poly.coeff(e).divide(c);
        (!r.is_zero() && self.poly == o.poly.scale(&r)).then_some(r)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        self.poly.fmt_with(names)
    }
}

fn unit(n: usize, j: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[j] = 1;
    e
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qf;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_and_print_roundtrip() {
        let n = names(&["x", "y"]);
        let p = MPoly::parse("x^2 - 3/2*x*y + 2*y^2 - x^2", &n).unwrap();
        assert_eq!(p.coeff(&[1, 1]), qf(-3, 2));
        assert_eq!(p.coeff(&[2, 0]), q(0));
        let again = MPoly::parse(&p.fmt_with(&n), &n).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn determinant_of_symbolic_matrix() {
        let nv = 4;
        let x = |i| MPoly::var(nv, i);
        let d = MPoly::det(&[vec![x(0), x(1)], vec![x(2), x(3)]]);
        assert_eq!(d, x(0).mul(&x(3)).sub(&x(1).mul(&x(2))));
    }

    #[test]
    fn compose_linear_swaps_variables() {
        let n = names(&["x", "y"]);
        let f = Form::parse("x^3 + 2*x*y^2", &n, None).unwrap();
        let swap = Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]);
        let g = f.compose_linear(&swap);
        assert_eq!(g, Form::parse("y^3 + 2*x^2*y", &n, None).unwrap());
    }

    #[test]
    fn rejects_inhomogeneous() {
        let n = names(&["x", "y"]);
        assert!(Form::parse("x^2 + y", &n, None).is_err());
    }
}
