//! Sparse multivariate polynomials over `Q`.
//!
//! A polynomial is a map from exponent vectors to nonzero rational
//! coefficients. Exponent vectors always have length `nvars`; terms are kept
//! in lexicographic order of the exponent vector, which fixes a deterministic
//! "first" term used e.g. for canonical rescaling of norms.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::rat::{format_rat, parse_rat, Rat};

/// Hard caps applied when deserialising untrusted polynomial data.
pub const MAX_VARS: usize = 4096;
pub const MAX_EXP: u16 = 255;
pub const MAX_TERMS: usize = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial JSON: {0}")]
    Json(String),
    #[error("variable count mismatch: expected {expected}, got {got}")]
    NvarsMismatch { expected: usize, got: usize },
    #[error("limits exceeded: {0}")]
    Limits(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u16>, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rat::one())
    }

    /// The variable `x_i` as a polynomial.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0u16; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(e, Rat::one());
        p
    }

    /// Build from explicit terms; merges duplicates, drops zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u16>, Rat)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length != nvars");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &Rat)> {
        self.terms.iter()
    }

    /// First term in lexicographic exponent order, if any.
    pub fn leading_term(&self) -> Option<(&Vec<u16>, &Rat)> {
        self.terms.iter().next()
    }

    pub fn coeff(&self, expo: &[u16]) -> Rat {
        self.terms.get(expo).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, expo: Vec<u16>, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(expo) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u16> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn mul_var(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e[i] += 1;
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        assert_eq!(x.len(), self.nvars);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &pow) in e.iter().enumerate() {
                for _ in 0..pow {
                    t *= &x[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * Rat::from_integer(e[i].into()));
        }
        out
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self, d: usize) -> bool {
        self.terms
            .keys()
            .all(|e| e.iter().map(|&x| x as usize).sum::<usize>() == d)
    }

    /// Substitute `x_i := subs[i]` for every variable. All `subs` must share a
    /// common variable count, which becomes the result's. Exponents are small
    /// in this crate (degree <= 4 before substitution), so plain repeated
    /// multiplication is fine.
    pub fn substitute(&self, subs: &[Poly]) -> Poly {
        assert_eq!(subs.len(), self.nvars);
        let out_vars = subs.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = Poly::zero(out_vars);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(out_vars, c.clone());
            for (i, &pow) in e.iter().enumerate() {
                for _ in 0..pow {
                    t = t.mul(&subs[i]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Substitute the linear map `x := M y`, i.e. `x_i := sum_j M[i][j] y_j`.
    pub fn substitute_linear(&self, m: &[Vec<Rat>]) -> Poly {
        assert_eq!(m.len(), self.nvars);
        let out_vars = m.first().map(|r| r.len()).unwrap_or(0);
        let subs: Vec<Poly> = m
            .iter()
            .map(|row| {
                let mut p = Poly::zero(out_vars);
                for (j, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        let mut e = vec![0u16; out_vars];
                        e[j] = 1;
                        p.add_term(e, c.clone());
                    }
                }
                p
            })
            .collect();
        self.substitute(&subs)
    }

    /// The homogeneous part of degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().map(|&x| x as usize).sum::<usize>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Gradient as a vector of polynomials.
    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// Embed into a polynomial ring with more variables, mapping `x_i` to
    /// `x_{i+offset}`.
    pub fn shift_vars(&self, new_nvars: usize, offset: usize) -> Poly {
        assert!(self.nvars + offset <= new_nvars);
        let mut out = Poly::zero(new_nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0u16; new_nvars];
            e2[offset..offset + self.nvars].copy_from_slice(e);
            out.add_term(e2, c.clone());
        }
        out
    }

    /// `self == s * other` for some scalar `s != 0`? Returns the scalar.
    pub fn proportional_to(&self, other: &Poly) -> Option<Rat> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        let (e, c) = other.leading_term().unwrap();
        let mine = self.coeff(e);
        if mine.is_zero() {
            return None;
        }
        let s = mine / c.clone();
        if *self == other.scale(&s) {
            Some(s)
        } else {
            None
        }
    }

    // ---- JSON (external interface) -------------------------------------

    /// Serialise as a list of `{"exponents": [...], "coeff": "p/q"}` objects.
    pub fn to_json_terms(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| {
                    json!({
                        "exponents": e.iter().map(|&x| Value::from(x)).collect::<Vec<_>>(),
                        "coeff": format_rat(c),
                    })
                })
                .collect(),
        )
    }

    /// Parse the list form produced by [`Poly::to_json_terms`]. `nvars` is
    /// imposed from outside (the containing object knows it).
    pub fn from_json_terms(nvars: usize, v: &Value) -> Result<Poly, PolyError> {
        if nvars > MAX_VARS {
            return Err(PolyError::Limits(format!("nvars {nvars} > {MAX_VARS}")));
        }
        let arr = v
            .as_array()
            .ok_or_else(|| PolyError::Json("terms: expected a JSON array".into()))?;
        if arr.len() > MAX_TERMS {
            return Err(PolyError::Limits(format!("{} terms > {MAX_TERMS}", arr.len())));
        }
        let mut p = Poly::zero(nvars);
        for t in arr {
            let obj = t
                .as_object()
                .ok_or_else(|| PolyError::Json("term: expected an object".into()))?;
            let exps = obj
                .get("exponents")
                .and_then(Value::as_array)
                .ok_or_else(|| PolyError::Json("term: missing \"exponents\" array".into()))?;
            if exps.len() != nvars {
                return Err(PolyError::NvarsMismatch {
                    expected: nvars,
                    got: exps.len(),
                });
            }
            let mut e = Vec::with_capacity(nvars);
            for x in exps {
                let n = x
                    .as_u64()
                    .ok_or_else(|| PolyError::Json("exponent: expected a non-negative integer".into()))?;
                if n > MAX_EXP as u64 {
                    return Err(PolyError::Limits(format!("exponent {n} > {MAX_EXP}")));
                }
                e.push(n as u16);
            }
            let c = obj
                .get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| PolyError::Json("term: missing \"coeff\" string".into()))?;
            let c = parse_rat(c).map_err(|err| PolyError::Json(format!("coeff: {err}")))?;
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Standalone file form: `{"nvars": n, "terms": [...]}`.
    pub fn to_json(&self) -> Value {
        json!({ "nvars": self.nvars, "terms": self.to_json_terms() })
    }

    pub fn from_json(v: &Value) -> Result<Poly, PolyError> {
        let obj = v
            .as_object()
            .ok_or_else(|| PolyError::Json("expected a JSON object".into()))?;
        let nvars = obj
            .get("nvars")
            .and_then(Value::as_u64)
            .ok_or_else(|| PolyError::Json("missing \"nvars\"".into()))? as usize;
        let terms = obj
            .get("terms")
            .ok_or_else(|| PolyError::Json("missing \"terms\"".into()))?;
        Poly::from_json_terms(nvars, terms)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let mut mono = String::new();
            for (i, &pow) in e.iter().enumerate() {
                if pow == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(&format!("x{}", i + 1));
                if pow > 1 {
                    mono.push_str(&format!("^{pow}"));
                }
            }
            let cs = format_rat(c);
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            if mono.is_empty() {
                write!(f, "{cs}")?;
            } else if cs == "1" {
                write!(f, "{mono}")?;
            } else if cs == "-1" {
                write!(f, "-{mono}")?;
            } else {
                write!(f, "{cs}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// All exponent vectors of homogeneous degree `d` in `n` variables, in
/// lexicographic order. Used to enumerate unknown coefficients of forms.
pub fn monomials(n: usize, d: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; n];
    fn rec(out: &mut Vec<Vec<u16>>, cur: &mut Vec<u16>, pos: usize, left: usize) {
        if pos + 1 == cur.len() {
            cur[pos] = left as u16;
            out.push(cur.clone());
            cur[pos] = 0;
            return;
        }
        // Lexicographically descending in the first variable yields ascending
        // lex order of exponent vectors once reversed; we just sort instead.
        for k in 0..=left {
            cur[pos] = k as u16;
            rec(out, cur, pos + 1, left - k);
        }
        cur[pos] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(&mut out, &mut cur, 0, d);
    out.sort();
    out
}
