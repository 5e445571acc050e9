//! Commutative unital algebras over `Q`, given by structure constants.
//!
//! An [`Algebra`] stores a basis-indexed multiplication table
//! `table[i][j] = b_i * b_j` (as a coordinate vector) together with the unit
//! element. Construction validates commutativity of the table and the unit
//! law, so every value of this type is a genuine commutative unital algebra;
//! whether it satisfies the Jordan identity is a separate, checkable question
//! ([`Algebra::jordan_check`]).

use num::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::config::Config;
use crate::linalg::{axpy, Mat, Subspace};
use crate::poly::Poly;
use crate::rat::{format_rat, parse_rat, Rat};
use crate::sample::SampleStream;

/// Cap on the dimension accepted from untrusted input. The standard
/// catalogue tops out at 27.
pub const MAX_DIM: usize = 64;

/// Above this dimension the Jordan identity is checked on sampled pairs
/// rather than symbolically.
pub const SYMBOLIC_JORDAN_DIM: usize = 10;

/// Sampled pairs used by the Jordan check above [`SYMBOLIC_JORDAN_DIM`].
pub const JORDAN_SAMPLES: usize = 50;

/// Independent generic samples used to determine the rank.
pub const RANK_SAMPLES: usize = 5;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("algebra JSON: {0}")]
    Json(String),
    #[error("bad shape: {0}")]
    Shape(String),
    #[error("table is not commutative at ({i},{j})")]
    NotCommutative { i: usize, j: usize },
    #[error("unit law fails on basis vector {j}")]
    UnitLaw { j: usize },
    #[error("limits exceeded: {0}")]
    Limits(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    unit: Vec<Rat>,
    /// `table[i][j]` is the coordinate vector of `b_i * b_j`.
    table: Vec<Vec<Vec<Rat>>>,
}

impl Algebra {
    pub fn new(
        dim: usize,
        unit: Vec<Rat>,
        table: Vec<Vec<Vec<Rat>>>,
    ) -> Result<Algebra, AlgebraError> {
        if dim == 0 {
            return Err(AlgebraError::Shape("dimension must be positive".into()));
        }
        if unit.len() != dim {
            return Err(AlgebraError::Shape(format!(
                "unit has length {}, expected {dim}",
                unit.len()
            )));
        }
        if table.len() != dim
            || table.iter().any(|row| row.len() != dim)
            || table
                .iter()
                .any(|row| row.iter().any(|v| v.len() != dim))
        {
            return Err(AlgebraError::Shape(format!("table is not {dim}^3")));
        }
        for i in 0..dim {
            for j in i + 1..dim {
                if table[i][j] != table[j][i] {
                    return Err(AlgebraError::NotCommutative { i, j });
                }
            }
        }
        let a = Algebra { dim, unit, table };
        for j in 0..dim {
            if a.multiply(&a.unit, &a.basis_vector(j)) != a.basis_vector(j) {
                return Err(AlgebraError::UnitLaw { j });
            }
        }
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> Vec<Rat> {
        self.unit.clone()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim];
        v[i] = Rat::one();
        v
    }

    pub fn table_entry(&self, i: usize, j: usize) -> &[Rat] {
        &self.table[i][j]
    }

    pub fn multiply(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = vec![Rat::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                axpy(&mut out, &c, &self.table[i][j]);
            }
        }
        out
    }

    pub fn square(&self, x: &[Rat]) -> Vec<Rat> {
        self.multiply(x, x)
    }

    /// Matrix of left multiplication `y -> x*y` (column-vector convention:
    /// column `j` is `x * b_j`).
    pub fn l_operator(&self, x: &[Rat]) -> Mat {
        let mut m = Mat::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.multiply(x, &self.basis_vector(j));
            for i in 0..self.dim {
                m[(i, j)] = col[i].clone();
            }
        }
        m
    }

    /// Multiplication on vectors of polynomials, coordinate-wise bilinear in
    /// the inputs. This is how identities are verified symbolically.
    pub fn multiply_poly(&self, x: &[Poly], y: &[Poly]) -> Vec<Poly> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let nv = x[0].nvars();
        let mut out = vec![Poly::zero(nv); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let prod = x[i].mul(&y[j]);
                for k in 0..self.dim {
                    let c = &self.table[i][j][k];
                    if !c.is_zero() {
                        out[k] = out[k].add(&prod.scale(c));
                    }
                }
            }
        }
        out
    }

    /// A generic element as a vector of polynomials: coordinate `i` is the
    /// variable `x_{offset+i}` in a ring with `nvars` variables.
    pub fn generic_element(&self, nvars: usize, offset: usize) -> Vec<Poly> {
        (0..self.dim).map(|i| Poly::var(nvars, offset + i)).collect()
    }

    /// Embed a concrete vector into a polynomial ring as constants.
    pub fn constant_element(&self, nvars: usize, x: &[Rat]) -> Vec<Poly> {
        x.iter().map(|c| Poly::constant(nvars, c.clone())).collect()
    }

    /// Does the algebra satisfy the Jordan identity
    /// `x^2 (x y) = x (x^2 y)`? Proved symbolically in low dimension,
    /// checked on sampled pairs above [`SYMBOLIC_JORDAN_DIM`].
    pub fn jordan_check(&self, config: &Config) -> bool {
        if self.dim <= SYMBOLIC_JORDAN_DIM {
            let nv = 2 * self.dim;
            let x = self.generic_element(nv, 0);
            let y = self.generic_element(nv, self.dim);
            let x2 = self.multiply_poly(&x, &x);
            let lhs = self.multiply_poly(&x2, &self.multiply_poly(&x, &y));
            let rhs = self.multiply_poly(&x, &self.multiply_poly(&x2, &y));
            lhs == rhs
        } else {
            let mut s = SampleStream::new(config.seed ^ 0x4a4f_5244);
            for _ in 0..JORDAN_SAMPLES {
                let x = s.vector(self.dim);
                let y = s.vector(self.dim);
                let x2 = self.square(&x);
                let lhs = self.multiply(&x2, &self.multiply(&x, &y));
                let rhs = self.multiply(&x, &self.multiply(&x2, &y));
                if lhs != rhs {
                    return false;
                }
            }
            true
        }
    }

    /// Quadratic operator `U_x(y) = 2 x(xy) - x^2 y`.
    pub fn u_op(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let xy = self.multiply(x, y);
        let a = self.multiply(x, &xy);
        let b = self.multiply(&self.square(x), y);
        a.iter().zip(&b).map(|(p, q)| p + p - q).collect()
    }

    /// Polarized form: `U_{x,z}(y) = 2 (x(zy) + z(xy) - (xz)y)`, so that
    /// `U_{x,x} = 2 U_x`.
    pub fn u_pair(&self, x: &[Rat], z: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let a = self.multiply(x, &self.multiply(z, y));
        let b = self.multiply(z, &self.multiply(x, y));
        let c = self.multiply(&self.multiply(x, z), y);
        (0..self.dim)
            .map(|i| {
                let s = &a[i] + &b[i] - &c[i];
                &s + &s
            })
            .collect()
    }

    /// Powers `x^0 = e, x^1 = x, x^(k+1) = x * x^k` (unambiguous for the
    /// power-associative algebras this crate works with).
    pub fn powers(&self, x: &[Rat], up_to: usize) -> Vec<Vec<Rat>> {
        let mut out = vec![self.unit.clone()];
        if up_to == 0 {
            return out;
        }
        out.push(x.to_vec());
        for _ in 1..up_to {
            let next = self.multiply(x, out.last().unwrap());
            out.push(next);
        }
        out
    }

    /// Generic rank: the dimension of `span{e, x, x^2, ...}` at a generic
    /// element, taken as the maximum over a few random samples.
    pub fn rank(&self, config: &Config) -> usize {
        let mut s = SampleStream::new(config.seed ^ 0x524b);
        let mut best = 0;
        for _ in 0..RANK_SAMPLES {
            let x = s.vector(self.dim);
            let mut span = Subspace::from_span(self.dim, [self.unit.clone()]);
            let mut p = x.clone();
            loop {
                if span.contains(&p) {
                    break;
                }
                span = span.sum(&Subspace::from_span(self.dim, [p.clone()]));
                p = self.multiply(&x, &p);
            }
            best = best.max(span.dim());
            if best == self.dim {
                break;
            }
        }
        best
    }

    /// Rewrite the algebra in the basis whose vectors are the columns of `m`
    /// (expressed in the current basis).
    pub fn change_basis(&self, m: &Mat) -> Result<Algebra, AlgebraError> {
        if m.rows != self.dim || m.cols != self.dim {
            return Err(AlgebraError::Shape("basis matrix must be dim x dim".into()));
        }
        let minv = m
            .inverse()
            .map_err(|_| AlgebraError::Shape("basis matrix is singular".into()))?;
        let cols: Vec<Vec<Rat>> = (0..self.dim).map(|j| m.col(j)).collect();
        let mut table = vec![vec![Vec::new(); self.dim]; self.dim];
        for i in 0..self.dim {
            for j in 0..=i {
                let prod = self.multiply(&cols[i], &cols[j]);
                let in_new = minv.mul_vec(&prod);
                table[i][j] = in_new.clone();
                table[j][i] = in_new;
            }
        }
        let unit = minv.mul_vec(&self.unit);
        Algebra::new(self.dim, unit, table)
    }

    // ---- JSON (external interface) -------------------------------------

    /// `{"dim": n, "unit": ["..."], "table": [[["..."]]]}` with rational
    /// strings for all entries.
    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "unit": self.unit.iter().map(|c| format_rat(c)).collect::<Vec<_>>(),
            "table": self
                .table
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| v.iter().map(|c| format_rat(c)).collect::<Vec<_>>())
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Algebra, AlgebraError> {
        let obj = v
            .as_object()
            .ok_or_else(|| AlgebraError::Json("expected a JSON object".into()))?;
        let dim = obj
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| AlgebraError::Json("missing \"dim\"".into()))? as usize;
        if dim == 0 || dim > MAX_DIM {
            return Err(AlgebraError::Limits(format!(
                "dim {dim} outside 1..={MAX_DIM}"
            )));
        }
        let unit = parse_vec(
            obj.get("unit")
                .ok_or_else(|| AlgebraError::Json("missing \"unit\"".into()))?,
            dim,
        )?;
        let table_v = obj
            .get("table")
            .and_then(Value::as_array)
            .ok_or_else(|| AlgebraError::Json("missing \"table\" array".into()))?;
        if table_v.len() != dim {
            return Err(AlgebraError::Json(format!(
                "table has {} rows, expected {dim}",
                table_v.len()
            )));
        }
        let mut table = Vec::with_capacity(dim);
        for row_v in table_v {
            let row_v = row_v
                .as_array()
                .ok_or_else(|| AlgebraError::Json("table row: expected an array".into()))?;
            if row_v.len() != dim {
                return Err(AlgebraError::Json(format!(
                    "table row has {} entries, expected {dim}",
                    row_v.len()
                )));
            }
            let mut row = Vec::with_capacity(dim);
            for cell in row_v {
                row.push(parse_vec(cell, dim)?);
            }
            table.push(row);
        }
        Algebra::new(dim, unit, table)
    }
}

fn parse_vec(v: &Value, dim: usize) -> Result<Vec<Rat>, AlgebraError> {
    let arr = v
        .as_array()
        .ok_or_else(|| AlgebraError::Json("expected an array of rational strings".into()))?;
    if arr.len() != dim {
        return Err(AlgebraError::Json(format!(
            "vector has {} entries, expected {dim}",
            arr.len()
        )));
    }
    arr.iter()
        .map(|x| {
            let s = x
                .as_str()
                .ok_or_else(|| AlgebraError::Json("expected a rational string".into()))?;
            parse_rat(s).map_err(|e| AlgebraError::Json(format!("entry: {e}")))
        })
        .collect()
}
