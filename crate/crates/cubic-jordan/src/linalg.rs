//! Exact linear algebra over `Q`: row reduction, kernels, solving, and
//! canonically-presented subspaces.

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::rat::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("inconsistent linear system")]
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let add = a * b;
                        out[(i, j)] += add;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> Mat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Reduced row echelon form. Returns `(rref, pivot_columns)`; the rank is
    /// the pivot count. Pivot choice favours small entries to limit
    /// coefficient growth on the bigger certification systems.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // pick the nonzero entry with the smallest "size" in column c
            let mut best: Option<(usize, u64)> = None;
            for i in r..m.rows {
                let v = &m[(i, c)];
                if v.is_zero() {
                    continue;
                }
                let size = (v.numer().bits() + v.denom().bits()) as u64;
                if best.map_or(true, |(_, s)| size < s) {
                    best = Some((i, size));
                }
            }
            let Some((pi, _)) = best else { continue };
            m.swap_rows(r, pi);
            let inv = {
                let p = m[(r, c)].clone();
                Rat::one() / p
            };
            for j in c..m.cols {
                let v = m[(r, j)].clone() * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let sub = &m[(r, j)] * &f;
                    m[(i, j)] -= sub;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of `{x : Ax = 0}`, one vector per free column of the
    /// reduced echelon form, in ascending free-column order.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for fc in 0..self.cols {
            if is_pivot[fc] {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[fc] = Rat::one();
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(pi, fc)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `Ax = b`; `Ok` only when the solution exists and is unique.
    pub fn solve_unique(&self, b: &[Rat]) -> Result<Vec<Rat>, LinalgError> {
        match self.solve_any(b)? {
            (sol, 0) => Ok(sol),
            _ => Err(LinalgError::Shape("solution not unique".into())),
        }
    }

    /// Solve `Ax = b`; returns one solution and the nullity.
    pub fn solve_any(&self, b: &[Rat]) -> Result<(Vec<Rat>, usize), LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::Shape("rhs length != rows".into()));
        }
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Err(LinalgError::Inconsistent);
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (pi, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(pi, self.cols)].clone();
        }
        Ok((x, self.cols - pivots.len()))
    }

    pub fn inverse(&self) -> Result<Mat, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rat::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(LinalgError::Singular);
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        // fraction-preserving Gaussian elimination with column pivoting
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(pi) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rat::zero();
            };
            if pi != c {
                m.swap_rows(c, pi);
                det = -det;
            }
            det *= &m[(c, c)].clone();
            let inv = Rat::one() / m[(c, c)].clone();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() * &inv;
                for j in c..n {
                    let sub = &m[(c, j)] * &f;
                    m[(i, j)] -= sub;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Largest entry size in bits; a cheap health metric used by tests.
    pub fn max_bits(&self) -> u64 {
        self.data
            .iter()
            .map(|v| (v.numer().bits() + v.denom().bits()) as u64)
            .max()
            .unwrap_or(0)
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// A linear subspace of `Q^n`, held as the reduced row echelon basis of its
/// span. Two subspaces are equal iff their `basis` matrices are equal, which
/// makes equality checks and deduplication trivial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    basis: Vec<Vec<Rat>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_span(
            ambient,
            (0..ambient).map(|i| {
                let mut v = vec![Rat::zero(); ambient];
                v[i] = Rat::one();
                v
            }),
        )
    }

    pub fn from_span(ambient: usize, vecs: impl IntoIterator<Item = Vec<Rat>>) -> Self {
        let rows: Vec<Vec<Rat>> = vecs.into_iter().collect();
        for v in &rows {
            assert_eq!(v.len(), ambient, "span vector of wrong dimension");
        }
        if rows.is_empty() {
            return Subspace::zero(ambient);
        }
        let (r, pivots) = Mat::from_rows(rows).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient);
        // reduce v against the echelon basis
        let mut v = v.to_vec();
        for b in &self.basis {
            let lead = b.iter().position(|x| !x.is_zero()).unwrap();
            if !v[lead].is_zero() {
                let f = v[lead].clone(); // basis rows have unit leading entry
                for (vi, bi) in v.iter_mut().zip(b) {
                    let sub = bi * &f;
                    *vi -= sub;
                }
            }
        }
        v.iter().all(|x| x.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` lies
    /// outside the span. Cheap: echelon rows are canonical, so the
    /// coordinate along each row is just the entry at its pivot column.
    pub fn coords_of(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(v.len(), self.ambient);
        let mut rem = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let p = b.iter().position(|x| !x.is_zero()).unwrap();
            let c = rem[p].clone();
            if !c.is_zero() {
                axpy(&mut rem, &-c.clone(), b);
            }
            coords.push(c);
        }
        vec_is_zero(&rem).then_some(coords)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::from_span(
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    /// Greedy complement: standard basis vectors that extend this subspace to
    /// the full space, picked in ascending coordinate order. Deterministic.
    pub fn greedy_complement(&self) -> Vec<Vec<Rat>> {
        let mut acc = self.clone();
        let mut comp = Vec::new();
        for i in 0..self.ambient {
            if acc.dim() == self.ambient {
                break;
            }
            let mut v = vec![Rat::zero(); self.ambient];
            v[i] = Rat::one();
            if !acc.contains(&v) {
                acc = acc.sum(&Subspace::from_span(self.ambient, [v.clone()]));
                comp.push(v);
            }
        }
        comp
    }
}

/// Sum of `a + b` with `a` scaled: `y += s * x`, the workhorse of table
/// application.
pub fn axpy(y: &mut [Rat], s: &Rat, x: &[Rat]) {
    if s.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += s * xi;
        }
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_scale(a: &[Rat], s: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * s).collect()
}

pub fn vec_is_zero(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Signed magnitude heuristic used by tests to keep an eye on blowup.
pub fn vec_abs_max(a: &[Rat]) -> Rat {
    a.iter()
        .map(|x| x.abs())
        .max()
        .unwrap_or_else(Rat::zero)
}
