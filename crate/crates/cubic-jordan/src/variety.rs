//! The projective variety attached to a cubic structure: the closure of
//! `x -> [1 : x : x^# : N(x)]` in `P^{2n+1}`, a twisted-cubic analogue cut
//! out by quadrics. This module builds points of the variety, tests
//! membership in the affine chart, moves points around with translations
//! and the generators of the conformal transformation group, threads exact
//! rational cubic curves through prescribed triples of points, and extracts
//! the invariant quartic whose singular vertex recovers the doubled radical.
//!
//! Coordinates on the ambient space are always ordered `(a, x, y, b)` with
//! `x, y` blocks of length `n`: `a` is the chart coordinate, `y` carries the
//! adjoint, `b` the norm. A point of the affine chart `a != 0` lies on the
//! variety iff
//!
//! ```text
//! a * y = x^#        a^2 * b = N(x)
//! ```
//!
//! On the boundary `a = 0` only the distinguished point at infinity
//! `[0 : 0 : 0 : 1]` is accepted; deciding membership for the rest of the
//! boundary needs elimination machinery out of scope here.

use thiserror::Error;

use crate::cremona::{structure_transporter, CremonaError, CremonaPair, QuadraticMap};
use crate::cubic::CubicData;
use crate::linalg::{vec_is_zero, vec_sub, LinalgError, Mat, Subspace};
use crate::poly::Poly;
use crate::rat::{rat, Rat};
use crate::structure::Decomposition;
use num::{One, Zero};

fn mat_rows(m: &Mat) -> Vec<Vec<Rat>> {
    (0..m.rows).map(|i| m.row(i).to_vec()).collect()
}

#[derive(Debug, Error)]
pub enum VarietyError {
    #[error("bad projective point: {0}")]
    Shape(String),
    #[error("triple not in general position: {0}")]
    NonGenericTriple(String),
    #[error("point lies in the doubled radical, projection is undefined")]
    InsideCenter,
    #[error("matrix does not transport the adjoint, not a structure element")]
    NotInStructureGroup,
    #[error(transparent)]
    Cremona(#[from] CremonaError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A nonzero vector of length `2n + 2` up to scale, blocked as
/// `(a, x, y, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjPoint {
    coords: Vec<Rat>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self, VarietyError> {
        if coords.len() < 4 || coords.len() % 2 != 0 {
            return Err(VarietyError::Shape(format!(
                "coordinate vector of length {} cannot be blocked as (a, x, y, b)",
                coords.len()
            )));
        }
        if vec_is_zero(&coords) {
            return Err(VarietyError::Shape("zero vector".into()));
        }
        Ok(ProjPoint { coords })
    }

    /// Block size `n` of the two middle blocks.
    pub fn block_dim(&self) -> usize {
        (self.coords.len() - 2) / 2
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn alpha(&self) -> &Rat {
        &self.coords[0]
    }

    pub fn x_block(&self) -> &[Rat] {
        let n = self.block_dim();
        &self.coords[1..1 + n]
    }

    pub fn y_block(&self) -> &[Rat] {
        let n = self.block_dim();
        &self.coords[1 + n..1 + 2 * n]
    }

    pub fn beta(&self) -> &Rat {
        &self.coords[self.coords.len() - 1]
    }

    /// Equality in projective space: all 2x2 minors of the pair vanish.
    pub fn proj_eq(&self, other: &ProjPoint) -> bool {
        if self.coords.len() != other.coords.len() {
            return false;
        }
        let m = self.coords.len();
        for i in 0..m {
            for j in i + 1..m {
                let minor = self.coords[i].clone() * other.coords[j].clone()
                    - self.coords[j].clone() * other.coords[i].clone();
                if !minor.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Apply a square matrix; errors if the image is zero (the matrix was
    /// singular at this point).
    pub fn apply(&self, m: &Mat) -> Result<ProjPoint, VarietyError> {
        if m.cols != self.coords.len() {
            return Err(VarietyError::Shape(format!(
                "matrix is {}x{} but the point has {} coordinates",
                m.rows,
                m.cols,
                self.coords.len()
            )));
        }
        ProjPoint::new(m.mul_vec(&self.coords))
    }
}

/// `[1 : 0 : 0 : 0]`, the image of the algebra's zero element.
pub fn base_point(n: usize) -> ProjPoint {
    let mut c = vec![Rat::zero(); 2 * n + 2];
    c[0] = Rat::one();
    ProjPoint { coords: c }
}

/// `[0 : 0 : 0 : 1]`, the distinguished point at infinity.
pub fn infinity_point(n: usize) -> ProjPoint {
    let mut c = vec![Rat::zero(); 2 * n + 2];
    let m = c.len();
    c[m - 1] = Rat::one();
    ProjPoint { coords: c }
}

/// `[1 : x : x^# : N(x)]` for explicit adjoint components and norm. The
/// data-driven [`mu`] is the common entry point; this variant also serves
/// quotient structures that only exist as descended polynomials.
pub fn mu_with(adjoint: &[Poly], norm: &Poly, x: &[Rat]) -> ProjPoint {
    let mut coords = Vec::with_capacity(2 * x.len() + 2);
    coords.push(Rat::one());
    coords.extend_from_slice(x);
    for comp in adjoint {
        coords.push(comp.eval(x));
    }
    coords.push(norm.eval(x));
    ProjPoint { coords }
}

/// The parametrization `x -> [1 : x : x^# : N(x)]`.
pub fn mu(data: &CubicData, x: &[Rat]) -> ProjPoint {
    mu_with(&data.adjoint, &data.norm, x)
}

/// Membership in the variety. In the chart `a != 0` the defining equations
/// `a y = x^#` and `a^2 b = N(x)` are tested exactly; on the boundary only
/// the declared point at infinity is accepted.
pub fn on_variety(data: &CubicData, p: &ProjPoint) -> bool {
    let n = data.adjoint.len();
    if p.block_dim() != n {
        return false;
    }
    let a = p.alpha();
    let x = p.x_block();
    let y = p.y_block();
    if a.is_zero() {
        return vec_is_zero(x) && vec_is_zero(y);
    }
    let sharp = data.adjoint_at(x);
    for i in 0..n {
        if a.clone() * y[i].clone() != sharp[i] {
            return false;
        }
    }
    a.clone() * a.clone() * p.beta().clone() == data.norm_of(x)
}

/// The translation `l_{x*}` as an exact `(2n+2) x (2n+2)` matrix:
///
/// ```text
/// (a, x, y, b) -> (a,
///                  x + a x*,
///                  y + dF_{x*}(x) + a F(x*),
///                  b + B_F(y, x*) + dN_{x*}(x) + a N(x*))
/// ```
///
/// It satisfies `l_{x*} mu(z) = mu(z + x*)` and `l_a l_b = l_{a+b}` on the
/// nose, so the curves of [`cubic_through`] can be recentred anywhere.
pub fn translation(pair: &CremonaPair, x_star: &[Rat]) -> Mat {
    let n = pair.f.nvars();
    let m = 2 * n + 2;
    let mut t = Mat::zeros(m, m);
    t[(0, 0)] = Rat::one();
    for i in 0..n {
        t[(1 + i, 0)] = x_star[i].clone();
        t[(1 + i, 1 + i)] = Rat::one();
    }
    let f_star = pair.f.apply(x_star);
    for i in 0..n {
        t[(1 + n + i, 0)] = f_star[i].clone();
        t[(1 + n + i, 1 + n + i)] = Rat::one();
    }
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        let col = pair.f.polar_at(x_star, &e);
        for i in 0..n {
            t[(1 + n + i, 1 + j)] = col[i].clone();
        }
    }
    t[(m - 1, 0)] = pair.norm.eval(x_star);
    for j in 0..n {
        t[(m - 1, 1 + j)] = pair.norm.partial(j).eval(x_star);
        let mut s = Rat::zero();
        for i in 0..n {
            s += x_star[i].clone() * pair.bf[(i, j)].clone();
        }
        t[(m - 1, 1 + n + j)] = s;
    }
    t[(m - 1, m - 1)] = Rat::one();
    t
}

/// An exact rational cubic curve on the variety: `2n + 2` coordinate
/// polynomials of degree at most three in one parameter `t`.
#[derive(Debug, Clone)]
pub struct CubicCurve {
    pub params: Vec<Poly>,
}

impl CubicCurve {
    pub fn eval(&self, t: &Rat) -> Result<ProjPoint, VarietyError> {
        let point = std::slice::from_ref(t);
        ProjPoint::new(self.params.iter().map(|p| p.eval(point)).collect())
    }

    /// The point reached as `t -> infinity`: the vector of leading
    /// (degree-three) coefficients.
    pub fn at_infinity(&self) -> Result<ProjPoint, VarietyError> {
        ProjPoint::new(self.params.iter().map(|p| p.coeff(&[3])).collect())
    }

    /// Genuinely degree three, i.e. not a line or conic in disguise.
    pub fn is_cubic(&self) -> bool {
        self.params.iter().any(|p| !p.coeff(&[3]).is_zero())
    }
}

/// Thread a cubic curve on the variety through `mu(x1)` (at `t = 0`),
/// `mu(x2)` (at `t = 1`) and `mu(x3)` (at `t = infinity`).
///
/// The construction inverts the first two points relative to `x3`, joins
/// the inverse images by a line `a + t b`, and maps the line back through
/// `[M(a + t b) : G(a + t b) : a + t b : 1]` before recentring at `x3`.
/// Each genericity failure is reported as [`VarietyError::NonGenericTriple`].
pub fn cubic_through(
    pair: &CremonaPair,
    x1: &[Rat],
    x2: &[Rat],
    x3: &[Rat],
) -> Result<CubicCurve, VarietyError> {
    let n = pair.f.nvars();
    let invert_about = |x: &[Rat], which: &str| -> Result<Vec<Rat>, VarietyError> {
        let d = vec_sub(x, x3);
        let nd = pair.norm.eval(&d);
        if nd.is_zero() {
            return Err(VarietyError::NonGenericTriple(format!(
                "norm vanishes on the {which} point relative to the base point"
            )));
        }
        Ok(pair
            .f
            .apply(&d)
            .into_iter()
            .map(|c| c / nd.clone())
            .collect())
    };
    let w1 = invert_about(x1, "first")?;
    let w2 = invert_about(x2, "second")?;
    let b = vec_sub(&w2, &w1);
    if vec_is_zero(&b) {
        return Err(VarietyError::NonGenericTriple(
            "the two inverse images coincide".into(),
        ));
    }
    if pair.conorm.eval(&b).is_zero() {
        return Err(VarietyError::NonGenericTriple(
            "conorm vanishes on the direction of the joining line".into(),
        ));
    }

    let line: Vec<Poly> = (0..n)
        .map(|i| {
            Poly::from_terms(1, [(vec![0], w1[i].clone()), (vec![1], b[i].clone())])
        })
        .collect();
    let mut params = Vec::with_capacity(2 * n + 2);
    params.push(pair.conorm.substitute(&line));
    for comp in pair.g.components() {
        params.push(comp.substitute(&line));
    }
    params.extend(line);
    params.push(Poly::constant(1, Rat::one()));

    let ell = translation(pair, x3);
    let recentred = (0..2 * n + 2)
        .map(|i| {
            let mut acc = Poly::zero(1);
            for (j, p) in params.iter().enumerate() {
                if !ell[(i, j)].is_zero() {
                    acc = acc.add(&p.scale(&ell[(i, j)]));
                }
            }
            acc
        })
        .collect();
    Ok(CubicCurve { params: recentred })
}

/// The invariant quartic in `2n + 2` variables `(a, x, y, b)`:
///
/// ```text
/// Q = T(x^#, y^#) - b N(x) - a N(y) - (T(x, y) - a b)^2 / 4
/// ```
///
/// It vanishes on the variety (identically after substituting the
/// parametrization) and is preserved up to a nonzero scalar by every
/// conformal generator.
pub fn tangent_quartic(data: &CubicData) -> Poly {
    let n = data.adjoint.len();
    let m = 2 * n + 2;
    let alpha = Poly::var(m, 0);
    let beta = Poly::var(m, m - 1);
    let x_sharp: Vec<Poly> = data.adjoint.iter().map(|p| p.shift_vars(m, 1)).collect();
    let y_sharp: Vec<Poly> = data
        .adjoint
        .iter()
        .map(|p| p.shift_vars(m, 1 + n))
        .collect();
    let n_x = data.norm.shift_vars(m, 1);
    let n_y = data.norm.shift_vars(m, 1 + n);

    let mut t_sharp = Poly::zero(m);
    let mut t_xy = Poly::zero(m);
    for i in 0..n {
        for j in 0..n {
            let c = data.trace_form[(i, j)].clone();
            if c.is_zero() {
                continue;
            }
            t_sharp = t_sharp.add(&x_sharp[i].mul(&y_sharp[j]).scale(&c));
            let mut e = vec![0u16; m];
            e[1 + i] = 1;
            e[1 + n + j] = 1;
            t_xy.add_term(e, c);
        }
    }
    let cross = t_xy.sub(&alpha.mul(&beta));
    t_sharp
        .sub(&beta.mul(&n_x))
        .sub(&alpha.mul(&n_y))
        .sub(&cross.mul(&cross).scale(&rat(1, 4)))
}

/// The vertex of a quartic: all directions `w` with `d^3 Q (w) = 0`, i.e.
/// the joint kernel of the third partials (linear forms, as `Q` has degree
/// four). For the tangent quartic this is exactly `0 + Rad + Rad + 0`.
pub fn quartic_vertex(q: &Poly) -> Subspace {
    let m = q.nvars();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for i in 0..m {
        let qi = q.partial(i);
        if qi.is_zero() {
            continue;
        }
        for j in i..m {
            let qij = qi.partial(j);
            if qij.is_zero() {
                continue;
            }
            for k in j..m {
                let qijk = qij.partial(k);
                if qijk.is_zero() {
                    continue;
                }
                let mut row = vec![Rat::zero(); m];
                for l in 0..m {
                    let mut e = vec![0u16; m];
                    e[l] = 1;
                    row[l] = qijk.coeff(&e);
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Subspace::full(m);
    }
    Subspace::from_span(m, Mat::from_rows(rows).nullspace())
}

/// The involutive generator `(a, x, y, b) -> (b, y, x, a)` of the
/// conformal group; on chart points it realises `mu(x) -> mu(x^{-1})`.
pub fn rho_swap(n: usize) -> Mat {
    let m = 2 * n + 2;
    let mut r = Mat::zeros(m, m);
    r[(0, m - 1)] = Rat::one();
    for i in 0..n {
        r[(1 + i, 1 + n + i)] = Rat::one();
        r[(1 + n + i, 1 + i)] = Rat::one();
    }
    r[(m - 1, 0)] = Rat::one();
    r
}

/// The conformal action of a structure element `g`: requires an exact
/// transporter `g^#` with `(g x)^# = g^# (x^#)` and the norm character
/// `N(g x) = eta N(x)`; the generator is `diag(1, g, g^#, eta)`. Matrices
/// outside the structure group are rejected.
pub fn rho_structural(data: &CubicData, gamma: &Mat) -> Result<Mat, VarietyError> {
    let n = data.adjoint.len();
    if gamma.rows != n || gamma.cols != n {
        return Err(VarietyError::Shape(format!(
            "expected an {n} x {n} matrix, got {} x {}",
            gamma.rows, gamma.cols
        )));
    }
    if gamma.inverse().is_err() {
        return Err(VarietyError::NotInStructureGroup);
    }
    let f = QuadraticMap::new(data.adjoint.clone())?;
    let transported =
        structure_transporter(&f, gamma).ok_or(VarietyError::NotInStructureGroup)?;
    let composed = data.norm.substitute_linear(&mat_rows(gamma));
    let eta = composed
        .proportional_to(&data.norm)
        .ok_or(VarietyError::NotInStructureGroup)?;

    let m = 2 * n + 2;
    let mut r = Mat::zeros(m, m);
    r[(0, 0)] = Rat::one();
    for i in 0..n {
        for j in 0..n {
            r[(1 + i, 1 + j)] = gamma[(i, j)].clone();
            r[(1 + n + i, 1 + n + j)] = transported[(i, j)].clone();
        }
    }
    r[(m - 1, m - 1)] = eta;
    Ok(r)
}

/// The conformal translation generator
///
/// ```text
/// (a, x, y, b) -> (a, x + a w, y + x # w + a w^#,
///                  b + T(y, w) + T(x, w^#) + a N(w))
/// ```
///
/// For the adjoint pair of the same data this coincides with
/// [`translation`].
pub fn rho_translation(data: &CubicData, w: &[Rat]) -> Mat {
    let n = data.adjoint.len();
    let m = 2 * n + 2;
    let w_sharp = data.adjoint_at(w);
    let mut r = Mat::zeros(m, m);
    r[(0, 0)] = Rat::one();
    for i in 0..n {
        r[(1 + i, 0)] = w[i].clone();
        r[(1 + i, 1 + i)] = Rat::one();
        r[(1 + n + i, 0)] = w_sharp[i].clone();
        r[(1 + n + i, 1 + n + i)] = Rat::one();
    }
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        let col = data.sharp(&e, w);
        for i in 0..n {
            r[(1 + n + i, 1 + j)] = col[i].clone();
        }
    }
    let t_w = data.trace_form.mul_vec(w);
    let t_w_sharp = data.trace_form.mul_vec(&w_sharp);
    for j in 0..n {
        r[(m - 1, 1 + j)] = t_w_sharp[j].clone();
        r[(m - 1, 1 + n + j)] = t_w[j].clone();
    }
    r[(m - 1, 0)] = data.norm_of(w);
    r[(m - 1, m - 1)] = Rat::one();
    r
}

/// The adjoint components and norm of the semi-simple quotient, descended
/// through the complement embedding and quotient projection. They drive
/// [`mu_with`] for the quotient without re-extracting cubic data, which
/// also covers quotients of rank below three.
pub fn descended_cubic(dec: &Decomposition, data: &CubicData) -> (Vec<Poly>, Poly) {
    let comp_rows = mat_rows(&dec.complement);
    let norm = data.norm.substitute_linear(&comp_rows);
    let pulled: Vec<Poly> = data
        .adjoint
        .iter()
        .map(|p| p.substitute_linear(&comp_rows))
        .collect();
    let mq = dec.quotient.dim();
    let adjoint = (0..mq)
        .map(|k| {
            let mut acc = Poly::zero(mq);
            for (j, p) in pulled.iter().enumerate() {
                let c = dec.projection[(k, j)].clone();
                if !c.is_zero() {
                    acc = acc.add(&p.scale(&c));
                }
            }
            acc
        })
        .collect();
    (adjoint, norm)
}

/// Project a point to the ambient space of the semi-simple quotient by
/// killing both radical blocks. Points supported entirely inside
/// `0 + Rad + Rad + 0` have no image and yield
/// [`VarietyError::InsideCenter`].
pub fn project_ss(dec: &Decomposition, p: &ProjPoint) -> Result<ProjPoint, VarietyError> {
    let n = dec.projection.cols;
    if p.block_dim() != n {
        return Err(VarietyError::Shape(format!(
            "point has block size {}, decomposition expects {n}",
            p.block_dim()
        )));
    }
    let mut coords = Vec::with_capacity(2 * dec.quotient.dim() + 2);
    coords.push(p.alpha().clone());
    coords.extend(dec.project(p.x_block()));
    coords.extend(dec.project(p.y_block()));
    coords.push(p.beta().clone());
    if vec_is_zero(&coords) {
        return Err(VarietyError::InsideCenter);
    }
    Ok(ProjPoint { coords })
}
