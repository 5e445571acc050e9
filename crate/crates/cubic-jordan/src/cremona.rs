//! Quadro-quadric Cremona machinery: certification of quadratic maps,
//! detection of fake (linearly split) maps, recovery of the underlying
//! algebra from a certified pair, and the map-side structure pipeline that
//! mirrors `crate::structure` without ever touching a multiplication table.
//!
//! A *certified pair* packages everything the downstream algorithms need:
//!
//! ```text
//! G(F(x)) = N(x) x          F(G(y)) = M(y) y
//! M(F(x)) = N(x)^2          N(G(y)) = M(y)^2
//! dN_x    = B_F(F(x), dx)   dM_y    = B_G(G(y), dy)
//! ```
//!
//! with `N`, `M` cubic and `B_F`, `B_G` constant matrices expressing the
//! norm gradients through the map components. `certify` finds `(G, N)` by
//! exact joint coefficient matching, so the first identity holds by
//! construction; everything else is solved for and then re-verified,
//! symbolically in low dimension and at 200 deterministic sample points
//! above it.
//!
//! Fake maps - those of the form `l(x) * A x` for a linear form `l` and an
//! invertible matrix `A` - satisfy the same identity shapes but collapse to
//! linear projectivities. They are recognised exactly, before any solving,
//! by factoring one component's quadric and testing the linear factors for
//! common divisibility.

use std::collections::HashMap;

use num::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::config::Config;
use crate::cubic::CubicData;
use crate::linalg::{vec_is_zero, LinalgError, Mat, Subspace};
use crate::poly::{monomials, Poly};
use crate::rat::{format_rat, rat, sqrt_rat, Rat};
use crate::sample::SampleStream;
use crate::structure::norm_radical;

/// Largest dimension at which pair identities are verified symbolically;
/// above this, 200 deterministic sample points are used.
const SYMBOLIC_PAIR_DIM: usize = 9;
const VERIFY_SAMPLES: usize = 200;
const SAMPLE_TAG: u64 = 0x4345_5254;

#[derive(Debug, Error)]
pub enum CremonaError {
    #[error("bad quadratic map: {0}")]
    Shape(String),
    #[error("bad JSON for quadratic map: {0}")]
    Json(String),
    #[error("solve exceeds budget ({rows} x {cols} cells)")]
    Budget { rows: usize, cols: usize },
    #[error("not a Cremona pair: {0}")]
    NotCremona(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A tuple of `n` quadratic forms in `n` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticMap {
    comps: Vec<Poly>,
}

impl QuadraticMap {
    pub fn new(comps: Vec<Poly>) -> Result<QuadraticMap, CremonaError> {
        let n = comps.len();
        if n == 0 {
            return Err(CremonaError::Shape("no components".into()));
        }
        for (i, c) in comps.iter().enumerate() {
            if c.nvars() != n {
                return Err(CremonaError::Shape(format!(
                    "component {i} has {} variables, expected {n}",
                    c.nvars()
                )));
            }
            if !c.is_homogeneous(2) {
                return Err(CremonaError::Shape(format!(
                    "component {i} is not homogeneous of degree 2"
                )));
            }
        }
        if comps.iter().all(|c| c.is_zero()) {
            return Err(CremonaError::Shape("zero map".into()));
        }
        Ok(QuadraticMap { comps })
    }

    pub fn nvars(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn apply(&self, x: &[Rat]) -> Vec<Rat> {
        self.comps.iter().map(|c| c.eval(x)).collect()
    }

    /// Polarisation `F(x + z) - F(x) - F(z)`, evaluated.
    pub fn polar_at(&self, x: &[Rat], z: &[Rat]) -> Vec<Rat> {
        let sum: Vec<Rat> = x.iter().zip(z).map(|(a, b)| a + b).collect();
        let fs = self.apply(&sum);
        let fx = self.apply(x);
        let fz = self.apply(z);
        (0..fs.len()).map(|i| &fs[i] - &fx[i] - &fz[i]).collect()
    }

    /// `m . F`: linear map applied after `F`.
    pub fn compose_left(&self, m: &Mat) -> Result<QuadraticMap, CremonaError> {
        if m.rows != self.nvars() || m.cols != self.nvars() {
            return Err(CremonaError::Shape("matrix size mismatch".into()));
        }
        let comps = (0..m.rows)
            .map(|i| {
                let mut acc = Poly::zero(self.nvars());
                for (j, c) in self.comps.iter().enumerate() {
                    if !m[(i, j)].is_zero() {
                        acc = acc.add(&c.scale(&m[(i, j)]));
                    }
                }
                acc
            })
            .collect();
        QuadraticMap::new(comps)
    }

    /// `F . m`: linear substitution of the input.
    pub fn compose_right(&self, m: &Mat) -> Result<QuadraticMap, CremonaError> {
        if m.rows != self.nvars() || m.cols != self.nvars() {
            return Err(CremonaError::Shape("matrix size mismatch".into()));
        }
        let rows: Vec<Vec<Rat>> = (0..m.rows)
            .map(|i| (0..m.cols).map(|j| m[(i, j)].clone()).collect())
            .collect();
        let comps = self
            .comps
            .iter()
            .map(|c| c.substitute_linear(&rows))
            .collect();
        QuadraticMap::new(comps)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.nvars(),
            "forms": self.comps.iter().map(Poly::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<QuadraticMap, CremonaError> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| CremonaError::Json("missing field \"n\"".into()))? as usize;
        if n == 0 || n > crate::algebra::MAX_DIM {
            return Err(CremonaError::Json(format!("n = {n} out of range")));
        }
        let comps = v
            .get("forms")
            .and_then(Value::as_array)
            .ok_or_else(|| CremonaError::Json("missing array \"forms\"".into()))?;
        if comps.len() != n {
            return Err(CremonaError::Json(format!(
                "expected {n} forms, got {}",
                comps.len()
            )));
        }
        let comps: Vec<Poly> = comps
            .iter()
            .map(|c| Poly::from_json(c).map_err(|e| CremonaError::Json(e.to_string())))
            .collect::<Result<_, _>>()?;
        QuadraticMap::new(comps)
    }
}

/// A certified quadro-quadric pair; see the module docs for the identities.
#[derive(Debug, Clone)]
pub struct CremonaPair {
    pub f: QuadraticMap,
    pub g: QuadraticMap,
    pub norm: Poly,
    pub conorm: Poly,
    pub bf: Mat,
    pub bg: Mat,
}

/// Outcome of certification.
#[derive(Debug)]
pub enum CertifyOutcome {
    Genuine(Box<CremonaPair>),
    /// `F = factor * (automorphism x)`: projectively a linear map.
    Fake { factor: Poly, automorphism: Mat },
    NotCremona { reason: String },
}

// ---- linear factor detection ----------------------------------------------

fn scaled_gradient_pairing(q: &Poly, p: &[Rat]) -> Poly {
    // b(p, x) = (1/2) sum_i p_i dq/dx_i -- the polar form of q against p
    let mut acc = Poly::zero(q.nvars());
    for (i, c) in p.iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&q.partial(i).scale(c));
        }
    }
    acc.scale(&rat(1, 2))
}

/// Write a nonzero quadric as a product of two rational linear forms, if it
/// is one. Lagrange reduction: peel at most two squares of linear forms; a
/// rank-2 difference splits over `Q` exactly when the ratio of the two
/// coefficients is minus a square.
pub fn factor_quadric(q: &Poly) -> Option<(Poly, Poly)> {
    let n = q.nvars();
    if q.is_zero() || !q.is_homogeneous(2) {
        return None;
    }
    // a point with q(p) != 0 exists among e_i and e_i + e_j
    let probe = |q: &Poly| -> Option<Vec<Rat>> {
        for i in 0..n {
            let mut p = vec![Rat::zero(); n];
            p[i] = Rat::one();
            if !q.eval(&p).is_zero() {
                return Some(p);
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let mut p = vec![Rat::zero(); n];
                p[i] = Rat::one();
                p[j] = Rat::one();
                if !q.eval(&p).is_zero() {
                    return Some(p);
                }
            }
        }
        None
    };

    let p1 = probe(q)?;
    let a = q.eval(&p1);
    let l1 = scaled_gradient_pairing(q, &p1).scale(&(Rat::one() / &a));
    let q1 = q.sub(&l1.mul(&l1).scale(&a));
    if q1.is_zero() {
        // rank 1: q = a l1^2
        return Some((l1.scale(&a), l1));
    }
    let p2 = probe(&q1)?;
    let b = q1.eval(&p2);
    let l2 = scaled_gradient_pairing(&q1, &p2).scale(&(Rat::one() / &b));
    let q2 = q1.sub(&l2.mul(&l2).scale(&b));
    if !q2.is_zero() {
        return None; // rank > 2
    }
    // q = a l1^2 + b l2^2 = a (l1 + t l2)(l1 - t l2) with t^2 = -b/a
    let t = sqrt_rat(&(-(&b / &a)))?;
    let plus = l1.add(&l2.scale(&t)).scale(&a);
    let minus = l1.sub(&l2.scale(&t));
    Some((plus, minus))
}

/// Scale a nonzero polynomial so its lex-greatest monomial has coefficient 1.
fn monic_lex(p: &Poly) -> Poly {
    match p.terms().last() {
        Some((_, c)) => p.scale(&(Rat::one() / c)),
        None => p.clone(),
    }
}

/// Does the linear form `l` divide `p`? Checked by substituting the zero
/// locus of `l` (solved for its pivot variable) into `p`.
pub fn linear_divides(l: &Poly, p: &Poly) -> bool {
    let n = l.nvars();
    assert!(l.is_homogeneous(1) && !l.is_zero());
    let coeffs: Vec<Rat> = (0..n)
        .map(|i| {
            let mut e = vec![0u16; n];
            e[i] = 1;
            l.coeff(&e)
        })
        .collect();
    let k = coeffs.iter().position(|c| !c.is_zero()).unwrap();
    let subs: Vec<Poly> = (0..n)
        .map(|i| {
            if i != k {
                return Poly::var(n, i);
            }
            let mut s = Poly::zero(n);
            for (j, c) in coeffs.iter().enumerate() {
                if j != k && !c.is_zero() {
                    let mut e = vec![0u16; n];
                    e[j] = 1;
                    s.add_term(e, -(c / &coeffs[k]));
                }
            }
            s
        })
        .collect();
    p.substitute(&subs).is_zero()
}

/// A linear form dividing every component, if there is one; normalised to
/// lex-monic. Candidates come from factoring the first nonzero component.
pub fn common_linear_factor(f: &QuadraticMap) -> Option<Poly> {
    let q0 = f.components().iter().find(|c| !c.is_zero())?;
    let (l1, l2) = factor_quadric(q0)?;
    for cand in [l1, l2] {
        let cand = monic_lex(&cand);
        if f.components().iter().all(|c| linear_divides(&cand, c)) {
            return Some(cand);
        }
    }
    None
}

/// Divide a quadric by a linear form, by coefficient matching. `None` if it
/// does not divide.
fn divide_by_linear(p: &Poly, l: &Poly) -> Option<Poly> {
    let n = p.nvars();
    let m1 = monomials(n, 1);
    let m2 = monomials(n, 2);
    let m2idx: HashMap<&Vec<u16>, usize> = m2.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut mat = Mat::zeros(m2.len(), m1.len());
    for (j, e1) in m1.iter().enumerate() {
        // column j: coefficients of l * x^{e1}
        for (el, cl) in l.terms() {
            let sum: Vec<u16> = el.iter().zip(e1).map(|(a, b)| a + b).collect();
            mat[(m2idx[&sum], j)] += cl.clone();
        }
    }
    let rhs: Vec<Rat> = m2.iter().map(|e| p.coeff(e)).collect();
    let (sol, _) = mat.solve_any(&rhs).ok()?;
    let mut out = Poly::zero(n);
    for (j, e1) in m1.iter().enumerate() {
        out.add_term(e1.clone(), sol[j].clone());
    }
    Some(out)
}

// ---- certification ---------------------------------------------------------

/// Solve `dN_x = B(F(x), dx)` for the constant matrix `B`: row `i` expresses
/// `dN/dx_i` in the components of `F`.
pub fn bf_solve(f: &QuadraticMap, norm: &Poly) -> Result<Mat, CremonaError> {
    let n = f.nvars();
    if norm.nvars() != n {
        return Err(CremonaError::Shape("norm variable count mismatch".into()));
    }
    let m2 = monomials(n, 2);
    let m2idx: HashMap<&Vec<u16>, usize> = m2.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut cols = Mat::zeros(m2.len(), n);
    for (j, c) in f.components().iter().enumerate() {
        for (e, v) in c.terms() {
            cols[(m2idx[e], j)] = v.clone();
        }
    }
    let mut b = Mat::zeros(n, n);
    for i in 0..n {
        let pi = norm.partial(i);
        let rhs: Vec<Rat> = m2.iter().map(|e| pi.coeff(e)).collect();
        let (row, _) = cols.solve_any(&rhs).map_err(|_| {
            CremonaError::NotCremona(format!(
                "norm gradient component {i} is not a combination of the map components"
            ))
        })?;
        for (j, v) in row.into_iter().enumerate() {
            b[(i, j)] = v;
        }
    }
    Ok(b)
}

impl CremonaPair {
    /// Check all six defining identities; symbolic up to
    /// [`SYMBOLIC_PAIR_DIM`] variables, sampled at 200 points beyond.
    pub fn verify(&self, config: &Config) -> Result<(), CremonaError> {
        let n = self.f.nvars();
        let fail = |what: &str| Err(CremonaError::NotCremona(format!("identity fails: {what}")));
        if n <= SYMBOLIC_PAIR_DIM {
            let fx: Vec<Poly> = self.f.components().to_vec();
            let gy: Vec<Poly> = self.g.components().to_vec();
            let gf: Vec<Poly> = gy.iter().map(|c| c.substitute(&fx)).collect();
            for i in 0..n {
                if gf[i] != self.norm.mul_var(i) {
                    return fail("G(F(x)) = N(x) x");
                }
            }
            let fg: Vec<Poly> = fx.iter().map(|c| c.substitute(&gy)).collect();
            for i in 0..n {
                if fg[i] != self.conorm.mul_var(i) {
                    return fail("F(G(y)) = M(y) y");
                }
            }
            if self.conorm.substitute(&fx) != self.norm.mul(&self.norm) {
                return fail("M(F(x)) = N(x)^2");
            }
            if self.norm.substitute(&gy) != self.conorm.mul(&self.conorm) {
                return fail("N(G(y)) = M(y)^2");
            }
        } else {
            let mut s = SampleStream::new(config.seed ^ SAMPLE_TAG);
            for _ in 0..VERIFY_SAMPLES {
                let x = s.vector(n);
                let fx = self.f.apply(&x);
                let nx = self.norm.eval(&x);
                let gfx = self.g.apply(&fx);
                for i in 0..n {
                    if gfx[i] != &nx * &x[i] {
                        return fail("G(F(x)) = N(x) x");
                    }
                }
                let gx = self.g.apply(&x);
                let mx = self.conorm.eval(&x);
                let fgx = self.f.apply(&gx);
                for i in 0..n {
                    if fgx[i] != &mx * &x[i] {
                        return fail("F(G(y)) = M(y) y");
                    }
                }
                if self.conorm.eval(&fx) != &nx * &nx {
                    return fail("M(F(x)) = N(x)^2");
                }
                if self.norm.eval(&gx) != &mx * &mx {
                    return fail("N(G(y)) = M(y)^2");
                }
            }
        }
        // gradient identities are linear in the unknown rows: always symbolic
        for i in 0..n {
            let mut acc = Poly::zero(n);
            for (j, c) in self.f.components().iter().enumerate() {
                if !self.bf[(i, j)].is_zero() {
                    acc = acc.add(&c.scale(&self.bf[(i, j)]));
                }
            }
            if acc != self.norm.partial(i) {
                return fail("dN = B_F(F, dx)");
            }
            let mut acc = Poly::zero(n);
            for (j, c) in self.g.components().iter().enumerate() {
                if !self.bg[(i, j)].is_zero() {
                    acc = acc.add(&c.scale(&self.bg[(i, j)]));
                }
            }
            if acc != self.conorm.partial(i) {
                return fail("dM = B_G(G, dy)");
            }
        }
        Ok(())
    }

    /// Transport by a linear map on the target: `F' = m F`, `G' = G m^{-1}`,
    /// norms unchanged on the source side.
    pub fn transport_left(&self, m: &Mat) -> Result<CremonaPair, CremonaError> {
        let minv = m.inverse()?;
        Ok(CremonaPair {
            f: self.f.compose_left(m)?,
            g: self.g.compose_right(&minv)?,
            norm: self.norm.clone(),
            conorm: {
                let rows: Vec<Vec<Rat>> = (0..minv.rows)
                    .map(|i| (0..minv.cols).map(|j| minv[(i, j)].clone()).collect())
                    .collect();
                self.conorm.substitute_linear(&rows)
            },
            bf: self.bf.mul(&minv),
            bg: minv.transpose().mul(&self.bg),
        })
    }

    /// Transport by a linear substitution of the source: `F'' = F m`,
    /// `G'' = m^{-1} G`, `N'' = N . m`, conorm unchanged.
    pub fn transport_right(&self, m: &Mat) -> Result<CremonaPair, CremonaError> {
        let minv = m.inverse()?;
        let m_rows: Vec<Vec<Rat>> = (0..m.rows)
            .map(|i| (0..m.cols).map(|j| m[(i, j)].clone()).collect())
            .collect();
        Ok(CremonaPair {
            f: self.f.compose_right(m)?,
            g: self.g.compose_left(&minv)?,
            norm: self.norm.substitute_linear(&m_rows),
            conorm: self.conorm.clone(),
            bf: m.transpose().mul(&self.bf),
            bg: self.bg.mul(m),
        })
    }
}

/// Certify a quadratic map: find its quadratic inverse and norm exactly, or
/// classify it as fake / not Cremona.
pub fn certify(f: &QuadraticMap, config: &Config) -> Result<CertifyOutcome, CremonaError> {
    let n = f.nvars();

    // fake maps first: a common linear factor collapses F projectively
    if let Some(l) = common_linear_factor(f) {
        let mut auto = Mat::zeros(n, n);
        for (i, c) in f.components().iter().enumerate() {
            let lin = divide_by_linear(c, &l)
                .ok_or_else(|| CremonaError::Shape("division by common factor failed".into()))?;
            for j in 0..n {
                let mut e = vec![0u16; n];
                e[j] = 1;
                auto[(i, j)] = lin.coeff(&e);
            }
        }
        if auto.inverse().is_err() {
            return Ok(CertifyOutcome::NotCremona {
                reason: "common linear factor with a singular residual map".into(),
            });
        }
        return Ok(CertifyOutcome::Fake {
            factor: l,
            automorphism: auto,
        });
    }

    // joint system for (G, N): G(F(x)) - N(x) x = 0, coefficient by
    // coefficient in degree 4
    let m2 = monomials(n, 2);
    let m3 = monomials(n, 3);
    let m4 = monomials(n, 4);
    let m4idx: HashMap<&Vec<u16>, usize> = m4.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let n_m2 = m2.len();
    let rows = n * m4.len();
    let cols = n * n_m2 + m3.len();
    if !config.budget.check_solve(rows, cols) {
        return Err(CremonaError::Budget { rows, cols });
    }

    // products F^mu for every quadratic monomial mu
    let products: Vec<Poly> = m2
        .iter()
        .map(|mu| {
            let mut factors = Vec::new();
            for (j, &e) in mu.iter().enumerate() {
                for _ in 0..e {
                    factors.push(j);
                }
            }
            f.components()[factors[0]].mul(&f.components()[factors[1]])
        })
        .collect();

    let mut mat = Mat::zeros(rows, cols);
    for i in 0..n {
        for (k, prod) in products.iter().enumerate() {
            for (e4, c) in prod.terms() {
                mat[(i * m4.len() + m4idx[e4], i * n_m2 + k)] += c.clone();
            }
        }
        for (t, nu) in m3.iter().enumerate() {
            let mut e4 = nu.clone();
            e4[i] += 1;
            let row = i * m4.len() + m4idx[&e4];
            mat[(row, n * n_m2 + t)] -= Rat::one();
        }
    }

    let null = mat.nullspace();
    match null.len() {
        0 => {
            return Ok(CertifyOutcome::NotCremona {
                reason: "no quadratic inverse exists".into(),
            })
        }
        1 => {}
        d => {
            return Ok(CertifyOutcome::NotCremona {
                reason: format!("inverse solution space has dimension {d}"),
            })
        }
    }
    let v = &null[0];
    let mut norm = Poly::zero(n);
    for (t, nu) in m3.iter().enumerate() {
        norm.add_term(nu.clone(), v[n * n_m2 + t].clone());
    }
    if norm.is_zero() {
        return Ok(CertifyOutcome::NotCremona {
            reason: "the image lies on a quadric (norm vanishes identically)".into(),
        });
    }
    // canonical scale: lex-greatest monomial of N gets coefficient 1
    let scale = {
        let (_, c) = norm.terms().last().unwrap();
        Rat::one() / c
    };
    let norm = norm.scale(&scale);
    let g_comps: Vec<Poly> = (0..n)
        .map(|i| {
            let mut p = Poly::zero(n);
            for (k, mu) in m2.iter().enumerate() {
                p.add_term(mu.clone(), &v[i * n_m2 + k] * &scale);
            }
            p
        })
        .collect();
    let g = match QuadraticMap::new(g_comps) {
        Ok(g) => g,
        Err(e) => {
            return Ok(CertifyOutcome::NotCremona {
                reason: format!("inverse is degenerate: {e}"),
            })
        }
    };

    // conorm M from F(G(y)) = M(y) y
    let fg: Vec<Poly> = f
        .components()
        .iter()
        .map(|c| c.substitute(g.components()))
        .collect();
    let mut mmat = Mat::zeros(n * m4.len(), m3.len());
    let mut mrhs = vec![Rat::zero(); n * m4.len()];
    for i in 0..n {
        for (t, nu) in m3.iter().enumerate() {
            let mut e4 = nu.clone();
            e4[i] += 1;
            mmat[(i * m4.len() + m4idx[&e4], t)] = Rat::one();
        }
        for (e4, c) in fg[i].terms() {
            mrhs[i * m4.len() + m4idx[e4]] = c.clone();
        }
    }
    let conorm = match mmat.solve_any(&mrhs) {
        Ok((sol, _)) => {
            let mut m = Poly::zero(n);
            for (t, nu) in m3.iter().enumerate() {
                m.add_term(nu.clone(), sol[t].clone());
            }
            m
        }
        Err(_) => {
            return Ok(CertifyOutcome::NotCremona {
                reason: "F(G(y)) is not of the form M(y) y".into(),
            })
        }
    };

    let bf = match bf_solve(f, &norm) {
        Ok(b) => b,
        Err(e) => {
            return Ok(CertifyOutcome::NotCremona {
                reason: format!("no B_F matrix: {e}"),
            })
        }
    };
    let bg = match bf_solve(&g, &conorm) {
        Ok(b) => b,
        Err(e) => {
            return Ok(CertifyOutcome::NotCremona {
                reason: format!("no B_G matrix: {e}"),
            })
        }
    };

    let pair = CremonaPair {
        f: f.clone(),
        g,
        norm,
        conorm,
        bf,
        bg,
    };
    match pair.verify(config) {
        Ok(()) => Ok(CertifyOutcome::Genuine(Box::new(pair))),
        Err(CremonaError::NotCremona(reason)) => Ok(CertifyOutcome::NotCremona { reason }),
        Err(e) => Err(e),
    }
}

/// The canonical pair attached to an algebra with cubic data: `F = G = x^#`,
/// `N = M` the norm, and `B_F = B_G` the trace form (since
/// `dN_x = T(x^#, .)`).
pub fn adjoint_pair(
    alg: &Algebra,
    data: &CubicData,
    config: &Config,
) -> Result<CremonaPair, CremonaError> {
    let f = QuadraticMap::new(data.adjoint.clone())?;
    let pair = CremonaPair {
        g: f.clone(),
        f,
        norm: data.norm.clone(),
        conorm: data.norm.clone(),
        bf: data.trace_form.clone(),
        bg: data.trace_form.clone(),
    };
    debug_assert_eq!(alg.dim(), pair.f.nvars());
    pair.verify(config)?;
    Ok(pair)
}

// ---- algebra recovery -------------------------------------------------------

/// The quadratic operator family of a pair:
/// `P(x) z = -dG_{F(x)}(z) + B_G(x, z) x`, which after normalisation at a
/// unit becomes the U-operator of the recovered algebra.
pub fn p_operator(pair: &CremonaPair, x: &[Rat]) -> Mat {
    let n = pair.f.nvars();
    let fx = pair.f.apply(x);
    let mut out = Mat::zeros(n, n);
    for k in 0..n {
        let mut ek = vec![Rat::zero(); n];
        ek[k] = Rat::one();
        let dg = pair.g.polar_at(&fx, &ek);
        // B_G(x, e_k) = sum_j bg[k][j] x_j
        let mut s = Rat::zero();
        for j in 0..n {
            if !x[j].is_zero() && !pair.bg[(k, j)].is_zero() {
                s += &pair.bg[(k, j)] * &x[j];
            }
        }
        for i in 0..n {
            let mut v = -dg[i].clone();
            v += &s * &x[i];
            out[(i, k)] = v;
        }
    }
    out
}

/// Polarised operator `P(x, y) = (P(x + y) - P(x) - P(y)) / 2`.
pub fn p_operator_pair(pair: &CremonaPair, x: &[Rat], y: &[Rat]) -> Mat {
    let sum: Vec<Rat> = x.iter().zip(y).map(|(a, b)| a + b).collect();
    let ps = p_operator(pair, &sum);
    let px = p_operator(pair, x);
    let py = p_operator(pair, y);
    ps.add(&px.scale(&-Rat::one()))
        .add(&py.scale(&-Rat::one()))
        .scale(&rat(1, 2))
}

/// An algebra recovered from a certified pair, with the linear witnesses
/// relating the input map to the recovered adjoint.
#[derive(Debug, Clone)]
pub struct RecoveredAlgebra {
    pub algebra: Algebra,
    /// `A0 = P(e)`: the transport normalising the pair.
    pub transport: Mat,
    /// `L = N(e) A0^{-1}` satisfies `F = L . adjoint` for the recovered
    /// algebra's adjoint map.
    pub witness: Mat,
}

/// Rebuild the algebra behind a certified pair, using `e` as the unit.
/// Requires `N(e) != 0` and the operator `P(e)` to be invertible.
pub fn algebra_from_map(
    pair: &CremonaPair,
    e: &[Rat],
    _config: &Config,
) -> Result<RecoveredAlgebra, CremonaError> {
    let n = pair.f.nvars();
    if e.len() != n {
        return Err(CremonaError::Shape("unit candidate length mismatch".into()));
    }
    let ne = pair.norm.eval(e);
    if ne.is_zero() {
        return Err(CremonaError::NotCremona(
            "unit candidate has vanishing norm".into(),
        ));
    }
    let a0 = p_operator(pair, e);
    let a0_inv = a0
        .inverse()
        .map_err(|_| CremonaError::NotCremona("P(e) is singular at the unit candidate".into()))?;

    // after transport, P'(x) = P(x) A0^{-1} and P'(e) = Id; the bilinear
    // product is x * y = P'(x, y) e
    let mut table = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        let bi = {
            let mut v = vec![Rat::zero(); n];
            v[i] = Rat::one();
            v
        };
        for j in 0..=i {
            let bj = {
                let mut v = vec![Rat::zero(); n];
                v[j] = Rat::one();
                v
            };
            let pij = p_operator_pair(pair, &bi, &bj).mul(&a0_inv);
            let prod = pij.mul_vec(e);
            table[i][j] = prod.clone();
            table[j][i] = prod;
        }
    }
    let algebra = Algebra::new(n, e.to_vec(), table)?;
    let witness = a0_inv.scale(&ne);
    Ok(RecoveredAlgebra {
        algebra,
        transport: a0,
        witness,
    })
}

/// Search for a usable unit for [`algebra_from_map`]: tries the all-ones
/// vector, the standard basis vectors, then deterministic samples.
pub fn find_unit_candidate(pair: &CremonaPair, config: &Config) -> Option<Vec<Rat>> {
    let n = pair.f.nvars();
    let usable = |x: &[Rat]| -> bool {
        !pair.norm.eval(x).is_zero() && p_operator(pair, x).inverse().is_ok()
    };
    let ones = vec![Rat::one(); n];
    if usable(&ones) {
        return Some(ones);
    }
    for i in 0..n {
        let mut v = vec![Rat::zero(); n];
        v[i] = Rat::one();
        if usable(&v) {
            return Some(v);
        }
    }
    let mut s = SampleStream::new(config.seed ^ SAMPLE_TAG ^ 1);
    for _ in 0..50 {
        let v = s.vector(n);
        if usable(&v) {
            return Some(v);
        }
    }
    None
}

// ---- map-side structure ------------------------------------------------------

/// Operator Penico profile computed from the pair alone: the chain starts at
/// the kernel of the norm Hessian and descends via the polarised `P`
/// operators, mirroring `U_{R}(J)` without a table.
pub fn map_penico(pair: &CremonaPair) -> Result<Vec<usize>, CremonaError> {
    let n = pair.f.nvars();
    let mut cur = norm_radical(&pair.norm);
    let mut dims = Vec::new();
    while cur.dim() > 0 {
        dims.push(cur.dim());
        let basis = cur.basis().to_vec();
        let mut span = Vec::new();
        for (i, r) in basis.iter().enumerate() {
            for rp in &basis[i..] {
                let op = p_operator_pair(pair, r, rp);
                for k in 0..n {
                    let col = op.col(k);
                    if !vec_is_zero(&col) {
                        span.push(col);
                    }
                }
            }
        }
        let next = Subspace::from_span(n, span);
        if next.dim() >= cur.dim() {
            return Err(CremonaError::NotCremona(format!(
                "operator Penico chain stalled at dimension {}",
                cur.dim()
            )));
        }
        cur = next;
    }
    dims.push(0);
    Ok(dims)
}

/// The pieces of `F` split along the radical: writing `x = C w + D r` with
/// `C` a complement of the radical `R` and `D` a basis of it,
///
/// ```text
/// F(w + r) = Fbar(w) + rho(w) + mixed(w, r) + nil(r)
/// ```
///
/// where `Fbar` is the induced map on the quotient (complement output
/// coordinates) and the other three blocks land in radical output
/// coordinates, sorted by their degree in `r` (0, 1, 2). That the
/// complement output depends only on `w` is a theorem about the pairs; it
/// is re-checked here and a violation reported as `NotCremona`.
#[derive(Debug, Clone)]
pub struct MapSplit {
    pub radical: Subspace,
    pub inverse_radical: Subspace,
    pub penico_dims: Vec<usize>,
    /// Induced quadratic map on the quotient coordinates.
    pub f_bar: QuadraticMap,
    pub g_bar: QuadraticMap,
    /// Induced norms on the quotient.
    pub n_bar: Poly,
    pub m_bar: Poly,
    /// Radical output block of degree 0 in `r` (pure `w`), in split vars.
    pub rho: Vec<Poly>,
    /// Radical output block bilinear in `(w, r)`, in split vars.
    pub mixed: Vec<Poly>,
    /// Radical output block quadratic in `r`, in split vars.
    pub nil: Vec<Poly>,
    /// Radical vectors annihilated by the mixed block.
    pub annihilator: Subspace,
}

/// Split the pair along its radical; see [`MapSplit`].
pub fn map_ss_part(pair: &CremonaPair, _config: &Config) -> Result<MapSplit, CremonaError> {
    let n = pair.f.nvars();
    let rad = norm_radical(&pair.norm);
    let rad_g = norm_radical(&pair.conorm);
    let penico_dims = map_penico(pair)?;
    let d = rad.dim();
    let comp = rad.greedy_complement();
    let m = comp.len();

    // x = C w + D r: rows of the substitution, old var i in m + d new vars
    let mut rows = vec![vec![Rat::zero(); m + d]; n];
    for (a, c) in comp.iter().enumerate() {
        for i in 0..n {
            rows[i][a] = c[i].clone();
        }
    }
    for (b, r) in rad.basis().iter().enumerate() {
        for i in 0..n {
            rows[i][m + b] = r[i].clone();
        }
    }
    // output projections: invert [C | D]
    let mut full = Mat::zeros(n, n);
    for (j, v) in comp.iter().chain(rad.basis()).enumerate() {
        for i in 0..n {
            full[(i, j)] = v[i].clone();
        }
    }
    let full_inv = full.inverse()?;

    let split: Vec<Poly> = pair
        .f
        .components()
        .iter()
        .map(|c| c.substitute_linear(&rows))
        .collect();
    let project = |row: usize| -> Poly {
        let mut acc = Poly::zero(m + d);
        for i in 0..n {
            if !full_inv[(row, i)].is_zero() {
                acc = acc.add(&split[i].scale(&full_inv[(row, i)]));
            }
        }
        acc
    };

    let r_degree = |e: &[u16]| -> usize { e[m..].iter().map(|&x| x as usize).sum() };

    // complement output must be independent of r
    let mut f_bar_comps = Vec::with_capacity(m);
    for a in 0..m {
        let p = project(a);
        if p.terms().any(|(e, _)| r_degree(e) > 0) {
            return Err(CremonaError::NotCremona(
                "complement output of F depends on the radical input".into(),
            ));
        }
        // drop the r variables
        let mut q = Poly::zero(m);
        for (e, c) in p.terms() {
            q.add_term(e[..m].to_vec(), c.clone());
        }
        f_bar_comps.push(q);
    }
    let f_bar = QuadraticMap::new(f_bar_comps)?;

    let mut rho = Vec::with_capacity(d);
    let mut mixed = Vec::with_capacity(d);
    let mut nil = Vec::with_capacity(d);
    for b in 0..d {
        let p = project(m + b);
        let mut parts = [Poly::zero(m + d), Poly::zero(m + d), Poly::zero(m + d)];
        for (e, c) in p.terms() {
            parts[r_degree(e)].add_term(e.clone(), c.clone());
        }
        let [p0, p1, p2] = parts;
        rho.push(p0);
        mixed.push(p1);
        nil.push(p2);
    }

    // annihilator of the mixed block inside the radical: r-directions on
    // which every mixed component vanishes identically
    let annihilator = {
        let mut rows_m = Vec::new();
        for p in &mixed {
            // group coefficients by (component, w-monomial) as linear forms in r
            let mut groups: HashMap<Vec<u16>, Vec<Rat>> = HashMap::new();
            for (e, c) in p.terms() {
                let wpart = e[..m].to_vec();
                let rvar = e[m..].iter().position(|&x| x == 1).unwrap();
                groups
                    .entry(wpart)
                    .or_insert_with(|| vec![Rat::zero(); d])[rvar] = c.clone();
            }
            rows_m.extend(groups.into_values());
        }
        if rows_m.is_empty() {
            Subspace::full(d)
        } else {
            Subspace::from_span(d, Mat::from_rows(rows_m).nullspace())
        }
    };

    // induced norm and inverse data on the quotient
    let mut w_rows = vec![vec![Rat::zero(); m]; n];
    for (a, c) in comp.iter().enumerate() {
        for i in 0..n {
            w_rows[i][a] = c[i].clone();
        }
    }
    let n_bar = pair.norm.substitute_linear(&w_rows);
    let m_bar = pair.conorm.substitute_linear(&w_rows);
    let g_split: Vec<Poly> = pair
        .g
        .components()
        .iter()
        .map(|c| c.substitute_linear(&w_rows))
        .collect();
    let mut g_bar_comps = Vec::with_capacity(m);
    for a in 0..m {
        let mut acc = Poly::zero(m);
        for i in 0..n {
            if !full_inv[(a, i)].is_zero() {
                acc = acc.add(&g_split[i].scale(&full_inv[(a, i)]));
            }
        }
        g_bar_comps.push(acc);
    }
    let g_bar = QuadraticMap::new(g_bar_comps)?;

    // the quotient is again a pair: Gbar(Fbar(w)) = Nbar(w) w
    let gf: Vec<Poly> = g_bar
        .components()
        .iter()
        .map(|c| c.substitute(f_bar.components()))
        .collect();
    for (a, p) in gf.iter().enumerate() {
        if *p != n_bar.mul_var(a) {
            return Err(CremonaError::NotCremona(
                "quotient maps do not form a pair".into(),
            ));
        }
    }

    Ok(MapSplit {
        radical: rad,
        inverse_radical: rad_g,
        penico_dims,
        f_bar,
        g_bar,
        n_bar,
        m_bar,
        rho,
        mixed,
        nil,
        annihilator,
    })
}

// ---- polar maps, EKP, transporters, lift -------------------------------------

/// Gradient map of a cubic form (components `dN/dx_i`).
pub fn polar_map(norm: &Poly) -> Result<QuadraticMap, CremonaError> {
    if !norm.is_homogeneous(3) || norm.is_zero() {
        return Err(CremonaError::Shape(
            "polar map needs a nonzero cubic form".into(),
        ));
    }
    QuadraticMap::new(norm.gradient())
}

/// Classification of a cubic form by its polar map.
#[derive(Debug)]
pub enum EkpVerdict {
    /// The polar map is quadro-quadric and its associated cubic is the
    /// input itself (up to scale): the input is the norm of a semi-simple
    /// rank-3 algebra, and the multiplicative Legendre transform of the
    /// form is again a polynomial.
    EkpHomaloidal(Box<CremonaPair>),
    /// The polar map is quadro-quadric, but its associated cubic differs
    /// from the input; the Legendre transform is not polynomial.
    HomaloidalNotEkp(Box<CremonaPair>),
    /// The polar map collapses to a linear projectivity.
    Degenerate { factor: Poly, automorphism: Mat },
    /// The polar map is not a quadro-quadric Cremona transformation.
    NotQuadroQuadric { reason: String },
}

/// Classify a cubic form by certifying its polar (gradient) map and
/// comparing the resulting associated cubic with the input.
pub fn ekp_check(cubic: &Poly, config: &Config) -> Result<EkpVerdict, CremonaError> {
    let pm = polar_map(cubic)?;
    Ok(match certify(&pm, config)? {
        CertifyOutcome::Genuine(pair) => {
            if pair.norm.proportional_to(cubic).is_some() {
                EkpVerdict::EkpHomaloidal(pair)
            } else {
                EkpVerdict::HomaloidalNotEkp(pair)
            }
        }
        CertifyOutcome::Fake {
            factor,
            automorphism,
        } => EkpVerdict::Degenerate {
            factor,
            automorphism,
        },
        CertifyOutcome::NotCremona { reason } => EkpVerdict::NotQuadroQuadric { reason },
    })
}

/// Solve `F(theta x) = S F(x)` for the constant matrix `S`: the sharp of a
/// structure-group candidate. `None` when `theta` does not normalise `F`.
pub fn structure_transporter(f: &QuadraticMap, theta: &Mat) -> Option<Mat> {
    let n = f.nvars();
    if theta.rows != n || theta.cols != n {
        return None;
    }
    let ft = f.compose_right(theta).ok()?;
    let m2 = monomials(n, 2);
    let m2idx: HashMap<&Vec<u16>, usize> = m2.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut cols = Mat::zeros(m2.len(), n);
    for (j, c) in f.components().iter().enumerate() {
        for (e, v) in c.terms() {
            cols[(m2idx[e], j)] = v.clone();
        }
    }
    let mut s = Mat::zeros(n, n);
    for i in 0..n {
        let rhs: Vec<Rat> = m2.iter().map(|e| ft.components()[i].coeff(e)).collect();
        let (row, _) = cols.solve_any(&rhs).ok()?;
        for (j, v) in row.into_iter().enumerate() {
            s[(i, j)] = v;
        }
    }
    // solve_any picks some solution; re-check exactly
    for i in 0..n {
        let mut acc = Poly::zero(n);
        for j in 0..n {
            if !s[(i, j)].is_zero() {
                acc = acc.add(&f.components()[j].scale(&s[(i, j)]));
            }
        }
        if acc != ft.components()[i] {
            return None;
        }
    }
    Some(s)
}

/// The involutive lift of a pair to one more variable:
/// `(x, r) -> (r F(x), N(x))`. Composing it with itself multiplies the
/// identity by `N(x)^2 r^2`.
pub fn spampinato_lift(pair: &CremonaPair) -> Vec<Poly> {
    let n = pair.f.nvars();
    let mut out: Vec<Poly> = pair
        .f
        .components()
        .iter()
        .map(|c| c.shift_vars(n + 1, 0).mul_var(n))
        .collect();
    out.push(pair.norm.shift_vars(n + 1, 0));
    out
}

/// Pretty-print a matrix row-major with `p/q` entries (diagnostics).
pub fn mat_to_json(m: &Mat) -> Value {
    Value::Array(
        (0..m.rows)
            .map(|i| {
                Value::Array(
                    (0..m.cols)
                        .map(|j| Value::String(format_rat(&m[(i, j)])))
                        .collect(),
                )
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make_named;
    use crate::cubic::cubic_data;
    use crate::rat::rat_i;
    use crate::structure::{inspect, radical};

    fn poly_terms(n: usize, terms: &[(&[u16], i64)]) -> Poly {
        Poly::from_terms(
            n,
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), rat_i(*c)))
                .collect::<Vec<_>>(),
        )
    }

    fn entry_pair(name: &str, cfg: &Config) -> (Algebra, CubicData, CremonaPair) {
        let e = make_named(name).unwrap();
        let data = e.cubic_data(cfg).unwrap();
        let pair = adjoint_pair(&e.algebra, &data, cfg).unwrap();
        (e.algebra, data, pair)
    }

    #[test]
    fn certify_rank_three_projective_map() {
        let cfg = Config::default();
        // adjoint of the split triple
        let f = QuadraticMap::new(vec![
            poly_terms(3, &[(&[0, 1, 1], 1)]),
            poly_terms(3, &[(&[1, 0, 1], 1)]),
            poly_terms(3, &[(&[1, 1, 0], 1)]),
        ])
        .unwrap();
        match certify(&f, &cfg).unwrap() {
            CertifyOutcome::Genuine(pair) => {
                assert_eq!(pair.g, f, "involutive map");
                assert_eq!(pair.norm, poly_terms(3, &[(&[1, 1, 1], 1)]));
                assert_eq!(pair.conorm, pair.norm);
                assert_eq!(pair.bf, Mat::identity(3));
            }
            other => panic!("expected genuine, got {other:?}"),
        }
    }

    #[test]
    fn certify_rank_one_projective_map() {
        let cfg = Config::default();
        let f = QuadraticMap::new(vec![
            poly_terms(3, &[(&[2, 0, 0], 1)]),
            poly_terms(3, &[(&[1, 1, 0], -1)]),
            poly_terms(3, &[(&[0, 2, 0], 1), (&[1, 0, 1], -1)]),
        ])
        .unwrap();
        match certify(&f, &cfg).unwrap() {
            CertifyOutcome::Genuine(pair) => {
                assert_eq!(pair.g, f, "self-inverse up to the norm");
                assert_eq!(pair.norm, poly_terms(3, &[(&[3, 0, 0], 1)]));
            }
            other => panic!("expected genuine, got {other:?}"),
        }
    }

    #[test]
    fn certify_rank_two_projective_map() {
        let cfg = Config::default();
        let f = QuadraticMap::new(vec![
            poly_terms(3, &[(&[0, 2, 0], 1)]),
            poly_terms(3, &[(&[1, 1, 0], 1)]),
            poly_terms(3, &[(&[1, 0, 1], -1)]),
        ])
        .unwrap();
        match certify(&f, &cfg).unwrap() {
            CertifyOutcome::Genuine(pair) => {
                assert_eq!(pair.g, f);
                assert_eq!(pair.norm, poly_terms(3, &[(&[1, 2, 0], 1)]));
            }
            other => panic!("expected genuine, got {other:?}"),
        }
    }

    #[test]
    fn fake_map_detected() {
        let cfg = Config::default();
        // x1 * identity
        let f = QuadraticMap::new(vec![
            poly_terms(3, &[(&[2, 0, 0], 1)]),
            poly_terms(3, &[(&[1, 1, 0], 1)]),
            poly_terms(3, &[(&[1, 0, 1], 1)]),
        ])
        .unwrap();
        match certify(&f, &cfg).unwrap() {
            CertifyOutcome::Fake {
                factor,
                automorphism,
            } => {
                assert_eq!(factor, poly_terms(3, &[(&[1, 0, 0], 1)]));
                assert_eq!(automorphism, Mat::identity(3));
            }
            other => panic!("expected fake, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_spin_adjoints_are_fake() {
        let cfg = Config::default();
        for name in ["J0(2)", "J1(2)"] {
            let e = make_named(name).unwrap();
            let data = e.cubic_data(&cfg).unwrap();
            let f = QuadraticMap::new(data.adjoint.clone()).unwrap();
            match certify(&f, &cfg).unwrap() {
                CertifyOutcome::Fake {
                    factor,
                    automorphism,
                } => {
                    assert!(linear_divides(&factor, &f.components()[0]), "{name}");
                    assert!(automorphism.inverse().is_ok(), "{name}");
                }
                other => panic!("{name}: expected fake, got {other:?}"),
            }
            // the gradient relation still holds for the degenerate pairs
            let b = bf_solve(&f, &data.norm).unwrap();
            for i in 0..f.nvars() {
                let mut acc = Poly::zero(f.nvars());
                for j in 0..f.nvars() {
                    if !b[(i, j)].is_zero() {
                        acc = acc.add(&f.components()[j].scale(&b[(i, j)]));
                    }
                }
                assert_eq!(acc, data.norm.partial(i), "{name} gradient row {i}");
            }
        }
    }

    #[test]
    fn tangent_quadric_cubic_is_homaloidal_not_ekp() {
        let cfg = Config::default();
        // P = x1 (x2^2 + x3^2 - x1 x4): a smooth quadric times a tangent
        // hyperplane. Its polar map is quadro-quadric, but the associated
        // cubic is x1^3, a different hypersurface - so the Legendre
        // transform of P is not polynomial.
        let p = poly_terms(
            4,
            &[(&[1, 2, 0, 0], 1), (&[1, 0, 2, 0], 1), (&[2, 0, 0, 1], -1)],
        );
        match ekp_check(&p, &cfg).unwrap() {
            EkpVerdict::HomaloidalNotEkp(pair) => {
                assert_eq!(pair.norm, poly_terms(4, &[(&[3, 0, 0, 0], 1)]));
            }
            other => panic!("expected homaloidal-not-EKP, got {other:?}"),
        }
    }

    #[test]
    fn ekp_holds_for_determinantal_norms() {
        let cfg = Config::default();
        let triple = poly_terms(3, &[(&[1, 1, 1], 1)]);
        assert!(matches!(
            ekp_check(&triple, &cfg).unwrap(),
            EkpVerdict::EkpHomaloidal(_)
        ));
        let e = make_named("Sym3").unwrap();
        assert!(matches!(
            ekp_check(&e.closed_norm.unwrap(), &cfg).unwrap(),
            EkpVerdict::EkpHomaloidal(_)
        ));
    }

    #[test]
    fn cone_cubics_have_degenerate_polar_maps() {
        let cfg = Config::default();
        // x1^2 x2 in two variables: the gradient has the common factor x1
        let p = poly_terms(2, &[(&[2, 1], 1)]);
        match ekp_check(&p, &cfg).unwrap() {
            EkpVerdict::Degenerate { factor, .. } => {
                assert_eq!(factor, poly_terms(2, &[(&[1, 0], 1)]));
            }
            other => panic!("expected degenerate, got {other:?}"),
        }
        // x1^3 in three variables: the residual map after the factor is
        // singular, so the polar map is not even birational
        let p = poly_terms(3, &[(&[3, 0, 0], 1)]);
        assert!(matches!(
            ekp_check(&p, &cfg).unwrap(),
            EkpVerdict::NotQuadroQuadric { .. }
        ));
    }

    #[test]
    fn adjoint_pairs_verify_for_catalog() {
        let cfg = Config::default();
        for name in ["CxCxC", "C_eps3", "CxCeps2", "Sym3", "M3", "Cxspin(3)"] {
            let (_, _, pair) = entry_pair(name, &cfg);
            pair.verify(&cfg).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn certified_sym3_matches_adjoint_pair() {
        let cfg = Config::default();
        let (_, data, _) = entry_pair("Sym3", &cfg);
        let f = QuadraticMap::new(data.adjoint.clone()).unwrap();
        match certify(&f, &cfg).unwrap() {
            CertifyOutcome::Genuine(pair) => {
                assert_eq!(pair.g, f, "adjugate is an involution");
                assert_eq!(pair.norm, data.norm, "norm is the determinant");
                assert_eq!(pair.bf, data.trace_form);
            }
            other => panic!("expected genuine, got {other:?}"),
        }
    }

    #[test]
    fn recovery_roundtrip_split_triple() {
        let cfg = Config::default();
        let (alg, data, pair) = entry_pair("CxCxC", &cfg);
        let rec = algebra_from_map(&pair, &alg.unit(), &cfg).unwrap();
        assert_eq!(rec.algebra, alg);
        // the witness carries F back to the recovered adjoint
        let rdata = cubic_data(&rec.algebra, &cfg).unwrap();
        let adj = QuadraticMap::new(rdata.adjoint.clone()).unwrap();
        let lifted = adj.compose_left(&rec.witness).unwrap();
        assert_eq!(lifted, pair.f);
        assert_eq!(rdata.norm, data.norm);
    }

    #[test]
    fn recovery_roundtrip_with_radical() {
        let cfg = Config::default();
        for name in ["C_eps3", "CxCeps2"] {
            let (alg, _, pair) = entry_pair(name, &cfg);
            let rec = algebra_from_map(&pair, &alg.unit(), &cfg).unwrap();
            assert_eq!(rec.algebra, alg, "{name}");
        }
    }

    #[test]
    fn recovery_from_transported_pair() {
        // scramble the pair by a linear map; recovery should still produce
        // an algebra with the same structure profile
        let cfg = Config::default();
        let (alg, _, pair) = entry_pair("C_eps3", &cfg);
        let mut s = SampleStream::new(41);
        let m = s.invertible_matrix(3);
        let moved = pair.transport_left(&m).unwrap();
        moved.verify(&cfg).unwrap();
        let m2 = s.invertible_matrix(3);
        moved.transport_right(&m2).unwrap().verify(&cfg).unwrap();
        let e = find_unit_candidate(&moved, &cfg).expect("some unit works");
        let rec = algebra_from_map(&moved, &e, &cfg).unwrap();
        assert!(rec.algebra.jordan_check(&cfg));
        let base = inspect(&alg, &cfg).unwrap();
        let got = inspect(&rec.algebra, &cfg).unwrap();
        assert_eq!(got, base);
    }

    #[test]
    fn map_penico_matches_table_penico() {
        let cfg = Config::default();
        for name in ["C_eps3", "CxCeps2"] {
            let (alg, data, pair) = entry_pair(name, &cfg);
            let rad = radical(&data);
            let table_dims = crate::structure::penico_profile(&alg, &rad).unwrap();
            assert_eq!(map_penico(&pair).unwrap(), table_dims, "{name}");
        }
    }

    #[test]
    fn map_split_blocks_for_truncated_ring() {
        let cfg = Config::default();
        let (_, _, pair) = entry_pair("C_eps3", &cfg);
        let split = map_ss_part(&pair, &cfg).unwrap();
        assert_eq!(split.radical.dim(), 2);
        assert_eq!(split.inverse_radical.dim(), 2);
        assert_eq!(split.penico_dims, vec![2, 1, 0]);
        // quotient coordinates: w = a; radical: r = (b, c)
        assert_eq!(
            split.f_bar.components(),
            &[poly_terms(1, &[(&[2], 1)])],
            "induced map is squaring"
        );
        assert_eq!(split.n_bar, poly_terms(1, &[(&[3], 1)]));
        // blocks in (w, r1, r2) coordinates
        assert!(split.rho.iter().all(Poly::is_zero));
        assert_eq!(
            split.mixed,
            vec![
                poly_terms(3, &[(&[1, 1, 0], -1)]),
                poly_terms(3, &[(&[1, 0, 1], -1)]),
            ]
        );
        assert_eq!(
            split.nil,
            vec![Poly::zero(3), poly_terms(3, &[(&[0, 2, 0], 1)])]
        );
        assert_eq!(split.annihilator.dim(), 0);
    }

    #[test]
    fn map_split_of_semisimple_is_identity() {
        let cfg = Config::default();
        let (_, data, pair) = entry_pair("Sym3", &cfg);
        let split = map_ss_part(&pair, &cfg).unwrap();
        assert_eq!(split.radical.dim(), 0);
        assert_eq!(split.f_bar.components(), pair.f.components());
        assert_eq!(split.n_bar, data.norm);
    }

    #[test]
    fn transporter_solves_for_sharp() {
        // F = adjoint of the truncated ring; theta lower triangular with
        // m11 = m22^2 / m33 normalises it
        let cfg = Config::default();
        let (_, data, _) = entry_pair("C_eps3", &cfg);
        let f = QuadraticMap::new(data.adjoint.clone()).unwrap();
        let mut s = SampleStream::new(97);
        for _ in 0..5 {
            let m22 = rat_i(s.nonzero_int());
            let m33 = rat_i(s.nonzero_int());
            let m21 = s.rat();
            let m31 = s.rat();
            let m32 = s.rat();
            let mut theta = Mat::zeros(3, 3);
            theta[(0, 0)] = &(&m22 * &m22) / &m33;
            theta[(1, 0)] = m21.clone();
            theta[(1, 1)] = m22.clone();
            theta[(2, 0)] = m31.clone();
            theta[(2, 1)] = m32.clone();
            theta[(2, 2)] = m33.clone();
            let sharp = structure_transporter(&f, &theta).expect("theta normalises F");
            // frozen closed form for the transported matrix
            let mut want = Mat::zeros(3, 3);
            want[(0, 0)] = &(&(&m22 * &m22) * &(&m22 * &m22)) / &(&m33 * &m33);
            want[(1, 0)] = -&(&(&m22 * &m22) * &m21) / &m33;
            want[(1, 1)] = &(&(&m22 * &m22) * &m22) / &m33;
            want[(2, 0)] = &(&(&m21 * &m21) * &m33 - &(&(&m22 * &m22) * &m31)) / &m33;
            want[(2, 1)] = -&(&m22 * &(&(&m21 + &m21) * &m33 - &(&m22 * &m32))) / &m33;
            want[(2, 2)] = &m22 * &m22;
            assert_eq!(sharp, want);
            // membership is genuinely restrictive: breaking the (0,0)
            // constraint loses the property
            let mut bad = theta.clone();
            bad[(0, 0)] += Rat::one();
            assert!(structure_transporter(&f, &bad).is_none());
        }
    }

    #[test]
    fn lift_is_involutive() {
        let cfg = Config::default();
        let (_, _, pair) = entry_pair("CxCxC", &cfg);
        let lift = spampinato_lift(&pair);
        assert_eq!(lift.len(), 4);
        // j(j(x, r)) = N(x)^2 r^2 (x, r)
        let outer: Vec<Poly> = lift.iter().map(|c| c.substitute(&lift)).collect();
        let n4 = pair.norm.shift_vars(4, 0);
        let r = Poly::var(4, 3);
        let factor = n4.mul(&n4).mul(&r).mul(&r);
        for (i, c) in outer.iter().enumerate() {
            assert_eq!(*c, factor.mul(&Poly::var(4, i)), "component {i}");
        }
    }

    #[test]
    fn quadratic_map_json_roundtrip() {
        let cfg = Config::default();
        let (_, data, _) = entry_pair("CxCxC", &cfg);
        let f = QuadraticMap::new(data.adjoint.clone()).unwrap();
        let v = f.to_json();
        let back = QuadraticMap::from_json(&v).unwrap();
        assert_eq!(back, f);
        // malformed inputs are rejected, not panicked on
        assert!(QuadraticMap::from_json(&json!({"n": 3})).is_err());
        assert!(QuadraticMap::from_json(&json!({"n": 0, "components": []})).is_err());
        assert!(QuadraticMap::from_json(&json!({
            "n": 2,
            "components": [Poly::var(2, 0).to_json(), Poly::var(2, 1).to_json()]
        }))
        .is_err(), "linear components rejected");
    }

    #[test]
    fn factor_quadric_cases() {
        // splits: x1 x2; (x1 + x2)^2; rejects: x1^2 + x2^2 (no rational
        // roots), rank-3 forms
        let q = poly_terms(3, &[(&[1, 1, 0], 1)]);
        let (a, b) = factor_quadric(&q).unwrap();
        assert_eq!(a.mul(&b), q);
        let sq = poly_terms(3, &[(&[2, 0, 0], 1), (&[1, 1, 0], 2), (&[0, 2, 0], 1)]);
        let (a, b) = factor_quadric(&sq).unwrap();
        assert_eq!(a.mul(&b), sq);
        let anis = poly_terms(3, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1)]);
        assert!(factor_quadric(&anis).is_none());
        let rank3 = poly_terms(3, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], -1)]);
        assert!(factor_quadric(&rank3).is_none());
    }
}
