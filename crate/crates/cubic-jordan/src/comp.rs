//! Split composition algebras over `Q` (plus the degenerate six-dimensional
//! cousin): the coordinate algebras that hermitian 3x3 matrix constructions
//! are built from.
//!
//! Each algebra carries a conjugation `x -> xbar` and a multiplicative
//! quadratic norm `n` with `x * xbar = n(x) * 1`. The five constructions are
//!
//! * `Q` itself,
//! * `Q x Q` with swapped-coordinate conjugation and `n(x) = x1 x2`,
//! * 2x2 matrices with adjugate conjugation and `n = det`,
//! * Zorn vector matrices (split octonions) with `n(a, v; w, b) = ab - v.w`,
//! * the sextonions `(M, u)` in `M2 + Q^2` — `n(M, u) = det M` is degenerate
//!   there, which is what makes the hermitian algebra over them non
//!   semi-simple.
//!
//! Constructors validate the structural identities (two-sided unit,
//! conjugation an involutive anti-automorphism, `x xbar = n(x) 1` through the
//! bilinear polarization) on the spot, so a successfully built value is
//! trustworthy. Norm multiplicativity, a degree-4 identity, is covered by
//! tests.

use num::Zero;

use crate::linalg::{vec_add, vec_is_zero, vec_scale, Mat};
use crate::rat::{rat, rat_i, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionAlgebra {
    pub name: String,
    dim: usize,
    unit: Vec<Rat>,
    /// Full table: `table[i][j] = b_i * b_j` (not commutative in general).
    table: Vec<Vec<Vec<Rat>>>,
    conj: Mat,
    /// Gram matrix of the norm: `n(x) = x^T G x`, `G` symmetric.
    norm_gram: Mat,
}

impl CompositionAlgebra {
    fn build(
        name: &str,
        unit: Vec<Rat>,
        conj: Mat,
        norm_gram: Mat,
        mul: impl Fn(&[Rat], &[Rat]) -> Vec<Rat>,
    ) -> CompositionAlgebra {
        let dim = unit.len();
        let basis = |i: usize| {
            let mut v = vec![Rat::zero(); dim];
            v[i] = rat_i(1);
            v
        };
        let table: Vec<Vec<Vec<Rat>>> = (0..dim)
            .map(|i| (0..dim).map(|j| mul(&basis(i), &basis(j))).collect())
            .collect();
        let a = CompositionAlgebra {
            name: name.to_string(),
            dim,
            unit,
            table,
            conj,
            norm_gram,
        };
        a.validate();
        a
    }

    fn validate(&self) {
        let n = self.dim;
        assert_eq!(self.conj.rows, n);
        assert_eq!(self.norm_gram.rows, n);
        for i in 0..n {
            for j in 0..n {
                assert_eq!(
                    self.norm_gram[(i, j)],
                    self.norm_gram[(j, i)],
                    "{}: norm gram not symmetric",
                    self.name
                );
            }
        }
        let basis = |i: usize| {
            let mut v = vec![Rat::zero(); n];
            v[i] = rat_i(1);
            v
        };
        for i in 0..n {
            let b = basis(i);
            assert_eq!(self.multiply(&self.unit, &b), b, "{}: left unit", self.name);
            assert_eq!(self.multiply(&b, &self.unit), b, "{}: right unit", self.name);
            assert_eq!(
                self.conj_apply(&self.conj_apply(&b)),
                b,
                "{}: conjugation is not an involution",
                self.name
            );
        }
        for i in 0..n {
            for j in 0..n {
                let (bi, bj) = (basis(i), basis(j));
                // anti-automorphism on basis pairs extends bilinearly
                assert_eq!(
                    self.conj_apply(&self.multiply(&bi, &bj)),
                    self.multiply(&self.conj_apply(&bj), &self.conj_apply(&bi)),
                    "{}: conjugation is not an anti-automorphism",
                    self.name
                );
                // polarized form of x xbar = n(x) 1
                let lhs = vec_add(
                    &self.multiply(&bi, &self.conj_apply(&bj)),
                    &self.multiply(&bj, &self.conj_apply(&bi)),
                );
                let rhs = vec_scale(&self.unit, &self.norm_bil(&bi, &bj));
                assert_eq!(lhs, rhs, "{}: x xbar != n(x) 1", self.name);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> Vec<Rat> {
        self.unit.clone()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim];
        v[i] = rat_i(1);
        v
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
                crate::linalg::axpy(&mut out, &c, &self.table[i][j]);
            }
        }
        out
    }

    pub fn conj_apply(&self, x: &[Rat]) -> Vec<Rat> {
        self.conj.mul_vec(x)
    }

    pub fn norm_of(&self, x: &[Rat]) -> Rat {
        let gx = self.norm_gram.mul_vec(x);
        crate::linalg::dot(x, &gx)
    }

    /// Entry of the symmetric Gram matrix of the norm.
    pub fn norm_gram_entry(&self, i: usize, j: usize) -> &Rat {
        &self.norm_gram[(i, j)]
    }

    /// Polarized norm `n(x, y) = n(x + y) - n(x) - n(y) = 2 x^T G y`.
    pub fn norm_bil(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let gy = self.norm_gram.mul_vec(y);
        let d = crate::linalg::dot(x, &gy);
        &d + &d
    }

    /// Scalar trace: `x + xbar = t(x) 1`; equals `n(x, 1)`.
    pub fn trace_of(&self, x: &[Rat]) -> Rat {
        self.norm_bil(x, &self.unit)
    }

    // ---- the five constructions -----------------------------------------

    /// `Q` itself.
    pub fn split_real() -> CompositionAlgebra {
        CompositionAlgebra::build(
            "Q",
            vec![rat_i(1)],
            Mat::identity(1),
            Mat::from_rows(vec![vec![rat_i(1)]]),
            |x, y| vec![&x[0] * &y[0]],
        )
    }

    /// `Q x Q`, conjugation swaps the coordinates, `n(x) = x1 x2`.
    pub fn split_complex() -> CompositionAlgebra {
        let conj = Mat::from_rows(vec![vec![rat_i(0), rat_i(1)], vec![rat_i(1), rat_i(0)]]);
        let gram = Mat::from_rows(vec![
            vec![rat_i(0), rat(1, 2)],
            vec![rat(1, 2), rat_i(0)],
        ]);
        CompositionAlgebra::build(
            "QxQ",
            vec![rat_i(1), rat_i(1)],
            conj,
            gram,
            |x, y| vec![&x[0] * &y[0], &x[1] * &y[1]],
        )
    }

    /// 2x2 matrices over `Q`, basis `(E11, E12, E21, E22)`, conjugation is
    /// the adjugate, `n = det`.
    pub fn split_quaternion() -> CompositionAlgebra {
        let z = rat_i(0);
        let o = rat_i(1);
        let conj = Mat::from_rows(vec![
            vec![z.clone(), z.clone(), z.clone(), o.clone()],
            vec![z.clone(), -o.clone(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), -o.clone(), z.clone()],
            vec![o.clone(), z.clone(), z.clone(), z.clone()],
        ]);
        let h = rat(1, 2);
        let mut gram = Mat::zeros(4, 4);
        gram[(0, 3)] = h.clone();
        gram[(3, 0)] = h.clone();
        gram[(1, 2)] = -h.clone();
        gram[(2, 1)] = -h;
        CompositionAlgebra::build(
            "M2(Q)",
            vec![rat_i(1), rat_i(0), rat_i(0), rat_i(1)],
            conj,
            gram,
            |x, y| mat2_mul(x, y),
        )
    }

    /// Zorn vector matrices `(a, v; w, b)` with `v, w` in `Q^3`:
    /// the split octonions. Coordinates `(a, v1, v2, v3, w1, w2, w3, b)`.
    pub fn split_octonion() -> CompositionAlgebra {
        let mut conj = Mat::zeros(8, 8);
        conj[(0, 7)] = rat_i(1);
        conj[(7, 0)] = rat_i(1);
        for i in 1..7 {
            conj[(i, i)] = rat_i(-1);
        }
        let h = rat(1, 2);
        let mut gram = Mat::zeros(8, 8);
        gram[(0, 7)] = h.clone();
        gram[(7, 0)] = h.clone();
        for i in 1..4 {
            gram[(i, i + 3)] = -h.clone();
            gram[(i + 3, i)] = -h.clone();
        }
        CompositionAlgebra::build(
            "Zorn(Q)",
            {
                let mut u = vec![rat_i(0); 8];
                u[0] = rat_i(1);
                u[7] = rat_i(1);
                u
            },
            conj,
            gram,
            |x, y| {
                let (a1, v1, w1, b1) = zorn_split(x);
                let (a2, v2, w2, b2) = zorn_split(y);
                let a = &a1 * &a2 + dot3(&v1, &w2);
                let v = add3(
                    &add3(&scale3(&v2, &a1), &scale3(&v1, &b2)),
                    &cross3(&w1, &w2),
                );
                let w = sub3(
                    &add3(&scale3(&w1, &a2), &scale3(&w2, &b1)),
                    &cross3(&v1, &v2),
                );
                let b = &b1 * &b2 + dot3(&w1, &v2);
                zorn_join(a, v, w, b)
            },
        )
    }

    /// The sextonions `(M, u)` with `M` a 2x2 matrix and `u` a column:
    /// `(M, u)(N, v) = (MN, Mbar v + N u)`, conjugation `(Mbar, -u)`,
    /// `n(M, u) = det M` (degenerate: the `u` part is the radical of `n`).
    /// Coordinates `(E11, E12, E21, E22, u1, u2)`.
    pub fn sextonion() -> CompositionAlgebra {
        let quat = CompositionAlgebra::split_quaternion();
        let mut conj = Mat::zeros(6, 6);
        for i in 0..4 {
            for j in 0..4 {
                conj[(i, j)] = quat.conj[(i, j)].clone();
            }
        }
        conj[(4, 4)] = rat_i(-1);
        conj[(5, 5)] = rat_i(-1);
        let mut gram = Mat::zeros(6, 6);
        for i in 0..4 {
            for j in 0..4 {
                gram[(i, j)] = quat.norm_gram[(i, j)].clone();
            }
        }
        let mut unit = vec![rat_i(0); 6];
        unit[0] = rat_i(1);
        unit[3] = rat_i(1);
        CompositionAlgebra::build("sextonion", unit, conj, gram, |x, y| {
            let m1 = &x[0..4];
            let u1 = &x[4..6];
            let m2 = &y[0..4];
            let u2 = &y[4..6];
            let mm = mat2_mul(m1, m2);
            // Mbar v + N u
            let m1bar = mat2_adjugate(m1);
            let p = mat2_apply(&m1bar, u2);
            let q = mat2_apply(m2, u1);
            vec![
                mm[0].clone(),
                mm[1].clone(),
                mm[2].clone(),
                mm[3].clone(),
                &p[0] + &q[0],
                &p[1] + &q[1],
            ]
        })
    }
}

/// 2x2 matrix product in `(E11, E12, E21, E22)` coordinates.
fn mat2_mul(x: &[Rat], y: &[Rat]) -> Vec<Rat> {
    vec![
        &x[0] * &y[0] + &x[1] * &y[2],
        &x[0] * &y[1] + &x[1] * &y[3],
        &x[2] * &y[0] + &x[3] * &y[2],
        &x[2] * &y[1] + &x[3] * &y[3],
    ]
}

fn mat2_adjugate(x: &[Rat]) -> Vec<Rat> {
    vec![x[3].clone(), -x[1].clone(), -x[2].clone(), x[0].clone()]
}

fn mat2_apply(m: &[Rat], u: &[Rat]) -> Vec<Rat> {
    vec![&m[0] * &u[0] + &m[1] * &u[1], &m[2] * &u[0] + &m[3] * &u[1]]
}

fn zorn_split(x: &[Rat]) -> (Rat, [Rat; 3], [Rat; 3], Rat) {
    (
        x[0].clone(),
        [x[1].clone(), x[2].clone(), x[3].clone()],
        [x[4].clone(), x[5].clone(), x[6].clone()],
        x[7].clone(),
    )
}

fn zorn_join(a: Rat, v: [Rat; 3], w: [Rat; 3], b: Rat) -> Vec<Rat> {
    vec![
        a,
        v[0].clone(),
        v[1].clone(),
        v[2].clone(),
        w[0].clone(),
        w[1].clone(),
        w[2].clone(),
        b,
    ]
}

fn dot3(u: &[Rat; 3], v: &[Rat; 3]) -> Rat {
    &u[0] * &v[0] + &u[1] * &v[1] + &u[2] * &v[2]
}

fn cross3(u: &[Rat; 3], v: &[Rat; 3]) -> [Rat; 3] {
    [
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

fn add3(u: &[Rat; 3], v: &[Rat; 3]) -> [Rat; 3] {
    [&u[0] + &v[0], &u[1] + &v[1], &u[2] + &v[2]]
}

fn sub3(u: &[Rat; 3], v: &[Rat; 3]) -> [Rat; 3] {
    [&u[0] - &v[0], &u[1] - &v[1], &u[2] - &v[2]]
}

fn scale3(u: &[Rat; 3], s: &Rat) -> [Rat; 3] {
    [&u[0] * s, &u[1] * s, &u[2] * s]
}

/// Is the element in the radical of the polarized norm? (Nonzero only for
/// the sextonions, whose norm is degenerate.)
pub fn in_norm_radical(a: &CompositionAlgebra, x: &[Rat]) -> bool {
    vec_is_zero(&a.norm_gram.mul_vec(x))
}
