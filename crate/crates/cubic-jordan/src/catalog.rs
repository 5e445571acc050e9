//! The catalogue of standard cubic Jordan algebras, constructible by name.
//!
//! Entries come in three families:
//!
//! * products of copies of `Q` and truncated polynomial rings (`C`, `Cn(k)`,
//!   `C_eps3`, `CxCeps2`);
//! * spin factors `Q e + W` with `w w' = -q(w, w') e` (`spin(k)` with the
//!   split hyperbolic form, the degenerate `J0(n)`, `J1(n)` variants with
//!   designated cubic norms, and the rank-3 product `Cxspin(k)`);
//! * hermitian 3x3 matrices over a split composition algebra with the
//!   symmetrised product (`Sym3`, `Herm3O`, `Herm3S`) and their direct
//!   matrix avatars (`M3`, `Alt6`).
//!
//! Every entry records a closed-form norm when one exists (determinant,
//! Pfaffian, the hermitian-determinant expansion, or a designated norm for
//! the rank `< 3` spin entries). For rank-3 entries of moderate dimension
//! the table-driven extraction of [`crate::cubic::cubic_data`] must
//! reproduce the closed form coefficient-for-coefficient; tests rely on that
//! as a two-sided oracle.

use num::{One, Zero};
use thiserror::Error;

use crate::algebra::{Algebra, MAX_DIM};
use crate::comp::CompositionAlgebra;
use crate::config::Config;
use crate::cubic::{cubic_data, CubicData, CubicError};
use crate::linalg::{vec_scale, Mat};
use crate::poly::Poly;
use crate::rat::{rat, rat_i, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalogue name: {0:?}")]
    UnknownName(String),
    #[error("bad parameter in {0:?}: {1}")]
    BadParameter(String, String),
}

/// A named algebra plus frozen expectations about it.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: Algebra,
    /// Closed-form cubic norm, when the entry has one. For rank-3 entries
    /// this equals the extracted generic norm; for rank `< 3` spin entries
    /// it is designated data.
    pub closed_norm: Option<Poly>,
    /// Expected generic rank.
    pub rank: usize,
    /// Expected dimension of the radical.
    pub radical_dim: usize,
}

impl CatalogEntry {
    /// Cubic data for the entry: from the closed norm when present (cheap and
    /// verified), by extraction otherwise.
    pub fn cubic_data(&self, config: &Config) -> Result<CubicData, CubicError> {
        match &self.closed_norm {
            Some(n) => CubicData::from_norm(&self.algebra, n.clone(), config),
            None => cubic_data(&self.algebra, config),
        }
    }
}

// ---- generic constructions ----------------------------------------------

/// Direct product: componentwise operations, basis of `a` first.
pub fn make_product(a: &Algebra, b: &Algebra) -> Algebra {
    let (da, db) = (a.dim(), b.dim());
    let n = da + db;
    let zero = vec![Rat::zero(); n];
    let embed_a = |v: &[Rat]| {
        let mut out = zero.clone();
        out[..da].clone_from_slice(v);
        out
    };
    let embed_b = |v: &[Rat]| {
        let mut out = zero.clone();
        out[da..].clone_from_slice(v);
        out
    };
    let mut table = vec![vec![zero.clone(); n]; n];
    for i in 0..da {
        for j in 0..da {
            table[i][j] = embed_a(a.table_entry(i, j));
        }
    }
    for i in 0..db {
        for j in 0..db {
            table[da + i][da + j] = embed_b(b.table_entry(i, j));
        }
    }
    let mut unit = embed_a(&a.unit());
    unit[da..].clone_from_slice(&b.unit());
    Algebra::new(n, unit, table).expect("product of valid algebras is valid")
}

/// Spin factor on the symmetric Gram matrix `B`: basis `(e, w_1..w_k)`,
/// `w_i w_j = -B[i][j] e`, so `x = l e + w` squares to
/// `(l^2 - q(w)) e + 2 l w` with `q(w) = w^T B w`.
pub fn make_spin_factor(gram: &Mat) -> Algebra {
    assert_eq!(gram.rows, gram.cols, "spin factor needs a square Gram matrix");
    let k = gram.rows;
    for i in 0..k {
        for j in 0..k {
            assert_eq!(gram[(i, j)], gram[(j, i)], "Gram matrix must be symmetric");
        }
    }
    let n = k + 1;
    let mut unit = vec![Rat::zero(); n];
    unit[0] = Rat::one();
    let mut table = vec![vec![vec![Rat::zero(); n]; n]; n];
    for i in 0..n {
        table[0][i][i] = Rat::one();
        table[i][0][i] = Rat::one();
    }
    for i in 1..n {
        for j in 1..n {
            let mut v = vec![Rat::zero(); n];
            let b = &gram[(i - 1, j - 1)];
            if !b.is_zero() {
                v[0] = -b.clone();
            }
            table[i][j] = v;
        }
    }
    Algebra::new(n, unit, table).expect("spin factor table is valid")
}

/// Split hyperbolic Gram matrix on `k` coordinates: consecutive pairs
/// `q = w1 w2 + w3 w4 + ...`, plus a final square when `k` is odd.
pub fn hyperbolic_gram(k: usize) -> Mat {
    let mut g = Mat::zeros(k, k);
    let h = rat(1, 2);
    let mut i = 0;
    while i + 1 < k {
        g[(i, i + 1)] = h.clone();
        g[(i + 1, i)] = h.clone();
        i += 2;
    }
    if k % 2 == 1 {
        g[(k - 1, k - 1)] = Rat::one();
    }
    g
}

// ---- hermitian 3x3 matrices over a composition algebra -------------------

/// Coordinates of `Herm3(A)`: `(r1, r2, r3, x1, x2, x3)` where each `x_i`
/// is a block of `dim A` coordinates and sits in the matrix as
///
/// ```text
///     [ r1        conj(x3)  x2      ]
///     [ x3        r2        conj(x1)]
///     [ conj(x2)  x1        r3      ]
/// ```
fn herm3_embed(a: &CompositionAlgebra, coords: &[Rat]) -> Vec<Vec<Vec<Rat>>> {
    let d = a.dim();
    assert_eq!(coords.len(), 3 + 3 * d);
    let block = |i: usize| coords[3 + i * d..3 + (i + 1) * d].to_vec();
    let (x1, x2, x3) = (block(0), block(1), block(2));
    let scal = |r: &Rat| vec_scale(&a.unit(), r);
    vec![
        vec![scal(&coords[0]), a.conj_apply(&x3), x2.clone()],
        vec![x3, scal(&coords[1]), a.conj_apply(&x1)],
        vec![a.conj_apply(&x2), x1, scal(&coords[2])],
    ]
}

/// Inverse of [`herm3_embed`]; checks that the matrix really is hermitian
/// with scalar diagonal.
fn herm3_extract(a: &CompositionAlgebra, m: &[Vec<Vec<Rat>>]) -> Vec<Rat> {
    let d = a.dim();
    let unit = a.unit();
    let lead = unit.iter().position(|c| !c.is_zero()).unwrap();
    let mut coords = Vec::with_capacity(3 + 3 * d);
    for i in 0..3 {
        let r = &m[i][i][lead] / &unit[lead];
        assert_eq!(
            m[i][i],
            vec_scale(&unit, &r),
            "diagonal entry is not a scalar"
        );
        coords.push(r);
    }
    let pairs = [(2usize, 1usize), (0, 2), (1, 0)];
    for &(lo, hi) in &pairs {
        assert_eq!(
            m[hi][lo],
            a.conj_apply(&m[lo][hi]),
            "matrix is not hermitian"
        );
        coords.extend_from_slice(&m[lo][hi]);
    }
    coords
}

fn herm3_matmul(
    a: &CompositionAlgebra,
    x: &[Vec<Vec<Rat>>],
    y: &[Vec<Vec<Rat>>],
) -> Vec<Vec<Vec<Rat>>> {
    let d = a.dim();
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    let mut acc = vec![Rat::zero(); d];
                    for k in 0..3 {
                        let prod = a.multiply(&x[i][k], &y[k][j]);
                        for t in 0..d {
                            acc[t] += &prod[t];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// The hermitian 3x3 algebra over `A` with product `X o Y = (XY + YX)/2`.
pub fn herm3(a: &CompositionAlgebra) -> Algebra {
    let d = a.dim();
    let n = 3 + 3 * d;
    let half = rat(1, 2);
    let basis = |i: usize| {
        let mut v = vec![Rat::zero(); n];
        v[i] = Rat::one();
        v
    };
    let mut table = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let x = herm3_embed(a, &basis(i));
            let y = herm3_embed(a, &basis(j));
            let xy = herm3_matmul(a, &x, &y);
            let yx = herm3_matmul(a, &y, &x);
            let sym: Vec<Vec<Vec<Rat>>> = (0..3)
                .map(|p| {
                    (0..3)
                        .map(|q| {
                            (0..d)
                                .map(|t| (&xy[p][q][t] + &yx[p][q][t]) * &half)
                                .collect()
                        })
                        .collect()
                })
                .collect();
            let coords = herm3_extract(a, &sym);
            table[i][j] = coords.clone();
            table[j][i] = coords;
        }
    }
    let mut unit = vec![Rat::zero(); n];
    unit[0] = Rat::one();
    unit[1] = Rat::one();
    unit[2] = Rat::one();
    Algebra::new(n, unit, table).expect("hermitian table is valid")
}

/// Closed cubic norm of `Herm3(A)` (the hermitian determinant):
///
/// `N = r1 r2 r3 + t((x2 x1) x3) - r1 n(x1) - r2 n(x2) - r3 n(x3)`.
///
/// The order inside the trilinear trace matches the slot placement of
/// [`herm3_embed`]; it is validated against table-driven extraction over the
/// noncommutative split quaternions in the tests.
pub fn herm3_norm(a: &CompositionAlgebra) -> Poly {
    let d = a.dim();
    let n = 3 + 3 * d;
    let mut p = Poly::zero(n);
    let mut e = vec![0u16; n];
    e[0] = 1;
    e[1] = 1;
    e[2] = 1;
    p.add_term(e, Rat::one());
    // - r_i n(x_i)
    for i in 0..3 {
        let base = 3 + i * d;
        for j in 0..d {
            for k in j..d {
                let g = a.norm_gram_entry(j, k);
                let c = if j == k { g.clone() } else { g + g };
                if c.is_zero() {
                    continue;
                }
                let mut e = vec![0u16; n];
                e[i] = 1;
                e[base + j] += 1;
                e[base + k] += 1;
                p.add_term(e, -c);
            }
        }
    }
    // + t((x2 x1) x3), trilinear over basis triples
    for j in 0..d {
        for k in 0..d {
            let prod = a.multiply(&a.basis_vector(k), &a.basis_vector(j));
            for l in 0..d {
                let c = a.trace_of(&a.multiply(&prod, &a.basis_vector(l)));
                if c.is_zero() {
                    continue;
                }
                let mut e = vec![0u16; n];
                e[3 + j] += 1;
                e[3 + d + k] += 1;
                e[3 + 2 * d + l] += 1;
                p.add_term(e, c);
            }
        }
    }
    p
}

// ---- direct matrix models -------------------------------------------------

/// Full 3x3 matrices with the symmetrised product, coordinates row-major.
pub fn m3_algebra() -> Algebra {
    let n = 9;
    let half = rat(1, 2);
    // E_{ij} E_{kl} = delta_{jk} E_{il}
    let mul = |i: usize, j: usize, k: usize, l: usize| -> Vec<Rat> {
        let mut v = vec![Rat::zero(); n];
        if j == k {
            v[3 * i + l] = Rat::one();
        }
        v
    };
    let mut table = vec![vec![Vec::new(); n]; n];
    for p in 0..n {
        for q in 0..n {
            let (i, j) = (p / 3, p % 3);
            let (k, l) = (q / 3, q % 3);
            let a = mul(i, j, k, l);
            let b = mul(k, l, i, j);
            table[p][q] = (0..n).map(|t| (&a[t] + &b[t]) * &half).collect();
        }
    }
    let mut unit = vec![Rat::zero(); n];
    unit[0] = Rat::one();
    unit[4] = Rat::one();
    unit[8] = Rat::one();
    Algebra::new(n, unit, table).expect("M3 table is valid")
}

/// Determinant of the generic 3x3 matrix, row-major coordinates.
pub fn m3_norm() -> Poly {
    let v = |i: usize, j: usize, k: usize| {
        let mut e = vec![0u16; 9];
        e[i] += 1;
        e[j] += 1;
        e[k] += 1;
        e
    };
    Poly::from_terms(
        9,
        [
            (v(0, 4, 8), rat_i(1)),
            (v(0, 5, 7), rat_i(-1)),
            (v(1, 3, 8), rat_i(-1)),
            (v(1, 5, 6), rat_i(1)),
            (v(2, 3, 7), rat_i(1)),
            (v(2, 4, 6), rat_i(-1)),
        ],
    )
}

/// Index pairs `(i, j)`, `i < j`, of the 15 coordinates of a skew 6x6 matrix.
fn alt6_pairs() -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            out.push((i, j));
        }
    }
    out
}

fn alt6_to_matrix(coords: &[Rat]) -> Vec<Vec<Rat>> {
    let mut m = vec![vec![Rat::zero(); 6]; 6];
    for (idx, &(i, j)) in alt6_pairs().iter().enumerate() {
        m[i][j] = coords[idx].clone();
        m[j][i] = -coords[idx].clone();
    }
    m
}

fn alt6_from_matrix(m: &[Vec<Rat>]) -> Vec<Rat> {
    for i in 0..6 {
        assert!(m[i][i].is_zero(), "matrix is not skew");
        for j in i + 1..6 {
            assert_eq!(m[i][j], -m[j][i].clone(), "matrix is not skew");
        }
    }
    alt6_pairs().iter().map(|&(i, j)| m[i][j].clone()).collect()
}

fn mat6_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    (0..6)
        .map(|i| {
            (0..6)
                .map(|j| {
                    let mut acc = Rat::zero();
                    for k in 0..6 {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            acc += &a[i][k] * &b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// The standard symplectic unit: three diagonal blocks `[[0,1],[-1,0]]`.
fn j3_matrix() -> Vec<Vec<Rat>> {
    let mut m = vec![vec![Rat::zero(); 6]; 6];
    for b in 0..3 {
        m[2 * b][2 * b + 1] = Rat::one();
        m[2 * b + 1][2 * b] = -Rat::one();
    }
    m
}

/// Skew 6x6 matrices with the product `a o b = -(a J b + b J a)/2`, unit `J`
/// (`J` the symplectic unit). Norm is the Pfaffian normalised by
/// `Pf(J) = 1`.
pub fn alt6_algebra() -> Algebra {
    let n = 15;
    let j = j3_matrix();
    let half = rat(1, 2);
    let basis_mat = |idx: usize| {
        let mut coords = vec![Rat::zero(); n];
        coords[idx] = Rat::one();
        alt6_to_matrix(&coords)
    };
    let mut table = vec![vec![Vec::new(); n]; n];
    for p in 0..n {
        for q in 0..=p {
            let a = basis_mat(p);
            let b = basis_mat(q);
            let ajb = mat6_mul(&mat6_mul(&a, &j), &b);
            let bja = mat6_mul(&mat6_mul(&b, &j), &a);
            let sym: Vec<Vec<Rat>> = (0..6)
                .map(|i| {
                    (0..6)
                        .map(|k| -((&ajb[i][k] + &bja[i][k]) * &half))
                        .collect()
                })
                .collect();
            let coords = alt6_from_matrix(&sym);
            table[p][q] = coords.clone();
            table[q][p] = coords;
        }
    }
    let unit = alt6_from_matrix(&j3_matrix());
    Algebra::new(n, unit, table).expect("Alt6 table is valid")
}

/// Pfaffian of the generic skew 6x6 matrix as a polynomial in the 15
/// coordinates, signed so that `Pf(J) = +1`.
pub fn alt6_norm() -> Poly {
    let pairs = alt6_pairs();
    let var_of = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).unwrap();
    // recursive expansion over the current index list:
    // Pf(S) = sum_k (-1)^k a[S0][Sk] Pf(S without {S0, Sk})
    fn pf(indices: &[usize], var_of: &dyn Fn(usize, usize) -> usize) -> Poly {
        let n = 15;
        if indices.is_empty() {
            return Poly::one(n);
        }
        let i0 = indices[0];
        let mut acc = Poly::zero(n);
        for (pos, &k) in indices.iter().enumerate().skip(1) {
            let rest: Vec<usize> = indices
                .iter()
                .copied()
                .filter(|&x| x != i0 && x != k)
                .collect();
            let sub = pf(&rest, var_of);
            let sign = if pos % 2 == 1 { rat_i(1) } else { rat_i(-1) };
            let term = sub.mul_var(var_of(i0, k)).scale(&sign);
            acc = acc.add(&term);
        }
        acc
    }
    pf(&[0, 1, 2, 3, 4, 5], &|i, j| var_of(i, j))
}

// ---- small product entries ------------------------------------------------

/// `Q^k` with componentwise operations.
pub fn split_n(k: usize) -> Algebra {
    let mut table = vec![vec![vec![Rat::zero(); k]; k]; k];
    for i in 0..k {
        table[i][i][i] = Rat::one();
    }
    Algebra::new(k, vec![Rat::one(); k], table).expect("split table is valid")
}

/// `Q[t]/(t^3)`, basis `(1, t, t^2)`.
pub fn truncated_cubic() -> Algebra {
    let n = 3;
    let mut table = vec![vec![vec![Rat::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                table[i][j][i + j] = Rat::one();
            }
        }
    }
    let mut unit = vec![Rat::zero(); n];
    unit[0] = Rat::one();
    Algebra::new(n, unit, table).expect("truncated ring table is valid")
}

/// `Q[t]/(t^2)`, basis `(1, t)`.
pub fn truncated_square() -> Algebra {
    let mut table = vec![vec![vec![Rat::zero(); 2]; 2]; 2];
    table[0][0][0] = Rat::one();
    table[0][1][1] = Rat::one();
    table[1][0][1] = Rat::one();
    let unit = vec![Rat::one(), Rat::zero()];
    Algebra::new(2, unit, table).expect("dual-number table is valid")
}

// ---- named lookup ---------------------------------------------------------

/// Concrete catalogue names, with small parameters instantiated.
pub fn standard_names() -> Vec<String> {
    vec![
        "C".into(),
        "CxCxC".into(),
        "C_eps3".into(),
        "CxCeps2".into(),
        "spin(3)".into(),
        "Cxspin(3)".into(),
        "J0(2)".into(),
        "J1(2)".into(),
        "Sym3".into(),
        "M3".into(),
        "Alt6".into(),
        "Herm3S".into(),
        "Herm3O".into(),
    ]
}

fn parse_param(name: &str, prefix: &str) -> Option<Result<usize, CatalogError>> {
    let rest = name.strip_prefix(prefix)?;
    let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
    match inner.parse::<usize>() {
        Ok(k) if k >= 1 && k + 2 <= MAX_DIM => Some(Ok(k)),
        Ok(k) => Some(Err(CatalogError::BadParameter(
            name.into(),
            format!("parameter {k} out of range"),
        ))),
        Err(_) => Some(Err(CatalogError::BadParameter(
            name.into(),
            "parameter must be a positive integer".into(),
        ))),
    }
}

/// Build a catalogue entry by name. Parametric names: `Cn(k)` (split
/// `Q^k`), `spin(k)`, `Cxspin(k)`, `J0(n)`, `J1(n)`.
pub fn make_named(name: &str) -> Result<CatalogEntry, CatalogError> {
    let entry = |algebra: Algebra, closed_norm: Option<Poly>, rank: usize, radical_dim: usize| {
        Ok(CatalogEntry {
            name: name.to_string(),
            algebra,
            closed_norm,
            rank,
            radical_dim,
        })
    };
    match name {
        "C" => {
            let norm = Poly::from_terms(1, [(vec![3], Rat::one())]);
            entry(split_n(1), Some(norm), 1, 0)
        }
        "CxCxC" => {
            let norm = Poly::from_terms(3, [(vec![1, 1, 1], Rat::one())]);
            entry(split_n(3), Some(norm), 3, 0)
        }
        "C_eps3" => {
            let norm = Poly::from_terms(3, [(vec![3, 0, 0], Rat::one())]);
            entry(truncated_cubic(), Some(norm), 3, 2)
        }
        "CxCeps2" => {
            let alg = make_product(&split_n(1), &truncated_square());
            let norm = Poly::from_terms(3, [(vec![1, 2, 0], Rat::one())]);
            entry(alg, Some(norm), 3, 1)
        }
        "Sym3" => {
            let a = CompositionAlgebra::split_real();
            entry(herm3(&a), Some(herm3_norm(&a)), 3, 0)
        }
        "M3" => entry(m3_algebra(), Some(m3_norm()), 3, 0),
        "Alt6" => entry(alt6_algebra(), Some(alt6_norm()), 3, 0),
        "Herm3O" => {
            let a = CompositionAlgebra::split_octonion();
            entry(herm3(&a), Some(herm3_norm(&a)), 3, 0)
        }
        "Herm3S" => {
            let a = CompositionAlgebra::sextonion();
            entry(herm3(&a), Some(herm3_norm(&a)), 3, 6)
        }
        _ => {
            if let Some(k) = parse_param(name, "Cn") {
                let k = k?;
                let norm = (k == 3).then(|| Poly::from_terms(3, [(vec![1, 1, 1], Rat::one())]));
                return entry(split_n(k), norm, k, 0);
            }
            if let Some(k) = parse_param(name, "spin") {
                let k = k?;
                return entry(make_spin_factor(&hyperbolic_gram(k)), None, 2, 0);
            }
            if let Some(k) = parse_param(name, "Cxspin") {
                let k = k?;
                let alg = make_product(&split_n(1), &make_spin_factor(&hyperbolic_gram(k)));
                // N(c, l, w) = c (l^2 + q(w))
                let n = k + 2;
                let mut norm = Poly::zero(n);
                let mut e = vec![0u16; n];
                e[0] = 1;
                e[1] = 2;
                norm.add_term(e, Rat::one());
                let g = hyperbolic_gram(k);
                for i in 0..k {
                    for j in i..k {
                        let c = if i == j {
                            g[(i, i)].clone()
                        } else {
                            &g[(i, j)] + &g[(i, j)]
                        };
                        if c.is_zero() {
                            continue;
                        }
                        let mut e = vec![0u16; n];
                        e[0] = 1;
                        e[2 + i] += 1;
                        e[2 + j] += 1;
                        norm.add_term(e, c);
                    }
                }
                return entry(alg, Some(norm), 3, 0);
            }
            if let Some(k) = parse_param(name, "J0") {
                let k = k?;
                let alg = make_spin_factor(&Mat::zeros(k, k));
                let mut e = vec![0u16; k + 1];
                e[0] = 3;
                let norm = Poly::from_terms(k + 1, [(e, Rat::one())]);
                return entry(alg, Some(norm), 2, k);
            }
            if let Some(k) = parse_param(name, "J1") {
                let k = k?;
                let mut g = Mat::zeros(k, k);
                g[(0, 0)] = rat_i(-1);
                let alg = make_spin_factor(&g);
                // (l + w1)^2 (l - w1) = l^3 + l^2 w1 - l w1^2 - w1^3
                let n = k + 1;
                let term = |a: u16, b: u16, c: i64| {
                    let mut e = vec![0u16; n];
                    e[0] = a;
                    e[1] = b;
                    (e, rat_i(c))
                };
                let norm = Poly::from_terms(
                    n,
                    [term(3, 0, 1), term(2, 1, 1), term(1, 2, -1), term(0, 3, -1)],
                );
                return entry(alg, Some(norm), 2, k - 1);
            }
            Err(CatalogError::UnknownName(name.into()))
        }
    }
}
