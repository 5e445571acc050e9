//! Structure theory: radical, Penico series, semi-simple quotient with a
//! subalgebra section, and isotopes.
//!
//! The radical of a cubic algebra is computed two ways and the tests pin
//! them against each other: as the kernel of the generic trace form (needs
//! the multiplication table) and as the kernel of the norm's third-derivative
//! tensor (needs only the norm, which is what the map-side pipeline has).
//!
//! The Penico series refines the radical into a strictly decreasing chain of
//! ideals `R = R[1] > R[2] > ... > 0` with `R[k+1] = U_{R[k]}(J)`, spanned by
//! `U_{r,r'}(b)` over pairs from `R[k]` and basis vectors `b`. Each quotient
//! step is where the section search below makes progress.
//!
//! `decompose` produces the quotient algebra on a greedy coordinate
//! complement of the radical and then looks for a multiplicative section
//! `sigma` of the projection by Penico descent: starting from the linear
//! embedding, each round solves for a correction `tau` into `R[k]` making
//! the multiplicativity defect land one step deeper,
//!
//! ```text
//! sigma(x) tau(y) + tau(x) sigma(y) - tau(x *bar y) = -defect(x, y)  mod R[k+1]
//! ```
//!
//! and finishes with an exact defect-zero check.

use num::Zero;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::config::Config;
use crate::cubic::{cubic_data, CubicData, CubicError};
use crate::linalg::{axpy, dot, vec_is_zero, Mat, Subspace};
use crate::poly::Poly;
use crate::rat::Rat;

#[derive(Debug, Error)]
pub enum StructureError {
    #[error(transparent)]
    Cubic(#[from] CubicError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("element is not invertible (norm vanishes)")]
    NotInvertible,
    #[error("Penico series stalled at dimension {0}")]
    PenicoStalled(usize),
    #[error("section system exceeds the solve budget ({rows} x {cols})")]
    Budget { rows: usize, cols: usize },
}

/// Radical as the kernel of the generic trace form.
pub fn radical(data: &CubicData) -> Subspace {
    let ns = data.trace_form.nullspace();
    Subspace::from_span(data.trace_form.rows, ns)
}

/// Radical as the kernel of `r -> Hess(N)(r)`: the vectors annihilated by
/// the symmetric trilinear form of third partials of the norm. Works from
/// the norm alone.
pub fn norm_radical(norm: &Poly) -> Subspace {
    let n = norm.nvars();
    let mut rows = Vec::new();
    for i in 0..n {
        let pi = norm.partial(i);
        for j in i..n {
            let pij = pi.partial(j);
            let row: Vec<Rat> = (0..n)
                .map(|k| {
                    let mut e = vec![0u16; n];
                    e[k] = 1;
                    pij.coeff(&e)
                })
                .collect();
            if !vec_is_zero(&row) {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Subspace::full(n);
    }
    Subspace::from_span(n, Mat::from_rows(rows).nullspace())
}

/// Is `s` closed under multiplication by the whole algebra?
pub fn is_ideal(alg: &Algebra, s: &Subspace) -> bool {
    s.basis().iter().all(|r| {
        (0..alg.dim()).all(|j| s.contains(&alg.multiply(r, &alg.basis_vector(j))))
    })
}

/// The chain `R[1] = rad, R[k+1] = U_{R[k]}(J)`, returned without the
/// terminal zero. Errors out if a step fails to shrink strictly.
pub fn penico_subspaces(alg: &Algebra, rad: &Subspace) -> Result<Vec<Subspace>, StructureError> {
    let n = alg.dim();
    let mut chain = Vec::new();
    let mut cur = rad.clone();
    while cur.dim() > 0 {
        chain.push(cur.clone());
        let mut span = Vec::new();
        let basis = cur.basis();
        for (i, r) in basis.iter().enumerate() {
            for rp in &basis[i..] {
                for j in 0..n {
                    span.push(alg.u_pair(r, rp, &alg.basis_vector(j)));
                }
            }
        }
        let next = Subspace::from_span(n, span);
        if next.dim() >= cur.dim() {
            return Err(StructureError::PenicoStalled(cur.dim()));
        }
        debug_assert!(cur.contains_subspace(&next));
        cur = next;
    }
    Ok(chain)
}

/// Dimensions along the Penico chain, including the terminal zero:
/// `[dim R[1], dim R[2], ..., 0]`.
pub fn penico_profile(alg: &Algebra, rad: &Subspace) -> Result<Vec<usize>, StructureError> {
    let mut dims: Vec<usize> = penico_subspaces(alg, rad)?
        .iter()
        .map(Subspace::dim)
        .collect();
    dims.push(0);
    Ok(dims)
}

/// Result of splitting an algebra along its radical.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub radical: Subspace,
    /// `[dim R[1], ..., 0]`.
    pub penico_dims: Vec<usize>,
    /// The semi-simple quotient on a coordinate complement of the radical.
    pub quotient: Algebra,
    /// `m x n` projection onto quotient coordinates.
    pub projection: Mat,
    /// `n x m`: columns are the complement basis (the initial linear
    /// section of the projection).
    pub complement: Mat,
    /// Multiplicative section of the projection, when the Penico descent
    /// closes; columns are images of the quotient basis.
    pub section: Option<Mat>,
}

impl Decomposition {
    pub fn project(&self, x: &[Rat]) -> Vec<Rat> {
        self.projection.mul_vec(x)
    }
}

/// Split `alg` along the radical of its cubic data.
pub fn decompose(
    alg: &Algebra,
    data: &CubicData,
    config: &Config,
) -> Result<Decomposition, StructureError> {
    let n = alg.dim();
    let rad = radical(data);
    let penico_dims = penico_profile(alg, &rad)?;
    let chain = penico_subspaces(alg, &rad)?;

    let comp = rad.greedy_complement();
    let m = comp.len();
    // full-basis matrix: complement columns first, then the radical basis
    let mut cols: Vec<Vec<Rat>> = comp.clone();
    cols.extend(rad.basis().iter().cloned());
    let mut full = Mat::zeros(n, n);
    for (j, c) in cols.iter().enumerate() {
        for i in 0..n {
            full[(i, j)] = c[i].clone();
        }
    }
    let full_inv = full.inverse().expect("complement plus radical is a basis");
    let projection = {
        let mut p = Mat::zeros(m, n);
        for i in 0..m {
            for j in 0..n {
                p[(i, j)] = full_inv[(i, j)].clone();
            }
        }
        p
    };
    let complement = {
        let mut c = Mat::zeros(n, m);
        for (j, v) in comp.iter().enumerate() {
            for i in 0..n {
                c[(i, j)] = v[i].clone();
            }
        }
        c
    };

    // structure constants of the quotient
    let mut table = vec![vec![Vec::new(); m]; m];
    for i in 0..m {
        for j in 0..=i {
            let prod = alg.multiply(&comp[i], &comp[j]);
            let t = projection.mul_vec(&prod);
            table[i][j] = t.clone();
            table[j][i] = t;
        }
    }
    let unit = projection.mul_vec(&alg.unit());
    let quotient = Algebra::new(m, unit, table)?;

    let section = find_section(alg, &quotient, &complement, &chain, config)?;

    Ok(Decomposition {
        radical: rad,
        penico_dims,
        quotient,
        projection,
        complement,
        section,
    })
}

/// Multiplicativity defect of a candidate section on a basis pair.
fn defect(alg: &Algebra, quotient: &Algebra, sigma: &Mat, a: usize, b: usize) -> Vec<Rat> {
    let sa = sigma.col(a);
    let sb = sigma.col(b);
    let lhs = alg.multiply(&sa, &sb);
    let mut rhs = vec![Rat::zero(); alg.dim()];
    for (bp, c) in quotient.table_entry(a, b).iter().enumerate() {
        if !c.is_zero() {
            axpy(&mut rhs, c, &sigma.col(bp));
        }
    }
    lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect()
}

/// Penico descent for a multiplicative section of the quotient projection.
fn find_section(
    alg: &Algebra,
    quotient: &Algebra,
    complement: &Mat,
    chain: &[Subspace],
    config: &Config,
) -> Result<Option<Mat>, StructureError> {
    let n = alg.dim();
    let m = quotient.dim();
    let mut sigma = complement.clone();

    for (k, rk) in chain.iter().enumerate() {
        let dk = rk.dim();
        let rk1 = chain
            .get(k + 1)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(n));
        // linear conditions cutting R[k+1] out of R[k]-coordinates
        let ann = if rk1.dim() == 0 {
            Mat::identity(dk)
        } else {
            let mut rows = Vec::new();
            for v in rk1.basis() {
                rows.push(rk.coords_of(v).expect("chain is nested"));
            }
            let u = Mat::from_rows(rows).nullspace();
            if u.is_empty() {
                continue; // R[k+1] = R[k]: nothing to peel (cannot happen, chain strict)
            }
            Mat::from_rows(u)
        };
        let n_ann = ann.rows;

        // sigma(e_a) * r_c in R[k]-coordinates, for every quotient index a
        let mut action = vec![vec![Vec::new(); dk]; m];
        for a in 0..m {
            let sa = sigma.col(a);
            for (c, r) in rk.basis().iter().enumerate() {
                let prod = alg.multiply(&sa, r);
                action[a][c] = rk
                    .coords_of(&prod)
                    .expect("R[k] is an ideal, products stay inside");
            }
        }

        // unknowns: tau coordinates t[c][a], flattened c * m + a
        let unknowns = dk * m;
        let pairs: Vec<(usize, usize)> = (0..m)
            .flat_map(|a| (a..m).map(move |b| (a, b)))
            .collect();
        let rows = pairs.len() * n_ann;
        if !config.budget.check_solve(rows, unknowns) {
            return Err(StructureError::Budget {
                rows,
                cols: unknowns,
            });
        }

        let mut mat = Mat::zeros(rows, unknowns);
        let mut rhs = vec![Rat::zero(); rows];
        for (p, &(a, b)) in pairs.iter().enumerate() {
            let d_ab = defect(alg, quotient, &sigma, a, b);
            let d_coords = match rk.coords_of(&d_ab) {
                Some(c) => c,
                None => return Ok(None), // defect escaped the stage: no section
            };
            let q_ab = quotient.table_entry(a, b);
            for u in 0..n_ann {
                let row = p * n_ann + u;
                let urow = mat_row(&ann, u);
                // sigma(e_a) tau(e_b): coefficient of t[c][b] is <u, action[a][c]>
                for c in 0..dk {
                    let ca = dot(&urow, &action[a][c]);
                    if !ca.is_zero() {
                        mat[(row, c * m + b)] += ca;
                    }
                    let cb = dot(&urow, &action[b][c]);
                    if !cb.is_zero() {
                        mat[(row, c * m + a)] += cb;
                    }
                }
                // -tau(e_a *bar e_b)
                for (bp, q) in q_ab.iter().enumerate() {
                    if q.is_zero() {
                        continue;
                    }
                    for c in 0..dk {
                        let coeff = q * &urow[c];
                        if !coeff.is_zero() {
                            mat[(row, c * m + bp)] -= coeff;
                        }
                    }
                }
                rhs[row] = -dot(&urow, &d_coords);
            }
        }

        let (t, _) = match mat.solve_any(&rhs) {
            Ok(sol) => sol,
            Err(_) => return Ok(None),
        };

        // sigma += tau
        for a in 0..m {
            let mut delta = vec![Rat::zero(); n];
            for (c, r) in rk.basis().iter().enumerate() {
                axpy(&mut delta, &t[c * m + a], r);
            }
            for i in 0..n {
                let v = sigma[(i, a)].clone() + &delta[i];
                sigma[(i, a)] = v;
            }
        }
    }

    // exact multiplicativity check
    for a in 0..m {
        for b in a..m {
            if !vec_is_zero(&defect(alg, quotient, &sigma, a, b)) {
                return Ok(None);
            }
        }
    }
    Ok(Some(sigma))
}

fn mat_row(m: &Mat, i: usize) -> Vec<Rat> {
    (0..m.cols).map(|j| m[(i, j)].clone()).collect()
}

/// Summary of the structure of an algebra, invariant under base change.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inspection {
    pub dim: usize,
    pub rank: usize,
    pub radical_dim: usize,
    pub penico_dims: Vec<usize>,
    pub ss_dim: usize,
    pub ss_rank: usize,
    pub section_found: bool,
}

/// Inspect with explicit cubic data (use for designated norms).
pub fn inspect_with(
    alg: &Algebra,
    data: &CubicData,
    config: &Config,
) -> Result<Inspection, StructureError> {
    let dec = decompose(alg, data, config)?;
    Ok(Inspection {
        dim: alg.dim(),
        rank: alg.rank(config),
        radical_dim: dec.radical.dim(),
        penico_dims: dec.penico_dims.clone(),
        ss_dim: dec.quotient.dim(),
        ss_rank: dec.quotient.rank(config),
        section_found: dec.section.is_some(),
    })
}

/// Inspect a rank-3 algebra, extracting its cubic data from the table.
pub fn inspect(alg: &Algebra, config: &Config) -> Result<Inspection, StructureError> {
    let data = cubic_data(alg, config)?;
    inspect_with(alg, &data, config)
}

/// The isotope at an invertible `u`: same space, product
/// `x *u y = U_{x,y}(u) / 2`, unit `u^{-1}`.
pub fn isotope(alg: &Algebra, data: &CubicData, u: &[Rat]) -> Result<Algebra, StructureError> {
    let n = alg.dim();
    let unit = data.inverse(u).ok_or(StructureError::NotInvertible)?;
    let half = crate::rat::rat(1, 2);
    let mut table = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let v: Vec<Rat> = alg
                .u_pair(&alg.basis_vector(i), &alg.basis_vector(j), u)
                .iter()
                .map(|c| c * &half)
                .collect();
            table[i][j] = v.clone();
            table[j][i] = v;
        }
    }
    Ok(Algebra::new(n, unit, table)?)
}
