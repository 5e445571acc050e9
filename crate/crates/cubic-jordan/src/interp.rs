//! Exact polynomial reconstruction from point values.
//!
//! Two tools live here:
//!
//! * [`interpolate_form`] fits a homogeneous form of known degree to sampled
//!   values by solving a dense linear system — fine for small systems, and it
//!   reports honestly when the samples do not pin the form down.
//! * [`poly_from_lattice`] reconstructs a polynomial of bounded total degree
//!   from its values on the simplex lattice `{p : |p| <= d}` using Newton
//!   forward differences. No linear solve at all, so it scales to the
//!   dimension-15 cubic norms where a naive Vandermonde system would be
//!   enormous.

use num::{One, Zero};
use thiserror::Error;

use crate::config::Budget;
use crate::linalg::{LinalgError, Mat};
use crate::poly::{monomials, Poly};
use crate::rat::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InterpError {
    #[error("samples do not determine the form (nullity {0})")]
    Underdetermined(usize),
    #[error("no form of the requested degree matches the samples")]
    Inconsistent,
    #[error("solve of {rows}x{cols} exceeds budget of {allowed} cells")]
    Budget {
        rows: usize,
        cols: usize,
        allowed: u64,
    },
}

/// Fit the unique homogeneous form of degree `degree` in `nvars` variables
/// through the given `(point, value)` samples.
pub fn interpolate_form(
    nvars: usize,
    degree: usize,
    samples: &[(Vec<Rat>, Rat)],
    budget: &Budget,
) -> Result<Poly, InterpError> {
    let monos = monomials(nvars, degree);
    let rows = samples.len();
    let cols = monos.len();
    if !budget.check_solve(rows, cols + 1) {
        return Err(InterpError::Budget {
            rows,
            cols: cols + 1,
            allowed: budget.solve_cells,
        });
    }
    let mut a = Mat::zeros(rows, cols);
    let mut b = Vec::with_capacity(rows);
    for (i, (pt, val)) in samples.iter().enumerate() {
        assert_eq!(pt.len(), nvars, "sample point of wrong dimension");
        for (j, e) in monos.iter().enumerate() {
            let mut t = Rat::one();
            for (k, &pow) in e.iter().enumerate() {
                for _ in 0..pow {
                    t *= &pt[k];
                }
            }
            a[(i, j)] = t;
        }
        b.push(val.clone());
    }
    match a.solve_any(&b) {
        Ok((x, 0)) => Ok(Poly::from_terms(
            nvars,
            monos.into_iter().zip(x).filter(|(_, c)| !c.is_zero()),
        )),
        Ok((_, nullity)) => Err(InterpError::Underdetermined(nullity)),
        Err(LinalgError::Inconsistent) => Err(InterpError::Inconsistent),
        Err(e) => unreachable!("solve_any on well-shaped system: {e}"),
    }
}

/// All lattice points `p` with `|p| <= degree` (as exponent vectors), in
/// lexicographic order.
pub fn lattice_points(nvars: usize, degree: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    for d in 0..=degree {
        out.extend(monomials(nvars, d));
    }
    out.sort();
    out
}

/// `C(n + d, d)`, the size of the simplex lattice, as a work estimate.
pub fn lattice_size(nvars: usize, degree: usize) -> u64 {
    let mut acc: u128 = 1;
    for k in 1..=degree as u128 {
        acc = acc * (nvars as u128 + k) / k;
    }
    acc.min(u64::MAX as u128) as u64
}

/// Binomial coefficient `C(a, b)` as a rational.
fn binom(a: u16, b: u16) -> Rat {
    if b > a {
        return Rat::zero();
    }
    let mut acc = Rat::one();
    for j in 0..b {
        acc *= Rat::new((a - j).into(), (j + 1).into());
    }
    acc
}

/// The polynomial `C(x_i, k) = x_i (x_i - 1) ... (x_i - k + 1) / k!`.
fn binom_poly(nvars: usize, i: usize, k: u16) -> Poly {
    let mut acc = Poly::one(nvars);
    let mut kfact = Rat::one();
    for j in 0..k {
        let lin = Poly::var(nvars, i).sub(&Poly::constant(nvars, Rat::from_integer(j.into())));
        acc = acc.mul(&lin);
        kfact *= Rat::from_integer((j + 1).into());
    }
    acc.scale(&(Rat::one() / kfact))
}

/// Reconstruct the polynomial `h` of total degree `<= degree` from its values
/// on the simplex lattice, querying `eval` once per lattice point. Any error
/// from `eval` aborts the reconstruction (callers use this to signal a
/// degenerate sample and retry with a different base point).
///
/// This is the finite Newton series
/// `h(x) = sum_a  (forward difference of h at 0 along a) * prod_i C(x_i, a_i)`,
/// which terminates exactly because `h` is a polynomial of bounded degree.
pub fn poly_from_lattice<E>(
    nvars: usize,
    degree: usize,
    mut eval: impl FnMut(&[u16]) -> Result<Rat, E>,
) -> Result<Poly, E> {
    let points = lattice_points(nvars, degree);
    let mut values = std::collections::BTreeMap::new();
    for p in &points {
        let v = eval(p)?;
        values.insert(p.clone(), v);
    }
    let mut out = Poly::zero(nvars);
    for alpha in &points {
        // forward difference at 0:
        //   fd = sum_{g <= alpha} (-1)^{|alpha - g|} prod_i C(alpha_i, g_i) h(g)
        let support: Vec<usize> = (0..nvars).filter(|&i| alpha[i] > 0).collect();
        let mut fd = Rat::zero();
        let mut gamma = vec![0u16; nvars];
        loop {
            let drop: u16 = support.iter().map(|&i| alpha[i] - gamma[i]).sum();
            let mut w = if drop % 2 == 0 { Rat::one() } else { -Rat::one() };
            for &i in &support {
                w *= binom(alpha[i], gamma[i]);
            }
            fd += w * &values[&gamma];
            // advance gamma through the box 0..=alpha on the support
            let mut k = 0;
            loop {
                if k == support.len() {
                    break;
                }
                let i = support[k];
                if gamma[i] < alpha[i] {
                    gamma[i] += 1;
                    break;
                }
                gamma[i] = 0;
                k += 1;
            }
            if k == support.len() {
                break;
            }
        }
        if fd.is_zero() {
            continue;
        }
        let mut basis = Poly::constant(nvars, fd);
        for &i in &support {
            basis = basis.mul(&binom_poly(nvars, i, alpha[i]));
        }
        out = out.add(&basis);
    }
    Ok(out)
}
