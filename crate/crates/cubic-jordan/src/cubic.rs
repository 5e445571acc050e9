//! Cubic data of a rank-3 algebra: the coefficients of the generic minimal
//! polynomial `x^3 - T(x) x^2 + S(x) x - N(x) e` as exact polynomial forms,
//! together with the adjoint `x -> x^# = x^2 - T(x) x + S(x) e` and the
//! bilinear trace form.
//!
//! Extraction works without any large linear solve: the three coefficient
//! functions are sampled pointwise (a 3-unknown solve per point) on a shifted
//! simplex lattice and reconstructed by finite differences
//! ([`crate::interp::poly_from_lattice`]). A generic shift keeps every sample
//! point off the degeneracy locus `{x : e, x, x^2 dependent}`; a bad shift is
//! detected and retried.
//!
//! For algebras that come with a designated cubic norm (closed forms in high
//! dimension, or rank `< 3` algebras where the generic minimal polynomial
//! does not determine one), [`CubicData::from_norm`] derives the same data
//! from the norm alone: `T = dN_e`, `S(x) = dN_x(e)`.
//!
//! Both paths end in verification: the Cayley–Hamilton identity and the
//! adjoint identity `(x^#)^# = N(x) x` are proved symbolically in low
//! dimension and checked on many sampled points above it.

use std::collections::BTreeMap;
use std::convert::Infallible;

use num::{One, Zero};
use thiserror::Error;

use crate::algebra::Algebra;
use crate::config::Config;
use crate::interp::{lattice_points, lattice_size, poly_from_lattice};
use crate::linalg::{vec_scale, Mat};
use crate::poly::Poly;
use crate::rat::{rat_i, Rat};
use crate::sample::SampleStream;

/// Dimension cap for the fully symbolic Cayley–Hamilton proof.
pub const SYMBOLIC_CH_DIM: usize = 15;
/// Dimension cap for the fully symbolic adjoint-identity proof (quadratics
/// substituted into quadratics grow faster, so the cap is lower).
pub const SYMBOLIC_ADJ_DIM: usize = 9;
/// Sample count for the verification used above the symbolic caps.
pub const VERIFY_SAMPLES: usize = 200;
/// Shift retries before the extraction gives up.
const MAX_SHIFT_ATTEMPTS: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CubicError {
    #[error("algebra has generic rank {0}, expected 3")]
    RankNotThree(usize),
    #[error("no generic shift found; the algebra is not rank 3 over its whole space")]
    Degenerate,
    #[error("cubic-data work estimate {needed} exceeds budget {allowed}")]
    Budget { needed: u64, allowed: u64 },
    #[error("cubic data inconsistent: {0}")]
    Inconsistent(String),
    #[error("norm does not take value 1 at the unit")]
    NormUnit,
    #[error("bad shape: {0}")]
    Shape(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicData {
    /// Linear form `T`.
    pub trace: Poly,
    /// Quadratic form `S`.
    pub sigma: Poly,
    /// Cubic form `N` with `N(e) = 1`.
    pub norm: Poly,
    /// The adjoint `x^#`, one quadratic form per coordinate.
    pub adjoint: Vec<Poly>,
    /// Bilinear trace form `T(x, y) = T(x * y)` on basis pairs.
    pub trace_form: Mat,
}

impl CubicData {
    /// Derive the full cubic data from a designated norm: `T = dN_e`,
    /// `S(x) = dN_x(e)`, adjoint `x^2 - T(x) x + S(x) e`. Verifies the
    /// Cayley–Hamilton and adjoint identities before returning.
    pub fn from_norm(alg: &Algebra, norm: Poly, config: &Config) -> Result<CubicData, CubicError> {
        let data = CubicData::assemble(alg, norm)?;
        data.verify(alg, config)?;
        Ok(data)
    }

    fn assemble(alg: &Algebra, norm: Poly) -> Result<CubicData, CubicError> {
        let n = alg.dim();
        if norm.nvars() != n {
            return Err(CubicError::Shape(format!(
                "norm in {} variables for a dimension-{n} algebra",
                norm.nvars()
            )));
        }
        if norm.is_zero() || !norm.is_homogeneous(3) {
            return Err(CubicError::Inconsistent(
                "norm is not a nonzero cubic form".into(),
            ));
        }
        let e = alg.unit();
        if norm.eval(&e) != Rat::one() {
            return Err(CubicError::NormUnit);
        }
        let grad = norm.gradient();
        // T(x) = dN_e(x); by Euler's identity T(e) = 3 N(e) = 3 automatically.
        let trace = Poly::from_terms(
            n,
            (0..n).map(|i| {
                let mut exp = vec![0u16; n];
                exp[i] = 1;
                (exp, grad[i].eval(&e))
            }),
        );
        // S(x) = dN_x(e)
        let mut sigma = Poly::zero(n);
        for i in 0..n {
            if !e[i].is_zero() {
                sigma = sigma.add(&grad[i].scale(&e[i]));
            }
        }
        let x = alg.generic_element(n, 0);
        let x2 = alg.multiply_poly(&x, &x);
        let adjoint: Vec<Poly> = (0..n)
            .map(|i| {
                x2[i]
                    .sub(&trace.mul(&Poly::var(n, i)))
                    .add(&sigma.scale(&e[i]))
            })
            .collect();
        let mut trace_form = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let v = trace.eval(alg.table_entry(i, j));
                trace_form[(i, j)] = v.clone();
                trace_form[(j, i)] = v;
            }
        }
        Ok(CubicData {
            trace,
            sigma,
            norm,
            adjoint,
            trace_form,
        })
    }

    pub fn trace_of(&self, x: &[Rat]) -> Rat {
        self.trace.eval(x)
    }

    pub fn sigma_of(&self, x: &[Rat]) -> Rat {
        self.sigma.eval(x)
    }

    pub fn norm_of(&self, x: &[Rat]) -> Rat {
        self.norm.eval(x)
    }

    /// Bilinear trace `T(x, y) = T(x * y)`.
    pub fn trace_pair(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..x.len() {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..y.len() {
                if !y[j].is_zero() {
                    acc += &x[i] * &y[j] * &self.trace_form[(i, j)];
                }
            }
        }
        acc
    }

    pub fn adjoint_at(&self, x: &[Rat]) -> Vec<Rat> {
        self.adjoint.iter().map(|p| p.eval(x)).collect()
    }

    /// Symmetric bilinearization of the adjoint:
    /// `x # y = (x+y)^# - x^# - y^#`.
    pub fn sharp(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let sum: Vec<Rat> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        let s = self.adjoint_at(&sum);
        let a = self.adjoint_at(x);
        let b = self.adjoint_at(y);
        (0..x.len()).map(|i| &s[i] - &a[i] - &b[i]).collect()
    }

    /// `x^{-1} = x^# / N(x)` where `N(x) != 0`.
    pub fn inverse(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        let n = self.norm_of(x);
        if n.is_zero() {
            return None;
        }
        Some(vec_scale(&self.adjoint_at(x), &(Rat::one() / n)))
    }

    /// Pointwise Cayley–Hamilton: `x^3 - T(x) x^2 + S(x) x - N(x) e = 0`.
    pub fn cayley_hamilton_at(&self, alg: &Algebra, x: &[Rat]) -> bool {
        let e = alg.unit();
        let x2 = alg.square(x);
        let x3 = alg.multiply(x, &x2);
        let (t, s, nn) = (self.trace_of(x), self.sigma_of(x), self.norm_of(x));
        (0..alg.dim()).all(|i| &x3[i] - &t * &x2[i] + &s * &x[i] - &nn * &e[i] == Rat::zero())
    }

    /// Pointwise adjoint identity: `(x^#)^# = N(x) x`.
    pub fn adjoint_identity_at(&self, x: &[Rat]) -> bool {
        let sharp = self.adjoint_at(x);
        let double = self.adjoint_at(&sharp);
        let n = self.norm_of(x);
        double == vec_scale(x, &n)
    }

    /// Symbolic Cayley–Hamilton over the generic element.
    pub fn cayley_hamilton_symbolic(&self, alg: &Algebra) -> bool {
        let n = alg.dim();
        let x = alg.generic_element(n, 0);
        let x2 = alg.multiply_poly(&x, &x);
        let x3 = alg.multiply_poly(&x, &x2);
        let e = alg.unit();
        (0..n).all(|i| {
            let lhs = x3[i]
                .sub(&self.trace.mul(&x2[i]))
                .add(&self.sigma.mul(&x[i]))
                .sub(&self.norm.scale(&e[i]));
            lhs.is_zero()
        })
    }

    /// Symbolic adjoint identity over the generic element.
    pub fn adjoint_identity_symbolic(&self) -> bool {
        let n = self.adjoint.len();
        (0..n).all(|i| {
            let double = self.adjoint[i].substitute(&self.adjoint);
            double == self.norm.mul(&Poly::var(n, i))
        })
    }

    /// Verify both defining identities, symbolically when affordable and on
    /// [`VERIFY_SAMPLES`] sampled points otherwise.
    pub fn verify(&self, alg: &Algebra, config: &Config) -> Result<(), CubicError> {
        let n = alg.dim();
        let ch_ok = if n <= SYMBOLIC_CH_DIM {
            self.cayley_hamilton_symbolic(alg)
        } else {
            let mut s = SampleStream::new(config.seed ^ 0x4348);
            (0..VERIFY_SAMPLES).all(|_| self.cayley_hamilton_at(alg, &s.vector(n)))
        };
        if !ch_ok {
            return Err(CubicError::Inconsistent(
                "Cayley-Hamilton identity fails".into(),
            ));
        }
        let adj_ok = if n <= SYMBOLIC_ADJ_DIM {
            self.adjoint_identity_symbolic()
        } else {
            let mut s = SampleStream::new(config.seed ^ 0x4144);
            (0..VERIFY_SAMPLES).all(|_| self.adjoint_identity_at(&s.vector(n)))
        };
        if !adj_ok {
            return Err(CubicError::Inconsistent(
                "adjoint identity (x^#)^# = N(x) x fails".into(),
            ));
        }
        Ok(())
    }
}

/// Extract the cubic data of a rank-3 algebra from its multiplication table
/// alone. See the module docs for the method.
pub fn cubic_data(alg: &Algebra, config: &Config) -> Result<CubicData, CubicError> {
    let n = alg.dim();
    let rank = alg.rank(config);
    if rank != 3 {
        return Err(CubicError::RankNotThree(rank));
    }
    let needed = lattice_size(n, 3).saturating_mul((n as u64).pow(3));
    if needed > config.budget.cubic_work {
        return Err(CubicError::Budget {
            needed,
            allowed: config.budget.cubic_work,
        });
    }
    let mut stream = SampleStream::new(config.seed ^ 0x4355_4243);
    let points = lattice_points(n, 3);
    'shift: for attempt in 0..MAX_SHIFT_ATTEMPTS {
        // widen the entry band every retry: lattice offsets reach 3, so a
        // narrow band can make some lattice point collide with the
        // degeneracy locus for every shift (e.g. split algebras need all
        // pairwise coordinate distances > 3)
        let band = 9i64.saturating_mul(1 << (2 * attempt.min(15)));
        let shift = stream.vector_band(n, band);
        let mut values: BTreeMap<Vec<u16>, (Rat, Rat, Rat)> = BTreeMap::new();
        for p in &points {
            let x: Vec<Rat> = shift
                .iter()
                .enumerate()
                .map(|(i, si)| si + rat_i(p[i] as i64))
                .collect();
            match tsn_at(alg, &x) {
                Some(v) => values.insert(p.clone(), v),
                None => continue 'shift, // shift hits the degeneracy locus
            };
        }
        let t_sh = poly_from_lattice(n, 1, |p| {
            Ok::<_, Infallible>(values[p].0.clone())
        })
        .unwrap();
        let s_sh = poly_from_lattice(n, 2, |p| {
            Ok::<_, Infallible>(values[p].1.clone())
        })
        .unwrap();
        let n_sh = poly_from_lattice(n, 3, |p| {
            Ok::<_, Infallible>(values[p].2.clone())
        })
        .unwrap();
        // un-shift: the lattice variable p corresponds to x - shift
        let subs: Vec<Poly> = (0..n)
            .map(|i| Poly::var(n, i).sub(&Poly::constant(n, shift[i].clone())))
            .collect();
        let trace = t_sh.substitute(&subs);
        let sigma = s_sh.substitute(&subs);
        let norm = n_sh.substitute(&subs);
        // the coefficient functions of a rank-3 algebra are homogeneous forms
        if !trace.is_homogeneous(1) || !sigma.is_homogeneous(2) || !norm.is_homogeneous(3) {
            return Err(CubicError::Inconsistent(
                "minimal-polynomial coefficients are not forms of degrees 1, 2, 3".into(),
            ));
        }
        let data = CubicData::assemble(alg, norm)?;
        // cross-check: the norm alone determines T and S
        if data.trace != trace || data.sigma != sigma {
            return Err(CubicError::Inconsistent(
                "extracted trace/sigma disagree with the norm derivatives".into(),
            ));
        }
        data.verify(alg, config)?;
        return Ok(data);
    }
    Err(CubicError::Degenerate)
}

/// Solve `x^3 = T x^2 - S x + N e` for `(T, S, N)` at one point; `None` when
/// `{e, x, x^2}` is linearly dependent there.
fn tsn_at(alg: &Algebra, x: &[Rat]) -> Option<(Rat, Rat, Rat)> {
    let n = alg.dim();
    let e = alg.unit();
    let x2 = alg.square(x);
    let x3 = alg.multiply(x, &x2);
    let mut a = Mat::zeros(n, 3);
    for i in 0..n {
        a[(i, 0)] = x2[i].clone();
        a[(i, 1)] = -x[i].clone();
        a[(i, 2)] = e[i].clone();
    }
    match a.solve_any(&x3) {
        Ok((sol, 0)) => {
            let mut it = sol.into_iter();
            Some((it.next().unwrap(), it.next().unwrap(), it.next().unwrap()))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i;

    fn v(entries: &[i64]) -> Vec<Rat> {
        entries.iter().map(|&x| rat_i(x)).collect()
    }

    /// Q[t]/(t^3): basis (1, t, t^2).
    pub fn truncated_cubic() -> Algebra {
        let z = || v(&[0, 0, 0]);
        Algebra::new(
            3,
            v(&[1, 0, 0]),
            vec![
                vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])],
                vec![v(&[0, 1, 0]), v(&[0, 0, 1]), z()],
                vec![v(&[0, 0, 1]), z(), z()],
            ],
        )
        .unwrap()
    }

    /// Q x Q x Q componentwise.
    pub fn split_triple() -> Algebra {
        let b = |i: usize| {
            let mut x = v(&[0, 0, 0]);
            x[i] = rat_i(1);
            x
        };
        let z = || v(&[0, 0, 0]);
        Algebra::new(
            3,
            v(&[1, 1, 1]),
            vec![
                vec![b(0), z(), z()],
                vec![z(), b(1), z()],
                vec![z(), z(), b(2)],
            ],
        )
        .unwrap()
    }

    fn poly3(terms: &[(&[u16], i64)]) -> Poly {
        Poly::from_terms(3, terms.iter().map(|(e, c)| (e.to_vec(), rat_i(*c))))
    }

    #[test]
    fn truncated_cubic_data_is_exact() {
        let alg = truncated_cubic();
        let data = cubic_data(&alg, &Config::default()).unwrap();
        assert_eq!(data.norm, poly3(&[(&[3, 0, 0], 1)]));
        assert_eq!(data.trace, poly3(&[(&[1, 0, 0], 3)]));
        assert_eq!(data.sigma, poly3(&[(&[2, 0, 0], 3)]));
        // adjoint of a + b t + c t^2 is (a^2, -ab, b^2 - ac)
        assert_eq!(data.adjoint[0], poly3(&[(&[2, 0, 0], 1)]));
        assert_eq!(data.adjoint[1], poly3(&[(&[1, 1, 0], -1)]));
        assert_eq!(data.adjoint[2], poly3(&[(&[0, 2, 0], 1), (&[1, 0, 1], -1)]));
    }

    #[test]
    fn split_triple_data_is_exact() {
        let alg = split_triple();
        let data = cubic_data(&alg, &Config::default()).unwrap();
        assert_eq!(data.norm, poly3(&[(&[1, 1, 1], 1)]));
        assert_eq!(
            data.trace,
            poly3(&[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)])
        );
        assert_eq!(
            data.sigma,
            poly3(&[(&[1, 1, 0], 1), (&[1, 0, 1], 1), (&[0, 1, 1], 1)])
        );
        assert_eq!(data.adjoint[0], poly3(&[(&[0, 1, 1], 1)]));
        assert_eq!(data.adjoint[1], poly3(&[(&[1, 0, 1], 1)]));
        assert_eq!(data.adjoint[2], poly3(&[(&[1, 1, 0], 1)]));
        // trace form of the split triple is the identity
        assert_eq!(data.trace_form, Mat::identity(3));
    }

    #[test]
    fn scalar_identities_hold_pointwise() {
        let alg = truncated_cubic();
        let data = cubic_data(&alg, &Config::default()).unwrap();
        let mut s = SampleStream::new(17);
        for _ in 0..25 {
            let x = s.vector(3);
            let sharp = data.adjoint_at(&x);
            // T(x, x^#) = 3 N(x) and N(x^#) = N(x)^2
            assert_eq!(data.trace_pair(&x, &sharp), rat_i(3) * data.norm_of(&x));
            let nx = data.norm_of(&x);
            assert_eq!(data.norm_of(&sharp), &nx * &nx);
            assert!(data.cayley_hamilton_at(&alg, &x));
            assert!(data.adjoint_identity_at(&x));
            // inverses multiply back to the unit
            if let Some(inv) = data.inverse(&x) {
                assert_eq!(alg.multiply(&x, &inv), alg.unit());
            }
        }
    }

    #[test]
    fn sharp_product_polarizes_adjoint() {
        let alg = split_triple();
        let data = cubic_data(&alg, &Config::default()).unwrap();
        let x = v(&[1, 2, 3]);
        // x # x = 2 x^#
        let xs = data.adjoint_at(&x);
        let twice: Vec<Rat> = xs.iter().map(|a| a + a).collect();
        assert_eq!(data.sharp(&x, &x), twice);
    }

    #[test]
    fn designated_norm_on_null_spin_factor() {
        // spin factor with q = 0 on two generators; rank 2, but the
        // designated norm lambda^3 still carries full cubic data.
        let z = || v(&[0, 0, 0]);
        let alg = Algebra::new(
            3,
            v(&[1, 0, 0]),
            vec![
                vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])],
                vec![v(&[0, 1, 0]), z(), z()],
                vec![v(&[0, 0, 1]), z(), z()],
            ],
        )
        .unwrap();
        assert_eq!(
            cubic_data(&alg, &Config::default()).unwrap_err(),
            CubicError::RankNotThree(2)
        );
        let data =
            CubicData::from_norm(&alg, poly3(&[(&[3, 0, 0], 1)]), &Config::default()).unwrap();
        // adjoint (lambda^2, -lambda w1, -lambda w2)
        assert_eq!(data.adjoint[0], poly3(&[(&[2, 0, 0], 1)]));
        assert_eq!(data.adjoint[1], poly3(&[(&[1, 1, 0], -1)]));
        assert_eq!(data.adjoint[2], poly3(&[(&[1, 0, 1], -1)]));
    }

    #[test]
    fn from_norm_rejects_wrong_norms() {
        let alg = truncated_cubic();
        // violates N(e) = 1
        let bad = poly3(&[(&[3, 0, 0], 2)]);
        assert_eq!(
            CubicData::from_norm(&alg, bad, &Config::default()).unwrap_err(),
            CubicError::NormUnit
        );
        // right value at e, but a wrong norm: fails verification
        let wrong = poly3(&[(&[3, 0, 0], 1), (&[0, 3, 0], 1)]);
        assert!(matches!(
            CubicData::from_norm(&alg, wrong, &Config::default()).unwrap_err(),
            CubicError::Inconsistent(_)
        ));
    }

    #[test]
    fn budget_is_enforced() {
        let alg = truncated_cubic();
        let mut config = Config::default();
        config.budget.cubic_work = 10;
        assert!(matches!(
            cubic_data(&alg, &config).unwrap_err(),
            CubicError::Budget { .. }
        ));
    }

    #[test]
    fn extraction_is_seed_independent() {
        let alg = truncated_cubic();
        let a = cubic_data(&alg, &Config::with_seed(1)).unwrap();
        let b = cubic_data(&alg, &Config::with_seed(99)).unwrap();
        assert_eq!(a, b);
    }
}
