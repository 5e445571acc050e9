//! Exact computational toolkit for rank-3 (cubic) Jordan algebras over the
//! rationals, the quadro-quadric Cremona transformations they induce, and the
//! twisted cubic varieties sitting over them.
//!
//! Everything is carried out in exact rational arithmetic: structure constants,
//! generic minimal polynomials, adjoints, radicals, Penico series, birational
//! certificates and projective incidence checks are all computed and verified
//! coefficient-wise over `Q`, never numerically.
//!
//! The crate is organised in layers:
//!
//! * [`rat`], [`poly`], [`linalg`], [`sample`], [`interp`] — exact scalars,
//!   sparse multivariate polynomials, rational linear algebra, deterministic
//!   sample streams and form interpolation;
//! * [`algebra`], [`cubic`] — commutative algebras by structure constants and
//!   the rank-3 cubic data (trace, sigma, norm, adjoint) extracted from them;
//! * [`comp`], [`catalog`] — split composition algebras and the catalogue of
//!   standard cubic Jordan algebras built from them;
//! * [`structure`] — radicals, Penico series, semi-simple parts and isotopes;
//! * [`cremona`] — certification and structure theory of bidegree (2,2)
//!   birational maps, and the reconstruction of an algebra from such a map;
//! * [`variety`] — twisted cubics over an algebra: points, curves, tangent
//!   quartics and conformal transformations.

pub mod algebra;
pub mod catalog;
pub mod comp;
pub mod config;
pub mod cremona;
pub mod cubic;
pub mod interp;
pub mod linalg;
pub mod poly;
pub mod rat;
pub mod sample;
pub mod structure;
pub mod variety;

pub use config::{Budget, Config};
pub use rat::Rat;
