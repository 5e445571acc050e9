//! Acceptance suite: the end-to-end exactness guarantees of the toolkit.
//!
//! One test per guarantee. Every assertion is exact rational equality —
//! there are no tolerances anywhere — and each test finishes by printing a
//! single `PASS` line with the counts it actually verified (visible under
//! `--nocapture`). Sampled checks draw from fixed-seed streams, so every
//! run verifies the identical set of points.

use std::process::{Command, Output};
use std::time::{Duration, Instant};

use num::{One, Zero};
use serde_json::Value;

use cubic_jordan::catalog::{make_named, standard_names, CatalogEntry};
use cubic_jordan::comp::CompositionAlgebra;
use cubic_jordan::cremona::{
    adjoint_pair, algebra_from_map, bf_solve, certify, ekp_check, map_penico,
    structure_transporter, CertifyOutcome, EkpVerdict, QuadraticMap,
};
use cubic_jordan::cubic::{cubic_data, CubicData};
use cubic_jordan::linalg::{Mat, Subspace};
use cubic_jordan::poly::Poly;
use cubic_jordan::rat::{rat, rat_i, Rat};
use cubic_jordan::sample::SampleStream;
use cubic_jordan::structure::{decompose, inspect_with, isotope, penico_profile, radical};
use cubic_jordan::variety::{cubic_through, descended_cubic, mu, quartic_vertex, tangent_quartic};
use cubic_jordan::Config;

// ---- shared helpers --------------------------------------------------------

fn config() -> Config {
    Config::default()
}

fn named(name: &str) -> CatalogEntry {
    make_named(name).expect("catalog name")
}

/// Every catalog entry exposing rank-3 cubic data, paired with that data.
/// This is the whole catalog except the bare spin factors, which have no
/// designated norm and generic minimal degree 2.
fn cubic_entries(cfg: &Config) -> Vec<(CatalogEntry, CubicData)> {
    standard_names()
        .iter()
        .filter_map(|name| {
            let e = named(name);
            e.cubic_data(cfg).ok().map(|d| (e, d))
        })
        .collect()
}

fn vadd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `(exponents, coefficient)` for `from_terms`: the listed variables raised
/// to the listed powers, everything else zero.
fn term(nvars: usize, pows: &[(usize, u16)], num: i64) -> (Vec<u16>, Rat) {
    let mut e = vec![0u16; nvars];
    for &(i, p) in pows {
        e[i] += p;
    }
    (e, rat_i(num))
}

fn det3(m: &[Vec<Poly>]) -> Poly {
    let minor = |a: usize, b: usize, c: usize, d: usize| m[a][b].mul(&m[c][d]);
    let t0 = m[0][0].mul(&minor(1, 1, 2, 2).sub(&minor(1, 2, 2, 1)));
    let t1 = m[0][1].mul(&minor(1, 0, 2, 2).sub(&minor(1, 2, 2, 0)));
    let t2 = m[0][2].mul(&minor(1, 0, 2, 1).sub(&minor(1, 1, 2, 0)));
    t0.sub(&t1).add(&t2)
}

/// Pfaffian by expansion along the first active row.
fn pfaffian(m: &[Vec<Poly>], active: &[usize]) -> Poly {
    let nvars = m[0][0].nvars();
    if active.is_empty() {
        return Poly::from_terms(nvars, [(vec![0u16; nvars], Rat::one())]);
    }
    let i0 = active[0];
    let mut acc = Poly::zero(nvars);
    for (k, &j) in active.iter().enumerate().skip(1) {
        let rest: Vec<usize> = active
            .iter()
            .enumerate()
            .filter(|&(t, _)| t != 0 && t != k)
            .map(|(_, &v)| v)
            .collect();
        let piece = m[i0][j].mul(&pfaffian(m, &rest));
        acc = if k % 2 == 1 {
            acc.add(&piece)
        } else {
            acc.sub(&piece)
        };
    }
    acc
}

/// Determinant of the generic symmetric 3x3 matrix in the hermitian
/// coordinate order `(r1, r2, r3, x1, x2, x3)` (x_i opposite r_i).
fn sym3_det() -> Poly {
    let v = |i: usize| Poly::var(6, i);
    let m = vec![
        vec![v(0), v(5), v(4)],
        vec![v(5), v(1), v(3)],
        vec![v(4), v(3), v(2)],
    ];
    det3(&m)
}

// A hermitian 3x3 matrix over a composition algebra, stored entrywise, and
// the determinant computed from traces of its Jordan powers via Newton's
// identities. This route never touches the closed norm formula or the
// structure-constant table, so it is an independent oracle for both.

type HermMat = Vec<Vec<Vec<Rat>>>;

fn hermitian_embed(a: &CompositionAlgebra, v: &[Rat]) -> HermMat {
    let d = a.dim();
    let block = |i: usize| v[3 + i * d..3 + (i + 1) * d].to_vec();
    let (x1, x2, x3) = (block(0), block(1), block(2));
    let scal = |r: &Rat| -> Vec<Rat> { a.unit().iter().map(|c| c * r).collect() };
    vec![
        vec![scal(&v[0]), a.conj_apply(&x3), x2.clone()],
        vec![x3, scal(&v[1]), a.conj_apply(&x1)],
        vec![a.conj_apply(&x2), x1, scal(&v[2])],
    ]
}

fn hermitian_jordan_mul(a: &CompositionAlgebra, x: &HermMat, y: &HermMat) -> HermMat {
    let d = a.dim();
    let half = rat(1, 2);
    let mut out = vec![vec![vec![Rat::zero(); d]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let p = a.multiply(&x[i][k], &y[k][j]);
                let q = a.multiply(&y[i][k], &x[k][j]);
                for t in 0..d {
                    out[i][j][t] += &(&p[t] + &q[t]) * &half;
                }
            }
        }
    }
    out
}

fn hermitian_trace(a: &CompositionAlgebra, x: &HermMat) -> Rat {
    // diagonal entries of a hermitian matrix are scalar multiples of the unit
    let unit = a.unit();
    let lead = unit.iter().position(|c| !c.is_zero()).unwrap();
    let mut t = Rat::zero();
    for i in 0..3 {
        t += &x[i][i][lead] / &unit[lead];
    }
    t
}

fn newton_determinant(a: &CompositionAlgebra, v: &[Rat]) -> Rat {
    let x = hermitian_embed(a, v);
    let x2 = hermitian_jordan_mul(a, &x, &x);
    let x3 = hermitian_jordan_mul(a, &x2, &x);
    let p1 = hermitian_trace(a, &x);
    let p2 = hermitian_trace(a, &x2);
    let p3 = hermitian_trace(a, &x3);
    let e2 = &(&(&p1 * &p1) - &p2) / &rat_i(2);
    &(&(&p3 - &(&p1 * &p2)) + &(&e2 * &p1)) / &rat_i(3)
}

// ---- the `cj` binary, for the round-trip command ---------------------------

fn cj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cj"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_report(args: &[&str]) -> (Value, Output) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = cj(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    });
    (v, out)
}

// ---- criterion 01 ----------------------------------------------------------

/// The five defining identities of the degree-3 data — the generic cubic
/// equation, sharp of sharp, the U-operator expansion, the norm of the
/// adjoint and the trace pairing against the adjoint — hold exactly at
/// fixed-seed sample points on every catalog entry with cubic data: 100
/// points per entry, 200 on the 27-dimensional one.
#[test]
fn c01_generic_cubic_identities_hold_across_catalog() {
    let cfg = config();
    let t0 = Instant::now();
    let mut entries = 0usize;
    let mut points = 0usize;
    for (e, data) in cubic_entries(&cfg) {
        let alg = &e.algebra;
        let n = alg.dim();
        let pts = if n >= 27 { 200 } else { 100 };
        let mut s = SampleStream::new(0x4143_0001 ^ n as u64);
        for _ in 0..pts {
            let x = s.vector(n);
            let y = s.vector(n);
            assert!(
                data.cayley_hamilton_at(alg, &x),
                "{}: generic cubic equation fails",
                e.name
            );
            let xs = data.adjoint_at(&x);
            let nx = data.norm_of(&x);
            let xss = data.adjoint_at(&xs);
            for i in 0..n {
                assert_eq!(xss[i], &nx * &x[i], "{}: adjoint of adjoint", e.name);
            }
            let u = alg.u_op(&x, &y);
            let t = data.trace_pair(&x, &y);
            let sh = data.sharp(&xs, &y);
            for i in 0..n {
                assert_eq!(u[i], &(&t * &x[i]) - &sh[i], "{}: U-operator", e.name);
            }
            assert_eq!(data.norm_of(&xs), &nx * &nx, "{}: norm of adjoint", e.name);
            assert_eq!(
                data.trace_pair(&x, &xs),
                &rat_i(3) * &nx,
                "{}: trace against adjoint",
                e.name
            );
        }
        entries += 1;
        points += pts;
    }
    let elapsed = t0.elapsed();
    assert!(entries >= 11, "catalog unexpectedly small: {entries} entries");
    assert!(
        elapsed < Duration::from_secs(120),
        "identity suite took {elapsed:?}, budget is two minutes"
    );
    println!(
        "acceptance criterion 01: PASS — five degree-3 identities exact at {points} points \
         across {entries} entries in {elapsed:.2?}"
    );
}

// ---- criterion 02 ----------------------------------------------------------

/// The three 3-dimensional algebras produce, coefficient for coefficient,
/// the classical plane Cremona representatives: adjoint and norm alike,
/// both from the catalog data and from raw table extraction.
#[test]
fn c02_dimension_three_adjoints_and_norms_match_printed_tables() {
    let cfg = config();
    let p = |terms: &[(&[(usize, u16)], i64)]| {
        Poly::from_terms(3, terms.iter().map(|&(pows, c)| term(3, pows, c)))
    };
    let table: Vec<(&str, Vec<Poly>, Poly)> = vec![
        (
            "C_eps3",
            vec![
                p(&[(&[(0, 2)], 1)]),
                p(&[(&[(0, 1), (1, 1)], -1)]),
                p(&[(&[(1, 2)], 1), (&[(0, 1), (2, 1)], -1)]),
            ],
            p(&[(&[(0, 3)], 1)]),
        ),
        (
            "CxCeps2",
            vec![
                p(&[(&[(1, 2)], 1)]),
                p(&[(&[(0, 1), (1, 1)], 1)]),
                p(&[(&[(0, 1), (2, 1)], -1)]),
            ],
            p(&[(&[(0, 1), (1, 2)], 1)]),
        ),
        (
            "CxCxC",
            vec![
                p(&[(&[(1, 1), (2, 1)], 1)]),
                p(&[(&[(0, 1), (2, 1)], 1)]),
                p(&[(&[(0, 1), (1, 1)], 1)]),
            ],
            p(&[(&[(0, 1), (1, 1), (2, 1)], 1)]),
        ),
    ];
    for (name, adjoint, norm) in &table {
        let e = named(name);
        let data = e.cubic_data(&cfg).unwrap();
        assert_eq!(&data.adjoint, adjoint, "{name}: catalog adjoint differs");
        assert_eq!(&data.norm, norm, "{name}: catalog norm differs");
        let extracted = cubic_data(&e.algebra, &cfg).unwrap();
        assert_eq!(&extracted.adjoint, adjoint, "{name}: extracted adjoint differs");
        assert_eq!(&extracted.norm, norm, "{name}: extracted norm differs");
    }
    println!(
        "acceptance criterion 02: PASS — all three plane representatives reproduced \
         coefficient-exact, from the catalog and from extraction"
    );
}

// ---- criterion 03 ----------------------------------------------------------

/// Interpolated norms of the matrix models agree coefficient-exact with
/// determinants and the Pfaffian computed here from scratch; the spin-factor
/// product norm is the stated quadric bundle; the 27-dimensional hermitian
/// norm matches a Newton-identity determinant oracle at 200 sampled points.
#[test]
fn c03_matrix_model_norms_are_det_and_pfaffian() {
    let cfg = config();

    let sym = named("Sym3");
    let det_sym = sym3_det();
    assert_eq!(
        cubic_data(&sym.algebra, &cfg).unwrap().norm,
        det_sym,
        "symmetric matrices: interpolated norm is not the determinant"
    );
    assert_eq!(sym.closed_norm.clone().unwrap(), det_sym);

    let m3 = named("M3");
    let mut m = vec![vec![Poly::zero(9); 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = Poly::var(9, 3 * i + j);
        }
    }
    let det_m3 = det3(&m);
    assert_eq!(
        cubic_data(&m3.algebra, &cfg).unwrap().norm,
        det_m3,
        "full matrices: interpolated norm is not the determinant"
    );

    let alt = named("Alt6");
    let mut skew = vec![vec![Poly::zero(15); 6]; 6];
    let mut k = 0;
    for i in 0..6 {
        for j in i + 1..6 {
            skew[i][j] = Poly::var(15, k);
            skew[j][i] = Poly::var(15, k).neg();
            k += 1;
        }
    }
    let pf = pfaffian(&skew, &[0, 1, 2, 3, 4, 5]);
    assert_eq!(
        cubic_data(&alt.algebra, &cfg).unwrap().norm,
        pf,
        "skew matrices: interpolated norm is not the Pfaffian"
    );

    // product with a spin factor: N(c, l, w) = c (l^2 + w1 w2 + w3^2)
    let cs = named("Cxspin(3)");
    let quadric = Poly::from_terms(
        5,
        [
            term(5, &[(0, 1), (1, 2)], 1),
            term(5, &[(0, 1), (2, 1), (3, 1)], 1),
            term(5, &[(0, 1), (4, 2)], 1),
        ],
    );
    assert_eq!(cubic_data(&cs.algebra, &cfg).unwrap().norm, quadric);
    assert_eq!(cs.closed_norm.clone().unwrap(), quadric);

    // 27-dimensional hermitian model, sampled against the independent oracle
    let oct = CompositionAlgebra::split_octonion();
    let herm = named("Herm3O");
    let norm = herm.closed_norm.clone().unwrap();
    let mut s = SampleStream::new(0x4143_0003);
    for _ in 0..200 {
        let v = s.vector(27);
        assert_eq!(
            newton_determinant(&oct, &v),
            norm.eval(&v),
            "hermitian octonion determinant mismatch"
        );
    }
    println!(
        "acceptance criterion 03: PASS — det (dims 6, 9), Pfaffian (dim 15) and the spin-factor \
         bundle norm coefficient-exact; dim-27 norm equals the Newton determinant at 200 points"
    );
}

// ---- criterion 04 ----------------------------------------------------------

/// The truncated cubic ring end to end: printed adjoint, radical of
/// dimension 2, Penico profile (2, 1, 0), semi-simple quotient norm a^3,
/// the same profile read off the map side, and a tangent-quartic vertex of
/// affine dimension 4.
#[test]
fn c04_truncated_cubic_ring_end_to_end() {
    let cfg = config();
    let e = named("C_eps3");
    let data = e.cubic_data(&cfg).unwrap();

    let adjoint = vec![
        Poly::from_terms(3, [term(3, &[(0, 2)], 1)]),
        Poly::from_terms(3, [term(3, &[(0, 1), (1, 1)], -1)]),
        Poly::from_terms(3, [term(3, &[(1, 2)], 1), term(3, &[(0, 1), (2, 1)], -1)]),
    ];
    assert_eq!(data.adjoint, adjoint, "adjoint differs from the closed form");
    assert_eq!(data.norm, Poly::from_terms(3, [term(3, &[(0, 3)], 1)]));

    let ins = inspect_with(&e.algebra, &data, &cfg).unwrap();
    assert_eq!(ins.radical_dim, 2, "radical dimension");
    assert_eq!(ins.penico_dims, vec![2, 1, 0], "Penico profile");
    assert_eq!((ins.ss_rank, ins.ss_dim), (1, 1), "semi-simple signature");

    let dec = decompose(&e.algebra, &data, &cfg).unwrap();
    let (_, ss_norm) = descended_cubic(&dec, &data);
    assert_eq!(
        ss_norm,
        Poly::from_terms(1, [term(1, &[(0, 3)], 1)]),
        "descended norm is not a cube"
    );

    let pair = adjoint_pair(&e.algebra, &data, &cfg).unwrap();
    assert_eq!(
        map_penico(&pair).unwrap(),
        vec![2, 1, 0],
        "map-side Penico profile"
    );

    let q = tangent_quartic(&data);
    assert_eq!(quartic_vertex(&q).dim(), 4, "vertex affine dimension");

    println!(
        "acceptance criterion 04: PASS — truncated cubic ring: adjoint, radical 2, \
         Penico (2,1,0), quotient norm a^3, map-side profile, vertex dimension 4"
    );
}

// ---- criterion 05 ----------------------------------------------------------

/// `certify` on the 6-dimensional adjugate map recovers the map as its own
/// inverse and the determinant as its cubic, exactly; a product of a linear
/// form with an invertible substitution is recognised as fake, and the
/// returned factorisation reproduces the map.
#[test]
fn c05_certify_recovers_adjugate_and_rejects_fake() {
    let cfg = config();
    let sym = named("Sym3");
    let data = sym.cubic_data(&cfg).unwrap();
    let f = QuadraticMap::new(data.adjoint.clone()).unwrap();

    let t0 = Instant::now();
    let outcome = certify(&f, &cfg).unwrap();
    let elapsed = t0.elapsed();
    assert!(
        elapsed < Duration::from_secs(300),
        "certification took {elapsed:?}, budget is five minutes"
    );
    let CertifyOutcome::Genuine(pair) = outcome else {
        panic!("adjugate map not certified as genuine");
    };
    assert_eq!(pair.g, pair.f, "the adjugate map is not its own inverse");
    assert_eq!(pair.f, f, "certified map differs from the input");
    assert_eq!(
        pair.norm,
        sym3_det(),
        "certified cubic is not the determinant"
    );

    // a linear form times an invertible substitution
    let l = Poly::from_terms(3, [term(3, &[(0, 1)], 1), term(3, &[(1, 1)], 2)]);
    let rows: [[i64; 3]; 3] = [[0, 1, 0], [1, 0, 1], [0, 0, 1]];
    let comps: Vec<Poly> = rows
        .iter()
        .map(|row| {
            let mut lin = Poly::zero(3);
            for (j, c) in row.iter().enumerate() {
                if *c != 0 {
                    lin = lin.add(&Poly::var(3, j).scale(&rat_i(*c)));
                }
            }
            l.mul(&lin)
        })
        .collect();
    let fake = QuadraticMap::new(comps.clone()).unwrap();
    let CertifyOutcome::Fake {
        factor,
        automorphism,
    } = certify(&fake, &cfg).unwrap()
    else {
        panic!("linear-times-substitution map not recognised as fake");
    };
    for (i, comp) in comps.iter().enumerate() {
        let mut lin = Poly::zero(3);
        for j in 0..3 {
            lin = lin.add(&Poly::var(3, j).scale(&automorphism[(i, j)]));
        }
        assert_eq!(&factor.mul(&lin), comp, "fake factorisation, component {i}");
    }
    println!(
        "acceptance criterion 05: PASS — adjugate certified (G = F, cubic = det) in {elapsed:.2?}; \
         fake map factored exactly"
    );
}

// ---- criterion 06 ----------------------------------------------------------

/// For every catalog pair the norm gradient factors through the map
/// components with a constant matrix: `bf_solve` succeeds and
/// d_i N = sum_j B[i][j] F_j holds coefficient-exact. On entries with zero
/// radical the solved matrix is exactly the trace form.
#[test]
fn c06_norm_gradients_factor_through_map_components() {
    let cfg = config();
    let mut pairs = 0usize;
    for (e, data) in cubic_entries(&cfg) {
        let alg = &e.algebra;
        let n = alg.dim();
        let pair = adjoint_pair(alg, &data, &cfg)
            .unwrap_or_else(|err| panic!("{}: adjoint pair rejected: {err}", e.name));
        let b = bf_solve(&pair.f, &pair.norm)
            .unwrap_or_else(|err| panic!("{}: gradient solve failed: {err}", e.name));
        for i in 0..n {
            let mut acc = Poly::zero(n);
            for j in 0..n {
                let c = &b[(i, j)];
                if !c.is_zero() {
                    acc = acc.add(&pair.f.components()[j].scale(c));
                }
            }
            assert_eq!(
                pair.norm.partial(i),
                acc,
                "{}: gradient component {i} is not the solved combination",
                e.name
            );
        }
        if e.radical_dim == 0 {
            // components are linearly independent here, so the solution is
            // unique and must be the trace form itself
            assert_eq!(
                b, data.trace_form,
                "{}: solved matrix differs from the trace form",
                e.name
            );
        }
        pairs += 1;
    }
    println!(
        "acceptance criterion 06: PASS — norm gradient factors through the map components \
         coefficient-exact on {pairs} catalog pairs"
    );
}

// ---- criterion 07 ----------------------------------------------------------

/// Classification of reference cubics by their polar maps: the diagonal
/// cubic and the symmetric determinant are self-associated; the tangent
/// cubic of a quadric cone is homaloidal with a different associated cubic,
/// namely a pure cube.
#[test]
fn c07_homaloidal_classification_of_reference_cubics() {
    let cfg = config();

    let xyz = Poly::from_terms(3, [term(3, &[(0, 1), (1, 1), (2, 1)], 1)]);
    assert!(
        matches!(ekp_check(&xyz, &cfg).unwrap(), EkpVerdict::EkpHomaloidal(_)),
        "diagonal cubic not self-associated"
    );

    assert!(
        matches!(
            ekp_check(&sym3_det(), &cfg).unwrap(),
            EkpVerdict::EkpHomaloidal(_)
        ),
        "symmetric determinant not self-associated"
    );

    // x1 (x2^2 + x3^2 - x1 x4)
    let tangent = Poly::from_terms(
        4,
        [
            term(4, &[(0, 1), (1, 2)], 1),
            term(4, &[(0, 1), (2, 2)], 1),
            term(4, &[(0, 2), (3, 1)], -1),
        ],
    );
    let EkpVerdict::HomaloidalNotEkp(pair) = ekp_check(&tangent, &cfg).unwrap() else {
        panic!("tangent cubic of the cone misclassified");
    };
    assert_eq!(
        pair.norm,
        Poly::from_terms(4, [term(4, &[(0, 3)], 1)]),
        "associated cubic of the tangent cubic is not a pure cube"
    );

    println!(
        "acceptance criterion 07: PASS — diagonal cubic and symmetric determinant \
         self-associated; cone tangent cubic homaloidal with associated cubic x1^3"
    );
}

// ---- criterion 08 ----------------------------------------------------------

/// The tangent quartic of every catalog entry of dimension at most 9
/// vanishes on 100 cubic-curve points, on 50 tangent boundary points, and
/// identically (a degree-12 univariate zero, coefficient for coefficient)
/// along 10 interpolated cubic curves; its vertex is exactly the doubled
/// radical 0 + Rad + Rad + 0.
#[test]
fn c08_tangent_quartic_suite() {
    let cfg = config();
    let names = [
        "C", "CxCxC", "C_eps3", "CxCeps2", "Cxspin(3)", "J0(2)", "J1(2)", "Sym3", "M3",
    ];
    let mut entries = 0usize;
    for name in names {
        let e = named(name);
        let data = e.cubic_data(&cfg).unwrap();
        let alg = &e.algebra;
        let n = alg.dim();
        let pair = adjoint_pair(alg, &data, &cfg).unwrap();
        let q = tangent_quartic(&data);
        let mut s = SampleStream::new(0x4143_0008 ^ ((entries as u64) << 16));

        for _ in 0..100 {
            let x = s.vector(n);
            assert!(
                q.eval(mu(&data, &x).coords()).is_zero(),
                "{name}: quartic does not vanish at a curve point"
            );
        }

        let unit = alg.unit();
        for _ in 0..50 {
            let v = s.vector(n);
            let mut coords = Vec::with_capacity(2 * n + 2);
            coords.push(Rat::one());
            coords.extend(vadd(&unit, &v));
            coords.extend(vadd(&unit, &data.sharp(&unit, &v)));
            coords.push(Rat::one() + data.trace_of(&v));
            assert!(
                q.eval(&coords).is_zero(),
                "{name}: quartic does not vanish at a tangent boundary point"
            );
        }

        let mut curves = 0usize;
        let mut attempts = 0usize;
        while curves < 10 && attempts < 400 {
            attempts += 1;
            let (x1, x2, x3) = (s.vector(n), s.vector(n), s.vector(n));
            let Ok(curve) = cubic_through(&pair, &x1, &x2, &x3) else {
                continue;
            };
            assert!(
                q.substitute(&curve.params).is_zero(),
                "{name}: quartic composed with an interpolated cubic is nonzero"
            );
            curves += 1;
        }
        assert_eq!(curves, 10, "{name}: not enough generic triples in 400 draws");

        let rad = radical(&data);
        let mut span: Vec<Vec<Rat>> = Vec::new();
        for b in rad.basis() {
            for off in [1, 1 + n] {
                let mut v = vec![Rat::zero(); 2 * n + 2];
                v[off..off + n].clone_from_slice(b);
                span.push(v);
            }
        }
        assert_eq!(
            quartic_vertex(&q),
            Subspace::from_span(2 * n + 2, span),
            "{name}: vertex is not the doubled radical"
        );
        entries += 1;
    }
    println!(
        "acceptance criterion 08: PASS — tangent quartic vanished at 150 points and along \
         10 cubics per entry, vertex equals the doubled radical, on {entries} entries"
    );
}

// ---- criterion 09 ----------------------------------------------------------

/// Rebuilding the algebra from its adjoint pair reproduces the structure
/// constants exactly at the unit, for every rank-3 entry of dimension at
/// most 9; the `cj roundtrip` command confirms this and preserves the
/// semi-simple signature at 3 random invertible base points per entry.
#[test]
fn c09_roundtrip_reproduces_structure_constants() {
    let cfg = config();
    let names = ["CxCxC", "C_eps3", "CxCeps2", "Cxspin(3)", "Sym3", "M3"];
    for name in names {
        let e = named(name);
        let data = e.cubic_data(&cfg).unwrap();
        let pair = adjoint_pair(&e.algebra, &data, &cfg).unwrap();
        let rec = algebra_from_map(&pair, &e.algebra.unit(), &cfg).unwrap();
        assert_eq!(
            rec.algebra, e.algebra,
            "{name}: structure constants differ at the unit"
        );

        let (v, out) = json_report(&["roundtrip", name]);
        assert!(
            out.status.success(),
            "{name}: roundtrip command failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert_eq!(v["results"]["exact_at_unit"], Value::Bool(true), "{name}");
        assert_eq!(
            v["results"]["random_base_points"].as_u64(),
            Some(3),
            "{name}: fewer than 3 random base points"
        );
        for entry in v["ledger"].as_array().unwrap() {
            assert_eq!(
                entry["pass"],
                Value::Bool(true),
                "{name}: failing ledger entry {entry}"
            );
        }
    }
    println!(
        "acceptance criterion 09: PASS — structure constants exact at the unit and \
         semi-simple signature preserved at 3 random bases, on {} entries",
        names.len()
    );
}

// ---- criterion 10 ----------------------------------------------------------

/// Isotopes at 5 random invertible elements of every catalog entry stay
/// Jordan, have norm N(u) N — coefficient-exact by re-extraction where the
/// table has generic degree 3 and dimension at most 15, validated through
/// the designated-norm constructor elsewhere — and keep the Penico profile.
#[test]
fn c10_isotopes_preserve_jordan_norm_and_penico_profile() {
    let cfg = config();
    let mut entries = 0usize;
    for (e, data) in cubic_entries(&cfg) {
        let alg = &e.algebra;
        let n = alg.dim();
        let base_profile = penico_profile(alg, &radical(&data)).unwrap();
        let mut s = SampleStream::new(0x4143_0010 ^ ((entries as u64) << 16));
        let mut done = 0usize;
        let mut attempts = 0usize;
        while done < 5 && attempts < 200 {
            attempts += 1;
            let u = s.vector(n);
            if data.norm_of(&u).is_zero() {
                continue;
            }
            let alg_u = isotope(alg, &data, &u).unwrap();
            assert!(
                alg_u.jordan_check(&cfg),
                "{}: isotope fails the Jordan identity",
                e.name
            );
            let scaled = data.norm.scale(&data.norm_of(&u));
            let data_u = if e.rank == 3 && n <= 15 {
                let d = cubic_data(&alg_u, &cfg)
                    .unwrap_or_else(|err| panic!("{}: isotope extraction: {err}", e.name));
                assert_eq!(d.norm, scaled, "{}: isotope norm is not N(u) N", e.name);
                d
            } else {
                CubicData::from_norm(&alg_u, scaled, &cfg)
                    .unwrap_or_else(|err| panic!("{}: isotope rejects N(u) N: {err}", e.name))
            };
            assert_eq!(
                penico_profile(&alg_u, &radical(&data_u)).unwrap(),
                base_profile,
                "{}: Penico profile changed under isotopy",
                e.name
            );
            done += 1;
        }
        assert_eq!(done, 5, "{}: not enough invertible elements", e.name);
        entries += 1;
    }
    println!(
        "acceptance criterion 10: PASS — 5 isotopes per entry over {entries} entries: \
         Jordan identity, norm N(u) N, Penico profile all preserved"
    );
}

// ---- criterion 11 ----------------------------------------------------------

/// The closed form for the transported matrix of a lower-triangular
/// normaliser of the truncated-ring adjoint, reproduced by
/// `structure_transporter` for 10 random parameter choices.
#[test]
fn c11_lower_triangular_transporter_closed_form() {
    let cfg = config();
    let e = named("C_eps3");
    let data = e.cubic_data(&cfg).unwrap();
    let f = QuadraticMap::new(data.adjoint.clone()).unwrap();
    let mut s = SampleStream::new(0x4143_0011);
    for k in 0..10 {
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
        let sharp = structure_transporter(&f, &theta)
            .unwrap_or_else(|| panic!("sample {k}: normalising matrix rejected"));
        let mut want = Mat::zeros(3, 3);
        want[(0, 0)] = &(&(&m22 * &m22) * &(&m22 * &m22)) / &(&m33 * &m33);
        want[(1, 0)] = -&(&(&m22 * &m22) * &m21) / &m33;
        want[(1, 1)] = &(&(&m22 * &m22) * &m22) / &m33;
        want[(2, 0)] = &(&(&m21 * &m21) * &m33 - &(&(&m22 * &m22) * &m31)) / &m33;
        want[(2, 1)] = -&(&m22 * &(&(&m21 + &m21) * &m33 - &(&m22 * &m32))) / &m33;
        want[(2, 2)] = &m22 * &m22;
        assert_eq!(sharp, want, "sample {k}: transported matrix differs");
    }
    println!(
        "acceptance criterion 11: PASS — lower-triangular transporter closed form \
         reproduced at 10 parameter choices"
    );
}
