//! `cj` — command line front end for the cubic-jordan toolkit.
//!
//! Every command prints a report: a command echo, a digest of the input, the
//! structured results, and a verification ledger with one line per invariant
//! actually checked. The process exits 0 exactly when every ledger entry
//! passed, so the reports compose with shell pipelines. With `--json` the
//! whole report is a single JSON object; keys are emitted sorted, so reruns
//! with equal input and seed are byte-identical.

use std::collections::hash_map::DefaultHasher;
use std::hash::Hasher;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num::Zero;
use serde_json::{json, Value};

use cubic_jordan::algebra::Algebra;
use cubic_jordan::catalog::{make_named, standard_names, CatalogEntry};
use cubic_jordan::config::{Budget, Config};
use cubic_jordan::cremona::{
    adjoint_pair, algebra_from_map, certify, ekp_check, map_penico, map_ss_part, mat_to_json,
    CertifyOutcome, EkpVerdict, QuadraticMap,
};
use cubic_jordan::cubic::CubicData;
use cubic_jordan::linalg::Subspace;
use cubic_jordan::poly::Poly;
use cubic_jordan::rat::Rat;
use cubic_jordan::sample::SampleStream;
use cubic_jordan::structure::{inspect, inspect_with, radical, Inspection};
use cubic_jordan::variety::{
    cubic_through, on_variety, quartic_vertex, tangent_quartic, VarietyError,
};

#[derive(Parser)]
#[command(
    name = "cj",
    version,
    about = "Exact tools for cubic structures, their quadro-quadric maps, and the varieties they parameterize"
)]
struct Cli {
    /// Seed for the deterministic sample stream.
    #[arg(long, global = true, default_value_t = 2019)]
    seed: u64,
    /// Emit the report as one machine-readable JSON object.
    #[arg(long, global = true)]
    json: bool,
    /// Cap for exact linear solves, in matrix cells (rows times columns).
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in catalogue of cubic structures.
    Catalog,
    /// Rank, radical, nilpotence profile and semi-simple signature.
    Inspect {
        /// Catalogue name (e.g. "C_eps3", "Sym3", "spin(4)").
        name: Option<String>,
        /// Load the algebra from a JSON file instead.
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Quadro-quadric map operations.
    Cremona {
        #[command(subcommand)]
        sub: CremonaCmd,
    },
    /// Checks on the projective variety of a cubic structure.
    Variety {
        #[command(subcommand)]
        sub: VarietyCmd,
    },
    /// Recover the algebra from its adjoint pair and compare.
    Roundtrip {
        /// Catalogue name of a rank-three entry.
        name: String,
    },
}

#[derive(Subcommand)]
enum CremonaCmd {
    /// Decide whether a quadratic map is a genuine quadro-quadric
    /// Cremona transformation, and if so produce the certified pair.
    Certify {
        /// Quadratic map as JSON: {"n": n, "forms": [poly, ...]}.
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
    /// Classify a cubic form through its polar map.
    Ekp {
        /// Cubic form as JSON: {"nvars": n, "terms": [...]}.
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
    /// Map-side structure: nilpotence profile and semi-simple split.
    Structure {
        /// Quadratic map as JSON: {"n": n, "forms": [poly, ...]}.
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum VarietyCmd {
    /// Thread random cubic curves through the variety and check the
    /// invariant quartic and its vertex.
    Check {
        /// Catalogue name of a rank-three entry.
        #[arg(long)]
        algebra: String,
        /// Number of random point triples to try.
        #[arg(long, default_value_t = 5)]
        triples: usize,
    },
}

// ---- report plumbing -------------------------------------------------------

struct LedgerEntry {
    check: String,
    pass: bool,
    samples: usize,
}

struct Report {
    command: String,
    input: String,
    results: Value,
    ledger: Vec<LedgerEntry>,
}

impl Report {
    fn new(command: impl Into<String>, input: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            input: input.into(),
            results: Value::Null,
            ledger: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, pass: bool, samples: usize) {
        self.ledger.push(LedgerEntry {
            check: name.into(),
            pass,
            samples,
        });
    }

    fn all_passed(&self) -> bool {
        self.ledger.iter().all(|e| e.pass)
    }

    fn emit(&self, as_json: bool) -> ExitCode {
        // Ignore write failures (e.g. a closed pipe): the exit code is the
        // contract, and truncated output should not turn into a panic.
        use std::io::Write;
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        if as_json {
            let obj = json!({
                "command": self.command,
                "input": self.input,
                "results": self.results,
                "ledger": self
                    .ledger
                    .iter()
                    .map(|e| json!({"check": e.check, "pass": e.pass, "samples": e.samples}))
                    .collect::<Vec<_>>(),
            });
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&obj).unwrap());
        } else {
            let _ = writeln!(out, "command: {}", self.command);
            let _ = writeln!(out, "input:   {}", self.input);
            let _ = writeln!(out, "results:");
            let pretty = serde_json::to_string_pretty(&self.results).unwrap();
            for line in pretty.lines() {
                let _ = writeln!(out, "  {line}");
            }
            if !self.ledger.is_empty() {
                let _ = writeln!(out, "ledger:");
                for e in &self.ledger {
                    let tag = if e.pass { "pass" } else { "FAIL" };
                    let _ = writeln!(out, "  {tag}  {} (samples: {})", e.check, e.samples);
                }
            }
        }
        if self.all_passed() {
            ExitCode::SUCCESS
        } else {
            ExitCode::FAILURE
        }
    }
}

fn digest(label: &str, bytes: &[u8]) -> String {
    let mut h = DefaultHasher::new();
    h.write(bytes);
    format!("{label}#{:016x}", h.finish())
}

fn read_json(path: &PathBuf) -> Result<(Value, String), String> {
    let bytes = std::fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let value = serde_json::from_slice(&bytes)
        .map_err(|e| format!("{} is not valid JSON: {e}", path.display()))?;
    Ok((value, digest(&path.display().to_string(), &bytes)))
}

fn inspection_json(ins: &Inspection) -> Value {
    json!({
        "rank": ins.rank,
        "radical_dim": ins.radical_dim,
        "penico_dims": ins.penico_dims,
        "ss_rank": ins.ss_rank,
        "ss_dim": ins.ss_dim,
        "section_found": ins.section_found,
    })
}

// ---- commands --------------------------------------------------------------

fn cmd_catalog(config: &Config) -> Result<Report, String> {
    let names = standard_names();
    let mut report = Report::new("catalog", digest("builtin", b"catalog"));
    let mut rows = Vec::new();
    for name in &names {
        let entry = make_named(name).map_err(|e| e.to_string())?;
        rows.push(json!({
            "name": entry.name,
            "dim": entry.algebra.dim(),
            "rank": entry.rank,
            "radical_dim": entry.radical_dim,
            "closed_norm": entry.closed_norm.is_some(),
        }));
    }
    let count = rows.len();
    report.results = json!({ "entries": rows });
    report.check("catalogue entries constructed", true, count);
    let jordan_ok = names.iter().all(|n| {
        make_named(n)
            .map(|e| e.algebra.jordan_check(config))
            .unwrap_or(false)
    });
    report.check("commutative Jordan identity on every entry", jordan_ok, count);
    Ok(report)
}

fn load_algebra(
    name: &Option<String>,
    input: &Option<PathBuf>,
) -> Result<(Algebra, Option<CatalogEntry>, String), String> {
    match (name, input) {
        (Some(n), None) => {
            let entry = make_named(n).map_err(|e| e.to_string())?;
            Ok((
                entry.algebra.clone(),
                Some(entry),
                digest("name", n.as_bytes()),
            ))
        }
        (None, Some(path)) => {
            let (value, dig) = read_json(path)?;
            let alg = Algebra::from_json(&value).map_err(|e| e.to_string())?;
            Ok((alg, None, dig))
        }
        _ => Err("pass exactly one of a catalogue name or --in FILE".into()),
    }
}

fn cmd_inspect(
    name: &Option<String>,
    input: &Option<PathBuf>,
    config: &Config,
) -> Result<Report, String> {
    let (alg, entry, dig) = load_algebra(name, input)?;
    let mut report = Report::new("inspect", dig);
    let ins = match &entry {
        Some(e) => {
            let data = e.cubic_data(config).map_err(|e| e.to_string())?;
            inspect_with(&alg, &data, config).map_err(|e| e.to_string())?
        }
        None => inspect(&alg, config).map_err(|e| e.to_string())?,
    };
    report.results = inspection_json(&ins);
    report.check("rank-three cubic data extracted", true, 0);
    report.check(
        "commutative Jordan identity",
        alg.jordan_check(config),
        1,
    );
    report.check(
        "nilpotence chain terminates at zero",
        ins.penico_dims.last() == Some(&0),
        ins.penico_dims.len(),
    );
    Ok(report)
}

fn poly_summary(p: &Poly) -> Value {
    p.to_json()
}

fn cmd_certify(input: &PathBuf, config: &Config) -> Result<Report, String> {
    let (value, dig) = read_json(input)?;
    let mut report = Report::new("cremona certify", dig);
    let f = QuadraticMap::from_json(&value).map_err(|e| e.to_string())?;
    let n = f.nvars();
    match certify(&f, config).map_err(|e| e.to_string())? {
        CertifyOutcome::Genuine(pair) => {
            report.results = json!({
                "verdict": "genuine",
                "n": n,
                "inverse": pair.g.to_json(),
                "norm": poly_summary(&pair.norm),
                "conorm": poly_summary(&pair.conorm),
                "bf": mat_to_json(&pair.bf),
                "bg": mat_to_json(&pair.bg),
            });
            report.check("pair identities verified exactly", true, 0);
        }
        CertifyOutcome::Fake { factor, automorphism } => {
            report.results = json!({
                "verdict": "fake",
                "n": n,
                "factor": poly_summary(&factor),
                "automorphism": mat_to_json(&automorphism),
            });
            report.check("linear split factorisation verified", true, 0);
        }
        CertifyOutcome::NotCremona { reason } => {
            report.results = json!({
                "verdict": "not-cremona",
                "n": n,
                "reason": reason,
            });
            report.check("classification completed", true, 0);
        }
    }
    Ok(report)
}

fn cmd_ekp(input: &PathBuf, config: &Config) -> Result<Report, String> {
    let (value, dig) = read_json(input)?;
    let mut report = Report::new("cremona ekp", dig);
    let cubic = Poly::from_json(&value).map_err(|e| e.to_string())?;
    match ekp_check(&cubic, config).map_err(|e| e.to_string())? {
        EkpVerdict::EkpHomaloidal(pair) => {
            report.results = json!({
                "verdict": "ekp-homaloidal",
                "norm": poly_summary(&pair.norm),
                "inverse": pair.g.to_json(),
            });
            report.check("polar map certified quadro-quadric", true, 0);
            report.check("associated cubic matches the input", true, 0);
        }
        EkpVerdict::HomaloidalNotEkp(pair) => {
            report.results = json!({
                "verdict": "homaloidal-not-ekp",
                "norm": poly_summary(&pair.norm),
                "inverse": pair.g.to_json(),
            });
            report.check("polar map certified quadro-quadric", true, 0);
            report.check("associated cubic differs from the input", true, 0);
        }
        EkpVerdict::Degenerate { factor, automorphism } => {
            report.results = json!({
                "verdict": "degenerate",
                "factor": poly_summary(&factor),
                "automorphism": mat_to_json(&automorphism),
            });
            report.check("polar map collapses to a projectivity", true, 0);
        }
        EkpVerdict::NotQuadroQuadric { reason } => {
            report.results = json!({
                "verdict": "not-quadro-quadric",
                "reason": reason,
            });
            report.check("classification completed", true, 0);
        }
    }
    Ok(report)
}

fn cmd_structure(input: &PathBuf, config: &Config) -> Result<Report, String> {
    let (value, dig) = read_json(input)?;
    let mut report = Report::new("cremona structure", dig);
    let f = QuadraticMap::from_json(&value).map_err(|e| e.to_string())?;
    let pair = match certify(&f, config).map_err(|e| e.to_string())? {
        CertifyOutcome::Genuine(pair) => pair,
        CertifyOutcome::Fake { .. } => {
            report.results = json!({ "verdict": "fake" });
            report.check("genuine quadro-quadric map", false, 0);
            return Ok(report);
        }
        CertifyOutcome::NotCremona { reason } => {
            report.results = json!({ "verdict": "not-cremona", "reason": reason });
            report.check("genuine quadro-quadric map", false, 0);
            return Ok(report);
        }
    };
    let penico = map_penico(&pair).map_err(|e| e.to_string())?;
    let split = map_ss_part(&pair, config).map_err(|e| e.to_string())?;
    report.results = json!({
        "verdict": "genuine",
        "radical_dim": split.radical.dim(),
        "penico_dims": penico,
        "ss": {
            "n": split.f_bar.nvars(),
            "map": split.f_bar.to_json(),
            "norm": poly_summary(&split.n_bar),
        },
        "blocks": {
            "rho_terms": split.rho.iter().map(Poly::to_json).collect::<Vec<_>>(),
            "annihilator_dim": split.annihilator.dim(),
        },
    });
    report.check("map-side nilpotence chain terminates", true, penico.len());
    report.check("quotient pair identity holds exactly", true, 0);
    report.check(
        "complement block free of radical variables",
        true,
        split.f_bar.nvars(),
    );
    Ok(report)
}

fn rank_three_entry(name: &str, config: &Config) -> Result<(CatalogEntry, CubicData), String> {
    let entry = make_named(name).map_err(|e| e.to_string())?;
    if entry.rank != 3 {
        return Err(format!(
            "{name} has rank {}; this command needs a rank-three entry",
            entry.rank
        ));
    }
    let data = entry.cubic_data(config).map_err(|e| e.to_string())?;
    Ok((entry, data))
}

fn cmd_variety_check(algebra: &str, triples: usize, config: &Config) -> Result<Report, String> {
    let (entry, data) = rank_three_entry(algebra, config)?;
    let mut report = Report::new(
        format!("variety check --algebra {algebra} --triples {triples}"),
        digest("name", algebra.as_bytes()),
    );
    let pair = adjoint_pair(&entry.algebra, &data, config).map_err(|e| e.to_string())?;
    let n = data.adjoint.len();

    let q = tangent_quartic(&data);
    // symbolic: the quartic vanishes identically on the parametrization
    let mut subs = Vec::with_capacity(2 * n + 2);
    subs.push(Poly::constant(n, Rat::from_integer(1.into())));
    for i in 0..n {
        subs.push(Poly::var(n, i));
    }
    subs.extend(data.adjoint.iter().cloned());
    subs.push(data.norm.clone());
    let on_param = q.substitute(&subs).is_zero();

    let mut stream = SampleStream::new(config.seed ^ 0x5643_4845);
    let mut curves_found = 0usize;
    let mut residues_zero = true;
    let mut chart_points = 0usize;
    let mut chart_ok = true;
    for _ in 0..triples {
        let x1 = stream.vector(n);
        let x2 = stream.vector(n);
        let x3 = stream.vector(n);
        let curve = match cubic_through(&pair, &x1, &x2, &x3) {
            Ok(c) => c,
            Err(VarietyError::NonGenericTriple(_)) => continue,
            Err(e) => return Err(e.to_string()),
        };
        curves_found += 1;
        residues_zero &= q.substitute(&curve.params).is_zero();
        for t in 2..5i64 {
            let p = curve
                .eval(&Rat::from_integer(t.into()))
                .map_err(|e| e.to_string())?;
            if !p.alpha().is_zero() {
                chart_points += 1;
                chart_ok &= on_variety(&data, &p);
            }
        }
    }

    let vertex = quartic_vertex(&q);
    let rad = radical(&data);
    let expected = {
        let m = 2 * n + 2;
        let mut span = Vec::new();
        for r in rad.basis() {
            let mut v1 = vec![Rat::from_integer(0.into()); m];
            let mut v2 = v1.clone();
            v1[1..1 + n].clone_from_slice(r);
            v2[1 + n..1 + 2 * n].clone_from_slice(r);
            span.push(v1);
            span.push(v2);
        }
        Subspace::from_span(m, span)
    };
    let vertex_ok = vertex == expected;

    report.results = json!({
        "algebra": entry.name,
        "dim": n,
        "triples_tried": triples,
        "curves_found": curves_found,
        "quartic_residues_zero": residues_zero,
        "vertex_dim_affine": vertex.dim(),
        "radical_dim": rad.dim(),
    });
    report.check("quartic vanishes on the parametrization", on_param, 0);
    report.check(
        "cubic curves found through random triples",
        triples == 0 || curves_found > 0,
        curves_found,
    );
    report.check(
        "quartic residue vanishes along every curve",
        residues_zero,
        curves_found,
    );
    report.check("curve points satisfy the chart equations", chart_ok, chart_points);
    report.check("quartic vertex is the doubled radical", vertex_ok, 1);
    Ok(report)
}

fn cmd_roundtrip(name: &str, config: &Config) -> Result<Report, String> {
    let (entry, data) = rank_three_entry(name, config)?;
    let mut report = Report::new(
        format!("roundtrip {name}"),
        digest("name", name.as_bytes()),
    );
    let pair = adjoint_pair(&entry.algebra, &data, config).map_err(|e| e.to_string())?;
    let n = entry.algebra.dim();

    let at_unit = algebra_from_map(&pair, &entry.algebra.unit(), config)
        .map_err(|e| e.to_string())?;
    let exact = at_unit.algebra == entry.algebra;
    report.check("structure constants reproduced at the unit", exact, 1);

    let base_ins = inspect_with(&entry.algebra, &data, config).map_err(|e| e.to_string())?;
    let mut stream = SampleStream::new(config.seed ^ 0x5254_5250);
    let mut bases = 0usize;
    let mut signature_ok = true;
    let mut attempts = 0usize;
    while bases < 3 && attempts < 200 {
        attempts += 1;
        let e = stream.vector(n);
        let Ok(rec) = algebra_from_map(&pair, &e, config) else {
            continue;
        };
        bases += 1;
        let ins = inspect(&rec.algebra, config).map_err(|e| e.to_string())?;
        signature_ok &= ins.ss_rank == base_ins.ss_rank && ins.ss_dim == base_ins.ss_dim;
    }
    report.check(
        "semi-simple signature preserved at random base points",
        signature_ok && bases == 3,
        bases,
    );

    report.results = json!({
        "algebra": entry.name,
        "dim": n,
        "exact_at_unit": exact,
        "random_base_points": bases,
        "ss_signature": [base_ins.ss_rank, base_ins.ss_dim],
    });
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut config = Config::with_seed(cli.seed);
    if let Some(cells) = cli.budget {
        config.budget = Budget::with_solve_cells(cells);
    }

    let result = match &cli.command {
        Command::Catalog => cmd_catalog(&config),
        Command::Inspect { name, input } => cmd_inspect(name, input, &config),
        Command::Cremona { sub } => match sub {
            CremonaCmd::Certify { input } => cmd_certify(input, &config),
            CremonaCmd::Ekp { input } => cmd_ekp(input, &config),
            CremonaCmd::Structure { input } => cmd_structure(input, &config),
        },
        Command::Variety { sub } => match sub {
            VarietyCmd::Check { algebra, triples } => {
                cmd_variety_check(algebra, *triples, &config)
            }
        },
        Command::Roundtrip { name } => cmd_roundtrip(name, &config),
    };

    match result {
        Ok(report) => report.emit(cli.json),
        Err(message) => {
            eprintln!("cj: {message}");
            ExitCode::from(2)
        }
    }
}
