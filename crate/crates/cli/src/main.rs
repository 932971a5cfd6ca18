//! `modbog`: one subcommand per toolkit module, JSON or table output.
//!
//! Exit codes: 0 on success, 1 on a domain error (reported on stderr as a
//! JSON object), 2 on a usage error.

mod table;

use std::fmt::Debug;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use modbog_core::finite_algebra::AlgebraSpec;
use modbog_core::heights::{self, bogomolov_bound, weil_height, AlgebraicNumber, IrreducibleFlag};
use modbog_core::matgroup::{verification_suite, MatGroupError};
use modbog_core::modforms::{scan, AssumptionReport, ModFormRecord};
use modbog_core::ramification::{describe_group, ram_profile, BoundKind};
use modbog_lmfdb::{fetch_fixture, fetch_form, load_fixture, save_fixture, ClientConfig};
use serde::Serialize;
use serde_json::json;

use table::{key_values, Table};

#[derive(Parser)]
#[command(
    name = "modbog",
    version,
    about = "Heights, ramification and matrix-group computations for modular Galois representations"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Never access the network; only cached data is used.
    #[arg(long, global = true)]
    offline: bool,
    /// Database base URL (overrides MODBOG_BASE_URL).
    #[arg(long, global = true)]
    base_url: Option<String>,
    /// Response cache directory (overrides MODBOG_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Matrix groups over finite F_p-algebras.
    Groups {
        #[command(subcommand)]
        command: GroupsCommand,
    },
    /// Ramification profile of the level-n extension.
    Ram {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        n: u32,
    },
    /// Explicit height lower bound (C1, C2, λ, c).
    Bound {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Degree of the Hecke field (modular kind only).
        #[arg(long, required_if_eq("kind", "modular"))]
        degk: Option<u32>,
    },
    /// Weil height of a root of the given integer polynomial.
    Height {
        /// Coefficients `c0,c1,...,cd`, constant term first.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
    /// Supersingular primes of a newform and the hypotheses they satisfy.
    Scan {
        /// Newform label, read through the cache or the database.
        #[arg(long, conflicts_with = "fixture", required_unless_present = "fixture")]
        label: Option<String>,
        /// Fixture file.
        #[arg(long)]
        fixture: Option<PathBuf>,
        /// Largest prime scanned (default: all available coefficients).
        #[arg(long)]
        pmax: Option<u64>,
    },
    /// Download a newform and print (or write) it as a fixture.
    Fetch {
        #[arg(long)]
        label: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GroupsCommand {
    /// Run the verification suite on one algebra.
    Verify {
        /// Algebra spec, e.g. `F5xF5`, `F7[x]/x^2`, `F5^2`.
        #[arg(long)]
        algebra: String,
        /// Prime substituted for `Fp` in the spec.
        #[arg(long)]
        p: Option<u64>,
        /// Weight; adds the determinant-twisted group check.
        #[arg(long)]
        k: Option<u64>,
        /// Include per-check wall-clock times (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Cyclotomic,
    Modular,
}

struct Failure {
    kind: String,
    message: String,
}

/// The enum variant name from a `Debug` rendering.
fn variant<E: Debug>(e: &E) -> String {
    let s = format!("{e:?}");
    s.split(|c: char| !c.is_alphanumeric() && c != '_').next().unwrap_or("Error").to_string()
}

fn fail<E: Debug + std::fmt::Display>(e: E) -> Failure {
    Failure { kind: variant(&e), message: e.to_string() }
}

fn matgroup_fail(e: MatGroupError) -> Failure {
    match &e {
        MatGroupError::Algebra(inner) => Failure { kind: variant(inner), message: e.to_string() },
        _ => fail(e),
    }
}

fn usage(msg: &str) -> ! {
    Cli::command().error(ErrorKind::ValueValidation, msg).exit()
}

struct Rendered {
    json: String,
    table: String,
}

/// Serialized straight from the value so that field order is kept.
fn render<T: Serialize>(v: &T, table: String) -> Rendered {
    Rendered { json: serde_json::to_string_pretty(v).expect("serializable"), table }
}

fn client_config(cli: &Cli) -> ClientConfig {
    let mut cfg = ClientConfig::from_env();
    if let Some(url) = &cli.base_url {
        cfg.base_url = url.clone();
    }
    if let Some(dir) = &cli.cache_dir {
        cfg.cache_dir = dir.clone();
    }
    cfg.offline = cli.offline;
    cfg
}

fn groups_verify(algebra: &str, p: Option<u64>, k: Option<u64>, timings: bool) -> Result<Rendered, Failure> {
    let spec = AlgebraSpec::parse(algebra, p).map_err(|e| match e {
        modbog_core::finite_algebra::AlgebraError::Parse { .. } => usage(&e.to_string()),
        other => fail(other),
    })?;
    let alg = spec.build().map_err(fail)?;
    let report = verification_suite(&alg, k, timings).map_err(matgroup_fail)?;
    let mut t = Table::new(if timings {
        vec!["check", "holds", "observed", "expected", "ms"]
    } else {
        vec!["check", "holds", "observed", "expected"]
    });
    for c in &report.checks {
        let mut row = vec![c.name.to_string(), c.holds.to_string(), c.observed.clone(), c.expected.clone()];
        if let Some(ms) = c.elapsed_ms {
            row.push(ms.to_string());
        }
        t.row(row);
    }
    let head = format!("algebra {} (p = {})\n", report.algebra, report.p);
    let foot = format!("all checks hold: {}\n", report.all_hold);
    Ok(render(&report, format!("{head}{}{foot}", t.render())))
}

fn ram(p: u64, k: u64, n: u32) -> Result<Rendered, Failure> {
    let r = ram_profile(p, k, n).map_err(fail)?;
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    let mut out = key_values(&[
        ("p", r.p.to_string()),
        ("k", r.k.to_string()),
        ("q", r.q.to_string()),
        ("d", r.d.to_string()),
        ("delta", r.delta.to_string()),
        ("n", r.n.to_string()),
        ("e_n", r.e_n.to_string()),
        ("i_n", r.i_n.to_string()),
        ("group", format!("[{}] {}", join(&r.group), describe_group(&r.group))),
        ("last_group", format!("[{}] {}", join(&r.last_group), describe_group(&r.last_group))),
    ]);
    if !r.jumps.is_empty() {
        let mut t = Table::new(vec!["from", "to", "j"]);
        for jmp in &r.jumps {
            t.row(vec![jmp.lo.to_string(), jmp.hi.to_string(), jmp.j.to_string()]);
        }
        out.push('\n');
        out.push_str(&t.render());
    }
    for w in &r.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    Ok(render(&r, out))
}

fn bound(p: u64, kind: KindArg, degk: Option<u32>) -> Result<Rendered, Failure> {
    let kind = match kind {
        KindArg::Cyclotomic => BoundKind::Cyclotomic,
        KindArg::Modular => BoundKind::Modular { deg_k: degk.expect("enforced by clap") },
    };
    let b = bogomolov_bound(p, kind).map_err(fail)?;
    let kind_s = match b.kind {
        BoundKind::Cyclotomic => "cyclotomic".to_string(),
        BoundKind::Modular { deg_k } => format!("modular (degK = {deg_k})"),
    };
    let t = key_values(&[
        ("p", b.p.to_string()),
        ("kind", kind_s),
        ("C1", b.c1.to_string()),
        ("C2", b.c2.to_string()),
        ("lambda", b.lambda.to_string()),
        ("log c", format!("{:.12e}", b.log_c)),
        ("c", b.c_decimal.clone()),
    ]);
    Ok(render(&b, t))
}

#[derive(Serialize)]
struct HeightReport {
    min_poly: String,
    coeffs: Vec<String>,
    degree: usize,
    irreducible: IrreducibleFlag,
    torsion: bool,
    value: f64,
    abs_error: f64,
}

fn height(coeffs: &str) -> Result<Rendered, Failure> {
    let parsed = heights::poly::parse_coeffs(coeffs).unwrap_or_else(|e| usage(&e));
    let a = AlgebraicNumber::new(&parsed).map_err(fail)?;
    let h = weil_height(&a).map_err(fail)?;
    let r = HeightReport {
        min_poly: heights::poly::render(a.min_poly()),
        coeffs: a.min_poly().iter().map(|c| c.to_string()).collect(),
        degree: a.degree(),
        irreducible: a.irreducible(),
        torsion: h.torsion,
        value: h.value,
        abs_error: h.abs_error,
    };
    let t = key_values(&[
        ("min_poly", r.min_poly.clone()),
        ("degree", r.degree.to_string()),
        ("irreducible", format!("{:?}", r.irreducible).to_lowercase()),
        ("torsion", r.torsion.to_string()),
        ("height", format!("{:.12}", r.value)),
        ("abs_error", format!("{:.1e}", r.abs_error)),
    ]);
    Ok(render(&r, t))
}

#[derive(Serialize)]
struct ScanOutput<'a> {
    label: &'a str,
    p_max: u64,
    reports: &'a [AssumptionReport],
}

fn scan_cmd(cli: &Cli, label: Option<&str>, fixture: Option<&PathBuf>, pmax: Option<u64>) -> Result<Rendered, Failure> {
    let rec: ModFormRecord = match (label, fixture) {
        (_, Some(path)) => load_fixture(path).map_err(fail)?.record,
        (Some(label), None) => fetch_form(label, &client_config(cli)).map_err(fail)?,
        (None, None) => unreachable!("enforced by clap"),
    };
    let p_max = pmax.unwrap_or_else(|| rec.coefficient_bound());
    let reports = scan(&rec, p_max).map_err(fail)?;
    let mut t = Table::new(vec!["label", "p", "P0", "P1", "P3", "P2 evidence", "eligible", "overall"]);
    for r in &reports {
        t.row(vec![
            r.label.clone(),
            r.p.to_string(),
            r.p0.to_string(),
            r.p1.to_string(),
            r.p3.to_string(),
            format!("{:?}", r.p2_evidence),
            r.eligible.to_string(),
            r.overall.to_string(),
        ]);
    }
    let table = if reports.is_empty() { format!("no prime p ≤ {p_max} with a_p = 0\n") } else { t.render() };
    Ok(render(&ScanOutput { label: &rec.label, p_max, reports: &reports }, table))
}

fn fetch(cli: &Cli, label: &str, out: Option<&PathBuf>) -> Result<Rendered, Failure> {
    let today = time::OffsetDateTime::now_utc().date().to_string();
    let fixture = fetch_fixture(label, &client_config(cli), &today).map_err(fail)?;
    if let Some(path) = out {
        save_fixture(&fixture, path).map_err(fail)?;
    }
    let r = &fixture.record;
    let t = key_values(&[
        ("label", r.label.clone()),
        ("level", r.level.to_string()),
        ("weight", r.weight.to_string()),
        ("degree", r.degree.to_string()),
        ("field_disc", r.field_disc.map_or("unknown".into(), |d| d.to_string())),
        ("coefficients", format!("a_1 .. a_{}", r.coefficient_bound())),
        ("source", fixture.provenance.source.clone()),
    ]);
    Ok(render(&fixture, t))
}

fn run(cli: &Cli) -> Result<Rendered, Failure> {
    match &cli.command {
        Command::Groups { command: GroupsCommand::Verify { algebra, p, k, timings } } => {
            groups_verify(algebra, *p, *k, *timings)
        }
        Command::Ram { p, k, n } => ram(*p, *k, *n),
        Command::Bound { p, kind, degk } => bound(*p, *kind, *degk),
        Command::Height { coeffs } => height(coeffs),
        Command::Scan { label, fixture, pmax } => scan_cmd(cli, label.as_deref(), fixture.as_ref(), *pmax),
        Command::Fetch { label, out } => fetch(cli, label, out.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if n == 0 {
            usage("--jobs must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().expect("thread pool is configured once");
    }
    match run(&cli) {
        Ok(r) => {
            match cli.format {
                Format::Json => println!("{}", r.json),
                Format::Table => print!("{}", r.table),
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", json!({ "error": f.kind, "message": f.message }));
            ExitCode::from(1)
        }
    }
}
