mod render;
mod text;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use monoheight::bakerkit::{baker_bound, tower_from_inputs};
use monoheight::heightkit::{
    arithmetic_degree_estimate, canonical_height_closed, canonical_height_truncated, classify_orbit, log_profile,
    weil_height, Normalization, Normalizer, PointGm, DEFAULT_ORBIT_BUDGET,
};
use monoheight::jordankit::{basis_from_profile, jordan_profile, limit_from_profile};
use monoheight::matkit::IntMatrix;
use monoheight::syskit::{system_report, ReportOptions, SystemF};
use monoheight::MonoError;
use serde_json::{json, Value};

use render::Fmt;

const SCHEMA: &str = "monoheight/1";

#[derive(Parser)]
#[command(name = "monoheight", version, about = "Heights and dynamical degrees of monomial maps on the torus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Clone)]
struct Opts {
    /// Maximal word length or iteration count.
    #[arg(long, global = true, default_value_t = 12)]
    n_max: usize,
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,
    /// Working precision in bits.
    #[arg(long, global = true, env = "MONOHEIGHT_PRECISION", default_value_t = 128)]
    precision: u32,
    #[arg(long, global = true, default_value_t = 1_000_000)]
    word_budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral and Jordan data of a matrix.
    Analyze {
        #[arg(long)]
        matrix: String,
    },
    /// Weil height and place decomposition of a point.
    Height {
        #[arg(long)]
        point: String,
    },
    /// Closed-form and truncated canonical heights for one map.
    CanonicalHeight {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        point: String,
    },
    /// Growth, dominating-map certificate and heights for a finite system of maps.
    System {
        #[arg(long)]
        system: String,
        #[arg(long)]
        point: String,
    },
    /// Explicit lower-bound constant for the canonical height.
    BakerBound {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        point: String,
        /// Constant of the tower-shaped closed form.
        #[arg(long, default_value_t = 1.0)]
        c1: f64,
    },
    /// Finite or infinite orbit.
    Classify {
        #[arg(long, conflicts_with = "system", required_unless_present = "system")]
        matrix: Option<String>,
        #[arg(long)]
        system: Option<String>,
        #[arg(long)]
        point: String,
    },
}

fn exit_code(e: &MonoError) -> u8 {
    match e {
        MonoError::Domain(_) | MonoError::Parse(_) | MonoError::DimensionMismatch { .. } => 2,
        MonoError::Unsupported(_) | MonoError::IndistinguishableModuli { .. } => 3,
        MonoError::Budget(_) => 4,
    }
}

/// A file path, or an inline JSON literal.
fn read_json(arg: &str) -> Result<Value, MonoError> {
    let t = arg.trim_start();
    let body = if t.starts_with('{') || t.starts_with('[') {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg)).map_err(|e| MonoError::Parse(format!("cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&body).map_err(|e| MonoError::Parse(format!("invalid JSON in {arg}: {e}")))
}

fn read_matrix(arg: &str) -> Result<IntMatrix, MonoError> {
    let v = read_json(arg)?;
    match &v {
        // a bare array of rows is accepted as well
        Value::Array(_) => IntMatrix::from_json(&json!({ "rows": v })),
        _ => IntMatrix::from_json(&v),
    }
}

fn read_system(arg: &str) -> Result<SystemF, MonoError> {
    SystemF::from_json(&read_json(arg)?)
}

fn check_opts(o: &Opts) -> Result<(), MonoError> {
    if o.n_max == 0 || o.n_max > 1000 {
        return Err(MonoError::domain("--n-max must be in 1..=1000"));
    }
    if !(o.tol > 0.0 && o.tol < 1.0) {
        return Err(MonoError::domain("--tol must be in (0, 1)"));
    }
    if !(32..=8192).contains(&o.precision) {
        return Err(MonoError::domain("--precision must be in 32..=8192"));
    }
    if o.word_budget == 0 {
        return Err(MonoError::domain("--word-budget must be positive"));
    }
    Ok(())
}

fn run(cmd: &Command, o: &Opts) -> Result<(&'static str, Value), MonoError> {
    check_opts(o)?;
    let f = Fmt::new(o.precision);
    let prec = o.precision;
    match cmd {
        Command::Analyze { matrix } => {
            let a = read_matrix(matrix)?;
            let p = jordan_profile(&a)?;
            let mut v = render::profile(&p, &f);
            v["matrix"] = a.to_json();
            v["limit_matrix"] = match limit_from_profile(&a, &p, o.tol) {
                Ok(b) => render::limit(&b, &f),
                Err(e) => json!({ "error": e.to_string() }),
            };
            v["jordan_basis"] = match basis_from_profile(&a, &p) {
                Ok(d) => render::basis(&d, prec, &f),
                Err(e) => json!({ "error": e.to_string() }),
            };
            Ok(("analyze", v))
        }
        Command::Height { point } => {
            let p = PointGm::parse(point)?;
            let prof = log_profile(&p)?;
            let h = weil_height(&prof);
            Ok((
                "height",
                json!({
                    "point": render::point(&p),
                    "weil_height": { "exact": h.to_string(), "value": f.real(&h.to_interval(prec)) },
                    "profile": render::log_profile(&prof),
                }),
            ))
        }
        Command::CanonicalHeight { matrix, point } => {
            let a = read_matrix(matrix)?;
            let p = PointGm::parse(point)?;
            let closed = canonical_height_closed(&a, &p, o.tol)?;
            let norm = Normalizer::single_map(&a)?;
            let maps = std::slice::from_ref(&a);
            let n = o.n_max;
            let avg = canonical_height_truncated(maps, &p, n, Normalization::Averaged, &norm, o.word_budget)?;
            let sum = canonical_height_truncated(maps, &p, n, Normalization::Summed, &norm, o.word_budget)?;
            let deg = arithmetic_degree_estimate(maps, &p, n, o.word_budget)?;
            Ok((
                "canonical-height",
                json!({
                    "matrix": a.to_json(),
                    "point": render::point(&p),
                    "canonical_height": render::canonical(&closed, &f),
                    "limit_matrix": render::limit(&closed.limit, &f),
                    "truncated": { "averaged": render::truncated(&avg, &f), "summed": render::truncated(&sum, &f) },
                    "arithmetic_degree": render::arithmetic_degree(&deg, &f),
                }),
            ))
        }
        Command::System { system, point } => {
            let sys = read_system(system)?;
            let p = PointGm::parse(point)?;
            if p.dim() != sys.dim() {
                return Err(MonoError::DimensionMismatch { expected: sys.dim(), found: p.dim() });
            }
            if sys.max_levels(1, o.word_budget) == 0 {
                return Err(MonoError::budget("the word budget does not cover words of length 1"));
            }
            let opts = ReportOptions {
                n_max: o.n_max,
                word_budget: o.word_budget,
                tol: o.tol,
                orbit_budget: DEFAULT_ORBIT_BUDGET,
            };
            let r = system_report(&sys, &p, &opts);
            let mut v = render::system(&r, &f);
            v["system"] = sys.to_json();
            v["point"] = render::point(&p);
            Ok(("system", v))
        }
        Command::BakerBound { matrix, point, c1 } => {
            let a = read_matrix(matrix)?;
            let p = PointGm::parse(point)?;
            let b = baker_bound(&a, &p, prec)?;
            let tower = tower_from_inputs(&b.inputs, *c1)?;
            let mut v = render::baker(&b, Some((&tower, *c1)), &f);
            v["matrix"] = a.to_json();
            v["point"] = render::point(&p);
            Ok(("baker-bound", v))
        }
        Command::Classify { matrix, system, point } => {
            let sys = match (matrix, system) {
                (Some(m), _) => SystemF::single(read_matrix(m)?),
                (None, Some(s)) => read_system(s)?,
                (None, None) => return Err(MonoError::Parse("--matrix or --system is required".into())),
            };
            let p = PointGm::parse(point)?;
            let verdict = classify_orbit(sys.matrices(), &p, DEFAULT_ORBIT_BUDGET)?;
            Ok(("classify", json!({ "system": sys.to_json(), "point": render::point(&p), "orbit": render::orbit(&verdict) })))
        }
    }
}

fn emit(v: &Value, format: Format) {
    let body = match format {
        Format::Json => serde_json::to_string_pretty(v).expect("serializable") + "\n",
        Format::Text => text::render(v),
    };
    // a closed pipe downstream is not an error of ours
    let _ = std::io::stdout().write_all(body.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let o = &cli.opts;
    match run(&cli.command, o) {
        Ok((name, mut v)) => {
            v["schema"] = json!(SCHEMA);
            v["command"] = json!(name);
            v["precision"] = json!(o.precision);
            emit(&v, o.format);
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = exit_code(&e);
            let v = json!({
                "schema": SCHEMA,
                "error": { "kind": e.kind(), "message": e.to_string(), "exit_code": code },
            });
            emit(&v, o.format);
            eprintln!("monoheight: {e}");
            ExitCode::from(code)
        }
    }
}
