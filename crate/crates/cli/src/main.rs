mod point;

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value as Json};
use simplex_gauss::analysis::{
    best_approx_verify, conjecture_harness, gamma_rates, lyapunov_estimate_windowed, run_suite_named, GammaValue,
    SuiteParams, VerificationReport,
};
use simplex_gauss::cf1d::cf_expand;
use simplex_gauss::exactnum::expr::{parse_int_list, parse_interval};
use simplex_gauss::exactnum::{Rounding, Scalar};
use simplex_gauss::gaussnd::{
    approx_simplexes, check_nesting, monkemeyer_matrices, orbit, parse_symbols, Orbit, OrbitStatus, Symbol,
};
use simplex_gauss::projective::ProjPoint;
use simplex_gauss::Error;

use point::{parse_point, parse_value, FieldArgs, FieldInfo};

const SCHEMA_VERSION: u32 = 1;
const DIGITS_VAR: &str = "SIMPLEX_GAUSS_DIGITS";
const DEFAULT_DIGITS: usize = 6;

#[derive(Debug, Parser)]
#[command(name = "simplex-gauss", version, about = "Exact Gauss, Farey and Mönkemeyer maps on simplexes")]
struct Cli {
    /// Decimal digits in renderings (overrides SIMPLEX_GAUSS_DIGITS, default 6).
    #[arg(long, global = true)]
    digits: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct PointArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Number of affine coordinates; `dim + 1` values are read as homogeneous.
    #[arg(long)]
    dim: Option<usize>,
    /// Coordinates: rationals "p/q" or polynomials in `a`.
    #[arg(required = true)]
    coords: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Continued-fraction expansion of a number in [0, 1].
    Cf {
        #[command(flatten)]
        field: FieldArgs,
        value: String,
        #[arg(long, default_value_t = 100)]
        max_terms: usize,
    },
    /// Orbit dump under the return map.
    Orbit {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = 100)]
        max_steps: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Comma-separated symbols the itinerary must start with.
        #[arg(long)]
        expect_itinerary: Option<String>,
    },
    /// Symbolic itinerary only.
    Itinerary {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = 100)]
        max_steps: usize,
        #[arg(long)]
        expect_itinerary: Option<String>,
    },
    /// Approximating simplexes of a symbol prefix.
    Approx {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Comma-separated symbols, e.g. "A2,B3".
        #[arg(long)]
        prefix: String,
        /// Also scan the last simplex for lattice points with coordinates up to this bound.
        #[arg(long)]
        scan_bound: Option<i64>,
    },
    /// Approximation exponents of a planar point.
    Gamma {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        /// Write the CSV table here.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Finite-N Lyapunov estimate (2/N) log q_N.
    Lyapunov {
        #[command(flatten)]
        field: FieldArgs,
        value: String,
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = simplex_gauss::analysis::lyapunov::DEFAULT_WINDOW)]
        window: usize,
    },
    /// Run a verification suite or an evidence harness.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, conflicts_with = "harness", required_unless_present = "harness")]
    suite: Option<String>,
    /// Evidence harness; its candidates never fail the run.
    #[arg(long)]
    harness: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    bound: Option<i64>,
    #[arg(long)]
    max_den: Option<i64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Quadratic minimal polynomial, ascending, e.g. "-1,2,1".
    #[arg(long, allow_hyphen_values = true)]
    quad: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    root_interval: Option<String>,
}

/// Failure modes mapped onto exit codes.
enum Failure {
    Input(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CorruptSimplex(_) | Error::StateCapExceeded(_) | Error::Overflow | Error::SingularMatrix => {
                Failure::Compute(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

/// What a command prints and whether its checks held.
struct Outcome {
    payload: Option<Json>,
    raw: Option<String>,
    ok: bool,
}

impl Outcome {
    fn json(payload: impl Serialize, ok: bool) -> CmdResult {
        let payload = serde_json::to_value(payload).map_err(|e| Failure::Compute(e.to_string()))?;
        Ok(Outcome { payload: Some(payload), raw: None, ok })
    }
}

fn digits(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(d) = flag {
        return Ok(d);
    }
    match std::env::var(DIGITS_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Input(format!("{DIGITS_VAR}={v:?} is not a digit count"))),
        Err(_) => Ok(DEFAULT_DIGITS),
    }
}

fn expected(word: &Option<String>, dim: usize) -> Result<Option<Vec<Symbol>>, Failure> {
    let Some(symbols) = word.as_deref().map(parse_symbols).transpose()? else { return Ok(None) };
    if let Some(bad) = symbols.iter().find(|s| s.family.0 as usize >= dim) {
        return Err(Failure::Input(format!("symbol {bad} does not exist in dimension {dim}")));
    }
    Ok(Some(symbols))
}

fn word_text(symbols: &[Symbol]) -> String {
    symbols.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn itinerary_matches(actual: &[Symbol], want: &Option<Vec<Symbol>>) -> Option<bool> {
    want.as_ref().map(|w| actual.starts_with(w))
}

#[derive(Serialize)]
struct StepRecord {
    step: usize,
    symbol: Option<String>,
    boundary: bool,
    exact: Vec<String>,
    decimal: Vec<String>,
}

fn records<S: Scalar>(o: &Orbit<S>, digits: usize) -> Result<Vec<StepRecord>, Failure> {
    o.states
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let decimal = p
                .affine()?
                .iter()
                .map(|x| x.render(digits, Rounding::Floor))
                .collect::<simplex_gauss::Result<Vec<_>>>()?;
            Ok(StepRecord {
                step: i,
                symbol: o.itinerary.symbols.get(i).map(ToString::to_string),
                boundary: o.boundary.get(i).copied().unwrap_or(false),
                exact: p.coords().iter().map(Scalar::exact_string).collect(),
                decimal,
            })
        })
        .collect()
}

fn status_text(s: &OrbitStatus) -> String {
    match s {
        OrbitStatus::Ongoing => "ongoing".into(),
        OrbitStatus::ReachedZero => "reached_zero".into(),
        OrbitStatus::Periodic { preperiod, period } => format!("periodic,preperiod={preperiod},period={period}"),
    }
}

fn orbit_csv(recs: &[StepRecord], dim: usize, status: &OrbitStatus) -> String {
    let mut out = String::from("step,symbol,boundary");
    for i in 1..=dim + 1 {
        let _ = write!(out, ",exact{i}");
    }
    for i in 1..=dim {
        let _ = write!(out, ",decimal{i}");
    }
    out.push('\n');
    for r in recs {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.step,
            r.symbol.as_deref().unwrap_or(""),
            r.boundary,
            r.exact.join(","),
            r.decimal.join(",")
        );
    }
    let _ = writeln!(out, "# status={}", status_text(status));
    out
}

fn orbit_of<S: Scalar>(p: &ProjPoint<S>, max_steps: usize) -> Result<Orbit<S>, Failure> {
    let sys = monkemeyer_matrices(p.dim())?;
    Ok(orbit(&sys, p, max_steps)?)
}

fn cmd_cf(field: &FieldArgs, value: &str, max_terms: usize) -> CmdResult {
    let v = parse_value(value, field)?;
    let cf = with_value!(&v, x => cf_expand(x, max_terms))?;
    Outcome::json(cf, true)
}

fn cmd_orbit(
    pa: &PointArgs,
    max_steps: usize,
    format: Format,
    expect: &Option<String>,
    digits: usize,
) -> CmdResult {
    let p = parse_point(&pa.coords, pa.dim, &pa.field)?;
    let dim = p.dim();
    let want = expected(expect, dim)?;
    let field: Option<FieldInfo> = p.field().cloned();
    let (recs, itin) = with_point!(&p, q => {
        let o = orbit_of(q, max_steps)?;
        (records(&o, digits)?, o.itinerary)
    });
    let matched = itinerary_matches(&itin.symbols, &want);
    let ok = matched != Some(false);
    if let Some(false) = matched {
        eprintln!("itinerary mismatch: got {}", word_text(&itin.symbols));
    }
    match format {
        Format::Csv => Ok(Outcome { payload: None, raw: Some(orbit_csv(&recs, dim, &itin.status)), ok }),
        Format::Json => {
            let mut payload = json!({
                "dim": dim,
                "field": field,
                "digits": digits,
                "records": recs,
                "itinerary": word_text(&itin.symbols),
            });
            let status = serde_json::to_value(itin.status).map_err(|e| Failure::Compute(e.to_string()))?;
            merge(&mut payload, status);
            if let Some(m) = matched {
                payload["expectation_met"] = json!(m);
            }
            Outcome::json(payload, ok)
        }
    }
}

fn merge(target: &mut Json, extra: Json) {
    if let (Json::Object(t), Json::Object(e)) = (target, extra) {
        t.extend(e);
    }
}

fn cmd_itinerary(pa: &PointArgs, max_steps: usize, expect: &Option<String>) -> CmdResult {
    let p = parse_point(&pa.coords, pa.dim, &pa.field)?;
    let want = expected(expect, p.dim())?;
    let itin = with_point!(&p, q => orbit_of(q, max_steps)?.itinerary);
    let matched = itinerary_matches(&itin.symbols, &want);
    if let Some(false) = matched {
        eprintln!("itinerary mismatch: got {}", word_text(&itin.symbols));
    }
    let mut payload = json!({ "dim": p.dim(), "itinerary": word_text(&itin.symbols), "length": itin.symbols.len() });
    merge(&mut payload, serde_json::to_value(itin.status).map_err(|e| Failure::Compute(e.to_string()))?);
    if let Some(m) = matched {
        payload["expectation_met"] = json!(m);
    }
    Outcome::json(payload, matched != Some(false))
}

fn cmd_approx(dim: usize, prefix: &str, scan_bound: Option<i64>) -> CmdResult {
    let sys = monkemeyer_matrices(dim)?;
    let word = parse_symbols(prefix)?;
    let simplexes = approx_simplexes(&sys, &word)?;
    let nested = check_nesting(&sys, &simplexes)?;
    let listed: Vec<Json> = simplexes
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let cols: Vec<Vec<String>> =
                s.matrix().columns().iter().map(|c| c.iter().map(ToString::to_string).collect()).collect();
            json!({ "n": i + 1, "columns": cols, "det": s.det().to_string() })
        })
        .collect();
    let scan: Option<VerificationReport> = match (scan_bound, simplexes.last()) {
        (Some(b), Some(last)) => Some(best_approx_verify(last.matrix(), b)?),
        _ => None,
    };
    let ok = nested && scan.as_ref().is_none_or(VerificationReport::passed);
    Outcome::json(json!({ "dim": dim, "prefix": word_text(&word), "nested": nested, "simplexes": listed, "scan": scan }), ok)
}

fn gamma_summary(table: &simplex_gauss::analysis::RateTable) -> Vec<Json> {
    (0..3)
        .map(|i| {
            let (lo, hi) = table
                .column_range(i)
                .map(|(a, b)| (a.text().to_string(), b.text().to_string()))
                .unwrap_or_default();
            json!({ "column": format!("gamma{}", i + 1), "min": lo, "max": hi })
        })
        .collect()
}

fn cmd_gamma(pa: &PointArgs, steps: usize, out: &Option<std::path::PathBuf>, format: Format) -> CmdResult {
    let p = parse_point(&pa.coords, pa.dim, &pa.field)?;
    if p.dim() != 2 {
        return Err(Failure::Input(format!("gamma needs a planar point, got dimension {}", p.dim())));
    }
    let sys = monkemeyer_matrices(2)?;
    let table = with_point!(&p, q => gamma_rates(&sys, q, steps))?;
    let csv = table.to_csv();
    if let Some(path) = out {
        std::fs::write(path, &csv).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    let summary = gamma_summary(&table);
    match format {
        Format::Csv => {
            for s in &summary {
                eprintln!("{}: min {} max {}", s["column"], s["min"], s["max"]);
            }
            Ok(Outcome { payload: None, raw: Some(csv), ok: true })
        }
        Format::Json => {
            let rows: Vec<Json> = table
                .rows
                .iter()
                .map(|r| {
                    let g: Vec<&str> = r.gamma.iter().map(GammaValue::text).collect();
                    json!({ "n": r.n, "gamma1": g[0], "gamma2": g[1], "gamma3": g[2] })
                })
                .collect();
            Outcome::json(
                json!({
                    "steps": steps,
                    "digits": table.digits,
                    "itinerary": word_text(&table.symbols),
                    "summary": summary,
                    "rows": rows,
                    "out": out.as_ref().map(|p| p.display().to_string()),
                }),
                true,
            )
        }
    }
}

fn cmd_lyapunov(field: &FieldArgs, value: &str, n: usize, window: usize) -> CmdResult {
    let v = parse_value(value, field)?;
    let est = with_value!(&v, x => lyapunov_estimate_windowed(x, n, window))?;
    Outcome::json(est, true)
}

fn cmd_verify(a: &VerifyArgs) -> CmdResult {
    let params = SuiteParams {
        seed: a.seed,
        samples: a.samples,
        dim: a.dim,
        n: a.n,
        bound: a.bound,
        max_den: a.max_den,
        steps: a.steps,
        quad: a.quad.as_deref().map(parse_int_list).transpose()?,
        root_interval: a.root_interval.as_deref().map(parse_interval).transpose()?,
    };
    match (&a.suite, &a.harness) {
        (Some(s), _) => {
            let report = run_suite_named(s, &params)?;
            let ok = report.passed();
            Outcome::json(report, ok)
        }
        // evidence harnesses report candidates, they never fail the run
        (None, Some(h)) => Outcome::json(conjecture_harness(h, &params)?, true),
        (None, None) => Err(Failure::Input("one of --suite or --harness is required".into())),
    }
}

fn run(cli: &Cli) -> CmdResult {
    let digits = digits(cli.digits)?;
    match &cli.command {
        Command::Cf { field, value, max_terms } => cmd_cf(field, value, *max_terms),
        Command::Orbit { point, max_steps, format, expect_itinerary } => {
            cmd_orbit(point, *max_steps, *format, expect_itinerary, digits)
        }
        Command::Itinerary { point, max_steps, expect_itinerary } => cmd_itinerary(point, *max_steps, expect_itinerary),
        Command::Approx { dim, prefix, scan_bound } => cmd_approx(*dim, prefix, *scan_bound),
        Command::Gamma { point, steps, out, format } => cmd_gamma(point, *steps, out, *format),
        Command::Lyapunov { field, value, n, window } => cmd_lyapunov(field, value, *n, *window),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Cf { .. } => "cf",
        Command::Orbit { .. } => "orbit",
        Command::Itinerary { .. } => "itinerary",
        Command::Approx { .. } => "approx",
        Command::Gamma { .. } => "gamma",
        Command::Lyapunov { .. } => "lyapunov",
        Command::Verify(_) => "verify",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    match result {
        Ok(out) => {
            if let Some(raw) = out.raw {
                print!("{raw}");
            }
            if let Some(payload) = out.payload {
                let args: Vec<String> = std::env::args().skip(1).collect();
                let envelope = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": { "name": command_name(&cli.command), "args": args },
                    "payload": payload,
                    "timing": { "wall_ms": (wall_ms * 1e3).round() / 1e3 },
                });
                println!("{}", serde_json::to_string_pretty(&envelope).expect("json values serialize"));
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
