//! `geonet` command-line front end.
//!
//! [`run`] parses arguments, dispatches one subcommand and returns the exit
//! code: 0 on success, 1 when the input fails validation or the command
//! cannot complete, 2 on usage errors. Machine output (JSON, JSON lines, SVG)
//! goes to `out` only on success; diagnostics go to `err`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Number, Value};

use geonet_core::combinatorics::{enumerate_chord_sets, maximal_chord_sets};
use geonet_core::exact::Q;
use geonet_core::format::{network_to_value, read_network};
use geonet_core::network::{invariant_report, is_admissible, Mode, Network};
use geonet_core::render::{render_svg, RenderStyle};
use geonet_core::replacement::{
    all_replacements, certify_no_good_n3, good_network_audit, replacement_feasible,
    replacement_problem, AuditStatus, ReplacementProblem, Witness,
};
use geonet_core::solver::{positive_integer_solutions, solve, system_for_network};
use geonet_core::sweep::{
    c_length_profile, closed_form_minmax, flow_to_cmc, latitude_sweepout, minmax_estimate,
    PolyCurve, SphereConfig,
};

#[derive(Parser, Debug)]
#[command(
    name = "geonet",
    version,
    about = "Stationary geodesic networks on the unit circle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check stationarity and non-crossing; exit 1 when not admissible.
    Validate(ValidateArgs),
    /// Print non-crossing chord sets on N points as JSON lines.
    Enumerate(EnumerateArgs),
    /// Solve the stationarity system for the network's positions and chords.
    Solve(SolveArgs),
    /// Search for a replacement at one vertex.
    Replace(ReplaceArgs),
    /// Bounded audit of iterated replacements.
    Audit(AuditArgs),
    /// Symbolic proof that no three-vertex network is good.
    #[command(name = "certify-n3")]
    CertifyN3,
    /// Min-max of the c-weighted length over latitude caps.
    Sweep(SweepArgs),
    /// Draw a network as SVG.
    Render(RenderArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    #[arg(long)]
    network: PathBuf,
    /// Defaults to exact when every position is exact.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Float tolerance; defaults to 1e-9 · max(1, Σ m_v).
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    allow_adjacent: bool,
    /// Only sets to which no chord can be added.
    #[arg(long)]
    max_only: bool,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long)]
    network: PathBuf,
    /// Treat the network's exterior multiplicities as given.
    #[arg(long)]
    fix_exterior: bool,
    #[arg(long, default_value_t = 20)]
    bound: u64,
}

#[derive(Args, Debug)]
struct ReplaceArgs {
    #[arg(long)]
    network: PathBuf,
    #[arg(long)]
    vertex: usize,
    #[arg(long, default_value_t = 20)]
    bound: u64,
    /// List every replacement instead of the first one.
    #[arg(long)]
    all: bool,
}

#[derive(Args, Debug)]
struct AuditArgs {
    #[arg(long)]
    network: PathBuf,
    #[arg(long)]
    depth: usize,
    #[arg(long)]
    bound: u64,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, allow_hyphen_values = true)]
    c: f64,
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    #[arg(long, default_value_t = 1001)]
    samples: usize,
    /// Also flow the equator to constant geodesic curvature c.
    #[arg(long)]
    flow: bool,
    #[arg(long, default_value_t = 256)]
    points: usize,
    #[arg(long, default_value_t = 100_000)]
    max_iters: usize,
    /// Write the (t, L^c) profile as CSV to this file.
    #[arg(long, value_name = "PATH")]
    emit_csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[arg(long)]
    network: PathBuf,
    #[arg(long, default_value_t = 400)]
    canvas: u32,
    /// Stroke width in pixels per unit of multiplicity.
    #[arg(long, default_value_t = 1.5)]
    stroke: f64,
    #[arg(long)]
    no_labels: bool,
}

enum Failure {
    Usage(String),
    Failed(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Failed(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Failed(m) => m,
        }
    }
}

fn failed(e: impl std::fmt::Display) -> Failure {
    Failure::Failed(e.to_string())
}

fn usage(flag: &str, e: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("invalid value for {flag}: {e}"))
}

fn big(b: &BigInt) -> Value {
    Value::Number(Number::from_str(&b.to_string()).expect("integers are JSON numbers"))
}

fn big_vec(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big).collect())
}

fn rational(q: &Q) -> Value {
    json!([big(q.numer()), big(q.denom())])
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn load(path: &PathBuf) -> Result<Network, Failure> {
    read_network(path).map_err(|e| Failure::Failed(format!("{}: {e}", path.display())))
}

fn problem_value(p: &ReplacementProblem) -> Value {
    let dirs: Vec<Value> = p
        .positions
        .iter()
        .zip(&p.exterior_mults)
        .map(|(pos, m)| {
            let tan_half = match pos.exact_point().map(|e| e.tan_half()) {
                Some(geonet_core::exact::TanHalf::Finite(t)) => rational(&t),
                Some(geonet_core::exact::TanHalf::Infinity) => json!("inf"),
                None => Value::Null,
            };
            json!({ "angle": pos.angle(), "tan_half": tan_half, "m": m })
        })
        .collect();
    json!({ "directions": dirs, "exact": p.is_exact() })
}

fn validate(a: &ValidateArgs) -> Result<String, Failure> {
    let net = load(&a.network)?;
    let mode = match a.mode {
        Some(ModeArg::Exact) => Mode::Exact,
        Some(ModeArg::Float) => Mode::Float,
        None if net.is_exact() => Mode::Exact,
        None => Mode::Float,
    };
    let tol = match a.tol {
        Some(t) if t.is_finite() && t > 0.0 => t,
        Some(t) => return Err(usage("--tol", format!("{t} is not a positive tolerance"))),
        None => net.default_tolerance(),
    };
    let report = is_admissible(&net, mode, tol).map_err(failed)?;
    let value = json!({
        "admissible": report.admissible(),
        "report": report,
        "invariants": invariant_report(&net),
    });
    if report.admissible() {
        Ok(pretty(&value))
    } else {
        Err(Failure::Failed(format!(
            "network is not admissible\n{}",
            pretty(&value)
        )))
    }
}

fn enumerate(a: &EnumerateArgs) -> Result<String, Failure> {
    let sets: Box<dyn Iterator<Item = _>> = if a.max_only {
        Box::new(maximal_chord_sets(a.n, a.allow_adjacent).map_err(|e| usage("--n", e))?)
    } else {
        Box::new(enumerate_chord_sets(a.n, a.allow_adjacent).map_err(|e| usage("--n", e))?)
    };
    let mut out = String::new();
    for s in sets {
        out.push_str(&serde_json::to_string(&s).expect("chord sets serialize"));
        out.push('\n');
    }
    Ok(out)
}

fn solve_cmd(a: &SolveArgs) -> Result<String, Failure> {
    if a.bound == 0 {
        return Err(usage("--bound", "must be at least 1"));
    }
    let net = load(&a.network)?;
    let system = system_for_network(&net, a.fix_exterior).map_err(failed)?;
    let result = solve(&system);
    let solutions = positive_integer_solutions(&result, a.bound);
    let value = json!({
        "unknowns": system.unknown_labels(),
        "rows": system.rows(),
        "rank": result.rank,
        "nullity": result.nullity(),
        "consistent": result.consistent,
        "kernel": result.kernel_basis.iter().map(|k| big_vec(k)).collect::<Vec<_>>(),
        "particular": result.particular.as_ref().map(|p| p.iter().map(rational).collect::<Vec<_>>()),
        "bound": a.bound,
        "solutions": solutions.iter().map(|s| big_vec(s)).collect::<Vec<_>>(),
    });
    Ok(pretty(&value))
}

fn replace(a: &ReplaceArgs) -> Result<String, Failure> {
    if a.bound == 0 {
        return Err(usage("--bound", "must be at least 1"));
    }
    let net = load(&a.network)?;
    if a.vertex >= net.vertex_count() {
        return Err(usage(
            "--vertex",
            format!(
                "{} out of range for {} vertices",
                a.vertex,
                net.vertex_count()
            ),
        ));
    }
    let problem = replacement_problem(&net, a.vertex).map_err(failed)?;
    let mut value =
        json!({ "vertex": a.vertex, "bound": a.bound, "problem": problem_value(&problem) });
    if a.all {
        let all = all_replacements(&problem, a.bound).map_err(failed)?;
        value["replacements"] = Value::Array(all.iter().map(network_to_value).collect());
    } else {
        let found = replacement_feasible(&problem, a.bound).map_err(failed)?;
        value["replacement"] = found.as_ref().map(network_to_value).unwrap_or(Value::Null);
    }
    Ok(pretty(&value))
}

fn chain_value(chain: &[Network]) -> Value {
    Value::Array(chain.iter().map(network_to_value).collect())
}

fn audit(a: &AuditArgs) -> Result<String, Failure> {
    let net = load(&a.network)?;
    let verdict = good_network_audit(&net, a.depth, a.bound).map_err(|e| match e {
        geonet_core::replacement::AuditError::DepthTooLarge(_) => usage("--depth", e),
        geonet_core::replacement::AuditError::BoundOutOfRange(_) => usage("--bound", e),
        _ => failed(e),
    })?;
    let (depth, reason) = match &verdict.status {
        AuditStatus::Good { depth } | AuditStatus::Refuted { depth } => (Some(*depth), None),
        AuditStatus::Inconclusive { reason } => (None, Some(reason.clone())),
    };
    let witness = match &verdict.witness {
        Some(Witness::Chain(chain)) => json!({ "kind": "chain", "chain": chain_value(chain) }),
        Some(Witness::Infeasible {
            chain,
            vertex,
            problem,
        }) => json!({
            "kind": "infeasible",
            "chain": chain_value(chain),
            "vertex": vertex,
            "problem": problem_value(problem),
        }),
        Some(Witness::Symbolic(cert)) => json!({ "kind": "symbolic", "message": cert.message() }),
        None => Value::Null,
    };
    let value = json!({
        "status": verdict.status.to_string(),
        "depth": depth,
        "reason": reason,
        "bound": verdict.bound,
        "witness": witness,
    });
    Ok(pretty(&value))
}

fn certify() -> Result<String, Failure> {
    let verdict = certify_no_good_n3();
    let Some(Witness::Symbolic(cert)) = &verdict.witness else {
        return Err(Failure::Failed("symbolic certificate missing".into()));
    };
    let value = json!({
        "status": verdict.status.to_string(),
        "witness": cert.message(),
        "difference": cert.difference,
        "rationality": cert.rationality,
        "after_v1": cert.after_v1,
        "after_v3": cert.after_v3,
    });
    match verdict.status {
        AuditStatus::Refuted { .. } => Ok(pretty(&value)),
        _ => Err(Failure::Failed(format!(
            "certificate did not close\n{}",
            pretty(&value)
        ))),
    }
}

fn sweep(a: &SweepArgs) -> Result<String, Failure> {
    let cfg = SphereConfig::new(a.radius, a.c).map_err(|e| usage("--c/--radius", e))?;
    let sweepout = latitude_sweepout(a.samples).map_err(|e| usage("--samples", e))?;
    let est = minmax_estimate(&sweepout, &cfg);
    let exact = closed_form_minmax(&cfg);
    let mut value = json!({
        "c": a.c,
        "radius": a.radius,
        "value": est.value,
        "argmax_phi": est.argmax_phi,
        "closed_form": { "value": exact.value, "argmax_phi": exact.argmax_phi },
    });
    if a.flow {
        let start = PolyCurve::latitude(std::f64::consts::FRAC_PI_2, a.points)
            .map_err(|e| usage("--points", e))?;
        let unit = SphereConfig::unit(a.c * a.radius).expect("validated above");
        let res = flow_to_cmc(&start, &unit, None, a.max_iters).map_err(failed)?;
        let r = a.radius;
        let points: Vec<[f64; 3]> = res
            .curve
            .points()
            .iter()
            .map(|p| p.map(|x| x * r))
            .collect();
        value["flow_curve"] = json!({
            "iterations": res.iterations,
            "max_deviation": res.max_deviation / r,
            "length": res.curve.length() * r,
            "points": points,
        });
    }
    if let Some(path) = &a.emit_csv {
        let mut csv = String::from("t,c_length\n");
        for (t, l) in c_length_profile(&sweepout, &cfg) {
            csv.push_str(&format!("{t},{l}\n"));
        }
        fs::write(path, csv).map_err(|e| Failure::Failed(format!("{}: {e}", path.display())))?;
    }
    Ok(pretty(&value))
}

fn render(a: &RenderArgs) -> Result<String, Failure> {
    let style = RenderStyle::new(a.canvas, a.stroke, !a.no_labels)
        .map_err(|e| usage("--canvas/--stroke", e))?;
    let net = load(&a.network)?;
    Ok(render_svg(&net, &style))
}

fn dispatch(cmd: &Command) -> Result<String, Failure> {
    match cmd {
        Command::Validate(a) => validate(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Solve(a) => solve_cmd(a),
        Command::Replace(a) => replace(a),
        Command::Audit(a) => audit(a),
        Command::CertifyN3 => certify(),
        Command::Sweep(a) => sweep(a),
        Command::Render(a) => render(a),
    }
}

/// Runs `geonet` with `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                1
            }
        },
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
