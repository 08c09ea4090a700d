//! `relbat`: exact two-terminal reliability from the command line.
//!
//! Exit codes: 0 success, 1 methods disagree, 2 unreadable or malformed
//! input, 3 invalid network or labeling, 4 infeasible configuration.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use relbat::{
    bounded_bat, brute_force_reliability, classic_bat_directed, classic_bat_undirected,
    find_first_connected, find_last_disconnected, gen_random_network, prob_skipped_after,
    prob_skipped_before, EngineError, Labeling, LabelingError, Method, Mode, Network, NetworkError,
    SolveReport, DEFAULT_CAP,
};
use serde_json::Value;

/// Largest allowed disagreement between methods in `compare`.
const AGREEMENT_TOL: f64 = 1e-12;

#[derive(Parser)]
#[command(
    name = "relbat",
    version,
    about = "Exact two-terminal network reliability"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve with one method and write the JSON report.
    Solve {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "bounded")]
        method: Method,
        /// Accumulation mode (bounded method only).
        #[arg(long)]
        mode: Option<Mode>,
        /// Record elapsed time in the report (otherwise `elapsed_ms` is null).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Run every method within the cap and check that they agree.
    Compare {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Print X_FC, X_LD and the masses skipped outside them.
    Bounds {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Print the labeling, one `u v` line per label.
    Label {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Print the resolved-prefix table of the bounded method.
    Trace {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        mode: Option<Mode>,
        #[command(flatten)]
        output: Output,
    },
    /// Write a seeded random connected network.
    Gen {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        arcs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.05)]
        p_lo: f64,
        #[arg(long, default_value_t = 0.95)]
        p_hi: f64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct Input {
    /// Network file (text or JSON).
    network: PathBuf,
    /// `mincut`, `identity` or `file:PATH`.
    #[arg(long, default_value = "mincut")]
    labeling: LabelingSource,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone)]
enum LabelingSource {
    MinCut,
    Identity,
    File(PathBuf),
}

impl FromStr for LabelingSource {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mincut" => Ok(LabelingSource::MinCut),
            "identity" => Ok(LabelingSource::Identity),
            _ => s
                .strip_prefix("file:")
                .filter(|p| !p.is_empty())
                .map(|p| LabelingSource::File(p.into()))
                .ok_or_else(|| format!("expected mincut, identity or file:PATH, got `{s}`")),
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    fn prefixed(self, path: &Path) -> Self {
        Failure::new(self.code, format!("{}: {}", path.display(), self.message))
    }
}

impl From<NetworkError> for Failure {
    fn from(e: NetworkError) -> Self {
        Failure::new(if e.is_parse_error() { 2 } else { 3 }, e.to_string())
    }
}

impl From<LabelingError> for Failure {
    fn from(e: LabelingError) -> Self {
        let code = if matches!(e, LabelingError::Malformed { .. }) {
            2
        } else {
            3
        };
        Failure::new(code, format!("labeling: {e}"))
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        Failure::new(4, e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))
}

fn load(input: &Input) -> CliResult<(Network, Labeling)> {
    let net = Network::parse(&read(&input.network)?)
        .map_err(|e| Failure::from(e).prefixed(&input.network))?;
    let lab = match &input.labeling {
        LabelingSource::MinCut => Labeling::min_cut(&net),
        LabelingSource::Identity => Labeling::identity(&net),
        LabelingSource::File(path) => {
            Labeling::parse(&read(path)?, &net).map_err(|e| Failure::from(e).prefixed(path))?
        }
    };
    Ok((net, lab))
}

/// Enumeration cap, overridable through `RELBAT_CAP`.
fn cap() -> CliResult<usize> {
    match std::env::var("RELBAT_CAP") {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::new(
                4,
                format!("RELBAT_CAP must be a non-negative integer, got `{v}`"),
            )
        }),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn run_method(net: &Network, lab: &Labeling, method: Method, mode: Mode) -> CliResult<SolveReport> {
    Ok(match method {
        Method::Bounded => bounded_bat(net, lab, mode),
        Method::ClassicUndirected => classic_bat_undirected(net, lab, cap()?)?,
        Method::ClassicDirected => classic_bat_directed(net, cap()?)?,
        Method::Oracle => brute_force_reliability(net, lab, cap()?)?,
    })
}

fn report_json(report: &SolveReport, timing: bool) -> String {
    let mut value = serde_json::to_value(report).expect("reports always serialize");
    if !timing {
        value["elapsed_ms"] = Value::Null;
    }
    let mut text = serde_json::to_string_pretty(&value).expect("values always serialize");
    text.push('\n');
    text
}

fn emit(output: &Output, text: &str) -> CliResult<()> {
    match &output.output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))
        }
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::new(2, format!("stdout: {e}"))),
    }
}

fn warn(report: &SolveReport) {
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
}

/// `Pr x 10^7`, as an integer when it is one.
fn scaled(prob: f64) -> String {
    let s = prob * 1e7;
    let rounded = s.round();
    if (s - rounded).abs() <= 1e-6 * rounded.abs().max(1.0) {
        format!("{rounded:.0}")
    } else {
        format!("{s:.6}")
    }
}

fn trace_table(net: &Network, report: &SolveReport) -> String {
    let m = net.arc_count() as u32;
    let last = 1u64 << m;
    let xfc = report.x_fc.as_ref().expect("bounded reports X_FC");
    let xld = report.x_ld.as_ref().expect("bounded reports X_LD");
    let range = |a: u64, b: u64| {
        if a <= b {
            (a.to_string(), b.to_string())
        } else {
            ("-".into(), "-".into())
        }
    };
    let width = (m as usize).max(4);

    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>4}  {:<width$}  {:>1}  {:>14}  {:>8}  {:>8}",
        "i", "G_i", "C", "R_i", "i1", "i2"
    );
    let (a, b) = range(1, xfc.value());
    let _ = writeln!(
        out,
        "{:>4}  {:<width$}  {:>1}  {:>14}  {:>8}  {:>8}",
        "pre",
        "-",
        "N",
        scaled(report.pre_mass.unwrap_or(0.0)),
        a,
        b
    );
    for (i, row) in report.trace.iter().enumerate() {
        let _ = writeln!(
            out,
            "{:>4}  {:<width$}  {:>1}  {:>14}  {:>8}  {:>8}",
            i + 1,
            row.bits.to_string(),
            if row.is_connected() { "Y" } else { "" },
            scaled(row.prob),
            row.first_index,
            row.last_index
        );
    }
    let (a, b) = range(xld.index() + 1, last);
    let _ = writeln!(
        out,
        "{:>4}  {:<width$}  {:>1}  {:>14}  {:>8}  {:>8}",
        "post",
        "-",
        "Y",
        scaled(report.post_mass.unwrap_or(0.0)),
        a,
        b
    );
    let _ = writeln!(out, "R = {}", report.reliability);
    let _ = writeln!(out, "U = {}", report.u_mass.unwrap_or(f64::NAN));
    out
}

fn compare(net: &Network, lab: &Labeling, timing: bool) -> CliResult<(String, bool)> {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<20} {:<22} {:>10}  {:<9} {:>12}",
        "method", "reliability", "count", "unit", "elapsed_ms"
    );
    let mut values = Vec::new();
    for method in Method::ALL {
        match run_method(net, lab, method, Mode::default()) {
            Ok(report) => {
                warn(&report);
                let (count, unit) = match method {
                    Method::Bounded => (report.counters.prefixes_resolved, "prefixes"),
                    _ => (report.counters.full_vectors_covered, "vectors"),
                };
                let elapsed = if timing {
                    format!("{:.3}", report.elapsed.as_secs_f64() * 1e3)
                } else {
                    "-".to_string()
                };
                let _ = writeln!(
                    out,
                    "{:<20} {:<22} {:>10}  {:<9} {:>12}",
                    method.name(),
                    report.reliability,
                    count,
                    unit,
                    elapsed
                );
                values.push(report.reliability);
            }
            Err(Failure { code: 4, message }) => {
                let _ = writeln!(out, "{:<20} skipped: {message}", method.name());
            }
            Err(f) => return Err(f),
        }
    }
    let spread = values.iter().fold(0.0f64, |acc, &a| {
        values.iter().fold(acc, |acc, &b| acc.max((a - b).abs()))
    });
    let agree = spread <= AGREEMENT_TOL;
    let _ = writeln!(
        out,
        "{}: largest difference {spread:e} (tolerance {AGREEMENT_TOL:e})",
        if agree { "agree" } else { "DISAGREE" }
    );
    Ok((out, agree))
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Solve {
            input,
            method,
            mode,
            timing,
            output,
        } => {
            if mode.is_some() && method != Method::Bounded {
                return Err(Failure::new(
                    4,
                    format!("--mode only applies to the bounded method, not {method}"),
                ));
            }
            let (net, lab) = load(&input)?;
            let report = run_method(&net, &lab, method, mode.unwrap_or_default())?;
            warn(&report);
            emit(&output, &report_json(&report, timing))?;
        }
        Command::Compare {
            input,
            timing,
            output,
        } => {
            let (net, lab) = load(&input)?;
            let (table, agree) = compare(&net, &lab, timing)?;
            emit(&output, &table)?;
            if !agree {
                eprintln!("error: methods disagree");
                return Ok(1);
            }
        }
        Command::Bounds { input, output } => {
            let (net, lab) = load(&input)?;
            let xfc = find_first_connected(&net, &lab);
            let xld = find_last_disconnected(&net, &lab);
            let text = format!(
                "X_FC {xfc} {}\nX_LD {xld} {}\npre_mass {}\npost_mass {}\n",
                xfc.value(),
                xld.value(),
                prob_skipped_before(&net, &lab, &xfc),
                prob_skipped_after(&net, &lab, &xld),
            );
            emit(&output, &text)?;
        }
        Command::Label { input, output } => {
            let (net, lab) = load(&input)?;
            emit(&output, &lab.to_text(&net))?;
        }
        Command::Trace {
            input,
            mode,
            output,
        } => {
            let (net, lab) = load(&input)?;
            let report = bounded_bat(&net, &lab, mode.unwrap_or_default());
            warn(&report);
            emit(&output, &trace_table(&net, &report))?;
        }
        Command::Gen {
            nodes,
            arcs,
            seed,
            p_lo,
            p_hi,
            output,
        } => {
            let net = gen_random_network(nodes, arcs, seed, (p_lo, p_hi))
                .map_err(|e| Failure::new(4, e.to_string()))?;
            emit(&output, &net.to_text())?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
