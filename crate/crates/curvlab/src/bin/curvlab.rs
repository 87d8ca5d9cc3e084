use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use curvlab::certificate::{alpha0_certificate, Mode, Verdict};
use curvlab::curvature::{weyl_part, CurvatureOperator};
use curvlab::flow::{run_flow, write_trajectory_csv, FlowOptions};
use curvlab::io::{self, Format};
use curvlab::models::{w_cp2, ModelSpec};
use curvlab::spectral::{decomposition_dims, eigen_report, hessian_matrix, weyl_basis};
use curvlab::suite::{run_suite, SuiteConfig};
use curvlab::{sample, shi, Error};

const EXIT_FAILURES: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "curvlab", version, about = "Curvature operator checks on so(n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Dimensions: a list "4,5,6" or a range "4..12"
    #[arg(long, value_parser = parse_dims)]
    dim: Option<Dims>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Override every numerical tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Worker threads
    #[arg(long, env = "CURVLAB_JOBS")]
    jobs: Option<usize>,
    /// Output file, stdout when omitted or "-"
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite
    Verify {
        #[command(flatten)]
        common: Common,
        /// Random samples per randomized check
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Evaluate the small-margin certificate in dimension 10 or 11
    Certify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
    },
    /// Print one of the reference tables
    Tables {
        #[arg(value_enum)]
        table: TableKind,
        #[command(flatten)]
        common: Common,
    },
    /// Integrate the normalized potential flow from a model or a random Weyl operator
    Flow {
        #[command(flatten)]
        common: Common,
        /// ModelSpec JSON file; its Weyl part is the initial value
        #[arg(long, conflicts_with = "input")]
        model: Option<PathBuf>,
        /// Operator as a JSON envelope or headerless CSV matrix
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long, default_value_t = 200_000)]
        max_steps: usize,
        #[arg(long, default_value_t = 10)]
        record_every: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Quoted,
    Recomputed,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Shi,
    Dimensions,
    Hessian,
}

#[derive(Clone, Debug)]
struct Dims(Vec<usize>);

fn parse_dims(s: &str) -> Result<Dims, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad dimension {t:?}: {e}"));
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        if a > b {
            return Err(format!("empty range {s}"));
        }
        return Ok(Dims((a..=b).collect()));
    }
    s.split(',').map(num).collect::<Result<Vec<_>, _>>().map(Dims)
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Json(_) | Error::Csv(_) => Failure::Io(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILURES),
        Err(Failure::Usage(msg)) => {
            eprintln!("curvlab: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("curvlab: {msg}");
            ExitCode::from(EXIT_IO)
        }
    }
}

/// Returns whether everything checked out.
fn run(command: Command) -> Result<bool, Failure> {
    match command {
        Command::Verify { common, samples } => verify(&common, samples),
        Command::Certify { common, mode } => certify(&common, mode),
        Command::Tables { table, common } => tables(&common, table),
        Command::Flow { common, model, input, dt, max_steps, record_every } => {
            flow(&common, model.as_deref(), input.as_deref(), dt, max_steps, record_every)
        }
    }
}

fn emit(common: &Common, text: &str) -> Result<(), Failure> {
    io::write_output(common.out.as_deref(), text).map_err(|e| Failure::Io(e.to_string()))
}

fn single_dim(common: &Common, default: usize) -> Result<usize, Failure> {
    match &common.dim {
        None => Ok(default),
        Some(Dims(d)) if d.len() == 1 => Ok(d[0]),
        Some(_) => Err(Failure::Usage("this command takes a single --dim".into())),
    }
}

fn verify(common: &Common, samples: usize) -> Result<bool, Failure> {
    let mut config = SuiteConfig { seed: common.seed, tol: common.tol, jobs: common.jobs, samples, ..Default::default() };
    if let Some(Dims(d)) = &common.dim {
        config.dims = d.clone();
    }
    let report = run_suite(&config)?;
    let text = match common.format.unwrap_or(Format::Markdown) {
        Format::Json => io::to_json("verify", &report)?,
        Format::Markdown => report.to_markdown(),
        Format::Csv => report.to_csv()?,
    };
    emit(common, &text)?;
    let s = report.summary;
    eprintln!("{} pass, {} flag, {} fail in {:.1}s", s.pass, s.flag, s.fail, report.runtime_seconds);
    Ok(!report.has_failures())
}

fn certify(common: &Common, mode: ModeArg) -> Result<bool, Failure> {
    let n = single_dim(common, 11)?;
    let modes = match mode {
        ModeArg::Quoted => vec![Mode::PaperConstants],
        ModeArg::Recomputed => vec![Mode::Recomputed],
        ModeArg::Both => vec![Mode::PaperConstants, Mode::Recomputed],
    };
    let certs = modes.into_iter().map(|m| alpha0_certificate(n, m)).collect::<curvlab::Result<Vec<_>>>()?;
    let text = match common.format.unwrap_or(Format::Json) {
        Format::Json => io::to_json("certificate", &certs)?,
        Format::Markdown => {
            let mut out = String::from("| mode | G | C | r | lhs | rhs | margin | verdict |\n|---|---|---|---|---|---|---|---|\n");
            for c in &certs {
                out.push_str(&format!(
                    "| {:?} | {:.7} | {:.2} | {:.4e} | {:.4e} | {:.4e} | {:.4e} | {:?} |\n",
                    c.mode, c.g_used, c.c_used, c.r, c.lhs_bound, c.rhs_bound, c.alpha0_margin, c.verdict
                ));
            }
            out
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for c in &certs {
                w.serialize(CertRow::from(c)).map_err(Error::from)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::Io(e.to_string()))?)
                .map_err(|e| Failure::Io(e.to_string()))?
        }
    };
    emit(common, &text)?;
    Ok(certs.iter().all(|c| c.verdict != Verdict::Inconclusive && c.identity_defect < 1e-12))
}

#[derive(Serialize)]
struct CertRow {
    n: usize,
    mode: Mode,
    g: f64,
    c: f64,
    r: f64,
    lhs: f64,
    rhs: f64,
    margin: f64,
    verdict: Verdict,
}

impl From<&curvlab::certificate::Certificate> for CertRow {
    fn from(c: &curvlab::certificate::Certificate) -> Self {
        CertRow {
            n: c.n,
            mode: c.mode,
            g: c.g_used,
            c: c.c_used,
            r: c.r,
            lhs: c.lhs_bound,
            rhs: c.rhs_bound,
            margin: c.alpha0_margin,
            verdict: c.verdict,
        }
    }
}

fn tables(common: &Common, table: TableKind) -> Result<bool, Failure> {
    let format = common.format.unwrap_or(Format::Markdown);
    let text = match table {
        TableKind::Shi => {
            let cells = shi::table_cells();
            match format {
                Format::Json => io::to_json("shi-table", &cells)?,
                Format::Markdown => io::shi_table_markdown(&cells),
                Format::Csv => io::shi_table_csv(&cells)?,
            }
        }
        TableKind::Dimensions => {
            let n = single_dim(common, 9)?;
            let tables = (3..=n.saturating_sub(3))
                .map(|k| decomposition_dims(n, k))
                .collect::<curvlab::Result<Vec<_>>>()?;
            if tables.is_empty() {
                return Err(Failure::Usage(format!("dimension tables need n >= 6, got {n}")));
            }
            match format {
                Format::Json => io::to_json("dimension-table", &tables)?,
                Format::Markdown => {
                    let mut out = String::from("| k | space | formula | numeric |\n|---|---|---|---|\n");
                    for t in &tables {
                        for e in &t.entries {
                            out.push_str(&format!("| {} | {} | {} | {} |\n", t.k, e.name, e.formula, e.numeric));
                        }
                    }
                    out
                }
                Format::Csv => {
                    let mut out = String::from("k,space,formula,numeric\n");
                    for t in &tables {
                        for e in &t.entries {
                            out.push_str(&format!("{},{},{},{}\n", t.k, e.name, e.formula, e.numeric));
                        }
                    }
                    out
                }
            }
        }
        TableKind::Hessian => {
            let n = single_dim(common, 11)?;
            let basis = weyl_basis(n)?;
            let h = hessian_matrix(&w_cp2(n)?, &basis)?;
            let report = eigen_report(&h, common.tol.unwrap_or(1e-8))?;
            match format {
                Format::Json => io::to_json("hessian-spectrum", &report)?,
                Format::Markdown => io::clusters_markdown(&report),
                Format::Csv => io::clusters_csv(&report)?,
            }
        }
    };
    emit(common, &text)?;
    Ok(true)
}

fn load_operator(path: &Path) -> Result<CurvatureOperator, Failure> {
    let file = std::fs::File::open(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let op = if path.extension().is_some_and(|e| e == "csv") {
        let m = io::read_matrix_csv(file)?;
        let n = io::dim_for_size(m.nrows())?;
        CurvatureOperator::new(n, m)?
    } else {
        CurvatureOperator::from_symmetric(io::read_operator_json(file)?)?
    };
    Ok(op)
}

#[derive(Serialize)]
struct FlowSummary<'a> {
    dim: usize,
    steps: usize,
    converged: bool,
    residual: f64,
    terminal_potential: f64,
    max_decrease: f64,
    trajectory: &'a [curvlab::flow::TrajectoryPoint],
}

fn flow(
    common: &Common,
    model: Option<&Path>,
    input: Option<&Path>,
    dt: Option<f64>,
    max_steps: usize,
    record_every: usize,
) -> Result<bool, Failure> {
    let start = if let Some(path) = model {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        let spec: ModelSpec = serde_json::from_str(&text).map_err(|e| Failure::Usage(e.to_string()))?;
        weyl_part(&spec.build()?)?
    } else if let Some(path) = input {
        weyl_part(&load_operator(path)?)?
    } else {
        let n = single_dim(common, 5)?;
        if n < 4 {
            return Err(Failure::Usage(format!("the flow needs n >= 4, got {n}")));
        }
        sample::unit_weyl(&mut sample::rng(common.seed), n)
    };
    let options = FlowOptions { dt, max_steps, residual_tol: common.tol.unwrap_or(1e-8), record_every };
    let out = run_flow(&start, &options)?;
    let text = match common.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut buf = Vec::new();
            write_trajectory_csv(&out.trajectory, &mut buf)?;
            String::from_utf8(buf).map_err(|e| Failure::Io(e.to_string()))?
        }
        Format::Json => io::to_json(
            "flow",
            &FlowSummary {
                dim: start.dim,
                steps: out.steps,
                converged: out.converged,
                residual: out.residual,
                terminal_potential: out.state.potential,
                max_decrease: out.max_decrease,
                trajectory: &out.trajectory,
            },
        )?,
        Format::Markdown => format!(
            "| n | steps | converged | residual | P |\n|---|---|---|---|---|\n| {} | {} | {} | {:.3e} | {:.12} |\n",
            start.dim, out.steps, out.converged, out.residual, out.state.potential
        ),
    };
    emit(common, &text)?;
    eprintln!("{} steps, P = {:.12}, residual {:.2e}", out.steps, out.state.potential, out.residual);
    Ok(out.converged && out.max_decrease <= 1e-12)
}
