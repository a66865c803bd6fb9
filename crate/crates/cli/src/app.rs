//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use cellbound_core::certify::{
    assemble_gap_report, check_primitive, CertifyOptions, IpMode, IpProof,
    DEFAULT_ENUMERATION_LIMIT, DEFAULT_SEARCH_CEILING,
};
use cellbound_core::constructions::{b_n, delta_n, f_n, gamma_n, u_n, v_n};
use cellbound_core::ip::{ip_bound_by_enumeration, solve_ip, IpStatus, DEFAULT_NODE_LIMIT};
use cellbound_core::lp::{solve_lp, CellBoundProblem, LpStatus, Sense};
use cellbound_core::{
    is_kernel, CellIndex, Error, Flavor, IntTable, MarginVector, SimplicialComplex,
};
use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::formats::{self, FormatError};
use crate::report::render_gap_report;

pub mod exit {
    pub const OK: i32 = 0;
    pub const FALSE: i32 = 1;
    pub const INFEASIBLE: i32 = 2;
    pub const INVALID: i32 = 4;
    pub const LIMIT: i32 = 5;
}

#[derive(Debug, Parser)]
#[command(
    name = "cellbound",
    version,
    about = "Exact LP/IP cell bounds and integrality-gap certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum What {
    Gamma,
    Delta,
    F,
    U,
    B,
    V,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SenseArg {
    Min,
    Max,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Bb,
    Enumerate,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum IpModeArg {
    Bb,
    Enumerate,
    Skip,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckWhat {
    Kernel,
    Primitive,
}

#[derive(Debug, clap::Args)]
struct BoundArgs {
    /// Instance file (`vars`/`facet` lines).
    model: PathBuf,
    /// Margins file (`vars`/`margin` lines).
    margins: PathBuf,
    /// Target cell as a bitstring, first variable leftmost.
    #[arg(long)]
    cell: String,
    #[arg(long, value_enum, default_value = "min")]
    sense: SenseArg,
    /// Write the optimal table here.
    #[arg(long)]
    emit_primal: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write one object of the gap family for `n` variables.
    Construct {
        #[arg(short = 'n')]
        n: usize,
        #[arg(long, value_enum)]
        what: What,
        /// Output path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact LP bound on one cell.
    Lp {
        #[command(flatten)]
        bound: BoundArgs,
    },
    /// Exact integer bound on one cell.
    Ip {
        #[command(flatten)]
        bound: BoundArgs,
        /// Integer-feasible table used as the first incumbent.
        #[arg(long)]
        warm_start: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "bb")]
        method: Method,
        /// Branch-and-bound nodes, or fiber elements with `--method enumerate`.
        #[arg(long, env = "CELLBOUND_NODE_LIMIT")]
        node_limit: Option<u64>,
    },
    /// Certify the LP/IP gap at the all-zero cell for `n` variables.
    Gap {
        #[arg(short = 'n')]
        n: usize,
        #[arg(long, value_enum, default_value = "bb")]
        ip_mode: IpModeArg,
        #[arg(long, env = "CELLBOUND_NODE_LIMIT")]
        node_limit: Option<u64>,
        /// Largest primitivity search space attempted.
        #[arg(long, env = "CELLBOUND_SEARCH_CEILING", default_value_t = DEFAULT_SEARCH_CEILING)]
        search_ceiling: u128,
    },
    /// Test a table for kernel membership or primitivity.
    Check {
        #[arg(long, value_enum)]
        what: CheckWhat,
        model: PathBuf,
        table: PathBuf,
        /// Where a primitivity counterexample is written; defaults to
        /// `<table>.counterexample`.
        #[arg(long)]
        counterexample: Option<PathBuf>,
        #[arg(long, env = "CELLBOUND_SEARCH_CEILING", default_value_t = DEFAULT_SEARCH_CEILING)]
        search_ceiling: u128,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Format { path: PathBuf, source: FormatError },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Format { .. } | CliError::Invalid(_) => exit::INVALID,
            CliError::Core(e) => match e {
                Error::Infeasible => exit::INFEASIBLE,
                Error::EnumerationLimit(_) | Error::SearchCeiling { .. } | Error::PivotLimit(_) => {
                    exit::LIMIT
                }
                Error::CheckFailed(_) => exit::FALSE,
                _ => exit::INVALID,
            },
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parsed<T>(path: &Path, r: Result<T, FormatError>) -> CliResult<T> {
    r.map_err(|source| CliError::Format {
        path: path.to_path_buf(),
        source,
    })
}

fn load_model(path: &Path) -> CliResult<SimplicialComplex> {
    parsed(path, formats::parse_instance(&read(path)?))
}

fn load_int_table(path: &Path, flavor: Flavor) -> CliResult<IntTable> {
    let table = parsed(path, formats::parse_table(&read(path)?))?;
    let ints = table.to_integer().ok_or_else(|| {
        CliError::Invalid(format!(
            "{}: table entries must be integers",
            path.display()
        ))
    })?;
    Ok(ints.with_flavor(flavor)?)
}

fn load_problem(args: &BoundArgs) -> CliResult<CellBoundProblem> {
    let model = load_model(&args.model)?;
    let margins = parsed(
        &args.margins,
        formats::parse_margins(&model, &read(&args.margins)?),
    )?;
    let values = margins
        .values()
        .iter()
        .map(|v| v.to_i64())
        .collect::<Option<Vec<i64>>>()
        .ok_or_else(|| {
            CliError::Invalid(format!(
                "{}: margins must be integers",
                args.margins.display()
            ))
        })?;
    let margins = MarginVector::new(&model, values)?;
    let target = CellIndex::parse(&args.cell)
        .filter(|c| c.n() == model.n())
        .ok_or_else(|| {
            CliError::Invalid(format!(
                "cell `{}` is not a bitstring of length {}",
                args.cell,
                model.n()
            ))
        })?;
    let sense = match args.sense {
        SenseArg::Min => Sense::Minimize,
        SenseArg::Max => Sense::Maximize,
    };
    Ok(CellBoundProblem::new(model, margins, target, sense)?)
}

fn construct(n: usize, what: What, out_path: Option<&Path>, out: &mut dyn Write) -> CliResult<i32> {
    let text = match what {
        What::Gamma => formats::write_instance(&gamma_n(n)?),
        What::Delta => formats::write_instance(&delta_n(n)?),
        What::F => formats::write_table(&f_n(n)?),
        What::U => formats::write_table(&u_n(n)?),
        What::B => formats::write_margins(&b_n(n)?),
        What::V => formats::write_table(&v_n(n)?),
    };
    match out_path {
        Some(p) => write_file(p, &text)?,
        None => out
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            })?,
    }
    Ok(exit::OK)
}

fn lp(args: &BoundArgs, out: &mut String) -> CliResult<i32> {
    let problem = load_problem(args)?;
    let s = solve_lp(&problem)?;
    match s.status {
        LpStatus::Infeasible => {
            out.push_str("status infeasible\n");
            out.push_str(&format!("pivots {}\n", s.pivots));
            Ok(exit::INFEASIBLE)
        }
        LpStatus::Optimal => {
            let value = s.value.expect("optimal LP has a value");
            out.push_str(&format!(
                "status optimal\nvalue {value}\npivots {}\n",
                s.pivots
            ));
            if let Some(path) = &args.emit_primal {
                write_file(
                    path,
                    &formats::write_table(s.primal.as_ref().expect("optimal LP has a primal")),
                )?;
            }
            Ok(exit::OK)
        }
    }
}

fn ip(
    args: &BoundArgs,
    warm_start: Option<&Path>,
    method: Method,
    node_limit: Option<u64>,
    out: &mut String,
) -> CliResult<i32> {
    let problem = load_problem(args)?;
    match method {
        Method::Enumerate => {
            if warm_start.is_some() || args.emit_primal.is_some() {
                return Err(CliError::Invalid(
                    "--warm-start and --emit-primal require --method bb".into(),
                ));
            }
            let limit = node_limit.map_or(DEFAULT_ENUMERATION_LIMIT, |l| l as usize);
            match ip_bound_by_enumeration(
                problem.model(),
                problem.margins(),
                problem.target(),
                problem.sense(),
                limit,
            ) {
                Ok(v) => {
                    out.push_str(&format!("status optimal\nvalue {v}\nproof complete\n"));
                    Ok(exit::OK)
                }
                Err(Error::Infeasible) => {
                    out.push_str("status infeasible\nproof complete\n");
                    Ok(exit::INFEASIBLE)
                }
                Err(Error::EnumerationLimit(_)) => {
                    out.push_str("status limit\nvalue unproven\nproof limit-hit\n");
                    Ok(exit::LIMIT)
                }
                Err(e) => Err(e.into()),
            }
        }
        Method::Bb => {
            let ws = warm_start
                .map(|p| load_int_table(p, Flavor::NonNegative))
                .transpose()?;
            let s = solve_ip(
                &problem,
                ws.as_ref(),
                node_limit.unwrap_or(DEFAULT_NODE_LIMIT),
            )?;
            let code = match s.status {
                IpStatus::Optimal => {
                    out.push_str(&format!(
                        "status optimal\nvalue {}\n",
                        s.value.expect("optimum has a value")
                    ));
                    exit::OK
                }
                IpStatus::Infeasible => {
                    out.push_str("status infeasible\n");
                    exit::INFEASIBLE
                }
                IpStatus::NodeLimit => {
                    out.push_str("status limit\nvalue unproven\n");
                    if let Some(v) = s.value {
                        out.push_str(&format!("incumbent {v}\n"));
                    }
                    exit::LIMIT
                }
            };
            out.push_str(&format!(
                "proof {}\nnodes {}\npivots {}\n",
                s.proof.as_str(),
                s.nodes_explored,
                s.lp_pivots
            ));
            if let (Some(path), Some(table)) = (&args.emit_primal, &s.incumbent) {
                write_file(path, &formats::write_table(table))?;
            }
            Ok(code)
        }
    }
}

fn gap(
    n: usize,
    mode: IpModeArg,
    node_limit: Option<u64>,
    search_ceiling: u128,
    out: &mut String,
) -> CliResult<i32> {
    let mode = match mode {
        IpModeArg::Bb => IpMode::BranchAndBound,
        IpModeArg::Enumerate => IpMode::Enumerate,
        IpModeArg::Skip => IpMode::Skip,
    };
    let mut options = CertifyOptions {
        search_ceiling,
        ..CertifyOptions::default()
    };
    if let Some(l) = node_limit {
        options.node_limit = l;
        options.enumeration_limit = l as usize;
    }
    let report = assemble_gap_report(n, mode, &options)?;
    out.push_str(&render_gap_report(&report));
    Ok(if !report.all_passed() {
        exit::FALSE
    } else if report.ip_proof == IpProof::LimitHit {
        exit::LIMIT
    } else {
        exit::OK
    })
}

fn check(
    what: CheckWhat,
    model_path: &Path,
    table_path: &Path,
    counterexample: Option<&Path>,
    search_ceiling: u128,
    out: &mut String,
) -> CliResult<i32> {
    let model = load_model(model_path)?;
    let verdict = |b: bool| if b { exit::OK } else { exit::FALSE };
    match what {
        CheckWhat::Kernel => {
            let table = parsed(table_path, formats::parse_table(&read(table_path)?))?;
            let k = is_kernel(&model, &table)?;
            out.push_str(&format!("kernel {k}\n"));
            Ok(verdict(k))
        }
        CheckWhat::Primitive => {
            let table = load_int_table(table_path, Flavor::Signed)?;
            let v = check_primitive(&model, &table, search_ceiling)?;
            out.push_str(&format!(
                "primitive {}\ncandidates_checked {}\n",
                v.primitive, v.candidates_checked
            ));
            if let Some(cx) = &v.counterexample {
                let path = counterexample.map(Path::to_path_buf).unwrap_or_else(|| {
                    let mut p = table_path.as_os_str().to_owned();
                    p.push(".counterexample");
                    PathBuf::from(p)
                });
                write_file(&path, &formats::write_table(cx))?;
                out.push_str(&format!("counterexample {}\n", path.display()));
            }
            Ok(verdict(v.primitive))
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> CliResult<(i32, String)> {
    let mut out = String::new();
    let code = match command {
        Command::Construct { n, what, out: path } => construct(n, what, path.as_deref(), stdout)?,
        Command::Lp { bound } => lp(&bound, &mut out)?,
        Command::Ip {
            bound,
            warm_start,
            method,
            node_limit,
        } => ip(&bound, warm_start.as_deref(), method, node_limit, &mut out)?,
        Command::Gap {
            n,
            ip_mode,
            node_limit,
            search_ceiling,
        } => gap(n, ip_mode, node_limit, search_ceiling, &mut out)?,
        Command::Check {
            what,
            model,
            table,
            counterexample,
            search_ceiling,
        } => check(
            what,
            &model,
            &table,
            counterexample.as_deref(),
            search_ceiling,
            &mut out,
        )?,
    };
    Ok((code, out))
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                exit::INVALID
            } else {
                let _ = write!(stdout, "{e}");
                exit::OK
            };
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok((code, text)) => {
            if stdout.write_all(text.as_bytes()).is_err() {
                return exit::INVALID;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
