//! Command-line front end. [`run`] parses arguments and produces the report
//! and exit code without touching the process, so it is usable from tests;
//! the binary only prints and exits.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::kernel::{hermite_eigenspaces, monogenic_dims, Eigenspace, KernelReport};
use crate::lie::paper_table_diff;
use crate::space::SpinorModel;
use crate::verify::{verify, VerificationReport, SCHEMA_VERSION};
use crate::weyl::{catalog, SerialOperator, WeylOperator};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "weyl-howe", version, about = "Exact Weyl-algebra verification of the symplectic Dirac operator and its Howe dual pair")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Plain,
    Weighted,
}

impl From<ModelArg> for SpinorModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Plain => SpinorModel::Plain,
            ModelArg::Weighted => SpinorModel::GaussianWeighted,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Number of base coordinate pairs.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub n: u16,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every verification suite.
    Verify {
        #[command(flatten)]
        common: Common,
    },
    /// Print the normal-ordered bracket of two catalog operators
    /// (`NAME` or `NAME:j,k` for indexed ones).
    Commutator {
        left: String,
        right: String,
        #[command(flatten)]
        common: Common,
    },
    /// Kernel dimensions of D_s, Dt_s and their joint kernel on one block.
    Kernel {
        /// Base polynomial degree.
        #[arg(long)]
        k: u32,
        /// Spinor degree cap.
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value_t = ModelArg::Weighted)]
        model: ModelArg,
        #[command(flatten)]
        common: Common,
    },
    /// Eigenspaces of the Hermite operator on weighted spinors.
    Spectrum {
        #[arg(long, default_value_t = 6)]
        kmax: u32,
        #[command(flatten)]
        common: Common,
    },
    /// The computed 8x8 commutator table annotated against the printed one.
    Table {
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Verify { common }
            | Command::Commutator { common, .. }
            | Command::Kernel { common, .. }
            | Command::Spectrum { common, .. }
            | Command::Table { common } => common,
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn invalid(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome::invalid(text)
            };
        }
    };
    execute(&cli.command)
}

/// Runs an already parsed command, writing to `--out` when given.
pub fn execute(command: &Command) -> Outcome {
    let common = command.common();
    let (ok, report) = match render(command) {
        Ok(r) => r,
        Err(msg) => return Outcome::invalid(msg),
    };
    let code = if ok { EXIT_OK } else { EXIT_CHECK_FAILED };
    match &common.out {
        Some(path) => match std::fs::write(path, &report) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => Outcome::invalid(format!("error: cannot write '--out {}': {e}\n", path.display())),
        },
        None => Outcome {
            code,
            stdout: report,
            stderr: String::new(),
        },
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = ::csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

/// `NAME` or `NAME:j,k`.
pub fn parse_operator(spec: &str, n: usize) -> Result<WeylOperator, String> {
    let (name, idx) = match spec.split_once(':') {
        Some((name, rest)) => {
            let idx = rest
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| format!("error: invalid index list in operator '{spec}'\n"))?;
            (name, idx)
        }
        None => (spec, Vec::new()),
    };
    catalog(name, n, &idx).map_err(|e| format!("error: operator '{spec}': {e}\n"))
}

#[derive(Serialize)]
struct CommutatorReport<'a> {
    schema_version: &'a str,
    n: usize,
    left: &'a str,
    right: &'a str,
    bracket: String,
    operator: SerialOperator,
}

#[derive(Serialize)]
struct KernelOutput<'a> {
    schema_version: &'a str,
    #[serde(flatten)]
    report: &'a KernelReport,
    holomorphic_bound_met: Option<bool>,
}

#[derive(Serialize)]
struct TableOutput<'a> {
    schema_version: &'a str,
    #[serde(flatten)]
    diff: &'a crate::lie::TableDiff,
}

#[derive(Serialize)]
struct SpectrumOutput<'a> {
    schema_version: &'a str,
    n: usize,
    kmax: u32,
    eigenspaces: &'a [Eigenspace],
}

fn kernel_ok(r: &KernelReport) -> bool {
    r.dim_joint <= r.dim_ker_ds.min(r.dim_ker_ds_tilde)
        && r.holomorphic_lower_bound.is_none_or(|b| r.dim_joint >= b)
}

fn render(command: &Command) -> Result<(bool, String), String> {
    let common = command.common();
    let n = usize::from(common.n);
    let fmt = common.format;
    Ok(match command {
        Command::Verify { .. } => {
            let report: VerificationReport = verify(n);
            let ok = report.status.is_pass();
            let text = match fmt {
                Format::Text => report.to_text(),
                Format::Json => json(&report),
                Format::Csv => csv(
                    &["suite", "check", "status", "witness"],
                    report.suites.iter().flat_map(|s| {
                        s.checks.iter().map(move |c| {
                            vec![
                                s.name.clone(),
                                c.name.clone(),
                                c.status.label().to_lowercase(),
                                c.witness.clone().unwrap_or_default(),
                            ]
                        })
                    }),
                ),
            };
            (ok, text)
        }
        Command::Commutator { left, right, .. } => {
            let a = parse_operator(left, n)?;
            let b = parse_operator(right, n)?;
            let c = a.commutator(&b);
            let text = match fmt {
                Format::Text => format!("{c}\n"),
                Format::Json => json(&CommutatorReport {
                    schema_version: SCHEMA_VERSION,
                    n,
                    left,
                    right,
                    bracket: c.to_string(),
                    operator: c.to_serial(),
                }),
                Format::Csv => csv(
                    &["coeff", "x", "y", "q", "dx", "dy", "dq"],
                    c.to_serial().terms.iter().map(|t| {
                        let e = |m: &crate::weyl::MultiIndex| {
                            m.as_slice().iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
                        };
                        vec![t.coeff.to_string(), e(&t.x), e(&t.y), e(&t.q), e(&t.dx), e(&t.dy), e(&t.dq)]
                    }),
                ),
            };
            (true, text)
        }
        Command::Kernel { k, m, model, .. } => {
            let r = monogenic_dims(n, *k, *m, (*model).into());
            let ok = kernel_ok(&r);
            let text = match fmt {
                Format::Text => {
                    let mut s = format!(
                        "n = {}, k = {}, m = {}, model = {}\nsource dimension      {}\ndim ker D_s           {}\ndim ker Dt_s          {}\ndim joint kernel      {}\n",
                        r.n, r.k, r.m, r.model.label(), r.source_dim, r.dim_ker_ds, r.dim_ker_ds_tilde, r.dim_joint
                    );
                    if let Some(b) = r.holomorphic_lower_bound {
                        s.push_str(&format!("holomorphic bound     {b}\n"));
                    }
                    s
                }
                Format::Json => json(&KernelOutput {
                    schema_version: SCHEMA_VERSION,
                    report: &r,
                    holomorphic_bound_met: r.holomorphic_lower_bound.map(|b| r.dim_joint >= b),
                }),
                Format::Csv => format!("{}\n{}\n", KernelReport::CSV_HEADER, r.csv_row()),
            };
            (ok, text)
        }
        Command::Spectrum { kmax, .. } => {
            let spec = hermite_eigenspaces(n, *kmax);
            let ok = spec.iter().all(|e| e.dimension == e.expected);
            let text = match fmt {
                Format::Text => {
                    let mut s = format!("Hermite operator, n = {n}\n");
                    for e in &spec {
                        s.push_str(&format!(
                            "k = {}: eigenvalue {}, dimension {} (expected {})\n",
                            e.k, e.eigenvalue, e.dimension, e.expected
                        ));
                    }
                    s
                }
                Format::Json => json(&SpectrumOutput {
                    schema_version: SCHEMA_VERSION,
                    n,
                    kmax: *kmax,
                    eigenspaces: &spec,
                }),
                Format::Csv => {
                    let mut s = format!("{}\n", Eigenspace::CSV_HEADER);
                    for e in &spec {
                        s.push_str(&e.csv_row());
                        s.push('\n');
                    }
                    s
                }
            };
            (ok, text)
        }
        Command::Table { .. } => {
            let d = paper_table_diff(n);
            let ok = d.computed_antisymmetric && d.computed_jacobi;
            let text = match fmt {
                Format::Text => d.to_text(),
                Format::Json => json(&TableOutput {
                    schema_version: SCHEMA_VERSION,
                    diff: &d,
                }),
                Format::Csv => csv(
                    &["row", "col", "computed", "printed", "status"],
                    d.cells.iter().map(|c| {
                        vec![c.row.clone(), c.col.clone(), c.computed.clone(), c.printed.clone(), c.status.short()]
                    }),
                ),
            };
            (ok, text)
        }
    })
}
