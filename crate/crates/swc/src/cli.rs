//! Command-line driver.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use swcore::chow::{chow_pipeline, frobenius_probe};
use swcore::error::{Error, Result};
use swcore::f2algebra::{Limits, Poly};
use swcore::formalring::{build_formal_ring, FormalOptions, VarKind};
use swcore::swsolver::{solve, LiftMode, SolveOptions, SolveStatus};

use crate::pool::Pool;
use crate::repdoc::{parse_cohomology, parse_repdata};
use crate::report::{parse_presentation, ChowDoc, FormalRingDoc, RunReport, SolveDoc};
use crate::selftest::{run_selftest, Suite};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_BUDGET: u8 = 2;
pub const EXIT_INPUT: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "swc",
    version,
    about = "Mod-2 cohomology in Stiefel-Whitney classes"
)]
pub struct Cli {
    /// Suppress the summary on stderr.
    #[arg(short, long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the formal ring of a representation data document.
    FormalRing(FormalRingArgs),
    /// Find the map from the formal ring onto a cohomology presentation.
    Solve(SolveArgs),
    /// Compare the Chern subring with the derivation-kernel bound.
    Chow(ChowArgs),
    /// Run the bundled fixtures and property checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    /// Reduction step budget for each ideal computation.
    #[arg(long, env = "SWC_BUDGET", value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: Option<u64>,
}

impl BudgetArgs {
    fn limits(&self) -> Limits {
        let mut l = Limits::default();
        if let Some(b) = self.budget {
            l.steps = b;
        }
        l
    }
}

#[derive(Debug, Clone, Args)]
pub struct FormalRingArgs {
    #[arg(long)]
    pub repdata: PathBuf,
    /// Discard relations above this degree.
    #[arg(long)]
    pub cap: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    QuotientLift,
    Exhaustive,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub repdata: PathBuf,
    #[arg(long)]
    pub cohomology: PathBuf,
    #[arg(long, value_enum, default_value = "quotient-lift")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_candidates: u64,
    /// Compare graded dimensions through this degree.
    #[arg(long)]
    pub verify_bound: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: u64,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ChowArgs {
    #[arg(long)]
    pub presentation: PathBuf,
    /// Highest Milnor derivation index to try.
    #[arg(long, default_value_t = 4)]
    pub max_q: u32,
    /// Check that 2^n-th powers of the generators lie in the Chern subring.
    #[arg(long)]
    pub probe: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SelftestArgs {
    #[arg(long, value_enum)]
    pub only: Option<Suite>,
    /// Read fixtures from this directory instead of the bundled copies.
    #[arg(long)]
    pub fixtures: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Result of one command: the structured document, an exit code and a
/// human-readable summary.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub document: String,
    pub exit: u8,
    pub summary: Vec<String>,
}

#[must_use]
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget(_) => EXIT_BUDGET,
        Error::Parse { .. }
        | Error::Schema { .. }
        | Error::Contract(_)
        | Error::Inconsistent(_) => EXIT_INPUT,
    }
}

fn error_status(e: &Error) -> &'static str {
    match e {
        Error::Budget(_) => "budget",
        _ => "input-error",
    }
}

fn failed(command: &str, e: &Error) -> Outcome {
    let report: RunReport<()> = RunReport {
        command: command.into(),
        status: error_status(e).into(),
        message: Some(e.to_string()),
        warnings: Vec::new(),
        payload: None,
    };
    Outcome {
        document: report.to_json(),
        exit: exit_code(e),
        summary: vec![format!("{command}: {e}")],
    }
}

pub fn read_input(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Schema {
        location: path.display().to_string(),
        message: e.to_string(),
    })
}

fn formal_ring_doc(args: &FormalRingArgs) -> Result<(FormalRingDoc, Vec<String>)> {
    let rep = parse_repdata(&read_input(&args.repdata)?)?;
    let opts = FormalOptions {
        cap: args.cap,
        limits: args.budget.limits(),
    };
    let w = build_formal_ring(&rep, &opts)?;
    let mut warnings = Vec::new();
    if let Some(d) = args.cap {
        warnings.push(format!(
            "relations and their squares above degree {d} were discarded; the ring may be too large there"
        ));
    }
    Ok((FormalRingDoc::new(&w), warnings))
}

#[must_use]
pub fn cmd_formal_ring(args: &FormalRingArgs) -> Outcome {
    match formal_ring_doc(args) {
        Ok((doc, warnings)) => {
            let count = |k: &str| doc.variables.iter().filter(|v| v.kind == k).count();
            let summary = vec![format!(
                "formal ring: {} variables ({} {}, {} {}, {} {}), {} relations",
                doc.variables.len(),
                count(VarKind::T.code()),
                VarKind::T.code(),
                count(VarKind::Q.code()),
                VarKind::Q.code(),
                count(VarKind::P.code()),
                VarKind::P.code(),
                doc.relations.len()
            )];
            let report = RunReport {
                command: "formal-ring".into(),
                status: "success".into(),
                message: None,
                warnings,
                payload: Some(doc),
            };
            Outcome {
                document: report.to_json(),
                exit: EXIT_OK,
                summary,
            }
        }
        Err(e) => failed("formal-ring", &e),
    }
}

fn solve_report(args: &SolveArgs) -> Result<RunReport<SolveDoc>> {
    let limits = args.budget.limits();
    let rep = parse_repdata(&read_input(&args.repdata)?)?;
    let h = parse_cohomology(&read_input(&args.cohomology)?, &limits)?;
    let w = build_formal_ring(&rep, &FormalOptions { cap: None, limits })?;
    let opts = SolveOptions {
        mode: match args.mode {
            ModeArg::QuotientLift => LiftMode::QuotientLift,
            ModeArg::Exhaustive => LiftMode::Exhaustive,
        },
        max_candidates: args.max_candidates,
        limits,
        verify_bound: args.verify_bound,
        ..SolveOptions::default()
    };
    let pool = Pool::new(usize::try_from(args.threads).unwrap_or(usize::MAX));
    let r = solve(&rep, &w, &h, &opts, &pool)?;
    Ok(RunReport {
        command: "solve".into(),
        status: r.status.code().into(),
        message: r.message.clone(),
        warnings: r.warnings.clone(),
        payload: Some(SolveDoc::new(&r, &w, &h, opts.mode.code())),
    })
}

#[must_use]
pub fn cmd_solve(args: &SolveArgs) -> Outcome {
    match solve_report(args) {
        Ok(report) => {
            let doc = report.payload.as_ref().unwrap();
            let s = &doc.stats;
            let mut summary = vec![
                format!("solve: {} ({} mode)", report.status, doc.mode),
                format!(
                    "  step 1: {} bases, {} admissible, {} survivors",
                    s.step1_bases, s.step1_admissible, s.step1_survivors
                ),
                format!("  step 2: {} survivors", s.step2_survivors),
                format!(
                    "  step 3: {} raw, {} candidates",
                    s.step3_raw, s.step3_candidates
                ),
                format!(
                    "  tests: {} / {} / {} / {} pass, {} classes",
                    s.test1_passed,
                    s.test2_passed,
                    s.test3_passed,
                    s.test4_passed.map_or("-".to_string(), |n| n.to_string()),
                    s.classes
                ),
            ];
            if let Some(m) = &report.message {
                summary.push(format!("  {m}"));
            }
            let exit = if report.status == SolveStatus::Success.code() {
                EXIT_OK
            } else {
                EXIT_FAILURE
            };
            Outcome {
                document: report.to_json(),
                exit,
                summary,
            }
        }
        Err(e) => failed("solve", &e),
    }
}

fn chow_report(args: &ChowArgs) -> Result<RunReport<ChowDoc>> {
    let limits = args.budget.limits();
    let parsed = parse_presentation(&read_input(&args.presentation)?, &limits)?;
    let a = &parsed.algebra;
    let chern: Vec<Poly> = parsed.chern.iter().map(|(_, p)| p.clone()).collect();
    let (report, tilde) = chow_pipeline(a, &chern, args.max_q, &limits)?;
    let probe = args.probe.map(|n| {
        let ring = a.ring();
        let targets: Vec<Poly> = (0..ring.nvars()).map(|v| Poly::var(ring, v)).collect();
        frobenius_probe(a.algebra(), &report.chern.generators, &targets, n)
    });
    let status = if report.termination.is_some() {
        "success"
    } else {
        "partial"
    };
    Ok(RunReport {
        command: "chow".into(),
        status: status.into(),
        message: None,
        warnings: report.notes.clone(),
        payload: Some(ChowDoc::new(&report, &tilde, a.ring(), probe)),
    })
}

#[must_use]
pub fn cmd_chow(args: &ChowArgs) -> Outcome {
    match chow_report(args) {
        Ok(report) => {
            let doc = report.payload.as_ref().unwrap();
            let summary = vec![format!(
                "chow: {}, bounds {}{}, N = {}",
                report.status,
                if doc.equal { "equal" } else { "differ" },
                if !doc.equal && doc.equal_mod_sqrt0 {
                    " (equal modulo nilpotents of square zero)"
                } else {
                    ""
                },
                doc.termination.map_or("-".to_string(), |n| n.to_string())
            )];
            let exit = if doc.termination.is_some() {
                EXIT_OK
            } else {
                EXIT_BUDGET
            };
            Outcome {
                document: report.to_json(),
                exit,
                summary,
            }
        }
        Err(e) => failed("chow", &e),
    }
}

#[must_use]
pub fn cmd_selftest(args: &SelftestArgs) -> Outcome {
    let results = run_selftest(args.only, args.fixtures.as_deref());
    let failures: Vec<_> = results.iter().filter(|c| !c.passed).collect();
    let mut summary: Vec<String> = results
        .iter()
        .map(|c| format!("{} {}", if c.passed { "ok  " } else { "FAIL" }, c.name))
        .collect();
    summary.push(format!(
        "selftest: {} checks, {} failed",
        results.len(),
        failures.len()
    ));
    let report = RunReport {
        command: "selftest".into(),
        status: if failures.is_empty() {
            "success"
        } else {
            "failure"
        }
        .into(),
        message: failures
            .first()
            .map(|c| format!("{} failed: {}", c.name, c.detail)),
        warnings: Vec::new(),
        payload: Some(results.clone()),
    };
    Outcome {
        document: report.to_json(),
        exit: if failures.is_empty() {
            EXIT_OK
        } else {
            EXIT_FAILURE
        },
        summary,
    }
}

fn out_path(cmd: &Command) -> Option<&Path> {
    match cmd {
        Command::FormalRing(a) => a.out.as_deref(),
        Command::Solve(a) => a.out.as_deref(),
        Command::Chow(a) => a.out.as_deref(),
        Command::Selftest(a) => a.out.as_deref(),
    }
}

#[must_use]
pub fn execute(cmd: &Command) -> Outcome {
    match cmd {
        Command::FormalRing(a) => cmd_formal_ring(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Chow(a) => cmd_chow(a),
        Command::Selftest(a) => cmd_selftest(a),
    }
}

/// Parses arguments, runs the command and writes its document.
#[must_use]
pub fn main_with(args: impl IntoIterator<Item = std::ffi::OsString>) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let start = Instant::now();
    let mut outcome = execute(&cli.command);
    match out_path(&cli.command) {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &outcome.document) {
                outcome
                    .summary
                    .push(format!("cannot write {}: {e}", p.display()));
                outcome.exit = EXIT_INPUT;
            }
        }
        None => print!("{}", outcome.document),
    }
    if !cli.quiet {
        for line in &outcome.summary {
            eprintln!("{line}");
        }
        eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
    }
    outcome.exit
}
