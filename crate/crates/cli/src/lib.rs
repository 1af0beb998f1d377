//! The `mirrormap` command line: single checks, batches of input files, the
//! bundled reflexive-polygon dataset and the quintic sanity run.
//!
//! Exit codes: 0 when everything requested passed, 1 when some check failed,
//! 2 for unreadable input or a configuration outside the supported domain.

pub mod input;
pub mod output;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use mirrormap_core::checker::{self, BatchReport, CheckReport, CheckRequest, Status};
use mirrormap_core::dataset;
use mirrormap_core::mirrormap::quintic_q;
use mirrormap_core::par::Execution;
use num_rational::Rational64;

use crate::input::{parse_checks, InputDocument};
use crate::output::{render_batch, render_report, Format};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

pub const DEFAULT_PRECISION: usize = 20;

#[derive(Debug, Parser)]
#[command(name = "mirrormap", version, about = "Check integrality and positivity of mirror maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run checks on one input file
    Check {
        file: PathBuf,
        #[command(flatten)]
        opts: RunOptions,
    },
    /// Run checks on every file of a directory, or on the bundled dataset
    Batch {
        /// Directory of input files (hidden files are ignored)
        dir: Option<PathBuf>,
        /// Use the sixteen bundled reflexive polygons instead of a directory
        #[arg(long, conflicts_with = "dir")]
        dataset: bool,
        #[command(flatten)]
        opts: RunOptions,
    },
    /// The bundled reflexive polygons
    Dataset {
        #[command(subcommand)]
        action: DatasetAction,
    },
    /// Quintic series through a given number of terms
    Quintic {
        #[arg(short = 'P', long, default_value_t = 6)]
        precision: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum DatasetAction {
    List,
    /// Print one entry as an input document
    Show { id: usize },
    /// Recompute reflexivity and the Fano property of every entry
    Verify,
}

#[derive(Debug, Clone, Args)]
pub struct RunOptions {
    /// Number of exponents to examine; overrides the file header
    #[arg(short = 'P', long)]
    pub precision: Option<usize>,
    /// Comma-separated check names, `all` or `conjectures`
    #[arg(long)]
    pub checks: Option<String>,
    /// Explicit bound on K_0 (integer or fraction)
    #[arg(long)]
    pub d: Option<Rational64>,
    /// Explicit bound on every K_0 + K_ij
    #[arg(long)]
    pub dprime: Option<Rational64>,
    #[arg(long)]
    pub sampling_denominator: Option<i64>,
    /// Also compute the true map directly and compare
    #[arg(long)]
    pub cross_check: bool,
    /// Worker threads (default: all cores)
    #[arg(long)]
    pub workers: Option<usize>,
    /// Disable data parallelism
    #[arg(long)]
    pub sequential: bool,
    #[arg(long, value_enum, default_value_t = Format::Report)]
    pub format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl RunOptions {
    fn exec(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }

    fn apply(&self, mut req: CheckRequest) -> Result<CheckRequest, String> {
        if let Some(p) = self.precision {
            if p == 0 {
                return Err("precision must be positive".into());
            }
            req.precision = p;
        }
        if let Some(c) = &self.checks {
            req.checks = parse_checks(c)?.into_iter().collect();
        }
        if self.d.is_some() {
            req.d = self.d;
        }
        if self.dprime.is_some() {
            req.dprime = self.dprime;
        }
        if self.sampling_denominator.is_some() {
            req.sampling_denominator = self.sampling_denominator;
        }
        req.cross_check |= self.cross_check;
        req.exec = self.exec();
        Ok(req)
    }
}

/// Reads and validates one input file. Errors carry the file name.
pub fn load_request(path: &Path, opts: &RunOptions) -> Result<CheckRequest, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let doc = InputDocument::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut req = doc.to_request(DEFAULT_PRECISION).map_err(|e| format!("{}: {e}", path.display()))?;
    if req.label.is_none() {
        req.label = path.file_stem().map(|s| s.to_string_lossy().into_owned());
    }
    opts.apply(req).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn exit_code_for(status: Status) -> i32 {
    match status {
        Status::Pass => EXIT_PASS,
        Status::Fail => EXIT_FAIL,
        Status::Error => EXIT_INPUT,
    }
}

/// Errors dominate failures.
pub fn batch_exit_code(batch: &BatchReport) -> i32 {
    if batch.summary.errors > 0 {
        EXIT_INPUT
    } else if batch.summary.failed > 0 {
        EXIT_FAIL
    } else {
        EXIT_PASS
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| e.to_string())
        }
    }
}

pub fn cmd_check(file: &Path, opts: &RunOptions) -> i32 {
    let report = match load_request(file, opts) {
        Ok(req) => checker::run_check(&req),
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
    }
    if let Err(e) = emit(&render_report(&report, opts.format), opts.out.as_deref()) {
        eprintln!("error: {e}");
        return EXIT_INPUT;
    }
    exit_code_for(report.status)
}

/// A request, or the error report for input that could not become one.
pub type BatchEntry = Result<CheckRequest, Box<CheckReport>>;

/// Files in name order; an unreadable or invalid file becomes an error entry
/// and does not stop the others.
pub fn collect_batch(dir: &Path, opts: &RunOptions) -> Result<Vec<BatchEntry>, String> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && !p.file_name().is_some_and(|n| n.to_string_lossy().starts_with('.')))
        .collect();
    paths.sort();
    Ok(paths
        .iter()
        .map(|p| {
            load_request(p, opts).map_err(|e| {
                let label = p.file_stem().map(|s| s.to_string_lossy().into_owned());
                Box::new(CheckReport::input_error(label, opts.precision.unwrap_or(DEFAULT_PRECISION), e))
            })
        })
        .collect())
}

pub fn dataset_requests(opts: &RunOptions) -> Result<Vec<CheckRequest>, String> {
    dataset::reflexive_polygons()
        .iter()
        .map(|p| opts.apply(CheckRequest::new(p.config(), DEFAULT_PRECISION).with_label(p.label())))
        .collect()
}

pub fn run_batch_entries(entries: Vec<BatchEntry>, opts: &RunOptions) -> BatchReport {
    let requests: Vec<CheckRequest> = entries.iter().filter_map(|e| e.as_ref().ok().cloned()).collect();
    let mut done = checker::run_batch(&requests, opts.workers, opts.exec()).reports.into_iter();
    let reports = entries
        .into_iter()
        .map(|e| match e {
            Ok(_) => done.next().expect("one report per request"),
            Err(r) => *r,
        })
        .collect();
    BatchReport::from_reports(reports)
}

pub fn cmd_batch(dir: Option<&Path>, use_dataset: bool, opts: &RunOptions) -> i32 {
    let entries = match (dir, use_dataset) {
        (_, true) => dataset_requests(opts).map(|rs| rs.into_iter().map(Ok).collect()),
        (Some(d), false) => collect_batch(d, opts),
        (None, false) => Err("give a directory or --dataset".into()),
    };
    let entries = match entries {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let batch = run_batch_entries(entries, opts);
    for r in batch.reports.iter().filter(|r| r.status == Status::Error) {
        eprintln!("error: {}", r.error.as_deref().unwrap_or("unknown"));
    }
    eprintln!("{}", batch.summary);
    if let Err(e) = emit(&render_batch(&batch, opts.format), opts.out.as_deref()) {
        eprintln!("error: {e}");
        return EXIT_INPUT;
    }
    batch_exit_code(&batch)
}

pub fn cmd_dataset(action: &DatasetAction) -> i32 {
    match action {
        DatasetAction::List => {
            for p in dataset::reflexive_polygons() {
                let vs: Vec<String> = p.vertices.iter().map(|v| format!("({},{})", v[0], v[1])).collect();
                println!("{:>2}  {}  {}", p.id, p.label(), vs.join(" "));
            }
            EXIT_PASS
        }
        DatasetAction::Show { id } => match dataset::polygon(*id) {
            Some(p) => {
                let doc = InputDocument { label: Some(p.label()), groups: vec![p.vertices], ..Default::default() };
                print!("{}", doc.to_text());
                EXIT_PASS
            }
            None => {
                eprintln!("error: no dataset entry {id} (entries are 1 to 16)");
                EXIT_INPUT
            }
        },
        DatasetAction::Verify => match dataset::verify() {
            Ok(checks) => {
                for c in &checks {
                    println!("{:>2}  reflexive {}  fano {}", c.id, c.reflexive, c.fano);
                }
                let reflexive = checks.iter().filter(|c| c.reflexive).count();
                let fano = checks.iter().filter(|c| c.fano).count();
                println!("{reflexive}/{} reflexive, {fano}/{} Fano", checks.len(), checks.len());
                if reflexive == checks.len() && fano == checks.len() {
                    EXIT_PASS
                } else {
                    EXIT_FAIL
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_INPUT
            }
        },
    }
}

pub fn cmd_quintic(precision: usize) -> i32 {
    let s = match quintic_q(precision.max(1)) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let show = |name: &str, u: &mirrormap_core::series::UnivariateSeries, n: usize| {
        let cs: Vec<String> = (0..n.min(u.len())).map(|k| input::format_rational(&u.coefficient(k))).collect();
        println!("{name}: {}", cs.join(", "));
    };
    show("phi_0", &s.phi0, precision);
    show("phi_1/phi_0", &s.log_psi, precision);
    show("psi", &s.psi, precision);
    show("Q", &s.q, 5 * precision + 1);
    let log_positive = (1..s.log_psi.len()).all(|k| s.log_psi.coefficient(k) > mirrormap_core::Rational::from_integer(0.into()));
    let verdicts = [
        ("psi integral", s.psi.is_integral()),
        ("phi_1/phi_0 positive", log_positive),
        ("Q integral", s.q.is_integral()),
    ];
    for (name, ok) in verdicts {
        println!("{name}: {}", if ok { "pass" } else { "fail" });
    }
    if verdicts.iter().all(|v| v.1) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

pub fn run(cli: Cli) -> i32 {
    match &cli.command {
        Command::Check { file, opts } => cmd_check(file, opts),
        Command::Batch { dir, dataset, opts } => cmd_batch(dir.as_deref(), *dataset, opts),
        Command::Dataset { action } => cmd_dataset(action),
        Command::Quintic { precision } => cmd_quintic(*precision),
    }
}
