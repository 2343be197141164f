use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kahlerlab::backends::FixtureKind;
use kahlerlab_cli::{explain, list, run, write_reports, CliError, RunConfig, SuiteSel, EXIT_ERROR};

#[derive(Parser)]
#[command(name = "kahlerlab", version, about = "Jet-exact checks of weighted Kähler and soliton identities")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run checks and write reports.
    Run(RunArgs),
    /// Describe one check.
    Explain { id: String },
    /// List registered checks.
    List {
        #[arg(long, value_delimiter = ',', default_value = "all")]
        suite: Vec<SuiteSel>,
    },
}

#[derive(clap::Args)]
struct RunArgs {
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    suite: Vec<SuiteSel>,
    #[arg(long, value_delimiter = ',')]
    fixture: Vec<FixtureKind>,
    #[arg(long)]
    seed: Option<u64>,
    /// Directory for report.json, summary.csv, convergence.csv and table.txt.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    tolerance_scale: Option<f64>,
}

fn config(a: RunArgs) -> Result<RunConfig, CliError> {
    let mut cfg = match &a.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if !a.suite.is_empty() {
        cfg.suites = a.suite;
    }
    if !a.fixture.is_empty() {
        cfg.fixtures = a.fixture;
    }
    if let Some(s) = a.seed {
        cfg.seeds = vec![s];
    }
    if a.out.is_some() {
        cfg.out = a.out;
    }
    if let Some(j) = a.jobs {
        cfg.jobs = j;
    }
    if let Some(t) = a.tolerance_scale {
        cfg.tolerance_scale = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main_inner(cli: Cli) -> Result<i32, CliError> {
    match cli.cmd {
        Cmd::Run(a) => {
            let cfg = config(a)?;
            let report = run(&cfg)?;
            print!("{}", kahlerlab_cli::table(&report));
            if let Some(dir) = &cfg.out {
                for p in write_reports(&report, dir)? {
                    eprintln!("wrote {}", p.display());
                }
            }
            Ok(report.exit_code())
        }
        Cmd::Explain { id } => {
            print!("{}", explain(&id)?);
            Ok(0)
        }
        Cmd::List { suite } => {
            print!("{}", list(&suite));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
