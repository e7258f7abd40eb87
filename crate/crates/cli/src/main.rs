use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use yv_cli::{
    cmd_gen, cmd_roots, cmd_sums, run_suites, summary_line, write_report, ReportFormat, RunConfig,
    RunMode, Suite, DEFAULT_N_MAX, DEFAULT_PRECISION_BITS, DEFAULT_SEED, DEFAULT_TOLERANCE,
};
use yv_core::Status;

#[derive(Parser)]
#[command(
    name = "yv",
    version,
    about = "Yablonskii-Vorob'ev polynomials: generation and verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate Q_0..Q_{n_max} and write yv_<n>.json.
    Gen(Common),
    /// Run verification suites and write one report.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Comma-separated suites; all when omitted.
        #[arg(long, value_delimiter = ',')]
        suites: Vec<Suite>,
    },
    /// Extract and certify roots, writing roots_<n>.csv and roots_<n>.svg.
    Roots(Common),
    /// Exact inverse power sums of the nonzero roots.
    Sums {
        #[command(flatten)]
        common: Common,
        /// Comma-separated powers.
        #[arg(long, value_delimiter = ',', default_value = "3,6,9")]
        m: Vec<u32>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    n_max: u32,
    #[arg(long, default_value_t = DEFAULT_PRECISION_BITS)]
    precision_bits: usize,
    /// Numeric pass threshold exponent t, i.e. deviation < 10^-t.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: u32,
    #[arg(long, value_enum, default_value_t = RunMode::Both)]
    mode: RunMode,
    #[arg(long, env = "YV_OUT_DIR", default_value = "yv-out")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

impl Common {
    fn config(&self) -> RunConfig {
        RunConfig {
            n_max: self.n_max,
            precision_bits: self.precision_bits,
            tolerance_exponent: self.tolerance,
            mode: self.mode,
            output_dir: self.out.clone(),
            report_format: self.format,
            seed: self.seed,
        }
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skipped => "SKIP",
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen(c) => {
            let records = cmd_gen(&c.config())?;
            println!("{:>4} {:>6} {:>5}  x_n", "n", "degree", "p_n");
            for r in &records {
                println!("{}", summary_line(r));
            }
            Ok(true)
        }
        Command::Verify { common, suites } => {
            let cfg = common.config();
            let suites = if suites.is_empty() {
                Suite::all()
            } else {
                suites
            };
            let reports = run_suites(&cfg, &suites)?;
            for r in &reports {
                let n = r.n.map(|n| format!(" n={n}")).unwrap_or_default();
                println!("{} {}{n}: {}", status_word(r.status), r.suite, r.detail);
            }
            let path = write_report(&cfg, &reports)?;
            let failed = reports.iter().filter(|r| r.failed()).count();
            println!(
                "{} reports, {failed} failed; wrote {}",
                reports.len(),
                path.display()
            );
            Ok(failed == 0)
        }
        Command::Roots(c) => {
            let outcomes = cmd_roots(&c.config())?;
            let mut ok = true;
            for o in &outcomes {
                ok &= !o.report.failed();
                println!(
                    "{} n={}: {}",
                    status_word(o.report.status),
                    o.n,
                    o.report.detail
                );
            }
            Ok(ok)
        }
        Command::Sums { common, m } => {
            let (rows, path) = cmd_sums(&common.config(), &m)?;
            let mut ok = true;
            for r in &rows {
                let cf = match r.matches() {
                    Some(true) => "  (closed form ok)",
                    Some(false) => "  (closed form MISMATCH)",
                    None => "",
                };
                ok &= r.matches() != Some(false);
                println!("n={:<3} m={:<3} {}{cf}", r.n, r.m, r.sum);
            }
            println!("wrote {}", path.display());
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
