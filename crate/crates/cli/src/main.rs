use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use gspin_cli::{run_replay, run_suite, Report, Suite, SuiteConfig};
use gspin_core::arith::{parse_q, Q};
use gspin_core::periods::appendix::appendix_scripts;
use gspin_core::periods::search::find_monomial_conjugator;
use gspin_core::periods::PeriodSpec;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "gspin", version, about = "Exact verification suites and derivation replay")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a named suite: root-datum, weyl, unramified, cosets, periods or all.
    Verify {
        suite: Suite,
        #[arg(long)]
        n_min: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        /// Comma-separated nonzero rationals for the h_a, Invt and stabilizer checks.
        #[arg(long, value_delimiter = ',', value_parser = parse_rational)]
        a: Option<Vec<Q>>,
        /// Replay the scripts in this directory instead of the expander output.
        #[arg(long)]
        scripts: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Leave out the timing section.
        #[arg(long)]
        no_timing: bool,
    },
    /// Replay one script file or every `.txt` script in a directory.
    Replay {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        no_timing: bool,
    },
    /// Write the appendix scripts for the given ranks and `a` values.
    Expand {
        out: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3])]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [1i64, 2])]
        a: Vec<i64>,
    },
    /// Search for a monomial element conjugating one period to another.
    FindConj { m: usize, from: String, to: String },
}

fn parse_rational(s: &str) -> Result<Q, String> {
    parse_q(s.trim()).ok_or_else(|| format!("not a rational number: {s:?}"))
}

fn emit(report: &Report, timing: bool, out: Option<&Path>) -> Result<ExitCode> {
    let text = report.render(timing);
    match out {
        Some(p) => std::fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(if report.failures() == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Verify {
            suite,
            n_min,
            n_max,
            a,
            scripts,
            out,
            no_timing,
        } => {
            let mut config = SuiteConfig::new(suite);
            config.n_min = n_min;
            config.n_max = n_max;
            if let Some(a) = a {
                config.a = a;
            }
            config.scripts = scripts;
            let report = run_suite(&config)?;
            emit(&report, !no_timing, out.as_deref())
        }
        Cmd::Replay { path, out, no_timing } => {
            let report = run_replay(&path)?;
            emit(&report, !no_timing, out.as_deref())
        }
        Cmd::Expand { out, n, a } => {
            std::fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            for s in appendix_scripts(&n, &a) {
                let p = out.join(format!("{}.txt", s.name));
                std::fs::write(&p, s.to_string()).with_context(|| format!("writing {}", p.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::FindConj { m, from, to } => {
            let a = PeriodSpec::parse(&from).map_err(anyhow::Error::msg)?.resolve(m)?;
            let b = PeriodSpec::parse(&to).map_err(anyhow::Error::msg)?.resolve(m)?;
            println!("from: {}\nto:   {}", a.describe(), b.describe());
            match find_monomial_conjugator(&a, &b, None) {
                Some(steps) => steps.iter().for_each(|s| println!("CONJ {s}")),
                None => println!("none"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
