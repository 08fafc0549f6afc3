use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bsinterp::definable::definitions;
use bsinterp::fol::parse_formula;
use bsinterp::group::{BsGroup, GroupWord};
use bsinterp::interp::{code_delta, code_gamma, translate_expanded};
use bsinterp::suites::{render, run_suites, Suite, SuiteConfig};

#[derive(Parser)]
#[command(name = "bsinterp", version, about = "Arithmetic in BS(1,k), formula translation and the verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a word in the generators `a` and `b`, e.g. "inv(b) a b" or "a^3 b^-2".
    Eval {
        #[arg(short, default_value_t = 2)]
        k: i64,
        word: String,
    },
    /// Translate the formula in FILE through an interpretation code.
    Translate {
        file: PathBuf,
        #[arg(long, value_enum)]
        code: Code,
        #[arg(short, default_value_t = 2)]
        k: u64,
    },
    /// Run a verification suite and print its JSON report.
    Check(CheckArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Code {
    Delta,
    Gamma,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Facts,
    Group,
    Interp,
    Definable,
    Biinterp,
    Nonstd,
    All,
}

#[derive(clap::Args)]
struct CheckArgs {
    #[arg(value_enum)]
    suite: SuiteArg,
    #[arg(short, value_delimiter = ',', default_values_t = [2u64, 3, 6])]
    k: Vec<u64>,
    #[arg(long)]
    z_max: Option<i64>,
    #[arg(long)]
    i_max: Option<i64>,
    #[arg(long)]
    m_max: Option<i64>,
    #[arg(long)]
    ring_max: Option<i64>,
    #[arg(long)]
    n_max: Option<i64>,
    #[arg(long)]
    n_range: Option<i64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    mr_samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Break one claim on purpose; the report must then show violations.
    #[arg(long)]
    mutate: bool,
}

impl CheckArgs {
    fn config(&self) -> SuiteConfig {
        let d = SuiteConfig::default();
        SuiteConfig {
            ks: self.k.clone(),
            z_max: self.z_max.unwrap_or(d.z_max),
            i_max: self.i_max.unwrap_or(d.i_max),
            m_max: self.m_max.unwrap_or(d.m_max),
            ring_max: self.ring_max.unwrap_or(d.ring_max),
            n_max: self.n_max.unwrap_or(d.n_max),
            n_range: self.n_range.unwrap_or(d.n_range),
            samples: self.samples.unwrap_or(d.samples),
            mr_samples: self.mr_samples.unwrap_or(d.mr_samples),
            seed: self.seed.unwrap_or(d.seed),
            mutate: self.mutate,
            ..d
        }
    }

    fn suites(&self) -> Vec<Suite> {
        match self.suite {
            SuiteArg::Facts => vec![Suite::Facts],
            SuiteArg::Group => vec![Suite::Group],
            SuiteArg::Interp => vec![Suite::Interp],
            SuiteArg::Definable => vec![Suite::Definable],
            SuiteArg::Biinterp => vec![Suite::Biinterp],
            SuiteArg::Nonstd => vec![Suite::Nonstd],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn eval(k: i64, word: &str) -> bsinterp::Result<String> {
    let g = BsGroup::new(k)?;
    let w: GroupWord = word.parse()?;
    let bindings = HashMap::from([("a".to_string(), g.a()), ("b".to_string(), g.b())]);
    Ok(w.eval(&g, &bindings)?.to_string())
}

fn translate(file: &PathBuf, code: Code, k: u64) -> Result<String, String> {
    let src = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let run = || -> bsinterp::Result<String> {
        let code = match code {
            Code::Delta => code_delta(k)?,
            Code::Gamma => code_gamma(k)?,
        };
        let phi = parse_formula(src.trim(), code.source)?;
        Ok(translate_expanded(&phi, &code, &definitions(k)?)?.to_string())
    };
    run().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval { k, word } => match eval(k, &word) {
            Ok(s) => {
                println!("{s}");
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
        Command::Translate { file, code, k } => match translate(&file, code, k) {
            Ok(s) => {
                println!("{s}");
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
        Command::Check(args) => {
            let reports = match run_suites(&args.suites(), &args.config()) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            let json = render(&reports);
            match &args.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, format!("{json}\n")) {
                        return fail(format!("{}: {e}", path.display()));
                    }
                }
                None => println!("{json}"),
            }
            for r in &reports {
                eprintln!(
                    "{} k={}: {} checked, {} violations",
                    r.suite,
                    r.k,
                    r.checked,
                    r.violations.len()
                );
            }
            if reports.iter().all(|r| r.passed()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
