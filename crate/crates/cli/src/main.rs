//! `weyl-bianchi`: evolve single requests, run sweeps and the validation
//! suite.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage or configuration
//! error (including requests outside a method's domain).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use weyl_bianchi::harness::{evolve, load_config, parse_config, run_sweep, run_validation_suite, Method, Profile, RunConfig};
use weyl_bianchi::specfun::{bessel_j, complex_gamma, kummer_m, whittaker_w};
use weyl_bianchi::{Error, C64};

#[derive(Parser)]
#[command(name = "weyl-bianchi", version, about = "Weyl spinor propagators in power-law Bianchi I backgrounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one propagator and print it as JSON.
    Evolve {
        /// TOML run configuration; built-in defaults when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides `[method] name`.
        #[arg(long)]
        method: Option<Method>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the `[sweep]` grid and write CSV.
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides `[sweep] methods` with a single method.
        #[arg(long)]
        method: Option<Method>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance checks and write a JSON report.
    Validate {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides `[validation] profile`.
        #[arg(long)]
        profile: Option<Profile>,
        /// Overrides `[validation] seed`.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    #[command(hide = true)]
    Specfun {
        #[command(subcommand)]
        command: SpecfunCommand,
    },
}

#[derive(Subcommand)]
enum SpecfunCommand {
    /// Evaluate a special function; complex arguments are `re` or `re,im`.
    Eval {
        function: Function,
        #[arg(allow_hyphen_values = true, required = true)]
        args: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Function {
    /// gamma Z
    Gamma,
    /// bessel ORDER X
    Bessel,
    /// kummer A B Z
    Kummer,
    /// whittaker K M Z
    Whittaker,
}

fn config(path: Option<&Path>) -> Result<RunConfig, Error> {
    match path {
        Some(p) => load_config(p),
        None => parse_config(""),
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_complex(s: &str) -> Result<C64, Error> {
    let bad = || Error::Config { line: None, field: "argument".into(), message: format!("cannot parse `{s}` as re[,im]") };
    let mut parts = s.split(',');
    let re = parts.next().ok_or_else(bad)?.trim().parse::<f64>().map_err(|_| bad())?;
    let im = match parts.next() {
        Some(p) => p.trim().parse::<f64>().map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(C64::new(re, im))
}

fn eval_specfun(function: Function, args: &[String], sc: &weyl_bianchi::SeriesControl) -> Result<C64, Error> {
    let want = match function {
        Function::Gamma => 1,
        Function::Bessel => 2,
        Function::Kummer | Function::Whittaker => 3,
    };
    if args.len() != want {
        return Err(Error::Config {
            line: None,
            field: "argument".into(),
            message: format!("expected {want} arguments, got {}", args.len()),
        });
    }
    let a: Vec<C64> = args.iter().map(|s| parse_complex(s)).collect::<Result<_, _>>()?;
    match function {
        Function::Gamma => complex_gamma(a[0]),
        Function::Bessel => {
            if a[1].im != 0.0 {
                return Err(Error::Domain("bessel argument must be real".into()));
            }
            bessel_j(a[0], a[1].re, sc)
        }
        Function::Kummer => kummer_m(a[0], a[1], a[2], sc),
        Function::Whittaker => whittaker_w(a[0], a[1], a[2], sc),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Evolve { config: path, method, out } => {
            let mut cfg = config(path.as_deref())?;
            if let Some(m) = method {
                cfg.method.name = m;
            }
            let res = evolve(&cfg.request()?)?;
            for w in &res.regime_warnings {
                eprintln!("warning: {w}");
            }
            let p = res.propagator;
            let doc = json!({
                "schema": 1,
                "config": cfg.to_toml(),
                "method": res.method.to_string(),
                "k11": [p.k11.re, p.k11.im],
                "k12": [p.k12.re, p.k12.im],
                "diagnostics": res.diagnostics,
                "regime_warnings": res.regime_warnings,
            });
            write_output(out.as_deref(), &format!("{}\n", serde_json::to_string_pretty(&doc).expect("json")))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep { config: path, method, out } => {
            let mut cfg = config(path.as_deref())?;
            if let Some(m) = method {
                cfg.sweep.methods = vec![m];
            }
            write_output(out.as_deref(), &run_sweep(&cfg)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { config: path, profile, seed, out } => {
            let mut cfg = config(path.as_deref())?;
            if let Some(p) = profile {
                cfg.validation.profile = p;
            }
            if let Some(s) = seed {
                cfg.validation.seed = s;
            }
            let mut report = run_validation_suite(cfg.validation.profile, cfg.validation.seed);
            report.config = Some(cfg.to_toml());
            for c in &report.criteria {
                eprintln!("{}", c.summary());
            }
            write_output(out.as_deref(), &format!("{}\n", report.to_json()))?;
            Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Specfun { command: SpecfunCommand::Eval { function, args } } => {
            let v = eval_specfun(function, &args, &weyl_bianchi::SeriesControl::default())?;
            println!("{:.16e} {:.16e}", v.re, v.im);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
