mod problem;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use cmreg::reductions::{closure_experiment_with, rho, run_experiment_with, ExperimentReport, RhoResult};
use cmreg::regularity::{regularity_cyclic_with, RegularityCertificate, RegularityOptions};
use cmreg::selftest::{run_selftest, SelftestConfig, SelftestReport};
use cmreg::{Error, ExtDegree, Ideal};
use serde::Serialize;

use problem::{InputError, Overrides};

#[derive(Parser)]
#[command(
    name = "cmreg",
    version,
    about = "Castelnuovo-Mumford regularity of homogeneous ideals and their powers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for the random coordinate changes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Monomial order: grevlex (default) or lex.
    #[arg(long, global = true)]
    order: Option<String>,
    /// Coefficient field override: QQ or GF(p).
    #[arg(long, global = true)]
    field: Option<String>,
    /// Also write the report as JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Largest exponent tried when verifying a reduction.
    #[arg(long, global = true, default_value_t = 6)]
    cap: u32,
    /// Number of powers computed.
    #[arg(long = "max-n", global = true, default_value_t = 5)]
    max_n: u32,
    /// Permit prime fields with fewer than 11 elements.
    #[arg(long, global = true)]
    allow_small_field: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Regularity of I and R/I with its certificate.
    Reg { file: PathBuf },
    /// Minimal reduction degree of I with a witness reduction.
    Rho { file: PathBuf },
    /// reg(I^n) for n = 1..max-n with the linear tail and consistency checks.
    Powers { file: PathBuf },
    /// The same experiment for the integral closures of the powers of a monomial ideal.
    ClosurePowers { file: PathBuf },
    /// Run the built-in property suites.
    Selftest,
}

enum Failure {
    Input(InputError),
    Compute(Error),
    Io(String),
    SuitesFailed,
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::UnknownVariable(_)
        | Error::DuplicateVariable(_)
        | Error::NotHomogeneous(_)
        | Error::NotPrime(_)
        | Error::DivisionByZero(_) => 2,
        Error::RetriesExhausted { .. } | Error::FieldTooSmall { .. } => 3,
        Error::NotMonomial => 4,
        Error::ConsistencyViolation(_) => 5,
        _ => 1,
    }
}

#[derive(Serialize)]
struct InputEcho {
    variables: Vec<String>,
    field: String,
    order: String,
    ideal: Vec<String>,
}

impl InputEcho {
    fn of(i: &Ideal) -> InputEcho {
        InputEcho {
            variables: i.ring().variables().to_vec(),
            field: i.ring().field().to_string(),
            order: i.ring().order().to_string(),
            ideal: i.generator_strings(),
        }
    }
}

#[derive(Serialize)]
struct ReportFile<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<InputEcho>,
    result: T,
    wall_time_ms: u128,
}

#[derive(Serialize)]
struct RegResult {
    reg_ideal: ExtDegree,
    reg_quotient: ExtDegree,
    certificate: RegularityCertificate,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::SuitesFailed) => ExitCode::from(1),
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let overrides = Overrides {
        field: cli.field.as_deref(),
        order: cli.order.as_deref(),
    };
    let opts = RegularityOptions {
        seed: cli.seed,
        allow_small_field: cli.allow_small_field,
        ..Default::default()
    };
    let start = Instant::now();
    match &cli.command {
        Command::Reg { file } => {
            let i = problem::load(file, &overrides)?;
            let cert = regularity_cyclic_with(&i, &opts)?;
            let result = reg_result(&i, cert);
            print_reg(&result);
            emit(cli, "reg", Some(&i), &result, start)
        }
        Command::Rho { file } => {
            let i = problem::load(file, &overrides)?;
            let result = rho(&i, cli.cap)?;
            print_rho(&result);
            emit(cli, "rho", Some(&i), &result, start)
        }
        Command::Powers { file } => {
            let i = problem::load(file, &overrides)?;
            let report = run_experiment_with(&i, cli.max_n, cli.cap, &opts)?;
            print_experiment(&report);
            emit(cli, "powers", Some(&i), &report, start)
        }
        Command::ClosurePowers { file } => {
            let i = problem::load(file, &overrides)?;
            let report = closure_experiment_with(&i, cli.max_n, cli.cap, &opts)?;
            print_experiment(&report);
            emit(cli, "closure-powers", Some(&i), &report, start)
        }
        Command::Selftest => {
            let mut cfg = SelftestConfig {
                seed: cli.seed,
                n_cap: cli.cap,
                ..Default::default()
            };
            if let Some(f) = &cli.field {
                cfg.field = problem::parse_field(f)?;
            }
            let report = run_selftest(&cfg);
            print_selftest(&report);
            emit(cli, "selftest", None, &report, start)?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::SuitesFailed)
            }
        }
    }
}

fn reg_result(i: &Ideal, cert: RegularityCertificate) -> RegResult {
    // reg(R) = 0 for the unit ideal; the zero ideal is the zero module
    let reg_ideal = match cert.reg {
        _ if i.is_zero() => ExtDegree::NegInf,
        ExtDegree::NegInf => ExtDegree::Finite(0),
        ExtDegree::Finite(r) => ExtDegree::Finite(r + 1),
    };
    RegResult {
        reg_ideal,
        reg_quotient: cert.reg,
        certificate: cert,
    }
}

fn emit<T: Serialize>(cli: &Cli, command: &str, i: Option<&Ideal>, result: &T, start: Instant) -> Result<(), Failure> {
    let Some(path) = &cli.json else {
        return Ok(());
    };
    let report = ReportFile {
        tool: "cmreg",
        version: env!("CARGO_PKG_VERSION"),
        command,
        seed: cli.seed,
        input: i.map(InputEcho::of),
        result,
        wall_time_ms: start.elapsed().as_millis(),
    };
    write_json(path, &report)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::Io(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn print_reg(r: &RegResult) {
    println!("reg(I) = {}, reg(R/I) = {}", r.reg_ideal, r.reg_quotient);
    if r.certificate.degenerate {
        println!("note: unit ideal, R/I is the zero module");
    }
    println!("a-values: {}", join(&r.certificate.a_values));
    let seed = r
        .certificate
        .change
        .seed
        .map_or("supplied".to_string(), |s| s.to_string());
    println!(
        "coordinate change: seed {seed}, {} attempt(s), {}",
        r.certificate.attempts,
        if r.certificate.verified {
            "verified"
        } else {
            "unverified"
        }
    );
}

fn print_rho(r: &RhoResult) {
    println!("rho(I) = {}", r.rho);
    println!(
        "witness: J = ({}) with I^{} = J I^{}, d(J) = {}",
        join(&r.witness.ideal.minimal_generators()),
        r.witness.n + 1,
        r.witness.n,
        r.witness.d
    );
    if r.capped {
        println!("warning: reduction cap reached; rho is an upper bound");
    }
}

fn print_experiment(rep: &ExperimentReport) {
    let what = if rep.filtration == "closure" {
        "reg(cl(I^n))"
    } else {
        "reg(I^n)"
    };
    if rep.degenerate {
        println!("degenerate input: {}", join(&rep.warnings));
        return;
    }
    if let Some(gens) = &rep.closure_generators {
        for (k, g) in gens.iter().enumerate() {
            println!("cl(I^{}) = ({})", k + 1, g.join(", "));
        }
    }
    if let Some(flags) = &rep.stability {
        println!(
            "stability cl(I^(n+1)) = I cl(I^n), n = 1..{}: {}",
            flags.len(),
            join(flags)
        );
    }
    println!("{what}, n = 1..{}: {}", rep.max_n, join(&rep.reg_sequence));
    if let Some(r) = &rep.rho {
        println!(
            "rho(I) = {}{} (witness reduction of degree {} verified at n = {})",
            r.rho,
            if r.capped { " (upper bound)" } else { "" },
            r.witness.d,
            r.witness.n
        );
    }
    match &rep.tail {
        Some(t) => println!(
            "tail observed: {what} = {} n + {} for {} <= n <= {}",
            t.d, t.e, t.n0, rep.max_n
        ),
        None => println!("tail not stabilized"),
    }
    println!(
        "slope verdict: {}",
        serde_json::to_value(rep.slope_verdict).unwrap().as_str().unwrap()
    );
    for c in &rep.checks {
        let lower = match (c.lower_bound, c.lower_bound_holds) {
            (Some(b), Some(ok)) => format!(", d >= {b}: {}", if ok { "ok" } else { "FAILED" }),
            _ => String::new(),
        };
        println!(
            "  n = {}: d = {}, reg = {}, d <= reg: {}{lower}",
            c.n,
            c.d,
            c.reg,
            if c.generator_bound_holds { "ok" } else { "FAILED" }
        );
    }
    for w in &rep.warnings {
        println!("warning: {w}");
    }
}

fn print_selftest(rep: &SelftestReport) {
    for s in &rep.suites {
        println!(
            "{}: {} ({} cases, {} ms)",
            s.name,
            if s.passed() { "ok" } else { "FAILED" },
            s.cases,
            s.millis
        );
        for f in &s.failures {
            println!("  {f}");
        }
    }
}
