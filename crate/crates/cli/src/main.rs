use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use unimap::closed_forms::{hz_polynomial, new_polynomial, Method};
use unimap::maps_oracle::ORACLE_DEFAULT_CAP;
use unimap::symbolic::stanley_polynomial;
use unimap::verify::{run_suite, Suite};
use unimap::Error;
use unimap_cli::{method_tables, records, to_csv, to_json};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP_REFUSED: u8 = 3;

/// Rooted one-face map counts A(n, g), computed exactly and cross-checked.
#[derive(Debug, Parser)]
#[command(name = "unimap", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print A(n, g) for 1 <= n <= n-max.
    Table {
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum)]
        method: TableMethod,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Allow the oracle beyond its enumeration cap.
        #[arg(long)]
        force: bool,
    },
    /// Print the coefficients of A_n(x) as `exponent:coefficient` lines.
    Poly {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        form: PolyForm,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long)]
        n_max: Option<usize>,
        /// Allow n-max beyond the suite's default cap.
        #[arg(long)]
        force: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableMethod {
    LehmanWalsh,
    OddCycles,
    Convolution,
    HzCoeff,
    HzRec,
    Chapuy,
    Oracle,
}

impl From<TableMethod> for Method {
    fn from(m: TableMethod) -> Method {
        match m {
            TableMethod::LehmanWalsh => Method::LehmanWalsh,
            TableMethod::OddCycles => Method::OddCycles,
            TableMethod::Convolution => Method::Convolution,
            TableMethod::HzCoeff => Method::HzCoeff,
            TableMethod::HzRec => Method::HzRec,
            TableMethod::Chapuy => Method::Chapuy,
            TableMethod::Oracle => Method::Oracle,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PolyForm {
    Hz,
    New,
    Stanley,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Identities,
    Involutions,
    Oracle,
    Polynomials,
    Concavity,
    All,
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("unimap: {msg}");
    ExitCode::from(code)
}

fn oracle_cap() -> Result<usize, String> {
    match std::env::var("UNIMAP_ORACLE_CAP") {
        Ok(v) => v
            .parse()
            .map_err(|_| format!("UNIMAP_ORACLE_CAP must be a nonnegative integer, got {v:?}")),
        Err(_) => Ok(ORACLE_DEFAULT_CAP),
    }
}

fn cmd_table(n_max: usize, method: Method, format: Format, force: bool) -> ExitCode {
    if n_max == 0 {
        return fail(EXIT_USAGE, "--n-max must be at least 1");
    }
    let mut cap = match oracle_cap() {
        Ok(c) => c,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    if method == Method::Oracle && n_max > cap {
        if !force {
            return fail(
                EXIT_CAP_REFUSED,
                format!("oracle is capped at n = {cap}; pass --force to enumerate n = {n_max}"),
            );
        }
        cap = n_max;
    }
    let tables = match method_tables(n_max, method, cap) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    let records = records(&tables);
    match format {
        Format::Csv => print!("{}", to_csv(&records)),
        Format::Json => println!("{}", to_json(&records)),
    }
    ExitCode::SUCCESS
}

fn cmd_poly(n: usize, form: PolyForm) -> ExitCode {
    if n == 0 {
        return fail(EXIT_USAGE, "--n must be at least 1");
    }
    let p = match form {
        PolyForm::Hz => hz_polynomial(n),
        PolyForm::New => new_polynomial(n),
        PolyForm::Stanley => stanley_polynomial(n),
    };
    for (e, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            println!("{e}:{c}");
        }
    }
    ExitCode::SUCCESS
}

fn cmd_verify(suite: SuiteArg, n_max: Option<usize>, force: bool) -> ExitCode {
    let oracle_cap = match oracle_cap() {
        Ok(c) => c,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    let cap_of = |s: Suite| {
        if s == Suite::Oracle {
            oracle_cap
        } else {
            s.default_cap()
        }
    };
    let plan: Vec<(Suite, usize)> = match suite {
        SuiteArg::All => Suite::ALL
            .into_iter()
            .map(|s| {
                let n = n_max.unwrap_or(s.default_n_max());
                (s, if force { n } else { n.min(cap_of(s)) })
            })
            .collect(),
        single => {
            let s = match single {
                SuiteArg::Identities => Suite::Identities,
                SuiteArg::Involutions => Suite::Involutions,
                SuiteArg::Oracle => Suite::Oracle,
                SuiteArg::Polynomials => Suite::Polynomials,
                SuiteArg::Concavity => Suite::Concavity,
                SuiteArg::All => unreachable!(),
            };
            let n = n_max.unwrap_or(s.default_n_max());
            if n > cap_of(s) && !force {
                return fail(
                    EXIT_CAP_REFUSED,
                    format!(
                        "suite {s} is capped at n = {}; pass --force to run n = {n}",
                        cap_of(s)
                    ),
                );
            }
            vec![(s, n)]
        }
    };

    let mut all_passed = true;
    for (s, n) in plan {
        let cap = if force { n.max(oracle_cap) } else { oracle_cap };
        let results = match run_suite(s, n, cap) {
            Ok(r) => r,
            Err(e @ Error::BoundExceeded { .. }) => return fail(EXIT_CAP_REFUSED, e),
            Err(e) => return fail(EXIT_VERIFY_FAILED, e),
        };
        for r in results {
            let status = if r.passed { "PASS" } else { "FAIL" };
            println!("{status} {}/{}: {}", r.suite, r.name, r.detail);
            all_passed &= r.passed;
        }
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAILED)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Table {
            n_max,
            method,
            format,
            force,
        } => cmd_table(n_max, method.into(), format, force),
        Command::Poly { n, form } => cmd_poly(n, form),
        Command::Verify {
            suite,
            n_max,
            force,
        } => cmd_verify(suite, n_max, force),
    }
}
