use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ncprob::cumulants::{cumulants_to_moments, moments_to_cumulants, CumulantKind};
use ncprob::functionals::{
    cumulants_from_json, cumulants_to_json, state_from_json, state_to_json, StateTable,
};
use ncprob::hopf::{
    delta, delta_b, delta_f, delta_half, delta_m_linearized, reduce, Coproduct, Side,
};
use ncprob::universal::{additive_convolution, UniversalKind};
use ncprob::verify::{self, Config, Suite};
use ncprob::{Bar, Error, Flavor, Tensor};

const DEFAULT_CAP: usize = 8;

#[derive(Parser)]
#[command(name = "ncprob", version, about = "Exact Hopf-algebraic calculus for non-commutative probability")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a coproduct of a word or bar-monomial.
    Coproduct {
        #[arg(long = "type", value_enum)]
        kind: CoproductType,
        /// Word (`a1.a2.a3`) or bar expression (`[a1.a2|a3]`).
        #[arg(long)]
        input: String,
        /// Drop the primitive terms `x⊗1` and `1⊗x`.
        #[arg(long)]
        reduced: bool,
    },
    /// Moments to cumulants.
    Cumulants {
        #[arg(long)]
        kind: KindArg,
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        max_degree: usize,
    },
    /// Cumulants to moments.
    Moments {
        #[arg(long)]
        kind: KindArg,
        #[arg(long)]
        cumulants: PathBuf,
    },
    /// Additive convolution of two states through a universal product.
    Convolve {
        #[arg(long)]
        kind: UniversalArg,
        #[arg(long)]
        state1: PathBuf,
        #[arg(long)]
        state2: PathBuf,
        #[arg(long)]
        max_degree: usize,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        letters: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CoproductType {
    Full,
    Prec,
    Succ,
    M,
    Dm,
    B,
    F,
}

#[derive(Clone, Copy)]
struct KindArg(CumulantKind);

impl std::str::FromStr for KindArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        s.parse().map(KindArg).map_err(|e: Error| e.to_string())
    }
}

#[derive(Clone, Copy)]
struct UniversalArg(UniversalKind);

impl std::str::FromStr for UniversalArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        s.parse().map(UniversalArg).map_err(|e: Error| e.to_string())
    }
}

enum Failure {
    Lib(Error),
    Io(String),
    /// A verification run that completed with failing checks.
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::DegreeExceeded { .. } => 3,
        Error::KindMismatch(_) => 4,
        Error::UnknownSuite(_) => 5,
        _ => 1,
    }
}

fn degree_cap() -> Result<usize, Failure> {
    match std::env::var("NCPROB_MAX_DEGREE_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("NCPROB_MAX_DEGREE_CAP must be an integer, got `{v}`")).into()),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn within_cap(degree: usize) -> Result<(), Failure> {
    let cap = degree_cap()?;
    if degree > cap {
        return Err(Error::DegreeExceeded { degree, max: cap }.into());
    }
    Ok(())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// A truncated copy of `phi`, or DegreeExceeded if it is too shallow.
fn at_degree(phi: StateTable, max_degree: usize) -> Result<StateTable, Failure> {
    if max_degree > phi.max_degree() {
        return Err(Error::DegreeExceeded {
            degree: max_degree,
            max: phi.max_degree(),
        }
        .into());
    }
    Ok(phi.truncate(max_degree))
}

#[derive(Serialize)]
struct Record {
    left: String,
    right: String,
    coeff: String,
}

/// A single word renders in word syntax, longer bar-monomials in brackets.
fn leg(b: &Bar) -> String {
    match b.as_word() {
        Some(w) => w.to_string(),
        None if b.is_unit() => "1".into(),
        None => format!(
            "[{}]",
            b.words().iter().map(|w| w.to_string()).collect::<Vec<_>>().join("|")
        ),
    }
}

fn records(c: &Coproduct) -> Vec<Record> {
    let mut rows: Vec<(usize, String, usize, String, String)> = c
        .iter()
        .map(|(Tensor(l, r), k)| (l.degree(), leg(l), r.degree(), leg(r), k.to_string()))
        .collect();
    rows.sort();
    rows.into_iter()
        .map(|(_, left, _, right, coeff)| Record { left, right, coeff })
        .collect()
}

fn coproduct(kind: CoproductType, input: &str, reduced: bool) -> Result<String, Failure> {
    let flavor = match kind {
        CoproductType::Full | CoproductType::Prec | CoproductType::Succ => Flavor::Ordered,
        _ => Flavor::Commutative,
    };
    let x = Bar::parse(input, flavor)?;
    within_cap(x.degree())?;
    let maybe_reduce = |c: Coproduct| if reduced { reduce(&c, &x) } else { c };
    let c = match kind {
        CoproductType::Full => maybe_reduce(delta(&x, Flavor::Ordered)),
        CoproductType::M => maybe_reduce(delta(&x, Flavor::Commutative)),
        CoproductType::B => maybe_reduce(delta_b(&x)),
        CoproductType::F => maybe_reduce(delta_f(&x)),
        CoproductType::Prec => delta_half(&x, Side::Prec, reduced)?,
        CoproductType::Succ => delta_half(&x, Side::Succ, reduced)?,
        CoproductType::Dm => {
            let w = x.as_word().ok_or_else(|| {
                Error::KindMismatch("the linearized coproduct takes a single word".into())
            })?;
            delta_m_linearized(w).map_basis(|t| {
                Tensor(
                    Bar::word(t.0.clone(), flavor),
                    Bar::word(t.1.clone(), flavor),
                )
            })
        }
    };
    Ok(serde_json::to_string_pretty(&records(&c)).expect("plain data serializes"))
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Coproduct { kind, input, reduced } => coproduct(kind, &input, reduced),
        Command::Cumulants { kind, state, max_degree } => {
            within_cap(max_degree)?;
            let phi = at_degree(state_from_json(&read(&state)?)?, max_degree)?;
            Ok(cumulants_to_json(&moments_to_cumulants(kind.0, &phi)?))
        }
        Command::Moments { kind, cumulants } => {
            let c = cumulants_from_json(&read(&cumulants)?)?;
            within_cap(c.max_degree())?;
            Ok(state_to_json(&cumulants_to_moments(kind.0, &c)?))
        }
        Command::Convolve { kind, state1, state2, max_degree } => {
            within_cap(max_degree)?;
            let phi = at_degree(state_from_json(&read(&state1)?)?, max_degree)?;
            let psi = at_degree(state_from_json(&read(&state2)?)?, max_degree)?;
            Ok(state_to_json(&additive_convolution(kind.0, &phi, &psi, max_degree)?))
        }
        Command::Verify { suite, seed, max_degree, trials, letters } => {
            let suite: Suite = suite.parse()?;
            within_cap(max_degree)?;
            let cfg = Config { seed, max_degree, trials, letters };
            let report = verify::run(suite, &cfg)?;
            eprint!("{}", report.render_timings());
            if report.passed() {
                Ok(report.render())
            } else {
                emit(&report.render());
                Err(Failure::Checks)
            }
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{}", text.trim_end());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(cli.command);
    eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
    match outcome {
        Ok(text) => {
            emit(&text);
            ExitCode::SUCCESS
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Checks) => ExitCode::from(1),
    }
}
