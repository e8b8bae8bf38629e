//! Batch front end: one subcommand per pipeline, JSON or text reports, and
//! exit codes that encode the mathematical outcome.

mod commands;
mod text;

use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arith::FactorBudget;
use crate::certificates::{Budgets, FamilyDescriptor};
use crate::dynamics::{DEFAULT_DIGIT_BUDGET, OdoniPrimeFamily, TrinomialFamily, VojtaFamily};
use crate::error::{Error, Result};
use crate::poly::{DEFAULT_DEGREE_CAP, Trinomial};

/// Environment variable holding default budgets, e.g.
/// `digits=200000,degree=6561,trial=65536,rho=1048576,mr=40`.
pub const BUDGET_ENV: &str = "ARBOREAL_BUDGETS";

/// The mathematical outcome of a run, mapped onto the process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// The expected statement holds at the computed depth.
    Confirmed,
    /// A counterexample or failing level was found.
    Refuted,
    /// Budgets ran out before a decision.
    Inconclusive,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Confirmed => 0,
            Outcome::Refuted => 2,
            Outcome::Inconclusive => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "arboreal", version, about = "Exact certificates for arboreal Galois images of trinomials")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalArgs {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for every randomized step.
    #[arg(long, default_value_t = 0x5eed, global = true)]
    pub seed: u64,
    /// Worker threads for sweeps (0 = all cores).
    #[arg(long, default_value_t = 0, global = true)]
    pub jobs: usize,
    /// Largest orbit value, in decimal digits.
    #[arg(long, global = true)]
    pub digit_budget: Option<usize>,
    /// Largest polynomial degree to build explicitly.
    #[arg(long, global = true)]
    pub degree_cap: Option<usize>,
    /// Trial division bound for witness factoring.
    #[arg(long, global = true)]
    pub trial_bound: Option<u64>,
    /// Pollard rho iterations per composite.
    #[arg(long, global = true)]
    pub rho_iterations: Option<u64>,
    /// Miller-Rabin rounds above 2^64.
    #[arg(long, global = true)]
    pub mr_rounds: Option<u32>,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "command")]
pub enum Command {
    /// Level certificates for x^p + kp x^(p-1) - kp.
    CertifyOdoni {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        depth: u32,
    },
    /// Level certificates for x^3 + 7x^2 - 7.
    CertifyIndex2 {
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
        depth: u32,
    },
    /// Level certificates for x^d - cd x^(d-1) + c(d-1).
    CertifyVojta {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        c: u64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        depth: u32,
    },
    /// Closed-form trinomial discriminants against the resultant.
    DiscCheck {
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Also check the iterate discriminant formula on x^3 + 6x^2 - 6.
        #[arg(long)]
        iterates: bool,
    },
    /// Factorization statistics of an iterate against exact group data.
    Frobenius {
        /// odoni:P:K, vojta:D:C, index2 or trinomial:D:S:A:B
        #[arg(long)]
        family: FamilySpec,
        #[arg(long, default_value_t = 2)]
        level: u32,
        #[arg(long, default_value_t = 100_000)]
        pmax: u64,
    },
    /// Proportion of primes dividing some iterate of a0.
    Density {
        #[arg(long)]
        family: FamilySpec,
        #[arg(long, allow_hyphen_values = true)]
        a0: String,
        #[arg(long, default_value_t = 100_000)]
        pmax: u64,
    },
    /// Parameter polynomials phi_(C,n)(0) and their Moebius quotients.
    Dynatomic {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 4)]
        nmax: u32,
    },
    /// Newton polygon certificate for x^d + A x^s + B at p.
    Newton {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        s: u32,
        #[arg(long = "A", allow_hyphen_values = true)]
        #[serde(rename = "A")]
        a: String,
        #[arg(long = "B", allow_hyphen_values = true)]
        #[serde(rename = "B")]
        b: String,
        #[arg(long)]
        p: u64,
    },
    /// Listed curve points, coordinate changes and a bounded search.
    Curves {
        #[arg(long, default_value_t = crate::certificates::C2_SEARCH_DEFAULT)]
        bound: i64,
    },
}

/// A family named on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(into = "FamilyDescriptor")]
pub struct FamilySpec(pub TrinomialFamily);

impl From<FamilySpec> for FamilyDescriptor {
    fn from(f: FamilySpec) -> Self {
        FamilyDescriptor::from(&f.0)
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let int = |t: &str| -> Result<u64> {
            t.parse()
                .map_err(|_| Error::InvalidParameters(format!("bad integer {t:?} in family {s:?}")))
        };
        let big = |t: &str| -> Result<num_bigint::BigInt> {
            t.parse()
                .map_err(|_| Error::InvalidParameters(format!("bad integer {t:?} in family {s:?}")))
        };
        let family = match parts.as_slice() {
            ["odoni", p, k] => TrinomialFamily::Odoni(OdoniPrimeFamily::new(int(p)?, int(k)?)?),
            ["vojta", d, c] => TrinomialFamily::Vojta(VojtaFamily::new(int(d)? as u32, int(c)?)?),
            ["index2"] => TrinomialFamily::index2(),
            ["trinomial", d, s, a, b] => {
                TrinomialFamily::Generic(Trinomial::new(int(d)? as u32, int(s)? as u32, big(a)?, big(b)?)?)
            }
            _ => {
                return Err(Error::InvalidParameters(format!(
                    "family {s:?} is not odoni:P:K, vojta:D:C, index2 or trinomial:D:S:A:B"
                )));
            }
        };
        Ok(Self(family))
    }
}

/// Budget defaults, overridden first by the environment and then by flags.
pub fn resolve_budgets(global: &GlobalArgs, depth: u32, env: Option<&str>) -> Result<Budgets> {
    let mut budgets = Budgets {
        depth,
        digit_budget: DEFAULT_DIGIT_BUDGET,
        degree_cap: DEFAULT_DEGREE_CAP,
        factor: FactorBudget {
            seed: global.seed,
            ..FactorBudget::default()
        },
    };
    if let Some(env) = env.filter(|e| !e.trim().is_empty()) {
        for item in env.split(',') {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameters(format!("{BUDGET_ENV}: expected key=value, got {item:?}")))?;
            let bad = || Error::InvalidParameters(format!("{BUDGET_ENV}: bad value for {key}: {value:?}"));
            let value = value.trim();
            match key.trim() {
                "digits" => budgets.digit_budget = value.parse().map_err(|_| bad())?,
                "degree" => budgets.degree_cap = value.parse().map_err(|_| bad())?,
                "trial" => budgets.factor.trial_bound = value.parse().map_err(|_| bad())?,
                "rho" => budgets.factor.rho_iterations = value.parse().map_err(|_| bad())?,
                "mr" => budgets.factor.mr_rounds = value.parse().map_err(|_| bad())?,
                other => return Err(Error::InvalidParameters(format!("{BUDGET_ENV}: unknown key {other:?}"))),
            }
        }
    }
    if let Some(v) = global.digit_budget {
        budgets.digit_budget = v;
    }
    if let Some(v) = global.degree_cap {
        budgets.degree_cap = v;
    }
    if let Some(v) = global.trial_bound {
        budgets.factor.trial_bound = v;
    }
    if let Some(v) = global.rho_iterations {
        budgets.factor.rho_iterations = v;
    }
    if let Some(v) = global.mr_rounds {
        budgets.factor.mr_rounds = v;
    }
    if budgets.digit_budget == 0 || budgets.degree_cap == 0 || budgets.factor.mr_rounds == 0 {
        return Err(Error::InvalidParameters("budgets must be positive".into()));
    }
    Ok(budgets)
}

/// Envelope written for every subcommand.
#[derive(Debug, Serialize)]
pub struct Report<T: Serialize> {
    pub tool_version: &'static str,
    pub config: Config,
    pub outcome: Outcome,
    pub result: T,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct Config {
    #[serde(flatten)]
    pub command: Command,
    pub seed: u64,
    pub budgets: Budgets,
}

/// Parses `args`, runs the subcommand, writes the report to `out`, and
/// returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let env = std::env::var(BUDGET_ENV).ok();
    match execute(&cli, env.as_deref(), out) {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

/// Runs a parsed command inside a pool sized by `--jobs`.
pub fn execute(cli: &Cli, env: Option<&str>, out: &mut dyn Write) -> Result<Outcome> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.jobs)
        .build()
        .map_err(|e| Error::InvalidParameters(format!("thread pool: {e}")))?;
    let started = Instant::now();
    let (outcome, payload) = pool.install(|| commands::dispatch(cli, env))?;
    let budgets = resolve_budgets(&cli.global, commands::depth_of(&cli.command), env)?;
    let config = Config {
        command: cli.command.clone(),
        seed: cli.global.seed,
        budgets,
    };
    let report = Report {
        tool_version: crate::certificates::TOOL_VERSION,
        config,
        outcome,
        result: payload,
        elapsed_ms: started.elapsed().as_millis(),
    };
    let io = |e: std::io::Error| Error::InvalidParameters(format!("write failed: {e}"));
    match cli.global.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &report).map_err(|e| Error::Inconsistent(e.to_string()))?;
            writeln!(out).map_err(io)?;
        }
        Format::Text => {
            out.write_all(text::render(&cli.command, &report.result, outcome).as_bytes()).map_err(io)?;
        }
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("arboreal").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn family_specs() {
        assert!(matches!("odoni:3:2".parse::<FamilySpec>().unwrap().0, TrinomialFamily::Odoni(_)));
        assert!("odoni:4:1".parse::<FamilySpec>().is_err());
        assert_eq!("index2".parse::<FamilySpec>().unwrap().0, TrinomialFamily::index2());
        assert!("trinomial:3:2:6:-6".parse::<FamilySpec>().is_ok());
        assert!("cubic".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn budget_layers() {
        let cli = Cli::try_parse_from(["arboreal", "--trial-bound", "99", "curves"]).unwrap();
        let b = resolve_budgets(&cli.global, 3, Some("digits=500, trial=7")).unwrap();
        assert_eq!((b.digit_budget, b.factor.trial_bound, b.depth), (500, 99, 3));
        assert!(resolve_budgets(&cli.global, 3, Some("digits=x")).is_err());
        assert!(resolve_budgets(&cli.global, 3, Some("speed=1")).is_err());
    }

    #[test]
    fn usage_errors_and_help() {
        assert_eq!(run_capture(&["certify-odoni", "--p", "4", "--k", "1"]).0, 1);
        assert_eq!(run_capture(&["certify-index2", "--depth", "0"]).0, 1);
        assert_eq!(run_capture(&["bogus"]).0, 1);
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("certify-odoni"));
    }

    #[test]
    fn odoni_json() {
        let (code, out, _) = run_capture(&["--format", "json", "certify-odoni", "--p", "3", "--k", "2", "--depth", "3"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["levels"][0]["verdict"], "maximal");
        assert_eq!(v["config"]["command"], "certify-odoni");
        assert_eq!(v["outcome"], "confirmed");
    }
}
