//! Command-line front end. The binary is a thin wrapper around [`run_cli`].
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 when a numeric or
//! self-check failure was detected (the output is still written).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::format::sig;
use crate::limit::{self, LimitDistribution, LimitSpec};
use crate::mc::{self, ExperimentConfig, ExperimentReport};
use crate::oracle::{self, Rational};
use crate::policy::Policy;
use crate::table1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK: i32 = 2;

const DEFAULT_EPS: f64 = 1e-10;
const SIG_DIGITS: usize = 10;

#[derive(Debug, Parser)]
#[command(
    name = "coalesced",
    version,
    about = "Coalesced hashing (LISCH/EISCH): limit laws, simulation and exact checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Limit distribution p(k) for one policy and load factor.
    Limits {
        #[arg(long, value_parser = parse_alpha)]
        alpha: f64,
        #[arg(long, value_parser = parse_policy)]
        policy: Policy,
        /// Last k to tabulate.
        #[arg(long, conflicts_with = "eps")]
        kmax: Option<usize>,
        /// Tabulate until the certified tail bound drops below this.
        #[arg(long)]
        eps: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Limit mean and variance (all policies unless one is given).
    Moments {
        #[arg(long, value_parser = parse_alpha)]
        alpha: f64,
        #[arg(long, value_parser = parse_policy)]
        policy: Option<Policy>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Reference table at alpha = 0.5 and 1 with printed-precision rounding.
    Table1 {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Monte Carlo experiment on random tables.
    Simulate {
        #[arg(short, long)]
        m: usize,
        #[arg(short, long)]
        n: usize,
        #[arg(long, value_parser = parse_policy)]
        policy: Policy,
        #[arg(long, default_value_t = 20)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Last k shown in human and CSV summaries.
        #[arg(long, default_value_t = 10)]
        kmax: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact distribution over all m^n hash sequences.
    Oracle {
        #[arg(short, long)]
        m: usize,
        #[arg(short, long)]
        n: usize,
        #[arg(long, value_parser = parse_policy, default_value = "L")]
        policy: Policy,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Simulated Yule process population against its geometric law.
    YuleCheck {
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format (simulate defaults to json, everything else to human).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    let a: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&a) {
        Ok(a)
    } else {
        Err(format!("load factor must lie in [0, 1], got {s}"))
    }
}

fn parse_policy(s: &str) -> Result<Policy, String> {
    s.parse()
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Check(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NumericFailure(_) => CliError::Check(e.to_string()),
            Error::TooLarge { m, .. } => CliError::Usage(format!(
                "{e}; with m = {m} at most n = {} can be enumerated",
                oracle::max_enumerable_n(m)
            )),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Rendered output plus the first failed self-check, if any.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub failure: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self {
            text,
            failure: None,
        }
    }
}

/// Parses `args` (program name first), runs the command, and writes to the
/// given streams. Returns the process exit code.
pub fn run_cli<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let stream: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = stream.write_all(text.as_bytes());
            return code;
        }
    };
    let out_path = cli.command.output().out.clone();
    match run(&cli.command) {
        Ok(outcome) => {
            let written = match &out_path {
                Some(path) => std::fs::write(path, &outcome.text),
                None => stdout.write_all(outcome.text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: cannot write output: {e}");
                return EXIT_USAGE;
            }
            match outcome.failure {
                Some(msg) => {
                    let _ = writeln!(stderr, "self-check failed: {msg}");
                    EXIT_CHECK
                }
                None => EXIT_OK,
            }
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Check(msg)) => {
            let _ = writeln!(stderr, "numeric failure: {msg}");
            EXIT_CHECK
        }
    }
}

impl Command {
    fn output(&self) -> &OutputArgs {
        match self {
            Command::Limits { output, .. }
            | Command::Moments { output, .. }
            | Command::Table1 { output }
            | Command::Simulate { output, .. }
            | Command::Oracle { output, .. }
            | Command::YuleCheck { output, .. } => output,
        }
    }
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    let format = command.output().format;
    match *command {
        Command::Limits {
            alpha,
            policy,
            kmax,
            eps,
            ..
        } => cmd_limits(alpha, policy, kmax, eps, format.unwrap_or(Format::Human)),
        Command::Moments { alpha, policy, .. } => {
            cmd_moments(alpha, policy, format.unwrap_or(Format::Human))
        }
        Command::Table1 { .. } => cmd_table1(format.unwrap_or(Format::Human)),
        Command::Simulate {
            m,
            n,
            policy,
            reps,
            seed,
            kmax,
            ..
        } => {
            let config = ExperimentConfig {
                k_max: kmax,
                ..ExperimentConfig::new(m, n, policy, reps, seed)
            };
            cmd_simulate(&config, format.unwrap_or(Format::Json))
        }
        Command::Oracle { m, n, policy, .. } => {
            cmd_oracle(m, n, policy, format.unwrap_or(Format::Human))
        }
        Command::YuleCheck {
            t, samples, seed, ..
        } => cmd_yule(t, samples, seed, format.unwrap_or(Format::Human)),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct LimitsOutput<'a> {
    schema_version: u32,
    #[serde(flatten)]
    distribution: &'a LimitDistribution,
}

pub fn cmd_limits(
    alpha: f64,
    policy: Policy,
    kmax: Option<usize>,
    eps: Option<f64>,
    format: Format,
) -> Result<Outcome, CliError> {
    let spec = LimitSpec::new(alpha, policy)?;
    let d = match kmax {
        Some(k) => limit::tabulate(spec, k),
        None => limit::build_distribution(spec, eps.unwrap_or(DEFAULT_EPS))?,
    };
    let total = d.total_mass();
    let failure =
        ((total - 1.0).abs() > 1e-9).then(|| format!("probabilities and tail sum to {total}"));
    let text = match format {
        Format::Json => to_json(&LimitsOutput {
            schema_version: mc::SCHEMA_VERSION,
            distribution: &d,
        }),
        Format::Csv => {
            let mut s = String::from("k,p\n");
            for (k, p) in d.probs.iter().enumerate() {
                s.push_str(&format!("{k},{}\n", sig(*p, SIG_DIGITS)));
            }
            s
        }
        Format::Human => {
            let mut s = format!("alpha = {alpha}, policy = {policy}\n\n");
            s.push_str(&format!("{:>6}  {}\n", "k", "p(k)"));
            for (k, p) in d.probs.iter().enumerate() {
                s.push_str(&format!("{k:>6}  {}\n", sig(*p, SIG_DIGITS)));
            }
            s.push_str(&format!(
                "\ntail (k > {}) = {}  (bound {})\n",
                d.k_max,
                sig(d.tail_mass, 4),
                sig(d.tail_bound, 4)
            ));
            s.push_str(&format!("mean     = {}\n", sig(d.mean, SIG_DIGITS)));
            s.push_str(&format!("variance = {}\n", sig(d.variance, SIG_DIGITS)));
            s
        }
    };
    Ok(Outcome { text, failure })
}

#[derive(Serialize)]
struct MomentRow {
    policy: Policy,
    mean: f64,
    variance: f64,
}

#[derive(Serialize)]
struct MomentsOutput {
    schema_version: u32,
    alpha: f64,
    moments: Vec<MomentRow>,
    /// Probes `max(d^U, 1)` of an unsuccessful search.
    #[serde(skip_serializing_if = "Option::is_none")]
    unsuccessful_probes: Option<limit::ProbeStats>,
}

pub fn cmd_moments(
    alpha: f64,
    policy: Option<Policy>,
    format: Format,
) -> Result<Outcome, CliError> {
    let policies: Vec<Policy> = match policy {
        Some(p) => vec![p],
        None => Policy::ALL.to_vec(),
    };
    let mut moments = Vec::new();
    for p in &policies {
        let spec = LimitSpec::new(alpha, *p)?;
        moments.push(MomentRow {
            policy: *p,
            mean: limit::mean_limit(spec),
            variance: limit::var_limit(spec),
        });
    }
    let probes = if policies.contains(&Policy::Unsuccessful) {
        Some(limit::probe_stats_unsuccessful(alpha)?)
    } else {
        None
    };
    let text = match format {
        Format::Json => to_json(&MomentsOutput {
            schema_version: mc::SCHEMA_VERSION,
            alpha,
            moments,
            unsuccessful_probes: probes,
        }),
        Format::Csv => {
            let mut s = String::from("quantity,mean,variance\n");
            for r in &moments {
                s.push_str(&format!(
                    "{},{},{}\n",
                    r.policy,
                    sig(r.mean, SIG_DIGITS),
                    sig(r.variance, SIG_DIGITS)
                ));
            }
            if let Some(p) = probes {
                s.push_str(&format!(
                    "probes_U,{},{}\n",
                    sig(p.mean, SIG_DIGITS),
                    sig(p.variance, SIG_DIGITS)
                ));
            }
            s
        }
        Format::Human => {
            let mut s = format!(
                "alpha = {alpha}\n\n{:>10}  {:>14}  {:>14}\n",
                "", "mean", "variance"
            );
            for r in &moments {
                s.push_str(&format!(
                    "{:>10}  {:>14}  {:>14}\n",
                    r.policy.to_string(),
                    sig(r.mean, SIG_DIGITS),
                    sig(r.variance, SIG_DIGITS)
                ));
            }
            if let Some(p) = probes {
                s.push_str(&format!(
                    "{:>10}  {:>14}  {:>14}\n",
                    "probes U",
                    sig(p.mean, SIG_DIGITS),
                    sig(p.variance, SIG_DIGITS)
                ));
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct Table1Output<'a> {
    schema_version: u32,
    #[serde(flatten)]
    table: &'a table1::Table1,
}

pub fn cmd_table1(format: Format) -> Result<Outcome, CliError> {
    let t = table1::compute()?;
    let failure = t.self_check().err();
    let text = match format {
        Format::Json => to_json(&Table1Output {
            schema_version: mc::SCHEMA_VERSION,
            table: &t,
        }),
        Format::Csv => t.render_csv(),
        Format::Human => t.render_human(),
    };
    Ok(Outcome { text, failure })
}

pub fn cmd_simulate(config: &ExperimentConfig, format: Format) -> Result<Outcome, CliError> {
    let report = mc::run_experiment(config)?;
    let failure = report.self_check().err();
    let text = match format {
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        Format::Csv => simulate_csv(&report)?,
        Format::Human => simulate_human(&report)?,
    };
    Ok(Outcome { text, failure })
}

fn limit_probs(report: &ExperimentReport, policy: Policy) -> Result<Vec<f64>, CliError> {
    let spec = LimitSpec::new(report.alpha, policy)?;
    Ok((0..=report.config.k_max)
        .map(|k| limit::p_limit(spec, k))
        .collect())
}

fn simulate_csv(report: &ExperimentReport) -> Result<String, CliError> {
    let lp = limit_probs(report, report.config.policy)?;
    let lu = limit_probs(report, Policy::Unsuccessful)?;
    let hp = &report.pooled.policy.histogram;
    let hu = &report.pooled.unsuccessful.histogram;
    let mut s = String::from("k,empirical,limit,empirical_u,limit_u\n");
    for k in 0..=report.config.k_max {
        s.push_str(&format!(
            "{k},{},{},{},{}\n",
            sig(hp.prob(k), SIG_DIGITS),
            sig(lp[k], SIG_DIGITS),
            sig(hu.prob(k), SIG_DIGITS),
            sig(lu[k], SIG_DIGITS)
        ));
    }
    Ok(s)
}

fn simulate_human(report: &ExperimentReport) -> Result<String, CliError> {
    let c = &report.config;
    let p = c.policy;
    let lp = limit_probs(report, p)?;
    let lu = limit_probs(report, Policy::Unsuccessful)?;
    let hp = &report.pooled.policy.histogram;
    let hu = &report.pooled.unsuccessful.histogram;
    let mut s = format!(
        "m = {}, n = {}, alpha = {}, policy = {p}, replicates = {}, seed = {}\n\n",
        c.m, c.n, report.alpha, c.replicates, c.seed
    );
    s.push_str(&format!(
        "{:>5}  {:>14}  {:>14}  {:>14}  {:>14}\n",
        "k",
        format!("pooled {p}"),
        format!("limit {p}"),
        "pooled U",
        "limit U"
    ));
    for k in 0..=c.k_max {
        s.push_str(&format!(
            "{k:>5}  {:>14}  {:>14}  {:>14}  {:>14}\n",
            sig(hp.prob(k), 6),
            sig(lp[k], 6),
            sig(hu.prob(k), 6),
            sig(lu[k], 6)
        ));
    }
    s.push('\n');
    for (name, pooled, fit, spread) in [
        (
            p.to_string(),
            &report.pooled.policy,
            &report.fit.policy,
            &report.concentration.policy,
        ),
        (
            "U".to_string(),
            &report.pooled.unsuccessful,
            &report.fit.unsuccessful,
            &report.concentration.unsuccessful,
        ),
    ] {
        s.push_str(&format!("[{name}]\n"));
        s.push_str(&format!(
            "  TV distance       {}\n",
            sig(fit.tv_distance, 4)
        ));
        s.push_str(&format!(
            "  chi-square        {} on {} df\n",
            sig(fit.chi_square.statistic, 4),
            fit.chi_square.degrees_of_freedom
        ));
        s.push_str(&format!(
            "  mean              {} (limit {})\n",
            sig(pooled.mean, 6),
            sig(pooled.limit_mean, 6)
        ));
        s.push_str(&format!(
            "  variance          {} (limit {})\n",
            sig(pooled.conditional_variance, 6),
            sig(pooled.limit_variance, 6)
        ));
        s.push_str(&format!(
            "  replicate std     mean {}, variance {}, max p(k) {}\n",
            sig(spread.mean_std, 3),
            sig(spread.variance_std, 3),
            sig(spread.max_prob_std, 3)
        ));
    }
    Ok(s)
}

#[derive(Serialize)]
struct OracleOutput {
    schema_version: u32,
    m: usize,
    n: usize,
    policy: Policy,
    sequences: u64,
    probs: Vec<String>,
    u_probs: Vec<String>,
    mean: String,
    variance: String,
    u_mean: String,
    u_variance: String,
    discrepancy: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    offending_sequence: Option<Vec<usize>>,
}

fn ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn cmd_oracle(m: usize, n: usize, policy: Policy, format: Format) -> Result<Outcome, CliError> {
    let exact = oracle::enumerate_exact(m, n, policy)?;
    let check = oracle::oracle_vs_table(m, n, policy)?;
    let failure = (check.max_discrepancy != 0).then(|| {
        format!(
            "table and reference implementation differ by {} on {:?}",
            check.max_discrepancy, check.offending
        )
    });
    let out = OracleOutput {
        schema_version: mc::SCHEMA_VERSION,
        m,
        n,
        policy,
        sequences: exact.sequences,
        probs: exact.probs().iter().map(ratio).collect(),
        u_probs: exact.u_probs().iter().map(ratio).collect(),
        mean: ratio(&exact.mean()),
        variance: ratio(&exact.variance()),
        u_mean: ratio(&exact.u_mean()),
        u_variance: ratio(&exact.u_variance()),
        discrepancy: check.max_discrepancy,
        offending_sequence: check.offending,
    };
    let text = match format {
        Format::Json => to_json(&out),
        Format::Csv => {
            let mut s = String::from("distribution,k,exact,value\n");
            for (name, probs) in [
                (policy.to_string(), exact.probs()),
                ("U".into(), exact.u_probs()),
            ] {
                for (k, r) in probs.iter().enumerate() {
                    s.push_str(&format!(
                        "{name},{k},{},{}\n",
                        ratio(r),
                        sig(oracle::to_f64(r), SIG_DIGITS)
                    ));
                }
            }
            s
        }
        Format::Human => {
            let mut s = format!(
                "m = {m}, n = {n}, policy = {policy}, {} hash sequences\n\n",
                exact.sequences
            );
            s.push_str(&format!(
                "{:>5}  {:>24}  {:>24}\n",
                "k",
                format!("P_{policy}(k)"),
                "P_U(k)"
            ));
            let probs = exact.probs();
            let u_probs = exact.u_probs();
            for k in 0..probs.len().max(u_probs.len()) {
                let cell = |v: &[Rational]| v.get(k).map(ratio).unwrap_or_else(|| "0/1".into());
                s.push_str(&format!(
                    "{k:>5}  {:>24}  {:>24}\n",
                    cell(&probs),
                    cell(&u_probs)
                ));
            }
            s.push_str(&format!(
                "\nmean        {:>24}  {:>24}\n",
                out.mean, out.u_mean
            ));
            s.push_str(&format!(
                "variance    {:>24}  {:>24}\n",
                out.variance, out.u_variance
            ));
            s.push_str(&format!("discrepancy {}\n", out.discrepancy));
            s
        }
    };
    Ok(Outcome { text, failure })
}

#[derive(Serialize)]
struct YuleRow {
    k: usize,
    empirical: f64,
    geometric: f64,
}

#[derive(Serialize)]
struct YuleOutput {
    schema_version: u32,
    t: f64,
    samples: usize,
    seed: u64,
    mean: f64,
    expected_mean: f64,
    z_mean: f64,
    z_p1: f64,
    probs: Vec<YuleRow>,
}

/// Standardized deviations beyond this fail the yule-check self-check.
pub const YULE_Z_LIMIT: f64 = 4.0;

pub fn cmd_yule(t: f64, samples: usize, seed: u64, format: Format) -> Result<Outcome, CliError> {
    let mut rng = mc::replicate_rng(seed, 0);
    let y = mc::yule_check(t, samples, &mut rng)?;
    let last = y.counts.max_value().unwrap_or(1).clamp(1, 20);
    let rows: Vec<YuleRow> = (1..=last)
        .map(|k| YuleRow {
            k,
            empirical: y.empirical(k),
            geometric: y.geometric(k),
        })
        .collect();
    // At t = 0 the law is a point mass and the z-scores are undefined.
    let (z_mean, z_p1) = if t == 0.0 {
        (0.0, 0.0)
    } else {
        (y.z_mean(), y.z_prob(1))
    };
    let failure = if t == 0.0 {
        (y.empirical(1) != 1.0).then(|| "population grew at t = 0".to_string())
    } else if z_p1.abs() > YULE_Z_LIMIT || z_mean.abs() > YULE_Z_LIMIT {
        Some(format!(
            "z-scores P(1) {z_p1:.3}, mean {z_mean:.3} exceed {YULE_Z_LIMIT}"
        ))
    } else {
        None
    };
    let text = match format {
        Format::Json => to_json(&YuleOutput {
            schema_version: mc::SCHEMA_VERSION,
            t,
            samples,
            seed,
            mean: y.mean(),
            expected_mean: y.expected_mean(),
            z_mean,
            z_p1,
            probs: rows,
        }),
        Format::Csv => {
            let mut s = String::from("k,empirical,geometric\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{}\n",
                    r.k,
                    sig(r.empirical, SIG_DIGITS),
                    sig(r.geometric, SIG_DIGITS)
                ));
            }
            s
        }
        Format::Human => {
            let mut s = format!("t = {t}, samples = {samples}, seed = {seed}\n\n");
            s.push_str(&format!(
                "{:>5}  {:>12}  {:>12}\n",
                "k", "empirical", "geometric"
            ));
            for r in &rows {
                s.push_str(&format!(
                    "{:>5}  {:>12}  {:>12}\n",
                    r.k,
                    sig(r.empirical, 6),
                    sig(r.geometric, 6)
                ));
            }
            s.push_str(&format!(
                "\nmean {} (expected {}), z = {:.3}\nP(1) z = {:.3}\n",
                sig(y.mean(), 6),
                sig(y.expected_mean(), 6),
                z_mean,
                z_p1
            ));
            s
        }
    };
    Ok(Outcome { text, failure })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_cli(
            std::iter::once("coalesced").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn limits_at_zero_load_is_a_point_mass() {
        let (code, out, _) =
            run_args(&["limits", "--alpha", "0", "--policy", "L", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out, "k,p\n0,1.000000000\n");
    }

    #[test]
    fn bad_alpha_is_a_usage_error() {
        let (code, _, err) = run_args(&["limits", "--alpha", "1.5", "--policy", "E"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("[0, 1]"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("table1"));
    }

    #[test]
    fn oracle_too_large_suggests_a_size() {
        let (code, _, err) = run_args(&["oracle", "-m", "10", "-n", "10"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("at most n = 7"), "{err}");
    }

    #[test]
    fn simulate_rejects_empty_table() {
        let (code, _, _) = run_args(&["simulate", "-m", "10", "-n", "0", "--policy", "L"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn ratio_is_always_a_fraction() {
        assert_eq!(ratio(&Rational::new(4, 2)), "2/1");
        assert_eq!(ratio(&Rational::new(3, 18)), "1/6");
    }
}
