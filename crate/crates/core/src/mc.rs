//! Monte Carlo experiments on random tables `T_{m,n}`.
//!
//! Every replicate draws its hash addresses from its own ChaCha8 stream:
//! the generator is seeded with `seed` via `SeedableRng::seed_from_u64` and
//! then switched to stream number `replicate` with `set_stream`. Replicates are
//! independent, run in parallel, and are reduced in replicate order, so a
//! report depends on nothing but its configuration.
//!
//! The conditional displacement distribution of a table is `n_k / n` itself;
//! no random index is sampled.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::histogram::DisplacementHistogram;
use crate::limit::{build_distribution, LimitDistribution, LimitSpec};
use crate::policy::Policy;
use crate::stats::{self, ChiSquare};
use crate::table::HashTable;

pub const SCHEMA_VERSION: u32 = 1;

/// Largest `k` whose empirical probability is tracked across replicates.
pub const CONCENTRATION_K: usize = 5;

/// Required shrink factor of every across-replicate spread when `m` grows
/// fourfold.
pub const CONTRACTION_GATE: f64 = 1.5;

/// Tail tolerance used for the reference limit distribution.
const LIMIT_EPS: f64 = 1e-12;

/// RNG for replicate `replicate` of an experiment seeded with `seed`.
pub fn replicate_rng(seed: u64, replicate: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replicate);
    rng
}

/// Inserts `n` addresses drawn uniformly from `1..=m`.
pub fn build_random_table<R: Rng + ?Sized>(
    m: usize,
    n: usize,
    policy: Policy,
    rng: &mut R,
) -> Result<HashTable> {
    if n == 0 || n > m {
        return Err(Error::Config(format!(
            "need 1 <= n <= m, got m = {m}, n = {n}"
        )));
    }
    let mut table = HashTable::new(m, policy)?;
    for _ in 0..n {
        table.insert(rng.random_range(1..=m))?;
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub m: usize,
    pub n: usize,
    pub policy: Policy,
    pub replicates: usize,
    pub seed: u64,
    /// Largest `k` listed in summaries.
    pub k_max: usize,
}

impl ExperimentConfig {
    pub fn new(m: usize, n: usize, policy: Policy, replicates: usize, seed: u64) -> Self {
        Self {
            m,
            n,
            policy,
            replicates,
            seed,
            k_max: 10,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > self.m {
            return Err(Error::Config(format!(
                "need 1 <= n <= m, got m = {}, n = {}",
                self.m, self.n
            )));
        }
        if !self.policy.is_insertion() {
            return Err(Error::Config(format!(
                "simulation policy must be L or E, got {}",
                self.policy
            )));
        }
        if self.replicates == 0 {
            return Err(Error::Config("need at least one replicate".into()));
        }
        Ok(())
    }

    pub fn alpha(&self) -> f64 {
        self.n as f64 / self.m as f64
    }
}

/// Conditional distribution of one table: `n_k / n` (or `n_k^U / m`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionalStats {
    pub probs: Vec<f64>,
    pub mean: f64,
    pub variance: f64,
}

impl From<&DisplacementHistogram> for ConditionalStats {
    fn from(h: &DisplacementHistogram) -> Self {
        Self {
            probs: h.probs(),
            mean: h.mean(),
            variance: h.variance(),
        }
    }
}

impl ConditionalStats {
    pub fn prob(&self, k: usize) -> f64 {
        self.probs.get(k).copied().unwrap_or(0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicateStats {
    pub policy: ConditionalStats,
    pub unsuccessful: ConditionalStats,
}

/// Pooled counts plus the replicate-averaged conditional moments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PooledStats {
    pub histogram: DisplacementHistogram,
    pub probs: Vec<f64>,
    /// Mean of the per-replicate conditional means.
    pub mean: f64,
    /// Mean of the per-replicate conditional variances.
    pub conditional_variance: f64,
    pub limit_mean: f64,
    pub limit_variance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fit {
    pub tv_distance: f64,
    pub chi_square: ChiSquare,
}

/// Across-replicate sample standard deviations of the conditional statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spread {
    pub mean_std: f64,
    pub variance_std: f64,
    /// `std p̂(k)` for `k = 0..=CONCENTRATION_K`.
    pub prob_std: Vec<f64>,
    /// Largest entry of `prob_std`.
    pub max_prob_std: f64,
}

impl Spread {
    fn from_replicates<'a>(stats: impl Iterator<Item = &'a ConditionalStats> + Clone) -> Self {
        let means: Vec<f64> = stats.clone().map(|s| s.mean).collect();
        let vars: Vec<f64> = stats.clone().map(|s| s.variance).collect();
        let prob_std: Vec<f64> = (0..=CONCENTRATION_K)
            .map(|k| {
                let ps: Vec<f64> = stats.clone().map(|s| s.prob(k)).collect();
                stats::sample_std(&ps)
            })
            .collect();
        let max_prob_std = prob_std.iter().copied().fold(0.0, f64::max);
        Self {
            mean_std: stats::sample_std(&means),
            variance_std: stats::sample_std(&vars),
            prob_std,
            max_prob_std,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolicyPair<T> {
    pub policy: T,
    pub unsuccessful: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub config: ExperimentConfig,
    pub alpha: f64,
    pub pooled: PolicyPair<PooledStats>,
    pub fit: PolicyPair<Fit>,
    pub concentration: PolicyPair<Spread>,
    pub per_replicate: Vec<ReplicateStats>,
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Internal consistency: pooled counts equal the replicate sums, every
    /// replicate's probabilities sum to one, and the unsuccessful-search
    /// probability of an empty start is exactly `(m - n) / m` everywhere.
    pub fn self_check(&self) -> std::result::Result<(), String> {
        let c = &self.config;
        let reps = c.replicates as u64;
        if self.pooled.policy.histogram.total() != reps * c.n as u64 {
            return Err("pooled successful counts do not add up".into());
        }
        if self.pooled.unsuccessful.histogram.total() != reps * c.m as u64 {
            return Err("pooled unsuccessful counts do not add up".into());
        }
        if self.pooled.unsuccessful.histogram.count(0) != reps * (c.m - c.n) as u64 {
            return Err("empty-start count differs from (m - n) per replicate".into());
        }
        for (r, rep) in self.per_replicate.iter().enumerate() {
            for s in [&rep.policy, &rep.unsuccessful] {
                let total: f64 = s.probs.iter().sum();
                if (total - 1.0).abs() > 1e-9 {
                    return Err(format!("replicate {r} probabilities sum to {total}"));
                }
                if !(s.variance.is_finite() && s.variance >= 0.0) {
                    return Err(format!("replicate {r} has variance {}", s.variance));
                }
            }
        }
        Ok(())
    }
}

fn limit_for(alpha: f64, policy: Policy, cover: usize) -> Result<LimitDistribution> {
    let mut d = build_distribution(LimitSpec::new(alpha, policy)?, LIMIT_EPS)?;
    d.extend_to(cover);
    Ok(d)
}

fn pooled_stats(
    replicates: &[ReplicateStats],
    histogram: DisplacementHistogram,
    pick: impl Fn(&ReplicateStats) -> &ConditionalStats,
    limit: &LimitDistribution,
) -> PooledStats {
    let means: Vec<f64> = replicates.iter().map(|r| pick(r).mean).collect();
    let vars: Vec<f64> = replicates.iter().map(|r| pick(r).variance).collect();
    PooledStats {
        probs: histogram.probs(),
        histogram,
        mean: stats::mean(&means),
        conditional_variance: stats::mean(&vars),
        limit_mean: limit.mean,
        limit_variance: limit.variance,
    }
}

fn fit(histogram: &DisplacementHistogram, limit: &LimitDistribution) -> Fit {
    Fit {
        tv_distance: stats::total_variation_to_limit(histogram, limit),
        chi_square: stats::pearson_chi_square(histogram, limit),
    }
}

/// Histograms of one replicate: successful under the policy, and unsuccessful.
pub fn run_replicate(
    config: &ExperimentConfig,
    replicate: u64,
) -> Result<(DisplacementHistogram, DisplacementHistogram)> {
    let mut rng = replicate_rng(config.seed, replicate);
    let table = build_random_table(config.m, config.n, config.policy, &mut rng)?;
    Ok((
        table.histogram(config.policy)?,
        table.histogram(Policy::Unsuccessful)?,
    ))
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let histograms: Vec<(DisplacementHistogram, DisplacementHistogram)> = (0..config.replicates
        as u64)
        .into_par_iter()
        .map(|r| run_replicate(config, r))
        .collect::<Result<_>>()?;

    let mut pooled_policy = DisplacementHistogram::new();
    let mut pooled_u = DisplacementHistogram::new();
    let mut per_replicate = Vec::with_capacity(histograms.len());
    for (hp, hu) in &histograms {
        pooled_policy.merge(hp);
        pooled_u.merge(hu);
        per_replicate.push(ReplicateStats {
            policy: hp.into(),
            unsuccessful: hu.into(),
        });
    }

    let alpha = config.alpha();
    let limit_policy = limit_for(alpha, config.policy, pooled_policy.max_value().unwrap_or(0))?;
    let limit_u = limit_for(
        alpha,
        Policy::Unsuccessful,
        pooled_u.max_value().unwrap_or(0),
    )?;

    let fit_policy = fit(&pooled_policy, &limit_policy);
    let fit_u = fit(&pooled_u, &limit_u);
    Ok(ExperimentReport {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        alpha,
        concentration: PolicyPair {
            policy: Spread::from_replicates(per_replicate.iter().map(|r| &r.policy)),
            unsuccessful: Spread::from_replicates(per_replicate.iter().map(|r| &r.unsuccessful)),
        },
        pooled: PolicyPair {
            policy: pooled_stats(&per_replicate, pooled_policy, |r| &r.policy, &limit_policy),
            unsuccessful: pooled_stats(&per_replicate, pooled_u, |r| &r.unsuccessful, &limit_u),
        },
        fit: PolicyPair {
            policy: fit_policy,
            unsuccessful: fit_u,
        },
        per_replicate,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Contraction {
    pub statistic: String,
    pub small_std: f64,
    pub large_std: f64,
    /// `small_std / large_std`; `None` when both spreads vanish.
    pub factor: Option<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationOutcome {
    pub small_m: usize,
    pub large_m: usize,
    pub gate: f64,
    pub contractions: Vec<Contraction>,
    pub passed: bool,
}

fn contraction(statistic: String, small: f64, large: f64) -> Contraction {
    if small == 0.0 && large == 0.0 {
        return Contraction {
            statistic,
            small_std: small,
            large_std: large,
            factor: None,
            passed: true,
        };
    }
    let factor = small / large;
    Contraction {
        statistic,
        small_std: small,
        large_std: large,
        factor: Some(factor),
        passed: factor >= CONTRACTION_GATE,
    }
}

/// Compares across-replicate spreads of two experiments at the same load
/// factor, the second with more cells. Every spread (conditional mean,
/// conditional variance, `p̂(k)` for `k <= 5`, successful and unsuccessful)
/// must shrink by at least [`CONTRACTION_GATE`].
pub fn concentration_test(
    small: &ExperimentReport,
    large: &ExperimentReport,
) -> Result<ConcentrationOutcome> {
    for r in [small, large] {
        if r.config.replicates < 10 {
            return Err(Error::Config(format!(
                "concentration needs at least 10 replicates, got {}",
                r.config.replicates
            )));
        }
    }
    if small.config.policy != large.config.policy || small.config.m >= large.config.m {
        return Err(Error::Config(
            "concentration compares the same policy at a smaller and a larger m".into(),
        ));
    }
    let mut contractions = Vec::new();
    let pairs = [
        (
            small.config.policy.to_string(),
            &small.concentration.policy,
            &large.concentration.policy,
        ),
        (
            "U".to_string(),
            &small.concentration.unsuccessful,
            &large.concentration.unsuccessful,
        ),
    ];
    for (label, s, l) in pairs {
        contractions.push(contraction(format!("{label} mean"), s.mean_std, l.mean_std));
        contractions.push(contraction(
            format!("{label} variance"),
            s.variance_std,
            l.variance_std,
        ));
        for k in 0..=CONCENTRATION_K {
            contractions.push(contraction(
                format!("{label} p({k})"),
                s.prob_std[k],
                l.prob_std[k],
            ));
        }
    }
    let passed = contractions.iter().all(|c| c.passed);
    Ok(ConcentrationOutcome {
        small_m: small.config.m,
        large_m: large.config.m,
        gate: CONTRACTION_GATE,
        contractions,
        passed,
    })
}

/// Population sizes of a Yule process (rate `l` in state `l`, one initial
/// individual) observed at a fixed time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct YuleSample {
    pub t: f64,
    pub samples: usize,
    /// `counts[k]` = number of runs that ended with population `k`.
    pub counts: DisplacementHistogram,
}

impl YuleSample {
    pub fn empirical(&self, k: usize) -> f64 {
        self.counts.prob(k)
    }

    pub fn mean(&self) -> f64 {
        self.counts.mean()
    }

    /// `e^{-t} (1 - e^{-t})^{k-1}`.
    pub fn geometric(&self, k: usize) -> f64 {
        if k == 0 {
            return 0.0;
        }
        let p = (-self.t).exp();
        p * (1.0 - p).powi(k as i32 - 1)
    }

    pub fn expected_mean(&self) -> f64 {
        self.t.exp()
    }

    /// Standardized deviation of the empirical `P(k)` from the geometric law.
    pub fn z_prob(&self, k: usize) -> f64 {
        let p = self.geometric(k);
        let sigma = (p * (1.0 - p) / self.samples as f64).sqrt();
        (self.empirical(k) - p) / sigma
    }

    /// Standardized deviation of the empirical mean from `e^t`.
    pub fn z_mean(&self) -> f64 {
        let p = (-self.t).exp();
        let sigma = ((1.0 - p) / (p * p) / self.samples as f64).sqrt();
        (self.mean() - self.expected_mean()) / sigma
    }
}

/// Simulates `samples` independent Yule processes up to time `t`.
pub fn yule_check<R: Rng + ?Sized>(t: f64, samples: usize, rng: &mut R) -> Result<YuleSample> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Config(format!(
            "time {t} must be a finite non-negative number"
        )));
    }
    if samples == 0 {
        return Err(Error::Config("need at least one sample".into()));
    }
    let mut counts = DisplacementHistogram::new();
    for _ in 0..samples {
        let mut population = 1usize;
        let mut clock = 0.0;
        loop {
            let wait: f64 = Exp1.sample(rng);
            clock += wait / population as f64;
            if clock > t {
                break;
            }
            population += 1;
        }
        counts.record(population);
    }
    Ok(YuleSample { t, samples, counts })
}
