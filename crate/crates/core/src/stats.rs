//! Goodness-of-fit measures between empirical histograms and a reference pmf.

use serde::{Deserialize, Serialize};

use crate::histogram::DisplacementHistogram;
use crate::limit::LimitDistribution;

/// Minimum expected count per chi-square bin.
pub const MIN_EXPECTED: f64 = 5.0;

/// Half the L1 distance between two pmfs given as vectors; missing entries
/// are zero.
pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    let len = p.len().max(q.len());
    let at = |v: &[f64], k: usize| v.get(k).copied().unwrap_or(0.0);
    0.5 * (0..len).map(|k| (at(p, k) - at(q, k)).abs()).sum::<f64>()
}

/// Total variation between an empirical histogram and a limit distribution,
/// counting the limit's mass beyond its table in full when the histogram has
/// nothing there.
pub fn total_variation_to_limit(
    observed: &DisplacementHistogram,
    limit: &LimitDistribution,
) -> f64 {
    let top = limit.k_max.max(observed.max_value().unwrap_or(0));
    let within: f64 = (0..=top)
        .map(|k| (observed.prob(k) - limit.prob(k)).abs())
        .sum();
    // Observed mass beyond k_max was already compared with prob(k) = 0 there,
    // so what is left is the limit's own tail.
    let tail_unmatched = if top > limit.k_max {
        0.0
    } else {
        limit.tail_mass
    };
    0.5 * (within + tail_unmatched)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    /// Inclusive lower edge of each bin; the last bin extends to infinity.
    pub bin_starts: Vec<usize>,
}

/// Pearson chi-square with adjacent values merged until every bin expects at
/// least [`MIN_EXPECTED`] observations; the remainder becomes a tail bin.
pub fn pearson_chi_square(
    observed: &DisplacementHistogram,
    limit: &LimitDistribution,
) -> ChiSquare {
    let total = observed.total() as f64;
    let mut bins: Vec<(usize, f64, f64)> = Vec::new(); // (start, expected, observed)
    let mut start = 0;
    let mut exp_acc = 0.0;
    let mut obs_acc = 0.0;
    for k in 0..=limit.k_max {
        exp_acc += total * limit.prob(k);
        obs_acc += observed.count(k) as f64;
        if exp_acc >= MIN_EXPECTED {
            bins.push((start, exp_acc, obs_acc));
            start = k + 1;
            exp_acc = 0.0;
            obs_acc = 0.0;
        }
    }
    // Everything from `start` upwards, including the analytic tail.
    let placed_obs: f64 = bins.iter().map(|b| b.2).sum();
    let placed_exp: f64 = bins.iter().map(|b| b.1).sum();
    let rest_obs = total - placed_obs;
    let rest_exp = (total - placed_exp).max(0.0);
    if rest_exp >= MIN_EXPECTED || bins.is_empty() {
        bins.push((start, rest_exp, rest_obs));
    } else if let Some(last) = bins.last_mut() {
        last.1 += rest_exp;
        last.2 += rest_obs;
    }
    let statistic = bins
        .iter()
        .filter(|b| b.1 > 0.0)
        .map(|&(_, e, o)| (o - e) * (o - e) / e)
        .sum();
    ChiSquare {
        statistic,
        degrees_of_freedom: bins.len().saturating_sub(1),
        bin_starts: bins.iter().map(|b| b.0).collect(),
    }
}

/// Sample standard deviation (denominator `len - 1`); zero for fewer than two
/// values.
pub fn sample_std(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (ss / (n - 1.0)).sqrt()
}

pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().sum::<f64>() / values.len() as f64
}
