//! Limiting displacement distributions as the table grows with `n/m -> alpha`.
//!
//! For `k >= 1` every limit probability has the form
//!
//! ```text
//! p(k) = ∫_0^α w(t) (1 - e^{-t})^{k-1} dt
//! ```
//!
//! with weight
//!
//! | policy | `p(0)`  | `w(t)`                                   |
//! |--------|---------|------------------------------------------|
//! | U      | `1-α`   | `1 - α + t`                              |
//! | L      | `1-α/2` | `(α - t - (α-t)²/2) / α`                 |
//! | E      | `1-α/2` | `(α - t) e^{-t} / α`                     |
//!
//! Summing the geometric factor gives the tail `Σ_{k>K} p(k)` as another
//! integral with the kernel `(1-e^{-t})^K e^t`, which is how tail masses are
//! evaluated here. Means and variances use closed forms; near `α = 0` these
//! switch to Taylor series to avoid cancellation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::policy::Policy;
use crate::quad::{integrate_with, DEFAULT_ABS_TOL};

/// Relative accuracy demanded on top of the absolute tolerance, so that the
/// far tail (tiny, sharply peaked integrands) is resolved as well.
const REL_TOL: f64 = 1e-11;

/// Below this load factor the moment formulas are evaluated by series.
pub const SERIES_THRESHOLD: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitSpec {
    alpha: f64,
    policy: Policy,
}

impl LimitSpec {
    pub fn new(alpha: f64, policy: Policy) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidAlpha(alpha));
        }
        Ok(Self { alpha, policy })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn policy(&self) -> Policy {
        self.policy
    }

    fn weight(&self, t: f64) -> f64 {
        let a = self.alpha;
        match self.policy {
            Policy::Unsuccessful => 1.0 - a + t,
            Policy::Late => {
                let r = a - t;
                (r - 0.5 * r * r) / a
            }
            Policy::Early => (a - t) * (-t).exp() / a,
        }
    }

    /// Upper bound on `∫_0^α w(t) dt`, so that `p(k) <= c q^{k-1}` with
    /// `q = 1 - e^{-α}`.
    fn weight_mass_bound(&self) -> f64 {
        let a = self.alpha;
        match self.policy {
            Policy::Unsuccessful => a - 0.5 * a * a,
            Policy::Late => 0.5 * a - a * a / 6.0,
            Policy::Early => 0.5 * a,
        }
    }

    fn p_zero(&self) -> f64 {
        match self.policy {
            Policy::Unsuccessful => 1.0 - self.alpha,
            _ => 1.0 - 0.5 * self.alpha,
        }
    }
}

fn one_minus_exp_neg(t: f64) -> f64 {
    -(-t).exp_m1()
}

/// `p_α(k)` for the given policy, by adaptive quadrature.
pub fn p_limit(spec: LimitSpec, k: usize) -> f64 {
    if k == 0 {
        return spec.p_zero();
    }
    if spec.alpha == 0.0 {
        return 0.0;
    }
    let power = (k - 1) as i32;
    integrate_with(
        |t| spec.weight(t) * one_minus_exp_neg(t).powi(power),
        0.0,
        spec.alpha,
        DEFAULT_ABS_TOL,
        REL_TOL,
    )
    .value
}

/// `Σ_{k > k_max} p_α(k)`, by quadrature of the summed tail kernel.
pub fn tail_mass(spec: LimitSpec, k_max: usize) -> f64 {
    if spec.alpha == 0.0 {
        return 0.0;
    }
    let power = k_max as i32;
    integrate_with(
        |t| spec.weight(t) * one_minus_exp_neg(t).powi(power) * t.exp(),
        0.0,
        spec.alpha,
        DEFAULT_ABS_TOL,
        REL_TOL,
    )
    .value
}

/// Exact expressions for `p_α(1)` and `p_α(2)`.
pub fn p_closed_small_k(spec: LimitSpec, k: usize) -> Result<f64> {
    let a = spec.alpha;
    if !(1..=2).contains(&k) {
        return Err(Error::UnsupportedK(k));
    }
    if a <= 0.0 {
        return Err(Error::InvalidAlpha(a));
    }
    let q = one_minus_exp_neg(a);
    let value = match (spec.policy, k) {
        (Policy::Unsuccessful, 1) => a - 0.5 * a * a,
        (Policy::Unsuccessful, _) => 2.0 * (-a).exp() - 2.0 + 2.0 * a - 0.5 * a * a,
        (Policy::Late, 1) => 0.5 * a - a * a / 6.0,
        (Policy::Late, _) => 2.0 * q / a - 2.0 + a - a * a / 6.0,
        (Policy::Early, 1) => (a - q) / a,
        (Policy::Early, _) => 0.5 - q / a + one_minus_exp_neg(2.0 * a) / (4.0 * a),
    };
    Ok(value)
}

fn series(coeffs: &[f64], a: f64) -> f64 {
    // coeffs[i] multiplies a^(i+1)
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * a + c) * a
}

/// Limit of the mean displacement.
pub fn mean_limit(spec: LimitSpec) -> f64 {
    let a = spec.alpha;
    match spec.policy {
        Policy::Unsuccessful => 0.25 * (2.0 * a).exp_m1() + 0.5 * a,
        Policy::Late if a < SERIES_THRESHOLD => series(
            &[
                1.0 / 2.0,
                1.0 / 6.0,
                1.0 / 12.0,
                1.0 / 30.0,
                1.0 / 90.0,
                1.0 / 315.0,
            ],
            a,
        ),
        Policy::Late => (2.0 * a).exp_m1() / (8.0 * a) + 0.25 * a - 0.25,
        Policy::Early if a < SERIES_THRESHOLD => series(
            &[
                1.0 / 2.0,
                1.0 / 6.0,
                1.0 / 24.0,
                1.0 / 120.0,
                1.0 / 720.0,
                1.0 / 5040.0,
            ],
            a,
        ),
        Policy::Early => (a.exp_m1() - a) / a,
    }
}

/// Limit of the displacement variance.
pub fn var_limit(spec: LimitSpec) -> f64 {
    let a = spec.alpha;
    let e = f64::exp;
    match spec.policy {
        Policy::Unsuccessful if a < SERIES_THRESHOLD => series(
            &[1.0, 1.0 / 2.0, 2.0 / 3.0, 5.0 / 12.0, 1.0 / 6.0, 1.0 / 60.0],
            a,
        ),
        Policy::Unsuccessful => {
            -e(4.0 * a) / 16.0 + 4.0 / 9.0 * e(3.0 * a)
                - (0.25 * a + 0.125) * e(2.0 * a)
                - 0.25 * a * a
                + 5.0 / 12.0 * a
                - 37.0 / 144.0
        }
        Policy::Late if a < SERIES_THRESHOLD => series(
            &[
                1.0 / 2.0,
                1.0 / 4.0,
                1.0 / 4.0,
                7.0 / 45.0,
                7.0 / 90.0,
                23.0 / 720.0,
            ],
            a,
        ),
        Policy::Late => {
            let r2 = (2.0 * a).exp_m1() / a;
            let r1 = a.exp_m1() / a;
            -r2 * r2 / 64.0 + (64.0 * e(2.0 * a) + 37.0 * e(a) + 37.0) / 432.0 * r1
                - e(2.0 * a) / 16.0
                - a * a / 16.0
                + 5.0 / 24.0 * a
                - 7.0 / 36.0
        }
        Policy::Early if a < SERIES_THRESHOLD => series(
            &[
                1.0 / 2.0,
                1.0 / 4.0,
                1.0 / 8.0,
                1.0 / 18.0,
                1.0 / 48.0,
                19.0 / 2880.0,
            ],
            a,
        ),
        Policy::Early => {
            let r1 = a.exp_m1() / a;
            0.5 * (a - 2.0) * r1 * r1 + 2.0 * r1 - 1.0
        }
    }
}

/// Mean and variance of the number of probes `max(D^U, 1)` in an
/// unsuccessful search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeStats {
    pub mean: f64,
    pub variance: f64,
}

pub fn probe_stats_unsuccessful(alpha: f64) -> Result<ProbeStats> {
    let spec = LimitSpec::new(alpha, Policy::Unsuccessful)?;
    let mean_u = mean_limit(spec);
    let var_u = var_limit(spec);
    Ok(ProbeStats {
        mean: mean_u + 1.0 - alpha,
        variance: var_u - 2.0 * (1.0 - alpha) * mean_u + alpha - alpha * alpha,
    })
}

/// The probe variance written out directly, independent of
/// [`probe_stats_unsuccessful`].
pub fn probe_var_closed(alpha: f64) -> Result<f64> {
    let a = LimitSpec::new(alpha, Policy::Unsuccessful)?.alpha;
    if a < SERIES_THRESHOLD {
        return Ok(series(
            &[0.0, 1.0 / 2.0, 1.0, 3.0 / 4.0, 11.0 / 30.0, 19.0 / 180.0],
            a,
        ));
    }
    let e = f64::exp;
    Ok(
        -e(4.0 * a) / 16.0 + 4.0 / 9.0 * e(3.0 * a) + (0.25 * a - 0.625) * e(2.0 * a)
            - 0.25 * a * a
            - a / 12.0
            + 35.0 / 144.0,
    )
}

/// `p_α(k) / (1 - e^{-α})^k`.
pub fn tail_asymptotic_ratio(spec: LimitSpec, k: usize) -> Result<f64> {
    if spec.alpha <= 0.0 {
        return Err(Error::InvalidAlpha(spec.alpha));
    }
    if k == 0 {
        return Err(Error::Config("tail ratio needs k >= 1".into()));
    }
    let q = one_minus_exp_neg(spec.alpha);
    Ok(p_limit(spec, k) / q.powi(k as i32))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitDistribution {
    pub spec: LimitSpec,
    /// `p(0..=k_max)`.
    pub probs: Vec<f64>,
    /// `Σ_{k > k_max} p(k)` by quadrature.
    pub tail_mass: f64,
    /// Certified upper bound on the tail from the geometric decay.
    pub tail_bound: f64,
    pub k_max: usize,
    pub mean: f64,
    pub variance: f64,
}

impl LimitDistribution {
    pub fn prob(&self, k: usize) -> f64 {
        self.probs.get(k).copied().unwrap_or(0.0)
    }

    /// Upper bound on `Σ_{k > k_max} k^r p(k)`.
    pub fn tail_moment_bound(&self, r: i32) -> f64 {
        if self.spec.alpha == 0.0 {
            return 0.0;
        }
        let q = one_minus_exp_neg(self.spec.alpha);
        let c = self.spec.weight_mass_bound();
        let mut sum = 0.0;
        let mut k = self.k_max + 1;
        loop {
            let term = c * (k as f64).powi(r) * q.powi(k as i32 - 1);
            sum += term;
            if term < sum * 1e-17 || term == 0.0 {
                break;
            }
            k += 1;
        }
        sum
    }

    /// `Σ p(0..=k_max)` plus the tail; one up to quadrature error.
    pub fn total_mass(&self) -> f64 {
        self.probs.iter().sum::<f64>() + self.tail_mass
    }

    /// Extends the table of probabilities to cover `0..=k` (the tail mass is
    /// recomputed accordingly).
    pub fn extend_to(&mut self, k: usize) {
        if k <= self.k_max {
            return;
        }
        for j in self.k_max + 1..=k {
            self.probs.push(p_limit(self.spec, j));
        }
        self.k_max = k;
        self.tail_mass = tail_mass(self.spec, k);
        self.tail_bound = geometric_tail_bound(self.spec, k);
    }
}

fn geometric_tail_bound(spec: LimitSpec, k_max: usize) -> f64 {
    if spec.alpha == 0.0 {
        return 0.0;
    }
    let q = one_minus_exp_neg(spec.alpha);
    spec.weight_mass_bound() * q.powi(k_max as i32) * spec.alpha.exp()
}

/// Smallest cutoff whose certified tail bound is below `eps`.
pub fn k_max_for(spec: LimitSpec, eps: f64) -> usize {
    if spec.alpha == 0.0 {
        return 0;
    }
    let mut k = 1;
    while geometric_tail_bound(spec, k) >= eps {
        k += 1;
    }
    k
}

/// Tabulates `p(0..=k_max)` with `k_max` chosen so the certified tail bound
/// is below `eps`.
pub fn build_distribution(spec: LimitSpec, eps: f64) -> Result<LimitDistribution> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Config(format!(
            "tail tolerance {eps} must lie in (0, 1)"
        )));
    }
    let d = tabulate(spec, k_max_for(spec, eps));
    let total = d.total_mass();
    if (total - 1.0).abs() > 10.0 * eps {
        return Err(Error::NumericFailure(format!(
            "probabilities for {:?} at alpha = {} sum to {total}",
            spec.policy, spec.alpha
        )));
    }
    Ok(d)
}

/// Tabulates `p(0..=k_max)` for a fixed cutoff.
pub fn tabulate(spec: LimitSpec, k_max: usize) -> LimitDistribution {
    LimitDistribution {
        spec,
        probs: (0..=k_max).map(|k| p_limit(spec, k)).collect(),
        tail_mass: tail_mass(spec, k_max),
        tail_bound: geometric_tail_bound(spec, k_max),
        k_max,
        mean: mean_limit(spec),
        variance: var_limit(spec),
    }
}
