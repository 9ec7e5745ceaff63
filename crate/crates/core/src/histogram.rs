use serde::{Deserialize, Serialize};

/// Counts `n_k` of displacements (or unsuccessful-search costs) equal to `k`.
///
/// `counts[k]` is the number of observations with value `k`; the vector is
/// trimmed so the last entry is nonzero (or it is empty when `total == 0`).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisplacementHistogram {
    counts: Vec<u64>,
    total: u64,
}

impl DisplacementHistogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_counts(mut counts: Vec<u64>) -> Self {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        let total = counts.iter().sum();
        Self { counts, total }
    }

    pub fn from_values<I: IntoIterator<Item = u32>>(values: I) -> Self {
        let mut h = Self::new();
        for v in values {
            h.record(v as usize);
        }
        h
    }

    pub fn record(&mut self, k: usize) {
        self.record_n(k, 1);
    }

    pub fn record_n(&mut self, k: usize, times: u64) {
        if times == 0 {
            return;
        }
        if k >= self.counts.len() {
            self.counts.resize(k + 1, 0);
        }
        self.counts[k] += times;
        self.total += times;
    }

    pub fn merge(&mut self, other: &DisplacementHistogram) {
        for (k, &c) in other.counts.iter().enumerate() {
            self.record_n(k, c);
        }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `n_k`, zero beyond the largest observed value.
    pub fn count(&self, k: usize) -> u64 {
        self.counts.get(k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Largest observed value, `None` when empty.
    pub fn max_value(&self) -> Option<usize> {
        self.counts.len().checked_sub(1)
    }

    /// Empirical probability `n_k / total`.
    pub fn prob(&self, k: usize) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        self.count(k) as f64 / self.total as f64
    }

    pub fn probs(&self) -> Vec<f64> {
        (0..self.counts.len()).map(|k| self.prob(k)).collect()
    }

    pub fn mean(&self) -> f64 {
        self.raw_moment(1)
    }

    /// Population variance of the histogram, i.e. the conditional variance of
    /// a uniformly chosen observation.
    pub fn variance(&self) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        let mean = self.mean();
        let total = self.total as f64;
        let var = self
            .counts
            .iter()
            .enumerate()
            .map(|(k, &c)| {
                let d = k as f64 - mean;
                c as f64 * d * d
            })
            .sum::<f64>()
            / total;
        var.max(0.0)
    }

    pub fn raw_moment(&self, r: i32) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        let s: f64 = self
            .counts
            .iter()
            .enumerate()
            .map(|(k, &c)| c as f64 * (k as f64).powi(r))
            .sum();
        s / self.total as f64
    }
}
