//! Exhaustive ground truth for tiny tables.
//!
//! Every one of the `m^n` hash sequences is replayed, so averaged counts are
//! exact integers and probabilities are exact rationals. A second, naive
//! implementation of both insertion policies (no rover, displacements
//! recomputed by walking after every insertion) cross-checks [`HashTable`].

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::histogram::DisplacementHistogram;
use crate::mc::{run_experiment, ExperimentConfig};
use crate::policy::Policy;
use crate::stats;
use crate::table::HashTable;

/// Largest number of hash sequences enumerated.
pub const ENUMERATION_LIMIT: u64 = 10_000_000;

pub type Rational = Ratio<u128>;

fn sequence_count(m: usize, n: usize) -> Result<u64> {
    if m == 0 || n == 0 || n > m {
        return Err(Error::Config(format!(
            "need 1 <= n <= m, got m = {m}, n = {n}"
        )));
    }
    (m as u64)
        .checked_pow(n as u32)
        .filter(|&c| c <= ENUMERATION_LIMIT)
        .ok_or(Error::TooLarge {
            m,
            n,
            limit: ENUMERATION_LIMIT,
        })
}

/// Largest `n` for which `m^n` stays within [`ENUMERATION_LIMIT`].
pub fn max_enumerable_n(m: usize) -> usize {
    let mut n = 0;
    while n < m
        && (m as u64)
            .checked_pow(n as u32 + 1)
            .is_some_and(|c| c <= ENUMERATION_LIMIT)
    {
        n += 1;
    }
    n
}

/// Calls `visit` with every sequence in `{1..=m}^n` whose first entry is
/// `first`, in lexicographic order.
fn for_each_sequence(m: usize, n: usize, first: usize, mut visit: impl FnMut(&[usize])) {
    let mut seq = vec![1; n];
    seq[0] = first;
    loop {
        visit(&seq);
        let mut pos = n;
        loop {
            if pos == 1 {
                return;
            }
            pos -= 1;
            if seq[pos] < m {
                seq[pos] += 1;
                break;
            }
            seq[pos] = 1;
        }
    }
}

/// Exact averaged displacement counts over all `m^n` sequences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactDistribution {
    pub m: usize,
    pub n: usize,
    pub policy: Policy,
    pub sequences: u64,
    /// `Σ_T n_k(T)` over all sequences.
    pub counts: Vec<u64>,
    /// `Σ_T n_k^U(T)` over all sequences.
    pub u_counts: Vec<u64>,
}

fn ratio(num: u128, den: u128) -> Rational {
    Ratio::new(num, den)
}

impl ExactDistribution {
    fn denominator(&self) -> u128 {
        self.n as u128 * self.sequences as u128
    }

    fn u_denominator(&self) -> u128 {
        self.m as u128 * self.sequences as u128
    }

    /// `E n_k / n`.
    pub fn prob(&self, k: usize) -> Rational {
        ratio(
            self.counts.get(k).copied().unwrap_or(0) as u128,
            self.denominator(),
        )
    }

    /// `E n_k^U / m`.
    pub fn u_prob(&self, k: usize) -> Rational {
        ratio(
            self.u_counts.get(k).copied().unwrap_or(0) as u128,
            self.u_denominator(),
        )
    }

    pub fn probs(&self) -> Vec<Rational> {
        (0..self.counts.len()).map(|k| self.prob(k)).collect()
    }

    pub fn u_probs(&self) -> Vec<Rational> {
        (0..self.u_counts.len()).map(|k| self.u_prob(k)).collect()
    }

    fn raw_moment(counts: &[u64], den: u128, r: u32) -> Rational {
        let num: u128 = counts
            .iter()
            .enumerate()
            .map(|(k, &c)| (k as u128).pow(r) * c as u128)
            .sum();
        ratio(num, den)
    }

    pub fn mean(&self) -> Rational {
        Self::raw_moment(&self.counts, self.denominator(), 1)
    }

    pub fn variance(&self) -> Rational {
        let m1 = self.mean();
        Self::raw_moment(&self.counts, self.denominator(), 2) - m1 * m1
    }

    pub fn u_mean(&self) -> Rational {
        Self::raw_moment(&self.u_counts, self.u_denominator(), 1)
    }

    pub fn u_variance(&self) -> Rational {
        let m1 = self.u_mean();
        Self::raw_moment(&self.u_counts, self.u_denominator(), 2) - m1 * m1
    }

    pub fn probs_f64(&self) -> Vec<f64> {
        self.probs().iter().map(to_f64).collect()
    }

    pub fn u_probs_f64(&self) -> Vec<f64> {
        self.u_probs().iter().map(to_f64).collect()
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Enumerates all `m^n` hash sequences under `policy`.
pub fn enumerate_exact(m: usize, n: usize, policy: Policy) -> Result<ExactDistribution> {
    let sequences = sequence_count(m, n)?;
    if !policy.is_insertion() {
        return Err(Error::InvalidPolicy(policy));
    }
    let (counts, u_counts) = (1..=m)
        .into_par_iter()
        .map(
            |first| -> Result<(DisplacementHistogram, DisplacementHistogram)> {
                let mut hs = DisplacementHistogram::new();
                let mut hu = DisplacementHistogram::new();
                let mut failure = None;
                for_each_sequence(m, n, first, |seq| {
                    if failure.is_some() {
                        return;
                    }
                    match HashTable::from_addresses(m, policy, seq) {
                        Ok(t) => {
                            for &d in t.displacements() {
                                hs.record(d as usize);
                            }
                            match t.histogram(Policy::Unsuccessful) {
                                Ok(u) => hu.merge(&u),
                                Err(e) => failure = Some(e),
                            }
                        }
                        Err(e) => failure = Some(e),
                    }
                });
                match failure {
                    Some(e) => Err(e),
                    None => Ok((hs, hu)),
                }
            },
        )
        .try_reduce(
            || (DisplacementHistogram::new(), DisplacementHistogram::new()),
            |mut a, b| {
                a.0.merge(&b.0);
                a.1.merge(&b.1);
                Ok(a)
            },
        )?;
    Ok(ExactDistribution {
        m,
        n,
        policy,
        sequences,
        counts: counts.counts().to_vec(),
        u_counts: u_counts.counts().to_vec(),
    })
}

/// Straight transcription of the insertion rules, kept deliberately naive.
#[derive(Debug, Clone)]
pub struct NaiveTable {
    policy: Policy,
    link: Vec<Option<usize>>,
    item: Vec<Option<usize>>,
    hashes: Vec<usize>,
}

impl NaiveTable {
    pub fn new(m: usize, policy: Policy) -> Self {
        Self {
            policy,
            link: vec![None; m],
            item: vec![None; m],
            hashes: Vec::new(),
        }
    }

    /// Inserts at 0-based address `h`; the caller guarantees space.
    pub fn insert(&mut self, h: usize) {
        let x = self.hashes.len();
        self.hashes.push(h);
        if self.item[h].is_none() {
            self.item[h] = Some(x);
            return;
        }
        let free = (0..self.item.len())
            .rev()
            .find(|&c| self.item[c].is_none())
            .expect("caller guarantees a free cell");
        self.item[free] = Some(x);
        match self.policy {
            Policy::Late => {
                let mut tail = h;
                while let Some(next) = self.link[tail] {
                    tail = next;
                }
                self.link[tail] = Some(free);
            }
            _ => {
                self.link[free] = self.link[h];
                self.link[h] = Some(free);
            }
        }
    }

    pub fn location(&self, x: usize) -> usize {
        self.item
            .iter()
            .position(|&i| i == Some(x))
            .expect("item stored")
    }

    pub fn displacement(&self, x: usize) -> u32 {
        let target = self.location(x);
        let mut cell = self.hashes[x];
        let mut d = 0;
        while cell != target {
            cell = self.link[cell].expect("item reachable from its address");
            d += 1;
        }
        d
    }

    pub fn unsuccessful_cost(&self, j: usize) -> u32 {
        if self.item[j].is_none() {
            return 0;
        }
        let mut cost = 1;
        let mut cell = j;
        while let Some(next) = self.link[cell] {
            cell = next;
            cost += 1;
        }
        cost
    }
}

fn abs_diff(a: u64, b: u64) -> u64 {
    a.abs_diff(b)
}

/// Largest difference between `table` and `naive` over every recorded
/// quantity: per-item displacement and location, per-cell occupancy, link and
/// unsuccessful cost.
pub fn compare_tables(table: &HashTable, naive: &NaiveTable) -> u64 {
    let mut worst = 0u64;
    let n = naive.hashes.len();
    if table.len() != n {
        return u64::MAX;
    }
    for x in 0..n {
        let d = table
            .displacement_of(x + 1)
            .map(u64::from)
            .unwrap_or(u64::MAX);
        worst = worst.max(abs_diff(d, naive.displacement(x) as u64));
        let loc = table
            .location_of(x + 1)
            .map(|c| c as u64)
            .unwrap_or(u64::MAX);
        worst = worst.max(abs_diff(loc, naive.location(x) as u64 + 1));
    }
    for j in 0..naive.item.len() {
        let cell = match table.cell(j + 1) {
            Ok(c) => c,
            Err(_) => return u64::MAX,
        };
        worst = worst.max(abs_diff(
            cell.occupied as u64,
            naive.item[j].is_some() as u64,
        ));
        let link_t = cell.link.map_or(0, |c| c as u64);
        let link_n = naive.link[j].map_or(0, |c| c as u64 + 1);
        worst = worst.max(abs_diff(link_t, link_n));
        let cost = table
            .unsuccessful_search_cost(j + 1)
            .map(u64::from)
            .unwrap_or(u64::MAX);
        worst = worst.max(abs_diff(cost, naive.unsuccessful_cost(j) as u64));
    }
    worst
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCheck {
    pub sequences: u64,
    pub max_discrepancy: u64,
    /// First sequence (1-based addresses) on which the two disagreed.
    pub offending: Option<Vec<usize>>,
}

/// Replays every sequence through [`HashTable`] and [`NaiveTable`], comparing
/// after each insertion.
pub fn oracle_vs_table(m: usize, n: usize, policy: Policy) -> Result<TableCheck> {
    let sequences = sequence_count(m, n)?;
    if !policy.is_insertion() {
        return Err(Error::InvalidPolicy(policy));
    }
    let per_first: Vec<(u64, Option<Vec<usize>>)> = (1..=m)
        .into_par_iter()
        .map(|first| {
            let mut worst = 0u64;
            let mut offending = None;
            for_each_sequence(m, n, first, |seq| {
                let mut table = HashTable::new(m, policy).expect("valid size and policy");
                let mut naive = NaiveTable::new(m, policy);
                let mut seq_worst = 0;
                for &h in seq {
                    if table.insert(h).is_err() {
                        seq_worst = u64::MAX;
                        break;
                    }
                    naive.insert(h - 1);
                    seq_worst = seq_worst.max(compare_tables(&table, &naive));
                }
                if seq_worst > 0 && offending.is_none() {
                    offending = Some(seq.to_vec());
                }
                worst = worst.max(seq_worst);
            });
            (worst, offending)
        })
        .collect();
    let max_discrepancy = per_first.iter().map(|p| p.0).max().unwrap_or(0);
    let offending = per_first.into_iter().find_map(|p| p.1);
    Ok(TableCheck {
        sequences,
        max_discrepancy,
        offending,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McComparison {
    pub tv: f64,
    /// Four-sigma bound on the total variation from sampling noise alone.
    pub bound: f64,
    pub u_tv: f64,
    pub u_bound: f64,
}

impl McComparison {
    pub fn within_bounds(&self) -> bool {
        self.tv <= self.bound && self.u_tv <= self.u_bound
    }
}

/// Each replicate's `p̂(k)` lies in `[0, 1]` with mean `p(k)`, so its variance
/// is at most `p(k)(1 - p(k))`; the pooled estimate averages `replicates` of
/// them.
fn four_sigma_tv_bound(probs: &[f64], replicates: usize) -> f64 {
    0.5 * probs
        .iter()
        .map(|&p| 4.0 * (p * (1.0 - p) / replicates as f64).sqrt())
        .sum::<f64>()
}

/// Total variation between the exact distribution and a Monte Carlo pooled
/// estimate with `replicates` random tables.
pub fn oracle_vs_mc(
    m: usize,
    n: usize,
    policy: Policy,
    replicates: usize,
    seed: u64,
) -> Result<McComparison> {
    if replicates < 10_000 {
        return Err(Error::Config(format!(
            "oracle comparison needs at least 10000 replicates, got {replicates}"
        )));
    }
    let exact = enumerate_exact(m, n, policy)?;
    let report = run_experiment(&ExperimentConfig::new(m, n, policy, replicates, seed))?;
    let p = exact.probs_f64();
    let pu = exact.u_probs_f64();
    Ok(McComparison {
        tv: stats::total_variation(&p, &report.pooled.policy.probs),
        bound: four_sigma_tv_bound(&p, replicates),
        u_tv: stats::total_variation(&pu, &report.pooled.unsuccessful.probs),
        u_bound: four_sigma_tv_bound(&pu, replicates),
    })
}
