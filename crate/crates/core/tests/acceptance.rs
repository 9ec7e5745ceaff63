//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Runs without the libtest harness so every line is printed on every run.

use std::time::{Duration, Instant};

use coalesced::limit::{
    self, build_distribution, mean_limit, p_closed_small_k, p_limit, probe_stats_unsuccessful,
    probe_var_closed, var_limit, LimitSpec,
};
use coalesced::mc::{self, concentration_test, run_experiment, ExperimentConfig};
use coalesced::oracle::{self, enumerate_exact, oracle_vs_table, Rational};
use coalesced::table1::{self, Row, COLUMNS};
use coalesced::{HashTable, Policy};
use rand::Rng;

const U: Policy = Policy::Unsuccessful;
const L: Policy = Policy::Late;
const E: Policy = Policy::Early;

const ALPHA_GRID: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 1.0];

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        passed,
        detail: detail.into(),
    }
}

// Printed reference values, columns in `COLUMNS` order, rows k = 0..=10,
// tail, mean, variance.
const PRINTED: [[&str; 6]; 14] = [
    ["0.5", "0.75", "0.75", "0.0", "0.5", "0.5"],
    ["0.375", "0.2083", "0.2130", "0.5", "0.3333", "0.3679"],
    ["0.0881", "0.0322", "0.0291", "0.2358", "0.0976", "0.0840"],
    ["0.0252", "0.0070", "0.0059", "0.1200", "0.0376", "0.0280"],
    ["0.0078", "0.0018", "0.0014", "0.0638", "0.0163", "0.0110"],
    ["0.0026", "0.00049", "0.00038", "0.0349", "0.0076", "0.0048"],
    [
        "0.00086", "0.00014", "0.00011", "0.0194", "0.0037", "0.0022",
    ],
    [
        "0.00030", "0.000043", "0.000032", "0.0110", "0.0019", "0.0011",
    ],
    [
        "0.00010", "0.000014", "0.000010", "0.0063", "0.0010", "0.0005",
    ],
    [
        "0.00004", "0.000004", "0.000003", "0.0036", "0.0005", "0.0003",
    ],
    [
        "0.00001", "0.000001", "0.000001", "0.0021", "0.0003", "0.0001",
    ],
    [
        "0.000007",
        "0.0000007",
        "0.0000005",
        "0.0031",
        "0.0003",
        "0.0002",
    ],
    ["0.6796", "0.3046", "0.2974", "2.0973", "0.7986", "0.7183"],
    ["0.7394", "0.3565", "0.3324", "2.6533", "1.2799", "0.9603"],
];

const TABLE_TOL: f64 = 5e-5;
const TAIL_HALF_TOL: f64 = 5e-8;
const TABLE_SECONDS: u64 = 5;

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let table = match table1::compute() {
        Ok(t) => t,
        Err(e) => return verdict(false, format!("table failed: {e}")),
    };
    let elapsed = start.elapsed();
    let rows = table1::Row::all();
    let mut misses = Vec::new();
    let mut worst: f64 = 0.0;
    for (r, row) in rows.iter().enumerate() {
        for (c, &(alpha, policy)) in COLUMNS.iter().enumerate() {
            let printed: f64 = PRINTED[r][c].parse().unwrap();
            let value = table.get(*row, alpha, policy).unwrap().value;
            let tol = if *row == Row::Tail && alpha == 0.5 {
                TAIL_HALF_TOL
            } else {
                TABLE_TOL
            };
            let diff = (value - printed).abs();
            worst = worst.max(diff / tol);
            if diff > tol {
                misses.push(format!(
                    "{}@{alpha}/{policy}: computed {value:.9} printed {} diff {diff:.2e} > {tol:.0e}",
                    row.label(),
                    PRINTED[r][c]
                ));
            }
        }
    }
    let fast = elapsed < Duration::from_secs(TABLE_SECONDS);
    let mut detail = format!(
        "{} cells, {} outside tolerance, {:.2}s",
        rows.len() * COLUMNS.len(),
        misses.len(),
        elapsed.as_secs_f64()
    );
    for m in &misses {
        detail.push_str(&format!("\n      {m}"));
    }
    verdict(misses.is_empty() && fast, detail)
}

const CLOSED_FORM_TOL: f64 = 1e-10;

fn criterion_2() -> Verdict {
    let mut worst: f64 = 0.0;
    for alpha in ALPHA_GRID {
        for policy in [U, L, E] {
            let spec = LimitSpec::new(alpha, policy).unwrap();
            for k in [1, 2] {
                let closed = p_closed_small_k(spec, k).unwrap();
                worst = worst.max((p_limit(spec, k) - closed).abs());
            }
        }
    }
    verdict(
        worst <= CLOSED_FORM_TOL,
        format!("max |quadrature - closed form| = {worst:.2e} (tol {CLOSED_FORM_TOL:.0e})"),
    )
}

const MOMENT_TOL: f64 = 1e-7;
const PROBE_VAR_AT_FULL: f64 = 2.6533;
const PROBE_VAR_TOL: f64 = 5e-5;

fn criterion_3() -> Verdict {
    let mut worst: f64 = 0.0;
    for alpha in ALPHA_GRID {
        for policy in [U, L, E] {
            let spec = LimitSpec::new(alpha, policy).unwrap();
            let d = build_distribution(spec, 1e-14).unwrap();
            let m1: f64 = d.probs.iter().enumerate().map(|(k, p)| k as f64 * p).sum();
            let m2: f64 = d
                .probs
                .iter()
                .enumerate()
                .map(|(k, p)| (k * k) as f64 * p)
                .sum();
            // Truncation error of the sums is certified by the tail bounds.
            let slack1 = d.tail_moment_bound(1);
            let slack2 = d.tail_moment_bound(2);
            let mean_err = ((m1 - mean_limit(spec)).abs() - slack1).max(0.0);
            let var_err =
                ((m2 - m1 * m1 - var_limit(spec)).abs() - slack2 - 2.0 * m1 * slack1).max(0.0);
            worst = worst.max(mean_err).max(var_err);
            if slack2 > MOMENT_TOL {
                return verdict(
                    false,
                    format!("tail bound {slack2:.2e} too loose at {alpha}/{policy}"),
                );
            }
        }
    }
    let identity = probe_stats_unsuccessful(1.0).unwrap().variance;
    let direct = probe_var_closed(1.0).unwrap();
    let probe_ok = (identity - PROBE_VAR_AT_FULL).abs() <= PROBE_VAR_TOL
        && (direct - PROBE_VAR_AT_FULL).abs() <= PROBE_VAR_TOL;
    verdict(
        worst <= MOMENT_TOL && probe_ok,
        format!(
            "max moment gap {worst:.2e} (tol {MOMENT_TOL:.0e}); probe variance at alpha=1: {identity:.6} / {direct:.6}"
        ),
    )
}

const ORACLE_SECONDS: u64 = 120;

fn criterion_4() -> Verdict {
    let start = Instant::now();
    let mut instances = 0;
    for m in 1..=5usize {
        for n in 1..=m {
            let mut u_counts = Vec::new();
            for policy in [L, E] {
                let check = oracle_vs_table(m, n, policy).unwrap();
                if check.max_discrepancy != 0 {
                    return verdict(
                        false,
                        format!("m={m} n={n} {policy}: discrepancy on {:?}", check.offending),
                    );
                }
                let exact = enumerate_exact(m, n, policy).unwrap();
                if exact.u_prob(0) != Rational::new((m - n) as u128, m as u128) {
                    return verdict(
                        false,
                        format!("m={m} n={n} {policy}: u_prob(0) = {}", exact.u_prob(0)),
                    );
                }
                u_counts.push(exact.u_counts);
                instances += 1;
            }
            if u_counts[0] != u_counts[1] {
                return verdict(
                    false,
                    format!("m={m} n={n}: L and E unsuccessful laws differ"),
                );
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        elapsed < Duration::from_secs(ORACLE_SECONDS),
        format!(
            "{instances} instances exact, zero discrepancy, {:.2}s",
            elapsed.as_secs_f64()
        ),
    )
}

const MC_M: usize = 200_000;
const MC_REPS: usize = 20;
const MC_SEED: u64 = 5;
const MC_TV: f64 = 0.005;
const MC_MEAN_REL: f64 = 0.01;
const MC_VAR_REL: f64 = 0.03;
const MC_SECONDS: u64 = 120;

fn criterion_5() -> Verdict {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut ok = true;
    for alpha in [0.5, 1.0] {
        for policy in [L, E] {
            let n = (alpha * MC_M as f64) as usize;
            let report =
                run_experiment(&ExperimentConfig::new(MC_M, n, policy, MC_REPS, MC_SEED)).unwrap();
            if let Err(e) = report.self_check() {
                return verdict(false, format!("self-check: {e}"));
            }
            for (label, pooled, fit) in [
                (policy, &report.pooled.policy, &report.fit.policy),
                (U, &report.pooled.unsuccessful, &report.fit.unsuccessful),
            ] {
                let mean_rel = (pooled.mean - pooled.limit_mean).abs() / pooled.limit_mean;
                let var_rel = (pooled.conditional_variance - pooled.limit_variance).abs()
                    / pooled.limit_variance;
                let good =
                    fit.tv_distance < MC_TV && mean_rel <= MC_MEAN_REL && var_rel <= MC_VAR_REL;
                ok &= good;
                lines.push(format!(
                    "alpha={alpha} run={policy} {label}: tv {:.2e} mean {:.2e} var {:.2e}{}",
                    fit.tv_distance,
                    mean_rel,
                    var_rel,
                    if good { "" } else { " <-- out of tolerance" }
                ));
            }
        }
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(MC_SECONDS);
    let mut detail = format!(
        "m={MC_M}, {MC_REPS} replicates, {:.1}s",
        elapsed.as_secs_f64()
    );
    for l in lines {
        detail.push_str(&format!("\n      {l}"));
    }
    verdict(ok, detail)
}

const CONC_SMALL: usize = 10_000;
const CONC_LARGE: usize = 40_000;
const CONC_REPS: usize = 50;
const CONC_SEED: u64 = 6;

fn criterion_6() -> Verdict {
    let mut ok = true;
    let mut detail = format!("gate {}", mc::CONTRACTION_GATE);
    for policy in [L, E] {
        let small = run_experiment(&ExperimentConfig::new(
            CONC_SMALL,
            CONC_SMALL / 2,
            policy,
            CONC_REPS,
            CONC_SEED,
        ))
        .unwrap();
        let large = run_experiment(&ExperimentConfig::new(
            CONC_LARGE,
            CONC_LARGE / 2,
            policy,
            CONC_REPS,
            CONC_SEED,
        ))
        .unwrap();
        let outcome = concentration_test(&small, &large).unwrap();
        ok &= outcome.passed;
        let factors: Vec<f64> = outcome
            .contractions
            .iter()
            .filter_map(|c| c.factor)
            .collect();
        let min = factors.iter().copied().fold(f64::INFINITY, f64::min);
        detail.push_str(&format!(
            "; {policy}: {} spreads, smallest factor {min:.3}",
            outcome.contractions.len()
        ));
        for c in outcome.contractions.iter().filter(|c| !c.passed) {
            detail.push_str(&format!(
                "\n      {policy} run, {} contracted only {:.3}",
                c.statistic,
                c.factor.unwrap_or(0.0)
            ));
        }
    }
    verdict(ok, detail)
}

const YULE_SAMPLES: usize = 100_000;
const YULE_SEED: u64 = 7;
const YULE_SIGMAS: f64 = 4.0;

fn criterion_7() -> Verdict {
    let t = std::f64::consts::LN_2;
    let mut rng = mc::replicate_rng(YULE_SEED, 0);
    let y = mc::yule_check(t, YULE_SAMPLES, &mut rng).unwrap();
    let (z1, zm) = (y.z_prob(1), y.z_mean());
    verdict(
        z1.abs() <= YULE_SIGMAS && zm.abs() <= YULE_SIGMAS,
        format!(
            "P(1) = {:.5} (z {z1:.2}), mean = {:.5} (z {zm:.2})",
            y.empirical(1),
            y.mean()
        ),
    )
}

const FUZZ_TABLES: usize = 10_000;
const FUZZ_MAX_M: usize = 64;
const FUZZ_SEED: u64 = 8;

fn fuzz_one(m: usize, addresses: &[usize]) -> Result<(), String> {
    let n = addresses.len();
    let mut late = HashTable::new(m, L).map_err(|e| e.to_string())?;
    let mut early = HashTable::new(m, E).map_err(|e| e.to_string())?;
    let mut previous: Vec<u32> = Vec::new();
    for &h in addresses {
        late.insert(h).map_err(|e| e.to_string())?;
        early.insert(h).map_err(|e| e.to_string())?;
        late.check_invariants()?;
        early.check_invariants()?;
        if late.displacements()[..previous.len()] != previous[..] {
            return Err("late insertion moved an earlier item".into());
        }
        previous = late.displacements().to_vec();
    }
    if late.chain_partition() != early.chain_partition() {
        return Err("chain partitions differ".into());
    }
    let hl = late.histogram(L).map_err(|e| e.to_string())?;
    let he = early.histogram(E).map_err(|e| e.to_string())?;
    if hl.count(0) != he.count(0) {
        return Err("n_0 differs".into());
    }
    if hl.total() != n as u64 || he.total() != n as u64 {
        return Err("successful counts do not sum to n".into());
    }
    for t in [&late, &early] {
        if t.histogram(U).map_err(|e| e.to_string())?.total() != m as u64 {
            return Err("unsuccessful counts do not sum to m".into());
        }
    }
    Ok(())
}

fn criterion_8() -> Verdict {
    let mut rng = mc::replicate_rng(FUZZ_SEED, 0);
    for i in 0..FUZZ_TABLES {
        let m = rng.random_range(1..=FUZZ_MAX_M);
        let n = rng.random_range(1..=m);
        let addresses: Vec<usize> = (0..n).map(|_| rng.random_range(1..=m)).collect();
        if let Err(e) = fuzz_one(m, &addresses) {
            return verdict(
                false,
                format!("table {i} (m={m}, addresses {addresses:?}): {e}"),
            );
        }
    }
    verdict(
        true,
        format!("{FUZZ_TABLES} random tables with m <= {FUZZ_MAX_M}"),
    )
}

const OPTIMALITY_GRID: usize = 100;
const OPTIMALITY_MAX_M: usize = 8;

fn criterion_9() -> Verdict {
    for i in 1..=OPTIMALITY_GRID {
        let alpha = i as f64 / OPTIMALITY_GRID as f64;
        let e = limit::mean_limit(LimitSpec::new(alpha, E).unwrap());
        let l = limit::mean_limit(LimitSpec::new(alpha, L).unwrap());
        if e > l {
            return verdict(false, format!("limit mean E {e} > L {l} at alpha {alpha}"));
        }
    }
    let mut instances = 0;
    for m in 1..=OPTIMALITY_MAX_M {
        for n in 1..=m.min(oracle::max_enumerable_n(m)) {
            let e = enumerate_exact(m, n, E).unwrap().mean();
            let l = enumerate_exact(m, n, L).unwrap().mean();
            if e > l {
                return verdict(false, format!("exact mean E {e} > L {l} at m={m} n={n}"));
            }
            instances += 1;
        }
    }
    verdict(
        true,
        format!("{OPTIMALITY_GRID} load factors; {instances} exact instances with m <= {OPTIMALITY_MAX_M}"),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("reference table", criterion_1),
        ("closed forms for k = 1, 2", criterion_2),
        ("moments", criterion_3),
        ("oracle equivalence", criterion_4),
        ("Monte Carlo convergence", criterion_5),
        ("concentration", criterion_6),
        ("Yule law", criterion_7),
        ("invariants", criterion_8),
        ("early insertion optimality", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        if !v.passed {
            failed += 1;
        }
        println!(
            "criterion {} {:<28} {}  {}",
            i + 1,
            name,
            if v.passed { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    println!(
        "\n{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
