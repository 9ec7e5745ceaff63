//! Reference table of the limit distributions at `α = 0.5` and `α = 1`:
//! `p(0..=10)`, the tail `Σ_{k>=11} p(k)`, the mean and the variance, for the
//! unsuccessful search and both insertion policies.
//!
//! Each cell also carries the number of decimals used by the classic printed
//! version of this table, so rounded output can be diffed against it.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::limit::{mean_limit, p_limit, tail_mass, var_limit, LimitSpec};
use crate::policy::Policy;

pub const LAST_K: usize = 10;

/// Columns in printed order.
pub const COLUMNS: [(f64, Policy); 6] = [
    (0.5, Policy::Unsuccessful),
    (0.5, Policy::Late),
    (0.5, Policy::Early),
    (1.0, Policy::Unsuccessful),
    (1.0, Policy::Late),
    (1.0, Policy::Early),
];

// Printed decimals, one row per table row (k = 0..=10, tail, mean, variance).
const DECIMALS: [[usize; 6]; 14] = [
    [1, 2, 2, 1, 1, 1],
    [3, 4, 4, 1, 4, 4],
    [4, 4, 4, 4, 4, 4],
    [4, 4, 4, 4, 4, 4],
    [4, 4, 4, 4, 4, 4],
    [4, 5, 5, 4, 4, 4],
    [5, 5, 5, 4, 4, 4],
    [5, 6, 6, 4, 4, 4],
    [5, 6, 6, 4, 4, 4],
    [5, 6, 6, 4, 4, 4],
    [5, 6, 6, 4, 4, 4],
    [6, 7, 7, 4, 4, 4],
    [4, 4, 4, 4, 4, 4],
    [4, 4, 4, 4, 4, 4],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Row {
    Prob(usize),
    /// `Σ_{k > LAST_K} p(k)`.
    Tail,
    Mean,
    Variance,
}

impl Row {
    pub fn all() -> Vec<Row> {
        (0..=LAST_K)
            .map(Row::Prob)
            .chain([Row::Tail, Row::Mean, Row::Variance])
            .collect()
    }

    pub fn label(&self) -> String {
        match self {
            Row::Prob(k) => k.to_string(),
            Row::Tail => format!(">={}", LAST_K + 1),
            Row::Mean => "E".to_string(),
            Row::Variance => "Var".to_string(),
        }
    }

    fn index(&self) -> usize {
        match *self {
            Row::Prob(k) => k,
            Row::Tail => LAST_K + 1,
            Row::Mean => LAST_K + 2,
            Row::Variance => LAST_K + 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub row: Row,
    pub alpha: f64,
    pub policy: Policy,
    pub value: f64,
    pub decimals: usize,
}

impl Entry {
    pub fn rounded(&self) -> String {
        format!("{:.*}", self.decimals, self.value)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1 {
    pub entries: Vec<Entry>,
}

pub fn compute() -> Result<Table1> {
    let mut entries = Vec::new();
    for (col, &(alpha, policy)) in COLUMNS.iter().enumerate() {
        let spec = LimitSpec::new(alpha, policy)?;
        for row in Row::all() {
            let value = match row {
                Row::Prob(k) => p_limit(spec, k),
                Row::Tail => tail_mass(spec, LAST_K),
                Row::Mean => mean_limit(spec),
                Row::Variance => var_limit(spec),
            };
            entries.push(Entry {
                row,
                alpha,
                policy,
                value,
                decimals: DECIMALS[row.index()][col],
            });
        }
    }
    Ok(Table1 { entries })
}

impl Table1 {
    pub fn get(&self, row: Row, alpha: f64, policy: Policy) -> Option<&Entry> {
        self.entries
            .iter()
            .find(|e| e.row == row && e.alpha == alpha && e.policy == policy)
    }

    /// Every column's probabilities plus tail must sum to one.
    pub fn self_check(&self) -> std::result::Result<(), String> {
        for &(alpha, policy) in &COLUMNS {
            let total: f64 = self
                .entries
                .iter()
                .filter(|e| e.alpha == alpha && e.policy == policy)
                .filter(|e| matches!(e.row, Row::Prob(_) | Row::Tail))
                .map(|e| e.value)
                .sum();
            if (total - 1.0).abs() > 1e-10 {
                return Err(format!("column {policy} at alpha {alpha} sums to {total}"));
            }
        }
        Ok(())
    }

    /// Printed-table layout: one line per row, one column per `(α, policy)`.
    pub fn render_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{:>5}", "k"));
        for (alpha, policy) in COLUMNS {
            out.push_str(&format!(" | {:>12}", format!("p_{alpha}^{policy}(k)")));
        }
        out.push('\n');
        out.push_str(&"-".repeat(5 + 6 * 15));
        out.push('\n');
        for row in Row::all() {
            out.push_str(&format!("{:>5}", row.label()));
            for (alpha, policy) in COLUMNS {
                let e = self
                    .get(row, alpha, policy)
                    .expect("every cell is computed");
                out.push_str(&format!(" | {:>12}", e.rounded()));
            }
            out.push('\n');
        }
        out
    }

    /// Long format: `row,alpha,policy,value,printed`.
    pub fn render_csv(&self) -> String {
        let mut out = String::from("row,alpha,policy,value,printed\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                e.row.label(),
                e.alpha,
                e.policy,
                crate::format::sig(e.value, 10),
                e.rounded()
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn has_every_cell() {
        let t = compute().unwrap();
        assert_eq!(t.entries.len(), 6 * 14);
        t.self_check().unwrap();
    }

    #[test]
    fn rounding_uses_printed_precision() {
        let t = compute().unwrap();
        assert_eq!(
            t.get(Row::Prob(3), 1.0, Policy::Unsuccessful)
                .unwrap()
                .rounded(),
            "0.1200"
        );
        assert_eq!(
            t.get(Row::Variance, 0.5, Policy::Early).unwrap().rounded(),
            "0.3324"
        );
        assert_eq!(
            t.get(Row::Tail, 0.5, Policy::Late).unwrap().rounded(),
            "0.0000007"
        );
        assert_eq!(
            t.get(Row::Prob(0), 0.5, Policy::Late).unwrap().rounded(),
            "0.75"
        );
    }

    #[test]
    fn csv_has_header_and_all_rows() {
        let csv = compute().unwrap().render_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "row,alpha,policy,value,printed");
        assert_eq!(lines.len(), 1 + 84);
        assert!(lines.iter().any(|l| l.starts_with(">=11,0.5,L,")));
    }

    #[test]
    fn human_layout_has_a_line_per_row() {
        let text = compute().unwrap().render_human();
        assert_eq!(text.lines().count(), 2 + 14);
        assert!(text.contains("p_1^E(k)"));
    }
}
