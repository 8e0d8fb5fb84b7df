//! Regeneration of the published contrast tables.

use crate::error::{param, Result};
use crate::rational::display;
use crate::theory::better::{better2_alpha_partition, better3_alpha_partition};
use crate::theory::curve::{find_convergence_n, ContrastCurve, ContrastValue};
use crate::theory::or_contrast::{alpha_or_infinity, alpha_or_partition, alpha_or_stack_t, sigma_or};
use crate::theory::partition::{partitions_of, Partition};
use crate::theory::xor_contrast::{alpha_xor_infinity, alpha_xor_partition};
use std::fmt::Write as _;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Table {
    /// OR contrast against `n`, with limits.
    I,
    /// XOR limits.
    II,
    /// OR limits when stacking `t > k` shares.
    III,
    /// Per-partition limits.
    IV,
    /// Convergence points.
    VI,
}

impl FromStr for Table {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(Table::I),
            "II" | "2" => Ok(Table::II),
            "III" | "3" => Ok(Table::III),
            "IV" | "4" => Ok(Table::IV),
            "VI" | "6" => Ok(Table::VI),
            _ => Err(param(format!("unknown table `{s}` (expected I, II, III, IV or VI)"))),
        }
    }
}

impl Table {
    pub fn default_kmax(self) -> usize {
        match self {
            Table::I => 4,
            Table::II | Table::VI => 6,
            Table::III | Table::IV => 5,
        }
    }
}

/// Which family a per-partition or convergence row describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Or,
    Xor,
    Better,
}

impl FromStr for Family {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "or" => Ok(Family::Or),
            "xor" => Ok(Family::Xor),
            "better" => Ok(Family::Better),
            _ => Err(param(format!("unknown mode `{s}` (expected or, xor or better)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub k: usize,
    /// Participant count, stack size or `inf`.
    pub n_or_t: String,
    /// Partition, or `-` when the row is not per-partition.
    pub partition: String,
    pub value: ContrastValue,
}

const TABLE_I_COLUMNS: [usize; 7] = [2, 3, 4, 5, 10, 50, 100];

/// Rows of `table` for thresholds up to `kmax`. `family` selects the
/// scheme for tables IV and VI and defaults to OR.
pub fn table_rows(table: Table, kmax: usize, family: Option<Family>) -> Result<Vec<TableRow>> {
    if kmax < 2 {
        return Err(param(format!("kmax must be at least 2, got {kmax}")));
    }
    let family = family.unwrap_or(Family::Or);
    let row = |k: usize, n_or_t: String, partition: String, value: ContrastValue| TableRow {
        k,
        n_or_t,
        partition,
        value,
    };
    let mut rows = Vec::new();
    match table {
        Table::I => {
            for k in 2..=kmax {
                for n in TABLE_I_COLUMNS.into_iter().filter(|&n| n >= k) {
                    rows.push(row(k, n.to_string(), "-".into(), ContrastValue::Exact(sigma_or(k, n, k)?)));
                }
                rows.push(row(k, "inf".into(), "-".into(), ContrastValue::Exact(alpha_or_infinity(k)?)));
            }
        }
        Table::II => {
            for k in 2..=kmax {
                rows.push(row(k, "inf".into(), "-".into(), ContrastValue::Exact(alpha_xor_infinity(k)?)));
            }
        }
        Table::III => {
            if kmax < 4 {
                return Err(param("the stacking table covers k >= 4; raise --kmax"));
            }
            for k in 4..=kmax {
                for t in k..=11.max(k) {
                    rows.push(row(k, t.to_string(), "-".into(), ContrastValue::Exact(alpha_or_stack_t(k, t)?)));
                }
            }
        }
        Table::IV => {
            for k in 2..=kmax {
                if family == Family::Better && k > 3 {
                    break;
                }
                for parts in partitions_of(k, k, k) {
                    let mu = Partition::new(parts)?;
                    let value = match family {
                        Family::Or => ContrastValue::Exact(alpha_or_partition(&mu, k)?),
                        Family::Xor => ContrastValue::Exact(alpha_xor_partition(&mu, k)?),
                        Family::Better if k == 2 => ContrastValue::Approx(better2_alpha_partition(&mu)?),
                        Family::Better => ContrastValue::Exact(better3_alpha_partition(&mu)?),
                    };
                    rows.push(row(k, "inf".into(), mu.to_string(), value));
                }
            }
        }
        Table::VI => {
            for k in 2..=kmax {
                let (curve, eps) = match family {
                    Family::Or => (ContrastCurve::rgvcs_or(k)?, 0.005),
                    Family::Xor => (ContrastCurve::rgvcs_xor(k)?, 0.05),
                    Family::Better if k <= 3 => (ContrastCurve::better(k)?, 0.005),
                    Family::Better => break,
                };
                let n = find_convergence_n(&curve, eps)?;
                rows.push(row(k, n.to_string(), "-".into(), curve.at(n)?));
            }
        }
    }
    Ok(rows)
}

fn num_den(value: &ContrastValue) -> (String, String) {
    match value.as_exact() {
        Some(r) => (r.numer().to_string(), r.denom().to_string()),
        None => (String::new(), String::new()),
    }
}

/// CSV with header `k,n_or_t,partition,value_num,value_den,value_float`.
/// Irrational values leave the fraction fields empty.
pub fn render_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("k,n_or_t,partition,value_num,value_den,value_float\n");
    for r in rows {
        let (num, den) = num_den(&r.value);
        let partition = if r.partition.contains(',') {
            format!("\"{}\"", r.partition)
        } else {
            r.partition.clone()
        };
        let _ = writeln!(out, "{},{},{},{},{},{:.10}", r.k, r.n_or_t, partition, num, den, r.value.to_f64());
    }
    out
}

fn heading(table: Table, family: Option<Family>) -> String {
    let family = family.unwrap_or(Family::Or);
    let fam = match family {
        Family::Or => "OR",
        Family::Xor => "XOR",
        Family::Better => "better",
    };
    match table {
        Table::I => "OR contrast of k stacked shares among the first n".into(),
        Table::II => "XOR contrast limit".into(),
        Table::III => "OR contrast limit when stacking t shares".into(),
        Table::IV => format!("Per-partition contrast limit ({fam})"),
        Table::VI => format!("Smallest n within epsilon of the limit ({fam})"),
    }
}

/// Aligned plain-text rendering.
pub fn render_text(table: Table, family: Option<Family>, rows: &[TableRow]) -> String {
    let label = match table {
        Table::III => "t",
        _ => "n",
    };
    let cells: Vec<[String; 5]> = rows
        .iter()
        .map(|r| {
            let exact = match &r.value {
                ContrastValue::Exact(v) => display(v),
                ContrastValue::Approx(_) => irrational_label(r),
            };
            [r.k.to_string(), r.n_or_t.clone(), r.partition.clone(), exact, format!("{:.4}", r.value.to_f64())]
        })
        .collect();
    let header = ["k".to_string(), label.to_string(), "partition".into(), "value".into(), "approx".into()];
    let mut widths = header.clone().map(|h| h.chars().count());
    for c in &cells {
        for (w, s) in widths.iter_mut().zip(c) {
            *w = (*w).max(s.chars().count());
        }
    }
    let mut out = heading(table, family);
    out.push('\n');
    for line in std::iter::once(&header).chain(cells.iter()) {
        let fields: Vec<String> = line
            .iter()
            .zip(widths)
            .map(|(s, w)| format!("{s:>w$}"))
            .collect();
        out.push_str(fields.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn irrational_label(r: &TableRow) -> String {
    match r.partition.as_str() {
        "[2]" => "√2-1".into(),
        "[1,1]" => "(√2-1)/2".into(),
        _ => "-".into(),
    }
}

/// Four-decimal rendering used when checking printed table cells.
pub fn four_dp(value: &ContrastValue) -> String {
    format!("{:.4}", value.to_f64())
}

/// Exact value of a cell, if the table row is rational.
pub fn exact_cell(rows: &[TableRow], k: usize, n_or_t: &str, partition: &str) -> Option<ContrastValue> {
    rows.iter()
        .find(|r| r.k == k && r.n_or_t == n_or_t && r.partition == partition)
        .map(|r| r.value.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn or_grid_cell() {
        let rows = table_rows(Table::I, 4, None).unwrap();
        assert_eq!(exact_cell(&rows, 3, "4", "-"), Some(ContrastValue::Exact(ratio(13, 112))));
        assert_eq!(four_dp(&exact_cell(&rows, 2, "10", "-").unwrap()), "0.2333");
        let text = render_text(Table::I, None, &rows);
        assert!(text.contains("13/112"));
    }

    #[test]
    fn per_partition_csv_shape() {
        let rows = table_rows(Table::IV, 3, Some(Family::Better)).unwrap();
        let csv = render_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "k,n_or_t,partition,value_num,value_den,value_float");
        assert_eq!(lines.len(), 1 + 2 + 3);
        assert!(lines[1].starts_with("2,inf,[2],,,0.41421"));
        assert!(lines.iter().any(|l| l.starts_with("3,inf,\"[1,1,1]\",2,41,")));
    }

    #[test]
    fn stack_rows_need_large_k() {
        assert!(table_rows(Table::III, 3, None).is_err());
        assert_eq!(table_rows(Table::III, 5, None).unwrap().len(), 8 + 7);
    }
}
