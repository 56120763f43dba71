//! Report emission: the fixed JSON report shape shared by every check, and
//! CSV output for the invariant tables. Floating-point values are written as
//! decimal text with 17 significant digits so reports are byte-identical
//! across runs and round-trip exactly.

use serde::Serialize;

use crate::records::TreeRecord;

/// 17 significant digits: enough to reproduce the f64 bit pattern.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// The one report shape every subcommand emits.
#[derive(Debug, Serialize)]
pub struct Report<P: Serialize, V: Serialize> {
    pub check: &'static str,
    pub params: P,
    pub cases_checked: u64,
    pub violations: Vec<V>,
    pub status: Status,
}

impl<P: Serialize, V: Serialize> Report<P, V> {
    pub fn passing(check: &'static str, params: P, cases_checked: u64, violations: Vec<V>) -> Self {
        let status = if violations.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        Report {
            check,
            params,
            cases_checked,
            violations,
            status,
        }
    }

    /// Same shape, but with the pass/fail decided by the caller (the hunt
    /// command passes exactly when its predicted inversions are present).
    pub fn with_status(
        check: &'static str,
        params: P,
        cases_checked: u64,
        violations: Vec<V>,
        pass: bool,
    ) -> Self {
        Report {
            check,
            params,
            cases_checked,
            violations,
            status: if pass { Status::Pass } else { Status::Fail },
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// CSV invariant table: `n,tree_id,level_sequence,c0..cn,lel,lee,ie,wiener`.
/// The level sequence is the only quoted field (it contains commas).
pub fn records_to_csv(records: &[TreeRecord], n: usize) -> String {
    let mut out = String::from("n,tree_id,level_sequence");
    for k in 0..=n {
        out.push_str(&format!(",c{k}"));
    }
    out.push_str(",lel,lee,ie,wiener\n");
    for r in records {
        out.push_str(&format!("{},{},\"{}\"", r.n, r.id, r.levels));
        for c in r.coeffs.as_slice() {
            out.push_str(&format!(",{c}"));
        }
        out.push_str(&format!(
            ",{},{},{},{}\n",
            fmt_f64(r.lel),
            fmt_f64(r.lee),
            fmt_f64(r.ie),
            r.wiener
        ));
    }
    out
}

#[derive(Debug, Serialize)]
struct JsonRecord<'a> {
    n: usize,
    tree_id: &'a str,
    level_sequence: String,
    c: Vec<String>,
    lel: String,
    lee: String,
    ie: String,
    wiener: u64,
}

/// JSON invariant table with the same fields as the CSV.
pub fn records_to_json(records: &[TreeRecord]) -> String {
    let rows: Vec<JsonRecord> = records
        .iter()
        .map(|r| JsonRecord {
            n: r.n,
            tree_id: &r.id,
            level_sequence: r.levels.to_string(),
            c: r.coeffs.to_decimal_strings(),
            lel: fmt_f64(r.lel),
            lee: fmt_f64(r.lee),
            ie: fmt_f64(r.ie),
            wiener: r.wiener,
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("records serialize")
}
