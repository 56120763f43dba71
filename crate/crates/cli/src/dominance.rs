//! Coefficient-dominance comparisons and the ordering campaigns built on
//! them: extremal coefficient bounds, LEL order over comparable pairs, and
//! the hunt for LEE order inversions.

use lel_core::charpoly::characteristic_coefficients;
use lel_core::enumerate::{canonical_code, free_trees, LevelSequence};
use lel_core::graph::Graph;
use lel_core::ExactCoeffs;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::records::{coefficient_table, tree_id, TreeRecord};
use crate::report::fmt_f64;
use crate::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DominanceVerdict {
    #[serde(rename = "LE")]
    Le,
    #[serde(rename = "GE")]
    Ge,
    #[serde(rename = "EQ")]
    Eq,
    #[serde(rename = "INCOMPARABLE")]
    Incomparable,
}

/// Verdict plus the first index k (1-based) where the vectors differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dominance {
    pub verdict: DominanceVerdict,
    pub witness: Option<usize>,
}

/// Entrywise exact comparison of c_1..c_{n-1}; c_0 and c_n are excluded
/// (always equal for equal-order Laplacians).
pub fn dominance(a: &ExactCoeffs, b: &ExactCoeffs) -> Result<Dominance, HarnessError> {
    if a.order() != b.order() {
        return Err(HarnessError::OrderMismatch {
            a: a.order(),
            b: b.order(),
        });
    }
    let n = a.order();
    let mut saw_less = false;
    let mut saw_greater = false;
    let mut witness = None;
    for k in 1..n {
        let (x, y) = (a.get(k), b.get(k));
        if x != y {
            if witness.is_none() {
                witness = Some(k);
            }
            if x < y {
                saw_less = true;
            } else {
                saw_greater = true;
            }
        }
    }
    let verdict = match (saw_less, saw_greater) {
        (false, false) => DominanceVerdict::Eq,
        (true, false) => DominanceVerdict::Le,
        (false, true) => DominanceVerdict::Ge,
        (true, true) => DominanceVerdict::Incomparable,
    };
    Ok(Dominance { verdict, witness })
}

/// A comparable pair that failed (or is reported for) an order check.
#[derive(Debug, Clone, Serialize)]
pub struct OrderCheckRecord {
    /// Tree with the (weakly) smaller coefficients.
    pub id_low: String,
    /// Tree with the (weakly) larger coefficients.
    pub id_high: String,
    pub verdict: DominanceVerdict,
    pub witness: Option<usize>,
    pub lel_diff: String,
    pub lee_diff: String,
    pub lel_violation: bool,
    pub lee_violation: bool,
}

fn order_record(low: &TreeRecord, high: &TreeRecord, d: Dominance, slack: f64) -> OrderCheckRecord {
    OrderCheckRecord {
        id_low: low.id.clone(),
        id_high: high.id.clone(),
        verdict: d.verdict,
        witness: d.witness,
        lel_diff: fmt_f64(high.lel - low.lel),
        lee_diff: fmt_f64(high.lee - low.lee),
        lel_violation: low.lel > high.lel + slack,
        lee_violation: low.lee > high.lee + slack,
    }
}

#[derive(Debug)]
pub struct LelOrderOutcome {
    pub n: usize,
    pub classes: usize,
    pub pairs: u64,
    pub comparable_pairs: u64,
    pub strict_pairs: u64,
    pub eq_pairs: u64,
    /// Smallest positive LEL gap over strictly comparable pairs.
    pub min_strict_gap: Option<f64>,
    /// LEL(P_n) - LEL(S_n), when both are present (n >= 2).
    pub star_path_gap: Option<f64>,
    pub violations: Vec<OrderCheckRecord>,
}

#[derive(Default)]
struct ScanPartial {
    comparable: u64,
    strict: u64,
    eq: u64,
    min_gap: Option<f64>,
    violations: Vec<OrderCheckRecord>,
}

impl ScanPartial {
    fn merge(mut self, other: ScanPartial) -> ScanPartial {
        self.comparable += other.comparable;
        self.strict += other.strict;
        self.eq += other.eq;
        self.min_gap = match (self.min_gap, other.min_gap) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.violations.extend(other.violations);
        self
    }
}

/// Scans every unordered pair of order-n classes: wherever the coefficient
/// vectors are comparable, LEL must follow the same order (up to `slack`).
pub fn verify_lel_order(n: usize, slack: f64, tol: f64) -> Result<LelOrderOutcome, HarnessError> {
    let table = coefficient_table(n, tol)?;
    let classes = table.len();
    let partial = (0..classes)
        .into_par_iter()
        .map(|i| {
            let mut part = ScanPartial::default();
            for j in (i + 1)..classes {
                let d = dominance(&table[i].coeffs, &table[j].coeffs)
                    .expect("equal orders within a table");
                let (low, high) = match d.verdict {
                    DominanceVerdict::Incomparable => continue,
                    DominanceVerdict::Le | DominanceVerdict::Eq => (&table[i], &table[j]),
                    DominanceVerdict::Ge => (&table[j], &table[i]),
                };
                part.comparable += 1;
                let record = order_record(low, high, d, slack);
                match d.verdict {
                    DominanceVerdict::Eq => {
                        part.eq += 1;
                        // Equal coefficients mean equal spectra: LEL must agree.
                        if (high.lel - low.lel).abs() > slack {
                            part.violations.push(record);
                        }
                    }
                    _ => {
                        part.strict += 1;
                        let gap = high.lel - low.lel;
                        if gap > 0.0 {
                            part.min_gap = Some(part.min_gap.map_or(gap, |g: f64| g.min(gap)));
                        }
                        if record.lel_violation {
                            part.violations.push(record);
                        }
                    }
                }
            }
            part
        })
        .reduce(ScanPartial::default, ScanPartial::merge);

    let mut violations = partial.violations;
    violations.sort_by(|a, b| (&a.id_low, &a.id_high).cmp(&(&b.id_low, &b.id_high)));

    let star_path_gap = if n >= 2 {
        let star = canonical_code(&Graph::star(n)?)?;
        let path = canonical_code(&Graph::path(n)?)?;
        let find =
            |code: &lel_core::enumerate::CanonicalCode| table.iter().find(|r| r.code == *code);
        match (find(&star), find(&path)) {
            (Some(s), Some(p)) => Some(p.lel - s.lel),
            _ => None,
        }
    } else {
        None
    };

    Ok(LelOrderOutcome {
        n,
        classes,
        pairs: (classes as u64) * (classes as u64 - 1) / 2,
        comparable_pairs: partial.comparable,
        strict_pairs: partial.strict,
        eq_pairs: partial.eq,
        min_strict_gap: partial.min_gap,
        star_path_gap,
        violations,
    })
}

/// A tree escaping the extremal coefficient bounds (expected: none).
#[derive(Debug, Clone, Serialize)]
pub struct ExtremalViolation {
    pub n: usize,
    pub tree_id: String,
    pub level_sequence: String,
    /// "star" when c_k(T) < c_k(S_n), "path" when c_k(T) > c_k(P_n).
    pub side: &'static str,
    pub k: usize,
    pub tree_ck: String,
    pub bound_ck: String,
}

#[derive(Debug)]
pub struct ExtremalOutcome {
    pub n_max: usize,
    pub trees_checked: u64,
    pub violations: Vec<ExtremalViolation>,
}

/// Exact check of c_k(S_n) <= c_k(T) <= c_k(P_n) for every tree of every
/// order up to `n_max` and every k.
pub fn verify_extremal(n_max: usize) -> Result<ExtremalOutcome, HarnessError> {
    let mut trees_checked = 0u64;
    let mut violations = Vec::new();
    for n in 2..=n_max {
        let star = characteristic_coefficients(&Graph::star(n)?.laplacian());
        let path = characteristic_coefficients(&Graph::path(n)?.laplacian());
        let sequences: Vec<LevelSequence> = free_trees(n)?.collect();
        trees_checked += sequences.len() as u64;
        let mut found: Vec<ExtremalViolation> = sequences
            .par_iter()
            .flat_map_iter(|levels| {
                let g = levels.to_graph();
                let c = characteristic_coefficients(&g.laplacian());
                let mut bad = Vec::new();
                for k in 0..=n {
                    let mut push = |side, bound: &BigInt| {
                        bad.push(ExtremalViolation {
                            n,
                            tree_id: tree_id(&canonical_code(&g).expect("tree")),
                            level_sequence: levels.to_string(),
                            side,
                            k,
                            tree_ck: c.get(k).to_string(),
                            bound_ck: bound.to_string(),
                        })
                    };
                    if c.get(k) < star.get(k) {
                        push("star", star.get(k));
                    }
                    if c.get(k) > path.get(k) {
                        push("path", path.get(k));
                    }
                }
                bad
            })
            .collect();
        found.sort_by(|a, b| (&a.tree_id, a.k).cmp(&(&b.tree_id, b.k)));
        violations.extend(found);
    }
    Ok(ExtremalOutcome {
        n_max,
        trees_checked,
        violations,
    })
}

/// A strictly comparable pair whose LEE order inverts the coefficient order.
#[derive(Debug, Clone, Serialize)]
pub struct LeeInversion {
    pub n: usize,
    pub id_low: String,
    pub id_high: String,
    pub lee_low: String,
    pub lee_high: String,
    /// True when (low, high) is exactly (S_n, P_n).
    pub star_path: bool,
}

#[derive(Debug)]
pub struct HuntOutcome {
    pub n_min: usize,
    pub n_max: usize,
    pub pairs_checked: u64,
    pub inversions: Vec<LeeInversion>,
    /// For each n in max(6, n_min)..=n_max, whether (S_n, P_n) was flagged.
    pub star_path_present: Vec<(usize, bool)>,
}

impl HuntOutcome {
    pub fn all_predicted_found(&self) -> bool {
        self.star_path_present.iter().all(|&(_, found)| found)
    }
}

/// Scans for LEE order inversions among strictly dominance-comparable pairs:
/// full pair scan for n <= 10, the (S_n, P_n) pair alone beyond that.
pub fn hunt_lee(
    n_min: usize,
    n_max: usize,
    slack: f64,
    tol: f64,
) -> Result<HuntOutcome, HarnessError> {
    let mut pairs_checked = 0u64;
    let mut inversions = Vec::new();
    for n in n_min..=n_max {
        let star_code = canonical_code(&Graph::star(n)?)?;
        let path_code = canonical_code(&Graph::path(n)?)?;
        if n <= 10 {
            let table = coefficient_table(n, tol)?;
            let star_id = tree_id(&star_code);
            let path_id = tree_id(&path_code);
            for i in 0..table.len() {
                for j in (i + 1)..table.len() {
                    let d = dominance(&table[i].coeffs, &table[j].coeffs)?;
                    let (low, high) = match d.verdict {
                        DominanceVerdict::Le => (&table[i], &table[j]),
                        DominanceVerdict::Ge => (&table[j], &table[i]),
                        _ => continue,
                    };
                    pairs_checked += 1;
                    if low.lee > high.lee + slack {
                        inversions.push(LeeInversion {
                            n,
                            id_low: low.id.clone(),
                            id_high: high.id.clone(),
                            lee_low: fmt_f64(low.lee),
                            lee_high: fmt_f64(high.lee),
                            star_path: low.id == star_id && high.id == path_id,
                        });
                    }
                }
            }
        } else {
            let star = Graph::star(n)?;
            let path = Graph::path(n)?;
            let d = dominance(
                &characteristic_coefficients(&star.laplacian()),
                &characteristic_coefficients(&path.laplacian()),
            )?;
            pairs_checked += 1;
            if d.verdict == DominanceVerdict::Le {
                let lee_s = lel_core::invariants::invariant_record(&star, tol)?.lee;
                let lee_p = lel_core::invariants::invariant_record(&path, tol)?.lee;
                if lee_s > lee_p + slack {
                    inversions.push(LeeInversion {
                        n,
                        id_low: tree_id(&star_code),
                        id_high: tree_id(&path_code),
                        lee_low: fmt_f64(lee_s),
                        lee_high: fmt_f64(lee_p),
                        star_path: true,
                    });
                }
            }
        }
    }
    let star_path_present = (n_min.max(6)..=n_max)
        .map(|n| {
            let found = inversions.iter().any(|v| v.n == n && v.star_path);
            (n, found)
        })
        .collect();
    Ok(HuntOutcome {
        n_min,
        n_max,
        pairs_checked,
        inversions,
        star_path_present,
    })
}
