//! Per-tree records: canonical identity, exact coefficients, and the scalar
//! invariants, materialized deterministically for a whole order at a time.

use lel_core::charpoly::{characteristic_coefficients, verify_coefficient_identities};
use lel_core::enumerate::{canonical_code, free_trees, CanonicalCode, LevelSequence};
use lel_core::invariants::invariant_record;
use lel_core::ExactCoeffs;
use rayon::prelude::*;

use crate::HarnessError;

/// Stable 64-bit FNV-1a over the canonical code; the tree id used in every
/// report.
pub fn tree_id(code: &CanonicalCode) -> String {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in code.as_bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")
}

/// One isomorphism class: identity, exact coefficients, scalar invariants.
#[derive(Debug, Clone)]
pub struct TreeRecord {
    pub id: String,
    pub code: CanonicalCode,
    pub n: usize,
    pub levels: LevelSequence,
    pub coeffs: ExactCoeffs,
    pub lel: f64,
    pub lee: f64,
    pub ie: f64,
    pub wiener: u64,
}

/// Records for every isomorphism class of order `n`, computed in parallel
/// and merged in canonical-code order. Every record is cross-checked against
/// the exact coefficient identities before it is admitted.
pub fn coefficient_table(n: usize, tol: f64) -> Result<Vec<TreeRecord>, HarnessError> {
    let sequences: Vec<LevelSequence> = free_trees(n)?.collect();
    let mut records = sequences
        .into_par_iter()
        .map(|levels| {
            let g = levels.to_graph();
            let code = canonical_code(&g)?;
            let identity = verify_coefficient_identities(&g)?;
            if !identity.pass() {
                return Err(HarnessError::InternalCheck(format!(
                    "coefficient identities failed for {levels}"
                )));
            }
            let inv = invariant_record(&g, tol)?;
            Ok(TreeRecord {
                id: tree_id(&code),
                code,
                n,
                levels,
                coeffs: characteristic_coefficients(&g.laplacian()),
                lel: inv.lel,
                lee: inv.lee,
                ie: inv.ie,
                wiener: inv.wiener,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    records.sort_by(|a, b| a.code.cmp(&b.code));
    Ok(records)
}
