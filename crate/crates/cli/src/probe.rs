//! Numerical probe of the boundary behavior: walk a root vector with one
//! coincident pair toward its limit, halving the split each step, and watch
//! the gradient stay positive while LEL converges.

use lel_core::vieta::{lel_gradient, lel_of_roots, PreparedRoots};
use serde::Serialize;

use crate::report::fmt_f64;
use crate::HarnessError;

/// Pairs closer than this (relative to the larger entry) count as coincident
/// in the probe's input.
const COINCIDENCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct ProbeStep {
    pub delta: String,
    pub lel: String,
    pub min_gradient_entry: Option<String>,
    pub gradient_positive: Option<bool>,
    pub refusal: Option<String>,
}

#[derive(Debug)]
pub struct ClosureOutcome {
    pub steps: Vec<ProbeStep>,
    /// LEL evaluated directly at the limit point (square roots need no
    /// distinctness).
    pub lel_at_limit: f64,
    /// The expected refusal when the limit point itself is prepared.
    pub limit_refusal: Option<String>,
    /// |LEL| Cauchy difference between the last two evaluated steps.
    pub final_cauchy_gap: Option<f64>,
    pub cauchy_ok: bool,
    /// True when every evaluated step with delta >= 1e-6 had an all-positive
    /// gradient.
    pub positive_above_threshold: bool,
    // numeric mirrors of the step list, for assertions
    pub deltas: Vec<f64>,
    pub lels: Vec<f64>,
}

/// Probes the closure of the root domain at `mu_limit`, which may contain at
/// most one coincident pair. Returns the per-step trace.
pub fn closure_probe(mu_limit: &[f64], steps: usize) -> Result<ClosureOutcome, HarnessError> {
    if mu_limit.is_empty() {
        return Err(HarnessError::InvalidProbe("empty root list".into()));
    }
    if steps == 0 {
        return Err(HarnessError::InvalidProbe("need at least one step".into()));
    }
    for &v in mu_limit {
        if !v.is_finite() || v <= 0.0 {
            return Err(HarnessError::InvalidProbe(format!(
                "roots must be finite and positive, got {v}"
            )));
        }
    }
    let mut sorted = mu_limit.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let coincident: Vec<usize> = sorted
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] - w[1] <= COINCIDENCE_TOL * w[0].max(1.0))
        .map(|(i, _)| i)
        .collect();
    if coincident.len() > 1 {
        return Err(HarnessError::InvalidProbe(format!(
            "{} coincident pairs; the probe handles exactly one",
            coincident.len()
        )));
    }

    let lel_at_limit: f64 = sorted.iter().map(|&x| x.sqrt()).sum();

    let mut out = ClosureOutcome {
        steps: Vec::new(),
        lel_at_limit,
        limit_refusal: None,
        final_cauchy_gap: None,
        cauchy_ok: true,
        positive_above_threshold: true,
        deltas: Vec::new(),
        lels: Vec::new(),
    };

    let evaluate = |roots: Vec<f64>, delta: f64, out: &mut ClosureOutcome| {
        let step = match PreparedRoots::new(roots) {
            Ok(r) => {
                let lel = lel_of_roots(&r);
                out.deltas.push(delta);
                out.lels.push(lel);
                match lel_gradient(&r) {
                    Ok(grad) => {
                        let min = grad.iter().cloned().fold(f64::INFINITY, f64::min);
                        let positive = grad.iter().all(|&g| g > 0.0);
                        if delta >= 1e-6 && !positive {
                            out.positive_above_threshold = false;
                        }
                        ProbeStep {
                            delta: fmt_f64(delta),
                            lel: fmt_f64(lel),
                            min_gradient_entry: Some(fmt_f64(min)),
                            gradient_positive: Some(positive),
                            refusal: None,
                        }
                    }
                    Err(e) => ProbeStep {
                        delta: fmt_f64(delta),
                        lel: fmt_f64(lel),
                        min_gradient_entry: None,
                        gradient_positive: None,
                        refusal: Some(e.to_string()),
                    },
                }
            }
            Err(e) => ProbeStep {
                delta: fmt_f64(delta),
                lel: f64::NAN.to_string(),
                min_gradient_entry: None,
                gradient_positive: None,
                refusal: Some(e.to_string()),
            },
        };
        out.steps.push(step);
    };

    match coincident.first() {
        None => {
            // No repeat: the probe degenerates to a single evaluation.
            evaluate(sorted.clone(), 0.0, &mut out);
        }
        Some(&p) => {
            let v = sorted[p];
            // Largest admissible split: stay clear of the neighbors and of 0.
            let mut room = v;
            if p > 0 {
                room = room.min(sorted[p - 1] - v);
            }
            if p + 2 < sorted.len() {
                room = room.min(v - sorted[p + 2]);
            }
            let delta0 = exp2_floor(0.4 * room);
            for t in 0..steps {
                let delta = delta0 * (0.5f64).powi(t as i32);
                let mut roots = sorted.clone();
                roots[p] = v + delta;
                roots[p + 1] = v - delta;
                evaluate(roots, delta, &mut out);
            }
            // The limit point itself must refuse.
            out.limit_refusal = Some(match PreparedRoots::new(sorted.clone()) {
                Err(e) => e.to_string(),
                Ok(_) => "unexpectedly accepted".to_string(),
            });
        }
    }

    if out.lels.len() >= 2 {
        let gap = (out.lels[out.lels.len() - 1] - out.lels[out.lels.len() - 2]).abs();
        out.final_cauchy_gap = Some(gap);
        out.cauchy_ok = gap <= 1e-9;
    }
    Ok(out)
}

/// Largest power of two not exceeding x.
fn exp2_floor(x: f64) -> f64 {
    x.log2().floor().exp2()
}
