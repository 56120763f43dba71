//! Seeded random-root campaigns (Jacobian identity, power-sum lemmas,
//! coefficient gradient) and the exhaustive exact-identity sweep.

use lel_core::charpoly::verify_coefficient_identities;
use lel_core::enumerate::{free_trees, LevelSequence};
use lel_core::vieta::{
    elementary_symmetric, jacobian_product_residuals, lel_gradient, roots_from_coeffs,
    weighted_power_sum, weighted_sum_recurrence_residual, PreparedRoots, RealCoeffs,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::report::fmt_f64;
use crate::HarnessError;

/// Root interval for the Jacobian and lemma campaigns.
const ROOT_LO: f64 = 0.1;
const ROOT_HI: f64 = 10.0;

/// Root interval for the gradient campaign. Kept narrow: the smallest
/// gradient entries shrink like x^(1/2 - n), and a finite difference with
/// the pinned 1e-6 step cannot resolve entries much below 1e-5.
const GRAD_LO: f64 = 0.4;
const GRAD_HI: f64 = 3.4;
const GRAD_MIN_GAP: f64 = 0.3;

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Independent deterministic stream per (campaign seed, n, sample index).
fn task_rng(seed: u64, n: usize, sample: usize) -> ChaCha8Rng {
    let mixed = splitmix(seed ^ splitmix(n as u64) ^ splitmix((sample as u64) << 20));
    ChaCha8Rng::seed_from_u64(mixed)
}

/// Rejects parameter combinations the sampler cannot satisfy.
fn check_family(
    n_min: usize,
    n_max: usize,
    lo: f64,
    hi: f64,
    min_gap: f64,
) -> Result<(), HarnessError> {
    if n_min < 1 || n_min > n_max {
        return Err(HarnessError::InvalidParams(format!(
            "need 1 <= n_min <= n_max, got {n_min}..{n_max}"
        )));
    }
    if !(min_gap > 0.0 && min_gap.is_finite()) {
        return Err(HarnessError::InvalidParams(format!(
            "min gap must be positive and finite, got {min_gap}"
        )));
    }
    let span = hi - lo - (n_max as f64 - 1.0) * min_gap;
    if span <= 0.0 {
        return Err(HarnessError::InvalidParams(format!(
            "({lo}, {hi}) cannot hold {n_max} roots with gap {min_gap}"
        )));
    }
    Ok(())
}

/// n roots in (lo, hi) with every adjacent gap at least `min_gap`:
/// sorted uniform draws from the shrunken interval, fanned out by i*min_gap.
fn sample_roots(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64, min_gap: f64) -> Vec<f64> {
    let span = hi - lo - (n as f64 - 1.0) * min_gap;
    assert!(
        span > 0.0,
        "interval too small for {n} roots at gap {min_gap}"
    );
    let mut base: Vec<f64> = (0..n)
        .map(|_| lo + min_gap / 2.0 + rng.random::<f64>() * span)
        .collect();
    base.sort_by(f64::total_cmp);
    base.iter()
        .enumerate()
        .map(|(i, b)| b + i as f64 * min_gap)
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleViolation {
    pub n: usize,
    pub sample: usize,
    pub check: String,
    pub value: String,
    pub bound: String,
}

#[derive(Debug)]
pub struct JacobianOutcome {
    pub cases: u64,
    pub max_residual: f64,
    pub violations: Vec<SampleViolation>,
}

/// Product identity of the two Jacobians over seeded random root vectors:
/// both J_F · J_F⁻¹ and J_F⁻¹ · J_F must sit within `tol` of the identity.
pub fn verify_jacobian(
    n_min: usize,
    n_max: usize,
    samples: usize,
    min_gap: f64,
    tol: f64,
    seed: u64,
) -> Result<JacobianOutcome, HarnessError> {
    check_family(n_min, n_max, ROOT_LO, ROOT_HI, min_gap)?;
    let tasks: Vec<(usize, usize)> = (n_min..=n_max)
        .flat_map(|n| (0..samples).map(move |s| (n, s)))
        .collect();
    let results: Vec<(usize, usize, f64, f64)> = tasks
        .par_iter()
        .map(|&(n, s)| {
            let mut rng = task_rng(seed, n, s);
            let roots = sample_roots(&mut rng, n, ROOT_LO, ROOT_HI, min_gap);
            let r = PreparedRoots::new(roots).expect("sampled roots are valid");
            let (fi, inv_f) = jacobian_product_residuals(&r);
            (n, s, fi, inv_f)
        })
        .collect();
    let mut max_residual = 0.0f64;
    let mut violations = Vec::new();
    for (n, sample, fi, inv_f) in results {
        max_residual = max_residual.max(fi).max(inv_f);
        for (name, value) in [("forward*inverse", fi), ("inverse*forward", inv_f)] {
            if value > tol {
                violations.push(SampleViolation {
                    n,
                    sample,
                    check: name.to_string(),
                    value: fmt_f64(value),
                    bound: fmt_f64(tol),
                });
            }
        }
    }
    Ok(JacobianOutcome {
        cases: tasks.len() as u64,
        max_residual,
        violations,
    })
}

#[derive(Debug)]
pub struct LemmaOutcome {
    pub cases: u64,
    /// Largest |value| / (tol * scale) ratio observed.
    pub max_ratio: f64,
    pub violations: Vec<SampleViolation>,
}

/// Weighted power sums vanish through m = n-2, equal 1 at m = n-1, and
/// satisfy the shifted recurrence for k = 1..5, each within tol times the
/// term-magnitude scale x_1^m / min|ω'|.
pub fn verify_lemmas(
    n_min: usize,
    n_max: usize,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<LemmaOutcome, HarnessError> {
    let min_gap = 0.3;
    check_family(n_min, n_max, ROOT_LO, ROOT_HI, min_gap)?;
    let tasks: Vec<(usize, usize)> = (n_min..=n_max)
        .flat_map(|n| (0..samples).map(move |s| (n, s)))
        .collect();
    let per_task: Vec<(u64, f64, Vec<SampleViolation>)> = tasks
        .par_iter()
        .map(|&(n, s)| {
            let mut rng = task_rng(seed, n, s);
            let roots = sample_roots(&mut rng, n, ROOT_LO, ROOT_HI, min_gap);
            let r = PreparedRoots::new(roots).expect("sampled roots are valid");
            let x1 = r.roots()[0];
            let min_omega = r
                .omega_prime()
                .iter()
                .fold(f64::INFINITY, |m, w| m.min(w.abs()));
            let scale = |m: usize| (x1.powi(m as i32) / min_omega).max(1.0);
            let mut cases = 0u64;
            let mut max_ratio = 0.0f64;
            let mut bad = Vec::new();
            let mut check = |name: String, value: f64, bound: f64| {
                cases += 1;
                max_ratio = max_ratio.max(value.abs() / bound);
                if value.abs() > bound {
                    bad.push(SampleViolation {
                        n,
                        sample: s,
                        check: name,
                        value: fmt_f64(value),
                        bound: fmt_f64(bound),
                    });
                }
            };
            for m in 0..n.saturating_sub(1) {
                check(
                    format!("s_{m} = 0"),
                    weighted_power_sum(&r, m),
                    tol * scale(m),
                );
            }
            check(
                format!("s_{} = 1", n - 1),
                weighted_power_sum(&r, n - 1) - 1.0,
                tol * scale(n - 1),
            );
            for k in 1..=5usize {
                check(
                    format!("recurrence k={k}"),
                    weighted_sum_recurrence_residual(&r, k),
                    tol * scale(n - 1 + k),
                );
            }
            (cases, max_ratio, bad)
        })
        .collect();
    let mut cases = 0;
    let mut max_ratio = 0.0f64;
    let mut violations = Vec::new();
    for (c, ratio, bad) in per_task {
        cases += c;
        max_ratio = max_ratio.max(ratio);
        violations.extend(bad);
    }
    Ok(LemmaOutcome {
        cases,
        max_ratio,
        violations,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityViolation {
    pub n: usize,
    pub level_sequence: String,
    pub check: &'static str,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug)]
pub struct IdentitiesOutcome {
    pub n_max: usize,
    pub trees_checked: u64,
    pub violations: Vec<IdentityViolation>,
}

/// Exact coefficient identities over every tree of every order up to n_max.
pub fn verify_identities(n_max: usize) -> Result<IdentitiesOutcome, HarnessError> {
    let mut trees_checked = 0u64;
    let mut violations = Vec::new();
    for n in 1..=n_max {
        let sequences: Vec<LevelSequence> = free_trees(n)?.collect();
        trees_checked += sequences.len() as u64;
        let mut found: Vec<IdentityViolation> = sequences
            .par_iter()
            .flat_map_iter(|levels| {
                let report = verify_coefficient_identities(&levels.to_graph())
                    .expect("enumerator emits trees");
                report
                    .checks
                    .into_iter()
                    .filter(|c| !c.pass())
                    .map(|c| IdentityViolation {
                        n,
                        level_sequence: levels.to_string(),
                        check: c.name,
                        expected: c.expected.to_string(),
                        actual: c.actual.to_string(),
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        found.sort_by(|a, b| a.level_sequence.cmp(&b.level_sequence));
        violations.extend(found);
    }
    Ok(IdentitiesOutcome {
        n_max,
        trees_checked,
        violations,
    })
}

#[derive(Debug)]
pub struct GradientOutcome {
    pub cases: u64,
    pub entries_checked: u64,
    pub min_entry: f64,
    /// Largest |fd - grad| / max(|grad|, |fd|) observed.
    pub max_rel_error: f64,
    pub violations: Vec<SampleViolation>,
}

/// Closed-form LEL gradient: every entry strictly positive and matching a
/// central finite difference (one coefficient perturbed, roots recovered by
/// warm-started simultaneous iteration) to `tol` relative.
pub fn verify_gradient(
    samples: usize,
    fd_step: f64,
    tol: f64,
    seed: u64,
) -> Result<GradientOutcome, HarnessError> {
    if !(fd_step > 0.0 && fd_step.is_finite()) {
        return Err(HarnessError::InvalidParams(format!(
            "finite-difference step must be positive and finite, got {fd_step}"
        )));
    }
    let results: Vec<(f64, f64, Vec<SampleViolation>)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let n = 3 + (i % 6); // n in {3..8}
            let mut rng = task_rng(seed, n, i);
            let roots = sample_roots(&mut rng, n, GRAD_LO, GRAD_HI, GRAD_MIN_GAP);
            let r = PreparedRoots::new(roots).expect("sampled roots are valid");
            let grad = lel_gradient(&r).expect("roots are away from zero");
            let c = elementary_symmetric(&r);
            let mut min_entry = f64::INFINITY;
            let mut max_rel = 0.0f64;
            let mut bad = Vec::new();
            for (k, &gk) in grad.iter().enumerate() {
                min_entry = min_entry.min(gk);
                if gk <= 0.0 {
                    bad.push(SampleViolation {
                        n,
                        sample: i,
                        check: format!("entry {} > 0", k + 1),
                        value: fmt_f64(gk),
                        bound: fmt_f64(0.0),
                    });
                }
                match central_difference(&r, &c, k, fd_step) {
                    Ok(fd) => {
                        let rel = (fd - gk).abs() / gk.abs().max(fd.abs());
                        max_rel = max_rel.max(rel);
                        if rel > tol {
                            bad.push(SampleViolation {
                                n,
                                sample: i,
                                check: format!("finite difference entry {}", k + 1),
                                value: fmt_f64(rel),
                                bound: fmt_f64(tol),
                            });
                        }
                    }
                    Err(e) => bad.push(SampleViolation {
                        n,
                        sample: i,
                        check: format!("re-rooting entry {}", k + 1),
                        value: e.to_string(),
                        bound: String::new(),
                    }),
                }
            }
            (min_entry, max_rel, bad)
        })
        .collect();
    let mut min_entry = f64::INFINITY;
    let mut max_rel_error = 0.0f64;
    let mut violations = Vec::new();
    let mut entries_checked = 0u64;
    for (i, (me, mr, bad)) in results.into_iter().enumerate() {
        let n = 3 + (i % 6);
        entries_checked += n as u64;
        min_entry = min_entry.min(me);
        max_rel_error = max_rel_error.max(mr);
        violations.extend(bad);
    }
    Ok(GradientOutcome {
        cases: samples as u64,
        entries_checked,
        min_entry,
        max_rel_error,
        violations,
    })
}

/// Central finite difference of LEL along coefficient k (0-based), with the
/// perturbed root vectors recovered by warm-started iteration. The LEL
/// difference is assembled root-by-root so the large common part cancels
/// exactly.
fn central_difference(
    r: &PreparedRoots,
    c: &RealCoeffs,
    k: usize,
    step: f64,
) -> Result<f64, HarnessError> {
    let mut c_plus = c.as_slice().to_vec();
    let mut c_minus = c.as_slice().to_vec();
    c_plus[k] += step;
    c_minus[k] -= step;
    // The realized step can differ from `step` by rounding; use it exactly.
    let two_h = c_plus[k] - c_minus[k];
    let plus = roots_from_coeffs(&RealCoeffs::new(c_plus), Some(r))?;
    let minus = roots_from_coeffs(&RealCoeffs::new(c_minus), Some(r))?;
    let delta: f64 = plus
        .roots()
        .iter()
        .zip(minus.roots())
        .map(|(&a, &b)| (a - b) / (a.sqrt() + b.sqrt()))
        .sum();
    Ok(delta / two_h)
}
