//! Acceptance suite: every headline claim, one test per criterion, each
//! printing a pass/fail line with its measured runtime. Criteria run
//! serially (shared mutex) so the timing bounds are meaningful.
//!
//! Run with: cargo test -p lel-cli --test acceptance -- --nocapture

use std::sync::Mutex;
use std::time::{Duration, Instant};

use lel_cli::campaigns::{verify_gradient, verify_identities, verify_jacobian, verify_lemmas};
use lel_cli::dominance::{hunt_lee, verify_extremal, verify_lel_order};
use lel_core::enumerate::{free_trees, prufer_census};
use lel_core::graph::Graph;
use lel_core::invariants::{incidence_energy, lee_path_closed_form, lee_star_closed_form, lel};
use lel_core::spectra::{laplacian_spectrum, DEFAULT_TOL};

static SERIAL: Mutex<()> = Mutex::new(());

fn tree_counts_n2_to_n9() -> [usize; 8] {
    [1, 1, 2, 3, 6, 11, 23, 47]
}

struct Criterion {
    index: usize,
    name: &'static str,
    started: Instant,
    budget: Duration,
}

impl Criterion {
    fn start(index: usize, name: &'static str, budget_secs: f64) -> Self {
        Criterion {
            index,
            name,
            started: Instant::now(),
            budget: Duration::from_secs_f64(budget_secs),
        }
    }

    fn finish(self, pass: bool, detail: &str) {
        let elapsed = self.started.elapsed();
        println!(
            "ACCEPTANCE {} [{}] {} — {} ({:.2?} of {:.0?} budget)",
            self.index,
            self.name,
            if pass { "PASS" } else { "FAIL" },
            detail,
            elapsed,
            self.budget,
        );
        assert!(
            pass,
            "criterion {} ({}) failed: {}",
            self.index, self.name, detail
        );
        assert!(
            elapsed <= self.budget,
            "criterion {} ({}) exceeded its runtime budget: {:.2?} > {:.0?}",
            self.index,
            self.name,
            elapsed,
            self.budget
        );
    }
}

#[test]
fn criterion_1_jacobian_identity() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let c = Criterion::start(1, "jacobian-identity", 2.0);
    let out = verify_jacobian(2, 8, 200, 0.3, 1e-7, 42).unwrap();
    let pass = out.violations.is_empty() && out.cases == 1400;
    c.finish(
        pass,
        &format!(
            "{} root vectors, both product orders within 1e-7 of I (max deviation {:.3e})",
            out.cases, out.max_residual
        ),
    );
}

#[test]
fn criterion_2_power_sum_lemmas() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let c = Criterion::start(2, "power-sum-lemmas", 1.0);
    let out = verify_lemmas(2, 8, 200, 1e-9, 42).unwrap();
    let pass = out.violations.is_empty();
    c.finish(
        pass,
        &format!(
            "{} assertions (vanishing sums, s_(n-1)=1, recurrence k<=5), worst |value|/bound {:.3e}",
            out.cases, out.max_ratio
        ),
    );
}

#[test]
fn criterion_3_exact_coefficient_identities() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let c = Criterion::start(3, "exact-coefficient-identities", 60.0);
    let out = verify_identities(16).unwrap();
    let pass = out.violations.is_empty() && out.trees_checked == 32508;
    c.finish(
        pass,
        &format!(
            "{} trees through n=16, exact c0/c1/c_(n-1)/c_n/Wiener equalities",
            out.trees_checked
        ),
    );
}

#[test]
fn criterion_4_extremal_coefficient_bounds() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let c = Criterion::start(4, "extremal-coefficient-bounds", 30.0);
    let out = verify_extremal(14).unwrap();
    let pass = out.violations.is_empty() && out.trees_checked == 5446;
    c.finish(
        pass,
        &format!(
            "{} trees through n=14, exact star <= tree <= path at every k",
            out.trees_checked
        ),
    );
}

#[test]
fn criterion_5_lel_order_over_comparable_pairs() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let c = Criterion::start(5, "lel-order", 30.0);
    let mut detail = String::new();
    let mut pass = true;
    let mut total_pairs = 0u64;
    for n in 2..=10usize {
        let out = verify_lel_order(n, 1e-9, DEFAULT_TOL).unwrap();
        total_pairs += out.comparable_pairs;
        if !out.violations.is_empty() {
            pass = false;
            detail = format!("n={n}: {} violations", out.violations.len());
            break;
        }
        if n == 10 && (out.classes != 106 || out.pairs != 5565) {
            pass = false;
            detail = format!(
                "n=10 expected 106 classes / 5565 pairs, got {}/{}",
                out.classes, out.pairs
            );
            break;
        }
        if (4..=10).contains(&n) {
            let gap = out.star_path_gap.unwrap_or(f64::NEG_INFINITY);
            if gap <= 0.0 {
                pass = false;
                detail = format!("n={n}: star/path LEL gap {gap} not positive");
                break;
            }
            if n == 4 && (gap - 0.02735).abs() > 1e-4 {
                pass = false;
                detail = format!("n=4 star/path gap {gap} differs from 0.02735");
                break;
            }
        }
    }
    if pass {
        detail = format!(
            "zero violations over {total_pairs} comparable pairs for n<=10; strict (S_n, P_n) gap positive for 4<=n<=10"
        );
    }
    c.finish(pass, &detail);
}

#[test]
fn criterion_6_lee_counterexample() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let c = Criterion::start(6, "lee-counterexample", 1.0);
    // Closed forms first: e^n + 1 + (n-2)e vs Σ e^(2+2cos(kπ/n)) at n = 6.
    let star6 = lee_star_closed_form(6).unwrap();
    let path6 = lee_path_closed_form(6).unwrap();
    let mut pass = (star6 - 415.3019).abs() < 0.01 && (path6 - 74.2652).abs() < 0.01;
    let mut detail = format!("n=6 closed forms: LEE(S)={star6:.4}, LEE(P)={path6:.4}");
    if !pass {
        detail = format!("closed forms off: {star6} vs 415.3019, {path6} vs 74.2652");
    } else {
        let out = hunt_lee(6, 15, 1e-9, DEFAULT_TOL).unwrap();
        let missing: Vec<usize> = out
            .star_path_present
            .iter()
            .filter(|&&(_, found)| !found)
            .map(|&(n, _)| n)
            .collect();
        pass = missing.is_empty();
        if pass {
            detail.push_str(&format!(
                "; (S_n, P_n) flagged as a strict-dominance LEE inversion for every n in 6..=15 ({} inversions total)",
                out.inversions.len()
            ));
        } else {
            detail = format!("missing (S_n, P_n) inversions at n = {missing:?}");
        }
    }
    c.finish(pass, &detail);
}

#[test]
fn criterion_7_gradient_positivity_and_fd() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let c = Criterion::start(7, "lel-gradient", 10.0);
    let out = verify_gradient(500, 1e-6, 1e-4, 42).unwrap();
    let pass = out.violations.is_empty() && out.min_entry > 0.0;
    c.finish(
        pass,
        &format!(
            "500 spectra (n in 3..8), {} entries all positive (min {:.3e}); central differences within 1e-4 relative (worst {:.3e})",
            out.entries_checked, out.min_entry, out.max_rel_error
        ),
    );
}

#[test]
fn criterion_8_enumeration_oracle() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let c = Criterion::start(8, "enumeration-oracle", 60.0);
    let expected = tree_counts_n2_to_n9();
    let mut pass = true;
    let mut detail = String::new();
    for (i, &want) in expected.iter().enumerate() {
        let n = i + 2;
        let generated = free_trees(n).unwrap().count();
        let census = prufer_census(n).unwrap();
        if generated != want || census != want {
            pass = false;
            detail = format!("n={n}: generator {generated}, census {census}, expected {want}");
            break;
        }
    }
    if pass {
        detail = format!("generator and Prüfer census agree for n=2..9: {expected:?}");
    }
    c.finish(pass, &detail);
}

#[test]
fn criterion_9_bipartite_coincidence() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let c = Criterion::start(9, "bipartite-coincidence", 10.0);
    let mut worst = 0.0f64;
    let mut trees = 0u64;
    let mut pass = true;
    let mut detail = String::new();
    'outer: for n in 2..=10usize {
        for seq in free_trees(n).unwrap() {
            trees += 1;
            let g = seq.to_graph();
            let l = lel(&laplacian_spectrum(&g, DEFAULT_TOL).unwrap()).unwrap();
            let ie = incidence_energy(&g, DEFAULT_TOL).unwrap();
            let diff = (ie - l).abs();
            worst = worst.max(diff);
            if diff > 1e-8 {
                pass = false;
                detail = format!("n={n} tree={seq}: |IE - LEL| = {diff:.3e}");
                break 'outer;
            }
        }
    }
    if pass {
        // Non-bipartite separation: C_3 has IE - LEL = 4 - 2√3 > 0.5.
        let c3 = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let l = lel(&laplacian_spectrum(&c3, DEFAULT_TOL).unwrap()).unwrap();
        let ie = incidence_energy(&c3, DEFAULT_TOL).unwrap();
        let expect = 4.0 - 2.0 * 3.0f64.sqrt();
        if ((ie - l) - expect).abs() > 1e-9 || ie - l <= 0.5 {
            pass = false;
            detail = format!("C_3 separation: IE - LEL = {} vs {expect}", ie - l);
        } else {
            detail = format!(
                "|IE - LEL| <= 1e-8 on all {trees} trees n<=10 (worst {worst:.3e}); C_3 separation {:.4} > 0.5",
                ie - l
            );
        }
    }
    c.finish(pass, &detail);
}
