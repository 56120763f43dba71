//! Cross-module consistency: exact coefficients against numeric spectra,
//! and the bipartite Laplacian/signless coincidence, swept over every tree
//! of small orders.

use num_bigint::BigInt;
use num_traits::Zero;

use lel_core::charpoly::characteristic_coefficients;
use lel_core::enumerate::free_trees;
use lel_core::spectra::{laplacian_spectrum, signless_spectrum, DEFAULT_TOL};

/// σ_1..σ_n of a float list by the product recurrence.
fn sigma(values: &[f64]) -> Vec<f64> {
    let mut c = vec![0.0; values.len()];
    for (i, &x) in values.iter().enumerate() {
        for k in (1..=i).rev() {
            c[k] += x * c[k - 1];
        }
        c[0] += x;
    }
    c
}

#[test]
fn exact_coefficients_match_sigma_of_spectrum_through_n12() {
    for n in 2..=12usize {
        for seq in free_trees(n).unwrap() {
            let g = seq.to_graph();
            let coeffs = characteristic_coefficients(&g.laplacian());
            let spectrum = laplacian_spectrum(&g, DEFAULT_TOL).unwrap();
            let numeric = sigma(spectrum.values());
            // c_0 = 1, c_n = 0 exactly; everything non-negative.
            assert_eq!(coeffs.get(0), &BigInt::from(1));
            assert!(coeffs.get(n).is_zero());
            assert!(coeffs.as_slice().iter().all(|c| c >= &BigInt::zero()));
            for k in 1..=n {
                let exact: f64 = coeffs.get(k).to_string().parse().unwrap();
                let got = numeric[k - 1];
                assert!(
                    (got - exact).abs() <= 1e-8 * exact.abs().max(1.0),
                    "n={n} tree={seq} k={k}: sigma {got} vs exact {exact}"
                );
            }
            // Trace identity.
            let trace: f64 = spectrum.values().iter().sum();
            let expect = 2.0 * g.edge_count() as f64;
            assert!((trace - expect).abs() <= n as f64 * spectrum.tol());
        }
    }
}

#[test]
fn bipartite_spectra_coincide_through_n10() {
    for n in 2..=10usize {
        for seq in free_trees(n).unwrap() {
            let g = seq.to_graph();
            let lap = laplacian_spectrum(&g, DEFAULT_TOL).unwrap();
            let sig = signless_spectrum(&g, DEFAULT_TOL).unwrap();
            for (a, b) in lap.values().iter().zip(sig.values()) {
                assert!((a - b).abs() <= 1e-8, "n={n} tree={seq}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn laplacian_rows_sum_to_zero_for_all_enumerated_trees() {
    for n in 1..=10usize {
        for seq in free_trees(n).unwrap() {
            let l = seq.to_graph().laplacian();
            for i in 0..n {
                assert_eq!(l.row_sum(i), 0);
            }
        }
    }
}
