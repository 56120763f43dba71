//! Exact characteristic coefficients of integer matrices and the coefficient
//! identities that hold for tree Laplacians.
//!
//! Coefficients are stored with the alternating sign factored out: for a
//! matrix M of order n we keep c_0..c_n where
//! det(λI - M) = Σ_k (-1)^k c_k λ^{n-k}. For Laplacians of connected graphs
//! every c_k is non-negative and c_n = 0, so coefficient dominance is a plain
//! entrywise comparison.

use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedMul, One, Zero};
use thiserror::Error;

use crate::graph::{Graph, IntMatrix};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CharpolyError {
    #[error("graph is not a tree (need connected with m = n - 1)")]
    NotATree,
}

/// Arbitrary-precision characteristic coefficients under the factored-sign
/// convention. `c[0]` is always 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactCoeffs {
    n: usize,
    c: Vec<BigInt>,
}

impl ExactCoeffs {
    pub fn order(&self) -> usize {
        self.n
    }

    /// Coefficient c_k, 0 <= k <= n.
    pub fn get(&self, k: usize) -> &BigInt {
        &self.c[k]
    }

    pub fn as_slice(&self) -> &[BigInt] {
        &self.c
    }

    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.c.iter().map(|x| x.to_string()).collect()
    }
}

/// Division-free Berkowitz recursion over any exact integer type with
/// checked arithmetic. Returns the signed coefficients v_0..v_n of
/// det(λI - A) = Σ v_k λ^{n-k}, or None on overflow.
fn berkowitz<T>(m: &IntMatrix) -> Option<Vec<T>>
where
    T: Clone + Zero + One + CheckedAdd + CheckedMul + Neg<Output = T> + From<i64>,
{
    let n = m.order();
    let entry = |i: usize, j: usize| T::from(m.get(i, j));
    // Signed charpoly of the leading 1x1 submatrix.
    let mut c: Vec<T> = vec![T::one(), -entry(0, 0)];
    for k in 2..=n {
        // Leading k x k submatrix partitioned as [[M, S], [R, a]] with M of
        // order k-1. Toeplitz column: 1, -a, -R S, -R M S, -R M^2 S, ...
        let mut t: Vec<T> = Vec::with_capacity(k + 1);
        t.push(T::one());
        t.push(-entry(k - 1, k - 1));
        let mut u: Vec<T> = (0..k - 1).map(|i| entry(i, k - 1)).collect();
        for j in 2..=k {
            // t_j = -(R . u) with u = M^{j-2} S.
            let mut dot = T::zero();
            for (i, ui) in u.iter().enumerate() {
                dot = dot.checked_add(&entry(k - 1, i).checked_mul(ui)?)?;
            }
            t.push(-dot);
            if j < k {
                let mut next = vec![T::zero(); k - 1];
                for (i, slot) in next.iter_mut().enumerate() {
                    let mut acc = T::zero();
                    for (l, ul) in u.iter().enumerate() {
                        acc = acc.checked_add(&entry(i, l).checked_mul(ul)?)?;
                    }
                    *slot = acc;
                }
                u = next;
            }
        }
        // Banded Toeplitz product: new_c[i] = Σ_j t[j] * c[i - j].
        let mut next = vec![T::zero(); k + 1];
        for (i, slot) in next.iter_mut().enumerate() {
            let lo = i.saturating_sub(c.len() - 1);
            let hi = i.min(k);
            let mut acc = T::zero();
            for j in lo..=hi {
                acc = acc.checked_add(&t[j].checked_mul(&c[i - j])?)?;
            }
            *slot = acc;
        }
        c = next;
    }
    Some(c)
}

/// Exact characteristic coefficients of a square integer matrix.
///
/// Intended for symmetric matrices (Laplacians); any square integer matrix is
/// accepted. Uses i128 arithmetic while it fits and falls back to big
/// integers on overflow, so results are exact at every order.
pub fn characteristic_coefficients(m: &IntMatrix) -> ExactCoeffs {
    let n = m.order();
    let signed: Vec<BigInt> = match berkowitz::<i128>(m) {
        Some(v) => v.into_iter().map(BigInt::from).collect(),
        None => berkowitz::<BigInt>(m).expect("BigInt arithmetic does not overflow"),
    };
    let c = signed
        .into_iter()
        .enumerate()
        .map(|(k, v)| if k % 2 == 0 { v } else { -v })
        .collect();
    ExactCoeffs { n, c }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub expected: BigInt,
    pub actual: BigInt,
}

impl IdentityCheck {
    pub fn pass(&self) -> bool {
        self.expected == self.actual
    }
}

/// Exact pass/fail record for the tree-Laplacian coefficient identities.
#[derive(Debug, Clone)]
pub struct CoefficientIdentityReport {
    pub n: usize,
    pub checks: Vec<IdentityCheck>,
}

impl CoefficientIdentityReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(IdentityCheck::pass)
    }
}

/// Checks c_0 = 1, c_1 = 2m, c_{n-1} = n (spanning-tree count is 1),
/// c_n = 0, and c_{n-2} = Wiener index, with exact integer equality.
pub fn verify_coefficient_identities(
    g: &Graph,
) -> Result<CoefficientIdentityReport, CharpolyError> {
    if !g.is_tree() {
        return Err(CharpolyError::NotATree);
    }
    let n = g.vertex_count();
    let coeffs = characteristic_coefficients(&g.laplacian());
    let mut checks = vec![
        IdentityCheck {
            name: "c0 = 1",
            expected: BigInt::one(),
            actual: coeffs.get(0).clone(),
        },
        IdentityCheck {
            name: "c1 = 2m",
            expected: BigInt::from(2 * g.edge_count()),
            actual: coeffs.get(1).clone(),
        },
        IdentityCheck {
            name: "c_{n-1} = n*tau",
            expected: BigInt::from(n),
            actual: coeffs.get(n - 1).clone(),
        },
        IdentityCheck {
            name: "c_n = 0",
            expected: BigInt::zero(),
            actual: coeffs.get(n).clone(),
        },
    ];
    if n >= 2 {
        let wiener = g.wiener_index().expect("tree is connected");
        checks.push(IdentityCheck {
            name: "c_{n-2} = wiener",
            expected: BigInt::from(wiener),
            actual: coeffs.get(n - 2).clone(),
        });
    }
    Ok(CoefficientIdentityReport { n, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs_i64(m: &IntMatrix) -> Vec<i64> {
        characteristic_coefficients(m)
            .as_slice()
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    // Integer elementary symmetric polynomials, the independent oracle for
    // matrices with known integer spectra.
    fn sigma_expand(roots: &[i64]) -> Vec<i64> {
        let mut c = vec![1i64];
        for &r in roots {
            let mut next = vec![0i64; c.len() + 1];
            for (k, &ck) in c.iter().enumerate() {
                next[k] += ck;
                next[k + 1] += r * ck;
            }
            c = next;
        }
        c
    }

    #[test]
    fn path3_coefficients_match_sigma_of_spectrum() {
        // L(P_3) has eigenvalues {0, 1, 3}.
        let l = Graph::path(3).unwrap().laplacian();
        assert_eq!(coeffs_i64(&l), sigma_expand(&[0, 1, 3]));
        assert_eq!(coeffs_i64(&l), vec![1, 4, 3, 0]);
    }

    #[test]
    fn star4_coefficients_match_sigma_of_spectrum() {
        // L(S_4) has eigenvalues {4, 1, 1, 0}.
        let l = Graph::star(4).unwrap().laplacian();
        assert_eq!(coeffs_i64(&l), sigma_expand(&[4, 1, 1, 0]));
        assert_eq!(coeffs_i64(&l), vec![1, 6, 9, 4, 0]);
    }

    #[test]
    fn path4_coefficients() {
        // Eigenvalues {2 + √2, 2, 2 - √2, 0}: σ_1 = 6, σ_2 = 10, σ_3 = 4.
        let l = Graph::path(4).unwrap().laplacian();
        assert_eq!(coeffs_i64(&l), vec![1, 6, 10, 4, 0]);
    }

    #[test]
    fn single_vertex() {
        let l = Graph::path(1).unwrap().laplacian();
        assert_eq!(coeffs_i64(&l), vec![1, 0]);
    }

    #[test]
    fn general_integer_matrix_2x2() {
        // det(λI - [[1, 2], [3, 4]]) = λ^2 - 5λ - 2, so c = (1, 5, -2).
        let m = IntMatrix::from_rows(vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(coeffs_i64(&m), vec![1, 5, -2]);
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn i128_and_bigint_routes_agree() {
        // Deterministic pseudo-random symmetric matrices exercise both paths
        // on the same inputs.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 41) as i64 - 20
        };
        for n in 1..=7usize {
            let mut rows = vec![vec![0i64; n]; n];
            for i in 0..n {
                for j in 0..=i {
                    let v = next();
                    rows[i][j] = v;
                    rows[j][i] = v;
                }
            }
            let m = IntMatrix::from_rows(rows);
            let fast: Vec<BigInt> = berkowitz::<i128>(&m)
                .unwrap()
                .into_iter()
                .map(BigInt::from)
                .collect();
            let big = berkowitz::<BigInt>(&m).unwrap();
            assert_eq!(fast, big, "n={n}");
        }
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        // Entries near 2^60 push the Berkowitz intermediates past i128.
        let n = 6;
        let e = 1i64 << 60;
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { e } else { -e / 2 }).collect())
            .collect();
        let m = IntMatrix::from_rows(rows);
        assert!(berkowitz::<i128>(&m).is_none());
        let coeffs = characteristic_coefficients(&m);
        // Trace check: c_1 = Σ diagonal.
        assert_eq!(coeffs.get(1), &(BigInt::from(e) * BigInt::from(n)));
        assert_eq!(coeffs.get(0), &BigInt::one());
    }

    #[test]
    fn identities_hold_on_small_trees() {
        for g in [Graph::path(4).unwrap(), Graph::star(4).unwrap()] {
            let report = verify_coefficient_identities(&g).unwrap();
            assert!(report.pass(), "{report:?}");
        }
        // n=3: the c_1 and c_{n-2} identities coincide on the same index.
        let report = verify_coefficient_identities(&Graph::path(3).unwrap()).unwrap();
        assert!(report.pass());
        let w = report
            .checks
            .iter()
            .find(|c| c.name == "c_{n-2} = wiener")
            .unwrap();
        assert_eq!(w.actual, BigInt::from(4));
    }

    #[test]
    fn identities_reject_non_trees() {
        let c3 = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(matches!(
            verify_coefficient_identities(&c3),
            Err(CharpolyError::NotATree)
        ));
        let disconnected = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(verify_coefficient_identities(&disconnected).is_err());
    }
}
