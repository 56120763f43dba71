//! Numeric Laplacian / signless-Laplacian spectra and the closed-form
//! reference spectra of paths and stars.

use thiserror::Error;

use crate::eigen;
use crate::graph::{Graph, IntMatrix};

/// Default eigensolver tolerance, relative to the matrix max-norm.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpectraError {
    #[error("eigenvalue {index} did not converge after {iterations} QL sweeps")]
    ConvergenceFailure { index: usize, iterations: usize },
    #[error("order must be at least {min}, got {got}")]
    InvalidOrder { min: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    Laplacian,
    Signless,
}

/// Non-negative eigenvalue list sorted descending, with the absolute
/// tolerance it was computed at.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    tol: f64,
    kind: SpectrumKind,
}

impl Spectrum {
    /// Eigenvalues in descending order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Numeric spectrum of a symmetric integer matrix.
///
/// `tol` is relative to the matrix max-norm. Eigenvalue estimates within the
/// resulting absolute tolerance of zero are snapped to exactly zero; square
/// roots of residual noise would otherwise leak into the invariants.
pub fn eigenvalues_symmetric(
    m: &IntMatrix,
    tol: f64,
    kind: SpectrumKind,
) -> Result<Spectrum, SpectraError> {
    debug_assert!(m.is_symmetric());
    let n = m.order();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j) as f64).collect())
        .collect();
    let eig = eigen::symmetric_eigen(&rows).map_err(|e| SpectraError::ConvergenceFailure {
        index: e.eigenvalue_index,
        iterations: e.iterations,
    })?;
    let abs_tol = tol * m.max_norm().max(1.0);
    let mut values = eig.values;
    values.reverse();
    for v in &mut values {
        if v.abs() <= abs_tol {
            *v = 0.0;
        }
    }
    Ok(Spectrum {
        values,
        tol: abs_tol,
        kind,
    })
}

/// Laplacian spectrum of a graph. For connected graphs the smallest
/// eigenvalue is set to exactly zero (c_n = 0 is exact).
pub fn laplacian_spectrum(g: &Graph, tol: f64) -> Result<Spectrum, SpectraError> {
    let mut s = eigenvalues_symmetric(&g.laplacian(), tol, SpectrumKind::Laplacian)?;
    if g.is_connected() {
        if let Some(last) = s.values.last_mut() {
            *last = 0.0;
        }
    }
    Ok(s)
}

/// Signless-Laplacian spectrum of a graph.
pub fn signless_spectrum(g: &Graph, tol: f64) -> Result<Spectrum, SpectraError> {
    eigenvalues_symmetric(&g.signless_laplacian(), tol, SpectrumKind::Signless)
}

/// Path Laplacian spectrum {2 + 2 cos(kπ/n) : k = 1..n}, sorted descending.
pub fn path_spectrum_closed_form(n: usize) -> Result<Spectrum, SpectraError> {
    if n < 1 {
        return Err(SpectraError::InvalidOrder { min: 1, got: n });
    }
    let values: Vec<f64> = (1..=n)
        .map(|k| 2.0 + 2.0 * (k as f64 * std::f64::consts::PI / n as f64).cos())
        .collect();
    Ok(Spectrum {
        values,
        tol: 0.0,
        kind: SpectrumKind::Laplacian,
    })
}

/// Star Laplacian spectrum {n, 1^(n-2), 0}.
pub fn star_spectrum_closed_form(n: usize) -> Result<Spectrum, SpectraError> {
    if n < 2 {
        return Err(SpectraError::InvalidOrder { min: 2, got: n });
    }
    let mut values = vec![1.0; n];
    values[0] = n as f64;
    values[n - 1] = 0.0;
    Ok(Spectrum {
        values,
        tol: 0.0,
        kind: SpectrumKind::Laplacian,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol, "got {got:?}, want {want:?}");
        }
    }

    #[test]
    fn path3_spectrum() {
        let s = laplacian_spectrum(&Graph::path(3).unwrap(), DEFAULT_TOL).unwrap();
        assert_close(s.values(), &[3.0, 1.0, 0.0], 1e-12);
        assert_eq!(*s.values().last().unwrap(), 0.0);
    }

    #[test]
    fn star4_spectrum() {
        let s = laplacian_spectrum(&Graph::star(4).unwrap(), DEFAULT_TOL).unwrap();
        assert_close(s.values(), &[4.0, 1.0, 1.0, 0.0], 1e-12);
    }

    #[test]
    fn signless_c3_spectrum() {
        // Q(C_3): the all-ones vector gives 4, difference vectors give 1.
        let c3 = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let s = signless_spectrum(&c3, DEFAULT_TOL).unwrap();
        assert_close(s.values(), &[4.0, 1.0, 1.0], 1e-12);
    }

    #[test]
    fn single_vertex_spectrum() {
        let s = laplacian_spectrum(&Graph::path(1).unwrap(), DEFAULT_TOL).unwrap();
        assert_eq!(s.values(), &[0.0]);
    }

    #[test]
    fn path_closed_form_values() {
        let s = path_spectrum_closed_form(4).unwrap();
        let r2 = 2.0f64.sqrt();
        assert_close(s.values(), &[2.0 + r2, 2.0, 2.0 - r2, 0.0], 1e-14);
        let s2 = path_spectrum_closed_form(2).unwrap();
        assert_close(s2.values(), &[2.0, 0.0], 1e-14);
        let s3 = path_spectrum_closed_form(3).unwrap();
        assert_close(s3.values(), &[3.0, 1.0, 0.0], 1e-14);
        // Exactly one zero entry, at k = n.
        assert_eq!(s.values().iter().filter(|&&v| v == 0.0).count(), 1);
    }

    #[test]
    fn path_closed_form_matches_numeric() {
        for n in 1..=64usize {
            let closed = path_spectrum_closed_form(n).unwrap();
            let numeric = laplacian_spectrum(&Graph::path(n).unwrap(), DEFAULT_TOL).unwrap();
            assert_close(closed.values(), numeric.values(), 1e-10);
        }
    }

    #[test]
    fn path_exponent_conventions_agree() {
        // {2 + 2cos(kπ/n) : k=1..n} and {2 - 2cos(kπ/n) : k=0..n-1} are the
        // same multiset.
        for n in 1..=24usize {
            let a = path_spectrum_closed_form(n).unwrap();
            let mut b: Vec<f64> = (0..n)
                .map(|k| 2.0 - 2.0 * (k as f64 * std::f64::consts::PI / n as f64).cos())
                .collect();
            b.sort_by(|x, y| y.total_cmp(x));
            assert_close(a.values(), &b, 1e-12);
        }
    }

    #[test]
    fn star_closed_form_matches_numeric() {
        for n in [2usize, 4, 6, 11] {
            let closed = star_spectrum_closed_form(n).unwrap();
            let numeric = laplacian_spectrum(&Graph::star(n).unwrap(), DEFAULT_TOL).unwrap();
            assert_close(closed.values(), numeric.values(), 1e-10);
        }
        assert_close(
            star_spectrum_closed_form(6).unwrap().values(),
            &[6.0, 1.0, 1.0, 1.0, 1.0, 0.0],
            0.0,
        );
    }

    #[test]
    fn invalid_orders() {
        assert!(matches!(
            path_spectrum_closed_form(0),
            Err(SpectraError::InvalidOrder { .. })
        ));
        assert!(matches!(
            star_spectrum_closed_form(1),
            Err(SpectraError::InvalidOrder { .. })
        ));
    }

    #[test]
    fn trace_identity_on_trees() {
        // Σ eigenvalues = 2m.
        for g in [Graph::path(9).unwrap(), Graph::star(9).unwrap()] {
            let s = laplacian_spectrum(&g, DEFAULT_TOL).unwrap();
            let sum: f64 = s.values().iter().sum();
            let expect = 2.0 * g.edge_count() as f64;
            assert!((sum - expect).abs() <= g.vertex_count() as f64 * s.tol());
        }
    }

    #[test]
    fn signless_tree_zero_is_snapped() {
        // Trees are bipartite, so Q has a zero eigenvalue; the snap must
        // make it exact or LEL/IE comparisons inherit √noise.
        let s = signless_spectrum(&Graph::path(6).unwrap(), DEFAULT_TOL).unwrap();
        assert_eq!(*s.values().last().unwrap(), 0.0);
    }
}
