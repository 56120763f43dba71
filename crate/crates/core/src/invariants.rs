//! Scalar spectral invariants: Laplacian-like energy (LEL), incidence energy
//! (IE), and the Laplacian Estrada index (LEE), together with the star/path
//! closed forms used by the order-violation hunt.

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::spectra::{self, Spectrum, SpectrumKind};

/// exp(μ) overflows f64 shortly past this.
const LEE_EXP_LIMIT: f64 = 700.0;

#[derive(Debug, Error, PartialEq)]
pub enum InvariantError {
    #[error("negative eigenvalue {value} at index {index} (clamping was bypassed)")]
    NegativeEigenvalue { index: usize, value: f64 },
    #[error("eigenvalue {0} exceeds the exp overflow limit")]
    Overflow(f64),
    #[error("expected a {expected:?} spectrum")]
    WrongSpectrumKind { expected: SpectrumKind },
    #[error("order must be at least {min}, got {got}")]
    InvalidOrder { min: usize, got: usize },
    #[error(transparent)]
    Spectra(#[from] spectra::SpectraError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn sqrt_sum(values: &[f64]) -> Result<f64, InvariantError> {
    let mut total = 0.0;
    for (index, &value) in values.iter().enumerate() {
        if value < 0.0 {
            return Err(InvariantError::NegativeEigenvalue { index, value });
        }
        total += value.sqrt();
    }
    Ok(total)
}

/// Laplacian-like energy: sum of square roots of Laplacian eigenvalues.
pub fn lel(s: &Spectrum) -> Result<f64, InvariantError> {
    if s.kind() != SpectrumKind::Laplacian {
        return Err(InvariantError::WrongSpectrumKind {
            expected: SpectrumKind::Laplacian,
        });
    }
    sqrt_sum(s.values())
}

/// Incidence energy: sum of square roots of signless-Laplacian eigenvalues
/// (singular values of the incidence matrix).
pub fn incidence_energy(g: &Graph, tol: f64) -> Result<f64, InvariantError> {
    let s = spectra::signless_spectrum(g, tol)?;
    sqrt_sum(s.values())
}

/// Laplacian Estrada index: sum of exp(μ) over the whole spectrum, the zero
/// eigenvalue contributing 1.
pub fn lee(s: &Spectrum) -> Result<f64, InvariantError> {
    let mut total = 0.0;
    for &value in s.values() {
        if value > LEE_EXP_LIMIT {
            return Err(InvariantError::Overflow(value));
        }
        total += value.exp();
    }
    Ok(total)
}

/// LEE(S_n) = e^n + 1 + (n-2) e.
pub fn lee_star_closed_form(n: usize) -> Result<f64, InvariantError> {
    if n < 2 {
        return Err(InvariantError::InvalidOrder { min: 2, got: n });
    }
    let x = n as f64;
    Ok(x.exp() + 1.0 + (x - 2.0) * std::f64::consts::E)
}

/// LEE(P_n) = Σ_{k=1..n} e^(2 + 2 cos(kπ/n)).
pub fn lee_path_closed_form(n: usize) -> Result<f64, InvariantError> {
    if n < 2 {
        return Err(InvariantError::InvalidOrder { min: 2, got: n });
    }
    Ok(spectra::path_spectrum_closed_form(n)?
        .values()
        .iter()
        .map(|mu| mu.exp())
        .sum())
}

/// One row of the per-tree invariant table.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantRecord {
    pub n: usize,
    pub m: usize,
    pub lel: f64,
    pub lee: f64,
    pub ie: f64,
    pub wiener: u64,
}

/// Computes all scalar invariants of a connected graph in one pass.
pub fn invariant_record(g: &Graph, tol: f64) -> Result<InvariantRecord, InvariantError> {
    let lap = spectra::laplacian_spectrum(g, tol)?;
    Ok(InvariantRecord {
        n: g.vertex_count(),
        m: g.edge_count(),
        lel: lel(&lap)?,
        lee: lee(&lap)?,
        ie: incidence_energy(g, tol)?,
        wiener: g.wiener_index()?,
    })
}
