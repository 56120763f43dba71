//! Verification harness over the spectral-invariant library: per-order tree
//! tables, coefficient-dominance order checks, seeded numeric campaigns, the
//! LEE inversion hunt, and the boundary closure probe.

use thiserror::Error;

pub mod campaigns;
pub mod dominance;
pub mod probe;
pub mod records;
pub mod report;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("coefficient vectors have different orders: {a} vs {b}")]
    OrderMismatch { a: usize, b: usize },
    #[error("internal consistency check failed: {0}")]
    InternalCheck(String),
    #[error("invalid probe input: {0}")]
    InvalidProbe(String),
    #[error("invalid campaign parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Enumeration(#[from] lel_core::enumerate::EnumError),
    #[error(transparent)]
    Charpoly(#[from] lel_core::charpoly::CharpolyError),
    #[error(transparent)]
    Graph(#[from] lel_core::graph::GraphError),
    #[error(transparent)]
    Spectra(#[from] lel_core::spectra::SpectraError),
    #[error(transparent)]
    Invariant(#[from] lel_core::invariants::InvariantError),
    #[error(transparent)]
    Vieta(#[from] lel_core::vieta::VietaError),
}
