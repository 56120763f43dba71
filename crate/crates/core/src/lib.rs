//! Spectral invariants of graph Laplacians over exhaustively enumerated
//! trees, plus the symmetric-polynomial calculus (Vieta-map Jacobians,
//! weighted power sums, divided differences, coefficient gradients) that the
//! coefficient-dominance ordering of the Laplacian-like energy rests on.
//!
//! Modules:
//! - [`graph`]: graphs, Laplacians, distances, path/star constructors
//! - [`charpoly`]: exact integer characteristic coefficients + identities
//! - [`spectra`]: numeric eigenvalues and closed-form path/star spectra
//! - [`invariants`]: LEL, incidence energy, Laplacian Estrada index
//! - [`vieta`]: root/coefficient calculus and both Jacobians
//! - [`enumerate`]: free-tree generation with a labeled-census oracle
//! - [`dd`]: compensated double-double arithmetic for verification sums

pub mod charpoly;
pub mod dd;
mod eigen;
pub mod enumerate;
pub mod graph;
pub mod invariants;
pub mod spectra;
pub mod vieta;

pub use charpoly::{characteristic_coefficients, verify_coefficient_identities, ExactCoeffs};
pub use graph::{Graph, IntMatrix};
pub use spectra::{laplacian_spectrum, signless_spectrum, Spectrum, SpectrumKind};
pub use vieta::{PreparedRoots, RealCoeffs};
