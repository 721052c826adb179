//! Truncated-Fock-space simulator of photon-graviton conversion in a static
//! magnetic field.
//!
//! The library builds multimode bosonic Fock spaces, prepares Gaussian photon
//! states (coherent, squeezed, two-mode squeezed), couples photon and graviton
//! modes through a magnetic-field-induced bilinear interaction, and evolves
//! states either exactly (dense matrix exponential) or to leading order in the
//! coupling. On top of that it provides polarization geometry for the
//! transverse-traceless sector, entanglement diagnostics (entropy, logarithmic
//! negativity, swap/generation scenarios), a primordial-spectrum enhancement
//! model, and a self-check harness used by the command-line oracle.

pub mod checks;
pub mod conversion;
pub mod cosmology;
pub mod entanglement;
pub mod error;
pub mod fock;
pub mod gaussian;
pub mod linalg;
pub mod polarization;
pub mod units;

pub use error::{Error, Result};
