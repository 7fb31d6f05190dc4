//! Lüders channels built from coherent-state families.
//!
//! * [`channel`]: superoperators of weighted projector families, spectra, Choi matrices.
//! * [`spin`]: spin coherent states, sphere quadrature, harmonic damping.
//! * [`fock`]: truncated Fock space, displaced vacua, disk quadrature.
//! * [`algebra`]: exact normal/anti-normal ordering and the symbolic Lüders map.

pub mod algebra;
pub mod channel;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod quadrature;
pub mod spin;

pub use error::{Error, Result};
