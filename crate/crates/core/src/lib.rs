//! Discrete Wigner phase space for even Hilbert dimensions, selective Wigner
//! phase-space tomography, and the two-qubit quantum kicked top.
//!
//! The crate is organized bottom-up:
//!
//! - [`qmat`]: dense complex matrices, density matrices, Hermitian
//!   exponentials.
//! - [`phase_space`]: phase-space point operators, the forward and inverse
//!   Wigner transforms, marginals and the Wigner-space fidelity.
//! - [`states`]: the state families used throughout.
//! - [`tomography`]: direct, circuit-level and selective Wigner readout, plus
//!   pruning and sparsity analysis.
//! - [`kicked_top`]: quantum kicked top with per-kick selective readout, and
//!   the classical stroboscopic map.
//! - [`cli`]: the `swpst` command line front end.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod cli;
pub mod error;
pub mod kicked_top;
pub mod phase_space;
pub mod qmat;
pub mod states;
pub mod tomography;

pub use error::{Error, Result};
pub use phase_space::{wigner_fidelity, PhaseSpaceFrame, WignerMatrix};
pub use qmat::{ComplexMatrix, DensityMatrix};
