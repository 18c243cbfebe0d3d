//! Weak values and the Gaussian-pointer weak measurement model.
//!
//! The crate is layered bottom-up:
//!
//! * [`hilbert`]: dense complex states and operators for small Hilbert spaces.
//! * [`weakvalue`]: the weak-value functional, commutation-based classification
//!   and the sum rules it satisfies.
//! * [`pointer`]: von Neumann coupling to a Gaussian pointer, solved exactly and
//!   to first order, together with the post-selection back-action relations.
//! * [`povm`]: sequential generalized measurements built from a binned pointer.
//! * [`scenarios`]: Hardy's paradox and the double-slit weak-trajectory setup.
//! * [`convergence`]: empirical convergence-order fits used by the sweeps.
//!
//! Units follow ħ = 1 and the coupling is the single product κ = g·t.

pub mod convergence;
pub mod error;
pub mod hilbert;
pub mod pointer;
pub mod povm;
pub mod scenarios;
pub mod tolerance;
pub mod weakvalue;

pub use error::{Error, Result};
pub use hilbert::{Ket, LinOp, Spectrum};
pub use num_complex::Complex64;
pub use tolerance::Tolerances;
