//! End-to-end reproductions built on the lower layers.
//!
//! * [`hardy`]: the two-particle interferometer state of Hardy's paradox, its
//!   weak values and the back-action of weakly measuring its number operators.
//! * [`twoslit`]: a paraxial double-slit field, its weak momentum and the
//!   average trajectories reconstructed from it.

pub mod hardy;
pub mod twoslit;

pub use hardy::{
    hardy_backaction_experiment, hardy_build, hardy_noncommutativity, hardy_weak_values, HardyBackAction,
    HardyNoncommutativity, HardyOperator, HardyWeakValue, HardyWorkspace,
};
pub use twoslit::{
    fringe_spacing, ks_distance, quantile_starts, reconstruct_trajectories, twoslit_build, twoslit_pointer_check,
    weak_momentum_field, PointerCheckRow, TrajectoryBundle, TwoSlitField,
};
