/// Numerical tolerances shared by every check in the crate.
///
/// Predicates on [`crate::LinOp`] and [`crate::Ket`] take a tolerance
/// argument explicitly; this record only supplies the defaults.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Entrywise tolerance for algebraic identities (Hermiticity, idempotence, commutators).
    pub algebraic: f64,
    /// Tolerance for identities that pass through an eigendecomposition.
    pub spectral: f64,
    /// Eigenvalues closer than this are merged into one eigenprojector.
    pub degeneracy: f64,
    /// Minimum |⟨final|initial⟩| for a weak value to be defined.
    pub postselection: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        algebraic: 1e-12,
        spectral: 1e-10,
        degeneracy: 1e-9,
        postselection: 1e-12,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
