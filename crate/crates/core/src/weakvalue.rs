//! The weak value `⟨f|A|i⟩ / ⟨f|i⟩` and the identities built on it.
//!
//! Besides the complex value, a [`WeakValueReport`] records which of the three
//! operators `|f⟩⟨f|`, `A` and `|i⟩⟨i|` commute. A projector observable whose
//! weak value comes from commuting operators is a genuine conditional
//! probability (and then lies in `[0, 1]`); every other weak value is
//! classified as a back-action indicator.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{basis_defect, check_dims, commutator, partition_defect, Ket, LinOp};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    ConditionalProbability,
    BackActionIndicator,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::ConditionalProbability => "conditional_probability",
            Classification::BackActionIndicator => "back_action_indicator",
        }
    }
}

/// Which pairs among the final projector `Ψ̂`, the observable `A` and the
/// initial projector `Î` commute (entrywise, within the algebraic tolerance).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CommutationFlags {
    pub final_observable: bool,
    pub initial_final: bool,
    pub initial_observable: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeakValueReport {
    pub value: Complex64,
    pub real_part: f64,
    pub imag_part: f64,
    pub classification: Classification,
    pub commutation_flags: CommutationFlags,
    /// `⟨i|[Ψ̂, A]|i⟩` with `|i⟩` normalized.
    pub expectation_of_commutator: Complex64,
}

/// Checks that `initial` and `final_` are not orthogonal and returns
/// `⟨final|initial⟩` for the normalized pair.
pub(crate) fn postselection_overlap(initial: &Ket, final_: &Ket, threshold: f64) -> Result<Complex64> {
    check_dims(initial.dim(), final_.dim())?;
    let ni = initial.norm_sqr().sqrt();
    let nf = final_.norm_sqr().sqrt();
    if ni == 0.0 || nf == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let overlap = final_.inner(initial)? / (ni * nf);
    if overlap.norm() <= threshold {
        return Err(Error::OrthogonalPostSelection {
            overlap: overlap.norm(),
        });
    }
    Ok(overlap)
}

/// The bare complex weak value, without the commutation analysis.
///
/// This is the cheap path for large operators (e.g. grid surrogates).
pub fn weak_value_complex(a: &LinOp, initial: &Ket, final_: &Ket, threshold: f64) -> Result<Complex64> {
    check_dims(a.dim(), initial.dim())?;
    postselection_overlap(initial, final_, threshold)?;
    Ok(a.sandwich(final_, initial)? / final_.inner(initial)?)
}

pub fn weak_value(a: &LinOp, initial: &Ket, final_: &Ket) -> Result<WeakValueReport> {
    weak_value_with(a, initial, final_, &Tolerances::DEFAULT)
}

pub fn weak_value_with(
    a: &LinOp,
    initial: &Ket,
    final_: &Ket,
    tol: &Tolerances,
) -> Result<WeakValueReport> {
    let value = weak_value_complex(a, initial, final_, tol.postselection)?;

    let initial_proj = initial.projector()?;
    let final_proj = final_.projector()?;
    let c_final_obs = commutator(&final_proj, a)?;
    let c_init_final = commutator(&initial_proj, &final_proj)?;
    let c_init_obs = commutator(&initial_proj, a)?;
    let commutation_flags = CommutationFlags {
        final_observable: c_final_obs.max_abs() <= tol.algebraic,
        initial_final: c_init_final.max_abs() <= tol.algebraic,
        initial_observable: c_init_obs.max_abs() <= tol.algebraic,
    };
    let expectation_of_commutator = c_final_obs.expectation(&initial.normalize()?)?;

    let classification = if a.is_projector(tol.algebraic)
        && (commutation_flags.final_observable || commutation_flags.initial_final)
    {
        Classification::ConditionalProbability
    } else {
        Classification::BackActionIndicator
    };

    Ok(WeakValueReport {
        value,
        real_part: value.re,
        imag_part: value.im,
        classification,
        commutation_flags,
        expectation_of_commutator,
    })
}

/// One term `(Pr(ψ_j|I), ⟨A⟩_{ψ_j,I})` of the expectation-value decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionTerm {
    pub probability: f64,
    pub weak_value: WeakValueReport,
}

/// Writes `⟨I|A|I⟩` as `Σ_j Pr(ψ_j|I) ⟨A⟩_{ψ_j,I}` over a complete orthonormal basis.
pub fn decompose_expectation(a: &LinOp, initial: &Ket, basis: &[Ket]) -> Result<Vec<DecompositionTerm>> {
    let tol = Tolerances::DEFAULT;
    let residual = basis_defect(basis)?;
    if residual > tol.spectral {
        return Err(Error::IncompleteBasis { residual });
    }
    let initial = initial.normalize()?;
    basis
        .iter()
        .map(|psi| {
            let weak_value = weak_value_with(a, &initial, psi, &tol)?;
            Ok(DecompositionTerm {
                probability: psi.inner(&initial)?.norm_sqr(),
                weak_value,
            })
        })
        .collect()
}

/// `Σ_j Pr(ψ_j|I) ⟨A⟩_{ψ_j,I}`.
pub fn decomposition_sum(terms: &[DecompositionTerm]) -> Complex64 {
    terms
        .iter()
        .map(|t| t.weak_value.value * t.probability)
        .sum()
}

/// The three equal forms of `|⟨A_i⟩_w|²` for a rank-one projector `A_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquaredWeakValue {
    /// `|⟨A_i⟩_{ψ,I}|²`
    pub lhs: f64,
    /// `Pr(a_i|ψ) Pr(a_i|I) / Pr(ψ|I)`
    pub rhs_product_form: f64,
    /// `⟨I|A_i Ψ̂ A_i|I⟩ / Pr(ψ|I)`
    pub rhs_sandwich_form: f64,
}

impl SquaredWeakValue {
    pub fn max_residual(&self) -> f64 {
        (self.lhs - self.rhs_product_form)
            .abs()
            .max((self.lhs - self.rhs_sandwich_form).abs())
            .max((self.rhs_product_form - self.rhs_sandwich_form).abs())
    }
}

pub fn squared_weakvalue_identity(ai: &LinOp, initial: &Ket, final_: &Ket) -> Result<SquaredWeakValue> {
    let tol = Tolerances::DEFAULT;
    ai.ensure_projector(tol.algebraic)?;
    let rank = ai.projector_rank();
    if rank != 1 {
        return Err(Error::NotRankOne { rank });
    }
    postselection_overlap(initial, final_, tol.postselection)?;
    let initial = initial.normalize()?;
    let final_ = final_.normalize()?;

    let wv = weak_value_complex(ai, &initial, &final_, tol.postselection)?;
    let pr_final_initial = final_.inner(&initial)?.norm_sqr();
    let pr_a_final = ai.expectation(&final_)?.re;
    let pr_a_initial = ai.expectation(&initial)?.re;
    let sandwich = ai.mul(&final_.outer(&final_))?.mul(ai)?.expectation(&initial)?.re;

    Ok(SquaredWeakValue {
        lhs: wv.norm_sqr(),
        rhs_product_form: pr_a_final * pr_a_initial / pr_final_initial,
        rhs_sandwich_form: sandwich / pr_final_initial,
    })
}

/// Weak values of a projector over a basis whose members all commute with it.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroOneReport {
    /// Real part of `⟨A_i⟩_{ψ_j,I}` for each basis member.
    pub values: Vec<f64>,
    /// `Σ_j Pr(ψ_j|I) |⟨A_i⟩_w|²`
    pub weighted_square_sum: f64,
    /// `Σ_j Pr(ψ_j|I) ⟨A_i⟩_w` (real part; the imaginary part vanishes here)
    pub weighted_sum: f64,
    /// `⟨I|A_i|I⟩`
    pub expectation: f64,
}

impl ZeroOneReport {
    /// Largest distance of any value from the nearer of 0 and 1.
    pub fn max_binary_deviation(&self) -> f64 {
        self.values
            .iter()
            .map(|v| v.abs().min((v - 1.0).abs()))
            .fold(0.0, f64::max)
    }

    pub fn sum_rule_residual(&self) -> f64 {
        (self.weighted_square_sum - self.expectation)
            .abs()
            .max((self.weighted_sum - self.expectation).abs())
    }
}

pub fn zero_or_one_check(ai: &LinOp, basis: &[Ket], initial: &Ket) -> Result<ZeroOneReport> {
    let tol = Tolerances::DEFAULT;
    ai.ensure_projector(tol.algebraic)?;
    let residual = basis_defect(basis)?;
    if residual > tol.spectral {
        return Err(Error::IncompleteBasis { residual });
    }
    for (index, psi) in basis.iter().enumerate() {
        let residual = commutator(&psi.outer(psi), ai)?.max_abs();
        if residual > tol.spectral {
            return Err(Error::CommutationViolated { index, residual });
        }
    }
    let initial = initial.normalize()?;
    let mut values = Vec::with_capacity(basis.len());
    let mut weighted_square_sum = 0.0;
    let mut weighted_sum = 0.0;
    for psi in basis {
        let wv = weak_value_complex(ai, &initial, psi, tol.postselection)?;
        let pr = psi.inner(&initial)?.norm_sqr();
        weighted_square_sum += pr * wv.norm_sqr();
        weighted_sum += pr * wv.re;
        values.push(wv.re);
    }
    Ok(ZeroOneReport {
        values,
        weighted_square_sum,
        weighted_sum,
        expectation: ai.expectation(&initial)?.re,
    })
}

/// `Σ_i ⟨A_i⟩_{ψ,I}` for projectors `A_i` that resolve the identity.
pub fn completeness_sum(partition: &[LinOp], initial: &Ket, final_: &Ket) -> Result<Complex64> {
    let tol = Tolerances::DEFAULT;
    for p in partition {
        p.ensure_projector(tol.spectral)?;
    }
    let residual = partition_defect(partition)?;
    if residual > tol.spectral {
        return Err(Error::InvalidPartition { residual });
    }
    partition
        .iter()
        .map(|p| weak_value_complex(p, initial, final_, tol.postselection))
        .sum()
}
