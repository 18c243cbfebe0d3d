//! Von Neumann measurement with a Gaussian pointer.
//!
//! The coupling `H = g A π` acting for time `t` is represented by the single
//! parameter `κ = g·t` (ħ = 1). Because `H` commutes with `A`, the exact
//! evolution sends each eigenbranch `P_i|I⟩ ⊗ φ(x)` to `P_i|I⟩ ⊗ φ(x − κ a_i)`;
//! all pointer overlaps are then closed-form Gaussian integrals, so the exact
//! model carries no discretization error and serves as the oracle for the
//! first-order formulas.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{check_dims, partition_defect, spectral, Ket, LinOp};
use crate::tolerance::Tolerances;
use crate::weakvalue::{postselection_overlap, weak_value_complex};

/// `⟨φ|x̂π̂|φ⟩` for a real Gaussian pointer, independent of centre and width.
pub const XPI_EXPECTATION: Complex64 = Complex64::new(0.0, 0.5);

/// Pointer wavefunction `φ(x) = (2πσ²)^{-1/4} exp(−(x − x0)² / 4σ²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPointer {
    x0: f64,
    sigma: f64,
}

impl GaussianPointer {
    pub fn new(x0: f64, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidPointer(format!("sigma must be positive, got {sigma}")));
        }
        if x0 == 0.0 || !x0.is_finite() {
            return Err(Error::InvalidPointer(format!("centre must be finite and nonzero, got {x0}")));
        }
        Ok(Self { x0, sigma })
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `φ(x − shift)`.
    pub fn wavefunction(&self, x: f64, shift: f64) -> f64 {
        let u = x - self.x0 - shift;
        (2.0 * std::f64::consts::PI * self.sigma * self.sigma).powf(-0.25)
            * (-u * u / (4.0 * self.sigma * self.sigma)).exp()
    }

    /// `⟨φ_a|φ_b⟩` for copies translated by `a` and `b`.
    pub fn overlap(&self, a: f64, b: f64) -> f64 {
        let d = a - b;
        (-d * d / (8.0 * self.sigma * self.sigma)).exp()
    }

    /// `⟨φ_a|x̂|φ_b⟩`.
    pub fn position_element(&self, a: f64, b: f64) -> f64 {
        (self.x0 + 0.5 * (a + b)) * self.overlap(a, b)
    }
}

/// System state, observable, pointer and coupling of one weak measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct WeakSetup {
    pub system_initial: Ket,
    pub observable: LinOp,
    pub pointer: GaussianPointer,
    pub coupling: f64,
}

impl WeakSetup {
    pub fn new(system_initial: Ket, observable: LinOp, pointer: GaussianPointer, coupling: f64) -> Result<Self> {
        check_dims(observable.dim(), system_initial.dim())?;
        observable.ensure_hermitian(Tolerances::DEFAULT.algebraic)?;
        if !system_initial.is_normalized() {
            return Err(Error::param("system_initial", "state must be normalized"));
        }
        if !(coupling >= 0.0 && coupling.is_finite()) {
            return Err(Error::param("coupling", format!("must be finite and non-negative, got {coupling}")));
        }
        Ok(Self {
            system_initial,
            observable,
            pointer,
            coupling,
        })
    }

    pub fn with_coupling(&self, coupling: f64) -> Result<Self> {
        Self::new(self.system_initial.clone(), self.observable.clone(), self.pointer, coupling)
    }
}

/// One eigenbranch `P_i|I⟩ ⊗ φ(x − κ a_i)` of the evolved system-pointer state.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub eigenvalue: f64,
    /// `P_i|I⟩`, unnormalized.
    pub component: Ket,
    /// `‖P_i|I⟩‖²`
    pub weight: f64,
    /// Pointer centre `x0 + κ a_i`.
    pub pointer_centre: f64,
}

/// The all-orders state `exp(−iκAπ)(|I⟩|φ⟩)`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    pub branches: Vec<Branch>,
    pub pointer: GaussianPointer,
    pub coupling: f64,
}

impl JointState {
    /// `Σ_i ‖P_i|I⟩‖²`; equals one for a normalized initial state.
    pub fn total_norm_sqr(&self) -> f64 {
        self.branches.iter().map(|b| b.weight).sum()
    }

    fn shift(&self, b: &Branch) -> f64 {
        self.coupling * b.eigenvalue
    }

    /// Amplitude `⟨final| ⊗ ⟨x| Φ(t)⟩` of the post-selected pointer wavefunction.
    pub fn postselected_wavefunction(&self, final_: &Ket, x: f64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for b in &self.branches {
            acc += final_.inner(&b.component)? * self.pointer.wavefunction(x, self.shift(b));
        }
        Ok(acc)
    }

    /// Exact post-selection probability `‖⟨final|Φ(t)⟩‖²` (pointer traced out).
    pub fn postselection_probability(&self, final_: &Ket) -> Result<f64> {
        let f = final_.normalize()?;
        let d = self.branch_overlaps(&f)?;
        let mut p = Complex64::new(0.0, 0.0);
        for (bi, di) in self.branches.iter().zip(&d) {
            for (bj, dj) in self.branches.iter().zip(&d) {
                p += di.conj() * dj * self.pointer.overlap(self.shift(bi), self.shift(bj));
            }
        }
        Ok(p.re)
    }

    fn branch_overlaps(&self, f: &Ket) -> Result<Vec<Complex64>> {
        self.branches.iter().map(|b| f.inner(&b.component)).collect()
    }

    /// `x0⁻¹⟨φ|x̂|Φ(t)⟩` evaluated on the exact state: the system state after the
    /// pointer position is read out and before post-selection.
    pub fn readout_state(&self) -> Result<Ket> {
        let x0 = self.pointer.x0();
        let mut acc: Option<Ket> = None;
        for b in &self.branches {
            let factor = self.pointer.position_element(0.0, self.shift(b)) / x0;
            let term = b.component.scale(Complex64::new(factor, 0.0));
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term)?,
            });
        }
        acc.ok_or(Error::EmptyDimension)
    }
}

pub fn evolve_exact(setup: &WeakSetup) -> Result<JointState> {
    let tol = Tolerances::DEFAULT;
    let spectrum = spectral(&setup.observable, tol.algebraic, tol.degeneracy)?;
    let branches = spectrum
        .iter()
        .map(|(a, p)| {
            let component = p.apply(&setup.system_initial)?;
            Ok(Branch {
                eigenvalue: a,
                weight: component.norm_sqr(),
                component,
                pointer_centre: setup.pointer.x0() + setup.coupling * a,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(JointState {
        branches,
        pointer: setup.pointer,
        coupling: setup.coupling,
    })
}

/// `⟨x̂⟩` of the normalized post-selected pointer state, from the exact evolution.
pub fn postselect_pointer_mean(state: &JointState, final_: &Ket) -> Result<f64> {
    let f = final_.normalize()?;
    let d = state.branch_overlaps(&f)?;
    let mut norm = Complex64::new(0.0, 0.0);
    let mut moment = Complex64::new(0.0, 0.0);
    for (bi, di) in state.branches.iter().zip(&d) {
        for (bj, dj) in state.branches.iter().zip(&d) {
            let (a, b) = (state.shift(bi), state.shift(bj));
            let w = di.conj() * dj;
            norm += w * state.pointer.overlap(a, b);
            moment += w * state.pointer.position_element(a, b);
        }
    }
    if norm.re <= Tolerances::DEFAULT.postselection {
        return Err(Error::OrthogonalPostSelection { overlap: norm.re.max(0.0).sqrt() });
    }
    Ok(moment.re / norm.re)
}

/// `x0 + κ Re⟨A⟩_w`, the first-order pointer reading.
pub fn first_order_pointer_mean(setup: &WeakSetup, final_: &Ket) -> Result<f64> {
    let wv = weak_value_complex(
        &setup.observable,
        &setup.system_initial,
        final_,
        Tolerances::DEFAULT.postselection,
    )?;
    Ok(setup.pointer.x0() + setup.coupling * wv.re)
}

/// `|Φ(t)_φ⟩ = |I⟩ − (iκ/x0) ⟨φ|x̂π̂|φ⟩ A|I⟩ = |I⟩ + (κ/2x0) A|I⟩`, unnormalized.
pub fn state_after_readout(setup: &WeakSetup) -> Result<Ket> {
    let a_i = setup.observable.apply(&setup.system_initial)?;
    let factor = -Complex64::i() * setup.coupling / setup.pointer.x0() * XPI_EXPECTATION;
    setup.system_initial.add(&a_i.scale(factor))
}

/// First-order change of `|⟨f|·⟩|²` when `base` is perturbed to `perturbed`:
/// returns `(|⟨f|base⟩|², 2 Re(⟨base|f⟩⟨f|perturbed − base⟩))`.
fn first_order_shift(base: &Ket, perturbed: &Ket, final_: &Ket) -> Result<(f64, f64)> {
    let amp = final_.inner(base)?;
    let delta = final_.inner(&perturbed.sub(base)?)?;
    Ok((amp.norm_sqr(), 2.0 * (amp.conj() * delta).re))
}

/// Both sides of the operational back-action relations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BackActionRelation {
    /// `Re⟨A⟩_{ψ,I}`
    pub lhs_weakvalue_re: f64,
    /// `(x0/κ) (|⟨ψ|Φ(t)_φ⟩|² − |⟨ψ|I⟩|²) / |⟨ψ|I⟩|²`, first order in κ
    pub rhs_probability_ratio: f64,
    /// `(x0 + κ Re⟨A⟩_w) / x0`
    pub ratio_identity_lhs: f64,
    /// `|⟨ψ|Φ(t)_φ⟩|² / |⟨ψ|I⟩|²`, first order in κ
    pub ratio_identity_rhs: f64,
    /// `|⟨ψ|I⟩|²`
    pub base_probability: f64,
    /// `|⟨ψ|Φ(t)_φ⟩|²` truncated at first order in κ
    pub first_order_probability: f64,
}

impl BackActionRelation {
    pub fn residual(&self) -> f64 {
        (self.lhs_weakvalue_re - self.rhs_probability_ratio)
            .abs()
            .max((self.ratio_identity_lhs - self.ratio_identity_rhs).abs())
    }

    /// First-order change of the post-selection probability.
    pub fn probability_shift(&self) -> f64 {
        self.first_order_probability - self.base_probability
    }
}

pub fn backaction_relation(setup: &WeakSetup, final_: &Ket) -> Result<BackActionRelation> {
    if setup.coupling <= 0.0 {
        return Err(Error::ZeroCoupling);
    }
    let tol = Tolerances::DEFAULT;
    postselection_overlap(&setup.system_initial, final_, tol.postselection)?;
    let f = final_.normalize()?;
    let x0 = setup.pointer.x0();
    let kappa = setup.coupling;

    let wv = weak_value_complex(&setup.observable, &setup.system_initial, &f, tol.postselection)?;
    let readout = state_after_readout(setup)?;
    let (base, shift) = first_order_shift(&setup.system_initial, &readout, &f)?;

    Ok(BackActionRelation {
        lhs_weakvalue_re: wv.re,
        rhs_probability_ratio: x0 / kappa * shift / base,
        ratio_identity_lhs: (x0 + kappa * wv.re) / x0,
        ratio_identity_rhs: (base + shift) / base,
        base_probability: base,
        first_order_probability: base + shift,
    })
}

/// `|⟨ψ|Φ(t)_φ⟩|²` on the exactly evolved state, with no truncation in κ.
pub fn readout_probability_exact(setup: &WeakSetup, final_: &Ket) -> Result<f64> {
    let f = final_.normalize()?;
    let readout = evolve_exact(setup)?.readout_state()?;
    Ok(f.inner(&readout)?.norm_sqr())
}

/// Sum rule for one pointer per member of a projector partition of the identity.
///
/// Every projector `A_i` drives its own identical pointer, so the joint readout
/// state is `|I⟩ + (κ/2x0) Σ_i A_i|I⟩ = (1 + κ/2x0)|I⟩`; the returned ratio
/// `(x0/κ)(|⟨ψ|Φ(t)_1⟩|² − |⟨ψ|I⟩|²)/|⟨ψ|I⟩|²` is taken at first order and is 1.
pub fn completeness_backaction(
    partition: &[LinOp],
    initial: &Ket,
    final_: &Ket,
    pointer: &GaussianPointer,
    coupling: f64,
) -> Result<f64> {
    let tol = Tolerances::DEFAULT;
    for p in partition {
        p.ensure_projector(tol.spectral)?;
    }
    let residual = partition_defect(partition)?;
    if residual > tol.spectral {
        return Err(Error::InvalidPartition { residual });
    }
    if coupling <= 0.0 {
        return Err(Error::ZeroCoupling);
    }
    postselection_overlap(initial, final_, tol.postselection)?;
    let initial = initial.normalize()?;
    let f = final_.normalize()?;

    let factor = -Complex64::i() * coupling / pointer.x0() * XPI_EXPECTATION;
    let mut readout = initial.clone();
    for p in partition {
        readout = readout.add(&p.apply(&initial)?.scale(factor))?;
    }
    let (base, shift) = first_order_shift(&initial, &readout, &f)?;
    Ok(pointer.x0() / coupling * shift / base)
}
