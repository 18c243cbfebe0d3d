//! Generalized measurements realized by a binned Gaussian pointer.
//!
//! Reading the pointer of a [`crate::pointer::WeakSetup`] only up to which bin
//! it landed in gives Kraus operators `M_m = Σ_i √w_m(a_i) P_i`, where
//! `w_m(a)` is the Gaussian mass of bin `m` after translation by `κa`. For
//! small coupling the effects expand as `E_m = p_m·1 + κ E′_m` with
//! `E′_m = q_m A` and `Σ_m q_m = 0`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{check_dims, partition_defect, spectral, Ket, LinOp, Spectrum};
use crate::pointer::GaussianPointer;
use crate::tolerance::Tolerances;

/// Kraus operators, their effects `E_m = M_m† M_m` and outcome labels `α_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct PovmSet {
    kraus_ops: Vec<LinOp>,
    effects: Vec<LinOp>,
    labels: Vec<f64>,
}

impl PovmSet {
    /// Validates completeness (`Σ E_m = 1`) and positivity of the effects.
    pub fn new(kraus_ops: Vec<LinOp>, labels: Vec<f64>) -> Result<Self> {
        let tol = Tolerances::DEFAULT;
        if kraus_ops.is_empty() {
            return Err(Error::InvalidPovm("no outcomes".into()));
        }
        if labels.len() != kraus_ops.len() {
            return Err(Error::InvalidPovm(format!(
                "{} labels for {} outcomes",
                labels.len(),
                kraus_ops.len()
            )));
        }
        let dim = kraus_ops[0].dim();
        let effects = kraus_ops
            .iter()
            .map(|m| {
                check_dims(dim, m.dim())?;
                m.adjoint().mul(m)
            })
            .collect::<Result<Vec<_>>>()?;
        let set = Self {
            kraus_ops,
            effects,
            labels,
        };
        let residual = set.closure_residual();
        if residual > tol.spectral {
            return Err(Error::InvalidPovm(format!("effects sum to identity only within {residual:e}")));
        }
        let min_eig = set.min_effect_eigenvalue()?;
        if min_eig < -tol.spectral {
            return Err(Error::InvalidPovm(format!("effect with eigenvalue {min_eig:e}")));
        }
        Ok(set)
    }

    /// The single-outcome measurement `{1}` with label 0.
    pub fn trivial(dim: usize) -> Result<Self> {
        Self::new(vec![LinOp::identity(dim)?], vec![0.0])
    }

    pub fn len(&self) -> usize {
        self.kraus_ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kraus_ops.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.kraus_ops[0].dim()
    }

    pub fn kraus_ops(&self) -> &[LinOp] {
        &self.kraus_ops
    }

    pub fn effects(&self) -> &[LinOp] {
        &self.effects
    }

    pub fn labels(&self) -> &[f64] {
        &self.labels
    }

    /// `max|Σ_m E_m − 1|`
    pub fn closure_residual(&self) -> f64 {
        partition_defect(&self.effects).unwrap_or(f64::INFINITY)
    }

    pub fn min_effect_eigenvalue(&self) -> Result<f64> {
        let tol = Tolerances::DEFAULT;
        let mut min = f64::INFINITY;
        for e in &self.effects {
            let s = spectral(e, tol.spectral, tol.degeneracy)?;
            min = min.min(s.eigenvalues[0]);
        }
        Ok(min)
    }

    /// `Σ_m α_m E_m`
    pub fn labelled_sum(&self) -> LinOp {
        self.effects
            .iter()
            .zip(&self.labels)
            .fold(LinOp::zeros(self.dim()).expect("dim > 0"), |acc, (e, a)| {
                acc.add(&e.scale_real(*a)).expect("same dim")
            })
    }
}

/// Checks `edges = [−∞, e_1, …, e_{k−1}, +∞]` with strictly increasing finite interior.
fn validate_edges(edges: &[f64]) -> Result<()> {
    if edges.len() < 2 {
        return Err(Error::InvalidBinEdges("need at least two edges".into()));
    }
    if edges[0] != f64::NEG_INFINITY || edges[edges.len() - 1] != f64::INFINITY {
        return Err(Error::InvalidBinEdges("outer edges must be -inf and +inf".into()));
    }
    let interior = &edges[1..edges.len() - 1];
    if interior.iter().any(|e| !e.is_finite()) {
        return Err(Error::InvalidBinEdges("interior edges must be finite".into()));
    }
    if edges.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidBinEdges("edges must be strictly increasing".into()));
    }
    Ok(())
}

/// `count` bins: `count − 1` interior edges spread evenly over `x0 ± half_width·σ`.
pub fn uniform_bin_edges(pointer: &GaussianPointer, count: usize, half_width: f64) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::param("bins", "need at least one bin"));
    }
    if !(half_width > 0.0) {
        return Err(Error::param("half_width", "must be positive"));
    }
    let mut edges = vec![f64::NEG_INFINITY];
    let inner = count - 1;
    if inner == 1 {
        edges.push(pointer.x0());
    } else if inner > 1 {
        let lo = pointer.x0() - half_width * pointer.sigma();
        let step = 2.0 * half_width * pointer.sigma() / (inner - 1) as f64;
        edges.extend((0..inner).map(|k| lo + k as f64 * step));
    }
    edges.push(f64::INFINITY);
    Ok(edges)
}

/// Mass of `N(0, σ²)` on `[lo, hi]`, evaluated on the side of the smaller tail.
fn gaussian_mass(lo: f64, hi: f64, sigma: f64) -> f64 {
    let s = sigma * std::f64::consts::SQRT_2;
    let upper = |z: f64| 0.5 * libm::erfc(z / s); // P(X > z)
    if lo >= 0.0 {
        upper(lo) - upper(hi)
    } else if hi <= 0.0 {
        upper(-hi) - upper(-lo)
    } else {
        1.0 - upper(hi) - upper(-lo)
    }
}

fn gaussian_pdf(u: f64, sigma: f64) -> f64 {
    if u.is_infinite() {
        return 0.0;
    }
    (-u * u / (2.0 * sigma * sigma)).exp() / ((2.0 * std::f64::consts::PI).sqrt() * sigma)
}

/// A smooth one-parameter family of POVMs, indexed by the coupling `g`.
pub trait PovmFamily {
    fn dim(&self) -> usize;
    fn at(&self, g: f64) -> Result<PovmSet>;
}

/// Binned readout of a Gaussian pointer coupled to `observable`.
#[derive(Debug, Clone)]
pub struct BinnedPointerFamily {
    observable: LinOp,
    spectrum: Spectrum,
    pointer: GaussianPointer,
    edges: Vec<f64>,
    labels: Vec<f64>,
    zeroth: Vec<f64>,
    slopes: Vec<f64>,
}

impl BinnedPointerFamily {
    pub fn new(observable: &LinOp, pointer: GaussianPointer, bin_edges: &[f64]) -> Result<Self> {
        validate_edges(bin_edges)?;
        let tol = Tolerances::DEFAULT;
        let spectrum = spectral(observable, tol.algebraic, tol.degeneracy)?;
        let sigma = pointer.sigma();
        let u: Vec<f64> = bin_edges.iter().map(|e| e - pointer.x0()).collect();
        let zeroth: Vec<f64> = u.windows(2).map(|w| gaussian_mass(w[0], w[1], sigma)).collect();
        let slopes: Vec<f64> = u
            .windows(2)
            .map(|w| gaussian_pdf(w[0], sigma) - gaussian_pdf(w[1], sigma))
            .collect();
        let labels = calibrated_labels(&zeroth, &slopes);
        Ok(Self {
            observable: observable.clone(),
            spectrum,
            pointer,
            edges: bin_edges.to_vec(),
            labels,
            zeroth,
            slopes,
        })
    }

    pub fn labels(&self) -> &[f64] {
        &self.labels
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn observable(&self) -> &LinOp {
        &self.observable
    }

    /// Closed-form weak-coupling expansion of the effects.
    pub fn expansion(&self) -> WeakPovmExpansion {
        WeakPovmExpansion {
            p: self.zeroth.clone(),
            eprime: self
                .slopes
                .iter()
                .map(|q| self.observable.scale_real(*q))
                .collect(),
            labels: self.labels.clone(),
        }
    }

    /// `max|Σ_m α_m E_m(g) − g·A|`, the calibration defect (second order in `g`).
    pub fn calibration_defect(&self, g: f64) -> Result<f64> {
        self.at(g)?
            .labelled_sum()
            .max_diff(&self.observable.scale_real(g))
    }
}

/// Labels `α_m ∝ q_m / p_m` normalized so that `Σ α_m p_m = 0` and `Σ α_m q_m = 1`;
/// then `Σ_m α_m E_m = g·A + O(g²)`.
fn calibrated_labels(p: &[f64], q: &[f64]) -> Vec<f64> {
    let lambda: f64 = p
        .iter()
        .zip(q)
        .filter(|(p, _)| **p > 0.0)
        .map(|(p, q)| q * q / p)
        .sum();
    p.iter()
        .zip(q)
        .map(|(p, q)| {
            if *p > 0.0 && lambda > 0.0 {
                q / (p * lambda)
            } else {
                0.0
            }
        })
        .collect()
}

impl PovmFamily for BinnedPointerFamily {
    fn dim(&self) -> usize {
        self.observable.dim()
    }

    fn at(&self, g: f64) -> Result<PovmSet> {
        let dim = self.dim();
        let sigma = self.pointer.sigma();
        let kraus = self
            .edges
            .windows(2)
            .map(|w| {
                self.spectrum
                    .iter()
                    .try_fold(LinOp::zeros(dim)?, |acc, (a, p)| {
                        let shift = self.pointer.x0() + g * a;
                        let mass = gaussian_mass(w[0] - shift, w[1] - shift, sigma);
                        acc.add(&p.scale_real(mass.max(0.0).sqrt()))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        PovmSet::new(kraus, self.labels.clone())
    }
}

/// Binned POVM for a single coupling value.
pub fn gaussian_binned_povm(
    observable: &LinOp,
    pointer: GaussianPointer,
    coupling: f64,
    bin_edges: &[f64],
) -> Result<PovmSet> {
    BinnedPointerFamily::new(observable, pointer, bin_edges)?.at(coupling)
}

/// `E_m ≈ p_m·1 + g E′_m` with the labels of the family.
#[derive(Debug, Clone, PartialEq)]
pub struct WeakPovmExpansion {
    pub p: Vec<f64>,
    pub eprime: Vec<LinOp>,
    pub labels: Vec<f64>,
}

impl WeakPovmExpansion {
    /// Numerical expansion of an arbitrary family: `p_m` from `E_m(0)`,
    /// `E′_m` from a Richardson-extrapolated central difference with step `h`.
    pub fn numerical(family: &impl PovmFamily, h: f64) -> Result<Self> {
        let at0 = family.at(0.0)?;
        let dim = family.dim();
        let p = at0
            .effects()
            .iter()
            .map(|e| e.trace().re / dim as f64)
            .collect();
        let (plus, minus) = (family.at(h)?, family.at(-h)?);
        let (plus2, minus2) = (family.at(h / 2.0)?, family.at(-h / 2.0)?);
        let eprime = (0..at0.len())
            .map(|m| {
                let d1 = plus.effects()[m].sub(&minus.effects()[m])?.scale_real(1.0 / (2.0 * h));
                let d2 = plus2.effects()[m].sub(&minus2.effects()[m])?.scale_real(1.0 / h);
                Ok(d2.scale_real(4.0 / 3.0).sub(&d1.scale_real(1.0 / 3.0))?)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            p,
            eprime,
            labels: at0.labels().to_vec(),
        })
    }

    /// `A′ = Σ_m α_m E′_m`
    pub fn aprime(&self) -> LinOp {
        let dim = self.eprime[0].dim();
        self.eprime
            .iter()
            .zip(&self.labels)
            .fold(LinOp::zeros(dim).expect("dim > 0"), |acc, (e, a)| {
                acc.add(&e.scale_real(*a)).expect("same dim")
            })
    }

    /// `max|Σ_m E′_m|`, zero because the effects sum to the identity at every `g`.
    pub fn eprime_sum_residual(&self) -> f64 {
        let dim = self.eprime[0].dim();
        self.eprime
            .iter()
            .fold(LinOp::zeros(dim).expect("dim > 0"), |acc, e| acc.add(e).expect("same dim"))
            .max_abs()
    }

    /// `max_m |E_m(g) − (p_m·1 + g E′_m)|`
    pub fn remainder(&self, family: &impl PovmFamily, g: f64) -> Result<f64> {
        let set = family.at(g)?;
        let dim = family.dim();
        let id = LinOp::identity(dim)?;
        let mut worst = 0.0_f64;
        for (m, e) in set.effects().iter().enumerate() {
            let approx = id.scale_real(self.p[m]).add(&self.eprime[m].scale_real(g))?;
            worst = worst.max(e.max_diff(&approx)?);
        }
        Ok(worst)
    }
}

fn validate_projective(finals: &[LinOp]) -> Result<()> {
    let tol = Tolerances::DEFAULT;
    for p in finals {
        p.ensure_projector(tol.spectral)?;
    }
    for (i, a) in finals.iter().enumerate() {
        for b in &finals[i + 1..] {
            let overlap = a.mul(b)?.max_abs();
            if overlap > tol.spectral {
                return Err(Error::InvalidPartition { residual: overlap });
            }
        }
    }
    let residual = partition_defect(finals)?;
    if residual > tol.spectral {
        return Err(Error::InvalidPartition { residual });
    }
    Ok(())
}

/// `Pr(n, m) = ⟨I|M_m† P_n M_m|I⟩`, indexed `[n][m]`.
pub fn sequential_probability(initial: &Ket, first: &PovmSet, finals: &[LinOp]) -> Result<Vec<Vec<f64>>> {
    check_dims(first.dim(), initial.dim())?;
    validate_projective(finals)?;
    let initial = initial.normalize()?;
    let after: Vec<Ket> = first
        .kraus_ops()
        .iter()
        .map(|m| m.apply(&initial))
        .collect::<Result<_>>()?;
    finals
        .iter()
        .map(|p| after.iter().map(|k| Ok(p.expectation(k)?.re)).collect())
        .collect()
}

fn outcome_row(initial: &Ket, first: &PovmSet, finals: &[LinOp], n: usize) -> Result<Vec<f64>> {
    if n >= finals.len() {
        return Err(Error::param("n", format!("{n} out of range for {} outcomes", finals.len())));
    }
    Ok(sequential_probability(initial, first, finals)?.swap_remove(n))
}

/// `Σ_m α_m Pr(n,m) / Σ_m Pr(n,m)`
pub fn conditional_expectation(initial: &Ket, first: &PovmSet, finals: &[LinOp], n: usize) -> Result<f64> {
    let row = outcome_row(initial, first, finals, n)?;
    let total: f64 = row.iter().sum();
    if total <= Tolerances::DEFAULT.postselection {
        return Err(Error::NeverPostSelected { outcome: n });
    }
    Ok(row.iter().zip(first.labels()).map(|(p, a)| p * a).sum::<f64>() / total)
}

/// `Pr(n,m) / Σ_m Pr(n,m)` for every first-stage outcome `m`.
pub fn conditional_ratios(initial: &Ket, first: &PovmSet, finals: &[LinOp], n: usize) -> Result<Vec<f64>> {
    let row = outcome_row(initial, first, finals, n)?;
    let total: f64 = row.iter().sum();
    if total <= Tolerances::DEFAULT.postselection {
        return Err(Error::NeverPostSelected { outcome: n });
    }
    Ok(row.iter().map(|p| p / total).collect())
}

/// Richardson-extrapolated central difference of `f` at 0.
fn richardson_slope(f: impl Fn(f64) -> Result<f64>, h: f64) -> Result<f64> {
    let d1 = (f(h)? - f(-h)?) / (2.0 * h);
    let d2 = (f(h / 2.0)? - f(-h / 2.0)?) / h;
    Ok((4.0 * d2 - d1) / 3.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BackActionDecomposition {
    /// Conditional expectation at `g = 0`.
    pub zeroth: f64,
    /// `d/dg` of the conditional expectation at `g = 0`, by finite differences.
    pub first_slope: f64,
    /// `Re⟨A′⟩_{ψ_n,I}`
    pub weakvalue_re: f64,
}

impl BackActionDecomposition {
    pub fn slope_residual(&self) -> f64 {
        (self.first_slope - self.weakvalue_re).abs()
    }
}

/// Splits the conditional expectation into its `g = 0` value and its
/// first-order slope, and pairs the slope with `Re⟨A′⟩_w`.
///
/// `step` is the finite-difference step in `g`.
pub fn backaction_decomposition<F: PovmFamily>(
    initial: &Ket,
    family: &F,
    expansion: &WeakPovmExpansion,
    finals: &[LinOp],
    n: usize,
    step: f64,
) -> Result<BackActionDecomposition> {
    let ce = |g: f64| conditional_expectation(initial, &family.at(g)?, finals, n);
    let zeroth = ce(0.0)?;
    let first_slope = richardson_slope(ce, step)?;

    let initial = initial.normalize()?;
    let pn = finals.get(n).ok_or_else(|| Error::param("n", "out of range"))?;
    let denom = pn.expectation(&initial)?.re;
    if denom <= Tolerances::DEFAULT.postselection {
        return Err(Error::NeverPostSelected { outcome: n });
    }
    let num: Complex64 = pn.mul(&expansion.aprime())?.expectation(&initial)?;
    Ok(BackActionDecomposition {
        zeroth,
        first_slope,
        weakvalue_re: num.re / denom,
    })
}

/// First-order expansion of one conditional ratio `Pr(n,m)/Σ_m Pr(n,m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioExpansion {
    pub outcome: usize,
    pub zeroth: f64,
    pub slope: f64,
    /// `zeroth + g·slope`
    pub first_order: f64,
    /// The ratio evaluated exactly at `g`; never negative.
    pub exact: f64,
}

/// First-order expansions of every conditional ratio at coupling `g`,
/// together with the smallest exact joint probability `min_m Pr(n,m)` at `g`.
pub fn ratio_expansions<F: PovmFamily>(
    initial: &Ket,
    family: &F,
    finals: &[LinOp],
    n: usize,
    g: f64,
    step: f64,
) -> Result<(Vec<RatioExpansion>, f64)> {
    let at_g = family.at(g)?;
    let exact = conditional_ratios(initial, &at_g, finals, n)?;
    let zeroth = conditional_ratios(initial, &family.at(0.0)?, finals, n)?;
    let min_probability = sequential_probability(initial, &at_g, finals)?
        .iter()
        .flatten()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let out = (0..exact.len())
        .map(|m| {
            let slope = richardson_slope(
                |x| Ok(conditional_ratios(initial, &family.at(x)?, finals, n)?[m]),
                step,
            )?;
            Ok(RatioExpansion {
                outcome: m,
                zeroth: zeroth[m],
                slope,
                first_order: zeroth[m] + g * slope,
                exact: exact[m],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((out, min_probability))
}

/// `⟨I|A Ψ̂ A|I⟩ − ⟨I|Ψ̂|I⟩`, the back-action of a strong measurement of `A`
/// on the post-selection `Ψ̂`.
pub fn strong_backaction(a: &LinOp, initial: &Ket, final_projector: &LinOp) -> Result<f64> {
    let tol = Tolerances::DEFAULT;
    a.ensure_hermitian(tol.algebraic)?;
    final_projector.ensure_projector(tol.algebraic)?;
    let initial = initial.normalize()?;
    let sandwich = a.mul(final_projector)?.mul(a)?.expectation(&initial)?.re;
    Ok(sandwich - final_projector.expectation(&initial)?.re)
}
