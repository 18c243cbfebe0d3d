//! Hardy's paradox on the 4-dimensional which-arm space of an electron and a
//! positron interferometer.
//!
//! Basis order is `(p, e)` with `O` (overlapping arm) before `NO`; the basis
//! index is `2·p + e`, so the order is `(O,O), (O,NO), (NO,O), (NO,NO)`.
//! Operator names use `p` for the positron and `e` for the electron:
//! `Npe_O_NO` projects on positron in `O` and electron in `NO`, `Np_O` counts
//! positrons in `O` whatever the electron does.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{commutator, Ket, LinOp};
use crate::pointer::{backaction_relation, readout_probability_exact, GaussianPointer, WeakSetup};
use crate::weakvalue::{weak_value, WeakValueReport};

pub const BASIS_LABELS: [&str; 4] = ["O,O", "O,NO", "NO,O", "NO,NO"];

const O: usize = 0;
const NO: usize = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct HardyOperator {
    pub name: &'static str,
    pub op: LinOp,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HardyWorkspace {
    /// Pre-selected state.
    pub phi: Ket,
    /// Post-selected state (both particles found in their dark ports).
    pub psi: Ket,
    /// The four rank-one projectors followed by the four single-particle sums
    /// `Np_O, Np_NO, Ne_O, Ne_NO`.
    pub number_ops: Vec<HardyOperator>,
}

fn index(p: usize, e: usize) -> usize {
    2 * p + e
}

fn cell(p: usize, e: usize) -> LinOp {
    let mut d = [0.0; 4];
    d[index(p, e)] = 1.0;
    LinOp::diagonal(&d).expect("4x4 diagonal")
}

pub fn hardy_build() -> HardyWorkspace {
    let r3 = 1.0 / 3f64.sqrt();
    let phi = Ket::from_real(&[0.0, r3, r3, r3]).expect("4-vector");
    let psi = Ket::from_real(&[0.5, -0.5, -0.5, 0.5]).expect("4-vector");

    let n_oo = cell(O, O);
    let n_ono = cell(O, NO);
    let n_noo = cell(NO, O);
    let n_nono = cell(NO, NO);
    let sum = |a: &LinOp, b: &LinOp| a.add(b).expect("same dim");
    let number_ops = vec![
        HardyOperator { name: "Npe_O_O", op: n_oo.clone() },
        HardyOperator { name: "Npe_O_NO", op: n_ono.clone() },
        HardyOperator { name: "Npe_NO_O", op: n_noo.clone() },
        HardyOperator { name: "Npe_NO_NO", op: n_nono.clone() },
        HardyOperator { name: "Np_O", op: sum(&n_oo, &n_ono) },
        HardyOperator { name: "Np_NO", op: sum(&n_noo, &n_nono) },
        HardyOperator { name: "Ne_O", op: sum(&n_oo, &n_noo) },
        HardyOperator { name: "Ne_NO", op: sum(&n_ono, &n_nono) },
    ];
    HardyWorkspace { phi, psi, number_ops }
}

impl HardyWorkspace {
    pub fn operator(&self, name: &str) -> Option<&LinOp> {
        self.number_ops.iter().find(|o| o.name == name).map(|o| &o.op)
    }

    /// The four rank-one projectors, a partition of the identity.
    pub fn rank_one(&self) -> &[HardyOperator] {
        &self.number_ops[..4]
    }

    /// `N` for both particles in the non-overlapping arms.
    pub fn n_no_no(&self) -> &LinOp {
        &self.number_ops[3].op
    }

    pub fn phi_projector(&self) -> LinOp {
        self.phi.outer(&self.phi)
    }

    pub fn psi_projector(&self) -> LinOp {
        self.psi.outer(&self.psi)
    }

    /// `|⟨Ψ|Φ⟩|²`
    pub fn overlap_sqr(&self) -> f64 {
        self.psi.inner(&self.phi).expect("same dim").norm_sqr()
    }

    /// `|C⟩ = (|O⟩+|NO⟩)/√2`, `|D⟩ = (|O⟩−|NO⟩)/√2` for each particle; returns
    /// the product basis `CC, CD, DC, DD`. The last member is `|Ψ⟩`.
    pub fn detector_basis(&self) -> Vec<Ket> {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let c = [r, r];
        let d = [r, -r];
        let product = |a: &[f64; 2], b: &[f64; 2]| {
            Ket::from_real(&[a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]).expect("4-vector")
        };
        vec![product(&c, &c), product(&c, &d), product(&d, &c), product(&d, &d)]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HardyWeakValue {
    pub name: &'static str,
    pub report: WeakValueReport,
}

pub fn hardy_weak_values(ws: &HardyWorkspace) -> Result<Vec<HardyWeakValue>> {
    ws.number_ops
        .iter()
        .map(|o| {
            Ok(HardyWeakValue {
                name: o.name,
                report: weak_value(&o.op, &ws.phi, &ws.psi)?,
            })
        })
        .collect()
}

/// One pair from `{Ψ̂, Φ̂, N}` and the largest entry of its commutator.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutatorEntry {
    pub left: &'static str,
    pub right: &'static str,
    pub max_entry: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HardyNoncommutativity {
    /// `⟨Ψ|N|Ψ⟩`, the factor in `Ψ̂NΨ̂N = c·Ψ̂N`.
    pub psi_factor: f64,
    /// `max |Ψ̂NΨ̂N − c·Ψ̂N|`
    pub psi_residual: f64,
    /// `⟨Φ|N|Φ⟩`, the factor in `Φ̂NΦ̂N = c·Φ̂N`.
    pub phi_factor: f64,
    pub phi_residual: f64,
    pub commutators: Vec<CommutatorEntry>,
    /// `⟨Φ|[Ψ̂, N]|Φ⟩`
    pub commutator_expectation: Complex64,
    /// Largest entry of `[Ψ̂, N]`.
    pub commutator_max: f64,
    /// Largest entry of `(Ψ̂N)^(2^k)` once repeated squaring has converged.
    pub power_limit_max: f64,
    /// Number of squarings `k` performed.
    pub squarings: u32,
}

fn sandwich_factor(proj: &LinOp, state: &Ket, n: &LinOp) -> Result<(f64, f64)> {
    let c = n.expectation(state)?.re;
    let pn = proj.mul(n)?;
    let lhs = pn.mul(&pn)?;
    Ok((c, lhs.max_diff(&pn.scale_real(c))?))
}

/// Converges `(Ψ̂N)^n` for `n → ∞` by squaring until the iterate stops changing.
fn power_limit(m: &LinOp) -> Result<(LinOp, u32)> {
    const MAX_SQUARINGS: u32 = 64;
    let mut current = m.clone();
    for k in 1..=MAX_SQUARINGS {
        let next = current.mul(&current)?;
        let change = next.max_diff(&current)?;
        current = next;
        if change <= f64::EPSILON * current.max_abs().max(f64::MIN_POSITIVE) || current.max_abs() == 0.0 {
            return Ok((current, k));
        }
    }
    Ok((current, MAX_SQUARINGS))
}

pub fn hardy_noncommutativity(ws: &HardyWorkspace) -> Result<HardyNoncommutativity> {
    let n = ws.n_no_no();
    let psi_hat = ws.psi_projector();
    let phi_hat = ws.phi_projector();
    let (psi_factor, psi_residual) = sandwich_factor(&psi_hat, &ws.psi, n)?;
    let (phi_factor, phi_residual) = sandwich_factor(&phi_hat, &ws.phi, n)?;

    let named = [("Psi", &psi_hat), ("Phi", &phi_hat), ("Npe_NO_NO", n)];
    let mut commutators = Vec::new();
    for i in 0..named.len() {
        for j in i + 1..named.len() {
            commutators.push(CommutatorEntry {
                left: named[i].0,
                right: named[j].0,
                max_entry: commutator(named[i].1, named[j].1)?.max_abs(),
            });
        }
    }

    let c = commutator(&psi_hat, n)?;
    let (limit, squarings) = power_limit(&psi_hat.mul(n)?)?;
    Ok(HardyNoncommutativity {
        psi_factor,
        psi_residual,
        phi_factor,
        phi_residual,
        commutators,
        commutator_expectation: c.expectation(&ws.phi)?,
        commutator_max: c.max_abs(),
        power_limit_max: limit.max_abs(),
        squarings,
    })
}

/// Back-action of weakly measuring one number operator on the `|Ψ⟩` post-selection.
#[derive(Debug, Clone, PartialEq)]
pub struct HardyBackAction {
    pub name: &'static str,
    pub weak_value_re: f64,
    /// `|⟨Ψ|Φ⟩|²`
    pub base_probability: f64,
    /// First-order change of the post-selection probability after readout.
    pub first_order_shift: f64,
    /// `(κ/x0)·Re⟨N⟩_w·|⟨Ψ|Φ⟩|²`
    pub predicted_shift: f64,
    /// Change computed from the exactly evolved readout state.
    pub exact_shift: f64,
    /// Residual of the weak-value / probability-ratio relation.
    pub relation_residual: f64,
}

/// Runs every number operator, then the identity, through the pointer model.
/// The last row (named `Identity`) is the reference the four rank-one shifts
/// sum to.
pub fn hardy_backaction_experiment(
    ws: &HardyWorkspace,
    pointer: GaussianPointer,
    coupling: f64,
) -> Result<Vec<HardyBackAction>> {
    if !(coupling > 0.0 && coupling <= pointer.sigma() / 10.0) {
        return Err(Error::param("coupling", "must lie in (0, sigma/10]"));
    }
    let identity = LinOp::identity(4)?;
    let ops = ws
        .number_ops
        .iter()
        .map(|o| (o.name, &o.op))
        .chain(std::iter::once(("Identity", &identity)));
    ops.map(|(name, op)| {
        let setup = WeakSetup::new(ws.phi.clone(), op.clone(), pointer, coupling)?;
        let rel = backaction_relation(&setup, &ws.psi)?;
        let exact = readout_probability_exact(&setup, &ws.psi)?;
        Ok(HardyBackAction {
            name,
            weak_value_re: rel.lhs_weakvalue_re,
            base_probability: rel.base_probability,
            first_order_shift: rel.probability_shift(),
            predicted_shift: coupling / pointer.x0() * rel.lhs_weakvalue_re * rel.base_probability,
            exact_shift: exact - rel.base_probability,
            relation_residual: rel.residual(),
        })
    })
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weakvalue::{decompose_expectation, decomposition_sum, Classification};

    #[test]
    fn states_are_normalized_and_phi_has_no_oo_component() {
        let ws = hardy_build();
        assert!(ws.phi.is_normalized() && ws.psi.is_normalized());
        assert_eq!(ws.phi.amplitude(0), Complex64::new(0.0, 0.0));
        assert!((ws.overlap_sqr() - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn direct_expectations() {
        let ws = hardy_build();
        let e = |name| ws.operator(name).unwrap().expectation(&ws.phi).unwrap().re;
        assert_eq!(e("Npe_O_O"), 0.0);
        assert!((e("Npe_NO_NO") - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn single_particle_sums() {
        let ws = hardy_build();
        let get = |n| ws.operator(n).unwrap().clone();
        let np_o = get("Npe_O_O").add(&get("Npe_O_NO")).unwrap();
        assert_eq!(np_o, get("Np_O"));
        let total = get("Np_O").add(&get("Np_NO")).unwrap();
        assert!(total.is_identity(0.0));
    }

    #[test]
    fn weak_values_match_hand_arithmetic() {
        // ⟨Ψ|N|Φ⟩ = ψ_k φ_k for a diagonal cell, and ⟨Ψ|Φ⟩ = −1/√3.
        let ws = hardy_build();
        let table = hardy_weak_values(&ws).unwrap();
        let amp = |k: usize| ws.psi.amplitude(k).re * ws.phi.amplitude(k).re;
        let overlap: f64 = (0..4).map(amp).sum();
        for (k, row) in table[..4].iter().enumerate() {
            assert!((row.report.real_part - amp(k) / overlap).abs() < 1e-14);
            assert_eq!(row.report.classification, Classification::BackActionIndicator);
        }
        let s: f64 = table[..4].iter().map(|r| r.report.real_part).sum();
        assert!((s - 1.0).abs() < 1e-14);
    }

    #[test]
    fn detector_basis_contains_psi_and_decomposes_expectation() {
        let ws = hardy_build();
        let basis = ws.detector_basis();
        assert!(basis[3].max_diff(&ws.psi).unwrap() < 1e-15);
        let terms = decompose_expectation(ws.n_no_no(), &ws.phi, &basis).unwrap();
        assert!((decomposition_sum(&terms).re - 1.0 / 3.0).abs() < 1e-12);
        assert!((terms[3].weak_value.real_part + 1.0).abs() < 1e-12);
    }

    #[test]
    fn sandwich_factors_and_limit() {
        let ws = hardy_build();
        let r = hardy_noncommutativity(&ws).unwrap();
        assert!((r.psi_factor - 0.25).abs() < 1e-15);
        assert!((r.phi_factor - 1.0 / 3.0).abs() < 1e-15);
        assert!(r.psi_residual < 1e-15 && r.phi_residual < 1e-15);
        assert!(r.commutators.iter().all(|c| c.max_entry > 0.1));
        assert!(r.commutator_expectation.norm() < 1e-15);
        assert_eq!(r.power_limit_max, 0.0);
    }

    #[test]
    fn backaction_table() {
        let ws = hardy_build();
        let p = GaussianPointer::new(2.0, 1.0).unwrap();
        let rows = hardy_backaction_experiment(&ws, p, 0.01).unwrap();
        assert_eq!(rows.len(), 9);
        for r in &rows {
            assert!((r.first_order_shift - r.predicted_shift).abs() < 1e-15, "{}", r.name);
            assert!(r.relation_residual < 1e-10);
        }
        assert!(rows[3].first_order_shift < 0.0);
        assert_eq!(rows[0].first_order_shift, 0.0);
        let sum: f64 = rows[..4].iter().map(|r| r.first_order_shift).sum();
        assert!((sum - rows[8].first_order_shift).abs() < 1e-15);
        assert!(hardy_backaction_experiment(&ws, p, 0.5).is_err());
    }
}
