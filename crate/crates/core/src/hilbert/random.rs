//! Random states and operators for property tests and the identity suites.
//!
//! Entries are drawn uniformly from the unit square of the complex plane;
//! bases come from Gram-Schmidt on random vectors. The distributions are not
//! Haar, which is irrelevant for identity checks.

use num_complex::Complex64;
use rand::Rng;

use super::{Ket, LinOp};

fn unit_square<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn ket<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Ket {
    loop {
        let amps: Vec<Complex64> = (0..dim).map(|_| unit_square(rng)).collect();
        if let Ok(k) = Ket::normalized(amps) {
            return k;
        }
    }
}

pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> LinOp {
    let raw = LinOp::from_fn(dim, |_, _| unit_square(rng)).expect("dim > 0");
    raw.add(&raw.adjoint()).expect("same dim").scale_real(0.5)
}

/// A random orthonormal basis of `dim` kets.
pub fn basis<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<Ket> {
    'retry: loop {
        let mut out: Vec<Ket> = Vec::with_capacity(dim);
        for _ in 0..dim {
            let mut v = ket(rng, dim);
            for b in &out {
                let c = b.inner(&v).expect("same dim");
                v = v.sub(&b.scale(c)).expect("same dim");
            }
            if v.norm_sqr() < 1e-6 {
                continue 'retry;
            }
            out.push(v.normalize().expect("nonzero"));
        }
        return out;
    }
}

/// Projector onto the span of `rank` random orthonormal vectors.
pub fn projector<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> LinOp {
    let b = basis(rng, dim);
    b.iter()
        .take(rank)
        .fold(LinOp::zeros(dim).expect("dim > 0"), |acc, k| {
            acc.add(&k.outer(k)).expect("same dim")
        })
}

/// Rank-one projectors onto a random orthonormal basis; they sum to the identity.
pub fn rank_one_partition<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<LinOp> {
    basis(rng, dim).iter().map(|k| k.outer(k)).collect()
}
