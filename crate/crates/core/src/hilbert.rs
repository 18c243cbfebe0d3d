//! Dense complex linear algebra for small Hilbert spaces.
//!
//! [`Ket`] and [`LinOp`] wrap `nalgebra` storage and expose only the
//! operations the measurement model needs. Index ordering for tensor products
//! puts the first factor on the slowest-varying index, so `|i⟩⊗|j⟩` lives at
//! `i * dim_b + j`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub mod random;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A state vector in a finite-dimensional Hilbert space.
///
/// The `normalized` flag is derived at construction: it is set exactly when
/// `|⟨v|v⟩ − 1| ≤ 1e-12`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    amps: DVector<Complex64>,
    normalized: bool,
}

impl Ket {
    const NORM_TOL: f64 = 1e-12;

    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::EmptyDimension);
        }
        Ok(Self::from_vector(DVector::from_vec(amplitudes)))
    }

    /// Builds a ket and rescales it to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::new(amplitudes)?.normalize()
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// Standard basis vector `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        if index >= dim {
            return Err(Error::param("index", format!("{index} out of range for dimension {dim}")));
        }
        let mut v = DVector::from_element(dim, ZERO);
        v[index] = ONE;
        Ok(Self::from_vector(v))
    }

    pub(crate) fn from_vector(amps: DVector<Complex64>) -> Self {
        let normalized = (amps.norm_squared() - 1.0).abs() <= Self::NORM_TOL;
        Self { amps, normalized }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.amps.as_slice()
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub(crate) fn vector(&self) -> &DVector<Complex64> {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.norm_squared()
    }

    pub fn normalize(&self) -> Result<Self> {
        let n = self.amps.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroNorm);
        }
        Ok(Self::from_vector(self.amps.unscale(n)))
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Ket) -> Result<Complex64> {
        inner(self, other)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::from_vector(self.amps.scale_complex(factor))
    }

    pub fn add(&self, other: &Ket) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(Self::from_vector(&self.amps + &other.amps))
    }

    pub fn sub(&self, other: &Ket) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(Self::from_vector(&self.amps - &other.amps))
    }

    /// `|self⟩⟨other|`.
    pub fn outer(&self, other: &Ket) -> LinOp {
        LinOp::from_matrix_unchecked(&self.amps * other.amps.adjoint())
    }

    /// Projector onto the ray spanned by this ket.
    pub fn projector(&self) -> Result<LinOp> {
        let unit = self.normalize()?;
        Ok(unit.outer(&unit))
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_diff(&self, other: &Ket) -> Result<f64> {
        check_dims(self.dim(), other.dim())?;
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

trait ScaleComplex {
    fn scale_complex(&self, c: Complex64) -> Self;
}

impl ScaleComplex for DVector<Complex64> {
    fn scale_complex(&self, c: Complex64) -> Self {
        self.map(|a| a * c)
    }
}

/// A square complex matrix acting on a finite-dimensional Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct LinOp {
    m: DMatrix<Complex64>,
}

impl LinOp {
    /// Builds an operator from row-major entries.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Ok(Self {
            m: DMatrix::from_row_slice(dim, dim, &entries),
        })
    }

    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::new(dim, entries.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        Ok(Self {
            m: DMatrix::from_fn(dim, dim, f),
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        Ok(Self {
            m: DMatrix::identity(dim, dim),
        })
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        Ok(Self {
            m: DMatrix::from_element(dim, dim, ZERO),
        })
    }

    /// Diagonal operator with real entries.
    pub fn diagonal(values: &[f64]) -> Result<Self> {
        let dim = values.len();
        Self::from_fn(dim, |i, j| {
            if i == j {
                Complex64::new(values[i], 0.0)
            } else {
                ZERO
            }
        })
    }

    pub(crate) fn from_matrix_unchecked(m: DMatrix<Complex64>) -> Self {
        debug_assert!(m.is_square());
        Self { m }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.m[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self {
            m: self.m.adjoint(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            m: self.m.map(|a| a * factor),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        Self {
            m: self.m.map(|a| a * factor),
        }
    }

    pub fn add(&self, other: &LinOp) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(Self {
            m: &self.m + &other.m,
        })
    }

    pub fn sub(&self, other: &LinOp) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(Self {
            m: &self.m - &other.m,
        })
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &LinOp) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(Self {
            m: &self.m * &other.m,
        })
    }

    pub fn apply(&self, ket: &Ket) -> Result<Ket> {
        check_dims(self.dim(), ket.dim())?;
        Ok(Ket::from_vector(&self.m * ket.vector()))
    }

    /// `⟨bra|self|ket⟩`.
    pub fn sandwich(&self, bra: &Ket, ket: &Ket) -> Result<Complex64> {
        check_dims(self.dim(), bra.dim())?;
        check_dims(self.dim(), ket.dim())?;
        Ok(bra.vector().dotc(&(&self.m * ket.vector())))
    }

    /// `⟨ket|self|ket⟩`.
    pub fn expectation(&self, ket: &Ket) -> Result<Complex64> {
        self.sandwich(ket, ket)
    }

    pub fn trace(&self) -> Complex64 {
        self.m.trace()
    }

    /// Entrywise maximum modulus, `‖M‖_max`.
    pub fn max_abs(&self) -> f64 {
        self.m.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn max_diff(&self, other: &LinOp) -> Result<f64> {
        check_dims(self.dim(), other.dim())?;
        Ok(self
            .m
            .iter()
            .zip(other.m.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.m[(i, j)] - self.m[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// `max|M² − M|`; meaningful as a projector test only together with Hermiticity.
    pub fn idempotence_deviation(&self) -> f64 {
        let sq = &self.m * &self.m;
        sq.iter()
            .zip(self.m.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_projector(&self, tol: f64) -> bool {
        self.is_hermitian(tol) && self.idempotence_deviation() <= tol
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.m
            .iter()
            .enumerate()
            .all(|(k, a)| {
                let (i, j) = (k % self.dim(), k / self.dim());
                let target = if i == j { ONE } else { ZERO };
                (a - target).norm() <= tol
            })
    }

    /// Rank of a projector, read off its trace.
    pub fn projector_rank(&self) -> usize {
        self.trace().re.round().max(0.0) as usize
    }

    /// `selfⁿ` by repeated squaring.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.m.clone();
        let mut acc = DMatrix::identity(self.dim(), self.dim());
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        Self { m: acc }
    }

    pub(crate) fn ensure_hermitian(&self, tol: f64) -> Result<()> {
        let deviation = self.hermitian_deviation();
        if deviation > tol {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(())
    }

    pub(crate) fn ensure_projector(&self, tol: f64) -> Result<()> {
        let deviation = self.hermitian_deviation().max(self.idempotence_deviation());
        if deviation > tol {
            return Err(Error::NotProjector { deviation });
        }
        Ok(())
    }
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `⟨a|b⟩` with conjugation on the first argument.
pub fn inner(a: &Ket, b: &Ket) -> Result<Complex64> {
    check_dims(a.dim(), b.dim())?;
    Ok(a.vector().dotc(b.vector()))
}

/// `[a, b] = ab − ba`.
pub fn commutator(a: &LinOp, b: &LinOp) -> Result<LinOp> {
    check_dims(a.dim(), b.dim())?;
    Ok(LinOp::from_matrix_unchecked(
        &a.m * &b.m - &b.m * &a.m,
    ))
}

/// Kronecker product; the left factor indexes the slow (outer) block.
pub trait Tensor<Rhs = Self> {
    type Output;
    fn tensor(&self, rhs: &Rhs) -> Self::Output;
}

impl Tensor for Ket {
    type Output = Ket;
    fn tensor(&self, rhs: &Ket) -> Ket {
        Ket::from_vector(self.amps.kronecker(&rhs.amps))
    }
}

impl Tensor for LinOp {
    type Output = LinOp;
    fn tensor(&self, rhs: &LinOp) -> LinOp {
        LinOp::from_matrix_unchecked(self.m.kronecker(&rhs.m))
    }
}

pub fn tensor<T: Tensor>(a: &T, b: &T) -> T::Output {
    a.tensor(b)
}

/// Spectral decomposition `A = Σ_i a_i P_i` of a Hermitian operator.
///
/// Eigenvalues are ascending; eigenvalues closer than the degeneracy
/// threshold share one eigenprojector.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenprojectors: Vec<LinOp>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn reconstruct(&self) -> LinOp {
        let dim = self.eigenprojectors[0].dim();
        let mut m = DMatrix::from_element(dim, dim, ZERO);
        for (a, p) in self.eigenvalues.iter().zip(&self.eigenprojectors) {
            m += p.m.map(|x| x * *a);
        }
        LinOp::from_matrix_unchecked(m)
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &LinOp)> {
        self.eigenvalues.iter().copied().zip(self.eigenprojectors.iter())
    }
}

/// Eigendecomposition of a Hermitian operator.
///
/// `hermitian_tol` gates the input check; `degeneracy` is the gap below which
/// neighbouring eigenvalues are merged.
pub fn spectral(a: &LinOp, hermitian_tol: f64, degeneracy: f64) -> Result<Spectrum> {
    a.ensure_hermitian(hermitian_tol)?;
    let n = a.dim();
    let sym = (&a.m + a.m.adjoint()).map(|x| x * 0.5);
    let eig = sym.symmetric_eigen();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    let mut eigenvalues = Vec::new();
    let mut eigenprojectors: Vec<LinOp> = Vec::new();
    let mut group: Vec<usize> = Vec::new();
    let flush = |group: &mut Vec<usize>, vals: &mut Vec<f64>, projs: &mut Vec<LinOp>| {
        if group.is_empty() {
            return;
        }
        let mean = group.iter().map(|&k| eig.eigenvalues[k]).sum::<f64>() / group.len() as f64;
        let mut p = DMatrix::from_element(n, n, ZERO);
        for &k in group.iter() {
            let v = eig.eigenvectors.column(k);
            p += &v * v.adjoint();
        }
        vals.push(mean);
        projs.push(LinOp::from_matrix_unchecked(p));
        group.clear();
    };
    for &k in &order {
        if let Some(&last) = group.last() {
            if eig.eigenvalues[k] - eig.eigenvalues[last] >= degeneracy {
                flush(&mut group, &mut eigenvalues, &mut eigenprojectors);
            }
        }
        group.push(k);
    }
    flush(&mut group, &mut eigenvalues, &mut eigenprojectors);

    Ok(Spectrum {
        eigenvalues,
        eigenprojectors,
    })
}

/// `max|Σ_j |ψ_j⟩⟨ψ_j| − 1|` together with the worst off-diagonal overlap
/// and norm defect, i.e. how far `basis` is from a complete orthonormal set.
pub fn basis_defect(basis: &[Ket]) -> Result<f64> {
    let dim = basis.first().ok_or(Error::EmptyDimension)?.dim();
    let mut gram_defect = 0.0_f64;
    for (i, a) in basis.iter().enumerate() {
        check_dims(dim, a.dim())?;
        for (j, b) in basis.iter().enumerate() {
            let target = if i == j { ONE } else { ZERO };
            gram_defect = gram_defect.max((inner(a, b)? - target).norm());
        }
    }
    let mut sum = DMatrix::from_element(dim, dim, ZERO);
    for k in basis {
        sum += k.vector() * k.vector().adjoint();
    }
    let resolution = LinOp::from_matrix_unchecked(sum).max_diff(&LinOp::identity(dim)?)?;
    Ok(gram_defect.max(resolution))
}

/// `max|Σ_i P_i − 1|` for a list of operators.
pub fn partition_defect(parts: &[LinOp]) -> Result<f64> {
    let dim = parts.first().ok_or(Error::EmptyDimension)?.dim();
    let mut sum = LinOp::zeros(dim)?;
    for p in parts {
        sum = sum.add(p)?;
    }
    sum.max_diff(&LinOp::identity(dim)?)
}
