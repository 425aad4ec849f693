//! Dense complex kernels on ℂⁿ: matrices, projectors, state vectors and
//! orthonormal subspaces.
//!
//! Everything here is an immutable value. Projectors are validated once at
//! construction (Hermitian and idempotent within `eps_alg`) and carry the
//! orthonormal bases of their range and kernel, so membership queries never
//! repeat the eigendecomposition.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::{Error, Result, Settings};

pub type C64 = Complex64;

const EIGEN_MAX_ITER: usize = 10_000;

/// Square complex matrix with finite entries.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl ComplexMatrix {
    /// Builds a `dim × dim` matrix from row-major entries.
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        if entries.len() != dim * dim {
            return Err(Error::Shape {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        if let Some(k) = entries.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite {
                row: k / dim,
                col: k % dim,
            });
        }
        Ok(Self(DMatrix::from_row_slice(dim, dim, &entries)))
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        let entries: Vec<C64> = rows.iter().flatten().copied().collect();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::Shape {
                expected: dim,
                found: bad.len(),
            });
        }
        Self::new(dim, entries)
    }

    /// Real-valued matrix from row-major entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::new(dim, entries.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    /// Outer product `|v⟩⟨v|`.
    pub fn outer(v: &DVector<C64>) -> Self {
        Self(v * v.adjoint())
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self(&self.0 * factor)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn rows(&self) -> Vec<Vec<C64>> {
        self.0
            .row_iter()
            .map(|r| r.iter().copied().collect())
            .collect()
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn as_dmatrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub(crate) fn from_dmatrix(m: DMatrix<C64>) -> Self {
        debug_assert!(m.is_square());
        Self(m)
    }
}

macro_rules! impl_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&ComplexMatrix> for &ComplexMatrix {
            type Output = ComplexMatrix;

            fn $method(self, rhs: &ComplexMatrix) -> ComplexMatrix {
                assert_eq!(self.dim(), rhs.dim(), "matrix dimension mismatch");
                ComplexMatrix(&self.0 $op &rhs.0)
            }
        }
    };
}

impl_binop!(Add, add, +);
impl_binop!(Sub, sub, -);
impl_binop!(Mul, mul, *);

/// Serialized as nested `[[[re, im], ...], ...]` rows.
impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.dim()))?;
        for row in self.0.row_iter() {
            let row: Vec<[f64; 2]> = row.iter().map(|z| [z.re, z.im]).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.0.row_iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (j, z) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", format_complex(*z))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

pub(crate) fn format_complex(z: C64) -> String {
    let clean = |x: f64| if x.abs() < 5e-13 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re:.6}")
    } else if re == 0.0 {
        format!("{im:.6}i")
    } else {
        format!("{re:.6}{im:+.6}i")
    }
}

/// Orthonormal basis of a subspace of ℂⁿ. The empty basis is the zero subspace.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<DVector<C64>>,
}

impl Subspace {
    /// Validates that `basis` is orthonormal within `eps_alg`.
    pub fn new(ambient_dim: usize, basis: Vec<DVector<C64>>, settings: &Settings) -> Result<Self> {
        settings.check_dim(ambient_dim)?;
        if basis.len() > ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: basis.len(),
            });
        }
        if let Some(v) = basis.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: v.len(),
            });
        }
        let subspace = Self { ambient_dim, basis };
        let residual = subspace.orthonormality_residual();
        if residual > settings.eps_alg {
            return Err(Error::NotOrthonormal { residual });
        }
        Ok(subspace)
    }

    pub(crate) fn from_orthonormal(ambient_dim: usize, basis: Vec<DVector<C64>>) -> Self {
        Self { ambient_dim, basis }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self::from_orthonormal(ambient_dim, Vec::new())
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| DVector::from_fn(ambient_dim, |k, _| if k == i { C64::ONE } else { C64::ZERO }))
            .collect();
        Self::from_orthonormal(ambient_dim, basis)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Number of basis vectors.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[DVector<C64>] {
        &self.basis
    }

    /// Max deviation of the Gram matrix from the identity.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate().skip(i) {
                let target = if i == j { C64::ONE } else { C64::ZERO };
                worst = worst.max((a.dotc(b) - target).norm());
            }
        }
        worst
    }

    /// Orthogonal projector onto the span of the basis.
    pub fn projector_matrix(&self) -> ComplexMatrix {
        let mut m = DMatrix::zeros(self.ambient_dim, self.ambient_dim);
        for b in &self.basis {
            m += b * b.adjoint();
        }
        ComplexMatrix(m)
    }

    /// `‖v − Proj(v)‖₂` for the orthogonal projection onto this subspace.
    pub fn distance(&self, v: &StateVector) -> Result<f64> {
        if v.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.dim(),
            });
        }
        let mut rest = v.amplitudes().clone();
        for b in &self.basis {
            let c = b.dotc(v.amplitudes());
            rest -= b * c;
        }
        Ok(rest.norm())
    }
}

/// Normalized vector in ℂⁿ.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector(DVector<C64>);

impl StateVector {
    /// Accepts amplitudes whose norm is 1 within `eps_alg`.
    pub fn new(amplitudes: Vec<C64>, settings: &Settings) -> Result<Self> {
        let v = Self::checked(amplitudes, settings)?;
        let norm = v.norm();
        if (norm - 1.0).abs() > settings.eps_alg {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self(v))
    }

    /// Rescales nonzero amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<C64>, settings: &Settings) -> Result<Self> {
        let v = Self::checked(amplitudes, settings)?;
        let norm = v.norm();
        Ok(Self(v.unscale(norm)))
    }

    fn checked(amplitudes: Vec<C64>, settings: &Settings) -> Result<DVector<C64>> {
        settings.check_dim(amplitudes.len())?;
        if let Some(k) = amplitudes
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::NonFinite { row: k, col: 0 });
        }
        let v = DVector::from_vec(amplitudes);
        let norm = v.norm();
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.0
    }

    pub fn inner(&self, other: &Self) -> C64 {
        self.0.dotc(&other.0)
    }

    /// The same ray with a global phase `e^{iθ}` applied.
    pub fn with_phase(&self, theta: f64) -> Self {
        Self(&self.0 * C64::from_polar(1.0, theta))
    }
}

/// Hermitian idempotent matrix together with its range and kernel bases.
#[derive(Clone, Debug)]
pub struct Projector {
    matrix: ComplexMatrix,
    range: Subspace,
    kernel: Subspace,
}

impl Projector {
    pub fn validate(matrix: ComplexMatrix, settings: &Settings) -> Result<Self> {
        validate_projector(matrix, settings)
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::zeros(dim),
            range: Subspace::zero(dim),
            kernel: Subspace::full(dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim),
            range: Subspace::full(dim),
            kernel: Subspace::zero(dim),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn rank(&self) -> usize {
        self.range.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    pub fn is_identity(&self) -> bool {
        self.rank() == self.dim()
    }

    /// Orthonormal basis of the eigenvalue-1 eigenspace.
    pub fn range_basis(&self) -> &Subspace {
        &self.range
    }

    /// Orthonormal basis of the eigenvalue-0 eigenspace, i.e. `ran(1̂ − P)`.
    pub fn kernel_basis(&self) -> &Subspace {
        &self.kernel
    }

    /// `1̂ − P`. Range and kernel swap roles.
    pub fn complement(&self) -> Self {
        let dim = self.dim();
        Self {
            matrix: &ComplexMatrix::identity(dim) - &self.matrix,
            range: self.kernel.clone(),
            kernel: self.range.clone(),
        }
    }

    /// Entrywise closeness of the two matrices.
    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        self.dim() == other.dim() && self.matrix.max_abs_diff(&other.matrix) <= eps
    }
}

/// Checks Hermiticity and idempotency, then splits the spectrum at 0.5 to
/// obtain range and kernel bases.
pub fn validate_projector(m: ComplexMatrix, settings: &Settings) -> Result<Projector> {
    settings.check_dim(m.dim())?;
    let hermitian = m.max_abs_diff(&m.adjoint());
    if hermitian > settings.eps_alg {
        return Err(Error::NotHermitian {
            residual: hermitian,
        });
    }
    let idempotent = (&m * &m).max_abs_diff(&m);
    if idempotent > settings.eps_alg {
        return Err(Error::NotIdempotent {
            residual: idempotent,
        });
    }
    let (range, kernel) = split_spectrum(m.as_dmatrix())?;
    Ok(Projector {
        matrix: m,
        range,
        kernel,
    })
}

/// Eigendecomposes a Hermitian matrix with spectrum near {0, 1} and returns
/// the eigenvectors above and below 0.5.
pub(crate) fn split_spectrum(m: &DMatrix<C64>) -> Result<(Subspace, Subspace)> {
    let dim = m.nrows();
    // Exact symmetrization keeps the solver on a strictly Hermitian input.
    let herm = (m + m.adjoint()).unscale(2.0);
    let eig = SymmetricEigen::try_new(herm, f64::EPSILON, EIGEN_MAX_ITER)
        .ok_or(Error::DecompositionFailure)?;
    let mut range = Vec::new();
    let mut kernel = Vec::new();
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if !lambda.is_finite() {
            return Err(Error::DecompositionFailure);
        }
        let v = eig.eigenvectors.column(k).into_owned();
        if lambda > 0.5 {
            range.push(v);
        } else {
            kernel.push(v);
        }
    }
    Ok((
        Subspace::from_orthonormal(dim, range),
        Subspace::from_orthonormal(dim, kernel),
    ))
}

/// `range_basis` as a free function.
pub fn range_basis(p: &Projector) -> Subspace {
    p.range_basis().clone()
}

pub fn kernel_basis(p: &Projector) -> Subspace {
    p.kernel_basis().clone()
}

/// True iff `v` lies within `eps_member` of the span of `s`.
pub fn member(v: &StateVector, s: &Subspace, settings: &Settings) -> Result<bool> {
    Ok(s.distance(v)? <= settings.eps_member)
}

/// Born expectation `⟨v|P|v⟩`, clamped to `[0, 1]`.
pub fn expectation(v: &StateVector, p: &Projector) -> Result<f64> {
    if v.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: v.dim(),
        });
    }
    let pv = p.matrix.as_dmatrix() * v.amplitudes();
    Ok(v.amplitudes().dotc(&pv).re.clamp(0.0, 1.0))
}
