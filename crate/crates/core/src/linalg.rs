//! Dense complex Hermitian matrices: spectral decomposition, functional
//! calculus, the Hilbert-Schmidt inner product and Loewner-order comparison.
//!
//! Every matrix that enters the library as "self-adjoint" goes through
//! [`HermitianMatrix::new`], which symmetrizes `(M + M*)/2` and remembers how
//! far the input was from Hermitian. Downstream code may therefore assume
//! exact Hermiticity entry by entry.

use nalgebra::{Complex, DMatrix};

use crate::atoms::ScalarAtom;
use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

const EIGEN_MAX_ITER: usize = 10_000;

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, |acc, x| {
        if x.is_nan() || acc.is_nan() {
            f64::NAN
        } else {
            acc.max(x)
        }
    })
}

/// `max |m_ij - conj(m_ji)|`.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows().min(m.ncols());
    let mut defect = 0.0_f64;
    for i in 0..n {
        for j in 0..=i {
            defect = defect.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    defect
}

/// Max-entry distance of `m*m` from the identity.
pub fn unitarity_defect(m: &CMatrix) -> f64 {
    let gram = m.adjoint() * m;
    let id = CMatrix::identity(gram.nrows(), gram.ncols());
    max_abs(&(gram - id))
}

pub(crate) fn check_same_shape(a: &CMatrix, b: &CMatrix) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(Error::dims(
            format!("{}x{}", a.nrows(), a.ncols()),
            format!("{}x{}", b.nrows(), b.ncols()),
        ));
    }
    Ok(())
}

fn check_square(m: &CMatrix) -> Result<usize> {
    if m.nrows() == 0 || m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.nrows())
}

/// A self-adjoint `n x n` complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    data: CMatrix,
    defect: f64,
}

impl HermitianMatrix {
    /// Symmetrizes `m` and records the pre-symmetrization defect.
    pub fn new(m: CMatrix) -> Result<Self> {
        check_square(&m)?;
        let defect = hermiticity_defect(&m);
        let adj = m.adjoint();
        let data = (m + adj).map(|z| z * 0.5);
        Ok(Self { data, defect })
    }

    /// Like [`HermitianMatrix::new`] but rejects inputs whose defect exceeds `limit`.
    pub fn new_checked(m: CMatrix, limit: f64) -> Result<Self> {
        let h = Self::new(m)?;
        if !(h.defect <= limit) {
            return Err(Error::NotHermitian {
                defect: h.defect,
                limit,
            });
        }
        Ok(h)
    }

    /// Real symmetric matrix from row-major entries.
    pub fn from_real(n: usize, row_major: &[f64]) -> Result<Self> {
        if row_major.len() != n * n {
            return Err(Error::dims(n * n, row_major.len()));
        }
        Self::new(CMatrix::from_fn(n, n, |i, j| {
            C64::new(row_major[i * n + j], 0.0)
        }))
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        let n = values.len();
        Self::new(CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(values[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        }))
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(CMatrix::identity(n, n))
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(CMatrix::zeros(n, n))
    }

    /// `U diag(values) U*` for a (nominally) unitary `basis`.
    pub fn from_spectrum(basis: &CMatrix, values: &[f64]) -> Result<Self> {
        if basis.ncols() != values.len() {
            return Err(Error::dims(basis.ncols(), values.len()));
        }
        let mut scaled = basis.clone();
        for (mut col, &v) in scaled.column_iter_mut().zip(values) {
            col *= C64::new(v, 0.0);
        }
        Self::new(scaled * basis.adjoint())
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.data
    }

    pub fn into_matrix(self) -> CMatrix {
        self.data
    }

    /// Hermiticity defect of the matrix this value was constructed from.
    pub fn defect(&self) -> f64 {
        self.defect
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[(i, j)]
    }

    pub fn trace(&self) -> f64 {
        self.data.diagonal().iter().map(|z| z.re).sum()
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.data)
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::dims(self.dim(), other.dim()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(Self {
            data: &self.data + &other.data,
            defect: 0.0,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(Self {
            data: &self.data - &other.data,
            defect: 0.0,
        })
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            data: self.data.map(|z| z * c),
            defect: 0.0,
        }
    }

    /// `a*self + b*other`, computed entrywise so the result stays exactly Hermitian.
    pub fn combine(a: f64, x: &Self, b: f64, y: &Self) -> Result<Self> {
        x.same_dim(y)?;
        Ok(Self {
            data: x.data.zip_map(&y.data, |u, v| u * a + v * b),
            defect: 0.0,
        })
    }

    /// `a* self a` for a rectangular `a` with `self.dim()` rows.
    pub fn congruence(&self, a: &CMatrix) -> Result<Self> {
        if a.nrows() != self.dim() {
            return Err(Error::dims(
                format!("{} rows", self.dim()),
                format!("{} rows", a.nrows()),
            ));
        }
        Self::new(a.adjoint() * &self.data * a)
    }

    /// `self * middle * self`.
    pub fn sandwich(&self, middle: &Self) -> Result<Self> {
        self.same_dim(middle)?;
        Self::new(&self.data * &middle.data * &self.data)
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(spectral_decompose(self)?.eigenvalues)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(spectral_decompose(self)?.min())
    }

    /// Spectral norm (largest eigenvalue modulus).
    pub fn op_norm(&self) -> Result<f64> {
        Ok(spectral_decompose(self)?.op_norm())
    }
}

/// Eigenvalues in ascending order with matching unitary eigenvector columns.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl SpectralDecomposition {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    pub fn op_norm(&self) -> f64 {
        self.min().abs().max(self.max().abs())
    }

    pub fn reconstruct(&self) -> Result<HermitianMatrix> {
        HermitianMatrix::from_spectrum(&self.eigenvectors, &self.eigenvalues)
    }

    /// `U diag(g(lambda_i)) U*`.
    pub fn map<F>(&self, mut g: F) -> Result<HermitianMatrix>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let values = self
            .eigenvalues
            .iter()
            .map(|&x| g(x))
            .collect::<Result<Vec<_>>>()?;
        HermitianMatrix::from_spectrum(&self.eigenvectors, &values)
    }
}

pub fn spectral_decompose(t: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let n = t.dim();
    let condition = t.max_abs();
    if !condition.is_finite() {
        return Err(Error::EigenSolverFailed { dim: n, condition });
    }
    let eig = t
        .matrix()
        .clone()
        .try_symmetric_eigen(f64::EPSILON, EIGEN_MAX_ITER)
        .ok_or(Error::EigenSolverFailed { dim: n, condition })?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let eigenvectors = CMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// `f(T)` by functional calculus. Eigenvalues within the endpoint tolerance
/// of a closed domain endpoint are clamped before evaluation.
pub fn apply_scalar_function(f: &ScalarAtom, t: &HermitianMatrix) -> Result<HermitianMatrix> {
    spectral_decompose(t)?.map(|x| f.eval(x))
}

/// Outcome of testing `A <= B` in the Loewner order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LoewnerVerdict {
    pub holds: bool,
    /// Minimum eigenvalue of `B - A`.
    pub slack: f64,
    /// Absolute threshold actually applied: `tol * (1 + ||B - A||)`.
    pub tolerance_used: f64,
}

pub fn loewner_leq(a: &HermitianMatrix, b: &HermitianMatrix, tol: f64) -> Result<LoewnerVerdict> {
    if !(tol >= 0.0) {
        return Err(Error::Precondition(format!(
            "tolerance must be >= 0, got {tol}"
        )));
    }
    let diff = b.sub(a)?;
    let spec = spectral_decompose(&diff)?;
    let slack = spec.min();
    let tolerance_used = tol * (1.0 + spec.op_norm());
    Ok(LoewnerVerdict {
        holds: slack >= -tolerance_used,
        slack,
        tolerance_used,
    })
}

/// Hilbert-Schmidt inner product `Trace(X Y*)`.
pub fn hs_inner(x: &CMatrix, y: &CMatrix) -> Result<C64> {
    check_same_shape(x, y)?;
    Ok(x.iter().zip(y.iter()).map(|(a, b)| a * b.conj()).sum())
}
