//! Commuting positive pairs stored in a shared eigenbasis, the quotient
//! `L/R`, and the left/right multiplication superoperators on the
//! Hilbert-Schmidt space of `n x n` matrices.
//!
//! Vectorization is column-stacking: `vec(X)[i + n*j] = X[i, j]`. With that
//! convention `X -> sigma X` has matrix `I (x) sigma` and `X -> X rho` has
//! matrix `rho^T (x) I`.

use nalgebra::DVector;

use crate::atoms::ScalarAtom;
use crate::error::{Error, Result};
use crate::linalg::{self, spectral_decompose, CMatrix, HermitianMatrix, C64};

/// Default strict-positivity floor.
pub const DEFAULT_FLOOR: f64 = 1e-8;
pub const UNITARY_TOL: f64 = 1e-10;
/// Commutator tolerance of the raw-matrix constructor, relative to `1 + ||L|| ||R||`.
pub const RAW_COMMUTATOR_TOL: f64 = 1e-8;

fn check_floor(values: &[f64], floor: f64) -> Result<()> {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    if !(min >= floor) || values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NotPositive {
            min_eigenvalue: min,
            floor,
        });
    }
    Ok(())
}

/// `L = U diag(lambda) U*` and `R = U diag(mu) U*`, both strictly positive.
#[derive(Clone, Debug)]
pub struct CommutingPair {
    basis: CMatrix,
    lambda: Vec<f64>,
    mu: Vec<f64>,
    floor: f64,
}

impl CommutingPair {
    pub fn new(basis: CMatrix, lambda: Vec<f64>, mu: Vec<f64>) -> Result<Self> {
        Self::with_floor(basis, lambda, mu, DEFAULT_FLOOR)
    }

    pub fn with_floor(basis: CMatrix, lambda: Vec<f64>, mu: Vec<f64>, floor: f64) -> Result<Self> {
        let n = basis.nrows();
        if n == 0 || basis.ncols() != n {
            return Err(Error::NotSquare {
                rows: n,
                cols: basis.ncols(),
            });
        }
        if lambda.len() != n || mu.len() != n {
            return Err(Error::dims(n, format!("{}/{}", lambda.len(), mu.len())));
        }
        let defect = linalg::unitarity_defect(&basis);
        if !(defect <= UNITARY_TOL) {
            return Err(Error::NotUnitary { defect });
        }
        check_floor(&lambda, floor)?;
        check_floor(&mu, floor)?;
        Ok(Self {
            basis,
            lambda,
            mu,
            floor,
        })
    }

    /// Ingests two raw matrices by simultaneous diagonalization, rejecting
    /// pairs whose commutator exceeds `1e-8 (1 + ||L|| ||R||)`.
    pub fn from_commuting_matrices(
        l: &HermitianMatrix,
        r: &HermitianMatrix,
        floor: f64,
    ) -> Result<Self> {
        if l.dim() != r.dim() {
            return Err(Error::dims(l.dim(), r.dim()));
        }
        let (lm, rm) = (l.matrix(), r.matrix());
        let norm = (lm * rm - rm * lm).norm();
        let dl = spectral_decompose(l)?;
        let limit = RAW_COMMUTATOR_TOL * (1.0 + dl.op_norm() * r.op_norm()?);
        if !(norm <= limit) {
            return Err(Error::NotCommuting { norm, limit });
        }

        // Within each eigenspace of L, diagonalize the compression of R.
        let n = l.dim();
        let gap = 1e-8 * (1.0 + dl.op_norm());
        let mut basis = CMatrix::zeros(n, n);
        let mut start = 0;
        while start < n {
            let mut end = start + 1;
            while end < n && dl.eigenvalues[end] - dl.eigenvalues[end - 1] <= gap {
                end += 1;
            }
            let v = dl.eigenvectors.columns(start, end - start).into_owned();
            let block = HermitianMatrix::new(v.adjoint() * rm * &v)?;
            let w = spectral_decompose(&block)?.eigenvectors;
            basis.columns_mut(start, end - start).copy_from(&(v * w));
            start = end;
        }

        let rayleigh = |m: &CMatrix| -> Vec<f64> {
            basis
                .column_iter()
                .map(|u| (u.adjoint() * m * u)[(0, 0)].re)
                .collect()
        };
        let lambda = rayleigh(lm);
        let mu = rayleigh(rm);
        Self::with_floor(basis, lambda, mu, floor)
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn floor(&self) -> f64 {
        self.floor
    }

    pub fn left(&self) -> HermitianMatrix {
        HermitianMatrix::from_spectrum(&self.basis, &self.lambda)
            .expect("shape checked at construction")
    }

    pub fn right(&self) -> HermitianMatrix {
        HermitianMatrix::from_spectrum(&self.basis, &self.mu)
            .expect("shape checked at construction")
    }

    /// `U diag(values) U*` in the pair's joint basis.
    pub fn in_basis(&self, values: &[f64]) -> Result<HermitianMatrix> {
        HermitianMatrix::from_spectrum(&self.basis, values)
    }

    /// Frobenius norm of `LR - RL` after reconstruction.
    pub fn commutator_norm(&self) -> f64 {
        let (l, r) = (self.left().into_matrix(), self.right().into_matrix());
        (&l * &r - &r * &l).norm()
    }

    pub fn commutator_limit(&self) -> f64 {
        let max = |v: &[f64]| v.iter().copied().fold(0.0, f64::max);
        1e-10 * (1.0 + max(&self.lambda) * max(&self.mu))
    }

    /// The pair `(R, L)`.
    pub fn swapped(&self) -> Self {
        Self {
            basis: self.basis.clone(),
            lambda: self.mu.clone(),
            mu: self.lambda.clone(),
            floor: self.floor,
        }
    }

    /// `(cL, cR)` for `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        let lambda = self.lambda.iter().map(|x| c * x).collect();
        let mu = self.mu.iter().map(|x| c * x).collect();
        Self::with_floor(
            self.basis.clone(),
            lambda,
            mu,
            self.floor.min(self.floor * c),
        )
    }

    /// `f(L)` through the joint basis.
    pub fn map_left(&self, f: &ScalarAtom) -> Result<HermitianMatrix> {
        let values = self
            .lambda
            .iter()
            .map(|&x| f.eval(x))
            .collect::<Result<Vec<_>>>()?;
        self.in_basis(&values)
    }

    pub fn map_right(&self, f: &ScalarAtom) -> Result<HermitianMatrix> {
        self.swapped().map_left(f)
    }
}

pub fn make_commuting_pair(
    basis: CMatrix,
    lambda: Vec<f64>,
    mu: Vec<f64>,
) -> Result<CommutingPair> {
    CommutingPair::new(basis, lambda, mu)
}

/// `L/R = U diag(lambda_i / mu_i) U*`.
pub fn quotient(pair: &CommutingPair) -> HermitianMatrix {
    let q: Vec<f64> = pair
        .lambda
        .iter()
        .zip(&pair.mu)
        .map(|(l, m)| l / m)
        .collect();
    pair.in_basis(&q).expect("shape checked at construction")
}

/// Operator norm of `log(L/R) - (log L - log R)`, each logarithm computed by
/// an independent functional calculus.
pub fn log_quotient_identity_check(pair: &CommutingPair) -> Result<f64> {
    let neg_log = ScalarAtom::neg_log();
    let log_q = linalg::apply_scalar_function(&neg_log, &quotient(pair))?.scale(-1.0);
    let log_l = linalg::apply_scalar_function(&neg_log, &pair.left())?.scale(-1.0);
    let log_r = linalg::apply_scalar_function(&neg_log, &pair.right())?.scale(-1.0);
    log_q.sub(&log_l.sub(&log_r)?)?.op_norm()
}

/// Left multiplication by `sigma` and right multiplication by `rho` on `M_n`.
#[derive(Clone, Debug)]
pub struct MultiplicationPair {
    sigma: HermitianMatrix,
    rho: HermitianMatrix,
    floor: f64,
}

impl MultiplicationPair {
    pub fn new(sigma: HermitianMatrix, rho: HermitianMatrix) -> Result<Self> {
        Self::with_floor(sigma, rho, DEFAULT_FLOOR)
    }

    pub fn with_floor(sigma: HermitianMatrix, rho: HermitianMatrix, floor: f64) -> Result<Self> {
        if sigma.dim() != rho.dim() {
            return Err(Error::dims(sigma.dim(), rho.dim()));
        }
        for m in [&sigma, &rho] {
            let min = m.min_eigenvalue()?;
            if !(min >= floor) {
                return Err(Error::NotPositive {
                    min_eigenvalue: min,
                    floor,
                });
            }
        }
        Ok(Self { sigma, rho, floor })
    }

    pub fn sigma(&self) -> &HermitianMatrix {
        &self.sigma
    }

    pub fn rho(&self) -> &HermitianMatrix {
        &self.rho
    }

    pub fn dim(&self) -> usize {
        self.sigma.dim()
    }
}

/// Joint eigenbasis of `X -> sigma X` and `X -> X rho` on the `n^2`-dimensional
/// Hilbert-Schmidt space. Basis vector `k = i*n + j` is `vec(u_i v_j*)`, with
/// `lambda_k = s_i` and `mu_k = r_j`.
pub fn realize_multiplication_pair(mp: &MultiplicationPair) -> Result<CommutingPair> {
    let n = mp.dim();
    let ds = spectral_decompose(&mp.sigma)?;
    let dr = spectral_decompose(&mp.rho)?;
    let big = n * n;
    let mut basis = CMatrix::zeros(big, big);
    let mut lambda = Vec::with_capacity(big);
    let mut mu = Vec::with_capacity(big);
    for i in 0..n {
        for j in 0..n {
            let k = i * n + j;
            for b in 0..n {
                let vb = dr.eigenvectors[(b, j)].conj();
                for a in 0..n {
                    basis[(a + n * b, k)] = ds.eigenvectors[(a, i)] * vb;
                }
            }
            lambda.push(ds.eigenvalues[i]);
            mu.push(dr.eigenvalues[j]);
        }
    }
    CommutingPair::with_floor(basis, lambda, mu, mp.floor)
}

/// Column-stacking `vec`.
pub fn vectorize(x: &CMatrix) -> DVector<C64> {
    DVector::from_column_slice(x.as_slice())
}

pub fn unvectorize(v: &DVector<C64>, n: usize) -> Result<CMatrix> {
    if v.len() != n * n {
        return Err(Error::dims(n * n, v.len()));
    }
    Ok(CMatrix::from_column_slice(n, n, v.as_slice()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Side of the pair for superoperators realized on `M_n`.
fn superop_dim(pair: &CommutingPair, x: &CMatrix) -> Result<usize> {
    let n = x.nrows();
    if x.ncols() != n || n * n != pair.dim() {
        return Err(Error::dims(
            format!(
                "{0}x{0} with n^2 = {1}",
                (pair.dim() as f64).sqrt() as usize,
                pair.dim()
            ),
            format!("{}x{}", x.nrows(), x.ncols()),
        ));
    }
    Ok(n)
}

/// Applies `L` (left) or `R` (right) of a realized pair to `X` through the
/// `n^2 x n^2` operator.
pub fn apply_superop(pair: &CommutingPair, which: Side, x: &CMatrix) -> Result<CMatrix> {
    let n = superop_dim(pair, x)?;
    let op = match which {
        Side::Left => pair.left(),
        Side::Right => pair.right(),
    };
    unvectorize(&(op.matrix() * vectorize(x)), n)
}

/// `<Op(Y), Y>` for a superoperator given as an `n^2 x n^2` matrix.
/// The imaginary residue must stay below `1e-12 (1 + |value|)`.
pub fn superop_quadratic_form(op: &HermitianMatrix, y: &CMatrix) -> Result<f64> {
    let n = y.nrows();
    if y.ncols() != n || n * n != op.dim() {
        return Err(Error::dims(
            op.dim(),
            format!("{}x{}", y.nrows(), y.ncols()),
        ));
    }
    let image = unvectorize(&(op.matrix() * vectorize(y)), n)?;
    let z = linalg::hs_inner(&image, y)?;
    if z.im.abs() > 1e-12 * (1.0 + z.re.abs()) {
        return Err(Error::Precondition(format!(
            "quadratic form of a Hermitian superoperator has imaginary residue {:e}",
            z.im
        )));
    }
    Ok(z.re)
}
