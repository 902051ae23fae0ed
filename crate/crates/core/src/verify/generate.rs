//! Seeded random instances matching each theorem's hypotheses.
//!
//! Distributions are policy, not theory: complex Ginibre matrices for
//! Wishart-type positives and Haar unitaries, log-uniform spectra on
//! `[floor, 10]` for commuting pairs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::atoms::Interval;
use crate::commuting::CommutingPair;
use crate::error::{Error, Result};
use crate::functionals::{DensityMatrix, ProbabilityVector};
use crate::linalg::{CMatrix, HermitianMatrix, C64};

pub type TrialRng = ChaCha8Rng;

/// Upper end of generated spectra.
pub const SPECTRUM_MAX: f64 = 10.0;
/// Half-width of spectra for atoms defined on the whole line.
pub const SIGNED_SPECTRUM_MAX: f64 = 3.0;

pub fn rng_from_seed(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries `(x + iy)/sqrt(2)` with `x, y` standard normal.
pub fn complex_gaussian<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re * scale, im * scale)
    })
}

/// Orthonormal columns from a thin QR, with the phases of `R`'s diagonal
/// absorbed so square outputs are Haar distributed.
fn orthonormal_columns(g: CMatrix) -> CMatrix {
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for (j, mut col) in q.column_iter_mut().enumerate() {
        let d = r[(j, j)];
        let norm = d.norm();
        if norm > 0.0 {
            col *= d / norm;
        }
    }
    q
}

pub fn haar_unitary<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    orthonormal_columns(complex_gaussian(rng, n, n))
}

pub fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let (a, b) = (lo.ln(), hi.ln());
    (a + (b - a) * rng.random::<f64>()).exp().clamp(lo, hi)
}

/// Normalized `G G* + floor I`; redrawn internally until it clears the floor.
pub fn random_density_with<R: Rng>(rng: &mut R, n: usize, floor: f64) -> DensityMatrix {
    loop {
        let g = complex_gaussian(rng, n, n);
        let mut w = &g * g.adjoint();
        for i in 0..n {
            w[(i, i)] += C64::new(floor, 0.0);
        }
        let h = HermitianMatrix::new(w).expect("square by construction");
        if let Ok(d) = DensityMatrix::with_floor(h, floor) {
            return d;
        }
    }
}

pub fn random_density(n: usize, seed: u64, floor: f64) -> DensityMatrix {
    random_density_with(&mut rng_from_seed(seed), n, floor)
}

/// `G G* / n + floor I`: strictly positive, not normalized.
pub fn random_positive<R: Rng>(rng: &mut R, n: usize, floor: f64) -> HermitianMatrix {
    let g = complex_gaussian(rng, n, n);
    let mut w = (&g * g.adjoint()).map(|z| z / n as f64);
    for i in 0..n {
        w[(i, i)] += C64::new(floor, 0.0);
    }
    HermitianMatrix::new(w).expect("square by construction")
}

/// Splits a `2m x n` matrix into its top and bottom `m x n` blocks.
pub fn split_stack(q: &CMatrix, m: usize) -> (CMatrix, CMatrix) {
    let n = q.ncols();
    (
        q.view((0, 0), (m, n)).into_owned(),
        q.view((m, 0), (m, n)).into_owned(),
    )
}

pub fn random_isometry_pair_with<R: Rng>(
    rng: &mut R,
    m: usize,
    n: usize,
) -> Result<(CMatrix, CMatrix)> {
    if m == 0 || n == 0 || 2 * m < n {
        return Err(Error::Precondition(format!(
            "an isometry pair of {m}x{n} blocks needs 2m >= n >= 1"
        )));
    }
    let q = orthonormal_columns(complex_gaussian(rng, 2 * m, n));
    Ok(split_stack(&q, m))
}

/// Top/bottom blocks of an orthonormalized `2m x n` complex Gaussian.
pub fn random_isometry_pair(m: usize, n: usize, seed: u64) -> Result<(CMatrix, CMatrix)> {
    random_isometry_pair_with(&mut rng_from_seed(seed), m, n)
}

/// An isometry pair scaled by a factor drawn from `(0, shrink]`; returns the factor too.
pub fn random_contraction_pair_with<R: Rng>(
    rng: &mut R,
    m: usize,
    n: usize,
    shrink: f64,
) -> Result<(CMatrix, CMatrix, f64)> {
    if !(shrink > 0.0 && shrink <= 1.0) {
        return Err(Error::Precondition(format!(
            "shrink must lie in (0, 1], got {shrink}"
        )));
    }
    let (a, b) = random_isometry_pair_with(rng, m, n)?;
    let factor = shrink * (1.0 - rng.random::<f64>());
    let k = C64::new(factor, 0.0);
    Ok((a * k, b * k, factor))
}

pub fn random_contraction_pair(
    m: usize,
    n: usize,
    seed: u64,
    shrink: f64,
) -> Result<(CMatrix, CMatrix, f64)> {
    random_contraction_pair_with(&mut rng_from_seed(seed), m, n, shrink)
}

/// One Haar unitary and two independent log-uniform spectra on `[floor, 10]`.
pub fn random_commuting_pair<R: Rng>(rng: &mut R, n: usize, floor: f64) -> Result<CommutingPair> {
    let u = haar_unitary(rng, n);
    let lambda = (0..n)
        .map(|_| log_uniform(rng, floor, SPECTRUM_MAX))
        .collect();
    let mu = (0..n)
        .map(|_| log_uniform(rng, floor, SPECTRUM_MAX))
        .collect();
    CommutingPair::with_floor(u, lambda, mu, floor)
}

/// A Hermitian matrix with spectrum inside `domain`: log-uniform on
/// `[floor, 10]` for nonnegative domains, uniform on `[-3, 3]` otherwise.
pub fn random_hermitian_in<R: Rng>(
    rng: &mut R,
    n: usize,
    domain: &Interval,
    floor: f64,
) -> HermitianMatrix {
    let u = haar_unitary(rng, n);
    let values: Vec<f64> = if domain.is_nonnegative() {
        (0..n)
            .map(|_| log_uniform(rng, floor, SPECTRUM_MAX))
            .collect()
    } else {
        (0..n)
            .map(|_| SIGNED_SPECTRUM_MAX * (2.0 * rng.random::<f64>() - 1.0))
            .collect()
    };
    HermitianMatrix::from_spectrum(&u, &values).expect("square by construction")
}

/// Normalized i.i.d. exponentials (a flat Dirichlet draw).
pub fn random_probability<R: Rng>(rng: &mut R, n: usize) -> ProbabilityVector {
    loop {
        let w: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
        if let Ok(p) = ProbabilityVector::normalized(w) {
            return p;
        }
    }
}
