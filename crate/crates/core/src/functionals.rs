//! Classical and quantum entropy functionals and the Lieb trace functionals.
//!
//! All logarithms are natural; entropies are in nats.

use serde::{Deserialize, Serialize};

use crate::atoms::ScalarAtom;
use crate::commuting::{self, MultiplicationPair, DEFAULT_FLOOR};
use crate::error::{Error, Result};
use crate::linalg::{apply_scalar_function, CMatrix, HermitianMatrix};
use crate::perspective;

/// Normalization tolerance for probability vectors and density matrices.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Positivity threshold for inputs that only need to be invertible.
const STRICT: f64 = f64::MIN_POSITIVE;

/// Strictly positive weights summing to one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidProbability("empty vector".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0) || !w.is_finite()) {
            return Err(Error::InvalidProbability(format!(
                "weight {w} is not strictly positive"
            )));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidProbability(format!("weights sum to {total}")));
        }
        Ok(Self(weights))
    }

    /// Rescales positive weights to unit sum.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        Self::new(weights.into_iter().map(|w| w / total).collect())
    }

    /// `c p + (1-c) q`.
    pub fn mix(c: f64, p: &Self, q: &Self) -> Result<Self> {
        if p.len() != q.len() {
            return Err(Error::dims(p.len(), q.len()));
        }
        Self::new(
            p.0.iter()
                .zip(&q.0)
                .map(|(a, b)| c * a + (1.0 - c) * b)
                .collect(),
        )
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<f64>> for ProbabilityVector {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ProbabilityVector> for Vec<f64> {
    fn from(p: ProbabilityVector) -> Self {
        p.0
    }
}

/// Unit-trace Hermitian matrix with minimum eigenvalue at least the floor.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DensityMatrix(HermitianMatrix);

impl DensityMatrix {
    pub fn new(m: HermitianMatrix) -> Result<Self> {
        Self::with_floor(m, DEFAULT_FLOOR)
    }

    /// Normalizes the trace, then rejects matrices below `floor`.
    pub fn with_floor(m: HermitianMatrix, floor: f64) -> Result<Self> {
        let tr = m.trace();
        if !(tr > 0.0) {
            return Err(Error::NotPositive {
                min_eigenvalue: m.min_eigenvalue().unwrap_or(f64::NAN),
                floor,
            });
        }
        let m = if tr == 1.0 { m } else { m.scale(1.0 / tr) };
        let min = m.min_eigenvalue()?;
        if !(min >= floor) {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
                floor,
            });
        }
        Ok(Self(m))
    }

    /// `c rho + (1-c) sigma`.
    pub fn mix(c: f64, rho: &Self, sigma: &Self, floor: f64) -> Result<Self> {
        Self::with_floor(
            HermitianMatrix::combine(c, &rho.0, 1.0 - c, &sigma.0)?,
            floor,
        )
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = HermitianMatrix::deserialize(d)?;
        Self::new(m).map_err(serde::de::Error::custom)
    }
}

/// Componentwise `f(x_i / t) t`.
pub fn classical_perspective(f: &ScalarAtom, x: &[f64], t: f64) -> Result<Vec<f64>> {
    if !(t > 0.0) {
        return Err(Error::Precondition(format!(
            "perspective needs t > 0, got {t}"
        )));
    }
    x.iter().map(|&xi| Ok(f.eval(xi / t)? * t)).collect()
}

/// `H(p) = -sum p_i log p_i`.
pub fn classical_entropy(p: &ProbabilityVector) -> f64 {
    -p.weights().iter().map(|&w| w * w.ln()).sum::<f64>()
}

/// `H(q||p) = sum p_i log p_i - p_i log q_i`, with the arguments in this order.
pub fn classical_relative_entropy(q: &ProbabilityVector, p: &ProbabilityVector) -> Result<f64> {
    if q.len() != p.len() {
        return Err(Error::dims(p.len(), q.len()));
    }
    Ok(p.weights()
        .iter()
        .zip(q.weights())
        .map(|(&pi, &qi)| pi * pi.ln() - pi * qi.ln())
        .sum())
}

/// `S(rho||sigma) = Trace rho log rho - Trace rho log sigma`.
pub fn quantum_relative_entropy_direct(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::dims(rho.dim(), sigma.dim()));
    }
    let rho_log_rho = apply_scalar_function(&ScalarAtom::xlogx(), rho.matrix())?;
    // -log sigma
    let neg_log_sigma = apply_scalar_function(&ScalarAtom::neg_log(), sigma.matrix())?;
    let cross: f64 = (rho.matrix().matrix() * neg_log_sigma.matrix())
        .diagonal()
        .iter()
        .map(|z| z.re)
        .sum();
    Ok(rho_log_rho.trace() + cross)
}

/// `S(rho||sigma) = <L (R/L) log(R/L) (I), I>` with `L(X) = sigma X` and
/// `R(X) = X rho`: the perspective of `x log x` on the swapped pair `(R, L)`.
pub fn quantum_relative_entropy_perspective(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::dims(rho.dim(), sigma.dim()));
    }
    let mp = MultiplicationPair::with_floor(sigma.matrix().clone(), rho.matrix().clone(), STRICT)?;
    let pair = commuting::realize_multiplication_pair(&mp)?.swapped();
    let g = perspective::perspective_eigen(&ScalarAtom::xlogx(), &pair)?;
    commuting::superop_quadratic_form(&g, &CMatrix::identity(rho.dim(), rho.dim()))
}

fn require_positive(m: &HermitianMatrix, floor: f64) -> Result<()> {
    let min = m.min_eigenvalue()?;
    if !(min >= floor) {
        return Err(Error::NotPositive {
            min_eigenvalue: min,
            floor,
        });
    }
    Ok(())
}

/// Real power `A^e` for strictly positive `A` and `0 <= e <= 1`.
fn positive_power(a: &HermitianMatrix, e: f64) -> Result<HermitianMatrix> {
    if e == 0.0 {
        return HermitianMatrix::identity(a.dim());
    }
    apply_scalar_function(&ScalarAtom::power(e)?, a)
}

fn trace_product(a: &HermitianMatrix, k: &CMatrix, b: &HermitianMatrix) -> Result<f64> {
    let n = a.dim();
    if b.dim() != n || k.nrows() != n || k.ncols() != n {
        return Err(Error::dims(
            n,
            format!("{} / {}x{}", b.dim(), k.nrows(), k.ncols()),
        ));
    }
    // Trace(A K* B K); the value is real for Hermitian A, B.
    let prod = a.matrix() * k.adjoint() * b.matrix() * k;
    Ok(prod.diagonal().iter().map(|z| z.re).sum())
}

/// `F(A,B) = Trace A^s K* B^{1-s} K` for `0 < s < 1`.
pub fn lieb_functional(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    k: &CMatrix,
    s: f64,
) -> Result<f64> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::ParameterOutOfRange {
            atom: "lieb".into(),
            parameter: Some(s),
            expected: "0 < s < 1",
        });
    }
    require_positive(a, STRICT)?;
    require_positive(b, STRICT)?;
    trace_product(&positive_power(a, s)?, k, &positive_power(b, 1.0 - s)?)
}

/// Checks `p > 0`, `q > 0`, `p + q <= 1` (the sum up to 1e-12).
pub fn check_pq(p: f64, q: f64) -> Result<()> {
    if !(p > 0.0 && q > 0.0 && p + q <= 1.0 + 1e-12) {
        return Err(Error::ParameterOutOfRange {
            atom: "lieb_pq".into(),
            parameter: Some(p + q),
            expected: "p > 0, q > 0, p + q <= 1",
        });
    }
    Ok(())
}

/// `Trace A^q X* B^p X` for `p, q > 0`, `p + q <= 1`.
pub fn lieb_pq_functional(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    x: &CMatrix,
    p: f64,
    q: f64,
) -> Result<f64> {
    check_pq(p, q)?;
    require_positive(a, STRICT)?;
    require_positive(b, STRICT)?;
    trace_product(
        &positive_power(a, q.min(1.0))?,
        x,
        &positive_power(b, p.min(1.0))?,
    )
}

/// `Trace A^q X* B^p X` through the extended perspective of `f = -x^s`,
/// `h = y^t` with `s = q`, `t = p / (1 - q)`; requires `q < 1`.
pub fn lieb_pq_via_marechal(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    x: &CMatrix,
    p: f64,
    q: f64,
) -> Result<f64> {
    check_pq(p, q)?;
    let f = ScalarAtom::neg_power(q)?;
    let h = ScalarAtom::power((p / (1.0 - q)).min(1.0))?;
    let mp = MultiplicationPair::with_floor(a.clone(), b.clone(), STRICT)?;
    Ok(-perspective::marechal_quadratic_form(&f, &h, &mp, x)?)
}

/// `Trace A^s K* B^{1-s} K` through the superoperator perspective of `-x^s`.
pub fn lieb_via_perspective(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    k: &CMatrix,
    s: f64,
) -> Result<f64> {
    let f = ScalarAtom::neg_power(s)?;
    let mp = MultiplicationPair::with_floor(a.clone(), b.clone(), STRICT)?;
    Ok(-perspective::perspective_quadratic_form(&f, &mp, k)?)
}
