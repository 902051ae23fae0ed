//! One checker per inequality. Each returns the slack (minimum eigenvalue
//! of majorant minus minorant, or the scalar gap) together with the scale
//! the relative tolerance is measured against.

use serde::{Deserialize, Serialize};

use crate::atoms::ScalarAtom;
use crate::commuting::CommutingPair;
use crate::error::{Error, Result};
use crate::functionals::{self, DensityMatrix, ProbabilityVector};
use crate::linalg::{self, loewner_leq, CMatrix, HermitianMatrix};
use crate::perspective;

/// Isometry / contraction defect allowed in generated instances.
pub const HYPOTHESIS_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub slack: f64,
    /// The trial fails iff `slack < -tol * scale`.
    pub scale: f64,
    pub passed: bool,
}

impl CheckOutcome {
    fn from_gap(gap: f64, scale: f64, tol: f64) -> Self {
        Self {
            slack: gap,
            scale,
            passed: gap >= -tol * scale,
        }
    }

    fn loewner(minor: &HermitianMatrix, major: &HermitianMatrix, tol: f64) -> Result<Self> {
        let v = loewner_leq(minor, major, tol)?;
        let scale = if tol > 0.0 {
            v.tolerance_used / tol
        } else {
            1.0
        };
        Ok(Self {
            slack: v.slack,
            scale,
            passed: v.holds,
        })
    }
}

fn hypothesis(theorem: &str, detail: String) -> Error {
    Error::HypothesisViolation {
        theorem: theorem.into(),
        detail,
    }
}

fn check_weight(c: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::Precondition(format!(
            "mixing weight must lie in [0, 1], got {c}"
        )));
    }
    Ok(())
}

fn gram(a: &CMatrix, b: &CMatrix) -> Result<HermitianMatrix> {
    linalg::check_same_shape(a, b)?;
    HermitianMatrix::new(a.adjoint() * a + b.adjoint() * b)
}

/// `f(A*TA + B*TB) <= A*f(T)A + B*f(T)B` given the two halves of the inequality.
fn jensen_sides(
    f: &ScalarAtom,
    a: &CMatrix,
    b: &CMatrix,
    t: &HermitianMatrix,
) -> Result<(HermitianMatrix, HermitianMatrix)> {
    let inner = t.congruence(a)?.add(&t.congruence(b)?)?;
    let lhs = linalg::apply_scalar_function(f, &inner)?;
    let ft = linalg::apply_scalar_function(f, t)?;
    let rhs = ft.congruence(a)?.add(&ft.congruence(b)?)?;
    Ok((lhs, rhs))
}

/// Jensen operator inequality under `A*A + B*B = I`.
pub fn check_hansen_pedersen(
    f: &ScalarAtom,
    a: &CMatrix,
    b: &CMatrix,
    t: &HermitianMatrix,
    tol: f64,
) -> Result<CheckOutcome> {
    let g = gram(a, b)?;
    let defect = g.sub(&HermitianMatrix::identity(g.dim())?)?.max_abs();
    if !(defect <= HYPOTHESIS_TOL) {
        return Err(hypothesis("hp", format!("isometry defect {defect:e}")));
    }
    let (lhs, rhs) = jensen_sides(f, a, b, t)?;
    CheckOutcome::loewner(&lhs, &rhs, tol)
}

/// Jensen operator inequality under `A*A + B*B <= I`; needs `f(0) <= 0`.
pub fn check_hansen_pedersen_contractive(
    f: &ScalarAtom,
    a: &CMatrix,
    b: &CMatrix,
    t: &HermitianMatrix,
    tol: f64,
) -> Result<CheckOutcome> {
    if !f.f0_nonpositive {
        return Err(Error::Precondition(format!(
            "`{f}` has f(0) > 0; with A = B = 0 the contractive inequality would read f(0) <= 0"
        )));
    }
    let g = gram(a, b)?;
    let v = loewner_leq(&g, &HermitianMatrix::identity(g.dim())?, 0.0)?;
    if !(v.slack >= -HYPOTHESIS_TOL) {
        return Err(hypothesis(
            "hp-contractive",
            format!("A*A + B*B exceeds I by {:e}", -v.slack),
        ));
    }
    let (lhs, rhs) = jensen_sides(f, a, b, t)?;
    CheckOutcome::loewner(&lhs, &rhs, tol)
}

fn check_pairs(theorem: &str, p1: &CommutingPair, p2: &CommutingPair) -> Result<()> {
    if p1.dim() != p2.dim() {
        return Err(Error::dims(p1.dim(), p2.dim()));
    }
    for p in [p1, p2] {
        let (norm, limit) = (p.commutator_norm(), p.commutator_limit());
        if !(norm <= limit) {
            return Err(hypothesis(
                theorem,
                format!("commutator norm {norm:e} exceeds {limit:e}"),
            ));
        }
    }
    Ok(())
}

fn combined(
    c: f64,
    p1: &CommutingPair,
    p2: &CommutingPair,
) -> Result<(HermitianMatrix, HermitianMatrix)> {
    let l = HermitianMatrix::combine(c, &p1.left(), 1.0 - c, &p2.left())?;
    let r = HermitianMatrix::combine(c, &p1.right(), 1.0 - c, &p2.right())?;
    Ok((l, r))
}

/// `g(L,R) <= c g(L1,R1) + (1-c) g(L2,R2)`; the endpoints by the eigen path,
/// the (generally non-commuting) combination by the symmetrized path.
pub fn check_perspective_joint_convexity(
    f: &ScalarAtom,
    pair1: &CommutingPair,
    pair2: &CommutingPair,
    c: f64,
    tol: f64,
) -> Result<CheckOutcome> {
    check_weight(c)?;
    check_pairs("perspective", pair1, pair2)?;
    let g1 = perspective::perspective_eigen(f, pair1)?;
    let g2 = perspective::perspective_eigen(f, pair2)?;
    let (l, r) = combined(c, pair1, pair2)?;
    let g = perspective::perspective_symmetrized(f, &l, &r, pair1.floor().min(pair2.floor()))?;
    CheckOutcome::loewner(&g, &HermitianMatrix::combine(c, &g1, 1.0 - c, &g2)?, tol)
}

pub fn check_marechal_joint_convexity(
    f: &ScalarAtom,
    h: &ScalarAtom,
    pair1: &CommutingPair,
    pair2: &CommutingPair,
    c: f64,
    tol: f64,
) -> Result<CheckOutcome> {
    check_weight(c)?;
    check_pairs("marechal", pair1, pair2)?;
    let g1 = perspective::marechal_eigen(f, h, pair1)?;
    let g2 = perspective::marechal_eigen(f, h, pair2)?;
    let (l, r) = combined(c, pair1, pair2)?;
    let g = perspective::marechal_symmetrized(f, h, &l, &r, pair1.floor().min(pair2.floor()))?;
    CheckOutcome::loewner(&g, &HermitianMatrix::combine(c, &g1, 1.0 - c, &g2)?, tol)
}

fn magnitude(values: &[f64]) -> f64 {
    1.0 + values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

/// Gap `c S1 + (1-c) S2 - S(mixture)`, direct path throughout.
pub fn check_relative_entropy_joint_convexity(
    rho1: &DensityMatrix,
    sigma1: &DensityMatrix,
    rho2: &DensityMatrix,
    sigma2: &DensityMatrix,
    c: f64,
    tol: f64,
) -> Result<CheckOutcome> {
    check_weight(c)?;
    let s1 = functionals::quantum_relative_entropy_direct(rho1, sigma1)?;
    let s2 = functionals::quantum_relative_entropy_direct(rho2, sigma2)?;
    // A mixture of strictly positive matrices stays strictly positive.
    let rho = DensityMatrix::mix(c, rho1, rho2, f64::MIN_POSITIVE).map_err(|e| {
        hypothesis(
            "rel-entropy-convexity",
            format!("mixture of rho lost positivity: {e}"),
        )
    })?;
    let sigma = DensityMatrix::mix(c, sigma1, sigma2, f64::MIN_POSITIVE).map_err(|e| {
        hypothesis(
            "rel-entropy-convexity",
            format!("mixture of sigma lost positivity: {e}"),
        )
    })?;
    let s = functionals::quantum_relative_entropy_direct(&rho, &sigma)?;
    let gap = c * s1 + (1.0 - c) * s2 - s;
    Ok(CheckOutcome::from_gap(gap, magnitude(&[s1, s2, s]), tol))
}

fn concavity_gap<F>(
    a1: &HermitianMatrix,
    b1: &HermitianMatrix,
    a2: &HermitianMatrix,
    b2: &HermitianMatrix,
    c: f64,
    tol: f64,
    value: F,
) -> Result<CheckOutcome>
where
    F: Fn(&HermitianMatrix, &HermitianMatrix) -> Result<f64>,
{
    check_weight(c)?;
    let f1 = value(a1, b1)?;
    let f2 = value(a2, b2)?;
    let a = HermitianMatrix::combine(c, a1, 1.0 - c, a2)?;
    let b = HermitianMatrix::combine(c, b1, 1.0 - c, b2)?;
    let f = value(&a, &b)?;
    let gap = f - c * f1 - (1.0 - c) * f2;
    Ok(CheckOutcome::from_gap(gap, magnitude(&[f1, f2, f]), tol))
}

/// Joint concavity of `Trace A^s K* B^{1-s} K`.
#[allow(clippy::too_many_arguments)]
pub fn check_lieb_concavity(
    a1: &HermitianMatrix,
    b1: &HermitianMatrix,
    a2: &HermitianMatrix,
    b2: &HermitianMatrix,
    k: &CMatrix,
    s: f64,
    c: f64,
    tol: f64,
) -> Result<CheckOutcome> {
    concavity_gap(a1, b1, a2, b2, c, tol, |a, b| {
        functionals::lieb_functional(a, b, k, s)
    })
}

/// Joint concavity of `Trace A^q X* B^p X` for `p + q <= 1`.
#[allow(clippy::too_many_arguments)]
pub fn check_lieb_pq_concavity(
    a1: &HermitianMatrix,
    b1: &HermitianMatrix,
    a2: &HermitianMatrix,
    b2: &HermitianMatrix,
    x: &CMatrix,
    p: f64,
    q: f64,
    c: f64,
    tol: f64,
) -> Result<CheckOutcome> {
    functionals::check_pq(p, q)?;
    concavity_gap(a1, b1, a2, b2, c, tol, |a, b| {
        functionals::lieb_pq_functional(a, b, x, p, q)
    })
}

/// Gap `c g(x1,t1) + (1-c) g(x2,t2) - g(c x1 + (1-c) x2, c t1 + (1-c) t2)`
/// for the classical perspective; absolute tolerance.
#[allow(clippy::too_many_arguments)]
pub fn check_classical_perspective_convexity(
    f: &ScalarAtom,
    x1: f64,
    t1: f64,
    x2: f64,
    t2: f64,
    c: f64,
    tol: f64,
) -> Result<CheckOutcome> {
    check_weight(c)?;
    let g =
        |x: f64, t: f64| -> Result<f64> { Ok(functionals::classical_perspective(f, &[x], t)?[0]) };
    let gap = c * g(x1, t1)? + (1.0 - c) * g(x2, t2)?
        - g(c * x1 + (1.0 - c) * x2, c * t1 + (1.0 - c) * t2)?;
    Ok(CheckOutcome::from_gap(gap, 1.0, tol))
}

/// Gap `H(c p1 + (1-c) p2) - c H(p1) - (1-c) H(p2)`; absolute tolerance.
pub fn check_classical_entropy_concavity(
    p1: &ProbabilityVector,
    p2: &ProbabilityVector,
    c: f64,
    tol: f64,
) -> Result<CheckOutcome> {
    check_weight(c)?;
    let mix = ProbabilityVector::mix(c, p1, p2)?;
    let gap = functionals::classical_entropy(&mix)
        - c * functionals::classical_entropy(p1)
        - (1.0 - c) * functionals::classical_entropy(p2);
    Ok(CheckOutcome::from_gap(gap, 1.0, tol))
}

/// Gap `c H(q1||p1) + (1-c) H(q2||p2) - H(q||p)` at the mixtures; absolute tolerance.
pub fn check_classical_relative_entropy_convexity(
    q1: &ProbabilityVector,
    p1: &ProbabilityVector,
    q2: &ProbabilityVector,
    p2: &ProbabilityVector,
    c: f64,
    tol: f64,
) -> Result<CheckOutcome> {
    check_weight(c)?;
    let q = ProbabilityVector::mix(c, q1, q2)?;
    let p = ProbabilityVector::mix(c, p1, p2)?;
    let gap = c * functionals::classical_relative_entropy(q1, p1)?
        + (1.0 - c) * functionals::classical_relative_entropy(q2, p2)?
        - functionals::classical_relative_entropy(&q, &p)?;
    Ok(CheckOutcome::from_gap(gap, 1.0, tol))
}
