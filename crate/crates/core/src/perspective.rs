//! Matrix perspectives `g(L,R) = f(L/R) R` and the extended perspective
//! `(f D h)(L,R) = f(L/h(R)) h(R)`.
//!
//! Each comes in two forms. The eigen form works on a [`CommutingPair`] and
//! evaluates everything on the joint spectrum; it is exact there and is the
//! reference whenever it applies. The symmetrized form
//! `W^{1/2} f(W^{-1/2} L W^{-1/2}) W^{1/2}` (with `W = R` or `W = h(R)`)
//! accepts non-commuting arguments, which is what convex combinations of
//! commuting pairs generally are.

use crate::atoms::{AtomKind, ScalarAtom};
use crate::commuting::{self, CommutingPair, MultiplicationPair};
use crate::error::{Error, Result};
use crate::linalg::{spectral_decompose, CMatrix, HermitianMatrix};

fn require_operator_convexity_flag(f: &ScalarAtom) -> Result<()> {
    if !(f.operator_convex || f.operator_concave) {
        return Err(Error::Precondition(format!(
            "perspective of `{f}` requires an operator convex or concave atom"
        )));
    }
    Ok(())
}

fn require_extended_hypotheses(f: &ScalarAtom, h: &ScalarAtom) -> Result<()> {
    if !(f.operator_convex && f.f0_nonpositive) {
        return Err(Error::Precondition(format!(
            "extended perspective needs an operator convex f with f(0) <= 0, got `{f}`"
        )));
    }
    if !h.operator_concave {
        return Err(Error::Precondition(format!(
            "extended perspective needs an operator concave h, got `{h}`"
        )));
    }
    Ok(())
}

fn is_identity(h: &ScalarAtom) -> bool {
    matches!(h.kind, AtomKind::Identity) || (h.kind == AtomKind::Power && h.parameter == Some(1.0))
}

/// `U diag(f(lambda_i / w_i) w_i) U*` for weights `w`.
fn weighted_eigen(
    f: &ScalarAtom,
    pair: &CommutingPair,
    weights: &[f64],
) -> Result<HermitianMatrix> {
    let values = pair
        .lambda()
        .iter()
        .zip(weights)
        .map(|(&l, &w)| Ok(f.eval(l / w)? * w))
        .collect::<Result<Vec<_>>>()?;
    pair.in_basis(&values)
}

pub fn perspective_eigen(f: &ScalarAtom, pair: &CommutingPair) -> Result<HermitianMatrix> {
    require_operator_convexity_flag(f)?;
    weighted_eigen(f, pair, pair.mu())
}

/// `W^{1/2} f(W^{-1/2} L W^{-1/2}) W^{1/2}`, evaluated in the eigenbasis of `W`
/// so the inverse square root is never formed as a dense matrix.
fn symmetrized_core(
    f: &ScalarAtom,
    l: &HermitianMatrix,
    weight: &HermitianMatrix,
    floor: f64,
) -> Result<HermitianMatrix> {
    if l.dim() != weight.dim() {
        return Err(Error::dims(weight.dim(), l.dim()));
    }
    let dw = spectral_decompose(weight)?;
    if !(dw.min() >= floor) {
        return Err(Error::NotPositive {
            min_eigenvalue: dw.min(),
            floor,
        });
    }
    let v = &dw.eigenvectors;
    let root: Vec<f64> = dw.eigenvalues.iter().map(|w| w.sqrt()).collect();
    let n = l.dim();
    // M = D^{-1/2} (V* L V) D^{-1/2}
    let inner = v.adjoint() * l.matrix() * v;
    let m = HermitianMatrix::new(CMatrix::from_fn(n, n, |i, j| {
        inner[(i, j)] / (root[i] * root[j])
    }))?;
    let fm = spectral_decompose(&m)?.map(|x| f.eval(x))?;
    // V D^{1/2} f(M) D^{1/2} V*
    let scaled = CMatrix::from_fn(n, n, |i, j| fm.get(i, j) * (root[i] * root[j]));
    HermitianMatrix::new(v * scaled * v.adjoint())
}

/// Symmetrized perspective `R^{1/2} f(R^{-1/2} L R^{-1/2}) R^{1/2}`.
/// `R` must have minimum eigenvalue at least `floor`.
pub fn perspective_symmetrized(
    f: &ScalarAtom,
    l: &HermitianMatrix,
    r: &HermitianMatrix,
    floor: f64,
) -> Result<HermitianMatrix> {
    symmetrized_core(f, l, r, floor)
}

pub fn marechal_eigen(
    f: &ScalarAtom,
    h: &ScalarAtom,
    pair: &CommutingPair,
) -> Result<HermitianMatrix> {
    require_extended_hypotheses(f, h)?;
    let weights = pair
        .mu()
        .iter()
        .map(|&m| {
            let w = h.eval(m)?;
            if w > 0.0 {
                Ok(w)
            } else {
                Err(Error::Precondition(format!(
                    "h = `{h}` is not positive at {m:e} (value {w:e})"
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    weighted_eigen(f, pair, &weights)
}

/// `h(R)^{1/2} f(h(R)^{-1/2} L h(R)^{-1/2}) h(R)^{1/2}` with `h(R)` by
/// functional calculus. An identity `h` reuses `R` itself, so this reduces
/// exactly to [`perspective_symmetrized`].
pub fn marechal_symmetrized(
    f: &ScalarAtom,
    h: &ScalarAtom,
    l: &HermitianMatrix,
    r: &HermitianMatrix,
    floor: f64,
) -> Result<HermitianMatrix> {
    require_extended_hypotheses(f, h)?;
    if is_identity(h) {
        return symmetrized_core(f, l, r, floor);
    }
    let hr = crate::linalg::apply_scalar_function(h, r)?;
    symmetrized_core(f, l, &hr, floor)
}

/// `<g(L,R)(K*), K*>` with `L(X) = sigma X`, `R(X) = X rho`.
pub fn perspective_quadratic_form(
    f: &ScalarAtom,
    mp: &MultiplicationPair,
    k: &CMatrix,
) -> Result<f64> {
    let pair = commuting::realize_multiplication_pair(mp)?;
    let g = perspective_eigen(f, &pair)?;
    commuting::superop_quadratic_form(&g, &k.adjoint())
}

/// `<(f D h)(L,R)(K*), K*>` with `L(X) = sigma X`, `R(X) = X rho`.
pub fn marechal_quadratic_form(
    f: &ScalarAtom,
    h: &ScalarAtom,
    mp: &MultiplicationPair,
    k: &CMatrix,
) -> Result<f64> {
    let pair = commuting::realize_multiplication_pair(mp)?;
    let g = marechal_eigen(f, h, &pair)?;
    commuting::superop_quadratic_form(&g, &k.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commuting::{make_commuting_pair, DEFAULT_FLOOR};
    use crate::linalg::C64;

    fn diag(v: &[f64]) -> HermitianMatrix {
        HermitianMatrix::diagonal(v).unwrap()
    }

    fn pair(l: &[f64], r: &[f64]) -> CommutingPair {
        make_commuting_pair(CMatrix::identity(l.len(), l.len()), l.to_vec(), r.to_vec()).unwrap()
    }

    #[test]
    fn scalar_xlogx() {
        let g = perspective_eigen(&ScalarAtom::xlogx(), &pair(&[2.0], &[1.0])).unwrap();
        assert!((g.get(0, 0).re - 2.0 * 2f64.ln()).abs() < 1e-15);
        let g = perspective_eigen(&ScalarAtom::xlogx(), &pair(&[2.0, 3.0], &[2.0, 3.0])).unwrap();
        assert_eq!(g.max_abs(), 0.0);
    }

    #[test]
    fn requires_flagged_atom() {
        assert!(matches!(
            perspective_eigen(&ScalarAtom::quartic(), &pair(&[1.0], &[1.0])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn symmetrized_examples() {
        let id = HermitianMatrix::identity(3).unwrap();
        let g = perspective_symmetrized(&ScalarAtom::square(), &id, &id, DEFAULT_FLOOR).unwrap();
        assert!(g.sub(&id).unwrap().max_abs() < 1e-15);

        let g = perspective_symmetrized(
            &ScalarAtom::xlogx(),
            &diag(&[6.0, 8.0]),
            &diag(&[2.0, 4.0]),
            DEFAULT_FLOOR,
        )
        .unwrap();
        assert!((g.get(0, 0).re - 6.0 * 3f64.ln()).abs() < 1e-13);
        assert!((g.get(1, 1).re - 8.0 * 2f64.ln()).abs() < 1e-13);
        assert!(g.get(0, 1).norm() < 1e-14);
    }

    #[test]
    fn symmetrized_rejects_singular_weight() {
        let r = diag(&[1.0, 1e-12]);
        assert!(matches!(
            perspective_symmetrized(&ScalarAtom::xlogx(), &r, &r, DEFAULT_FLOOR),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn marechal_examples() {
        let p = pair(&[1.5, 0.2, 7.0], &[0.3, 2.0, 9.0]);
        let f = ScalarAtom::xlogx();
        assert_eq!(
            marechal_eigen(&f, &ScalarAtom::identity(), &p).unwrap(),
            perspective_eigen(&f, &p).unwrap()
        );
        let g =
            marechal_eigen(&f, &ScalarAtom::power(0.5).unwrap(), &pair(&[4.0], &[16.0])).unwrap();
        assert_eq!(g.get(0, 0).re, 0.0);

        // L = h(R) gives f(1) h(R)
        let r = diag(&[4.0, 9.0]);
        let h = ScalarAtom::power(0.5).unwrap();
        let f = ScalarAtom::neg_power(0.3).unwrap();
        let g = marechal_symmetrized(&f, &h, &diag(&[2.0, 3.0]), &r, DEFAULT_FLOOR).unwrap();
        assert!(g.sub(&diag(&[-2.0, -3.0])).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn marechal_hypotheses() {
        let p = pair(&[1.0], &[1.0]);
        let h = ScalarAtom::power(0.5).unwrap();
        assert!(marechal_eigen(&ScalarAtom::neg_log(), &h, &p).is_err());
        assert!(marechal_eigen(&ScalarAtom::xlogx(), &ScalarAtom::square(), &p).is_err());
        let neg = ScalarAtom::constant(-1.0).unwrap();
        assert!(matches!(
            marechal_eigen(&ScalarAtom::xlogx(), &neg, &p),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn quadratic_form_examples() {
        let i2 = HermitianMatrix::identity(2).unwrap();
        let mp = MultiplicationPair::new(i2.clone(), i2).unwrap();
        let k = CMatrix::identity(2, 2);
        let v = perspective_quadratic_form(&ScalarAtom::neg_power(0.5).unwrap(), &mp, &k).unwrap();
        assert!((v + 2.0).abs() < 1e-14);

        let s = HermitianMatrix::from_real(2, &[2.0, 0.3, 0.3, 1.0]).unwrap();
        let mp = MultiplicationPair::new(s.clone(), s).unwrap();
        let v = perspective_quadratic_form(&ScalarAtom::xlogx(), &mp, &k).unwrap();
        assert!(v.abs() < 1e-14);

        let k = CMatrix::from_element(2, 2, C64::new(1.0, 0.0));
        assert!(
            perspective_quadratic_form(&ScalarAtom::xlogx(), &mp, &CMatrix::identity(3, 3))
                .is_err()
        );
        assert!(perspective_quadratic_form(&ScalarAtom::xlogx(), &mp, &k).is_ok());
    }
}
