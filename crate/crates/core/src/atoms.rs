//! Scalar functions with operator convexity metadata.
//!
//! The flags are recorded facts about each function, not proofs. The
//! `verify` module treats them as hypotheses and stress-tests them; `quartic`
//! is convex on the line but not operator convex and serves as the negative
//! control.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for membership at closed domain endpoints.
pub const DOMAIN_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AtomKind {
    Xlogx,
    NegPower,
    Power,
    NegLog,
    Square,
    Identity,
    Constant,
    Quartic,
}

impl AtomKind {
    pub const ALL: [AtomKind; 8] = [
        AtomKind::Xlogx,
        AtomKind::NegPower,
        AtomKind::Power,
        AtomKind::NegLog,
        AtomKind::Square,
        AtomKind::Identity,
        AtomKind::Constant,
        AtomKind::Quartic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AtomKind::Xlogx => "xlogx",
            AtomKind::NegPower => "neg_power",
            AtomKind::Power => "power",
            AtomKind::NegLog => "neg_log",
            AtomKind::Square => "square",
            AtomKind::Identity => "identity",
            AtomKind::Constant => "constant",
            AtomKind::Quartic => "quartic",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            AtomKind::Xlogx => "x log x, 0 at x = 0",
            AtomKind::NegPower => "-x^s, 0 < s < 1",
            AtomKind::Power => "x^t, 0 < t <= 1",
            AtomKind::NegLog => "-log x",
            AtomKind::Square => "x^2",
            AtomKind::Identity => "x",
            AtomKind::Constant => "c",
            AtomKind::Quartic => "x^4 (not operator convex)",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        let key = name.trim().to_ascii_lowercase().replace('-', "_");
        Self::ALL.into_iter().find(|k| k.name() == key)
    }
}

/// An interval of the extended real line; endpoints may be open or closed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub const REAL_LINE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
        lo_closed: false,
        hi_closed: false,
    };
    pub const NONNEGATIVE: Interval = Interval {
        lo: 0.0,
        hi: f64::INFINITY,
        lo_closed: true,
        hi_closed: false,
    };
    pub const POSITIVE: Interval = Interval {
        lo: 0.0,
        hi: f64::INFINITY,
        lo_closed: false,
        hi_closed: false,
    };

    /// Returns the (possibly clamped) point if `x` belongs to the interval.
    pub fn admit(&self, x: f64) -> Option<f64> {
        if x.is_nan() {
            return None;
        }
        let x = if x < self.lo {
            if self.lo_closed && x >= self.lo - DOMAIN_TOL {
                self.lo
            } else {
                return None;
            }
        } else if x == self.lo && !self.lo_closed {
            return None;
        } else {
            x
        };
        if x > self.hi {
            if self.hi_closed && x <= self.hi + DOMAIN_TOL {
                return Some(self.hi);
            }
            return None;
        }
        if x == self.hi && !self.hi_closed {
            return None;
        }
        Some(x)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.admit(x).is_some()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.lo >= 0.0
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_closed { '[' } else { '(' };
        let close = if self.hi_closed { ']' } else { ')' };
        let end = |v: f64| {
            if v == f64::INFINITY {
                "inf".to_string()
            } else if v == f64::NEG_INFINITY {
                "-inf".to_string()
            } else {
                v.to_string()
            }
        };
        write!(f, "{open}{}, {}{close}", end(self.lo), end(self.hi))
    }
}

/// A scalar function on an interval plus its matrix convexity metadata.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarAtom {
    pub kind: AtomKind,
    pub parameter: Option<f64>,
    pub domain: Interval,
    pub operator_convex: bool,
    pub operator_concave: bool,
    /// `f(0) <= 0`, by continuous extension where 0 is a boundary point.
    pub f0_nonpositive: bool,
    pub strictly_positive_required: bool,
}

impl ScalarAtom {
    pub fn xlogx() -> Self {
        Self {
            kind: AtomKind::Xlogx,
            parameter: None,
            domain: Interval::NONNEGATIVE,
            operator_convex: true,
            operator_concave: false,
            f0_nonpositive: true,
            strictly_positive_required: false,
        }
    }

    pub fn neg_power(s: f64) -> Result<Self> {
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::ParameterOutOfRange {
                atom: "neg_power".into(),
                parameter: Some(s),
                expected: "0 < s < 1",
            });
        }
        Ok(Self {
            kind: AtomKind::NegPower,
            parameter: Some(s),
            domain: Interval::NONNEGATIVE,
            operator_convex: true,
            operator_concave: false,
            f0_nonpositive: true,
            strictly_positive_required: false,
        })
    }

    pub fn power(t: f64) -> Result<Self> {
        if !(t > 0.0 && t <= 1.0) {
            return Err(Error::ParameterOutOfRange {
                atom: "power".into(),
                parameter: Some(t),
                expected: "0 < t <= 1",
            });
        }
        Ok(Self {
            kind: AtomKind::Power,
            parameter: Some(t),
            domain: Interval::POSITIVE,
            // t = 1 is the identity on (0, inf), which is affine
            operator_convex: t == 1.0,
            operator_concave: true,
            f0_nonpositive: true,
            strictly_positive_required: true,
        })
    }

    pub fn neg_log() -> Self {
        Self {
            kind: AtomKind::NegLog,
            parameter: None,
            domain: Interval::POSITIVE,
            operator_convex: true,
            operator_concave: false,
            f0_nonpositive: false,
            strictly_positive_required: true,
        }
    }

    pub fn square() -> Self {
        Self {
            kind: AtomKind::Square,
            parameter: None,
            domain: Interval::REAL_LINE,
            operator_convex: true,
            operator_concave: false,
            f0_nonpositive: true,
            strictly_positive_required: false,
        }
    }

    pub fn identity() -> Self {
        Self {
            kind: AtomKind::Identity,
            parameter: None,
            domain: Interval::REAL_LINE,
            operator_convex: true,
            operator_concave: true,
            f0_nonpositive: true,
            strictly_positive_required: false,
        }
    }

    pub fn constant(c: f64) -> Result<Self> {
        if !c.is_finite() {
            return Err(Error::ParameterOutOfRange {
                atom: "constant".into(),
                parameter: Some(c),
                expected: "finite c",
            });
        }
        Ok(Self {
            kind: AtomKind::Constant,
            parameter: Some(c),
            domain: Interval::REAL_LINE,
            operator_convex: true,
            operator_concave: true,
            f0_nonpositive: c <= 0.0,
            strictly_positive_required: false,
        })
    }

    pub fn quartic() -> Self {
        Self {
            kind: AtomKind::Quartic,
            parameter: None,
            domain: Interval::REAL_LINE,
            operator_convex: false,
            operator_concave: false,
            f0_nonpositive: true,
            strictly_positive_required: false,
        }
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    /// `name` or `name(parameter)`.
    pub fn label(&self) -> String {
        match self.parameter {
            Some(p) => format!("{}({p})", self.name()),
            None => self.name().to_string(),
        }
    }

    pub fn is_affine(&self) -> bool {
        match self.kind {
            AtomKind::Identity | AtomKind::Constant => true,
            AtomKind::Power => self.parameter == Some(1.0),
            _ => false,
        }
    }

    /// Closed-form value, no domain check.
    pub fn value_at(&self, x: f64) -> f64 {
        let p = self.parameter.unwrap_or(0.0);
        match self.kind {
            AtomKind::Xlogx => {
                if x == 0.0 {
                    0.0
                } else {
                    x * x.ln()
                }
            }
            AtomKind::NegPower => -x.powf(p),
            AtomKind::Power => x.powf(p),
            AtomKind::NegLog => -x.ln(),
            AtomKind::Square => x * x,
            AtomKind::Identity => x,
            AtomKind::Constant => p,
            AtomKind::Quartic => {
                let x2 = x * x;
                x2 * x2
            }
        }
    }

    /// Checked evaluation with endpoint clamping.
    pub fn eval(&self, x: f64) -> Result<f64> {
        match self.domain.admit(x) {
            Some(x) => Ok(self.value_at(x)),
            None => Err(Error::DomainViolation {
                atom: self.label(),
                domain: self.domain.to_string(),
                value: x,
            }),
        }
    }
}

impl fmt::Display for ScalarAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Looks up a registry atom; parametric families require a parameter in range.
pub fn lookup_atom(name: &str, parameter: Option<f64>) -> Result<ScalarAtom> {
    let kind = AtomKind::from_name(name).ok_or_else(|| Error::UnknownAtom(name.to_string()))?;
    let needs = |expected: &'static str| Error::ParameterOutOfRange {
        atom: kind.name().into(),
        parameter,
        expected,
    };
    match kind {
        AtomKind::NegPower => ScalarAtom::neg_power(parameter.ok_or_else(|| needs("0 < s < 1"))?),
        AtomKind::Power => ScalarAtom::power(parameter.ok_or_else(|| needs("0 < t <= 1"))?),
        AtomKind::Constant => ScalarAtom::constant(parameter.ok_or_else(|| needs("finite c"))?),
        _ if parameter.is_some() => Err(needs("no parameter")),
        AtomKind::Xlogx => Ok(ScalarAtom::xlogx()),
        AtomKind::NegLog => Ok(ScalarAtom::neg_log()),
        AtomKind::Square => Ok(ScalarAtom::square()),
        AtomKind::Identity => Ok(ScalarAtom::identity()),
        AtomKind::Quartic => Ok(ScalarAtom::quartic()),
    }
}

pub fn eval_atom(f: &ScalarAtom, x: f64) -> Result<f64> {
    f.eval(x)
}

/// Representative members of every registry family, for listings and sweeps.
pub fn registry_samples() -> Vec<ScalarAtom> {
    vec![
        ScalarAtom::xlogx(),
        ScalarAtom::neg_power(0.5).unwrap(),
        ScalarAtom::power(0.5).unwrap(),
        ScalarAtom::neg_log(),
        ScalarAtom::square(),
        ScalarAtom::identity(),
        ScalarAtom::constant(0.0).unwrap(),
        ScalarAtom::quartic(),
    ]
}
