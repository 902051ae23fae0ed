//! Seeded campaigns: per-trial seed derivation, redraws, parallel execution
//! and report aggregation.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::atoms::{lookup_atom, ScalarAtom};
use crate::commuting::CommutingPair;
use crate::encoding;
use crate::error::{Error, Result};
use crate::functionals::{self, DensityMatrix, ProbabilityVector};
use crate::linalg::{CMatrix, HermitianMatrix};
use crate::verify::checks::{self, CheckOutcome};
use crate::verify::generate::{self, TrialRng};

/// Redraws allowed per trial when an instance leaves an atom's domain.
pub const MAX_REDRAWS: usize = 100;
/// A negative-control campaign succeeds only with a violation below this.
pub const NEGATIVE_CONTROL_MARGIN: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremTag {
    #[serde(rename = "hp")]
    Hp,
    #[serde(rename = "hp-contractive")]
    HpContractive,
    #[serde(rename = "perspective")]
    Perspective,
    #[serde(rename = "marechal")]
    Marechal,
    #[serde(rename = "rel-entropy-convexity")]
    RelEntropyConvexity,
    #[serde(rename = "lieb-s")]
    LiebS,
    #[serde(rename = "lieb-pq")]
    LiebPq,
    #[serde(rename = "classical")]
    Classical,
}

impl TheoremTag {
    pub const ALL: [TheoremTag; 8] = [
        TheoremTag::Hp,
        TheoremTag::HpContractive,
        TheoremTag::Perspective,
        TheoremTag::Marechal,
        TheoremTag::RelEntropyConvexity,
        TheoremTag::LiebS,
        TheoremTag::LiebPq,
        TheoremTag::Classical,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            TheoremTag::Hp => "hp",
            TheoremTag::HpContractive => "hp-contractive",
            TheoremTag::Perspective => "perspective",
            TheoremTag::Marechal => "marechal",
            TheoremTag::RelEntropyConvexity => "rel-entropy-convexity",
            TheoremTag::LiebS => "lieb-s",
            TheoremTag::LiebPq => "lieb-pq",
            TheoremTag::Classical => "classical",
        }
    }

    fn code(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for TheoremTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for TheoremTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.tag() == s)
            .ok_or_else(|| Error::Config(format!("unknown theorem tag `{s}`")))
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub const SEED_RULE: &str =
    "trial seed = splitmix64(splitmix64(splitmix64(seed) ^ theorem_code) ^ trial_index); \
     redraw r > 0 uses splitmix64(trial_seed ^ splitmix64(r))";

/// Stable per-trial seed from (campaign seed, theorem, trial index).
pub fn trial_seed(seed: u64, theorem: TheoremTag, index: usize) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ theorem.code()) ^ index as u64)
}

/// Seed of the `r`-th redraw of a trial; redraw 0 is the trial seed itself.
pub fn redraw_seed(trial_seed: u64, r: usize) -> u64 {
    if r == 0 {
        trial_seed
    } else {
        splitmix64(trial_seed ^ splitmix64(r as u64))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<f64>,
}

impl AtomSpec {
    pub fn new(name: &str, parameter: Option<f64>) -> Self {
        Self {
            name: name.to_string(),
            parameter,
        }
    }

    pub fn resolve(&self) -> Result<ScalarAtom> {
        lookup_atom(&self.name, self.parameter)
    }
}

impl From<&ScalarAtom> for AtomSpec {
    fn from(a: &ScalarAtom) -> Self {
        Self::new(a.name(), a.parameter)
    }
}

/// How the mixing weight `c` is chosen per trial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CPolicy {
    /// Trials 0, 1, 2 use `c = 0, 1/2, 1`; later trials draw `c` uniformly.
    EndpointsThenUniform,
    Uniform,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub dim_n: usize,
    /// Row count of the Jensen blocks; defaults to `dim_n`.
    pub dim_m: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub floor: f64,
    /// Scalar function under test; theorem default when absent.
    pub f: Option<AtomSpec>,
    /// Concave weight of the extended perspective; `power(0.5)` when absent.
    pub h: Option<AtomSpec>,
    pub s: f64,
    pub p: f64,
    pub q: f64,
    /// Upper bound of the contraction factor.
    pub shrink: f64,
    pub c_policy: CPolicy,
    pub negative_control: bool,
}

impl Default for TrialConfig {
    fn default() -> Self {
        Self {
            dim_n: 3,
            dim_m: None,
            trials: 200,
            seed: 0,
            tol: 1e-8,
            floor: 1e-8,
            f: None,
            h: None,
            s: 0.5,
            p: 0.3,
            q: 0.4,
            shrink: 1.0,
            c_policy: CPolicy::EndpointsThenUniform,
            negative_control: false,
        }
    }
}

/// A configuration checked against one theorem, atoms resolved.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub theorem: TheoremTag,
    pub config: TrialConfig,
    pub f: ScalarAtom,
    pub h: ScalarAtom,
}

impl TrialConfig {
    pub fn dim_m(&self) -> usize {
        self.dim_m.unwrap_or(self.dim_n)
    }

    pub fn resolve(&self, theorem: TheoremTag) -> Result<Resolved> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.trials == 0 {
            return bad("trials must be >= 1".into());
        }
        if self.dim_n == 0 || self.dim_m() == 0 {
            return bad("dimensions must be >= 1".into());
        }
        if !(self.tol > 0.0) {
            return bad(format!("tol must be > 0, got {}", self.tol));
        }
        if !(self.floor > 0.0 && self.floor < generate::SPECTRUM_MAX) {
            return bad(format!("floor must lie in (0, 10), got {}", self.floor));
        }
        let f = match &self.f {
            Some(spec) => spec.resolve()?,
            None => ScalarAtom::xlogx(),
        };
        let h = match &self.h {
            Some(spec) => spec.resolve()?,
            None => ScalarAtom::power(0.5)?,
        };
        match theorem {
            TheoremTag::Hp | TheoremTag::HpContractive => {
                if 2 * self.dim_m() < self.dim_n {
                    return bad(format!(
                        "need 2m >= n, got m = {}, n = {}",
                        self.dim_m(),
                        self.dim_n
                    ));
                }
                if theorem == TheoremTag::HpContractive {
                    if !f.f0_nonpositive {
                        return bad(format!(
                            "`{f}` lacks f(0) <= 0, required by the contractive inequality"
                        ));
                    }
                    if !(self.shrink > 0.0 && self.shrink <= 1.0) {
                        return bad(format!("shrink must lie in (0, 1], got {}", self.shrink));
                    }
                }
            }
            TheoremTag::Perspective => {
                if !(f.operator_convex || f.operator_concave) {
                    return bad(format!("`{f}` carries no operator convexity flag"));
                }
                if !f.domain.is_nonnegative() && !f.domain.contains(0.0) {
                    return bad(format!(
                        "`{f}` is not defined on quotients of positive pairs"
                    ));
                }
            }
            TheoremTag::Marechal => {
                if !(f.operator_convex && f.f0_nonpositive) {
                    return bad(format!("`{f}` must be operator convex with f(0) <= 0"));
                }
                if !h.operator_concave {
                    return bad(format!("`{h}` must be operator concave"));
                }
            }
            TheoremTag::LiebS => {
                if !(self.s > 0.0 && self.s < 1.0) {
                    return bad(format!("s must lie in (0, 1), got {}", self.s));
                }
            }
            TheoremTag::LiebPq => functionals::check_pq(self.p, self.q)?,
            TheoremTag::RelEntropyConvexity | TheoremTag::Classical => {}
        }
        Ok(Resolved {
            theorem,
            config: self.clone(),
            f,
            h,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairWitness {
    pub l: HermitianMatrix,
    pub r: HermitianMatrix,
    pub lambda: Vec<f64>,
    pub mu: Vec<f64>,
}

impl From<&CommutingPair> for PairWitness {
    fn from(p: &CommutingPair) -> Self {
        Self {
            l: p.left(),
            r: p.right(),
            lambda: p.lambda().to_vec(),
            mu: p.mu().to_vec(),
        }
    }
}

/// The full instance of one trial, in the repo matrix encoding.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Instance {
    Jensen {
        atom: String,
        #[serde(with = "encoding::rect")]
        a: CMatrix,
        #[serde(with = "encoding::rect")]
        b: CMatrix,
        t: HermitianMatrix,
        #[serde(skip_serializing_if = "Option::is_none")]
        contraction_factor: Option<f64>,
    },
    PairConvexity {
        atom: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        h: Option<String>,
        c: f64,
        pair1: PairWitness,
        pair2: PairWitness,
    },
    RelativeEntropy {
        c: f64,
        rho1: HermitianMatrix,
        sigma1: HermitianMatrix,
        rho2: HermitianMatrix,
        sigma2: HermitianMatrix,
    },
    Lieb {
        c: f64,
        #[serde(skip_serializing_if = "Option::is_none")]
        s: Option<f64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        p: Option<f64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        q: Option<f64>,
        a1: HermitianMatrix,
        b1: HermitianMatrix,
        a2: HermitianMatrix,
        b2: HermitianMatrix,
        #[serde(with = "encoding::cmatrix")]
        k: CMatrix,
    },
    Classical {
        atom: String,
        c: f64,
        x1: f64,
        t1: f64,
        x2: f64,
        t2: f64,
        p1: ProbabilityVector,
        p2: ProbabilityVector,
        q1: ProbabilityVector,
        q2: ProbabilityVector,
        perspective_gap: f64,
        entropy_gap: f64,
        relative_entropy_gap: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub trial_index: usize,
    /// Seed that generated the evaluated instance (after redraws).
    pub seed: u64,
    pub redraws: usize,
    pub slack: f64,
    pub scale: f64,
    pub passed: bool,
    pub instance: Instance,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub trial_index: usize,
    pub seed: u64,
    pub slack: f64,
    pub scale: f64,
    pub instance: Instance,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub theorem: TheoremTag,
    pub negative_control: bool,
    pub trials: usize,
    pub failures: usize,
    pub redraws: usize,
    pub worst_slack: f64,
    pub worst_scale: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub witness: Option<Witness>,
    pub seed_rule: String,
    pub config: TrialConfig,
}

impl CheckReport {
    fn aggregate(resolved: &Resolved, outcomes: Vec<TrialOutcome>) -> Self {
        let cfg = &resolved.config;
        let failures = outcomes.iter().filter(|o| !o.passed).count();
        let redraws = outcomes.iter().map(|o| o.redraws).sum();
        let key = |o: &TrialOutcome| {
            if o.slack.is_nan() {
                f64::NEG_INFINITY
            } else {
                o.slack
            }
        };
        // minimum slack, lowest index on ties
        let worst = outcomes
            .into_iter()
            .reduce(|best, o| if key(&o) < key(&best) { o } else { best })
            .expect("trials >= 1");
        let passed = if cfg.negative_control {
            failures > 0 && worst.slack < -NEGATIVE_CONTROL_MARGIN
        } else {
            failures == 0
        };
        CheckReport {
            theorem: resolved.theorem,
            negative_control: cfg.negative_control,
            trials: cfg.trials,
            failures,
            redraws,
            worst_slack: worst.slack,
            worst_scale: worst.scale,
            tolerance: cfg.tol,
            passed,
            witness: Some(Witness {
                trial_index: worst.trial_index,
                seed: worst.seed,
                slack: worst.slack,
                scale: worst.scale,
                instance: worst.instance,
            }),
            seed_rule: SEED_RULE.to_string(),
            config: cfg.clone(),
        }
    }
}

fn mixing_weight(rng: &mut TrialRng, policy: CPolicy, index: usize) -> f64 {
    let drawn: f64 = rng.random();
    match (policy, index) {
        (CPolicy::EndpointsThenUniform, 0) => 0.0,
        (CPolicy::EndpointsThenUniform, 1) => 0.5,
        (CPolicy::EndpointsThenUniform, 2) => 1.0,
        _ => drawn,
    }
}

fn classical_point(rng: &mut TrialRng, f: &ScalarAtom) -> (f64, f64) {
    let x = if f.domain.is_nonnegative() {
        10.0 * rng.random::<f64>()
    } else {
        10.0 * (2.0 * rng.random::<f64>() - 1.0)
    };
    let t = 0.1 + 9.9 * rng.random::<f64>();
    (x, t)
}

/// Generates and checks the instance of `seed` for trial `index`, without redraws.
pub fn evaluate_trial(resolved: &Resolved, index: usize, seed: u64) -> Result<TrialOutcome> {
    let cfg = &resolved.config;
    let (n, floor, tol) = (cfg.dim_n, cfg.floor, cfg.tol);
    let f = &resolved.f;
    let mut rng = generate::rng_from_seed(seed);
    let (outcome, instance): (CheckOutcome, Instance) = match resolved.theorem {
        TheoremTag::Hp | TheoremTag::HpContractive => {
            let m = cfg.dim_m();
            let (a, b, factor) = if resolved.theorem == TheoremTag::Hp {
                let (a, b) = generate::random_isometry_pair_with(&mut rng, m, n)?;
                (a, b, None)
            } else {
                let (a, b, k) = generate::random_contraction_pair_with(&mut rng, m, n, cfg.shrink)?;
                (a, b, Some(k))
            };
            let t = generate::random_hermitian_in(&mut rng, m, &f.domain, floor);
            let out = if resolved.theorem == TheoremTag::Hp {
                checks::check_hansen_pedersen(f, &a, &b, &t, tol)?
            } else {
                checks::check_hansen_pedersen_contractive(f, &a, &b, &t, tol)?
            };
            let inst = Instance::Jensen {
                atom: f.label(),
                a,
                b,
                t,
                contraction_factor: factor,
            };
            (out, inst)
        }
        TheoremTag::Perspective | TheoremTag::Marechal => {
            let c = mixing_weight(&mut rng, cfg.c_policy, index);
            let p1 = generate::random_commuting_pair(&mut rng, n, floor)?;
            let p2 = generate::random_commuting_pair(&mut rng, n, floor)?;
            let (out, h) = if resolved.theorem == TheoremTag::Perspective {
                (
                    checks::check_perspective_joint_convexity(f, &p1, &p2, c, tol)?,
                    None,
                )
            } else {
                let h = &resolved.h;
                (
                    checks::check_marechal_joint_convexity(f, h, &p1, &p2, c, tol)?,
                    Some(h.label()),
                )
            };
            let inst = Instance::PairConvexity {
                atom: f.label(),
                h,
                c,
                pair1: (&p1).into(),
                pair2: (&p2).into(),
            };
            (out, inst)
        }
        TheoremTag::RelEntropyConvexity => {
            let c = mixing_weight(&mut rng, cfg.c_policy, index);
            let mut draw = || generate::random_density_with(&mut rng, n, floor);
            let (rho1, sigma1, rho2, sigma2) = (draw(), draw(), draw(), draw());
            let out = checks::check_relative_entropy_joint_convexity(
                &rho1, &sigma1, &rho2, &sigma2, c, tol,
            )?;
            let m = |d: DensityMatrix| d.matrix().clone();
            let inst = Instance::RelativeEntropy {
                c,
                rho1: m(rho1),
                sigma1: m(sigma1),
                rho2: m(rho2),
                sigma2: m(sigma2),
            };
            (out, inst)
        }
        TheoremTag::LiebS | TheoremTag::LiebPq => {
            let c = mixing_weight(&mut rng, cfg.c_policy, index);
            let mut draw = || generate::random_positive(&mut rng, n, floor);
            let (a1, b1, a2, b2) = (draw(), draw(), draw(), draw());
            let k = generate::complex_gaussian(&mut rng, n, n);
            let (out, s, p, q) = if resolved.theorem == TheoremTag::LiebS {
                let out = checks::check_lieb_concavity(&a1, &b1, &a2, &b2, &k, cfg.s, c, tol)?;
                (out, Some(cfg.s), None, None)
            } else {
                let out =
                    checks::check_lieb_pq_concavity(&a1, &b1, &a2, &b2, &k, cfg.p, cfg.q, c, tol)?;
                (out, None, Some(cfg.p), Some(cfg.q))
            };
            let inst = Instance::Lieb {
                c,
                s,
                p,
                q,
                a1,
                b1,
                a2,
                b2,
                k,
            };
            (out, inst)
        }
        TheoremTag::Classical => {
            let c = mixing_weight(&mut rng, cfg.c_policy, index);
            let (x1, t1) = classical_point(&mut rng, f);
            let (x2, t2) = classical_point(&mut rng, f);
            let p1 = generate::random_probability(&mut rng, n);
            let p2 = generate::random_probability(&mut rng, n);
            let q1 = generate::random_probability(&mut rng, n);
            let q2 = generate::random_probability(&mut rng, n);
            let persp = checks::check_classical_perspective_convexity(f, x1, t1, x2, t2, c, tol)?;
            let ent = checks::check_classical_entropy_concavity(&p1, &p2, c, tol)?;
            let rel =
                checks::check_classical_relative_entropy_convexity(&q1, &p1, &q2, &p2, c, tol)?;
            let slack = persp.slack.min(ent.slack).min(rel.slack);
            let out = CheckOutcome {
                slack,
                scale: 1.0,
                passed: persp.passed && ent.passed && rel.passed,
            };
            let inst = Instance::Classical {
                atom: f.label(),
                c,
                x1,
                t1,
                x2,
                t2,
                p1,
                p2,
                q1,
                q2,
                perspective_gap: persp.slack,
                entropy_gap: ent.slack,
                relative_entropy_gap: rel.slack,
            };
            (out, inst)
        }
    };
    Ok(TrialOutcome {
        trial_index: index,
        seed,
        redraws: 0,
        slack: outcome.slack,
        scale: outcome.scale,
        passed: outcome.passed,
        instance,
    })
}

/// One trial with its derived seed, redrawing on domain or positivity rejections.
pub fn run_trial(resolved: &Resolved, index: usize) -> Result<TrialOutcome> {
    let base = trial_seed(resolved.config.seed, resolved.theorem, index);
    for r in 0..=MAX_REDRAWS {
        match evaluate_trial(resolved, index, redraw_seed(base, r)) {
            Ok(mut o) => {
                o.redraws = r;
                return Ok(o);
            }
            Err(e) if e.is_recoverable() => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Config(format!(
        "{} trial {index}: no admissible instance after {MAX_REDRAWS} redraws",
        resolved.theorem
    )))
}

/// Re-evaluates a witness from its recorded seed and trial index.
pub fn replay_witness(
    theorem: TheoremTag,
    config: &TrialConfig,
    witness: &Witness,
) -> Result<TrialOutcome> {
    evaluate_trial(&config.resolve(theorem)?, witness.trial_index, witness.seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Serial,
    Parallel,
}

pub fn run_theorem(resolved: &Resolved, execution: Execution) -> Result<CheckReport> {
    let trials = resolved.config.trials;
    let outcomes: Vec<TrialOutcome> = match execution {
        Execution::Serial => (0..trials)
            .map(|i| run_trial(resolved, i))
            .collect::<Result<_>>()?,
        Execution::Parallel => (0..trials)
            .into_par_iter()
            .map(|i| run_trial(resolved, i))
            .collect::<Result<_>>()?,
    };
    Ok(CheckReport::aggregate(resolved, outcomes))
}

/// Runs every selected theorem. All configurations are validated before the
/// first trial.
pub fn run_campaign(config: &TrialConfig, theorems: &[TheoremTag]) -> Result<Vec<CheckReport>> {
    run_campaign_with(config, theorems, Execution::Parallel)
}

pub fn run_campaign_with(
    config: &TrialConfig,
    theorems: &[TheoremTag],
    execution: Execution,
) -> Result<Vec<CheckReport>> {
    let resolved = theorems
        .iter()
        .map(|&t| config.resolve(t))
        .collect::<Result<Vec<_>>>()?;
    resolved.iter().map(|r| run_theorem(r, execution)).collect()
}

/// Report JSON: a single object for one report, an array otherwise.
pub fn reports_to_json(reports: &[CheckReport]) -> String {
    let out = if reports.len() == 1 {
        serde_json::to_string_pretty(&reports[0])
    } else {
        serde_json::to_string_pretty(reports)
    };
    out.expect("reports are always serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for t in TheoremTag::ALL {
            assert_eq!(t.tag().parse::<TheoremTag>().unwrap(), t);
            assert_eq!(
                serde_json::to_string(&t).unwrap(),
                format!("\"{}\"", t.tag())
            );
        }
        assert!("bogus".parse::<TheoremTag>().is_err());
    }

    #[test]
    fn seeds_depend_on_all_inputs() {
        let s = trial_seed(7, TheoremTag::Hp, 0);
        assert_ne!(s, trial_seed(8, TheoremTag::Hp, 0));
        assert_ne!(s, trial_seed(7, TheoremTag::HpContractive, 0));
        assert_ne!(s, trial_seed(7, TheoremTag::Hp, 1));
        assert_eq!(redraw_seed(s, 0), s);
        assert_ne!(redraw_seed(s, 1), s);
    }

    #[test]
    fn empty_selection_gives_empty_report() {
        assert!(run_campaign(&TrialConfig::default(), &[])
            .unwrap()
            .is_empty());
    }

    #[test]
    fn config_errors_surface_before_trials() {
        let cfg = TrialConfig {
            trials: 0,
            ..TrialConfig::default()
        };
        assert!(matches!(
            run_campaign(&cfg, &[TheoremTag::Hp]),
            Err(Error::Config(_))
        ));

        let cfg = TrialConfig {
            f: Some(AtomSpec::new("neg_log", None)),
            ..TrialConfig::default()
        };
        assert!(cfg.resolve(TheoremTag::Hp).is_ok());
        assert!(cfg.resolve(TheoremTag::HpContractive).is_err());

        let cfg = TrialConfig {
            p: 0.7,
            q: 0.7,
            ..TrialConfig::default()
        };
        assert!(cfg.resolve(TheoremTag::LiebPq).is_err());

        let cfg = TrialConfig {
            dim_n: 5,
            dim_m: Some(2),
            ..TrialConfig::default()
        };
        assert!(cfg.resolve(TheoremTag::Hp).is_err());
    }

    #[test]
    fn mixing_weight_policy() {
        let mut rng = generate::rng_from_seed(0);
        assert_eq!(
            mixing_weight(&mut rng, CPolicy::EndpointsThenUniform, 0),
            0.0
        );
        assert_eq!(
            mixing_weight(&mut rng, CPolicy::EndpointsThenUniform, 1),
            0.5
        );
        assert_eq!(
            mixing_weight(&mut rng, CPolicy::EndpointsThenUniform, 2),
            1.0
        );
        let c = mixing_weight(&mut rng, CPolicy::EndpointsThenUniform, 3);
        assert!((0.0..1.0).contains(&c));
    }

    #[test]
    fn worst_slack_is_monotone_in_trial_count() {
        let mut last = f64::INFINITY;
        for trials in [5, 20, 60] {
            let cfg = TrialConfig {
                trials,
                seed: 3,
                ..TrialConfig::default()
            };
            let r = run_campaign_with(&cfg, &[TheoremTag::Hp], Execution::Serial).unwrap();
            assert!(r[0].worst_slack <= last);
            last = r[0].worst_slack;
        }
    }
}
