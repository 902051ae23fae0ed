//! Randomized verification of the Jensen, perspective, relative entropy and
//! Lieb inequalities.

pub mod campaign;
pub mod checks;
pub mod generate;

pub use campaign::{
    evaluate_trial, replay_witness, reports_to_json, run_campaign, run_campaign_with, run_trial,
    trial_seed, AtomSpec, CPolicy, CheckReport, Execution, Instance, TheoremTag, TrialConfig,
    TrialOutcome, Witness,
};
pub use checks::*;
pub use generate::{random_contraction_pair, random_density, random_isometry_pair};
