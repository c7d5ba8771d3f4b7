//! Work extraction from ensembles of identical finite-level quantum
//! systems: diagonal ensemble states, the sorted-pairing work optimum,
//! transposition protocols (direct, non-entangling indirect chains,
//! hybrids, ladders), closed-form lower bounds on the multipartite
//! entanglement those protocols generate, and the microcanonical and
//! passive-power scenarios built on top.
//!
//! The simulation is exact and deterministic: states are probability
//! vectors over the product energy eigenbasis, protocols are sequences of
//! two-level transpositions, and every reported quantity has a closed
//! form or a dense linear-algebra oracle behind it.

pub mod bounds;
pub mod ensemble;
pub mod error;
pub mod paths;
pub mod scenarios;
pub mod work;

pub use bounds::{
    classify, flip_states, lambda_at, lambda_peak, lambda_peak_equal_terms, threshold_ratio_exact,
    threshold_ratio_paper, BipartitionSet, LambdaVector, SeparabilityReport,
};
pub use ensemble::{
    differing_sites, product_state, BasisLabel, CoherentPairState, DiagonalState, EnsembleShape,
    QuditHamiltonian, DENSE_CAP,
};
pub use error::{Error, Result};
pub use paths::{
    direct_plan, evolve_step, hybrid_plan, indirect_plan, ladder_plan, plan_power_report,
    separability_certificate, PathPlan, PlanKind, Schedule, SeparableDecomposition,
    TranspositionStep,
};
pub use scenarios::{
    asymptotic_work_bound, entanglement_condition, figure1_scan, microcanonical_plan,
    relative_entropy, rounded_composition, shannon_entropy, thermal_match, typical_exchange_plan,
    typical_summary,
    MicrocanonicalScenario, PassiveEnsembleScenario,
};
pub use work::{
    apply_swap, is_passive, optimal_permutation, total_energy, work_of_swap, WorkReport,
};
