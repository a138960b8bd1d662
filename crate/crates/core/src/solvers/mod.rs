//! End-to-end procedures built on the relaxation: the self-reduction
//! solver, the ValHom enumeration algorithm, the randomized odd-cycle
//! algorithm, and exhaustive oracles to check them against.

mod brute;
mod oddcycle;
mod unif;
mod valhom;

pub use brute::{brute_force_digraph_hom, brute_force_hom, brute_force_valhom};
pub use oddcycle::{
    algorithm_b_trial, alpha_below, alpha_bounds, alpha_power, odd_cycle_solve, sample_lists, splitmix64, trial_seed,
    OddCycleReport, TrialPlan,
    TrialRecord,
};
pub use unif::{unif_solve, SaTotals, UnifOutcome, UnifReport};
pub use valhom::{valhom_solve, SolveReport, SolveStats};
