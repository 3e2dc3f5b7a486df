//! Setup sweeps, censuses, and noisy lower bounds on lattice graph states.

pub mod lattice;
pub mod noisy;
pub mod sweep;
pub mod toric;

pub use lattice::{LatticeKind, LatticeSpec, Placement, SubsystemSpec};
pub use noisy::{critical_noise, noisy_lower_bound, placement_problem, qc_curve, Criterion, NoisyProblem, QcCurve};
pub use sweep::{census_union, code_of_setup, enumerate_setups, leg_census, lgme_over, lgme_pure, subgraph_census, Census, Measure, SweepRecord};
