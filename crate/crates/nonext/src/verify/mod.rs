//! Numerical certification of the propositions behind the divergence
//! family: sampled inequality checks with replayable witnesses, and the
//! simplex minimizer experiment.

mod checks;
mod minimize;
mod report;
mod sampling;
mod suite;

pub use checks::{
    check_argument_convexity, check_joint_convexity, check_jtqd_bounds,
    check_q_convexity_monotonicity, check_q_jensen, check_suyari_axioms,
};
pub use minimize::{minimize_jtqd_first_arg, MinimizeOutcome};
pub use report::{CheckReport, Verdict};
pub use sampling::{default_q_grid, SamplingPlan, SimplexSampler};
pub use suite::{run_suite, suite_check_names};
