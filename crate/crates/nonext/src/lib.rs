//! # nonext
//!
//! Nonextensive information measures over finite alphabets: Tsallis and
//! Renyi entropies, the generalized Suyari family, relative entropies, and
//! the Jensen-difference family up to the Jensen-Tsallis q-difference
//! (JTqD), together with a numerical verification harness for the
//! inequalities and identities these measures satisfy.
//!
//! ## Layout
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`qmath`] | q-logarithm, power sums, q-expectation, the `q` index type |
//! | [`measures`] | simplex points, unnormalized measures, joints, histograms |
//! | [`entropy`] | Shannon/Tsallis/Renyi/phi-entropies, joint and mutual forms |
//! | [`divergence`] | KLD, Tsallis/Renyi relative entropies, JSD/JRD/JTD/JTqD |
//! | [`verify`] | sampled proposition checks, reports, the simplex minimizer |
//! | [`tolerances`] | the numeric thresholds behind every contract |
//!
//! ## Conventions
//!
//! Everything is in nats (k = 1). `0 ln 0 := 0` and `0^0 := 0`, so power
//! sums at q = 0 count nonzero entries. `q = 1` is handled by an exact
//! branch switch inside a `1e-9` window rather than by series expansion.
//! All values are immutable after construction and every function here is
//! pure, so the whole API is safe to use from concurrent threads.
//!
//! ## Example
//!
//! ```
//! use nonext::measures::ProbabilityVector;
//! use nonext::qmath::QParameter;
//! use nonext::divergence::jtqd2;
//!
//! let p1 = ProbabilityVector::degenerate(2, 0);
//! let p2 = ProbabilityVector::degenerate(2, 1);
//! // Disjoint vertices: the q-difference reaches S_q of the weights.
//! let t = jtqd2(&p1, &p2, QParameter::new(2.0).unwrap()).unwrap();
//! assert!((t - 0.5).abs() < 1e-12);
//! ```

pub mod divergence;
pub mod entropy;
pub mod error;
pub mod measures;
pub mod qmath;
pub mod tolerances;
pub mod verify;

pub use error::{Error, Result};
pub use measures::{JointDistribution, ProbabilityVector, UnnormalizedMeasure};
pub use qmath::QParameter;
pub use verify::{CheckReport, SamplingPlan, Verdict};
