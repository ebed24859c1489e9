//! The full proposition suite: every check the CLI `verify` command runs,
//! in a fixed order, each on its own substream of the plan seed.

use crate::divergence::{
    boolean_difference, bregman_minimizer_check, jsd, jsd2, jtqd, jtqd2, kld, linear_difference,
};
use crate::entropy::{phi_q, tsallis_entropy, tsallis_joint_entropy, tsallis_mutual_entropy};
use crate::measures::{joint_from_conditional, mixture, product, ProbabilityVector};
use crate::qmath::QParameter;
use crate::tolerances::{
    AFFINE_SECOND_DIFF_TOL, ALGEBRA_TOL, IDENTITY_TOL, INEQUALITY_TOL, SECOND_DIFF_STEP,
    SECOND_DIFF_TOL,
};

use super::checks::{
    check_argument_convexity, check_joint_convexity, check_jtqd_bounds,
    check_q_convexity_monotonicity, check_q_jensen, check_suyari_axioms,
};
use super::report::{CheckReport, WorstCase};
use super::sampling::{SamplingPlan, SimplexSampler};

const STREAM_BREGMAN: u64 = 16;
const STREAM_JSD_IDENTITY: u64 = 17;
const STREAM_MUTUAL_IDENTITY: u64 = 18;
const STREAM_FAST_PATHS: u64 = 19;
const STREAM_ENTROPY_ALGEBRA: u64 = 20;
const STREAM_METRICITY: u64 = 21;

fn q(v: f64) -> QParameter {
    QParameter::new(v).expect("suite indices are valid")
}

fn neg_tsallis(index: QParameter) -> impl Fn(&[f64]) -> f64 {
    move |m: &[f64]| -m.iter().map(|&y| phi_q(y, index)).sum::<f64>()
}

/// JSD as the expected KLD to the mixture, against the Jensen-difference
/// route.
fn check_jsd_identity(plan: &SamplingPlan) -> CheckReport {
    let mut sampler = SimplexSampler::from_plan(plan, STREAM_JSD_IDENTITY);
    let mut worst = WorstCase::new();
    for _ in 0..plan.trials {
        let m = sampler.size(plan.m_range);
        let n = sampler.size(plan.n_range);
        let weights = sampler.mixed(m);
        let args: Vec<ProbabilityVector> = (0..m).map(|_| sampler.mixed(n)).collect();
        let mix = mixture(&weights, &args).expect("dimension-consistent");
        // Zero-probability components contribute nothing to the
        // expectation, even where their KLD is infinite.
        let expected: f64 = weights
            .iter()
            .zip(&args)
            .filter(|(&w, _)| w > 0.0)
            .map(|(&w, a)| w * kld(a, &mix).expect("dimension-consistent"))
            .sum();
        let direct = jsd(&weights, &args).expect("dimension-consistent");
        worst.observe((direct - expected).abs(), || {
            format!("weights={:?} args={:?}", weights.entries(), args)
        });
    }
    worst.into_report("jsd-identity", IDENTITY_TOL)
}

/// JTqD as the Tsallis mutual entropy of the induced joint.
fn check_mutual_identity(plan: &SamplingPlan) -> CheckReport {
    let mut sampler = SimplexSampler::from_plan(plan, STREAM_MUTUAL_IDENTITY);
    let mut worst = WorstCase::new();
    for _ in 0..plan.trials {
        let m = sampler.size(plan.m_range);
        let n = sampler.size(plan.n_range);
        let prior = sampler.mixed(m);
        let rows: Vec<ProbabilityVector> = (0..m).map(|_| sampler.mixed(n)).collect();
        let joint = joint_from_conditional(&prior, &rows).expect("dimension-consistent");
        for &qv in &plan.q_grid {
            let lhs = jtqd(&prior, &rows, q(qv)).expect("dimension-consistent");
            let rhs = tsallis_mutual_entropy(&joint, q(qv));
            worst.observe((lhs - rhs).abs(), || {
                format!("q={qv} prior={:?} rows={:?}", prior.entries(), rows)
            });
        }
    }
    worst.into_report("mutual-identity", ALGEBRA_TOL)
}

/// Closed-form fast paths at q = 0, 1, 2 against the generic JTqD.
fn check_fast_paths(plan: &SamplingPlan) -> CheckReport {
    let mut sampler = SimplexSampler::from_plan(plan, STREAM_FAST_PATHS);
    let mut worst = WorstCase::new();
    for _ in 0..plan.trials {
        let n = sampler.size(plan.n_range);
        let p1 = sampler.mixed(n);
        let p2 = sampler.mixed(n);
        let cases = [
            (0.0, boolean_difference(&p1, &p2)),
            (1.0, jsd2(&p1, &p2)),
            (2.0, linear_difference(&p1, &p2)),
        ];
        for (qv, fast) in cases {
            let fast = fast.expect("dimension-consistent");
            let generic = jtqd2(&p1, &p2, q(qv)).expect("dimension-consistent");
            worst.observe((fast - generic).abs(), || {
                format!("q={qv} p1={:?} p2={:?}", p1.entries(), p2.entries())
            });
        }
    }
    worst.into_report("fast-paths", IDENTITY_TOL)
}

/// Chain rule and pseudoadditivity across the q grid.
fn check_entropy_algebra(plan: &SamplingPlan) -> CheckReport {
    let mut sampler = SimplexSampler::from_plan(plan, STREAM_ENTROPY_ALGEBRA);
    let mut worst = WorstCase::new();
    for _ in 0..plan.trials {
        let m = sampler.size(plan.m_range);
        let n = sampler.size(plan.n_range);
        let prior = sampler.mixed(m);
        let rows: Vec<ProbabilityVector> = (0..m).map(|_| sampler.mixed(n)).collect();
        let joint = joint_from_conditional(&prior, &rows).expect("dimension-consistent");
        let swapped = joint.swapped();
        let a = sampler.mixed(n);
        let n_b = sampler.size(plan.n_range);
        let b = sampler.mixed(n_b);
        for &qv in &plan.q_grid {
            let qq = q(qv);
            // Chain rule in both orientations.
            let joint_entropy = tsallis_joint_entropy(&joint, qq);
            let native = tsallis_entropy(joint.marginal_y(), qq)
                + crate::entropy::tsallis_conditional_entropy(&joint, qq);
            worst.observe((joint_entropy - native).abs(), || {
                format!("chain(native) q={qv} prior={:?}", prior.entries())
            });
            let via_swap = tsallis_entropy(swapped.marginal_y(), qq)
                + crate::entropy::tsallis_conditional_entropy(&swapped, qq);
            worst.observe((joint_entropy - via_swap).abs(), || {
                format!("chain(swapped) q={qv} prior={:?}", prior.entries())
            });
            // Pseudoadditivity on an independent product.
            let sa = tsallis_entropy(&a, qq);
            let sb = tsallis_entropy(&b, qq);
            let joint_ab = tsallis_entropy(&product(&a, &b), qq);
            let predicted = sa + sb + (1.0 - qv) * sa * sb;
            worst.observe((joint_ab - predicted).abs(), || {
                format!(
                    "pseudoadditivity q={qv} a={:?} b={:?}",
                    a.entries(),
                    b.entries()
                )
            });
        }
    }
    worst.into_report("entropy-algebra", ALGEBRA_TOL)
}

/// Triangle inequality for sqrt(JSD) on random triples.
fn check_js_metricity(plan: &SamplingPlan) -> CheckReport {
    let mut sampler = SimplexSampler::from_plan(plan, STREAM_METRICITY);
    let mut worst = WorstCase::new();
    let dist = |x: &ProbabilityVector, y: &ProbabilityVector| {
        jsd2(x, y).expect("dimension-consistent").max(0.0).sqrt()
    };
    for _ in 0..plan.trials {
        let n = sampler.size(plan.n_range);
        let a = sampler.mixed(n);
        let b = sampler.mixed(n);
        let c = sampler.mixed(n);
        let violation = dist(&a, &b) - dist(&a, &c) - dist(&c, &b);
        worst.observe(violation, || {
            format!(
                "a={:?} b={:?} c={:?}",
                a.entries(),
                b.entries(),
                c.entries()
            )
        });
    }
    worst.into_report("js-metricity", INEQUALITY_TOL)
}

/// Expected-KLD minimizer property of the mixture, against random
/// candidates (100 per instance).
fn check_bregman(plan: &SamplingPlan) -> CheckReport {
    let mut sampler = SimplexSampler::from_plan(plan, STREAM_BREGMAN);
    let mut worst = WorstCase::new();
    let instances = (plan.trials / 10).max(1);
    for _ in 0..instances {
        let m = sampler.size(plan.m_range);
        let n = sampler.size(plan.n_range);
        let weights = sampler.mixed(m);
        let args: Vec<ProbabilityVector> = (0..m).map(|_| sampler.mixed(n)).collect();
        let candidates: Vec<ProbabilityVector> = (0..100).map(|_| sampler.mixed(n)).collect();
        let report = bregman_minimizer_check(&weights, &args, &candidates, INEQUALITY_TOL)
            .expect("dimension-consistent");
        worst.observe(report.worst_violation, || report.witness.clone());
        worst.samples += report.samples - 1;
    }
    worst.into_report("bregman", INEQUALITY_TOL)
}

/// Run every check in the suite, optionally filtered by name prefix.
/// Order is fixed; each check draws from its own substream, so filtering
/// never changes the numbers a check produces.
pub fn run_suite(plan: &SamplingPlan, only: Option<&str>) -> Vec<CheckReport> {
    let mut reports: Vec<CheckReport> = Vec::new();
    let wanted = |name: &str| only.is_none_or(|prefix| name.starts_with(prefix));

    if wanted("q-jensen") {
        reports.push(check_q_jensen(
            "q-jensen[affine,q=1]",
            |m: &[f64]| 2.0 * m[0] - m[1] + 0.5,
            q(1.0),
            plan,
            INEQUALITY_TOL,
        ));
        for qv in [1.0, 1.5, 2.0, 3.0] {
            reports.push(check_q_jensen(
                &format!("q-jensen[neg-tsallis,q={qv}]"),
                neg_tsallis(q(qv)),
                q(qv),
                plan,
                INEQUALITY_TOL,
            ));
        }
        for qv in [0.25, 0.5, 0.75] {
            reports.push(check_q_jensen(
                &format!("q-jensen[concavity,q'={qv}]"),
                neg_tsallis(q(qv)),
                q(1.0),
                plan,
                INEQUALITY_TOL,
            ));
        }
    }

    if wanted("monotonicity") {
        reports.push(check_q_convexity_monotonicity(
            "monotonicity[square,q=1,q'=0.5]",
            |m: &[f64]| m.iter().map(|&x| x * x).sum::<f64>(),
            1.0,
            0.5,
            plan,
            INEQUALITY_TOL,
        ));
        reports.push(check_q_convexity_monotonicity(
            "monotonicity[tsallis,q=2,q'=1]",
            |m: &[f64]| m.iter().map(|&y| phi_q(y, q(2.0))).sum::<f64>(),
            2.0,
            1.0,
            plan,
            INEQUALITY_TOL,
        ));
        reports.push(check_q_convexity_monotonicity(
            "monotonicity[tsallis,q=3,q'=1.5]",
            |m: &[f64]| m.iter().map(|&y| phi_q(y, q(3.0))).sum::<f64>(),
            3.0,
            1.5,
            plan,
            INEQUALITY_TOL,
        ));
    }

    if wanted("bounds") {
        reports.push(check_jtqd_bounds(plan, INEQUALITY_TOL));
    }

    if wanted("joint-convexity") {
        for qv in [0.0, 0.25, 0.5, 0.75, 1.0] {
            reports.push(check_joint_convexity(q(qv), plan, INEQUALITY_TOL));
        }
    }

    if wanted("argument-convexity") {
        for qv in [0.0, 0.5, 1.0, 1.5, 2.5, 3.0] {
            reports.push(check_argument_convexity(
                q(qv),
                plan,
                SECOND_DIFF_STEP,
                SECOND_DIFF_TOL,
            ));
        }
        reports.push(check_argument_convexity(
            q(2.0),
            plan,
            SECOND_DIFF_STEP,
            AFFINE_SECOND_DIFF_TOL,
        ));
    }

    if wanted("suyari") {
        for qv in [0.0, 0.5, 1.0, 2.0, 3.0] {
            reports.push(check_suyari_axioms(q(qv), plan, ALGEBRA_TOL));
        }
    }

    if wanted("bregman") {
        reports.push(check_bregman(plan));
    }
    if wanted("jsd-identity") {
        reports.push(check_jsd_identity(plan));
    }
    if wanted("mutual-identity") {
        reports.push(check_mutual_identity(plan));
    }
    if wanted("fast-paths") {
        reports.push(check_fast_paths(plan));
    }
    if wanted("entropy-algebra") {
        reports.push(check_entropy_algebra(plan));
    }
    if wanted("js-metricity") {
        reports.push(check_js_metricity(plan));
    }

    reports
}

/// Top-level check names accepted as `run_suite` filters.
pub fn suite_check_names() -> &'static [&'static str] {
    &[
        "q-jensen",
        "monotonicity",
        "bounds",
        "joint-convexity",
        "argument-convexity",
        "suyari",
        "bregman",
        "jsd-identity",
        "mutual-identity",
        "fast-paths",
        "entropy-algebra",
        "js-metricity",
    ]
}
