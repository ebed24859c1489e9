//! Numerical certification of the propositions: q-Jensen inequalities,
//! convexity monotonicity, JTqD bounds, joint and per-argument convexity,
//! and the Suyari axioms.

use crate::divergence::jtqd;
use crate::entropy::tsallis_entropy;
use crate::measures::ProbabilityVector;
use crate::qmath::{qpow, QParameter};

use super::report::{CheckReport, WorstCase};
use super::sampling::{SamplingPlan, SimplexSampler};

// Stream ids keep each check on an independent substream of the plan seed.
const STREAM_Q_JENSEN: u64 = 1;
const STREAM_MONOTONICITY: u64 = 2;
const STREAM_BOUNDS: u64 = 3;
const STREAM_JOINT_CONVEXITY: u64 = 4;
const STREAM_ARGUMENT_CONVEXITY: u64 = 5;
const STREAM_SUYARI: u64 = 6;

fn convex_combination(
    a: &ProbabilityVector,
    b: &ProbabilityVector,
    lambda: f64,
) -> ProbabilityVector {
    let entries: Vec<f64> = a
        .iter()
        .zip(b.iter())
        .map(|(&x, &y)| lambda * x + (1.0 - lambda) * y)
        .collect();
    ProbabilityVector::new(entries).expect("convex combination stays on the simplex")
}

/// Sample the q-Jensen inequality `f(sum pi_i x_i) <= sum pi_i^q f(x_i)`
/// for a function on the simplex. The reported violation is the worst
/// `f(mixture) - q-expectation`.
pub fn check_q_jensen<F: Fn(&[f64]) -> f64>(
    name: &str,
    f: F,
    q: QParameter,
    plan: &SamplingPlan,
    tolerance: f64,
) -> CheckReport {
    let mut sampler = SimplexSampler::from_plan(plan, STREAM_Q_JENSEN);
    let mut worst = WorstCase::new();
    let qv = q.value();
    for _ in 0..plan.trials {
        let m = sampler.size(plan.m_range);
        let n = sampler.size(plan.n_range);
        let weights = sampler.mixed(m);
        let points: Vec<ProbabilityVector> = (0..m).map(|_| sampler.mixed(n)).collect();
        let mix = crate::measures::mixture(&weights, &points)
            .expect("sampled weights and points are dimension-consistent");
        let rhs: f64 = weights
            .iter()
            .zip(&points)
            .map(|(&w, x)| qpow(w, qv) * f(x))
            .sum();
        let violation = f(&mix) - rhs;
        worst.observe(violation, || {
            format!(
                "q={qv} weights={:?} points={:?}",
                weights.entries(),
                points
                    .iter()
                    .map(|p| p.entries().to_vec())
                    .collect::<Vec<_>>()
            )
        });
    }
    worst.into_report(name, tolerance)
}

/// Sample both implications of the convexity-monotonicity proposition for
/// a nonnegative `f` and indices `q >= q_prime >= 0`:
/// where two-point q-convexity of `f` holds, q'-convexity must hold, and
/// where two-point q'-convexity of `-f` holds, q-convexity of `-f` must.
pub fn check_q_convexity_monotonicity<F: Fn(&[f64]) -> f64>(
    name: &str,
    f: F,
    q: f64,
    q_prime: f64,
    plan: &SamplingPlan,
    tolerance: f64,
) -> CheckReport {
    assert!(
        q >= q_prime && q_prime >= 0.0,
        "requires q >= q' >= 0, got q={q}, q'={q_prime}"
    );
    let mut sampler = SimplexSampler::from_plan(plan, STREAM_MONOTONICITY);
    let mut worst = WorstCase::new();
    for trial in 0..plan.trials {
        let n = sampler.size(plan.n_range);
        let x = sampler.mixed(n);
        let y = sampler.mixed(n);
        let lambda = match trial {
            0 => 0.0,
            1 => 1.0,
            _ => sampler.uniform01(),
        };
        let fx = f(&x);
        let fy = f(&y);
        if fx < 0.0 || fy < 0.0 {
            return CheckReport::new(
                name,
                worst.samples,
                f64::INFINITY,
                format!(
                    "precondition violated: f must be nonnegative, \
                     f({:?}) = {}",
                    if fx < 0.0 { x.entries() } else { y.entries() },
                    fx.min(fy)
                ),
                tolerance,
            );
        }
        let mix = convex_combination(&x, &y, lambda);
        let fmix = f(&mix);
        let defect = |index: f64| fmix - qpow(lambda, index) * fx - qpow(1.0 - lambda, index) * fy;
        let d_q = defect(q);
        let d_qp = defect(q_prime);
        // f q-convex here => f q'-convex here.
        if d_q <= tolerance {
            worst.observe(d_qp, || {
                format!(
                    "descent at lambda={lambda}: x={:?} y={:?}",
                    x.entries(),
                    y.entries()
                )
            });
        }
        // -f q'-convex here => -f q-convex here.
        if -d_qp <= tolerance {
            worst.observe(-d_q, || {
                format!(
                    "ascent at lambda={lambda}: x={:?} y={:?}",
                    x.entries(),
                    y.entries()
                )
            });
        }
    }
    worst.into_report(name, tolerance)
}

/// Sample the JTqD bounds over the plan's q grid: the `S_q(pi)` upper bound
/// for every q, nonnegativity for q >= 1, the `S_q(pi)(1 - n^(1-q))` lower
/// bound for q <= 1, plus the three analytic equality witnesses.
pub fn check_jtqd_bounds(plan: &SamplingPlan, tolerance: f64) -> CheckReport {
    let mut sampler = SimplexSampler::from_plan(plan, STREAM_BOUNDS);
    let mut worst = WorstCase::new();
    for &qv in &plan.q_grid {
        let q = QParameter::new(qv).expect("plan grid entries are valid indices");
        for _ in 0..plan.trials {
            let m = sampler.size(plan.m_range);
            let n = sampler.size(plan.n_range);
            let weights = sampler.mixed(m);
            let args: Vec<ProbabilityVector> = (0..m).map(|_| sampler.mixed(n)).collect();
            let t = jtqd(&weights, &args, q).expect("sampled inputs are dimension-consistent");
            let s_pi = tsallis_entropy(&weights, q);
            let describe = |kind: &str| {
                format!(
                    "{kind} at q={qv}: weights={:?} args={:?}",
                    weights.entries(),
                    args.iter()
                        .map(|p| p.entries().to_vec())
                        .collect::<Vec<_>>()
                )
            };
            worst.observe(t - s_pi, || describe("upper"));
            if qv >= 1.0 {
                worst.observe(-t, || describe("nonnegativity"));
            }
            if qv <= 1.0 {
                let lower = s_pi * (1.0 - (n as f64).powf(1.0 - qv));
                worst.observe(lower - t, || describe("lower"));
            }
        }

        // Equality witnesses.
        let m = sampler.size(plan.m_range);
        let n = sampler.size(plan.n_range).max(m);
        let weights = sampler.interior(m);
        let s_pi = tsallis_entropy(&weights, q);

        let disjoint: Vec<ProbabilityVector> = (0..m)
            .map(|j| ProbabilityVector::degenerate(n, j))
            .collect();
        let t = jtqd(&weights, &disjoint, q).expect("degenerate args share support");
        worst.observe((t - s_pi).abs(), || {
            format!("disjoint-degenerate equality at q={qv}, m={m}, n={n}")
        });

        if qv >= 1.0 {
            let identical: Vec<ProbabilityVector> = (0..m)
                .map(|_| ProbabilityVector::degenerate(n, 0))
                .collect();
            let t = jtqd(&weights, &identical, q).expect("degenerate args share support");
            worst.observe(t.abs(), || {
                format!("identical-degenerate zero at q={qv}, m={m}, n={n}")
            });
        }

        if qv <= 1.0 {
            let uniforms: Vec<ProbabilityVector> =
                (0..m).map(|_| ProbabilityVector::uniform(n)).collect();
            let t = jtqd(&weights, &uniforms, q).expect("uniform args share support");
            let lower = s_pi * (1.0 - (n as f64).powf(1.0 - qv));
            worst.observe((t - lower).abs(), || {
                format!("all-uniform equality at q={qv}, m={m}, n={n}")
            });
        }
    }
    worst.into_report("bounds", tolerance)
}

/// Sample joint convexity of the JTqD for q in [0, 1]:
/// `T(lambda a + (1-lambda) b) <= lambda T(a) + (1-lambda) T(b)`.
pub fn check_joint_convexity(q: QParameter, plan: &SamplingPlan, tolerance: f64) -> CheckReport {
    assert!(
        q.value() <= 1.0,
        "joint convexity is only claimed for q in [0, 1]"
    );
    let mut sampler = SimplexSampler::from_plan(plan, STREAM_JOINT_CONVEXITY);
    let mut worst = WorstCase::new();
    let qv = q.value();
    for trial in 0..plan.trials {
        let m = sampler.size(plan.m_range);
        let n = sampler.size(plan.n_range);
        let weights = sampler.mixed(m);
        let a: Vec<ProbabilityVector> = (0..m).map(|_| sampler.mixed(n)).collect();
        let b: Vec<ProbabilityVector> = (0..m).map(|_| sampler.mixed(n)).collect();
        let lambda = match trial {
            0 => 0.0,
            1 => 1.0,
            _ => sampler.uniform01(),
        };
        let c: Vec<ProbabilityVector> = a
            .iter()
            .zip(&b)
            .map(|(ai, bi)| convex_combination(ai, bi, lambda))
            .collect();
        let t_a = jtqd(&weights, &a, q).expect("dimension-consistent");
        let t_b = jtqd(&weights, &b, q).expect("dimension-consistent");
        let t_c = jtqd(&weights, &c, q).expect("dimension-consistent");
        let violation = t_c - lambda * t_a - (1.0 - lambda) * t_b;
        worst.observe(violation, || {
            format!(
                "q={qv} lambda={lambda} weights={:?} a={:?} b={:?}",
                weights.entries(),
                a.iter().map(|p| p.entries().to_vec()).collect::<Vec<_>>(),
                b.iter().map(|p| p.entries().to_vec()).collect::<Vec<_>>()
            )
        });
    }
    worst.into_report(format!("joint-convexity[q={qv}]"), tolerance)
}

/// Per-argument convexity regime of the JTqD via central second
/// differences along random segments: convex for q <= 2, concave for
/// q >= 2, affine (both) at q = 2. The raw stencil
/// `g(t-h) - 2 g(t) + g(t+h)` is compared against `tolerance`.
pub fn check_argument_convexity(
    q: QParameter,
    plan: &SamplingPlan,
    step: f64,
    tolerance: f64,
) -> CheckReport {
    let mut sampler = SimplexSampler::from_plan(plan, STREAM_ARGUMENT_CONVEXITY);
    let mut worst = WorstCase::new();
    let qv = q.value();
    let at_two = (qv - 2.0).abs() < 1e-12;
    for _ in 0..plan.trials {
        let m = sampler.size(plan.m_range);
        let n = sampler.size(plan.n_range);
        let weights = sampler.mixed(m);
        let mut args: Vec<ProbabilityVector> = (0..m).map(|_| sampler.mixed(n)).collect();
        let k = sampler.index(m);
        // The varying argument travels between two interior points so the
        // stencil never leaves the simplex.
        let u = sampler.interior_with_margin(n, 0.2);
        let v = sampler.interior_with_margin(n, 0.2);
        let t0 = step + sampler.uniform01() * (1.0 - 2.0 * step);
        let mut g = |s: f64| {
            args[k] = convex_combination(&v, &u, s);
            jtqd(&weights, &args, q).expect("dimension-consistent")
        };
        let second_diff = g(t0 - step) - 2.0 * g(t0) + g(t0 + step);
        let violation = if at_two {
            second_diff.abs()
        } else if qv < 2.0 {
            -second_diff
        } else {
            second_diff
        };
        worst.observe(violation, || {
            format!(
                "q={qv} arg={k} t={t0} second_diff={second_diff} weights={:?} u={:?} v={:?}",
                weights.entries(),
                u.entries(),
                v.entries()
            )
        });
    }
    worst.into_report(format!("argument-convexity[q={qv}]"), tolerance)
}

/// Numerical checks of the Suyari axioms for the Tsallis entropy at one
/// index: A1 continuity (support-preserving perturbations), A2 maximality,
/// A3 generalized additivity, A4 expandability.
pub fn check_suyari_axioms(q: QParameter, plan: &SamplingPlan, tolerance: f64) -> CheckReport {
    let mut sampler = SimplexSampler::from_plan(plan, STREAM_SUYARI);
    let mut worst = WorstCase::new();
    let qv = q.value();

    for _ in 0..plan.trials {
        // A2 maximality: nothing beats the uniform distribution.
        let n = sampler.size(plan.n_range);
        let p = sampler.mixed(n);
        let cap = tsallis_entropy(&ProbabilityVector::uniform(n), q);
        worst.observe(tsallis_entropy(&p, q) - cap, || {
            format!("A2 at q={qv}: p={:?}", p.entries())
        });

        // A4 expandability: appending a zero outcome changes nothing.
        let expanded = p.expanded();
        worst.observe(
            (tsallis_entropy(&expanded, q) - tsallis_entropy(&p, q)).abs(),
            || format!("A4 at q={qv}: p={:?}", p.entries()),
        );

        // A3 generalized additivity on a random two-level partition:
        // S_q(refined) = S_q(coarse) + sum_i p_i^q S_q(within block i).
        let blocks = sampler.size((2, 4));
        let sizes: Vec<usize> = (0..blocks).map(|_| sampler.size((1, 4))).collect();
        let total: usize = sizes.iter().sum();
        let refined = sampler.interior_with_margin(total, 0.05);
        let mut coarse = Vec::with_capacity(blocks);
        let mut within = 0.0;
        let mut offset = 0;
        for &size in &sizes {
            let block = &refined[offset..offset + size];
            let mass: f64 = block.iter().sum();
            coarse.push(mass);
            let row: Vec<f64> = block.iter().map(|&x| x / mass).collect();
            let row = ProbabilityVector::new(row).expect("positive block normalizes");
            within += qpow(mass, qv) * tsallis_entropy(&row, q);
            offset += size;
        }
        let coarse = ProbabilityVector::new(coarse).expect("block masses sum to one");
        let lhs = tsallis_entropy(&refined, q);
        let rhs = tsallis_entropy(&coarse, q) + within;
        worst.observe((lhs - rhs).abs(), || {
            format!(
                "A3 at q={qv}: sizes={sizes:?} refined={:?}",
                refined.entries()
            )
        });

        // A1 continuity: moving mass h between two interior coordinates
        // moves the entropy by at most 10 h (derivative bound on the
        // sampled margin region).
        let p = sampler.interior_with_margin(n.max(2), 0.2);
        let i = sampler.index(p.len());
        let mut j = sampler.index(p.len());
        if j == i {
            j = (j + 1) % p.len();
        }
        for h in [1e-4, 1e-6] {
            let mut entries = p.entries().to_vec();
            entries[i] -= h;
            entries[j] += h;
            let perturbed =
                ProbabilityVector::new(entries).expect("perturbation preserves the simplex");
            let delta = (tsallis_entropy(&perturbed, q) - tsallis_entropy(&p, q)).abs();
            worst.observe(delta - 10.0 * h, || {
                format!("A1 at q={qv}, h={h}: p={:?} (i={i}, j={j})", p.entries())
            });
        }
    }
    worst.into_report(format!("suyari[q={qv}]"), tolerance)
}
