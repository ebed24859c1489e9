//! Relative entropies and the Jensen-difference / Jensen-q-difference
//! family, including the Jensen-Tsallis q-difference (JTqD) and its
//! closed-form special cases at q = 0, 1, 2.

use crate::entropy::{renyi_entropy, shannon_entropy, tsallis_entropy};
use crate::error::{Error, Result};
use crate::measures::{mixture, ProbabilityVector};
use crate::qmath::{q_log_zero, qpow, QParameter};
use crate::verify::CheckReport;

type MeasureFn = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A generalized entropy used as the Psi of a Jensen (q-)difference.
/// Deterministic map from a nonnegative vector to a real.
pub struct EntropyFunctional {
    name: String,
    f: MeasureFn,
}

impl EntropyFunctional {
    pub fn new(name: impl Into<String>, f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            f: Box::new(f),
        }
    }

    pub fn shannon() -> Self {
        Self::new("shannon", |m| {
            m.iter().filter(|&&y| y > 0.0).map(|&y| -y * y.ln()).sum()
        })
    }

    pub fn tsallis(q: QParameter) -> Self {
        Self::new(format!("tsallis[q={q}]"), move |m| {
            m.iter().map(|&y| crate::entropy::phi_q(y, q)).sum()
        })
    }

    pub fn renyi(q: QParameter) -> Self {
        Self::new(format!("renyi[q={q}]"), move |m| {
            if q.is_one() {
                m.iter().filter(|&&y| y > 0.0).map(|&y| -y * y.ln()).sum()
            } else {
                crate::qmath::power_sum(m, q).ln() / (1.0 - q.value())
            }
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, m: &[f64]) -> f64 {
        (self.f)(m)
    }
}

/// Kullback-Leibler divergence `sum p_i ln(p_i/r_i)` in nats, with
/// `0 ln(0/.) := 0` and `+inf` on absolute-continuity failure.
pub fn kld(p: &ProbabilityVector, r: &ProbabilityVector) -> Result<f64> {
    if p.len() != r.len() {
        return Err(Error::LengthMismatch(p.len(), r.len()));
    }
    let mut acc = 0.0;
    for (&pi, &ri) in p.iter().zip(r.iter()) {
        if pi == 0.0 {
            continue;
        }
        if ri == 0.0 {
            return Ok(f64::INFINITY);
        }
        acc += pi * (pi / ri).ln();
    }
    Ok(acc)
}

/// Tsallis relative entropy `D_q(p || r) = -sum_x p(x) ln_q(r(x)/p(x))`,
/// equivalently `(1 - sum p^q r^(1-q))/(1 - q)` for q != 1.
///
/// Terms with `p(x) = 0` contribute nothing. For q >= 1 a zero in `r`
/// under the support of `p` yields `+inf` (the documented limit); for
/// q < 1 those terms stay finite through the `ln_q(0)` convention.
pub fn tsallis_relative_entropy(
    p: &ProbabilityVector,
    r: &ProbabilityVector,
    q: QParameter,
) -> Result<f64> {
    if p.len() != r.len() {
        return Err(Error::LengthMismatch(p.len(), r.len()));
    }
    if q.is_one() {
        return kld(p, r);
    }
    let qv = q.value();
    let mut cross = 0.0;
    for (&pi, &ri) in p.iter().zip(r.iter()) {
        if pi == 0.0 {
            continue;
        }
        if ri == 0.0 {
            if qv > 1.0 {
                return Ok(f64::INFINITY);
            }
            // q < 1: p_i^q * 0^(1-q) = 0; equivalently the term
            // -p_i * q_log_zero(q) is folded into (1 - cross)/(1 - q).
            debug_assert!(q_log_zero(q).is_finite());
            continue;
        }
        cross += pi.powf(qv) * ri.powf(1.0 - qv);
    }
    Ok((1.0 - cross) / (1.0 - qv))
}

/// Renyi divergence `(1/(q-1)) ln sum p_i^q r_i^(1-q)`; KLD at q = 1.
/// Degenerate sums map to `+inf` through the limit conventions.
pub fn renyi_divergence(
    p: &ProbabilityVector,
    r: &ProbabilityVector,
    q: QParameter,
) -> Result<f64> {
    if p.len() != r.len() {
        return Err(Error::LengthMismatch(p.len(), r.len()));
    }
    if q.is_one() {
        return kld(p, r);
    }
    let qv = q.value();
    let mut cross = 0.0;
    for (&pi, &ri) in p.iter().zip(r.iter()) {
        if pi == 0.0 {
            continue;
        }
        if ri == 0.0 {
            if qv > 1.0 {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        cross += qpow(pi, qv) * ri.powf(1.0 - qv);
    }
    if cross == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(cross.ln() / (qv - 1.0))
}

/// Jensen difference `Psi(E[X]) - E[Psi(X)]` for a generalized entropy Psi.
pub fn jensen_difference(
    psi: &EntropyFunctional,
    weights: &ProbabilityVector,
    args: &[ProbabilityVector],
) -> Result<f64> {
    let mix = mixture(weights, args)?;
    let expected: f64 = weights
        .iter()
        .zip(args)
        .map(|(&w, a)| w * psi.eval(a))
        .sum();
    Ok(psi.eval(&mix) - expected)
}

/// Jensen q-difference `Psi(E[X]) - E_q[Psi(X)]`: the outer expectation is
/// replaced by the q-expectation. Accepts any Psi; concavity-dependent
/// guarantees belong to the named wrappers.
pub fn jensen_q_difference(
    psi: &EntropyFunctional,
    weights: &ProbabilityVector,
    args: &[ProbabilityVector],
    q: QParameter,
) -> Result<f64> {
    let mix = mixture(weights, args)?;
    let qv = q.value();
    let q_expected: f64 = weights
        .iter()
        .zip(args)
        .map(|(&w, a)| qpow(w, qv) * psi.eval(a))
        .sum();
    Ok(psi.eval(&mix) - q_expected)
}

/// Jensen-Shannon divergence: the Jensen difference of the Shannon entropy.
/// Equals the expected KLD to the mixture.
pub fn jsd(weights: &ProbabilityVector, args: &[ProbabilityVector]) -> Result<f64> {
    let mix = mixture(weights, args)?;
    let expected: f64 = weights
        .iter()
        .zip(args)
        .map(|(&w, a)| w * shannon_entropy(a))
        .sum();
    Ok(shannon_entropy(&mix) - expected)
}

/// Jensen-Renyi divergence: the Jensen difference of the Renyi q-entropy.
/// Nonnegativity is guaranteed only on the concavity range q in [0, 1).
pub fn jrd(weights: &ProbabilityVector, args: &[ProbabilityVector], q: QParameter) -> Result<f64> {
    let mix = mixture(weights, args)?;
    let expected: f64 = weights
        .iter()
        .zip(args)
        .map(|(&w, a)| w * renyi_entropy(a, q))
        .sum();
    Ok(renyi_entropy(&mix, q) - expected)
}

/// Jensen-Tsallis divergence: the Jensen difference of the Tsallis
/// q-entropy (ordinary outer expectation).
pub fn jtd(weights: &ProbabilityVector, args: &[ProbabilityVector], q: QParameter) -> Result<f64> {
    let mix = mixture(weights, args)?;
    let expected: f64 = weights
        .iter()
        .zip(args)
        .map(|(&w, a)| w * tsallis_entropy(a, q))
        .sum();
    Ok(tsallis_entropy(&mix, q) - expected)
}

/// Jensen-Tsallis q-difference (JTqD): the Jensen q-difference of the
/// Tsallis q-entropy. Equals the Tsallis mutual entropy of the induced
/// joint; always finite; may be negative for q < 1.
pub fn jtqd(weights: &ProbabilityVector, args: &[ProbabilityVector], q: QParameter) -> Result<f64> {
    let mix = mixture(weights, args)?;
    let qv = q.value();
    let q_expected: f64 = weights
        .iter()
        .zip(args)
        .map(|(&w, a)| qpow(w, qv) * tsallis_entropy(a, q))
        .sum();
    Ok(tsallis_entropy(&mix, q) - q_expected)
}

/// Two-distribution JTqD with equal weights,
/// `T_q(p1, p2) = S_q((p1+p2)/2) - (S_q(p1) + S_q(p2))/2^q`.
pub fn jtqd2(p1: &ProbabilityVector, p2: &ProbabilityVector, q: QParameter) -> Result<f64> {
    let half = ProbabilityVector::uniform(2);
    jtqd(&half, &[p1.clone(), p2.clone()], q)
}

/// Boolean difference (JTqD at q = 0): `1 - ||p1 (.) p2||_0`, one minus the
/// number of outcomes where both distributions put mass. Zero entries are
/// tested exactly; see [`boolean_difference_tol`] for ingested data.
pub fn boolean_difference(p1: &ProbabilityVector, p2: &ProbabilityVector) -> Result<f64> {
    boolean_difference_tol(p1, p2, 0.0)
}

/// Boolean difference with an explicit zero threshold `tau`: entries with
/// `|x| <= tau` count as zero. The 0-norm is discontinuous, so data that
/// went through rounding needs a named tolerance
/// ([`crate::tolerances::INGESTED_ZERO_TOL`]).
pub fn boolean_difference_tol(
    p1: &ProbabilityVector,
    p2: &ProbabilityVector,
    tau: f64,
) -> Result<f64> {
    if p1.len() != p2.len() {
        return Err(Error::LengthMismatch(p1.len(), p2.len()));
    }
    let shared = p1
        .iter()
        .zip(p2.iter())
        .filter(|(&a, &b)| a > tau && b > tau)
        .count();
    Ok(1.0 - shared as f64)
}

/// Two-distribution JSD (JTqD at q = 1), computed as the expected KLD to
/// the midpoint: `(D(p1 || m) + D(p2 || m))/2` with `m = (p1 + p2)/2`.
pub fn jsd2(p1: &ProbabilityVector, p2: &ProbabilityVector) -> Result<f64> {
    if p1.len() != p2.len() {
        return Err(Error::LengthMismatch(p1.len(), p2.len()));
    }
    let mid: Vec<f64> = p1
        .iter()
        .zip(p2.iter())
        .map(|(&a, &b)| 0.5 * (a + b))
        .collect();
    let mid = ProbabilityVector::new(mid)?;
    Ok(0.5 * kld(p1, &mid)? + 0.5 * kld(p2, &mid)?)
}

/// Linear difference (JTqD at q = 2): `1/2 - <p1, p2>/2`.
pub fn linear_difference(p1: &ProbabilityVector, p2: &ProbabilityVector) -> Result<f64> {
    if p1.len() != p2.len() {
        return Err(Error::LengthMismatch(p1.len(), p2.len()));
    }
    let dot: f64 = p1.iter().zip(p2.iter()).map(|(&a, &b)| a * b).sum();
    Ok(0.5 - 0.5 * dot)
}

/// Verify that the mixture minimizes the expected KLD: for every candidate
/// Q, `E_pi[D(P || mixture)] <= E_pi[D(P || Q)]`. Violations land in the
/// report rather than an error.
pub fn bregman_minimizer_check(
    weights: &ProbabilityVector,
    args: &[ProbabilityVector],
    candidates: &[ProbabilityVector],
    tolerance: f64,
) -> Result<CheckReport> {
    let mix = mixture(weights, args)?;
    // Zero-weight components carry no expectation mass, even if their KLD
    // is infinite.
    let mut at_mixture = 0.0;
    for (&w, a) in weights.iter().zip(args) {
        if w > 0.0 {
            at_mixture += w * kld(a, &mix)?;
        }
    }
    let mut worst = f64::NEG_INFINITY;
    let mut witness = String::from("no candidates");
    for (idx, cand) in candidates.iter().enumerate() {
        let mut at_candidate = 0.0;
        for (&w, a) in weights.iter().zip(args) {
            if w > 0.0 {
                at_candidate += w * kld(a, cand)?;
            }
        }
        // Positive when the mixture fails to be the minimizer.
        let violation = if at_candidate.is_infinite() {
            f64::NEG_INFINITY
        } else {
            at_mixture - at_candidate
        };
        if violation > worst {
            worst = violation;
            witness = format!("candidate #{idx} {:?}", cand.entries());
        }
    }
    Ok(CheckReport::new(
        "bregman-minimizer",
        candidates.len(),
        worst,
        witness,
        tolerance,
    ))
}
