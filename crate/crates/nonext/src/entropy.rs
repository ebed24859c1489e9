//! Entropy functionals: the Suyari family with pluggable phi, Shannon,
//! Tsallis (normalized and denormalized), Renyi, generic phi-entropies, and
//! the joint/conditional/mutual Tsallis entropies.

use crate::divergence;
use crate::error::{Error, Result};
use crate::measures::{JointDistribution, ProbabilityVector, UnnormalizedMeasure};
use crate::qmath::{power_sum, QParameter};

/// Entropy summand `phi_q(y) = -y^q ln_q(y)`:
/// `-y ln y` at q = 1, `(y - y^q)/(q - 1)` otherwise, with `phi_q(0) := 0`.
pub(crate) fn phi_q(y: f64, q: QParameter) -> f64 {
    if y == 0.0 {
        return 0.0;
    }
    if q.is_one() {
        -y * y.ln()
    } else {
        (y - y.powf(q.value())) / (q.value() - 1.0)
    }
}

/// Derivative of `phi_q` for y > 0: `-(1 + ln y)` at q = 1,
/// `(1 - q y^(q-1))/(q - 1)` otherwise.
pub(crate) fn phi_q_deriv(y: f64, q: QParameter) -> f64 {
    if q.is_one() {
        -(1.0 + y.ln())
    } else {
        let qv = q.value();
        (1.0 - qv * y.powf(qv - 1.0)) / (qv - 1.0)
    }
}

/// Deformation function `phi(q)` for the Suyari entropy form, validated at
/// construction (`phi(1) = 0`) and pointwise at each queried index
/// (`phi(q)` must carry the sign of `q - 1`). The differentiability
/// condition `phi'(1) = 1` is documented but not machine-checked.
pub struct PhiFunction {
    f: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl PhiFunction {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Result<Self> {
        let at_one = f(1.0);
        if at_one.abs() > 1e-12 {
            return Err(Error::InvalidPhi(format!(
                "phi(1) must vanish, got {at_one}"
            )));
        }
        Ok(Self { f: Box::new(f) })
    }

    /// The Tsallis choice `phi(q) = q - 1`.
    pub fn tsallis() -> Self {
        Self {
            f: Box::new(|q| q - 1.0),
        }
    }

    /// Evaluate at `q`, enforcing the sign condition pointwise.
    pub fn eval(&self, q: QParameter) -> Result<f64> {
        let qv = q.value();
        let v = (self.f)(qv);
        if q.is_one() {
            return Ok(v);
        }
        if v == 0.0 {
            return Err(Error::InvalidPhi(format!("phi({qv}) = 0 away from q = 1")));
        }
        if (v > 0.0) != (qv > 1.0) {
            return Err(Error::InvalidPhi(format!(
                "phi({qv}) = {v} does not carry the sign of q - 1"
            )));
        }
        Ok(v)
    }
}

/// Suyari-form nonextensive entropy `(1/phi(q)) (1 - sum_i p_i^q)` with
/// k = 1. The q = 1 case routes to the Shannon limit.
pub fn nonextensive_entropy(
    p: &ProbabilityVector,
    q: QParameter,
    phi: &PhiFunction,
) -> Result<f64> {
    if q.is_one() {
        return Ok(shannon_entropy(p));
    }
    let denom = phi.eval(q)?;
    Ok((1.0 - power_sum(p, q)) / denom)
}

/// Shannon entropy `-sum p_i ln p_i` in nats, with `0 ln 0 := 0`.
pub fn shannon_entropy(p: &ProbabilityVector) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.ln()).sum()
}

/// Tsallis entropy of a simplex point, `(1 - sum p_i^q)/(q - 1)` computed as
/// the summand form `sum_i phi_q(p_i)`, which extends verbatim to measures.
pub fn tsallis_entropy(p: &ProbabilityVector, q: QParameter) -> f64 {
    p.iter().map(|&y| phi_q(y, q)).sum()
}

/// Tsallis entropy of an unnormalized measure, `sum_i phi_q(x_i)`.
pub fn tsallis_entropy_measure(m: &UnnormalizedMeasure, q: QParameter) -> f64 {
    m.iter().map(|&y| phi_q(y, q)).sum()
}

/// Renyi entropy `ln(sum p_i^q)/(1 - q)`; Shannon at q = 1.
///
/// Concavity holds only for q in [0, 1); the formula is exposed for all
/// q >= 0 and callers relying on concavity above 1 get no guarantee.
pub fn renyi_entropy(p: &ProbabilityVector, q: QParameter) -> f64 {
    if q.is_one() {
        return shannon_entropy(p);
    }
    power_sum(p, q).ln() / (1.0 - q.value())
}

/// A scalar convex generator `varphi` together with its domain `[a, b]`.
pub struct VarPhi {
    domain: (f64, f64),
    f: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl VarPhi {
    pub fn new(domain: (f64, f64), f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            domain,
            f: Box::new(f),
        }
    }

    /// `varphi(y) = y ln y` on [0, 1] (Shannon generator).
    pub fn shannon() -> Self {
        Self::new((0.0, 1.0), |y| if y == 0.0 { 0.0 } else { y * y.ln() })
    }

    /// `varphi(y) = (y^q - y)/(q - 1)` on [0, 1] (Tsallis generator,
    /// the negation of the entropy summand).
    pub fn tsallis(q: QParameter) -> Self {
        Self::new((0.0, 1.0), move |y| -phi_q(y, q))
    }

    pub fn eval(&self, y: f64) -> Result<f64> {
        if y < self.domain.0 || y > self.domain.1 {
            return Err(Error::Domain(format!(
                "varphi argument {y} outside [{}, {}]",
                self.domain.0, self.domain.1
            )));
        }
        Ok((self.f)(y))
    }
}

/// phi-entropy `-sum_i varphi(x_i)` of a vector inside varphi's domain.
pub fn phi_entropy(xs: &[f64], varphi: &VarPhi) -> Result<f64> {
    let mut acc = 0.0;
    for &x in xs {
        acc -= varphi.eval(x)?;
    }
    Ok(acc)
}

/// Joint Tsallis entropy `S_q(X, Y)`: the Tsallis entropy of the flattened
/// joint table.
pub fn tsallis_joint_entropy(j: &JointDistribution, q: QParameter) -> f64 {
    tsallis_entropy(&j.table(), q)
}

/// Conditional Tsallis entropy `S_q(X|Y) = sum_y prior_y^q S_q(X|y)`.
pub fn tsallis_conditional_entropy(j: &JointDistribution, q: QParameter) -> f64 {
    let qv = q.value();
    j.prior()
        .iter()
        .zip(j.conditionals())
        .map(|(&py, row)| crate::qmath::qpow(py, qv) * tsallis_entropy(row, q))
        .sum()
}

/// Tsallis mutual entropy `I_q(X;Y) = S_q(X) - S_q(X|Y)`.
pub fn tsallis_mutual_entropy(j: &JointDistribution, q: QParameter) -> f64 {
    tsallis_entropy(&j.marginal_x(), q) - tsallis_conditional_entropy(j, q)
}

/// Alternative mutual entropy `D_q(p_XY || p_X (x) p_Y)`; agrees with
/// [`tsallis_mutual_entropy`] at q = 1 and differs in general otherwise.
/// May be `+inf` through the relative-entropy conventions.
pub fn tsallis_mutual_entropy_alt(j: &JointDistribution, q: QParameter) -> f64 {
    let joint = j.table();
    let independent = crate::measures::product(j.marginal_y(), &j.marginal_x());
    divergence::tsallis_relative_entropy(&joint, &independent, q)
        .expect("joint table and product of marginals share support size")
}
