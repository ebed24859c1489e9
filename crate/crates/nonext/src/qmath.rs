//! Scalar nonextensive primitives: the q-logarithm, power sums, and the
//! unnormalized q-expectation.

use crate::error::{Error, Result};
use crate::measures::ProbabilityVector;
use crate::tolerances::Q_ONE_EPS;

/// Validated entropic index `q >= 0`.
///
/// Values within `Q_ONE_EPS` of 1 are routed to the exact Shannon-limit
/// branches by every formula in this crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QParameter {
    q: f64,
}

impl QParameter {
    pub fn new(q: f64) -> Result<Self> {
        if !q.is_finite() || q < 0.0 {
            return Err(Error::InvalidQ(q));
        }
        Ok(Self { q })
    }

    pub fn value(&self) -> f64 {
        self.q
    }

    /// True when this index falls in the exact `q = 1` window.
    pub fn is_one(&self) -> bool {
        (self.q - 1.0).abs() < Q_ONE_EPS
    }
}

impl TryFrom<f64> for QParameter {
    type Error = Error;

    fn try_from(q: f64) -> Result<Self> {
        Self::new(q)
    }
}

impl std::fmt::Display for QParameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.q)
    }
}

/// q-logarithm: `ln_q(x) = (x^(1-q) - 1)/(1 - q)`, with `ln_q = ln` at q = 1.
///
/// Defined for `x > 0`; nonpositive arguments are a domain error. The
/// `ln_q(0)` limit convention lives in [`q_log_zero`] and is only used by
/// relative-entropy code.
pub fn q_log(x: f64, q: QParameter) -> Result<f64> {
    if x <= 0.0 || x.is_nan() {
        return Err(Error::Domain(format!("q_log requires x > 0, got {x}")));
    }
    if q.is_one() {
        return Ok(x.ln());
    }
    let one_minus_q = 1.0 - q.value();
    Ok((x.powf(one_minus_q) - 1.0) / one_minus_q)
}

/// Limit of `ln_q(x)` as `x -> 0+`: finite `-1/(1-q)` for q < 1, `-inf` for
/// q >= 1. Used by the Tsallis relative entropy when the reference has a
/// zero where the argument does not.
pub(crate) fn q_log_zero(q: QParameter) -> f64 {
    if q.value() < 1.0 && !q.is_one() {
        -1.0 / (1.0 - q.value())
    } else {
        f64::NEG_INFINITY
    }
}

/// `t^q` under the convention `0^q := 0` for every q >= 0, including q = 0.
/// This makes power sums at q = 0 count nonzero entries.
pub(crate) fn qpow(t: f64, q: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t.powf(q)
    }
}

/// Power sum `sum_i m_i^q` over a nonnegative vector, with `0^0 := 0`.
///
/// At q = 0 this is the number of nonzero entries; at q = 1 the total mass.
pub fn power_sum(entries: &[f64], q: QParameter) -> f64 {
    if q.is_one() {
        return entries.iter().sum();
    }
    let qv = q.value();
    entries.iter().map(|&m| qpow(m, qv)).sum()
}

/// Unnormalized q-expectation `E_q[X] = sum_i x_i * w_i^q`.
///
/// At q = 1 this is the ordinary expectation; for q != 1 it is not
/// mean-preserving (`E_q[1] != 1` in general).
pub fn q_expectation(values: &[f64], weights: &ProbabilityVector, q: QParameter) -> Result<f64> {
    if values.len() != weights.len() {
        return Err(Error::LengthMismatch(values.len(), weights.len()));
    }
    if q.is_one() {
        return Ok(values.iter().zip(weights.iter()).map(|(v, w)| v * w).sum());
    }
    let qv = q.value();
    Ok(values
        .iter()
        .zip(weights.iter())
        .map(|(v, &w)| v * qpow(w, qv))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: f64) -> QParameter {
        QParameter::new(v).unwrap()
    }

    #[test]
    fn rejects_invalid_q() {
        assert!(QParameter::new(-0.5).is_err());
        assert!(QParameter::new(f64::NAN).is_err());
        assert!(QParameter::new(f64::INFINITY).is_err());
        assert!(QParameter::new(0.0).is_ok());
    }

    #[test]
    fn q_one_window() {
        assert!(q(1.0).is_one());
        assert!(q(1.0 + 0.5e-9).is_one());
        assert!(!q(1.0 + 1e-6).is_one());
    }

    #[test]
    fn q_log_of_one_is_zero() {
        for qv in [0.0, 0.5, 1.0, 2.0, 3.0] {
            assert_eq!(q_log(1.0, q(qv)).unwrap(), 0.0);
        }
    }

    #[test]
    fn q_log_natural_branch() {
        assert!((q_log(std::f64::consts::E, q(1.0)).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn q_log_at_q_zero() {
        // (x^1 - 1)/1 = x - 1; oracle for x = 2 is exactly 1.
        assert_eq!(q_log(2.0, q(0.0)).unwrap(), 1.0);
    }

    #[test]
    fn q_log_rejects_nonpositive() {
        assert!(q_log(0.0, q(2.0)).is_err());
        assert!(q_log(-1.0, q(0.5)).is_err());
    }

    #[test]
    fn q_log_zero_convention() {
        assert_eq!(q_log_zero(q(0.5)), -2.0);
        assert_eq!(q_log_zero(q(0.0)), -1.0);
        assert_eq!(q_log_zero(q(1.0)), f64::NEG_INFINITY);
        assert_eq!(q_log_zero(q(2.0)), f64::NEG_INFINITY);
    }

    #[test]
    fn q_log_product_identity() {
        // ln_q(xy) = ln_q(x) + x^(1-q) ln_q(y)
        for &qv in &[0.0, 0.3, 0.7, 1.5, 2.0, 3.0] {
            for &(x, y) in &[(0.5, 2.0), (3.0, 7.0), (0.01, 0.02), (10.0, 90.0)] {
                let lhs = q_log(x * y, q(qv)).unwrap();
                let rhs = q_log(x, q(qv)).unwrap() + x.powf(1.0 - qv) * q_log(y, q(qv)).unwrap();
                let scale = lhs.abs().max(rhs.abs()).max(1.0);
                assert!(
                    (lhs - rhs).abs() <= 1e-12 * scale,
                    "q={qv} x={x} y={y}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn q_log_reciprocal_identity() {
        // ln_q(1/x) = -x^(q-1) ln_q(x)
        for &qv in &[0.0, 0.4, 1.0, 2.0, 2.5] {
            for &x in &[0.01, 0.5, 1.0, 4.0, 100.0] {
                let lhs = q_log(1.0 / x, q(qv)).unwrap();
                let rhs = -x.powf(qv - 1.0) * q_log(x, q(qv)).unwrap();
                let scale = lhs.abs().max(rhs.abs()).max(1.0);
                assert!(
                    (lhs - rhs).abs() <= 1e-12 * scale,
                    "q={qv} x={x}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn q_log_continuous_at_one() {
        // Near q = 1 the formula tracks ln(x); the |q-1| L^2/2 truncation term
        // means the bound is absolute-with-relative-floor over [0.01, 100].
        for &x in &[0.01, 0.1, 1.0, std::f64::consts::E, 10.0, 100.0] {
            for &qv in &[1.0 - 1e-6, 1.0 + 1e-6] {
                let diff = (q_log(x, q(qv)).unwrap() - x.ln()).abs();
                assert!(
                    diff <= 1e-5 * x.ln().abs().max(1.0),
                    "x={x} q={qv} diff={diff}"
                );
            }
        }
    }

    #[test]
    fn power_sum_examples() {
        assert!((power_sum(&[0.5, 0.5], q(2.0)) - 0.5).abs() < 1e-15);
        assert_eq!(power_sum(&[0.3, 0.0, 0.7], q(0.0)), 2.0);
        let p = ProbabilityVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        assert!((power_sum(&p, q(1.0)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn power_sum_monotone_in_q_on_simplex() {
        let p = [0.1, 0.2, 0.3, 0.4];
        let grid = [0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0];
        for w in grid.windows(2) {
            assert!(power_sum(&p, q(w[0])) >= power_sum(&p, q(w[1])) - 1e-14);
        }
    }

    #[test]
    fn q_expectation_examples() {
        let half = ProbabilityVector::new(vec![0.5, 0.5]).unwrap();
        // E_2[1] = 0.5: the q-expectation is not mean-preserving.
        assert!((q_expectation(&[1.0, 1.0], &half, q(2.0)).unwrap() - 0.5).abs() < 1e-15);

        let w = ProbabilityVector::new(vec![0.3, 0.7]).unwrap();
        let mean = q_expectation(&[2.0, 10.0], &w, q(1.0)).unwrap();
        assert!((mean - (2.0 * 0.3 + 10.0 * 0.7)).abs() < 1e-12);

        let degenerate = ProbabilityVector::new(vec![1.0, 0.0]).unwrap();
        for qv in [0.0, 0.5, 1.0, 2.0] {
            assert_eq!(q_expectation(&[3.0, 7.0], &degenerate, q(qv)).unwrap(), 3.0);
        }
    }

    #[test]
    fn q_expectation_length_mismatch() {
        let w = ProbabilityVector::new(vec![1.0]).unwrap();
        assert_eq!(
            q_expectation(&[1.0, 2.0], &w, q(2.0)),
            Err(Error::LengthMismatch(2, 1))
        );
    }
}
