use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::measures::ProbabilityVector;

/// Deterministic sampling configuration for the proposition checks.
/// Everything a check does is a pure function of this plan.
#[derive(Debug, Clone)]
pub struct SamplingPlan {
    pub seed: u64,
    pub trials: usize,
    /// Inclusive range of support sizes for the mixed distributions.
    pub n_range: (usize, usize),
    /// Inclusive range for the number of distributions being mixed.
    pub m_range: (usize, usize),
    pub q_grid: Vec<f64>,
}

impl Default for SamplingPlan {
    fn default() -> Self {
        Self {
            seed: 42,
            trials: 1000,
            n_range: (2, 8),
            m_range: (2, 5),
            q_grid: default_q_grid(),
        }
    }
}

/// q in {0, 0.25, ..., 3}.
pub fn default_q_grid() -> Vec<f64> {
    (0..=12).map(|k| k as f64 * 0.25).collect()
}

impl SamplingPlan {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        assert!(trials >= 1, "a sampling plan needs at least one trial");
        self.trials = trials;
        self
    }
}

/// Seeded simplex sampler. Draws symmetric Dirichlet(1) points plus
/// boundary-enriched variants (random coordinates zeroed out), because the
/// extremal cases of the bounds live on faces and vertices.
pub struct SimplexSampler {
    rng: ChaCha8Rng,
}

impl SimplexSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent generator for one check: same seed, dedicated stream.
    pub fn from_plan(plan: &SamplingPlan, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
        rng.set_stream(stream);
        Self { rng }
    }

    pub fn uniform01(&mut self) -> f64 {
        self.rng.gen()
    }

    pub fn size(&mut self, range: (usize, usize)) -> usize {
        self.rng.gen_range(range.0..=range.1)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// Dirichlet(1): normalized standard exponentials.
    pub fn interior(&mut self, n: usize) -> ProbabilityVector {
        let raw: Vec<f64> = (0..n)
            .map(|_| -(1.0 - self.rng.gen::<f64>()).ln())
            .collect();
        ProbabilityVector::from_masses(raw)
            .expect("exponential draws are nonnegative with positive mass")
    }

    /// Dirichlet(1) with each coordinate zeroed with probability 1/2
    /// (at least one survivor), renormalized. Zeros are exact.
    pub fn boundary_enriched(&mut self, n: usize) -> ProbabilityVector {
        let mut raw: Vec<f64> = (0..n)
            .map(|_| -(1.0 - self.rng.gen::<f64>()).ln())
            .collect();
        let keep = self.rng.gen_range(0..n);
        for (i, x) in raw.iter_mut().enumerate() {
            if i != keep && self.rng.gen::<bool>() {
                *x = 0.0;
            }
        }
        ProbabilityVector::from_masses(raw).expect("at least one coordinate keeps positive mass")
    }

    /// Half interior, half boundary-enriched.
    pub fn mixed(&mut self, n: usize) -> ProbabilityVector {
        if self.rng.gen::<bool>() {
            self.interior(n)
        } else {
            self.boundary_enriched(n)
        }
    }

    /// Interior point with every coordinate at least `margin / n`: a
    /// Dirichlet point shrunk toward uniform. Used where derivatives or
    /// perturbations must stay clear of the faces.
    pub fn interior_with_margin(&mut self, n: usize, margin: f64) -> ProbabilityVector {
        let p = self.interior(n);
        let u = 1.0 / n as f64;
        let entries: Vec<f64> = p.iter().map(|&x| (1.0 - margin) * x + margin * u).collect();
        ProbabilityVector::new(entries).expect("convex combination with uniform stays on simplex")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_given_seed() {
        let plan = SamplingPlan::with_seed(7);
        let mut a = SimplexSampler::from_plan(&plan, 3);
        let mut b = SimplexSampler::from_plan(&plan, 3);
        for _ in 0..10 {
            assert_eq!(a.interior(4).entries(), b.interior(4).entries());
            assert_eq!(a.mixed(3).entries(), b.mixed(3).entries());
        }
    }

    #[test]
    fn streams_differ() {
        let plan = SamplingPlan::with_seed(7);
        let mut a = SimplexSampler::from_plan(&plan, 0);
        let mut b = SimplexSampler::from_plan(&plan, 1);
        assert_ne!(a.interior(4).entries(), b.interior(4).entries());
    }

    #[test]
    fn boundary_samples_include_exact_zeros() {
        let mut s = SimplexSampler::new(11);
        let mut saw_zero = false;
        for _ in 0..100 {
            let p = s.boundary_enriched(5);
            saw_zero |= p.contains(&0.0);
        }
        assert!(saw_zero);
    }

    #[test]
    fn margin_keeps_coordinates_positive() {
        let mut s = SimplexSampler::new(13);
        for _ in 0..50 {
            let p = s.interior_with_margin(6, 0.2);
            assert!(p.iter().all(|&x| x >= 0.2 / 6.0 - 1e-12));
        }
    }

    #[test]
    fn default_grid_spans_zero_to_three() {
        let g = default_q_grid();
        assert_eq!(g.len(), 13);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[12], 3.0);
    }
}
