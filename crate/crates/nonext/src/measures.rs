//! Data model for points on the probability simplex, unnormalized measures,
//! joint distributions, and histogram ingestion.

use std::io::BufRead;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::tolerances::NORMALIZATION_TOL;

fn check_nonnegative(entries: &[f64]) -> Result<()> {
    for (index, &value) in entries.iter().enumerate() {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::NegativeEntry { index, value });
        }
    }
    Ok(())
}

/// A point on the simplex: nonnegative entries summing to 1.
///
/// Construction accepts sums within [`NORMALIZATION_TOL`] of 1 and silently
/// renormalizes so the stored sum is exactly 1 in working precision.
/// Degenerate vectors (`one entry 1.0, rest 0.0`) pass through bit-exact.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector {
    entries: Vec<f64>,
}

impl ProbabilityVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySupport);
        }
        check_nonnegative(&entries)?;
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized {
                sum,
                tol: NORMALIZATION_TOL,
            });
        }
        Ok(Self::renormalize(entries))
    }

    /// Normalize an arbitrary nonnegative vector of positive total mass.
    pub fn from_masses(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySupport);
        }
        check_nonnegative(&entries)?;
        let sum: f64 = entries.iter().sum();
        if sum <= 0.0 {
            return Err(Error::ZeroMass);
        }
        Ok(Self::renormalize(entries))
    }

    fn renormalize(mut entries: Vec<f64>) -> Self {
        let sum: f64 = entries.iter().sum();
        if sum != 1.0 {
            for e in entries.iter_mut() {
                *e /= sum;
            }
            // Push the residual ulp into the largest entry so the stored
            // sum is exactly 1.0.
            let residual = 1.0 - entries.iter().sum::<f64>();
            if residual != 0.0 {
                let argmax = entries
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.total_cmp(b.1))
                    .map(|(i, _)| i)
                    .unwrap();
                entries[argmax] += residual;
            }
        }
        Self { entries }
    }

    /// Uniform distribution over `n` outcomes.
    pub fn uniform(n: usize) -> Self {
        assert!(n > 0, "uniform distribution needs at least one outcome");
        Self {
            entries: vec![1.0 / n as f64; n],
        }
    }

    /// Degenerate distribution with all mass on outcome `i` (exact vertex).
    pub fn degenerate(n: usize, i: usize) -> Self {
        assert!(i < n, "outcome index out of range");
        let mut entries = vec![0.0; n];
        entries[i] = 1.0;
        Self { entries }
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// View this point as an unnormalized measure.
    pub fn to_measure(&self) -> UnnormalizedMeasure {
        UnnormalizedMeasure {
            entries: self.entries.clone(),
        }
    }

    /// Same point with a zero appended (expandability helper).
    pub fn expanded(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.push(0.0);
        Self { entries }
    }
}

impl Deref for ProbabilityVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.entries
    }
}

/// A nonnegative vector with no sum constraint (counts or masses).
#[derive(Debug, Clone, PartialEq)]
pub struct UnnormalizedMeasure {
    entries: Vec<f64>,
}

impl UnnormalizedMeasure {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        check_nonnegative(&entries)?;
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn total_mass(&self) -> f64 {
        self.entries.iter().sum()
    }

    /// Normalize into a simplex point; fails on zero total mass.
    pub fn normalized(&self) -> Result<ProbabilityVector> {
        ProbabilityVector::from_masses(self.entries.clone())
    }
}

impl Deref for UnnormalizedMeasure {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.entries
    }
}

/// Convex combination `sum_j weights_j * dists_j` of simplex points.
pub fn mixture(
    weights: &ProbabilityVector,
    dists: &[ProbabilityVector],
) -> Result<ProbabilityVector> {
    if weights.len() != dists.len() {
        return Err(Error::LengthMismatch(weights.len(), dists.len()));
    }
    let n = dists.first().ok_or(Error::EmptySupport)?.len();
    let mut acc = vec![0.0; n];
    for (w, d) in weights.iter().zip(dists) {
        if d.len() != n {
            return Err(Error::LengthMismatch(d.len(), n));
        }
        for (a, &x) in acc.iter_mut().zip(d.iter()) {
            *a += w * x;
        }
    }
    ProbabilityVector::new(acc)
}

/// Independent product: entry `(i, j) = p_i * r_j`, flattened row-major
/// (`i` over `p`, `j` over `r`).
pub fn product(p: &ProbabilityVector, r: &ProbabilityVector) -> ProbabilityVector {
    let mut entries = Vec::with_capacity(p.len() * r.len());
    for &pi in p.iter() {
        for &rj in r.iter() {
            entries.push(pi * rj);
        }
    }
    ProbabilityVector::new(entries).expect("product of simplex points is a simplex point")
}

/// A prior over Y together with one conditional row p(.|y) per outcome of Y.
///
/// The induced table p(x, y) = prior_y * p(x|y) is a simplex point over
/// m*n cells, flattened row-major with y as the outer index.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    prior: ProbabilityVector,
    conditionals: Vec<ProbabilityVector>,
}

impl JointDistribution {
    pub fn from_conditional(
        prior: ProbabilityVector,
        conditionals: Vec<ProbabilityVector>,
    ) -> Result<Self> {
        if prior.len() != conditionals.len() {
            return Err(Error::LengthMismatch(prior.len(), conditionals.len()));
        }
        let n = conditionals.first().ok_or(Error::EmptySupport)?.len();
        for row in &conditionals {
            if row.len() != n {
                return Err(Error::LengthMismatch(row.len(), n));
            }
        }
        Ok(Self {
            prior,
            conditionals,
        })
    }

    pub fn prior(&self) -> &ProbabilityVector {
        &self.prior
    }

    pub fn conditionals(&self) -> &[ProbabilityVector] {
        &self.conditionals
    }

    /// Number of Y outcomes (rows).
    pub fn m(&self) -> usize {
        self.prior.len()
    }

    /// Number of X outcomes (columns).
    pub fn n(&self) -> usize {
        self.conditionals[0].len()
    }

    /// Flattened joint table over m*n cells.
    pub fn table(&self) -> ProbabilityVector {
        let mut cells = Vec::with_capacity(self.m() * self.n());
        for (&py, row) in self.prior.iter().zip(&self.conditionals) {
            for &pxy in row.iter() {
                cells.push(py * pxy);
            }
        }
        ProbabilityVector::new(cells).expect("joint table is a simplex point")
    }

    /// Marginal over X, summed out of the table; equals
    /// `mixture(prior, conditionals)` up to summation order.
    pub fn marginal_x(&self) -> ProbabilityVector {
        let n = self.n();
        let mut acc = vec![0.0; n];
        for (&py, row) in self.prior.iter().zip(&self.conditionals) {
            for (a, &pxy) in acc.iter_mut().zip(row.iter()) {
                *a += py * pxy;
            }
        }
        ProbabilityVector::new(acc).expect("marginal of a joint table is a simplex point")
    }

    /// Marginal over Y (the prior).
    pub fn marginal_y(&self) -> &ProbabilityVector {
        &self.prior
    }

    /// The same joint with the roles of X and Y swapped: prior becomes the
    /// X-marginal and rows become p(y|x). Rows conditioned on a zero-mass x
    /// carry no mass; they are filled with the uniform row.
    pub fn swapped(&self) -> Self {
        let m = self.m();
        let n = self.n();
        let px = self.marginal_x();
        let mut rows = Vec::with_capacity(n);
        for x in 0..n {
            if px[x] > 0.0 {
                let row: Vec<f64> = (0..m)
                    .map(|y| self.prior[y] * self.conditionals[y][x] / px[x])
                    .collect();
                rows.push(
                    ProbabilityVector::new(row)
                        .expect("conditional row of a positive-mass column is a simplex point"),
                );
            } else {
                rows.push(ProbabilityVector::uniform(m));
            }
        }
        Self {
            prior: px,
            conditionals: rows,
        }
    }
}

/// Build a joint distribution from a prior and conditional rows.
pub fn joint_from_conditional(
    prior: &ProbabilityVector,
    conditionals: &[ProbabilityVector],
) -> Result<JointDistribution> {
    JointDistribution::from_conditional(prior.clone(), conditionals.to_vec())
}

/// Labeled counts parsed from a histogram stream. Labels keep first-seen
/// order unless sorted explicitly.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    labels: Vec<String>,
    counts: Vec<f64>,
}

impl Histogram {
    /// Parse `label,count` lines. `#`-prefixed lines are comments, blank
    /// lines are skipped, duplicate labels accumulate.
    pub fn parse<R: BufRead>(reader: R) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut counts: Vec<f64> = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.map_err(|e| Error::Parse {
                line: line_no,
                message: e.to_string(),
            })?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (label, count_str) = trimmed.split_once(',').ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("expected `label,count`, got `{trimmed}`"),
            })?;
            let count: f64 = count_str.trim().parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid count `{}`", count_str.trim()),
            })?;
            if !count.is_finite() || count < 0.0 {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("count must be a finite nonnegative number, got {count}"),
                });
            }
            let label = label.trim().to_string();
            match labels.iter().position(|l| *l == label) {
                Some(pos) => counts[pos] += count,
                None => {
                    labels.push(label);
                    counts.push(count);
                }
            }
        }
        Ok(Self { labels, counts })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn counts(&self) -> &[f64] {
        &self.counts
    }

    pub fn sort_by_label(&mut self) {
        let mut order: Vec<usize> = (0..self.labels.len()).collect();
        order.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]));
        self.labels = order.iter().map(|&i| self.labels[i].clone()).collect();
        self.counts = order.iter().map(|&i| self.counts[i]).collect();
    }

    pub fn measure(&self) -> UnnormalizedMeasure {
        UnnormalizedMeasure {
            entries: self.counts.clone(),
        }
    }

    /// Re-express the counts over a given label universe; labels absent
    /// from this histogram get count 0.
    pub fn aligned_to(&self, universe: &[String]) -> UnnormalizedMeasure {
        let entries = universe
            .iter()
            .map(|label| {
                self.labels
                    .iter()
                    .position(|l| l == label)
                    .map_or(0.0, |i| self.counts[i])
            })
            .collect();
        UnnormalizedMeasure { entries }
    }
}

/// Union label set across histograms, in first-seen order (or sorted).
pub fn union_labels(histograms: &[Histogram], sorted: bool) -> Vec<String> {
    let mut labels: Vec<String> = Vec::new();
    for h in histograms {
        for l in &h.labels {
            if !labels.contains(l) {
                labels.push(l.clone());
            }
        }
    }
    if sorted {
        labels.sort();
    }
    labels
}

/// Ingest a histogram stream into a measure over the union of labels in
/// first-seen order.
pub fn ingest_histogram<R: BufRead>(reader: R) -> Result<UnnormalizedMeasure> {
    Ok(Histogram::parse(reader)?.measure())
}
