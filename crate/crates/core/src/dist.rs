//! Finite discrete probability distributions and mixture weights.

use rand::Rng;

use crate::error::{Error, Result};
use crate::report::fmt_g15;

/// Maximum allowed deviation of the entry sum from 1 at construction.
pub const SUM_TOL: f64 = 1e-9;

/// Entries in `[-NEG_TOL, 0)` are treated as floating-point noise and clamped to 0.
pub const NEG_TOL: f64 = 1e-12;

/// A finite discrete probability distribution: nonnegative entries summing to 1.
///
/// Construction clamps tiny negative noise (within [`NEG_TOL`]) to zero and
/// renormalizes, so downstream arithmetic always sees a valid simplex point.
/// Anything worse is rejected rather than silently repaired.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbDist {
    probs: Vec<f64>,
}

impl ProbDist {
    /// Validate and normalize a probability vector.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("empty vector".into()));
        }
        let mut probs = probs;
        for (i, p) in probs.iter_mut().enumerate() {
            if !p.is_finite() {
                return Err(Error::InvalidDistribution(format!(
                    "entry {i} is not finite: {p}"
                )));
            }
            if *p < -NEG_TOL {
                return Err(Error::InvalidDistribution(format!(
                    "entry {i} is negative: {p}"
                )));
            }
            if *p < 0.0 {
                *p = 0.0;
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {sum}, expected 1"
            )));
        }
        for p in probs.iter_mut() {
            *p /= sum;
        }
        Ok(Self { probs })
    }

    /// The uniform distribution on `n` outcomes.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDistribution("empty vector".into()));
        }
        Ok(Self {
            probs: vec![1.0 / n as f64; n],
        })
    }

    /// Relative frequencies from occurrence counts.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if counts.is_empty() || total == 0 {
            return Err(Error::InvalidDistribution(
                "counts are empty or all zero".into(),
            ));
        }
        let t = total as f64;
        Ok(Self {
            probs: counts.iter().map(|&c| c as f64 / t).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Equal-weight mixture (P+Q)/2; dimensions must match.
    pub fn midpoint(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            probs: self
                .probs
                .iter()
                .zip(&other.probs)
                .map(|(&p, &q)| 0.5 * (p + q))
                .collect(),
        })
    }

    /// Weighted mixture π₁P + π₂Q.
    pub fn mix(&self, other: &Self, w: &WeightPair) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            probs: self
                .probs
                .iter()
                .zip(&other.probs)
                .map(|(&p, &q)| w.pi1() * p + w.pi2() * q)
                .collect(),
        })
    }

    pub(crate) fn check_dim(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }

    /// Draw a point uniformly from the probability simplex of the given
    /// dimension, as normalized unit-exponential variates.
    pub fn sample_simplex<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        assert!(dim >= 1, "simplex dimension must be at least 1");
        let mut v = vec![0.0f64; dim];
        loop {
            let mut sum = 0.0;
            for x in v.iter_mut() {
                // 1 - U lies in (0, 1], so the log is finite.
                let e = -(1.0 - rng.random::<f64>()).ln();
                *x = e;
                sum += e;
            }
            if sum > 0.0 {
                for x in v.iter_mut() {
                    *x /= sum;
                }
                return Self { probs: v };
            }
        }
    }

    /// Draw an outcome index by inverse-CDF lookup.
    pub fn sample_index<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for (i, &p) in self.probs.iter().enumerate() {
            acc += p;
            if u < acc {
                return i;
            }
        }
        self.probs.len() - 1
    }

    /// Parse one distribution from a comma-separated line of decimals.
    pub fn parse_line(line: &str) -> Result<Self> {
        let probs: Vec<f64> = line
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("bad probability '{}': {e}", tok.trim())))
            })
            .collect::<Result<_>>()?;
        Self::new(probs)
    }

    /// Emit as a comma-separated line with 15 significant digits.
    pub fn to_line(&self) -> String {
        self.probs
            .iter()
            .map(|&p| fmt_g15(p))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parse several distributions from either the line-oriented text format
    /// (one comma-separated distribution per line) or a JSON array of arrays.
    pub fn parse_many(text: &str) -> Result<Vec<Self>> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('[') {
            let rows: Vec<Vec<f64>> = serde_json::from_str(trimmed)
                .map_err(|e| Error::Parse(format!("bad JSON distribution list: {e}")))?;
            return rows.into_iter().map(Self::new).collect();
        }
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(Self::parse_line)
            .collect()
    }

    /// Emit several distributions in the line-oriented text format.
    pub fn emit_many(dists: &[Self]) -> String {
        let mut out = String::new();
        for d in dists {
            out.push_str(&d.to_line());
            out.push('\n');
        }
        out
    }

    /// Emit several distributions as a JSON array of arrays, mirroring the
    /// JSON input format at 15 significant digits.
    pub fn emit_many_json(dists: &[Self]) -> String {
        let rows: Vec<String> = dists
            .iter()
            .map(|d| {
                let vals: Vec<String> = d.probs().iter().map(|&p| fmt_g15(p)).collect();
                format!("[{}]", vals.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

/// A pair of mixture weights (π₁, π₂) with π₁ + π₂ = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightPair {
    pi1: f64,
    pi2: f64,
}

impl WeightPair {
    pub const WEIGHT_SUM_TOL: f64 = 1e-12;

    pub fn new(pi1: f64, pi2: f64) -> Result<Self> {
        if pi1.is_nan() || pi2.is_nan() || pi1 < 0.0 || pi2 < 0.0 {
            return Err(Error::InvalidDistribution(format!(
                "weights must be nonnegative, got ({pi1}, {pi2})"
            )));
        }
        if (pi1 + pi2 - 1.0).abs() > Self::WEIGHT_SUM_TOL {
            return Err(Error::InvalidDistribution(format!(
                "weights must sum to 1, got {pi1} + {pi2} = {}",
                pi1 + pi2
            )));
        }
        Ok(Self { pi1, pi2 })
    }

    /// The symmetric pair (1/2, 1/2).
    pub fn halves() -> Self {
        Self { pi1: 0.5, pi2: 0.5 }
    }

    pub fn pi1(&self) -> f64 {
        self.pi1
    }

    pub fn pi2(&self) -> f64 {
        self.pi2
    }
}
