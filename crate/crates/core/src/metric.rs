//! Exponent analysis for the metric family d_α = JSD^α.
//!
//! The scalar machinery lives here: the generator f_JS, the ratio
//! h_α(u) = (1-u^α)^{1/α}/f_JS(u) whose nonincrease on [0,1) certifies that
//! d_α satisfies the triangle inequality, its closed-form derivative, the
//! sign term that controls that derivative, and the gap function Δ(u) whose
//! negativity marks failure of the sufficient condition. On top of those sit
//! grid scans, a seeded triangle-inequality counterexample search, and the
//! figure-data emitters.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dist::ProbDist;
use crate::divergence::d_alpha;
use crate::error::{Error, Result};

use std::f64::consts::LN_2;

/// Derivative values above this are treated as genuine sign changes rather
/// than roundoff; near u → 1 the denominator f_JS² inflates relative error.
pub const MONOTONICITY_TOL: f64 = 1e-10;

/// Slack required before a triple counts as a triangle-inequality violation.
pub const TRIANGLE_TOL: f64 = 1e-12;

/// Lower cutoff for derivative grids; the closed form has a 1/u factor.
pub const GRID_U_MIN: f64 = 1e-6;

/// Upper cutoff for u-grids; beyond this f_JS → 0 makes f64 evaluation of the
/// derivative sign unreliable.
pub const GRID_U_MAX: f64 = 0.999;

/// How an exponent relates to the metric property of JSD^α.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Classification {
    /// α ∈ (0, 1/2]: the triangle inequality holds.
    Metric,
    /// α ≥ 1: the triangle inequality provably fails.
    NotMetric,
    /// α ∈ (1/2, 1): the sufficient condition fails on subintervals; no proof
    /// either way is known, so this is evidence-based only.
    ConjecturedNotMetric,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Classification::Metric => "Metric",
            Classification::NotMetric => "NotMetric",
            Classification::ConjecturedNotMetric => "ConjecturedNotMetric",
        };
        f.write_str(s)
    }
}

/// A positive exponent together with its classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaExponent {
    value: f64,
    classification: Classification,
}

impl AlphaExponent {
    pub fn new(value: f64) -> Result<Self> {
        if value <= 0.0 || !value.is_finite() {
            return Err(Error::Domain(format!(
                "exponent must be positive and finite, got {value}"
            )));
        }
        let classification = if value <= 0.5 {
            Classification::Metric
        } else if value < 1.0 {
            Classification::ConjecturedNotMetric
        } else {
            Classification::NotMetric
        };
        Ok(Self {
            value,
            classification,
        })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn classification(&self) -> Classification {
        self.classification
    }
}

/// Classify a positive exponent.
pub fn classify_alpha(alpha: f64) -> Result<AlphaExponent> {
    AlphaExponent::new(alpha)
}

/// The convex generator of JSD as a Csiszár divergence:
/// f_JS(u) = ½[(1+u) + u·log₂u − (1+u)·log₂(1+u)].
///
/// Evaluated in the algebraically identical form
/// ½[u·log₂(2u/(1+u)) + log₂(2/(1+u))] with `ln_1p`, which stays accurate
/// as u → 1 where the textbook form loses all significant digits.
pub fn f_js(u: f64) -> f64 {
    assert!(u >= 0.0 && !u.is_nan(), "f_js requires u >= 0, got {u}");
    if u == 0.0 {
        return 0.5;
    }
    let a = ((u - 1.0) / (1.0 + u)).ln_1p(); // ln(2u/(1+u))
    let b = ((1.0 - u) / (1.0 + u)).ln_1p(); // ln(2/(1+u))
    0.5 * (u * a + b) / LN_2
}

/// h_α(u) = (1 − u^α)^{1/α} / f_JS(u) for u ∈ [0, 1).
pub fn h_alpha(u: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(0.0..1.0).contains(&u) {
        return Err(Error::Domain(format!(
            "h_alpha requires u in [0, 1), got {u}"
        )));
    }
    Ok((1.0 - u.powf(alpha)).powf(1.0 / alpha) / f_js(u))
}

/// Closed-form derivative of h_α:
/// dh/du = −(1−u^α)^{1/α−1}·{u·log₂u + (u+u^α)[1 − log₂(1+u)]} / (2u·f_JS(u)²).
pub fn dh_alpha_du(u: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::Domain(format!(
            "dh_alpha_du requires u in (0, 1), got {u}"
        )));
    }
    let f = f_js(u);
    let lead = (1.0 - u.powf(alpha)).powf(1.0 / alpha - 1.0);
    Ok(-lead * sign_term(u, alpha) / (2.0 * u * f * f))
}

/// The braced factor u·log₂u + (u+u^α)[1 − log₂(1+u)] whose sign is the
/// negated sign of dh_α/du.
pub fn sign_term(u: f64, alpha: f64) -> f64 {
    assert!(
        u > 0.0 && u < 1.0 && alpha > 0.0,
        "sign_term requires u in (0, 1) and alpha > 0, got u = {u}, alpha = {alpha}"
    );
    u * u.log2() + (u + u.powf(alpha)) * (1.0 - (1.0 + u).log2())
}

/// Δ(u) = u^α − u·ln((1+u)/(2u)) / ln(2/(1+u)) for u ∈ [0, 1).
///
/// Δ ≥ 0 on [0,1) is equivalent to h_α nonincreasing; Δ < 0 somewhere marks
/// failure of the sufficient condition for the triangle inequality.
pub fn delta_u(u: f64, alpha: f64) -> f64 {
    assert!(
        (0.0..1.0).contains(&u) && alpha > 0.0,
        "delta_u requires u in [0, 1) and alpha > 0, got u = {u}, alpha = {alpha}"
    );
    if u == 0.0 {
        // u·ln((1+u)/(2u)) → 0 and u^α → 0.
        return 0.0;
    }
    let num = ((1.0 - u) / (2.0 * u)).ln_1p(); // ln((1+u)/(2u))
    let den = ((1.0 - u) / (1.0 + u)).ln_1p(); // ln(2/(1+u))
    u.powf(alpha) - u * num / den
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha <= 0.0 || !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "exponent must be positive and finite, got {alpha}"
        )));
    }
    Ok(())
}

/// A strictly increasing evaluation grid inside [0, 1).
#[derive(Debug, Clone)]
pub struct ScanGrid {
    points: Vec<f64>,
    spacing: f64,
}

impl ScanGrid {
    /// A uniform grid of `n` points from `lo` to `hi` inclusive.
    pub fn uniform(n: usize, lo: f64, hi: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("grid needs >= 2 points, got {n}")));
        }
        if !(0.0 <= lo && lo < hi && hi < 1.0) {
            return Err(Error::Domain(format!(
                "grid bounds must satisfy 0 <= lo < hi < 1, got [{lo}, {hi}]"
            )));
        }
        let spacing = (hi - lo) / (n - 1) as f64;
        let points = (0..n)
            .map(|i| {
                if i + 1 == n {
                    hi
                } else {
                    lo + spacing * i as f64
                }
            })
            .collect();
        Ok(Self { points, spacing })
    }

    /// The default derivative-scan grid on [`GRID_U_MIN`], [`GRID_U_MAX`]].
    pub fn default_scan(n: usize) -> Self {
        Self::uniform(n, GRID_U_MIN, GRID_U_MAX).expect("default bounds are valid")
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }
}

/// Result of checking h_α for nonincrease on a grid.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct MonotonicityReport {
    pub alpha: f64,
    pub nonincreasing: bool,
    /// Grid point with the largest derivative value.
    pub worst_point: f64,
    pub worst_derivative: f64,
}

/// Evaluate dh_α/du across the grid and report whether h_α is nonincreasing
/// (all derivatives ≤ [`MONOTONICITY_TOL`]).
pub fn monotonicity_scan(alpha: f64, grid: &ScanGrid) -> Result<MonotonicityReport> {
    let mut worst_point = f64::NAN;
    let mut worst_derivative = f64::NEG_INFINITY;
    for &u in grid.points() {
        let d = dh_alpha_du(u, alpha)?;
        if d > worst_derivative {
            worst_derivative = d;
            worst_point = u;
        }
    }
    Ok(MonotonicityReport {
        alpha,
        nonincreasing: worst_derivative <= MONOTONICITY_TOL,
        worst_point,
        worst_derivative,
    })
}

/// A triple of distributions violating the triangle inequality for d_α.
#[derive(Debug, Clone)]
pub struct TriangleCounterexample {
    pub p: ProbDist,
    pub q: ProbDist,
    pub r: ProbDist,
    pub alpha: f64,
    /// d_α(p, q)
    pub lhs: f64,
    /// d_α(p, r) + d_α(r, q)
    pub rhs: f64,
    /// lhs − rhs, strictly above [`TRIANGLE_TOL`] for any stored witness.
    pub gap: f64,
}

/// Search for a triangle-inequality violation of d_α in the given dimension.
///
/// The fixed probe triple (δ₁, midpoint, δ₂) is always tested before random
/// sampling, so the known witness for α ≥ 1 is found regardless of seed.
/// Random triples are drawn from a seeded uniform simplex sampler. A `None`
/// result means "no counterexample found", never "is a metric".
pub fn triangle_search(
    alpha: f64,
    dim: usize,
    samples: usize,
    seed: u64,
) -> Result<Option<TriangleCounterexample>> {
    let a = AlphaExponent::new(alpha)?;
    if dim < 2 {
        return Err(Error::Domain(format!(
            "triangle search needs dimension >= 2, got {dim}"
        )));
    }

    let mut delta1 = vec![0.0; dim];
    delta1[0] = 1.0;
    let mut delta2 = vec![0.0; dim];
    delta2[1] = 1.0;
    let mut mid = vec![0.0; dim];
    mid[0] = 0.5;
    mid[1] = 0.5;
    let probe = [
        ProbDist::new(delta1).expect("probe is valid"),
        ProbDist::new(mid).expect("probe is valid"),
        ProbDist::new(delta2).expect("probe is valid"),
    ];
    if let Some(hit) = check_triple(&probe[0], &probe[2], &probe[1], &a)? {
        return Ok(Some(hit));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let p = ProbDist::sample_simplex(dim, &mut rng);
        let q = ProbDist::sample_simplex(dim, &mut rng);
        let r = ProbDist::sample_simplex(dim, &mut rng);
        if let Some(hit) = check_triple(&p, &q, &r, &a)? {
            return Ok(Some(hit));
        }
    }
    Ok(None)
}

fn check_triple(
    p: &ProbDist,
    q: &ProbDist,
    r: &ProbDist,
    a: &AlphaExponent,
) -> Result<Option<TriangleCounterexample>> {
    let lhs = d_alpha(p, q, a)?;
    let rhs = d_alpha(p, r, a)? + d_alpha(r, q, a)?;
    if lhs > rhs + TRIANGLE_TOL {
        return Ok(Some(TriangleCounterexample {
            p: p.clone(),
            q: q.clone(),
            r: r.clone(),
            alpha: a.value(),
            lhs,
            rhs,
            gap: lhs - rhs,
        }));
    }
    Ok(None)
}

/// Which figure-data surface to emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureKind {
    /// −dh_α/du over u ∈ [GRID_U_MIN, GRID_U_MAX] × α ∈ (0, 1/2].
    DerivativeSurface,
    /// Δ(u) curves for α = 1/2 + δα, δα ∈ {0.01, 0.1, 0.2, 0.3, 0.4}.
    DeltaCurves,
}

/// Grid resolution for [`figure_data`].
#[derive(Debug, Clone, Copy)]
pub struct FigureParams {
    pub u_points: usize,
    /// Number of α samples in (0, 1/2]; only used for the derivative surface.
    pub alpha_points: usize,
}

impl Default for FigureParams {
    fn default() -> Self {
        Self {
            u_points: 200,
            alpha_points: 25,
        }
    }
}

/// Offsets above 1/2 for the Δ(u) curve family, spanning the open interval
/// (0, 1/2) of exponents between the last proven metric and the first proven
/// non-metric.
pub const DELTA_CURVE_OFFSETS: [f64; 5] = [0.01, 0.1, 0.2, 0.3, 0.4];

/// Produce `(u, alpha, value)` rows for one of the two diagnostic figures.
pub fn figure_data(kind: FigureKind, params: &FigureParams) -> Result<Vec<(f64, f64, f64)>> {
    let n_u = params.u_points.max(2);
    let mut rows = Vec::new();
    match kind {
        FigureKind::DerivativeSurface => {
            let grid = ScanGrid::uniform(n_u, GRID_U_MIN, GRID_U_MAX)?;
            let n_a = params.alpha_points.max(1);
            for j in 1..=n_a {
                let alpha = 0.5 * j as f64 / n_a as f64;
                for &u in grid.points() {
                    rows.push((u, alpha, -dh_alpha_du(u, alpha)?));
                }
            }
        }
        FigureKind::DeltaCurves => {
            let grid = ScanGrid::uniform(n_u, 0.0, GRID_U_MAX)?;
            for &off in DELTA_CURVE_OFFSETS.iter() {
                let alpha = 0.5 + off;
                for &u in grid.points() {
                    rows.push((u, alpha, delta_u(u, alpha)));
                }
            }
        }
    }
    Ok(rows)
}
