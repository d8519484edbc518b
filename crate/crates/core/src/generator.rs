//! Convex generators of Csiszár divergences.

use crate::error::{Error, Result};
use crate::metric::f_js;

/// |f(1)| must not exceed this at construction.
pub const F_AT_ONE_TOL: f64 = 1e-12;

/// Slack allowed in the midpoint convexity spot-check.
pub const CONVEXITY_TOL: f64 = 1e-12;

/// Fixed grid for the convexity spot-check at construction.
const CONVEXITY_GRID: [f64; 10] = [0.0, 0.05, 0.1, 0.25, 0.5, 1.0, 1.5, 2.0, 4.0, 8.0];

/// A convex generator f of a Csiszár divergence D_f(P,Q) = Σ qᵢ f(pᵢ/qᵢ),
/// together with the two limits needed to make the sum total:
/// f(0) for pᵢ = 0 terms and f*(0) = lim_{u→∞} f(u)/u for qᵢ = 0 terms.
///
/// Either limit may be `f64::INFINITY` (the Kullback-Leibler generator has
/// f*(0) = ∞, which is exactly why KLD blows up off-support).
pub struct FGenerator {
    label: String,
    eval: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    value_at_0: f64,
    conj_at_0: f64,
}

impl std::fmt::Debug for FGenerator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FGenerator")
            .field("label", &self.label)
            .field("value_at_0", &self.value_at_0)
            .field("conj_at_0", &self.conj_at_0)
            .finish()
    }
}

impl FGenerator {
    /// Build a generator, verifying f(1) = 0 and spot-checking midpoint
    /// convexity on a fixed grid.
    pub fn new(
        label: impl Into<String>,
        value_at_0: f64,
        conj_at_0: f64,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let label = label.into();
        let g = Self {
            label,
            eval: Box::new(eval),
            value_at_0,
            conj_at_0,
        };
        let at_one = g.eval(1.0);
        if at_one.is_nan() || at_one.abs() > F_AT_ONE_TOL {
            return Err(Error::InvalidGenerator {
                label: g.label,
                reason: format!("f(1) = {at_one}, must vanish"),
            });
        }
        for (i, &a) in CONVEXITY_GRID.iter().enumerate() {
            for &b in &CONVEXITY_GRID[i + 1..] {
                let fa = g.eval(a);
                let fb = g.eval(b);
                if !fa.is_finite() || !fb.is_finite() {
                    continue;
                }
                let mid = g.eval(0.5 * (a + b));
                if mid > 0.5 * fa + 0.5 * fb + CONVEXITY_TOL {
                    return Err(Error::InvalidGenerator {
                        label: g.label,
                        reason: format!(
                            "midpoint convexity fails between u = {a} and u = {b}: \
                             f(mid) = {mid} > {}",
                            0.5 * fa + 0.5 * fb
                        ),
                    });
                }
            }
        }
        Ok(g)
    }

    /// Evaluate f(u) for u ≥ 0; u = 0 returns the stored limit.
    pub fn eval(&self, u: f64) -> f64 {
        if u == 0.0 {
            self.value_at_0
        } else {
            (self.eval)(u)
        }
    }

    /// f(0).
    pub fn value_at_0(&self) -> f64 {
        self.value_at_0
    }

    /// f*(0), the conjugate limit applied to q = 0 terms.
    pub fn conj_at_0(&self) -> f64 {
        self.conj_at_0
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Generator of the Kullback-Leibler divergence: f(u) = u·log₂u.
    pub fn kullback_leibler() -> Self {
        Self::new("kl", 0.0, f64::INFINITY, |u| u * u.log2())
            .expect("the KL generator satisfies the construction checks")
    }

    /// Generator of the Jensen-Shannon divergence:
    /// f(u) = ½[(1+u) + u·log₂u − (1+u)·log₂(1+u)]. Self-conjugate, with
    /// f(0) = f*(0) = 1/2.
    pub fn jensen_shannon() -> Self {
        Self::new("js", 0.5, 0.5, f_js)
            .expect("the JS generator satisfies the construction checks")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_pass_their_checks() {
        let kl = FGenerator::kullback_leibler();
        assert_eq!(kl.eval(1.0), 0.0);
        assert_eq!(kl.eval(0.0), 0.0);
        assert_eq!(kl.conj_at_0(), f64::INFINITY);

        let js = FGenerator::jensen_shannon();
        assert_eq!(js.eval(1.0), 0.0);
        assert_eq!(js.eval(0.0), 0.5);
        assert_eq!(js.conj_at_0(), 0.5);
    }

    #[test]
    fn js_generator_is_self_conjugate_on_a_grid() {
        let js = FGenerator::jensen_shannon();
        for k in 1..60 {
            let u = 0.1 * k as f64;
            let conj = u * js.eval(1.0 / u);
            assert!(
                (conj - js.eval(u)).abs() < 1e-14,
                "f*({u}) = {conj} vs f({u}) = {}",
                js.eval(u)
            );
        }
    }

    #[test]
    fn rejects_nonvanishing_at_one() {
        let r = FGenerator::new("bad", 1.0, 1.0, |u| u);
        assert!(matches!(r, Err(Error::InvalidGenerator { .. })));
    }

    #[test]
    fn rejects_concave_function() {
        let r = FGenerator::new("sqrt-ish", -1.0, 1.0, |u| u.sqrt() - 1.0);
        assert!(matches!(r, Err(Error::InvalidGenerator { .. })));
    }
}
