//! Shannon entropy and the divergence zoo, all in bits (base-2 logs).

use crate::dist::{ProbDist, WeightPair};
use crate::error::{Error, Result};
use crate::generator::FGenerator;
use crate::metric::AlphaExponent;

/// Shannon entropy H(P) = −Σ pᵢ·log₂pᵢ with the convention 0·log₂0 = 0.
pub fn shannon_entropy(p: &ProbDist) -> f64 {
    p.probs()
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.log2())
        .sum()
}

/// Kullback-Leibler divergence Σ pᵢ·log₂(pᵢ/qᵢ).
///
/// Finite only when P is absolutely continuous with respect to Q; a qᵢ = 0
/// with pᵢ > 0 is reported as [`Error::AbsoluteContinuityViolation`].
pub fn kl_divergence(p: &ProbDist, q: &ProbDist) -> Result<f64> {
    p.check_dim(q)?;
    let mut sum = 0.0;
    for (i, (&pi, &qi)) in p.probs().iter().zip(q.probs()).enumerate() {
        if pi == 0.0 {
            continue; // 0·log(0/q) = 0
        }
        if qi == 0.0 {
            return Err(Error::AbsoluteContinuityViolation { index: i });
        }
        sum += pi * (pi / qi).log2();
    }
    Ok(sum)
}

/// Csiszár f-divergence D_f(P,Q) = Σ qᵢ·f(pᵢ/qᵢ).
///
/// Edge terms follow the standard limits that make the sum total:
/// qᵢ = 0 contributes pᵢ·f*(0) and pᵢ = 0 contributes qᵢ·f(0). If those
/// conventions produce +∞ the result is [`Error::Divergent`].
pub fn f_divergence(p: &ProbDist, q: &ProbDist, f: &FGenerator) -> Result<f64> {
    p.check_dim(q)?;
    let mut sum = 0.0;
    for (&pi, &qi) in p.probs().iter().zip(q.probs()) {
        let term = if qi == 0.0 {
            if pi == 0.0 {
                0.0
            } else {
                pi * f.conj_at_0()
            }
        } else if pi == 0.0 {
            qi * f.value_at_0()
        } else {
            qi * f.eval(pi / qi)
        };
        sum += term;
    }
    if sum.is_infinite() {
        return Err(Error::Divergent);
    }
    Ok(sum)
}

/// Jensen-Shannon divergence H((P+Q)/2) − ½H(P) − ½H(Q), in [0, 1] bits.
pub fn jsd(p: &ProbDist, q: &ProbDist) -> Result<f64> {
    let m = p.midpoint(q)?;
    let v = shannon_entropy(&m) - 0.5 * shannon_entropy(p) - 0.5 * shannon_entropy(q);
    Ok(v.clamp(0.0, 1.0))
}

/// Weighted Jensen-Shannon divergence H(π₁P + π₂Q) − π₁H(P) − π₂H(Q).
pub fn jsd_weighted(p: &ProbDist, q: &ProbDist, w: &WeightPair) -> Result<f64> {
    let m = p.mix(q, w)?;
    let v = shannon_entropy(&m) - w.pi1() * shannon_entropy(p) - w.pi2() * shannon_entropy(q);
    Ok(v.max(0.0))
}

/// The metric-family member d_α(P,Q) = [JSD(P,Q)]^α.
pub fn d_alpha(p: &ProbDist, q: &ProbDist, a: &AlphaExponent) -> Result<f64> {
    Ok(jsd(p, q)?.powf(a.value()))
}

#[cfg(test)]
mod tests {
    // Frozen reference values keep their full oracle precision.
    #![allow(clippy::excessive_precision)]

    use super::*;
    use crate::metric::classify_alpha;

    // Reference values computed with 40-digit arithmetic.
    const H_08_02: f64 = 0.72192809488736235;
    const KL_HALF_QUARTER: f64 = 0.20751874963942191;
    const KL_3DIM: f64 = 0.33645279766002803;
    const JSD_DELTA_MID: f64 = 0.31127812445913286;
    const SQRT_JSD_DELTA_MID: f64 = 0.55792304528414388;
    const H_03_07: f64 = 0.88129089923069262;
    const JSD_HALF_QUARTER: f64 = 0.048794940695398533;

    fn pd(v: &[f64]) -> ProbDist {
        ProbDist::new(v.to_vec()).unwrap()
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(shannon_entropy(&pd(&[0.5, 0.5])), 1.0);
        assert_eq!(shannon_entropy(&pd(&[1.0, 0.0])), 0.0);
        assert!((shannon_entropy(&pd(&[0.8, 0.2])) - H_08_02).abs() < 1e-15);
        // Bounded by log2 of the dimension.
        let h = shannon_entropy(&pd(&[0.2, 0.3, 0.5]));
        assert!(h >= 0.0 && h <= 3.0f64.log2());
    }

    #[test]
    fn kl_examples_and_errors() {
        let p = pd(&[0.3, 0.7]);
        assert_eq!(kl_divergence(&p, &p).unwrap(), 0.0);
        let got = kl_divergence(&pd(&[0.5, 0.5]), &pd(&[0.25, 0.75])).unwrap();
        assert!((got - KL_HALF_QUARTER).abs() < 1e-15);
        let got3 = kl_divergence(&pd(&[0.2, 0.3, 0.5]), &pd(&[0.4, 0.4, 0.2])).unwrap();
        assert!((got3 - KL_3DIM).abs() < 1e-15);
        assert!(matches!(
            kl_divergence(&pd(&[1.0, 0.0]), &pd(&[0.0, 1.0])),
            Err(Error::AbsoluteContinuityViolation { index: 0 })
        ));
        assert!(matches!(
            kl_divergence(&pd(&[1.0]), &pd(&[0.5, 0.5])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn f_divergence_reproduces_kl_and_js() {
        let p = pd(&[0.5, 0.5]);
        let q = pd(&[0.25, 0.75]);
        let kl_gen = FGenerator::kullback_leibler();
        let via_f = f_divergence(&p, &q, &kl_gen).unwrap();
        assert!((via_f - kl_divergence(&p, &q).unwrap()).abs() < 1e-12);

        let js_gen = FGenerator::jensen_shannon();
        assert_eq!(f_divergence(&p, &p, &js_gen).unwrap(), 0.0);
        let via_js = f_divergence(&p, &q, &js_gen).unwrap();
        assert!((via_js - jsd(&p, &q).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn f_divergence_edge_terms() {
        let js_gen = FGenerator::jensen_shannon();
        // Disjoint supports hit both conventions and land on the upper
        // range bound f(0) + f*(0) = 1.
        let v = f_divergence(&pd(&[1.0, 0.0]), &pd(&[0.0, 1.0]), &js_gen).unwrap();
        assert!((v - 1.0).abs() < 1e-15);

        let kl_gen = FGenerator::kullback_leibler();
        assert!(matches!(
            f_divergence(&pd(&[1.0, 0.0]), &pd(&[0.0, 1.0]), &kl_gen),
            Err(Error::Divergent)
        ));
    }

    #[test]
    fn jsd_examples() {
        let p = pd(&[0.37, 0.63]);
        assert_eq!(jsd(&p, &p).unwrap(), 0.0);
        assert_eq!(jsd(&pd(&[1.0, 0.0]), &pd(&[0.0, 1.0])).unwrap(), 1.0);
        let v = jsd(&pd(&[1.0, 0.0]), &pd(&[0.5, 0.5])).unwrap();
        assert!((v - JSD_DELTA_MID).abs() < 1e-15);
        let w = jsd(&pd(&[0.5, 0.5]), &pd(&[0.25, 0.75])).unwrap();
        assert!((w - JSD_HALF_QUARTER).abs() < 1e-15);
        // Symmetry is exact: the mixture and the entropy average commute.
        let a = pd(&[0.1, 0.2, 0.7]);
        let b = pd(&[0.3, 0.3, 0.4]);
        assert_eq!(jsd(&a, &b).unwrap(), jsd(&b, &a).unwrap());
    }

    #[test]
    fn weighted_jsd_examples() {
        let p = pd(&[1.0, 0.0]);
        let q = pd(&[0.0, 1.0]);
        assert_eq!(
            jsd_weighted(&p, &q, &WeightPair::new(1.0, 0.0).unwrap()).unwrap(),
            0.0
        );
        assert_eq!(jsd_weighted(&p, &q, &WeightPair::halves()).unwrap(), 1.0);
        let v = jsd_weighted(&p, &q, &WeightPair::new(0.3, 0.7).unwrap()).unwrap();
        assert!((v - H_03_07).abs() < 1e-15);
        // Halves reduce to plain JSD.
        let a = pd(&[0.6, 0.4]);
        let b = pd(&[0.2, 0.8]);
        let via_w = jsd_weighted(&a, &b, &WeightPair::halves()).unwrap();
        assert!((via_w - jsd(&a, &b).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn d_alpha_examples() {
        let p = pd(&[1.0, 0.0]);
        let q = pd(&[0.0, 1.0]);
        let m = pd(&[0.5, 0.5]);
        let half = classify_alpha(0.5).unwrap();
        let one = classify_alpha(1.0).unwrap();
        assert_eq!(d_alpha(&p, &q, &half).unwrap(), 1.0);
        let v = d_alpha(&p, &m, &half).unwrap();
        assert!((v - SQRT_JSD_DELTA_MID).abs() < 1e-15);
        let w = d_alpha(&p, &m, &one).unwrap();
        assert!((w - JSD_DELTA_MID).abs() < 1e-15);
        assert_eq!(d_alpha(&p, &p, &half).unwrap(), 0.0);
    }
}
