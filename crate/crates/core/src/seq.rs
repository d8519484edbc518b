//! Cursor statistics and recursive segmentation of symbolic sequences.
//!
//! A mobile cursor at position ℓ splits a sequence into left/right empirical
//! frequency distributions; the statistic d'_α(ℓ) is the α-power of their
//! weighted Jensen-Shannon divergence with weights (ℓ/L, (L-ℓ)/L), in bits.
//! Significance of an observed value follows the chi-square estimate through
//! the regularized incomplete gamma.

use serde::Serialize;

use crate::dist::ProbDist;
use crate::error::{Error, Result};
use crate::special::reg_gamma_lower;

use std::f64::consts::LN_2;

/// A finite sequence of symbol indices over a fixed alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolSequence {
    symbols: Vec<usize>,
    alphabet: Vec<char>,
}

impl SymbolSequence {
    pub fn new(symbols: Vec<usize>, alphabet: Vec<char>) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::Parse("alphabet is empty".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for &c in &alphabet {
            if !seen.insert(c) {
                return Err(Error::Parse(format!("duplicate alphabet symbol '{c}'")));
            }
        }
        if symbols.len() < 2 {
            return Err(Error::SequenceTooShort {
                len: symbols.len(),
                min: 2,
            });
        }
        if let Some(&bad) = symbols.iter().find(|&&s| s >= alphabet.len()) {
            return Err(Error::Parse(format!(
                "symbol index {bad} out of range for alphabet of size {}",
                alphabet.len()
            )));
        }
        Ok(Self { symbols, alphabet })
    }

    /// Parse a line of one-character symbols. With `alphabet = None` the
    /// alphabet is inferred as the sorted set of characters present.
    pub fn parse(line: &str, alphabet: Option<&str>) -> Result<Self> {
        let line = line.trim();
        let alphabet: Vec<char> = match alphabet {
            Some(a) => a.chars().collect(),
            None => {
                let mut chars: Vec<char> = line.chars().collect();
                chars.sort_unstable();
                chars.dedup();
                chars
            }
        };
        let lookup: std::collections::HashMap<char, usize> = alphabet
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i))
            .collect();
        let symbols = line
            .chars()
            .map(|c| {
                lookup
                    .get(&c)
                    .copied()
                    .ok_or_else(|| Error::Parse(format!("symbol '{c}' not in alphabet")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(symbols, alphabet)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn to_line(&self) -> String {
        self.symbols.iter().map(|&s| self.alphabet[s]).collect()
    }

    pub fn reversed(&self) -> Self {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        Self {
            symbols,
            alphabet: self.alphabet.clone(),
        }
    }
}

/// Relative symbol frequencies over the half-open window [from, to).
pub fn empirical_dist(seq: &SymbolSequence, from: usize, to: usize) -> Result<ProbDist> {
    if from == to {
        return Err(Error::EmptyWindow { from, to });
    }
    if from > to || to > seq.len() {
        return Err(Error::Domain(format!(
            "window [{from}, {to}) out of bounds for length {}",
            seq.len()
        )));
    }
    let mut counts = vec![0u64; seq.alphabet_size()];
    for &s in &seq.symbols[from..to] {
        counts[s] += 1;
    }
    ProbDist::from_counts(&counts)
}

/// The cursor statistic at one position: the split frequencies and d'_α.
#[derive(Debug, Clone)]
pub struct CursorStat {
    pub ell: usize,
    pub left_freq: ProbDist,
    pub right_freq: ProbDist,
    pub value: f64,
}

/// Weighted JSD in bits between the two sides of a split, from raw counts.
/// The mixture frequency of symbol j is exactly (left_j + right_j) / total.
///
/// The three entropy sums are accumulated separately and combined as
/// mixture + (π₁·left + π₂·right); swapping the sides then swaps the two
/// addends of a commutative addition, so a profile and its mirror agree
/// bit-for-bit.
fn wjsd_bits(left: &[u64], right: &[u64]) -> f64 {
    let l: u64 = left.iter().sum();
    let r: u64 = right.iter().sum();
    let total = (l + r) as f64;
    let (lf, rf) = (l as f64, r as f64);
    let pi1 = lf / total;
    let pi2 = rf / total;
    let mut h_mix = 0.0;
    let mut h_left = 0.0;
    let mut h_right = 0.0;
    for (&cl, &cr) in left.iter().zip(right) {
        let m = (cl + cr) as f64 / total;
        if m > 0.0 {
            h_mix -= m * m.log2();
        }
        if cl > 0 {
            let fj = cl as f64 / lf;
            h_left += fj * fj.log2();
        }
        if cr > 0 {
            let gj = cr as f64 / rf;
            h_right += gj * gj.log2();
        }
    }
    (h_mix + (pi1 * h_left + pi2 * h_right)).max(0.0)
}

/// Weighted JSD (bits) at every cursor position ℓ ∈ [1, len-1]; entry i holds
/// the value for ℓ = i + 1. Runs in O(len · alphabet) with incremental counts.
fn wjsd_profile(symbols: &[usize], alphabet_size: usize) -> Vec<f64> {
    let len = symbols.len();
    let mut left = vec![0u64; alphabet_size];
    let mut right = vec![0u64; alphabet_size];
    for &s in symbols {
        right[s] += 1;
    }
    let mut out = Vec::with_capacity(len.saturating_sub(1));
    for &s in &symbols[..len - 1] {
        left[s] += 1;
        right[s] -= 1;
        out.push(wjsd_bits(&left, &right));
    }
    out
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha <= 0.0 || !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "exponent must be positive and finite, got {alpha}"
        )));
    }
    Ok(())
}

/// The sliding-cursor statistic d'_α(ℓ) = [weighted JSD(left, right)]^α with
/// weights (ℓ/L, (L-ℓ)/L), in bits.
pub fn d_prime(seq: &SymbolSequence, ell: usize, alpha: f64) -> Result<CursorStat> {
    check_alpha(alpha)?;
    let len = seq.len();
    if ell == 0 || ell >= len {
        return Err(Error::Domain(format!(
            "cursor must satisfy 1 <= ell <= {}, got {ell}",
            len - 1
        )));
    }
    let n = seq.alphabet_size();
    let mut left = vec![0u64; n];
    let mut right = vec![0u64; n];
    for &s in &seq.symbols[..ell] {
        left[s] += 1;
    }
    for &s in &seq.symbols[ell..] {
        right[s] += 1;
    }
    let base = wjsd_bits(&left, &right);
    Ok(CursorStat {
        ell,
        left_freq: ProbDist::from_counts(&left)?,
        right_freq: ProbDist::from_counts(&right)?,
        value: base.powf(alpha),
    })
}

/// d'_α at every cursor position ℓ ∈ [1, len-1]; entry i holds ℓ = i + 1.
pub fn dprime_profile(seq: &SymbolSequence, alpha: f64) -> Result<Vec<f64>> {
    check_alpha(alpha)?;
    let base = wjsd_profile(&seq.symbols, seq.alphabet_size());
    Ok(base.into_iter().map(|v| v.powf(alpha)).collect())
}

/// Best cursor inside the margin window over a raw symbol slice. Returns the
/// position (smallest on ties) and the unpowered weighted JSD there, or
/// `None` when the slice is too short for the margin.
fn best_cursor(symbols: &[usize], alphabet_size: usize, margin: usize) -> Option<(usize, f64)> {
    let len = symbols.len();
    if len < 2 * margin + 2 {
        return None;
    }
    let lo = margin.max(1);
    let hi = (len - margin).min(len - 1);
    let profile = wjsd_profile(symbols, alphabet_size);
    let mut best_ell = lo;
    let mut best = profile[lo - 1];
    for ell in lo + 1..=hi {
        let v = profile[ell - 1];
        if v > best {
            best = v;
            best_ell = ell;
        }
    }
    Some((best_ell, best))
}

/// The cursor maximizing d'_α over ℓ ∈ [margin, L-margin], ties broken by
/// the smallest ℓ. The argmax does not depend on α.
pub fn max_scan(seq: &SymbolSequence, alpha: f64, margin: usize) -> Result<CursorStat> {
    check_alpha(alpha)?;
    let (ell, _) = best_cursor(&seq.symbols, seq.alphabet_size(), margin).ok_or(
        Error::SequenceTooShort {
            len: seq.len(),
            min: 2 * margin + 2,
        },
    )?;
    d_prime(seq, ell, alpha)
}

/// Parameters of the chi-square significance estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignificanceParams {
    seq_len: usize,
    alphabet_size: usize,
    subsequences: usize,
}

impl SignificanceParams {
    pub fn new(seq_len: usize, alphabet_size: usize, subsequences: usize) -> Result<Self> {
        if subsequences < 2 {
            return Err(Error::Domain(format!(
                "need at least 2 subsequences, got {subsequences}"
            )));
        }
        if alphabet_size < 2 {
            return Err(Error::Domain(format!(
                "significance needs an alphabet of size >= 2, got {alphabet_size}"
            )));
        }
        if seq_len < 2 {
            return Err(Error::SequenceTooShort {
                len: seq_len,
                min: 2,
            });
        }
        Ok(Self {
            seq_len,
            alphabet_size,
            subsequences,
        })
    }

    pub fn seq_len(&self) -> usize {
        self.seq_len
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn subsequences(&self) -> usize {
        self.subsequences
    }

    /// Degrees of freedom ν = (N-1)(m-1).
    pub fn dof(&self) -> usize {
        (self.alphabet_size - 1) * (self.subsequences - 1)
    }
}

/// Statistical significance of an observed d'_α = x:
/// P(ν/2, L·ln2·x^{1/α}), the probability of seeing x or less under the
/// hypothesis that the whole sequence is drawn from one distribution.
///
/// Since x enters only through x^{1/α} — which recovers the underlying
/// weighted JSD exactly — the significance of a given split is the same for
/// every exponent α.
pub fn significance(x: f64, alpha: f64, params: &SignificanceParams) -> Result<f64> {
    check_alpha(alpha)?;
    if x.is_nan() || x < 0.0 {
        return Err(Error::Domain(format!(
            "observed statistic must be nonnegative, got {x}"
        )));
    }
    let z = params.seq_len as f64 * LN_2 * x.powf(1.0 / alpha);
    let p = reg_gamma_lower(params.dof() as f64 / 2.0, z)?;
    Ok(p.clamp(0.0, 1.0))
}

/// One accepted segmentation point, in global sequence coordinates.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Cut {
    #[serde(rename = "pos")]
    pub position: usize,
    #[serde(rename = "d_prime")]
    pub d_prime_max: f64,
    pub significance: f64,
}

/// Outcome of a recursive segmentation run.
#[derive(Debug, Clone, Serialize)]
pub struct SegmentationResult {
    pub alpha: f64,
    pub threshold: f64,
    pub min_seg_len: usize,
    pub cuts: Vec<Cut>,
}

/// Knobs of [`recursive_segment`].
#[derive(Debug, Clone, Copy)]
pub struct SegmentOptions {
    pub alpha: f64,
    /// Significance threshold s₀ a cut must exceed, in (0, 1).
    pub threshold: f64,
    /// Segments shorter than this are never split further.
    pub min_seg_len: usize,
    /// Cursor positions closer than this to either end are not scanned;
    /// frequencies over a handful of symbols are too noisy for the
    /// chi-square estimate.
    pub margin: usize,
}

impl Default for SegmentOptions {
    fn default() -> Self {
        Self {
            alpha: 0.5,
            threshold: 0.95,
            min_seg_len: 20,
            margin: 10,
        }
    }
}

/// Recursively segment a sequence: find the maximizing cursor, test its
/// significance with L re-derived as the current subsequence length and
/// m = 2, record the cut if it exceeds the threshold, and recurse into both
/// halves. Recursion stops on short segments or insignificant maxima; cuts
/// come back in increasing position order.
pub fn recursive_segment(seq: &SymbolSequence, opts: &SegmentOptions) -> Result<SegmentationResult> {
    check_alpha(opts.alpha)?;
    if !(opts.threshold > 0.0 && opts.threshold < 1.0) {
        return Err(Error::Domain(format!(
            "threshold must lie in (0, 1), got {}",
            opts.threshold
        )));
    }
    if opts.min_seg_len < 2 {
        return Err(Error::Domain(format!(
            "min_seg_len must be at least 2, got {}",
            opts.min_seg_len
        )));
    }
    let mut cuts = Vec::new();
    if seq.alphabet_size() >= 2 {
        segment_range(&seq.symbols, seq.alphabet_size(), 0, opts, &mut cuts)?;
    }
    Ok(SegmentationResult {
        alpha: opts.alpha,
        threshold: opts.threshold,
        min_seg_len: opts.min_seg_len,
        cuts,
    })
}

fn segment_range(
    symbols: &[usize],
    alphabet_size: usize,
    offset: usize,
    opts: &SegmentOptions,
    cuts: &mut Vec<Cut>,
) -> Result<()> {
    let len = symbols.len();
    if len < 2 * opts.min_seg_len {
        return Ok(());
    }
    let Some((ell, base)) = best_cursor(symbols, alphabet_size, opts.margin) else {
        return Ok(());
    };
    let value = base.powf(opts.alpha);
    let params = SignificanceParams::new(len, alphabet_size, 2)?;
    let sig = significance(value, opts.alpha, &params)?;
    if sig > opts.threshold {
        segment_range(&symbols[..ell], alphabet_size, offset, opts, cuts)?;
        cuts.push(Cut {
            position: offset + ell,
            d_prime_max: value,
            significance: sig,
        });
        segment_range(&symbols[ell..], alphabet_size, offset + ell, opts, cuts)?;
    }
    Ok(())
}
