//! Seeded generation of block-structured symbol sequences and ensemble
//! statistics over the cursor profile.
//!
//! Each sequence draws from its own substream (seed ⊕ sequence index), so
//! generation parallelizes over sequences and the ensemble is byte-identical
//! regardless of worker count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dist::ProbDist;
use crate::error::{Error, Result};
use crate::seq::{dprime_profile, max_scan, SymbolSequence};

/// Symbols used for generated alphabets, in index order.
const ALPHABET_LABELS: &str = "0123456789abcdefghijklmnopqrstuvwxyz";

/// One homogeneous stretch of a generated sequence.
#[derive(Debug, Clone)]
pub struct Block {
    /// First position covered by this block.
    pub start: usize,
    /// Symbol distribution inside the block.
    pub dist: ProbDist,
}

/// Recipe for a reproducible ensemble of block-structured sequences.
#[derive(Debug, Clone)]
pub struct EnsembleSpec {
    count: usize,
    length: usize,
    blocks: Vec<Block>,
}

impl EnsembleSpec {
    pub fn new(count: usize, length: usize, blocks: Vec<Block>) -> Result<Self> {
        if count == 0 {
            return Err(Error::Domain("ensemble count must be positive".into()));
        }
        if length < 2 {
            return Err(Error::SequenceTooShort {
                len: length,
                min: 2,
            });
        }
        if blocks.is_empty() {
            return Err(Error::Domain("need at least one block".into()));
        }
        if blocks[0].start != 0 {
            return Err(Error::Domain(format!(
                "first block must start at 0, got {}",
                blocks[0].start
            )));
        }
        let dim = blocks[0].dist.len();
        if dim > ALPHABET_LABELS.len() {
            return Err(Error::Domain(format!(
                "alphabet size {dim} exceeds the {} supported labels",
                ALPHABET_LABELS.len()
            )));
        }
        for w in blocks.windows(2) {
            if w[1].start <= w[0].start {
                return Err(Error::Domain(format!(
                    "block starts must increase strictly: {} then {}",
                    w[0].start, w[1].start
                )));
            }
        }
        for b in &blocks {
            if b.start >= length {
                return Err(Error::Domain(format!(
                    "block start {} is past the sequence length {length}",
                    b.start
                )));
            }
            if b.dist.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: b.dist.len(),
                });
            }
        }
        Ok(Self {
            count,
            length,
            blocks,
        })
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    fn alphabet(&self) -> Vec<char> {
        ALPHABET_LABELS
            .chars()
            .take(self.blocks[0].dist.len())
            .collect()
    }
}

/// Parse a block list of the form `0.8,0.2@0;0.2,0.8@500`.
pub fn parse_block_spec(text: &str) -> Result<Vec<Block>> {
    text.split(';')
        .map(|part| {
            let (probs, start) = part.rsplit_once('@').ok_or_else(|| {
                Error::Parse(format!("block '{part}' is missing its '@start' suffix"))
            })?;
            let start: usize = start
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad block start '{start}': {e}")))?;
            Ok(Block {
                start,
                dist: ProbDist::parse_line(probs)?,
            })
        })
        .collect()
}

/// Generate the ensemble. Sequence `i` is drawn from a ChaCha8 stream seeded
/// with `seed ^ i`, so any subset can be regenerated independently.
pub fn generate_ensemble(spec: &EnsembleSpec, seed: u64) -> Vec<SymbolSequence> {
    let alphabet = spec.alphabet();
    (0..spec.count)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ i as u64);
            let mut symbols = Vec::with_capacity(spec.length);
            let mut block_idx = 0;
            for pos in 0..spec.length {
                while block_idx + 1 < spec.blocks.len() && spec.blocks[block_idx + 1].start == pos
                {
                    block_idx += 1;
                }
                symbols.push(spec.blocks[block_idx].dist.sample_index(&mut rng));
            }
            SymbolSequence::new(symbols, alphabet.clone()).expect("generated sequence is valid")
        })
        .collect()
}

fn check_uniform(ensemble: &[SymbolSequence]) -> Result<(usize, usize)> {
    let first = ensemble
        .first()
        .ok_or_else(|| Error::Domain("ensemble is empty".into()))?;
    let (len, n) = (first.len(), first.alphabet_size());
    for s in ensemble {
        if s.len() != len || s.alphabet_size() != n {
            return Err(Error::DimensionMismatch {
                left: len,
                right: s.len(),
            });
        }
    }
    Ok((len, n))
}

/// Mean of d'_α over the ensemble at every cursor position.
/// Rows are `(ell, mean)`, ell ∈ [1, L-1]. The reduction runs in fixed
/// sequence order, so results do not depend on the worker count.
pub fn average_profile(ensemble: &[SymbolSequence], alpha: f64) -> Result<Vec<(usize, f64)>> {
    let (len, _) = check_uniform(ensemble)?;
    let profiles: Vec<Vec<f64>> = ensemble
        .par_iter()
        .map(|s| dprime_profile(s, alpha))
        .collect::<Result<_>>()?;
    let mut acc = vec![0.0f64; len - 1];
    for p in &profiles {
        for (a, v) in acc.iter_mut().zip(p) {
            *a += v;
        }
    }
    let scale = 1.0 / ensemble.len() as f64;
    Ok(acc
        .into_iter()
        .enumerate()
        .map(|(i, s)| (i + 1, s * scale))
        .collect())
}

/// Mean over the ensemble of the per-sequence maximum of d'_α, for each
/// exponent in `alphas`. The per-sequence maximum is located once (it does
/// not depend on α) inside the margin window and then powered.
pub fn mean_max_dprime(
    ensemble: &[SymbolSequence],
    alphas: &[f64],
    margin: usize,
) -> Result<Vec<(f64, f64)>> {
    check_uniform(ensemble)?;
    let maxima: Vec<f64> = ensemble
        .par_iter()
        .map(|s| max_scan(s, 1.0, margin).map(|stat| stat.value))
        .collect::<Result<_>>()?;
    let scale = 1.0 / maxima.len() as f64;
    Ok(alphas
        .iter()
        .map(|&alpha| {
            let mean = maxima.iter().map(|m| m.powf(alpha)).sum::<f64>() * scale;
            (alpha, mean)
        })
        .collect())
}
