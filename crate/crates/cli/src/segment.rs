//! `jsdm segment` — recursive segmentation of sequences from a text file,
//! one sequence per line, one character per symbol.

use std::path::PathBuf;

use clap::Parser;
use serde::Serialize;

use jsdm_core::seq::{recursive_segment, Cut, SegmentOptions, SymbolSequence};

use crate::output::{emit, to_json};
use crate::{CliError, CliResult};

#[derive(Parser)]
pub struct Args {
    /// Input file: one sequence per line, one character per symbol.
    #[arg(long = "in")]
    input: PathBuf,

    /// Exponent applied to the cursor statistic.
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,

    /// Significance threshold s0 a cut must exceed.
    #[arg(long, default_value_t = 0.95)]
    threshold: f64,

    /// Segments shorter than this are not split further.
    #[arg(long, default_value_t = 20)]
    min_seg_len: usize,

    /// Cursor positions this close to a segment end are not scanned.
    #[arg(long, default_value_t = 10)]
    margin: usize,

    /// Fixed alphabet, e.g. "01"; inferred per line when omitted.
    #[arg(long)]
    alphabet: Option<String>,

    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Report {
    alpha: f64,
    threshold: f64,
    cuts: Vec<Cut>,
}

pub fn run(args: Args) -> CliResult<()> {
    let text = std::fs::read_to_string(&args.input)?;
    let opts = SegmentOptions {
        alpha: args.alpha,
        threshold: args.threshold,
        min_seg_len: args.min_seg_len,
        margin: args.margin,
    };
    let mut reports = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let seq = SymbolSequence::parse(line, args.alphabet.as_deref())?;
        let result = recursive_segment(&seq, &opts)?;
        reports.push(Report {
            alpha: result.alpha,
            threshold: result.threshold,
            cuts: result.cuts,
        });
    }
    let json = match reports.len() {
        0 => return Err(CliError::usage("input file contains no sequences")),
        1 => to_json(&reports[0])?,
        _ => to_json(&reports)?,
    };
    emit(args.out.as_ref(), &json)
}
