//! `jsdm metric-scan` — exponent classification, monotonicity scan,
//! triangle-violation search, and figure-data emission.

use std::path::PathBuf;

use clap::Parser;
use serde::Serialize;

use jsdm_core::metric::{
    classify_alpha, figure_data, monotonicity_scan, triangle_search, FigureKind, FigureParams,
    ScanGrid, TriangleCounterexample,
};
use jsdm_core::report::figure_csv;

use crate::output::{emit, to_json, write_file};
use crate::{resolve_seed, CliResult};

#[derive(Parser)]
pub struct Args {
    /// Exponent of the family JSD^alpha.
    #[arg(long)]
    alpha: f64,

    /// Points in the u-grid of the monotonicity scan.
    #[arg(long, default_value_t = 10_000)]
    grid_points: usize,

    /// Random triples drawn in the triangle search (the fixed probe triple
    /// is always tested first).
    #[arg(long, default_value_t = 100_000)]
    samples: usize,

    /// Distribution dimension for the triangle search.
    #[arg(long, default_value_t = 2)]
    dim: usize,

    /// RNG seed (falls back to JSDM_SEED, then 0).
    #[arg(long)]
    seed: Option<u64>,

    /// Emit figure data as CSV: 1 = -dh/du surface, 2 = delta curves.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    fig: Option<u8>,

    /// Output destination. With --fig the CSV goes here (stdout when
    /// omitted, in place of the summary); otherwise the JSON summary does.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Summary {
    alpha: f64,
    classification: String,
    nonincreasing: bool,
    worst_point: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<Counterexample>,
}

#[derive(Serialize)]
struct Counterexample {
    p: Vec<f64>,
    q: Vec<f64>,
    r: Vec<f64>,
    lhs: f64,
    rhs: f64,
    gap: f64,
}

impl From<TriangleCounterexample> for Counterexample {
    fn from(c: TriangleCounterexample) -> Self {
        Self {
            p: c.p.probs().to_vec(),
            q: c.q.probs().to_vec(),
            r: c.r.probs().to_vec(),
            lhs: c.lhs,
            rhs: c.rhs,
            gap: c.gap,
        }
    }
}

pub fn run(args: Args) -> CliResult<()> {
    let exponent = classify_alpha(args.alpha)?;
    let seed = resolve_seed(args.seed)?;

    if let Some(fig) = args.fig {
        let kind = match fig {
            1 => FigureKind::DerivativeSurface,
            _ => FigureKind::DeltaCurves,
        };
        let params = FigureParams {
            u_points: args.grid_points.clamp(2, 2_000),
            ..FigureParams::default()
        };
        let csv = figure_csv(&figure_data(kind, &params)?);
        match &args.out {
            Some(path) => write_file(path, &csv)?,
            // Figure data takes the stream; the summary would interleave.
            None => return emit(None, &csv),
        }
    }

    let grid = ScanGrid::default_scan(args.grid_points.max(2));
    let report = monotonicity_scan(args.alpha, &grid)?;
    let hit = triangle_search(args.alpha, args.dim, args.samples, seed)?;

    let summary = Summary {
        alpha: args.alpha,
        classification: exponent.classification().to_string(),
        nonincreasing: report.nonincreasing,
        worst_point: report.worst_point,
        counterexample: hit.map(Counterexample::from),
    };
    let summary_out = if args.fig.is_some() {
        None
    } else {
        args.out.as_ref()
    };
    emit(summary_out, &to_json(&summary)?)
}
