//! `jsdm quantum-jsd` — measurement-maximized JSD between two qubit states.

use std::path::PathBuf;

use clap::Parser;
use serde::{Deserialize, Serialize};

use jsdm_core::quantum::{qjsd_max, CMatrix, DensityMatrix, OptimizerConfig};

use crate::output::{emit, to_json};
use crate::{CliError, CliResult};

#[derive(Parser)]
pub struct Args {
    /// First state: `bloch:X,Y,Z`, inline JSON, or `@file.json`.
    #[arg(long)]
    rho: String,

    /// Second state, same formats.
    #[arg(long)]
    sigma: String,

    /// Exponent for the metric-family value.
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,

    /// Theta grid points; phi uses twice as many.
    #[arg(long, default_value_t = 64)]
    grid: usize,

    /// Cap on refinement iterations.
    #[arg(long, default_value_t = 2000)]
    refine_iters: usize,

    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// JSON state layout: dimension plus row-major [re, im] entries.
#[derive(Deserialize)]
struct StateJson {
    d: usize,
    entries: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct Report {
    /// Maximized JSD in bits; a lower bound to the supremum over all POVMs,
    /// attained within the projective qubit family.
    value: f64,
    alpha: f64,
    alpha_value: f64,
    best_povm_bloch_direction: [f64; 3],
    converged: bool,
    iterations: usize,
    bound: &'static str,
}

fn parse_state(text: &str) -> CliResult<DensityMatrix> {
    if let Some(rest) = text.strip_prefix("bloch:") {
        let coords: Vec<f64> = rest
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|e| CliError::usage(format!("bad Bloch coordinate '{t}': {e}")))
            })
            .collect::<CliResult<_>>()?;
        if coords.len() != 3 {
            return Err(CliError::usage(format!(
                "a Bloch vector needs exactly 3 coordinates, got {}",
                coords.len()
            )));
        }
        return Ok(DensityMatrix::from_bloch(coords[0], coords[1], coords[2])?);
    }
    let json_text = if let Some(path) = text.strip_prefix('@') {
        std::fs::read_to_string(path)?
    } else {
        text.to_string()
    };
    let state: StateJson = serde_json::from_str(&json_text)
        .map_err(|e| CliError::usage(format!("bad state JSON: {e}")))?;
    let mat = CMatrix::from_parts(state.d, &state.entries)?;
    Ok(DensityMatrix::new(mat)?)
}

pub fn run(args: Args) -> CliResult<()> {
    let rho = parse_state(&args.rho)?;
    let sigma = parse_state(&args.sigma)?;
    if args.alpha.is_nan() || args.alpha <= 0.0 {
        return Err(CliError::usage(format!(
            "--alpha must be positive, got {}",
            args.alpha
        )));
    }
    let config = OptimizerConfig {
        theta_points: args.grid.max(2),
        phi_points: (2 * args.grid).max(4),
        max_iters: args.refine_iters,
        ..OptimizerConfig::default()
    };
    let result = qjsd_max(&rho, &sigma, &config)?;
    let direction = result
        .best_povm
        .bloch_direction()
        .expect("optimizer returns a two-outcome qubit POVM");
    let report = Report {
        value: result.value,
        alpha: args.alpha,
        alpha_value: result.value.powf(args.alpha),
        best_povm_bloch_direction: direction,
        converged: result.converged,
        iterations: result.iterations,
        bound: "lower",
    };
    emit(args.out.as_ref(), &to_json(&report)?)
}
