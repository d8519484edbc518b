//! `jsdm simulate` — seeded block-ensemble generation with profile and
//! max-statistic tables for plotting.

use clap::Parser;

use jsdm_core::ensemble::{
    average_profile, generate_ensemble, mean_max_dprime, parse_block_spec, EnsembleSpec,
};
use jsdm_core::report::{fmt_g15, maxima_csv, profile_csv};

use crate::output::write_file;
use crate::{resolve_seed, CliError, CliResult};

#[derive(Parser)]
pub struct Args {
    /// Number of sequences.
    #[arg(long, default_value_t = 500)]
    count: usize,

    /// Symbols per sequence.
    #[arg(long, default_value_t = 1000)]
    length: usize,

    /// Block layout: `probs@start` separated by `;`.
    #[arg(long, default_value = "0.8,0.2@0;0.2,0.8@500")]
    blocks: String,

    /// RNG seed (falls back to JSDM_SEED, then 0).
    #[arg(long)]
    seed: Option<u64>,

    /// Exponents for the emitted tables, comma separated.
    #[arg(long, default_value = "0.25,0.5,1.0")]
    alpha_list: String,

    /// Cursor margin for the per-sequence maximum.
    #[arg(long, default_value_t = 10)]
    margin: usize,

    /// Output files are `<prefix>_fig3a_alpha<a>.csv` and `<prefix>_fig3b.csv`.
    #[arg(long)]
    out_prefix: String,
}

pub fn run(args: Args) -> CliResult<()> {
    let alphas = parse_alpha_list(&args.alpha_list)?;
    let blocks = parse_block_spec(&args.blocks)?;
    let spec = EnsembleSpec::new(args.count, args.length, blocks)?;
    let seed = resolve_seed(args.seed)?;

    let ensemble = generate_ensemble(&spec, seed);

    for &alpha in &alphas {
        let profile = average_profile(&ensemble, alpha)?;
        let path = format!("{}_fig3a_alpha{}.csv", args.out_prefix, fmt_g15(alpha));
        write_file(path.as_ref(), &profile_csv(&profile))?;
    }

    let maxima = mean_max_dprime(&ensemble, &alphas, args.margin)?;
    let path = format!("{}_fig3b.csv", args.out_prefix);
    write_file(path.as_ref(), &maxima_csv(&maxima))?;
    Ok(())
}

fn parse_alpha_list(text: &str) -> CliResult<Vec<f64>> {
    let alphas: Vec<f64> = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| CliError::usage(format!("bad exponent '{}': {e}", t.trim())))
        })
        .collect::<CliResult<_>>()?;
    if alphas.is_empty() || alphas.iter().any(|&a| a.is_nan() || a <= 0.0) {
        return Err(CliError::usage(
            "--alpha-list needs at least one positive exponent",
        ));
    }
    Ok(alphas)
}
