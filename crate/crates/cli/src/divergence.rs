//! `jsdm divergence` — entropy and the divergence zoo on the command line.

use std::path::PathBuf;

use clap::Parser;

use jsdm_core::dist::{ProbDist, WeightPair};
use jsdm_core::divergence::{d_alpha, jsd, jsd_weighted, kl_divergence, shannon_entropy};
use jsdm_core::metric::classify_alpha;
use jsdm_core::report::fmt_g15;

use crate::output::emit;
use crate::{CliError, CliResult};

#[derive(Parser)]
#[command(group(clap::ArgGroup::new("measure").required(true)))]
pub struct Args {
    /// First distribution: comma-separated probabilities.
    #[arg(long)]
    p: String,

    /// Second distribution (not needed for --entropy).
    #[arg(long)]
    q: Option<String>,

    /// Jensen-Shannon divergence, in bits.
    #[arg(long, group = "measure")]
    jsd: bool,

    /// Kullback-Leibler divergence D(P||Q), in bits.
    #[arg(long, group = "measure")]
    kld: bool,

    /// Shannon entropy of P, in bits.
    #[arg(long, group = "measure")]
    entropy: bool,

    /// The metric-family member JSD^alpha with this exponent.
    #[arg(long, group = "measure", value_name = "ALPHA")]
    alpha: Option<f64>,

    /// Weighted JSD with weights "PI1,PI2".
    #[arg(long, group = "measure", value_name = "PI1,PI2")]
    weights: Option<String>,

    /// Write the value here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: Args) -> CliResult<()> {
    let p = ProbDist::parse_line(&args.p)?;
    let value = if args.entropy {
        shannon_entropy(&p)
    } else {
        let q_text = args
            .q
            .as_deref()
            .ok_or_else(|| CliError::usage("this measure needs --q"))?;
        let q = ProbDist::parse_line(q_text)?;
        if args.jsd {
            jsd(&p, &q)?
        } else if args.kld {
            kl_divergence(&p, &q)?
        } else if let Some(alpha) = args.alpha {
            d_alpha(&p, &q, &classify_alpha(alpha)?)?
        } else if let Some(w_text) = &args.weights {
            let (w1, w2) = parse_weights(w_text)?;
            jsd_weighted(&p, &q, &WeightPair::new(w1, w2)?)?
        } else {
            unreachable!("clap enforces one measure flag")
        }
    };
    emit(args.out.as_ref(), &fmt_g15(value))
}

fn parse_weights(text: &str) -> CliResult<(f64, f64)> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(CliError::usage(format!(
            "--weights expects \"PI1,PI2\", got '{text}'"
        )));
    }
    let w1 = parts[0]
        .parse()
        .map_err(|e| CliError::usage(format!("bad weight '{}': {e}", parts[0])))?;
    let w2 = parts[1]
        .parse()
        .map_err(|e| CliError::usage(format!("bad weight '{}': {e}", parts[1])))?;
    Ok((w1, w2))
}
