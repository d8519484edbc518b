//! Deterministic number and CSV formatting for emitted artifacts.
//!
//! All real numbers written to CSV files or the terminal go through
//! [`fmt_g15`], which renders 15 significant digits in the style of C's
//! `%.15g`. The output is a pure function of the bit pattern, so repeated
//! runs produce byte-identical artifacts.

/// Format a float with 15 significant digits, `%g`-style: fixed notation for
/// moderate magnitudes, scientific otherwise, trailing zeros trimmed.
pub fn fmt_g15(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".to_string()
        } else if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    // 14 digits after the point in scientific notation = 15 significant digits.
    let sci = format!("{:.14e}", x);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific notation always has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if (-4..15).contains(&exp) {
        // Fixed notation with exactly 15 significant digits.
        let decimals = (14 - exp).max(0) as usize;
        let fixed = format!("{:.*}", decimals, x);
        trim_trailing_zeros(&fixed)
    } else {
        let mantissa = trim_trailing_zeros(mantissa);
        format!("{mantissa}e{exp}")
    }
}

fn trim_trailing_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    let t = s.trim_end_matches('0');
    t.trim_end_matches('.').to_string()
}

/// Render rows of `(u, alpha, value)` as CSV under the stable header.
pub fn figure_csv(rows: &[(f64, f64, f64)]) -> String {
    let mut out = String::from("u,alpha,value\n");
    for &(u, alpha, value) in rows {
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_g15(u),
            fmt_g15(alpha),
            fmt_g15(value)
        ));
    }
    out
}

/// Render an averaged cursor profile as CSV under the stable header.
pub fn profile_csv(rows: &[(usize, f64)]) -> String {
    let mut out = String::from("ell,mean_dprime\n");
    for &(ell, v) in rows {
        out.push_str(&format!("{ell},{}\n", fmt_g15(v)));
    }
    out
}

/// Render per-exponent ensemble maxima as CSV under the stable header.
pub fn maxima_csv(rows: &[(f64, f64)]) -> String {
    let mut out = String::from("alpha,mean_max_dprime\n");
    for &(alpha, v) in rows {
        out.push_str(&format!("{},{}\n", fmt_g15(alpha), fmt_g15(v)));
    }
    out
}
