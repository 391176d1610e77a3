//! Log-space helpers shared by the law and posterior code.

/// Relative tolerance for log-density identities.
pub const LOG_RTOL: f64 = 1e-9;

/// `log Σ exp(x)`; `-∞` for an empty or all `-∞` input.
pub fn log_sum_exp<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    let xs: Vec<f64> = xs.into_iter().collect();
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    if m == f64::INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// Equality of log-values up to `rtol · max(1, |x|, |y|)`; two `-∞` are equal.
pub fn log_close(x: f64, y: f64, rtol: f64) -> bool {
    if x == f64::NEG_INFINITY || y == f64::NEG_INFINITY {
        return x == y;
    }
    (x - y).abs() <= rtol * 1f64.max(x.abs()).max(y.abs())
}

/// `log(p / (1 - p))`.
pub fn logit(p: f64) -> f64 {
    (p / (1.0 - p)).ln()
}

/// `C(k, 2)`.
pub fn pairs(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}
