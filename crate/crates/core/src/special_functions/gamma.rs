use num_complex::Complex64;

use super::{BERNOULLI_EVEN, EULER_GAMMA, LN_SQRT_2PI, ZETA2};
use crate::error::{domain, Result};

/// `ψ(n) = H_{n−1} − γ` for integer `n ≥ 1`.
pub fn digamma_int(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(domain("digamma has a pole at 0"));
    }
    let h: f64 = (1..n).rev().map(|k| 1.0 / k as f64).sum();
    Ok(h - EULER_GAMMA)
}

/// `ψ′(n) = ζ(2) − H_{n−1,2}` for integer `n ≥ 1`.
pub fn trigamma_int(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(domain("trigamma has a pole at 0"));
    }
    let h2: f64 = (1..n).rev().map(|k| 1.0 / (k as f64 * k as f64)).sum();
    Ok(ZETA2 - h2)
}

const SHIFT: f64 = 15.0;

/// `log Γ(x)` for `x > 0`: upward shift to `x ≥ 15`, then the Stirling series
/// through `B₁₆`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("log_gamma needs finite x > 0, got {x}")));
    }
    let mut y = x;
    let mut prod = 1.0;
    while y < SHIFT {
        prod *= y;
        y += 1.0;
    }
    let recip = 1.0 / y;
    let recip2 = recip * recip;
    let mut corr = 0.0;
    let mut pow = recip;
    for (k, b) in BERNOULLI_EVEN.iter().take(8).enumerate() {
        let two_k = 2.0 * (k as f64 + 1.0);
        corr += b / (two_k * (two_k - 1.0)) * pow;
        pow *= recip2;
    }
    Ok((y - 0.5) * y.ln() - y + LN_SQRT_2PI + corr - prod.ln())
}

/// `log Γ(z)` for `Re z > 0`, determined modulo `2πi`.
pub(crate) fn log_gamma_complex(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.norm() < SHIFT || w.re < 1.0 {
        shift += w.ln();
        w += 1.0;
    }
    let recip = w.inv();
    let recip2 = recip * recip;
    let mut corr = Complex64::new(0.0, 0.0);
    let mut pow = recip;
    for (k, b) in BERNOULLI_EVEN.iter().take(8).enumerate() {
        let two_k = 2.0 * (k as f64 + 1.0);
        corr += pow * (b / (two_k * (two_k - 1.0)));
        pow *= recip2;
    }
    (w - 0.5) * w.ln() - w + LN_SQRT_2PI + corr - shift
}
