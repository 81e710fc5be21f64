use num_complex::Complex64;

use super::dilog;
use crate::error::{convergence, domain, Result};
use crate::series_core::TruncationPolicy;

/// `₂F₁(1, 1; c; z) = Σ_{k≥0} k!/(c)_k · zᵏ` for complex `c` with `Re c > 0`
/// and real `|z| < 1`.
///
/// Consecutive terms have ratio `(k+1) z/(c+k)`, whose modulus is bounded for
/// all later `j ≥ k` by `|z|·max(1, (k+1)/(Re c + k))`. Summation stops when the
/// resulting geometric tail bound is below `term_eps·(1 + |sum|)`.
pub fn hyp2f1_11(c: Complex64, z: f64, policy: &TruncationPolicy) -> Result<Complex64> {
    policy.validate()?;
    if !(z.abs() < 1.0) {
        return Err(domain(format!("2F1(1,1;c;z) series needs |z| < 1, got {z}")));
    }
    if !(c.re > 0.0) || !c.im.is_finite() {
        return Err(domain(format!("2F1(1,1;c;z) needs Re c > 0, got {c}")));
    }
    let az = z.abs();
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..policy.max_terms {
        let kf = k as f64;
        term *= (kf + 1.0) * z / (c + kf);
        sum += term;
        // `term` is now term_{k+1}; later ratios are bounded by rho.
        let rho = az * f64::max(1.0, (kf + 2.0) / (c.re + kf + 1.0));
        if rho < 1.0 {
            let tail = term.norm() * rho / (1.0 - rho);
            if tail <= policy.term_eps * (1.0 + sum.norm()) {
                return Ok(sum);
            }
        }
    }
    Err(convergence(format!(
        "2F1(1,1;{c};{z}) not certified within {} terms",
        policy.max_terms
    )))
}

/// `∂/∂c ₂F₁(1, 1; c; z)` at `c = 1`, which is `log(1−z)/(1−z)`.
pub fn d_hyp2f1_dc(z: f64) -> Result<f64> {
    check_z(z)?;
    Ok((-z).ln_1p() / (1.0 - z))
}

/// `∂²/∂c² ₂F₁(1, 1; c; z)` at `c = 1`, which is `(2 Li₂(z) + log²(1−z))/(1−z)`.
pub fn d2_hyp2f1_dc2(z: f64) -> Result<f64> {
    check_z(z)?;
    let l = (-z).ln_1p();
    Ok((2.0 * dilog(z)? + l * l) / (1.0 - z))
}

fn check_z(z: f64) -> Result<()> {
    if !(-1.0..1.0).contains(&z) {
        return Err(domain(format!("parameter derivative needs -1 <= z < 1, got {z}")));
    }
    Ok(())
}
