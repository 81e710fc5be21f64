use std::f64::consts::TAU;

use num_complex::Complex64;

use super::{LaurentCoefficients, QBase};
use crate::error::{convergence, domain, Result};
use crate::quadrature::{try_contour_laurent, ContourConfig};
use crate::series_core::TruncationPolicy;

/// Radius of the punctured disk around `s = 0` served by [`zeta_q`].
pub const ZETA_Q_DISK_RADIUS: f64 = 0.75;

/// q-Hurwitz zeta `ζ_q(s, x) = Σ_{n≥0} [n + x]_q^{−s}` for `q > 1`, `x > 0`.
///
/// Uses the defining sum for `Re s ≥ 1` and the continued series
/// [`zeta_q_continued`] on the punctured disk `0 < |s| ≤ 0.75`.
pub fn zeta_q(s: Complex64, x: f64, base: &QBase, policy: &TruncationPolicy) -> Result<Complex64> {
    check_x(x)?;
    if s.re >= 1.0 {
        zeta_q_direct(s, x, base, policy)
    } else if s.norm() <= ZETA_Q_DISK_RADIUS {
        zeta_q_continued(s, x, base, policy)
    } else {
        Err(domain(format!(
            "zeta_q is evaluated for Re s >= 1 or 0 < |s| <= {ZETA_Q_DISK_RADIUS}, got {s}"
        )))
    }
}

/// The defining sum, valid for `Re s > 0`.
///
/// Since `[n+1+x]_q > q·[n+x]_q`, term moduli fall at least by `q^{−Re s}`
/// per step and the tail after a term `t` is below `|t| q^{−Re s}/(1 − q^{−Re s})`.
pub fn zeta_q_direct(s: Complex64, x: f64, base: &QBase, policy: &TruncationPolicy) -> Result<Complex64> {
    check_x(x)?;
    policy.validate()?;
    if !(s.re > 0.0) {
        return Err(domain(format!("direct zeta_q sum needs Re s > 0, got {s}")));
    }
    let lq = base.log_q();
    let ratio = (-s.re * lq).exp();
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..policy.max_terms {
        let y = n as f64 + x;
        // log [y]_q, stable for small and large y
        let log_qn = y * lq + (-(-y * lq).exp_m1()).ln() - base.log_q_minus_one();
        let term = (-s * log_qn).exp();
        sum += term;
        let tail = term.norm() * ratio / (1.0 - ratio);
        if tail <= policy.term_eps * (1.0 + sum.norm()) {
            return Ok(sum);
        }
    }
    Err(convergence(format!(
        "direct zeta_q sum at s={s}, x={x} not certified within {} terms",
        policy.max_terms
    )))
}

/// Continuation of `ζ_q(s, x)` obtained by expanding `(1 − q^{−(n+x)})^{−s}`
/// binomially and summing over `n`:
///
/// `ζ_q(s, x) = (q−1)^s Σ_{k≥0} (s)_k/k! · q^{−x(s+k)} / (1 − q^{−(s+k)})`.
///
/// Meromorphic with poles at `s = −k + 2πim/log q`. With
/// `A_k = |(s)_k/k!| q^{−xk}`, the ratios `A_{k+1}/A_k` are bounded by the
/// decreasing sequence `q^{−x} max(1, (|s|+k)/(k+1))`, which gives the
/// certified tail used as the stopping rule.
pub fn zeta_q_continued(s: Complex64, x: f64, base: &QBase, policy: &TruncationPolicy) -> Result<Complex64> {
    check_x(x)?;
    policy.validate()?;
    let lq = base.log_q();
    check_poles(s, lq)?;
    let prefactor = (s * base.log_q_minus_one()).exp();
    let decay = (-x * lq).exp();
    let scale = prefactor.norm() * (-x * s.re * lq).exp();
    let sn = s.norm();
    let mut coeff = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..policy.max_terms {
        let kf = k as f64;
        let shifted = s + kf;
        let term = coeff * (-x * lq * shifted).exp() / (-expm1(-lq * shifted));
        sum += term;
        coeff *= shifted / (kf + 1.0);
        // tail over j >= k+1
        let next = kf + 1.0;
        let rho = decay * f64::max(1.0, (sn + next) / (next + 1.0));
        let re_next = s.re + next;
        if rho < 1.0 && re_next > 0.0 {
            let a_next = coeff.norm() * decay.powf(next);
            let tail = scale * a_next / (1.0 - rho) / (-(-re_next * lq).exp_m1());
            if tail <= policy.term_eps * (1.0 + (prefactor * sum).norm()) {
                return Ok(prefactor * sum);
            }
        }
    }
    Err(convergence(format!(
        "continued zeta_q series at s={s}, x={x} not certified within {} terms",
        policy.max_terms
    )))
}

fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("zeta_q needs x > 0, got {x}")));
    }
    Ok(())
}

fn check_poles(s: Complex64, lq: f64) -> Result<()> {
    let k = (-s.re).round();
    if k < 0.0 {
        return Ok(());
    }
    let spacing = TAU / lq;
    let m = (s.im / spacing).round();
    let pole = Complex64::new(-k, m * spacing);
    if (s - pole).norm() < 1e-12 {
        return Err(domain(format!("zeta_q has a pole at s={pole}")));
    }
    Ok(())
}

/// `e^z − 1` without cancellation for small `|z|`.
fn expm1(z: Complex64) -> Complex64 {
    let (sin_half, _) = (0.5 * z.im).sin_cos();
    let e = z.re.exp();
    Complex64::new(
        z.re.exp_m1() * z.im.cos() - 2.0 * sin_half * sin_half,
        e * z.im.sin(),
    )
}

/// Contour radius about `s = 0` that stays inside the nearest poles `s = −1`
/// and `s = ±2πi/log q`.
pub(crate) fn default_radius(base: &QBase) -> f64 {
    f64::min(0.5, 0.5 * TAU / base.log_q())
}

/// Laurent coefficients `c₋₁, c₀, c₁` of `ζ_q(s, x)` at `s = 0`.
pub fn zeta_q_laurent(x: f64, base: &QBase, cfg: Option<&ContourConfig>) -> Result<LaurentCoefficients> {
    check_x(x)?;
    let policy = TruncationPolicy::default();
    let cfg = cfg
        .copied()
        .unwrap_or_else(|| ContourConfig::with_radius(default_radius(base)));
    try_contour_laurent(|s| zeta_q_continued(s, x, base, &policy), 1, &cfg)
}

/// Log of the generalized zeta-regularized product `Π̂_{n≥0} [n + x]_q`,
/// i.e. `−c₁` where `c₁ = Res_{s=0} ζ_q(s, x)/s²`.
pub fn zeta_regularized_product_q(x: f64, base: &QBase) -> Result<f64> {
    let coeffs = zeta_q_laurent(x, base, None)?;
    if coeffs.c1.im.abs() > 1e-9 {
        return Err(convergence(format!(
            "contour coefficient c1 = {} has a spurious imaginary part",
            coeffs.c1
        )));
    }
    Ok(-coeffs.c1.re)
}
