use num_complex::Complex64;

use super::{log_gamma_complex, BERNOULLI_EVEN};
use crate::error::{domain, Result};
use crate::quadrature::{try_contour_laurent, ContourConfig};

/// Largest `|s|` for which [`hurwitz_zeta`] is accurate to `1e-10`.
pub const HURWITZ_S_WINDOW: f64 = 10.0;

/// Hurwitz zeta `ζ(s, x) = Σ_{n≥0} (n + x)^{−s}`, continued to complex `s ≠ 1`.
///
/// For `Re s ≥ −3` this is Euler–Maclaurin summation; for `Re s < −3` it is
/// Hurwitz's Fourier series, whose terms then decay at least like `n^{−4}`.
pub fn hurwitz_zeta(s: Complex64, x: f64) -> Result<Complex64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("Hurwitz zeta needs x > 0, got {x}")));
    }
    if !(s.norm() <= HURWITZ_S_WINDOW) {
        return Err(domain(format!(
            "Hurwitz zeta is evaluated for |s| <= {HURWITZ_S_WINDOW}, got {s}"
        )));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(domain("Hurwitz zeta has a pole at s = 1"));
    }
    if s.re >= -3.0 {
        Ok(euler_maclaurin(s, x))
    } else {
        Ok(fourier(s, x))
    }
}

fn euler_maclaurin(s: Complex64, x: f64) -> Complex64 {
    let target = 12.0 + 0.5 * s.norm();
    let n_direct = (target - x).ceil().max(0.0) as usize;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in (0..n_direct).rev() {
        sum += (-s * (n as f64 + x).ln()).exp();
    }
    let a = n_direct as f64 + x;
    let ln_a = a.ln();
    let a_pow = (-s * ln_a).exp();
    sum += a_pow * a / (s - 1.0) + a_pow * 0.5;

    // Σ_j B_{2j}/(2j)! · s(s+1)…(s+2j−2) · a^{−s−2j+1}
    let inv_a2 = 1.0 / (a * a);
    let mut rising = s;
    let mut power = a_pow / a;
    let mut factorial = 2.0;
    let mut last = f64::INFINITY;
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        let term = rising * power * (b / factorial);
        let size = term.norm();
        if size > last {
            break;
        }
        sum += term;
        last = size;
        if size < 1e-17 * sum.norm().max(1e-300) {
            break;
        }
        let k = 2.0 * j as f64;
        rising *= (s + k + 1.0) * (s + k + 2.0);
        power *= inv_a2;
        factorial *= (k + 3.0) * (k + 4.0);
    }
    sum
}

/// `ζ(s, a) = 2Γ(σ)/(2π)^σ Σ_{n≥1} cos(πσ/2 − 2πna)/n^σ`, `σ = 1 − s`, for
/// `0 < a ≤ 1` and `Re σ > 1`, with `ζ(s, x)` for `x > 1` reduced to the
/// fractional part by `ζ(s, x) = ζ(s, x+1) + x^{−s}`.
fn fourier(s: Complex64, x: f64) -> Complex64 {
    use std::f64::consts::PI;
    let shift = (x.ceil() - 1.0).max(0.0);
    let a = x - shift;
    let sigma = 1.0 - s;
    let prefactor = 2.0 * (log_gamma_complex(sigma) - sigma * (2.0 * PI).ln()).exp();
    // Tail after M terms: cosh(π Im σ / 2) · M^{1−Re σ}/(Re σ − 1).
    let bound_scale = prefactor.norm() * (0.5 * PI * sigma.im).cosh() / (sigma.re - 1.0);
    let target = 1e-13;
    let m = ((bound_scale / target).powf(1.0 / (sigma.re - 1.0)).ceil() as usize).clamp(16, 2_000_000);
    let half = sigma * (0.5 * PI);
    let mut series = Complex64::new(0.0, 0.0);
    for n in (1..=m).rev() {
        let nf = n as f64;
        series += (half - 2.0 * PI * nf * a).cos() * (-sigma * nf.ln()).exp();
    }
    let mut value = prefactor * series;
    // ζ(s, a + shift) = ζ(s, a) − Σ_{j<shift} (a + j)^{−s}
    for j in 0..shift as usize {
        value -= (-s * (a + j as f64).ln()).exp();
    }
    value
}

/// `ζ′(0, x) = log(Γ(x)/√(2π))`, read off as the linear Taylor coefficient of
/// `ζ(s, x)` on the circle `|s| = 1/2`.
pub fn hurwitz_zeta_s_derivative_at_0(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain(format!("Hurwitz zeta needs x > 0, got {x}")));
    }
    let coeffs = try_contour_laurent(|s| hurwitz_zeta(s, x), 1, &ContourConfig::default())?;
    Ok(coeffs.c1.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_functions::{log_gamma, LN_SQRT_2PI, ZETA2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn classical_values() {
        assert!((hurwitz_zeta(c(2.0, 0.0), 1.0).unwrap() - ZETA2).norm() < 1e-13);
        assert!((hurwitz_zeta(c(2.0, 0.0), 2.0).unwrap() - (ZETA2 - 1.0)).norm() < 1e-13);
        assert!((hurwitz_zeta(c(0.0, 0.0), 0.25).unwrap() - 0.25).norm() < 1e-13);
    }

    #[test]
    fn bernoulli_polynomial_values() {
        // ζ(−k, x) = −B_{k+1}(x)/(k+1)
        for x in [0.3, 1.0, 2.7] {
            let b2 = x * x - x + 1.0 / 6.0;
            let v = hurwitz_zeta(c(-1.0, 0.0), x).unwrap();
            assert!((v.re + b2 / 2.0).abs() < 1e-12, "x={x}");
            let b5 = x.powi(5) - 2.5 * x.powi(4) + 5.0 / 3.0 * x.powi(3) - x / 6.0;
            let v = hurwitz_zeta(c(-4.0, 0.0), x).unwrap();
            assert!((v.re + b5 / 5.0).abs() < 1e-10, "x={x}: {} vs {}", v.re, -b5 / 5.0);
        }
    }

    #[test]
    fn mpmath_reference_values() {
        // Frozen from mpmath.zeta(s, x) at 30 digits.
        let cases = [
            (c(0.5, 0.3), 0.7, c(-0.48849886075562175, -0.75721849357339183)),
            (c(-2.5, 4.0), 1.3, c(0.31050185706745933, -0.11309616236278793)),
            (c(3.0, -9.0), 0.2, c(-42.58473756672905, -116.89111557264902)),
            (c(-8.0, 5.0), 0.45, c(-1.6798882227110173, -0.18636013924117246)),
            (c(-10.0, 0.0), 1.6, c(0.0010278502399999965, 0.0)),
            (c(-3.5, -2.0), 3.2, c(-1.6261321277750837, -16.484071705317685)),
        ];
        for (s, x, expected) in cases {
            let v = hurwitz_zeta(s, x).unwrap();
            assert!((v - expected).norm() < 1e-10, "s={s}, x={x}: {v} vs {expected}");
        }
    }

    #[test]
    fn regimes_agree_at_switch() {
        for im in [0.0, 2.0, 6.0] {
            let s = c(-3.0, im);
            let a = euler_maclaurin(s, 0.6);
            let b = fourier(s, 0.6);
            assert!((a - b).norm() < 1e-10, "im={im}: {a} vs {b}");
        }
    }

    #[test]
    fn derivative_at_zero() {
        let d1 = hurwitz_zeta_s_derivative_at_0(1.0).unwrap();
        assert!((d1 + LN_SQRT_2PI).abs() < 1e-9);
        let d2 = hurwitz_zeta_s_derivative_at_0(2.0).unwrap();
        assert!((d2 + LN_SQRT_2PI).abs() < 1e-9);
        let dh = hurwitz_zeta_s_derivative_at_0(0.5).unwrap();
        assert!((dh + 0.5 * std::f64::consts::LN_2).abs() < 1e-9);
    }

    #[test]
    fn lerch_invariant() {
        for x in [0.5, 1.0, 1.5, 2.0, 3.0] {
            let d = hurwitz_zeta_s_derivative_at_0(x).unwrap();
            let ratio = (-d + log_gamma(x).unwrap() - LN_SQRT_2PI).exp();
            assert!((ratio - 1.0).abs() <= 1e-8, "x={x}");
        }
    }

    #[test]
    fn errors() {
        assert!(hurwitz_zeta(c(1.0, 0.0), 1.0).is_err());
        assert!(hurwitz_zeta(c(2.0, 0.0), 0.0).is_err());
        assert!(hurwitz_zeta(c(11.0, 0.0), 1.0).is_err());
        assert!(hurwitz_zeta_s_derivative_at_0(-1.0).is_err());
    }
}
