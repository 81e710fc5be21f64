use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::NomeP;
use crate::error::{convergence, domain, Result};
use crate::series_core::TruncationPolicy;

/// `θ₄(w, p) = Σ_{n∈ℤ} (−1)ⁿ p^{n²} e^{2niw}`, summed as `1 + 2Σ_{n≥1} (−1)ⁿ p^{n²} cos(2nw)`.
///
/// Accurate for `|Im w| ≤ L + 1`. The terms are bounded by
/// `2 exp(−λn² + 2n|Im w|)` with `λ = −log p`; their ratios decrease in `n`,
/// so once a ratio drops below one the remaining sum is bounded geometrically.
pub fn theta4(w: Complex64, nome: &NomeP, policy: &TruncationPolicy) -> Result<Complex64> {
    policy.validate()?;
    let y = w.im.abs();
    check_window(y, nome)?;
    let lambda = nome.log_recip();
    let mut sum = Complex64::new(1.0, 0.0);
    for n in 1..policy.max_terms {
        let nf = n as f64;
        let base = Complex64::new(-lambda * nf * nf, 0.0);
        let arg = Complex64::new(0.0, 2.0 * nf) * w;
        let pair = (base + arg).exp() + (base - arg).exp();
        if n % 2 == 1 {
            sum -= pair;
        } else {
            sum += pair;
        }
        if gaussian_tail(lambda, y, n + 1) <= policy.term_eps {
            return Ok(sum);
        }
    }
    Err(convergence(format!("theta4 at w={w} not certified within {} terms", policy.max_terms)))
}

/// Bound on `Σ_{m≥first} 2 exp(−λm² + 2my)`, or infinity when the ratio test
/// does not yet apply.
fn gaussian_tail(lambda: f64, y: f64, first: usize) -> f64 {
    let m = first as f64;
    let ratio = (-lambda * (2.0 * m + 1.0) + 2.0 * y).exp();
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    2.0 * (-lambda * m * m + 2.0 * m * y).exp() / (1.0 - ratio)
}

fn check_window(y: f64, nome: &NomeP) -> Result<()> {
    if !(y <= nome.half_gap() + 1.0) {
        return Err(convergence(format!(
            "theta4 evaluated outside its accuracy window |Im w| <= L + 1 = {}",
            nome.half_gap() + 1.0
        )));
    }
    Ok(())
}

/// `θ₄(it, p)`, real and even in `t`, with zeros at `t = ±L`.
///
/// Near the middle this is `1 + 2Σ_{n≥1} (−1)ⁿ p^{n²} cosh(2nt)`. Closer to
/// the zeros the same series is regrouped by pairing `n` with `−1−n`, which
/// with `u = L − |t|` gives
/// `θ₄(it, p) = 2e^{−u} Σ_{n≥0} (−1)ⁿ p^{n(n+1)} sinh((2n+1)u)`:
/// the factor vanishing at the zero is explicit, so the value keeps full
/// relative accuracy as `t → ±L` and is exactly 0 there.
pub fn theta4_imag(t: f64, nome: &NomeP, policy: &TruncationPolicy) -> Result<f64> {
    policy.validate()?;
    if !t.is_finite() {
        return Err(domain(format!("theta4_imag needs finite t, got {t}")));
    }
    let at = t.abs();
    check_window(at, nome)?;
    if at <= 0.5 * nome.half_gap() {
        cosh_form(at, nome, policy)
    } else {
        sinh_form(nome.half_gap() - at, nome, policy)
    }
}

/// `θ₄(i(L − u), p)` for `0 ≤ u ≤ 2L`, i.e. [`theta4_imag`] parametrized by
/// the distance `u` from the zero at `t = L`. Passing `u` directly avoids the
/// rounding of `L − u` when `u` is far below the spacing of doubles near `L`.
pub fn theta4_imag_from_zero(u: f64, nome: &NomeP, policy: &TruncationPolicy) -> Result<f64> {
    policy.validate()?;
    let half_gap = nome.half_gap();
    if !(0.0..=2.0 * half_gap).contains(&u) {
        return Err(domain(format!("distance from the zero must lie in [0, 2L], got {u}")));
    }
    if u <= 0.5 * half_gap {
        sinh_form(u, nome, policy)
    } else if u < 1.5 * half_gap {
        cosh_form((half_gap - u).abs(), nome, policy)
    } else {
        sinh_form(2.0 * half_gap - u, nome, policy)
    }
}

fn cosh_form(at: f64, nome: &NomeP, policy: &TruncationPolicy) -> Result<f64> {
    let lambda = nome.log_recip();
    let mut sum = 1.0;
    for n in 1..policy.max_terms {
        let nf = n as f64;
        let pair = (-lambda * nf * nf + 2.0 * nf * at).exp() + (-lambda * nf * nf - 2.0 * nf * at).exp();
        if n % 2 == 1 {
            sum -= pair;
        } else {
            sum += pair;
        }
        if gaussian_tail(lambda, at, n + 1) <= policy.term_eps {
            return Ok(sum);
        }
    }
    Err(convergence(format!("theta4 cosh series at t={at} not certified within {} terms", policy.max_terms)))
}

fn sinh_form(u: f64, nome: &NomeP, policy: &TruncationPolicy) -> Result<f64> {
    let lambda = nome.log_recip();
    let au = u.abs();
    let mut sum = 0.0;
    for n in 0..policy.max_terms {
        let nf = n as f64;
        let term = (-lambda * nf * (nf + 1.0)).exp() * ((2.0 * nf + 1.0) * u).sinh();
        if n % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        // |2e^{−u} p^{m(m+1)} sinh((2m+1)u)| ≤ exp(−λm(m+1) + (2m+1)|u| − u)
        let m = nf + 1.0;
        let ratio = (-2.0 * lambda * (m + 1.0) + 2.0 * au).exp();
        if ratio < 1.0 {
            let bound = (-lambda * m * (m + 1.0) + (2.0 * m + 1.0) * au - u).exp() / (1.0 - ratio);
            if bound <= policy.term_eps {
                return Ok(2.0 * (-u).exp() * sum);
            }
        }
    }
    Err(convergence(format!("theta4 sinh series at u={u} not certified within {} terms", policy.max_terms)))
}

/// Exact partial sum `Σ_{n=−N}^{N+1} (−1)ⁿ p^{n(n−1)}`, i.e. `θ₄` at its zero
/// `½ i log p` truncated symmetrically about `n = ½`. The range is closed under
/// `n ↔ 1−n`, which maps each term to its negative, so the result is 0.
pub fn theta_zero_cancellation(p: &BigRational, n_max: usize) -> Result<BigRational> {
    if !(p > &BigRational::zero() && p < &BigRational::one()) {
        return Err(domain(format!("theta nome must satisfy 0 < p < 1, got {p}")));
    }
    let lo = -(n_max as i64);
    let hi = n_max as i64 + 1;
    let mut sum = BigRational::zero();
    for n in lo..=hi {
        let exponent = (n * (n - 1)) as usize;
        let term = num_traits::pow(p.clone(), exponent);
        if n.rem_euclid(2) == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}
