use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{CheckReport, Params, Tolerances};
use crate::error::{domain, Result};
use crate::qspecial::{
    c_q, log_q_gamma, theta4_imag, theta4_imag_from_zero, theta_zero_cancellation, zeta_q_direct,
    zeta_q_laurent, zeta_regularized_product_q, NomeP, QBase,
};
use crate::quadrature::{
    try_contour_laurent, try_integrate_adaptive, try_integrate_tanh_sinh, ContourConfig, QuadConfig,
};
use crate::series_core::{
    genfunc_identity_check, log_q_pochhammer_from_logs, partition_gf, partition_numbers,
    q_pochhammer_inf, GenfuncKind, TruncationPolicy,
};
use crate::special_functions::{
    d2_hyp2f1_dc2, d_hyp2f1_dc, dilog, hurwitz_zeta_s_derivative_at_0, hyp2f1_11, log_gamma,
    LN_SQRT_2PI, ZETA2,
};

/// Cap on the partition series used for the second route of the main theta check.
const PARTITION_N_MAX: usize = 20_000;

fn policy() -> TruncationPolicy {
    TruncationPolicy::default()
}

/// Quadrature settings two orders of magnitude tighter than the check tolerance.
fn quad_for(tol: f64) -> QuadConfig {
    let target = (tol * 1e-2).max(1e-13);
    QuadConfig {
        abs_tol: target,
        rel_tol: target,
        ..QuadConfig::default()
    }
}

fn params(pairs: &[(&str, f64)]) -> Params {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn require_t_positive(t: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(domain(format!("t must be positive, got {t}")));
    }
    Ok(())
}

fn require_s(s: f64) -> Result<()> {
    if !(s >= 1.25 && s.is_finite()) {
        return Err(domain(format!("s must satisfy s >= 1.25, got {s}")));
    }
    Ok(())
}

fn require_x_positive(x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(domain(format!("x must be positive, got {x}")));
    }
    Ok(())
}

/// `log(qᵃ − 1)` for `a > 0`.
fn log_q_pow_minus_one(a: f64, base: &QBase) -> f64 {
    (a * base.log_q()).exp_m1().ln()
}

/// `log(q⁻ᵏ; q⁻ᵏ)_∞`.
fn log_euler_recip(k: f64, base: &QBase) -> Result<f64> {
    let l = -k * base.log_q();
    log_q_pochhammer_from_logs(l, l, &policy())
}

/// `∫₀¹ log Γ(x + t) dx = log √(2π) + t log t − t`.
pub fn check_classical_raabe(t: f64, tol: &Tolerances) -> Result<CheckReport> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(domain(format!("t must satisfy t >= 0, got {t}")));
    }
    let tolerance = tol.of("classical_raabe");
    let lhs = try_integrate_adaptive(|x| log_gamma(x + t), 0.0, 1.0, &quad_for(tolerance))?;
    let t_log_t = if t == 0.0 { 0.0 } else { t * t.ln() };
    let rhs = LN_SQRT_2PI + t_log_t - t;
    Ok(CheckReport::new(
        "classical_raabe",
        params(&[("t", t)]),
        lhs.value,
        rhs,
        tolerance,
        format!("gauss-kronrod, {} evaluations", lhs.evaluations),
    ))
}

/// `(q−1)^s/(s log q) · (q^t−1)^{1−s}/q^t · ₂F₁(1,1;s+1;q^{−t})` for complex `s`.
fn theorem2_closed_form(s: Complex64, t: f64, base: &QBase) -> Result<Complex64> {
    let lq = base.log_q();
    let log_prefactor = s * base.log_q_minus_one() + (1.0 - s) * log_q_pow_minus_one(t, base) - t * lq;
    let f = hyp2f1_11(s + 1.0, (-t * lq).exp(), &policy())?;
    Ok(log_prefactor.exp() * f / (s * lq))
}

/// `∫₀¹ ζ_q(s, x + t) dx` against its closed form through `₂F₁(1,1;s+1;q^{−t})`.
pub fn check_theorem2(q: f64, t: f64, s: f64, tol: &Tolerances) -> Result<CheckReport> {
    let base = QBase::new(q)?;
    require_t_positive(t)?;
    require_s(s)?;
    let tolerance = tol.of("theorem2");
    let sc = Complex64::new(s, 0.0);
    let lhs = try_integrate_adaptive(
        |x| Ok(zeta_q_direct(sc, x + t, &base, &policy())?.re),
        0.0,
        1.0,
        &quad_for(tolerance),
    )?;
    let rhs = theorem2_closed_form(sc, t, &base)?.re;
    Ok(CheckReport::new(
        "theorem2",
        params(&[("q", q), ("s", s), ("t", t)]),
        lhs.value,
        rhs,
        tolerance,
        "",
    ))
}

/// `∫₀¹ (q^{n+x+t} − 1)^{−s} dx` against the difference of two `₂F₁` terms.
pub fn check_inner_antiderivative(q: f64, t: f64, s: f64, n: usize, tol: &Tolerances) -> Result<CheckReport> {
    let base = QBase::new(q)?;
    require_t_positive(t)?;
    require_s(s)?;
    let tolerance = tol.of("inner_antiderivative");
    let lq = base.log_q();
    let shift = n as f64 + t;
    let lhs = try_integrate_adaptive(
        |x| Ok((-s * log_q_pow_minus_one(shift + x, &base)).exp()),
        0.0,
        1.0,
        &quad_for(tolerance),
    )?;
    let term = |a: f64| -> Result<f64> {
        let f = hyp2f1_11(Complex64::new(s + 1.0, 0.0), (-a * lq).exp(), &policy())?.re;
        Ok(((1.0 - s) * log_q_pow_minus_one(a, &base) - a * lq).exp() * f)
    };
    let rhs = (term(shift)? - term(shift + 1.0)?) / (s * lq);
    Ok(CheckReport::new(
        "inner_antiderivative",
        params(&[("n", n as f64), ("q", q), ("s", s), ("t", t)]),
        lhs.value,
        rhs,
        tolerance,
        "",
    ))
}

/// `Res_{s=0} F(s)/s³` by contour integration against the closed form with the
/// parameter derivatives of `₂F₁(1,1;c;q^{−t})` at `c = 1`.
pub fn check_residue_formula(q: f64, t: f64, tol: &Tolerances) -> Result<CheckReport> {
    let base = QBase::new(q)?;
    require_t_positive(t)?;
    let tolerance = tol.of("residue_formula");
    let coeffs = try_contour_laurent(
        |s| Ok(theorem2_closed_form(s, t, &base)? / (s * s)),
        3,
        &ContourConfig::default(),
    )?;
    let lhs = coeffs.c_m1.re;

    let lq = base.log_q();
    let qt = (t * lq).exp();
    let z = (-t * lq).exp();
    let one_minus_qt = -(t * lq).exp_m1();
    let log_ratio = base.log_q_minus_one() - log_q_pow_minus_one(t, &base);
    let bracket = one_minus_qt * d2_hyp2f1_dc2(z)?
        + 2.0 * one_minus_qt * log_ratio * d_hyp2f1_dc(z)?
        - qt * log_ratio * log_ratio;
    let rhs = -bracket / (2.0 * qt * lq);
    Ok(CheckReport::new(
        "residue_formula",
        params(&[("q", q), ("t", t)]),
        lhs,
        rhs,
        tolerance,
        format!("contour imaginary part {:.3e}", coeffs.c_m1.im),
    ))
}

/// The bracketed term of the q-Raabe formula,
/// `−1/(2qᵗ log q)·[r(2Li₂(q^{−t}) + log²(1−q^{−t})) + 2r·log((1−q)/(1−qᵗ))·log(1−q^{−t}) − qᵗ log²((1−q)/(1−qᵗ))]`
/// with `r = (1−qᵗ)/(1−q^{−t})`, so that `∫₀¹ log Γ_q(x+t) dx = log C_q + thm1_bracket(q, t)`.
pub fn thm1_bracket(q: f64, t: f64) -> Result<f64> {
    let base = QBase::new(q)?;
    require_t_positive(t)?;
    let lq = base.log_q();
    let qt = (t * lq).exp();
    let z = (-t * lq).exp();
    let log_one_minus_z = (-(-t * lq).exp_m1()).ln();
    let r = (t * lq).exp_m1() / (-t * lq).exp_m1();
    let log_ratio = base.log_q_minus_one() - log_q_pow_minus_one(t, &base);
    let bracket = r * (2.0 * dilog(z)? + log_one_minus_z * log_one_minus_z)
        + 2.0 * r * log_ratio * log_one_minus_z
        - qt * log_ratio * log_ratio;
    Ok(-bracket / (2.0 * qt * lq))
}

/// `∫₀¹ log Γ_q(x + t) dx` by quadrature against `log C_q` plus the closed form.
pub fn check_raabe_q(q: f64, t: f64, tol: &Tolerances) -> Result<CheckReport> {
    let base = QBase::new(q)?;
    require_t_positive(t)?;
    let tolerance = tol.of("raabe_q");
    let lhs = try_integrate_adaptive(|x| log_q_gamma(x + t, &base, &policy()), 0.0, 1.0, &quad_for(tolerance))?;
    let rhs = c_q(&base, &policy())? + thm1_bracket(q, t)?;
    let report = CheckReport::new("raabe_q", params(&[("q", q), ("t", t)]), lhs.value, rhs, tolerance, "");
    Ok(if report.pass {
        report
    } else {
        report.fail_with(
            "quadrature disagrees with the closed form of the q-Raabe formula; \
             compare theorem2 and residue_formula at the same (q, t)",
        )
    })
}

/// `∫₀¹ log Γ_q(x) dx = ζ(2)/log q + ½ log((q−1)/q^{1/6}) + log(q⁻¹; q⁻¹)_∞`.
///
/// The integrand behaves like `−log x` at 0, so this uses tanh-sinh.
pub fn check_raabe_q_special(q: f64, tol: &Tolerances) -> Result<CheckReport> {
    let base = QBase::new(q)?;
    let tolerance = tol.of("raabe_q_special");
    let lhs = try_integrate_tanh_sinh(|x| log_q_gamma(x, &base, &policy()), 0.0, 1.0, &quad_for(tolerance))?;
    let lq = base.log_q();
    let rhs = ZETA2 / lq + 0.5 * (base.log_q_minus_one() - lq / 6.0) + log_euler_recip(1.0, &base)?;
    Ok(CheckReport::new(
        "raabe_q_special",
        params(&[("q", q)]),
        lhs.value,
        rhs,
        tolerance,
        format!("tanh-sinh, {} evaluations", lhs.evaluations),
    ))
}

/// The q-Raabe bracket at `t = 10⁻², 10⁻³, 10⁻⁴` against its limit
/// `(2ζ(2) + log²(q−1))/(2 log q)`. Passes when the last value is within
/// tolerance and the errors decrease.
pub fn check_t_limit(q: f64, tol: &Tolerances) -> Result<CheckReport> {
    let base = QBase::new(q)?;
    let tolerance = tol.of("t_limit");
    let lqm1 = base.log_q_minus_one();
    let limit = (2.0 * ZETA2 + lqm1 * lqm1) / (2.0 * base.log_q());
    let values = [1e-2, 1e-3, 1e-4]
        .into_iter()
        .map(|t| thm1_bracket(q, t))
        .collect::<Result<Vec<_>>>()?;
    let errors: Vec<f64> = values.iter().map(|v| (v - limit).abs()).collect();
    let monotone = errors.windows(2).all(|w| w[1] < w[0]);
    let notes = format!(
        "errors at t=1e-2,1e-3,1e-4: {:.3e}, {:.3e}, {:.3e}",
        errors[0], errors[1], errors[2]
    );
    let report = CheckReport::new("t_limit", params(&[("q", q)]), values[2], limit, tolerance, notes);
    Ok(if monotone {
        report
    } else {
        report.fail_with("errors do not decrease with t")
    })
}

/// Lerch: `exp(−∂ₛζ(0, x)) = √(2π)/Γ(x)`, compared as logarithms.
pub fn check_lerch(x: f64, tol: &Tolerances) -> Result<CheckReport> {
    require_x_positive(x)?;
    let tolerance = tol.of("lerch");
    let lhs = -hurwitz_zeta_s_derivative_at_0(x)?;
    let rhs = LN_SQRT_2PI - log_gamma(x)?;
    Ok(CheckReport::new("lerch", params(&[("x", x)]), lhs, rhs, tolerance, "log domain"))
}

/// `log Π̂_{n≥0} [n + x]_q = log C_q − log Γ_q(x)`.
pub fn check_nk(x: f64, q: f64, tol: &Tolerances) -> Result<CheckReport> {
    let base = QBase::new(q)?;
    require_x_positive(x)?;
    let tolerance = tol.of("nk");
    let lhs = zeta_regularized_product_q(x, &base)?;
    let rhs = c_q(&base, &policy())? - log_q_gamma(x, &base, &policy())?;
    Ok(CheckReport::new("nk", params(&[("q", q), ("x", x)]), lhs, rhs, tolerance, "log domain"))
}

/// `Res_{s=0} ζ_q(s, x) = 1/log q`.
pub fn check_zeta_q_residue(x: f64, q: f64, tol: &Tolerances) -> Result<CheckReport> {
    let base = QBase::new(q)?;
    require_x_positive(x)?;
    let tolerance = tol.of("zeta_q_residue");
    let coeffs = zeta_q_laurent(x, &base, None)?;
    Ok(CheckReport::new(
        "zeta_q_residue",
        params(&[("q", q), ("x", x)]),
        coeffs.c_m1.re,
        1.0 / base.log_q(),
        tolerance,
        format!("contour imaginary part {:.3e}", coeffs.c_m1.im),
    ))
}

/// Jacobi triple product: `(p²;p²)_∞ (py;p²)_∞ (p/y;p²)_∞ = Σ_n (−1)ⁿ p^{n²} yⁿ`.
pub fn check_triple_product(y: f64, p: f64, tol: &Tolerances) -> Result<CheckReport> {
    if !(y > 0.0 && y.is_finite()) {
        return Err(domain(format!("y must be positive, got {y}")));
    }
    let nome = NomeP::new(p)?;
    let tolerance = tol.of("triple_product");
    let policy = policy();
    let p2 = p * p;
    let lhs = q_pochhammer_inf(p2, p2, &policy)?
        * q_pochhammer_inf(p * y, p2, &policy)?
        * q_pochhammer_inf(p / y, p2, &policy)?;
    let rhs = triple_product_sum(y, &nome, &policy)?;
    Ok(CheckReport::new(
        "triple_product",
        params(&[("p", p), ("y", y)]),
        lhs,
        rhs,
        tolerance,
        "",
    ))
}

/// `Σ_{n∈ℤ} (−1)ⁿ p^{n²} yⁿ`, summed symmetrically. With `Y = max(y, 1/y)`,
/// the terms with `|n| ≥ m` are at most `p^{m²} Yᵐ` times a geometric series of
/// ratio `p^{2m+1} Y` on each side.
fn triple_product_sum(y: f64, nome: &NomeP, policy: &TruncationPolicy) -> Result<f64> {
    let lambda = nome.log_recip();
    let log_y = y.ln();
    let big = log_y.abs();
    let mut sum = 1.0;
    for n in 1..policy.max_terms {
        let nf = n as f64;
        let pair = (-lambda * nf * nf + nf * log_y).exp() + (-lambda * nf * nf - nf * log_y).exp();
        if n % 2 == 1 {
            sum -= pair;
        } else {
            sum += pair;
        }
        let m = nf + 1.0;
        let log_ratio = -lambda * (2.0 * m + 1.0) + big;
        if log_ratio < 0.0 {
            let tail = 2.0 * (-lambda * m * m + m * big).exp() / (1.0 - log_ratio.exp());
            if tail <= policy.term_eps {
                return Ok(sum);
            }
        }
    }
    Err(crate::error::convergence(format!(
        "triple product sum at y={y}, p={} not certified within {} terms",
        nome.p(),
        policy.max_terms
    )))
}

/// `1/(Γ_{q²}(x) Γ_{q²}(1−x)) = q^{2x(1−x)} θ₄((1−2x) log q/(2i), 1/q) / ((q⁻²;q⁻²)³_∞ (q²−1))`,
/// compared as logarithms.
pub fn check_theta_gamma_link(x: f64, q: f64, tol: &Tolerances) -> Result<CheckReport> {
    let base = QBase::new(q)?;
    if !(x > 0.0 && x < 1.0) {
        return Err(domain(format!("x must satisfy 0 < x < 1, got {x}")));
    }
    let tolerance = tol.of("theta_gamma_link");
    let squared = base.squared();
    let lhs = -log_q_gamma(x, &squared, &policy())? - log_q_gamma(1.0 - x, &squared, &policy())?;
    let lq = base.log_q();
    let theta = theta4_imag(-(1.0 - 2.0 * x) * lq / 2.0, &NomeP::from_base(&base), &policy())?;
    let rhs = 2.0 * x * (1.0 - x) * lq - 3.0 * log_euler_recip(2.0, &base)? - log_q_pow_minus_one(2.0, &base)
        + theta.ln();
    Ok(CheckReport::new(
        "theta_gamma_link",
        params(&[("q", q), ("x", x)]),
        lhs,
        rhs,
        tolerance,
        "log domain",
    ))
}

/// The two halves `∫_{−L}^0` and `∫_0^L` of `log θ₄(it, p) dt`.
///
/// The left half is integrated in `t`; the right half in the distance `u = L − t`
/// from the zero, so the two halves share no quadrature nodes near a zero.
pub fn main_theta_halves(p: f64, cfg: &QuadConfig) -> Result<(f64, f64)> {
    let nome = NomeP::new(p)?;
    let l = nome.half_gap();
    let policy = policy();
    let left = try_integrate_tanh_sinh(|t| Ok(theta4_imag(t, &nome, &policy)?.ln()), -l, 0.0, cfg)?;
    let right = try_integrate_tanh_sinh(|u| Ok(theta4_imag_from_zero(u, &nome, &policy)?.ln()), 0.0, l, cfg)?;
    Ok((left.value, right.value))
}

/// `−ζ(2) − log p · log(p²;p²)_∞` and `−ζ(2) + log p · log Σ P(n) p^{2n}`.
pub fn main_theta_rhs_routes(p: f64) -> Result<(f64, f64)> {
    let nome = NomeP::new(p)?;
    let log_p = -nome.log_recip();
    let policy = policy();
    let p2 = p * p;
    let euler = log_q_pochhammer_from_logs(2.0 * log_p, 2.0 * log_p, &policy)?;
    let partitions = partition_gf(p2, PARTITION_N_MAX, &policy)?.ln();
    Ok((-ZETA2 - log_p * euler, -ZETA2 + log_p * partitions))
}

/// `∫_{−L}^{L} log θ₄(it, p) dt = −ζ(2) − log p · log(p²;p²)_∞` with `L = −½ log p`,
/// the real form of the integral between the zeros `±iL`.
///
/// Also fails if the two halves differ by more than `1e-9` or the two forms of
/// the right-hand side differ by more than `1e-12`.
pub fn check_main_theta(p: f64, tol: &Tolerances) -> Result<CheckReport> {
    NomeP::new(p)?;
    let tolerance = tol.of("main_theta");
    let cfg = QuadConfig {
        abs_tol: 1e-12,
        rel_tol: 1e-12,
        ..QuadConfig::default()
    };
    let (left, right) = main_theta_halves(p, &cfg)?;
    let (rhs, rhs_partitions) = main_theta_rhs_routes(p)?;
    let half_gap = (left - right).abs();
    let route_gap = (rhs - rhs_partitions).abs();
    let notes = format!("halves differ by {half_gap:.3e}; rhs routes differ by {route_gap:.3e}");
    let mut report = CheckReport::new("main_theta", params(&[("p", p)]), left + right, rhs, tolerance, notes);
    if !(half_gap <= 1e-9) {
        report = report.fail_with("halves of the even integrand disagree");
    }
    if !(route_gap <= 1e-12) {
        report = report.fail_with("Euler product and partition series disagree");
    }
    Ok(report)
}

/// Exact coefficient comparison of a harmonic-number generating function.
pub fn check_genfunc(kind: GenfuncKind, order: usize) -> CheckReport {
    genfunc_identity_check(kind, order)
}

/// Counts partitions of `n` by walking every partition with parts `≤ max_part`.
fn enumerate_partitions(n: usize, max_part: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    (1..=max_part.min(n))
        .map(|part| enumerate_partitions(n - part, part))
        .sum()
}

/// `P(n)` from the pentagonal recurrence against explicit enumeration for
/// `n ≤ n_max`, plus `P(10) = 42`. `lhs` counts mismatches.
pub fn check_partitions(n_max: usize) -> Result<CheckReport> {
    if n_max > 80 {
        return Err(domain(format!("enumeration is limited to n_max <= 80, got {n_max}")));
    }
    let table = partition_numbers(n_max.max(10));
    let mut mismatches = (0..=n_max)
        .filter(|&n| table.get(n).and_then(|v| v.to_u64()) != Some(enumerate_partitions(n, n)))
        .count();
    if table.get(10).and_then(|v| v.to_u64()) != Some(42) {
        mismatches += 1;
    }
    Ok(CheckReport::new(
        "partitions",
        params(&[("n_max", n_max as f64)]),
        mismatches as f64,
        0.0,
        0.0,
        format!("{mismatches} mismatches"),
    ))
}

/// `Σ_{n=−N}^{N+1} (−1)ⁿ p^{n(n−1)} = 0` exactly for `p = 1/p_den`.
pub fn check_theta_zero(p_den: usize, n: usize) -> Result<CheckReport> {
    if p_den < 2 {
        return Err(domain(format!("p = 1/p_den needs p_den >= 2, got {p_den}")));
    }
    let p = BigRational::new(BigInt::from(1), BigInt::from(p_den));
    let sum = theta_zero_cancellation(&p, n)?;
    let mut discrepancy = sum.abs().to_f64().unwrap_or(f64::INFINITY);
    if !sum.is_zero() && discrepancy == 0.0 {
        discrepancy = f64::MIN_POSITIVE;
    }
    Ok(CheckReport::new(
        "theta_zero",
        params(&[("n", n as f64), ("p_den", p_den as f64)]),
        discrepancy,
        0.0,
        0.0,
        format!("exact sum {sum}"),
    ))
}
