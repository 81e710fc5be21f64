use super::QBase;
use crate::error::{domain, Result};
use crate::series_core::{log_q_pochhammer_from_logs, TruncationPolicy};

/// `log Γ_q(z)` for `q > 1`, `z > 0`:
///
/// `Γ_q(z) = (q−1)^{1−z} q^{z(z−1)/2} (q⁻¹; q⁻¹)_∞ / (q^{−z}; q⁻¹)_∞`.
///
/// This normalization satisfies `Γ_q(1) = 1` and `Γ_q(z+1) = [z]_q Γ_q(z)`.
pub fn log_q_gamma(z: f64, base: &QBase, policy: &TruncationPolicy) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(domain(format!("q-gamma needs z > 0, got {z}")));
    }
    let lq = base.log_q();
    let numer = log_q_pochhammer_from_logs(-lq, -lq, policy)?;
    let denom = log_q_pochhammer_from_logs(-z * lq, -lq, policy)?;
    Ok((1.0 - z) * base.log_q_minus_one() + 0.5 * z * (z - 1.0) * lq + numer - denom)
}

/// `log C_q` with `C_q = q^{−1/12} (q−1)^{1/2 − log(q−1)/(2 log q)} (q⁻¹; q⁻¹)_∞`.
pub fn c_q(base: &QBase, policy: &TruncationPolicy) -> Result<f64> {
    let lq = base.log_q();
    let lqm1 = base.log_q_minus_one();
    let euler = log_q_pochhammer_from_logs(-lq, -lq, policy)?;
    Ok(-lq / 12.0 + (0.5 - lqm1 / (2.0 * lq)) * lqm1 + euler)
}
