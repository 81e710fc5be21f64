//! Series and product primitives.
//!
//! Every infinite product or series here stops only once a provable bound on
//! the neglected tail drops below [`TruncationPolicy::term_eps`]. If the bound
//! cannot be met within [`TruncationPolicy::max_terms`] the call fails with
//! [`Error::Convergence`] instead of returning a silently truncated value.

mod exact;
mod partition;

pub use exact::{
    genfunc_coeffs_closed, genfunc_direct, genfunc_identity_check, harmonic, harmonic2,
    GenfuncKind, RationalCoefficientList,
};
pub use partition::{partition_gf, partition_numbers, PartitionTable};

use crate::error::{convergence, domain, Error, Result};

/// Termination rule shared by all series and products.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub term_eps: f64,
    pub max_terms: usize,
}

impl TruncationPolicy {
    pub fn new(term_eps: f64, max_terms: usize) -> Result<Self> {
        let policy = Self {
            term_eps,
            max_terms,
        };
        policy.validate()?;
        Ok(policy)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.term_eps > 0.0 && self.term_eps.is_finite()) {
            return Err(domain(format!("term_eps must be positive, got {}", self.term_eps)));
        }
        if self.max_terms == 0 {
            return Err(domain("max_terms must be at least 1"));
        }
        Ok(())
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            term_eps: 1e-16,
            max_terms: 10_000,
        }
    }
}

/// `(a; q)_∞ = Π_{k≥0} (1 − a qᵏ)` for `|q| < 1`.
///
/// Once `|a qᵏ| < 1/2` the remaining factors contribute at most
/// `u / ((1 − |q|)(1 − u))` to the log of the product, where `u = |a q^{k+1}|`;
/// evaluation stops when that bound is below `term_eps`, so the returned
/// value has relative error at most about `term_eps`.
pub fn q_pochhammer_inf(a: f64, q: f64, policy: &TruncationPolicy) -> Result<f64> {
    policy.validate()?;
    if !(q.abs() < 1.0) {
        return Err(domain(format!("q-Pochhammer base must satisfy |q| < 1, got {q}")));
    }
    if !a.is_finite() {
        return Err(Error::NonFinite(format!("q-Pochhammer argument {a}")));
    }
    let qa = q.abs();
    let mut prod = 1.0;
    let mut term = a;
    for _ in 0..policy.max_terms {
        prod *= 1.0 - term;
        term *= q;
        let u = term.abs();
        if prod == 0.0 {
            return Ok(0.0);
        }
        if u < 0.5 && u / ((1.0 - qa) * (1.0 - u)) < policy.term_eps {
            return Ok(prod);
        }
    }
    Err(convergence(format!(
        "(a;q)_inf with a={a}, q={q} not certified within {} factors",
        policy.max_terms
    )))
}

/// `log (a; q)_∞` for `0 ≤ a < 1`, `0 < q < 1`, summed in the log domain.
pub fn log_q_pochhammer_inf(a: f64, q: f64, policy: &TruncationPolicy) -> Result<f64> {
    if !(0.0..1.0).contains(&a) {
        return Err(domain(format!("log (a;q)_inf needs 0 <= a < 1, got a={a}")));
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(domain(format!("log (a;q)_inf needs 0 < q < 1, got q={q}")));
    }
    if a == 0.0 {
        return Ok(0.0);
    }
    log_q_pochhammer_from_logs(a.ln(), q.ln(), policy)
}

/// `log (a; q)_∞` with the arguments given as `log a ≤ 0` and `log q < 0`.
///
/// Taking logarithms keeps factors with `a qᵏ` close to 1 accurate: each factor
/// is evaluated as `log(−expm1(v))` when `v = log a + k log q` is near zero,
/// which is what the q-gamma function needs as its argument tends to 0.
pub fn log_q_pochhammer_from_logs(log_a: f64, log_q: f64, policy: &TruncationPolicy) -> Result<f64> {
    policy.validate()?;
    if !(log_q < 0.0) || !log_q.is_finite() {
        return Err(domain(format!("log q must be negative and finite, got {log_q}")));
    }
    if !(log_a <= 0.0) {
        return Err(domain(format!("log a must be <= 0, got {log_a}")));
    }
    if log_a == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    let qa = log_q.exp();
    let mut sum = 0.0;
    let mut comp = 0.0;
    for k in 0..policy.max_terms {
        let v = log_a + k as f64 * log_q;
        let factor = if v > -std::f64::consts::LN_2 {
            (-v.exp_m1()).ln()
        } else {
            (-v.exp()).ln_1p()
        };
        // Kahan summation; hundreds of factors are needed when q is near 1.
        let y = factor - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if sum == f64::NEG_INFINITY {
            return Ok(sum);
        }
        let u = (v + log_q).exp();
        if u < 0.5 && u / ((1.0 - qa) * (1.0 - u)) < policy.term_eps {
            return Ok(sum);
        }
    }
    Err(convergence(format!(
        "log (a;q)_inf with log a={log_a}, log q={log_q} not certified within {} factors",
        policy.max_terms
    )))
}
