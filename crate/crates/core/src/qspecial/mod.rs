//! q-analogues: `[x]_q`, the q-gamma function for `q > 1`, `C_q`, the
//! q-Hurwitz zeta function with its regularized product, and Jacobi `θ₄`.

mod qgamma;
mod theta;
mod zeta_q;

pub use crate::quadrature::LaurentCoefficients;
pub use qgamma::{c_q, log_q_gamma};
pub use theta::{theta4, theta4_imag, theta4_imag_from_zero, theta_zero_cancellation};
pub use zeta_q::{
    zeta_q, zeta_q_continued, zeta_q_direct, zeta_q_laurent, zeta_regularized_product_q,
};

use crate::error::{domain, Result};

/// A base `q > 1` for the gamma side, with `log q` cached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QBase {
    q: f64,
    log_q: f64,
}

impl QBase {
    pub fn new(q: f64) -> Result<Self> {
        if !(q > 1.0) || !q.is_finite() {
            return Err(domain(format!("q-base must satisfy q > 1, got {q}")));
        }
        Ok(Self { q, log_q: q.ln() })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn log_q(&self) -> f64 {
        self.log_q
    }

    /// `log(q − 1)`.
    pub fn log_q_minus_one(&self) -> f64 {
        self.log_q.exp_m1().ln()
    }

    /// The base `q²`.
    pub fn squared(&self) -> Self {
        Self {
            q: self.q * self.q,
            log_q: 2.0 * self.log_q,
        }
    }
}

/// A theta nome `0 < p < 1`, with the half-gap `L = |log p|/2` between the
/// zeros `±iL` of `θ₄` on the imaginary axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NomeP {
    p: f64,
    half_gap: f64,
}

impl NomeP {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(domain(format!("theta nome must satisfy 0 < p < 1, got {p}")));
        }
        Ok(Self {
            p,
            half_gap: -0.5 * p.ln(),
        })
    }

    /// The nome `p = 1/q`; `L` is exactly `log q / 2`.
    pub fn from_base(base: &QBase) -> Self {
        Self {
            p: 1.0 / base.q,
            half_gap: 0.5 * base.log_q,
        }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `−log p`.
    pub fn log_recip(&self) -> f64 {
        2.0 * self.half_gap
    }

    pub fn half_gap(&self) -> f64 {
        self.half_gap
    }
}

/// `[x]_q = (qˣ − 1)/(q − 1)`.
pub fn q_number(x: f64, base: &QBase) -> f64 {
    (x * base.log_q).exp_m1() / base.log_q.exp_m1()
}
