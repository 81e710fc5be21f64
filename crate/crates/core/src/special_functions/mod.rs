//! Classical special functions used by the q-side identities.

mod dilog;
mod gamma;
mod hurwitz;
mod hyp2f1;

pub use dilog::dilog;
pub use gamma::{digamma_int, log_gamma, trigamma_int};
pub(crate) use gamma::log_gamma_complex;
pub use hurwitz::{hurwitz_zeta, hurwitz_zeta_s_derivative_at_0};
pub use hyp2f1::{d2_hyp2f1_dc2, d_hyp2f1_dc, hyp2f1_11};

/// `ζ(2) = π²/6`.
pub const ZETA2: f64 = 1.644_934_066_848_226_4;

/// The Euler–Mascheroni constant `γ`.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `log √(2π)`.
pub const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;

/// `B_{2k}` for `k = 1..=15`.
pub(crate) const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        assert!((ZETA2 - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-16);
        assert!((ZETA2 - dilog(1.0).unwrap()).abs() <= 1e-15);
        assert!((LN_SQRT_2PI - (2.0 * std::f64::consts::PI).sqrt().ln()).abs() <= 2e-16);
    }
}
