//! q-gamma, Jacobi theta and zeta-regularized product functions, together with
//! a harness that re-derives the identities connecting them numerically.
//!
//! The crate is split into five layers:
//!
//! * [`series_core`]: q-Pochhammer products with certified tails, partition
//!   numbers, and exact rational power series for harmonic-number identities.
//! * [`special_functions`]: dilogarithm, the `2F1(1,1;c;z)` family and its
//!   parameter derivatives, log-gamma, digamma/trigamma at integers, and the
//!   Hurwitz zeta function for complex `s`.
//! * [`qspecial`]: `[x]_q`, the q-gamma function for `q > 1`, the constant
//!   `C_q`, the q-Hurwitz zeta function and its regularized product, and `θ₄`.
//! * [`quadrature`]: adaptive Gauss–Kronrod, tanh-sinh, and contour Laurent
//!   coefficient extraction.
//! * [`verify`]: one named check per identity, producing [`verify::CheckReport`]s.

pub mod error;
pub mod qspecial;
pub mod quadrature;
pub mod series_core;
pub mod special_functions;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Complex scalar used for `s` in the zeta functions and for contour nodes.
pub type ComplexValue = Complex64;
