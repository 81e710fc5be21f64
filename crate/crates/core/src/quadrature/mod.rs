//! One-dimensional quadrature and contour Laurent-coefficient extraction.
//!
//! Smooth integrands go to [`integrate_adaptive`] (Gauss–Kronrod 7/15 with
//! global bisection). Integrands with logarithmic or algebraic endpoint
//! singularities go to [`integrate_tanh_sinh`], which never evaluates the
//! integrand at either endpoint. [`contour_laurent`] applies the trapezoid
//! rule on a circle, which converges geometrically for analytic integrands.
//!
//! Each integrator comes in two flavours: a plain one taking `FnMut(f64) -> f64`
//! and a `try_` one whose integrand may fail with a crate [`Error`](crate::Error).

mod contour;
mod gauss_kronrod;
mod tanh_sinh;

pub use contour::{contour_laurent, trapezoid_coefficients, try_contour_laurent, LaurentCoefficients};
pub use gauss_kronrod::{integrate_adaptive, try_integrate_adaptive};
pub use tanh_sinh::{integrate_tanh_sinh, try_integrate_tanh_sinh};

use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum bisection depth of any Gauss–Kronrod panel.
    pub max_depth: usize,
    /// Maximum tanh-sinh refinement level (step `2^-level`).
    pub ts_max_level: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_depth: 60,
            ts_max_level: 12,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(domain("quadrature tolerances must be positive"));
        }
        if self.ts_max_level < 3 {
            return Err(domain("tanh-sinh needs at least 3 levels"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourConfig {
    pub radius: f64,
    pub min_nodes: usize,
    pub max_nodes: usize,
    pub stabilization_tol: f64,
}

impl Default for ContourConfig {
    fn default() -> Self {
        Self {
            radius: 0.5,
            min_nodes: 64,
            max_nodes: 1024,
            stabilization_tol: 1e-12,
        }
    }
}

impl ContourConfig {
    pub fn with_radius(radius: f64) -> Self {
        Self {
            radius,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0 && self.radius <= 0.75) {
            return Err(domain(format!("contour radius must be in (0, 0.75], got {}", self.radius)));
        }
        if !self.min_nodes.is_power_of_two() || !self.max_nodes.is_power_of_two() {
            return Err(domain("contour node counts must be powers of two"));
        }
        if self.min_nodes > self.max_nodes || self.min_nodes < 4 {
            return Err(domain("contour node counts must satisfy 4 <= min_nodes <= max_nodes"));
        }
        if !(self.stabilization_tol > 0.0) {
            return Err(domain("contour stabilization tolerance must be positive"));
        }
        Ok(())
    }
}
