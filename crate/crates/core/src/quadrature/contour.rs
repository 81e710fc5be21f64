use std::f64::consts::TAU;

use num_complex::Complex64;

use super::ContourConfig;
use crate::error::{convergence, domain, Error, Result};

/// Laurent coefficients `c₋₁, c₀, c₁` of a function about `s = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaurentCoefficients {
    pub c_m1: Complex64,
    pub c0: Complex64,
    pub c1: Complex64,
}

impl LaurentCoefficients {
    fn max_change(&self, other: &Self) -> f64 {
        [
            rel_change(self.c_m1, other.c_m1),
            rel_change(self.c0, other.c0),
            rel_change(self.c1, other.c1),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// Largest imaginary part among the three coefficients.
    pub fn max_imag(&self) -> f64 {
        self.c_m1.im.abs().max(self.c0.im.abs()).max(self.c1.im.abs())
    }
}

fn rel_change(new: Complex64, old: Complex64) -> f64 {
    (new - old).norm() / new.norm().max(1.0)
}

/// `c_m = (1/2πi) ∮_{|s|=r} g(s) s^{−m−1} ds` for `m ∈ {−1, 0, 1}`, estimated
/// by the trapezoid rule with node doubling until successive estimates agree.
///
/// `pole_order_sought` documents the pole order of `g` at 0 (at most 3); the
/// estimate itself does not depend on it.
pub fn contour_laurent<G>(mut g: G, pole_order_sought: usize, cfg: &ContourConfig) -> Result<LaurentCoefficients>
where
    G: FnMut(Complex64) -> Complex64,
{
    try_contour_laurent(|s| Ok(g(s)), pole_order_sought, cfg)
}

/// [`contour_laurent`] for integrands that can fail.
pub fn try_contour_laurent<G>(mut g: G, pole_order_sought: usize, cfg: &ContourConfig) -> Result<LaurentCoefficients>
where
    G: FnMut(Complex64) -> Result<Complex64>,
{
    cfg.validate()?;
    if pole_order_sought > 3 {
        return Err(domain(format!(
            "contour extraction supports poles of order <= 3, got {pole_order_sought}"
        )));
    }
    let mut sums = NodeSums::default();
    let mut nodes = cfg.min_nodes;
    sums.add_nodes(&mut g, cfg.radius, nodes, 0, 1)?;
    let mut estimate = sums.coefficients(nodes);
    while nodes < cfg.max_nodes {
        // The odd nodes of the doubled grid.
        sums.add_nodes(&mut g, cfg.radius, 2 * nodes, 1, 2)?;
        nodes *= 2;
        let refined = sums.coefficients(nodes);
        if refined.max_change(&estimate) < cfg.stabilization_tol {
            return Ok(refined);
        }
        estimate = refined;
    }
    Err(convergence(format!(
        "contour coefficients not stable to {:e} with {} nodes",
        cfg.stabilization_tol, cfg.max_nodes
    )))
}

/// Single trapezoid estimate with a fixed node count (no doubling).
pub fn trapezoid_coefficients<G>(mut g: G, radius: f64, nodes: usize) -> Result<LaurentCoefficients>
where
    G: FnMut(Complex64) -> Result<Complex64>,
{
    if nodes == 0 || !(radius > 0.0) {
        return Err(domain("trapezoid rule needs positive radius and node count"));
    }
    let mut sums = NodeSums::default();
    sums.add_nodes(&mut g, radius, nodes, 0, 1)?;
    Ok(sums.coefficients(nodes))
}

#[derive(Default)]
struct NodeSums {
    times_s: Complex64,
    plain: Complex64,
    over_s: Complex64,
}

impl NodeSums {
    fn add_nodes<G>(&mut self, g: &mut G, radius: f64, grid: usize, first: usize, stride: usize) -> Result<()>
    where
        G: FnMut(Complex64) -> Result<Complex64>,
    {
        for j in (first..grid).step_by(stride) {
            let s = Complex64::from_polar(radius, TAU * j as f64 / grid as f64);
            let v = g(s)?;
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::NonFinite(format!("contour integrand returned {v} at s={s}")));
            }
            self.times_s += v * s;
            self.plain += v;
            self.over_s += v / s;
        }
        Ok(())
    }

    fn coefficients(&self, nodes: usize) -> LaurentCoefficients {
        let n = nodes as f64;
        LaurentCoefficients {
            c_m1: self.times_s / n,
            c0: self.plain / n,
            c1: self.over_s / n,
        }
    }
}
