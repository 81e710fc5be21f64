use super::ZETA2;
use crate::error::{domain, Result};

/// Real dilogarithm `Li₂(z) = Σ_{n≥1} zⁿ/n²` for `z ≤ 1`.
///
/// The power series is only summed for `|z| ≤ 1/2`; the rest of the real line
/// is mapped there by the reflection `Li₂(z) + Li₂(1−z) = ζ(2) − log z log(1−z)`,
/// the Landen identity `Li₂(z) + Li₂(z/(z−1)) = −½ log²(1−z)`, and the
/// inversion `Li₂(z) + Li₂(1/z) = −ζ(2) − ½ log²(−z)`.
pub fn dilog(z: f64) -> Result<f64> {
    if z.is_nan() || z > 1.0 {
        return Err(domain(format!("real dilogarithm needs z <= 1, got {z}")));
    }
    if z == 1.0 {
        return Ok(ZETA2);
    }
    if z == f64::NEG_INFINITY {
        return Err(domain("dilogarithm argument is -inf"));
    }
    if z < -1.0 {
        let l = (-z).ln();
        return Ok(-ZETA2 - 0.5 * l * l - dilog(1.0 / z)?);
    }
    if z < -0.5 {
        let l = (-z).ln_1p();
        return Ok(-series(z / (z - 1.0)) - 0.5 * l * l);
    }
    if z <= 0.5 {
        return Ok(series(z));
    }
    Ok(ZETA2 - z.ln() * (-z).ln_1p() - series(1.0 - z))
}

/// Direct series for `|z| ≤ 1/2`; stops when `|z|^{n+1}/((n+1)²(1−|z|)) < 1e-18`.
fn series(z: f64) -> f64 {
    let az = z.abs();
    let mut sum = 0.0;
    let mut zn = z;
    for n in 1..200u32 {
        let nf = n as f64;
        sum += zn / (nf * nf);
        zn *= z;
        let m = nf + 1.0;
        if az.powi(n as i32 + 1) / (m * m * (1.0 - az)) < 1e-18 {
            break;
        }
    }
    sum
}
