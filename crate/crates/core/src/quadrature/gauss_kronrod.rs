use super::{IntegrationResult, QuadConfig};
use crate::error::{convergence, domain, Error, Result};

// 15-point Kronrod nodes on [-1, 1] (non-negative half) and weights; the
// odd-indexed nodes are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_PANELS: usize = 20_000;

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: usize,
}

/// Adaptive Gauss–Kronrod integration of a smooth `f` over `[a, b]`.
pub fn integrate_adaptive<F>(mut f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<IntegrationResult>
where
    F: FnMut(f64) -> f64,
{
    try_integrate_adaptive(|x| Ok(f(x)), a, b, cfg)
}

/// [`integrate_adaptive`] for integrands that can fail.
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate is below `max(abs_tol, rel_tol·|value|)`. Panel estimates use the
/// QUADPACK scaling of `|K15 − G7|` with a round-off floor.
pub fn try_integrate_adaptive<F>(mut f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<IntegrationResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    cfg.validate()?;
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(domain(format!("integration interval must satisfy a < b, got [{a}, {b}]")));
    }
    let mut evaluations = 0;
    let first = gk15(&mut f, a, b, 0, &mut evaluations)?;
    let mut panels = vec![first];
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if error <= cfg.abs_tol.max(cfg.rel_tol * value.abs()) {
            return Ok(IntegrationResult {
                value,
                error_estimate: error,
                evaluations,
            });
        }
        let (idx, worst) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, p)| (i, *p))
            .expect("at least one panel");
        if worst.depth >= cfg.max_depth || panels.len() >= MAX_PANELS {
            return Err(convergence(format!(
                "adaptive quadrature on [{a}, {b}] stalled at error {error:e} (value {value})"
            )));
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = gk15(&mut f, worst.a, mid, worst.depth + 1, &mut evaluations)?;
        let right = gk15(&mut f, mid, worst.b, worst.depth + 1, &mut evaluations)?;
        panels[idx] = left;
        panels.push(right);
    }
}

fn gk15<F>(f: &mut F, a: f64, b: f64, depth: usize, evaluations: &mut usize) -> Result<Panel>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut eval = |x: f64| -> Result<f64> {
        *evaluations += 1;
        let v = f(x)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite(format!("integrand returned {v} at x={x}")))
        }
    };
    let fc = eval(center)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs_sum = kronrod.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = kronrod * half;
    let abs_sum = abs_sum * half.abs();
    let asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * f64::min(1.0, (200.0 * error / asc).powf(1.5));
    }
    if abs_sum > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * abs_sum);
    }
    Ok(Panel {
        a,
        b,
        value,
        error,
        depth,
    })
}
