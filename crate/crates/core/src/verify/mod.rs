//! Numerical verification of the identities tying the q-gamma function, the
//! q-Hurwitz zeta function and `θ₄` together.
//!
//! Each check evaluates the two sides of one identity through separate code
//! paths and returns a [`CheckReport`]. [`run_all`] sweeps every check over its
//! default parameter grid; [`run_selected`] narrows that to named checks and
//! lets individual grid axes be pinned to a single value.

mod checks;
mod report;

pub use checks::{
    check_classical_raabe, check_genfunc, check_inner_antiderivative, check_lerch, check_main_theta,
    check_nk, check_partitions, check_raabe_q, check_raabe_q_special, check_residue_formula,
    check_t_limit, check_theorem2, check_theta_gamma_link, check_theta_zero, check_triple_product,
    check_zeta_q_residue, main_theta_halves, main_theta_rhs_routes, thm1_bracket,
};
pub use report::{CheckReport, Params};

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::series_core::GenfuncKind;

/// Tolerance per check family. Exact families (`genfunc_*`, `partitions`,
/// `theta_zero`) always use 0 and are not listed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tolerances {
    entries: BTreeMap<String, f64>,
}

const DEFAULT_TOLERANCES: [(&str, f64); 13] = [
    ("classical_raabe", 1e-9),
    ("inner_antiderivative", 1e-9),
    ("lerch", 1e-8),
    ("main_theta", 1e-6),
    ("nk", 1e-7),
    ("raabe_q", 1e-7),
    ("raabe_q_special", 1e-7),
    ("residue_formula", 1e-9),
    ("t_limit", 1e-3),
    ("theorem2", 1e-8),
    ("theta_gamma_link", 1e-9),
    ("triple_product", 1e-10),
    ("zeta_q_residue", 1e-8),
];

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            entries: DEFAULT_TOLERANCES
                .iter()
                .map(|&(k, v)| (k.to_string(), v))
                .collect(),
        }
    }
}

impl Tolerances {
    /// Every non-exact family set to the same tolerance.
    pub fn uniform(tol: f64) -> Result<Self> {
        let mut t = Self::default();
        for family in DEFAULT_TOLERANCES.map(|(k, _)| k) {
            t.set(family, tol)?;
        }
        Ok(t)
    }

    pub fn get(&self, family: &str) -> Option<f64> {
        self.entries.get(family).copied()
    }

    pub fn set(&mut self, family: &str, tol: f64) -> Result<()> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(domain(format!("tolerance must be positive, got {tol}")));
        }
        match self.entries.get_mut(family) {
            Some(slot) => {
                *slot = tol;
                Ok(())
            }
            None => Err(domain(format!("no adjustable tolerance for check family {family:?}"))),
        }
    }

    pub fn entries(&self) -> &BTreeMap<String, f64> {
        &self.entries
    }

    pub(crate) fn of(&self, family: &str) -> f64 {
        self.get(family)
            .unwrap_or_else(|| panic!("tolerance table has no entry for {family}"))
    }
}

/// Pins grid axes to a single value. An axis only applies to families whose
/// parameters include it.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GridOverrides {
    pub q: Option<f64>,
    pub t: Option<f64>,
    pub p: Option<f64>,
    pub x: Option<f64>,
    pub s: Option<f64>,
    pub y: Option<f64>,
    pub n: Option<u32>,
}

impl GridOverrides {
    /// Rejects degenerate values before anything is evaluated.
    pub fn validate(&self) -> Result<()> {
        let bad = |name: &str, v: f64, rule: &str| domain(format!("--{name} {v}: must satisfy {rule}"));
        if let Some(q) = self.q {
            if !(q > 1.0 && q.is_finite()) {
                return Err(bad("q", q, "q > 1"));
            }
        }
        if let Some(t) = self.t {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(bad("t", t, "t >= 0"));
            }
        }
        if let Some(p) = self.p {
            if !(p > 0.0 && p < 1.0) {
                return Err(bad("p", p, "0 < p < 1"));
            }
        }
        if let Some(x) = self.x {
            if !(x > 0.0 && x.is_finite()) {
                return Err(bad("x", x, "x > 0"));
            }
        }
        if let Some(s) = self.s {
            if !(s >= 1.25 && s.is_finite()) {
                return Err(bad("s", s, "s >= 1.25"));
            }
        }
        if let Some(y) = self.y {
            if !(y > 0.0 && y.is_finite()) {
                return Err(bad("y", y, "y > 0"));
            }
        }
        Ok(())
    }

    fn apply(&self, params: &mut Params) {
        let axes = [
            ("q", self.q),
            ("t", self.t),
            ("p", self.p),
            ("x", self.x),
            ("s", self.s),
            ("y", self.y),
            ("n", self.n.map(f64::from)),
        ];
        for (key, value) in axes {
            if let (Some(slot), Some(v)) = (params.get_mut(key), value) {
                *slot = v;
            }
        }
    }
}

/// Check families in the order they are listed by `qtheta check --help`.
pub const FAMILIES: [&str; 19] = [
    "classical_raabe",
    "genfunc_hn",
    "genfunc_hn2",
    "genfunc_hn_over_n",
    "genfunc_hn_sq",
    "inner_antiderivative",
    "lerch",
    "main_theta",
    "nk",
    "partitions",
    "raabe_q",
    "raabe_q_special",
    "residue_formula",
    "t_limit",
    "theorem2",
    "theta_gamma_link",
    "theta_zero",
    "triple_product",
    "zeta_q_residue",
];

/// Names accepted by [`run_selected`]: every family plus `genfunc` for all four
/// generating-function identities.
pub fn is_known_name(name: &str) -> bool {
    name == "genfunc" || FAMILIES.contains(&name)
}

fn grid(family: &str) -> Vec<Params> {
    fn product(axes: &[(&str, &[f64])]) -> Vec<Params> {
        let mut out = vec![Params::new()];
        for &(key, values) in axes {
            out = out
                .into_iter()
                .flat_map(|base| {
                    values.iter().map(move |&v| {
                        let mut next = base.clone();
                        next.insert(key.to_string(), v);
                        next
                    })
                })
                .collect();
        }
        out
    }
    match family {
        "classical_raabe" => product(&[("t", &[0.0, 1.0, 2.0])]),
        "theorem2" => product(&[("q", &[1.5, 2.0, 5.0]), ("t", &[0.25, 1.0, 2.0]), ("s", &[1.5, 2.0, 3.0])]),
        "inner_antiderivative" => product(&[
            ("q", &[1.5, 2.0, 5.0]),
            ("t", &[0.25, 1.0, 2.0]),
            ("s", &[1.5, 2.0, 3.0]),
            ("n", &[0.0, 1.0, 3.0]),
        ]),
        "residue_formula" => product(&[("q", &[1.5, 2.0, 10.0]), ("t", &[0.5, 1.0, 2.0])]),
        "raabe_q" => product(&[("q", &[1.5, 2.0, 5.0, 10.0]), ("t", &[0.25, 0.5, 1.0, 2.0])]),
        "raabe_q_special" => product(&[("q", &[1.2, 1.5, 2.0, 5.0, 20.0])]),
        "t_limit" => product(&[("q", &[1.5, 2.0, 3.0])]),
        "lerch" => product(&[("x", &[0.5, 1.0, 1.5, 2.0, 3.0])]),
        "nk" | "zeta_q_residue" => product(&[("x", &[0.5, 1.0, 2.5]), ("q", &[1.5, 2.0, 5.0])]),
        "triple_product" => product(&[("y", &[0.5, 1.0, 2.0]), ("p", &[0.3, 0.5])]),
        "theta_gamma_link" => product(&[("x", &[0.1, 0.25, 0.5, 0.75, 0.9]), ("q", &[1.5, 2.0])]),
        "main_theta" => product(&[("p", &[0.2, 0.5, 0.8])]),
        "partitions" => product(&[("n_max", &[50.0])]),
        "theta_zero" => product(&[("p_den", &[2.0, 3.0]), ("n", &[50.0])]),
        f if f.starts_with("genfunc_") => product(&[("order", &[200.0])]),
        _ => Vec::new(),
    }
}

fn evaluate(family: &str, params: &Params, tol: &Tolerances) -> Result<CheckReport> {
    let get = |key: &str| params[key];
    let count = |key: &str| -> Result<usize> {
        let v = params[key];
        if v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
            Ok(v as usize)
        } else {
            Err(domain(format!("{key} must be a natural number, got {v}")))
        }
    };
    match family {
        "classical_raabe" => check_classical_raabe(get("t"), tol),
        "theorem2" => check_theorem2(get("q"), get("t"), get("s"), tol),
        "inner_antiderivative" => {
            check_inner_antiderivative(get("q"), get("t"), get("s"), count("n")?, tol)
        }
        "residue_formula" => check_residue_formula(get("q"), get("t"), tol),
        "raabe_q" => check_raabe_q(get("q"), get("t"), tol),
        "raabe_q_special" => check_raabe_q_special(get("q"), tol),
        "t_limit" => check_t_limit(get("q"), tol),
        "lerch" => check_lerch(get("x"), tol),
        "nk" => check_nk(get("x"), get("q"), tol),
        "zeta_q_residue" => check_zeta_q_residue(get("x"), get("q"), tol),
        "triple_product" => check_triple_product(get("y"), get("p"), tol),
        "theta_gamma_link" => check_theta_gamma_link(get("x"), get("q"), tol),
        "main_theta" => check_main_theta(get("p"), tol),
        "partitions" => check_partitions(count("n_max")?),
        "theta_zero" => check_theta_zero(count("p_den")?, count("n")?),
        f => {
            let kind = f
                .strip_prefix("genfunc_")
                .and_then(|name| GenfuncKind::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(name)))
                .ok_or_else(|| domain(format!("unknown check {f:?}")))?;
            Ok(check_genfunc(kind, count("order")?))
        }
    }
}

/// Every check over its default grid.
pub fn run_all(tol: &Tolerances) -> Vec<CheckReport> {
    run_selected(&["all"], &GridOverrides::default(), tol)
        .expect("the full suite has only known names and no overrides")
}

/// The named checks (`"all"` selects everything, `"genfunc"` the four
/// generating-function identities), each over its grid with `overrides`
/// applied. Errors raised while evaluating a check become failed reports;
/// unknown names and invalid overrides are rejected up front.
///
/// Checks run in parallel; the result is sorted by check id, then parameters.
pub fn run_selected<S: AsRef<str>>(
    names: &[S],
    overrides: &GridOverrides,
    tol: &Tolerances,
) -> Result<Vec<CheckReport>> {
    overrides.validate()?;
    let mut families: Vec<&str> = Vec::new();
    for name in names {
        let name = name.as_ref();
        match name {
            "all" => families.extend(FAMILIES),
            "genfunc" => families.extend(FAMILIES.iter().filter(|f| f.starts_with("genfunc_"))),
            _ => match FAMILIES.iter().find(|&&f| f == name) {
                Some(f) => families.push(f),
                None => {
                    return Err(domain(format!(
                        "unknown check {name:?}; valid names: all, genfunc, {}",
                        FAMILIES.join(", ")
                    )))
                }
            },
        }
    }
    families.sort_unstable();
    families.dedup();

    let mut jobs: Vec<(&str, Params)> = Vec::new();
    for family in families {
        let mut points = grid(family);
        for params in &mut points {
            overrides.apply(params);
        }
        points.sort_by(report::cmp_params);
        points.dedup();
        jobs.extend(points.into_iter().map(|p| (family, p)));
    }

    let mut reports: Vec<CheckReport> = jobs
        .par_iter()
        .map(|(family, params)| {
            evaluate(family, params, tol).unwrap_or_else(|err| {
                CheckReport::failed(*family, params.clone(), tol.get(family).unwrap_or(0.0), &err)
            })
        })
        .collect();
    reports.sort_by(CheckReport::canonical_cmp);
    Ok(reports)
}
