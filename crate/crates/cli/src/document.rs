use std::collections::BTreeMap;
use std::io::Write;

use qtheta::quadrature::{ContourConfig, QuadConfig};
use qtheta::series_core::TruncationPolicy;
use qtheta::verify::{CheckReport, GridOverrides, Tolerances};
use serde::{Deserialize, Serialize};

use crate::numfmt::{format_g, to_canonical_json};

pub const SCHEMA_VERSION: &str = "1.0";

/// Everything written by `qtheta check`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub generated_at: String,
    pub config: RunConfig,
    pub reports: Vec<CheckReport>,
}

/// Echo of the settings a run used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub checks: Vec<String>,
    pub overrides: BTreeMap<String, f64>,
    pub tolerances: Tolerances,
    pub truncation: TruncationEcho,
    pub quadrature: QuadratureEcho,
    pub contour: ContourEcho,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncationEcho {
    pub term_eps: f64,
    pub max_terms: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureEcho {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: usize,
    pub ts_max_level: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourEcho {
    pub radius: f64,
    pub min_nodes: usize,
    pub max_nodes: usize,
    pub stabilization_tol: f64,
}

impl RunConfig {
    pub fn new(checks: &[String], overrides: &GridOverrides, tolerances: &Tolerances) -> Self {
        let policy = TruncationPolicy::default();
        let quad = QuadConfig::default();
        let contour = ContourConfig::default();
        let axes = [
            ("p", overrides.p),
            ("q", overrides.q),
            ("s", overrides.s),
            ("t", overrides.t),
            ("x", overrides.x),
            ("y", overrides.y),
            ("n", overrides.n.map(f64::from)),
        ];
        Self {
            checks: checks.to_vec(),
            overrides: axes
                .into_iter()
                .filter_map(|(k, v)| v.map(|v| (k.to_string(), v)))
                .collect(),
            tolerances: tolerances.clone(),
            truncation: TruncationEcho {
                term_eps: policy.term_eps,
                max_terms: policy.max_terms,
            },
            quadrature: QuadratureEcho {
                abs_tol: quad.abs_tol,
                rel_tol: quad.rel_tol,
                max_depth: quad.max_depth,
                ts_max_level: quad.ts_max_level,
            },
            contour: ContourEcho {
                radius: contour.radius,
                min_nodes: contour.min_nodes,
                max_nodes: contour.max_nodes,
                stabilization_tol: contour.stabilization_tol,
            },
        }
    }
}

impl ReportDocument {
    pub fn new(config: RunConfig, reports: Vec<CheckReport>, generated_at: String) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            generated_at,
            config,
            reports,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    pub fn to_json(&self) -> String {
        to_canonical_json(self).expect("report documents always serialize")
    }

    /// One row per report; parameters are flattened to `k=v;k=v`.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(["check_id", "params", "lhs", "rhs", "abs_err", "rel_err", "tol", "pass", "notes"])?;
        for r in &self.reports {
            let params = r
                .params
                .iter()
                .map(|(k, v)| format!("{k}={}", format_g(*v, 17)))
                .collect::<Vec<_>>()
                .join(";");
            let num = |v: f64| if v.is_finite() { format_g(v, 17) } else { String::new() };
            w.write_record([
                r.check_id.clone(),
                params,
                num(r.lhs),
                num(r.rhs),
                num(r.abs_err),
                num(r.rel_err),
                num(r.tol),
                r.pass.to_string(),
                r.notes.clone(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qtheta::verify::Params;

    fn sample_doc() -> ReportDocument {
        let tol = Tolerances::default();
        let mut params = Params::new();
        params.insert("q".into(), 2.0);
        params.insert("t".into(), 0.1);
        let reports = vec![
            CheckReport::new("raabe_q", params.clone(), 1.0 / 3.0, 0.333333333, 1e-7, "note, with comma"),
            CheckReport::failed("nk", params, 1e-7, &qtheta::Error::Domain("bad".into())),
        ];
        let checks = vec!["raabe_q".to_string()];
        ReportDocument::new(
            RunConfig::new(&checks, &GridOverrides::default(), &tol),
            reports,
            "2026-01-01T00:00:00Z".into(),
        )
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let doc = sample_doc();
        let text = doc.to_json();
        let back: ReportDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_json(), text);
        assert!(text.contains("\"schema_version\": \"1.0\""));
        assert!(text.contains("\"lhs\": null"));
        assert!(!doc.all_pass());
    }

    #[test]
    fn csv_rows() {
        let mut out = Vec::new();
        sample_doc().write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("raabe_q,q=2;t=0.10000000000000001,"));
        assert!(lines[1].ends_with(",\"note, with comma\""));
    }
}
