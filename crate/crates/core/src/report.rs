//! Report assembly, JSON and CSV serialization.
//!
//! JSON reports have the layout
//!
//! ```text
//! {
//!   "schema_version": 1,
//!   "command": "spectrum",
//!   "family": "g2-1-2",
//!   "seed": 20240611,
//!   "level": 0.0,
//!   "passed": true,
//!   "points": [SpectrumReport, ...],
//!   "focal": [FocalReport, ...],
//!   "residual_summary": {"<name>": {"max": .., "mean": ..}, ...},
//!   "sections": {"<name>": any, ...}
//! }
//! ```
//!
//! All maps are ordered so identical inputs produce byte-identical output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::geometry::{FocalReport, SpectrumReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub max: f64,
    pub mean: f64,
}

/// Running max/mean of named residuals.
#[derive(Debug, Clone, Default)]
pub struct ResidualSummary {
    acc: BTreeMap<String, (f64, f64, usize)>,
}

impl ResidualSummary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, name: &str, value: f64) {
        let e = self.acc.entry(name.to_string()).or_insert((f64::NEG_INFINITY, 0.0, 0));
        e.0 = e.0.max(value);
        e.1 += value;
        e.2 += 1;
    }

    pub fn get(&self, name: &str) -> Option<Summary> {
        self.acc.get(name).map(|&(max, sum, n)| Summary { max, mean: sum / n as f64 })
    }

    pub fn summaries(&self) -> BTreeMap<String, Summary> {
        self.acc.keys().map(|k| (k.clone(), self.get(k).unwrap())).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.acc.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub family: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<f64>,
    pub passed: bool,
    pub points: Vec<SpectrumReport>,
    pub focal: Vec<FocalReport>,
    pub residual_summary: BTreeMap<String, Summary>,
    pub sections: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(command: &str, family: &str, seed: u64) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            family: family.to_string(),
            seed,
            level: None,
            passed: true,
            points: Vec::new(),
            focal: Vec::new(),
            residual_summary: BTreeMap::new(),
            sections: BTreeMap::new(),
        }
    }

    /// Adds a spectrum and folds its residuals into a summary.
    pub fn push_point(&mut self, point: SpectrumReport, summary: &mut ResidualSummary) {
        for (k, v) in &point.residuals {
            summary.record(k, *v);
        }
        summary.record("asymmetry", point.asymmetry);
        self.points.push(point);
    }

    pub fn push_focal(&mut self, focal: FocalReport, summary: &mut ResidualSummary) {
        summary.record("focal_eigenvalue", focal.eigenvalue_residual);
        summary.record("focal_trace", focal.trace.abs());
        summary.record("focal_value", (focal.focal_value.abs() - 1.0).abs());
        self.focal.push(focal);
    }

    pub fn set_section<T: Serialize>(&mut self, name: &str, value: &T) {
        let v = serde_json::to_value(value).expect("report sections serialize");
        self.sections.insert(name.to_string(), v);
    }

    pub fn finish(&mut self, summary: &ResidualSummary) {
        self.residual_summary = summary.summaries();
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Eigenvalue table with header `sample,index,eigenvalue,theta,cluster`.
    pub fn eigenvalue_csv(&self) -> String {
        eigenvalue_csv(&self.points)
    }

    /// Short human-readable summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let status = if self.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{} {} seed={} {}", self.command, self.family, self.seed, status);
        if let Some(s) = self.level {
            let _ = writeln!(out, "level {s}");
        }
        if let Some(p) = self.points.first() {
            let _ = writeln!(out, "g_observed {}", p.g_observed);
            for c in &p.clusters {
                let _ = writeln!(
                    out,
                    "  theta {:.12} (pi*{:.9}) m {} lambda {:.12}",
                    c.theta,
                    c.theta / std::f64::consts::PI,
                    c.multiplicity,
                    c.lambda
                );
            }
        }
        for (k, v) in &self.residual_summary {
            let _ = writeln!(out, "  {k:<20} max {:.3e} mean {:.3e}", v.max, v.mean);
        }
        for (k, v) in &self.sections {
            let _ = writeln!(out, "{k}: {v}");
        }
        out
    }
}

pub fn eigenvalue_csv(points: &[SpectrumReport]) -> String {
    let mut out = String::from("sample,index,eigenvalue,theta,cluster\n");
    for (sample, p) in points.iter().enumerate() {
        for (index, &lambda) in p.eigenvalues.iter().enumerate() {
            let cluster = p.cluster_ranges.iter().position(|r| r.contains(&index)).unwrap_or(0);
            let theta = 1f64.atan2(lambda);
            let _ = writeln!(out, "{sample},{index},{lambda:.17e},{theta:.17e},{cluster}");
        }
    }
    out
}
