//! Structured, versioned formality reports.
//!
//! Reports serialize to a single JSON document with a stable field order.
//! Everything wall-clock-dependent is confined to the single top-level
//! `timings` subtree, so two runs of the same problem are byte-identical
//! once that one key is removed.

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

use crate::nakayama::DegreeCount;

use super::Route;

/// Version of the report layout; any structural change bumps this.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Formal,
    NonFormal,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Formal => f.write_str("formal"),
            Verdict::NonFormal => f.write_str("non-formal"),
        }
    }
}

/// How strong the computed evidence is.  Exact elimination everywhere gives
/// a proof; any prime-field rank downgrades the whole report to Monte-Carlo
/// status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    CertifiedExact,
    ModularMonteCarlo,
}

impl fmt::Display for Certification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certification::CertifiedExact => f.write_str("certified-exact"),
            Certification::ModularMonteCarlo => f.write_str("modular-monte-carlo"),
        }
    }
}

/// The subgroup as it appeared in the problem statement.
#[derive(Debug, Clone, Serialize)]
pub struct SubgroupReport {
    /// `"blocks"` or `"torus"`.
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<u32>>,
    pub label: String,
    pub m: usize,
}

/// Outcome of one computation route.
#[derive(Debug, Clone, Serialize)]
pub struct RouteReport {
    pub route: Route,
    pub m: usize,
    pub r: usize,
    pub deficiency: i64,
    /// Degrees whose candidate generator restricted to zero and was dropped
    /// before the rank computations.
    pub dropped_degrees: Vec<u32>,
    pub any_modular: bool,
    pub per_degree: Vec<DegreeCount>,
}

/// Wall-clock data, all of it.  Stripping this one key from the JSON
/// document makes reports of identical problems byte-identical.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Timings {
    pub total_ms: u64,
    pub routes_ms: BTreeMap<String, u64>,
}

/// The full verdict for one homogeneous space.
#[derive(Debug, Clone, Serialize)]
pub struct FormalityReport {
    pub schema_version: u32,
    pub engine_version: String,
    pub space: String,
    pub n: u32,
    pub subgroup: SubgroupReport,
    pub m: usize,
    pub r: usize,
    pub deficiency: i64,
    pub verdict: Verdict,
    pub certification: Certification,
    pub routes: Vec<RouteReport>,
    pub timings: Timings,
}

impl FormalityReport {
    /// The canonical single-document JSON form (trailing newline included).
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// A short human-readable summary.
    pub fn render_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{}  (n = {}, subgroup {}, m = {})\n",
            self.space, self.n, self.subgroup.label, self.m
        ));
        let qualifier = match (self.verdict, self.certification) {
            (Verdict::NonFormal, Certification::ModularMonteCarlo) => " (modular evidence)",
            _ => "",
        };
        out.push_str(&format!(
            "verdict: {}{}   deficiency = {}   [{}]\n",
            self.verdict, qualifier, self.deficiency, self.certification
        ));
        out.push_str(&format!(
            "minimal generators r = {} against subtorus rank m = {}\n",
            self.r, self.m
        ));
        for route in &self.routes {
            let degrees: Vec<String> = route
                .per_degree
                .iter()
                .map(|d| format!("d{}:{}", d.degree, d.count))
                .collect();
            out.push_str(&format!(
                "  route {:<10} r = {:<3} df = {:<2} [{}]",
                route.route.to_string(),
                route.r,
                route.deficiency,
                degrees.join(" ")
            ));
            if !route.dropped_degrees.is_empty() {
                out.push_str(&format!(
                    "  (zero restrictions dropped in degrees {:?})",
                    route.dropped_degrees
                ));
            }
            out.push('\n');
        }
        out.push_str(&format!("elapsed: {} ms\n", self.timings.total_ms));
        out
    }
}
