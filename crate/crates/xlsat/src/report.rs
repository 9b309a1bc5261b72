//! Machine-readable classification and decision reports.
//!
//! The JSON layout is a stable contract: `instance`, `profile`
//! {monotone, linear, exact_linear, l, k, L, m, n}, optional `verdict`
//! {status, method, model, candidates_examined}, and `audits` [{name,
//! pass, details}]. Output is deterministic: fixed field order, sorted
//! detail keys, no timestamps.

use serde::Serialize;

use crate::classify::{AuditResult, Profile};
use crate::engine::{Status, Verdict};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictSummary {
    pub status: Status,
    pub method: String,
    /// True variables of the model, ascending, when sat.
    pub model: Option<Vec<u32>>,
    pub candidates_examined: u64,
}

impl From<&Verdict> for VerdictSummary {
    fn from(verdict: &Verdict) -> VerdictSummary {
        VerdictSummary {
            status: verdict.status,
            method: verdict.method.as_str().to_string(),
            model: verdict
                .model
                .as_ref()
                .map(|m| m.true_vars().iter().map(|v| v.index()).collect()),
            candidates_examined: verdict.stats.candidates_examined,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub instance: String,
    pub profile: Profile,
    pub verdict: Option<VerdictSummary>,
    pub audits: Vec<AuditResult>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

pub fn emit_report(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut out =
                serde_json::to_string_pretty(report).expect("reports always serialize");
            out.push('\n');
            out
        }
        ReportFormat::Text => {
            let mut out = String::new();
            out.push_str(&format!("instance: {}\n", report.instance));
            let p = &report.profile;
            let mut flags = Vec::new();
            if p.monotone {
                flags.push("monotone".to_string());
            }
            if p.exact_linear {
                flags.push("exact-linear".to_string());
            } else if p.linear {
                flags.push("linear".to_string());
            }
            if let Some(l) = p.regularity {
                flags.push(format!("l={l}"));
            }
            if let Some(k) = p.uniformity {
                flags.push(format!("k={k}"));
            }
            flags.push(format!("L={}", p.max_occurrence));
            flags.push(format!("m={}", p.m));
            flags.push(format!("n={}", p.n));
            out.push_str(&format!("profile: {}\n", flags.join(" ")));
            if let Some(v) = &report.verdict {
                let status = match v.status {
                    Status::Sat => "sat",
                    Status::Unsat => "unsat",
                };
                out.push_str(&format!(
                    "verdict: {status} method={} candidates={}\n",
                    v.method, v.candidates_examined
                ));
                if let Some(model) = &v.model {
                    let vars: Vec<String> = model.iter().map(|v| v.to_string()).collect();
                    out.push_str(&format!("model: {}\n", vars.join(" ")));
                }
            }
            for audit in &report.audits {
                let mark = if audit.pass { "pass" } else { "FAIL" };
                let details: Vec<String> = audit
                    .details
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect();
                out.push_str(&format!(
                    "audit {}: {mark} ({})\n",
                    audit.name,
                    details.join(" ")
                ));
            }
            out
        }
    }
}
