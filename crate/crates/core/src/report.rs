//! JSON and markdown reports for an [`AssessmentResult`].
//!
//! JSON keeps full precision. Markdown rounds half-up: 3 decimals for weights,
//! 2 for scores and 5 for weighted scores.

use std::fmt::Write as _;
use std::str::FromStr;

use chrono::{DateTime, SecondsFormat, Utc};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hierarchy::GlobalWeight;
use crate::scoring::{sensitivity, AssessmentResult, CategoryResult, SensitivityEntry};

pub const OVERALL_LABEL: &str = "Overall";

#[derive(Debug, Error, PartialEq)]
#[error("unknown report format {0:?} (expected json or markdown)")]
pub struct UnknownFormat(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Markdown => "md",
        }
    }
}

impl FromStr for Format {
    type Err = UnknownFormat;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(UnknownFormat(s.to_string())),
        }
    }
}

/// Rounds half away from zero at `decimals` places.
///
/// The nudge of a few ulps makes decimal halves such as 0.0365, which are
/// stored slightly below the half, round up as they read.
pub fn round_half_up(x: f64, decimals: u32) -> f64 {
    let p = 10f64.powi(decimals as i32);
    let scaled = x.abs() * p;
    let nudged = scaled + scaled * 4.0 * f64::EPSILON;
    (nudged + 0.5).floor() / p * x.signum()
}

pub fn fmt_fixed(x: f64, decimals: u32) -> String {
    format!("{:.*}", decimals as usize, round_half_up(x, decimals))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartPoint {
    pub label: String,
    pub value: f64,
}

/// Category achievements in hierarchy order, followed by the overall index.
pub fn breakdown_chart_data(result: &AssessmentResult) -> Vec<(String, f64)> {
    result
        .categories
        .iter()
        .map(|c| (c.name.clone(), c.achievement))
        .chain(std::iter::once((OVERALL_LABEL.to_string(), result.overall_index)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightRow {
    pub category: String,
    pub criterion_id: String,
    pub category_weight: f64,
    pub local_weight: f64,
    pub aggregated_weight: f64,
    pub rank: usize,
}

impl From<&GlobalWeight> for WeightRow {
    fn from(g: &GlobalWeight) -> Self {
        Self {
            category: g.category_id.clone(),
            criterion_id: g.criterion_id.clone(),
            category_weight: g.category_weight,
            local_weight: g.local_weight,
            aggregated_weight: g.aggregated_weight,
            rank: g.rank,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub subject: String,
    pub hierarchy: String,
    pub generated_at: String,
    pub overall_index: f64,
    /// Category name to achievement fraction.
    pub categories: IndexMap<String, f64>,
    pub weights: Vec<WeightRow>,
    pub tables: Vec<CategoryResult>,
    pub sensitivity: Vec<SensitivityEntry>,
    pub breakdown: Vec<ChartPoint>,
}

impl Report {
    pub fn new(result: &AssessmentResult, generated_at: DateTime<Utc>) -> Self {
        Self {
            subject: result.subject.clone(),
            hierarchy: result.hierarchy.clone(),
            generated_at: generated_at.to_rfc3339_opts(SecondsFormat::Secs, true),
            overall_index: result.overall_index,
            categories: result
                .categories
                .iter()
                .map(|c| (c.name.clone(), c.achievement))
                .collect(),
            weights: result.weights.rows.iter().map(WeightRow::from).collect(),
            tables: result.categories.clone(),
            sensitivity: sensitivity(result),
            breakdown: breakdown_chart_data(result)
                .into_iter()
                .map(|(label, value)| ChartPoint { label, value })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let pct = |x: f64| format!("{}%", fmt_fixed(x * 100.0, 1));
        let _ = writeln!(out, "# Readiness report: {}\n", self.subject);
        let _ = writeln!(out, "Hierarchy: {}  ", self.hierarchy);
        let _ = writeln!(out, "Generated: {}\n", self.generated_at);
        let _ = writeln!(out, "**Overall readiness index: {}**\n", pct(self.overall_index));

        let _ = writeln!(out, "## Criteria weights\n");
        let _ = writeln!(out, "| Category | Criterion ID | Weight | Aggregated weight | Rank |");
        let _ = writeln!(out, "|---|---|---:|---:|---:|");
        for w in &self.weights {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} |",
                w.category,
                w.criterion_id,
                fmt_fixed(w.local_weight, 3),
                fmt_fixed(w.aggregated_weight, 3),
                w.rank
            );
        }

        for cat in &self.tables {
            let _ = writeln!(out, "\n## {} ({})\n", cat.name, pct(cat.achievement));
            let _ = writeln!(out, "| ID | Normalized weight | Score | Weighted score | Justification |");
            let _ = writeln!(out, "|---|---:|---:|---:|---|");
            for c in &cat.criteria {
                match c.score {
                    Some(score) => {
                        let _ = writeln!(
                            out,
                            "| {} | {} | {} | {} | {} |",
                            c.criterion_id,
                            fmt_fixed(c.normalized_weight, 3),
                            fmt_fixed(score, 2),
                            fmt_fixed(c.weighted_score, 5),
                            cell(c.justification.as_deref().or(c.evidence.as_deref()).unwrap_or(""))
                        );
                    }
                    None => {
                        let _ = writeln!(
                            out,
                            "| {} | excluded | | | {} |",
                            c.criterion_id,
                            cell(c.reason.as_deref().unwrap_or(""))
                        );
                    }
                }
            }
        }

        let _ = writeln!(out, "\n## Category breakdown\n");
        let _ = writeln!(out, "| Label | Achievement |");
        let _ = writeln!(out, "|---|---:|");
        for p in &self.breakdown {
            let _ = writeln!(out, "| {} | {} |", p.label, fmt_fixed(p.value, 4));
        }

        let _ = writeln!(out, "\n## Sensitivity (one level up)\n");
        if self.sensitivity.is_empty() {
            let _ = writeln!(out, "No criterion can be raised.");
        } else {
            let _ = writeln!(out, "| ID | From | To | Index delta |");
            let _ = writeln!(out, "|---|---|---|---:|");
            for s in &self.sensitivity {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} |",
                    s.criterion_id,
                    s.from,
                    s.to,
                    fmt_fixed(s.delta, 5)
                );
            }
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Markdown => self.to_markdown(),
        }
    }
}

fn cell(text: &str) -> String {
    text.replace('|', "\\|").replace('\n', " ")
}

pub fn render_report(result: &AssessmentResult, format: Format, generated_at: DateTime<Utc>) -> String {
    Report::new(result, generated_at).render(format)
}

/// `<subject>-report.<ext>` with path-unsafe characters replaced.
pub fn report_file_name(subject: &str, format: Format) -> String {
    let stem: String = subject
        .chars()
        .map(|c| if c.is_alphanumeric() || c == '-' || c == '_' || c == '.' { c } else { '-' })
        .collect();
    format!("{stem}-report.{}", format.extension())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_up_rounding() {
        assert_eq!(fmt_fixed(0.0365, 3), "0.037");
        assert_eq!(fmt_fixed(0.03723525, 5), "0.03724");
        assert_eq!(fmt_fixed(0.0244215, 5), "0.02442");
        assert_eq!(fmt_fixed(0.045784, 3), "0.046");
        assert_eq!(fmt_fixed(0.0, 2), "0.00");
        assert_eq!(fmt_fixed(2.5, 0), "3");
        assert_eq!(fmt_fixed(-2.5, 0), "-3");
    }

    #[test]
    fn formats() {
        assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
        assert_eq!("Markdown".parse::<Format>().unwrap(), Format::Markdown);
        assert_eq!("md".parse::<Format>().unwrap(), Format::Markdown);
        assert_eq!("pdf".parse::<Format>().unwrap_err(), UnknownFormat("pdf".into()));
    }

    #[test]
    fn file_names() {
        assert_eq!(report_file_name("Greece", Format::Json), "Greece-report.json");
        assert_eq!(report_file_name("New Zealand/2", Format::Markdown), "New-Zealand-2-report.md");
    }
}
