//! Report assembly and serialization.
//!
//! A [`QualityReport`] gathers the per-column findings plus dataset-scope
//! issues (empty column name) and a recomputable summary. Reports
//! serialize to JSON (schema_version 1, the canonical interchange form),
//! a human-readable text layout, or a one-row-per-issue CSV.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::ingestion::{Dataset, Delimiter};
use crate::label_analysis::Provenance;
use crate::semantic_model::{dimension_bucket, SemanticType};
use crate::validation::{FrequencyDistribution, QualityIssue};

pub const SCHEMA_VERSION: u32 = 1;

/// Identity of the analyzed dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetInfo {
    pub source_name: String,
    pub row_count: usize,
    pub column_count: usize,
    pub delimiter: Delimiter,
    pub had_header: bool,
}

/// One column's findings. `final_format` serializes as the type name, or
/// the string `"NaN"` for unclassified columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnReport {
    pub name: String,
    #[serde(
        serialize_with = "serialize_final_format",
        deserialize_with = "deserialize_final_format"
    )]
    pub final_format: Option<SemanticType>,
    pub provenance: Provenance,
    pub issues: Vec<QualityIssue>,
    pub distribution: Option<FrequencyDistribution>,
}

fn serialize_final_format<S: Serializer>(
    value: &Option<SemanticType>,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    match value {
        Some(t) => serializer.serialize_str(&t.canonical_name()),
        None => serializer.serialize_str("NaN"),
    }
}

fn deserialize_final_format<'de, D: Deserializer<'de>>(
    deserializer: D,
) -> Result<Option<SemanticType>, D::Error> {
    let s = String::deserialize(deserializer)?;
    if s == "NaN" {
        return Ok(None);
    }
    s.parse().map(Some).map_err(serde::de::Error::custom)
}

/// Aggregate tallies, always recomputable from the issue lists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    /// Issue instances per kind.
    pub issue_counts_by_kind: BTreeMap<String, usize>,
    /// Issue instances per dimension set; a two-dimension issue falls into
    /// one combined bucket such as `consistency+uniqueness`.
    pub dimension_counts: BTreeMap<String, usize>,
    pub columns_with_issues: usize,
    pub total_issues: usize,
    /// Columns with a semantic type over all columns.
    pub classified_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QualityReport {
    pub schema_version: u32,
    pub dataset: DatasetInfo,
    pub columns: Vec<ColumnReport>,
    /// Dataset-scope issues (e.g. padded ragged rows).
    pub dataset_issues: Vec<QualityIssue>,
    pub summary: Summary,
}

/// Assembles the deterministic report for a validated dataset.
pub fn compile_report(
    dataset: &Dataset,
    per_column: Vec<(Vec<QualityIssue>, Option<FrequencyDistribution>)>,
    dataset_issues: Vec<QualityIssue>,
) -> QualityReport {
    assert_eq!(dataset.columns.len(), per_column.len(), "every column must be validated");
    let columns: Vec<ColumnReport> = dataset
        .columns
        .iter()
        .zip(per_column)
        .map(|(column, (issues, distribution))| ColumnReport {
            name: column.name.clone(),
            final_format: column.analysis.as_ref().and_then(|a| a.final_format),
            provenance: column
                .analysis
                .as_ref()
                .map(|a| a.provenance)
                .unwrap_or(Provenance::Unclassified),
            issues,
            distribution,
        })
        .collect();

    let summary = summarize(&columns, &dataset_issues);
    QualityReport {
        schema_version: SCHEMA_VERSION,
        dataset: DatasetInfo {
            source_name: dataset.source_name.clone(),
            row_count: dataset.row_count,
            column_count: dataset.columns.len(),
            delimiter: dataset.delimiter,
            had_header: dataset.had_header,
        },
        columns,
        dataset_issues,
        summary,
    }
}

fn summarize(columns: &[ColumnReport], dataset_issues: &[QualityIssue]) -> Summary {
    let mut issue_counts_by_kind = BTreeMap::new();
    let mut dimension_counts = BTreeMap::new();
    let all_issues = columns
        .iter()
        .flat_map(|c| c.issues.iter())
        .chain(dataset_issues.iter());
    let mut total_issues = 0usize;
    for issue in all_issues {
        total_issues += 1;
        *issue_counts_by_kind
            .entry(issue.issue.name().to_string())
            .or_insert(0) += 1;
        *dimension_counts
            .entry(dimension_bucket(&issue.dimensions))
            .or_insert(0) += 1;
    }
    let classified = columns.iter().filter(|c| c.final_format.is_some()).count();
    Summary {
        issue_counts_by_kind,
        dimension_counts,
        columns_with_issues: columns.iter().filter(|c| !c.issues.is_empty()).count(),
        total_issues,
        classified_fraction: if columns.is_empty() {
            0.0
        } else {
            classified as f64 / columns.len() as f64
        },
    }
}

/// Output serialization formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::InvalidInput(format!("unknown output format {other:?}"))),
        }
    }
}

/// Serializes a report; output is byte-stable for a fixed report.
pub fn serialize(report: &QualityReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Text => render_text(report),
        OutputFormat::Csv => render_csv(report),
    }
}

fn format_name(format: Option<SemanticType>) -> String {
    format.map(|t| t.to_string()).unwrap_or_else(|| "NaN".to_string())
}

fn render_text(report: &QualityReport) -> String {
    use std::fmt::Write;

    let mut out = String::new();
    let d = &report.dataset;
    let _ = writeln!(out, "Dataset: {}", d.source_name);
    let _ = writeln!(
        out,
        "Rows: {}  Columns: {}  Delimiter: {}  Header: {}",
        d.row_count,
        d.column_count,
        d.delimiter,
        if d.had_header { "yes" } else { "no" }
    );
    for (idx, column) in report.columns.iter().enumerate() {
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "Column {}: {:?} ({})",
            idx + 1,
            column.name,
            format_name(column.final_format)
        );
        if column.issues.is_empty() {
            let _ = writeln!(out, "  no issues");
        }
        for issue in &column.issues {
            let _ = writeln!(
                out,
                "  - {} [{}] count={} values: {}",
                issue.issue,
                dimension_bucket(&issue.dimensions),
                issue.evidence.count,
                join_values(&issue.evidence.offending_values)
            );
            let _ = writeln!(out, "    note: {}", issue.note);
        }
        if let Some(dist) = &column.distribution {
            let _ = writeln!(out, "  distribution ({} distinct):", dist.distinct_count);
            for entry in dist.entries.iter().take(10) {
                let _ = writeln!(
                    out,
                    "    {:?}: {} ({:.2}%)",
                    entry.value,
                    entry.count,
                    entry.fraction * 100.0
                );
            }
            if dist.entries.len() > 10 {
                let _ = writeln!(out, "    ... {} more", dist.entries.len() - 10);
            }
        }
    }
    for issue in &report.dataset_issues {
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "Dataset issue: {} count={} note: {}",
            issue.issue, issue.evidence.count, issue.note
        );
    }
    let s = &report.summary;
    let _ = writeln!(out);
    let _ = writeln!(out, "Summary:");
    let _ = writeln!(
        out,
        "  columns with issues: {}/{}",
        s.columns_with_issues, report.dataset.column_count
    );
    let _ = writeln!(out, "  total issues: {}", s.total_issues);
    let _ = writeln!(out, "  classified: {:.2}%", s.classified_fraction * 100.0);
    for (kind, count) in &s.issue_counts_by_kind {
        let _ = writeln!(out, "  issue {kind}: {count}");
    }
    for (bucket, count) in &s.dimension_counts {
        let _ = writeln!(out, "  dimension {bucket}: {count}");
    }
    out
}

fn join_values(values: &[String]) -> String {
    values
        .iter()
        .map(|v| format!("{v:?}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn render_csv(report: &QualityReport) -> String {
    let mut out = String::from("dataset,column,format,issue,dimensions,count,examples\n");
    let mut push_row = |column: &str, format: &str, issue: &QualityIssue| {
        let row = [
            report.dataset.source_name.as_str(),
            column,
            format,
            issue.issue.name(),
            &dimension_bucket(&issue.dimensions),
            &issue.evidence.count.to_string(),
            &issue.evidence.offending_values.join("|"),
        ]
        .map(csv_escape)
        .join(",");
        out.push_str(&row);
        out.push('\n');
    };
    for column in &report.columns {
        let format = format_name(column.final_format);
        for issue in &column.issues {
            push_row(&column.name, &format, issue);
        }
    }
    for issue in &report.dataset_issues {
        push_row("", "", issue);
    }
    out
}
