//! End-to-end analysis: load a file, analyze every header, validate every
//! column, and compile the report. The command-line driver is a thin
//! wrapper over this module.

use std::collections::HashMap;
use std::path::Path;

use crate::dictionaries::{AbbreviationsDictionary, FormatsDictionary};
use crate::error::Result;
use crate::ingestion::{load_dataset, Dataset, Delimiter, LoadOptions};
use crate::label_analysis::analyze_label;
use crate::reporting::{compile_report, QualityReport};
use crate::semantic_model::SemanticType;
use crate::validation::{
    detect_structural_conflicts, validate_column, MissingMarkerSet, ValidationConfig,
};

/// Options for a full analysis run.
#[derive(Debug, Clone, Default)]
pub struct PipelineOptions {
    pub delimiter: Option<Delimiter>,
    pub header: Option<bool>,
    /// Archive member to analyze for .zip/.tar.gz inputs.
    pub inner: Option<String>,
    pub markers: MissingMarkerSet,
    pub config: ValidationConfig,
    /// Optional column-name to description map (sidecar metadata).
    pub descriptions: HashMap<String, String>,
}

impl PipelineOptions {
    fn load_options<'a>(&'a self, formats: &'a FormatsDictionary) -> LoadOptions<'a> {
        LoadOptions {
            delimiter: self.delimiter,
            header: self.header,
            inner: self.inner.as_deref(),
            formats: Some(formats),
        }
    }
}

/// Attaches descriptions and label analyses to every column in place.
pub fn annotate_labels(
    dataset: &mut Dataset,
    formats: &FormatsDictionary,
    abbreviations: &AbbreviationsDictionary,
    descriptions: &HashMap<String, String>,
) {
    for column in &mut dataset.columns {
        if column.description.is_none() {
            column.description = descriptions.get(&column.name).cloned();
        }
        column.analysis = Some(analyze_label(
            &column.name,
            column.description.as_deref(),
            formats,
            abbreviations,
        ));
    }
}

/// Validates an annotated dataset and compiles the report.
pub fn assess_quality(
    dataset: &Dataset,
    markers: &MissingMarkerSet,
    config: &ValidationConfig,
) -> QualityReport {
    let per_column = dataset
        .columns
        .iter()
        .map(|column| validate_column(column, markers, config))
        .collect();
    let dataset_issues = detect_structural_conflicts(dataset, markers);
    compile_report(dataset, per_column, dataset_issues)
}

/// Loads, annotates, validates, and reports in one call.
pub fn run_analysis(
    path: &Path,
    formats: &FormatsDictionary,
    abbreviations: &AbbreviationsDictionary,
    options: &PipelineOptions,
) -> Result<QualityReport> {
    let mut dataset = load_dataset(path, &options.load_options(formats))?;
    annotate_labels(&mut dataset, formats, abbreviations, &options.descriptions);
    Ok(assess_quality(&dataset, &options.markers, &options.config))
}

/// Runs only the semantic type detection step: one (column name, format)
/// pair per column, `None` meaning unclassified.
pub fn detect_formats(
    path: &Path,
    formats: &FormatsDictionary,
    abbreviations: &AbbreviationsDictionary,
    options: &PipelineOptions,
) -> Result<Vec<(String, Option<SemanticType>)>> {
    let mut dataset = load_dataset(path, &options.load_options(formats))?;
    annotate_labels(&mut dataset, formats, abbreviations, &options.descriptions);
    Ok(dataset
        .columns
        .into_iter()
        .map(|c| {
            let format = c.analysis.as_ref().and_then(|a| a.final_format);
            (c.name, format)
        })
        .collect())
}
