//! attrdq: attribute-based semantic type detection and data quality
//! assessment for delimited tabular data.
//!
//! The library reads a delimited file (plain or compressed), infers each
//! column's semantic type from the words in its header (and an optional
//! description) using curated Formats/Abbreviations dictionaries, then
//! validates the column's contents against type-specific rules. Detected
//! violations are mapped to named data quality issues and the dimensions
//! they violate, and assembled into a serializable report.
//!
//! ```no_run
//! use attrdq::{dictionaries, pipeline, reporting};
//!
//! let formats = dictionaries::seed_formats();
//! let abbreviations = dictionaries::seed_abbreviations();
//! let options = pipeline::PipelineOptions::default();
//! let report = pipeline::run_analysis(
//!     std::path::Path::new("data.csv"),
//!     &formats,
//!     &abbreviations,
//!     &options,
//! )?;
//! print!("{}", reporting::serialize(&report, reporting::OutputFormat::Json));
//! # Ok::<(), attrdq::Error>(())
//! ```

pub mod dictionaries;
pub mod error;
pub mod ingestion;
pub mod label_analysis;
pub mod numeric;
pub mod pipeline;
pub mod reporting;
pub mod semantic_model;
pub mod validation;

pub use error::{Error, Result};
pub use ingestion::{Dataset, Delimiter};
pub use label_analysis::{LabelAnalysis, Provenance};
pub use reporting::{OutputFormat, QualityReport};
pub use semantic_model::{dimensions_of, Dimension, IssueKind, SemanticType};
pub use validation::{MissingMarkerSet, QualityIssue, ValidationConfig};
