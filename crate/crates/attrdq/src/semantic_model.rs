//! The semantic type taxonomy, data quality issue/dimension taxonomies, and
//! the fixed issue-to-dimension mapping.
//!
//! A column's semantic type (also called its format) is the practical
//! category of content it is expected to hold: `id`, `name`, `date`,
//! `numerical>=0`, and so on. Bounded numeric types carry an inclusive
//! `[lo, hi]` range used by the content checks; `numerical_between(lo, hi)`
//! is the open-ended bounded variant that dictionary files can introduce
//! with the `numerical between <lo> and <hi>` syntax.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Semantic type of a column, inferred from its header words.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SemanticType {
    Age,
    Binary,
    Categorical,
    City,
    Country,
    Date,
    Datetime,
    Day,
    Email,
    Hour,
    Id,
    Ip,
    Latitude,
    Longitude,
    ModelName,
    Money,
    Month,
    Name,
    Normalized,
    Numerical,
    NumericalNonNegative,
    Percentage,
    Ph,
    Phone,
    PostalCode,
    State,
    Street,
    String,
    Time,
    Url,
    Weekday,
    Year,
    /// Numeric with a custom inclusive range, e.g. a compass heading in
    /// `numerical between 0 and 360`.
    NumericalBetween(f64, f64),
}

/// Every fixed taxonomy member, in canonical (serialized-name) order.
pub const ALL_FIXED_TYPES: &[SemanticType] = &[
    SemanticType::Age,
    SemanticType::Binary,
    SemanticType::Categorical,
    SemanticType::City,
    SemanticType::Country,
    SemanticType::Date,
    SemanticType::Datetime,
    SemanticType::Day,
    SemanticType::Email,
    SemanticType::Hour,
    SemanticType::Id,
    SemanticType::Ip,
    SemanticType::Latitude,
    SemanticType::Longitude,
    SemanticType::ModelName,
    SemanticType::Money,
    SemanticType::Month,
    SemanticType::Name,
    SemanticType::Normalized,
    SemanticType::Numerical,
    SemanticType::NumericalNonNegative,
    SemanticType::Percentage,
    SemanticType::Ph,
    SemanticType::Phone,
    SemanticType::PostalCode,
    SemanticType::State,
    SemanticType::Street,
    SemanticType::String,
    SemanticType::Time,
    SemanticType::Url,
    SemanticType::Weekday,
    SemanticType::Year,
];

impl SemanticType {
    /// Canonical lowercase snake_case name used in reports.
    pub fn canonical_name(&self) -> std::string::String {
        match self {
            SemanticType::Age => "age".into(),
            SemanticType::Binary => "binary".into(),
            SemanticType::Categorical => "categorical".into(),
            SemanticType::City => "city".into(),
            SemanticType::Country => "country".into(),
            SemanticType::Date => "date".into(),
            SemanticType::Datetime => "datetime".into(),
            SemanticType::Day => "day".into(),
            SemanticType::Email => "email".into(),
            SemanticType::Hour => "hour".into(),
            SemanticType::Id => "id".into(),
            SemanticType::Ip => "ip".into(),
            SemanticType::Latitude => "latitude".into(),
            SemanticType::Longitude => "longitude".into(),
            SemanticType::ModelName => "model_name".into(),
            SemanticType::Money => "money".into(),
            SemanticType::Month => "month".into(),
            SemanticType::Name => "name".into(),
            SemanticType::Normalized => "normalized".into(),
            SemanticType::Numerical => "numerical".into(),
            SemanticType::NumericalNonNegative => "numerical_non_negative".into(),
            SemanticType::Percentage => "percentage".into(),
            SemanticType::Ph => "ph".into(),
            SemanticType::Phone => "phone".into(),
            SemanticType::PostalCode => "postal_code".into(),
            SemanticType::State => "state".into(),
            SemanticType::Street => "street".into(),
            SemanticType::String => "string".into(),
            SemanticType::Time => "time".into(),
            SemanticType::Url => "url".into(),
            SemanticType::Weekday => "weekday".into(),
            SemanticType::Year => "year".into(),
            SemanticType::NumericalBetween(lo, hi) => format!("numerical_between({lo},{hi})"),
        }
    }

    /// Inclusive valid range for bounded members; `None` otherwise.
    pub fn bounds(&self) -> Option<(f64, f64)> {
        match self {
            SemanticType::Age => Some((0.0, 150.0)),
            SemanticType::Day => Some((1.0, 31.0)),
            SemanticType::Hour => Some((0.0, 24.0)),
            SemanticType::Latitude => Some((-90.0, 90.0)),
            SemanticType::Longitude => Some((-180.0, 180.0)),
            SemanticType::Month => Some((1.0, 12.0)),
            SemanticType::Normalized => Some((0.0, 1.0)),
            SemanticType::Percentage => Some((0.0, 100.0)),
            SemanticType::Ph => Some((0.0, 14.0)),
            SemanticType::Year => Some((1000.0, 2100.0)),
            SemanticType::NumericalBetween(lo, hi) => Some((*lo, *hi)),
            _ => None,
        }
    }

    /// True for types the resolution step treats as refinable generics.
    pub fn is_generic(&self) -> bool {
        matches!(self, SemanticType::String | SemanticType::Numerical)
    }

    /// True for types specific enough to override a generic name match:
    /// bounded numerics, id, name, temporal, geographical, and the special
    /// syntax formats.
    pub fn is_specific(&self) -> bool {
        if self.bounds().is_some() {
            return true;
        }
        matches!(
            self,
            SemanticType::Id
                | SemanticType::Name
                | SemanticType::Date
                | SemanticType::Datetime
                | SemanticType::Time
                | SemanticType::Weekday
                | SemanticType::City
                | SemanticType::State
                | SemanticType::Country
                | SemanticType::Street
                | SemanticType::Email
                | SemanticType::Url
                | SemanticType::Ip
                | SemanticType::Phone
                | SemanticType::PostalCode
                | SemanticType::Money
        )
    }
}

/// The dictionary-file / listing spelling. Round-trips through [`FromStr`].
impl fmt::Display for SemanticType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemanticType::NumericalNonNegative => write!(f, "numerical>=0"),
            SemanticType::NumericalBetween(lo, hi) => {
                write!(f, "numerical between {lo} and {hi}")
            }
            other => write!(f, "{}", other.canonical_name()),
        }
    }
}

impl FromStr for SemanticType {
    type Err = Error;

    /// Accepts canonical names, the compact dictionary spellings, and the
    /// looser spellings seen in published format tables ("ID column",
    /// "postal code", "URL format", ...). Unknown names are an error: the
    /// taxonomy is closed apart from the `numerical between` pattern.
    fn from_str(s: &str) -> Result<Self, Error> {
        let norm = s.trim().to_lowercase();
        let t = match norm.as_str() {
            "age" => SemanticType::Age,
            "binary" => SemanticType::Binary,
            "categorical" => SemanticType::Categorical,
            "city" => SemanticType::City,
            "country" => SemanticType::Country,
            "date" => SemanticType::Date,
            "datetime" | "date time" => SemanticType::Datetime,
            "day" => SemanticType::Day,
            "email" | "e-mail" | "email format" | "e-mail format" => SemanticType::Email,
            "hour" => SemanticType::Hour,
            "id" | "id column" => SemanticType::Id,
            "ip" | "ip format" | "ip address" => SemanticType::Ip,
            "latitude" => SemanticType::Latitude,
            "longitude" => SemanticType::Longitude,
            "model_name" | "model name" | "modelname" => SemanticType::ModelName,
            "money" => SemanticType::Money,
            "month" => SemanticType::Month,
            "name" => SemanticType::Name,
            "normalized" | "normalised" => SemanticType::Normalized,
            "numerical" => SemanticType::Numerical,
            "numerical_non_negative" | "numerical>=0" | "numerical >= 0" | "numerical>0"
            | "numerical > 0" => SemanticType::NumericalNonNegative,
            "percentage" => SemanticType::Percentage,
            "ph" => SemanticType::Ph,
            "phone" => SemanticType::Phone,
            "postal_code" | "postal code" | "postalcode" => SemanticType::PostalCode,
            "state" => SemanticType::State,
            "street" => SemanticType::Street,
            "string" => SemanticType::String,
            "time" => SemanticType::Time,
            "url" | "url format" => SemanticType::Url,
            "weekday" => SemanticType::Weekday,
            "year" => SemanticType::Year,
            _ => {
                return parse_numerical_between(&norm)
                    .ok_or(Error::UnknownTypeName { name: s.to_string() })
            }
        };
        Ok(t)
    }
}

/// Parses `numerical between <lo> and <hi>` or `numerical_between(<lo>,<hi>)`.
fn parse_numerical_between(norm: &str) -> Option<SemanticType> {
    let (lo, hi) = if let Some(rest) = norm.strip_prefix("numerical between ") {
        let (lo, hi) = rest.split_once(" and ")?;
        (lo.trim(), hi.trim())
    } else if let Some(rest) = norm
        .strip_prefix("numerical_between(")
        .and_then(|r| r.strip_suffix(')'))
    {
        let (lo, hi) = rest.split_once(',')?;
        (lo.trim(), hi.trim())
    } else {
        return None;
    };
    let lo: f64 = lo.parse().ok()?;
    let hi: f64 = hi.parse().ok()?;
    if !lo.is_finite() || !hi.is_finite() || lo > hi {
        return None;
    }
    Some(SemanticType::NumericalBetween(lo, hi))
}

impl Serialize for SemanticType {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.canonical_name())
    }
}

impl<'de> Deserialize<'de> for SemanticType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = std::string::String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// A detected data quality violation category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IssueKind {
    MissingData,
    ExtraneousData,
    OutdatedTemporalData,
    Duplicates,
    StructuralConflicts,
    DomainViolation,
    WrongDataType,
    UniquenessViolation,
    NonStringDataType,
}

pub const ALL_ISSUE_KINDS: &[IssueKind] = &[
    IssueKind::MissingData,
    IssueKind::ExtraneousData,
    IssueKind::OutdatedTemporalData,
    IssueKind::Duplicates,
    IssueKind::StructuralConflicts,
    IssueKind::DomainViolation,
    IssueKind::WrongDataType,
    IssueKind::UniquenessViolation,
    IssueKind::NonStringDataType,
];

impl IssueKind {
    pub fn name(&self) -> &'static str {
        match self {
            IssueKind::MissingData => "missing_data",
            IssueKind::ExtraneousData => "extraneous_data",
            IssueKind::OutdatedTemporalData => "outdated_temporal_data",
            IssueKind::Duplicates => "duplicates",
            IssueKind::StructuralConflicts => "structural_conflicts",
            IssueKind::DomainViolation => "domain_violation",
            IssueKind::WrongDataType => "wrong_data_type",
            IssueKind::UniquenessViolation => "uniqueness_violation",
            IssueKind::NonStringDataType => "non_string_data_type",
        }
    }
}

impl fmt::Display for IssueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A data quality facet an issue counts against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dimension {
    Accuracy,
    Completeness,
    Consistency,
    Uniqueness,
    Timeliness,
}

impl Dimension {
    pub fn name(&self) -> &'static str {
        match self {
            Dimension::Accuracy => "accuracy",
            Dimension::Completeness => "completeness",
            Dimension::Consistency => "consistency",
            Dimension::Uniqueness => "uniqueness",
            Dimension::Timeliness => "timeliness",
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The fixed mapping from issue kind to the dimension set it violates.
///
/// Missing data is counted under completeness alone: the published results
/// tally it that way even where the broader issue catalogue also lists
/// accuracy for it. Returned slices are sorted and never empty.
pub fn dimensions_of(issue: IssueKind) -> &'static [Dimension] {
    match issue {
        IssueKind::MissingData => &[Dimension::Completeness],
        IssueKind::ExtraneousData => &[Dimension::Consistency, Dimension::Uniqueness],
        IssueKind::OutdatedTemporalData => &[Dimension::Timeliness],
        IssueKind::Duplicates => &[Dimension::Uniqueness],
        IssueKind::StructuralConflicts => &[Dimension::Consistency, Dimension::Uniqueness],
        IssueKind::DomainViolation => &[Dimension::Accuracy],
        IssueKind::WrongDataType => &[Dimension::Consistency],
        IssueKind::UniquenessViolation => &[Dimension::Uniqueness],
        IssueKind::NonStringDataType => &[Dimension::Consistency],
    }
}

/// Canonical label for a dimension set: names sorted and joined with `+`,
/// e.g. `consistency+uniqueness`.
pub fn dimension_bucket(dims: &[Dimension]) -> std::string::String {
    let mut sorted: Vec<Dimension> = dims.to_vec();
    sorted.sort();
    sorted.dedup();
    sorted
        .iter()
        .map(|d| d.name())
        .collect::<Vec<_>>()
        .join("+")
}

/// Inclusive range for bounded members; `None` otherwise.
pub fn bounds_of(t: SemanticType) -> Option<(f64, f64)> {
    t.bounds()
}
