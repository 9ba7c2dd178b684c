//! Per-format content validation.
//!
//! Every column is scanned for missing-value markers; the remaining cells
//! are then checked by the rule family matching the column's semantic
//! type. Each rule violation becomes one [`QualityIssue`] aggregating the
//! offending values (capped), the offending cell count, and up to ten
//! example row indices (1-based data rows).

use std::collections::{HashMap, HashSet};

use chrono::{Months, NaiveDate, Utc};
use serde::{Deserialize, Serialize};

use crate::ingestion::{ColumnProfile, Dataset};
use crate::numeric::parse_number;
use crate::semantic_model::{bounds_of, dimensions_of, Dimension, IssueKind, SemanticType};

/// Cap on distinct offending values kept per issue.
pub const MAX_EVIDENCE_VALUES: usize = 20;
/// Cap on example row indices kept per issue.
pub const MAX_EXAMPLE_ROWS: usize = 10;

/// Sentinel cell values treated as absent data.
///
/// The empty string is always a member and cannot be removed. Markers are
/// compared after trimming; markers containing letters compare
/// case-insensitively (`na` matches `NA`, `NULL` matches `null`).
#[derive(Debug, Clone, PartialEq)]
pub struct MissingMarkerSet {
    markers: Vec<String>,
}

impl Default for MissingMarkerSet {
    fn default() -> Self {
        Self::new(["?", "NA", "N/A", "null", "NaN"].map(str::to_string))
    }
}

impl MissingMarkerSet {
    pub fn new(markers: impl IntoIterator<Item = String>) -> Self {
        let mut list = vec![String::new()];
        for marker in markers {
            let trimmed = marker.trim().to_string();
            if !trimmed.is_empty() && !list.contains(&trimmed) {
                list.push(trimmed);
            }
        }
        MissingMarkerSet { markers: list }
    }

    pub fn markers(&self) -> &[String] {
        &self.markers
    }

    pub fn is_missing(&self, cell: &str) -> bool {
        let t = cell.trim();
        if t.is_empty() {
            return true;
        }
        self.markers.iter().any(|m| {
            if m.is_empty() {
                false
            } else if m.chars().any(char::is_alphabetic) {
                t.to_lowercase() == m.to_lowercase()
            } else {
                t == m
            }
        })
    }
}

/// What a quality issue points at: the values, how many cells, and where.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    /// Distinct offending values in first-seen order, at most 20.
    pub offending_values: Vec<String>,
    /// Number of offending cells (or distinct categories for category
    /// overflow issues).
    pub count: usize,
    /// Up to ten 1-based data-row indices.
    pub example_rows: Vec<usize>,
}

/// One detected violation in one column (or at dataset scope, with an
/// empty column name).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QualityIssue {
    pub column: String,
    pub issue: IssueKind,
    pub dimensions: Vec<Dimension>,
    pub evidence: Evidence,
    pub note: String,
}

fn build_issue(
    column: &str,
    issue: IssueKind,
    note: impl Into<String>,
    offenders: &[(usize, String)],
) -> Option<QualityIssue> {
    if offenders.is_empty() {
        return None;
    }
    let mut seen = HashSet::new();
    let mut offending_values = Vec::new();
    for (_, value) in offenders {
        if offending_values.len() >= MAX_EVIDENCE_VALUES {
            break;
        }
        if seen.insert(value.clone()) {
            offending_values.push(value.clone());
        }
    }
    Some(QualityIssue {
        column: column.to_string(),
        issue,
        dimensions: dimensions_of(issue).to_vec(),
        evidence: Evidence {
            offending_values,
            count: offenders.len(),
            example_rows: offenders.iter().take(MAX_EXAMPLE_ROWS).map(|(r, _)| *r).collect(),
        },
        note: note.into(),
    })
}

/// Value frequencies over a column's non-missing cells.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyDistribution {
    pub column: String,
    /// (value, count, fraction of non-missing cells), ordered by count
    /// descending then value ascending.
    pub entries: Vec<FrequencyEntry>,
    pub distinct_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyEntry {
    pub value: String,
    pub count: usize,
    pub fraction: f64,
}

/// Tunable thresholds for the content checks.
#[derive(Debug, Clone)]
pub struct ValidationConfig {
    /// Category count above which a categorical column is flagged.
    pub max_categories: usize,
    /// Dates before this are reported as outdated.
    pub past_bound: NaiveDate,
    /// Dates after this are reported as domain violations.
    pub future_bound: NaiveDate,
    /// Cells sampled to lock a column's slash-date convention.
    pub date_sample: usize,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        let today = Utc::now().date_naive();
        ValidationConfig {
            max_categories: 1000,
            past_bound: NaiveDate::from_ymd_opt(1900, 1, 1).expect("valid date"),
            future_bound: today + Months::new(12),
            date_sample: 50,
        }
    }
}

/// (1-based row, trimmed cell) pairs for cells that are not missing.
fn non_missing_cells<'a>(
    column: &'a ColumnProfile,
    markers: &'a MissingMarkerSet,
) -> impl Iterator<Item = (usize, &'a str)> {
    column
        .cells
        .iter()
        .enumerate()
        .map(|(i, c)| (i + 1, c.trim()))
        .filter(|(_, c)| !markers.is_missing(c))
}

/// Flags cells matching a missing-value marker. Runs for every column
/// regardless of format.
pub fn check_missing(column: &ColumnProfile, markers: &MissingMarkerSet) -> Option<QualityIssue> {
    let offenders: Vec<(usize, String)> = column
        .cells
        .iter()
        .enumerate()
        .filter(|(_, c)| markers.is_missing(c))
        .map(|(i, c)| (i + 1, c.trim().to_string()))
        .collect();
    build_issue(
        &column.name,
        IssueKind::MissingData,
        "missing-value markers present",
        &offenders,
    )
}

/// Numeric content checks: unparseable cells are the wrong data type;
/// parsed values breaching the sign rule or the inclusive bounds are
/// domain violations.
pub fn check_numerical(
    column: &ColumnProfile,
    markers: &MissingMarkerSet,
    non_negative: bool,
    bounds: Option<(f64, f64)>,
) -> Vec<QualityIssue> {
    let mut unparseable = Vec::new();
    let mut negative = Vec::new();
    let mut out_of_bounds = Vec::new();
    for (row, cell) in non_missing_cells(column, markers) {
        match parse_number(cell) {
            None => unparseable.push((row, cell.to_string())),
            Some(v) => {
                if non_negative && v < 0.0 {
                    negative.push((row, cell.to_string()));
                }
                if let Some((lo, hi)) = bounds {
                    if v < lo || v > hi {
                        out_of_bounds.push((row, cell.to_string()));
                    }
                }
            }
        }
    }
    let mut issues = Vec::new();
    issues.extend(build_issue(
        &column.name,
        IssueKind::WrongDataType,
        "non-numeric content in a numerical column",
        &unparseable,
    ));
    issues.extend(build_issue(
        &column.name,
        IssueKind::DomainViolation,
        "negative value in a non-negative column",
        &negative,
    ));
    if let Some((lo, hi)) = bounds {
        issues.extend(build_issue(
            &column.name,
            IssueKind::DomainViolation,
            format!("value outside the accepted range [{lo}, {hi}]"),
            &out_of_bounds,
        ));
    }
    issues
}

/// Identifier checks: repeated values are duplicates, and any duplicate or
/// missing value additionally disqualifies the column as a primary key.
pub fn check_id(column: &ColumnProfile, markers: &MissingMarkerSet) -> Vec<QualityIssue> {
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for (_, cell) in non_missing_cells(column, markers) {
        *counts.entry(cell).or_insert(0) += 1;
    }
    let duplicated: Vec<(usize, String)> = non_missing_cells(column, markers)
        .filter(|(_, c)| counts[c] >= 2)
        .map(|(r, c)| (r, c.to_string()))
        .collect();
    let missing_count = column
        .cells
        .iter()
        .filter(|c| markers.is_missing(c))
        .count();

    let mut issues = Vec::new();
    issues.extend(build_issue(
        &column.name,
        IssueKind::Duplicates,
        "duplicate identifier values",
        &duplicated,
    ));
    if !duplicated.is_empty() || missing_count > 0 {
        let mut seen = HashSet::new();
        let mut values = Vec::new();
        for (_, v) in &duplicated {
            if values.len() >= MAX_EVIDENCE_VALUES {
                break;
            }
            if seen.insert(v.clone()) {
                values.push(v.clone());
            }
        }
        issues.push(QualityIssue {
            column: column.name.clone(),
            issue: IssueKind::UniquenessViolation,
            dimensions: dimensions_of(IssueKind::UniquenessViolation).to_vec(),
            evidence: Evidence {
                offending_values: values,
                count: duplicated.len() + missing_count,
                example_rows: duplicated
                    .iter()
                    .take(MAX_EXAMPLE_ROWS)
                    .map(|(r, _)| *r)
                    .collect(),
            },
            note: "identifier column cannot serve as a primary key".to_string(),
        });
    }
    issues
}

/// Text-content checks for string, name, model-name, and geographical
/// columns. Purely numeric cells are flagged in every case; for
/// name/city/state/country/street, a lowercase first letter is flagged as
/// improper capitalization.
pub fn check_string_content(
    column: &ColumnProfile,
    markers: &MissingMarkerSet,
    format: SemanticType,
) -> Vec<QualityIssue> {
    let check_capitalization = matches!(
        format,
        SemanticType::Name
            | SemanticType::City
            | SemanticType::State
            | SemanticType::Country
            | SemanticType::Street
    );
    let mut numeric = Vec::new();
    let mut lowercase = Vec::new();
    for (row, cell) in non_missing_cells(column, markers) {
        if parse_number(cell).is_some() {
            numeric.push((row, cell.to_string()));
            continue;
        }
        if check_capitalization {
            if let Some(first) = cell.chars().find(|c| c.is_alphabetic()) {
                if first.is_lowercase() {
                    lowercase.push((row, cell.to_string()));
                }
            }
        }
    }
    let mut issues = Vec::new();
    issues.extend(build_issue(
        &column.name,
        IssueKind::NonStringDataType,
        "numeric content in a text column",
        &numeric,
    ));
    issues.extend(build_issue(
        &column.name,
        IssueKind::WrongDataType,
        "improper capitalization",
        &lowercase,
    ));
    issues
}

/// Builds the value distribution and flags category overflow. Binary
/// columns additionally require at most two distinct values.
pub fn check_categorical(
    column: &ColumnProfile,
    markers: &MissingMarkerSet,
    max_categories: usize,
    binary: bool,
) -> (FrequencyDistribution, Vec<QualityIssue>) {
    let mut counts: HashMap<String, usize> = HashMap::new();
    let mut total = 0usize;
    for (_, cell) in non_missing_cells(column, markers) {
        *counts.entry(cell.to_string()).or_insert(0) += 1;
        total += 1;
    }
    let mut entries: Vec<FrequencyEntry> = counts
        .into_iter()
        .map(|(value, count)| FrequencyEntry {
            value,
            count,
            fraction: if total == 0 { 0.0 } else { count as f64 / total as f64 },
        })
        .collect();
    entries.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.value.cmp(&b.value)));
    let distinct_count = entries.len();
    let distribution = FrequencyDistribution {
        column: column.name.clone(),
        entries,
        distinct_count,
    };

    let mut issues = Vec::new();
    let sample: Vec<String> = distribution
        .entries
        .iter()
        .take(MAX_EVIDENCE_VALUES)
        .map(|e| e.value.clone())
        .collect();
    if distinct_count > max_categories {
        issues.push(QualityIssue {
            column: column.name.clone(),
            issue: IssueKind::ExtraneousData,
            dimensions: dimensions_of(IssueKind::ExtraneousData).to_vec(),
            evidence: Evidence {
                offending_values: sample.clone(),
                count: distinct_count,
                example_rows: Vec::new(),
            },
            note: format!("{distinct_count} distinct categories exceed the threshold of {max_categories}"),
        });
    }
    if binary && distinct_count > 2 {
        issues.push(QualityIssue {
            column: column.name.clone(),
            issue: IssueKind::DomainViolation,
            dimensions: dimensions_of(IssueKind::DomainViolation).to_vec(),
            evidence: Evidence {
                offending_values: sample,
                count: distinct_count,
                example_rows: Vec::new(),
            },
            note: format!("binary column holds {distinct_count} distinct values"),
        });
    }
    (distribution, issues)
}

/// Which slash-date convention a column follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SlashOrder {
    DayFirst,
    MonthFirst,
}

fn parse_iso_date(s: &str) -> Option<NaiveDate> {
    let mut parts = s.split('-');
    let (y, m, d) = (parts.next()?, parts.next()?, parts.next()?);
    if parts.next().is_some() {
        return None;
    }
    if y.len() != 4 || !(1..=2).contains(&m.len()) || !(1..=2).contains(&d.len()) {
        return None;
    }
    if ![y, m, d].iter().all(|p| p.bytes().all(|b| b.is_ascii_digit())) {
        return None;
    }
    NaiveDate::from_ymd_opt(y.parse().ok()?, m.parse().ok()?, d.parse().ok()?)
}

fn parse_slash_date(s: &str, order: SlashOrder) -> Option<NaiveDate> {
    let mut parts = s.split('/');
    let (a, b, y) = (parts.next()?, parts.next()?, parts.next()?);
    if parts.next().is_some() {
        return None;
    }
    if y.len() != 4 || !(1..=2).contains(&a.len()) || !(1..=2).contains(&b.len()) {
        return None;
    }
    if ![a, b, y].iter().all(|p| p.bytes().all(|b| b.is_ascii_digit())) {
        return None;
    }
    let (day, month) = match order {
        SlashOrder::DayFirst => (a, b),
        SlashOrder::MonthFirst => (b, a),
    };
    NaiveDate::from_ymd_opt(y.parse().ok()?, month.parse().ok()?, day.parse().ok()?)
}

fn parse_date(s: &str, order: SlashOrder) -> Option<NaiveDate> {
    parse_iso_date(s).or_else(|| parse_slash_date(s, order))
}

fn parse_time_of_day(s: &str) -> Option<(u32, u32, u32)> {
    let parts: Vec<&str> = s.split(':').collect();
    if !(2..=3).contains(&parts.len()) {
        return None;
    }
    if !parts
        .iter()
        .all(|p| (1..=2).contains(&p.len()) && p.bytes().all(|b| b.is_ascii_digit()))
    {
        return None;
    }
    let h: u32 = parts[0].parse().ok()?;
    let m: u32 = parts[1].parse().ok()?;
    let s: u32 = parts.get(2).map_or(Some(0), |p| p.parse().ok())?;
    (h < 24 && m < 60 && s < 60).then_some((h, m, s))
}

const WEEKDAY_NAMES: &[&str] = &[
    "monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday",
];

fn is_valid_weekday(s: &str) -> bool {
    if let Ok(n) = s.parse::<i64>() {
        return (1..=7).contains(&n);
    }
    WEEKDAY_NAMES.contains(&s.to_lowercase().as_str())
}

/// Picks the slash convention most of the sampled cells parse under; ties
/// go to day-first, which also covers the one-digit-day spelling.
fn lock_slash_order(
    column: &ColumnProfile,
    markers: &MissingMarkerSet,
    sample: usize,
    datetime: bool,
) -> SlashOrder {
    let mut day_first = 0usize;
    let mut month_first = 0usize;
    for (_, cell) in non_missing_cells(column, markers).take(sample) {
        let date_part = if datetime {
            cell.split_whitespace().next().unwrap_or(cell)
        } else {
            cell
        };
        if parse_slash_date(date_part, SlashOrder::DayFirst).is_some() {
            day_first += 1;
        }
        if parse_slash_date(date_part, SlashOrder::MonthFirst).is_some() {
            month_first += 1;
        }
    }
    if month_first > day_first {
        SlashOrder::MonthFirst
    } else {
        SlashOrder::DayFirst
    }
}

/// Temporal checks. Dates and datetimes are parsed against the accepted
/// patterns and checked against the plausibility window; times must be
/// valid clock readings; year/month/day/hour reuse the numeric bounds;
/// weekdays accept 1-7 or English day names.
pub fn check_temporal(
    column: &ColumnProfile,
    markers: &MissingMarkerSet,
    format: SemanticType,
    config: &ValidationConfig,
) -> Vec<QualityIssue> {
    match format {
        SemanticType::Year | SemanticType::Month | SemanticType::Day | SemanticType::Hour => {
            return check_numerical(column, markers, false, bounds_of(format));
        }
        SemanticType::Weekday => {
            let offenders: Vec<(usize, String)> = non_missing_cells(column, markers)
                .filter(|(_, c)| !is_valid_weekday(c))
                .map(|(r, c)| (r, c.to_string()))
                .collect();
            return build_issue(
                &column.name,
                IssueKind::WrongDataType,
                "not a weekday (1-7 or an English day name)",
                &offenders,
            )
            .into_iter()
            .collect();
        }
        SemanticType::Time => {
            let offenders: Vec<(usize, String)> = non_missing_cells(column, markers)
                .filter(|(_, c)| parse_time_of_day(c).is_none())
                .map(|(r, c)| (r, c.to_string()))
                .collect();
            return build_issue(
                &column.name,
                IssueKind::WrongDataType,
                "invalid time of day",
                &offenders,
            )
            .into_iter()
            .collect();
        }
        SemanticType::Date | SemanticType::Datetime => {}
        _ => return Vec::new(),
    }

    let datetime = format == SemanticType::Datetime;
    let order = lock_slash_order(column, markers, config.date_sample, datetime);
    let mut unparseable = Vec::new();
    let mut outdated = Vec::new();
    let mut future = Vec::new();
    for (row, cell) in non_missing_cells(column, markers) {
        let parsed = if datetime {
            let mut halves = cell.splitn(2, ' ');
            let date_part = halves.next().unwrap_or("");
            let time_part = halves.next().map(str::trim);
            match (parse_date(date_part, order), time_part.map(parse_time_of_day)) {
                (Some(d), Some(Some(_))) => Some(d),
                _ => None,
            }
        } else {
            parse_date(cell, order)
        };
        match parsed {
            None => unparseable.push((row, cell.to_string())),
            Some(d) => {
                if d < config.past_bound {
                    outdated.push((row, cell.to_string()));
                } else if d > config.future_bound {
                    future.push((row, cell.to_string()));
                }
            }
        }
    }
    let mut issues = Vec::new();
    issues.extend(build_issue(
        &column.name,
        IssueKind::WrongDataType,
        "unparseable or calendar-invalid date",
        &unparseable,
    ));
    issues.extend(build_issue(
        &column.name,
        IssueKind::OutdatedTemporalData,
        format!("date before the plausibility window ({})", config.past_bound),
        &outdated,
    ));
    issues.extend(build_issue(
        &column.name,
        IssueKind::DomainViolation,
        format!("future date beyond the plausibility window ({})", config.future_bound),
        &future,
    ));
    issues
}

fn is_valid_email(s: &str) -> bool {
    let mut parts = s.split('@');
    match (parts.next(), parts.next(), parts.next()) {
        (Some(local), Some(domain), None) => !local.is_empty() && domain.contains('.'),
        _ => false,
    }
}

fn is_valid_url(s: &str) -> bool {
    let lower = s.to_lowercase();
    for scheme in ["http://", "https://", "ftp://"] {
        if let Some(rest) = lower.strip_prefix(scheme) {
            let host = rest.split('/').next().unwrap_or("");
            return !host.is_empty();
        }
    }
    false
}

fn is_valid_ip(s: &str) -> bool {
    let parts: Vec<&str> = s.split('.').collect();
    parts.len() == 4
        && parts.iter().all(|p| {
            !p.is_empty()
                && p.len() <= 3
                && p.bytes().all(|b| b.is_ascii_digit())
                && p.parse::<u32>().map(|v| v <= 255).unwrap_or(false)
        })
}

fn is_valid_phone(s: &str) -> bool {
    let digits: String = s
        .chars()
        .filter(|c| !matches!(c, '+' | '-' | '(' | ')' | ' '))
        .collect();
    (7..=15).contains(&digits.len()) && digits.bytes().all(|b| b.is_ascii_digit())
}

fn is_valid_postal_code(s: &str) -> bool {
    if s.is_empty() || !s.chars().all(|c| c.is_alphanumeric() || c == ' ' || c == '-') {
        return false;
    }
    let first_ok = s.chars().next().is_some_and(char::is_alphanumeric);
    let last_ok = s.chars().last().is_some_and(char::is_alphanumeric);
    let alnum = s.chars().filter(|c| c.is_alphanumeric()).count();
    first_ok && last_ok && (3..=10).contains(&alnum)
}

const CURRENCY_SYMBOLS: &[char] = &['$', '€', '£', '¥', '₹'];

fn is_valid_money(s: &str) -> bool {
    let rest = match s.chars().next() {
        Some(c) if CURRENCY_SYMBOLS.contains(&c) => &s[c.len_utf8()..],
        _ => s,
    };
    parse_number(rest.trim_start()).is_some()
}

/// Syntax checks for the special formats; bounded numerics among them
/// (latitude, longitude, ph, percentage, normalized) reuse the numeric
/// bounds check.
pub fn check_special(
    column: &ColumnProfile,
    markers: &MissingMarkerSet,
    format: SemanticType,
) -> Vec<QualityIssue> {
    let (validator, what): (fn(&str) -> bool, &str) = match format {
        SemanticType::Email => (is_valid_email, "not a valid e-mail address"),
        SemanticType::Url => (is_valid_url, "not a valid URL"),
        SemanticType::Ip => (is_valid_ip, "not a valid IPv4 address"),
        SemanticType::Phone => (is_valid_phone, "not a valid phone number"),
        SemanticType::PostalCode => (is_valid_postal_code, "not a valid postal code"),
        SemanticType::Money => (is_valid_money, "not a valid monetary amount"),
        SemanticType::Latitude
        | SemanticType::Longitude
        | SemanticType::Ph
        | SemanticType::Percentage
        | SemanticType::Normalized => {
            return check_numerical(column, markers, false, bounds_of(format));
        }
        _ => return Vec::new(),
    };
    let offenders: Vec<(usize, String)> = non_missing_cells(column, markers)
        .filter(|(_, c)| !validator(c))
        .map(|(r, c)| (r, c.to_string()))
        .collect();
    build_issue(&column.name, IssueKind::WrongDataType, what, &offenders)
        .into_iter()
        .collect()
}

fn is_numeric_family(t: SemanticType) -> bool {
    t.bounds().is_some()
        || matches!(t, SemanticType::Numerical | SemanticType::NumericalNonNegative)
}

/// Dataset-shape checks: padded ragged rows, and numerical-family columns
/// whose non-missing cells split into sizeable numeric and text
/// populations.
pub fn detect_structural_conflicts(
    dataset: &Dataset,
    markers: &MissingMarkerSet,
) -> Vec<QualityIssue> {
    let mut issues = Vec::new();
    if dataset.ragged_rows > 0 {
        issues.push(QualityIssue {
            column: String::new(),
            issue: IssueKind::StructuralConflicts,
            dimensions: dimensions_of(IssueKind::StructuralConflicts).to_vec(),
            evidence: Evidence {
                offending_values: Vec::new(),
                count: dataset.ragged_rows,
                example_rows: dataset.ragged_row_examples.clone(),
            },
            note: format!(
                "{} row(s) did not match the column grid and were padded",
                dataset.ragged_rows
            ),
        });
    }
    for column in &dataset.columns {
        let Some(format) = column.analysis.as_ref().and_then(|a| a.final_format) else {
            continue;
        };
        if !is_numeric_family(format) {
            continue;
        }
        let mut numeric = 0usize;
        let mut text: Vec<(usize, String)> = Vec::new();
        for (row, cell) in non_missing_cells(column, markers) {
            if parse_number(cell).is_some() {
                numeric += 1;
            } else {
                text.push((row, cell.to_string()));
            }
        }
        let total = numeric + text.len();
        if total == 0 {
            continue;
        }
        let numeric_fraction = numeric as f64 / total as f64;
        let text_fraction = text.len() as f64 / total as f64;
        if numeric_fraction > 0.2 && text_fraction > 0.2 {
            if let Some(mut issue) = build_issue(
                &column.name,
                IssueKind::StructuralConflicts,
                format!(
                    "mixed content populations: {:.0}% numeric, {:.0}% text",
                    numeric_fraction * 100.0,
                    text_fraction * 100.0
                ),
                &text,
            ) {
                issue.evidence.count = text.len().min(numeric);
                issues.push(issue);
            }
        }
    }
    issues
}

/// Runs the full rule family for one analyzed column: the missing-marker
/// scan first, then the checks for the column's final format. Unclassified
/// columns get only the missing scan.
pub fn validate_column(
    column: &ColumnProfile,
    markers: &MissingMarkerSet,
    config: &ValidationConfig,
) -> (Vec<QualityIssue>, Option<FrequencyDistribution>) {
    let mut issues: Vec<QualityIssue> = check_missing(column, markers).into_iter().collect();
    let format = column.analysis.as_ref().and_then(|a| a.final_format);
    let mut distribution = None;
    if let Some(format) = format {
        match format {
            SemanticType::Id => issues.extend(check_id(column, markers)),
            SemanticType::Numerical => {
                issues.extend(check_numerical(column, markers, false, None));
            }
            SemanticType::NumericalNonNegative => {
                issues.extend(check_numerical(column, markers, true, None));
            }
            SemanticType::Age | SemanticType::NumericalBetween(_, _) => {
                issues.extend(check_numerical(column, markers, false, bounds_of(format)));
            }
            SemanticType::String
            | SemanticType::ModelName
            | SemanticType::Name
            | SemanticType::City
            | SemanticType::State
            | SemanticType::Country
            | SemanticType::Street => {
                issues.extend(check_string_content(column, markers, format));
            }
            SemanticType::Categorical | SemanticType::Binary => {
                let (dist, cat_issues) = check_categorical(
                    column,
                    markers,
                    config.max_categories,
                    format == SemanticType::Binary,
                );
                distribution = Some(dist);
                issues.extend(cat_issues);
            }
            SemanticType::Date
            | SemanticType::Datetime
            | SemanticType::Time
            | SemanticType::Year
            | SemanticType::Month
            | SemanticType::Day
            | SemanticType::Hour
            | SemanticType::Weekday => {
                issues.extend(check_temporal(column, markers, format, config));
            }
            SemanticType::Email
            | SemanticType::Url
            | SemanticType::Ip
            | SemanticType::Phone
            | SemanticType::PostalCode
            | SemanticType::Money
            | SemanticType::Latitude
            | SemanticType::Longitude
            | SemanticType::Ph
            | SemanticType::Percentage
            | SemanticType::Normalized => {
                issues.extend(check_special(column, markers, format));
            }
        }
    }
    (issues, distribution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label_analysis::{analyze_label, LabelAnalysis, Provenance};

    fn column(name: &str, format: Option<SemanticType>, cells: &[&str]) -> ColumnProfile {
        ColumnProfile {
            name: name.to_string(),
            description: None,
            cells: cells.iter().map(|c| c.to_string()).collect(),
            analysis: Some(LabelAnalysis {
                original_header: name.to_string(),
                tokens: Vec::new(),
                expanded_tokens: Vec::new(),
                name_format: format,
                description_format: None,
                final_format: format,
                provenance: if format.is_some() {
                    Provenance::FromName
                } else {
                    Provenance::Unclassified
                },
            }),
        }
    }

    fn fixed_config() -> ValidationConfig {
        ValidationConfig {
            max_categories: 1000,
            past_bound: NaiveDate::from_ymd_opt(1900, 1, 1).unwrap(),
            future_bound: NaiveDate::from_ymd_opt(2027, 8, 10).unwrap(),
            date_sample: 50,
        }
    }

    #[test]
    fn default_markers_match_spelling_variants() {
        let markers = MissingMarkerSet::default();
        for cell in ["?", "", "  ", "NA", "na", "N/A", "null", "NULL", "NaN", "nan"] {
            assert!(markers.is_missing(cell), "{cell:?} should be missing");
        }
        for cell in ["0", "none?", "x", "n a"] {
            assert!(!markers.is_missing(cell), "{cell:?} should not be missing");
        }
    }

    #[test]
    fn marker_override_keeps_empty_member() {
        let markers = MissingMarkerSet::new(["?".to_string(), "NA".to_string()]);
        assert!(markers.is_missing(""));
        assert!(markers.is_missing("?"));
        assert!(markers.is_missing("na"));
        assert!(!markers.is_missing("null"));
    }

    #[test]
    fn missing_scan_matches_brute_force() {
        let markers = MissingMarkerSet::default();
        let col = column("Country", Some(SemanticType::Country), &["USA", "?", "Australia"]);
        let issue = check_missing(&col, &markers).unwrap();
        assert_eq!(issue.issue, IssueKind::MissingData);
        assert_eq!(issue.evidence.count, 1);
        assert_eq!(issue.evidence.offending_values, vec!["?"]);
        assert_eq!(issue.evidence.example_rows, vec![2]);

        let clean = column("c", None, &["a", "b", "c"]);
        assert!(check_missing(&clean, &markers).is_none());

        let col = column("m", None, &["", "NA", "?"]);
        let issue = check_missing(&col, &markers).unwrap();
        assert_eq!(issue.evidence.count, 3);
        assert_eq!(issue.evidence.offending_values, vec!["", "NA", "?"]);
        // Brute-force: count of cells whose trimmed value is in the set.
        let brute = col.cells.iter().filter(|c| markers.is_missing(c)).count();
        assert_eq!(issue.evidence.count, brute);
    }

    #[test]
    fn numerical_checks() {
        let markers = MissingMarkerSet::default();
        let humidity = column(
            "Humidity",
            Some(SemanticType::NumericalNonNegative),
            &["45", "70", "-200"],
        );
        let issues = check_numerical(&humidity, &markers, true, None);
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].issue, IssueKind::DomainViolation);
        assert_eq!(issues[0].evidence.offending_values, vec!["-200"]);

        let age = column("Age", Some(SemanticType::Age), &["200"]);
        let issues = check_numerical(&age, &markers, false, Some((0.0, 150.0)));
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].issue, IssueKind::DomainViolation);

        let ok = column("x", None, &["1", "2", "3"]);
        assert!(check_numerical(&ok, &markers, false, Some((0.0, 10.0))).is_empty());

        let mixed = column("x", None, &["abc", "-1"]);
        let issues = check_numerical(&mixed, &markers, true, None);
        assert_eq!(issues.len(), 2);
        assert_eq!(issues[0].issue, IssueKind::WrongDataType);
        assert_eq!(issues[1].issue, IssueKind::DomainViolation);
    }

    #[test]
    fn id_checks() {
        let markers = MissingMarkerSet::default();
        let ids = column("Student ID", Some(SemanticType::Id), &["I345343", "J892932", "J892932"]);
        let issues = check_id(&ids, &markers);
        assert_eq!(issues.len(), 2);
        assert_eq!(issues[0].issue, IssueKind::Duplicates);
        assert_eq!(issues[0].evidence.offending_values, vec!["J892932"]);
        assert_eq!(issues[0].evidence.count, 2);
        assert_eq!(issues[1].issue, IssueKind::UniquenessViolation);

        let unique = column("id", Some(SemanticType::Id), &["a", "b", "c"]);
        assert!(check_id(&unique, &markers).is_empty());

        let all_same = column("id", Some(SemanticType::Id), &["x", "x", "x"]);
        let issues = check_id(&all_same, &markers);
        assert_eq!(issues[0].evidence.count, 3);
        // Brute-force multiset count of values with multiplicity >= 2.
        let brute = all_same.cells.iter().filter(|c| all_same.cells.iter().filter(|d| d == c).count() >= 2).count();
        assert_eq!(issues[0].evidence.count, brute);

        // A missing identifier alone still disqualifies the primary key.
        let with_missing = column("id", Some(SemanticType::Id), &["a", "?", "b"]);
        let issues = check_id(&with_missing, &markers);
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].issue, IssueKind::UniquenessViolation);
        assert_eq!(issues[0].evidence.count, 1);
    }

    #[test]
    fn string_content_checks() {
        let markers = MissingMarkerSet::default();
        let last = column("Last Name", Some(SemanticType::Name), &["white", "Stewart", "Johnson"]);
        let issues = check_string_content(&last, &markers, SemanticType::Name);
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].issue, IssueKind::WrongDataType);
        assert_eq!(issues[0].note, "improper capitalization");
        assert_eq!(issues[0].evidence.offending_values, vec!["white"]);

        let first = column("First Name", Some(SemanticType::Name), &["3", "Ronald", "Peter"]);
        let issues = check_string_content(&first, &markers, SemanticType::Name);
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].issue, IssueKind::NonStringDataType);
        assert_eq!(issues[0].evidence.offending_values, vec!["3"]);

        let cities = column("City", Some(SemanticType::City), &["Lisbon", "Perth"]);
        assert!(check_string_content(&cities, &markers, SemanticType::City).is_empty());

        // Plain strings are never capitalization-checked.
        let notes = column("Notes", Some(SemanticType::String), &["lowercase is fine"]);
        assert!(check_string_content(&notes, &markers, SemanticType::String).is_empty());
    }

    #[test]
    fn categorical_checks() {
        let markers = MissingMarkerSet::default();
        let binary = column("b", Some(SemanticType::Binary), &["y", "n", "y", "maybe"]);
        let (dist, issues) = check_categorical(&binary, &markers, 1000, true);
        assert_eq!(dist.distinct_count, 3);
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].issue, IssueKind::DomainViolation);
        assert_eq!(issues[0].evidence.count, 3);

        let simple = column("c", Some(SemanticType::Categorical), &["a", "a", "b"]);
        let (dist, issues) = check_categorical(&simple, &markers, 1000, false);
        assert!(issues.is_empty());
        assert_eq!(dist.distinct_count, 2);
        assert_eq!(dist.entries[0].value, "a");
        assert_eq!(dist.entries[0].count, 2);
        assert!((dist.entries[0].fraction - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(dist.entries[1].count, 1);
        let total: usize = dist.entries.iter().map(|e| e.count).sum();
        assert_eq!(total, 3);
        let frac: f64 = dist.entries.iter().map(|e| e.fraction).sum();
        assert!((frac - 1.0).abs() < 1e-9);

        // Category overflow with a tiny threshold.
        let many = column("c", Some(SemanticType::Categorical), &["a", "b", "c", "d"]);
        let (_, issues) = check_categorical(&many, &markers, 3, false);
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].issue, IssueKind::ExtraneousData);
        assert_eq!(issues[0].evidence.count, 4);
    }

    #[test]
    fn temporal_checks_on_dirty_birthdates() {
        let markers = MissingMarkerSet::default();
        let config = fixed_config();
        let col = column(
            "BirthDate",
            Some(SemanticType::Date),
            &["3/04/2121", "0/1/2010", "null"],
        );
        let issues = check_temporal(&col, &markers, SemanticType::Date, &config);
        assert_eq!(issues.len(), 2);
        assert_eq!(issues[0].issue, IssueKind::WrongDataType);
        assert_eq!(issues[0].evidence.offending_values, vec!["0/1/2010"]);
        assert_eq!(issues[1].issue, IssueKind::DomainViolation);
        assert_eq!(issues[1].evidence.offending_values, vec!["3/04/2121"]);
    }

    #[test]
    fn temporal_valid_and_invalid_values() {
        let markers = MissingMarkerSet::default();
        let config = fixed_config();
        let ok = column("d", Some(SemanticType::Date), &["2020-01-15"]);
        assert!(check_temporal(&ok, &markers, SemanticType::Date, &config).is_empty());

        let feb30 = column("d", Some(SemanticType::Date), &["2020-02-30", "30/02/2020"]);
        let issues = check_temporal(&feb30, &markers, SemanticType::Date, &config);
        assert_eq!(issues[0].evidence.count, 2);

        let old = column("d", Some(SemanticType::Date), &["1850-06-01"]);
        let issues = check_temporal(&old, &markers, SemanticType::Date, &config);
        assert_eq!(issues[0].issue, IssueKind::OutdatedTemporalData);

        let times = column("t", Some(SemanticType::Time), &["25:00:00", "09:30", "9:30:59"]);
        let issues = check_temporal(&times, &markers, SemanticType::Time, &config);
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].evidence.offending_values, vec!["25:00:00"]);

        let wd = column("w", Some(SemanticType::Weekday), &["Monday", "7", "8", "Mon"]);
        let issues = check_temporal(&wd, &markers, SemanticType::Weekday, &config);
        assert_eq!(issues[0].evidence.offending_values, vec!["8", "Mon"]);

        let years = column("y", Some(SemanticType::Year), &["1999", "2500"]);
        let issues = check_temporal(&years, &markers, SemanticType::Year, &config);
        assert_eq!(issues[0].issue, IssueKind::DomainViolation);
        assert_eq!(issues[0].evidence.offending_values, vec!["2500"]);
    }

    #[test]
    fn slash_order_majority_lock() {
        let markers = MissingMarkerSet::default();
        let config = fixed_config();
        // Unambiguously month-first cells dominate, so 3/4/2020 reads as
        // March 4 and 25/12/2020 becomes invalid.
        let col = column(
            "d",
            Some(SemanticType::Date),
            &["12/25/2020", "11/28/2021", "3/4/2020", "25/12/2020"],
        );
        let issues = check_temporal(&col, &markers, SemanticType::Date, &config);
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].issue, IssueKind::WrongDataType);
        assert_eq!(issues[0].evidence.offending_values, vec!["25/12/2020"]);
    }

    #[test]
    fn datetime_requires_both_halves() {
        let markers = MissingMarkerSet::default();
        let config = fixed_config();
        let col = column(
            "ts",
            Some(SemanticType::Datetime),
            &["2020-01-15 10:30", "2020-01-15 10:30:59", "2020-01-15", "2020-01-15 99:00"],
        );
        let issues = check_temporal(&col, &markers, SemanticType::Datetime, &config);
        assert_eq!(issues.len(), 1);
        assert_eq!(
            issues[0].evidence.offending_values,
            vec!["2020-01-15", "2020-01-15 99:00"]
        );
    }

    #[test]
    fn special_format_checks() {
        let markers = MissingMarkerSet::default();
        let ip = column("ip", Some(SemanticType::Ip), &["256.1.1.1", "10.0.0.1"]);
        let issues = check_special(&ip, &markers, SemanticType::Ip);
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].evidence.offending_values, vec!["256.1.1.1"]);

        let url = column("url", Some(SemanticType::Url), &["https://uci.edu"]);
        assert!(check_special(&url, &markers, SemanticType::Url).is_empty());

        let ph = column("ph", Some(SemanticType::Ph), &["15.2", "7.0"]);
        let issues = check_special(&ph, &markers, SemanticType::Ph);
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].issue, IssueKind::DomainViolation);
        assert_eq!(issues[0].evidence.offending_values, vec!["15.2"]);

        let email = column("email", Some(SemanticType::Email), &["a@b.c", "a@b", "@b.c", "a@b@c.d"]);
        let issues = check_special(&email, &markers, SemanticType::Email);
        assert_eq!(issues[0].evidence.count, 3);

        let phone = column("phone", Some(SemanticType::Phone), &["+1 (555) 123-4567", "12", "55x5"]);
        let issues = check_special(&phone, &markers, SemanticType::Phone);
        assert_eq!(issues[0].evidence.offending_values, vec!["12", "55x5"]);

        let postal = column("zip", Some(SemanticType::PostalCode), &["6000", "SW1A 1AA", "x", "-123-"]);
        let issues = check_special(&postal, &markers, SemanticType::PostalCode);
        assert_eq!(issues[0].evidence.offending_values, vec!["x", "-123-"]);

        let money = column("money", Some(SemanticType::Money), &["$5.99", "12.50", "€3", "5 dollars"]);
        let issues = check_special(&money, &markers, SemanticType::Money);
        assert_eq!(issues[0].evidence.offending_values, vec!["5 dollars"]);
    }

    #[test]
    fn structural_conflicts() {
        let markers = MissingMarkerSet::default();
        let make_dataset = |cells: &[&str], format| {
            let mut col = column("x", Some(format), cells);
            col.analysis = Some(LabelAnalysis {
                original_header: "x".into(),
                tokens: vec![],
                expanded_tokens: vec![],
                name_format: Some(format),
                description_format: None,
                final_format: Some(format),
                provenance: Provenance::FromName,
            });
            Dataset {
                source_name: "t.csv".into(),
                columns: vec![col],
                row_count: cells.len(),
                delimiter: crate::ingestion::Delimiter::Comma,
                had_header: true,
                ragged_rows: 0,
                ragged_row_examples: vec![],
            }
        };

        // 50/50 numeric and text in a numerical column.
        let ds = make_dataset(&["1", "a", "2", "b"], SemanticType::Numerical);
        let issues = detect_structural_conflicts(&ds, &markers);
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].issue, IssueKind::StructuralConflicts);

        // Clean rectangular numeric data.
        let ds = make_dataset(&["1", "2", "3"], SemanticType::Numerical);
        assert!(detect_structural_conflicts(&ds, &markers).is_empty());

        // Mixed content in a name column is not a structural conflict.
        let ds = make_dataset(&["1", "a", "2", "b"], SemanticType::Name);
        assert!(detect_structural_conflicts(&ds, &markers).is_empty());

        // Ragged rows surface as a dataset-scope issue.
        let mut ds = make_dataset(&["1", "2"], SemanticType::Numerical);
        ds.ragged_rows = 1;
        ds.ragged_row_examples = vec![2];
        let issues = detect_structural_conflicts(&ds, &markers);
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].column, "");
        assert_eq!(issues[0].evidence.count, 1);
    }

    #[test]
    fn validate_column_dispatch_and_order() {
        let markers = MissingMarkerSet::default();
        let config = fixed_config();

        let country = column("Country", Some(SemanticType::Country), &["USA", "?", "Australia"]);
        let (issues, dist) = validate_column(&country, &markers, &config);
        assert!(dist.is_none());
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].issue, IssueKind::MissingData);

        let ids = column("Student ID", Some(SemanticType::Id), &["I345343", "J892932", "J892932"]);
        let (issues, _) = validate_column(&ids, &markers, &config);
        assert_eq!(
            issues.iter().map(|i| i.issue).collect::<Vec<_>>(),
            vec![IssueKind::Duplicates, IssueKind::UniquenessViolation]
        );

        // All cells missing: only the missing-data issue, no format noise.
        let empty = column("Age", Some(SemanticType::Age), &["?", "", "NA"]);
        let (issues, _) = validate_column(&empty, &markers, &config);
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].issue, IssueKind::MissingData);
        assert_eq!(issues[0].evidence.count, 3);

        // Unclassified columns receive only the missing scan.
        let unknown = column("X42", None, &["?", "whatever", "-5"]);
        let (issues, _) = validate_column(&unknown, &markers, &config);
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].issue, IssueKind::MissingData);

        // Determinism and non-mutation.
        let twice = validate_column(&ids, &markers, &config);
        assert_eq!(twice, validate_column(&ids, &markers, &config));
    }

    #[test]
    fn missing_runs_before_format_checks() {
        let markers = MissingMarkerSet::default();
        let config = fixed_config();
        let col = column(
            "BirthDate",
            Some(SemanticType::Date),
            &["3/04/2121", "0/1/2010", "null"],
        );
        let (issues, _) = validate_column(&col, &markers, &config);
        assert_eq!(issues.len(), 3);
        assert_eq!(issues[0].issue, IssueKind::MissingData);
        assert_eq!(issues[0].evidence.offending_values, vec!["null"]);
        assert_eq!(issues[1].issue, IssueKind::WrongDataType);
        assert_eq!(issues[2].issue, IssueKind::DomainViolation);
    }

    #[test]
    fn issue_dimensions_always_match_mapping() {
        let markers = MissingMarkerSet::default();
        let config = fixed_config();
        let col = column("Age", Some(SemanticType::Age), &["200", "abc", "?"]);
        let (issues, _) = validate_column(&col, &markers, &config);
        for issue in issues {
            assert_eq!(issue.dimensions, dimensions_of(issue.issue).to_vec());
            assert!(issue.evidence.count >= 1);
        }
    }

    #[test]
    fn analyzed_label_roundtrip_with_validation() {
        // End-to-end on one column: label analysis feeds validation.
        let formats = crate::dictionaries::seed_formats();
        let abbr = crate::dictionaries::seed_abbreviations();
        let mut col = ColumnProfile {
            name: "Humidity".into(),
            description: None,
            cells: vec!["45".into(), "70".into(), "-200".into()],
            analysis: None,
        };
        col.analysis = Some(analyze_label("Humidity", None, &formats, &abbr));
        let (issues, _) =
            validate_column(&col, &MissingMarkerSet::default(), &fixed_config());
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].issue, IssueKind::DomainViolation);
        assert_eq!(issues[0].evidence.offending_values, vec!["-200"]);
    }
}
