//! Header and description analysis: tokenize an attribute label, expand
//! abbreviations, match keywords against the Formats Dictionary, and
//! resolve the column's final semantic type.
//!
//! Name analysis runs first. The description is consulted only when the
//! name yields nothing or one of the refinable generics (`string`,
//! `numerical`), and a specific description format overrides the generic.
//! Columns whose label matches nothing stay unclassified and are reported
//! as `NaN`.

use serde::{Deserialize, Serialize};

use crate::dictionaries::{AbbreviationsDictionary, FormatsDictionary};
use crate::numeric::is_pure_digits;
use crate::semantic_model::SemanticType;

/// How a column's final format was decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    FromName,
    FromDescription,
    FromAbbreviation,
    IdRule,
    Unclassified,
}

/// The full outcome of analyzing one column label.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelAnalysis {
    pub original_header: String,
    pub tokens: Vec<String>,
    pub expanded_tokens: Vec<String>,
    pub name_format: Option<SemanticType>,
    pub description_format: Option<SemanticType>,
    /// `None` means unclassified (reported as `NaN`).
    pub final_format: Option<SemanticType>,
    pub provenance: Provenance,
}

/// Splits a header into lowercase tokens. Boundaries are whitespace,
/// underscore, hyphen, period, slash, and lower-to-upper camelCase
/// transitions; any other non-alphanumeric characters are stripped.
pub fn tokenize(header: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    for fragment in header.split(|c: char| c.is_whitespace() || matches!(c, '_' | '-' | '.' | '/')) {
        let mut current = String::new();
        let mut prev_lower = false;
        for c in fragment.chars() {
            if prev_lower && c.is_uppercase() {
                push_token(&mut tokens, &mut current);
            }
            prev_lower = c.is_lowercase();
            if c.is_alphanumeric() {
                current.extend(c.to_lowercase());
            }
        }
        push_token(&mut tokens, &mut current);
    }
    tokens
}

fn push_token(tokens: &mut Vec<String>, current: &mut String) {
    if !current.is_empty() {
        tokens.push(std::mem::take(current));
    }
}

/// Replaces each abbreviated token with its expansion's tokens, in place,
/// in a single pass. Expansion output is not re-expanded.
pub fn expand_abbreviations(tokens: &[String], abbr: &AbbreviationsDictionary) -> Vec<String> {
    let mut out = Vec::with_capacity(tokens.len());
    for token in tokens {
        match abbr.expansion_of(token) {
            Some(expansion) => out.extend(expansion.split(' ').map(str::to_string)),
            None => out.push(token.clone()),
        }
    }
    out
}

/// Identifies a format from lowercase tokens. The ID rule runs first: a
/// literal `id` token classifies the column as `id` outright. Pure-digit
/// tokens never participate in keyword matching.
pub fn identify_format(tokens: &[String], dict: &FormatsDictionary) -> Option<SemanticType> {
    if tokens.iter().any(|t| t == "id") {
        return Some(SemanticType::Id);
    }
    let phrase: Vec<String> = tokens
        .iter()
        .filter(|t| !is_pure_digits(t))
        .cloned()
        .collect();
    dict.lookup(&phrase).map(|m| m.semantic_type)
}

/// Combines the name and description results. The name wins unless it is a
/// refinable generic and the description found something specific.
pub fn resolve_format(
    name_fmt: Option<SemanticType>,
    desc_fmt: Option<SemanticType>,
) -> Option<SemanticType> {
    match (name_fmt, desc_fmt) {
        (Some(n), Some(d)) if n.is_generic() && d.is_specific() => Some(d),
        (Some(n), _) => Some(n),
        (None, d) => d,
    }
}

/// Runs the whole label pipeline for one column.
pub fn analyze_label(
    header: &str,
    description: Option<&str>,
    formats: &FormatsDictionary,
    abbreviations: &AbbreviationsDictionary,
) -> LabelAnalysis {
    let tokens = tokenize(header);
    let expanded_tokens = expand_abbreviations(&tokens, abbreviations);
    let name_format = identify_format(&expanded_tokens, formats);

    let needs_description = match name_format {
        None => true,
        Some(t) => t.is_generic(),
    };
    let description_format = if needs_description {
        description.and_then(|d| {
            let desc_tokens = expand_abbreviations(&tokenize(d), abbreviations);
            identify_format(&desc_tokens, formats)
        })
    } else {
        None
    };

    let final_format = resolve_format(name_format, description_format);

    let provenance = match final_format {
        None => Provenance::Unclassified,
        Some(f) if name_format == Some(f) => {
            if f == SemanticType::Id && expanded_tokens.iter().any(|t| t == "id") {
                Provenance::IdRule
            } else if identify_format(&tokens, formats) == name_format {
                Provenance::FromName
            } else {
                Provenance::FromAbbreviation
            }
        }
        Some(_) => Provenance::FromDescription,
    };

    LabelAnalysis {
        original_header: header.to_string(),
        tokens,
        expanded_tokens,
        name_format,
        description_format,
        final_format,
        provenance,
    }
}
