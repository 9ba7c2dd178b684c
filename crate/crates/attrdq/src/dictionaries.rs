//! The Formats and Abbreviations dictionaries.
//!
//! Both files share one grammar: UTF-8 text, one entry per line as
//! `key<TAB>value`, with blank lines and lines starting with `#` skipped.
//! The Formats Dictionary maps lowercase keyword phrases to semantic types
//! and its entry order is meaningful (earlier entries win lookup ties). The
//! Abbreviations Dictionary maps single lowercase tokens to replacement
//! phrases applied before keyword matching, e.g. `pct` to `percentage`.

use std::collections::HashMap;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::semantic_model::SemanticType;

/// One formats-dictionary entry: a keyword phrase and its semantic type.
#[derive(Debug, Clone, PartialEq)]
pub struct FormatEntry {
    /// Normalized keyword phrase (lowercase, single-space separated).
    pub keyword: String,
    /// The phrase split into tokens, cached for subsequence matching.
    pub tokens: Vec<String>,
    pub semantic_type: SemanticType,
}

/// Ordered keyword-to-type map driving label analysis.
#[derive(Debug, Clone, Default)]
pub struct FormatsDictionary {
    entries: Vec<FormatEntry>,
    index: HashMap<String, usize>,
}

/// A successful keyword lookup.
#[derive(Debug, Clone, PartialEq)]
pub struct KeywordMatch {
    pub semantic_type: SemanticType,
    pub keyword: String,
    /// Entry rank in the dictionary file (0-based).
    pub position: usize,
}

impl FormatsDictionary {
    /// Parses `keyword<TAB>type` lines from a text stream.
    pub fn load(reader: impl BufRead) -> Result<Self> {
        let mut dict = FormatsDictionary::default();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let Some((keyword, type_field)) = split_entry_line(&line, line_no)? else {
                continue;
            };
            let semantic_type: SemanticType = type_field.parse().map_err(|_| {
                Error::dictionary(line_no, format!("unknown semantic type {type_field:?}"))
            })?;
            dict.push(keyword, semantic_type, line_no)?;
        }
        Ok(dict)
    }

    pub fn load_str(text: &str) -> Result<Self> {
        Self::load(text.as_bytes())
    }

    fn push(&mut self, keyword: String, semantic_type: SemanticType, line_no: usize) -> Result<()> {
        if keyword.is_empty() {
            return Err(Error::dictionary(line_no, "empty keyword"));
        }
        if self.index.contains_key(&keyword) {
            return Err(Error::dictionary(
                line_no,
                format!("duplicate keyword {keyword:?}"),
            ));
        }
        let tokens = keyword.split(' ').map(str::to_string).collect();
        self.index.insert(keyword.clone(), self.entries.len());
        self.entries.push(FormatEntry {
            keyword,
            tokens,
            semantic_type,
        });
        Ok(())
    }

    pub fn entries(&self) -> &[FormatEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Exact keyword lookup, returning the entry's type and rank.
    pub fn get(&self, keyword: &str) -> Option<(SemanticType, usize)> {
        self.index
            .get(keyword)
            .map(|&pos| (self.entries[pos].semantic_type, pos))
    }

    /// Finds the dictionary keyword occurring in `phrase`, preferring the
    /// longest keyword (in tokens) and breaking ties by earliest dictionary
    /// position. Multi-token keywords match only as contiguous token runs.
    pub fn lookup(&self, phrase: &[String]) -> Option<KeywordMatch> {
        let mut best: Option<(usize, usize)> = None; // (token_len, position)
        for (position, entry) in self.entries.iter().enumerate() {
            if !contains_contiguous(phrase, &entry.tokens) {
                continue;
            }
            let candidate = (entry.tokens.len(), position);
            let better = match best {
                None => true,
                Some((len, pos)) => {
                    candidate.0 > len || (candidate.0 == len && candidate.1 < pos)
                }
            };
            if better {
                best = Some(candidate);
            }
        }
        best.map(|(_, position)| {
            let entry = &self.entries[position];
            KeywordMatch {
                semantic_type: entry.semantic_type,
                keyword: entry.keyword.clone(),
                position,
            }
        })
    }

    /// Writes the dictionary back out in its canonical form. Loading the
    /// result reproduces the dictionary, and a second round is byte-stable.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for entry in &self.entries {
            out.push_str(&entry.keyword);
            out.push('\t');
            out.push_str(&entry.semantic_type.to_string());
            out.push('\n');
        }
        out
    }

    /// Per-type frequency table: (type display name, count), ordered by
    /// count descending then name ascending.
    pub fn stats(&self) -> Vec<(String, usize)> {
        let mut counts: HashMap<String, usize> = HashMap::new();
        for entry in &self.entries {
            *counts.entry(entry.semantic_type.to_string()).or_insert(0) += 1;
        }
        let mut rows: Vec<(String, usize)> = counts.into_iter().collect();
        rows.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        rows
    }
}

/// True when `needle` occurs in `haystack` as a contiguous run.
fn contains_contiguous(haystack: &[String], needle: &[String]) -> bool {
    if needle.is_empty() || needle.len() > haystack.len() {
        return false;
    }
    haystack
        .windows(needle.len())
        .any(|w| w.iter().zip(needle).all(|(a, b)| a == b))
}

/// Abbreviation-to-expansion map applied to header tokens.
#[derive(Debug, Clone, Default)]
pub struct AbbreviationsDictionary {
    entries: Vec<(String, String)>,
    index: HashMap<String, usize>,
}

impl AbbreviationsDictionary {
    /// Parses `abbr<TAB>expansion` lines from a text stream.
    pub fn load(reader: impl BufRead) -> Result<Self> {
        let mut dict = AbbreviationsDictionary::default();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let Some((abbr, expansion)) = split_entry_line(&line, line_no)? else {
                continue;
            };
            let expansion = normalize_phrase(&expansion);
            if abbr.is_empty() {
                return Err(Error::dictionary(line_no, "empty abbreviation"));
            }
            if expansion.is_empty() {
                return Err(Error::dictionary(
                    line_no,
                    format!("empty expansion for {abbr:?}"),
                ));
            }
            if abbr == expansion {
                return Err(Error::dictionary(
                    line_no,
                    format!("abbreviation {abbr:?} maps to itself"),
                ));
            }
            if dict.index.contains_key(&abbr) {
                return Err(Error::dictionary(
                    line_no,
                    format!("duplicate abbreviation {abbr:?}"),
                ));
            }
            dict.index.insert(abbr.clone(), dict.entries.len());
            dict.entries.push((abbr, expansion));
        }
        Ok(dict)
    }

    pub fn load_str(text: &str) -> Result<Self> {
        Self::load(text.as_bytes())
    }

    pub fn expansion_of(&self, token: &str) -> Option<&str> {
        self.index.get(token).map(|&i| self.entries[i].1.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (abbr, expansion) in &self.entries {
            out.push_str(abbr);
            out.push('\t');
            out.push_str(expansion);
            out.push('\n');
        }
        out
    }
}

/// Splits one dictionary line into its two fields; `None` for blanks and
/// `#` comments. The key is lowercased and whitespace-normalized.
fn split_entry_line(line: &str, line_no: usize) -> Result<Option<(String, String)>> {
    let trimmed = line.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }
    let Some((key, value)) = trimmed.split_once('\t') else {
        return Err(Error::dictionary(
            line_no,
            format!("expected `key<TAB>value`, got {trimmed:?}"),
        ));
    };
    Ok(Some((normalize_phrase(key), value.trim().to_string())))
}

fn normalize_phrase(s: &str) -> String {
    s.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

/// The embedded seed Formats Dictionary.
pub fn seed_formats_text() -> &'static str {
    include_str!("../data/formats_dictionary.txt")
}

/// The embedded seed Abbreviations Dictionary.
pub fn seed_abbreviations_text() -> &'static str {
    include_str!("../data/abbreviations_dictionary.txt")
}

/// Loads the embedded seed Formats Dictionary.
pub fn seed_formats() -> FormatsDictionary {
    FormatsDictionary::load_str(seed_formats_text()).expect("seed formats dictionary is valid")
}

/// Loads the embedded seed Abbreviations Dictionary.
pub fn seed_abbreviations() -> AbbreviationsDictionary {
    AbbreviationsDictionary::load_str(seed_abbreviations_text())
        .expect("seed abbreviations dictionary is valid")
}
