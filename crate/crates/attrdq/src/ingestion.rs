//! Delimited-file ingestion.
//!
//! Reads plain or compressed delimited text (.txt/.csv/.data, optionally
//! inside .gz, .zip, or .tar.gz), sniffs the delimiter over the first lines,
//! decides whether the first line is a header, and materializes named
//! columns of raw string cells. Cells keep their text exactly as written
//! apart from surrounding whitespace and one pair of surrounding double
//! quotes. Short rows are padded with empty cells and counted as a
//! structural note on the dataset.

use std::fmt;
use std::fs::File;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use flate2::read::GzDecoder;
use serde::{Deserialize, Serialize};

use crate::dictionaries::FormatsDictionary;
use crate::error::{Error, Result};
use crate::label_analysis::{tokenize, LabelAnalysis};
use crate::numeric::parse_number;

/// How many lines the delimiter and header sniffers look at.
pub const SNIFF_LINES: usize = 20;

/// Field separator of a delimited file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Delimiter {
    Comma,
    Semicolon,
    Whitespace,
}

impl Delimiter {
    pub fn name(&self) -> &'static str {
        match self {
            Delimiter::Comma => "comma",
            Delimiter::Semicolon => "semicolon",
            Delimiter::Whitespace => "whitespace",
        }
    }

    fn as_char(&self) -> Option<char> {
        match self {
            Delimiter::Comma => Some(','),
            Delimiter::Semicolon => Some(';'),
            Delimiter::Whitespace => None,
        }
    }
}

impl fmt::Display for Delimiter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Delimiter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_lowercase().as_str() {
            "comma" | "," => Ok(Delimiter::Comma),
            "semicolon" | ";" => Ok(Delimiter::Semicolon),
            "whitespace" | "space" | "blank" => Ok(Delimiter::Whitespace),
            other => Err(Error::InvalidInput(format!("unknown delimiter {other:?}"))),
        }
    }
}

/// One column of a loaded dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnProfile {
    /// Header token, or synthesized `col_k` for headerless files.
    pub name: String,
    pub description: Option<String>,
    pub cells: Vec<String>,
    pub analysis: Option<LabelAnalysis>,
}

/// A fully materialized tabular dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    /// Logical source name: the file name, with `.gz` stripped, or the
    /// selected archive member.
    pub source_name: String,
    pub columns: Vec<ColumnProfile>,
    pub row_count: usize,
    pub delimiter: Delimiter,
    pub had_header: bool,
    /// Data rows whose raw field count differed from the column count.
    pub ragged_rows: usize,
    /// 1-based data-row indices of the first padded rows (up to 10).
    pub ragged_row_examples: Vec<usize>,
}

impl Dataset {
    /// Writes the dataset back out with its own delimiter. Reparsing the
    /// result reproduces the trimmed cell matrix.
    pub fn to_delimited_string(&self) -> String {
        let mut out = String::new();
        let write_row = |cells: Vec<&str>, out: &mut String| {
            let rendered: Vec<String> = cells
                .iter()
                .map(|c| quote_field(c, self.delimiter))
                .collect();
            let sep = match self.delimiter.as_char() {
                Some(c) => c.to_string(),
                None => " ".to_string(),
            };
            out.push_str(&rendered.join(&sep));
            out.push('\n');
        };
        if self.had_header {
            write_row(self.columns.iter().map(|c| c.name.as_str()).collect(), &mut out);
        }
        for row in 0..self.row_count {
            write_row(
                self.columns.iter().map(|c| c.cells[row].as_str()).collect(),
                &mut out,
            );
        }
        out
    }
}

fn quote_field(cell: &str, delimiter: Delimiter) -> String {
    match delimiter.as_char() {
        Some(d) => {
            if cell.contains(d) || cell.contains('"') || cell.starts_with(' ') || cell.ends_with(' ')
            {
                format!("\"{}\"", cell.replace('"', "\"\""))
            } else {
                cell.to_string()
            }
        }
        // Whitespace mode has no quoting; parsed cells never contain spaces.
        None => cell.to_string(),
    }
}

/// Ingestion options. `None` fields mean "detect".
#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions<'a> {
    pub delimiter: Option<Delimiter>,
    pub header: Option<bool>,
    pub inner: Option<&'a str>,
    /// When present, header detection also accepts a first row whose cells
    /// match dictionary keywords.
    pub formats: Option<&'a FormatsDictionary>,
}

const ACCEPTED_INNER_EXTENSIONS: &[&str] = &[".txt", ".csv", ".data"];

fn file_name_of(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.to_string_lossy().into_owned())
}

fn has_accepted_extension(name: &str) -> bool {
    let lower = name.to_lowercase();
    ACCEPTED_INNER_EXTENSIONS.iter().any(|e| lower.ends_with(e))
}

/// Opens a plain or compressed input and returns `(text, logical name)`.
///
/// `.gz` holds a single file, so it is decompressed directly. `.zip` and
/// `.tar.gz` hold several; `inner` selects the member to analyze, and the
/// error for a missing selection lists what is available. Binary
/// spreadsheets are rejected. Invalid UTF-8 bytes are replaced.
pub fn open_input(path: &Path, inner: Option<&str>) -> Result<(String, String)> {
    let name = file_name_of(path);
    let lower = name.to_lowercase();

    if lower.ends_with(".xls") || lower.ends_with(".xlsx") {
        return Err(Error::UnsupportedFormat { path: path.to_path_buf() });
    }
    if lower.ends_with(".zip") {
        return open_zip_member(path, inner);
    }
    if lower.ends_with(".tar.gz") || lower.ends_with(".tgz") {
        return open_tar_gz_member(path, inner);
    }
    if lower.ends_with(".gz") {
        let mut decoder = GzDecoder::new(File::open(path)?);
        let mut bytes = Vec::new();
        decoder.read_to_end(&mut bytes)?;
        let logical = name[..name.len() - ".gz".len()].to_string();
        if logical.to_lowercase().ends_with(".xls") || logical.to_lowercase().ends_with(".xlsx") {
            return Err(Error::UnsupportedFormat { path: path.to_path_buf() });
        }
        return Ok((String::from_utf8_lossy(&bytes).into_owned(), logical));
    }

    let mut bytes = Vec::new();
    File::open(path)?.read_to_end(&mut bytes)?;
    Ok((String::from_utf8_lossy(&bytes).into_owned(), name))
}

fn open_zip_member(path: &Path, inner: Option<&str>) -> Result<(String, String)> {
    let mut archive = zip::ZipArchive::new(File::open(path)?)
        .map_err(|e| Error::InvalidInput(format!("cannot read zip {}: {e}", path.display())))?;
    let members: Vec<String> = archive
        .file_names()
        .filter(|n| !n.ends_with('/'))
        .map(str::to_string)
        .collect();
    let Some(inner) = inner else {
        return Err(Error::InnerRequired { path: path.to_path_buf(), members });
    };
    if !members.iter().any(|m| m == inner) {
        return Err(Error::MemberNotFound {
            path: path.to_path_buf(),
            member: inner.to_string(),
            members,
        });
    }
    if !has_accepted_extension(inner) {
        return Err(Error::UnsupportedFormat { path: Path::new(inner).to_path_buf() });
    }
    let mut file = archive
        .by_name(inner)
        .map_err(|e| Error::InvalidInput(format!("cannot read member {inner:?}: {e}")))?;
    let mut bytes = Vec::new();
    file.read_to_end(&mut bytes)?;
    Ok((String::from_utf8_lossy(&bytes).into_owned(), inner.to_string()))
}

fn open_tar_gz_member(path: &Path, inner: Option<&str>) -> Result<(String, String)> {
    let mut archive = tar::Archive::new(GzDecoder::new(File::open(path)?));
    let mut members = Vec::new();
    let mut found: Option<Vec<u8>> = None;
    for entry in archive.entries()? {
        let mut entry = entry?;
        if !entry.header().entry_type().is_file() {
            continue;
        }
        let entry_name = entry.path()?.to_string_lossy().into_owned();
        if Some(entry_name.as_str()) == inner {
            let mut bytes = Vec::new();
            entry.read_to_end(&mut bytes)?;
            found = Some(bytes);
        }
        members.push(entry_name);
    }
    let Some(inner) = inner else {
        return Err(Error::InnerRequired { path: path.to_path_buf(), members });
    };
    let Some(bytes) = found else {
        return Err(Error::MemberNotFound {
            path: path.to_path_buf(),
            member: inner.to_string(),
            members,
        });
    };
    if !has_accepted_extension(inner) {
        return Err(Error::UnsupportedFormat { path: Path::new(inner).to_path_buf() });
    }
    Ok((String::from_utf8_lossy(&bytes).into_owned(), inner.to_string()))
}

/// Splits one line on a delimiter, honoring double-quoted fields with `""`
/// escapes. Fields are trimmed and unquoted.
pub fn split_delimited(line: &str, delimiter: char) -> Vec<String> {
    let mut fields = Vec::new();
    let mut chars = line.chars().peekable();
    loop {
        // Skip indentation before the field.
        while matches!(chars.peek(), Some(' ') | Some('\t')) {
            chars.next();
        }
        let mut field = String::new();
        if chars.peek() == Some(&'"') {
            chars.next();
            loop {
                match chars.next() {
                    Some('"') => {
                        if chars.peek() == Some(&'"') {
                            chars.next();
                            field.push('"');
                        } else {
                            break;
                        }
                    }
                    Some(c) => field.push(c),
                    None => break, // unterminated quote: take what we have
                }
            }
            // Drop anything up to the next delimiter.
            loop {
                match chars.peek() {
                    Some(&c) if c == delimiter => break,
                    Some(_) => {
                        chars.next();
                    }
                    None => break,
                }
            }
        } else {
            loop {
                match chars.peek() {
                    Some(&c) if c == delimiter => break,
                    Some(&c) => {
                        field.push(c);
                        chars.next();
                    }
                    None => break,
                }
            }
            field = field.trim_end().to_string();
        }
        fields.push(field);
        match chars.next() {
            Some(_) => continue, // consumed the delimiter
            None => break,
        }
    }
    fields
}

/// Splits a whitespace-delimited line; surrounding quotes are stripped but
/// no quoting grammar applies.
pub fn split_whitespace_fields(line: &str) -> Vec<String> {
    line.split_whitespace().map(strip_surrounding_quotes).collect()
}

fn strip_surrounding_quotes(field: &str) -> String {
    let f = field.trim();
    if f.len() >= 2 && f.starts_with('"') && f.ends_with('"') {
        f[1..f.len() - 1].to_string()
    } else {
        f.to_string()
    }
}

fn split_row(line: &str, delimiter: Delimiter) -> Vec<String> {
    match delimiter.as_char() {
        Some(c) => split_delimited(line, c),
        None => split_whitespace_fields(line),
    }
}

/// Chooses the delimiter for a sample of raw lines. Each candidate (comma,
/// then semicolon) is scored by the largest number of lines sharing one
/// field count of at least two; whitespace splitting is the fallback when
/// neither candidate produces such a count.
pub fn detect_delimiter(sample: &[&str]) -> Result<Delimiter> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    let score = |delim: char| -> usize {
        let mut counts: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        for line in sample {
            let fields = split_delimited(line, delim).len();
            if fields >= 2 {
                *counts.entry(fields).or_insert(0) += 1;
            }
        }
        counts.values().copied().max().unwrap_or(0)
    };
    let comma = score(',');
    let semicolon = score(';');
    if comma == 0 && semicolon == 0 {
        return Ok(Delimiter::Whitespace);
    }
    if comma >= semicolon {
        Ok(Delimiter::Comma)
    } else {
        Ok(Delimiter::Semicolon)
    }
}

/// Decides whether the first row is a header. True when the first row has
/// no numeric cells and some column under a non-numeric first cell is
/// numeric in more than half of the sampled rows, or when any first-row
/// cell matches a formats-dictionary keyword.
pub fn detect_header(
    first_row: &[String],
    sample_rows: &[Vec<String>],
    formats: Option<&FormatsDictionary>,
) -> bool {
    if sample_rows.is_empty() {
        return false;
    }
    if let Some(dict) = formats {
        for cell in first_row {
            if dict.lookup(&tokenize(cell)).is_some() {
                return true;
            }
        }
    }
    let first_numeric = first_row
        .iter()
        .filter(|c| parse_number(c.trim()).is_some())
        .count();
    if first_numeric > 0 {
        return false;
    }
    for (idx, cell) in first_row.iter().enumerate() {
        if parse_number(cell.trim()).is_some() {
            continue;
        }
        let mut present = 0usize;
        let mut numeric = 0usize;
        for row in sample_rows {
            if let Some(v) = row.get(idx) {
                present += 1;
                if parse_number(v.trim()).is_some() {
                    numeric += 1;
                }
            }
        }
        if present > 0 && (numeric as f64) / (present as f64) > 0.5 {
            return true;
        }
    }
    false
}

/// Loads a dataset from disk: open, sniff, split, name, and pad.
pub fn load_dataset(path: &Path, options: &LoadOptions<'_>) -> Result<Dataset> {
    let (text, source_name) = open_input(path, options.inner)?;
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    if lines.is_empty() {
        return Err(Error::NoDataRows { path: path.to_path_buf() });
    }

    let delimiter = match options.delimiter {
        Some(d) => d,
        None => detect_delimiter(&lines[..lines.len().min(SNIFF_LINES)])?,
    };

    let rows: Vec<Vec<String>> = lines.iter().map(|l| split_row(l, delimiter)).collect();

    let had_header = match options.header {
        Some(h) => h,
        None => {
            let sample_end = rows.len().min(1 + SNIFF_LINES);
            detect_header(&rows[0], &rows[1..sample_end], options.formats)
        }
    };

    let (header_row, data_rows) = if had_header {
        (Some(&rows[0]), &rows[1..])
    } else {
        (None, &rows[..])
    };
    if data_rows.is_empty() {
        return Err(Error::NoDataRows { path: path.to_path_buf() });
    }

    let column_count = rows.iter().map(Vec::len).max().unwrap_or(0);
    let names = column_names(header_row, column_count);

    let mut cells: Vec<Vec<String>> = vec![Vec::with_capacity(data_rows.len()); column_count];
    let mut ragged_rows = 0usize;
    let mut ragged_row_examples = Vec::new();
    for (row_idx, row) in data_rows.iter().enumerate() {
        if row.len() != column_count {
            ragged_rows += 1;
            if ragged_row_examples.len() < 10 {
                ragged_row_examples.push(row_idx + 1);
            }
        }
        for (col, store) in cells.iter_mut().enumerate() {
            store.push(row.get(col).cloned().unwrap_or_default());
        }
    }

    let columns = names
        .into_iter()
        .zip(cells)
        .map(|(name, cells)| ColumnProfile {
            name,
            description: None,
            cells,
            analysis: None,
        })
        .collect();

    Ok(Dataset {
        source_name,
        columns,
        row_count: data_rows.len(),
        delimiter,
        had_header,
        ragged_rows,
        ragged_row_examples,
    })
}

/// Header names, deduplicated with `_2`, `_3`, ... suffixes; missing or
/// blank header cells become `col_k`.
fn column_names(header_row: Option<&Vec<String>>, column_count: usize) -> Vec<String> {
    let mut used = std::collections::HashSet::new();
    let mut names = Vec::with_capacity(column_count);
    for i in 0..column_count {
        let base = header_row
            .and_then(|h| h.get(i))
            .map(|c| c.trim().to_string())
            .filter(|c| !c.is_empty())
            .unwrap_or_else(|| format!("col_{}", i + 1));
        let mut name = base.clone();
        let mut suffix = 2;
        while !used.insert(name.clone()) {
            name = format!("{base}_{suffix}");
            suffix += 1;
        }
        names.push(name);
    }
    names
}
