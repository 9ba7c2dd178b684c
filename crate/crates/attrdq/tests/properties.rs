//! Property tests pinning the module invariants to independent oracles.

use proptest::prelude::*;

use attrdq::dictionaries::FormatsDictionary;
use attrdq::ingestion::{self, ColumnProfile, Dataset, Delimiter};
use attrdq::label_analysis::analyze_label;
use attrdq::validation::{validate_column, MissingMarkerSet, ValidationConfig};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

// ---------------------------------------------------------------------------
// Dictionary lookup vs brute-force enumeration
// ---------------------------------------------------------------------------

const KEYWORD_POOL: &[&str] = &[
    "date", "birth date", "name", "last name", "id", "age", "country", "wind direction",
    "direction", "zip code", "postal code", "time", "date time", "humidity",
];
const TYPE_POOL: &[&str] = &["date", "name", "id", "age", "country", "numerical>=0", "string"];

fn arb_dictionary() -> impl Strategy<Value = FormatsDictionary> {
    proptest::sample::subsequence(KEYWORD_POOL.to_vec(), 1..KEYWORD_POOL.len())
        .prop_flat_map(|keywords| {
            let n = keywords.len();
            (
                Just(keywords),
                proptest::collection::vec(proptest::sample::select(TYPE_POOL.to_vec()), n),
            )
        })
        .prop_map(|(keywords, types)| {
            let text: String = keywords
                .iter()
                .zip(&types)
                .map(|(k, t)| format!("{k}\t{t}\n"))
                .collect();
            FormatsDictionary::load_str(&text).expect("generated dictionary is valid")
        })
}

fn arb_phrase() -> impl Strategy<Value = Vec<String>> {
    let word = proptest::sample::select(vec![
        "date", "birth", "name", "last", "id", "age", "country", "wind", "direction", "zip",
        "code", "postal", "time", "humidity", "x", "qq",
    ]);
    proptest::collection::vec(word.prop_map(str::to_string), 0..6)
}

/// Enumerate every contiguous token run and apply (length desc, position asc).
fn brute_force_lookup(dict: &FormatsDictionary, phrase: &[String]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for start in 0..phrase.len() {
        for end in start + 1..=phrase.len() {
            let joined = phrase[start..end].join(" ");
            if let Some((_, pos)) = dict.get(&joined) {
                let cand = (end - start, pos);
                let better = match best {
                    None => true,
                    Some((len, p)) => cand.0 > len || (cand.0 == len && cand.1 < p),
                };
                if better {
                    best = Some(cand);
                }
            }
        }
    }
    best
}

proptest! {
    #![proptest_config(config(512))]

    #[test]
    fn lookup_equals_brute_force(dict in arb_dictionary(), phrase in arb_phrase()) {
        let got = dict.lookup(&phrase).map(|m| (m.keyword.split(' ').count(), m.position));
        prop_assert_eq!(got, brute_force_lookup(&dict, &phrase));
    }
}

// ---------------------------------------------------------------------------
// Ingestion round-trip
// ---------------------------------------------------------------------------

fn arb_cell(delimiter: Delimiter) -> BoxedStrategy<String> {
    match delimiter {
        // May contain the delimiter, quotes, and interior spaces; the
        // writer's quoting has to cope. No surrounding whitespace.
        Delimiter::Comma | Delimiter::Semicolon => "[a-zA-Z0-9,;\"' ]{0,10}"
            .prop_map(|s| s.trim().to_string())
            .boxed(),
        Delimiter::Whitespace => "[a-zA-Z0-9_]{1,8}".prop_map(|s| s.to_string()).boxed(),
    }
}

fn arb_dataset() -> impl Strategy<Value = Dataset> {
    (
        proptest::sample::select(vec![Delimiter::Comma, Delimiter::Semicolon, Delimiter::Whitespace]),
        2usize..5,
        1usize..8,
    )
        .prop_flat_map(|(delimiter, ncols, nrows)| {
            let cells =
                proptest::collection::vec(arb_cell(delimiter), ncols * nrows);
            (Just(delimiter), Just(ncols), Just(nrows), cells)
        })
        .prop_map(|(delimiter, ncols, nrows, flat)| {
            let columns = (0..ncols)
                .map(|c| ColumnProfile {
                    name: format!("col_{}", c + 1),
                    description: None,
                    cells: (0..nrows).map(|r| flat[r * ncols + c].clone()).collect(),
                    analysis: None,
                })
                .collect();
            Dataset {
                source_name: "prop.csv".to_string(),
                columns,
                row_count: nrows,
                delimiter,
                had_header: false,
                ragged_rows: 0,
                ragged_row_examples: vec![],
            }
        })
        // A row whose cells are all empty would serialize to a blank line.
        .prop_filter("rows must not be entirely empty", |ds| {
            (0..ds.row_count).all(|r| ds.columns.iter().any(|c| !c.cells[r].is_empty()))
        })
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn dataset_round_trip(ds in arb_dataset()) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("prop.csv");
        std::fs::write(&path, ds.to_delimited_string()).unwrap();
        let reloaded = ingestion::load_dataset(
            &path,
            &ingestion::LoadOptions {
                delimiter: Some(ds.delimiter),
                header: Some(false),
                ..Default::default()
            },
        )
        .unwrap();
        prop_assert_eq!(reloaded.row_count, ds.row_count);
        let got: Vec<Vec<String>> = reloaded.columns.iter().map(|c| c.cells.clone()).collect();
        let want: Vec<Vec<String>> = ds.columns.iter().map(|c| c.cells.clone()).collect();
        prop_assert_eq!(got, want);
    }
}

// ---------------------------------------------------------------------------
// Delimiter sniffing vs brute-force scorer
// ---------------------------------------------------------------------------

fn arb_sniff_file() -> impl Strategy<Value = Vec<String>> {
    let cell = "[a-z0-9]{1,5}";
    (
        proptest::sample::select(vec![',', ';', ' ']),
        2usize..6,
        1usize..12,
    )
        .prop_flat_map(move |(delim, ncols, nrows)| {
            proptest::collection::vec(
                proptest::collection::vec(cell, ncols),
                nrows,
            )
            .prop_map(move |rows| {
                rows.into_iter()
                    .map(|cells| cells.join(&delim.to_string()))
                    .collect()
            })
        })
}

/// Independent scorer: naive split counts, modal field count >= 2.
fn brute_force_delimiter(lines: &[String]) -> Delimiter {
    let score = |d: char| {
        let mut freq = std::collections::HashMap::new();
        for line in lines {
            let n = line.split(d).count();
            if n >= 2 {
                *freq.entry(n).or_insert(0usize) += 1;
            }
        }
        freq.values().copied().max().unwrap_or(0)
    };
    let comma = score(',');
    let semicolon = score(';');
    if comma == 0 && semicolon == 0 {
        Delimiter::Whitespace
    } else if comma >= semicolon {
        Delimiter::Comma
    } else {
        Delimiter::Semicolon
    }
}

proptest! {
    #![proptest_config(config(512))]

    #[test]
    fn sniffing_matches_brute_force(lines in arb_sniff_file()) {
        let refs: Vec<&str> = lines.iter().map(String::as_str).collect();
        let got = ingestion::detect_delimiter(&refs).unwrap();
        prop_assert_eq!(got, brute_force_delimiter(&lines));
    }
}

// ---------------------------------------------------------------------------
// Label analysis totality and validation determinism
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn every_header_resolves_or_stays_unclassified(header in ".{0,24}") {
        let formats = attrdq::dictionaries::seed_formats();
        let abbr = attrdq::dictionaries::seed_abbreviations();
        let a = analyze_label(&header, None, &formats, &abbr);
        let b = analyze_label(&header, None, &formats, &abbr);
        prop_assert_eq!(&a, &b);
        // Unclassified exactly when both analysis paths found nothing.
        prop_assert_eq!(
            a.final_format.is_none(),
            a.name_format.is_none() && a.description_format.is_none()
        );
    }

    #[test]
    fn validation_is_pure(cells in proptest::collection::vec("[a-zA-Z0-9?. -]{0,8}", 1..20)) {
        let formats = attrdq::dictionaries::seed_formats();
        let abbr = attrdq::dictionaries::seed_abbreviations();
        let column = ColumnProfile {
            name: "Age".to_string(),
            description: None,
            cells: cells.iter().map(|c| c.trim().to_string()).collect(),
            analysis: Some(analyze_label("Age", None, &formats, &abbr)),
        };
        let markers = MissingMarkerSet::default();
        let cfg = ValidationConfig::default();
        let before = column.clone();
        let first = validate_column(&column, &markers, &cfg);
        let second = validate_column(&column, &markers, &cfg);
        prop_assert_eq!(&column, &before);
        prop_assert_eq!(first, second);
    }
}
