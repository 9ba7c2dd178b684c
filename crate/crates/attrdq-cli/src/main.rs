//! Command-line driver: `analyze`, `detect`, and `dict-stats`.
//!
//! Reports go to stdout (or `--output`); diagnostics go to stderr. Exit
//! code 0 means the run completed (found issues are findings, not
//! failures); exit code 2 means an input or option error.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use attrdq::dictionaries::{self, AbbreviationsDictionary, FormatsDictionary};
use attrdq::pipeline::{self, PipelineOptions};
use attrdq::reporting::{self, OutputFormat};
use attrdq::validation::{MissingMarkerSet, ValidationConfig};
use attrdq::Delimiter;

/// Directory searched for `formats_dictionary.txt` and
/// `abbreviations_dictionary.txt` when no explicit paths are given.
const DICT_DIR_ENV: &str = "ATTRDQ_DICT_DIR";

#[derive(Parser)]
#[command(
    name = "attrdq",
    version,
    about = "Detect column semantic types from attribute labels and assess data quality"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a dataset and write a data quality report.
    Analyze(AnalyzeArgs),
    /// Detect column semantic types and list them, one column per line.
    Detect(DetectArgs),
    /// Print the formats dictionary frequency table (format, frequency, percentage).
    DictStats(DictArgs),
}

#[derive(Args)]
struct DictArgs {
    /// Formats dictionary path (default: $ATTRDQ_DICT_DIR/formats_dictionary.txt,
    /// else the embedded seed dictionary).
    #[arg(long, value_name = "FILE")]
    formats_dict: Option<PathBuf>,
    /// Abbreviations dictionary path (default: $ATTRDQ_DICT_DIR/abbreviations_dictionary.txt,
    /// else the embedded seed dictionary).
    #[arg(long, value_name = "FILE")]
    abbrev_dict: Option<PathBuf>,
}

#[derive(Args)]
struct InputArgs {
    /// Input file: .txt/.csv/.data, plain or inside .gz/.zip/.tar.gz.
    input: PathBuf,
    /// Archive member to analyze when the input is a .zip or .tar.gz.
    #[arg(long, value_name = "MEMBER")]
    inner: Option<String>,
    /// Field delimiter handling.
    #[arg(long, value_enum, default_value_t = DelimiterMode::Auto)]
    delimiter: DelimiterMode,
    /// First-line header handling.
    #[arg(long, value_enum, default_value_t = HeaderMode::Auto)]
    header: HeaderMode,
    /// Sidecar TSV mapping column names to descriptions.
    #[arg(long, value_name = "FILE")]
    descriptions: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    dicts: DictArgs,
    /// Report format.
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
    /// Distinct-category threshold for categorical columns.
    #[arg(long, default_value_t = 1000)]
    max_categories: usize,
    /// Comma-separated missing-value markers replacing the default set
    /// (the empty cell always counts as missing).
    #[arg(long, value_name = "LIST")]
    missing_markers: Option<String>,
}

#[derive(Args)]
struct DetectArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    dicts: DictArgs,
    /// Write the listing here instead of stdout.
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DelimiterMode {
    Auto,
    Comma,
    Semicolon,
    Space,
}

impl DelimiterMode {
    fn to_option(self) -> Option<Delimiter> {
        match self {
            DelimiterMode::Auto => None,
            DelimiterMode::Comma => Some(Delimiter::Comma),
            DelimiterMode::Semicolon => Some(Delimiter::Semicolon),
            DelimiterMode::Space => Some(Delimiter::Whitespace),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum HeaderMode {
    Auto,
    Yes,
    No,
}

impl HeaderMode {
    fn to_option(self) -> Option<bool> {
        match self {
            HeaderMode::Auto => None,
            HeaderMode::Yes => Some(true),
            HeaderMode::No => Some(false),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
    Csv,
}

impl From<ReportFormat> for OutputFormat {
    fn from(f: ReportFormat) -> Self {
        match f {
            ReportFormat::Json => OutputFormat::Json,
            ReportFormat::Text => OutputFormat::Text,
            ReportFormat::Csv => OutputFormat::Csv,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Detect(args) => cmd_detect(args),
        Command::DictStats(args) => cmd_dict_stats(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn dict_dir_path(file_name: &str) -> Option<PathBuf> {
    std::env::var_os(DICT_DIR_ENV).map(|dir| Path::new(&dir).join(file_name))
}

fn load_formats(explicit: Option<&Path>) -> Result<FormatsDictionary> {
    let path = explicit
        .map(Path::to_path_buf)
        .or_else(|| dict_dir_path("formats_dictionary.txt"));
    match path {
        Some(path) => {
            let file = File::open(&path)
                .with_context(|| format!("cannot open formats dictionary {}", path.display()))?;
            FormatsDictionary::load(BufReader::new(file))
                .with_context(|| format!("in formats dictionary {}", path.display()))
        }
        None => Ok(dictionaries::seed_formats()),
    }
}

fn load_abbreviations(explicit: Option<&Path>) -> Result<AbbreviationsDictionary> {
    let path = explicit
        .map(Path::to_path_buf)
        .or_else(|| dict_dir_path("abbreviations_dictionary.txt"));
    match path {
        Some(path) => {
            let file = File::open(&path).with_context(|| {
                format!("cannot open abbreviations dictionary {}", path.display())
            })?;
            AbbreviationsDictionary::load(BufReader::new(file))
                .with_context(|| format!("in abbreviations dictionary {}", path.display()))
        }
        None => Ok(dictionaries::seed_abbreviations()),
    }
}

/// Sidecar grammar: `column name<TAB>description`, `#` comments skipped.
fn load_descriptions(path: &Path) -> Result<HashMap<String, String>> {
    let file = File::open(path)
        .with_context(|| format!("cannot open descriptions file {}", path.display()))?;
    let mut map = HashMap::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((name, description)) = trimmed.split_once('\t') else {
            bail!(
                "{}:{}: expected `column<TAB>description`",
                path.display(),
                idx + 1
            );
        };
        map.insert(name.trim().to_string(), description.trim().to_string());
    }
    Ok(map)
}

fn pipeline_options(input: &InputArgs) -> Result<PipelineOptions> {
    let descriptions = match &input.descriptions {
        Some(path) => load_descriptions(path)?,
        None => HashMap::new(),
    };
    Ok(PipelineOptions {
        delimiter: input.delimiter.to_option(),
        header: input.header.to_option(),
        inner: input.inner.clone(),
        markers: MissingMarkerSet::default(),
        config: ValidationConfig::default(),
        descriptions,
    })
}

fn write_output(output: Option<&Path>, contents: &str) -> Result<()> {
    match output {
        Some(path) => {
            let mut file = File::create(path)
                .with_context(|| format!("cannot create output file {}", path.display()))?;
            file.write_all(contents.as_bytes())?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut handle = stdout.lock();
            handle.write_all(contents.as_bytes())?;
        }
    }
    Ok(())
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<()> {
    let formats = load_formats(args.dicts.formats_dict.as_deref())?;
    let abbreviations = load_abbreviations(args.dicts.abbrev_dict.as_deref())?;
    let mut options = pipeline_options(&args.input)?;
    options.config.max_categories = args.max_categories;
    if let Some(list) = &args.missing_markers {
        options.markers = MissingMarkerSet::new(list.split(',').map(str::to_string));
    }
    let report = pipeline::run_analysis(&args.input.input, &formats, &abbreviations, &options)
        .with_context(|| format!("analyzing {}", args.input.input.display()))?;
    write_output(
        args.output.as_deref(),
        &reporting::serialize(&report, args.format.into()),
    )
}

fn cmd_detect(args: DetectArgs) -> Result<()> {
    let formats = load_formats(args.dicts.formats_dict.as_deref())?;
    let abbreviations = load_abbreviations(args.dicts.abbrev_dict.as_deref())?;
    let options = pipeline_options(&args.input)?;
    let listing = pipeline::detect_formats(&args.input.input, &formats, &abbreviations, &options)
        .with_context(|| format!("analyzing {}", args.input.input.display()))?;
    let mut out = String::new();
    for (name, format) in listing {
        let label = format.map(|t| t.to_string()).unwrap_or_else(|| "NaN".to_string());
        out.push_str(&name);
        out.push('\t');
        out.push_str(&label);
        out.push('\n');
    }
    write_output(args.output.as_deref(), &out)
}

fn cmd_dict_stats(args: DictArgs) -> Result<()> {
    let formats = load_formats(args.formats_dict.as_deref())?;
    let total = formats.len();
    let mut out = String::from("format\tfrequency\tpercentage\n");
    for (name, count) in formats.stats() {
        let percentage = if total == 0 {
            0.0
        } else {
            count as f64 / total as f64 * 100.0
        };
        out.push_str(&format!("{name}\t{count}\t{percentage:.2}\n"));
    }
    write_output(None, &out)
}
