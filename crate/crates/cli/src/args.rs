use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "mifx", version, about = "Mutual-information feature extraction experiments")]
pub struct Cli {
    /// Cap on worker threads (default: machine parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extract MIFX, PCA or LDA components and write a model file.
    Extract(ExtractArgs),
    /// Cross-validate 1-NN accuracy on extracted features.
    Evaluate(EvaluateArgs),
    /// Print entropy, mutual information and Bayes-error bounds.
    Mi(MiArgs),
    /// Merge report files into one accuracy table.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// CSV file with one sample per row.
    #[arg(long)]
    pub data: PathBuf,
    /// Label column: zero-based index, header name or "last".
    #[arg(long, default_value = "last")]
    pub label_col: String,
    /// The CSV has no header row.
    #[arg(long)]
    pub no_header: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BaseArg {
    #[value(name = "2")]
    Two,
    #[value(name = "e")]
    E,
}

#[derive(Debug, Args)]
pub struct HistArgs {
    /// Histogram bins per axis.
    #[arg(long)]
    pub bins: Option<usize>,
    /// Fixed histogram range as LO,HI instead of the data min-max.
    #[arg(long, value_name = "LO,HI")]
    pub range: Option<String>,
    /// Logarithm base of reported quantities.
    #[arg(long, value_enum)]
    pub base: Option<BaseArg>,
    /// Apply the Miller-Madow bias correction.
    #[arg(long)]
    pub bias_correction: bool,
}

#[derive(Debug, Args)]
pub struct ExtractionArgs {
    /// JSON file with extraction settings; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub hist: HistArgs,
    #[arg(long)]
    pub population: Option<usize>,
    #[arg(long)]
    pub generations: Option<usize>,
    #[arg(long)]
    pub restarts: Option<usize>,
    /// Coordinate hill-climb sweeps after the GA (0 = off).
    #[arg(long)]
    pub refine_steps: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExtractMethod {
    Mifx,
    Pca,
    Lda,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Number of components.
    #[arg(long, default_value_t = 2)]
    pub dims: usize,
    #[arg(long, value_enum, default_value = "mifx")]
    pub method: ExtractMethod,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Model JSON output path.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub extraction: ExtractionArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormatArg {
    Markdown,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    PerFeature,
    Global,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// raw, pca, lda, mifx or all.
    #[arg(long, default_value = "all")]
    pub method: String,
    /// Dimensions as a range "a-b" or a comma list.
    #[arg(long, default_value = "1-7")]
    pub dims: String,
    #[arg(long, default_value_t = 10)]
    pub folds: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Report JSON output path. With `--method all` the file holds an array.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "markdown")]
    pub format: TableFormatArg,
    /// Run folds one after another instead of concurrently.
    #[arg(long)]
    pub serial: bool,
    /// Plain shuffled folds instead of stratified ones.
    #[arg(long)]
    pub no_stratify: bool,
    #[arg(long, value_enum, default_value = "per-feature")]
    pub norm: NormArg,
    /// Dataset name in reports (default: the file stem).
    #[arg(long)]
    pub name: Option<String>,
    /// Columns used by the raw method, in order, as a comma list.
    #[arg(long)]
    pub raw_columns: Option<String>,
    #[command(flatten)]
    pub extraction: ExtractionArgs,
}

#[derive(Debug, Args)]
pub struct MiArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Feature column (index or header name).
    #[arg(long)]
    pub x: String,
    /// Second feature column: report I(x; y).
    #[arg(long, conflicts_with = "x2")]
    pub y: Option<String>,
    /// Second feature column: report the 2-D I((x, x2); C).
    #[arg(long)]
    pub x2: Option<String>,
    #[command(flatten)]
    pub hist: HistArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Report JSON files.
    #[arg(required = true)]
    pub reports: Vec<PathBuf>,
    /// CSV with header `dim,<column>...` appended verbatim.
    #[arg(long)]
    pub reference: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "markdown")]
    pub format: TableFormatArg,
    /// Write the table here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
