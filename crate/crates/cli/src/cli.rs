//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "chronotag",
    version,
    about = "Convert TIMEX2-annotated corpora to TimeML/TIMEX3, with validation and scoring"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert source documents to validated TimeML files plus a manifest
    Convert(ConvertArgs),
    /// Tabulate timex type counts over TimeML corpora
    Stats(StatsArgs),
    /// Score system TimeML against gold under both regimes
    Score(ScoreArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SourceFormat {
    /// Text with inline `<TIMEX2>` markup
    Inline,
    /// Standoff annotation XML paired with a raw source file
    Standoff,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    /// Source files or directories
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,

    #[arg(long, value_enum, default_value_t = SourceFormat::Inline)]
    pub format: SourceFormat,

    /// Output directory for .tml files and the manifest
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,

    /// Document creation time to use when the source marks none
    #[arg(long, value_name = "VALUE")]
    pub dct: Option<String>,

    /// Token count at which unhandled annotations are trimmed
    #[arg(long, value_name = "N", default_value_t = 6,
          value_parser = clap::value_parser!(u64).range(2..))]
    pub trim_cutoff: u64,

    /// Replacement signal lexicon (`phrase<TAB>class<TAB>rank` per line)
    #[arg(long, value_name = "FILE")]
    pub signal_lexicon: Option<PathBuf>,

    /// Emit every TLINK untyped
    #[arg(long)]
    pub untyped_tlinks: bool,

    /// Worker threads for conversion
    #[arg(long, value_name = "N", default_value_t = 1,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// TimeML files or directories; each argument is reported as one corpus
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    /// Directory of gold TimeML files
    pub gold: PathBuf,
    /// Directory of system TimeML files, aligned by file name
    pub sys: PathBuf,
    /// Regime to report
    #[arg(long, value_enum, default_value_t = RegimeArg::Both)]
    pub regime: RegimeArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Entity,
    Token,
    Both,
}
