use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "microframe",
    version,
    about = "Characterize text corpora along antonym-pair axes in a word-embedding space",
    long_about = None,
    after_help = "Settings resolve as: command-line flags, then the --config file, then defaults.\n\
                  MICROFRAME_EMBEDDINGS supplies the embeddings path when neither sets it.\n\
                  Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error."
)]
pub struct Cli {
    #[command(flatten)]
    pub settings: SettingArgs,

    /// More progress output on stderr (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,

    /// Only warnings and errors on stderr.
    #[arg(short, long, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Default, Args)]
pub struct SettingArgs {
    /// key=value settings file.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Word vectors in GloVe/word2vec text format.
    #[arg(long, global = true, value_name = "PATH")]
    pub embeddings: Option<PathBuf>,

    /// Tab-separated antonym pairs (negative pole first). Defaults to the built-in list.
    #[arg(long, global = true, value_name = "PATH")]
    pub pairs: Option<PathBuf>,

    /// JSONL corpus: one {"id", "text", "group", "meta"} object per line.
    #[arg(long, global = true, value_name = "PATH")]
    pub corpus: Option<PathBuf>,

    /// Words masked out of every count, one per line.
    #[arg(long, global = true, value_name = "PATH")]
    pub topic_words: Option<PathBuf>,

    /// Document field holding group labels: `group` or a `meta` key.
    #[arg(long, global = true, value_name = "FIELD")]
    pub group_field: Option<String>,

    /// Bootstrap samples per frame [default: 1000].
    #[arg(long, global = true, value_name = "N")]
    pub n_bootstrap: Option<usize>,

    /// Significance level [default: 0.05].
    #[arg(long, global = true)]
    pub alpha: Option<f64>,

    /// Divide alpha by the number of frames.
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "true", require_equals = true, value_name = "BOOL")]
    pub bonferroni: Option<bool>,

    /// Master random seed [default: 0].
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Frames listed per summary [default: 10].
    #[arg(long, global = true, value_name = "M")]
    pub top_m: Option<usize>,

    /// Rows kept in word-level tables [default: 20].
    #[arg(short = 'k', long, global = true)]
    pub k: Option<usize>,

    /// Bootstrap resampling unit: token or document [default: token].
    #[arg(long, global = true)]
    pub unit: Option<String>,

    /// Report directory [default: microframe-out].
    #[arg(long, global = true, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,

    /// Comma-separated subset of json,tsv,svg [default: json,tsv,svg].
    #[arg(long, global = true, value_name = "LIST")]
    pub formats: Option<String>,

    /// Worker threads [default: all cores]. Does not change any output.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,

    /// Lowercase text before tokenizing [default: true].
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "true", require_equals = true, value_name = "BOOL")]
    pub lowercase: Option<bool>,

    /// Trim punctuation from tokens [default: true].
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "true", require_equals = true, value_name = "BOOL")]
    pub strip_punctuation: Option<bool>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bias, intensity and bootstrap significance of a target group on every frame.
    Analyze {
        /// Group label of the target documents.
        #[arg(long)]
        target: Option<String>,
    },
    /// Word-level shifts explaining one frame's bias or intensity.
    Shifts {
        #[arg(long)]
        frame: Option<String>,
        /// bias or intensity [default: bias].
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        target: Option<String>,
        /// Background group [default: every document outside the target].
        #[arg(long)]
        background: Option<String>,
    },
    /// Per-document bias on one frame.
    Spectrum {
        #[arg(long)]
        frame: Option<String>,
    },
    /// Bias and intensity per unit (e.g. outlet) on one frame.
    Map {
        #[arg(long)]
        frame: Option<String>,
        /// Document field defining a unit.
        #[arg(long, value_name = "FIELD")]
        by: Option<String>,
        /// Units with fewer documents are left out [default: 20].
        #[arg(long, value_name = "N")]
        min_docs: Option<usize>,
    },
    /// Bias and intensity differences between two groups on every frame.
    Separation {
        #[arg(long)]
        group_a: Option<String>,
        #[arg(long)]
        group_b: Option<String>,
    },
    /// Frames ranked by relevance to topic words.
    Relevance {
        /// Topic words (comma-separated or repeated).
        #[arg(long = "topic", value_delimiter = ',')]
        topics: Vec<String>,
        /// embedding or perplexity [default: embedding].
        #[arg(long)]
        method: Option<String>,
        /// One sentence template per line with {topic} and {pole}.
        #[arg(long, value_name = "PATH")]
        templates: Option<PathBuf>,
        /// Tab-separated sentence and perplexity, used instead of the built-in model.
        #[arg(long, value_name = "PATH")]
        perplexity_table: Option<PathBuf>,
        /// Order of the built-in character model [default: 3].
        #[arg(long, value_name = "N")]
        ngram_order: Option<usize>,
    },
    /// Distinguishing words by log-odds with an informative Dirichlet prior.
    LogOdds {
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        background: Option<String>,
        /// Multiplier on prior counts [default: 1].
        #[arg(long)]
        prior_scale: Option<f64>,
    },
    /// Frame registry maintenance.
    Frames {
        #[command(subcommand)]
        command: FramesCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum FramesCommand {
    /// Turn antonym pairs into frames and report the pairs that were dropped.
    Build,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::Shifts { .. } => "shifts",
            Command::Spectrum { .. } => "spectrum",
            Command::Map { .. } => "map",
            Command::Separation { .. } => "separation",
            Command::Relevance { .. } => "relevance",
            Command::LogOdds { .. } => "log-odds",
            Command::Frames { .. } => "frames",
        }
    }
}
