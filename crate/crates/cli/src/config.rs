//! Run settings: command-line flags over a key=value file over defaults.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use microframe::engine::{ResampleUnit, ShiftKind};
use microframe::relevance::RelevanceMethod;
use serde::Serialize;

use crate::args::{Command, FramesCommand, SettingArgs};
use crate::error::{CliError, CliResult};

/// Fallback for `embeddings` when neither a flag nor the config file sets it.
pub const EMBEDDINGS_ENV: &str = "MICROFRAME_EMBEDDINGS";

/// Every key accepted in a config file.
pub const KEYS: &[&str] = &[
    "embeddings",
    "pairs",
    "corpus",
    "topic_words",
    "group_field",
    "target",
    "background",
    "group_a",
    "group_b",
    "frame",
    "kind",
    "by",
    "min_docs",
    "topics",
    "method",
    "templates",
    "perplexity_table",
    "ngram_order",
    "prior_scale",
    "n_bootstrap",
    "alpha",
    "bonferroni",
    "seed",
    "top_m",
    "k",
    "unit",
    "out_dir",
    "formats",
    "threads",
    "lowercase",
    "strip_punctuation",
];

const PATH_KEYS: &[&str] = &[
    "embeddings",
    "pairs",
    "corpus",
    "topic_words",
    "templates",
    "perplexity_table",
    "out_dir",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Tsv,
    Svg,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            "svg" => Ok(Format::Svg),
            other => Err(format!(
                "unknown format {other:?} (expected json, tsv or svg)"
            )),
        }
    }
}

/// Fully resolved settings for one run.
///
/// Serialized into every report. `out_dir` and `threads` are left out:
/// neither affects any number in a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub embeddings: Option<PathBuf>,
    /// `None` selects the built-in pair list.
    pub pairs: Option<PathBuf>,
    pub corpus: Option<PathBuf>,
    pub topic_words: Option<PathBuf>,
    pub group_field: String,
    pub target: Option<String>,
    pub background: Option<String>,
    pub group_a: Option<String>,
    pub group_b: Option<String>,
    pub frame: Option<String>,
    pub kind: ShiftKind,
    pub by: Option<String>,
    pub min_docs: usize,
    pub topics: Vec<String>,
    pub method: RelevanceMethod,
    pub templates: Option<PathBuf>,
    pub perplexity_table: Option<PathBuf>,
    pub ngram_order: usize,
    pub prior_scale: f64,
    pub n_bootstrap: usize,
    pub alpha: f64,
    pub bonferroni: bool,
    pub seed: u64,
    pub top_m: usize,
    pub k: usize,
    pub unit: ResampleUnit,
    pub formats: Vec<Format>,
    pub lowercase: bool,
    pub strip_punctuation: bool,
    #[serde(skip)]
    pub out_dir: PathBuf,
    #[serde(skip)]
    pub threads: Option<usize>,
}

/// Parses `key = value` lines. `#` starts a comment line; keys may use `-`
/// or `_`; values may be wrapped in double quotes. Relative paths are taken
/// relative to the file's directory.
pub fn parse_config_file(text: &str, origin: &Path) -> CliResult<BTreeMap<String, String>> {
    let base = origin.parent().unwrap_or(Path::new(""));
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = || format!("{}:{}", origin.display(), i + 1);
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::usage("config", format!("{}: expected key = value", at())))?;
        let key = key.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::usage(
                "config",
                format!("{}: unknown setting {key:?}", at()),
            ));
        }
        let mut value = value.trim();
        if value.len() >= 2 && value.starts_with('"') && value.ends_with('"') {
            value = &value[1..value.len() - 1];
        }
        let value = if PATH_KEYS.contains(&key.as_str()) && Path::new(value).is_relative() {
            base.join(value).to_string_lossy().into_owned()
        } else {
            value.to_string()
        };
        out.insert(key, value);
    }
    Ok(out)
}

fn text<T: ToString>(v: &Option<T>) -> Option<String> {
    v.as_ref().map(ToString::to_string)
}

fn flag_layer(settings: &SettingArgs, command: &Command) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    let mut put = |key: &str, value: Option<String>| {
        if let Some(v) = value {
            m.insert(key.to_string(), v);
        }
    };
    let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.to_string_lossy().into_owned());

    put("embeddings", path(&settings.embeddings));
    put("pairs", path(&settings.pairs));
    put("corpus", path(&settings.corpus));
    put("topic_words", path(&settings.topic_words));
    put("group_field", settings.group_field.clone());
    put("n_bootstrap", text(&settings.n_bootstrap));
    put("alpha", text(&settings.alpha));
    put("bonferroni", text(&settings.bonferroni));
    put("seed", text(&settings.seed));
    put("top_m", text(&settings.top_m));
    put("k", text(&settings.k));
    put("unit", settings.unit.clone());
    put("out_dir", path(&settings.out_dir));
    put("formats", settings.formats.clone());
    put("threads", text(&settings.threads));
    put("lowercase", text(&settings.lowercase));
    put("strip_punctuation", text(&settings.strip_punctuation));

    match command {
        Command::Analyze { target } => put("target", target.clone()),
        Command::Shifts {
            frame,
            kind,
            target,
            background,
        } => {
            put("frame", frame.clone());
            put("kind", kind.clone());
            put("target", target.clone());
            put("background", background.clone());
        }
        Command::Spectrum { frame } => put("frame", frame.clone()),
        Command::Map {
            frame,
            by,
            min_docs,
        } => {
            put("frame", frame.clone());
            put("by", by.clone());
            put("min_docs", text(min_docs));
        }
        Command::Separation { group_a, group_b } => {
            put("group_a", group_a.clone());
            put("group_b", group_b.clone());
        }
        Command::Relevance {
            topics,
            method,
            templates,
            perplexity_table,
            ngram_order,
        } => {
            if !topics.is_empty() {
                put("topics", Some(topics.join(",")));
            }
            put("method", method.clone());
            put("templates", path(templates));
            put("perplexity_table", path(perplexity_table));
            put("ngram_order", text(ngram_order));
        }
        Command::LogOdds {
            target,
            background,
            prior_scale,
        } => {
            put("target", target.clone());
            put("background", background.clone());
            put("prior_scale", text(prior_scale));
        }
        Command::Frames {
            command: FramesCommand::Build,
        } => {}
    }
    m
}

struct Layers(BTreeMap<String, String>);

impl Layers {
    fn raw(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn opt<T>(&self, key: &str) -> CliResult<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        match self.raw(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|e| CliError::usage("config", format!("invalid {key} {v:?}: {e}"))),
        }
    }

    fn or<T>(&self, key: &str, default: T) -> CliResult<T>
    where
        T: FromStr,
        T::Err: Display,
    {
        Ok(self.opt(key)?.unwrap_or(default))
    }

    fn string(&self, key: &str) -> Option<String> {
        self.raw(key).filter(|s| !s.is_empty()).map(str::to_string)
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.string(key).map(PathBuf::from)
    }
}

impl RunConfig {
    /// Merges flags, the optional config file and `env_embeddings`, then
    /// validates the result. No input file is opened beyond the config file.
    pub fn resolve(
        settings: &SettingArgs,
        command: &Command,
        env_embeddings: Option<String>,
    ) -> CliResult<RunConfig> {
        let mut merged = match &settings.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| {
                    CliError::usage("config", format!("cannot read {}: {e}", path.display()))
                })?;
                parse_config_file(&text, path)?
            }
            None => BTreeMap::new(),
        };
        merged.extend(flag_layer(settings, command));
        if !merged.contains_key("embeddings") {
            if let Some(env) = env_embeddings.filter(|s| !s.is_empty()) {
                merged.insert("embeddings".into(), env);
            }
        }
        let l = Layers(merged);

        let formats = match l.raw("formats") {
            None => vec![Format::Json, Format::Tsv, Format::Svg],
            Some(list) => {
                let mut f: Vec<Format> = list
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(str::parse)
                    .collect::<Result<_, _>>()
                    .map_err(|e| CliError::usage("config", e))?;
                f.sort();
                f.dedup();
                f
            }
        };
        let topics = l
            .raw("topics")
            .map(|s| {
                s.split(',')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(str::to_string)
                    .collect()
            })
            .unwrap_or_default();

        let config = RunConfig {
            command: command_label(command),
            embeddings: l.path("embeddings"),
            pairs: l.path("pairs"),
            corpus: l.path("corpus"),
            topic_words: l.path("topic_words"),
            group_field: l.string("group_field").unwrap_or_else(|| "group".into()),
            target: l.string("target"),
            background: l.string("background"),
            group_a: l.string("group_a"),
            group_b: l.string("group_b"),
            frame: l.string("frame"),
            kind: l.or("kind", ShiftKind::Bias)?,
            by: l.string("by"),
            min_docs: l.or("min_docs", 20)?,
            topics,
            method: l.or("method", RelevanceMethod::Embedding)?,
            templates: l.path("templates"),
            perplexity_table: l.path("perplexity_table"),
            ngram_order: l.or("ngram_order", 3)?,
            prior_scale: l.or("prior_scale", 1.0)?,
            n_bootstrap: l.or("n_bootstrap", 1000)?,
            alpha: l.or("alpha", 0.05)?,
            bonferroni: l.or("bonferroni", false)?,
            seed: l.or("seed", 0)?,
            top_m: l.or("top_m", 10)?,
            k: l.or("k", 20)?,
            unit: l.or("unit", ResampleUnit::Token)?,
            formats,
            lowercase: l.or("lowercase", true)?,
            strip_punctuation: l.or("strip_punctuation", true)?,
            out_dir: l
                .path("out_dir")
                .unwrap_or_else(|| PathBuf::from("microframe-out")),
            threads: l.opt("threads")?,
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> CliResult<()> {
        let bad = |m: String| Err(CliError::usage("config", m));
        if self.n_bootstrap < 1 {
            return bad("n_bootstrap must be at least 1".into());
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return bad(format!(
                "alpha must lie strictly between 0 and 1, got {}",
                self.alpha
            ));
        }
        if self.k < 1 {
            return bad("k must be at least 1".into());
        }
        if self.ngram_order < 1 {
            return bad("ngram_order must be at least 1".into());
        }
        if !(self.prior_scale > 0.0 && self.prior_scale.is_finite()) {
            return bad(format!(
                "prior_scale must be positive, got {}",
                self.prior_scale
            ));
        }
        if self.threads == Some(0) {
            return bad("threads must be at least 1".into());
        }
        if self.formats.is_empty() {
            return bad("no output format selected".into());
        }
        for (key, path) in [
            ("embeddings", &self.embeddings),
            ("pairs", &self.pairs),
            ("corpus", &self.corpus),
            ("topic_words", &self.topic_words),
            ("templates", &self.templates),
            ("perplexity_table", &self.perplexity_table),
        ] {
            if let Some(p) = path {
                if !p.is_file() {
                    return bad(format!("{key}: no such file {}", p.display()));
                }
            }
        }
        if self.out_dir.exists() && !self.out_dir.is_dir() {
            return bad(format!(
                "out_dir {} is not a directory",
                self.out_dir.display()
            ));
        }
        Ok(())
    }

    pub fn require_embeddings(&self) -> CliResult<&Path> {
        self.embeddings.as_deref().ok_or_else(|| {
            CliError::usage(
                "config",
                format!("no embeddings given (use --embeddings or set {EMBEDDINGS_ENV})"),
            )
        })
    }

    pub fn require_corpus(&self) -> CliResult<&Path> {
        self.corpus
            .as_deref()
            .ok_or_else(|| CliError::usage("config", "no corpus given (use --corpus)"))
    }

    pub fn require<'a>(&self, key: &str, value: &'a Option<String>) -> CliResult<&'a str> {
        value.as_deref().ok_or_else(|| {
            CliError::usage("config", format!("{key} is required for {}", self.command))
        })
    }

    pub fn wants(&self, format: Format) -> bool {
        // A figure is never written without its table.
        self.formats.contains(&format)
            || (format == Format::Tsv && self.formats.contains(&Format::Svg))
    }
}

fn command_label(command: &Command) -> String {
    match command {
        Command::Frames {
            command: FramesCommand::Build,
        } => "frames build".into(),
        other => other.name().into(),
    }
}
