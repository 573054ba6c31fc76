//! Ranking frames by how relevant they are to a topic, before any corpus is
//! analysed.
//!
//! Two scores are available:
//!
//! * **embedding**: for each topic word, the mean of its cosines with the two
//!   pole words, averaged over the topic words. Higher is more relevant.
//! * **perplexity**: each pole word is placed in template sentences such as
//!   `"{topic} is {pole}."` and `"{topic} are {pole}."`; a
//!   [`PerplexityProvider`] scores them, the lower score per pole is kept (it
//!   comes from the sentence whose verb agrees with the topic word), and the
//!   two poles' scores are summed. Lower is more relevant.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::embedding::EmbeddingTable;
use crate::frames::FrameRegistry;
use crate::linalg;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelevanceMethod {
    Embedding,
    Perplexity,
}

impl RelevanceMethod {
    pub fn higher_is_better(self) -> bool {
        matches!(self, RelevanceMethod::Embedding)
    }
}

impl fmt::Display for RelevanceMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelevanceMethod::Embedding => "embedding",
            RelevanceMethod::Perplexity => "perplexity",
        })
    }
}

impl std::str::FromStr for RelevanceMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "" | "embedding" => Ok(RelevanceMethod::Embedding),
            "perplexity" => Ok(RelevanceMethod::Perplexity),
            _ => Err(Error::InvalidArgument(format!(
                "relevance method must be embedding or perplexity, got {s:?}"
            ))),
        }
    }
}

/// Topic words that resolved in the embedding table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelevanceQuery {
    topic_words: Vec<String>,
    dropped: Vec<String>,
}

impl RelevanceQuery {
    /// Deduplicates `topic_words` and drops those without a vector.
    pub fn new<I, S>(topic_words: I, table: &EmbeddingTable) -> Result<RelevanceQuery>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let unique: BTreeSet<String> = topic_words
            .into_iter()
            .map(|w| w.as_ref().to_string())
            .collect();
        let (topic_words, dropped): (Vec<String>, Vec<String>) =
            unique.into_iter().partition(|w| table.contains(w));
        if topic_words.is_empty() {
            return Err(Error::NoTopicWords);
        }
        Ok(RelevanceQuery {
            topic_words,
            dropped,
        })
    }

    pub fn topic_words(&self) -> &[String] {
        &self.topic_words
    }

    /// Topic words without a vector.
    pub fn dropped(&self) -> &[String] {
        &self.dropped
    }
}

/// Per topic word: the value attached to each pole (a cosine, or the
/// template-minimum perplexity).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelevanceDetail {
    pub topic_word: String,
    pub pole_minus: f64,
    pub pole_plus: f64,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelevanceScore {
    pub frame_id: String,
    pub score: f64,
    pub method: RelevanceMethod,
    pub details: Vec<RelevanceDetail>,
}

fn sort_scores(scores: &mut [RelevanceScore], method: RelevanceMethod) {
    scores.sort_by(|a, b| {
        let ord = if method.higher_is_better() {
            b.score.total_cmp(&a.score)
        } else {
            a.score.total_cmp(&b.score)
        };
        ord.then_with(|| a.frame_id.cmp(&b.frame_id))
    });
}

fn cosine(a: &[f32], na: f64, b: &[f32], nb: f64) -> f64 {
    (linalg::dot32(a, b) / (na * nb)).clamp(-1.0, 1.0)
}

/// Mean pole cosine per frame, sorted descending.
pub fn relevance_embedding(
    query: &RelevanceQuery,
    registry: &FrameRegistry,
    table: &EmbeddingTable,
) -> Result<Vec<RelevanceScore>> {
    let lookup = |w: &str| -> Result<(&[f32], f64)> {
        let row = table
            .row(w)
            .ok_or_else(|| Error::MissingVector(w.to_string()))?;
        Ok((table.row_vector(row), table.row_norm(row)))
    };
    let topics: Vec<(&str, &[f32], f64)> = query
        .topic_words
        .iter()
        .map(|w| lookup(w).map(|(v, n)| (w.as_str(), v, n)))
        .collect::<Result<_>>()?;

    let mut scores = registry
        .frames()
        .iter()
        .map(|frame| {
            let (vm, nm) = lookup(frame.pole_minus())?;
            let (vp, np) = lookup(frame.pole_plus())?;
            let details: Vec<RelevanceDetail> = topics
                .iter()
                .map(|&(w, v, n)| {
                    let minus = cosine(v, n, vm, nm);
                    let plus = cosine(v, n, vp, np);
                    RelevanceDetail {
                        topic_word: w.to_string(),
                        pole_minus: minus,
                        pole_plus: plus,
                        score: (plus + minus) / 2.0,
                    }
                })
                .collect();
            let score = details.iter().map(|d| d.score).sum::<f64>() / details.len() as f64;
            Ok(RelevanceScore {
                frame_id: frame.id().to_string(),
                score,
                method: RelevanceMethod::Embedding,
                details,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    sort_scores(&mut scores, RelevanceMethod::Embedding);
    Ok(scores)
}

/// Sentence templates with `{topic}` and `{pole}` placeholders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateSet {
    templates: Vec<String>,
}

impl Default for TemplateSet {
    fn default() -> Self {
        TemplateSet {
            templates: vec!["{topic} is {pole}.".into(), "{topic} are {pole}.".into()],
        }
    }
}

impl TemplateSet {
    pub fn new<I, S>(templates: I) -> Result<TemplateSet>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let templates: Vec<String> = templates.into_iter().map(Into::into).collect();
        if templates.is_empty() {
            return Err(Error::InvalidArgument("template set is empty".into()));
        }
        if let Some(bad) = templates
            .iter()
            .find(|t| !t.contains("{topic}") || !t.contains("{pole}"))
        {
            return Err(Error::InvalidArgument(format!(
                "template {bad:?} needs both {{topic}} and {{pole}}"
            )));
        }
        Ok(TemplateSet { templates })
    }

    /// One template per non-empty, non-comment line.
    pub fn read(path: impl AsRef<Path>) -> Result<TemplateSet> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        TemplateSet::new(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#')),
        )
    }

    pub fn templates(&self) -> &[String] {
        &self.templates
    }

    pub fn fill(&self, topic_word: &str, pole_word: &str) -> Vec<String> {
        self.templates
            .iter()
            .map(|t| {
                t.replace("{topic}", topic_word)
                    .replace("{pole}", pole_word)
            })
            .collect()
    }
}

/// The default two sentences for a topic word and a pole word.
pub fn build_templates(topic_word: &str, pole_word: &str) -> Vec<String> {
    TemplateSet::default().fill(topic_word, pole_word)
}

/// Scores a sentence; lower means more plausible. Must return a finite
/// positive value.
pub trait PerplexityProvider {
    fn perplexity(&self, sentence: &str) -> std::result::Result<f64, String>;
}

impl<F> PerplexityProvider for F
where
    F: Fn(&str) -> std::result::Result<f64, String>,
{
    fn perplexity(&self, sentence: &str) -> std::result::Result<f64, String> {
        self(sentence)
    }
}

/// Template-perplexity relevance per frame, sorted ascending.
pub fn relevance_perplexity(
    query: &RelevanceQuery,
    registry: &FrameRegistry,
    templates: &TemplateSet,
    provider: &dyn PerplexityProvider,
) -> Result<Vec<RelevanceScore>> {
    let mut cache: HashMap<String, f64> = HashMap::new();
    let mut score_pole = |topic: &str, pole: &str| -> Result<f64> {
        let mut best = f64::INFINITY;
        for sentence in templates.fill(topic, pole) {
            let value = match cache.get(&sentence) {
                Some(&v) => v,
                None => {
                    let v = provider
                        .perplexity(&sentence)
                        .map_err(|message| Error::Provider {
                            sentence: sentence.clone(),
                            message,
                        })?;
                    if !(v.is_finite() && v > 0.0) {
                        return Err(Error::Provider {
                            sentence,
                            message: format!("perplexity must be finite and positive, got {v}"),
                        });
                    }
                    cache.insert(sentence, v);
                    v
                }
            };
            best = best.min(value);
        }
        Ok(best)
    };

    let mut scores = Vec::with_capacity(registry.len());
    for frame in registry.frames() {
        let mut details = Vec::with_capacity(query.topic_words.len());
        for topic in &query.topic_words {
            let minus = score_pole(topic, frame.pole_minus())?;
            let plus = score_pole(topic, frame.pole_plus())?;
            details.push(RelevanceDetail {
                topic_word: topic.clone(),
                pole_minus: minus,
                pole_plus: plus,
                score: minus + plus,
            });
        }
        let score = details.iter().map(|d| d.score).sum::<f64>() / details.len() as f64;
        scores.push(RelevanceScore {
            frame_id: frame.id().to_string(),
            score,
            method: RelevanceMethod::Perplexity,
            details,
        });
    }
    sort_scores(&mut scores, RelevanceMethod::Perplexity);
    Ok(scores)
}

/// Fixed sentence to perplexity table, with an optional default for
/// sentences not in the table.
#[derive(Debug, Clone, Default)]
pub struct TablePerplexity {
    values: HashMap<String, f64>,
    default: Option<f64>,
}

impl TablePerplexity {
    pub fn new<I, S>(entries: I) -> Self
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        TablePerplexity {
            values: entries.into_iter().map(|(s, v)| (s.into(), v)).collect(),
            default: None,
        }
    }

    pub fn with_default(mut self, value: f64) -> Self {
        self.default = Some(value);
        self
    }
}

impl PerplexityProvider for TablePerplexity {
    fn perplexity(&self, sentence: &str) -> std::result::Result<f64, String> {
        self.values
            .get(sentence)
            .copied()
            .or(self.default)
            .ok_or_else(|| "sentence not in table".to_string())
    }
}

/// Character n-gram language model with add-one smoothing.
///
/// A small self-contained scorer so the perplexity protocol can run without
/// a neural model. Sentences are lowercased and padded with `^` and `$`.
#[derive(Debug, Clone)]
pub struct CharNgramModel {
    order: usize,
    counts: HashMap<String, u64>,
    context_counts: HashMap<String, u64>,
    alphabet: usize,
}

impl CharNgramModel {
    pub fn train<I, S>(texts: I, order: usize) -> Result<CharNgramModel>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        if order < 1 {
            return Err(Error::InvalidArgument(
                "n-gram order must be at least 1".into(),
            ));
        }
        let mut counts = HashMap::new();
        let mut context_counts = HashMap::new();
        let mut alphabet = BTreeSet::new();
        for text in texts {
            let chars = Self::pad(text.as_ref(), order);
            alphabet.extend(chars.iter().copied());
            for window in chars.windows(order) {
                let gram: String = window.iter().collect();
                let ctx: String = window[..order - 1].iter().collect();
                *counts.entry(gram).or_insert(0) += 1;
                *context_counts.entry(ctx).or_insert(0) += 1;
            }
        }
        Ok(CharNgramModel {
            order,
            counts,
            context_counts,
            // One extra symbol for characters never seen in training.
            alphabet: alphabet.len() + 1,
        })
    }

    fn pad(text: &str, order: usize) -> Vec<char> {
        let mut chars: Vec<char> = std::iter::repeat_n('^', order - 1).collect();
        chars.extend(text.to_lowercase().chars());
        chars.push('$');
        chars
    }
}

impl PerplexityProvider for CharNgramModel {
    fn perplexity(&self, sentence: &str) -> std::result::Result<f64, String> {
        let chars = Self::pad(sentence, self.order);
        let mut log_prob = 0.0;
        let mut n = 0usize;
        for window in chars.windows(self.order) {
            let gram: String = window.iter().collect();
            let ctx: String = window[..self.order - 1].iter().collect();
            let num = self.counts.get(&gram).copied().unwrap_or(0) as f64 + 1.0;
            let den =
                self.context_counts.get(&ctx).copied().unwrap_or(0) as f64 + self.alphabet as f64;
            log_prob += (num / den).ln();
            n += 1;
        }
        Ok((-log_prob / n as f64).exp())
    }
}
