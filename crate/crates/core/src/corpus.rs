//! Documents, tokenisation and bag-of-words corpus views.
//!
//! A [`CorpusView`] only counts tokens that survive two filters: the token
//! is not a masked topic word (nor the literal [`UNK`]), and the token has a
//! vector in the embedding table. Out-of-vocabulary tokens are left out of
//! the denominator `sum(n_w)` as well, so a corpus bias is an average over
//! words that actually have a contribution.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use unicode_normalization::UnicodeNormalization;

use crate::embedding::EmbeddingTable;
use crate::{Error, Result};

/// Sentinel that replaces masked topic words. Always masked when it occurs
/// literally in a document.
pub const UNK: &str = "<UNK>";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Normalizer {
    pub nfc: bool,
    pub lowercase: bool,
    pub strip_punctuation: bool,
}

impl Default for Normalizer {
    fn default() -> Self {
        Normalizer {
            nfc: true,
            lowercase: true,
            strip_punctuation: true,
        }
    }
}

impl Normalizer {
    /// Leaves tokens as they are apart from whitespace splitting.
    pub fn verbatim() -> Self {
        Normalizer {
            nfc: false,
            lowercase: false,
            strip_punctuation: false,
        }
    }
}

fn is_punctuation(c: char) -> bool {
    c.is_ascii_punctuation()
        || matches!(c,
            '\u{00A1}' | '\u{00A7}' | '\u{00AB}' | '\u{00B6}' | '\u{00B7}' | '\u{00BB}' | '\u{00BF}'
            | '\u{2010}'..='\u{2027}'
            | '\u{2030}'..='\u{205E}'
            | '\u{3001}'..='\u{3003}'
            | '\u{3008}'..='\u{3011}'
            | '\u{FF01}'..='\u{FF0F}')
}

/// Splits text into normalised tokens.
///
/// Default rules: NFC, lowercase, split on Unicode whitespace, trim
/// punctuation from both ends of each piece, drop empty pieces. The literal
/// `<UNK>` survives untouched.
pub fn tokenize(text: &str, config: &Normalizer) -> Vec<String> {
    let mut text: String = if config.nfc {
        text.nfc().collect()
    } else {
        text.to_string()
    };
    if config.lowercase {
        text = text.to_lowercase();
        if config.nfc {
            text = text.nfc().collect();
        }
    }
    text.split_whitespace()
        .filter_map(|piece| {
            if piece == UNK || (config.lowercase && piece == "<unk>") {
                return Some(UNK.to_string());
            }
            let piece = if config.strip_punctuation {
                piece.trim_matches(is_punctuation)
            } else {
                piece
            };
            (!piece.is_empty()).then(|| piece.to_string())
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub id: String,
    pub text: String,
    pub tokens: Vec<String>,
    pub group: Option<String>,
    pub meta: Option<serde_json::Value>,
}

impl Document {
    pub fn new(
        id: impl Into<String>,
        text: impl Into<String>,
        group: Option<&str>,
        normalizer: &Normalizer,
    ) -> Self {
        let text = text.into();
        Document {
            id: id.into(),
            tokens: tokenize(&text, normalizer),
            text,
            group: group.map(str::to_string),
            meta: None,
        }
    }

    /// A string-valued field: `group`, `id`, or a key of `meta`.
    pub fn field(&self, name: &str) -> Option<String> {
        match name {
            "group" => self.group.clone(),
            "id" => Some(self.id.clone()),
            key => match self.meta.as_ref()?.get(key)? {
                serde_json::Value::String(s) => Some(s.clone()),
                serde_json::Value::Null => None,
                other => Some(other.to_string()),
            },
        }
    }
}

#[derive(Deserialize)]
struct RawDocument {
    id: String,
    text: String,
    #[serde(default)]
    group: Option<String>,
    #[serde(default)]
    meta: Option<serde_json::Value>,
}

/// Parses JSONL documents: one object per line with `id`, `text`, and
/// optional `group` and `meta`.
pub fn parse_jsonl(text: &str, origin: &Path, normalizer: &Normalizer) -> Result<Vec<Document>> {
    let mut docs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawDocument = serde_json::from_str(line).map_err(|e| Error::Malformed {
            path: origin.to_path_buf(),
            line: i + 1,
            message: e.to_string(),
        })?;
        docs.push(Document {
            tokens: tokenize(&raw.text, normalizer),
            id: raw.id,
            text: raw.text,
            group: raw.group,
            meta: raw.meta,
        });
    }
    Ok(docs)
}

pub fn read_jsonl(path: impl AsRef<Path>, normalizer: &Normalizer) -> Result<Vec<Document>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_jsonl(&text, path, normalizer)
}

/// Newline-delimited word list; blank lines and `#` comments are ignored.
pub fn read_word_list(path: impl AsRef<Path>) -> Result<Vec<String>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect())
}

/// Per-document counts after masking and vocabulary alignment.
#[derive(Debug, Clone)]
pub struct DocumentCounts {
    pub document: Arc<Document>,
    pub counts: BTreeMap<String, u64>,
    pub total: u64,
    pub masked: BTreeSet<String>,
    pub oov: BTreeSet<String>,
}

impl DocumentCounts {
    fn build(
        document: Arc<Document>,
        table: &EmbeddingTable,
        topic_words: &HashSet<String>,
    ) -> Self {
        let mut counts = BTreeMap::new();
        let mut masked = BTreeSet::new();
        let mut oov = BTreeSet::new();
        let mut total = 0u64;
        for tok in &document.tokens {
            if tok == UNK || topic_words.contains(tok) {
                masked.insert(tok.clone());
            } else if table.contains(tok) {
                *counts.entry(tok.clone()).or_insert(0) += 1;
                total += 1;
            } else {
                oov.insert(tok.clone());
            }
        }
        DocumentCounts {
            document,
            counts,
            total,
            masked,
            oov,
        }
    }
}

/// Bag-of-words view of a document set.
#[derive(Debug, Clone, Default)]
pub struct CorpusView {
    docs: Vec<DocumentCounts>,
    counts: BTreeMap<String, u64>,
    total: u64,
    masked: BTreeSet<String>,
    oov: BTreeSet<String>,
}

impl CorpusView {
    fn from_docs(docs: Vec<DocumentCounts>) -> Self {
        let mut view = CorpusView {
            docs: Vec::new(),
            ..Default::default()
        };
        for d in &docs {
            for (tok, n) in &d.counts {
                *view.counts.entry(tok.clone()).or_insert(0) += n;
            }
            view.total += d.total;
            view.masked.extend(d.masked.iter().cloned());
            view.oov.extend(d.oov.iter().cloned());
        }
        view.docs = docs;
        view
    }

    /// Token counts `n_w`, sorted by token.
    pub fn counts(&self) -> &BTreeMap<String, u64> {
        &self.counts
    }

    pub fn count(&self, token: &str) -> u64 {
        self.counts.get(token).copied().unwrap_or(0)
    }

    /// `sum(n_w)`.
    pub fn total_tokens(&self) -> u64 {
        self.total
    }

    pub fn masked(&self) -> &BTreeSet<String> {
        &self.masked
    }

    pub fn oov(&self) -> &BTreeSet<String> {
        &self.oov
    }

    pub fn documents(&self) -> impl Iterator<Item = &Document> {
        self.docs.iter().map(|d| d.document.as_ref())
    }

    pub fn document_counts(&self) -> &[DocumentCounts] {
        &self.docs
    }

    pub fn num_documents(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Errors with [`Error::EmptyView`] when no token is counted.
    pub fn ensure_nonempty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::EmptyView)
        } else {
            Ok(())
        }
    }

    /// A view over the documents matching `keep`, with counts recomputed.
    /// The result may be empty.
    pub fn filter<F>(&self, mut keep: F) -> CorpusView
    where
        F: FnMut(&Document) -> bool,
    {
        CorpusView::from_docs(
            self.docs
                .iter()
                .filter(|d| keep(&d.document))
                .cloned()
                .collect(),
        )
    }

    /// Distinct values of a document field, sorted.
    pub fn field_values(&self, field: &str) -> BTreeSet<String> {
        self.documents().filter_map(|d| d.field(field)).collect()
    }
}

/// Counts the documents' tokens that are neither topic words nor missing
/// from `table`.
pub fn build_view(
    documents: Vec<Document>,
    table: &EmbeddingTable,
    topic_words: &HashSet<String>,
) -> Result<CorpusView> {
    let docs = documents
        .into_iter()
        .map(|d| DocumentCounts::build(Arc::new(d), table, topic_words))
        .collect();
    let view = CorpusView::from_docs(docs);
    view.ensure_nonempty()?;
    Ok(view)
}

/// Partitions a view into documents carrying `group` and all others.
///
/// The background may be empty.
pub fn split_by_group(view: &CorpusView, group: &str) -> Result<(CorpusView, CorpusView)> {
    let has = |d: &Document| d.group.as_deref() == Some(group);
    let target = view.filter(has);
    if target.num_documents() == 0 {
        return Err(Error::UnknownGroup(group.to_string()));
    }
    let background = view.filter(|d| !has(d));
    Ok((target, background))
}
