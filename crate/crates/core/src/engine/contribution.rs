use std::collections::{BTreeSet, HashMap};

use crate::corpus::CorpusView;
use crate::embedding::EmbeddingTable;
use crate::frames::Microframe;
use crate::linalg;
use crate::{Error, Result};

pub(crate) fn contribution_with_norm(word: &[f32], word_norm: f64, frame: &Microframe) -> f64 {
    let c = linalg::dot_mixed(word, frame.axis()) / (word_norm * frame.axis_norm());
    c.clamp(-1.0, 1.0)
}

/// Cosine between a word vector and the frame axis.
pub fn word_contribution(word: &[f32], frame: &Microframe) -> Result<f64> {
    if word.len() != frame.axis().len() {
        return Err(Error::DimensionMismatch {
            left: word.len(),
            right: frame.axis().len(),
        });
    }
    let norm = linalg::norm(word);
    if norm.is_nan() || norm <= 0.0 {
        return Err(Error::ZeroNorm(None));
    }
    Ok(contribution_with_norm(word, norm, frame))
}

/// Contribution of a token looked up in `table`.
pub fn contribution_of(token: &str, frame: &Microframe, table: &EmbeddingTable) -> Result<f64> {
    let row = table
        .row(token)
        .ok_or_else(|| Error::MissingVector(token.to_string()))?;
    check_dimension(table, frame)?;
    Ok(contribution_with_norm(
        table.row_vector(row),
        table.row_norm(row),
        frame,
    ))
}

pub(crate) fn check_dimension(table: &EmbeddingTable, frame: &Microframe) -> Result<()> {
    if table.dimension() != frame.axis().len() {
        return Err(Error::DimensionMismatch {
            left: table.dimension(),
            right: frame.axis().len(),
        });
    }
    Ok(())
}

/// Sorted token vocabulary shared by several views, with each token's row in
/// the embedding table. Lets per-frame contributions be computed once and
/// indexed by position.
#[derive(Debug, Clone)]
pub struct Lexicon {
    tokens: Vec<String>,
    rows: Vec<usize>,
    index: HashMap<String, u32>,
}

/// Counts aligned to a [`Lexicon`], ascending by index.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseCounts {
    pub(crate) index: Vec<u32>,
    pub(crate) counts: Vec<u32>,
    pub(crate) total: u64,
}

impl SparseCounts {
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.index
            .iter()
            .zip(&self.counts)
            .map(|(&i, &n)| (i as usize, n))
    }

    pub(crate) fn from_dense(dense: &[u32]) -> SparseCounts {
        let mut out = SparseCounts::default();
        for (i, &n) in dense.iter().enumerate() {
            if n > 0 {
                out.index.push(i as u32);
                out.counts.push(n);
                out.total += u64::from(n);
            }
        }
        out
    }

    /// `sum n_i v_i / sum n_i`, in index order.
    pub(crate) fn weighted_mean(&self, values: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (i, n) in self.iter() {
            acc += f64::from(n) * values[i];
        }
        acc / self.total as f64
    }
}

impl Lexicon {
    pub fn from_views(views: &[&CorpusView], table: &EmbeddingTable) -> Result<Lexicon> {
        let vocab: BTreeSet<&str> = views
            .iter()
            .flat_map(|v| v.counts().keys().map(String::as_str))
            .collect();
        let mut tokens = Vec::with_capacity(vocab.len());
        let mut rows = Vec::with_capacity(vocab.len());
        let mut index = HashMap::with_capacity(vocab.len());
        for tok in vocab {
            let row = table
                .row(tok)
                .ok_or_else(|| Error::MissingVector(tok.to_string()))?;
            index.insert(tok.to_string(), tokens.len() as u32);
            tokens.push(tok.to_string());
            rows.push(row);
        }
        Ok(Lexicon {
            tokens,
            rows,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn position(&self, token: &str) -> Option<usize> {
        self.index.get(token).map(|&i| i as usize)
    }

    /// `c(w, f)` for every token, by position.
    pub fn contributions(&self, frame: &Microframe, table: &EmbeddingTable) -> Result<Vec<f64>> {
        check_dimension(table, frame)?;
        Ok(self
            .rows
            .iter()
            .map(|&r| contribution_with_norm(table.row_vector(r), table.row_norm(r), frame))
            .collect())
    }

    pub fn counts_of(&self, view: &CorpusView) -> Result<SparseCounts> {
        self.align(view.counts().iter().map(|(t, &n)| (t.as_str(), n)))
    }

    pub(crate) fn align<'a, I>(&self, counts: I) -> Result<SparseCounts>
    where
        I: IntoIterator<Item = (&'a str, u64)>,
    {
        let mut out = SparseCounts::default();
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (tok, n) in counts {
            let i = *self
                .index
                .get(tok)
                .ok_or_else(|| Error::MissingVector(tok.to_string()))?;
            let n = u32::try_from(n)
                .map_err(|_| Error::InvalidArgument(format!("count of {tok:?} exceeds u32")))?;
            pairs.push((i, n));
            out.total += u64::from(n);
        }
        pairs.sort_unstable();
        out.index = pairs.iter().map(|p| p.0).collect();
        out.counts = pairs.iter().map(|p| p.1).collect();
        Ok(out)
    }
}
