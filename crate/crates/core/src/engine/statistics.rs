use rayon::prelude::*;

use super::contribution::{check_dimension, contribution_with_norm, Lexicon};
use crate::corpus::CorpusView;
use crate::embedding::EmbeddingTable;
use crate::frames::{FrameRegistry, Microframe};
use crate::{Error, Result};

/// Walks `counts` in token order and returns `sum n f(c) / total`.
pub(crate) fn accumulate<'a, I, F>(
    counts: I,
    total: u64,
    frame: &Microframe,
    table: &EmbeddingTable,
    f: F,
) -> Result<f64>
where
    I: IntoIterator<Item = (&'a String, &'a u64)>,
    F: Fn(f64) -> f64,
{
    if total == 0 {
        return Err(Error::EmptyView);
    }
    check_dimension(table, frame)?;
    let mut acc = 0.0;
    for (tok, &n) in counts {
        let row = table
            .row(tok)
            .ok_or_else(|| Error::MissingVector(tok.clone()))?;
        let c = contribution_with_norm(table.row_vector(row), table.row_norm(row), frame);
        acc += n as f64 * f(c);
    }
    Ok(acc / total as f64)
}

#[inline]
pub(crate) fn squared_deviation(c: f64, baseline: f64) -> f64 {
    let d = c - baseline;
    d * d
}

/// Frequency-weighted mean contribution of the view's tokens.
pub fn corpus_bias(view: &CorpusView, frame: &Microframe, table: &EmbeddingTable) -> Result<f64> {
    accumulate(view.counts(), view.total_tokens(), frame, table, |c| c)
}

/// Frequency-weighted second moment of contributions about `baseline_bias`,
/// which should be the bias of the whole corpus on the same frame.
pub fn corpus_intensity(
    view: &CorpusView,
    frame: &Microframe,
    table: &EmbeddingTable,
    baseline_bias: f64,
) -> Result<f64> {
    accumulate(view.counts(), view.total_tokens(), frame, table, |c| {
        squared_deviation(c, baseline_bias)
    })
}

/// Bias of `full` on every frame, in registry order.
pub fn baseline_biases(
    full: &CorpusView,
    registry: &FrameRegistry,
    table: &EmbeddingTable,
) -> Result<Vec<f64>> {
    full.ensure_nonempty()?;
    let lexicon = Lexicon::from_views(&[full], table)?;
    let counts = lexicon.counts_of(full)?;
    registry
        .frames()
        .par_iter()
        .map(|f| Ok(counts.weighted_mean(&lexicon.contributions(f, table)?)))
        .collect()
}
