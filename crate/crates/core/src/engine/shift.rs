//! Word-level decomposition of bias and intensity.
//!
//! The shift of word `w` in corpus `t` is its additive share of the corpus
//! statistic: `n_w c / sum n` for bias and `n_w (c - B_T)^2 / sum n` for
//! intensity. Shifts are computed separately in the target and in a
//! background corpus; the difference says which words move the target away
//! from the background.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::contribution::contribution_of;
use super::statistics::squared_deviation;
use crate::corpus::CorpusView;
use crate::embedding::EmbeddingTable;
use crate::frames::Microframe;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShiftKind {
    Bias,
    Intensity,
}

impl fmt::Display for ShiftKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShiftKind::Bias => "bias",
            ShiftKind::Intensity => "intensity",
        })
    }
}

impl FromStr for ShiftKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bias" => Ok(ShiftKind::Bias),
            "intensity" => Ok(ShiftKind::Intensity),
            _ => Err(Error::InvalidArgument(format!(
                "shift kind must be bias or intensity, got {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftEntry {
    pub token: String,
    pub kind: ShiftKind,
    pub contribution: f64,
    /// `n_w / sum n` in the target.
    pub freq_target: f64,
    pub freq_background: f64,
    pub shift_target: f64,
    pub shift_background: f64,
    pub shift_delta: f64,
}

/// Shifts for every token of either view, sorted by token.
pub fn all_word_shifts(
    target: &CorpusView,
    background: &CorpusView,
    frame: &Microframe,
    table: &EmbeddingTable,
    kind: ShiftKind,
    baseline_bias: f64,
) -> Result<Vec<ShiftEntry>> {
    target.ensure_nonempty()?;
    background.ensure_nonempty()?;
    let nt = target.total_tokens() as f64;
    let nb = background.total_tokens() as f64;
    let vocab: BTreeSet<&str> = target
        .counts()
        .keys()
        .chain(background.counts().keys())
        .map(String::as_str)
        .collect();
    vocab
        .into_iter()
        .map(|tok| {
            let c = contribution_of(tok, frame, table)?;
            let value = match kind {
                ShiftKind::Bias => c,
                ShiftKind::Intensity => squared_deviation(c, baseline_bias),
            };
            let ct = target.count(tok) as f64;
            let cb = background.count(tok) as f64;
            let shift_target = ct * value / nt;
            let shift_background = cb * value / nb;
            Ok(ShiftEntry {
                token: tok.to_string(),
                kind,
                contribution: c,
                freq_target: ct / nt,
                freq_background: cb / nb,
                shift_target,
                shift_background,
                shift_delta: shift_target - shift_background,
            })
        })
        .collect()
}

/// The `k` shifts with the largest `|shift_delta|`; ties by token.
pub fn word_shifts(
    target: &CorpusView,
    background: &CorpusView,
    frame: &Microframe,
    table: &EmbeddingTable,
    kind: ShiftKind,
    baseline_bias: f64,
    k: usize,
) -> Result<Vec<ShiftEntry>> {
    let mut all = all_word_shifts(target, background, frame, table, kind, baseline_bias)?;
    all.sort_by(|a, b| {
        b.shift_delta
            .abs()
            .total_cmp(&a.shift_delta.abs())
            .then_with(|| a.token.cmp(&b.token))
    });
    all.truncate(k);
    Ok(all)
}
