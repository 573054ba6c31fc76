//! Comparing two corpora frame by frame.
//!
//! `delta_bias = B(A) - B(B)` and `delta_intensity = I(A) - I(B)`, both
//! using the same whole-corpus baseline for intensity. Frames are ranked by
//! `|delta_bias|` and by the intensity of `A` and `B` pooled together; the
//! frames with the smallest rank sum separate the corpora most while also
//! being used heavily.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::contribution::Lexicon;
use super::statistics::squared_deviation;
use crate::corpus::CorpusView;
use crate::embedding::EmbeddingTable;
use crate::frames::FrameRegistry;
use crate::{Error, Result};

/// `|delta_intensity|` below this counts as no difference.
pub const BALANCED_EPSILON: f64 = 1e-12;

/// Which corpus uses a frame more intensely.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Highlight {
    A,
    B,
    Balanced,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparationResult {
    pub frame_id: String,
    pub pole_minus: String,
    pub pole_plus: String,
    pub baseline_bias: f64,
    pub bias_a: f64,
    pub bias_b: f64,
    pub intensity_a: f64,
    pub intensity_b: f64,
    pub delta_bias: f64,
    pub delta_intensity: f64,
    /// Intensity of `A` and `B` pooled, i.e. the token-weighted mean of
    /// `intensity_a` and `intensity_b`.
    pub pooled_intensity: f64,
    pub rank_bias: usize,
    pub rank_intensity: usize,
    pub rank_sum: usize,
    pub highlight: Highlight,
    /// Pole the highlighted corpus leans toward, relative to the baseline.
    pub highlighted_pole: Option<String>,
}

impl SeparationResult {
    /// `minus-plus` with the highlighted pole wrapped in `*` and suffixed by
    /// `+` (corpus A) or `-` (corpus B).
    pub fn label(&self) -> String {
        let mark = match self.highlight {
            Highlight::A => "+",
            Highlight::B => "-",
            Highlight::Balanced => "",
        };
        let fmt = |pole: &str| {
            if self.highlighted_pole.as_deref() == Some(pole) {
                format!("*{pole}*{mark}")
            } else {
                pole.to_string()
            }
        };
        format!("{}-{}", fmt(&self.pole_minus), fmt(&self.pole_plus))
    }
}

/// Assigns 1-based ranks by `key` descending, ties by frame id.
fn assign_ranks<F>(results: &[SeparationResult], key: F) -> Vec<usize>
where
    F: Fn(&SeparationResult) -> f64,
{
    let mut order: Vec<usize> = (0..results.len()).collect();
    order.sort_by(|&i, &j| {
        key(&results[j])
            .total_cmp(&key(&results[i]))
            .then_with(|| results[i].frame_id.cmp(&results[j].frame_id))
    });
    let mut ranks = vec![0; results.len()];
    for (r, i) in order.into_iter().enumerate() {
        ranks[i] = r + 1;
    }
    ranks
}

/// Separation of `view_a` from `view_b` on every frame of `registry`.
/// `baseline[i]` is the whole-corpus bias of frame `i`.
pub fn separation(
    view_a: &CorpusView,
    view_b: &CorpusView,
    registry: &FrameRegistry,
    table: &EmbeddingTable,
    baseline: &[f64],
) -> Result<Vec<SeparationResult>> {
    view_a.ensure_nonempty()?;
    view_b.ensure_nonempty()?;
    if baseline.len() != registry.len() {
        return Err(Error::InvalidArgument(format!(
            "{} baseline biases for {} frames",
            baseline.len(),
            registry.len()
        )));
    }
    let lexicon = Lexicon::from_views(&[view_a, view_b], table)?;
    let counts_a = lexicon.counts_of(view_a)?;
    let counts_b = lexicon.counts_of(view_b)?;
    let na = counts_a.total() as f64;
    let nb = counts_b.total() as f64;

    let mut results: Vec<SeparationResult> = registry
        .frames()
        .par_iter()
        .zip(baseline.par_iter())
        .map(|(frame, &base)| {
            let c = lexicon.contributions(frame, table)?;
            let dev: Vec<f64> = c.iter().map(|&x| squared_deviation(x, base)).collect();
            let bias_a = counts_a.weighted_mean(&c);
            let bias_b = counts_b.weighted_mean(&c);
            let intensity_a = counts_a.weighted_mean(&dev);
            let intensity_b = counts_b.weighted_mean(&dev);
            let delta_intensity = intensity_a - intensity_b;
            let (highlight, group_bias) = if delta_intensity > BALANCED_EPSILON {
                (Highlight::A, Some(bias_a))
            } else if delta_intensity < -BALANCED_EPSILON {
                (Highlight::B, Some(bias_b))
            } else {
                (Highlight::Balanced, None)
            };
            let highlighted_pole = group_bias.and_then(|b| {
                if b > base {
                    Some(frame.pole_plus().to_string())
                } else if b < base {
                    Some(frame.pole_minus().to_string())
                } else {
                    None
                }
            });
            Ok(SeparationResult {
                frame_id: frame.id().to_string(),
                pole_minus: frame.pole_minus().to_string(),
                pole_plus: frame.pole_plus().to_string(),
                baseline_bias: base,
                bias_a,
                bias_b,
                intensity_a,
                intensity_b,
                delta_bias: bias_a - bias_b,
                delta_intensity,
                pooled_intensity: (na * intensity_a + nb * intensity_b) / (na + nb),
                rank_bias: 0,
                rank_intensity: 0,
                rank_sum: 0,
                highlight,
                highlighted_pole,
            })
        })
        .collect::<Result<_>>()?;

    let rank_bias = assign_ranks(&results, |r| r.delta_bias.abs());
    let rank_intensity = assign_ranks(&results, |r| r.pooled_intensity);
    for (i, r) in results.iter_mut().enumerate() {
        r.rank_bias = rank_bias[i];
        r.rank_intensity = rank_intensity[i];
        r.rank_sum = rank_bias[i] + rank_intensity[i];
    }
    Ok(results)
}

/// The `m` frames with the smallest rank sum; ties by frame id.
pub fn rank_sum_select(separations: &[SeparationResult], m: usize) -> Vec<String> {
    let mut sorted: Vec<&SeparationResult> = separations.iter().collect();
    sorted.sort_by(|a, b| {
        a.rank_sum
            .cmp(&b.rank_sum)
            .then_with(|| a.frame_id.cmp(&b.frame_id))
    });
    sorted
        .into_iter()
        .take(m)
        .map(|r| r.frame_id.clone())
        .collect()
}

/// Frames among the top `n` and bottom `n` by `delta_intensity` and by
/// `delta_bias`: the ones worth labelling on a separation plot.
pub fn extreme_frames(separations: &[SeparationResult], n: usize) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for key in [
        (|r: &SeparationResult| r.delta_intensity) as fn(&SeparationResult) -> f64,
        |r: &SeparationResult| r.delta_bias,
    ] {
        let mut sorted: Vec<&SeparationResult> = separations.iter().collect();
        sorted.sort_by(|a, b| {
            key(a)
                .total_cmp(&key(b))
                .then_with(|| a.frame_id.cmp(&b.frame_id))
        });
        out.extend(sorted.iter().take(n).map(|r| r.frame_id.clone()));
        out.extend(sorted.iter().rev().take(n).map(|r| r.frame_id.clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sep(id: &str, rank_bias: usize, rank_intensity: usize) -> SeparationResult {
        SeparationResult {
            frame_id: id.into(),
            pole_minus: "m".into(),
            pole_plus: "p".into(),
            baseline_bias: 0.0,
            bias_a: 0.0,
            bias_b: 0.0,
            intensity_a: 0.0,
            intensity_b: 0.0,
            delta_bias: 0.0,
            delta_intensity: 0.0,
            pooled_intensity: 0.0,
            rank_bias,
            rank_intensity,
            rank_sum: rank_bias + rank_intensity,
            highlight: Highlight::Balanced,
            highlighted_pole: None,
        }
    }

    #[test]
    fn rank_sum_tie_goes_to_smaller_id() {
        let seps = vec![sep("b--x", 2, 1), sep("a--y", 1, 2), sep("c--z", 3, 3)];
        assert_eq!(rank_sum_select(&seps, 1), ["a--y"]);
        assert_eq!(rank_sum_select(&seps, 10), ["a--y", "b--x", "c--z"]);
    }

    #[test]
    fn labels_mark_highlighted_pole() {
        let mut s = sep("sour--sweet", 1, 1);
        s.pole_minus = "sour".into();
        s.pole_plus = "sweet".into();
        s.highlight = Highlight::A;
        s.highlighted_pole = Some("sweet".into());
        assert_eq!(s.label(), "sour-*sweet*+");
        s.highlight = Highlight::B;
        s.highlighted_pole = Some("sour".into());
        assert_eq!(s.label(), "*sour*--sweet");
    }
}
