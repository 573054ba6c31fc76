use serde::{Deserialize, Serialize};

use super::analysis::FramingResult;
use super::bootstrap::NullDistribution;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Significance {
    pub p_bias: f64,
    pub p_intensity: f64,
    pub effect_bias: f64,
    pub effect_intensity: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    Bias,
    Intensity,
}

fn mean(samples: &[f64]) -> f64 {
    samples.iter().sum::<f64>() / samples.len() as f64
}

/// Two-tailed bootstrap p-value with add-one smoothing:
/// `2 * min(G, L)` where `G = (#{x >= obs} + 1) / (N + 1)` and
/// `L = (#{x <= obs} + 1) / (N + 1)`, capped at 1.
pub fn two_tailed_p(observed: f64, samples: &[f64]) -> f64 {
    let n = samples.len() as f64;
    let ge = samples.iter().filter(|&&x| x >= observed).count() as f64;
    let le = samples.iter().filter(|&&x| x <= observed).count() as f64;
    let g = (ge + 1.0) / (n + 1.0);
    let l = (le + 1.0) / (n + 1.0);
    (2.0 * g.min(l)).min(1.0)
}

/// Effect sizes (observed minus null mean) and p-values.
pub fn significance(
    observed_bias: f64,
    observed_intensity: f64,
    null: &NullDistribution,
) -> Significance {
    Significance {
        p_bias: two_tailed_p(observed_bias, &null.bias_samples),
        p_intensity: two_tailed_p(observed_intensity, &null.intensity_samples),
        effect_bias: observed_bias - mean(&null.bias_samples),
        effect_intensity: observed_intensity - mean(&null.intensity_samples),
    }
}

/// `alpha / n_frames`.
pub fn bonferroni_alpha(alpha: f64, n_frames: usize) -> f64 {
    alpha / n_frames.max(1) as f64
}

/// Frames with `p <= alpha`, largest `|effect|` first, at most `m`. Ties go
/// to the smaller frame id.
pub fn top_significant_frames(
    results: &[FramingResult],
    by: Statistic,
    m: usize,
    alpha: f64,
) -> Vec<&FramingResult> {
    let key = |r: &FramingResult| match by {
        Statistic::Bias => (r.p_bias, r.effect_bias.abs()),
        Statistic::Intensity => (r.p_intensity, r.effect_intensity.abs()),
    };
    let mut picked: Vec<&FramingResult> = results.iter().filter(|r| key(r).0 <= alpha).collect();
    picked.sort_by(|a, b| {
        key(b)
            .1
            .total_cmp(&key(a).1)
            .then_with(|| a.frame_id.cmp(&b.frame_id))
    });
    picked.truncate(m);
    picked
}
