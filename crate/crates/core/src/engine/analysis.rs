use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bootstrap::{ResamplePlan, ResampleUnit};
use super::contribution::Lexicon;
use super::significance::significance;
use crate::corpus::CorpusView;
use crate::embedding::EmbeddingTable;
use crate::frames::FrameRegistry;
use crate::Result;

/// Observed statistics and their significance for one frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FramingResult {
    pub frame_id: String,
    pub bias: f64,
    pub intensity: f64,
    pub baseline_bias: f64,
    pub effect_bias: f64,
    pub effect_intensity: f64,
    pub p_bias: f64,
    pub p_intensity: f64,
    pub n_bootstrap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    pub n_bootstrap: usize,
    pub seed: u64,
    pub unit: ResampleUnit,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            n_bootstrap: 1000,
            seed: 0,
            unit: ResampleUnit::Token,
        }
    }
}

/// Bias, intensity and bootstrap significance of `target` on every frame,
/// against nulls drawn from `full`.
///
/// The null samples match the target's size: its token count, or its number
/// of non-empty documents under [`ResampleUnit::Document`]. Frames run in
/// parallel; the output is in registry order and does not depend on the
/// thread count.
pub fn analyze(
    target: &CorpusView,
    full: &CorpusView,
    registry: &FrameRegistry,
    table: &EmbeddingTable,
    config: &AnalysisConfig,
) -> Result<Vec<FramingResult>> {
    target.ensure_nonempty()?;
    full.ensure_nonempty()?;
    let lexicon = Lexicon::from_views(&[full, target], table)?;
    let full_counts = lexicon.counts_of(full)?;
    let target_counts = lexicon.counts_of(target)?;
    let sample_size = match config.unit {
        ResampleUnit::Token => target.total_tokens(),
        ResampleUnit::Document => target
            .document_counts()
            .iter()
            .filter(|d| d.total > 0)
            .count() as u64,
    };
    log::info!(
        "drawing {} bootstrap samples of {} {}s",
        config.n_bootstrap,
        sample_size,
        config.unit
    );
    let plan = ResamplePlan::new(
        full,
        &lexicon,
        config.unit,
        sample_size,
        config.n_bootstrap,
        config.seed,
    )?;
    log::info!("evaluating {} frames", registry.len());

    registry
        .frames()
        .par_iter()
        .map(|frame| {
            let contributions = lexicon.contributions(frame, table)?;
            let baseline = full_counts.weighted_mean(&contributions);
            let bias = target_counts.weighted_mean(&contributions);
            let deviations: Vec<f64> = contributions
                .iter()
                .map(|&c| super::statistics::squared_deviation(c, baseline))
                .collect();
            let intensity = target_counts.weighted_mean(&deviations);
            let null = plan.evaluate(frame.id(), &contributions, baseline);
            let sig = significance(bias, intensity, &null);
            Ok(FramingResult {
                frame_id: frame.id().to_string(),
                bias,
                intensity,
                baseline_bias: baseline,
                effect_bias: sig.effect_bias,
                effect_intensity: sig.effect_intensity,
                p_bias: sig.p_bias,
                p_intensity: sig.p_intensity,
                n_bootstrap: config.n_bootstrap,
            })
        })
        .collect()
}
