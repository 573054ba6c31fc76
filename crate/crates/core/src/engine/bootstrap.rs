//! Bootstrap null model.
//!
//! Each null sample draws `sample_size` tokens with replacement from the full
//! corpus' bag of words (probability `n_w / sum n_w`), or, with
//! [`ResampleUnit::Document`], that many whole documents. The drawn counts
//! depend only on the corpus and the seed, never on the frame, so one
//! [`ResamplePlan`] serves every frame of an analysis.
//!
//! Sample `s` is drawn from a ChaCha8 generator seeded with the master seed
//! and switched to stream `s`. Samples can be generated in any order or in
//! parallel and still come out identical.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::weighted::WeightedAliasIndex;
use rand_distr::Distribution;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::contribution::{Lexicon, SparseCounts};
use super::statistics::squared_deviation;
use crate::corpus::CorpusView;
use crate::embedding::EmbeddingTable;
use crate::frames::Microframe;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResampleUnit {
    #[default]
    Token,
    Document,
}

impl std::str::FromStr for ResampleUnit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "token" => Ok(ResampleUnit::Token),
            "document" => Ok(ResampleUnit::Document),
            _ => Err(Error::InvalidArgument(format!(
                "resample unit must be token or document, got {s:?}"
            ))),
        }
    }
}

impl std::fmt::Display for ResampleUnit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ResampleUnit::Token => "token",
            ResampleUnit::Document => "document",
        })
    }
}

/// Null samples of bias and intensity for one frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NullDistribution {
    pub frame_id: String,
    pub bias_samples: Vec<f64>,
    pub intensity_samples: Vec<f64>,
    pub seed: u64,
    pub unit: ResampleUnit,
    pub sample_size: u64,
}

impl NullDistribution {
    pub fn len(&self) -> usize {
        self.bias_samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bias_samples.is_empty()
    }
}

fn sample_rng(seed: u64, sample: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sample as u64);
    rng
}

/// Resampled count tables over a [`Lexicon`].
#[derive(Debug, Clone)]
pub struct ResamplePlan {
    samples: Vec<SparseCounts>,
    seed: u64,
    unit: ResampleUnit,
    sample_size: u64,
}

impl ResamplePlan {
    /// Draws `n` samples from `full`. `sample_size` counts tokens or
    /// documents depending on `unit`. Documents with no counted token are
    /// never drawn.
    pub fn new(
        full: &CorpusView,
        lexicon: &Lexicon,
        unit: ResampleUnit,
        sample_size: u64,
        n: usize,
        seed: u64,
    ) -> Result<ResamplePlan> {
        if n < 1 {
            return Err(Error::NoBootstrapSamples);
        }
        if sample_size < 1 {
            return Err(Error::InvalidArgument(
                "bootstrap sample size must be at least 1".into(),
            ));
        }
        full.ensure_nonempty()?;
        let samples = match unit {
            ResampleUnit::Token => {
                let mut weights = vec![0u64; lexicon.len()];
                for (tok, &count) in full.counts() {
                    let i = lexicon
                        .position(tok)
                        .ok_or_else(|| Error::MissingVector(tok.clone()))?;
                    weights[i] = count;
                }
                let dist = WeightedAliasIndex::new(weights)
                    .map_err(|e| Error::InvalidArgument(format!("token weights: {e}")))?;
                (0..n)
                    .into_par_iter()
                    .map(|s| {
                        let mut rng = sample_rng(seed, s);
                        let mut dense = vec![0u32; lexicon.len()];
                        for _ in 0..sample_size {
                            dense[dist.sample(&mut rng)] += 1;
                        }
                        SparseCounts::from_dense(&dense)
                    })
                    .collect()
            }
            ResampleUnit::Document => {
                let docs: Vec<SparseCounts> = full
                    .document_counts()
                    .iter()
                    .filter(|d| d.total > 0)
                    .map(|d| lexicon.align(d.counts.iter().map(|(t, &c)| (t.as_str(), c))))
                    .collect::<Result<_>>()?;
                (0..n)
                    .into_par_iter()
                    .map(|s| {
                        let mut rng = sample_rng(seed, s);
                        let mut dense = vec![0u32; lexicon.len()];
                        for _ in 0..sample_size {
                            let doc = &docs[rng.random_range(0..docs.len())];
                            for (i, c) in doc.iter() {
                                dense[i] += c;
                            }
                        }
                        SparseCounts::from_dense(&dense)
                    })
                    .collect()
            }
        };
        Ok(ResamplePlan {
            samples,
            seed,
            unit,
            sample_size,
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[SparseCounts] {
        &self.samples
    }

    /// Bias and intensity of every sample, given per-token contributions and
    /// the whole-corpus baseline bias.
    pub fn evaluate(
        &self,
        frame_id: &str,
        contributions: &[f64],
        baseline: f64,
    ) -> NullDistribution {
        let deviations: Vec<f64> = contributions
            .iter()
            .map(|&c| squared_deviation(c, baseline))
            .collect();
        let (bias_samples, intensity_samples) = self
            .samples
            .iter()
            .map(|s| (s.weighted_mean(contributions), s.weighted_mean(&deviations)))
            .unzip();
        NullDistribution {
            frame_id: frame_id.to_string(),
            bias_samples,
            intensity_samples,
            seed: self.seed,
            unit: self.unit,
            sample_size: self.sample_size,
        }
    }
}

/// Token-level bootstrap null for one frame.
pub fn bootstrap_null(
    full_view: &CorpusView,
    frame: &Microframe,
    table: &EmbeddingTable,
    sample_size: u64,
    n: usize,
    seed: u64,
) -> Result<NullDistribution> {
    bootstrap_null_with(
        full_view,
        frame,
        table,
        ResampleUnit::Token,
        sample_size,
        n,
        seed,
    )
}

pub fn bootstrap_null_with(
    full_view: &CorpusView,
    frame: &Microframe,
    table: &EmbeddingTable,
    unit: ResampleUnit,
    sample_size: u64,
    n: usize,
    seed: u64,
) -> Result<NullDistribution> {
    let lexicon = Lexicon::from_views(&[full_view], table)?;
    let plan = ResamplePlan::new(full_view, &lexicon, unit, sample_size, n, seed)?;
    let contributions = lexicon.contributions(frame, table)?;
    let baseline = lexicon.counts_of(full_view)?.weighted_mean(&contributions);
    Ok(plan.evaluate(frame.id(), &contributions, baseline))
}
