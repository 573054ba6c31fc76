//! Bias, intensity and everything derived from them.
//!
//! For a frame `f` with axis `v_f` and a corpus `t` with counts `n_w`:
//!
//! ```text
//! c(w, f)   = cos(v_w, v_f)
//! B(t, f)   = sum_w n_w c(w, f) / sum_w n_w
//! I(t, f)   = sum_w n_w (c(w, f) - B(T, f))^2 / sum_w n_w
//! ```
//!
//! where `B(T, f)` is the bias of the whole corpus `T` the target was drawn
//! from. It is computed once per frame and passed in explicitly wherever an
//! intensity is needed.
//!
//! Every accumulation walks a count table in token order, so a statistic
//! computed through [`corpus_bias`] and one computed inside [`analyze`] are
//! bit-identical.

mod analysis;
mod bootstrap;
mod contribution;
mod log_odds;
mod separation;
mod shift;
mod significance;
mod spectrum;
mod statistics;

pub use analysis::{analyze, AnalysisConfig, FramingResult};
pub use bootstrap::{
    bootstrap_null, bootstrap_null_with, NullDistribution, ResamplePlan, ResampleUnit,
};
pub use contribution::{contribution_of, word_contribution, Lexicon, SparseCounts};
pub use log_odds::{log_odds_dirichlet, log_odds_dirichlet_scaled, LogOddsEntry};
pub use separation::{
    extreme_frames, rank_sum_select, separation, Highlight, SeparationResult, BALANCED_EPSILON,
};
pub use shift::{all_word_shifts, word_shifts, ShiftEntry, ShiftKind};
pub use significance::{
    bonferroni_alpha, significance, top_significant_frames, two_tailed_p, Significance, Statistic,
};
pub use spectrum::{document_spectrum, group_means, SpectrumEntry};
pub use statistics::{baseline_biases, corpus_bias, corpus_intensity};
