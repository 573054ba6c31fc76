//! Log-odds ratio with an informative Dirichlet prior, the standard
//! frequency-only baseline for "which words are overrepresented in A
//! relative to B".
//!
//! With prior pseudo-counts `a_w = scale * y_w(prior)` and `a0 = sum a_w`:
//!
//! ```text
//! d_w   = ln((y_t + a_w) / (n_t + a0 - y_t - a_w)) - ln((y_b + a_w) / (n_b + a0 - y_b - a_w))
//! var_w = 1 / (y_t + a_w) + 1 / (y_b + a_w)
//! z_w   = d_w / sqrt(var_w)
//! ```

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::corpus::CorpusView;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogOddsEntry {
    pub token: String,
    pub delta: f64,
    pub variance: f64,
    pub z: f64,
}

/// Top `k` tokens by z-score, prior pseudo-counts equal to prior counts.
pub fn log_odds_dirichlet(
    target: &CorpusView,
    background: &CorpusView,
    prior: &CorpusView,
    k: usize,
) -> Result<Vec<LogOddsEntry>> {
    log_odds_dirichlet_scaled(target, background, prior, 1.0, k)
}

/// As [`log_odds_dirichlet`] with `a_w = prior_scale * prior count`.
/// Tokens absent from the prior are skipped.
pub fn log_odds_dirichlet_scaled(
    target: &CorpusView,
    background: &CorpusView,
    prior: &CorpusView,
    prior_scale: f64,
    k: usize,
) -> Result<Vec<LogOddsEntry>> {
    target.ensure_nonempty()?;
    background.ensure_nonempty()?;
    prior.ensure_nonempty()?;
    if !(prior_scale > 0.0 && prior_scale.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "prior scale must be positive, got {prior_scale}"
        )));
    }
    let nt = target.total_tokens() as f64;
    let nb = background.total_tokens() as f64;
    let a0 = prior_scale * prior.total_tokens() as f64;

    let vocab: BTreeSet<&str> = target
        .counts()
        .keys()
        .chain(background.counts().keys())
        .map(String::as_str)
        .filter(|t| prior.count(t) > 0)
        .collect();

    let mut out: Vec<LogOddsEntry> = vocab
        .into_iter()
        .filter_map(|tok| {
            let a = prior_scale * prior.count(tok) as f64;
            let yt = target.count(tok) as f64;
            let yb = background.count(tok) as f64;
            let delta = ((yt + a) / (nt + a0 - yt - a)).ln() - ((yb + a) / (nb + a0 - yb - a)).ln();
            let variance = 1.0 / (yt + a) + 1.0 / (yb + a);
            let z = delta / variance.sqrt();
            z.is_finite().then(|| LogOddsEntry {
                token: tok.to_string(),
                delta,
                variance,
                z,
            })
        })
        .collect();
    out.sort_by(|a, b| b.z.total_cmp(&a.z).then_with(|| a.token.cmp(&b.token)));
    out.truncate(k);
    Ok(out)
}
