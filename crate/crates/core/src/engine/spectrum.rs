use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::contribution::contribution_of;
use super::statistics::squared_deviation;
use crate::corpus::CorpusView;
use crate::embedding::EmbeddingTable;
use crate::frames::Microframe;
use crate::Result;

/// One document's bias and intensity on a frame. Documents with no counted
/// token carry `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub doc_id: String,
    pub group: Option<String>,
    pub n_tokens: u64,
    pub doc_bias: Option<f64>,
    pub doc_intensity: Option<f64>,
}

/// Per-document bias and intensity, ascending by bias (empty documents
/// last, ties by document id).
pub fn document_spectrum(
    view: &CorpusView,
    frame: &Microframe,
    table: &EmbeddingTable,
    baseline_bias: f64,
) -> Result<Vec<SpectrumEntry>> {
    let mut contributions: HashMap<&str, f64> = HashMap::with_capacity(view.counts().len());
    for tok in view.counts().keys() {
        contributions.insert(tok, contribution_of(tok, frame, table)?);
    }
    let mut out: Vec<SpectrumEntry> = view
        .document_counts()
        .iter()
        .map(|d| {
            let (bias, intensity) = if d.total == 0 {
                (None, None)
            } else {
                let mut b = 0.0;
                let mut i = 0.0;
                for (tok, &n) in &d.counts {
                    let c = contributions[tok.as_str()];
                    b += n as f64 * c;
                    i += n as f64 * squared_deviation(c, baseline_bias);
                }
                (Some(b / d.total as f64), Some(i / d.total as f64))
            };
            SpectrumEntry {
                doc_id: d.document.id.clone(),
                group: d.document.group.clone(),
                n_tokens: d.total,
                doc_bias: bias,
                doc_intensity: intensity,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        let ord = match (a.doc_bias, b.doc_bias) {
            (Some(x), Some(y)) => x.total_cmp(&y),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => std::cmp::Ordering::Equal,
        };
        ord.then_with(|| a.doc_id.cmp(&b.doc_id))
    });
    Ok(out)
}

/// Unweighted mean document bias per group, skipping empty documents.
/// Documents without a group are pooled under the empty string.
pub fn group_means(spectrum: &[SpectrumEntry]) -> BTreeMap<String, f64> {
    let mut acc: BTreeMap<String, (f64, usize)> = BTreeMap::new();
    for e in spectrum {
        if let Some(b) = e.doc_bias {
            let slot = acc.entry(e.group.clone().unwrap_or_default()).or_default();
            slot.0 += b;
            slot.1 += 1;
        }
    }
    acc.into_iter()
        .map(|(g, (sum, n))| (g, sum / n as f64))
        .collect()
}
