#![allow(dead_code)]

use std::collections::HashSet;

use microframe::corpus::{build_view, CorpusView, Document, Normalizer};
use microframe::embedding::EmbeddingTable;
use microframe::frames::{build_registry, FrameRegistry, PolePair};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vector(rng: &mut impl Rng, dim: usize) -> Vec<f32> {
    loop {
        let v: Vec<f32> = (0..dim).map(|_| rng.random_range(-1.0f32..1.0)).collect();
        if v.iter().any(|x| x.abs() > 1e-3) {
            return v;
        }
    }
}

/// A random small problem: table, frames and documents, plus the raw token
/// stream every document contributes.
pub struct Instance {
    pub table: EmbeddingTable,
    pub registry: FrameRegistry,
    pub documents: Vec<Document>,
    pub view: CorpusView,
}

pub fn random_instance(seed: u64) -> Instance {
    let mut r = rng(seed);
    let dim = r.random_range(2..=16);
    let vocab = r.random_range(3..=50);
    let n_frames = r.random_range(1..=6);
    let mut entries: Vec<(String, Vec<f32>)> = (0..vocab)
        .map(|i| (format!("w{i}"), random_vector(&mut r, dim)))
        .collect();
    for i in 0..n_frames {
        entries.push((format!("neg{i}"), random_vector(&mut r, dim)));
        entries.push((format!("pos{i}"), random_vector(&mut r, dim)));
    }
    let table = EmbeddingTable::from_entries(entries).unwrap();
    let pairs: Vec<PolePair> = (0..n_frames)
        .map(|i| PolePair::new(format!("neg{i}"), format!("pos{i}")))
        .collect();
    let registry = build_registry(&pairs, &table).unwrap();

    let n_docs = r.random_range(1..=20);
    let documents: Vec<Document> = (0..n_docs)
        .map(|d| {
            let len = r.random_range(1..=30);
            // Skew toward low indices so counts vary.
            let words: Vec<String> = (0..len)
                .map(|_| {
                    let a = r.random_range(0..vocab);
                    let b = r.random_range(0..vocab);
                    format!("w{}", a.min(b))
                })
                .collect();
            let group = if r.random_bool(0.5) { "a" } else { "b" };
            Document::new(
                format!("doc{d}"),
                words.join(" "),
                Some(group),
                &Normalizer::default(),
            )
        })
        .collect();
    let view = build_view(documents.clone(), &table, &HashSet::new()).unwrap();
    Instance {
        table,
        registry,
        documents,
        view,
    }
}

/// Cosine written out independently of the library.
pub fn oracle_cosine(a: &[f32], b: &[f64]) -> f64 {
    let mut dot = 0.0;
    let mut na = 0.0;
    let mut nb = 0.0;
    for (x, y) in a.iter().zip(b) {
        let x = *x as f64;
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    dot / (na.sqrt() * nb.sqrt())
}

/// Axis recomputed from the pole vectors.
pub fn oracle_axis(table: &EmbeddingTable, minus: &str, plus: &str) -> Vec<f64> {
    let m = table.vector_of(minus).unwrap();
    let p = table.vector_of(plus).unwrap();
    let mut out = Vec::with_capacity(m.len());
    for i in 0..m.len() {
        out.push(p[i] as f64 - m[i] as f64);
    }
    out
}

/// Walks every token occurrence: mean contribution and mean squared
/// deviation from `baseline` (or from the stream's own mean).
pub fn oracle_stream_stats(
    stream: &[&str],
    table: &EmbeddingTable,
    axis: &[f64],
    baseline: Option<f64>,
) -> (f64, f64) {
    let cs: Vec<f64> = stream
        .iter()
        .map(|t| oracle_cosine(table.vector_of(t).unwrap(), axis))
        .collect();
    let bias = cs.iter().sum::<f64>() / cs.len() as f64;
    let base = baseline.unwrap_or(bias);
    let intensity = cs.iter().map(|c| (c - base) * (c - base)).sum::<f64>() / cs.len() as f64;
    (bias, intensity)
}

pub fn stream_of<'a>(docs: impl IntoIterator<Item = &'a Document>) -> Vec<&'a str> {
    docs.into_iter()
        .flat_map(|d| d.tokens.iter().map(String::as_str))
        .collect()
}
