#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const VECTORS: &[(&str, [f32; 6])] = &[
    ("tasty", [1.0, 0.0, 0.0, 0.0, 0.0, 0.2]),
    ("bland", [-1.0, 0.0, 0.0, 0.0, 0.0, 0.2]),
    ("loud", [0.0, 1.0, 0.0, 0.0, 0.0, 0.2]),
    ("quiet", [0.0, -1.0, 0.0, 0.0, 0.0, 0.2]),
    ("expensive", [0.0, 0.0, 1.0, 0.8, 0.0, 0.2]),
    ("cheap", [0.0, 0.0, -1.0, 0.8, 0.0, 0.2]),
    ("dull", [0.1, 0.1, 0.1, 0.1, 0.1, 0.1]),
    ("price", [0.0, 0.0, 0.0, 1.0, 0.0, 0.3]),
    ("delicious", [0.8, 0.1, 0.0, 0.0, 0.3, 0.5]),
    ("yummy", [0.7, -0.1, 0.0, 0.0, 0.2, 0.5]),
    ("fresh", [0.5, 0.0, 0.1, 0.0, 0.4, 0.5]),
    ("stale", [-0.7, 0.1, 0.0, 0.0, 0.3, 0.5]),
    ("soggy", [-0.8, 0.0, 0.1, 0.0, 0.2, 0.5]),
    ("greasy", [-0.6, -0.1, 0.0, 0.0, 0.4, 0.5]),
    ("the", [0.01, 0.02, 0.0, 0.0, 1.0, 0.1]),
    ("food", [0.05, 0.0, 0.0, 0.1, 0.9, 0.6]),
    ("was", [0.0, 0.03, 0.02, 0.0, 1.0, 0.2]),
    ("place", [-0.02, 0.05, 0.0, 0.0, 0.8, 0.4]),
    ("service", [0.0, 0.1, 0.05, 0.1, 0.7, 0.5]),
];

pub const PAIRS: &str =
    "# minus\tplus\nbland\ttasty\nquiet\tloud\ncheap\texpensive\nmissingword\ttasty\ndull\tdull\n";

pub const POSITIVE: &[&str] = &["delicious", "yummy", "fresh"];
pub const NEGATIVE: &[&str] = &["stale", "soggy", "greasy"];
pub const NEUTRAL: &[&str] = &["the", "food", "was", "place", "service"];

pub struct Fixture {
    pub dir: tempfile::TempDir,
    pub embeddings: PathBuf,
    pub pairs: PathBuf,
    pub corpus: PathBuf,
}

fn doc_line(id: &str, text: &str, group: &str, outlet: &str) -> String {
    serde_json::json!({"id": id, "text": text, "group": group, "meta": {"outlet": outlet}})
        .to_string()
}

/// 40 reviews: `pos` (outlets o1, o2) use words near `tasty`, `neg`
/// (outlets o3, o4) words near `bland`.
pub fn fixture() -> Fixture {
    let dir = tempfile::tempdir().unwrap();
    let embeddings = dir.path().join("vectors.txt");
    let mut vec_text = format!("{} 6\n", VECTORS.len());
    for (w, v) in VECTORS {
        let comps: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        vec_text.push_str(&format!("{w} {}\n", comps.join(" ")));
    }
    fs::write(&embeddings, vec_text).unwrap();
    let pairs = dir.path().join("pairs.tsv");
    fs::write(&pairs, PAIRS).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut lines = Vec::new();
    for i in 0..40 {
        let (group, words, outlet) = if i < 20 {
            ("pos", POSITIVE, if i < 10 { "o1" } else { "o2" })
        } else {
            ("neg", NEGATIVE, if i < 30 { "o3" } else { "o4" })
        };
        let mut toks: Vec<String> = Vec::new();
        for _ in 0..6 {
            toks.push(NEUTRAL.choose(&mut rng).unwrap().to_string());
        }
        for _ in 0..3 {
            toks.push(words.choose(&mut rng).unwrap().to_string());
        }
        toks[0] = capitalize(&toks[0]);
        let text = format!("{}!", toks.join(" "));
        lines.push(doc_line(&format!("d{i:02}"), &text, group, outlet));
    }
    let corpus = dir.path().join("corpus.jsonl");
    fs::write(&corpus, lines.join("\n") + "\n").unwrap();
    Fixture {
        dir,
        embeddings,
        pairs,
        corpus,
    }
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_uppercase().collect::<String>() + c.as_str(),
        None => String::new(),
    }
}

impl Fixture {
    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    /// Common input flags followed by `extra`.
    pub fn args<'a>(&'a self, extra: &[&'a str]) -> Vec<String> {
        let mut v: Vec<String> = vec![
            "--embeddings".into(),
            self.embeddings.to_string_lossy().into(),
            "--pairs".into(),
            self.pairs.to_string_lossy().into(),
            "--corpus".into(),
            self.corpus.to_string_lossy().into(),
        ];
        v.extend(extra.iter().map(|s| s.to_string()));
        v
    }
}

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn microframe(args: &[String]) -> Output {
    microframe_env(args, &[])
}

pub fn microframe_env(args: &[String], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_microframe"));
    cmd.args(args)
        .env_remove("MICROFRAME_EMBEDDINGS")
        .env_remove("MICROFRAME_LOG");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    Output {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

/// Header and rows of a report TSV, skipping `#` lines.
pub fn read_tsv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<String> = lines
        .next()
        .unwrap()
        .split('\t')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| l.split('\t').map(str::to_string).collect())
        .collect();
    (header, rows)
}

pub fn column(header: &[String], name: &str) -> usize {
    header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("no column {name}"))
}

pub fn vector(word: &str) -> Vec<f64> {
    VECTORS
        .iter()
        .find(|(w, _)| *w == word)
        .map(|(_, v)| v.iter().map(|&x| x as f64).collect())
        .unwrap()
}

pub fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    dot / (na * nb)
}
