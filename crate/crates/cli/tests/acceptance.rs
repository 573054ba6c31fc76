//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Criteria that need external data read it from the environment:
//! `MICROFRAME_VOCAB_SNAPSHOT` (one token per line, or an embedding file),
//! `MICROFRAME_EMBEDDINGS` (the 300d GloVe 840B vectors) and
//! `MICROFRAME_SEMEVAL` (JSONL reviews with `group` pos/neg and
//! `meta.aspect`).
//!
//! A criterion that cannot run without external data prints FAIL with a
//! BLOCKED note but does not change the exit status; any other FAIL does.

use std::collections::{BTreeSet, HashSet};
use std::fs;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use microframe::corpus::{build_view, read_jsonl, CorpusView, Document, Normalizer};
use microframe::embedding::{load_embeddings, EmbeddingTable};
use microframe::engine::{
    all_word_shifts, analyze, baseline_biases, corpus_bias, corpus_intensity, separation,
    word_contribution, AnalysisConfig, ResampleUnit, ShiftKind,
};
use microframe::frames::{build_registry, read_pairs, FrameRegistry, Microframe, PolePair};
use microframe::relevance::{relevance_embedding, RelevanceQuery};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

enum Outcome {
    Pass(String),
    Fail(String),
    /// Red because required external data is absent, not because a check ran.
    Blocked(String),
    Skip(String),
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn uniform_vector(r: &mut ChaCha8Rng, dim: usize) -> Vec<f32> {
    loop {
        let v: Vec<f32> = (0..dim).map(|_| r.random_range(-1.0f32..1.0)).collect();
        if v.iter().any(|x| *x != 0.0) {
            return v;
        }
    }
}

/// Components on the grid k/256, so scaling by 0.5 or 3 stays exact in f32.
fn grid_vector(r: &mut ChaCha8Rng, dim: usize) -> Vec<f32> {
    loop {
        let v: Vec<f32> = (0..dim)
            .map(|_| r.random_range(-256i32..=256) as f32 / 256.0)
            .collect();
        if v.iter().any(|x| *x != 0.0) {
            return v;
        }
    }
}

fn docs_from(texts: Vec<(String, Option<&str>)>) -> Vec<Document> {
    texts
        .into_iter()
        .enumerate()
        .map(|(i, (t, g))| Document::new(format!("doc{i:04}"), t, g, &Normalizer::verbatim()))
        .collect()
}

struct Instance {
    table: EmbeddingTable,
    registry: FrameRegistry,
    full: CorpusView,
    target: CorpusView,
    background: CorpusView,
}

/// vocab <= 50, dims <= 16, docs <= 20.
fn small_instance(seed: u64) -> Instance {
    let mut r = rng(seed);
    loop {
        let dim = r.random_range(1..=16);
        let vocab = r.random_range(2..=50);
        let words: Vec<String> = (0..vocab).map(|i| format!("w{i}")).collect();
        let table = EmbeddingTable::from_entries(
            words
                .iter()
                .map(|w| (w.clone(), grid_vector(&mut r, dim)))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let n_pairs = r.random_range(1..=6);
        let pairs: Vec<PolePair> = (0..n_pairs)
            .map(|_| {
                let a = r.random_range(0..vocab);
                let b = r.random_range(0..vocab);
                PolePair::new(words[a].clone(), words[b].clone())
            })
            .collect();
        let registry = match build_registry(&pairs, &table) {
            Ok(reg) if !reg.is_empty() => reg,
            _ => continue,
        };
        let n_docs = r.random_range(1..=20);
        let texts: Vec<(String, Option<&str>)> = (0..n_docs)
            .map(|_| {
                let len = r.random_range(0..=25);
                let t: Vec<&str> = (0..len)
                    .map(|_| words.choose(&mut r).unwrap().as_str())
                    .collect();
                (
                    t.join(" "),
                    Some(if r.random_bool(0.5) { "t" } else { "b" }),
                )
            })
            .collect();
        let Ok(full) = build_view(docs_from(texts), &table, &HashSet::new()) else {
            continue;
        };
        let target = full.filter(|d| d.group.as_deref() == Some("t"));
        let background = full.filter(|d| d.group.as_deref() == Some("b"));
        if target.is_empty() || background.is_empty() {
            continue;
        }
        return Instance {
            table,
            registry,
            full,
            target,
            background,
        };
    }
}

/// Mean contribution and second moment about `baseline`, walking every
/// token occurrence of every document.
fn stream_oracle(
    view: &CorpusView,
    table: &EmbeddingTable,
    minus: &str,
    plus: &str,
    baseline: Option<f64>,
) -> (f64, f64) {
    let m = table.vector_of(minus).unwrap();
    let p = table.vector_of(plus).unwrap();
    let axis: Vec<f64> = p
        .iter()
        .zip(m)
        .map(|(a, b)| *a as f64 - *b as f64)
        .collect();
    let an = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut cs = Vec::new();
    for d in view.documents() {
        for t in &d.tokens {
            let v = table.vector_of(t).unwrap();
            let dot: f64 = v.iter().zip(&axis).map(|(a, b)| *a as f64 * b).sum();
            let vn = v.iter().map(|x| (*x as f64).powi(2)).sum::<f64>().sqrt();
            cs.push(dot / (vn * an));
        }
    }
    let b = cs.iter().sum::<f64>() / cs.len() as f64;
    let base = baseline.unwrap_or(b);
    let i = cs.iter().map(|c| (c - base).powi(2)).sum::<f64>() / cs.len() as f64;
    (b, i)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for seed in 0..100 {
        let inst = small_instance(seed);
        for frame in inst.registry.frames() {
            let base = corpus_bias(&inst.full, frame, &inst.table).unwrap();
            let (ob, oi) = stream_oracle(
                &inst.full,
                &inst.table,
                frame.pole_minus(),
                frame.pole_plus(),
                None,
            );
            worst = worst.max((base - ob).abs());
            worst = worst
                .max((corpus_intensity(&inst.full, frame, &inst.table, base).unwrap() - oi).abs());
            let tb = corpus_bias(&inst.target, frame, &inst.table).unwrap();
            let (ob, oi) = stream_oracle(
                &inst.target,
                &inst.table,
                frame.pole_minus(),
                frame.pole_plus(),
                Some(base),
            );
            worst = worst.max((tb - ob).abs());
            worst = worst.max(
                (corpus_intensity(&inst.target, frame, &inst.table, base).unwrap() - oi).abs(),
            );
        }
    }
    let elapsed = start.elapsed();
    check(
        worst <= 1e-12 && elapsed < Duration::from_secs(5),
        format!(
            "max |error| {worst:.3e} over 100 instances in {}",
            secs(elapsed)
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for seed in 0..100 {
        let inst = small_instance(seed);
        for frame in inst.registry.frames() {
            let base = corpus_bias(&inst.full, frame, &inst.table).unwrap();
            for kind in [ShiftKind::Bias, ShiftKind::Intensity] {
                let shifts = all_word_shifts(
                    &inst.target,
                    &inst.background,
                    frame,
                    &inst.table,
                    kind,
                    base,
                )
                .unwrap();
                let (t, b) = match kind {
                    ShiftKind::Bias => (
                        corpus_bias(&inst.target, frame, &inst.table).unwrap(),
                        corpus_bias(&inst.background, frame, &inst.table).unwrap(),
                    ),
                    ShiftKind::Intensity => (
                        corpus_intensity(&inst.target, frame, &inst.table, base).unwrap(),
                        corpus_intensity(&inst.background, frame, &inst.table, base).unwrap(),
                    ),
                };
                let st: f64 = shifts.iter().map(|s| s.shift_target).sum();
                let sb: f64 = shifts.iter().map(|s| s.shift_background).sum();
                let sd: f64 = shifts.iter().map(|s| s.shift_delta).sum();
                worst = worst
                    .max((st - t).abs())
                    .max((sb - b).abs())
                    .max((sd - (t - b)).abs());
                checked += 1;
            }
        }
    }
    check(
        worst <= 1e-12,
        format!("max |sum of shifts - statistic| {worst:.3e} over {checked} cases"),
    )
}

fn criterion_3() -> Outcome {
    let mut flip_ok = true;
    let mut worst_scale: f64 = 0.0;
    for seed in 0..100 {
        let inst = small_instance(seed);
        let flipped_pairs: Vec<PolePair> = inst
            .registry
            .frames()
            .iter()
            .map(|f| f.pair().flipped())
            .collect();
        let flipped = build_registry(&flipped_pairs, &inst.table).unwrap();
        for (f, g) in inst.registry.frames().iter().zip(flipped.frames()) {
            let b = corpus_bias(&inst.target, f, &inst.table).unwrap();
            let bg = corpus_bias(&inst.target, g, &inst.table).unwrap();
            let base = corpus_bias(&inst.full, f, &inst.table).unwrap();
            let base_g = corpus_bias(&inst.full, g, &inst.table).unwrap();
            let i = corpus_intensity(&inst.target, f, &inst.table, base).unwrap();
            let ig = corpus_intensity(&inst.target, g, &inst.table, base_g).unwrap();
            flip_ok &= bg == -b && ig == i;

            for lambda in [0.5f32, 3.0] {
                let scaled_axis: Vec<f64> = f.axis().iter().map(|x| x * lambda as f64).collect();
                let g = Microframe::from_axis(f.pair(), scaled_axis).unwrap();
                for tok in inst.table.tokens() {
                    let v = inst.table.vector_of(tok).unwrap();
                    let sv: Vec<f32> = v.iter().map(|x| x * lambda).collect();
                    let c = word_contribution(v, f).unwrap();
                    worst_scale = worst_scale
                        .max((word_contribution(&sv, f).unwrap() - c).abs())
                        .max((word_contribution(v, &g).unwrap() - c).abs());
                }
            }
        }
    }
    check(
        flip_ok && worst_scale <= 1e-12,
        format!("flip exact: {flip_ok}; max contribution change under scaling {worst_scale:.3e}"),
    )
}

fn zipf_index(r: &mut ChaCha8Rng, n: usize) -> usize {
    let u: f64 = r.random();
    ((u * u * u) * n as f64) as usize
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut r = rng(4);
    let vocab = 300;
    let words: Vec<String> = (0..vocab).map(|i| format!("w{i}")).collect();
    let mut entries: Vec<(String, Vec<f32>)> = words
        .iter()
        .map(|w| (w.clone(), uniform_vector(&mut r, 16)))
        .collect();
    entries.push(("minus".into(), uniform_vector(&mut r, 16)));
    entries.push(("plus".into(), uniform_vector(&mut r, 16)));
    let table = EmbeddingTable::from_entries(entries).unwrap();
    let registry = build_registry(&[PolePair::new("minus", "plus")], &table).unwrap();
    let stream: Vec<&str> = (0..20_000)
        .map(|_| words[zipf_index(&mut r, vocab)].as_str())
        .collect();
    let texts: Vec<(String, Option<&str>)> =
        stream.chunks(400).map(|c| (c.join(" "), None)).collect();
    let full = build_view(docs_from(texts), &table, &HashSet::new()).unwrap();

    let trials = 1000;
    let mut rejections = 0;
    for trial in 0..trials {
        let mut tr = rng(1_000_000 + trial);
        let sample: Vec<&str> = (0..1000)
            .map(|_| *stream.choose(&mut tr).unwrap())
            .collect();
        let target = build_view(
            docs_from(vec![(sample.join(" "), None)]),
            &table,
            &HashSet::new(),
        )
        .unwrap();
        let config = AnalysisConfig {
            n_bootstrap: 1000,
            seed: trial,
            unit: ResampleUnit::Token,
        };
        let res = analyze(&target, &full, &registry, &table, &config).unwrap();
        if res[0].p_bias <= 0.05 {
            rejections += 1;
        }
    }
    let rate = rejections as f64 / trials as f64;
    let elapsed = start.elapsed();
    check(
        (0.03..=0.07).contains(&rate) && elapsed < Duration::from_secs(120),
        format!(
            "p_bias <= 0.05 in {rejections}/{trials} trials ({rate:.3}) in {}",
            secs(elapsed)
        ),
    )
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn criterion_5() -> Outcome {
    let pairs = read_pairs(data_dir().join("antonyms.tsv")).unwrap();
    let n_pairs = pairs.len();
    if n_pairs != 1828 {
        return Outcome::Fail(format!("pair list has {n_pairs} pairs, expected 1828"));
    }
    let poles: HashSet<String> = pairs
        .iter()
        .flat_map(|p| [p.minus.clone(), p.plus.clone()])
        .collect();
    let table = if let Ok(path) = std::env::var("MICROFRAME_VOCAB_SNAPSHOT") {
        let text = fs::read_to_string(&path).unwrap();
        let vocab: BTreeSet<&str> = text
            .lines()
            .filter_map(|l| l.split_whitespace().next())
            .filter(|t| poles.contains(*t))
            .collect();
        let mut r = rng(5);
        EmbeddingTable::from_entries(
            vocab
                .into_iter()
                .map(|t| (t.to_string(), uniform_vector(&mut r, 8)))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    } else if let Ok(path) = std::env::var("MICROFRAME_EMBEDDINGS") {
        load_embeddings(path, Some(&poles)).unwrap().0
    } else {
        return Outcome::Blocked(format!(
            "{n_pairs} pairs ok, but the frame count needs the GloVe 840B vocabulary \
             (set MICROFRAME_VOCAB_SNAPSHOT or MICROFRAME_EMBEDDINGS)"
        ));
    };
    let registry = build_registry(&pairs, &table).unwrap();
    check(
        registry.len() == 1621 && registry.dropped().len() == 207,
        format!(
            "{n_pairs} pairs -> {} frames, {} dropped",
            registry.len(),
            registry.dropped().len()
        ),
    )
}

/// One planted separating axis and 30 random decoy frames.
fn planted_rank(seed: u64) -> usize {
    let dim = 50;
    let mut r = rng(seed);
    let mut entries: Vec<(String, Vec<f32>)> = Vec::new();
    let pm = uniform_vector(&mut r, dim);
    let pp = uniform_vector(&mut r, dim);
    let u: Vec<f32> = pp.iter().zip(&pm).map(|(a, b)| a - b).collect();
    let un = u.iter().map(|x| x * x).sum::<f32>().sqrt();
    entries.push(("planted_minus".into(), pm));
    entries.push(("planted_plus".into(), pp));
    let mut pairs = vec![PolePair::new("planted_minus", "planted_plus")];
    for i in 0..30 {
        entries.push((format!("decoy{i}_minus"), uniform_vector(&mut r, dim)));
        entries.push((format!("decoy{i}_plus"), uniform_vector(&mut r, dim)));
        pairs.push(PolePair::new(
            format!("decoy{i}_minus"),
            format!("decoy{i}_plus"),
        ));
    }
    let shift = 1.0f32;
    for (prefix, sign) in [("a", 1.0f32), ("b", -1.0), ("s", 0.0)] {
        for i in 0..30 {
            let base = uniform_vector(&mut r, dim);
            let v: Vec<f32> = base
                .iter()
                .zip(&u)
                .map(|(x, d)| x + sign * shift * d / un)
                .collect();
            entries.push((format!("{prefix}{i}"), v));
        }
    }
    let table = EmbeddingTable::from_entries(entries).unwrap();
    let registry = build_registry(&pairs, &table).unwrap();
    let mut texts = Vec::new();
    for (group, own) in [("A", "a"), ("B", "b")] {
        for _ in 0..20 {
            let toks: Vec<String> = (0..40)
                .map(|_| {
                    let prefix = if r.random_bool(0.5) { own } else { "s" };
                    format!("{prefix}{}", r.random_range(0..30))
                })
                .collect();
            texts.push((toks.join(" "), Some(group)));
        }
    }
    let full = build_view(docs_from(texts), &table, &HashSet::new()).unwrap();
    let a = full.filter(|d| d.group.as_deref() == Some("A"));
    let b = full.filter(|d| d.group.as_deref() == Some("B"));
    let baseline = baseline_biases(&full, &registry, &table).unwrap();
    let seps = separation(&a, &b, &registry, &table, &baseline).unwrap();
    seps.iter()
        .find(|s| s.frame_id == "planted_minus--planted_plus")
        .unwrap()
        .rank_bias
}

fn criterion_6() -> Outcome {
    let first = (0..100).filter(|&s| planted_rank(6_000 + s) == 1).count();
    check(
        first >= 95,
        format!("planted frame ranked first by |delta_bias| in {first}/100 constructions"),
    )
}

fn criterion_7() -> Outcome {
    let Ok(path) = std::env::var("MICROFRAME_EMBEDDINGS") else {
        return Outcome::Skip(
            "needs the pretrained GloVe 840B vectors (set MICROFRAME_EMBEDDINGS)".into(),
        );
    };
    let pairs = read_pairs(data_dir().join("antonyms.tsv")).unwrap();
    let mut needed: HashSet<String> = pairs
        .iter()
        .flat_map(|p| [p.minus.clone(), p.plus.clone()])
        .collect();
    needed.extend(["food", "price"].map(String::from));
    let semeval = std::env::var("MICROFRAME_SEMEVAL").ok();
    let reviews = semeval
        .as_ref()
        .map(|p| read_jsonl(p, &Normalizer::default()).unwrap());
    if let Some(docs) = &reviews {
        needed.extend(docs.iter().flat_map(|d| d.tokens.iter().cloned()));
    }
    let table = load_embeddings(path, Some(&needed)).unwrap().0;
    let registry = build_registry(&pairs, &table).unwrap();
    let food = RelevanceQuery::new(["food"], &table).unwrap();
    let savory = registry.subset(
        &["unsavory--savory", "savory--unsavory"]
            .into_iter()
            .collect(),
    );
    let s = &relevance_embedding(&food, &savory, &table).unwrap()[0];
    let detail = &s.details[0];
    let (c_plus, c_minus) = if s.frame_id == "unsavory--savory" {
        (detail.pole_plus, detail.pole_minus)
    } else {
        (detail.pole_minus, detail.pole_plus)
    };
    let price = RelevanceQuery::new(["price"], &table).unwrap();
    let ranked = relevance_embedding(&price, &registry, &table).unwrap();
    let top3: Vec<&str> = ranked.iter().take(3).map(|r| r.frame_id.as_str()).collect();
    let mut ok = (c_plus - 0.4321).abs() <= 0.0005
        && (c_minus - 0.1561).abs() <= 0.0005
        && top3.contains(&"cheap--expensive");
    let mut detail = format!(
        "cos(food, savory) {c_plus:.4}, cos(food, unsavory) {c_minus:.4}, price top 3 {top3:?}"
    );

    if let Some(docs) = reviews {
        let full = build_view(docs, &table, &HashSet::new()).unwrap();
        let aspects = full.field_values("aspect");
        let baseline = baseline_biases(&full, &registry, &table).unwrap();
        for aspect in aspects {
            let pick = |g: &str| {
                full.filter(|d| {
                    d.field("aspect").as_deref() == Some(aspect.as_str())
                        && d.group.as_deref() == Some(g)
                })
            };
            let seps =
                separation(&pick("pos"), &pick("neg"), &registry, &table, &baseline).unwrap();
            let mut mags: Vec<f64> = seps.iter().map(|s| s.delta_bias.abs()).collect();
            mags.sort_by(f64::total_cmp);
            let p99 = mags[((mags.len() as f64 * 0.99).ceil() as usize).min(mags.len()) - 1];
            let bad_good = seps
                .iter()
                .find(|s| s.frame_id == "bad--good")
                .unwrap()
                .delta_bias
                .abs();
            ok &= bad_good > p99 || bad_good == mags[mags.len() - 1];
            detail.push_str(&format!(
                "; {aspect}: |bad-good| {bad_good:.4} vs p99 {p99:.4}"
            ));
        }
    }
    check(ok, detail)
}

fn write_synthetic_inputs(dir: &std::path::Path) {
    let mut r = rng(8);
    let dim = 24;
    let words: Vec<String> = (0..400).map(|i| format!("w{i}")).collect();
    let mut vectors = String::new();
    for w in &words {
        let v: Vec<String> = uniform_vector(&mut r, dim)
            .iter()
            .map(|x| x.to_string())
            .collect();
        vectors.push_str(&format!("{w} {}\n", v.join(" ")));
    }
    fs::write(dir.join("vectors.txt"), vectors).unwrap();
    let pairs: Vec<String> = (0..60)
        .map(|i| format!("w{}\tw{}", 2 * i, 2 * i + 1))
        .collect();
    fs::write(dir.join("pairs.tsv"), pairs.join("\n") + "\n").unwrap();
    let mut corpus = String::new();
    for d in 0..60 {
        let toks: Vec<&str> = (0..120)
            .map(|_| words[zipf_index(&mut r, words.len())].as_str())
            .collect();
        let group = if d % 3 == 0 { "target" } else { "rest" };
        corpus.push_str(
            &serde_json::json!({"id": format!("d{d}"), "text": toks.join(" "), "group": group})
                .to_string(),
        );
        corpus.push('\n');
    }
    fs::write(dir.join("corpus.jsonl"), corpus).unwrap();
}

fn criterion_8() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    write_synthetic_inputs(dir.path());
    let mut reports = Vec::new();
    for (run, threads) in ["1", "1", "2", "4"].into_iter().enumerate() {
        let out = dir.path().join(format!("out{run}"));
        let status = Command::new(env!("CARGO_BIN_EXE_microframe"))
            .current_dir(dir.path())
            .args([
                "analyze",
                "--embeddings",
                "vectors.txt",
                "--pairs",
                "pairs.tsv",
                "--corpus",
                "corpus.jsonl",
                "--target",
                "target",
                "--seed",
                "8",
                "--threads",
                threads,
                "--quiet",
                "--out-dir",
            ])
            .arg(&out)
            .env_remove("MICROFRAME_EMBEDDINGS")
            .output()
            .unwrap();
        if !status.status.success() {
            return Outcome::Fail(format!(
                "run failed: {}",
                String::from_utf8_lossy(&status.stderr)
            ));
        }
        reports.push((
            fs::read(out.join("analyze.json")).unwrap(),
            fs::read(out.join("analyze.tsv")).unwrap(),
        ));
    }
    let same = reports.windows(2).all(|w| w[0] == w[1]);
    check(
        same,
        format!(
            "{} analyze runs with 1, 1, 2 and 4 threads byte-identical: {same}",
            reports.len()
        ),
    )
}

fn criterion_9() -> Outcome {
    let dim = 300;
    let mut r = rng(9);
    let n_frames = 1621;
    let n_words = 12_000;
    let mut entries: Vec<(String, Vec<f32>)> = Vec::with_capacity(n_words + 2 * n_frames);
    let words: Vec<String> = (0..n_words).map(|i| format!("w{i}")).collect();
    for w in &words {
        entries.push((w.clone(), uniform_vector(&mut r, dim)));
    }
    let mut pairs = Vec::with_capacity(n_frames);
    for i in 0..n_frames {
        entries.push((format!("m{i}"), uniform_vector(&mut r, dim)));
        entries.push((format!("p{i}"), uniform_vector(&mut r, dim)));
        pairs.push(PolePair::new(format!("m{i}"), format!("p{i}")));
    }
    let table = EmbeddingTable::from_entries(entries).unwrap();
    let texts: Vec<(String, Option<&str>)> = (0..500)
        .map(|d| {
            let toks: Vec<&str> = (0..200)
                .map(|_| words[zipf_index(&mut r, n_words)].as_str())
                .collect();
            (toks.join(" "), Some(if d % 2 == 0 { "t" } else { "b" }))
        })
        .collect();
    let docs = docs_from(texts);

    let start = Instant::now();
    let registry = build_registry(&pairs, &table).unwrap();
    let full = build_view(docs, &table, &HashSet::new()).unwrap();
    let target = full.filter(|d| d.group.as_deref() == Some("t"));
    let results = analyze(
        &target,
        &full,
        &registry,
        &table,
        &AnalysisConfig::default(),
    )
    .unwrap();
    let elapsed = start.elapsed();
    check(
        results.len() == n_frames && elapsed < Duration::from_secs(600),
        format!(
            "{} frames x {} tokens x N=1000 on {} threads in {}",
            results.len(),
            full.total_tokens(),
            rayon::current_num_threads(),
            secs(elapsed)
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("oracle equivalence", criterion_1),
        ("shift conservation", criterion_2),
        ("antisymmetry and scale invariance", criterion_3),
        ("null calibration", criterion_4),
        ("registry filtering", criterion_5),
        ("planted-frame recovery", criterion_6),
        ("pretrained-vector spot checks", criterion_7),
        ("determinism", criterion_8),
        ("desk-scale throughput", criterion_9),
    ];
    let only: Option<usize> = std::env::args().nth(1).and_then(|a| a.parse().ok());
    let mut failed = 0;
    let mut blocked = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if only.is_some_and(|n| n != i + 1) {
            continue;
        }
        let (status, detail) = match run() {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Outcome::Blocked(d) => {
                blocked += 1;
                ("FAIL", format!("BLOCKED: {d}"))
            }
            Outcome::Skip(d) => ("SKIP", d),
        };
        println!("criterion {} {status} {name}: {detail}", i + 1);
    }
    if blocked > 0 {
        println!("{blocked} criterion(s) red for missing external data");
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
