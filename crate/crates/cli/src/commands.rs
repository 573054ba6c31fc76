//! One function per subcommand. Each returns the text printed on stdout.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write;
use std::fs;
use std::path::Path;

use microframe::corpus::{
    build_view, read_jsonl, read_word_list, tokenize, CorpusView, Document, Normalizer,
};
use microframe::embedding::{load_embeddings, EmbeddingTable};
use microframe::engine::{
    all_word_shifts, analyze, baseline_biases, bonferroni_alpha, corpus_bias, corpus_intensity,
    document_spectrum, extreme_frames, log_odds_dirichlet_scaled, rank_sum_select, separation,
    top_significant_frames, word_shifts, AnalysisConfig, Highlight, Statistic,
};
use microframe::frames::{
    build_registry, parse_pairs, read_pairs, FrameRegistry, Microframe, PolePair,
};
use microframe::relevance::{
    relevance_embedding, relevance_perplexity, CharNgramModel, PerplexityProvider, RelevanceMethod,
    RelevanceQuery, TablePerplexity, TemplateSet,
};
use serde::Serialize;
use serde_json::json;

use crate::config::{Format, RunConfig};
use crate::error::{CliError, CliResult, StageExt};
use crate::report::{file_stem, num, opt_num, to_json, Outputs, Table};
use crate::svg;

/// The pair list compiled into the binary.
pub const BUILTIN_PAIRS: &str = include_str!("../../../data/antonyms.tsv");

fn normalizer(config: &RunConfig) -> Normalizer {
    Normalizer {
        nfc: true,
        lowercase: config.lowercase,
        strip_punctuation: config.strip_punctuation,
    }
}

fn load_pairs(config: &RunConfig) -> CliResult<Vec<PolePair>> {
    let pairs = match &config.pairs {
        Some(path) => read_pairs(path).stage("pairs")?,
        None => parse_pairs(BUILTIN_PAIRS, Path::new("<built-in>")).stage("pairs")?,
    };
    log::info!("{} antonym pairs", pairs.len());
    Ok(pairs)
}

fn load_documents(config: &RunConfig) -> CliResult<Vec<Document>> {
    let path = config.require_corpus()?;
    log::info!("reading corpus {}", path.display());
    let docs = read_jsonl(path, &normalizer(config)).stage("corpus")?;
    log::info!("{} documents", docs.len());
    Ok(docs)
}

/// Masked words, normalized like document text.
fn load_topic_words(config: &RunConfig) -> CliResult<HashSet<String>> {
    let Some(path) = &config.topic_words else {
        return Ok(HashSet::new());
    };
    let norm = normalizer(config);
    let words: HashSet<String> = read_word_list(path)
        .stage("corpus")?
        .iter()
        .flat_map(|w| tokenize(w, &norm))
        .collect();
    log::info!("masking {} topic words", words.len());
    Ok(words)
}

fn load_table(config: &RunConfig, vocabulary: &HashSet<String>) -> CliResult<EmbeddingTable> {
    let path = config.require_embeddings()?;
    log::info!(
        "loading embeddings {} for {} word types",
        path.display(),
        vocabulary.len()
    );
    let (table, report) = load_embeddings(path, Some(vocabulary)).stage("embeddings")?;
    if report.skipped() > 0 {
        log::warn!(
            "skipped {} vectors ({} zero, {} unparseable)",
            report.skipped(),
            report.zero_vectors,
            report.unparseable
        );
    }
    log::info!("{} vectors of dimension {}", table.len(), table.dimension());
    if table.is_empty() {
        return Err(CliError::data(
            "embeddings",
            format!("no vector in {} matches the words needed", path.display()),
        ));
    }
    Ok(table)
}

fn load_registry(pairs: &[PolePair], table: &EmbeddingTable) -> CliResult<FrameRegistry> {
    let registry = build_registry(pairs, table).stage("frames")?;
    log::info!(
        "{} frames ({} pairs dropped)",
        registry.len(),
        registry.dropped().len()
    );
    if registry.is_empty() {
        return Err(CliError::data(
            "frames",
            "no antonym pair has vectors for both poles",
        ));
    }
    Ok(registry)
}

fn pair_words(pairs: &[PolePair]) -> impl Iterator<Item = String> + '_ {
    pairs.iter().flat_map(|p| [p.minus.clone(), p.plus.clone()])
}

/// Embeddings, frames and the counted corpus.
struct Corpus {
    table: EmbeddingTable,
    registry: FrameRegistry,
    view: CorpusView,
}

fn load_corpus(config: &RunConfig) -> CliResult<Corpus> {
    config.require_embeddings()?;
    let pairs = load_pairs(config)?;
    let docs = load_documents(config)?;
    let masked = load_topic_words(config)?;
    let vocabulary: HashSet<String> = docs
        .iter()
        .flat_map(|d| d.tokens.iter().cloned())
        .chain(pair_words(&pairs))
        .collect();
    let table = load_table(config, &vocabulary)?;
    let registry = load_registry(&pairs, &table)?;
    let view = build_view(docs, &table, &masked).stage("corpus")?;
    log::info!(
        "{} tokens counted, {} masked types, {} types without vectors",
        view.total_tokens(),
        view.masked().len(),
        view.oov().len()
    );
    Ok(Corpus {
        table,
        registry,
        view,
    })
}

/// Documents whose `field` equals `value`.
fn select(
    view: &CorpusView,
    field: &str,
    value: &str,
    stage: &'static str,
) -> CliResult<CorpusView> {
    let sub = view.filter(|d| d.field(field).as_deref() == Some(value));
    if sub.num_documents() == 0 {
        return Err(CliError::data(
            stage,
            format!("no document has {field} = {value:?}"),
        ));
    }
    Ok(sub)
}

fn complement(view: &CorpusView, field: &str, value: &str) -> CorpusView {
    view.filter(|d| d.field(field).as_deref() != Some(value))
}

fn resolve_frame(
    config: &RunConfig,
    registry: &FrameRegistry,
    stage: &'static str,
) -> CliResult<Microframe> {
    let id = config.require("frame", &config.frame)?;
    registry.resolve(id).stage(stage)
}

fn write_json<T: Serialize>(
    out: &mut Outputs,
    config: &RunConfig,
    stem: &str,
    body: &T,
) -> CliResult<()> {
    if config.wants(Format::Json) {
        out.write(&format!("{stem}.json"), &to_json(config, body)?)?;
    }
    Ok(())
}

fn write_tsv(out: &mut Outputs, config: &RunConfig, stem: &str, table: &Table) -> CliResult<()> {
    if config.wants(Format::Tsv) {
        out.write(&format!("{stem}.tsv"), &table.to_tsv(config))?;
    }
    Ok(())
}

fn write_svg(
    out: &mut Outputs,
    config: &RunConfig,
    stem: &str,
    render: impl FnOnce() -> String,
) -> CliResult<()> {
    if config.wants(Format::Svg) {
        out.write(&format!("{stem}.svg"), &render())?;
    }
    Ok(())
}

#[derive(Serialize)]
struct CorpusSummary {
    documents: usize,
    tokens: u64,
    masked_types: usize,
    types_without_vectors: usize,
}

fn summary(view: &CorpusView) -> CorpusSummary {
    CorpusSummary {
        documents: view.num_documents(),
        tokens: view.total_tokens(),
        masked_types: view.masked().len(),
        types_without_vectors: view.oov().len(),
    }
}

pub fn cmd_analyze(config: &RunConfig) -> CliResult<String> {
    let target_group = config.require("target", &config.target)?;
    let mut out = Outputs::create(config)?;
    let c = load_corpus(config)?;
    let target = select(&c.view, &config.group_field, target_group, "analyze")?;
    let results = analyze(
        &target,
        &c.view,
        &c.registry,
        &c.table,
        &AnalysisConfig {
            n_bootstrap: config.n_bootstrap,
            seed: config.seed,
            unit: config.unit,
        },
    )
    .stage("analyze")?;

    let alpha = if config.bonferroni {
        bonferroni_alpha(config.alpha, c.registry.len())
    } else {
        config.alpha
    };
    let top_bias: Vec<&str> =
        top_significant_frames(&results, Statistic::Bias, config.top_m, alpha)
            .into_iter()
            .map(|r| r.frame_id.as_str())
            .collect();
    let top_intensity: Vec<&str> =
        top_significant_frames(&results, Statistic::Intensity, config.top_m, alpha)
            .into_iter()
            .map(|r| r.frame_id.as_str())
            .collect();

    let mut table = Table::new(&[
        "frame_id",
        "pole_minus",
        "pole_plus",
        "bias",
        "intensity",
        "baseline_bias",
        "effect_bias",
        "effect_intensity",
        "p_bias",
        "p_intensity",
        "n_bootstrap",
        "significant_bias",
        "significant_intensity",
    ]);
    let mut rows = Vec::with_capacity(results.len());
    for (r, frame) in results.iter().zip(c.registry.frames()) {
        table.push(vec![
            r.frame_id.clone(),
            frame.pole_minus().into(),
            frame.pole_plus().into(),
            num(r.bias),
            num(r.intensity),
            num(r.baseline_bias),
            num(r.effect_bias),
            num(r.effect_intensity),
            num(r.p_bias),
            num(r.p_intensity),
            r.n_bootstrap.to_string(),
            (r.p_bias <= alpha).to_string(),
            (r.p_intensity <= alpha).to_string(),
        ]);
        rows.push(json!({
            "frame_id": r.frame_id,
            "pole_minus": frame.pole_minus(),
            "pole_plus": frame.pole_plus(),
            "bias": r.bias,
            "intensity": r.intensity,
            "baseline_bias": r.baseline_bias,
            "effect_bias": r.effect_bias,
            "effect_intensity": r.effect_intensity,
            "p_bias": r.p_bias,
            "p_intensity": r.p_intensity,
            "n_bootstrap": r.n_bootstrap,
            "significant_bias": r.p_bias <= alpha,
            "significant_intensity": r.p_intensity <= alpha,
        }));
    }
    let body = json!({
        "corpus": summary(&c.view),
        "target": summary(&target),
        "frames": c.registry.len(),
        "pairs_dropped": c.registry.dropped().len(),
        "alpha_effective": alpha,
        "top_bias": top_bias,
        "top_intensity": top_intensity,
        "results": rows,
    });
    write_json(&mut out, config, "analyze", &body)?;
    write_tsv(&mut out, config, "analyze", &table)?;

    let by_id: HashMap<&str, usize> = results
        .iter()
        .enumerate()
        .map(|(i, r)| (r.frame_id.as_str(), i))
        .collect();
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{} frames, target {:?}: {} documents, {} tokens; alpha {}",
        results.len(),
        target_group,
        target.num_documents(),
        target.total_tokens(),
        alpha
    );
    for (title, ids, stat) in [
        ("intensity", &top_intensity, Statistic::Intensity),
        ("bias", &top_bias, Statistic::Bias),
    ] {
        let _ = writeln!(text, "top {} by {title} effect:", ids.len());
        for id in ids.iter() {
            let r = &results[by_id[id]];
            let (effect, p) = match stat {
                Statistic::Bias => (r.effect_bias, r.p_bias),
                Statistic::Intensity => (r.effect_intensity, r.p_intensity),
            };
            let _ = writeln!(text, "  {id}\teffect {effect:+.6}\tp {p}");
        }
    }
    Ok(text)
}

pub fn cmd_shifts(config: &RunConfig) -> CliResult<String> {
    let target_group = config.require("target", &config.target)?;
    let mut out = Outputs::create(config)?;
    let c = load_corpus(config)?;
    let frame = resolve_frame(config, &c.registry, "shifts")?;
    let target = select(&c.view, &config.group_field, target_group, "shifts")?;
    let background = match &config.background {
        Some(g) => select(&c.view, &config.group_field, g, "shifts")?,
        None => complement(&c.view, &config.group_field, target_group),
    };
    let baseline = corpus_bias(&c.view, &frame, &c.table).stage("shifts")?;
    let kind = config.kind;
    let entries = word_shifts(
        &target,
        &background,
        &frame,
        &c.table,
        kind,
        baseline,
        config.k,
    )
    .stage("shifts")?;
    let all =
        all_word_shifts(&target, &background, &frame, &c.table, kind, baseline).stage("shifts")?;
    let total_target: f64 = all.iter().map(|e| e.shift_target).sum();
    let total_background: f64 = all.iter().map(|e| e.shift_background).sum();

    let mut table = Table::new(&[
        "rank",
        "token",
        "contribution",
        "freq_target",
        "freq_background",
        "shift_target",
        "shift_background",
        "shift_delta",
    ]);
    for (i, e) in entries.iter().enumerate() {
        table.push(vec![
            (i + 1).to_string(),
            e.token.clone(),
            num(e.contribution),
            num(e.freq_target),
            num(e.freq_background),
            num(e.shift_target),
            num(e.shift_background),
            num(e.shift_delta),
        ]);
    }
    let stem = format!("shifts_{}_{kind}", file_stem(frame.id()));
    let body = json!({
        "frame_id": frame.id(),
        "kind": kind,
        "baseline_bias": baseline,
        "target": summary(&target),
        "background": summary(&background),
        "total_target": total_target,
        "total_background": total_background,
        "shifts": entries,
    });
    write_json(&mut out, config, &stem, &body)?;
    write_tsv(&mut out, config, &stem, &table)?;
    write_svg(&mut out, config, &stem, || {
        let bars: Vec<svg::ShiftBar> = entries
            .iter()
            .map(|e| svg::ShiftBar {
                token: &e.token,
                target: e.shift_target,
                background: e.shift_background,
                delta: e.shift_delta,
            })
            .collect();
        svg::shift_diagram(&format!("{kind} shifts on {}", frame.id()), &bars)
    })?;

    let mut text = String::new();
    let _ = writeln!(
        text,
        "{kind} on {}: target {total_target:.6}, background {total_background:.6}",
        frame.id()
    );
    for e in &entries {
        let _ = writeln!(text, "  {}\t{:+.6}", e.token, e.shift_delta);
    }
    Ok(text)
}

fn group_label(g: &str) -> &str {
    if g.is_empty() {
        "(no group)"
    } else {
        g
    }
}

pub fn cmd_spectrum(config: &RunConfig) -> CliResult<String> {
    let mut out = Outputs::create(config)?;
    let c = load_corpus(config)?;
    let frame = resolve_frame(config, &c.registry, "spectrum")?;
    let baseline = corpus_bias(&c.view, &frame, &c.table).stage("spectrum")?;
    let groups: HashMap<&str, Option<String>> = c
        .view
        .documents()
        .map(|d| (d.id.as_str(), d.field(&config.group_field)))
        .collect();
    let mut entries = document_spectrum(&c.view, &frame, &c.table, baseline).stage("spectrum")?;
    for e in &mut entries {
        e.group = groups.get(e.doc_id.as_str()).cloned().flatten();
    }
    let means = microframe::engine::group_means(&entries);

    let mut table = Table::new(&["doc_id", "group", "n_tokens", "doc_bias", "doc_intensity"]);
    for e in &entries {
        table.push(vec![
            e.doc_id.clone(),
            e.group.clone().unwrap_or_default(),
            e.n_tokens.to_string(),
            opt_num(e.doc_bias),
            opt_num(e.doc_intensity),
        ]);
    }
    let stem = format!("spectrum_{}", file_stem(frame.id()));
    let body = json!({
        "frame_id": frame.id(),
        "baseline_bias": baseline,
        "group_means": means,
        "documents": entries,
    });
    write_json(&mut out, config, &stem, &body)?;
    write_tsv(&mut out, config, &stem, &table)?;
    write_svg(&mut out, config, &stem, || {
        let names: BTreeSet<String> = entries
            .iter()
            .map(|e| e.group.clone().unwrap_or_default())
            .collect();
        let strips: Vec<svg::StripGroup> = names
            .iter()
            .enumerate()
            .map(|(i, g)| svg::StripGroup {
                name: group_label(g),
                color: svg::group_color(i),
                values: entries
                    .iter()
                    .filter(|e| e.group.as_deref().unwrap_or("") == g)
                    .filter_map(|e| e.doc_bias)
                    .collect(),
                mean: means.get(g).copied(),
            })
            .collect();
        svg::strip_plot(
            &format!("document bias on {}", frame.id()),
            "document bias",
            &strips,
        )
    })?;

    let mut text = String::new();
    let _ = writeln!(text, "{} documents on {}", entries.len(), frame.id());
    for (g, m) in &means {
        let _ = writeln!(text, "  {}\tmean bias {m:+.6}", group_label(g));
    }
    Ok(text)
}

#[derive(Serialize)]
struct MapUnit {
    unit: String,
    group: String,
    n_documents: usize,
    n_tokens: u64,
    bias: f64,
    intensity: f64,
}

#[derive(Serialize)]
struct ExcludedUnit {
    unit: String,
    n_documents: usize,
    n_tokens: u64,
}

pub fn cmd_map(config: &RunConfig) -> CliResult<String> {
    let by = config.require("by", &config.by)?;
    let mut out = Outputs::create(config)?;
    let c = load_corpus(config)?;
    let frame = resolve_frame(config, &c.registry, "map")?;
    let baseline = corpus_bias(&c.view, &frame, &c.table).stage("map")?;
    let units = c.view.field_values(by);
    if units.is_empty() {
        return Err(CliError::data(
            "map",
            format!("no document has a {by:?} field"),
        ));
    }

    let mut kept = Vec::new();
    let mut excluded = Vec::new();
    for unit in units {
        let sub = c
            .view
            .filter(|d| d.field(by).as_deref() == Some(unit.as_str()));
        if sub.num_documents() < config.min_docs || sub.total_tokens() == 0 {
            excluded.push(ExcludedUnit {
                n_documents: sub.num_documents(),
                n_tokens: sub.total_tokens(),
                unit,
            });
            continue;
        }
        let mut votes: BTreeMap<String, usize> = BTreeMap::new();
        for d in sub.documents() {
            *votes
                .entry(d.field(&config.group_field).unwrap_or_default())
                .or_default() += 1;
        }
        // Most frequent group; ties go to the first in sorted order.
        let group = votes
            .iter()
            .fold(None::<(&String, usize)>, |best, (g, &n)| match best {
                Some((_, b)) if b >= n => best,
                _ => Some((g, n)),
            })
            .map(|(g, _)| g.clone())
            .unwrap_or_default();
        kept.push(MapUnit {
            group,
            n_documents: sub.num_documents(),
            n_tokens: sub.total_tokens(),
            bias: corpus_bias(&sub, &frame, &c.table).stage("map")?,
            intensity: corpus_intensity(&sub, &frame, &c.table, baseline).stage("map")?,
            unit,
        });
    }
    if kept.is_empty() {
        log::warn!("no {by} value has at least {} documents", config.min_docs);
    } else if !excluded.is_empty() {
        log::info!(
            "{} units below {} documents left out",
            excluded.len(),
            config.min_docs
        );
    }

    let mut group_means: BTreeMap<&str, (f64, f64, usize)> = BTreeMap::new();
    for u in &kept {
        let slot = group_means.entry(&u.group).or_default();
        slot.0 += u.bias;
        slot.1 += u.intensity;
        slot.2 += 1;
    }
    let group_means: BTreeMap<&str, (f64, f64)> = group_means
        .into_iter()
        .map(|(g, (b, i, n))| (g, (b / n as f64, i / n as f64)))
        .collect();

    let mut table = Table::new(&[
        "unit",
        "group",
        "n_documents",
        "n_tokens",
        "bias",
        "intensity",
    ]);
    for u in &kept {
        table.push(vec![
            u.unit.clone(),
            u.group.clone(),
            u.n_documents.to_string(),
            u.n_tokens.to_string(),
            num(u.bias),
            num(u.intensity),
        ]);
    }
    let stem = format!("map_{}_{}", file_stem(frame.id()), file_stem(by));
    let body = json!({
        "frame_id": frame.id(),
        "by": by,
        "baseline_bias": baseline,
        "units": kept,
        "excluded": excluded,
        "group_means": group_means
            .iter()
            .map(|(g, (b, i))| (g.to_string(), json!({"bias": b, "intensity": i})))
            .collect::<BTreeMap<_, _>>(),
    });
    write_json(&mut out, config, &stem, &body)?;
    write_tsv(&mut out, config, &stem, &table)?;
    write_svg(&mut out, config, &stem, || {
        let colors: HashMap<&str, &str> = group_means
            .keys()
            .enumerate()
            .map(|(i, g)| (*g, svg::group_color(i)))
            .collect();
        let points: Vec<svg::Point> = kept
            .iter()
            .map(|u| svg::Point {
                x: u.bias,
                y: u.intensity,
                color: colors[u.group.as_str()],
                label: Some(u.unit.clone()),
            })
            .collect();
        let markers: Vec<svg::Marker> = group_means
            .iter()
            .map(|(g, (b, i))| svg::Marker {
                name: group_label(g),
                x: *b,
                y: *i,
                color: colors[g],
            })
            .collect();
        svg::scatter(
            &format!("{by} bias and intensity on {}", frame.id()),
            "bias",
            "intensity",
            &points,
            &markers,
        )
    })?;

    let mut text = String::new();
    let _ = writeln!(
        text,
        "{} units mapped, {} left out",
        kept.len(),
        excluded.len()
    );
    for u in &kept {
        let _ = writeln!(
            text,
            "  {}\t{}\tbias {:+.6}\tintensity {:.6}",
            u.unit, u.group, u.bias, u.intensity
        );
    }
    Ok(text)
}

pub fn cmd_separation(config: &RunConfig) -> CliResult<String> {
    let ga = config.require("group_a", &config.group_a)?;
    let gb = config.require("group_b", &config.group_b)?;
    let mut out = Outputs::create(config)?;
    let c = load_corpus(config)?;
    let a = select(&c.view, &config.group_field, ga, "separation")?;
    let b = select(&c.view, &config.group_field, gb, "separation")?;
    let baseline = baseline_biases(&c.view, &c.registry, &c.table).stage("separation")?;
    let seps = separation(&a, &b, &c.registry, &c.table, &baseline).stage("separation")?;
    let extremes = extreme_frames(&seps, 3);
    let selected = rank_sum_select(&seps, config.top_m);

    let highlight = |h: Highlight| match h {
        Highlight::A => "a",
        Highlight::B => "b",
        Highlight::Balanced => "balanced",
    };
    let mut table = Table::new(&[
        "frame_id",
        "pole_minus",
        "pole_plus",
        "baseline_bias",
        "bias_a",
        "bias_b",
        "intensity_a",
        "intensity_b",
        "delta_bias",
        "delta_intensity",
        "pooled_intensity",
        "rank_bias",
        "rank_intensity",
        "rank_sum",
        "highlight",
        "highlighted_pole",
        "label",
        "extreme",
    ]);
    for s in &seps {
        table.push(vec![
            s.frame_id.clone(),
            s.pole_minus.clone(),
            s.pole_plus.clone(),
            num(s.baseline_bias),
            num(s.bias_a),
            num(s.bias_b),
            num(s.intensity_a),
            num(s.intensity_b),
            num(s.delta_bias),
            num(s.delta_intensity),
            num(s.pooled_intensity),
            s.rank_bias.to_string(),
            s.rank_intensity.to_string(),
            s.rank_sum.to_string(),
            highlight(s.highlight).into(),
            s.highlighted_pole.clone().unwrap_or_default(),
            s.label(),
            extremes.contains(&s.frame_id).to_string(),
        ]);
    }
    let stem = "separation";
    let body = json!({
        "group_a": summary(&a),
        "group_b": summary(&b),
        "selected": selected,
        "extremes": extremes,
        "frames": seps,
    });
    write_json(&mut out, config, stem, &body)?;
    write_tsv(&mut out, config, stem, &table)?;
    write_svg(&mut out, config, stem, || {
        let points: Vec<svg::SeparationPoint> = seps
            .iter()
            .map(|s| svg::SeparationPoint {
                delta_intensity: s.delta_intensity,
                delta_bias: s.delta_bias,
                pole_minus: &s.pole_minus,
                pole_plus: &s.pole_plus,
                highlighted: s.highlighted_pole.as_deref(),
                mark: match s.highlight {
                    Highlight::A => "+",
                    Highlight::B => "-",
                    Highlight::Balanced => "",
                },
                color: match s.highlight {
                    Highlight::A => svg::BLUE,
                    Highlight::B => svg::RED,
                    Highlight::Balanced => svg::GRAY,
                },
                labeled: extremes.contains(&s.frame_id),
            })
            .collect();
        svg::separation_plot(&format!("{ga} vs {gb}"), ga, gb, &points)
    })?;

    let by_id: HashMap<&str, usize> = seps
        .iter()
        .enumerate()
        .map(|(i, s)| (s.frame_id.as_str(), i))
        .collect();
    let mut text = String::new();
    let _ = writeln!(text, "{} frames; smallest rank sums:", seps.len());
    for id in &selected {
        let s = &seps[by_id[id.as_str()]];
        let _ = writeln!(
            text,
            "  {}\tdelta_bias {:+.6}\tdelta_intensity {:+.6}\trank_sum {}",
            s.label(),
            s.delta_bias,
            s.delta_intensity,
            s.rank_sum
        );
    }
    Ok(text)
}

fn read_perplexity_table(path: &Path) -> CliResult<TablePerplexity> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::data("relevance", format!("cannot read {}: {e}", path.display())))?;
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let parsed = line
            .rsplit_once('\t')
            .and_then(|(s, v)| v.trim().parse::<f64>().ok().map(|v| (s.to_string(), v)));
        match parsed {
            Some(entry) => entries.push(entry),
            None => {
                return Err(CliError::data(
                    "relevance",
                    format!(
                        "{}:{}: expected sentence<TAB>perplexity",
                        path.display(),
                        i + 1
                    ),
                ))
            }
        }
    }
    Ok(TablePerplexity::new(entries))
}

pub fn cmd_relevance(config: &RunConfig) -> CliResult<String> {
    config.require_embeddings()?;
    let norm = normalizer(config);
    let raw_topics = if !config.topics.is_empty() {
        config.topics.clone()
    } else if let Some(path) = &config.topic_words {
        read_word_list(path).stage("relevance")?
    } else {
        return Err(CliError::usage(
            "config",
            "relevance needs --topic or --topic-words",
        ));
    };
    let topics: Vec<String> = raw_topics.iter().flat_map(|w| tokenize(w, &norm)).collect();
    let mut out = Outputs::create(config)?;
    let pairs = load_pairs(config)?;
    let vocabulary: HashSet<String> = pair_words(&pairs).chain(topics.iter().cloned()).collect();
    let table = load_table(config, &vocabulary)?;
    let registry = load_registry(&pairs, &table)?;
    let query = RelevanceQuery::new(&topics, &table).stage("relevance")?;
    if !query.dropped().is_empty() {
        log::warn!(
            "topic words without vectors: {}",
            query.dropped().join(", ")
        );
    }

    let scores = match config.method {
        RelevanceMethod::Embedding => {
            relevance_embedding(&query, &registry, &table).stage("relevance")?
        }
        RelevanceMethod::Perplexity => {
            let templates = match &config.templates {
                Some(path) => TemplateSet::read(path).stage("relevance")?,
                None => TemplateSet::default(),
            };
            let provider: Box<dyn PerplexityProvider> = match &config.perplexity_table {
                Some(path) => Box::new(read_perplexity_table(path)?),
                None => {
                    let docs = load_documents(config)?;
                    log::info!(
                        "training a character {}-gram model on the corpus",
                        config.ngram_order
                    );
                    Box::new(
                        CharNgramModel::train(
                            docs.iter().map(|d| d.text.as_str()),
                            config.ngram_order,
                        )
                        .stage("relevance")?,
                    )
                }
            };
            relevance_perplexity(&query, &registry, &templates, provider.as_ref())
                .stage("relevance")?
        }
    };

    let mut tsv = Table::new(&["rank", "frame_id", "pole_minus", "pole_plus", "score"]);
    for (i, s) in scores.iter().enumerate() {
        let frame = registry
            .get(&s.frame_id)
            .expect("scored frame is registered");
        tsv.push(vec![
            (i + 1).to_string(),
            s.frame_id.clone(),
            frame.pole_minus().into(),
            frame.pole_plus().into(),
            num(s.score),
        ]);
    }
    let body = json!({
        "method": config.method,
        "higher_is_better": config.method.higher_is_better(),
        "topic_words": query.topic_words(),
        "dropped_topic_words": query.dropped(),
        "scores": scores,
    });
    write_json(&mut out, config, "relevance", &body)?;
    write_tsv(&mut out, config, "relevance", &tsv)?;

    let mut text = String::new();
    let _ = writeln!(
        text,
        "{} relevance for {}:",
        config.method,
        query.topic_words().join(", ")
    );
    for s in scores.iter().take(config.top_m) {
        let _ = writeln!(text, "  {}\t{}", s.frame_id, num(s.score));
    }
    Ok(text)
}

pub fn cmd_log_odds(config: &RunConfig) -> CliResult<String> {
    let target_group = config.require("target", &config.target)?;
    let mut out = Outputs::create(config)?;
    let c = load_corpus(config)?;
    let target = select(&c.view, &config.group_field, target_group, "log-odds")?;
    let background = match &config.background {
        Some(g) => select(&c.view, &config.group_field, g, "log-odds")?,
        None => complement(&c.view, &config.group_field, target_group),
    };
    let all = log_odds_dirichlet_scaled(
        &target,
        &background,
        &c.view,
        config.prior_scale,
        usize::MAX,
    )
    .stage("log-odds")?;
    let k = config.k.min(all.len());
    let top = &all[..k];
    let bottom: Vec<_> = all.iter().rev().take(k).collect();

    let mut tsv = Table::new(&["side", "rank", "token", "delta", "variance", "z"]);
    for (side, entries) in [
        ("target", top.iter().collect::<Vec<_>>()),
        ("background", bottom.clone()),
    ] {
        for (i, e) in entries.iter().enumerate() {
            tsv.push(vec![
                side.into(),
                (i + 1).to_string(),
                e.token.clone(),
                num(e.delta),
                num(e.variance),
                num(e.z),
            ]);
        }
    }
    let body = json!({
        "target": summary(&target),
        "background": summary(&background),
        "prior_scale": config.prior_scale,
        "target_words": top,
        "background_words": bottom,
    });
    write_json(&mut out, config, "log_odds", &body)?;
    write_tsv(&mut out, config, "log_odds", &tsv)?;

    let mut text = String::new();
    let _ = writeln!(text, "words typical of {target_group:?}:");
    for e in top {
        let _ = writeln!(text, "  {}\tz {:+.4}", e.token, e.z);
    }
    Ok(text)
}

pub fn cmd_frames_build(config: &RunConfig) -> CliResult<String> {
    config.require_embeddings()?;
    let mut out = Outputs::create(config)?;
    let pairs = load_pairs(config)?;
    let vocabulary: HashSet<String> = pair_words(&pairs).collect();
    let table = load_table(config, &vocabulary)?;
    let registry = build_registry(&pairs, &table).stage("frames")?;

    let mut frames = Table::new(&["frame_id", "pole_minus", "pole_plus", "axis_norm"]);
    for f in registry.frames() {
        frames.push(vec![
            f.id().into(),
            f.pole_minus().into(),
            f.pole_plus().into(),
            num(f.axis_norm()),
        ]);
    }
    let mut dropped = Table::new(&["pole_minus", "pole_plus", "reason"]);
    for d in registry.dropped() {
        dropped.push(vec![
            d.pair.minus.clone(),
            d.pair.plus.clone(),
            d.reason.to_string(),
        ]);
    }
    let body = json!({
        "pairs": pairs.len(),
        "kept": registry.len(),
        "dropped_count": registry.dropped().len(),
        "registry": registry.export(),
    });
    write_json(&mut out, config, "frames", &body)?;
    write_tsv(&mut out, config, "frames", &frames)?;
    write_tsv(&mut out, config, "dropped", &dropped)?;
    Ok(format!(
        "{} pairs: {} frames, {} dropped\n",
        pairs.len(),
        registry.len(),
        registry.dropped().len()
    ))
}
