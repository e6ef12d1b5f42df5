use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::Context;
use log::{info, warn};
use rayon::prelude::*;
use serde::Serialize;

use senticite::classify::{load_model, save_model, Algorithm, Label, LinearModel, Task};
use senticite::citation::DiagnosticKind;
use senticite::eval::tables::{comparison_table, crossval_table, per_class_table, sweep_table, ComparisonRow};
use senticite::eval::{
    bundled_corpus, canonical_order, cross_validate, evaluate as score, half_split, load_corpus,
    predict_all, stratified_split, sweep_test_documents, sweep_train_size, to_examples, train_model,
    AnnotatedCorpus, EvalReport, ExperimentConfig,
};
use senticite::fusion::{fuse, parse_policy, FusionPolicy};
use senticite::ingest::RawDocument;
use senticite::report::{write_report, Analyzer};
use senticite::resources::Resources;

use crate::config::Settings;
use crate::{AlgChoice, SweepMode, UsageError};

pub struct Output {
    pub json: bool,
}

impl Output {
    /// Prints `text` for people, or `value` as one JSON document.
    fn emit<T: Serialize>(&self, text: &str, value: &T) -> anyhow::Result<()> {
        if self.json {
            println!("{}", serde_json::to_string(value)?);
        } else {
            print!("{text}");
        }
        Ok(())
    }
}

fn algorithms(choice: AlgChoice) -> Vec<Algorithm> {
    match choice {
        AlgChoice::Svm => vec![Algorithm::Svm],
        AlgChoice::Paum => vec![Algorithm::Paum],
        AlgChoice::Both => vec![Algorithm::Svm, Algorithm::Paum],
    }
}

fn require_file(path: &Path, what: &str) -> Result<(), UsageError> {
    if path.is_file() {
        Ok(())
    } else {
        Err(UsageError(format!("{what} {} does not exist", path.display())))
    }
}

fn resources() -> anyhow::Result<Resources> {
    Resources::from_env().context("loading lexical resources")
}

/// The corpus at `path`, or the bundled corpus of the selected task.
fn corpus(settings: &Settings, path: Option<&Path>) -> anyhow::Result<AnnotatedCorpus> {
    let corpus = match path {
        Some(p) => {
            require_file(p, "corpus")?;
            load_corpus(p)?
        }
        None => {
            let task = settings
                .task
                .ok_or_else(|| UsageError("--task is required without --corpus".into()))?;
            bundled_corpus(task)
        }
    };
    if let Some(t) = settings.task {
        if t != corpus.task {
            return Err(UsageError(format!("task mismatch: --task {t} but corpus `{}` is {}", corpus.name, corpus.task)).into());
        }
    }
    Ok(corpus)
}

fn policy(settings: &Settings, task: Task) -> anyhow::Result<FusionPolicy> {
    let Some(path) = &settings.policy else {
        return Ok(FusionPolicy::bundled(task));
    };
    require_file(path, "policy")?;
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let p = parse_policy(&text).with_context(|| format!("policy {}", path.display()))?;
    if p.task() != task {
        return Err(UsageError(format!("policy {} covers {} labels, expected {task}", path.display(), p.task())).into());
    }
    Ok(p)
}

fn read_model(path: &Path) -> anyhow::Result<LinearModel> {
    require_file(path, "model")?;
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    load_model(&bytes).with_context(|| format!("model {}", path.display()))
}

fn model_file_name(task: Task, alg: Algorithm) -> String {
    format!("{task}-{alg}.model.json")
}

fn create_dir(dir: &Path) -> anyhow::Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

#[derive(Serialize)]
struct TrainedModel {
    algorithm: Algorithm,
    path: PathBuf,
    examples: usize,
    class_counts: BTreeMap<Label, usize>,
    objective: Vec<f64>,
    updates: Vec<usize>,
}

#[derive(Serialize)]
struct TrainSummary {
    task: Task,
    models: Vec<TrainedModel>,
    test_set: Option<PathBuf>,
}

pub fn train(
    settings: &Settings,
    corpus_path: Option<&Path>,
    alg: AlgChoice,
    per_class: Option<usize>,
    out: &Output,
) -> anyhow::Result<()> {
    let corpus = corpus(settings, corpus_path)?;
    let res = resources()?;
    let features = settings.features();
    create_dir(&settings.out)?;

    let (records, test_set) = match per_class {
        Some(n) => {
            let split = stratified_split(&corpus, n, settings.seed())?;
            let test_path = if split.test.is_empty() {
                None
            } else {
                let path = settings.out.join(format!("{}-test.jsonl", corpus.task));
                let test = AnnotatedCorpus::new(format!("{}-test", corpus.name), corpus.task, split.test)?;
                std::fs::write(&path, test.to_jsonl()).with_context(|| format!("writing {}", path.display()))?;
                Some(path)
            };
            (split.train, test_path)
        }
        None => (corpus.records.clone(), None),
    };
    let examples = to_examples(&canonical_order(&records), &features, &res);

    let mut text = String::new();
    let mut models = Vec::new();
    for a in algorithms(alg) {
        let model = train_model(a, &examples, &settings.train)?.with_features(features.clone());
        let path = settings.out.join(model_file_name(corpus.task, a));
        std::fs::write(&path, save_model(&model)?).with_context(|| format!("writing {}", path.display()))?;
        info!("wrote {}", path.display());
        let counts: Vec<String> = model.meta.class_counts.iter().map(|(l, c)| format!("{l} {c}")).collect();
        text.push_str(&format!("{a} {} model: {} examples ({})\n", corpus.task, model.meta.examples, counts.join(", ")));
        let labels = model.labels();
        if !model.meta.objective.is_empty() {
            let obj: Vec<String> = labels.iter().zip(&model.meta.objective).map(|(l, o)| format!("{l} {o:.4}")).collect();
            text.push_str(&format!("  final objective: {}\n", obj.join(", ")));
        }
        if !model.meta.updates.is_empty() {
            let upd: Vec<String> = labels.iter().zip(&model.meta.updates).map(|(l, u)| format!("{l} {u}")).collect();
            text.push_str(&format!("  updates: {}\n", upd.join(", ")));
        }
        text.push_str(&format!("  written to {}\n", path.display()));
        models.push(TrainedModel {
            algorithm: a,
            path,
            examples: model.meta.examples,
            class_counts: model.meta.class_counts.clone(),
            objective: model.meta.objective.clone(),
            updates: model.meta.updates.clone(),
        });
    }
    if let Some(p) = &test_set {
        text.push_str(&format!("held-out records written to {}\n", p.display()));
    }
    out.emit(
        &text,
        &TrainSummary {
            task: corpus.task,
            models,
            test_set,
        },
    )
}

#[derive(Serialize)]
struct EvaluateSummary {
    task: Task,
    reports: Vec<(String, EvalReport)>,
}

pub fn evaluate(settings: &Settings, model_paths: &[PathBuf], corpus_path: Option<&Path>, out: &Output) -> anyhow::Result<()> {
    let models: Vec<LinearModel> = model_paths.iter().map(|p| read_model(p)).collect::<anyhow::Result<_>>()?;
    let task = models[0].task;
    if let Some(m) = models.iter().find(|m| m.task != task) {
        return Err(UsageError(format!("task mismatch: models for both {task} and {}", m.task)).into());
    }
    if let Some(t) = settings.task {
        if t != task {
            return Err(UsageError(format!("task mismatch: --task {t} but models are {task}")).into());
        }
    }
    let corpus = match corpus_path {
        Some(p) => {
            require_file(p, "corpus")?;
            load_corpus(p)?
        }
        None => bundled_corpus(task),
    };
    if corpus.task != task {
        return Err(UsageError(format!("task mismatch: {task} models cannot score {} corpus `{}`", corpus.task, corpus.name)).into());
    }
    let res = resources()?;
    let records = canonical_order(&corpus.records);
    let gold: Vec<Label> = records.iter().map(|r| r.label).collect();

    let mut predictions = Vec::new();
    let mut reports: Vec<(String, EvalReport)> = Vec::new();
    for m in &models {
        let features = m.meta.features.clone().unwrap_or_else(|| settings.features());
        let xs = to_examples(&records, &features, &res);
        let pred = predict_all(m, &xs);
        reports.push((m.meta.algorithm.to_string(), score(&pred, &gold)?));
        predictions.push((m, xs));
    }

    let svm = predictions.iter().find(|(m, _)| m.meta.algorithm == Algorithm::Svm);
    let paum = predictions.iter().find(|(m, _)| m.meta.algorithm == Algorithm::Paum);
    if let (Some((s, sx)), Some((p, px)), 2) = (svm, paum, models.len()) {
        let policy = policy(settings, task)?;
        let fused: Vec<Label> = sx
            .iter()
            .zip(px)
            .map(|(a, b)| fuse(&s.predict(&a.vector), &p.predict(&b.vector), &policy))
            .collect::<senticite::Result<_>>()?;
        reports.push(("fusion".into(), score(&fused, &gold)?));
    }

    let columns: Vec<(&str, &EvalReport)> = reports.iter().map(|(n, r)| (n.as_str(), r)).collect();
    let mut text = per_class_table(&columns);
    text.push('\n');
    let labels = task.labels();
    let rows: Vec<ComparisonRow> = reports.iter().map(|(n, r)| ComparisonRow::from_report(n.as_str(), &labels, r, None)).collect();
    text.push_str(&comparison_table(&rows));
    out.emit(&text, &EvaluateSummary { task, reports })
}

pub fn crossval(settings: &Settings, corpus_path: Option<&Path>, runs: usize, alg: AlgChoice, out: &Output) -> anyhow::Result<()> {
    let mut corpus = corpus(settings, corpus_path)?;
    let counts = corpus.class_counts();
    let smallest = counts.values().copied().min().unwrap_or(0);
    if counts.len() < corpus.task.labels().len() || counts.values().any(|c| *c != smallest) {
        let n = if counts.len() < corpus.task.labels().len() { 0 } else { smallest };
        warn!("corpus `{}` is not balanced; using a stratified subsample of {n} per class", corpus.name);
        let split = stratified_split(&corpus, n, settings.seed())?;
        corpus = AnnotatedCorpus::new(format!("{}-balanced", corpus.name), corpus.task, split.train)?;
    }
    let res = resources()?;
    let config = ExperimentConfig {
        features: settings.features(),
        train: settings.train.clone(),
    };
    let results = algorithms(alg)
        .into_iter()
        .map(|a| cross_validate(&corpus, runs, settings.seed(), a, &config, &res))
        .collect::<senticite::Result<Vec<_>>>()?;
    out.emit(&crossval_table(&results), &results)
}

pub fn sweep(
    settings: &Settings,
    corpus_path: Option<&Path>,
    mode: SweepMode,
    values: &[usize],
    per_class: Option<usize>,
    out: &Output,
) -> anyhow::Result<()> {
    let corpus = corpus(settings, corpus_path)?;
    let res = resources()?;
    let config = ExperimentConfig {
        features: settings.features(),
        train: settings.train.clone(),
    };
    let (points, unit) = match mode {
        SweepMode::Documents => {
            let n = per_class.unwrap_or_else(|| corpus.class_counts().values().copied().min().unwrap_or(0) / 2);
            let split = stratified_split(&corpus, n, settings.seed())?;
            (
                sweep_test_documents(&split.train, &split.test, values, settings.seed(), &config, &res)?,
                "documents",
            )
        }
        SweepMode::TrainSize => {
            let records = canonical_order(&corpus.records);
            let (pool, test) = half_split(&records, corpus.task, settings.seed())?;
            let pool: Vec<_> = pool.into_iter().map(|i| records[i].clone()).collect();
            let test: Vec<_> = test.into_iter().map(|i| records[i].clone()).collect();
            (
                sweep_train_size(&pool, corpus.task, &test, values, settings.seed(), &config, &res)?,
                "examples",
            )
        }
    };
    out.emit(&sweep_table(unit, &points), &points)
}

#[derive(Serialize)]
struct AnalyzedDocument {
    doc_id: String,
    html: PathBuf,
    analysis: PathBuf,
    mentions: usize,
    references: usize,
}

fn analyzer(settings: &Settings, models: Option<&Path>) -> anyhow::Result<Analyzer> {
    let res = resources()?;
    let policy = policy(settings, Task::Sentiment)?;
    let analyzer = match models {
        Some(dir) => {
            if !dir.is_dir() {
                return Err(UsageError(format!("model directory {} does not exist", dir.display())).into());
            }
            let load = |task, alg| read_model(&dir.join(model_file_name(task, alg)));
            Analyzer::new(
                load(Task::Sentiment, Algorithm::Svm)?,
                load(Task::Sentiment, Algorithm::Paum)?,
                load(Task::Nature, Algorithm::Paum)?,
                policy,
                res,
            )?
        }
        None => {
            info!("training models on the bundled corpora (seed {})", settings.seed());
            let mut a = Analyzer::train_bundled(&settings.train, &settings.features(), res)?;
            a.policy = policy;
            a
        }
    };
    Ok(analyzer)
}

fn analyze_one(analyzer: &Analyzer, path: &Path, out_dir: &Path) -> anyhow::Result<AnalyzedDocument> {
    let doc_id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .filter(|s| !s.is_empty())
        .unwrap_or_else(|| "document".into());
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let raw = RawDocument::from_bytes(doc_id, &bytes).with_context(|| format!("{}", path.display()))?;
    let analysis = analyzer.analyze(&raw)?;
    for d in &analysis.diagnostics {
        if d.kind == DiagnosticKind::EmptyDocument {
            warn!("{}: document is empty", path.display());
        } else {
            log::debug!("{}", d.log_line(&analysis.doc_id));
        }
    }
    let (html, json) = write_report(&analysis, out_dir)?;
    info!("{}: {} mentions of {} references", path.display(), analysis.totals.mentions, analysis.references.len());
    Ok(AnalyzedDocument {
        doc_id: analysis.doc_id.clone(),
        html,
        analysis: json,
        mentions: analysis.totals.mentions,
        references: analysis.references.len(),
    })
}

pub fn analyze(settings: &Settings, input: &Path, models: Option<&Path>, out: &Output) -> anyhow::Result<()> {
    let files: Vec<PathBuf> = if input.is_dir() {
        let mut files: Vec<PathBuf> = std::fs::read_dir(input)
            .with_context(|| format!("listing {}", input.display()))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "txt"))
            .collect();
        files.sort();
        if files.is_empty() {
            warn!("no .txt files in {}", input.display());
        }
        files
    } else {
        require_file(input, "input")?;
        vec![input.to_path_buf()]
    };
    let analyzer = analyzer(settings, models)?;
    create_dir(&settings.out)?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(settings.jobs)
        .build()
        .context("starting worker threads")?;
    let results: Vec<anyhow::Result<AnalyzedDocument>> =
        pool.install(|| files.par_iter().map(|f| analyze_one(&analyzer, f, &settings.out)).collect());

    let mut done = Vec::new();
    let mut first_error = None;
    for (file, r) in files.iter().zip(results) {
        match r {
            Ok(d) => done.push(d),
            Err(e) => {
                log::error!("{}: {e:#}", file.display());
                first_error.get_or_insert(e);
            }
        }
    }
    let text: String = done
        .iter()
        .map(|d| format!("{}: {} references, {} mentions -> {}\n", d.doc_id, d.references, d.mentions, d.html.display()))
        .collect();
    out.emit(&text, &done)?;
    match first_error {
        Some(e) => Err(e),
        None => Ok(()),
    }
}
