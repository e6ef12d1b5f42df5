//! Python bindings. Structured results cross the boundary as JSON strings
//! or plain Python values.

use std::path::PathBuf;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use senticite::classify::{load_model, save_model, Algorithm, Label, LinearModel, Task, TrainConfig};
use senticite::eval::{bundled_corpus, load_corpus, parse_corpus, stratified_split, AnnotatedCorpus};
use senticite::features::{FeatureConfig, FeaturePreset};
use senticite::fusion::{fuse_labels, parse_policy, FusionPolicy};
use senticite::ingest::RawDocument;
use senticite::pipeline::{citation_sentences_jsonl, parse_document, text_features};
use senticite::report::{render_html, summary_text, Analyzer as CoreAnalyzer, DocumentAnalysis};
use senticite::resources::Resources;

create_exception!(senticite, SenticiteError, PyException);

fn err(e: senticite::Error) -> PyErr {
    SenticiteError::new_err(e.to_string())
}

fn parse<T: std::str::FromStr<Err = senticite::Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(|e: senticite::Error| PyValueError::new_err(e.to_string()))
}

fn resources() -> PyResult<Resources> {
    Resources::from_env().map_err(err)
}

fn train_config(
    epochs: usize,
    lr: f64,
    reg: f64,
    margins: (f64, f64),
    seed: u64,
) -> PyResult<TrainConfig> {
    let c = TrainConfig {
        epochs,
        learning_rate: lr,
        regularization: reg,
        positive_margin: margins.0,
        negative_margin: margins.1,
        shuffle_seed: seed,
    };
    c.validate().map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(c)
}

fn corpus(task: Task, path: Option<PathBuf>, jsonl: Option<&str>) -> PyResult<AnnotatedCorpus> {
    let c = match (path, jsonl) {
        (Some(_), Some(_)) => return Err(PyValueError::new_err("give either path or jsonl, not both")),
        (Some(p), None) => load_corpus(&p).map_err(err)?,
        (None, Some(text)) => parse_corpus("inline", text).map_err(err)?,
        (None, None) => bundled_corpus(task),
    };
    if c.task != task {
        return Err(PyValueError::new_err(format!("corpus is a {} corpus, expected {task}", c.task)));
    }
    Ok(c)
}

/// A trained one-vs-rest linear classifier.
#[pyclass(module = "senticite", frozen)]
struct Model {
    inner: LinearModel,
    resources: Resources,
}

#[pymethods]
impl Model {
    /// Trains on an annotated corpus: a JSON Lines file, inline JSON Lines
    /// text, or the bundled corpus of `task`. With `per_class`, trains on a
    /// stratified sample of that many examples per class.
    #[staticmethod]
    #[pyo3(signature = (task, algorithm="svm", *, path=None, jsonl=None, features="combination",
                        epochs=20, lr=0.1, reg=1e-3, margins=(1.0, 0.0), seed=42, per_class=None))]
    #[allow(clippy::too_many_arguments)]
    fn train(
        task: &str,
        algorithm: &str,
        path: Option<PathBuf>,
        jsonl: Option<&str>,
        features: &str,
        epochs: usize,
        lr: f64,
        reg: f64,
        margins: (f64, f64),
        seed: u64,
        per_class: Option<usize>,
    ) -> PyResult<Self> {
        let task: Task = parse(task)?;
        let alg: Algorithm = parse(algorithm)?;
        let preset: FeaturePreset = parse(features)?;
        let config = train_config(epochs, lr, reg, margins, seed)?;
        let corpus = corpus(task, path, jsonl)?;
        let records = match per_class {
            Some(n) => stratified_split(&corpus, n, seed).map_err(err)?.train,
            None => corpus.records,
        };
        let res = resources()?;
        let fc = FeatureConfig::preset(preset);
        let examples = senticite::eval::to_examples(&records, &fc, &res);
        let inner = senticite::eval::train_model(alg, &examples, &config)
            .map_err(err)?
            .with_features(fc);
        Ok(Model { inner, resources: res })
    }

    /// Loads a model from its JSON serialization.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Model {
            inner: load_model(text.as_bytes()).map_err(err)?,
            resources: resources()?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        let bytes = save_model(&self.inner).map_err(err)?;
        Ok(String::from_utf8(bytes).expect("model JSON is UTF-8"))
    }

    #[getter]
    fn task(&self) -> &'static str {
        self.inner.task.as_str()
    }

    #[getter]
    fn algorithm(&self) -> &'static str {
        self.inner.meta.algorithm.as_str()
    }

    #[getter]
    fn labels(&self) -> Vec<&'static str> {
        self.inner.labels().iter().map(Label::as_str).collect()
    }

    /// Predicted label and per-label scores for one sentence.
    fn predict(&self, sentence: &str) -> (String, Vec<(String, f64)>) {
        let fc = self.inner.meta.features.clone().unwrap_or_else(FeatureConfig::combination);
        let v = text_features(0, sentence, &fc, &self.resources);
        let p = self.inner.predict(&v);
        (
            p.label.to_string(),
            p.scores.iter().map(|(l, s)| (l.to_string(), *s)).collect(),
        )
    }

    fn __repr__(&self) -> String {
        format!(
            "Model(task={}, algorithm={}, examples={})",
            self.inner.task, self.inner.meta.algorithm, self.inner.meta.examples
        )
    }
}

/// Full document analysis: fused sentiment and perceptron nature per
/// citation mention.
#[pyclass(module = "senticite", frozen)]
struct Analyzer {
    inner: CoreAnalyzer,
}

#[pymethods]
impl Analyzer {
    /// Trains all models on the bundled corpora.
    #[new]
    #[pyo3(signature = (*, features="combination", epochs=20, lr=0.1, reg=1e-3, margins=(1.0, 0.0), seed=42, policy=None))]
    fn new(
        features: &str,
        epochs: usize,
        lr: f64,
        reg: f64,
        margins: (f64, f64),
        seed: u64,
        policy: Option<&str>,
    ) -> PyResult<Self> {
        let preset: FeaturePreset = parse(features)?;
        let config = train_config(epochs, lr, reg, margins, seed)?;
        let mut inner = CoreAnalyzer::train_bundled(&config, &FeatureConfig::preset(preset), resources()?).map_err(err)?;
        if let Some(text) = policy {
            inner.policy = parse_policy(text).map_err(err)?;
        }
        Ok(Analyzer { inner })
    }

    /// Builds an analyzer from two sentiment models and one nature model.
    #[staticmethod]
    #[pyo3(signature = (sentiment_svm, sentiment_paum, nature, policy=None))]
    fn from_models(sentiment_svm: &Model, sentiment_paum: &Model, nature: &Model, policy: Option<&str>) -> PyResult<Self> {
        let policy = match policy {
            Some(text) => parse_policy(text).map_err(err)?,
            None => FusionPolicy::bundled_sentiment(),
        };
        let inner = CoreAnalyzer::new(
            sentiment_svm.inner.clone(),
            sentiment_paum.inner.clone(),
            nature.inner.clone(),
            policy,
            resources()?,
        )
        .map_err(err)?;
        Ok(Analyzer { inner })
    }

    /// Analysis as a JSON string.
    #[pyo3(signature = (text, doc_id="document"))]
    fn analyze(&self, py: Python<'_>, text: &str, doc_id: &str) -> PyResult<String> {
        Ok(self.run(py, text, doc_id)?.to_json())
    }

    /// Self-contained HTML report.
    #[pyo3(signature = (text, doc_id="document"))]
    fn report_html(&self, py: Python<'_>, text: &str, doc_id: &str) -> PyResult<String> {
        Ok(render_html(&self.run(py, text, doc_id)?))
    }

    /// Plain-text totals.
    #[pyo3(signature = (text, doc_id="document"))]
    fn summary(&self, py: Python<'_>, text: &str, doc_id: &str) -> PyResult<String> {
        Ok(summary_text(&self.run(py, text, doc_id)?))
    }
}

impl Analyzer {
    fn run(&self, py: Python<'_>, text: &str, doc_id: &str) -> PyResult<DocumentAnalysis> {
        let raw = RawDocument::new(doc_id, text).map_err(err)?;
        py.detach(|| self.inner.analyze(&raw)).map_err(err)
    }
}

/// Citing sentences of a document, one JSON object per line.
#[pyfunction]
#[pyo3(signature = (text, doc_id="document"))]
fn citation_sentences(text: &str, doc_id: &str) -> PyResult<String> {
    let raw = RawDocument::new(doc_id, text).map_err(err)?;
    Ok(citation_sentences_jsonl(&parse_document(&raw, &resources()?)))
}

/// Fused label for two disagreeing (or agreeing) predictions.
#[pyfunction]
#[pyo3(signature = (svm_label, paum_label, policy=None))]
fn fuse(svm_label: &str, paum_label: &str, policy: Option<&str>) -> PyResult<String> {
    let svm = Label::from_name(svm_label).ok_or_else(|| PyValueError::new_err(format!("unknown label `{svm_label}`")))?;
    let paum = Label::from_name(paum_label).ok_or_else(|| PyValueError::new_err(format!("unknown label `{paum_label}`")))?;
    let policy = match policy {
        Some(text) => parse_policy(text).map_err(err)?,
        None => FusionPolicy::bundled(svm.task()),
    };
    Ok(fuse_labels(svm, paum, &policy).map_err(err)?.to_string())
}

/// Accuracy, micro/macro F1 and per-class scores as a JSON string.
#[pyfunction]
fn evaluate(predicted: Vec<String>, gold: Vec<String>) -> PyResult<String> {
    let labels = |xs: &[String]| -> PyResult<Vec<Label>> {
        xs.iter()
            .map(|s| Label::from_name(s).ok_or_else(|| PyValueError::new_err(format!("unknown label `{s}`"))))
            .collect()
    };
    let report = senticite::eval::evaluate(&labels(&predicted)?, &labels(&gold)?).map_err(err)?;
    serde_json::to_string(&report).map_err(|e| SenticiteError::new_err(e.to_string()))
}

/// The bundled annotated corpus of a task as JSON Lines.
#[pyfunction]
fn bundled_corpus_jsonl(task: &str) -> PyResult<String> {
    Ok(bundled_corpus(parse(task)?).to_jsonl())
}

/// Porter stem of a lowercase ASCII word.
#[pyfunction]
fn stem(word: &str) -> PyResult<String> {
    senticite::features::stem(word).map_err(err)
}

#[pymodule]
#[pyo3(name = "senticite")]
fn senticite_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SenticiteError", m.py().get_type::<SenticiteError>())?;
    m.add_class::<Model>()?;
    m.add_class::<Analyzer>()?;
    m.add_function(wrap_pyfunction!(citation_sentences, m)?)?;
    m.add_function(wrap_pyfunction!(fuse, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(bundled_corpus_jsonl, m)?)?;
    m.add_function(wrap_pyfunction!(stem, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
