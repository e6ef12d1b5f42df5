//! One-vs-rest linear classifiers over sparse feature vectors.

mod labels;
pub mod paum;
mod persist;
mod sparse;
pub mod svm;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{FeatureConfig, FeatureVector};
use crate::ingest::{Section, Span};

pub use labels::{Label, NatureLabel, SentimentLabel, Task};
pub use paum::train_paum;
pub use persist::{load_model, save_model, MODEL_FORMAT, MODEL_VERSION};
pub use sparse::{epoch_order, FeatureIndex, SparseVec};
pub use svm::train_svm;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub doc_id: String,
    pub span: Option<Span>,
    pub section: Option<Section>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledExample {
    pub vector: FeatureVector,
    pub label: Label,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Svm,
    Paum,
}

impl Algorithm {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Svm => "svm",
            Algorithm::Paum => "paum",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "svm" => Ok(Algorithm::Svm),
            "paum" => Ok(Algorithm::Paum),
            _ => Err(Error::InvalidArgument(format!("unknown algorithm `{s}`"))),
        }
    }
}

/// Hyperparameters shared by both trainers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub epochs: usize,
    pub learning_rate: f64,
    /// L2 strength of the SVM objective; unused by the perceptron.
    pub regularization: f64,
    /// Perceptron update threshold for positive examples.
    pub positive_margin: f64,
    /// Perceptron update threshold for negative examples.
    pub negative_margin: f64,
    pub shuffle_seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            epochs: 20,
            learning_rate: 0.1,
            regularization: 1e-3,
            positive_margin: 1.0,
            negative_margin: 0.0,
            shuffle_seed: 42,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.to_string()));
        if self.epochs == 0 {
            return bad("epochs must be at least 1");
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return bad("learning_rate must be positive");
        }
        if !(self.regularization >= 0.0 && self.regularization.is_finite()) {
            return bad("regularization must be non-negative");
        }
        if self.learning_rate * self.regularization >= 1.0 {
            return bad("learning_rate * regularization must be below 1");
        }
        if !(self.positive_margin >= 0.0 && self.negative_margin >= 0.0) {
            return bad("margins must be non-negative");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassWeights {
    pub label: Label,
    pub bias: f64,
    pub weights: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelMeta {
    pub algorithm: Algorithm,
    pub train_config: TrainConfig,
    /// Feature extraction the model was trained with, if recorded.
    pub features: Option<FeatureConfig>,
    pub examples: usize,
    pub class_counts: BTreeMap<Label, usize>,
    /// Final regularized hinge objective per class (SVM only).
    #[serde(default)]
    pub objective: Vec<f64>,
    /// Number of perceptron updates per class (perceptron only).
    #[serde(default)]
    pub updates: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub task: Task,
    pub classes: Vec<ClassWeights>,
    pub meta: ModelMeta,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Prediction {
    pub label: Label,
    /// One score per model class, in model label order.
    pub scores: Vec<(Label, f64)>,
}

impl Prediction {
    pub fn score(&self, label: Label) -> Option<f64> {
        self.scores.iter().find(|(l, _)| *l == label).map(|p| p.1)
    }
}

impl LinearModel {
    pub fn labels(&self) -> Vec<Label> {
        self.classes.iter().map(|c| c.label).collect()
    }

    pub fn with_features(mut self, features: FeatureConfig) -> Self {
        self.meta.features = Some(features);
        self
    }

    pub fn predict(&self, vector: &FeatureVector) -> Prediction {
        predict(self, vector)
    }
}

/// Argmax of `w_c · x + b_c`; ties go to the earlier label in task order.
/// Features the model never saw contribute nothing.
pub fn predict(model: &LinearModel, vector: &FeatureVector) -> Prediction {
    let scores: Vec<(Label, f64)> = model
        .classes
        .iter()
        .map(|c| {
            let s = vector
                .features
                .iter()
                .filter_map(|(name, x)| c.weights.get(name).map(|w| w * x))
                .sum::<f64>()
                + c.bias;
            (c.label, s)
        })
        .collect();
    let mut best = 0;
    for (i, (_, s)) in scores.iter().enumerate() {
        if *s > scores[best].1 {
            best = i;
        }
    }
    Prediction {
        label: scores[best].0,
        scores,
    }
}

/// Labels present in the examples, checked for a single task and at least
/// two classes.
pub(crate) fn training_labels(examples: &[LabeledExample]) -> Result<(Task, Vec<Label>)> {
    let first = examples
        .first()
        .ok_or_else(|| Error::InvalidTrainingSet("no examples".into()))?;
    let task = first.label.task();
    if let Some(e) = examples.iter().find(|e| e.label.task() != task) {
        return Err(Error::InvalidTrainingSet(format!(
            "mixed tasks: `{}` is not a {task} label",
            e.label
        )));
    }
    let labels: Vec<Label> = task
        .labels()
        .into_iter()
        .filter(|l| examples.iter().any(|e| e.label == *l))
        .collect();
    if labels.len() < 2 {
        return Err(Error::InvalidTrainingSet(format!(
            "need at least two classes, found {}",
            labels.len()
        )));
    }
    Ok((task, labels))
}

pub(crate) fn class_counts(examples: &[LabeledExample]) -> BTreeMap<Label, usize> {
    let mut counts = BTreeMap::new();
    for e in examples {
        *counts.entry(e.label).or_insert(0) += 1;
    }
    counts
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;

    pub fn example(features: &[(&str, f64)], label: Label) -> LabeledExample {
        let mut v = FeatureVector::new(0);
        for (k, x) in features {
            v.add(*k, *x);
        }
        LabeledExample {
            vector: v,
            label,
            provenance: Provenance {
                doc_id: "toy".into(),
                span: None,
                section: None,
            },
        }
    }
}
