//! Perceptron with uneven margins.

use super::sparse::{dot, epoch_order, norm, FeatureIndex, SparseVec};
use super::svm::sparse_weights;
use super::{
    class_counts, training_labels, Algorithm, ClassWeights, LabeledExample, LinearModel,
    ModelMeta, TrainConfig,
};
use crate::error::Result;

/// Binary perceptron solution and its training trace.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryPaum {
    pub weights: Vec<f64>,
    /// Effective bias `β·R`.
    pub bias: f64,
    /// Constant input appended to every example: the largest example norm,
    /// or 1 when every example is zero.
    pub radius: f64,
    /// Example index of every update, in order.
    pub updates: Vec<usize>,
    pub epochs_run: usize,
}

/// Largest Euclidean norm over `xs`, or 1 for an all-zero set.
pub fn augmented_radius(xs: &[SparseVec]) -> f64 {
    let r = xs.iter().map(|x| norm(x)).fold(0.0, f64::max);
    if r > 0.0 {
        r
    } else {
        1.0
    }
}

/// Trains one binary scorer with labels `ys` in {-1, +1}.
///
/// Every example is extended with the constant input `R`; the score is
/// `w·x + β·R`. An update `w += η y x`, `β += η y R` happens whenever
/// `y·score ≤ τ₊` for positives or `y·score ≤ τ₋` for negatives. Training
/// stops after an epoch without updates.
pub fn train_binary_paum(xs: &[SparseVec], ys: &[f64], dim: usize, config: &TrainConfig) -> BinaryPaum {
    let eta = config.learning_rate;
    let radius = augmented_radius(xs);
    let mut w = vec![0.0; dim];
    let mut beta = 0.0;
    let mut updates = Vec::new();
    let mut epochs_run = 0;

    for epoch in 0..config.epochs {
        epochs_run += 1;
        let before = updates.len();
        for i in epoch_order(xs.len(), epoch, config.shuffle_seed) {
            let (x, y) = (&xs[i], ys[i]);
            let score = dot(&w, x) + beta * radius;
            let threshold = if y > 0.0 {
                config.positive_margin
            } else {
                config.negative_margin
            };
            if y * score <= threshold {
                for (j, xj) in x {
                    w[*j] += eta * y * xj;
                }
                beta += eta * y * radius;
                updates.push(i);
            }
        }
        if updates.len() == before {
            break;
        }
    }

    BinaryPaum {
        weights: w,
        bias: beta * radius,
        radius,
        updates,
        epochs_run,
    }
}

/// One-vs-rest perceptron with uneven margins over the labels present in
/// `examples`.
pub fn train_paum(examples: &[LabeledExample], config: &TrainConfig) -> Result<LinearModel> {
    config.validate()?;
    let (task, labels) = training_labels(examples)?;
    let index = FeatureIndex::build(examples);
    let xs: Vec<SparseVec> = examples.iter().map(|e| index.encode(e)).collect();

    let mut classes = Vec::with_capacity(labels.len());
    let mut updates = Vec::with_capacity(labels.len());
    for label in &labels {
        let ys: Vec<f64> = examples
            .iter()
            .map(|e| if e.label == *label { 1.0 } else { -1.0 })
            .collect();
        let fit = train_binary_paum(&xs, &ys, index.dim(), config);
        updates.push(fit.updates.len());
        classes.push(ClassWeights {
            label: *label,
            bias: fit.bias,
            weights: sparse_weights(&index, &fit.weights),
        });
    }

    Ok(LinearModel {
        task,
        classes,
        meta: ModelMeta {
            algorithm: Algorithm::Paum,
            train_config: config.clone(),
            features: None,
            examples: examples.len(),
            class_counts: class_counts(examples),
            objective: vec![],
            updates,
        },
    })
}
