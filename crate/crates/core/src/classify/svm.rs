//! Linear SVM trained by stochastic subgradient descent on the L2-regularized
//! hinge loss.

use std::collections::BTreeMap;

use super::sparse::{dot, epoch_order, FeatureIndex, SparseVec};
use super::{
    class_counts, training_labels, Algorithm, ClassWeights, LabeledExample, LinearModel,
    ModelMeta, TrainConfig,
};
use crate::error::Result;

/// Binary SVM solution with the objective evaluated at the returned weights.
#[derive(Debug, Clone, PartialEq)]
pub struct BinarySvm {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub objective: f64,
}

/// `λ/2 ‖w‖² + mean hinge(1 - y (w·x + b))`. The bias is not regularized.
pub fn svm_objective(xs: &[SparseVec], ys: &[f64], weights: &[f64], bias: f64, reg: f64) -> f64 {
    let norm2: f64 = weights.iter().map(|w| w * w).sum();
    let hinge: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (1.0 - y * (dot(weights, x) + bias)).max(0.0))
        .sum();
    0.5 * reg * norm2 + hinge / xs.len().max(1) as f64
}

/// Trains one binary scorer with labels `ys` in {-1, +1}.
///
/// Step `t` (counted from 1 over all epochs) uses
/// `η_t = lr / (1 + lr·λ·t)`. The returned weights are the average of the
/// iterates seen during the last epoch.
pub fn train_binary_svm(xs: &[SparseVec], ys: &[f64], dim: usize, config: &TrainConfig) -> BinarySvm {
    let lr = config.learning_rate;
    let reg = config.regularization;
    // w = scale * v keeps the shrink step O(1).
    let mut v = vec![0.0; dim];
    let mut scale = 1.0;
    let mut bias = 0.0;
    let mut avg_w = vec![0.0; dim];
    let mut avg_b = 0.0;
    let mut t = 0u64;
    let n = xs.len();

    for epoch in 0..config.epochs {
        let last = epoch + 1 == config.epochs;
        for i in epoch_order(n, epoch, config.shuffle_seed) {
            t += 1;
            let eta = lr / (1.0 + lr * reg * t as f64);
            let (x, y) = (&xs[i], ys[i]);
            let margin = y * (scale * dot(&v, x) + bias);
            scale *= 1.0 - eta * reg;
            if scale < 1e-9 {
                for w in v.iter_mut() {
                    *w *= scale;
                }
                scale = 1.0;
            }
            if margin < 1.0 {
                for (j, xj) in x {
                    v[*j] += eta * y * xj / scale;
                }
                bias += eta * y;
            }
            if last {
                for (a, w) in avg_w.iter_mut().zip(&v) {
                    *a += scale * w;
                }
                avg_b += bias;
            }
        }
    }

    let steps = n.max(1) as f64;
    let weights: Vec<f64> = avg_w.iter().map(|a| a / steps).collect();
    let bias = avg_b / steps;
    let objective = svm_objective(xs, ys, &weights, bias, reg);
    BinarySvm {
        weights,
        bias,
        objective,
    }
}

/// One-vs-rest SVM over the labels present in `examples`.
pub fn train_svm(examples: &[LabeledExample], config: &TrainConfig) -> Result<LinearModel> {
    config.validate()?;
    let (task, labels) = training_labels(examples)?;
    let index = FeatureIndex::build(examples);
    let xs: Vec<SparseVec> = examples.iter().map(|e| index.encode(e)).collect();

    let mut classes = Vec::with_capacity(labels.len());
    let mut objective = Vec::with_capacity(labels.len());
    for label in &labels {
        let ys: Vec<f64> = examples
            .iter()
            .map(|e| if e.label == *label { 1.0 } else { -1.0 })
            .collect();
        let fit = train_binary_svm(&xs, &ys, index.dim(), config);
        objective.push(fit.objective);
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
            algorithm: Algorithm::Svm,
            train_config: config.clone(),
            features: None,
            examples: examples.len(),
            class_counts: class_counts(examples),
            objective,
            updates: vec![],
        },
    })
}

pub(crate) fn sparse_weights(index: &FeatureIndex, weights: &[f64]) -> BTreeMap<String, f64> {
    weights
        .iter()
        .enumerate()
        .filter(|(_, w)| **w != 0.0)
        .map(|(i, w)| (index.name(i).to_string(), *w))
        .collect()
}
