use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::Serialize;

use super::corpus::{to_examples, AnnotatedCorpus, AnnotatedRecord};
use super::metrics::{evaluate, EvalReport};
use super::split::{canonical_order, half_split, proportional_sample, rng_for};
use crate::classify::{predict, train_paum, train_svm, Algorithm, Label, LabeledExample, LinearModel, Task, TrainConfig};
use crate::error::{Error, Result};
use crate::features::{FeatureConfig, FeaturePreset};
use crate::fusion::{fuse_labels, FusionPolicy};
use crate::resources::Resources;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub features: FeatureConfig,
    pub train: TrainConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            features: FeatureConfig::combination(),
            train: TrainConfig::default(),
        }
    }
}

pub fn train_model(algorithm: Algorithm, examples: &[LabeledExample], config: &TrainConfig) -> Result<LinearModel> {
    match algorithm {
        Algorithm::Svm => train_svm(examples, config),
        Algorithm::Paum => train_paum(examples, config),
    }
}

pub fn predict_all(model: &LinearModel, examples: &[LabeledExample]) -> Vec<Label> {
    examples.iter().map(|e| predict(model, &e.vector).label).collect()
}

/// Scores of both classifiers and, with a policy, their fusion on one
/// train/test split.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Holdout {
    pub svm: EvalReport,
    pub paum: EvalReport,
    pub fusion: Option<EvalReport>,
}

pub fn run_holdout(
    train: &[AnnotatedRecord],
    test: &[AnnotatedRecord],
    config: &ExperimentConfig,
    resources: &Resources,
    policy: Option<&FusionPolicy>,
) -> Result<Holdout> {
    if test.is_empty() {
        return Err(Error::InvalidArgument("empty test set".into()));
    }
    let train_x = to_examples(train, &config.features, resources);
    let test_x = to_examples(test, &config.features, resources);
    let gold: Vec<Label> = test.iter().map(|r| r.label).collect();
    let (svm, paum) = rayon::join(
        || train_model(Algorithm::Svm, &train_x, &config.train),
        || train_model(Algorithm::Paum, &train_x, &config.train),
    );
    let (svm, paum) = (svm?, paum?);
    let svm_pred = predict_all(&svm, &test_x);
    let paum_pred = predict_all(&paum, &test_x);
    let fusion = match policy {
        Some(p) => {
            let fused = svm_pred
                .iter()
                .zip(&paum_pred)
                .map(|(a, b)| fuse_labels(*a, *b, p))
                .collect::<Result<Vec<_>>>()?;
            Some(evaluate(&fused, &gold)?)
        }
        None => None,
    };
    Ok(Holdout {
        svm: evaluate(&svm_pred, &gold)?,
        paum: evaluate(&paum_pred, &gold)?,
        fusion,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossValidation {
    pub algorithm: Algorithm,
    /// Micro-F1 of every run, by run index.
    pub scores: Vec<f64>,
    pub mean: f64,
}

/// Repeated seeded 50/50 splits of a training corpus. Run `i` splits with
/// seed `seed + i`, trains on one half and scores micro-F1 on the other.
/// Runs execute in parallel and are merged by run index.
pub fn cross_validate(
    corpus: &AnnotatedCorpus,
    runs: usize,
    seed: u64,
    algorithm: Algorithm,
    config: &ExperimentConfig,
    resources: &Resources,
) -> Result<CrossValidation> {
    if runs == 0 {
        return Err(Error::InvalidArgument("runs must be at least 1".into()));
    }
    let records = canonical_order(&corpus.records);
    let examples = to_examples(&records, &config.features, resources);
    let scores = (0..runs)
        .into_par_iter()
        .map(|run| {
            let (train, test) = half_split(&records, corpus.task, seed.wrapping_add(run as u64))?;
            let pick = |idx: &[usize]| idx.iter().map(|i| examples[*i].clone()).collect::<Vec<_>>();
            let (train, test) = (pick(&train), pick(&test));
            if test.is_empty() {
                return Err(Error::InvalidCorpus("corpus too small to split".into()));
            }
            let model = train_model(algorithm, &train, &config.train)?;
            let gold: Vec<Label> = test.iter().map(|e| e.label).collect();
            Ok(evaluate(&predict_all(&model, &test), &gold)?.micro_f1)
        })
        .collect::<Result<Vec<f64>>>()?;
    let mean = scores.iter().sum::<f64>() / scores.len() as f64;
    Ok(CrossValidation {
        algorithm,
        scores,
        mean,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AblationRow {
    pub preset: FeaturePreset,
    pub svm_f1: f64,
    pub paum_f1: f64,
}

/// Holdout micro-F1 of both classifiers under each feature preset.
pub fn feature_ablation(
    train: &[AnnotatedRecord],
    test: &[AnnotatedRecord],
    train_config: &TrainConfig,
    resources: &Resources,
) -> Result<Vec<AblationRow>> {
    [FeaturePreset::OnlyPos, FeaturePreset::Combination]
        .into_iter()
        .map(|preset| {
            let config = ExperimentConfig {
                features: FeatureConfig::preset(preset),
                train: train_config.clone(),
            };
            let h = run_holdout(train, test, &config, resources, None)?;
            Ok(AblationRow {
                preset,
                svm_f1: h.svm.micro_f1,
                paum_f1: h.paum.micro_f1,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub parameter: usize,
    pub examples: usize,
    pub svm_f1: f64,
    pub paum_f1: f64,
}

/// Trains once and scores on the records of the first `k` test documents
/// (documents in seeded random order), for every `k` in `doc_counts`.
pub fn sweep_test_documents(
    train: &[AnnotatedRecord],
    test: &[AnnotatedRecord],
    doc_counts: &[usize],
    seed: u64,
    config: &ExperimentConfig,
    resources: &Resources,
) -> Result<Vec<SweepPoint>> {
    let mut docs: Vec<&str> = test.iter().map(|r| r.doc_id.as_str()).collect();
    docs.sort();
    docs.dedup();
    docs.shuffle(&mut rng_for(seed, 0));
    let train_x = to_examples(train, &config.features, resources);
    let svm = train_model(Algorithm::Svm, &train_x, &config.train)?;
    let paum = train_model(Algorithm::Paum, &train_x, &config.train)?;
    let test = canonical_order(test);
    let test_x = to_examples(&test, &config.features, resources);

    doc_counts
        .iter()
        .map(|k| {
            if *k == 0 || *k > docs.len() {
                return Err(Error::InvalidArgument(format!(
                    "document count {k} outside 1..={}",
                    docs.len()
                )));
            }
            let chosen = &docs[..*k];
            let sel: Vec<usize> = (0..test.len()).filter(|i| chosen.contains(&test[*i].doc_id.as_str())).collect();
            let xs: Vec<LabeledExample> = sel.iter().map(|i| test_x[*i].clone()).collect();
            let gold: Vec<Label> = xs.iter().map(|e| e.label).collect();
            Ok(SweepPoint {
                parameter: *k,
                examples: xs.len(),
                svm_f1: evaluate(&predict_all(&svm, &xs), &gold)?.micro_f1,
                paum_f1: evaluate(&predict_all(&paum, &xs), &gold)?.micro_f1,
            })
        })
        .collect()
}

/// Trains on `n` records sampled from `pool` with its class distribution and
/// scores on the fixed test set, for every `n` in `sizes`.
pub fn sweep_train_size(
    pool: &[AnnotatedRecord],
    task: Task,
    test: &[AnnotatedRecord],
    sizes: &[usize],
    seed: u64,
    config: &ExperimentConfig,
    resources: &Resources,
) -> Result<Vec<SweepPoint>> {
    sizes
        .par_iter()
        .map(|n| {
            let train = proportional_sample(pool, task, *n, seed)?;
            let h = run_holdout(&train, test, config, resources, None)?;
            Ok(SweepPoint {
                parameter: *n,
                examples: test.len(),
                svm_f1: h.svm.micro_f1,
                paum_f1: h.paum.micro_f1,
            })
        })
        .collect()
}
