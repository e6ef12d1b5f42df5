use serde::Serialize;

use crate::classify::{Label, Task};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassMetrics {
    pub label: Label,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: usize,
    pub predicted: usize,
    pub correct: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub task: Task,
    /// Row and column order of `confusion`: every label of the task.
    pub labels: Vec<Label>,
    /// `confusion[gold][predicted]`.
    pub confusion: Vec<Vec<usize>>,
    pub per_class: Vec<ClassMetrics>,
    pub total: usize,
    pub correct: usize,
    pub accuracy: f64,
    pub micro_f1: f64,
    /// Unweighted means over the labels that occur in gold or predictions.
    pub macro_precision: f64,
    pub macro_recall: f64,
    pub macro_f1: f64,
}

impl EvalReport {
    pub fn class(&self, label: Label) -> Option<&ClassMetrics> {
        self.per_class.iter().find(|c| c.label == label)
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn f1(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

/// Confusion matrix, per-class precision/recall/F1 (0 when a denominator is
/// 0) and micro and macro averages.
pub fn evaluate(predictions: &[Label], gold: &[Label]) -> Result<EvalReport> {
    if predictions.len() != gold.len() {
        return Err(Error::InvalidArgument(format!(
            "{} predictions for {} gold labels",
            predictions.len(),
            gold.len()
        )));
    }
    let task = gold
        .first()
        .ok_or_else(|| Error::InvalidArgument("nothing to evaluate".into()))?
        .task();
    if let Some(l) = gold.iter().chain(predictions).find(|l| l.task() != task) {
        return Err(Error::InvalidArgument(format!(
            "label `{l}` is not a {task} label"
        )));
    }
    let labels = task.labels();
    let pos = |l: &Label| labels.iter().position(|x| x == l).expect("task label");
    let k = labels.len();
    let mut confusion = vec![vec![0usize; k]; k];
    for (p, g) in predictions.iter().zip(gold) {
        confusion[pos(g)][pos(p)] += 1;
    }

    let per_class: Vec<ClassMetrics> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let correct = confusion[i][i];
            let support: usize = confusion[i].iter().sum();
            let predicted: usize = confusion.iter().map(|row| row[i]).sum();
            let precision = ratio(correct, predicted);
            let recall = ratio(correct, support);
            ClassMetrics {
                label: *l,
                precision,
                recall,
                f1: f1(precision, recall),
                support,
                predicted,
                correct,
            }
        })
        .collect();

    let total = gold.len();
    let correct: usize = per_class.iter().map(|c| c.correct).sum();
    let present: Vec<&ClassMetrics> = per_class
        .iter()
        .filter(|c| c.support > 0 || c.predicted > 0)
        .collect();
    let mean = |f: fn(&ClassMetrics) -> f64| present.iter().map(|c| f(c)).sum::<f64>() / present.len() as f64;
    let accuracy = ratio(correct, total);

    Ok(EvalReport {
        task,
        confusion,
        total,
        correct,
        accuracy,
        // Single-label micro precision and recall both equal accuracy.
        micro_f1: accuracy,
        macro_precision: mean(|c| c.precision),
        macro_recall: mean(|c| c.recall),
        macro_f1: mean(|c| c.f1),
        per_class,
        labels,
    })
}

/// Rebuilds an evaluation from `(label, correct, support)` rows. Only the
/// diagonal is known, so each class's misses are assigned to the next listed
/// label; micro scores do not depend on that choice.
pub fn report_from_correct_counts(rows: &[(Label, usize, usize)]) -> Result<EvalReport> {
    let mut gold = Vec::new();
    let mut pred = Vec::new();
    for (i, (label, correct, support)) in rows.iter().enumerate() {
        if correct > support {
            return Err(Error::InvalidArgument(format!(
                "class `{label}`: {correct} correct out of {support}"
            )));
        }
        let wrong = rows[(i + 1) % rows.len()].0;
        if wrong == *label && correct < support {
            return Err(Error::InvalidArgument("misses need a second class".into()));
        }
        for j in 0..*support {
            gold.push(*label);
            pred.push(if j < *correct { *label } else { wrong });
        }
    }
    evaluate(&pred, &gold)
}
