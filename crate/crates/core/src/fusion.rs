//! Weighted fusion of the SVM and perceptron predictions.
//!
//! When the two classifiers agree their label is kept. When they disagree the
//! label whose `(classifier, predicted label)` priority is larger wins; an
//! exact tie goes to the SVM. Raw classifier scores are not consulted.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::classify::{Algorithm, Label, Prediction, Task};
use crate::error::{Error, Result};

pub type ClassifierId = Algorithm;

/// Classifiers in tie-break order.
pub const CLASSIFIERS: [ClassifierId; 2] = [Algorithm::Svm, Algorithm::Paum];

const SENTIMENT_POLICY: &str = include_str!("../data/policies/sentiment.policy");
const NATURE_POLICY: &str = include_str!("../data/policies/nature.policy");

#[derive(Debug, Clone, PartialEq)]
pub struct FusionPolicy {
    task: Task,
    priority: BTreeMap<(ClassifierId, Label), f64>,
}

impl FusionPolicy {
    pub fn task(&self) -> Task {
        self.task
    }

    pub fn priority(&self, classifier: ClassifierId, label: Label) -> Option<f64> {
        self.priority.get(&(classifier, label)).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (ClassifierId, Label, f64)> + '_ {
        self.priority.iter().map(|((c, l), f)| (*c, *l, *f))
    }

    /// Per-class F-scores of the sentiment evaluation, used as priorities.
    pub fn bundled_sentiment() -> Self {
        parse_policy(SENTIMENT_POLICY).expect("bundled sentiment policy is valid")
    }

    /// Per-class F-scores of the nature evaluation. Fusing nature labels is an
    /// extension; the end-to-end path uses the perceptron alone for nature.
    pub fn bundled_nature() -> Self {
        parse_policy(NATURE_POLICY).expect("bundled nature policy is valid")
    }

    pub fn bundled(task: Task) -> Self {
        match task {
            Task::Sentiment => Self::bundled_sentiment(),
            Task::Nature => Self::bundled_nature(),
        }
    }

    /// Renders the policy in the `classifier label score` file format.
    pub fn to_text(&self) -> String {
        let mut out = String::from("# classifier label f-score\n");
        for c in CLASSIFIERS {
            for l in self.task.labels() {
                let _ = writeln!(out, "{} {} {}", c, l, self.priority[&(c, l)]);
            }
        }
        out
    }
}

/// Builds a policy from per-class F-scores. Every classifier needs a score
/// in `[0, 1]` for every label of the task.
pub fn build_policy(task: Task, scores: &BTreeMap<(ClassifierId, Label), f64>) -> Result<FusionPolicy> {
    for ((c, l), f) in scores {
        if l.task() != task {
            return Err(Error::InvalidPolicy(format!(
                "label `{l}` for {c} is not a {task} label"
            )));
        }
        if !(0.0..=1.0).contains(f) {
            return Err(Error::InvalidPolicy(format!(
                "score {f} for ({c}, {l}) is outside [0, 1]"
            )));
        }
    }
    for c in CLASSIFIERS {
        for l in task.labels() {
            if !scores.contains_key(&(c, l)) {
                return Err(Error::InvalidPolicy(format!("missing score for ({c}, {l})")));
            }
        }
    }
    Ok(FusionPolicy {
        task,
        priority: scores.clone(),
    })
}

/// Parses `classifier label score` lines. Blank lines and `#` comments are
/// ignored; the task is taken from the labels.
pub fn parse_policy(text: &str) -> Result<FusionPolicy> {
    let mut scores = BTreeMap::new();
    let mut task = None;
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |m: String| Error::InvalidPolicy(format!("line {}: {m}", n + 1));
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [c, l, f] = fields[..] else {
            return Err(bad(format!("expected `classifier label score`, got `{line}`")));
        };
        let c: ClassifierId = c.parse().map_err(|_| bad(format!("unknown classifier `{c}`")))?;
        let l = Label::from_name(l).ok_or_else(|| bad(format!("unknown label `{l}`")))?;
        let f: f64 = f.parse().map_err(|_| bad(format!("bad score `{f}`")))?;
        match task {
            None => task = Some(l.task()),
            Some(t) if t != l.task() => return Err(bad(format!("label `{l}` mixes tasks"))),
            _ => {}
        }
        if scores.insert((c, l), f).is_some() {
            return Err(bad(format!("duplicate entry for ({c}, {l})")));
        }
    }
    let task = task.ok_or_else(|| Error::InvalidPolicy("policy is empty".into()))?;
    build_policy(task, &scores)
}

/// Fuses two predicted labels.
pub fn fuse_labels(svm: Label, paum: Label, policy: &FusionPolicy) -> Result<Label> {
    let p_svm = lookup(policy, Algorithm::Svm, svm)?;
    let p_paum = lookup(policy, Algorithm::Paum, paum)?;
    if svm == paum {
        return Ok(svm);
    }
    Ok(if p_paum > p_svm { paum } else { svm })
}

pub fn fuse(svm: &Prediction, paum: &Prediction, policy: &FusionPolicy) -> Result<Label> {
    fuse_labels(svm.label, paum.label, policy)
}

fn lookup(policy: &FusionPolicy, c: ClassifierId, l: Label) -> Result<f64> {
    policy.priority(c, l).ok_or_else(|| {
        Error::InvalidArgument(format!("label `{l}` is not covered by the {} policy", policy.task))
    })
}
