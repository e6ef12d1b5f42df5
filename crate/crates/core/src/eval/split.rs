use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::corpus::{class_counts, AnnotatedCorpus, AnnotatedRecord};
use crate::classify::{Label, Task};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DatasetSplit {
    pub task: Task,
    pub train: Vec<AnnotatedRecord>,
    pub test: Vec<AnnotatedRecord>,
    pub train_counts: BTreeMap<Label, usize>,
    pub test_counts: BTreeMap<Label, usize>,
}

/// Records sorted by provenance, so splits do not depend on file order.
pub fn canonical_order(records: &[AnnotatedRecord]) -> Vec<AnnotatedRecord> {
    let mut out = records.to_vec();
    out.sort();
    out
}

pub(crate) fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Canonical-order indices of each label, each list shuffled with its own
/// seeded stream.
fn shuffled_by_label(records: &[AnnotatedRecord], task: Task, seed: u64) -> Vec<(Label, Vec<usize>)> {
    task.labels()
        .into_iter()
        .enumerate()
        .map(|(k, label)| {
            let mut idx: Vec<usize> = (0..records.len()).filter(|i| records[*i].label == label).collect();
            idx.shuffle(&mut rng_for(seed, k as u64));
            (label, idx)
        })
        .collect()
}

/// Train/test index split of already canonical records: `take(label,
/// available)` training examples per label.
pub(crate) fn split_indices(
    records: &[AnnotatedRecord],
    task: Task,
    seed: u64,
    take: impl Fn(Label, usize) -> Result<usize>,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut in_train = vec![false; records.len()];
    for (label, idx) in shuffled_by_label(records, task, seed) {
        let n = take(label, idx.len())?;
        for i in &idx[..n] {
            in_train[*i] = true;
        }
    }
    let train = (0..records.len()).filter(|i| in_train[*i]).collect();
    let test = (0..records.len()).filter(|i| !in_train[*i]).collect();
    Ok((train, test))
}

/// Exactly `n_per_class` training records per label, drawn without
/// replacement; everything else is the test set, which keeps the corpus
/// class distribution.
pub fn stratified_split(corpus: &AnnotatedCorpus, n_per_class: usize, seed: u64) -> Result<DatasetSplit> {
    let records = canonical_order(&corpus.records);
    let (train, test) = split_indices(&records, corpus.task, seed, |label, available| {
        if available < n_per_class {
            Err(Error::Shortage {
                label: label.to_string(),
                needed: n_per_class,
                available,
            })
        } else {
            Ok(n_per_class)
        }
    })?;
    Ok(make_split(corpus.task, &records, &train, &test))
}

/// Seeded half split per label: `⌊n/2⌋` of each label trains, the rest
/// tests. Every label present needs at least two records.
pub fn half_split(records: &[AnnotatedRecord], task: Task, seed: u64) -> Result<(Vec<usize>, Vec<usize>)> {
    split_indices(records, task, seed, |label, available| match available {
        0 => Ok(0),
        1 => Err(Error::InvalidCorpus(format!(
            "class `{label}` has a single record and cannot be split"
        ))),
        n => Ok(n / 2),
    })
}

/// `n` records drawn so that class shares follow the corpus distribution
/// (largest remainder rounding).
pub fn proportional_sample(records: &[AnnotatedRecord], task: Task, n: usize, seed: u64) -> Result<Vec<AnnotatedRecord>> {
    let records = canonical_order(records);
    if n > records.len() {
        return Err(Error::InvalidArgument(format!(
            "sample of {n} requested from {} records",
            records.len()
        )));
    }
    let counts = class_counts(task, &records);
    let total = records.len().max(1) as f64;
    let mut quota: BTreeMap<Label, usize> = BTreeMap::new();
    let mut rema: Vec<(f64, Label)> = Vec::new();
    for (l, c) in &counts {
        let exact = n as f64 * *c as f64 / total;
        quota.insert(*l, exact.floor() as usize);
        rema.push((exact - exact.floor(), *l));
    }
    let mut left = n - quota.values().sum::<usize>();
    rema.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    for (_, l) in rema {
        if left == 0 {
            break;
        }
        if quota[&l] < counts[&l] {
            *quota.get_mut(&l).unwrap() += 1;
            left -= 1;
        }
    }
    let (train, _) = split_indices(&records, task, seed, |l, _| Ok(quota[&l]))?;
    Ok(train.into_iter().map(|i| records[i].clone()).collect())
}

fn make_split(task: Task, records: &[AnnotatedRecord], train: &[usize], test: &[usize]) -> DatasetSplit {
    let train: Vec<AnnotatedRecord> = train.iter().map(|i| records[*i].clone()).collect();
    let test: Vec<AnnotatedRecord> = test.iter().map(|i| records[*i].clone()).collect();
    DatasetSplit {
        task,
        train_counts: class_counts(task, &train),
        test_counts: class_counts(task, &test),
        train,
        test,
    }
}
