use std::collections::BTreeMap;

use serde::Serialize;

use super::corpus::AnnotatedCorpus;
use crate::classify::Label;
use crate::error::{Error, Result};
use crate::ingest::Section;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectionDistribution {
    /// Column order of every row.
    pub buckets: [Section; 5],
    /// Per label: share of its bucketed records in each bucket.
    pub rows: BTreeMap<Label, [f64; 5]>,
    /// Per label: records that fall in one of the buckets.
    pub counts: BTreeMap<Label, usize>,
    /// Records in `other` or `references`, left out of the shares.
    pub unbucketed: usize,
}

/// Share of each label's records per section bucket. Rows of labels with at
/// least one bucketed record sum to 1.
pub fn section_distribution(corpus: &AnnotatedCorpus) -> Result<SectionDistribution> {
    let mut raw: BTreeMap<Label, [usize; 5]> = corpus.task.labels().into_iter().map(|l| (l, [0; 5])).collect();
    let mut unbucketed = 0;
    for (i, r) in corpus.records.iter().enumerate() {
        let section = r.section.ok_or_else(|| {
            Error::InvalidCorpus(format!("record {} of `{}` has no section", i + 1, corpus.name))
        })?;
        match Section::BUCKETS.iter().position(|s| *s == section) {
            Some(b) => raw.get_mut(&r.label).expect("task label")[b] += 1,
            None => unbucketed += 1,
        }
    }
    let counts: BTreeMap<Label, usize> = raw.iter().map(|(l, c)| (*l, c.iter().sum())).collect();
    let rows = raw
        .iter()
        .map(|(l, c)| {
            let n = counts[l];
            let mut row = [0.0; 5];
            if n > 0 {
                for (x, k) in row.iter_mut().zip(c) {
                    *x = *k as f64 / n as f64;
                }
            }
            (*l, row)
        })
        .collect();
    Ok(SectionDistribution {
        buckets: Section::BUCKETS,
        rows,
        counts,
        unbucketed,
    })
}
