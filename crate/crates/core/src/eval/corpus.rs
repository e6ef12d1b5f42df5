use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::classify::{Label, LabeledExample, Provenance, Task};
use crate::error::{Error, Result};
use crate::features::FeatureConfig;
use crate::ingest::Section;
use crate::pipeline::text_features;
use crate::resources::Resources;

/// One annotated citing sentence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AnnotatedRecord {
    pub doc_id: String,
    pub sentence: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section: Option<Section>,
    #[serde(default)]
    pub marker_keys: Vec<String>,
    pub label: Label,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnnotatedCorpus {
    pub name: String,
    pub task: Task,
    pub records: Vec<AnnotatedRecord>,
}

#[derive(Deserialize)]
struct RawRecord {
    doc_id: String,
    sentence: String,
    #[serde(default)]
    section: Option<String>,
    #[serde(default)]
    marker_keys: Vec<String>,
    label: String,
    task: String,
}

impl AnnotatedCorpus {
    pub fn new(name: impl Into<String>, task: Task, records: Vec<AnnotatedRecord>) -> Result<Self> {
        let name = name.into();
        if records.is_empty() {
            return Err(Error::InvalidCorpus(format!("corpus `{name}` has no records")));
        }
        if let Some(r) = records.iter().find(|r| r.label.task() != task) {
            return Err(Error::InvalidCorpus(format!(
                "label `{}` does not belong to the {task} task",
                r.label
            )));
        }
        Ok(AnnotatedCorpus {
            name,
            task,
            records,
        })
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Record count per label, over every label of the task.
    pub fn class_counts(&self) -> BTreeMap<Label, usize> {
        class_counts(self.task, &self.records)
    }

    pub fn to_examples(&self, features: &FeatureConfig, resources: &Resources) -> Vec<LabeledExample> {
        to_examples(&self.records, features, resources)
    }

    /// Serializes the records back to the JSON Lines format.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let mut v = serde_json::to_value(r).expect("record serializes");
            v["task"] = serde_json::Value::from(self.task.as_str());
            let _ = writeln!(out, "{v}");
        }
        out
    }
}

pub(crate) fn class_counts(task: Task, records: &[AnnotatedRecord]) -> BTreeMap<Label, usize> {
    let mut counts: BTreeMap<Label, usize> = task.labels().into_iter().map(|l| (l, 0)).collect();
    for r in records {
        *counts.entry(r.label).or_insert(0) += 1;
    }
    counts
}

/// Vectorizes records; the sentence id is the record index.
pub fn to_examples(
    records: &[AnnotatedRecord],
    features: &FeatureConfig,
    resources: &Resources,
) -> Vec<LabeledExample> {
    records
        .iter()
        .enumerate()
        .map(|(i, r)| LabeledExample {
            vector: text_features(i, &r.sentence, features, resources),
            label: r.label,
            provenance: Provenance {
                doc_id: r.doc_id.clone(),
                span: None,
                section: r.section,
            },
        })
        .collect()
}

/// Parses JSON Lines records `{doc_id, sentence, section, marker_keys,
/// label, task}`. Blank lines are skipped; line numbers in errors are
/// 1-based.
pub fn parse_corpus(name: &str, text: &str) -> Result<AnnotatedCorpus> {
    let mut task: Option<Task> = None;
    let mut records = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let bad = |message: String| Error::CorpusRecord {
            line: i + 1,
            message,
        };
        let raw: RawRecord = serde_json::from_str(line).map_err(|e| bad(e.to_string()))?;
        let t: Task = raw.task.parse().map_err(|_| bad(format!("unknown task `{}`", raw.task)))?;
        match task {
            None => task = Some(t),
            Some(prev) if prev != t => {
                return Err(bad(format!("task `{t}` differs from earlier `{prev}` records")))
            }
            _ => {}
        }
        let label = Label::parse(t, &raw.label).map_err(|e| bad(e.to_string()))?;
        let section = match raw.section.as_deref() {
            None | Some("") => None,
            Some(s) => Some(Section::parse(s).ok_or_else(|| bad(format!("unknown section `{s}`")))?),
        };
        records.push(AnnotatedRecord {
            doc_id: raw.doc_id,
            sentence: raw.sentence,
            section,
            marker_keys: raw.marker_keys,
            label,
        });
    }
    let task = task.ok_or_else(|| Error::InvalidCorpus(format!("corpus `{name}` is empty")))?;
    AnnotatedCorpus::new(name, task, records)
}

pub fn load_corpus(path: &Path) -> Result<AnnotatedCorpus> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "corpus".into());
    parse_corpus(&name, &text)
}

/// Expected class counts, written next to a corpus as `label = count` lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Manifest {
    pub task: Task,
    pub counts: BTreeMap<Label, usize>,
    /// Optional `label.section = count` entries.
    pub section_counts: BTreeMap<(Label, Section), usize>,
}

impl Manifest {
    /// Parses `key = value` lines. Label keys carry counts, `label.section`
    /// keys carry per-section counts; `task` and `total` are optional. `#`
    /// starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut counts = BTreeMap::new();
        let mut section_counts = BTreeMap::new();
        let mut declared_task = None;
        let mut total = None;
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |m: String| Error::CorpusRecord {
                line: i + 1,
                message: m,
            };
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| bad(format!("expected `key = value`, got `{line}`")))?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "task" => declared_task = Some(v.parse::<Task>().map_err(|e| bad(e.to_string()))?),
                "name" => {}
                _ => {
                    let n: usize = v.parse().map_err(|_| bad(format!("bad count `{v}`")))?;
                    if k == "total" {
                        total = Some(n);
                    } else if let Some((l, sec)) = k.split_once('.') {
                        let l = Label::from_name(l).ok_or_else(|| bad(format!("unknown label `{l}`")))?;
                        let sec = Section::parse(sec).ok_or_else(|| bad(format!("unknown section `{sec}`")))?;
                        section_counts.insert((l, sec), n);
                    } else {
                        let l = Label::from_name(k).ok_or_else(|| bad(format!("unknown label `{k}`")))?;
                        counts.insert(l, n);
                    }
                }
            }
        }
        let task = declared_task
            .or_else(|| counts.keys().next().map(|l| l.task()))
            .ok_or_else(|| Error::InvalidCorpus("manifest lists no classes".into()))?;
        if let Some(l) = counts
            .keys()
            .chain(section_counts.keys().map(|(l, _)| l))
            .find(|l| l.task() != task)
        {
            return Err(Error::InvalidCorpus(format!(
                "manifest label `{l}` is not a {task} label"
            )));
        }
        for l in task.labels() {
            counts.entry(l).or_insert(0);
        }
        let m = Manifest {
            task,
            counts,
            section_counts,
        };
        if let Some(t) = total {
            if t != m.total() {
                return Err(Error::InvalidCorpus(format!(
                    "manifest total {t} does not match class sum {}",
                    m.total()
                )));
            }
        }
        Ok(m)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Errors unless the corpus has exactly the listed counts.
    pub fn check(&self, corpus: &AnnotatedCorpus) -> Result<()> {
        if corpus.task != self.task {
            return Err(Error::InvalidCorpus(format!(
                "manifest is for {} but corpus is {}",
                self.task, corpus.task
            )));
        }
        let actual = corpus.class_counts();
        for (l, n) in &self.counts {
            if actual[l] != *n {
                return Err(Error::InvalidCorpus(format!(
                    "class `{l}`: manifest lists {n}, corpus has {}",
                    actual[l]
                )));
            }
        }
        if !self.section_counts.is_empty() {
            let mut seen: BTreeMap<(Label, Section), usize> = BTreeMap::new();
            for r in &corpus.records {
                if let Some(s) = r.section {
                    *seen.entry((r.label, s)).or_insert(0) += 1;
                }
            }
            if seen != self.section_counts {
                return Err(Error::InvalidCorpus(
                    "per-section counts differ from the manifest".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("task = {}\n", self.task);
        for (l, n) in &self.counts {
            let _ = writeln!(out, "{l} = {n}");
        }
        let _ = writeln!(out, "total = {}", self.total());
        for ((l, sec), n) in &self.section_counts {
            let _ = writeln!(out, "{l}.{sec} = {n}");
        }
        out
    }
}
