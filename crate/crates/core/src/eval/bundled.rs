//! Small annotated corpora and a sample document shipped with the crate.

use super::corpus::{parse_corpus, AnnotatedCorpus, Manifest};
use crate::classify::Task;

const SENTIMENT: &str = include_str!("../../data/corpus/sentiment.jsonl");
const SENTIMENT_MANIFEST: &str = include_str!("../../data/corpus/sentiment.manifest");
const NATURE: &str = include_str!("../../data/corpus/nature.jsonl");
const NATURE_MANIFEST: &str = include_str!("../../data/corpus/nature.manifest");

/// Doc id and text of a short publication with a ten-entry reference list.
pub const SAMPLE_DOCUMENT_ID: &str = "sample";
pub const SAMPLE_DOCUMENT: &str = include_str!("../../data/sample/sample.txt");

/// Hand-annotated mini-corpus of the task.
pub fn bundled_corpus(task: Task) -> AnnotatedCorpus {
    let (name, text) = match task {
        Task::Sentiment => ("sentiment-mini", SENTIMENT),
        Task::Nature => ("nature-mini", NATURE),
    };
    parse_corpus(name, text).expect("bundled corpus is valid")
}

pub fn bundled_manifest(task: Task) -> Manifest {
    let text = match task {
        Task::Sentiment => SENTIMENT_MANIFEST,
        Task::Nature => NATURE_MANIFEST,
    };
    Manifest::parse(text).expect("bundled manifest is valid")
}
