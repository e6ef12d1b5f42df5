//! Annotated corpora, splits, metrics and the experiment harness.

mod bundled;
mod corpus;
mod distribution;
mod experiment;
mod metrics;
mod split;
pub mod tables;

pub use bundled::{bundled_corpus, bundled_manifest, SAMPLE_DOCUMENT, SAMPLE_DOCUMENT_ID};
pub use corpus::{load_corpus, parse_corpus, to_examples, AnnotatedCorpus, AnnotatedRecord, Manifest};
pub use distribution::{section_distribution, SectionDistribution};
pub use experiment::{
    cross_validate, feature_ablation, predict_all, run_holdout, sweep_test_documents,
    sweep_train_size, train_model, AblationRow, CrossValidation, ExperimentConfig, Holdout,
    SweepPoint,
};
pub use metrics::{evaluate, report_from_correct_counts, ClassMetrics, EvalReport};
pub use split::{canonical_order, half_split, proportional_sample, stratified_split, DatasetSplit};
