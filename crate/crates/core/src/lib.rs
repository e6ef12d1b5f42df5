//! Citation sentiment and citation nature analysis for scientific publications.
//!
//! The crate takes pre-extracted publication text through a fixed pipeline:
//!
//! 1. [`ingest`] cleans the text, tokenizes it, splits sentences and labels
//!    each sentence with the section it belongs to.
//! 2. [`citation`] extracts the bibliography, keeps only the sentences that
//!    carry a citation marker and links markers to bibliography entries.
//! 3. [`features`] turns citing sentences into sparse feature vectors (POS
//!    tags, token strings, Porter stems, lexical clusters).
//! 4. [`classify`] trains one-vs-rest linear models (SGD hinge-loss SVM and
//!    the perceptron with uneven margins) and predicts labels.
//! 5. [`fusion`] combines the two classifiers with a per-class priority table.
//! 6. [`eval`] holds corpus formats, stratified splits, metrics,
//!    cross-validation and sweep experiments.
//! 7. [`report`] aggregates a whole document per bibliography entry and
//!    renders a static HTML/SVG report.
//!
//! ```
//! use senticite::ingest::RawDocument;
//! use senticite::pipeline::parse_document;
//! use senticite::resources::Resources;
//!
//! let raw = RawDocument::new("demo", "We use [3].\n\nReferences\n[3] A. Author, A title, 2001.\n").unwrap();
//! let parsed = parse_document(&raw, &Resources::bundled());
//! assert_eq!(parsed.citation_sentences.len(), 1);
//! assert_eq!(parsed.bibliography.entries[0].key, "3");
//! ```

pub mod citation;
pub mod classify;
pub mod error;
pub mod eval;
pub mod features;
pub mod fusion;
pub mod ingest;
pub mod pipeline;
pub mod report;
pub mod resources;

pub use error::{Error, Result};
