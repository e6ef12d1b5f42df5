use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{porter, LexicalResource, PosTag, TaggedToken};
use crate::error::{Error, Result};
use crate::ingest::TokenKind;

/// Token feature that replaces every citation marker.
pub const CITATION_PLACEHOLDER: &str = "tok=<CIT>";
const NUMBER_PLACEHOLDER: &str = "tok=<NUM>";
const NEGATION_WINDOW: usize = 3;
const NEGATORS: &[&str] = &[
    "not", "no", "never", "cannot", "without", "neither", "nor", "hardly", "n't", "none",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub features: BTreeMap<String, f64>,
    pub source_sentence_id: usize,
}

impl FeatureVector {
    pub fn new(source_sentence_id: usize) -> Self {
        FeatureVector {
            features: BTreeMap::new(),
            source_sentence_id,
        }
    }

    pub fn add(&mut self, name: impl Into<String>, weight: f64) {
        *self.features.entry(name.into()).or_insert(0.0) += weight;
    }

    pub fn get(&self, name: &str) -> f64 {
        self.features.get(name).copied().unwrap_or(0.0)
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn scaled(&self, c: f64) -> FeatureVector {
        FeatureVector {
            features: self.features.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
            source_sentence_id: self.source_sentence_id,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FeaturePreset {
    OnlyPos,
    Combination,
}

impl std::str::FromStr for FeaturePreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "only-pos" | "only_pos" => Ok(FeaturePreset::OnlyPos),
            "combination" => Ok(FeaturePreset::Combination),
            _ => Err(Error::InvalidArgument(format!(
                "unknown feature preset `{s}` (expected only-pos or combination)"
            ))),
        }
    }
}

/// Which feature families to emit.
///
/// Hypernyms, token shape and negation scope are toggled separately from
/// synonyms so each family can be ablated on its own. Shape and negation
/// are off in both presets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureConfig {
    pub use_token_strings: bool,
    pub use_pos: bool,
    pub use_stems: bool,
    pub use_lexical_clusters: bool,
    pub use_hypernyms: bool,
    pub use_shape: bool,
    pub use_negation: bool,
    /// Lower-cased words excluded from token, stem and lexical features.
    #[serde(default)]
    pub stopwords: BTreeSet<String>,
}

impl FeatureConfig {
    pub fn only_pos() -> Self {
        FeatureConfig {
            use_token_strings: false,
            use_pos: true,
            use_stems: false,
            use_lexical_clusters: false,
            use_hypernyms: false,
            use_shape: false,
            use_negation: false,
            stopwords: BTreeSet::new(),
        }
    }

    pub fn combination() -> Self {
        FeatureConfig {
            use_token_strings: true,
            use_pos: true,
            use_stems: true,
            use_lexical_clusters: true,
            use_hypernyms: true,
            use_shape: false,
            use_negation: false,
            stopwords: BTreeSet::new(),
        }
    }

    pub fn preset(p: FeaturePreset) -> Self {
        match p {
            FeaturePreset::OnlyPos => Self::only_pos(),
            FeaturePreset::Combination => Self::combination(),
        }
    }

    pub fn with_stopwords<I: IntoIterator<Item = S>, S: AsRef<str>>(mut self, words: I) -> Self {
        self.stopwords = words
            .into_iter()
            .map(|w| w.as_ref().to_lowercase())
            .collect();
        self
    }
}

fn length_bucket(n: usize) -> &'static str {
    match n {
        0..=3 => "1-3",
        4..=6 => "4-6",
        7..=9 => "7-9",
        _ => "10+",
    }
}

/// Builds the feature vector of one tagged sentence. Weights are counts.
///
/// Names are namespaced: `pos=`, `tok=`, `stem=`, `lex=`, `shape=`, `neg=`
/// plus the `neg_scope` window count. Citation markers only ever surface as
/// [`CITATION_PLACEHOLDER`] and numbers as `tok=<NUM>`, so no reference key
/// leaks into a feature name.
pub fn vectorize(
    sentence_id: usize,
    tagged: &[TaggedToken],
    config: &FeatureConfig,
    resource: &LexicalResource,
) -> FeatureVector {
    let mut v = FeatureVector::new(sentence_id);
    let mut negation_left = 0usize;

    for t in tagged {
        if config.use_pos {
            v.add(format!("pos={}", t.pos.as_str()), 1.0);
        }
        match t.token.kind {
            TokenKind::CitationCandidate => {
                if config.use_token_strings {
                    v.add(CITATION_PLACEHOLDER, 1.0);
                }
                continue;
            }
            TokenKind::Number => {
                if config.use_token_strings {
                    v.add(NUMBER_PLACEHOLDER, 1.0);
                }
                continue;
            }
            TokenKind::Punctuation => {
                if config.use_token_strings {
                    v.add(format!("tok={}", t.token.surface), 1.0);
                }
                continue;
            }
            TokenKind::Word => {}
        }

        let lower = t.token.surface.to_lowercase();
        let stopword = config.stopwords.contains(&lower);
        let stem = porter::stem(&lower).unwrap_or_else(|_| lower.clone());

        if config.use_negation {
            if NEGATORS.contains(&lower.as_str()) {
                negation_left = NEGATION_WINDOW;
            } else if negation_left > 0 {
                negation_left -= 1;
                v.add("neg_scope", 1.0);
                v.add(format!("neg={stem}"), 1.0);
            }
        }
        if config.use_shape {
            v.add(format!("shape=cap:{}", t.capitalization.as_str()), 1.0);
            v.add(format!("shape=len:{}", length_bucket(t.length)), 1.0);
        }
        if stopword {
            continue;
        }
        if config.use_token_strings {
            v.add(format!("tok={lower}"), 1.0);
        }
        if config.use_stems {
            v.add(format!("stem={stem}"), 1.0);
        }
        if config.use_lexical_clusters || config.use_hypernyms {
            let lemma = if resource.synonym(&lower).is_some()
                || !resource.hypernyms(&lower).is_empty()
            {
                lower.as_str()
            } else {
                stem.as_str()
            };
            if config.use_lexical_clusters {
                if let Some(c) = resource.synonym(lemma) {
                    v.add(format!("lex={c}"), 1.0);
                }
            }
            if config.use_hypernyms {
                for a in resource.hypernyms(lemma) {
                    v.add(format!("lex={a}"), 1.0);
                }
            }
        }
    }
    v
}

impl PosTag {
    pub fn feature_name(&self) -> String {
        format!("pos={}", self.as_str())
    }
}
