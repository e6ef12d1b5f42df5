//! Sparse features for citing sentences.

mod lexical;
mod pos;
mod porter;
mod vectorize;

pub use lexical::{lexical_expand, LexicalResource};
pub use porter::stem;
pub use pos::{pos_tag, Capitalization, LexiconTagger, PosTag, TaggedToken, Tagger};
pub use vectorize::{
    vectorize, FeatureConfig, FeaturePreset, FeatureVector, CITATION_PLACEHOLDER,
};
