//! Text cleaning, tokenization, sentence splitting and section labelling.

mod clean;
mod sections;
mod sentences;
pub(crate) mod tokenize;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use clean::clean_text;
pub use sections::{detect_sections, heading_lines, HeadingLexicon, HeadingLine};
pub use sentences::split_sentences;
pub use tokenize::tokenize;

/// Half-open byte range `[start, end)` into a document's text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn overlaps(&self, other: &Span) -> bool {
        self.start < other.end && other.start < self.end
    }
}

/// Publication text as it comes out of an external PDF-to-text step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDocument {
    pub doc_id: String,
    pub text: String,
}

impl RawDocument {
    pub fn new(doc_id: impl Into<String>, text: impl Into<String>) -> Result<Self> {
        let doc_id = doc_id.into();
        if doc_id.is_empty() {
            return Err(Error::InvalidArgument("doc_id must not be empty".into()));
        }
        Ok(RawDocument {
            doc_id,
            text: text.into(),
        })
    }

    /// Decodes UTF-8 bytes; the error names the first invalid byte offset.
    pub fn from_bytes(doc_id: impl Into<String>, bytes: &[u8]) -> Result<Self> {
        let text = std::str::from_utf8(bytes).map_err(|e| Error::Decode {
            offset: e.valid_up_to(),
        })?;
        Self::new(doc_id, text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleanDocument {
    pub doc_id: String,
    pub text: String,
    /// Byte ranges of the *raw* text that were dropped, sorted and disjoint.
    pub removed_spans: Vec<Span>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TokenKind {
    Word,
    Number,
    Punctuation,
    CitationCandidate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub span: Span,
    pub kind: TokenKind,
}

/// Section buckets used to label sentences.
///
/// `References` marks the bibliography block; it is not one of the five
/// content buckets used by [`crate::eval::section_distribution`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Section {
    Introduction,
    Background,
    RelatedWork,
    Method,
    Evaluation,
    Other,
    References,
}

impl Section {
    /// The five content buckets, in table order.
    pub const BUCKETS: [Section; 5] = [
        Section::Introduction,
        Section::Background,
        Section::RelatedWork,
        Section::Method,
        Section::Evaluation,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Section::Introduction => "introduction",
            Section::Background => "background",
            Section::RelatedWork => "related_work",
            Section::Method => "method",
            Section::Evaluation => "evaluation",
            Section::Other => "other",
            Section::References => "references",
        }
    }

    pub fn parse(s: &str) -> Option<Section> {
        Some(match s.trim().to_ascii_lowercase().replace([' ', '-'], "_").as_str() {
            "introduction" => Section::Introduction,
            "background" => Section::Background,
            "related_work" => Section::RelatedWork,
            "method" => Section::Method,
            "evaluation" => Section::Evaluation,
            "other" => Section::Other,
            "references" => Section::References,
            _ => return None,
        })
    }
}

impl std::fmt::Display for Section {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    /// Index range into the document token list.
    pub tokens: std::ops::Range<usize>,
    pub span: Span,
    pub section: Section,
}

impl Sentence {
    pub fn text<'a>(&self, doc_text: &'a str) -> &'a str {
        &doc_text[self.span.start..self.span.end]
    }
}
