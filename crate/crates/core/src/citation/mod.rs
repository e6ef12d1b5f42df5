//! Citation filtering: bibliography extraction, citing-sentence detection,
//! marker location and marker-to-entry linking.

mod bibliography;
pub mod patterns;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::ingest::{Section, Sentence, Span, Token, TokenKind};

pub use bibliography::{extract_bibliography, Bibliography, BibliographyEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CitationStyle {
    NumericBracket,
    NumericBracketList,
    AuthorYear,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CitationMarker {
    pub style: CitationStyle,
    pub keys: Vec<String>,
    /// Byte range in the document text; always inside the owning sentence.
    pub span: Span,
    pub sentence_id: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CitationSentence {
    pub sentence_id: usize,
    pub sentence: Sentence,
    pub markers: Vec<CitationMarker>,
    pub text: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticKind {
    NoReferenceSection,
    FallbackReferenceBlock,
    DuplicateKey,
    EntryWithoutKey,
    UnclosedBracket,
    UnresolvedKey,
    EmptyDocument,
}

impl DiagnosticKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            DiagnosticKind::NoReferenceSection => "no_reference_section",
            DiagnosticKind::FallbackReferenceBlock => "fallback_reference_block",
            DiagnosticKind::DuplicateKey => "duplicate_key",
            DiagnosticKind::EntryWithoutKey => "entry_without_key",
            DiagnosticKind::UnclosedBracket => "unclosed_bracket",
            DiagnosticKind::UnresolvedKey => "unresolved_key",
            DiagnosticKind::EmptyDocument => "empty_document",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub span: Option<Span>,
    pub message: String,
}

impl Diagnostic {
    pub fn new(kind: DiagnosticKind, span: Option<Span>, message: impl Into<String>) -> Self {
        Diagnostic {
            kind,
            span,
            message: message.into(),
        }
    }

    /// `doc_id<TAB>kind<TAB>start-end<TAB>message`; `-` when there is no span.
    pub fn log_line(&self, doc_id: &str) -> String {
        let span = self
            .span
            .map_or_else(|| "-".to_string(), |s| format!("{}-{}", s.start, s.end));
        format!("{doc_id}\t{}\t{span}\t{}", self.kind.as_str(), self.message)
    }
}

/// Markers inside one sentence, in text order.
///
/// Each citation-candidate token yields one marker: "[3], [4]" gives two
/// markers, "[3, 4]" one marker with two keys, and the bracket range
/// "[16]–[18]" one marker with keys 16, 17 and 18. An opening bracket followed
/// by a number and never closed yields no marker and a diagnostic.
pub fn locate_citation_tokens(
    sentence_id: usize,
    sentence: &Sentence,
    tokens: &[Token],
) -> (Vec<CitationMarker>, Vec<Diagnostic>) {
    let toks = &tokens[sentence.tokens.clone()];
    let mut markers = Vec::new();
    let mut diagnostics = Vec::new();
    let mut last_candidate: Option<usize> = None;
    for (i, t) in toks.iter().enumerate() {
        match t.kind {
            TokenKind::CitationCandidate => {
                if let Some((style, keys)) = patterns::parse_candidate(&t.surface) {
                    let dash_between = last_candidate.is_some_and(|j| {
                        j + 2 == i && matches!(toks[j + 1].surface.as_str(), "-" | "–" | "—")
                    });
                    if dash_between {
                        if let Some(merged) = markers.last_mut().and_then(|m| bracket_range(m, &keys, t.span)) {
                            *markers.last_mut().unwrap() = merged;
                            last_candidate = None;
                            continue;
                        }
                    }
                    last_candidate = Some(i);
                    markers.push(CitationMarker {
                        style,
                        keys,
                        span: t.span,
                        sentence_id,
                    });
                }
            }
            TokenKind::Punctuation if t.surface == "[" => {
                let numeric_next = toks.get(i + 1).is_some_and(|n| n.kind == TokenKind::Number);
                let closed = toks[i + 1..]
                    .iter()
                    .any(|n| n.kind == TokenKind::Punctuation && n.surface == "]");
                if numeric_next && !closed {
                    diagnostics.push(Diagnostic::new(
                        DiagnosticKind::UnclosedBracket,
                        Some(t.span),
                        "unclosed citation bracket",
                    ));
                }
            }
            _ => {}
        }
    }
    (markers, diagnostics)
}

fn bracket_range(first: &CitationMarker, keys: &[String], end: Span) -> Option<CitationMarker> {
    if first.style != CitationStyle::NumericBracket || keys.len() != 1 {
        return None;
    }
    let lo: u32 = first.keys[0].parse().ok()?;
    let hi: u32 = keys[0].parse().ok()?;
    if hi <= lo || hi - lo > 50 {
        return None;
    }
    Some(CitationMarker {
        style: CitationStyle::NumericBracketList,
        keys: (lo..=hi).map(|k| k.to_string()).collect(),
        span: Span::new(first.span.start, end.end),
        sentence_id: first.sentence_id,
    })
}

/// Keeps exactly the sentences with at least one citation marker.
///
/// Sentences labelled `References` or lying inside `exclude` (the
/// bibliography block) are skipped. Neighbouring sentences are never
/// consulted.
pub fn find_citation_sentences(
    doc_text: &str,
    sentences: &[Sentence],
    tokens: &[Token],
    exclude: Option<Span>,
) -> (Vec<CitationSentence>, Vec<Diagnostic>) {
    let mut out = Vec::new();
    let mut diagnostics = Vec::new();
    for (id, s) in sentences.iter().enumerate() {
        if s.section == Section::References || exclude.is_some_and(|b| b.overlaps(&s.span)) {
            continue;
        }
        let (markers, diags) = locate_citation_tokens(id, s, tokens);
        diagnostics.extend(diags);
        if !markers.is_empty() {
            out.push(CitationSentence {
                sentence_id: id,
                sentence: s.clone(),
                markers,
                text: s.text(doc_text).to_string(),
            });
        }
    }
    (out, diagnostics)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkerLink {
    /// Index into the marker slice given to [`link_markers`].
    pub marker: usize,
    pub key: String,
    /// Index into the bibliography entries.
    pub entry: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Linkage {
    pub links: Vec<MarkerLink>,
    pub unresolved: Vec<Diagnostic>,
}

impl Linkage {
    pub fn entries_for(&self, marker: usize) -> impl Iterator<Item = usize> + '_ {
        self.links
            .iter()
            .filter(move |l| l.marker == marker)
            .map(|l| l.entry)
    }
}

/// Links every marker key that names a bibliography entry.
///
/// Exact key matches win; author-year keys also match case-insensitively.
pub fn link_markers(markers: &[CitationMarker], bib: &[BibliographyEntry]) -> Linkage {
    let exact: HashMap<&str, usize> = bib
        .iter()
        .enumerate()
        .map(|(i, e)| (e.key.as_str(), i))
        .collect();
    let folded: HashMap<String, usize> = bib
        .iter()
        .enumerate()
        .map(|(i, e)| (e.key.to_lowercase(), i))
        .collect();

    let mut linkage = Linkage::default();
    for (mi, m) in markers.iter().enumerate() {
        for key in &m.keys {
            let hit = exact
                .get(key.as_str())
                .copied()
                .or_else(|| folded.get(&key.to_lowercase()).copied());
            match hit {
                Some(entry) => linkage.links.push(MarkerLink {
                    marker: mi,
                    key: key.clone(),
                    entry,
                }),
                None => linkage.unresolved.push(Diagnostic::new(
                    DiagnosticKind::UnresolvedKey,
                    Some(m.span),
                    format!("citation key `{key}` has no bibliography entry"),
                )),
            }
        }
    }
    linkage
}
