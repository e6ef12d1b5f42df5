//! Document-level glue from raw text to citing sentences and feature vectors.

use serde::Serialize;

use crate::citation::{
    extract_bibliography, find_citation_sentences, link_markers, Bibliography, CitationMarker,
    CitationSentence, CitationStyle, Diagnostic, DiagnosticKind, Linkage,
};
use crate::features::{pos_tag, vectorize, FeatureConfig, FeatureVector};
use crate::ingest::{
    clean_text, detect_sections, split_sentences, tokenize, CleanDocument, RawDocument, Section,
    Sentence, Span, Token,
};
use crate::resources::Resources;

#[derive(Debug, Clone)]
pub struct ParsedDocument {
    pub clean: CleanDocument,
    pub tokens: Vec<Token>,
    pub sentences: Vec<Sentence>,
    pub bibliography: Bibliography,
    pub citation_sentences: Vec<CitationSentence>,
    /// Links for the markers of `citation_sentences`, flattened in order.
    pub linkage: Linkage,
    pub diagnostics: Vec<Diagnostic>,
}

impl ParsedDocument {
    /// All markers in document order; indices match `linkage`.
    pub fn markers(&self) -> Vec<&CitationMarker> {
        self.citation_sentences
            .iter()
            .flat_map(|s| s.markers.iter())
            .collect()
    }

    pub fn sentence_tokens(&self, sentence: &Sentence) -> &[Token] {
        &self.tokens[sentence.tokens.clone()]
    }
}

/// Runs cleaning, tokenization, sentence splitting, section labelling,
/// bibliography extraction, citing-sentence detection and marker linking.
pub fn parse_document(raw: &RawDocument, resources: &Resources) -> ParsedDocument {
    let clean = clean_text(raw);
    let tokens = tokenize(&clean);
    let sentences = split_sentences(&clean, &tokens);
    let sentences = detect_sections(&sentences, &clean, &resources.headings);
    let bibliography = extract_bibliography(&clean, &resources.headings);
    let (citation_sentences, mut diagnostics) =
        find_citation_sentences(&clean.text, &sentences, &tokens, bibliography.block);
    let markers: Vec<CitationMarker> = citation_sentences
        .iter()
        .flat_map(|s| s.markers.iter().cloned())
        .collect();
    let linkage = link_markers(&markers, &bibliography.entries);

    if clean.text.trim().is_empty() {
        diagnostics.push(Diagnostic::new(
            DiagnosticKind::EmptyDocument,
            None,
            "document has no text",
        ));
    }
    let mut all = bibliography.diagnostics.clone();
    all.append(&mut diagnostics);
    all.extend(linkage.unresolved.iter().cloned());

    ParsedDocument {
        clean,
        tokens,
        sentences,
        bibliography,
        citation_sentences,
        linkage,
        diagnostics: all,
    }
}

/// Feature vector of one citing sentence of a parsed document.
pub fn sentence_features(
    parsed: &ParsedDocument,
    sentence: &CitationSentence,
    config: &FeatureConfig,
    resources: &Resources,
) -> FeatureVector {
    let tagged = pos_tag(parsed.sentence_tokens(&sentence.sentence), &resources.tagger);
    vectorize(sentence.sentence_id, &tagged, config, &resources.lexical)
}

/// Feature vector of a standalone sentence, as stored in annotated corpora.
pub fn text_features(
    sentence_id: usize,
    text: &str,
    config: &FeatureConfig,
    resources: &Resources,
) -> FeatureVector {
    let tokens = crate::ingest::tokenize::tokenize_str(text);
    let tagged = pos_tag(&tokens, &resources.tagger);
    vectorize(sentence_id, &tagged, config, &resources.lexical)
}

#[derive(Debug, Clone, Serialize)]
pub struct MarkerRecord {
    pub style: CitationStyle,
    pub keys: Vec<String>,
    pub span: Span,
}

/// One line of the citing-sentence dump.
#[derive(Debug, Clone, Serialize)]
pub struct CitationSentenceRecord {
    pub doc_id: String,
    pub sentence_text: String,
    pub section: Section,
    pub markers: Vec<MarkerRecord>,
}

pub fn citation_sentence_records(parsed: &ParsedDocument) -> Vec<CitationSentenceRecord> {
    parsed
        .citation_sentences
        .iter()
        .map(|s| CitationSentenceRecord {
            doc_id: parsed.clean.doc_id.clone(),
            sentence_text: s.text.clone(),
            section: s.sentence.section,
            markers: s
                .markers
                .iter()
                .map(|m| MarkerRecord {
                    style: m.style,
                    keys: m.keys.clone(),
                    span: m.span,
                })
                .collect(),
        })
        .collect()
}

/// Citing sentences as JSON Lines.
pub fn citation_sentences_jsonl(parsed: &ParsedDocument) -> String {
    citation_sentence_records(parsed)
        .iter()
        .map(|r| serde_json::to_string(r).expect("record serializes") + "\n")
        .collect()
}
