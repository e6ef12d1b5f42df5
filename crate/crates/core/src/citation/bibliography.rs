use std::collections::HashSet;
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use super::patterns::author_year_key;
use super::{Diagnostic, DiagnosticKind};
use crate::ingest::{heading_lines, CleanDocument, HeadingLexicon, Section, Span};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BibliographyEntry {
    pub key: String,
    /// Entry text with wrapped lines joined by single spaces.
    pub raw_text: String,
    pub span: Span,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bibliography {
    pub entries: Vec<BibliographyEntry>,
    /// Byte range of the reference list, when one was located.
    pub block: Option<Span>,
    pub diagnostics: Vec<Diagnostic>,
}

fn numeric_start() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^\s*(?:\[(\d{1,4})\]|(\d{1,4})\.\s+\p{Lu})").unwrap())
}

fn bracket_start() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^\s*\[\d{1,4}\]").unwrap())
}

fn author_start() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(
            r"^\s*((?:(?:van|von|de|der|den|di|da|du|le|la|dos|del)\s+)*\p{Lu}[\p{L}'’\-]*\p{L}),\s+\p{Lu}",
        )
        .unwrap()
    })
}

fn year() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"\b(?:19|20)\d{2}[a-z]?\b").unwrap())
}

struct Line<'a> {
    span: Span,
    text: &'a str,
}

fn lines_in(text: &str, block: Span) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    let mut at = block.start;
    for raw in text[block.start..block.end].split_inclusive('\n') {
        let content = raw.trim_end_matches('\n');
        let lead = content.len() - content.trim_start().len();
        let trimmed = content.trim();
        out.push(Line {
            span: Span::new(at + lead, at + lead + trimmed.len()),
            text: trimmed,
        });
        at += raw.len();
    }
    out
}

/// Locates the reference list and splits it into keyed entries.
///
/// The list starts after the last heading the lexicon maps to
/// `References` and runs until the next recognised heading. Without such a
/// heading, the last cluster of lines opening with "[N]" is used. Numeric
/// entries are keyed by their number, author-year entries by first surname
/// plus year. Lines without a leading key continue the previous entry.
pub fn extract_bibliography(doc: &CleanDocument, lexicon: &HeadingLexicon) -> Bibliography {
    let text = doc.text.as_str();
    let mut bib = Bibliography::default();

    let recognised: Vec<_> = heading_lines(text)
        .into_iter()
        .filter_map(|h| lexicon.lookup(&h.text).map(|s| (h, s)))
        .collect();
    let block = match recognised
        .iter()
        .rposition(|(_, s)| *s == Section::References)
    {
        Some(i) => {
            let start = recognised[i].0.span.end;
            let end = recognised
                .get(i + 1)
                .map_or(text.len(), |(h, _)| h.span.start);
            Some(Span::new(start, end))
        }
        None => fallback_block(text).inspect(|b| {
            bib.diagnostics.push(Diagnostic::new(
                DiagnosticKind::FallbackReferenceBlock,
                Some(*b),
                "no reference heading; using trailing block of numbered lines",
            ));
        }),
    };
    let Some(block) = block else {
        bib.diagnostics.push(Diagnostic::new(
            DiagnosticKind::NoReferenceSection,
            None,
            "no reference section found",
        ));
        return bib;
    };
    bib.block = Some(block);

    let lines = lines_in(text, block);
    let numeric = lines.iter().any(|l| numeric_start().is_match(l.text));

    // (key or None, span, pieces)
    let mut raw_entries: Vec<(Option<String>, Span, Vec<&str>)> = Vec::new();
    let mut after_blank = true;
    for line in &lines {
        if line.text.is_empty() {
            after_blank = true;
            continue;
        }
        let opens = if numeric {
            numeric_start()
                .captures(line.text)
                .map(|c| c.get(1).or(c.get(2)).unwrap().as_str().to_string())
                .map(|k| k.trim_start_matches('0').to_string())
                .map(|k| if k.is_empty() { "0".to_string() } else { k })
        } else if author_start().is_match(line.text) || after_blank {
            Some(String::new())
        } else {
            None
        };
        after_blank = false;
        match (opens, raw_entries.last_mut()) {
            (Some(k), _) => raw_entries.push((
                (!k.is_empty()).then_some(k),
                line.span,
                vec![line.text],
            )),
            (None, Some(last)) => {
                last.1.end = line.span.end;
                last.2.push(line.text);
            }
            (None, None) => {}
        }
    }

    let mut seen = HashSet::new();
    for (key, span, pieces) in raw_entries {
        let raw_text = pieces.join(" ");
        let key = match key {
            Some(k) => Some(k),
            None => author_start()
                .captures(&raw_text)
                .and_then(|c| {
                    let surname = c.get(1).unwrap();
                    year()
                        .find(&raw_text[surname.end()..])
                        .map(|y| author_year_key(surname.as_str(), y.as_str()))
                }),
        };
        let Some(key) = key else {
            bib.diagnostics.push(Diagnostic::new(
                DiagnosticKind::EntryWithoutKey,
                Some(span),
                "reference entry has no recognisable key",
            ));
            continue;
        };
        if !seen.insert(key.clone()) {
            bib.diagnostics.push(Diagnostic::new(
                DiagnosticKind::DuplicateKey,
                Some(span),
                format!("duplicate reference key `{key}`; keeping the first entry"),
            ));
            continue;
        }
        bib.entries.push(BibliographyEntry {
            key,
            raw_text,
            span,
        });
    }
    bib
}

/// The last run of lines opening with "[N]", allowing up to three
/// continuation lines between numbered ones.
fn fallback_block(text: &str) -> Option<Span> {
    let lines = lines_in(text, Span::new(0, text.len()));
    let numbered: Vec<usize> = lines
        .iter()
        .enumerate()
        .filter(|(_, l)| bracket_start().is_match(l.text))
        .map(|(i, _)| i)
        .collect();
    let last = *numbered.last()?;
    let mut first = last;
    for w in numbered.windows(2).rev() {
        if w[1] - w[0] <= 4 {
            first = w[0];
        } else {
            break;
        }
    }
    Some(Span::new(lines[first].span.start, text.len()))
}
