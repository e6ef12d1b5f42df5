use std::sync::OnceLock;

use regex::Regex;

use super::{CleanDocument, Section, Sentence, Span};
use crate::error::{Error, Result};

const BUNDLED_HEADINGS: &str = include_str!("../../data/headings.txt");

fn numbering() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^(?:\d+(?:\.\d+)*\.?|[IVXLC]+\.|[A-Z]\.)\s+").unwrap())
}

/// Maps heading phrases to section buckets.
#[derive(Debug, Clone, PartialEq)]
pub struct HeadingLexicon {
    entries: Vec<(String, Section)>,
}

impl Default for HeadingLexicon {
    fn default() -> Self {
        Self::parse(BUNDLED_HEADINGS, "<bundled headings>").expect("bundled heading lexicon")
    }
}

impl HeadingLexicon {
    /// Parses `phrase = bucket` lines; `#` starts a comment.
    pub fn parse(src: &str, origin: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, line) in src.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Resource {
                path: origin.to_string(),
                line: i + 1,
                message,
            };
            let (phrase, bucket) = line
                .split_once('=')
                .ok_or_else(|| err("expected `phrase = bucket`".into()))?;
            let section = Section::parse(bucket)
                .ok_or_else(|| err(format!("unknown section bucket `{}`", bucket.trim())))?;
            entries.push((normalize_words(phrase), section));
        }
        Ok(HeadingLexicon { entries })
    }

    pub fn from_entries<I, S>(entries: I) -> Self
    where
        I: IntoIterator<Item = (S, Section)>,
        S: AsRef<str>,
    {
        HeadingLexicon {
            entries: entries
                .into_iter()
                .map(|(p, s)| (normalize_words(p.as_ref()), s))
                .collect(),
        }
    }

    /// Longest phrase that the heading equals or starts with.
    pub fn lookup(&self, heading: &str) -> Option<Section> {
        let norm = normalize_heading(heading);
        self.entries
            .iter()
            .filter(|(phrase, _)| {
                norm == *phrase
                    || (norm.starts_with(phrase.as_str())
                        && norm.as_bytes().get(phrase.len()) == Some(&b' '))
            })
            .max_by_key(|(phrase, _)| phrase.len())
            .map(|(_, s)| *s)
    }
}

fn normalize_words(s: &str) -> String {
    s.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

fn normalize_heading(line: &str) -> String {
    let line = line.trim();
    let line = numbering()
        .find(line)
        .map_or(line, |m| &line[m.end()..]);
    normalize_words(line.trim_end_matches(':'))
}

/// A line whose shape makes it a plausible section heading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeadingLine {
    /// Byte range of the line, without its newline.
    pub span: Span,
    pub text: String,
}

fn heading_shaped(line: &str) -> bool {
    let line = line.trim();
    if line.is_empty() || line.len() > 80 || line.split_whitespace().count() > 8 {
        return false;
    }
    if line.ends_with(['.', ',', ';']) || line.contains('[') {
        return false;
    }
    let last = line.rsplit(' ').next().unwrap_or("").to_lowercase();
    if TRAILING_FUNCTION_WORDS.contains(&last.as_str()) {
        return false;
    }
    let body = numbering().find(line).map_or(line, |m| &line[m.end()..]);
    body.chars().next().is_some_and(char::is_uppercase)
}

const TRAILING_FUNCTION_WORDS: &[&str] = &[
    "a", "an", "the", "of", "and", "or", "for", "in", "on", "to", "with", "by", "from", "as",
    "at", "is", "are", "was", "were", "that", "which",
];

fn opens_like_new_line(line: &str) -> bool {
    line.chars()
        .next()
        .is_some_and(|c| c.is_uppercase() || c.is_ascii_digit() || c == '[' || c == '(')
}

/// Heading-shaped lines: short, capitalized, unpunctuated at the end, not
/// ending in a function word, preceded by the start of the text, a blank
/// line, a line closing a sentence or another heading, and followed by a
/// blank line, the end of the text or a line opening in upper case.
pub fn heading_lines(text: &str) -> Vec<HeadingLine> {
    let mut out: Vec<HeadingLine> = Vec::new();
    let mut prev_ok = true;
    let mut start = 0;
    let lines: Vec<&str> = text.split_inclusive('\n').collect();
    for (i, line) in lines.iter().enumerate() {
        let content = line.trim_end_matches('\n');
        let trimmed = content.trim();
        if trimmed.is_empty() {
            prev_ok = true;
        } else {
            let next_ok = lines
                .get(i + 1)
                .map(|l| l.trim())
                .is_none_or(|l| l.is_empty() || opens_like_new_line(l));
            let is_heading = prev_ok && next_ok && heading_shaped(trimmed);
            if is_heading {
                out.push(HeadingLine {
                    span: Span::new(start, start + content.len()),
                    text: trimmed.to_string(),
                });
            }
            prev_ok = is_heading || trimmed.ends_with(['.', '!', '?', ':']);
        }
        start += line.len();
    }
    out
}

/// Labels every sentence with the bucket of the most recent heading that
/// the lexicon recognises; sentences before any such heading get `Other`.
pub fn detect_sections(
    sentences: &[Sentence],
    doc: &CleanDocument,
    lexicon: &HeadingLexicon,
) -> Vec<Sentence> {
    let marks: Vec<(usize, Section)> = heading_lines(&doc.text)
        .into_iter()
        .filter_map(|h| lexicon.lookup(&h.text).map(|s| (h.span.start, s)))
        .collect();
    sentences
        .iter()
        .map(|s| {
            let idx = marks.partition_point(|(at, _)| *at <= s.span.start);
            let section = if idx == 0 { Section::Other } else { marks[idx - 1].1 };
            Sentence {
                section,
                ..s.clone()
            }
        })
        .collect()
}
