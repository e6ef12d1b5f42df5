use std::sync::OnceLock;

use regex::Regex;

use super::{CleanDocument, RawDocument, Span};

fn caption_pattern() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^\s*(?:Figure|Fig\.|Table)\s+\d").unwrap())
}

/// Characters that carry no text: control characters, the replacement
/// character, private-use glyphs and invisible format characters.
fn is_glyph_noise(ch: char) -> bool {
    if ch == '\n' || ch == '\t' {
        return false;
    }
    ch.is_control()
        || matches!(
            ch,
            '\u{FFFD}' | '\u{00AD}' | '\u{200B}'..='\u{200F}' | '\u{2060}' | '\u{FEFF}'
        )
        || ('\u{E000}'..='\u{F8FF}').contains(&ch)
}

/// Removes figure/table caption lines and non-printable glyphs.
///
/// Tabs become single spaces. Every dropped byte range of the raw text is
/// recorded in `removed_spans`; adjacent ranges are merged.
pub fn clean_text(raw: &RawDocument) -> CleanDocument {
    let text = raw.text.as_str();
    let mut out = String::with_capacity(text.len());
    let mut removed: Vec<Span> = Vec::new();

    let mut line_start = 0;
    while line_start < text.len() {
        let (content_end, line_end) = match text[line_start..].find('\n') {
            Some(i) => (line_start + i, line_start + i + 1),
            None => (text.len(), text.len()),
        };

        let mut line = String::with_capacity(content_end - line_start);
        let mut line_removed = Vec::new();
        for (i, ch) in text[line_start..content_end].char_indices() {
            let at = line_start + i;
            if is_glyph_noise(ch) {
                line_removed.push(Span::new(at, at + ch.len_utf8()));
            } else if ch == '\t' {
                line.push(' ');
            } else {
                line.push(ch);
            }
        }

        if caption_pattern().is_match(&line) {
            removed.push(Span::new(line_start, line_end));
        } else {
            removed.extend(line_removed);
            out.push_str(&line);
            if line_end > content_end {
                out.push('\n');
            }
        }
        line_start = line_end;
    }

    CleanDocument {
        doc_id: raw.doc_id.clone(),
        text: out,
        removed_spans: merge(removed),
    }
}

fn merge(mut spans: Vec<Span>) -> Vec<Span> {
    spans.sort();
    let mut merged: Vec<Span> = Vec::with_capacity(spans.len());
    for s in spans {
        match merged.last_mut() {
            Some(last) if s.start <= last.end => last.end = last.end.max(s.end),
            _ => merged.push(s),
        }
    }
    merged
}
