use super::{CleanDocument, Span, Token, TokenKind};
use crate::citation::patterns;

/// Words that keep their trailing period ("et al.", "Fig.").
const ABBREVIATIONS: &[&str] = &[
    "al", "fig", "figs", "eq", "eqs", "etc", "vs", "cf", "sec", "secs", "no", "nos", "vol",
    "pp", "dr", "mr", "mrs", "ms", "prof", "approx", "resp", "ref", "refs", "ch", "tab", "ed",
    "eds", "proc", "conf", "int", "univ", "dept", "jr", "sr", "st",
];

pub(crate) fn is_abbreviation(word: &str) -> bool {
    let w = word.trim_end_matches('.').to_lowercase();
    ABBREVIATIONS.contains(&w.as_str())
}

/// Rule-based tokenizer over cleaned text.
///
/// Whitespace separates tokens and is never part of one. Bracketed numeric
/// citations and author-year parentheticals become single
/// `CitationCandidate` tokens, decimals stay whole ("61.9"), and
/// abbreviations or dotted initialisms keep their periods.
pub fn tokenize(doc: &CleanDocument) -> Vec<Token> {
    tokenize_str(&doc.text)
}

pub(crate) fn tokenize_str(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < text.len() {
        let rest = &text[pos..];
        let ch = rest.chars().next().unwrap();
        if ch.is_whitespace() {
            pos += ch.len_utf8();
            continue;
        }
        if ch == '[' || ch == '(' {
            if let Some(len) = patterns::match_candidate(rest) {
                tokens.push(token(text, pos, pos + len, TokenKind::CitationCandidate));
                pos += len;
                continue;
            }
        }
        if ch.is_alphanumeric() {
            let (end, kind) = scan_word(text, pos);
            tokens.push(token(text, pos, end, kind));
            pos = end;
            continue;
        }
        let end = pos + ch.len_utf8();
        tokens.push(token(text, pos, end, TokenKind::Punctuation));
        pos = end;
    }
    tokens
}

fn token(text: &str, start: usize, end: usize, kind: TokenKind) -> Token {
    Token {
        surface: text[start..end].to_string(),
        span: Span::new(start, end),
        kind,
    }
}

fn scan_word(text: &str, start: usize) -> (usize, TokenKind) {
    let chars: Vec<(usize, char)> = text[start..].char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i].1;
        if c.is_alphanumeric() {
            i += 1;
            continue;
        }
        let prev = if i > 0 { Some(chars[i - 1].1) } else { None };
        let next = chars.get(i + 1).map(|p| p.1);
        let joins = match (prev, next) {
            (Some(p), Some(n)) => match c {
                '-' | '\'' | '’' => p.is_alphanumeric() && n.is_alphanumeric(),
                '.' | ',' => p.is_ascii_digit() && n.is_ascii_digit(),
                _ => false,
            },
            _ => false,
        };
        if !joins {
            break;
        }
        i += 1;
    }
    let mut end = start + chars.get(i).map_or(text.len() - start, |p| p.0);
    let word = &text[start..end];

    let numeric = word.chars().all(|c| c.is_ascii_digit() || c == '.' || c == ',');
    if numeric {
        return (end, TokenKind::Number);
    }

    let after = &text[end..];
    if after.starts_with('.') {
        let single_letter = word.chars().count() == 1 && word.chars().all(char::is_alphabetic);
        if single_letter {
            // dotted initialisms "e.g." / "i.e." / "U.S." and initials "E."
            let mut j = end + 1;
            loop {
                let mut it = text[j..].chars();
                match (it.next(), it.next()) {
                    (Some(l), Some('.')) if l.is_alphabetic() => j += l.len_utf8() + 1,
                    _ => break,
                }
            }
            if j > end + 1 || word.chars().all(char::is_uppercase) {
                return (j, TokenKind::Word);
            }
        }
        if is_abbreviation(word) {
            end += 1;
        }
    }
    (end, TokenKind::Word)
}
