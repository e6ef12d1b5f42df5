//! Regular expressions for in-text citation markers.

use std::sync::OnceLock;

use regex::Regex;
use unicode_normalization::UnicodeNormalization;

use super::CitationStyle;

const NAME: &str = r"(?:(?:van|von|de|der|den|di|da|du|le|la|dos|del)\s+)*\p{Lu}[\p{L}'’\-]*\p{L}";
const YEAR: &str = r"(?:19|20)\d{2}[a-z]?";

fn numeric_bracket() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"^\[\s*\d{1,4}(?:\s*[-–]\s*\d{1,4})?(?:\s*[,;]\s*\d{1,4}(?:\s*[-–]\s*\d{1,4})?)*\s*\]")
            .unwrap()
    })
}

fn author_year_paren() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        let item = format!(
            r"{NAME}(?:\s+et\s+al\.?|\s+(?:and|&)\s+{NAME})?,?\s+{YEAR}(?:\s*,\s*{YEAR})*"
        );
        Regex::new(&format!(
            r"^\(\s*(?:(?:see|e\.g\.|cf\.),?\s+)?{item}(?:\s*;\s*{item})*\s*\)"
        ))
        .unwrap()
    })
}

fn name_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(NAME).unwrap())
}

fn year_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(&format!(r"\b{YEAR}\b")).unwrap())
}

/// Byte length of a citation candidate starting exactly at the beginning of
/// `s`, if there is one.
pub fn match_candidate(s: &str) -> Option<usize> {
    match s.as_bytes().first()? {
        b'[' => numeric_bracket().find(s).map(|m| m.end()),
        b'(' => author_year_paren().find(s).map(|m| m.end()),
        _ => None,
    }
}

/// Splits a candidate surface into its style and reference keys.
pub fn parse_candidate(surface: &str) -> Option<(CitationStyle, Vec<String>)> {
    if surface.starts_with('[') {
        let inner = surface.trim_start_matches('[').trim_end_matches(']');
        let mut keys = Vec::new();
        for item in inner.split([',', ';']) {
            let item = item.trim();
            if let Some((lo, hi)) = item.split_once(['-', '–']) {
                let lo: u32 = lo.trim().parse().ok()?;
                let hi: u32 = hi.trim().parse().ok()?;
                if hi < lo || hi - lo > 50 {
                    return None;
                }
                keys.extend((lo..=hi).map(|k| k.to_string()));
            } else {
                keys.push(item.parse::<u32>().ok()?.to_string());
            }
        }
        let style = if keys.len() > 1 {
            CitationStyle::NumericBracketList
        } else {
            CitationStyle::NumericBracket
        };
        return Some((style, keys));
    }
    if surface.starts_with('(') {
        let inner = surface.trim_start_matches('(').trim_end_matches(')');
        let mut keys = Vec::new();
        for item in inner.split(';') {
            let name = name_re().find(item)?;
            let surname = name.as_str();
            for year in year_re().find_iter(&item[name.end()..]) {
                keys.push(author_year_key(surname, year.as_str()));
            }
        }
        if keys.is_empty() {
            return None;
        }
        return Some((CitationStyle::AuthorYear, keys));
    }
    None
}

/// Folds a surname to ASCII letters and appends the year: "Müller", "2004" → "Muller2004".
pub fn author_year_key(surname: &str, year: &str) -> String {
    let mut key: String = surname
        .nfd()
        .filter(|c| c.is_ascii_alphanumeric())
        .collect();
    key.push_str(year);
    key
}
