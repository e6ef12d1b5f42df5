use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::{Token, TokenKind};

const BUNDLED_TAGS: &str = include_str!("../../data/tags.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PosTag {
    Noun,
    Verb,
    Adjective,
    Adverb,
    Determiner,
    Preposition,
    Pronoun,
    Conjunction,
    Number,
    Punctuation,
    Other,
}

impl PosTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            PosTag::Noun => "noun",
            PosTag::Verb => "verb",
            PosTag::Adjective => "adjective",
            PosTag::Adverb => "adverb",
            PosTag::Determiner => "determiner",
            PosTag::Preposition => "preposition",
            PosTag::Pronoun => "pronoun",
            PosTag::Conjunction => "conjunction",
            PosTag::Number => "number",
            PosTag::Punctuation => "punctuation",
            PosTag::Other => "other",
        }
    }

    pub fn parse(s: &str) -> Option<PosTag> {
        Some(match s.trim() {
            "noun" => PosTag::Noun,
            "verb" => PosTag::Verb,
            "adjective" => PosTag::Adjective,
            "adverb" => PosTag::Adverb,
            "determiner" => PosTag::Determiner,
            "preposition" => PosTag::Preposition,
            "pronoun" => PosTag::Pronoun,
            "conjunction" => PosTag::Conjunction,
            "number" => PosTag::Number,
            "punctuation" => PosTag::Punctuation,
            "other" => PosTag::Other,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Capitalization {
    Lower,
    InitialUpper,
    AllUpper,
    Mixed,
}

impl Capitalization {
    pub fn of(s: &str) -> Self {
        let letters: Vec<char> = s.chars().filter(|c| c.is_alphabetic()).collect();
        let upper = letters.iter().filter(|c| c.is_uppercase()).count();
        match (upper, letters.first()) {
            (0, _) => Capitalization::Lower,
            (n, _) if n == letters.len() && n > 1 => Capitalization::AllUpper,
            (1, Some(c)) if c.is_uppercase() => Capitalization::InitialUpper,
            _ => Capitalization::Mixed,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Capitalization::Lower => "lower",
            Capitalization::InitialUpper => "initial_upper",
            Capitalization::AllUpper => "all_upper",
            Capitalization::Mixed => "mixed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedToken {
    pub token: Token,
    pub pos: PosTag,
    /// Length in characters.
    pub length: usize,
    pub capitalization: Capitalization,
}

/// Assigns a part-of-speech tag to every token of one sentence.
pub trait Tagger: Send + Sync {
    fn tag(&self, tokens: &[Token]) -> Vec<TaggedToken>;
}

/// Word → most frequent tag lexicon with suffix and shape fallbacks.
#[derive(Debug, Clone)]
pub struct LexiconTagger {
    lexicon: HashMap<String, PosTag>,
}

impl Default for LexiconTagger {
    fn default() -> Self {
        Self::parse(BUNDLED_TAGS, "<bundled tags>").expect("bundled tag lexicon")
    }
}

impl LexiconTagger {
    /// Parses `word<TAB>tag` lines. Blank lines and `#` comments are skipped.
    pub fn parse(src: &str, origin: &str) -> Result<Self> {
        let mut lexicon = HashMap::new();
        for (i, line) in src.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Resource {
                path: origin.to_string(),
                line: i + 1,
                message,
            };
            let (word, tag) = line
                .split_once('\t')
                .ok_or_else(|| err("expected `word<TAB>tag`".into()))?;
            let tag = PosTag::parse(tag).ok_or_else(|| err(format!("unknown tag `{tag}`")))?;
            lexicon.insert(word.trim().to_lowercase(), tag);
        }
        Ok(LexiconTagger { lexicon })
    }

    fn lookup(&self, w: &str) -> Option<PosTag> {
        self.lexicon.get(w).copied()
    }

    fn tag_word(&self, surface: &str) -> PosTag {
        let lower = surface.to_lowercase();
        if let Some(t) = self.lookup(&lower) {
            return t;
        }
        if let Some((_, last)) = lower.rsplit_once('-') {
            if last.ends_with("ed") || last == "based" || last == "like" {
                return PosTag::Adjective;
            }
            if !last.is_empty() {
                return self.tag_word(last);
            }
        }
        if let Some(t) = self.inflected(&lower) {
            return t;
        }
        if let Some(t) = suffix_rule(&lower) {
            return t;
        }
        match Capitalization::of(surface) {
            Capitalization::Lower => PosTag::Other,
            _ => PosTag::Noun,
        }
    }

    /// Strips a regular inflection and retries the lexicon.
    fn inflected(&self, w: &str) -> Option<PosTag> {
        let keep = |t: PosTag| matches!(t, PosTag::Verb | PosTag::Noun).then_some(t);
        if let Some(base) = w.strip_suffix("ies") {
            return self.lookup(&format!("{base}y")).and_then(keep);
        }
        if let Some(base) = w.strip_suffix('s') {
            if !base.ends_with('s') {
                if let Some(t) = self.lookup(base).and_then(keep) {
                    return Some(t);
                }
                if let Some(t) = base.strip_suffix('e').and_then(|b| self.lookup(b)).and_then(keep) {
                    return Some(t);
                }
            }
        }
        for suffix in ["ed", "ing"] {
            if let Some(base) = w.strip_suffix(suffix) {
                let candidates = [base.to_string(), format!("{base}e"), undouble(base)];
                if candidates
                    .iter()
                    .any(|c| self.lookup(c) == Some(PosTag::Verb))
                {
                    return Some(PosTag::Verb);
                }
            }
        }
        None
    }
}

fn undouble(base: &str) -> String {
    let b = base.as_bytes();
    if b.len() >= 2 && b[b.len() - 1] == b[b.len() - 2] {
        base[..base.len() - 1].to_string()
    } else {
        base.to_string()
    }
}

fn suffix_rule(w: &str) -> Option<PosTag> {
    if w.chars().count() <= 4 {
        return None;
    }
    const RULES: &[(&str, PosTag)] = &[
        ("ly", PosTag::Adverb),
        ("tion", PosTag::Noun),
        ("sion", PosTag::Noun),
        ("ment", PosTag::Noun),
        ("ness", PosTag::Noun),
        ("ity", PosTag::Noun),
        ("ance", PosTag::Noun),
        ("ence", PosTag::Noun),
        ("ism", PosTag::Noun),
        ("ist", PosTag::Noun),
        ("ogy", PosTag::Noun),
        ("ship", PosTag::Noun),
        ("ical", PosTag::Adjective),
        ("able", PosTag::Adjective),
        ("ible", PosTag::Adjective),
        ("ful", PosTag::Adjective),
        ("ous", PosTag::Adjective),
        ("ive", PosTag::Adjective),
        ("less", PosTag::Adjective),
        ("ary", PosTag::Adjective),
        ("ic", PosTag::Adjective),
        ("al", PosTag::Adjective),
        ("ize", PosTag::Verb),
        ("ise", PosTag::Verb),
        ("ify", PosTag::Verb),
        ("ate", PosTag::Verb),
        ("ed", PosTag::Verb),
        ("ing", PosTag::Verb),
        ("er", PosTag::Noun),
        ("or", PosTag::Noun),
        ("s", PosTag::Noun),
    ];
    RULES
        .iter()
        .find(|(suffix, _)| w.ends_with(suffix))
        .map(|(_, t)| *t)
}

impl Tagger for LexiconTagger {
    fn tag(&self, tokens: &[Token]) -> Vec<TaggedToken> {
        tokens
            .iter()
            .map(|t| {
                let pos = match t.kind {
                    TokenKind::Number | TokenKind::CitationCandidate => PosTag::Number,
                    TokenKind::Punctuation => PosTag::Punctuation,
                    TokenKind::Word => self.tag_word(&t.surface),
                };
                TaggedToken {
                    token: t.clone(),
                    pos,
                    length: t.surface.chars().count(),
                    capitalization: Capitalization::of(&t.surface),
                }
            })
            .collect()
    }
}

pub fn pos_tag(tokens: &[Token], tagger: &dyn Tagger) -> Vec<TaggedToken> {
    tagger.tag(tokens)
}
