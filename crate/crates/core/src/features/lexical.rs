use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};

const BUNDLED_SYNONYMS: &str = include_str!("../../data/synonyms.tsv");
const BUNDLED_HYPERNYMS: &str = include_str!("../../data/hypernyms.tsv");

/// Synonym clusters and hypernym ancestors keyed by lemma.
///
/// Cluster ids are the strings from the resource files, so they are stable
/// for a fixed file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LexicalResource {
    pub synonym_index: HashMap<String, String>,
    pub hypernym_index: HashMap<String, Vec<String>>,
}

impl LexicalResource {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED_SYNONYMS, BUNDLED_HYPERNYMS).expect("bundled lexical resource")
    }

    /// `synonyms`: `lemma<TAB>cluster` lines. `hypernyms`:
    /// `lemma<TAB>ancestor,ancestor,...` lines, nearest ancestor first.
    pub fn parse(synonyms: &str, hypernyms: &str) -> Result<Self> {
        let mut res = LexicalResource::default();
        for (line_no, lemma, value) in rows(synonyms, "synonyms")? {
            if value.contains(',') {
                return Err(Error::Resource {
                    path: "synonyms".into(),
                    line: line_no,
                    message: "a lemma maps to exactly one synonym cluster".into(),
                });
            }
            res.synonym_index.insert(lemma, value);
        }
        for (_, lemma, value) in rows(hypernyms, "hypernyms")? {
            let ancestors = value
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(String::from)
                .collect();
            res.hypernym_index.insert(lemma, ancestors);
        }
        Ok(res)
    }

    /// Loads `synonyms.tsv` and `hypernyms.tsv` from a directory; a missing
    /// file counts as empty.
    pub fn load_dir(dir: &Path) -> Result<Self> {
        let read = |name: &str| -> Result<String> {
            let p = dir.join(name);
            match std::fs::read_to_string(&p) {
                Ok(s) => Ok(s),
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(String::new()),
                Err(e) => Err(Error::io(p, e)),
            }
        };
        Self::parse(&read("synonyms.tsv")?, &read("hypernyms.tsv")?)
    }

    pub fn synonym(&self, lemma: &str) -> Option<&str> {
        self.synonym_index.get(lemma).map(String::as_str)
    }

    pub fn hypernyms(&self, lemma: &str) -> &[String] {
        self.hypernym_index.get(lemma).map_or(&[], Vec::as_slice)
    }
}

fn rows(src: &str, origin: &str) -> Result<Vec<(usize, String, String)>> {
    let mut out = Vec::new();
    for (i, line) in src.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (lemma, value) = line.split_once('\t').ok_or_else(|| Error::Resource {
            path: origin.into(),
            line: i + 1,
            message: "expected `lemma<TAB>value`".into(),
        })?;
        out.push((i + 1, lemma.trim().to_lowercase(), value.trim().to_string()));
    }
    Ok(out)
}

/// Synonym cluster (if any) followed by hypernym ancestors (if any).
pub fn lexical_expand(lemma: &str, resource: &LexicalResource) -> Vec<String> {
    let mut ids: Vec<String> = resource.synonym(lemma).map(String::from).into_iter().collect();
    ids.extend(resource.hypernyms(lemma).iter().cloned());
    ids
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mini() -> LexicalResource {
        LexicalResource::parse(
            "improve\tsyn:better\nfast\tsyn:quick\n",
            "improve\thyp:change,hyp:event\nlaptop\thyp:computer\n",
        )
        .unwrap()
    }

    #[test]
    fn synonym_only() {
        assert_eq!(lexical_expand("fast", &mini()), ["syn:quick"]);
    }

    #[test]
    fn unknown_lemma() {
        assert!(lexical_expand("zebra", &mini()).is_empty());
    }

    #[test]
    fn synonym_first_then_ancestors() {
        assert_eq!(
            lexical_expand("improve", &mini()),
            ["syn:better", "hyp:change", "hyp:event"]
        );
        assert_eq!(lexical_expand("laptop", &mini()), ["hyp:computer"]);
    }

    #[test]
    fn bad_rows_rejected() {
        assert!(LexicalResource::parse("a b\n", "").is_err());
        assert!(LexicalResource::parse("a\tx,y\n", "").is_err());
    }

    #[test]
    fn bundled_loads() {
        let r = LexicalResource::bundled();
        assert_eq!(r.synonym("outperforms"), Some("syn:better"));
    }
}
