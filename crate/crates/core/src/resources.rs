//! Language resources used by the pipeline: POS lexicon, synonym and
//! hypernym clusters, and section heading phrases.

use std::path::Path;

use crate::error::{Error, Result};
use crate::features::{LexicalResource, LexiconTagger};
use crate::ingest::HeadingLexicon;

/// Environment variable naming a resource directory.
pub const RESOURCES_ENV: &str = "SENTICITE_RESOURCES";

#[derive(Debug, Clone)]
pub struct Resources {
    pub tagger: LexiconTagger,
    pub lexical: LexicalResource,
    pub headings: HeadingLexicon,
}

impl Resources {
    pub fn bundled() -> Self {
        Resources {
            tagger: LexiconTagger::default(),
            lexical: LexicalResource::bundled(),
            headings: HeadingLexicon::default(),
        }
    }

    /// Loads a resource directory. `synonyms.tsv` and `hypernyms.tsv` replace
    /// the bundled lexical clusters (a missing file is empty); `tags.tsv` and
    /// `headings.txt` replace the bundled lexicons when present.
    pub fn load_dir(dir: &Path) -> Result<Self> {
        if !dir.is_dir() {
            return Err(Error::InvalidArgument(format!(
                "resource directory {} does not exist",
                dir.display()
            )));
        }
        let optional = |name: &str| -> Result<Option<(String, String)>> {
            let p = dir.join(name);
            match std::fs::read_to_string(&p) {
                Ok(s) => Ok(Some((s, p.display().to_string()))),
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
                Err(e) => Err(Error::io(p, e)),
            }
        };
        let tagger = match optional("tags.tsv")? {
            Some((src, origin)) => LexiconTagger::parse(&src, &origin)?,
            None => LexiconTagger::default(),
        };
        let headings = match optional("headings.txt")? {
            Some((src, origin)) => HeadingLexicon::parse(&src, &origin)?,
            None => HeadingLexicon::default(),
        };
        Ok(Resources {
            tagger,
            lexical: LexicalResource::load_dir(dir)?,
            headings,
        })
    }

    /// Uses the directory named by `SENTICITE_RESOURCES` when set, the
    /// bundled resources otherwise.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(RESOURCES_ENV) {
            Some(dir) if !dir.is_empty() => Self::load_dir(Path::new(&dir)),
            _ => Ok(Self::bundled()),
        }
    }
}

impl Default for Resources {
    fn default() -> Self {
        Self::bundled()
    }
}
