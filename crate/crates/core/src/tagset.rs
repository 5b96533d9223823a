//! The toolkit part-of-speech tagset and its mapping from external tagsets.
//!
//! Analyses work on a small, fixed tagset whose labels match the rows of a
//! classic POS distribution table. External annotations (Universal
//! Dependencies UPOS, Penn Treebank) are mapped onto it by [`TagMap`]; a
//! user-supplied mapping file may extend or override the built-in entries.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PosTag {
    Period,
    Comma,
    Conjunction,
    Article,
    Preposition,
    Pronoun,
    Adjective,
    Noun,
    Name,
    Adverb,
    Modal,
    Verb,
    /// Symbols, numbers, foreign words, interjections, possessive endings and
    /// infinitival "to". Reported, but flagged as outside the distribution.
    Excluded,
    /// External tag with no known mapping.
    Other,
}

impl PosTag {
    pub const ALL: [PosTag; 14] = [
        PosTag::Period,
        PosTag::Comma,
        PosTag::Conjunction,
        PosTag::Article,
        PosTag::Preposition,
        PosTag::Pronoun,
        PosTag::Adjective,
        PosTag::Noun,
        PosTag::Name,
        PosTag::Adverb,
        PosTag::Modal,
        PosTag::Verb,
        PosTag::Excluded,
        PosTag::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::Period => "period",
            PosTag::Comma => "comma",
            PosTag::Conjunction => "conjunction",
            PosTag::Article => "article",
            PosTag::Preposition => "preposition",
            PosTag::Pronoun => "pronoun",
            PosTag::Adjective => "adjective",
            PosTag::Noun => "noun",
            PosTag::Name => "name",
            PosTag::Adverb => "adverb",
            PosTag::Modal => "modal",
            PosTag::Verb => "verb",
            PosTag::Excluded => "excluded",
            PosTag::Other => "other",
        }
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PosTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PosTag::ALL
            .iter()
            .copied()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::validation(format!("unknown toolkit tag '{s}'")))
    }
}

const MODALS: &[&str] = &[
    "can", "could", "may", "might", "must", "shall", "should", "will", "would", "ought",
];

/// Maps external POS tags onto [`PosTag`].
///
/// Punctuation tags (`PUNCT`, Penn `.` and `,`) are resolved by surface:
/// sentence terminators become `period`, commas `comma`, everything else
/// `excluded`. UPOS `AUX` is `modal` for modal verbs and `verb` otherwise.
#[derive(Debug, Clone)]
pub struct TagMap {
    entries: HashMap<String, PosTag>,
}

impl Default for TagMap {
    fn default() -> Self {
        let mut entries = HashMap::new();
        let mut put = |tags: &[&str], tag: PosTag| {
            for t in tags {
                entries.insert((*t).to_string(), tag);
            }
        };
        // Universal Dependencies
        put(&["NOUN"], PosTag::Noun);
        put(&["PROPN"], PosTag::Name);
        put(&["VERB"], PosTag::Verb);
        put(&["ADJ"], PosTag::Adjective);
        put(&["ADV"], PosTag::Adverb);
        put(&["PRON"], PosTag::Pronoun);
        put(&["DET"], PosTag::Article);
        put(&["ADP"], PosTag::Preposition);
        put(&["CCONJ", "SCONJ", "CONJ"], PosTag::Conjunction);
        put(&["NUM", "X", "INTJ", "SYM", "PART"], PosTag::Excluded);
        // Penn Treebank
        put(&["NN", "NNS"], PosTag::Noun);
        put(&["NNP", "NNPS"], PosTag::Name);
        put(&["VB", "VBD", "VBG", "VBN", "VBP", "VBZ"], PosTag::Verb);
        put(&["JJ", "JJR", "JJS"], PosTag::Adjective);
        put(&["RB", "RBR", "RBS", "WRB", "RP"], PosTag::Adverb);
        put(&["PRP", "PRP$", "WP", "WP$", "EX"], PosTag::Pronoun);
        put(&["DT", "PDT", "WDT"], PosTag::Article);
        put(&["IN"], PosTag::Preposition);
        put(&["CC"], PosTag::Conjunction);
        put(&["MD"], PosTag::Modal);
        put(
            &["CD", "FW", "UH", "POS", "TO", "LS", "$", "#", ":", "``", "''", "\"", "-LRB-", "-RRB-", "HYPH", "NFP"],
            PosTag::Excluded,
        );
        for t in PosTag::ALL {
            entries.insert(t.as_str().to_string(), t);
        }
        TagMap { entries }
    }
}

impl TagMap {
    /// Built-in mapping extended by a TAB-separated file of
    /// `external<TAB>toolkit` lines (`#` starts a comment).
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Load {
            path: path.to_path_buf(),
            source,
        })?;
        let mut map = TagMap::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split('\t');
            let (Some(ext), Some(tag), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: i + 1,
                    message: "expected 'external<TAB>toolkit'".into(),
                });
            };
            let tag = tag.trim().parse::<PosTag>().map_err(|e| Error::Parse {
                path: path.to_path_buf(),
                line: i + 1,
                message: e.to_string(),
            })?;
            map.entries.insert(ext.trim().to_string(), tag);
        }
        Ok(map)
    }

    /// Resolve an external tag; `None` for unknown tags.
    pub fn resolve(&self, external: &str, surface: &str, lemma: &str) -> Option<PosTag> {
        match external {
            "PUNCT" | "." | "," => return Some(punctuation_tag(surface)),
            "AUX" => {
                let l = lemma.to_lowercase();
                let s = surface.to_lowercase();
                return Some(if MODALS.contains(&l.as_str()) || MODALS.contains(&s.as_str()) {
                    PosTag::Modal
                } else {
                    PosTag::Verb
                });
            }
            _ => {}
        }
        self.entries
            .get(external)
            .or_else(|| self.entries.get(&external.to_lowercase()))
            .copied()
    }
}

fn punctuation_tag(surface: &str) -> PosTag {
    match surface {
        "." | "!" | "?" | "…" => PosTag::Period,
        "," => PosTag::Comma,
        _ => PosTag::Excluded,
    }
}
