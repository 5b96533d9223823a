//! Vertical `surface<TAB>POS<TAB>lemma` files with blank-line sentence breaks.

use std::collections::BTreeMap;
use std::path::Path;

use super::sentence::Sentence;
use super::token::{classify, normalize_apostrophes, Token};
use crate::error::{Error, Result};
use crate::tagset::{PosTag, TagMap};

/// Tokens and sentences of a tagged file, plus the external tags that had no
/// mapping (mapped to `other`) with their counts.
#[derive(Debug, Clone, Default)]
pub struct TaggedText {
    pub tokens: Vec<Token>,
    pub sentences: Vec<Sentence>,
    pub unknown_tags: BTreeMap<String, usize>,
}

impl TaggedText {
    pub fn unknown_tag_count(&self) -> usize {
        self.unknown_tags.values().sum()
    }
}

pub fn parse_tagged(path: &Path, tags: &TagMap) -> Result<TaggedText> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Load {
        path: path.to_path_buf(),
        source,
    })?;
    parse_tagged_str(&text, tags).map_err(|(line, message)| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    })
}

pub(crate) fn parse_tagged_str(text: &str, tags: &TagMap) -> std::result::Result<TaggedText, (usize, String)> {
    let mut out = TaggedText::default();
    let mut start = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            if out.tokens.len() > start {
                out.sentences.push(Sentence {
                    start,
                    end: out.tokens.len(),
                });
                start = out.tokens.len();
            }
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err((i + 1, format!("expected 3 TAB-separated fields, found {}", fields.len())));
        }
        let surface = normalize_apostrophes(fields[0].trim());
        let pos = fields[1].trim();
        let lemma = normalize_apostrophes(fields[2].trim());
        if surface.is_empty() || pos.is_empty() || lemma.is_empty() {
            return Err((i + 1, "empty field".to_string()));
        }
        let tag = tags.resolve(pos, &surface, &lemma).unwrap_or_else(|| {
            *out.unknown_tags.entry(pos.to_string()).or_default() += 1;
            PosTag::Other
        });
        let mut token = Token::new(surface.as_str(), classify(&surface), out.tokens.len());
        token.lemma = Some(lemma);
        token.pos = Some(tag);
        out.tokens.push(token);
    }
    if out.tokens.len() > start {
        out.sentences.push(Sentence {
            start,
            end: out.tokens.len(),
        });
    }
    if out.unknown_tag_count() > 0 {
        log::warn!(
            "{} token(s) with unmapped POS tags mapped to 'other': {:?}",
            out.unknown_tag_count(),
            out.unknown_tags
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::token::TokenKind;

    fn parse(s: &str) -> std::result::Result<TaggedText, (usize, String)> {
        parse_tagged_str(s, &TagMap::default())
    }

    #[test]
    fn single_sentence() {
        let t = parse("We\tPRON\twe\nwin\tVERB\twin\n.\tPUNCT\t.\n").unwrap();
        assert_eq!(t.tokens.len(), 3);
        assert_eq!(t.sentences, vec![Sentence { start: 0, end: 3 }]);
        assert_eq!(t.tokens[1].lemma.as_deref(), Some("win"));
        assert_eq!(t.tokens[1].pos, Some(PosTag::Verb));
        assert_eq!(t.tokens[2].kind, TokenKind::Punctuation);
        assert_eq!(t.tokens[2].pos, Some(PosTag::Period));
    }

    #[test]
    fn blank_lines_break_sentences() {
        let t = parse("We\tPRON\twe\n\n\nwin\tVERB\twin\n").unwrap();
        assert_eq!(t.sentences.len(), 2);
    }

    #[test]
    fn malformed_line_reports_number() {
        let err = parse("We\tPRON\twe\nwin\tVERB\n").unwrap_err();
        assert_eq!(err.0, 2);
    }

    #[test]
    fn unknown_tag_counts() {
        let t = parse("We\tPRON\twe\nzz\tQQQ\tzz\nyy\tQQQ\tyy\n").unwrap();
        assert_eq!(t.tokens[1].pos, Some(PosTag::Other));
        assert_eq!(t.unknown_tags.get("QQQ"), Some(&2));
    }

    #[test]
    fn file_error_carries_path_and_line() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.vrt");
        std::fs::write(&p, "ok\tNOUN\tok\nbroken\n").unwrap();
        match parse_tagged(&p, &TagMap::default()) {
            Err(Error::Parse { line, path, .. }) => {
                assert_eq!(line, 2);
                assert_eq!(path, p);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
