use std::path::Path;

use serde::{Deserialize, Serialize};

use super::token::{tokenize, Token};
use crate::error::{Error, Result};

/// Half-open token span `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub start: usize,
    pub end: usize,
}

impl Sentence {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }
}

const TERMINATORS: &[&str] = &[".", "!", "?", "…"];
const CLOSERS: &[&str] = &["\"", "'", ")", "]", "”", "’", "»"];

/// Abbreviations that do not end a sentence when followed by a period.
///
/// Each entry is stored as its token sequence, so multi-part entries such as
/// `U.S` protect every inner period as well as the trailing one.
#[derive(Debug, Clone)]
pub struct Abbreviations {
    patterns: Vec<Vec<String>>,
}

impl Default for Abbreviations {
    fn default() -> Self {
        Abbreviations::new(["Mr", "Mrs", "Dr", "St", "U.S"])
    }
}

impl Abbreviations {
    pub fn new<I, S>(entries: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let patterns = entries
            .into_iter()
            .filter_map(|e| {
                let e = e.as_ref().trim().trim_end_matches('.');
                if e.is_empty() {
                    return None;
                }
                let mut seq: Vec<String> = tokenize(e).into_iter().map(|t| t.surface.to_lowercase()).collect();
                seq.push(".".to_string());
                Some(seq)
            })
            .collect();
        Abbreviations { patterns }
    }

    /// One abbreviation per line; blank lines and `#` comments ignored.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Load {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(Abbreviations::new(
            text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')),
        ))
    }

    /// Whether the period at `pos` belongs to an abbreviation.
    fn protects(&self, tokens: &[Token], pos: usize) -> bool {
        self.patterns.iter().any(|pat| {
            let n = pat.len();
            // every alignment of the pattern that covers `pos` on a period slot
            (0..n).any(|offset| {
                pat[offset] == "."
                    && pos >= offset
                    && pos - offset + n <= tokens.len()
                    && tokens[pos - offset..pos - offset + n]
                        .iter()
                        .zip(pat)
                        .all(|(t, p)| t.surface.to_lowercase() == *p)
            })
        })
    }
}

/// Split a token sequence into sentences.
///
/// A sentence ends after a terminator (`.`, `!`, `?`, `…`) unless it is the
/// period of a listed abbreviation. A run of terminators and any closing
/// quotes or brackets right after it stay with the sentence they close. The
/// final partial sentence is closed at the end of input.
pub fn segment_sentences(tokens: &[Token], abbreviations: &Abbreviations) -> Vec<Sentence> {
    let mut sentences = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < tokens.len() {
        let s = tokens[i].surface.as_str();
        if TERMINATORS.contains(&s) && !(s == "." && abbreviations.protects(tokens, i)) {
            let mut end = i + 1;
            while end < tokens.len() {
                let next = tokens[end].surface.as_str();
                if TERMINATORS.contains(&next) || CLOSERS.contains(&next) {
                    end += 1;
                } else {
                    break;
                }
            }
            sentences.push(Sentence { start, end });
            start = end;
            i = end;
        } else {
            i += 1;
        }
    }
    if start < tokens.len() {
        sentences.push(Sentence {
            start,
            end: tokens.len(),
        });
    }
    sentences
}
