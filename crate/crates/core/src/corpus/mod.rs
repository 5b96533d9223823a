//! Documents, corpora and partitions.

mod lemma;
mod manifest;
mod sentence;
mod tagged;
mod token;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::{Cell, Table};

pub use lemma::{lemma_of, lookup as lookup_lemma};
pub use manifest::{load_manifest, load_manifest_with, DocFormat, LoadOptions, ManifestEntry};
pub use sentence::{segment_sentences, Abbreviations, Sentence};
pub use tagged::{parse_tagged, TaggedText};
pub use token::{classify, tokenize, Token, TokenKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Real,
    Generated,
}

impl Origin {
    pub fn as_str(self) -> &'static str {
        match self {
            Origin::Real => "real",
            Origin::Generated => "generated",
        }
    }
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Origin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "real" => Ok(Origin::Real),
            "generated" => Ok(Origin::Generated),
            other => Err(Error::validation(format!(
                "unknown origin '{other}' (expected real or generated)"
            ))),
        }
    }
}

/// Metadata keys usable for grouping and partition selectors.
pub const METADATA_KEYS: &[&str] = &["id", "group", "subgroup", "origin", "year"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub group: String,
    pub subgroup: Option<String>,
    pub origin: Origin,
    pub year: Option<i32>,
    pub tokens: Vec<Token>,
    pub sentences: Vec<Sentence>,
}

impl Document {
    /// Tokenize and sentence-split plain text.
    pub fn from_text(
        id: impl Into<String>,
        group: impl Into<String>,
        origin: Origin,
        text: &str,
        abbreviations: &Abbreviations,
    ) -> Self {
        let tokens = tokenize(text);
        let sentences = segment_sentences(&tokens, abbreviations);
        Document {
            id: id.into(),
            group: group.into(),
            subgroup: None,
            origin,
            year: None,
            tokens,
            sentences,
        }
    }

    pub fn with_subgroup(mut self, subgroup: impl Into<String>) -> Self {
        self.subgroup = Some(subgroup.into());
        self
    }

    pub fn with_year(mut self, year: i32) -> Self {
        self.year = Some(year);
        self
    }

    /// Value of a metadata key; unknown keys are a validation error.
    pub fn meta(&self, key: &str) -> Result<Option<String>> {
        Ok(match key {
            "id" => Some(self.id.clone()),
            "group" => Some(self.group.clone()),
            "subgroup" => self.subgroup.clone(),
            "origin" => Some(self.origin.to_string()),
            "year" => self.year.map(|y| y.to_string()),
            other => {
                return Err(Error::validation(format!(
                    "unknown metadata key '{other}' (expected one of {})",
                    METADATA_KEYS.join(", ")
                )))
            }
        })
    }

    pub fn words(&self) -> impl Iterator<Item = &Token> {
        self.tokens.iter().filter(|t| t.is_word())
    }

    pub fn sentence_tokens(&self, s: Sentence) -> &[Token] {
        &self.tokens[s.start..s.end]
    }
}

/// A labeled set of documents produced by [`Corpus::group_by`].
#[derive(Debug, Clone)]
pub struct Group<'a> {
    pub label: String,
    pub docs: Vec<&'a Document>,
}

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    documents: Vec<Document>,
    manifest: Vec<ManifestEntry>,
}

impl Corpus {
    pub fn from_documents(documents: Vec<Document>) -> Result<Self> {
        Corpus::with_manifest(documents, Vec::new())
    }

    pub(crate) fn with_manifest(documents: Vec<Document>, manifest: Vec<ManifestEntry>) -> Result<Self> {
        let mut seen = HashSet::new();
        for d in &documents {
            if !seen.insert(d.id.as_str()) {
                return Err(Error::validation(format!("duplicate document id '{}'", d.id)));
            }
        }
        Ok(Corpus { documents, manifest })
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn manifest(&self) -> &[ManifestEntry] {
        &self.manifest
    }

    pub fn get(&self, id: &str) -> Option<&Document> {
        self.documents.iter().find(|d| d.id == id)
    }

    pub fn ids(&self) -> BTreeSet<&str> {
        self.documents.iter().map(|d| d.id.as_str()).collect()
    }

    pub fn token_count(&self) -> usize {
        self.documents.iter().map(|d| d.tokens.len()).sum()
    }

    /// Every word token carries a lemma and every token a POS tag.
    pub fn is_annotated(&self) -> bool {
        self.documents
            .iter()
            .all(|d| d.tokens.iter().all(|t| t.pos.is_some() && (!t.is_word() || t.lemma.is_some())))
    }

    /// Documents grouped by the joined values of `keys` (missing values are
    /// skipped, parts joined with `-`), sorted by label.
    pub fn group_by(&self, keys: &[&str]) -> Result<Vec<Group<'_>>> {
        if keys.is_empty() {
            return Err(Error::validation("at least one grouping key is required"));
        }
        let mut groups: BTreeMap<String, Vec<&Document>> = BTreeMap::new();
        for d in &self.documents {
            let mut parts = Vec::with_capacity(keys.len());
            for k in keys {
                if let Some(v) = d.meta(k)? {
                    parts.push(v);
                }
            }
            groups.entry(parts.join("-")).or_default().push(d);
        }
        Ok(groups
            .into_iter()
            .map(|(label, docs)| Group { label, docs })
            .collect())
    }

    /// Documents matching every `key=value` condition.
    pub fn select(&self, conditions: &[(String, String)]) -> Result<Vec<&Document>> {
        let mut out = Vec::new();
        for d in &self.documents {
            let mut ok = true;
            for (k, v) in conditions {
                if d.meta(k)?.as_deref() != Some(v.as_str()) {
                    ok = false;
                }
            }
            if ok {
                out.push(d);
            }
        }
        Ok(out)
    }
}

/// Parse a `key=value[,key=value]` selector.
pub fn parse_selector(s: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::validation(format!("selector '{part}' is not key=value")))?;
        let k = k.trim();
        if !METADATA_KEYS.contains(&k) {
            return Err(Error::validation(format!("unknown metadata key '{k}'")));
        }
        out.push((k.to_string(), v.trim().to_string()));
    }
    if out.is_empty() {
        return Err(Error::validation("empty selector"));
    }
    Ok(out)
}

/// Target (`p0`) and reference (`p1`) document sets for specificity scoring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    p0: BTreeSet<String>,
    p1: BTreeSet<String>,
}

impl Partition {
    pub fn new<I, J, S, T>(corpus: &Corpus, p0: I, p1: J) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        J: IntoIterator<Item = T>,
        S: Into<String>,
        T: Into<String>,
    {
        let p0: BTreeSet<String> = p0.into_iter().map(Into::into).collect();
        let p1: BTreeSet<String> = p1.into_iter().map(Into::into).collect();
        if p0.is_empty() || p1.is_empty() {
            return Err(Error::validation("both partition parts must be non-empty"));
        }
        if let Some(id) = p0.intersection(&p1).next() {
            return Err(Error::validation(format!("document '{id}' is in both partition parts")));
        }
        let ids = corpus.ids();
        if let Some(id) = p0.iter().chain(&p1).find(|id| !ids.contains(id.as_str())) {
            return Err(Error::validation(format!("partition names unknown document '{id}'")));
        }
        Ok(Partition { p0, p1 })
    }

    /// `p0` = documents matching the selector, `p1` = the rest of the corpus.
    pub fn from_selector(corpus: &Corpus, conditions: &[(String, String)]) -> Result<Self> {
        let p0: BTreeSet<String> = corpus.select(conditions)?.into_iter().map(|d| d.id.clone()).collect();
        let p1: Vec<String> = corpus
            .documents()
            .iter()
            .filter(|d| !p0.contains(&d.id))
            .map(|d| d.id.clone())
            .collect();
        Partition::new(corpus, p0, p1)
    }

    pub fn p0(&self) -> &BTreeSet<String> {
        &self.p0
    }

    pub fn p1(&self) -> &BTreeSet<String> {
        &self.p1
    }

    /// P0 documents in corpus order.
    pub fn target_docs<'a>(&self, corpus: &'a Corpus) -> Vec<&'a Document> {
        corpus.documents().iter().filter(|d| self.p0.contains(&d.id)).collect()
    }

    /// P1 documents in corpus order.
    pub fn reference_docs<'a>(&self, corpus: &'a Corpus) -> Vec<&'a Document> {
        corpus.documents().iter().filter(|d| self.p1.contains(&d.id)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub group: String,
    pub documents: usize,
    pub tokens: usize,
    pub types: usize,
}

/// Document, token and word-type counts for one set of documents.
///
/// Tokens count every word, number and punctuation token; types are the
/// distinct lowercased surfaces of word tokens.
pub fn summarize(label: &str, docs: &[&Document]) -> SummaryRow {
    let mut types = HashSet::new();
    for d in docs {
        for t in d.words() {
            types.insert(t.folded());
        }
    }
    SummaryRow {
        group: label.to_string(),
        documents: docs.len(),
        tokens: docs.iter().map(|d| d.tokens.len()).sum(),
        types: types.len(),
    }
}

/// One [`SummaryRow`] per group, sorted by group label.
pub fn corpus_summary(corpus: &Corpus, group_by: &[&str]) -> Result<Vec<SummaryRow>> {
    Ok(corpus
        .group_by(group_by)?
        .iter()
        .map(|g| summarize(&g.label, &g.docs))
        .collect())
}

pub fn summary_table(rows: &[SummaryRow]) -> Table {
    let mut t = Table::new(["group", "documents", "tokens", "types"]);
    for r in rows {
        t.push(vec![
            Cell::text(&r.group),
            Cell::Int(r.documents as i64),
            Cell::Int(r.tokens as i64),
            Cell::Int(r.types as i64),
        ]);
    }
    t
}
