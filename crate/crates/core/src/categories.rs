//! Wordlist categories with `stem*` wildcard patterns.
//!
//! A wordlist is a named set of lowercase patterns. A literal matches a word
//! token whose lowercased surface equals it; a stem ending in `*` matches
//! any word starting with the stem, including the stem itself. Numbers and
//! punctuation never match.
//!
//! The bundled pronoun lists are complete. The bundled rhetorical and
//! emotional lists are small seeds; dictionaries such as LIWC or DICTION are
//! licensed and have to be supplied as a wordlist file.

use std::collections::BTreeSet;
use std::path::Path;

use serde::Serialize;

use crate::corpus::{Document, Group, Token};
use crate::error::{Error, Result};
use crate::table::{Cell, Table};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Pattern {
    Literal(String),
    Stem(String),
}

impl Pattern {
    pub fn parse(entry: &str) -> Result<Self> {
        let e = entry.trim().to_lowercase();
        if e.is_empty() {
            return Err(Error::validation("empty wordlist entry"));
        }
        match e.find('*') {
            None => Ok(Pattern::Literal(e)),
            Some(i) if i == e.len() - 1 && i > 0 => Ok(Pattern::Stem(e[..i].to_string())),
            Some(_) => Err(Error::validation(format!(
                "'{entry}': '*' is only allowed as the last character of a non-empty stem"
            ))),
        }
    }

    pub fn matches(&self, folded: &str) -> bool {
        match self {
            Pattern::Literal(l) => folded == l,
            Pattern::Stem(s) => folded.starts_with(s.as_str()),
        }
    }
}

impl std::fmt::Display for Pattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Pattern::Literal(l) => f.write_str(l),
            Pattern::Stem(s) => write!(f, "{s}*"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Wordlist {
    pub name: String,
    pub patterns: Vec<Pattern>,
}

impl Wordlist {
    pub fn new<I, S>(name: impl Into<String>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let name = name.into();
        let mut seen = BTreeSet::new();
        let mut patterns = Vec::new();
        for e in entries {
            let p = Pattern::parse(e.as_ref()).map_err(|err| Error::validation(format!("category '{name}': {err}")))?;
            if !seen.insert(p.clone()) {
                return Err(Error::validation(format!("category '{name}': duplicate entry '{p}'")));
            }
            patterns.push(p);
        }
        if patterns.is_empty() {
            return Err(Error::validation(format!("category '{name}' has no entries")));
        }
        Ok(Wordlist { name, patterns })
    }

    pub fn matches_word(&self, folded: &str) -> bool {
        self.patterns.iter().any(|p| p.matches(folded))
    }
}

/// Whether a word token belongs to the wordlist.
pub fn match_token(token: &Token, wordlist: &Wordlist) -> bool {
    token.is_word() && wordlist.matches_word(&token.folded())
}

/// Pronoun categories plus seed lists for the rhetorical and emotional
/// categories.
pub fn bundled_wordlists() -> Vec<Wordlist> {
    const LISTS: &[(&str, &[&str])] = &[
        ("Self", &["i", "me", "mine", "my", "myself"]),
        ("You", &["you", "your", "yours", "yourself", "yourselves"]),
        ("She", &["she", "her", "hers", "herself"]),
        ("He", &["he", "him", "his", "himself"]),
        ("We", &["we", "us", "our", "ours", "ourselves"]),
        ("They", &["they", "them", "their", "theirs", "themselves"]),
        ("Posemo", &["happy", "hope", "peace", "secur*", "freed*", "challeng*", "promis*"]),
        ("Negemo", &["fear", "blam*"]),
        ("Symbolism", &["nation", "america", "democracy", "freedom", "peace", "law", "government"]),
        ("Tenacity", &["was", "is", "will"]),
        ("Blame", &["angry", "deceptive", "incompetent"]),
        ("Humans", &["family", "woman", "child*"]),
        ("Achieve", &["first", "plan", "win"]),
    ];
    LISTS
        .iter()
        .map(|(name, entries)| Wordlist::new(*name, entries.iter()).expect("bundled lists are valid"))
        .collect()
}

/// Load wordlists from a JSON object (`{"Name": ["entry", ...]}`) or, for
/// any other extension, INI-like sections (`[Name]` followed by one entry
/// per line, `#` or `;` comments).
pub fn load_wordlists(path: &Path) -> Result<Vec<Wordlist>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Load {
        path: path.to_path_buf(),
        source,
    })?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        let map: serde_json::Map<String, serde_json::Value> = serde_json::from_str(&text)?;
        let mut lists = Vec::new();
        for (name, v) in map {
            let entries = v
                .as_array()
                .ok_or_else(|| Error::validation(format!("category '{name}' must map to an array")))?
                .iter()
                .map(|e| {
                    e.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| Error::validation(format!("category '{name}' has a non-string entry")))
                })
                .collect::<Result<Vec<_>>>()?;
            lists.push(Wordlist::new(name, entries)?);
        }
        Ok(lists)
    } else {
        parse_sections(path, &text)
    }
}

fn parse_sections(path: &Path, text: &str) -> Result<Vec<Wordlist>> {
    let mut sections: Vec<(String, Vec<String>)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            sections.push((name.trim().to_string(), Vec::new()));
        } else if let Some((_, entries)) = sections.last_mut() {
            entries.push(line.to_string());
        } else {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line: i + 1,
                message: "entry before the first [section]".into(),
            });
        }
    }
    sections.into_iter().map(|(n, e)| Wordlist::new(n, e)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Denominator {
    /// Every token, punctuation and numbers included.
    #[default]
    AllTokens,
    /// Word tokens only.
    Words,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CategoryRow {
    pub group: String,
    pub category: String,
    pub matched: usize,
    pub total: usize,
    pub rel_freq: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct CategoryReport {
    pub rows: Vec<CategoryRow>,
}

impl CategoryReport {
    pub fn get(&self, group: &str, category: &str) -> Option<&CategoryRow> {
        self.rows.iter().find(|r| r.group == group && r.category == category)
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(["group", "category", "matched", "total", "rel_freq"]);
        for r in &self.rows {
            t.push(vec![
                Cell::text(&r.group),
                Cell::text(&r.category),
                Cell::Int(r.matched as i64),
                Cell::Int(r.total as i64),
                Cell::real(r.rel_freq),
            ]);
        }
        t
    }
}

/// Matched counts for one document set; categories in wordlist order.
pub fn category_counts(docs: &[&Document], wordlists: &[Wordlist], denominator: Denominator) -> (Vec<usize>, usize) {
    let mut matched = vec![0; wordlists.len()];
    let mut total = 0;
    for t in docs.iter().flat_map(|d| d.tokens.iter()) {
        if t.is_word() {
            let f = t.folded();
            for (m, w) in matched.iter_mut().zip(wordlists) {
                if w.matches_word(&f) {
                    *m += 1;
                }
            }
        }
        if denominator == Denominator::AllTokens || t.is_word() {
            total += 1;
        }
    }
    (matched, total)
}

/// Relative category frequencies per group, ordered by (group, category).
/// Groups without any counted token are left out.
pub fn category_frequency(groups: &[Group<'_>], wordlists: &[Wordlist], denominator: Denominator) -> CategoryReport {
    let mut rows = Vec::new();
    for g in groups {
        let (matched, total) = category_counts(&g.docs, wordlists, denominator);
        if total == 0 {
            continue;
        }
        for (w, m) in wordlists.iter().zip(matched) {
            rows.push(CategoryRow {
                group: g.label.clone(),
                category: w.name.clone(),
                matched: m,
                total,
                rel_freq: m as f64 / total as f64,
            });
        }
    }
    rows.sort_by(|a, b| (&a.group, &a.category).cmp(&(&b.group, &b.category)));
    CategoryReport { rows }
}
