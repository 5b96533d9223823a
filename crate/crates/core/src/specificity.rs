//! Characteristic vocabulary of a target part of a corpus.
//!
//! For each term, the probability of drawing it from the whole corpus is
//! `p = (tf0 + tf1) / n`. Under a binomial model with `n0` draws, the
//! expected count in the target part is `n0 * p` with variance
//! `n0 * p * (1 - p)`; the standardized difference between observed and
//! expected count is the term's Z-score. Terms above `+threshold` are
//! over-used in the target part, terms below `-threshold` under-used.

use std::borrow::Cow;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::corpus::{lemma_of, Corpus, Document, Partition, Token, TokenKind};
use crate::error::{Error, Result};
use crate::table::{Cell, Table};

pub const DEFAULT_THRESHOLD: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TermUnit {
    Surface,
    Lemma,
}

impl TermUnit {
    /// Lemma when every word of the corpus is annotated, surface otherwise.
    pub fn default_for(corpus: &Corpus) -> Self {
        if corpus.is_annotated() {
            TermUnit::Lemma
        } else {
            TermUnit::Surface
        }
    }

    /// Case-folded scoring key of a token.
    pub fn term<'t>(self, token: &'t Token) -> Result<Cow<'t, str>> {
        match self {
            TermUnit::Surface => Ok(Cow::Owned(token.folded())),
            TermUnit::Lemma => lemma_of(token).map(Cow::Owned),
        }
    }
}

impl std::str::FromStr for TermUnit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "surface" => Ok(TermUnit::Surface),
            "lemma" => Ok(TermUnit::Lemma),
            other => Err(Error::validation(format!("unknown term unit '{other}' (surface or lemma)"))),
        }
    }
}

/// Probability of drawing the term from the pooled corpus.
pub fn term_probability(tf0: u64, tf1: u64, n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::validation("corpus size must be positive"));
    }
    if tf0 + tf1 > n {
        return Err(Error::validation(format!(
            "term frequency {} exceeds corpus size {n}",
            tf0 + tf1
        )));
    }
    Ok((tf0 + tf1) as f64 / n as f64)
}

/// Standardized binomial score of `tf0` occurrences among `n0` target
/// tokens. `None` when the score is undefined (`p` is 0 or 1, or either
/// part is empty).
pub fn z_score(tf0: u64, n0: u64, tf1: u64, n1: u64) -> Option<f64> {
    if n0 == 0 || n1 == 0 {
        return None;
    }
    let p = term_probability(tf0, tf1, n0 + n1).ok()?;
    if p <= 0.0 || p >= 1.0 {
        return None;
    }
    // tf0 - n0*p rewritten as (tf0*n1 - tf1*n0)/n, exact in integers, so
    // proportional use scores exactly zero
    let diff = tf0 as i128 * n1 as i128 - tf1 as i128 * n0 as i128;
    let n = (n0 + n1) as f64;
    let expected = n0 as f64 * p;
    Some((diff as f64 / n) / (expected * (1.0 - p)).sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermScore {
    pub term: String,
    pub tf0: u64,
    pub tf1: u64,
    pub p: f64,
    pub expected0: f64,
    /// `None` where the score is undefined.
    pub z: Option<f64>,
    /// Whether the term is a word (not a number or punctuation).
    pub is_word: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecificityOptions {
    pub unit: TermUnit,
    pub threshold: f64,
    /// Per-direction list length; `None` keeps every term past the threshold.
    pub top_k: Option<usize>,
    /// Keep number and punctuation terms in the lists. They are always
    /// scored and always count in `n0` and `n1`.
    pub include_non_words: bool,
}

impl Default for SpecificityOptions {
    fn default() -> Self {
        SpecificityOptions {
            unit: TermUnit::Surface,
            threshold: DEFAULT_THRESHOLD,
            top_k: Some(10),
            include_non_words: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpecificityReport {
    pub partition: Partition,
    pub unit: TermUnit,
    pub threshold: f64,
    pub n0: u64,
    pub n1: u64,
    /// `z > threshold`, by z descending then term.
    pub overused: Vec<TermScore>,
    /// `z < -threshold`, by z ascending then term.
    pub underused: Vec<TermScore>,
}

#[derive(Default)]
struct Counts {
    tf0: u64,
    tf1: u64,
    is_word: bool,
}

fn count_into(
    docs: &[&Document],
    unit: TermUnit,
    counts: &mut BTreeMap<String, Counts>,
    target: bool,
) -> Result<u64> {
    let mut n = 0;
    for d in docs {
        for t in &d.tokens {
            let term = unit.term(t).map_err(|e| match e {
                Error::MissingAnnotation(m) => Error::MissingAnnotation(format!("document '{}': {m}", d.id)),
                other => other,
            })?;
            let c = counts.entry(term.into_owned()).or_default();
            c.is_word |= t.kind == TokenKind::Word;
            if target {
                c.tf0 += 1;
            } else {
                c.tf1 += 1;
            }
            n += 1;
        }
    }
    Ok(n)
}

/// Scores of every term of the pooled vocabulary, sorted by term, with the
/// part sizes `(n0, n1)`.
pub fn score_terms(corpus: &Corpus, partition: &Partition, unit: TermUnit) -> Result<(Vec<TermScore>, u64, u64)> {
    let mut counts = BTreeMap::new();
    let n0 = count_into(&partition.target_docs(corpus), unit, &mut counts, true)?;
    let n1 = count_into(&partition.reference_docs(corpus), unit, &mut counts, false)?;
    if counts.is_empty() {
        return Err(Error::validation("the partition has an empty vocabulary"));
    }
    let n = n0 + n1;
    let scores = counts
        .into_iter()
        .map(|(term, c)| {
            let p = (c.tf0 + c.tf1) as f64 / n as f64;
            TermScore {
                term,
                tf0: c.tf0,
                tf1: c.tf1,
                p,
                expected0: n0 as f64 * p,
                z: z_score(c.tf0, n0, c.tf1, n1),
                is_word: c.is_word,
            }
        })
        .collect();
    Ok((scores, n0, n1))
}

/// Over- and under-used terms of `partition`'s target part.
pub fn characteristic_vocabulary(
    corpus: &Corpus,
    partition: &Partition,
    opts: &SpecificityOptions,
) -> Result<SpecificityReport> {
    if !(opts.threshold >= 0.0) {
        return Err(Error::validation("threshold must be non-negative"));
    }
    let (scores, n0, n1) = score_terms(corpus, partition, opts.unit)?;
    let (mut overused, mut underused): (Vec<TermScore>, Vec<TermScore>) = scores
        .into_iter()
        .filter(|s| s.z.is_some() && (opts.include_non_words || s.is_word))
        .filter(|s| s.z.unwrap().abs() > opts.threshold)
        .partition(|s| s.z.unwrap() > 0.0);
    // input is sorted by term, so a stable sort leaves ties in term order
    overused.sort_by(|a, b| b.z.unwrap().total_cmp(&a.z.unwrap()));
    underused.sort_by(|a, b| a.z.unwrap().total_cmp(&b.z.unwrap()));
    if let Some(k) = opts.top_k {
        overused.truncate(k);
        underused.truncate(k);
    }
    Ok(SpecificityReport {
        partition: partition.clone(),
        unit: opts.unit,
        threshold: opts.threshold,
        n0,
        n1,
        overused,
        underused,
    })
}

impl SpecificityReport {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(["term", "tf0", "tf1", "p", "expected", "z", "direction"]);
        let rows = self
            .overused
            .iter()
            .map(|s| (s, "over"))
            .chain(self.underused.iter().map(|s| (s, "under")));
        for (s, dir) in rows {
            t.push(vec![
                Cell::text(&s.term),
                Cell::Int(s.tf0 as i64),
                Cell::Int(s.tf1 as i64),
                Cell::real_with(s.p, 6),
                Cell::real(s.expected0),
                Cell::opt_real(s.z),
                Cell::text(dir),
            ]);
        }
        t
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TypicalSentence {
    pub doc_id: String,
    pub sentence: usize,
    pub overused_count: usize,
    pub length: usize,
    pub density: f64,
    /// Token surfaces with a flag marking over-used terms.
    pub tokens: Vec<(String, bool)>,
}

impl TypicalSentence {
    /// Surfaces joined by spaces, over-used tokens in brackets.
    pub fn render(&self) -> String {
        self.tokens
            .iter()
            .map(|(s, flagged)| if *flagged { format!("[{s}]") } else { s.clone() })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Target-part sentences ranked by the number of over-used term
/// occurrences, then by density (count / length), then document order.
/// Sentences without any over-used token are not returned.
pub fn typical_sentences(
    corpus: &Corpus,
    partition: &Partition,
    report: &SpecificityReport,
    top_k: usize,
) -> Result<Vec<TypicalSentence>> {
    if report.partition != *partition {
        return Err(Error::validation("the report was computed on a different partition"));
    }
    if report.overused.is_empty() {
        log::info!("no over-used terms; no typical sentences");
        return Ok(Vec::new());
    }
    let overused: std::collections::HashSet<&str> = report.overused.iter().map(|s| s.term.as_str()).collect();
    let mut ranked = Vec::new();
    for d in partition.target_docs(corpus) {
        for (si, s) in d.sentences.iter().enumerate() {
            let toks = d.sentence_tokens(*s);
            let mut flagged = Vec::with_capacity(toks.len());
            let mut count = 0;
            for t in toks {
                let hit = overused.contains(report.unit.term(t)?.as_ref());
                count += hit as usize;
                flagged.push((t.surface.clone(), hit));
            }
            if count > 0 {
                ranked.push(TypicalSentence {
                    doc_id: d.id.clone(),
                    sentence: si,
                    overused_count: count,
                    length: toks.len(),
                    density: count as f64 / toks.len() as f64,
                    tokens: flagged,
                });
            }
        }
    }
    // stable: document order survives full ties
    ranked.sort_by(|a, b| {
        b.overused_count
            .cmp(&a.overused_count)
            .then(b.density.total_cmp(&a.density))
    });
    ranked.truncate(top_k);
    Ok(ranked)
}
