//! Lexical complexity and frequency statistics.
//!
//! All statistics over a set of documents pool the tokens of every document
//! (micro-average). [`per_document`] gives the per-document values needed
//! when a statistic is compared between groups with a t-test, and
//! [`Aggregation::DocumentMean`] averages those instead of pooling.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::{lemma_of, Document, Token, TokenKind};
use crate::error::{Error, Result};
use crate::table::{Cell, Table};
use crate::tagset::PosTag;

/// Minimum letter count of a "big word".
pub const BIG_WORD_LETTERS: usize = 6;
/// Default TTR window, in tokens.
pub const DEFAULT_WINDOW: usize = 2000;

fn words<'a>(docs: &'a [&'a Document]) -> impl Iterator<Item = &'a Token> + 'a {
    docs.iter().flat_map(|d| d.words())
}

fn require_words(docs: &[&Document], what: &str) -> Result<usize> {
    let n = words(docs).count();
    if n == 0 {
        Err(Error::UndefinedStatistic(format!("{what} needs at least one word token")))
    } else {
        Ok(n)
    }
}

/// Mean number of letters per word token.
pub fn mean_word_length(docs: &[&Document]) -> Result<f64> {
    let n = require_words(docs, "mean word length")?;
    let letters: usize = words(docs).map(Token::letter_count).sum();
    Ok(letters as f64 / n as f64)
}

/// Fraction of word tokens with at least six letters.
pub fn big_word_ratio(docs: &[&Document]) -> Result<f64> {
    let n = require_words(docs, "big-word ratio")?;
    let big = words(docs).filter(|t| t.letter_count() >= BIG_WORD_LETTERS).count();
    Ok(big as f64 / n as f64)
}

/// Token stream of a document set as dense ids of lowercased surfaces.
fn folded_ids(docs: &[&Document]) -> Vec<u32> {
    let mut ids: HashMap<String, u32> = HashMap::new();
    docs.iter()
        .flat_map(|d| d.tokens.iter())
        .map(|t| {
            let next = ids.len() as u32;
            *ids.entry(t.folded()).or_insert(next)
        })
        .collect()
}

fn check_window(len: usize, window: usize) -> Result<()> {
    if window == 0 {
        return Err(Error::validation("TTR window must be positive"));
    }
    if len < window {
        return Err(Error::UndefinedStatistic(format!(
            "TTR window of {window} tokens needs {} more token(s) (stream has {len})",
            window - len
        )));
    }
    Ok(())
}

/// Type/token ratio averaged over consecutive non-overlapping windows.
///
/// Windows hold exactly `window` tokens of every kind; the trailing
/// remainder shorter than a window is discarded. Types are lowercased
/// surfaces.
pub fn ttr_segmented(docs: &[&Document], window: usize) -> Result<f64> {
    let ids = folded_ids(docs);
    check_window(ids.len(), window)?;
    let mut seen = vec![u32::MAX; ids.len()];
    let mut sum = 0.0;
    let mut segments = 0usize;
    for (s, chunk) in ids.chunks_exact(window).enumerate() {
        let mut types = 0usize;
        for &id in chunk {
            if seen[id as usize] != s as u32 {
                seen[id as usize] = s as u32;
                types += 1;
            }
        }
        sum += types as f64 / window as f64;
        segments += 1;
    }
    Ok(sum / segments as f64)
}

/// Moving-average type/token ratio over every window `[i, i + window)`.
pub fn mattr_sliding(docs: &[&Document], window: usize) -> Result<f64> {
    let ids = folded_ids(docs);
    check_window(ids.len(), window)?;
    let mut counts = vec![0u32; ids.len()];
    let mut types = 0usize;
    for &id in &ids[..window] {
        if counts[id as usize] == 0 {
            types += 1;
        }
        counts[id as usize] += 1;
    }
    let mut total = types as u64;
    for i in window..ids.len() {
        let out = ids[i - window] as usize;
        counts[out] -= 1;
        if counts[out] == 0 {
            types -= 1;
        }
        let inn = ids[i] as usize;
        if counts[inn] == 0 {
            types += 1;
        }
        counts[inn] += 1;
        total += types as u64;
    }
    let windows = (ids.len() - window + 1) as f64;
    Ok(total as f64 / windows / window as f64)
}

/// Mean count of word and number tokens per sentence.
pub fn mean_sentence_length(docs: &[&Document]) -> Result<f64> {
    let mut sentences = 0usize;
    let mut units = 0usize;
    for d in docs {
        for s in &d.sentences {
            sentences += 1;
            units += d
                .sentence_tokens(*s)
                .iter()
                .filter(|t| t.kind != TokenKind::Punctuation)
                .count();
        }
    }
    if sentences == 0 {
        return Err(Error::UndefinedStatistic("mean sentence length needs at least one sentence".into()));
    }
    Ok(units as f64 / sentences as f64)
}

/// Share of word types that occur exactly once.
pub fn hapax_ratio(docs: &[&Document]) -> Result<f64> {
    require_words(docs, "hapax ratio")?;
    let mut counts: HashMap<String, usize> = HashMap::new();
    for t in words(docs) {
        *counts.entry(t.folded()).or_default() += 1;
    }
    let hapax = counts.values().filter(|&&c| c == 1).count();
    Ok(hapax as f64 / counts.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FreqUnit {
    Surface,
    Lemma,
    Pos,
}

impl std::str::FromStr for FreqUnit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "surface" => Ok(FreqUnit::Surface),
            "lemma" => Ok(FreqUnit::Lemma),
            "pos" => Ok(FreqUnit::Pos),
            other => Err(Error::validation(format!("unknown unit '{other}' (surface, lemma or pos)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FreqRow {
    pub key: String,
    pub count: usize,
    pub rel_freq: f64,
    /// Set on the `excluded` POS bucket, which is reported but lies outside
    /// the distribution proper.
    pub excluded: bool,
}

/// Keys with counts and relative frequencies over all tokens, sorted by
/// count descending then key.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrequencyTable {
    pub unit: FreqUnit,
    pub total: usize,
    pub rows: Vec<FreqRow>,
}

impl FrequencyTable {
    pub fn count_of(&self, key: &str) -> usize {
        self.rows.iter().find(|r| r.key == key).map_or(0, |r| r.count)
    }

    pub fn truncate(mut self, k: usize) -> Self {
        self.rows.truncate(k);
        self
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(["rank", "key", "count", "total", "rel_freq", "excluded"]);
        for (i, r) in self.rows.iter().enumerate() {
            t.push(vec![
                Cell::Int(i as i64 + 1),
                Cell::text(&r.key),
                Cell::Int(r.count as i64),
                Cell::Int(self.total as i64),
                Cell::real(r.rel_freq),
                Cell::Bool(r.excluded),
            ]);
        }
        t
    }
}

fn unit_key(t: &Token, unit: FreqUnit) -> Result<String> {
    match unit {
        FreqUnit::Surface => Ok(t.folded()),
        FreqUnit::Lemma => lemma_of(t),
        FreqUnit::Pos => t.pos.map(|p| p.as_str().to_string()).ok_or_else(|| {
            Error::MissingAnnotation(format!("no POS tag for token '{}' at position {}", t.surface, t.index))
        }),
    }
}

/// Full frequency table of a document set.
pub fn frequency_table(docs: &[&Document], unit: FreqUnit) -> Result<FrequencyTable> {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut total = 0usize;
    for d in docs {
        for t in &d.tokens {
            let key = unit_key(t, unit).map_err(|e| match e {
                Error::MissingAnnotation(m) => Error::MissingAnnotation(format!("document '{}': {m}", d.id)),
                other => other,
            })?;
            *counts.entry(key).or_default() += 1;
            total += 1;
        }
    }
    let excluded_key = PosTag::Excluded.as_str();
    let mut rows: Vec<FreqRow> = counts
        .into_iter()
        .map(|(key, count)| FreqRow {
            excluded: unit == FreqUnit::Pos && key == excluded_key,
            rel_freq: count as f64 / total as f64,
            key,
            count,
        })
        .collect();
    // stable sort keeps the BTreeMap's lexicographic order among ties
    rows.sort_by(|a, b| b.count.cmp(&a.count));
    Ok(FrequencyTable { unit, total, rows })
}

/// The `k` most frequent keys. Punctuation tokens count both as candidate
/// keys and in the denominator.
pub fn top_k_frequencies(docs: &[&Document], unit: FreqUnit, k: usize) -> Result<FrequencyTable> {
    Ok(frequency_table(docs, unit)?.truncate(k))
}

/// Relative frequency of each toolkit POS tag over all tokens.
pub fn pos_distribution(docs: &[&Document]) -> Result<FrequencyTable> {
    frequency_table(docs, FreqUnit::Pos)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Aggregation {
    /// Pool the tokens of all documents.
    #[default]
    Pooled,
    /// Average the per-document values.
    DocumentMean,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatReport {
    pub group: String,
    pub word_length_mean: f64,
    pub big_word_ratio: f64,
    pub ttr_segmented: Option<f64>,
    pub mattr_sliding: Option<f64>,
    pub msl: f64,
    pub hapax_ratio: f64,
    pub token_count: usize,
    pub type_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatOptions {
    pub window: usize,
    pub sliding: bool,
    pub aggregation: Aggregation,
}

impl Default for StatOptions {
    fn default() -> Self {
        StatOptions {
            window: DEFAULT_WINDOW,
            sliding: false,
            aggregation: Aggregation::Pooled,
        }
    }
}

fn undefined_as_none(r: Result<f64>) -> Result<Option<f64>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::UndefinedStatistic(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn pooled_report(group: &str, docs: &[&Document], opts: &StatOptions) -> Result<StatReport> {
    let summary = crate::corpus::summarize(group, docs);
    Ok(StatReport {
        group: group.to_string(),
        word_length_mean: mean_word_length(docs)?,
        big_word_ratio: big_word_ratio(docs)?,
        ttr_segmented: undefined_as_none(ttr_segmented(docs, opts.window))?,
        mattr_sliding: if opts.sliding {
            undefined_as_none(mattr_sliding(docs, opts.window))?
        } else {
            None
        },
        msl: mean_sentence_length(docs)?,
        hapax_ratio: hapax_ratio(docs)?,
        token_count: summary.tokens,
        type_count: summary.types,
    })
}

/// Statistics for one group of documents. A TTR whose window exceeds the
/// available tokens is reported as `None`.
pub fn stat_report(group: &str, docs: &[&Document], opts: &StatOptions) -> Result<StatReport> {
    match opts.aggregation {
        Aggregation::Pooled => pooled_report(group, docs, opts),
        Aggregation::DocumentMean => {
            let per = per_document(docs, opts)?;
            if per.is_empty() {
                return Err(Error::UndefinedStatistic("no documents".into()));
            }
            let n = per.len() as f64;
            let mean = |f: &dyn Fn(&StatReport) -> f64| per.iter().map(f).sum::<f64>() / n;
            let mean_opt = |f: &dyn Fn(&StatReport) -> Option<f64>| {
                per.iter().map(f).collect::<Option<Vec<f64>>>().map(|v| v.iter().sum::<f64>() / n)
            };
            let pooled = crate::corpus::summarize(group, docs);
            Ok(StatReport {
                group: group.to_string(),
                word_length_mean: mean(&|r| r.word_length_mean),
                big_word_ratio: mean(&|r| r.big_word_ratio),
                ttr_segmented: mean_opt(&|r| r.ttr_segmented),
                mattr_sliding: mean_opt(&|r| r.mattr_sliding),
                msl: mean(&|r| r.msl),
                hapax_ratio: mean(&|r| r.hapax_ratio),
                token_count: pooled.tokens,
                type_count: pooled.types,
            })
        }
    }
}

/// One report per document, labeled with the document id, in input order.
pub fn per_document(docs: &[&Document], opts: &StatOptions) -> Result<Vec<StatReport>> {
    docs.par_iter()
        .map(|d| pooled_report(&d.id, &[*d], opts))
        .collect()
}

pub fn stat_table(reports: &[StatReport]) -> Table {
    let mut t = Table::new([
        "group",
        "word_length",
        "big_word_ratio",
        "ttr_segmented",
        "mattr_sliding",
        "msl",
        "hapax_ratio",
        "tokens",
        "types",
    ]);
    for r in reports {
        t.push(vec![
            Cell::text(&r.group),
            Cell::real(r.word_length_mean),
            Cell::real(r.big_word_ratio),
            Cell::opt_real(r.ttr_segmented),
            Cell::opt_real(r.mattr_sliding),
            Cell::real(r.msl),
            Cell::real(r.hapax_ratio),
            Cell::Int(r.token_count as i64),
            Cell::Int(r.type_count as i64),
        ]);
    }
    t
}
