//! Multi-section report bundles.
//!
//! [`run_report`] computes every enabled section in memory and only then
//! writes the bundle, so a failing run leaves no partial files. Each section
//! yields `<section>.tsv` and `<section>.json`; the distance section adds
//! `tree.nwk` and `tree.svg` when there are at least three groups. A
//! `manifest.json` lists the inputs, the parameters and the SHA-256 digest of
//! every file. No timestamps are written anywhere, so identical inputs give a
//! byte-identical bundle.
//!
//! Tests against the baseline group put `*` in the `mark` column of the
//! non-baseline row when `p_value < alpha`. The counts and totals the test
//! used sit in the same row (or, for t-tests, in the `document` rows of the
//! stats table), so every mark can be recomputed from the bundle.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::categories::{bundled_wordlists, category_counts, Denominator, Wordlist};
use crate::corpus::{summarize, summary_table, Corpus, Group, Partition, SummaryRow};
use crate::distance::{distance_matrix, export_newick, layout_tree, neighbor_joining, RatioPolicy, DEFAULT_MAX_RATIO};
use crate::error::{Error, Result};
use crate::lexstats::{frequency_table, per_document, stat_report, FreqUnit, StatOptions, StatReport, DEFAULT_WINDOW};
use crate::specificity::{characteristic_vocabulary, SpecificityOptions, TermUnit, DEFAULT_THRESHOLD};
use crate::stattests::{two_proportion_test, welch_t_test, TestResult, DEFAULT_ALPHA};
use crate::table::{Cell, Table};
use crate::tagset::PosTag;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Section {
    Summary,
    Topk,
    Categories,
    Stats,
    Pos,
    Specificity,
    Distance,
}

impl Section {
    pub const ALL: [Section; 7] = [
        Section::Summary,
        Section::Topk,
        Section::Categories,
        Section::Stats,
        Section::Pos,
        Section::Specificity,
        Section::Distance,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Section::Summary => "summary",
            Section::Topk => "topk",
            Section::Categories => "categories",
            Section::Stats => "stats",
            Section::Pos => "pos",
            Section::Specificity => "specificity",
            Section::Distance => "distance",
        }
    }

    /// Sections that compare groups against the baseline.
    pub fn uses_baseline(self) -> bool {
        matches!(self, Section::Topk | Section::Categories | Section::Stats)
    }
}

impl std::fmt::Display for Section {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Section {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Section::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::validation(format!("unknown report section '{s}'")))
    }
}

#[derive(Debug, Clone)]
pub struct ReportSpec {
    pub grouping: Vec<String>,
    /// Group every other group is tested against; no tests when `None`.
    pub baseline: Option<String>,
    pub alpha: f64,
    pub window: usize,
    pub top_k: usize,
    pub threshold: f64,
    /// Specificity unit; lemma for annotated corpora, surface otherwise.
    pub specificity_unit: Option<TermUnit>,
    pub distance_unit: TermUnit,
    /// Grouping of the distance section; `grouping` when `None`.
    pub distance_grouping: Option<Vec<String>>,
    pub ratio: RatioPolicy,
    pub sections: BTreeSet<Section>,
    pub wordlists: Vec<Wordlist>,
}

impl Default for ReportSpec {
    fn default() -> Self {
        ReportSpec {
            grouping: vec!["group".into()],
            baseline: None,
            alpha: DEFAULT_ALPHA,
            window: DEFAULT_WINDOW,
            top_k: 10,
            threshold: DEFAULT_THRESHOLD,
            specificity_unit: None,
            distance_unit: TermUnit::Surface,
            distance_grouping: None,
            ratio: RatioPolicy {
                max_ratio: DEFAULT_MAX_RATIO,
                enforce: true,
            },
            sections: Section::ALL.into_iter().collect(),
            wordlists: bundled_wordlists(),
        }
    }
}

impl ReportSpec {
    fn validate(&self, corpus: &Corpus) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::validation(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        if self.window == 0 {
            return Err(Error::validation("window must be positive"));
        }
        if self.top_k == 0 {
            return Err(Error::validation("k must be positive"));
        }
        if !(self.threshold >= 0.0) {
            return Err(Error::validation("threshold must be non-negative"));
        }
        if !(self.ratio.max_ratio >= 1.0) {
            return Err(Error::validation("max ratio must be at least 1"));
        }
        if self.sections.is_empty() {
            return Err(Error::validation("no report section enabled"));
        }
        let keys: Vec<&str> = self.grouping.iter().map(String::as_str).collect();
        let groups = corpus.group_by(&keys)?;
        if let Some(b) = &self.baseline {
            if self.sections.iter().any(|s| s.uses_baseline()) && !groups.iter().any(|g| &g.label == b) {
                let labels: Vec<&str> = groups.iter().map(|g| g.label.as_str()).collect();
                return Err(Error::validation(format!(
                    "baseline group '{b}' is not in the corpus (groups: {})",
                    labels.join(", ")
                )));
            }
        }
        Ok(())
    }
}

/// A written bundle.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportOutcome {
    /// File names relative to the output directory, manifest last.
    pub files: Vec<String>,
    /// Sections left out, with the reason.
    pub skipped: Vec<(Section, String)>,
}

struct SectionOutput {
    files: Vec<(String, Vec<u8>)>,
    notes: Vec<String>,
}

fn table_files(name: &str, table: &Table) -> Vec<(String, Vec<u8>)> {
    vec![
        (format!("{name}.tsv"), table.to_tsv().into_bytes()),
        (format!("{name}.json"), table.to_json().into_bytes()),
    ]
}

fn mark(r: &Option<TestResult>) -> Cell {
    Cell::text(if r.is_some_and(|r| r.significant) { "*" } else { "" })
}

fn test_cells(r: &Option<TestResult>) -> Vec<Cell> {
    vec![
        Cell::opt_real(r.map(|r| r.statistic)),
        Cell::opt_real(r.map(|r| r.p_value)),
        match r {
            Some(r) => Cell::Bool(r.significant),
            None => Cell::Missing,
        },
        mark(r),
    ]
}

/// `Ok(None)` for a test that is undefined on these data.
fn defined(r: Result<TestResult>) -> Result<Option<TestResult>> {
    match r {
        Ok(r) => Ok(Some(r)),
        Err(Error::UndefinedTest(m)) => {
            log::debug!("test undefined: {m}");
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn baseline_of<'g, 'a>(groups: &'g [Group<'a>], baseline: Option<&str>) -> Option<&'g Group<'a>> {
    let b = baseline?;
    groups.iter().find(|g| g.label == b)
}

/// Top-`k` keys per group. With a baseline, each non-baseline row carries a
/// two-proportion test of its count against the baseline's count of the
/// same key.
pub fn topk_table(groups: &[Group<'_>], unit: FreqUnit, k: usize, baseline: Option<&str>, alpha: f64) -> Result<Table> {
    let base = match baseline_of(groups, baseline) {
        Some(g) => Some(frequency_table(&g.docs, unit)?),
        None => None,
    };
    let mut t = Table::new([
        "group",
        "rank",
        "key",
        "count",
        "total",
        "rel_freq",
        "baseline_count",
        "baseline_total",
        "statistic",
        "p_value",
        "significant",
        "mark",
    ]);
    for g in groups {
        let ft = frequency_table(&g.docs, unit)?;
        for (i, row) in ft.rows.iter().take(k).enumerate() {
            let (bc, bt, test) = match &base {
                Some(bft) if baseline != Some(g.label.as_str()) => {
                    let bc = bft.count_of(&row.key);
                    let test = defined(two_proportion_test(
                        row.count as u64,
                        ft.total as u64,
                        bc as u64,
                        bft.total as u64,
                        alpha,
                    ))?;
                    (Cell::Int(bc as i64), Cell::Int(bft.total as i64), test)
                }
                _ => (Cell::Missing, Cell::Missing, None),
            };
            let mut cells = vec![
                Cell::text(&g.label),
                Cell::Int(i as i64 + 1),
                Cell::text(&row.key),
                Cell::Int(row.count as i64),
                Cell::Int(ft.total as i64),
                Cell::real(row.rel_freq),
                bc,
                bt,
            ];
            cells.extend(test_cells(&test));
            t.push(cells);
        }
    }
    Ok(t)
}

/// Category counts per group, with a two-proportion test against the
/// baseline when one is given. Groups without counted tokens are left out.
pub fn category_table(
    groups: &[Group<'_>],
    wordlists: &[Wordlist],
    denominator: Denominator,
    baseline: Option<&str>,
    alpha: f64,
) -> Result<Table> {
    let base = baseline_of(groups, baseline).map(|g| category_counts(&g.docs, wordlists, denominator));
    let mut t = Table::new([
        "group",
        "category",
        "matched",
        "total",
        "rel_freq",
        "baseline_matched",
        "baseline_total",
        "statistic",
        "p_value",
        "significant",
        "mark",
    ]);
    for g in groups {
        let (matched, total) = category_counts(&g.docs, wordlists, denominator);
        if total == 0 {
            log::info!("group '{}' has no counted tokens", g.label);
            continue;
        }
        for (ci, w) in wordlists.iter().enumerate() {
            let (bm, bt, test) = match &base {
                Some((bm, bt)) if baseline != Some(g.label.as_str()) && *bt > 0 => {
                    let test = defined(two_proportion_test(
                        matched[ci] as u64,
                        total as u64,
                        bm[ci] as u64,
                        *bt as u64,
                        alpha,
                    ))?;
                    (Cell::Int(bm[ci] as i64), Cell::Int(*bt as i64), test)
                }
                _ => (Cell::Missing, Cell::Missing, None),
            };
            let mut cells = vec![
                Cell::text(&g.label),
                Cell::text(&w.name),
                Cell::Int(matched[ci] as i64),
                Cell::Int(total as i64),
                Cell::real(matched[ci] as f64 / total as f64),
                bm,
                bt,
            ];
            cells.extend(test_cells(&test));
            t.push(cells);
        }
    }
    Ok(t)
}

type StatGetter = fn(&StatReport) -> Option<f64>;

const TESTED_STATS: [(&str, StatGetter); 5] = [
    ("word_length", |r| Some(r.word_length_mean)),
    ("big_word_ratio", |r| Some(r.big_word_ratio)),
    ("ttr_segmented", |r| r.ttr_segmented),
    ("msl", |r| Some(r.msl)),
    ("hapax_ratio", |r| Some(r.hapax_ratio)),
];

/// Long table: one `group` row per (group, statistic) holding the pooled
/// value and the Welch test of the per-document values against the
/// baseline's, then one `document` row per (document, statistic) with the
/// sample values the tests used.
pub fn stats_test_table(groups: &[Group<'_>], opts: &StatOptions, baseline: Option<&str>, alpha: f64) -> Result<Table> {
    let mut pooled = Vec::new();
    let mut per_doc = Vec::new();
    for g in groups {
        pooled.push(stat_report(&g.label, &g.docs, opts)?);
        per_doc.push(per_document(&g.docs, opts)?);
    }
    let base_idx = baseline.and_then(|b| groups.iter().position(|g| g.label == b));
    let mut t = Table::new([
        "scope",
        "label",
        "group",
        "statistic_name",
        "value",
        "n",
        "t",
        "df",
        "p_value",
        "significant",
        "mark",
    ]);
    for (gi, g) in groups.iter().enumerate() {
        for (name, get) in TESTED_STATS {
            let sample: Vec<f64> = per_doc[gi].iter().filter_map(get).collect();
            let test = match base_idx {
                Some(b) if b != gi => {
                    let base: Vec<f64> = per_doc[b].iter().filter_map(get).collect();
                    defined(welch_t_test(&sample, &base, alpha))?
                }
                _ => None,
            };
            t.push(vec![
                Cell::text("group"),
                Cell::text(&g.label),
                Cell::text(&g.label),
                Cell::text(name),
                Cell::opt_real(get(&pooled[gi])),
                Cell::Int(sample.len() as i64),
                Cell::opt_real(test.map(|r| r.statistic)),
                Cell::opt_real(test.and_then(|r| r.df)),
                Cell::opt_real(test.map(|r| r.p_value)),
                match test {
                    Some(r) => Cell::Bool(r.significant),
                    None => Cell::Missing,
                },
                mark(&test),
            ]);
        }
    }
    for (gi, g) in groups.iter().enumerate() {
        for r in &per_doc[gi] {
            for (name, get) in TESTED_STATS {
                t.push(vec![
                    Cell::text("document"),
                    Cell::text(&r.group),
                    Cell::text(&g.label),
                    Cell::text(name),
                    Cell::opt_real(get(r)),
                    Cell::Int(1),
                    Cell::Missing,
                    Cell::Missing,
                    Cell::Missing,
                    Cell::Missing,
                    Cell::text(""),
                ]);
            }
        }
    }
    if pooled.iter().any(|r| r.ttr_segmented.is_none()) {
        log::info!("segmented TTR undefined for some groups (window {})", opts.window);
    }
    Ok(t)
}

/// Every toolkit tag for every group, zero counts included.
pub fn pos_table(groups: &[Group<'_>]) -> Result<Table> {
    let mut t = Table::new(["group", "tag", "count", "total", "rel_freq", "excluded"]);
    for g in groups {
        let ft = frequency_table(&g.docs, FreqUnit::Pos)?;
        for tag in PosTag::ALL {
            let count = ft.count_of(tag.as_str());
            t.push(vec![
                Cell::text(&g.label),
                Cell::text(tag.as_str()),
                Cell::Int(count as i64),
                Cell::Int(ft.total as i64),
                Cell::real(if ft.total == 0 { 0.0 } else { count as f64 / ft.total as f64 }),
                Cell::Bool(tag == PosTag::Excluded),
            ]);
        }
    }
    Ok(t)
}

/// Characteristic vocabulary of each group in turn against the rest of the
/// corpus.
pub fn specificity_by_group_table(corpus: &Corpus, groups: &[Group<'_>], opts: &SpecificityOptions) -> Result<Table> {
    if groups.len() < 2 {
        return Err(Error::validation("specificity needs at least two groups"));
    }
    let mut t = Table::new(["group", "term", "tf0", "tf1", "n0", "n1", "p", "expected", "z", "direction"]);
    for g in groups {
        let p0: Vec<&str> = g.docs.iter().map(|d| d.id.as_str()).collect();
        let p1: Vec<&str> = corpus
            .documents()
            .iter()
            .map(|d| d.id.as_str())
            .filter(|id| !p0.contains(id))
            .collect();
        let part = Partition::new(corpus, p0, p1)?;
        let rep = characteristic_vocabulary(corpus, &part, opts)?;
        let rows = rep
            .overused
            .iter()
            .map(|s| (s, "over"))
            .chain(rep.underused.iter().map(|s| (s, "under")));
        for (s, dir) in rows {
            t.push(vec![
                Cell::text(&g.label),
                Cell::text(&s.term),
                Cell::Int(s.tf0 as i64),
                Cell::Int(s.tf1 as i64),
                Cell::Int(rep.n0 as i64),
                Cell::Int(rep.n1 as i64),
                Cell::real_with(s.p, 6),
                Cell::real(s.expected0),
                Cell::opt_real(s.z),
                Cell::text(dir),
            ]);
        }
    }
    Ok(t)
}

fn table_section(name: &str, table: Result<Table>) -> Result<SectionOutput> {
    Ok(SectionOutput {
        files: table_files(name, &table?),
        notes: vec![],
    })
}

fn section_output(corpus: &Corpus, spec: &ReportSpec, groups: &[Group<'_>], section: Section) -> Result<SectionOutput> {
    let baseline = spec.baseline.as_deref();
    let alpha = spec.alpha;
    let name = section.as_str();
    match section {
        Section::Summary => {
            let rows: Vec<SummaryRow> = groups.iter().map(|g| summarize(&g.label, &g.docs)).collect();
            table_section(name, Ok(summary_table(&rows)))
        }
        Section::Topk => table_section(name, topk_table(groups, FreqUnit::Lemma, spec.top_k, baseline, alpha)),
        Section::Categories => table_section(
            name,
            category_table(groups, &spec.wordlists, Denominator::AllTokens, baseline, alpha),
        ),
        Section::Stats => {
            let opts = StatOptions {
                window: spec.window,
                ..StatOptions::default()
            };
            table_section(name, stats_test_table(groups, &opts, baseline, alpha))
        }
        Section::Pos => table_section(name, pos_table(groups)),
        Section::Specificity => {
            let opts = SpecificityOptions {
                unit: spec.specificity_unit.unwrap_or(TermUnit::default_for(corpus)),
                threshold: spec.threshold,
                top_k: Some(spec.top_k),
                include_non_words: false,
            };
            table_section(name, specificity_by_group_table(corpus, groups, &opts))
        }
        Section::Distance => distance_section(corpus, spec),
    }
}

fn distance_section(corpus: &Corpus, spec: &ReportSpec) -> Result<SectionOutput> {
    let keys: Vec<&str> = spec
        .distance_grouping
        .as_ref()
        .unwrap_or(&spec.grouping)
        .iter()
        .map(String::as_str)
        .collect();
    let m = distance_matrix(corpus, &keys, spec.distance_unit, spec.ratio)?;
    let mut files = vec![
        ("distance.tsv".to_string(), m.to_tsv().into_bytes()),
        ("distance.json".to_string(), m.to_json().into_bytes()),
    ];
    let mut notes = Vec::new();
    if m.len() >= 3 {
        let tree = neighbor_joining(&m)?;
        let mut nwk = export_newick(&tree);
        nwk.push('\n');
        files.push(("tree.nwk".into(), nwk.into_bytes()));
        files.push(("tree.svg".into(), layout_tree(&tree).to_svg().into_bytes()));
    } else {
        notes.push(format!("only {} groups; no tree drawn", m.len()));
    }
    Ok(SectionOutput { files, notes })
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn inputs_json(corpus: &Corpus) -> Vec<Value> {
    if corpus.manifest().is_empty() {
        return corpus
            .documents()
            .iter()
            .map(|d| {
                json!({
                    "id": d.id, "group": d.group, "subgroup": d.subgroup,
                    "origin": d.origin.as_str(), "year": d.year, "tokens": d.tokens.len(),
                })
            })
            .collect();
    }
    corpus
        .manifest()
        .iter()
        .map(|e| {
            let digest = std::fs::read(&e.path).ok().map(|b| sha256_hex(&b));
            let tokens = corpus.get(&e.id).map(|d| d.tokens.len());
            json!({
                "id": e.id,
                "file": e.path.file_name().map(|f| f.to_string_lossy().into_owned()),
                "group": e.group,
                "subgroup": e.subgroup,
                "origin": e.origin.as_str(),
                "year": e.year,
                "format": e.format,
                "tokens": tokens,
                "sha256": digest,
            })
        })
        .collect()
}

fn parameters_json(corpus: &Corpus, spec: &ReportSpec) -> Value {
    json!({
        "grouping": spec.grouping,
        "baseline": spec.baseline,
        "alpha": spec.alpha,
        "window": spec.window,
        "k": spec.top_k,
        "threshold": spec.threshold,
        "specificity_unit": spec.specificity_unit.unwrap_or(TermUnit::default_for(corpus)),
        "distance_unit": spec.distance_unit,
        "distance_grouping": spec.distance_grouping.as_ref().unwrap_or(&spec.grouping),
        "max_ratio": spec.ratio.max_ratio,
        "enforce_ratio": spec.ratio.enforce,
        "sections": spec.sections,
        "wordlists": spec.wordlists.iter().map(|w| w.name.as_str()).collect::<Vec<_>>(),
    })
}

/// Writes `bytes` to `dir/name` through a temporary file in `dir`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(bytes)?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Computes the enabled sections and writes the bundle into `out_dir`.
///
/// A section that needs annotations the corpus lacks is skipped with a
/// notice; any other failure aborts the run before a file is written.
pub fn run_report(corpus: &Corpus, spec: &ReportSpec, out_dir: &Path) -> Result<ReportOutcome> {
    let bundle = build_report(corpus, spec)?;
    std::fs::create_dir_all(out_dir)?;
    let mut written: Vec<PathBuf> = Vec::new();
    for (name, bytes) in &bundle.files {
        let path = out_dir.join(name);
        if let Err(e) = write_atomic(&path, bytes) {
            for p in &written {
                let _ = std::fs::remove_file(p);
            }
            return Err(e);
        }
        written.push(path);
    }
    Ok(ReportOutcome {
        files: bundle.files.into_iter().map(|(n, _)| n).collect(),
        skipped: bundle.skipped,
    })
}

/// In-memory bundle.
pub struct Bundle {
    /// `(file name, contents)`, `manifest.json` last.
    pub files: Vec<(String, Vec<u8>)>,
    pub skipped: Vec<(Section, String)>,
}

/// Computes the bundle without touching the file system.
pub fn build_report(corpus: &Corpus, spec: &ReportSpec) -> Result<Bundle> {
    spec.validate(corpus)?;
    let keys: Vec<&str> = spec.grouping.iter().map(String::as_str).collect();
    let groups = corpus.group_by(&keys)?;

    let mut files = Vec::new();
    let mut skipped = Vec::new();
    let mut section_entries = Vec::new();
    for &section in &spec.sections {
        match section_output(corpus, spec, &groups, section) {
            Ok(out) => {
                for n in &out.notes {
                    log::info!("{section}: {n}");
                }
                section_entries.push(json!({
                    "name": section,
                    "status": "written",
                    "files": out.files.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>(),
                    "notes": out.notes,
                }));
                files.extend(out.files);
            }
            Err(Error::MissingAnnotation(m)) => {
                log::info!("section '{section}' skipped: missing annotation: {m}");
                section_entries.push(json!({
                    "name": section,
                    "status": "skipped",
                    "files": [],
                    "notes": [format!("missing annotation: {m}")],
                }));
                skipped.push((section, m));
            }
            Err(e) => return Err(e),
        }
    }

    let digests: BTreeMap<&str, Value> = files
        .iter()
        .map(|(n, b)| (n.as_str(), json!({ "sha256": sha256_hex(b), "bytes": b.len() })))
        .collect();
    let manifest = json!({
        "tool": "stylometer",
        "version": env!("CARGO_PKG_VERSION"),
        "inputs": inputs_json(corpus),
        "parameters": parameters_json(corpus, spec),
        "sections": section_entries,
        "files": digests,
    });
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    files.push(("manifest.json".into(), text.into_bytes()));
    Ok(Bundle { files, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Abbreviations, Document, Origin};

    fn corpus() -> Corpus {
        let ab = Abbreviations::default();
        let text_a = "We will win. Our nation is free. We hope for peace and freedom. ";
        let text_b = "The law is the law. Government must plan. I blame fear. ";
        Corpus::from_documents(vec![
            Document::from_text("a1", "A", Origin::Real, &text_a.repeat(3), &ab),
            Document::from_text("a2", "A", Origin::Real, &text_a.repeat(4), &ab),
            Document::from_text("b1", "B", Origin::Generated, &text_b.repeat(3), &ab),
            Document::from_text("b2", "B", Origin::Generated, &text_b.repeat(2), &ab),
            Document::from_text("c1", "C", Origin::Real, &format!("{text_a}{text_b}"), &ab),
            Document::from_text("c2", "C", Origin::Real, &format!("{text_b}{text_a}"), &ab),
        ])
        .unwrap()
    }

    fn spec() -> ReportSpec {
        ReportSpec {
            baseline: Some("B".into()),
            window: 5,
            ..ReportSpec::default()
        }
    }

    #[test]
    fn summary_only() {
        let s = ReportSpec {
            sections: [Section::Summary].into_iter().collect(),
            ..spec()
        };
        let b = build_report(&corpus(), &s).unwrap();
        let names: Vec<&str> = b.files.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["summary.tsv", "summary.json", "manifest.json"]);
    }

    #[test]
    fn unknown_baseline_rejected() {
        let s = ReportSpec {
            baseline: Some("Z".into()),
            ..spec()
        };
        assert!(matches!(build_report(&corpus(), &s), Err(Error::Validation(_))));
    }

    #[test]
    fn plain_corpus_skips_annotated_sections() {
        let b = build_report(&corpus(), &spec()).unwrap();
        let skipped: Vec<Section> = b.skipped.iter().map(|(s, _)| *s).collect();
        assert!(skipped.contains(&Section::Pos));
        assert!(!skipped.contains(&Section::Summary));
        let names: Vec<&str> = b.files.iter().map(|(n, _)| n.as_str()).collect();
        assert!(names.contains(&"tree.nwk") && names.contains(&"distance.tsv"));
    }

    #[test]
    fn marks_follow_p_values() {
        let b = build_report(&corpus(), &spec()).unwrap();
        let (_, cats) = b.files.iter().find(|(n, _)| n == "categories.tsv").unwrap();
        let text = String::from_utf8(cats.clone()).unwrap();
        let mut lines = text.lines();
        let header: Vec<&str> = lines.next().unwrap().split('\t').collect();
        let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
        let mut marked = 0;
        for line in lines {
            let f: Vec<&str> = line.split('\t').collect();
            if f[col("mark")] == "*" {
                marked += 1;
                let x: u64 = f[col("matched")].parse().unwrap();
                let n: u64 = f[col("total")].parse().unwrap();
                let bx: u64 = f[col("baseline_matched")].parse().unwrap();
                let bn: u64 = f[col("baseline_total")].parse().unwrap();
                assert!(two_proportion_test(x, n, bx, bn, 0.01).unwrap().p_value < 0.01);
            }
        }
        assert!(marked > 0);
    }

    #[test]
    fn deterministic() {
        let a = build_report(&corpus(), &spec()).unwrap().files;
        let b = build_report(&corpus(), &spec()).unwrap().files;
        assert_eq!(a, b);
    }

    #[test]
    fn writes_bundle() {
        let dir = tempfile::tempdir().unwrap();
        let out = run_report(&corpus(), &spec(), dir.path()).unwrap();
        for f in &out.files {
            assert!(dir.path().join(f).is_file(), "{f}");
        }
        let m: Value = serde_json::from_slice(&std::fs::read(dir.path().join("manifest.json")).unwrap()).unwrap();
        assert_eq!(m["files"].as_object().unwrap().len(), out.files.len() - 1);
    }
}
