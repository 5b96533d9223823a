//! Command-line front end of the `stylometer` binary.
//!
//! Every subcommand prints its table to stdout, or writes it to `--out`
//! through a temporary file so a failed run leaves nothing behind.
//! Diagnostics go to stderr. Exit codes: 0 success, 2 usage or validation
//! error, 3 report section skipped under `--strict`.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::categories::{bundled_wordlists, load_wordlists, Denominator, Wordlist};
use crate::corpus::{load_manifest_with, parse_selector, Abbreviations, Corpus, LoadOptions, Partition};
use crate::distance::{
    distance_matrix, export_newick, layout_tree, neighbor_joining, parse_newick, DistanceMatrix, RatioPolicy,
    UnrootedTree,
};
use crate::error::{Error, Result};
use crate::lexstats::{per_document, stat_report, stat_table, Aggregation, FreqUnit, StatOptions};
use crate::report::{
    category_table, pos_table, run_report, stats_test_table, topk_table, write_atomic, ReportSpec, Section,
};
use crate::specificity::{characteristic_vocabulary, typical_sentences, SpecificityOptions, TermUnit};
use crate::stattests::{two_proportion_test, welch_t_test, TestResult};
use crate::table::{Cell, Format, Table};
use crate::tagset::TagMap;

/// Directory holding the default wordlist files for `categories` and
/// `report`.
pub const WORDLISTS_ENV: &str = "STYLOMETER_WORDLISTS";

#[derive(Debug, Parser)]
#[command(name = "stylometer", version, about = "Corpus stylometry toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Tsv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Tsv => Format::Tsv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TermUnitArg {
    Surface,
    Lemma,
}

impl From<TermUnitArg> for TermUnit {
    fn from(u: TermUnitArg) -> Self {
        match u {
            TermUnitArg::Surface => TermUnit::Surface,
            TermUnitArg::Lemma => TermUnit::Lemma,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FreqUnitArg {
    Surface,
    Lemma,
    Pos,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AggregationArg {
    Pooled,
    Mean,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DenominatorArg {
    All,
    Words,
}

#[derive(Debug, Args)]
struct CorpusArgs {
    /// Corpus manifest (TSV with a header line, or a JSON array).
    #[arg(long)]
    manifest: PathBuf,
    /// Abbreviation list, one per line, replacing the defaults.
    #[arg(long)]
    abbreviations: Option<PathBuf>,
    /// Extra tag mapping lines `external<TAB>toolkit`.
    #[arg(long)]
    tagmap: Option<PathBuf>,
}

impl CorpusArgs {
    fn load(&self) -> Result<Corpus> {
        let mut opts = LoadOptions::default();
        if let Some(p) = &self.abbreviations {
            opts.abbreviations = Abbreviations::from_file(p)?;
        }
        if let Some(p) = &self.tagmap {
            opts.tags = TagMap::from_file(p)?;
        }
        load_manifest_with(&self.manifest, &opts)
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "tsv")]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct GroupArgs {
    /// Comma-separated metadata keys (id, group, subgroup, origin, year).
    #[arg(long, default_value = "group", value_delimiter = ',')]
    group_by: Vec<String>,
}

impl GroupArgs {
    fn keys(&self) -> Vec<&str> {
        self.group_by.iter().map(String::as_str).collect()
    }
}

#[derive(Debug, Args)]
struct BaselineArgs {
    /// Group label the other groups are tested against.
    #[arg(long)]
    baseline: Option<String>,
    #[arg(long, default_value_t = crate::stattests::DEFAULT_ALPHA)]
    alpha: f64,
}

#[derive(Debug, Args)]
struct PartitionArgs {
    /// Target part as `key=value[,key=value]`.
    #[arg(long)]
    p0: String,
    /// Reference part; the rest of the corpus when omitted.
    #[arg(long)]
    p1: Option<String>,
}

impl PartitionArgs {
    fn partition(&self, corpus: &Corpus) -> Result<Partition> {
        let p0 = parse_selector(&self.p0)?;
        match &self.p1 {
            None => Partition::from_selector(corpus, &p0),
            Some(p1) => {
                let p1 = parse_selector(p1)?;
                let ids = |docs: Vec<&crate::corpus::Document>| docs.into_iter().map(|d| d.id.clone()).collect::<Vec<_>>();
                Partition::new(corpus, ids(corpus.select(&p0)?), ids(corpus.select(&p1)?))
            }
        }
    }
}

#[derive(Debug, Args)]
struct SpecificityArgs {
    #[command(flatten)]
    partition: PartitionArgs,
    #[arg(long, default_value_t = crate::specificity::DEFAULT_THRESHOLD)]
    threshold: f64,
    /// Terms per direction.
    #[arg(long, default_value_t = 10)]
    k: usize,
    /// Lemma when the corpus is annotated, surface otherwise.
    #[arg(long, value_enum)]
    unit: Option<TermUnitArg>,
    /// Keep number and punctuation terms in the lists.
    #[arg(long)]
    include_non_words: bool,
}

impl SpecificityArgs {
    fn validate(&self) -> Result<()> {
        check_threshold(self.threshold)?;
        check_positive("k", self.k)
    }

    fn options(&self, corpus: &Corpus) -> SpecificityOptions {
        SpecificityOptions {
            unit: self.unit.map_or(TermUnit::default_for(corpus), Into::into),
            threshold: self.threshold,
            top_k: Some(self.k),
            include_non_words: self.include_non_words,
        }
    }
}

#[derive(Debug, Args)]
struct RatioArgs {
    #[arg(long, default_value_t = crate::distance::DEFAULT_MAX_RATIO)]
    max_ratio: f64,
    /// Warn instead of failing when a pair exceeds the length ratio.
    #[arg(long)]
    permissive: bool,
}

impl RatioArgs {
    fn policy(&self) -> Result<RatioPolicy> {
        if !(self.max_ratio >= 1.0) {
            return Err(Error::validation(format!("max ratio must be at least 1, got {}", self.max_ratio)));
        }
        Ok(RatioPolicy {
            max_ratio: self.max_ratio,
            enforce: !self.permissive,
        })
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Documents, tokens and word types per group.
    Summary {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Most frequent keys per group, optionally tested against a baseline.
    Topk {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 10)]
        k: usize,
        #[arg(long, value_enum, default_value = "lemma")]
        unit: FreqUnitArg,
        #[command(flatten)]
        baseline: BaselineArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Lexical statistics per group (or per document).
    Stats {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = crate::lexstats::DEFAULT_WINDOW)]
        window: usize,
        /// Also compute the sliding-window MATTR.
        #[arg(long)]
        sliding: bool,
        #[arg(long, value_enum, default_value = "pooled")]
        aggregation: AggregationArg,
        /// One row per document instead of per group.
        #[arg(long)]
        per_document: bool,
        /// With a baseline, emit the long table with Welch tests.
        #[command(flatten)]
        baseline: BaselineArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Part-of-speech distribution per group.
    Pos {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Wordlist category frequencies per group.
    Categories {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        group: GroupArgs,
        /// Wordlist file or directory; falls back to $STYLOMETER_WORDLISTS,
        /// then to the bundled lists.
        #[arg(long)]
        wordlists: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "all")]
        denominator: DenominatorArg,
        #[command(flatten)]
        baseline: BaselineArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Over- and under-used terms of a target part.
    Specificity {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        spec: SpecificityArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Target-part sentences richest in over-used terms.
    Typical {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        spec: SpecificityArgs,
        /// Sentences to print.
        #[arg(long, default_value_t = 5)]
        sentences: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Stand-alone significance tests.
    Test {
        #[command(subcommand)]
        test: TestCommand,
    },
    /// Pairwise intertextual distance matrix.
    Distance {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value = "surface")]
        unit: TermUnitArg,
        #[command(flatten)]
        ratio: RatioArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Neighbor-joining tree of a distance matrix, or redraw of a Newick tree.
    Tree {
        /// Distance matrix (TSV, or JSON by extension).
        #[arg(long, conflicts_with = "from_newick", required_unless_present = "from_newick")]
        matrix: Option<PathBuf>,
        /// Existing Newick tree to draw.
        #[arg(long)]
        from_newick: Option<PathBuf>,
        /// Newick output; stdout when neither this nor --out is given.
        #[arg(long)]
        newick: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Same as --newick.
        #[arg(long, conflicts_with = "newick")]
        out: Option<PathBuf>,
    },
    /// Every table into one directory with a manifest.
    Report {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        group: GroupArgs,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        baseline: BaselineArgs,
        /// Comma-separated sections; all when omitted.
        #[arg(long, value_delimiter = ',')]
        sections: Vec<String>,
        #[arg(long, default_value_t = crate::lexstats::DEFAULT_WINDOW)]
        window: usize,
        #[arg(long, default_value_t = 10)]
        k: usize,
        #[arg(long, default_value_t = crate::specificity::DEFAULT_THRESHOLD)]
        threshold: f64,
        /// Specificity unit; lemma when the corpus is annotated.
        #[arg(long, value_enum)]
        unit: Option<TermUnitArg>,
        #[arg(long, value_enum, default_value = "surface")]
        distance_unit: TermUnitArg,
        /// Grouping of the distance section; --group-by when omitted.
        #[arg(long, value_delimiter = ',')]
        distance_group_by: Vec<String>,
        #[command(flatten)]
        ratio: RatioArgs,
        #[arg(long)]
        wordlists: Option<PathBuf>,
        /// Exit with status 3 when a section is skipped.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Debug, Subcommand)]
enum TestCommand {
    /// Pooled two-proportion z-test of x1/n1 against x2/n2.
    Proportion {
        #[arg(long)]
        x1: u64,
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        x2: u64,
        #[arg(long)]
        n2: u64,
        #[arg(long, default_value_t = crate::stattests::DEFAULT_ALPHA)]
        alpha: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Welch's t-test of two samples given as comma-separated numbers.
    Welch {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        sample1: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        sample2: Vec<f64>,
        #[arg(long, default_value_t = crate::stattests::DEFAULT_ALPHA)]
        alpha: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::validation(format!("alpha must lie in (0, 1), got {alpha}")))
    }
}

fn check_threshold(t: f64) -> Result<()> {
    if t >= 0.0 {
        Ok(())
    } else {
        Err(Error::validation(format!("threshold must be non-negative, got {t}")))
    }
}

fn check_positive(name: &str, v: usize) -> Result<()> {
    if v > 0 {
        Ok(())
    } else {
        Err(Error::validation(format!("{name} must be positive")))
    }
}

fn emit(output: &OutputArgs, text: &str) -> Result<()> {
    match &output.out {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn emit_table(output: &OutputArgs, table: &Table) -> Result<()> {
    emit(output, &table.render(output.format.into()))
}

/// Wordlists from a file, or from every `.json`/`.ini`/`.txt` file of a
/// directory in name order.
fn read_wordlists(path: &Path) -> Result<Vec<Wordlist>> {
    if !path.is_dir() {
        return load_wordlists(path);
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(path)
        .map_err(|source| Error::Load {
            path: path.to_path_buf(),
            source,
        })?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.is_file()
                && p.extension()
                    .and_then(|e| e.to_str())
                    .is_some_and(|e| matches!(e, "json" | "ini" | "txt"))
        })
        .collect();
    files.sort();
    let mut out: Vec<Wordlist> = Vec::new();
    for f in files {
        for w in load_wordlists(&f)? {
            if out.iter().any(|o| o.name == w.name) {
                return Err(Error::validation(format!("wordlist '{}' defined twice under {}", w.name, path.display())));
            }
            out.push(w);
        }
    }
    if out.is_empty() {
        return Err(Error::validation(format!("no wordlists found in {}", path.display())));
    }
    Ok(out)
}

fn resolve_wordlists(explicit: Option<&Path>) -> Result<Vec<Wordlist>> {
    if let Some(p) = explicit {
        return read_wordlists(p);
    }
    match std::env::var_os(WORDLISTS_ENV) {
        Some(dir) if !dir.is_empty() => read_wordlists(Path::new(&dir)),
        _ => Ok(bundled_wordlists()),
    }
}

fn test_table(r: &TestResult) -> Table {
    let mut t = Table::new(["test", "statistic", "p_value", "alpha", "significant", "df"]);
    let name = match r.test {
        crate::stattests::TestKind::TwoProportion => "two_proportion",
        crate::stattests::TestKind::WelchT => "welch_t",
    };
    t.push(vec![
        Cell::text(name),
        Cell::real(r.statistic),
        Cell::real(r.p_value),
        Cell::real(r.alpha),
        Cell::Bool(r.significant),
        Cell::opt_real(r.df),
    ]);
    t
}

fn run_tree(
    matrix: Option<&Path>,
    from_newick: Option<&Path>,
    newick: Option<&Path>,
    svg: Option<&Path>,
    dot: Option<&Path>,
) -> Result<()> {
    let tree: UnrootedTree = match (matrix, from_newick) {
        (Some(m), _) => neighbor_joining(&DistanceMatrix::read(m)?)?,
        (None, Some(n)) => {
            let text = std::fs::read_to_string(n).map_err(|source| Error::Load {
                path: n.to_path_buf(),
                source,
            })?;
            parse_newick(&text)?
        }
        (None, None) => return Err(Error::validation("tree needs --matrix or --from-newick")),
    };
    let mut nwk = export_newick(&tree);
    nwk.push('\n');
    let drawing = layout_tree(&tree);
    // render everything first so a failure writes nothing
    let mut outputs: Vec<(&Path, String)> = Vec::new();
    if let Some(p) = newick {
        outputs.push((p, nwk.clone()));
    }
    if let Some(p) = svg {
        outputs.push((p, drawing.to_svg()));
    }
    if let Some(p) = dot {
        outputs.push((p, drawing.to_dot()));
    }
    let mut written = Vec::new();
    for (p, text) in &outputs {
        if let Err(e) = write_atomic(p, text.as_bytes()) {
            for w in written {
                let _ = std::fs::remove_file(w);
            }
            return Err(e);
        }
        written.push(*p);
    }
    if newick.is_none() {
        print!("{nwk}");
    }
    Ok(())
}

/// Runs one command; `Ok(true)` when a report section was skipped in strict
/// mode.
fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Summary { corpus, group, output } => {
            let c = corpus.load()?;
            let rows = crate::corpus::corpus_summary(&c, &group.keys())?;
            emit_table(&output, &crate::corpus::summary_table(&rows))?;
        }
        Command::Topk {
            corpus,
            group,
            k,
            unit,
            baseline,
            output,
        } => {
            check_positive("k", k)?;
            check_alpha(baseline.alpha)?;
            let c = corpus.load()?;
            let groups = c.group_by(&group.keys())?;
            let unit = match unit {
                FreqUnitArg::Surface => FreqUnit::Surface,
                FreqUnitArg::Lemma => FreqUnit::Lemma,
                FreqUnitArg::Pos => FreqUnit::Pos,
            };
            check_baseline(&groups, baseline.baseline.as_deref())?;
            emit_table(&output, &topk_table(&groups, unit, k, baseline.baseline.as_deref(), baseline.alpha)?)?;
        }
        Command::Stats {
            corpus,
            group,
            window,
            sliding,
            aggregation,
            per_document: per_doc,
            baseline,
            output,
        } => {
            check_positive("window", window)?;
            check_alpha(baseline.alpha)?;
            let c = corpus.load()?;
            let groups = c.group_by(&group.keys())?;
            let opts = StatOptions {
                window,
                sliding,
                aggregation: match aggregation {
                    AggregationArg::Pooled => Aggregation::Pooled,
                    AggregationArg::Mean => Aggregation::DocumentMean,
                },
            };
            let table = if baseline.baseline.is_some() {
                check_baseline(&groups, baseline.baseline.as_deref())?;
                stats_test_table(&groups, &opts, baseline.baseline.as_deref(), baseline.alpha)?
            } else if per_doc {
                let docs: Vec<_> = c.documents().iter().collect();
                stat_table(&per_document(&docs, &opts)?)
            } else {
                let reports = groups
                    .iter()
                    .map(|g| stat_report(&g.label, &g.docs, &opts))
                    .collect::<Result<Vec<_>>>()?;
                stat_table(&reports)
            };
            emit_table(&output, &table)?;
        }
        Command::Pos { corpus, group, output } => {
            let c = corpus.load()?;
            emit_table(&output, &pos_table(&c.group_by(&group.keys())?)?)?;
        }
        Command::Categories {
            corpus,
            group,
            wordlists,
            denominator,
            baseline,
            output,
        } => {
            check_alpha(baseline.alpha)?;
            let wl = resolve_wordlists(wordlists.as_deref())?;
            let c = corpus.load()?;
            let groups = c.group_by(&group.keys())?;
            check_baseline(&groups, baseline.baseline.as_deref())?;
            let denom = match denominator {
                DenominatorArg::All => Denominator::AllTokens,
                DenominatorArg::Words => Denominator::Words,
            };
            emit_table(
                &output,
                &category_table(&groups, &wl, denom, baseline.baseline.as_deref(), baseline.alpha)?,
            )?;
        }
        Command::Specificity { corpus, spec, output } => {
            spec.validate()?;
            let c = corpus.load()?;
            let part = spec.partition.partition(&c)?;
            let rep = characteristic_vocabulary(&c, &part, &spec.options(&c))?;
            emit_table(&output, &rep.to_table())?;
        }
        Command::Typical {
            corpus,
            spec,
            sentences,
            output,
        } => {
            spec.validate()?;
            check_positive("sentences", sentences)?;
            let c = corpus.load()?;
            let part = spec.partition.partition(&c)?;
            let rep = characteristic_vocabulary(&c, &part, &spec.options(&c))?;
            let ranked = typical_sentences(&c, &part, &rep, sentences)?;
            let mut t = Table::new(["rank", "doc_id", "sentence", "overused", "length", "density", "text"]);
            for (i, s) in ranked.iter().enumerate() {
                t.push(vec![
                    Cell::Int(i as i64 + 1),
                    Cell::text(&s.doc_id),
                    Cell::Int(s.sentence as i64 + 1),
                    Cell::Int(s.overused_count as i64),
                    Cell::Int(s.length as i64),
                    Cell::real(s.density),
                    Cell::text(s.render()),
                ]);
            }
            emit_table(&output, &t)?;
        }
        Command::Test { test } => match test {
            TestCommand::Proportion {
                x1,
                n1,
                x2,
                n2,
                alpha,
                output,
            } => emit_table(&output, &test_table(&two_proportion_test(x1, n1, x2, n2, alpha)?))?,
            TestCommand::Welch {
                sample1,
                sample2,
                alpha,
                output,
            } => emit_table(&output, &test_table(&welch_t_test(&sample1, &sample2, alpha)?))?,
        },
        Command::Distance {
            corpus,
            group,
            unit,
            ratio,
            output,
        } => {
            let policy = ratio.policy()?;
            let c = corpus.load()?;
            let m = distance_matrix(&c, &group.keys(), unit.into(), policy)?;
            let text = match output.format {
                FormatArg::Tsv => m.to_tsv(),
                FormatArg::Json => m.to_json(),
            };
            emit(&output, &text)?;
        }
        Command::Tree {
            matrix,
            from_newick,
            newick,
            svg,
            dot,
            out,
        } => run_tree(
            matrix.as_deref(),
            from_newick.as_deref(),
            newick.as_deref().or(out.as_deref()),
            svg.as_deref(),
            dot.as_deref(),
        )?,
        Command::Report {
            corpus,
            group,
            out,
            baseline,
            sections,
            window,
            k,
            threshold,
            unit,
            distance_unit,
            distance_group_by,
            ratio,
            wordlists,
            strict,
        } => {
            let sections: BTreeSet<Section> = if sections.is_empty() {
                Section::ALL.into_iter().collect()
            } else {
                sections.iter().map(|s| s.parse()).collect::<Result<_>>()?
            };
            let spec = ReportSpec {
                grouping: group.group_by.clone(),
                baseline: baseline.baseline.clone(),
                alpha: baseline.alpha,
                window,
                top_k: k,
                threshold,
                specificity_unit: unit.map(Into::into),
                distance_unit: distance_unit.into(),
                distance_grouping: (!distance_group_by.is_empty()).then_some(distance_group_by),
                ratio: ratio.policy()?,
                sections,
                wordlists: resolve_wordlists(wordlists.as_deref())?,
            };
            check_alpha(spec.alpha)?;
            check_threshold(spec.threshold)?;
            check_positive("k", spec.top_k)?;
            check_positive("window", spec.window)?;
            let c = corpus.load()?;
            let outcome = run_report(&c, &spec, &out)?;
            for (s, why) in &outcome.skipped {
                eprintln!("notice: section '{s}' skipped: {why}");
            }
            eprintln!("wrote {} files to {}", outcome.files.len(), out.display());
            return Ok(strict && !outcome.skipped.is_empty());
        }
    }
    Ok(false)
}

fn check_baseline(groups: &[crate::corpus::Group<'_>], baseline: Option<&str>) -> Result<()> {
    match baseline {
        Some(b) if !groups.iter().any(|g| g.label == b) => {
            Err(Error::validation(format!("baseline group '{b}' is not in the corpus")))
        }
        _ => Ok(()),
    }
}

/// Parses `args` (program name first) and runs the command; returns the
/// process exit code.
pub fn main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.command) {
        Ok(false) => 0,
        Ok(true) => 3,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
