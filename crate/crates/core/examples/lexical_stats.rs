//! Corpus summary and lexical statistics per group of the bundled fixture
//! corpus, plus the ten most frequent lemmas of each group.

use std::path::Path;

use stylometer::corpus::{corpus_summary, load_manifest, summary_table};
use stylometer::lexstats::{stat_report, stat_table, top_k_frequencies, FreqUnit, StatOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/corpus/manifest.tsv");
    let corpus = load_manifest(&manifest)?;

    print!("{}", summary_table(&corpus_summary(&corpus, &["group"])?).to_tsv());
    println!();

    // the fixture documents are short, so use a small TTR window
    let opts = StatOptions {
        window: 100,
        sliding: true,
        ..StatOptions::default()
    };
    let groups = corpus.group_by(&["group"])?;
    let reports = groups
        .iter()
        .map(|g| stat_report(&g.label, &g.docs, &opts))
        .collect::<Result<Vec<_>, _>>()?;
    print!("{}", stat_table(&reports).to_tsv());

    for g in &groups {
        let top = top_k_frequencies(&g.docs, FreqUnit::Lemma, 10)?;
        let keys: Vec<String> = top.rows.iter().map(|r| format!("{} ({})", r.key, r.count)).collect();
        println!("\n{}: {}", g.label, keys.join(", "));
    }
    Ok(())
}
