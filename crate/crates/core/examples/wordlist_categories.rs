//! Relative frequency of wordlist categories per group, using both the
//! bundled lists and a custom list with `stem*` patterns.

use std::path::Path;

use stylometer::categories::{bundled_wordlists, category_frequency, Denominator, Wordlist};
use stylometer::corpus::load_manifest;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/corpus/manifest.tsv");
    let corpus = load_manifest(&manifest)?;
    let groups = corpus.group_by(&["group"])?;

    let mut lists = bundled_wordlists();
    lists.push(Wordlist::new("Economy", ["econom*", "job*", "tax*", "budget", "growth"])?);

    let report = category_frequency(&groups, &lists, Denominator::AllTokens);
    print!("{}", report.to_table().to_tsv());

    if let (Some(a), Some(b)) = (report.get("GPT", "Economy"), report.get("Alpha", "Economy")) {
        println!("\nEconomy: GPT {:.4} vs Alpha {:.4}", a.rel_freq, b.rel_freq);
    }
    Ok(())
}
