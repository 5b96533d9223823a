//! Over- and under-used terms of the generated speeches against the rest of
//! the fixture corpus, with the sentences that concentrate the most
//! over-used terms.

use std::path::Path;

use stylometer::corpus::{load_manifest, parse_selector, Partition};
use stylometer::specificity::{characteristic_vocabulary, typical_sentences, SpecificityOptions, TermUnit};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/corpus/manifest.tsv");
    let corpus = load_manifest(&manifest)?;
    let partition = Partition::from_selector(&corpus, &parse_selector("group=GPT")?)?;
    let opts = SpecificityOptions {
        unit: TermUnit::Lemma,
        ..SpecificityOptions::default()
    };
    let report = characteristic_vocabulary(&corpus, &partition, &opts)?;

    println!("n0 = {}, n1 = {}, threshold = {}", report.n0, report.n1, report.threshold);
    for (title, terms) in [("over-used", &report.overused), ("under-used", &report.underused)] {
        println!("\n{title}:");
        for t in terms.iter() {
            println!("  {:<12} z = {:>7.3}  ({} vs {})", t.term, t.z.unwrap_or(f64::NAN), t.tf0, t.tf1);
        }
    }

    println!("\ntypical sentences:");
    for s in typical_sentences(&corpus, &partition, &report, 3)? {
        println!("  {} #{} ({} terms): {}", s.doc_id, s.sentence, s.overused_count, s.render());
    }
    Ok(())
}
