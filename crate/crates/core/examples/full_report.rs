//! Write the complete report bundle for the fixture corpus, with the
//! generated speeches as baseline.
//!
//! Run with `cargo run --example full_report -- OUT_DIR`.

use std::path::{Path, PathBuf};

use stylometer::corpus::load_manifest;
use stylometer::report::{run_report, ReportSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out: PathBuf = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("stylometer-report"));
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/corpus/manifest.tsv");
    let corpus = load_manifest(&manifest)?;

    let spec = ReportSpec {
        baseline: Some("GPT".into()),
        window: 50,
        ..ReportSpec::default()
    };
    let outcome = run_report(&corpus, &spec, &out)?;
    for (section, why) in &outcome.skipped {
        eprintln!("skipped {section}: {why}");
    }
    println!("wrote {} files to {}", outcome.files.len(), out.display());
    for f in &outcome.files {
        println!("  {f}");
    }
    Ok(())
}
