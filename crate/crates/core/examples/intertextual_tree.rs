//! Labbé distances between subgroups of the fixture corpus, the
//! neighbor-joining tree over them, and its Newick, SVG and DOT renderings.
//!
//! Pass a directory to write `tree.svg` and `tree.dot` there.

use std::path::Path;

use stylometer::corpus::load_manifest;
use stylometer::distance::{distance_matrix, export_newick, layout_tree, neighbor_joining, RatioPolicy};
use stylometer::specificity::TermUnit;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/corpus/manifest.tsv");
    let corpus = load_manifest(&manifest)?;

    let matrix = distance_matrix(&corpus, &["group", "subgroup"], TermUnit::Lemma, RatioPolicy::default())?;
    print!("{}", matrix.to_tsv());

    let tree = neighbor_joining(&matrix)?;
    println!("\n{}", export_newick(&tree));

    let drawing = layout_tree(&tree);
    if let Some(dir) = std::env::args().nth(1) {
        let dir = Path::new(&dir);
        std::fs::write(dir.join("tree.svg"), drawing.to_svg())?;
        std::fs::write(dir.join("tree.dot"), drawing.to_dot())?;
        println!("wrote tree.svg and tree.dot to {}", dir.display());
    }
    Ok(())
}
