//! Tokenize a short text, split it into sentences and classify each token.
//!
//! Run with `cargo run --example tokenize_and_segment [FILE]`.

use stylometer::corpus::{segment_sentences, tokenize, Abbreviations};

const SAMPLE: &str = "Mr. Speaker, the U.S. economy grew by 3.5 percent last year. \
We won't stop now... Our state-of-the-art plan starts today!";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => SAMPLE.to_string(),
    };
    let tokens = tokenize(&text);
    let sentences = segment_sentences(&tokens, &Abbreviations::default());
    println!("{} tokens, {} sentences", tokens.len(), sentences.len());
    for (i, s) in sentences.iter().enumerate() {
        let parts: Vec<String> = tokens[s.start..s.end]
            .iter()
            .map(|t| format!("{}/{:?}", t.surface, t.kind))
            .collect();
        println!("{:>3}: {}", i + 1, parts.join(" "));
    }
    Ok(())
}
