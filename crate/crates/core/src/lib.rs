//! Corpus stylometry toolkit.
//!
//! `stylometer` loads a corpus of labeled documents (plain text or
//! vertical POS/lemma files), and computes the measurements used when
//! comparing the style of several authors or text sources:
//!
//! - corpus summaries (documents, tokens, word types per group)
//! - lexical statistics: mean word length, big-word ratio, segmented TTR,
//!   moving-average TTR, mean sentence length, hapax ratio, top-k
//!   frequencies and part-of-speech distributions
//! - characteristic vocabulary via binomial Z-scores and typical sentences
//! - wordlist categories with `stem*` wildcard patterns
//! - two-proportion z-tests and Welch t-tests
//! - Labbé intertextual distance, neighbor-joining trees, Newick export and
//!   an equal-angle unrooted layout rendered to SVG and DOT
//! - a report driver writing every table into one output directory
//!
//! See the crate's `examples/` directory for one runnable program per
//! capability, and the `stylometer` binary for the command-line surface.

#![forbid(unsafe_code)]

pub mod categories;
pub mod cli;
pub mod corpus;
pub mod distance;
pub mod error;
pub mod lexstats;
pub mod report;
pub mod specificity;
pub mod stattests;
pub mod table;
pub mod tagset;

pub use error::{Error, Result};
