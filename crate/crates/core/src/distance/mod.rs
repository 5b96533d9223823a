//! Intertextual distance, distance matrices and the trees drawn from them.

mod labbe;
mod layout;
mod matrix;
mod newick;
mod nj;

pub use labbe::{labbe_distance, Profile, RatioPolicy, DEFAULT_MAX_RATIO};
pub use layout::{layout_tree, Drawing, PlacedNode};
pub use matrix::{distance_matrix, profile_of, DistanceMatrix};
pub use newick::{export_newick, format_length, parse_newick};
pub use nj::{neighbor_joining, neighbor_joining_raw, path_length_map, UnrootedTree};
