//! Brute-force ground truth over all labelled graphs on a few vertices.

mod census;
mod graph;
mod recognize;

pub use census::{
    automorphisms, census, copy_masks, count_copies, enumerate, in_class, passes_connectivity,
    passes_family, Census, Connectivity, Family, GraphClass, DEFAULT_CAP,
};
pub use graph::{pair_index, LabeledGraph, MAX_VERTICES};
pub use recognize::{blocks, girth, has_k4_minor, is_series_parallel, is_two_connected};
