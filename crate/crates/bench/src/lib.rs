//! Fixed inputs shared by the benchmarks.

use pmd_core::{family, random, Hypergraph};

/// Seeded k-uniform trees with `edges` edges.
pub fn tree_corpus(k: usize, edges: usize, count: usize) -> Vec<Hypergraph> {
    (0..count as u64)
        .map(|seed| random::random_tree(k, edges, seed).expect("k >= 2 and edges >= 1"))
        .collect()
}

pub fn complete_three_uniform(n: u32) -> Hypergraph {
    family::complete_uniform(n, 3).expect("n >= 3")
}
