//! Seeded generators for test fixtures and benchmarks.
//!
//! All generators draw from `ChaCha8Rng`, so a seed fixes the output across
//! platforms.

use std::collections::BTreeSet;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, Vertex};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A k-uniform tree with `edges` edges: each new edge hangs `k - 1` fresh
/// vertices off a random existing vertex. Labels are shuffled at the end.
pub fn random_tree(k: usize, edges: usize, seed: u64) -> Result<Hypergraph> {
    if k < 2 {
        return Err(Error::NotUniform);
    }
    if edges == 0 {
        return Err(Error::NoEdges);
    }
    let mut rng = rng(seed);
    let n = 1 + edges * (k - 1);
    let mut list: Vec<Edge> = vec![(0..k as Vertex).collect()];
    let mut next = k as Vertex;
    for _ in 1..edges {
        let anchor = rng.gen_range(0..next);
        let mut e = vec![anchor];
        e.extend(next..next + k as Vertex - 1);
        next += k as Vertex - 1;
        list.push(e);
    }
    let mut labels: Vec<Vertex> = (1..=n as Vertex).collect();
    labels.shuffle(&mut rng);
    let list = list.into_iter().map(|e| e.into_iter().map(|v| labels[v as usize]).collect()).collect();
    Ok(Hypergraph::from_trusted(n as u32, list))
}

/// Up to `edges` distinct k-subsets of `[n]`.
pub fn random_uniform(n: u32, k: usize, edges: usize, seed: u64) -> Result<Hypergraph> {
    if k < 1 || k > n as usize {
        return Err(Error::NotUniform);
    }
    let mut rng = rng(seed);
    let mut chosen: BTreeSet<Edge> = BTreeSet::new();
    // Enough draws to saturate small instances without looping forever.
    for _ in 0..edges.saturating_mul(20).max(64) {
        if chosen.len() == edges {
            break;
        }
        let mut e: Edge = index::sample(&mut rng, n as usize, k).into_iter().map(|i| i as Vertex + 1).collect();
        e.sort_unstable();
        chosen.insert(e);
    }
    Ok(Hypergraph::from_trusted(n, chosen.into_iter().collect()))
}

/// A clutter on `[n]` with up to `edges` edges of sizes `1..=max_size`.
pub fn random_clutter(n: u32, edges: usize, max_size: usize, seed: u64) -> Hypergraph {
    let mut rng = rng(seed);
    let max_size = max_size.clamp(1, n as usize);
    let mut chosen: Vec<Edge> = Vec::new();
    for _ in 0..edges.saturating_mul(20).max(64) {
        if chosen.len() == edges {
            break;
        }
        let size = rng.gen_range(1..=max_size);
        let mut e: Edge = index::sample(&mut rng, n as usize, size).into_iter().map(|i| i as Vertex + 1).collect();
        e.sort_unstable();
        let comparable = chosen.iter().any(|f| is_sub(f, &e) || is_sub(&e, f));
        if !comparable {
            chosen.push(e);
        }
    }
    Hypergraph::from_trusted(n, chosen)
}

fn is_sub(a: &[Vertex], b: &[Vertex]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_ok())
}

/// A random matching of `h`, possibly empty.
pub fn random_matching(h: &Hypergraph, seed: u64) -> BTreeSet<usize> {
    let mut rng = rng(seed);
    let mut order: Vec<usize> = (0..h.num_edges()).collect();
    order.shuffle(&mut rng);
    let target = rng.gen_range(0..=h.num_edges());
    let mut used: BTreeSet<Vertex> = BTreeSet::new();
    let mut m = BTreeSet::new();
    for e in order {
        if m.len() == target {
            break;
        }
        let edge = &h.edges()[e];
        if edge.iter().all(|v| !used.contains(v)) {
            used.extend(edge.iter().copied());
            m.insert(e);
        }
    }
    m
}

/// A k-uniform hypergraph on `[n]` whose vertex `n` has exactly `u` edges,
/// each joining `n` to a random (k-1)-subset of `[n-1]`.
pub fn random_pivot_star(n: u32, k: usize, u: usize, seed: u64) -> Result<Hypergraph> {
    if k < 2 || k > n as usize {
        return Err(Error::NotUniform);
    }
    let available = binomial((n - 1) as u64, (k - 1) as u64);
    if u == 0 || u as u128 > available {
        return Err(Error::TOutOfRange { t: u, max: available.min(usize::MAX as u128) as usize });
    }
    let mut rng = rng(seed);
    let mut links: BTreeSet<Edge> = BTreeSet::new();
    while links.len() < u {
        let mut w: Edge =
            index::sample(&mut rng, n as usize - 1, k - 1).into_iter().map(|i| i as Vertex + 1).collect();
        w.sort_unstable();
        links.insert(w);
    }
    let edges = links
        .into_iter()
        .map(|mut w| {
            w.push(n);
            w
        })
        .collect();
    Ok(Hypergraph::from_trusted(n, edges))
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree;

    #[test]
    fn trees_are_trees() {
        for seed in 0..20 {
            for k in 2..=4 {
                let h = random_tree(k, 1 + seed as usize % 9, seed).unwrap();
                assert_eq!(h.require_uniform().unwrap(), k);
                assert!(tree::check_tree(&h).is_tree, "seed {seed} k {k}: {h:?}");
                assert!(h.isolated_vertices().is_empty());
            }
        }
    }

    #[test]
    fn seeds_reproduce() {
        assert_eq!(random_tree(3, 12, 7).unwrap(), random_tree(3, 12, 7).unwrap());
        assert_eq!(random_uniform(8, 3, 10, 1).unwrap(), random_uniform(8, 3, 10, 1).unwrap());
    }

    #[test]
    fn clutters_validate() {
        for seed in 0..20 {
            let h = random_clutter(8, 10, 4, seed);
            let raw: Vec<Vec<i64>> = h.edges().iter().map(|e| e.iter().map(|&v| v as i64).collect()).collect();
            assert_eq!(Hypergraph::validate(8, &raw).unwrap(), h);
            let m = random_matching(&h, seed);
            assert!(h.is_matching(&m).unwrap());
        }
    }

    #[test]
    fn pivot_star_degree() {
        let h = random_pivot_star(7, 3, 5, 3).unwrap();
        assert_eq!(h.degree(7).unwrap(), 5);
        assert_eq!(h.num_edges(), 5);
        assert!(random_pivot_star(4, 3, 4, 0).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(40, 20), 137846528820);
    }
}
