use std::cmp::Ordering;
use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hypergraph::{Hypergraph, Vertex};

/// A copy of `H_{W,c}` inside `H`: every set in `W` joined to every apex
/// vertex in `C` is an edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionWitness {
    pub c: usize,
    #[serde(rename = "C")]
    pub apex: Vec<Vertex>,
    #[serde(rename = "W")]
    pub links: Vec<Vec<Vertex>>,
    pub value: usize,
}

impl ObstructionWitness {
    /// Re-checks the containment and the shape conditions against `h`.
    pub fn verify(&self, h: &Hypergraph) -> bool {
        let Ok(k) = h.require_uniform() else { return false };
        let apex: BTreeSet<Vertex> = self.apex.iter().copied().collect();
        self.c == apex.len()
            && self.c >= 1
            && !self.links.is_empty()
            && self.value == self.links.len() + self.c
            && k - 1 <= h.num_vertices() as usize - self.c
            && self.links.iter().all(|w| {
                w.len() == k - 1
                    && w.iter().all(|v| !apex.contains(v))
                    && apex.iter().all(|&x| {
                        let mut e = w.clone();
                        e.push(x);
                        e.sort_unstable();
                        h.index_of(&e).is_some()
                    })
            })
    }

    // Larger value wins; among equal values the lexicographically smaller apex set.
    fn better_than(&self, other: &Self) -> bool {
        match self.value.cmp(&other.value) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => self.apex < other.apex,
        }
    }
}

fn pick(a: Option<ObstructionWitness>, b: Option<ObstructionWitness>) -> Option<ObstructionWitness> {
    match (a, b) {
        (Some(a), Some(b)) => Some(if b.better_than(&a) { b } else { a }),
        (a, b) => a.or(b),
    }
}

/// Maximizes `|W(C)| + c` over apex sets `C` with `1 <= |C| <= max_c`, where
/// `W(C)` holds the (k-1)-sets outside `C` that form an edge with every apex.
///
/// `W` only shrinks as `C` grows, so apex sets are extended depth-first and a
/// branch stops once `W` is empty. Branches split by smallest apex vertex run
/// in parallel; the reduction is order-independent. Returns `None` when no
/// apex set has nonempty `W`.
pub fn obstruction_search(h: &Hypergraph, max_c: usize) -> Result<Option<ObstructionWitness>> {
    let k = h.require_uniform()?;
    let n = h.num_vertices() as usize;
    let links: Vec<BTreeSet<Vec<Vertex>>> = (0..=n as Vertex)
        .map(|x| {
            if x == 0 {
                return BTreeSet::new();
            }
            h.incident_edges(x)
                .into_iter()
                .map(|e| h.edges()[e].iter().copied().filter(|&v| v != x).collect())
                .collect()
        })
        .collect();
    let max_c = max_c.min(n + 1 - k);
    if max_c == 0 {
        return Ok(None);
    }
    let best = (1..=n as Vertex)
        .into_par_iter()
        .map(|first| {
            let w: Vec<Vec<Vertex>> = links[first as usize].iter().cloned().collect();
            let mut best = None;
            extend(&links, &mut vec![first], w, max_c, &mut best);
            best
        })
        .reduce(|| None, pick);
    Ok(best)
}

fn extend(
    links: &[BTreeSet<Vec<Vertex>>],
    apex: &mut Vec<Vertex>,
    w: Vec<Vec<Vertex>>,
    max_c: usize,
    best: &mut Option<ObstructionWitness>,
) {
    if w.is_empty() {
        return;
    }
    let candidate = ObstructionWitness { c: apex.len(), apex: apex.clone(), links: w.clone(), value: w.len() + apex.len() };
    *best = pick(best.take(), Some(candidate));
    if apex.len() == max_c {
        return;
    }
    let last = *apex.last().expect("apex is nonempty");
    for x in last + 1..links.len() as Vertex {
        let next: Vec<Vec<Vertex>> =
            w.iter().filter(|s| !s.contains(&x) && links[x as usize].contains(*s)).cloned().collect();
        apex.push(x);
        extend(links, apex, next, max_c, best);
        apex.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::complete_uniform;

    fn h(n: i64, edges: &[&[i64]]) -> Hypergraph {
        let edges: Vec<Vec<i64>> = edges.iter().map(|e| e.to_vec()).collect();
        Hypergraph::validate(n, &edges).unwrap()
    }

    #[test]
    fn star_center() {
        let g = h(9, &[&[1, 2, 3], &[1, 4, 5], &[1, 6, 7], &[1, 8, 9]]);
        let w = obstruction_search(&g, 1).unwrap().unwrap();
        assert_eq!((w.c, w.apex.clone(), w.value), (1, vec![1], 5));
        assert!(w.verify(&g));
    }

    #[test]
    fn complete_on_five() {
        let g = complete_uniform(5, 3).unwrap();
        let w = obstruction_search(&g, 3).unwrap().unwrap();
        assert_eq!(w.value, 7);
        assert_eq!(w.apex, vec![1]);
        assert!(w.verify(&g));
    }

    #[test]
    fn single_edge() {
        let g = h(3, &[&[1, 2, 3]]);
        let w = obstruction_search(&g, 2).unwrap().unwrap();
        assert_eq!(w.value, 2);
        assert!(w.verify(&g));
        assert_eq!(obstruction_search(&Hypergraph::empty(3), 2), Err(crate::Error::NotUniform));
    }

    #[test]
    fn graphs_use_common_neighbours() {
        // K_{2,3}: apex {1,2} sees {3,4,5}
        let g = h(5, &[&[1, 3], &[1, 4], &[1, 5], &[2, 3], &[2, 4], &[2, 5]]);
        let w = obstruction_search(&g, 4).unwrap().unwrap();
        assert_eq!(w.value, 5);
        assert_eq!(w.apex, vec![1, 2]);
    }
}
