//! Recognition of k-uniform trees.
//!
//! A k-uniform hypergraph is a tree when
//!
//! * (T1) any two edges share at most one vertex, and
//! * (T2) any two vertices are joined by exactly one *connecting sequence*
//!   `e_1, ..., e_r`: the first vertex lies only in `e_1`, the second only in
//!   `e_r`, consecutive edges meet in exactly one vertex, and edges two or
//!   more steps apart are disjoint.
//!
//! For two vertices in a common edge `e`, the one-edge sequence `(e)` counts,
//! so (T2) additionally rules out a second route between them. This is what
//! makes the 2-uniform triangle a non-tree.
//!
//! [`check_tree`] decides this by exhaustive sequence enumeration and returns
//! a re-checkable witness on failure. [`is_tree_fast`] decides the same
//! property through the vertex–edge incidence graph.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{intersection_size, Hypergraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TreeViolation {
    /// Edges of different sizes, or edges of size below 2.
    NotUniform,
    /// (T1) fails: these two edges share at least two vertices.
    SharedPair { first: usize, second: usize },
    /// (T2) fails: `sequences` lists every connecting sequence found (none,
    /// or the first two).
    SequenceCount { from: Vertex, to: Vertex, sequences: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeCheckResult {
    pub is_k_uniform: bool,
    pub k: Option<usize>,
    pub is_tree: bool,
    /// Vertices in no edge. They are reported, and left out of (T2).
    pub isolated_vertices: Vec<Vertex>,
    pub violation: Option<TreeViolation>,
}

pub fn check_tree(h: &Hypergraph) -> TreeCheckResult {
    let isolated_vertices = h.isolated_vertices();
    let k = h.uniformity();
    let uniform = h.num_edges() == 0 || matches!(k, Some(k) if k >= 2);
    let fail = |violation| TreeCheckResult {
        is_k_uniform: uniform,
        k,
        is_tree: false,
        isolated_vertices: isolated_vertices.clone(),
        violation: Some(violation),
    };
    if !uniform {
        return fail(TreeViolation::NotUniform);
    }
    let edges = h.edges();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if intersection_size(&edges[i], &edges[j]) >= 2 {
                return fail(TreeViolation::SharedPair { first: i, second: j });
            }
        }
    }
    let active: Vec<Vertex> = {
        let isolated: BTreeSet<Vertex> = isolated_vertices.iter().copied().collect();
        h.vertices().filter(|v| !isolated.contains(v)).collect()
    };
    for (a, &from) in active.iter().enumerate() {
        for &to in &active[a + 1..] {
            let sequences = connecting_sequences(h, from, to, 2);
            if sequences.len() != 1 {
                return fail(TreeViolation::SequenceCount { from, to, sequences });
            }
        }
    }
    TreeCheckResult {
        is_k_uniform: true,
        k,
        is_tree: true,
        isolated_vertices,
        violation: None,
    }
}

/// Enumerates connecting sequences from `from` to `to` by depth-first search,
/// stopping after `limit` have been found.
pub fn connecting_sequences(h: &Hypergraph, from: Vertex, to: Vertex, limit: usize) -> Vec<Vec<usize>> {
    let mut found = Vec::new();
    let mut path = Vec::new();
    for start in h.incident_edges(from) {
        path.push(start);
        extend_sequence(h, from, to, &mut path, &mut found, limit);
        path.pop();
        if found.len() >= limit {
            break;
        }
    }
    found
}

fn extend_sequence(
    h: &Hypergraph,
    from: Vertex,
    to: Vertex,
    path: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
    limit: usize,
) {
    let edges = h.edges();
    let last = &edges[*path.last().unwrap()];
    if last.binary_search(&to).is_ok() {
        found.push(path.clone());
        return;
    }
    for (next, e) in edges.iter().enumerate() {
        if found.len() >= limit {
            return;
        }
        if e.binary_search(&from).is_ok() || intersection_size(last, e) != 1 {
            continue;
        }
        // (c): disjoint from everything before the last edge
        if path[..path.len() - 1].iter().any(|&p| intersection_size(&edges[p], e) > 0) {
            continue;
        }
        path.push(next);
        extend_sequence(h, from, to, path, found, limit);
        path.pop();
    }
}

/// Checks a single sequence against the connecting-sequence conditions.
pub fn is_connecting_sequence(h: &Hypergraph, from: Vertex, to: Vertex, seq: &[usize]) -> bool {
    let edges = h.edges();
    if seq.is_empty() || seq.iter().any(|&i| i >= edges.len()) {
        return false;
    }
    let r = seq.len();
    let contains = |i: usize, v: Vertex| edges[seq[i]].binary_search(&v).is_ok();
    if !contains(0, from) || !contains(r - 1, to) {
        return false;
    }
    if (1..r).any(|i| contains(i, from)) || (0..r - 1).any(|i| contains(i, to)) {
        return false;
    }
    for i in 0..r {
        for j in i + 1..r {
            let shared = intersection_size(&edges[seq[i]], &edges[seq[j]]);
            let ok = if j == i + 1 { shared == 1 } else { shared == 0 };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Re-derives a reported violation from the hypergraph alone.
pub fn recheck_violation(h: &Hypergraph, violation: &TreeViolation) -> bool {
    match violation {
        TreeViolation::NotUniform => !matches!(h.uniformity(), Some(k) if k >= 2),
        TreeViolation::SharedPair { first, second } => {
            let edges = h.edges();
            first != second
                && *first < edges.len()
                && *second < edges.len()
                && intersection_size(&edges[*first], &edges[*second]) >= 2
        }
        TreeViolation::SequenceCount { from, to, sequences } => match sequences.len() {
            // No sequence at all: the two vertices lie in different components.
            0 => {
                let comps = h.connected_components();
                let comp_of = |v: Vertex| comps.iter().position(|c| c.vertex_map.contains(&v));
                match (comp_of(*from), comp_of(*to)) {
                    (Some(a), Some(b)) => a != b,
                    _ => false,
                }
            }
            1 => false,
            _ => {
                let distinct: BTreeSet<&Vec<usize>> = sequences.iter().collect();
                distinct.len() == sequences.len()
                    && sequences.iter().all(|s| is_connecting_sequence(h, *from, *to, s))
            }
        },
    }
}

/// Tree test through the incidence graph: the bipartite vertex–edge graph on
/// the non-isolated vertices must be connected and acyclic.
pub fn is_tree_fast(h: &Hypergraph) -> bool {
    if h.num_edges() == 0 {
        return true;
    }
    if !matches!(h.uniformity(), Some(k) if k >= 2) {
        return false;
    }
    let active = h.num_vertices() as usize - h.isolated_vertices().len();
    let incidences: usize = h.edges().iter().map(Vec::len).sum();
    h.connected_components().len() == 1 && active + h.num_edges() == incidences + 1
}

/// The smallest vertex of degree one in a tree with at least one edge.
pub fn find_leaf(h: &Hypergraph) -> Result<Vertex> {
    if h.num_edges() == 0 {
        return Err(Error::NoEdges);
    }
    if !check_tree(h).is_tree {
        return Err(Error::NotATree);
    }
    smallest_leaf(h).ok_or(Error::NotATree)
}

pub(crate) fn smallest_leaf(h: &Hypergraph) -> Option<Vertex> {
    h.degrees().iter().position(|&d| d == 1).map(|i| i as Vertex + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: i64, edges: &[&[i64]]) -> Hypergraph {
        let edges: Vec<Vec<i64>> = edges.iter().map(|e| e.to_vec()).collect();
        Hypergraph::validate(n, &edges).unwrap()
    }

    #[test]
    fn star_is_a_tree() {
        let star = h(5, &[&[1, 2, 3], &[1, 4, 5]]);
        let res = check_tree(&star);
        assert!(res.is_tree);
        assert_eq!(res.k, Some(3));
        assert!(res.violation.is_none());
        assert!(is_tree_fast(&star));
    }

    #[test]
    fn triangle_is_not_a_tree() {
        let tri = h(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        let res = check_tree(&tri);
        assert!(!res.is_tree);
        let violation = res.violation.unwrap();
        match &violation {
            TreeViolation::SequenceCount { from: 1, to: 2, sequences } => {
                assert_eq!(sequences.len(), 2);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(recheck_violation(&tri, &violation));
        assert!(!is_tree_fast(&tri));
    }

    #[test]
    fn three_uniform_cycle_is_not_a_tree() {
        let cyc = h(6, &[&[1, 2, 3], &[3, 4, 5], &[5, 6, 1]]);
        let res = check_tree(&cyc);
        assert!(!res.is_tree);
        assert!(recheck_violation(&cyc, res.violation.as_ref().unwrap()));
        // vertices 2 and 5 are joined through {3,4,5} and through {1,5,6}
        let seqs = connecting_sequences(&cyc, 2, 5, 10);
        assert_eq!(seqs.len(), 2);
    }

    #[test]
    fn shared_pair_violates_t1() {
        let g = h(4, &[&[1, 2, 3], &[2, 3, 4]]);
        let res = check_tree(&g);
        assert_eq!(res.violation, Some(TreeViolation::SharedPair { first: 0, second: 1 }));
        assert!(recheck_violation(&g, res.violation.as_ref().unwrap()));
    }

    #[test]
    fn disconnected_has_no_sequence() {
        let g = h(4, &[&[1, 2], &[3, 4]]);
        let res = check_tree(&g);
        let v = res.violation.unwrap();
        assert!(matches!(&v, TreeViolation::SequenceCount { sequences, .. } if sequences.is_empty()));
        assert!(recheck_violation(&g, &v));
    }

    #[test]
    fn non_uniform_flagged() {
        let g = h(4, &[&[1, 2, 3], &[3, 4]]);
        let res = check_tree(&g);
        assert!(!res.is_k_uniform);
        assert_eq!(res.violation, Some(TreeViolation::NotUniform));
    }

    #[test]
    fn isolated_vertices_are_reported_not_rejected() {
        let g = h(5, &[&[1, 2, 3]]);
        let res = check_tree(&g);
        assert!(res.is_tree);
        assert_eq!(res.isolated_vertices, vec![4, 5]);
    }

    #[test]
    fn leaves() {
        assert_eq!(find_leaf(&h(3, &[&[1, 2, 3]])).unwrap(), 1);
        assert_eq!(find_leaf(&h(5, &[&[1, 2, 3], &[1, 4, 5]])).unwrap(), 2);
        // degree table of the path {1,2,3},{3,4,5},{5,6,7}: 3 and 5 have degree 2
        let path = h(7, &[&[1, 2, 3], &[3, 4, 5], &[5, 6, 7]]);
        assert_eq!(path.degrees(), vec![1, 1, 2, 1, 2, 1, 1]);
        assert_eq!(find_leaf(&path).unwrap(), 1);
        assert_eq!(find_leaf(&Hypergraph::empty(3)), Err(Error::NoEdges));
        assert_eq!(find_leaf(&h(3, &[&[1, 2], &[2, 3], &[1, 3]])), Err(Error::NotATree));
    }

    #[test]
    fn sequence_validator() {
        let path = h(7, &[&[1, 2, 3], &[3, 4, 5], &[5, 6, 7]]);
        assert!(is_connecting_sequence(&path, 1, 7, &[0, 1, 2]));
        assert!(!is_connecting_sequence(&path, 1, 7, &[0, 2]));
        assert!(!is_connecting_sequence(&path, 3, 7, &[0, 1, 2]));
        assert_eq!(connecting_sequences(&path, 1, 7, 5), vec![vec![0, 1, 2]]);
    }
}
