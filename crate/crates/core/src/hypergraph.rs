//! Hypergraphs on the vertex set `1..=n` whose edges form a clutter.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertices are 1-based.
pub type Vertex = u32;

/// A strictly increasing, nonempty list of vertices.
pub type Edge = Vec<Vertex>;

/// A clutter on `1..=n`.
///
/// Edges are kept in canonical order: each edge sorted, and the edge list
/// sorted lexicographically. Edge indices used throughout the crate refer to
/// this order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph", into = "RawHypergraph")]
pub struct Hypergraph {
    n: u32,
    edges: Vec<Edge>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawHypergraph {
    pub n: i64,
    pub edges: Vec<Vec<i64>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        Hypergraph::validate(raw.n, &raw.edges)
    }
}

impl From<Hypergraph> for RawHypergraph {
    fn from(h: Hypergraph) -> Self {
        RawHypergraph {
            n: i64::from(h.n),
            edges: h
                .edges
                .iter()
                .map(|e| e.iter().map(|&v| i64::from(v)).collect())
                .collect(),
        }
    }
}

/// A connected component together with the maps back to its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// The component relabeled onto `1..=vertex_map.len()`.
    pub hypergraph: Hypergraph,
    /// `vertex_map[i - 1]` is the parent vertex of local vertex `i`.
    pub vertex_map: Vec<Vertex>,
    /// `edge_map[i]` is the parent index of local edge `i`.
    pub edge_map: Vec<usize>,
}

impl Hypergraph {
    /// Builds a canonical hypergraph from untrusted input.
    pub fn validate(raw_vertex_count: i64, raw_edges: &[Vec<i64>]) -> Result<Self> {
        if raw_vertex_count < 1 || raw_vertex_count > i64::from(u32::MAX) {
            return Err(Error::InvalidVertexCount(raw_vertex_count));
        }
        let n = raw_vertex_count as u32;
        let mut edges = Vec::with_capacity(raw_edges.len());
        for (pos, raw) in raw_edges.iter().enumerate() {
            if raw.is_empty() {
                return Err(Error::EmptyEdge(pos));
            }
            if let Some(&vertex) = raw.iter().find(|&&v| v < 1 || v > raw_vertex_count) {
                return Err(Error::VertexOutOfRange { vertex, n });
            }
            let mut edge: Edge = raw.iter().map(|&v| v as Vertex).collect();
            edge.sort_unstable();
            if edge.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex(raw.clone()));
            }
            edges.push(edge);
        }
        edges.sort();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].clone()));
        }
        for (i, a) in edges.iter().enumerate() {
            for b in &edges[i + 1..] {
                if is_subset(a, b) {
                    return Err(Error::ClutterViolation { sub: a.clone(), sup: b.clone() });
                }
                if is_subset(b, a) {
                    return Err(Error::ClutterViolation { sub: b.clone(), sup: a.clone() });
                }
            }
        }
        Ok(Hypergraph { n, edges })
    }

    /// Builds a hypergraph from edges already known to be valid, canonicalizing order.
    pub(crate) fn from_trusted(n: u32, mut edges: Vec<Edge>) -> Self {
        for e in &mut edges {
            e.sort_unstable();
        }
        edges.sort();
        debug_assert!(edges.windows(2).all(|w| w[0] != w[1]));
        Hypergraph { n, edges }
    }

    pub fn empty(n: u32) -> Self {
        Hypergraph { n, edges: Vec::new() }
    }

    pub fn num_vertices(&self) -> u32 {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Result<&Edge> {
        self.edges.get(index).ok_or(Error::IndexOutOfRange { index, len: self.edges.len() })
    }

    /// Index of `edge` (any vertex order) in the canonical edge list.
    pub fn index_of(&self, edge: &[Vertex]) -> Option<usize> {
        let mut sorted = edge.to_vec();
        sorted.sort_unstable();
        self.edges.binary_search(&sorted).ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n
    }

    pub fn degree(&self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.edges.iter().filter(|e| e.binary_search(&v).is_ok()).count())
    }

    /// Degree of every vertex; entry `v - 1` belongs to vertex `v`.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n as usize];
        for e in &self.edges {
            for &v in e {
                deg[v as usize - 1] += 1;
            }
        }
        deg
    }

    /// Δ(H); zero for an edgeless hypergraph.
    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// The common edge size, if every edge has the same size.
    pub fn uniformity(&self) -> Option<usize> {
        let k = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == k).then_some(k)
    }

    /// Edge size `k >= 2` shared by all edges, or [`Error::NotUniform`].
    /// Edgeless hypergraphs are rejected as well since no `k` is determined.
    pub fn require_uniform(&self) -> Result<usize> {
        match self.uniformity() {
            Some(k) if k >= 2 => Ok(k),
            _ => Err(Error::NotUniform),
        }
    }

    pub fn isolated_vertices(&self) -> Vec<Vertex> {
        self.degrees()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 0)
            .map(|(i, _)| i as Vertex + 1)
            .collect()
    }

    /// Indices of the edges containing `v`.
    pub fn incident_edges(&self, v: Vertex) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.binary_search(&v).is_ok())
            .map(|(i, _)| i)
            .collect()
    }

    /// First pair of referenced edges sharing a vertex, if any.
    pub fn matching_conflict(&self, indices: &BTreeSet<usize>) -> Result<Option<(usize, usize)>> {
        self.check_indices(indices)?;
        let mut owner: BTreeMap<Vertex, usize> = BTreeMap::new();
        for &i in indices {
            for &v in &self.edges[i] {
                if let Some(&j) = owner.get(&v) {
                    return Ok(Some((j, i)));
                }
                owner.insert(v, i);
            }
        }
        Ok(None)
    }

    pub fn is_matching(&self, indices: &BTreeSet<usize>) -> Result<bool> {
        Ok(self.matching_conflict(indices)?.is_none())
    }

    /// Same vertex set, referenced edges removed.
    pub fn delete_edges(&self, indices: &BTreeSet<usize>) -> Result<Hypergraph> {
        self.check_indices(indices)?;
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !indices.contains(i))
            .map(|(_, e)| e.clone())
            .collect();
        Ok(Hypergraph { n: self.n, edges })
    }

    /// Same vertex set, only the referenced edges kept. Canonical order is
    /// preserved, so local index `i` maps to the `i`-th smallest kept index.
    pub fn restrict_edges(&self, indices: &BTreeSet<usize>) -> Result<Hypergraph> {
        self.check_indices(indices)?;
        let edges = indices.iter().map(|&i| self.edges[i].clone()).collect();
        Ok(Hypergraph { n: self.n, edges })
    }

    /// Connected components spanned by the edges, ordered by smallest vertex.
    /// Isolated vertices belong to no component.
    pub fn connected_components(&self) -> Vec<Component> {
        let mut parent: Vec<usize> = (0..=self.n as usize).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            let root = find(&mut parent, e[0] as usize);
            for &v in &e[1..] {
                let r = find(&mut parent, v as usize);
                if r != root {
                    parent[r] = root;
                }
            }
        }
        let mut groups: BTreeMap<usize, (BTreeSet<Vertex>, Vec<usize>)> = BTreeMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            let root = find(&mut parent, e[0] as usize);
            let group = groups.entry(root).or_default();
            group.0.extend(e.iter().copied());
            group.1.push(i);
        }
        let mut ordered: Vec<(BTreeSet<Vertex>, Vec<usize>)> = groups.into_values().collect();
        ordered.sort_by_key(|(vs, _)| *vs.iter().next().unwrap());
        ordered
            .into_iter()
            .map(|(vs, edge_map)| {
                let vertex_map: Vec<Vertex> = vs.into_iter().collect();
                let local = |v: Vertex| vertex_map.binary_search(&v).unwrap() as Vertex + 1;
                let edges = edge_map
                    .iter()
                    .map(|&i| self.edges[i].iter().map(|&v| local(v)).collect())
                    .collect();
                Component {
                    hypergraph: Hypergraph { n: vertex_map.len() as u32, edges },
                    vertex_map,
                    edge_map,
                }
            })
            .collect()
    }

    /// Line-based text form: a `# n: <count>` header, then one edge per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("# n: {}\n", self.n);
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(Vertex::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    /// Parses the text form. Lines starting with `#` are comments, except a
    /// `# n: <count>` header; without one, `n` is the largest vertex seen.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut n: Option<i64> = None;
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(count) = comment.trim().strip_prefix("n:") {
                    let count = count.trim().parse().map_err(|_| {
                        Error::Parse(format!("line {}: bad vertex count {count:?}", lineno + 1))
                    })?;
                    n = Some(count);
                }
                continue;
            }
            let edge = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("line {}: bad vertex {t:?}", lineno + 1)))
                })
                .collect::<Result<Vec<_>>>()?;
            edges.push(edge);
        }
        let n = match n {
            Some(n) => n,
            None => edges.iter().flatten().copied().max().unwrap_or(0),
        };
        Hypergraph::validate(n, &edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("hypergraph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v == 0 || v > self.n {
            return Err(Error::VertexOutOfRange { vertex: i64::from(v), n: self.n });
        }
        Ok(())
    }

    fn check_indices(&self, indices: &BTreeSet<usize>) -> Result<()> {
        match indices.iter().next_back() {
            Some(&index) if index >= self.edges.len() => {
                Err(Error::IndexOutOfRange { index, len: self.edges.len() })
            }
            _ => Ok(()),
        }
    }
}

/// `a ⊆ b` for sorted vertex lists.
pub(crate) fn is_subset(a: &[Vertex], b: &[Vertex]) -> bool {
    a.len() <= b.len() && a.iter().all(|v| b.binary_search(v).is_ok())
}

/// Size of `a ∩ b` for sorted vertex lists.
pub(crate) fn intersection_size(a: &[Vertex], b: &[Vertex]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: i64, edges: &[&[i64]]) -> Hypergraph {
        let edges: Vec<Vec<i64>> = edges.iter().map(|e| e.to_vec()).collect();
        Hypergraph::validate(n, &edges).unwrap()
    }

    fn set(items: &[usize]) -> BTreeSet<usize> {
        items.iter().copied().collect()
    }

    #[test]
    fn validate_passes_and_canonicalizes() {
        let g = h(3, &[&[1, 2], &[2, 3]]);
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.edges(), &[vec![1, 2], vec![2, 3]]);

        let g = h(4, &[&[3, 1], &[4, 2]]);
        assert_eq!(g.edges(), &[vec![1, 3], vec![2, 4]]);
    }

    #[test]
    fn validate_errors() {
        let err = Hypergraph::validate(3, &[vec![1, 2], vec![1, 2, 3]]).unwrap_err();
        assert_eq!(err, Error::ClutterViolation { sub: vec![1, 2], sup: vec![1, 2, 3] });
        assert!(matches!(
            Hypergraph::validate(3, &[vec![1, 4]]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 3 })
        ));
        assert!(matches!(
            Hypergraph::validate(3, &[vec![0, 1]]),
            Err(Error::VertexOutOfRange { vertex: 0, .. })
        ));
        assert_eq!(Hypergraph::validate(3, &[vec![]]), Err(Error::EmptyEdge(0)));
        assert_eq!(
            Hypergraph::validate(3, &[vec![2, 1], vec![1, 2]]),
            Err(Error::DuplicateEdge(vec![1, 2]))
        );
        assert!(matches!(Hypergraph::validate(3, &[vec![1, 1]]), Err(Error::RepeatedVertex(_))));
        assert_eq!(Hypergraph::validate(0, &[]), Err(Error::InvalidVertexCount(0)));
    }

    #[test]
    fn degrees() {
        let single = h(3, &[&[1, 2, 3]]);
        assert_eq!(single.degree(2).unwrap(), 1);
        assert_eq!(single.max_degree(), 1);

        let star = h(7, &[&[1, 2, 3], &[1, 4, 5], &[1, 6, 7]]);
        assert_eq!(star.degree(1).unwrap(), 3);
        assert_eq!(star.max_degree(), 3);
        assert!(star.degree(8).is_err());
        assert!(star.degree(0).is_err());

        assert_eq!(Hypergraph::empty(4).max_degree(), 0);
    }

    #[test]
    fn complete_three_uniform_degree_counts_pairs() {
        let mut edges = Vec::new();
        for a in 1..=5 {
            for b in a + 1..=5 {
                for c in b + 1..=5 {
                    edges.push(vec![a, b, c]);
                }
            }
        }
        let g = Hypergraph::validate(5, &edges).unwrap();
        // 2-subsets of the other four vertices
        let pairs = (2..=5).flat_map(|a| (a + 1..=5).map(move |b| (a, b))).count();
        assert_eq!(g.degree(1).unwrap(), pairs);
        assert_eq!(g.max_degree(), 6);
    }

    #[test]
    fn matchings() {
        let g = h(4, &[&[1, 2], &[3, 4], &[2, 3]]);
        let e12 = g.index_of(&[1, 2]).unwrap();
        let e34 = g.index_of(&[3, 4]).unwrap();
        let e23 = g.index_of(&[2, 3]).unwrap();
        assert!(g.is_matching(&set(&[e12, e34])).unwrap());
        assert_eq!(g.matching_conflict(&set(&[e12, e23])).unwrap(), Some((e12, e23)));
        assert!(g.is_matching(&BTreeSet::new()).unwrap());
        assert_eq!(
            g.is_matching(&set(&[7])),
            Err(Error::IndexOutOfRange { index: 7, len: 3 })
        );
    }

    #[test]
    fn delete_and_components() {
        let star = h(5, &[&[1, 2, 3], &[1, 4, 5]]);
        let rest = star.delete_edges(&set(&[0])).unwrap();
        assert_eq!(rest.edges(), &[vec![1, 4, 5]]);
        assert_eq!(rest.num_vertices(), 5);

        let two = h(4, &[&[1, 2], &[3, 4]]);
        let comps = two.connected_components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.hypergraph.num_edges() == 1));
        assert_eq!(comps[1].vertex_map, vec![3, 4]);
        assert_eq!(comps[1].hypergraph.edges(), &[vec![1, 2]]);
        assert_eq!(comps[1].edge_map, vec![1]);

        let tree = h(5, &[&[1, 2, 3], &[3, 4, 5]]);
        let cut = tree.delete_edges(&set(&[1])).unwrap();
        let comps = cut.connected_components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].hypergraph.edges(), &[vec![1, 2, 3]]);
    }

    #[test]
    fn components_are_ordered_by_smallest_vertex() {
        let g = h(6, &[&[2, 6], &[1, 5], &[3, 5]]);
        let comps = g.connected_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].vertex_map, vec![1, 3, 5]);
        assert_eq!(comps[1].vertex_map, vec![2, 6]);
    }

    #[test]
    fn text_format() {
        let g = h(6, &[&[1, 2, 3], &[3, 4, 5]]);
        let text = g.to_text();
        assert_eq!(text, "# n: 6\n1 2 3\n3 4 5\n");
        assert_eq!(Hypergraph::from_text(&text).unwrap(), g);
        let loose = "# a comment\n5 4 3\n\n1 2 3\n";
        assert_eq!(
            Hypergraph::from_text(loose).unwrap(),
            h(5, &[&[1, 2, 3], &[3, 4, 5]])
        );
        assert!(Hypergraph::from_text("1 x\n").is_err());
    }

    #[test]
    fn json_format() {
        let g = h(4, &[&[1, 3], &[2, 4]]);
        assert_eq!(g.to_json(), r#"{"n":4,"edges":[[1,3],[2,4]]}"#);
        assert_eq!(Hypergraph::from_json(r#"{"n":4,"edges":[[3,1],[4,2]]}"#).unwrap(), g);
        assert!(Hypergraph::from_json(r#"{"n":2,"edges":[[1,3]]}"#).is_err());
    }
}
