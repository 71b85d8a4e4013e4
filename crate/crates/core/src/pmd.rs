//! Positive matching decompositions.
//!
//! A pmd of `H = (V, E)` is an ordered partition `E_1, ..., E_p` of `E` in
//! which each `E_i` is a positive matching of the residual hypergraph
//! `(V, E \ (E_1 ∪ ... ∪ E_{i-1}))`. Every decomposition produced here carries
//! one [`WeightCertificate`] per part, checked against that residual.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, Vertex};
use crate::positive::{self, PositivityVerdict, WeightCertificate};
use crate::rational::{self, Rational};
use crate::tree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PmdMode {
    Tree,
    Exact,
    Greedy,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PmdDecomposition {
    /// Edge indices of each part, in order.
    pub parts: Vec<BTreeSet<usize>>,
    /// `certificates[i]` certifies `parts[i]` against the residual hypergraph.
    pub certificates: Vec<WeightCertificate>,
    pub mode: PmdMode,
}

/// JSON form of a decomposition, with parts written out as edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PmdDecompositionFile {
    pub p: usize,
    pub parts: Vec<Vec<Edge>>,
    pub certificates: Vec<WeightCertificate>,
    pub mode: PmdMode,
}

impl PmdDecomposition {
    pub fn p(&self) -> usize {
        self.parts.len()
    }

    /// Checks the partition property and every residual certificate.
    pub fn verify(&self, h: &Hypergraph) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDecomposition(msg));
        if self.parts.len() != self.certificates.len() {
            return bad(format!("{} parts but {} certificates", self.parts.len(), self.certificates.len()));
        }
        let mut seen = BTreeSet::new();
        for (i, part) in self.parts.iter().enumerate() {
            if part.is_empty() {
                return bad(format!("part {i} is empty"));
            }
            for &e in part {
                if e >= h.num_edges() {
                    return bad(format!("part {i} references edge {e}"));
                }
                if !seen.insert(e) {
                    return bad(format!("edge {e} appears in two parts"));
                }
            }
            if !h.is_matching(part)? {
                return bad(format!("part {i} is not a matching"));
            }
        }
        if seen.len() != h.num_edges() {
            return bad(format!("parts cover {} of {} edges", seen.len(), h.num_edges()));
        }
        let mut removed: BTreeSet<usize> = BTreeSet::new();
        for (i, (part, cert)) in self.parts.iter().zip(&self.certificates).enumerate() {
            let residual: Vec<usize> = (0..h.num_edges()).filter(|e| !removed.contains(e)).collect();
            let ok = residual.iter().all(|&e| {
                let w = cert.edge_weight(&h.edges()[e]);
                if part.contains(&e) { w > Rational::zero() } else { w < Rational::zero() }
            });
            if !ok {
                return bad(format!("certificate {i} does not certify its part against the residual"));
            }
            removed.extend(part.iter().copied());
        }
        Ok(())
    }

    pub fn to_file(&self, h: &Hypergraph) -> PmdDecompositionFile {
        PmdDecompositionFile {
            p: self.p(),
            parts: self
                .parts
                .iter()
                .map(|part| part.iter().map(|&e| h.edges()[e].clone()).collect())
                .collect(),
            certificates: self.certificates.clone(),
            mode: self.mode,
        }
    }
}

impl PmdDecompositionFile {
    /// Maps the listed edges back to indices of `h`; does not verify certificates.
    pub fn resolve(&self, h: &Hypergraph) -> Result<PmdDecomposition> {
        if self.p != self.parts.len() {
            return Err(Error::InvalidDecomposition(format!("p = {} but {} parts", self.p, self.parts.len())));
        }
        let parts = self
            .parts
            .iter()
            .map(|part| {
                part.iter()
                    .map(|e| {
                        h.index_of(e)
                            .ok_or_else(|| Error::InvalidDecomposition(format!("edge {e:?} not in hypergraph")))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Ok(PmdDecomposition { parts, certificates: self.certificates.clone(), mode: self.mode })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PmdBounds {
    /// Δ(H).
    pub lower: usize,
    pub upper: usize,
    pub upper_source: PmdMode,
    pub exact: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Cap on search nodes (candidate matchings enumerated plus LP calls).
    pub max_nodes: u64,
    /// Expand the first branching level in parallel. The value found does not
    /// depend on this flag.
    pub parallel: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 2_000_000, parallel: false }
    }
}

// ---------------------------------------------------------------------------
// Greedy strips

/// Repeatedly strips a greedy positive matching off the residual.
pub fn greedy_decomposition(h: &Hypergraph) -> Result<PmdDecomposition> {
    if h.num_edges() == 0 {
        return Err(Error::NoEdges);
    }
    let mut remaining: Vec<usize> = (0..h.num_edges()).collect();
    let mut parts = Vec::new();
    let mut certificates = Vec::new();
    while !remaining.is_empty() {
        let edges: Vec<Edge> = remaining.iter().map(|&e| h.edges()[e].clone()).collect();
        let (local, cert) = positive::greedy_on_edges(h.num_vertices(), &edges)?;
        let part: BTreeSet<usize> = local.iter().map(|&i| remaining[i]).collect();
        remaining.retain(|e| !part.contains(e));
        parts.push(part);
        certificates.push(cert);
    }
    Ok(PmdDecomposition { parts, certificates, mode: PmdMode::Greedy })
}

// ---------------------------------------------------------------------------
// Trees

/// One connected group of star edges, all sharing `center`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Star {
    pub center: Vertex,
    pub edges: Vec<usize>,
}

/// Cumulative state after one step of the tree construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeLevel {
    /// `M_i`.
    pub matched: BTreeSet<usize>,
    /// `M'_i`: every edge outside `M_i` meeting an edge of `M_i`.
    pub co_matched: BTreeSet<usize>,
    /// The stars of the frontier `M̄_i` this level chose from; empty at level 1.
    pub stars: Vec<Star>,
}

/// A positive matching of a tree covering every vertex of degree at least two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeMatching {
    pub leaf: Vertex,
    pub levels: Vec<TreeLevel>,
    pub matching: BTreeSet<usize>,
    pub co_matching: BTreeSet<usize>,
    /// ±1 weights for `k >= 3`; level-scaled weights for `k = 2`.
    pub weights: WeightCertificate,
}

/// Builds the covering positive matching of a connected tree with Δ ≥ 2.
///
/// Starting from the edge at a leaf, each step collects the frontier `M̄` of
/// edges touching `M'` but not yet classified, splits it into vertex-disjoint
/// stars, adds the smallest edge of each star to `M`, and moves everything
/// else that now touches `M` into `M'`.
pub fn tree_positive_matching(h: &Hypergraph) -> Result<TreeMatching> {
    let k = h.require_uniform()?;
    let edges = h.edges();
    let violation = |msg: String| Error::StarDecompositionViolation(msg);
    if h.connected_components().len() != 1 || h.max_degree() < 2 {
        return Err(violation("expected a connected tree with maximum degree at least 2".into()));
    }
    let leaf = tree::smallest_leaf(h).ok_or(Error::NotATree)?;
    let first = h.incident_edges(leaf)[0];

    let meets = |e: usize, vs: &BTreeSet<Vertex>| edges[e].iter().any(|v| vs.contains(v));
    let vertices_of = |set: &BTreeSet<usize>| -> BTreeSet<Vertex> {
        set.iter().flat_map(|&e| edges[e].iter().copied()).collect()
    };

    // Level of first appearance and sign (+ for V(M_i), - for V(M'_i) only).
    let mut level: BTreeMap<Vertex, (usize, bool)> = BTreeMap::new();
    let record = |level: &mut BTreeMap<Vertex, (usize, bool)>, set: &BTreeSet<usize>, lvl: usize, sign: bool| {
        for &e in set {
            for &v in &edges[e] {
                level.entry(v).or_insert((lvl, sign));
            }
        }
    };

    let mut matched: BTreeSet<usize> = [first].into_iter().collect();
    let first_vs = vertices_of(&matched);
    let mut co: BTreeSet<usize> = (0..edges.len()).filter(|&e| e != first && meets(e, &first_vs)).collect();
    record(&mut level, &matched, 1, true);
    record(&mut level, &co, 1, false);
    let mut levels = vec![TreeLevel { matched: matched.clone(), co_matched: co.clone(), stars: Vec::new() }];

    while matched.len() + co.len() < edges.len() {
        let lvl = levels.len() + 1;
        let vm = vertices_of(&matched);
        let vco = vertices_of(&co);
        let frontier: Vec<usize> = (0..edges.len())
            .filter(|e| !matched.contains(e) && !co.contains(e) && meets(*e, &vco))
            .collect();
        if frontier.is_empty() {
            return Err(violation(format!("level {lvl}: unclassified edges are unreachable")));
        }
        // The frontier must split into vertex-disjoint stars centred in V(M') \ V(M).
        let mut stars: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
        for &e in &frontier {
            if meets(e, &vm) {
                return Err(violation(format!("level {lvl}: frontier edge {e} meets V(M)")));
            }
            let centers: Vec<Vertex> = edges[e].iter().copied().filter(|v| vco.contains(v)).collect();
            if centers.len() != 1 {
                return Err(violation(format!("level {lvl}: frontier edge {e} has {} centres", centers.len())));
            }
            stars.entry(centers[0]).or_default().push(e);
        }
        let star_list: Vec<Star> = stars.into_iter().map(|(center, edges)| Star { center, edges }).collect();
        for (a, s) in star_list.iter().enumerate() {
            for (i, &e) in s.edges.iter().enumerate() {
                for &f in &s.edges[i + 1..] {
                    let shared: Vec<Vertex> =
                        edges[e].iter().copied().filter(|v| edges[f].binary_search(v).is_ok()).collect();
                    if shared != [s.center] {
                        return Err(violation(format!("level {lvl}: star at {} is not a star", s.center)));
                    }
                }
            }
            let vs: BTreeSet<Vertex> = s.edges.iter().flat_map(|&e| edges[e].iter().copied()).collect();
            for t in &star_list[a + 1..] {
                if t.edges.iter().any(|&f| meets(f, &vs)) {
                    return Err(violation(format!(
                        "level {lvl}: stars at {} and {} intersect",
                        s.center, t.center
                    )));
                }
            }
        }
        // Edges within a star are in canonical order, so the first is the smallest.
        let chosen: BTreeSet<usize> = star_list.iter().map(|s| s.edges[0]).collect();
        matched.extend(chosen.iter().copied());
        let new_vm = vertices_of(&matched);
        let mut new_co: BTreeSet<usize> = frontier.iter().copied().filter(|e| !chosen.contains(e)).collect();
        new_co.extend(
            (0..edges.len()).filter(|e| !matched.contains(e) && !co.contains(e) && meets(*e, &new_vm)),
        );
        if chosen.is_empty() {
            return Err(violation(format!("level {lvl}: no progress")));
        }
        co.extend(new_co.iter().copied());
        record(&mut level, &chosen, lvl, true);
        record(&mut level, &new_co, lvl, false);
        levels.push(TreeLevel { matched: matched.clone(), co_matched: co.clone(), stars: star_list });
    }

    // M is a matching, M and M' partition E, and M covers every vertex of degree >= 2.
    if !h.is_matching(&matched)? {
        return Err(violation("M is not a matching".into()));
    }
    if matched.intersection(&co).next().is_some() || matched.len() + co.len() != edges.len() {
        return Err(violation("M and M' do not partition the edges".into()));
    }
    let covered = vertices_of(&matched);
    if let Some(v) = h.vertices().find(|v| h.degrees()[*v as usize - 1] >= 2 && !covered.contains(v)) {
        return Err(violation(format!("vertex {v} of degree >= 2 is not covered by M")));
    }

    let mut weights = WeightCertificate::zeros(h.num_vertices());
    for (&v, &(lvl, positive)) in &level {
        let w = if k >= 3 {
            if positive { Rational::one() } else { -Rational::one() }
        } else {
            // For graphs ±1 weights tie at zero on M-edges of later levels;
            // magnitudes growing with the level break the tie.
            let scale = rational::from_int(3).pow(lvl as i32);
            if positive { scale } else { -rational::from_int(2) * scale }
        };
        weights.weights.insert(v, w);
    }
    Ok(TreeMatching { leaf, levels, matching: matched, co_matching: co, weights })
}

/// One round of the tree decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeRound {
    /// Constructions for the components with at least two edges, in local labels.
    pub matchings: Vec<TreeMatching>,
    /// Set when the assembled weights failed and the LP supplied the certificate.
    pub lp_fallback: bool,
}

/// Decomposition of a k-uniform tree into exactly Δ(H) parts.
pub fn pmd_tree(h: &Hypergraph) -> Result<PmdDecomposition> {
    pmd_tree_traced(h).map(|(dec, _)| dec)
}

/// [`pmd_tree`] together with the per-round constructions.
pub fn pmd_tree_traced(h: &Hypergraph) -> Result<(PmdDecomposition, Vec<TreeRound>)> {
    if h.num_edges() == 0 {
        return Err(Error::NoEdges);
    }
    if !tree::check_tree(h).is_tree {
        return Err(Error::NotATree);
    }
    let n = h.num_vertices();
    let mut remaining: BTreeSet<usize> = (0..h.num_edges()).collect();
    let mut parts = Vec::new();
    let mut certificates = Vec::new();
    let mut rounds = Vec::new();
    while !remaining.is_empty() {
        let residual = h.restrict_edges(&remaining)?;
        let to_global: Vec<usize> = remaining.iter().copied().collect();
        let mut part_local: BTreeSet<usize> = BTreeSet::new();
        let mut cert = WeightCertificate::zeros(n);
        let mut matchings = Vec::new();
        for comp in residual.connected_components() {
            if comp.hypergraph.num_edges() == 1 {
                part_local.insert(comp.edge_map[0]);
                for &v in &comp.vertex_map {
                    cert.weights.insert(v, Rational::one());
                }
                continue;
            }
            let tm = tree_positive_matching(&comp.hypergraph)?;
            part_local.extend(tm.matching.iter().map(|&e| comp.edge_map[e]));
            for (&v, w) in &tm.weights.weights {
                cert.weights.insert(comp.vertex_map[v as usize - 1], w.clone());
            }
            matchings.push(tm);
        }
        let mut lp_fallback = false;
        if !cert.certifies(residual.edges(), |e| part_local.contains(&e)) {
            lp_fallback = true;
            match positive::certify_edges(n, residual.edges(), |e| part_local.contains(&e)) {
                PositivityVerdict::Positive { certificate } => cert = certificate,
                _ => return Err(Error::StarDecompositionViolation("constructed matching is not positive".into())),
            }
        }
        let part: BTreeSet<usize> = part_local.iter().map(|&e| to_global[e]).collect();
        for e in &part {
            remaining.remove(e);
        }
        parts.push(part);
        certificates.push(cert);
        rounds.push(TreeRound { matchings, lp_fallback });
    }
    let dec = PmdDecomposition { parts, certificates, mode: PmdMode::Tree };
    if dec.p() != h.max_degree() {
        return Err(Error::StarDecompositionViolation(format!(
            "produced {} parts for maximum degree {}",
            dec.p(),
            h.max_degree()
        )));
    }
    Ok((dec, rounds))
}

// ---------------------------------------------------------------------------
// Exact search

/// Smallest number of parts, with a witnessing decomposition.
///
/// Components are solved independently (the pmd of a disjoint union is the
/// maximum over its components) and their parts merged index by index. Within
/// a component, `p` runs upward from Δ; for each `p` a depth-first search
/// picks the next part among the positive matchings of the residual that
/// cover every vertex whose residual degree equals the number of parts left.
/// The greedy decomposition closes the search when no smaller `p` works.
pub fn pmd_exact(h: &Hypergraph, budget: SearchBudget) -> Result<(usize, PmdDecomposition)> {
    if h.num_edges() == 0 {
        return Err(Error::NoEdges);
    }
    let nodes = AtomicU64::new(0);
    let mut per_component = Vec::new();
    for comp in h.connected_components() {
        let dec = exact_component(&comp.hypergraph, budget, &nodes).map_err(|_| Error::BudgetExceeded {
            lower: h.max_degree(),
            upper: greedy_decomposition(h).map(|d| d.p()).unwrap_or(h.num_edges()),
        })?;
        per_component.push((comp, dec));
    }
    let p = per_component.iter().map(|(_, d)| d.p()).max().unwrap_or(0);
    let mut parts = vec![BTreeSet::new(); p];
    let mut certificates = vec![WeightCertificate::zeros(h.num_vertices()); p];
    for (comp, dec) in &per_component {
        for (i, (part, cert)) in dec.parts.iter().zip(&dec.certificates).enumerate() {
            parts[i].extend(part.iter().map(|&e| comp.edge_map[e]));
            for (&v, w) in &cert.weights {
                certificates[i].weights.insert(comp.vertex_map[v as usize - 1], w.clone());
            }
        }
    }
    let dec = PmdDecomposition { parts, certificates, mode: PmdMode::Exact };
    dec.verify(h)?;
    Ok((p, dec))
}

struct Exhausted;

fn exact_component(h: &Hypergraph, budget: SearchBudget, nodes: &AtomicU64) -> Result<PmdDecomposition, Exhausted> {
    let m = h.num_edges();
    if m > 64 {
        return Err(Exhausted);
    }
    let greedy = greedy_decomposition(h).map_err(|_| Exhausted)?;
    let full: u64 = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let mut search = Search::new(h, budget.max_nodes, nodes);
    for p in h.max_degree()..greedy.p() {
        let found = if budget.parallel {
            search.decompose_parallel(full, p)?
        } else {
            search.decompose(full, p)?
        };
        if let Some(parts) = found {
            let (parts, certificates) = parts.into_iter().map(|(mask, c)| (mask_to_set(mask), c)).unzip();
            return Ok(PmdDecomposition { parts, certificates, mode: PmdMode::Exact });
        }
    }
    Ok(PmdDecomposition { mode: PmdMode::Exact, ..greedy })
}

fn mask_to_set(mask: u64) -> BTreeSet<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

type Parts = Vec<(u64, WeightCertificate)>;

struct Search<'a> {
    h: &'a Hypergraph,
    max_nodes: u64,
    nodes: &'a AtomicU64,
    failed: HashSet<(u64, usize)>,
}

impl<'a> Search<'a> {
    fn new(h: &'a Hypergraph, max_nodes: u64, nodes: &'a AtomicU64) -> Self {
        Search { h, max_nodes, nodes, failed: HashSet::new() }
    }

    fn tick(&self) -> Result<(), Exhausted> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.max_nodes {
            return Err(Exhausted);
        }
        Ok(())
    }

    fn degrees(&self, residual: u64) -> Vec<usize> {
        let mut deg = vec![0; self.h.num_vertices() as usize + 1];
        for (i, e) in self.h.edges().iter().enumerate() {
            if residual >> i & 1 == 1 {
                for &v in e {
                    deg[v as usize] += 1;
                }
            }
        }
        deg
    }

    /// Matchings of `residual` covering every vertex of degree `parts_left`,
    /// largest first, then by edge list.
    fn candidates(&self, residual: u64, parts_left: usize) -> Result<Vec<u64>, Exhausted> {
        let deg = self.degrees(residual);
        let must: Vec<Vertex> = (1..=self.h.num_vertices()).filter(|&v| deg[v as usize] == parts_left).collect();
        let edges = self.h.edges();
        let live: Vec<usize> = (0..edges.len()).filter(|i| residual >> i & 1 == 1).collect();
        let mut out = Vec::new();
        let mut stack: Vec<(usize, u64, BTreeSet<Vertex>)> = vec![(0, 0, BTreeSet::new())];
        while let Some((pos, mask, used)) = stack.pop() {
            self.tick()?;
            if pos == live.len() {
                if mask != 0 && must.iter().all(|v| used.contains(v)) {
                    out.push(mask);
                }
                continue;
            }
            let e = live[pos];
            // A must-cover vertex whose remaining edges are all skipped cannot be covered.
            stack.push((pos + 1, mask, used.clone()));
            if edges[e].iter().all(|v| !used.contains(v)) {
                let mut with = used;
                with.extend(edges[e].iter().copied());
                stack.push((pos + 1, mask | 1 << e, with));
            }
        }
        out.sort_by(|a, b| b.count_ones().cmp(&a.count_ones()).then_with(|| mask_to_set(*a).cmp(&mask_to_set(*b))));
        Ok(out)
    }

    fn certify(&self, residual: u64, part: u64) -> Result<Option<WeightCertificate>, Exhausted> {
        self.tick()?;
        let idx: Vec<usize> = (0..self.h.num_edges()).filter(|i| residual >> i & 1 == 1).collect();
        let edges: Vec<Edge> = idx.iter().map(|&i| self.h.edges()[i].clone()).collect();
        if part == residual {
            // Every edge is in the part: weight +1 on its vertices suffices.
            let mut cert = WeightCertificate::zeros(self.h.num_vertices());
            for e in &edges {
                for &v in e {
                    cert.weights.insert(v, Rational::one());
                }
            }
            return Ok(Some(cert));
        }
        let verdict = positive::certify_edges(self.h.num_vertices(), &edges, |j| part >> idx[j] & 1 == 1);
        Ok(verdict.certificate().cloned())
    }

    fn feasible_prefix(&self, residual: u64, parts_left: usize) -> bool {
        residual == 0 || (parts_left > 0 && self.degrees(residual).into_iter().max().unwrap_or(0) <= parts_left)
    }

    fn decompose(&mut self, residual: u64, parts_left: usize) -> Result<Option<Parts>, Exhausted> {
        if residual == 0 {
            return Ok(Some(Vec::new()));
        }
        if !self.feasible_prefix(residual, parts_left) || self.failed.contains(&(residual, parts_left)) {
            return Ok(None);
        }
        for part in self.candidates(residual, parts_left)? {
            if let Some(found) = self.try_part(residual, part, parts_left)? {
                return Ok(Some(found));
            }
        }
        self.failed.insert((residual, parts_left));
        Ok(None)
    }

    fn try_part(&mut self, residual: u64, part: u64, parts_left: usize) -> Result<Option<Parts>, Exhausted> {
        let rest = residual & !part;
        if !self.feasible_prefix(rest, parts_left - 1) {
            return Ok(None);
        }
        let Some(cert) = self.certify(residual, part)? else { return Ok(None) };
        Ok(self.decompose(rest, parts_left - 1)?.map(|mut tail| {
            tail.insert(0, (part, cert));
            tail
        }))
    }

    /// Same result as [`Search::decompose`], with the first level in parallel.
    fn decompose_parallel(&mut self, residual: u64, parts_left: usize) -> Result<Option<Parts>, Exhausted> {
        if !self.feasible_prefix(residual, parts_left) {
            return Ok(None);
        }
        let candidates = self.candidates(residual, parts_left)?;
        let (h, max_nodes, nodes) = (self.h, self.max_nodes, self.nodes);
        let found = candidates.par_iter().find_map_first(|&part| {
            let mut local = Search::new(h, max_nodes, nodes);
            match local.try_part(residual, part, parts_left) {
                Ok(Some(parts)) => Some(Ok(parts)),
                Ok(None) => None,
                Err(e) => Some(Err(e)),
            }
        });
        found.transpose()
    }
}

// ---------------------------------------------------------------------------
// Bounds

/// Δ(H) below; above, the tree construction when `h` is a tree and the greedy
/// strips otherwise. With a budget, the exact search fills in `exact`.
pub fn pmd_bounds(h: &Hypergraph, exact: Option<SearchBudget>) -> Result<PmdBounds> {
    if h.num_edges() == 0 {
        return Err(Error::NoEdges);
    }
    let lower = h.max_degree();
    let is_tree = h.require_uniform().is_ok() && tree::check_tree(h).is_tree;
    let (upper, upper_source) = if is_tree {
        (pmd_tree(h)?.p(), PmdMode::Tree)
    } else {
        (greedy_decomposition(h)?.p(), PmdMode::Greedy)
    };
    let exact = match exact {
        Some(budget) if lower < upper => match pmd_exact(h, budget) {
            Ok((p, _)) => Some(p),
            Err(Error::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e),
        },
        Some(_) => Some(upper),
        None => None,
    };
    Ok(PmdBounds { lower, upper, upper_source, exact })
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

    fn four_cycle() -> Hypergraph {
        h(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]])
    }

    #[test]
    fn exact_single_edge() {
        let g = h(3, &[&[1, 2, 3]]);
        let (p, dec) = pmd_exact(&g, SearchBudget::default()).unwrap();
        assert_eq!(p, 1);
        assert_eq!(dec.parts, vec![set(&[0])]);
        dec.verify(&g).unwrap();
    }

    #[test]
    fn exact_path_matches_max_degree() {
        let g = h(3, &[&[1, 2], &[2, 3]]);
        let (p, dec) = pmd_exact(&g, SearchBudget::default()).unwrap();
        assert_eq!(p, 2);
        dec.verify(&g).unwrap();
    }

    #[test]
    fn exact_four_cycle_needs_three() {
        let g = four_cycle();
        let (p, dec) = pmd_exact(&g, SearchBudget::default()).unwrap();
        assert_eq!(p, 3);
        dec.verify(&g).unwrap();
        let (p_par, dec_par) = pmd_exact(&g, SearchBudget { parallel: true, ..Default::default() }).unwrap();
        assert_eq!(p_par, 3);
        dec_par.verify(&g).unwrap();
    }

    #[test]
    fn exact_budget_exhaustion() {
        let g = four_cycle();
        let err = pmd_exact(&g, SearchBudget { max_nodes: 1, parallel: false }).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { lower: 2, upper: 3 });
        assert_eq!(pmd_exact(&Hypergraph::empty(2), SearchBudget::default()), Err(Error::NoEdges));
    }

    #[test]
    fn tree_star() {
        let g = h(7, &[&[1, 2, 3], &[1, 4, 5], &[1, 6, 7]]);
        let dec = pmd_tree(&g).unwrap();
        assert_eq!(dec.p(), 3);
        assert!(dec.parts.iter().all(|p| p.len() == 1));
        dec.verify(&g).unwrap();
    }

    #[test]
    fn tree_single_edge() {
        let g = h(3, &[&[1, 2, 3]]);
        let dec = pmd_tree(&g).unwrap();
        assert_eq!(dec.parts, vec![set(&[0])]);
        dec.verify(&g).unwrap();
    }

    #[test]
    fn tree_path_of_three_edges() {
        let g = h(7, &[&[1, 2, 3], &[3, 4, 5], &[5, 6, 7]]);
        let (dec, rounds) = pmd_tree_traced(&g).unwrap();
        assert_eq!(dec.parts, vec![set(&[0, 2]), set(&[1])]);
        dec.verify(&g).unwrap();
        assert!(rounds.iter().all(|r| !r.lp_fallback));
        // The first part's ±1 weights: +1 on {1,2,3} and {5,6,7}, -1 on 4.
        let w = &rounds[0].matchings[0].weights;
        assert_eq!(w.weight(4), -Rational::one());
        assert_eq!(w.weight(6), Rational::one());
    }

    #[test]
    fn tree_rejects_non_trees() {
        assert_eq!(pmd_tree(&four_cycle()), Err(Error::NotATree));
        assert_eq!(pmd_tree(&Hypergraph::empty(3)), Err(Error::NoEdges));
    }

    #[test]
    fn graph_tree_uses_scaled_weights() {
        // a 2-uniform spider: the ±1 weights would sum to zero on the second-level edges
        let g = h(7, &[&[1, 2], &[2, 3], &[3, 4], &[3, 5], &[5, 6], &[6, 7]]);
        let (dec, rounds) = pmd_tree_traced(&g).unwrap();
        assert_eq!(dec.p(), g.max_degree());
        dec.verify(&g).unwrap();
        assert!(rounds.iter().all(|r| !r.lp_fallback));
    }

    #[test]
    fn greedy_strips() {
        let g = four_cycle();
        let dec = greedy_decomposition(&g).unwrap();
        dec.verify(&g).unwrap();
        assert_eq!(dec.p(), 3);
    }

    #[test]
    fn bounds() {
        let star = h(10, &[&[1, 2, 3], &[1, 4, 5], &[1, 6, 7]]);
        let b = pmd_bounds(&star, None).unwrap();
        assert_eq!((b.lower, b.upper, b.upper_source), (3, 3, PmdMode::Tree));

        let b = pmd_bounds(&four_cycle(), Some(SearchBudget::default())).unwrap();
        assert_eq!((b.lower, b.upper, b.exact), (2, 3, Some(3)));
    }

    #[test]
    fn verify_catches_defects() {
        let g = four_cycle();
        let mut dec = greedy_decomposition(&g).unwrap();
        dec.certificates[0] = WeightCertificate::zeros(4);
        assert!(matches!(dec.verify(&g), Err(Error::InvalidDecomposition(_))));

        let dec = PmdDecomposition {
            parts: vec![set(&[0, 1, 2, 3])],
            certificates: vec![WeightCertificate::zeros(4)],
            mode: PmdMode::Greedy,
        };
        assert!(dec.verify(&g).is_err());
    }

    #[test]
    fn file_round_trip() {
        let g = h(7, &[&[1, 2, 3], &[3, 4, 5], &[5, 6, 7]]);
        let dec = pmd_tree(&g).unwrap();
        let file = dec.to_file(&g);
        let json = serde_json::to_string(&file).unwrap();
        assert!(json.starts_with(r#"{"p":2,"parts":[[[1,2,3],[5,6,7]],[[3,4,5]]],"certificates":[{"1":"1/1""#));
        assert!(json.ends_with(r#""mode":"tree"}"#));
        let back: PmdDecompositionFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.resolve(&g).unwrap(), dec);
    }
}
