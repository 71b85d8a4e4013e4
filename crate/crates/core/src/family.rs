//! The `E_{l1,l2}` classes of the complete 3-uniform hypergraph.
//!
//! A triple `a < b < c` belongs to class `(a + b, b + c)`. Two distinct
//! triples in one class cannot share a vertex, so each class is a matching;
//! whether each class is a *positive* matching is open, and the scanner here
//! only collects certified evidence.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, Vertex};
use crate::pmd::{PmdDecomposition, PmdMode};
use crate::positive::{self, PositivityVerdict, WeightCertificate};

/// All k-subsets of `[n]`, in canonical order.
pub fn complete_uniform(n: u32, k: usize) -> Result<Hypergraph> {
    if k == 0 || k > n as usize {
        return Err(Error::NotUniform);
    }
    let mut edges = Vec::new();
    let mut current: Vec<Vertex> = (1..=k as Vertex).collect();
    loop {
        edges.push(current.clone());
        // Advance to the next combination in lex order.
        let Some(i) = (0..k).rev().find(|&i| current[i] < n - (k - 1 - i) as Vertex) else { break };
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
    Ok(Hypergraph::from_trusted(n, edges))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[u32; 2]", from = "[u32; 2]")]
pub struct LabelPair {
    pub l1: u32,
    pub l2: u32,
}

impl From<LabelPair> for [u32; 2] {
    fn from(p: LabelPair) -> Self {
        [p.l1, p.l2]
    }
}

impl From<[u32; 2]> for LabelPair {
    fn from([l1, l2]: [u32; 2]) -> Self {
        LabelPair { l1, l2 }
    }
}

impl LabelPair {
    pub fn of(triple: &[Vertex]) -> Self {
        LabelPair { l1: triple[0] + triple[1], l2: triple[1] + triple[2] }
    }

    /// Whether some `1 <= a < b < c <= n` has `a + b = l1` and `b + c = l2`.
    pub fn is_realizable(self, n: u32) -> bool {
        (2..n).any(|b| {
            let (a, c) = (self.l1 as i64 - b as i64, self.l2 as i64 - b as i64);
            a >= 1 && a < b as i64 && c > b as i64 && c <= n as i64
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionClass {
    pub label: LabelPair,
    pub edges: Vec<Edge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<PositivityVerdict>,
    /// Whether the verdict re-verified independently.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionTable {
    pub n: u32,
    /// Classes in increasing label order.
    pub classes: Vec<PartitionClass>,
}

/// Groups the triples of `[n]` by label and checks the partition properties.
pub fn build_partition(n: u32) -> Result<PartitionTable> {
    if n < 3 {
        return Err(Error::NTooSmall(n));
    }
    let h = complete_uniform(n, 3)?;
    let mut groups: BTreeMap<LabelPair, Vec<Edge>> = BTreeMap::new();
    for e in h.edges() {
        groups.entry(LabelPair::of(e)).or_default().push(e.clone());
    }
    let table = PartitionTable {
        n,
        classes: groups
            .into_iter()
            .map(|(label, edges)| PartitionClass { label, edges, verdict: None, verified: None })
            .collect(),
    };
    table.check(&h)?;
    Ok(table)
}

impl PartitionTable {
    /// Classes are matchings, pairwise disjoint, and cover every triple.
    pub fn check(&self, complete: &Hypergraph) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDecomposition(msg));
        let mut seen: BTreeSet<&Edge> = BTreeSet::new();
        for class in &self.classes {
            let mut used: BTreeSet<Vertex> = BTreeSet::new();
            for e in &class.edges {
                if LabelPair::of(e) != class.label {
                    return bad(format!("{e:?} filed under {:?}", class.label));
                }
                if e.iter().any(|v| !used.insert(*v)) {
                    return bad(format!("class {:?} is not a matching", class.label));
                }
                if !seen.insert(e) {
                    return bad(format!("{e:?} lies in two classes"));
                }
            }
        }
        if seen.len() != complete.num_edges() || complete.edges().iter().any(|e| !seen.contains(e)) {
            return bad(format!("classes cover {} of {} triples", seen.len(), complete.num_edges()));
        }
        Ok(())
    }

    pub fn label_count(&self) -> usize {
        self.classes.len()
    }
}

/// Number of realized label pairs, by enumeration.
pub fn count_labels(n: u32) -> Result<u64> {
    if n < 3 {
        return Err(Error::NTooSmall(n));
    }
    let mut labels = BTreeSet::new();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                labels.insert((a + b, b + c));
            }
        }
    }
    Ok(labels.len() as u64)
}

/// `(3n^2 - 15n + 20) / 2`; the numerator is even because `n(n - 5)` is.
pub fn closed_formula(n: u64) -> u64 {
    let numerator = 3 * n * n + 20 - 15 * n;
    debug_assert_eq!(numerator % 2, 0);
    numerator / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanMode {
    /// Certify every class against all triples of `[n]`.
    Full,
    /// Certify each class against the triples left after removing the
    /// classes with smaller labels.
    Residual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub n: u32,
    pub mode: ScanMode,
    pub classes: Vec<PartitionClass>,
    /// Labels whose class came back not positive.
    pub counterexamples: Vec<LabelPair>,
    pub all_verified: bool,
}

/// Certifies every class; classes run in parallel.
pub fn scan_conjecture(n: u32, mode: ScanMode) -> Result<ScanReport> {
    let table = build_partition(n)?;
    let h = complete_uniform(n, 3)?;
    let index_of = |e: &Edge| h.index_of(e).expect("class edges are triples of [n]");

    // For the residual mode, class i sees its own edges plus those of later classes.
    let suffixes: Vec<BTreeSet<usize>> = match mode {
        ScanMode::Full => Vec::new(),
        ScanMode::Residual => {
            let mut acc = BTreeSet::new();
            let mut out: Vec<BTreeSet<usize>> = table
                .classes
                .iter()
                .rev()
                .map(|c| {
                    acc.extend(c.edges.iter().map(index_of));
                    acc.clone()
                })
                .collect();
            out.reverse();
            out
        }
    };

    let classes: Vec<PartitionClass> = table
        .classes
        .par_iter()
        .enumerate()
        .map(|(i, class)| -> Result<PartitionClass> {
            let target = match mode {
                ScanMode::Full => h.clone(),
                ScanMode::Residual => h.restrict_edges(&suffixes[i])?,
            };
            let members: BTreeSet<usize> =
                class.edges.iter().map(|e| target.index_of(e).expect("class edges survive")).collect();
            let verdict = positive::certify_positive(&target, &members)?;
            let verified = positive::verify_verdict(&target, &members, &verdict)?;
            Ok(PartitionClass { verdict: Some(verdict), verified: Some(verified), ..class.clone() })
        })
        .collect::<Result<_>>()?;

    let counterexamples = classes
        .iter()
        .filter(|c| matches!(c.verdict, Some(PositivityVerdict::NotPositive { .. })))
        .map(|c| c.label)
        .collect();
    let all_verified = classes.iter().all(|c| c.verified == Some(true));
    Ok(ScanReport { n, mode, classes, counterexamples, all_verified })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelReport {
    pub n: u32,
    pub edges: usize,
    /// Parts of the certified decomposition built from the classes.
    pub parts: usize,
    /// Nonempty classes that went in as a single part.
    pub whole_classes: usize,
    /// Nonempty classes that had to be split into several parts.
    pub split_classes: usize,
    pub formula: u64,
    pub within_formula: bool,
}

/// Upper bound for the pmd of a 3-uniform `h` from peeling the label classes
/// in increasing order.
///
/// Each class, restricted to the edges of `h`, is tried as one part against
/// the current residual. A class that is not positive there is split into
/// greedy positive sub-matchings, so the result is always a certified
/// decomposition whatever the status of the classes.
pub fn peel_decomposition(h: &Hypergraph) -> Result<(PmdDecomposition, PeelReport)> {
    if h.require_uniform()? != 3 {
        return Err(Error::NotUniform);
    }
    if h.num_edges() == 0 {
        return Err(Error::NoEdges);
    }
    let n = h.num_vertices();
    let mut classes: BTreeMap<LabelPair, Vec<usize>> = BTreeMap::new();
    for (i, e) in h.edges().iter().enumerate() {
        classes.entry(LabelPair::of(e)).or_default().push(i);
    }
    let mut remaining: BTreeSet<usize> = (0..h.num_edges()).collect();
    let mut parts = Vec::new();
    let mut certificates = Vec::new();
    let (mut whole, mut split) = (0, 0);
    for class in classes.values() {
        let mut pending: Vec<usize> = class.clone();
        let mut first = true;
        while !pending.is_empty() {
            let residual: Vec<usize> = remaining.iter().copied().collect();
            let edges: Vec<Edge> = residual.iter().map(|&e| h.edges()[e].clone()).collect();
            let certify = |part: &BTreeSet<usize>| {
                positive::certify_edges(n, &edges, |j| part.contains(&residual[j])).certificate().cloned()
            };
            let all: BTreeSet<usize> = pending.iter().copied().collect();
            let (part, cert): (BTreeSet<usize>, WeightCertificate) = match certify(&all) {
                Some(cert) => (all, cert),
                None => {
                    // Greedy: keep each pending edge that leaves the part positive.
                    let mut part = BTreeSet::new();
                    let mut cert = None;
                    for &e in &pending {
                        part.insert(e);
                        match certify(&part) {
                            Some(c) => cert = Some(c),
                            None => {
                                part.remove(&e);
                            }
                        }
                    }
                    (part, cert.expect("a single edge of a clutter is positive"))
                }
            };
            if first && part.len() == class.len() {
                whole += 1;
            } else if first {
                split += 1;
            }
            first = false;
            pending.retain(|e| !part.contains(e));
            for e in &part {
                remaining.remove(e);
            }
            parts.push(part);
            certificates.push(cert);
        }
    }
    let dec = PmdDecomposition { parts, certificates, mode: PmdMode::Greedy };
    let formula = closed_formula(n as u64);
    let report = PeelReport {
        n,
        edges: h.num_edges(),
        parts: dec.p(),
        whole_classes: whole,
        split_classes: split,
        formula,
        within_formula: dec.p() as u64 <= formula,
    };
    Ok((dec, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_hypergraphs() {
        let h = complete_uniform(5, 3).unwrap();
        assert_eq!(h.num_edges(), 10);
        assert_eq!(h.edges()[0], vec![1, 2, 3]);
        assert_eq!(h.edges()[9], vec![3, 4, 5]);
        assert_eq!(complete_uniform(4, 4).unwrap().num_edges(), 1);
        assert!(complete_uniform(2, 3).is_err());
    }

    #[test]
    fn small_partitions() {
        let t3 = build_partition(3).unwrap();
        assert_eq!(t3.classes.len(), 1);
        assert_eq!(t3.classes[0].label, LabelPair { l1: 3, l2: 5 });
        assert_eq!(t3.classes[0].edges, vec![vec![1, 2, 3]]);
        assert_eq!(build_partition(4).unwrap().classes.len(), 4);
        let t5 = build_partition(5).unwrap();
        assert_eq!(t5.classes.len(), 10);
        assert!(t5.classes.iter().all(|c| c.label.is_realizable(5)));
        assert_eq!(build_partition(2), Err(Error::NTooSmall(2)));
    }

    #[test]
    fn counts() {
        assert_eq!(count_labels(3).unwrap(), 1);
        assert_eq!(count_labels(6).unwrap(), 19);
        assert_eq!(count_labels(10).unwrap(), 85);
        assert_eq!(closed_formula(10), 85);
        assert_eq!(closed_formula(4), 4);
    }

    #[test]
    fn scan_small() {
        let r = scan_conjecture(3, ScanMode::Full).unwrap();
        assert!(r.classes[0].verdict.as_ref().unwrap().is_positive());
        assert!(r.all_verified);

        let r = scan_conjecture(4, ScanMode::Full).unwrap();
        assert_eq!(r.classes.len(), 4);
        assert!(r.all_verified);
        let r = scan_conjecture(5, ScanMode::Residual).unwrap();
        assert!(r.all_verified);
    }

    #[test]
    fn peeling_is_certified() {
        let h = complete_uniform(6, 3).unwrap();
        let (dec, report) = peel_decomposition(&h).unwrap();
        dec.verify(&h).unwrap();
        assert_eq!(report.parts, dec.p());
        assert!(report.parts >= h.max_degree());
    }

    #[test]
    fn label_json() {
        let json = serde_json::to_string(&LabelPair { l1: 3, l2: 5 }).unwrap();
        assert_eq!(json, "[3,5]");
    }
}
