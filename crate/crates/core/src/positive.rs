//! Positive matchings and their certificates.
//!
//! A matching `M` of `H = (V, E)` is positive when some weight function
//! `w: V -> Q` makes `Σ_{i∈e} w(i)` positive on every edge of `M` and negative
//! on every other edge.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, Vertex};
use crate::lp::{self, FeasibilityVerdict, LinearSystem, Relation};
use crate::rational::{self, Rational};

/// A weight for every vertex `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightCertificate {
    #[serde(with = "rational::serde_rational_map")]
    pub weights: BTreeMap<Vertex, Rational>,
}

impl WeightCertificate {
    pub fn zeros(n: u32) -> Self {
        WeightCertificate { weights: (1..=n).map(|v| (v, Rational::zero())).collect() }
    }

    pub fn from_point(point: &[Rational]) -> Self {
        WeightCertificate {
            weights: point.iter().enumerate().map(|(i, w)| (i as Vertex + 1, w.clone())).collect(),
        }
    }

    pub fn weight(&self, v: Vertex) -> Rational {
        self.weights.get(&v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn edge_weight(&self, edge: &[Vertex]) -> Rational {
        edge.iter().map(|&v| self.weight(v)).sum()
    }

    /// Checks the sign pattern over `edges`, where `member(i)` says whether
    /// edge `i` belongs to the matching.
    pub fn certifies(&self, edges: &[Edge], member: impl Fn(usize) -> bool) -> bool {
        edges.iter().enumerate().all(|(i, e)| {
            let w = self.edge_weight(e);
            if member(i) { w.is_positive() } else { w.is_negative() }
        })
    }

    /// Checks the certificate for `matching` against all edges of `h`.
    pub fn verify(&self, h: &Hypergraph, matching: &BTreeSet<usize>) -> bool {
        self.certifies(h.edges(), |i| matching.contains(&i))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PositivityVerdict {
    Positive { certificate: WeightCertificate },
    /// Farkas multipliers over the edge rows of [`matching_system`].
    NotPositive {
        #[serde(with = "rational::serde_rational_vec")]
        farkas: Vec<Rational>,
    },
    NotAMatching { first: usize, second: usize },
}

impl PositivityVerdict {
    pub fn is_positive(&self) -> bool {
        matches!(self, PositivityVerdict::Positive { .. })
    }

    pub fn certificate(&self) -> Option<&WeightCertificate> {
        match self {
            PositivityVerdict::Positive { certificate } => Some(certificate),
            _ => None,
        }
    }
}

/// One variable per vertex (vertex `v` is variable `v - 1`), one strict row
/// per edge: `> 0` for matching edges, `< 0` otherwise.
pub fn matching_system(h: &Hypergraph, matching: &BTreeSet<usize>) -> LinearSystem {
    edge_system(h.num_vertices(), h.edges(), |i| matching.contains(&i))
}

pub(crate) fn edge_system(n: u32, edges: &[Edge], member: impl Fn(usize) -> bool) -> LinearSystem {
    let mut sys = LinearSystem::new(n as usize);
    for (i, e) in edges.iter().enumerate() {
        let relation = if member(i) { Relation::Greater } else { Relation::Less };
        sys.push_row(
            e.iter().map(|&v| (v as usize - 1, rational::from_int(1))),
            relation,
            Rational::zero(),
        )
        .expect("vertices are in range");
    }
    sys
}

pub fn certify_positive(h: &Hypergraph, matching: &BTreeSet<usize>) -> Result<PositivityVerdict> {
    if let Some((first, second)) = h.matching_conflict(matching)? {
        return Ok(PositivityVerdict::NotAMatching { first, second });
    }
    Ok(certify_edges(h.num_vertices(), h.edges(), |i| matching.contains(&i)))
}

/// Decides positivity for a set of edges already known to be a matching.
pub(crate) fn certify_edges(n: u32, edges: &[Edge], member: impl Fn(usize) -> bool) -> PositivityVerdict {
    let sys = edge_system(n, edges, member);
    match lp::solve(&sys) {
        FeasibilityVerdict::Feasible(point) => {
            PositivityVerdict::Positive { certificate: WeightCertificate::from_point(&point) }
        }
        FeasibilityVerdict::Infeasible(farkas) => PositivityVerdict::NotPositive { farkas },
    }
}

/// Re-checks every branch of a verdict from scratch.
pub fn verify_verdict(h: &Hypergraph, matching: &BTreeSet<usize>, verdict: &PositivityVerdict) -> Result<bool> {
    match verdict {
        PositivityVerdict::Positive { certificate } => {
            Ok(h.is_matching(matching)? && certificate.verify(h, matching))
        }
        PositivityVerdict::NotPositive { farkas } => {
            let sys = matching_system(h, matching);
            lp::verify(&sys, &FeasibilityVerdict::Infeasible(farkas.clone()))
        }
        PositivityVerdict::NotAMatching { first, second } => {
            let pair: BTreeSet<usize> = [*first, *second].into_iter().collect();
            Ok(first != second
                && matching.contains(first)
                && matching.contains(second)
                && !h.is_matching(&pair)?)
        }
    }
}

/// Inclusion-maximal positive matching built by scanning edges in canonical
/// order and keeping each edge that leaves the matching positive.
pub fn greedy_positive_matching(h: &Hypergraph) -> Result<(BTreeSet<usize>, WeightCertificate)> {
    greedy_on_edges(h.num_vertices(), h.edges())
}

pub(crate) fn greedy_on_edges(n: u32, edges: &[Edge]) -> Result<(BTreeSet<usize>, WeightCertificate)> {
    if edges.is_empty() {
        return Err(Error::NoEdges);
    }
    let mut chosen: BTreeSet<usize> = BTreeSet::new();
    let mut used: BTreeSet<Vertex> = BTreeSet::new();
    let mut certificate = None;
    for (i, e) in edges.iter().enumerate() {
        if e.iter().any(|v| used.contains(v)) {
            continue;
        }
        chosen.insert(i);
        match certify_edges(n, edges, |j| chosen.contains(&j)) {
            PositivityVerdict::Positive { certificate: c } => {
                used.extend(e.iter().copied());
                certificate = Some(c);
            }
            _ => {
                chosen.remove(&i);
            }
        }
    }
    // A single edge of a clutter is always positive, so the first edge stuck.
    let certificate = certificate.expect("singleton matchings of a clutter are positive");
    Ok((chosen, certificate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::from_int;

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
    fn single_edge_of_four_cycle_is_positive() {
        let g = four_cycle();
        let m = set(&[g.index_of(&[1, 2]).unwrap()]);
        let verdict = certify_positive(&g, &m).unwrap();
        assert!(verdict.is_positive());
        assert!(verify_verdict(&g, &m, &verdict).unwrap());

        // w = (1, 1, -2, -2) works as well
        let hand = WeightCertificate::from_point(&[from_int(1), from_int(1), from_int(-2), from_int(-2)]);
        assert!(hand.verify(&g, &m));
    }

    #[test]
    fn perfect_matching_of_four_cycle_is_not_positive() {
        let g = four_cycle();
        let m = set(&[g.index_of(&[1, 2]).unwrap(), g.index_of(&[3, 4]).unwrap()]);
        let verdict = certify_positive(&g, &m).unwrap();
        assert_eq!(verdict, PositivityVerdict::NotPositive { farkas: vec![from_int(1); 4] });
        assert!(verify_verdict(&g, &m, &verdict).unwrap());
    }

    #[test]
    fn empty_matching_is_positive() {
        let g = h(3, &[&[1, 2, 3]]);
        let verdict = certify_positive(&g, &BTreeSet::new()).unwrap();
        assert!(verdict.is_positive());
        let all_minus_one = WeightCertificate::from_point(&vec![from_int(-1); 3]);
        assert!(all_minus_one.verify(&g, &BTreeSet::new()));
    }

    #[test]
    fn overlapping_edges_are_reported() {
        let g = h(3, &[&[1, 2], &[2, 3]]);
        let m = set(&[0, 1]);
        let verdict = certify_positive(&g, &m).unwrap();
        assert_eq!(verdict, PositivityVerdict::NotAMatching { first: 0, second: 1 });
        assert!(verify_verdict(&g, &m, &verdict).unwrap());
        assert!(certify_positive(&g, &set(&[5])).is_err());
    }

    #[test]
    fn greedy() {
        let single = h(3, &[&[1, 2, 3]]);
        let (m, cert) = greedy_positive_matching(&single).unwrap();
        assert_eq!(m, set(&[0]));
        assert!(cert.verify(&single, &m));

        let path = h(4, &[&[1, 2], &[2, 3], &[3, 4]]);
        let (m, cert) = greedy_positive_matching(&path).unwrap();
        assert_eq!(m, set(&[path.index_of(&[1, 2]).unwrap(), path.index_of(&[3, 4]).unwrap()]));
        assert!(cert.verify(&path, &m));

        let cyc = four_cycle();
        let (m, cert) = greedy_positive_matching(&cyc).unwrap();
        assert_eq!(m.len(), 1);
        assert!(cert.verify(&cyc, &m));

        assert_eq!(greedy_positive_matching(&Hypergraph::empty(2)), Err(Error::NoEdges));
    }

    #[test]
    fn certificate_json_shape() {
        let cert = WeightCertificate::from_point(&[from_int(1), Rational::new(1.into(), 2.into())]);
        assert_eq!(serde_json::to_string(&cert).unwrap(), r#"{"1":"1/1","2":"1/2"}"#);
        let back: WeightCertificate = serde_json::from_str(r#"{"1":"1/1","2":"1/2"}"#).unwrap();
        assert_eq!(back, cert);

        let verdict = PositivityVerdict::Positive { certificate: cert };
        let json = serde_json::to_string(&verdict).unwrap();
        assert_eq!(serde_json::from_str::<PositivityVerdict>(&json).unwrap(), verdict);
    }
}
