use serde::{Deserialize, Serialize};

use super::obstruction::{obstruction_search, ObstructionWitness};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::pmd::{self, PmdMode, SearchBudget};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StatusOptions {
    /// Run the exact pmd search with this budget to sharpen the upper bound.
    pub budget: Option<SearchBudget>,
    /// Largest apex set tried by the obstruction search; defaults to `n - k + 1`.
    pub max_c: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Primality {
    Prime,
    NotPrime,
    /// Neither sufficient condition applies; this is not a negative claim.
    Unknown,
}

/// Closed interval of ranks; `empty` when `from > to`, as happens for tiny
/// hypergraphs whose pmd already exceeds the generic rank bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibleRange {
    pub from: u128,
    pub to: u128,
    pub empty: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatusReport {
    pub n: u32,
    pub k: usize,
    pub d: usize,
    pub pmd_lower: usize,
    pub pmd_upper: usize,
    pub pmd_source: PmdMode,
    pub obstruction_value: Option<usize>,
    pub obstruction: Option<ObstructionWitness>,
    /// `pmd_upper <= d`.
    pub ci_known: bool,
    /// `pmd_upper <= d - 1`.
    pub prime_known: bool,
    /// `obstruction_value > d`.
    pub not_prime_known: bool,
    pub primality: Primality,
    /// Ranks for which the coordinate section of the symmetric tensor variety
    /// is irreducible: `[pmd_upper + 1, C(n + k - 1, k) - n]`.
    pub irreducible_range: IrreducibleRange,
}

pub fn status_report(h: &Hypergraph, d: usize, options: StatusOptions) -> Result<StatusReport> {
    let k = h.require_uniform()?;
    if d == 0 {
        return Err(Error::InvalidD(d));
    }
    let n = h.num_vertices();
    let bounds = pmd::pmd_bounds(h, options.budget)?;
    let (pmd_upper, pmd_source) = match bounds.exact {
        Some(p) if p < bounds.upper => (p, PmdMode::Exact),
        _ => (bounds.upper, bounds.upper_source),
    };
    let max_c = options.max_c.unwrap_or(n as usize + 1 - k);
    let obstruction = obstruction_search(h, max_c)?;
    let obstruction_value = obstruction.as_ref().map(|w| w.value);

    let ci_known = pmd_upper <= d;
    let prime_known = pmd_upper < d;
    let not_prime_known = obstruction_value.is_some_and(|v| v > d);
    if prime_known && not_prime_known {
        return Err(Error::ContradictionDetected);
    }
    let primality = match (prime_known, not_prime_known) {
        (true, _) => Primality::Prime,
        (_, true) => Primality::NotPrime,
        _ => Primality::Unknown,
    };

    let top = checked_binomial(n as u128 + k as u128 - 1, k as u128)
        .and_then(|b| b.checked_sub(n as u128))
        .ok_or_else(|| Error::Overflow(format!("C({}, {}) - {}", n as usize + k - 1, k, n)))?;
    let from = pmd_upper as u128 + 1;
    let irreducible_range = IrreducibleRange { from, to: top, empty: from > top };

    Ok(StatusReport {
        n,
        k,
        d,
        pmd_lower: bounds.lower,
        pmd_upper,
        pmd_source,
        obstruction_value,
        obstruction,
        ci_known,
        prime_known,
        not_prime_known,
        primality,
        irreducible_range,
    })
}

fn checked_binomial(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    // Each prefix product is itself a binomial coefficient, so the division is exact.
    (0..k).try_fold(1u128, |acc, i| acc.checked_mul(n - i).map(|x| x / (i + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: i64, edges: &[&[i64]]) -> Hypergraph {
        let edges: Vec<Vec<i64>> = edges.iter().map(|e| e.to_vec()).collect();
        Hypergraph::validate(n, &edges).unwrap()
    }

    #[test]
    fn tree_is_prime_above_max_degree() {
        let tree = h(7, &[&[1, 2, 3], &[3, 4, 5], &[5, 6, 7]]);
        let r = status_report(&tree, 3, StatusOptions::default()).unwrap();
        assert_eq!(r.pmd_upper, 2);
        assert!(r.ci_known && r.prime_known && !r.not_prime_known);
        assert_eq!(r.primality, Primality::Prime);
        // C(9, 3) - 7 = 77
        assert_eq!(r.irreducible_range, IrreducibleRange { from: 3, to: 77, empty: false });

        let r = status_report(&tree, 2, StatusOptions::default()).unwrap();
        assert!(r.ci_known && !r.prime_known);
        // the centre of the tree gives an obstruction of value 3 > 2
        assert_eq!(r.obstruction_value, Some(3));
        assert_eq!(r.primality, Primality::NotPrime);

        // no two triples of [5] are disjoint, so every part is a single edge
        let complete = crate::family::complete_uniform(5, 3).unwrap();
        let r = status_report(&complete, 8, StatusOptions::default()).unwrap();
        assert_eq!((r.pmd_upper, r.obstruction_value), (10, Some(7)));
        assert!(!r.ci_known && !r.prime_known && !r.not_prime_known);
        assert_eq!(r.primality, Primality::Unknown);
    }

    #[test]
    fn big_star_is_not_prime() {
        let star = h(9, &[&[1, 2, 3], &[1, 4, 5], &[1, 6, 7], &[1, 8, 9]]);
        let r = status_report(&star, 3, StatusOptions::default()).unwrap();
        assert!(r.obstruction_value.unwrap() >= 5);
        assert!(r.not_prime_known && !r.prime_known);
        assert_eq!(r.primality, Primality::NotPrime);
    }

    #[test]
    fn binomial_overflow_is_detected() {
        assert_eq!(checked_binomial(10, 3), Some(120));
        assert_eq!(checked_binomial(200, 100), None);
    }
}
