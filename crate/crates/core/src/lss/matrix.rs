use std::collections::HashMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::poly::{Monomial, Polynomial, Var};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::rational::Rational;

/// The `u × d` matrix with entry `(i, j) = Π_{ℓ∈A_i} y_{ℓ,j}`, where
/// `A_1, ..., A_u` are the links of the pivot in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationMatrix {
    pub pivot: Vertex,
    pub k: usize,
    pub d: usize,
    pub rows: Vec<Vec<Vertex>>,
}

impl PresentationMatrix {
    pub fn new(h: &Hypergraph, pivot: Vertex, d: usize) -> Result<Self> {
        let k = h.require_uniform()?;
        if d == 0 {
            return Err(Error::InvalidD(d));
        }
        if pivot == 0 || pivot > h.num_vertices() {
            return Err(Error::VertexOutOfRange { vertex: pivot as i64, n: h.num_vertices() });
        }
        let rows: Vec<Vec<Vertex>> = h
            .incident_edges(pivot)
            .into_iter()
            .map(|e| h.edges()[e].iter().copied().filter(|&v| v != pivot).collect())
            .collect();
        if rows.is_empty() {
            return Err(Error::PivotIsolated(pivot));
        }
        let mut rows = rows;
        rows.sort();
        Ok(PresentationMatrix { pivot, k, d, rows })
    }

    /// Smallest vertex of maximum degree.
    pub fn default_pivot(h: &Hypergraph) -> Option<Vertex> {
        let degrees = h.degrees();
        let max = *degrees.iter().max()?;
        if max == 0 {
            return None;
        }
        degrees.iter().position(|&d| d == max).map(|i| i as Vertex + 1)
    }

    pub fn u(&self) -> usize {
        self.rows.len()
    }

    /// Entry in row `i` and column `j`, both zero-based; column `j` uses slot `j + 1`.
    pub fn entry(&self, i: usize, j: usize) -> Monomial {
        Monomial::product(self.rows[i].iter().map(|&v| Var { vertex: v, slot: j as u32 + 1 }))
    }

    /// `Σ_j A(i, j) · y_{pivot, j}`, which equals the generator of `A_i ∪ {pivot}`.
    pub fn row_generator(&self, i: usize) -> Polynomial {
        (0..self.d)
            .map(|j| &self.entry(i, j) * &Monomial::product([Var { vertex: self.pivot, slot: j as u32 + 1 }]))
            .collect()
    }

    /// Determinant of the first `t` rows and columns.
    pub fn leading_minor(&self, t: usize) -> Result<Polynomial> {
        let max = self.u().min(self.d);
        if t == 0 || t > max {
            return Err(Error::TOutOfRange { t, max });
        }
        let mut memo = HashMap::new();
        Ok(self.expand(t, 0, &mut memo))
    }

    // Laplace expansion along row `popcount(used)` over the unused columns.
    fn expand(&self, t: usize, used: u64, memo: &mut HashMap<u64, Polynomial>) -> Polynomial {
        let row = used.count_ones() as usize;
        if row == t {
            return Polynomial::monomial(Monomial::one(), Rational::one());
        }
        if let Some(p) = memo.get(&used) {
            return p.clone();
        }
        let mut out = Polynomial::zero();
        let mut position = 0;
        for col in 0..t {
            if used >> col & 1 == 1 {
                continue;
            }
            let sign = if position % 2 == 0 { Rational::one() } else { -Rational::one() };
            let rest = self.expand(t, used | 1 << col, memo);
            out = &out + &rest.scale_by(&self.entry(row, col), &sign);
            position += 1;
        }
        memo.insert(used, out.clone());
        out
    }
}

pub fn leading_minor(m: &PresentationMatrix, t: usize) -> Result<Polynomial> {
    m.leading_minor(t)
}

/// Nonzero, and every support monomial is squarefree with exactly `k - 1`
/// variables in each slot `1..=t` and none elsewhere. Such a polynomial has
/// no support monomial divisible by `y_{i_1 j} ⋯ y_{i_k j}`, so it lies
/// outside the ideal.
pub fn support_check(minor: &Polynomial, k: usize, t: usize) -> bool {
    !minor.is_zero()
        && minor.terms().all(|(m, _)| {
            let mut per_slot = vec![0usize; t + 1];
            for (v, &e) in m.exponents() {
                if e != 1 || v.slot == 0 || v.slot as usize > t {
                    return false;
                }
                per_slot[v.slot as usize] += 1;
            }
            per_slot[1..].iter().all(|&c| c == k - 1)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lss::generator;

    fn h(n: i64, edges: &[&[i64]]) -> Hypergraph {
        let edges: Vec<Vec<i64>> = edges.iter().map(|e| e.to_vec()).collect();
        Hypergraph::validate(n, &edges).unwrap()
    }

    #[test]
    fn single_edge_matrix() {
        let m = PresentationMatrix::new(&h(3, &[&[1, 2, 3]]), 3, 2).unwrap();
        assert_eq!(m.rows, vec![vec![1, 2]]);
        assert_eq!(m.entry(0, 0).to_string(), "y_{1,1} y_{2,1}");
        assert_eq!(m.entry(0, 1).to_string(), "y_{1,2} y_{2,2}");
        let minor = m.leading_minor(1).unwrap();
        assert_eq!(minor.to_string(), "y_{1,1} y_{2,1}");
        assert!(support_check(&minor, 3, 1));
        assert_eq!(m.leading_minor(2), Err(Error::TOutOfRange { t: 2, max: 1 }));
    }

    #[test]
    fn two_by_two_minor() {
        let g = h(5, &[&[1, 2, 5], &[3, 4, 5]]);
        let m = PresentationMatrix::new(&g, 5, 2).unwrap();
        let minor = m.leading_minor(2).unwrap();
        assert_eq!(minor.to_string(), "y_{1,1} y_{2,1} y_{3,2} y_{4,2} - y_{1,2} y_{2,2} y_{3,1} y_{4,1}");
        assert!(support_check(&minor, 3, 2));
    }

    #[test]
    fn rows_follow_links() {
        let g = h(5, &[&[1, 2, 3], &[3, 4, 5]]);
        let m = PresentationMatrix::new(&g, 3, 3).unwrap();
        assert_eq!(m.rows, vec![vec![1, 2], vec![4, 5]]);
        for i in 0..m.u() {
            let mut edge = m.rows[i].clone();
            edge.push(3);
            edge.sort();
            assert_eq!(m.row_generator(i), generator(&edge, 3));
        }
        assert_eq!(PresentationMatrix::default_pivot(&g), Some(3));
    }

    #[test]
    fn pivot_errors() {
        let g = h(4, &[&[1, 2, 3]]);
        assert_eq!(PresentationMatrix::new(&g, 4, 2), Err(Error::PivotIsolated(4)));
        assert_eq!(PresentationMatrix::new(&g, 1, 0), Err(Error::InvalidD(0)));
        let mixed = h(4, &[&[1, 2, 3], &[3, 4]]);
        assert_eq!(PresentationMatrix::new(&mixed, 3, 2), Err(Error::NotUniform));
    }

    #[test]
    fn support_check_rejects() {
        let sq = Polynomial::monomial(
            Monomial::product([Var { vertex: 1, slot: 1 }, Var { vertex: 1, slot: 1 }]),
            Rational::one(),
        );
        assert!(!support_check(&sq, 3, 1));
        assert!(!support_check(&Polynomial::zero(), 3, 1));
    }
}
