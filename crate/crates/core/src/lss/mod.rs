//! Lovász–Saks–Schrijver ideals `L_H(d)`, generated by
//! `f_e = Σ_{j=1}^d Π_{i∈e} y_{ij}` over the edges of `H`.
//!
//! Nothing here decides primality. The module builds the generators and the
//! presentation matrix, checks minors, searches for `H_{W,c}` obstructions,
//! and chains known sufficient conditions into a status report.

mod cas;
mod matrix;
mod obstruction;
mod poly;
mod status;

pub use cas::{emit_cas_script, Dialect};
pub use matrix::{leading_minor, support_check, PresentationMatrix};
pub use obstruction::{obstruction_search, ObstructionWitness};
pub use poly::{Monomial, Polynomial, Var};
pub use status::{status_report, IrreducibleRange, Primality, StatusOptions, StatusReport};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// One generator per edge, in canonical edge order.
pub fn generators(h: &Hypergraph, d: usize) -> Result<Vec<Polynomial>> {
    if d == 0 {
        return Err(Error::InvalidD(d));
    }
    Ok(h.edges().iter().map(|e| generator(e, d)).collect())
}

pub(crate) fn generator(edge: &[u32], d: usize) -> Polynomial {
    (1..=d as u32).map(|j| Monomial::product(edge.iter().map(|&i| Var { vertex: i, slot: j }))).collect()
}
