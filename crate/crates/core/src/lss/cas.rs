use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::generators;
use super::poly::{Polynomial, Var};
use crate::error::Result;
use crate::hypergraph::Hypergraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dialect {
    Macaulay2,
    Singular,
}

impl Dialect {
    fn var(self, v: Var) -> String {
        match self {
            Dialect::Macaulay2 => format!("y_({},{})", v.vertex, v.slot),
            Dialect::Singular => format!("y({})({})", v.vertex, v.slot),
        }
    }

    fn poly(self, p: &Polynomial) -> String {
        let mut out = String::new();
        for (i, (m, c)) in p.terms().enumerate() {
            let coeff = c.to_string();
            let (sign, abs) = match coeff.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => (if i == 0 { "" } else { "+" }, coeff),
            };
            out.push_str(sign);
            let mut factors: Vec<String> = m
                .exponents()
                .iter()
                .map(|(&v, &e)| if e == 1 { self.var(v) } else { format!("{}^{e}", self.var(v)) })
                .collect();
            if abs != "1" || factors.is_empty() {
                factors.insert(0, abs);
            }
            out.push_str(&factors.join("*"));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Three lines: the ring, the ideal, and a primality and complete
/// intersection query. Output depends only on the arguments.
pub fn emit_cas_script(h: &Hypergraph, d: usize, dialect: Dialect, characteristic: u64) -> Result<String> {
    let gens: Vec<String> = generators(h, d)?.iter().map(|p| dialect.poly(p)).collect();
    let n = h.num_vertices();
    let mut s = String::new();
    match dialect {
        Dialect::Macaulay2 => {
            let field = if characteristic == 0 { "QQ".to_string() } else { format!("ZZ/{characteristic}") };
            writeln!(s, "R = {field}[y_(1,1)..y_({n},{d})];").unwrap();
            let list = if gens.is_empty() { "0_R".to_string() } else { gens.join(", ") };
            writeln!(s, "I = ideal({list});").unwrap();
            writeln!(s, "print(isPrime I, codim I == numgens I);").unwrap();
        }
        Dialect::Singular => {
            writeln!(s, "ring R = {characteristic},(y(1..{n})(1..{d})),dp;").unwrap();
            let list = if gens.is_empty() { "0".to_string() } else { gens.join(", ") };
            writeln!(s, "ideal I = {list};").unwrap();
            writeln!(
                s,
                "LIB \"primdec.lib\"; list P = primdecGTZ(I); print(size(P) == 1 && size(reduce(P[1][1], std(I))) == 0 \
                 && size(reduce(P[1][2], std(P[1][1]))) == 0); print(nvars(R) - dim(std(I)) == ncols(I));"
            )
            .unwrap();
        }
    }
    Ok(s)
}
