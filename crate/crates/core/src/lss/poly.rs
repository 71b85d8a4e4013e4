use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::hypergraph::Vertex;
use crate::rational::Rational;

/// The variable `y_{vertex, slot}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub vertex: Vertex,
    pub slot: u32,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y_{{{},{}}}", self.vertex, self.slot)
    }
}

/// A monomial as a map from variables to positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: BTreeMap<Var, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn product(vars: impl IntoIterator<Item = Var>) -> Self {
        let mut m = Monomial::one();
        for v in vars {
            *m.exponents.entry(v).or_insert(0) += 1;
        }
        m
    }

    pub fn exponents(&self) -> &BTreeMap<Var, u32> {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.exponents.values().sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.values().all(|&e| e == 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents.iter().all(|(v, e)| other.exponents.get(v).is_some_and(|f| f >= e))
    }
}

// Multiplying monomials adds exponents.
#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &Monomial {
    type Output = Monomial;

    fn mul(self, rhs: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (v, e) in &rhs.exponents {
            *out.exponents.entry(*v).or_insert(0) += e;
        }
        out
    }
}

/// Degree first, then the first variable (in `(vertex, slot)` order) whose
/// exponents differ decides: the larger exponent is the larger monomial.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let mut a = self.exponents.iter().peekable();
            let mut b = other.exponents.iter().peekable();
            loop {
                match (a.peek(), b.peek()) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal if ea != eb => return ea.cmp(eb),
                        Ordering::Equal => {
                            a.next();
                            b.next();
                        }
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(v, &e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A polynomial with nonzero rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn monomial(m: Monomial, coeff: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, coeff);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the leading monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn scale_by(&self, m: &Monomial, coeff: &Rational) -> Polynomial {
        if coeff.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(t, c)| (t * m, c * coeff)).collect() }
    }

    /// Value at the point where every variable is 1.
    pub fn eval_ones(&self) -> Rational {
        self.terms.values().sum()
    }
}

impl FromIterator<Monomial> for Polynomial {
    fn from_iter<I: IntoIterator<Item = Monomial>>(iter: I) -> Self {
        let mut p = Polynomial::zero();
        for m in iter {
            p.add_term(m, Rational::one());
        }
        p
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            for (n, e) in &rhs.terms {
                out.add_term(m * n, c * e);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, sign) {
                (0, "+") => {}
                (0, _) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "{m}")?;
            } else if m.exponents().is_empty() {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a} {m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::from_int;

    fn y(vertex: Vertex, slot: u32) -> Var {
        Var { vertex, slot }
    }

    #[test]
    fn ordering_is_degree_first() {
        let a = Monomial::product([y(1, 1), y(2, 1)]);
        let b = Monomial::product([y(1, 2), y(2, 2)]);
        let c = Monomial::product([y(1, 1)]);
        assert!(a > b);
        assert!(b > c);
        let sq = Monomial::product([y(2, 1), y(2, 1)]);
        assert!(!sq.is_squarefree());
        assert!(a > sq);
    }

    #[test]
    fn arithmetic_and_display() {
        let p: Polynomial = [Monomial::product([y(1, 1), y(2, 1)]), Monomial::product([y(1, 2), y(2, 2)])]
            .into_iter()
            .collect();
        assert_eq!(p.to_string(), "y_{1,1} y_{2,1} + y_{1,2} y_{2,2}");
        assert!((&p - &p).is_zero());
        let sq = &p * &p;
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.eval_ones(), from_int(4));
        assert_eq!((-&p).to_string(), "-y_{1,1} y_{2,1} - y_{1,2} y_{2,2}");
    }
}
