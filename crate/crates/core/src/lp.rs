//! Exact feasibility of systems of strict and weak linear inequalities.
//!
//! A system `a_i · x  (>, <, >=, <=)  b_i` is first rewritten in `>=` form
//! `c_i · x >= d_i` and homogenized with an extra variable `t`:
//!
//! ```text
//!     c_i · x - d_i t >= s_i      (s_i = 1 for strict rows, 0 for weak rows)
//!                   t >= 1
//! ```
//!
//! which is feasible exactly when the original system is (scale any solution
//! so the smallest strict slack is at least one). Writing that system as
//! `G z >= h` with `h >= 0`, the solver runs a phase-one simplex on the
//! alternative system `Gᵀ λ = 0, hᵀ λ = 1, λ >= 0`. A feasible `λ` is a Farkas
//! certificate; otherwise the phase-one dual yields `z` with `G z >= h`.
//! Pivoting follows Bland's rule, so results are deterministic.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">")]
    Greater,
    #[serde(rename = "<")]
    Less,
    #[serde(rename = ">=")]
    GreaterEq,
    #[serde(rename = "<=")]
    LessEq,
}

impl Relation {
    pub fn is_strict(self) -> bool {
        matches!(self, Relation::Greater | Relation::Less)
    }

    fn is_upper(self) -> bool {
        matches!(self, Relation::Less | Relation::LessEq)
    }

    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Greater => lhs > rhs,
            Relation::Less => lhs < rhs,
            Relation::GreaterEq => lhs >= rhs,
            Relation::LessEq => lhs <= rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Greater => ">",
            Relation::Less => "<",
            Relation::GreaterEq => ">=",
            Relation::LessEq => "<=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    /// Sparse coefficients, sorted by variable, no zeros, no repeats.
    pub coeffs: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Row {
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        self.coeffs.iter().map(|(j, c)| c * &point[*j]).sum()
    }

    /// Coefficients and right-hand side of the equivalent `>=`/`>` row.
    fn lower_form(&self) -> (Vec<(usize, Rational)>, Rational) {
        if self.relation.is_upper() {
            (self.coeffs.iter().map(|(j, c)| (*j, -c)).collect(), -&self.rhs)
        } else {
            (self.coeffs.clone(), self.rhs.clone())
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearSystem {
    num_vars: usize,
    rows: Vec<Row>,
}

impl LinearSystem {
    pub fn new(num_vars: usize) -> Self {
        LinearSystem { num_vars, rows: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Adds a row; repeated variables are summed and zero coefficients dropped.
    pub fn push_row(
        &mut self,
        coeffs: impl IntoIterator<Item = (usize, Rational)>,
        relation: Relation,
        rhs: Rational,
    ) -> Result<()> {
        let mut merged: std::collections::BTreeMap<usize, Rational> = Default::default();
        for (j, c) in coeffs {
            if j >= self.num_vars {
                return Err(Error::VariableOutOfRange { index: j, num_vars: self.num_vars });
            }
            *merged.entry(j).or_insert_with(Rational::zero) += c;
        }
        let coeffs = merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        self.rows.push(Row { coeffs, relation, rhs });
        Ok(())
    }
}

impl fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} variables, {} rows", self.num_vars, self.rows.len())?;
        for (i, row) in self.rows.iter().enumerate() {
            write!(f, "r{i}:")?;
            if row.coeffs.is_empty() {
                write!(f, " 0")?;
            }
            for (pos, (j, c)) in row.coeffs.iter().enumerate() {
                let sign = if c.is_negative() { "-" } else if pos == 0 { "" } else { "+" };
                let mag = c.abs();
                if mag.is_one() {
                    write!(f, " {sign}x{j}")?;
                } else {
                    write!(f, " {sign}{mag}*x{j}")?;
                }
            }
            writeln!(f, " {} {}", row.relation.symbol(), row.rhs)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FeasibilityVerdict {
    Feasible(Vec<Rational>),
    /// Nonnegative multipliers, one per row, scaled to coprime integers.
    Infeasible(Vec<Rational>),
}

impl FeasibilityVerdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityVerdict::Feasible(_))
    }
}

pub fn solve(sys: &LinearSystem) -> FeasibilityVerdict {
    if sys.rows.is_empty() {
        return FeasibilityVerdict::Feasible(vec![Rational::zero(); sys.num_vars]);
    }
    let m = sys.rows.len();
    let t = sys.num_vars;
    // Columns of the alternative system: one per homogenized row (m rows plus
    // the t >= 1 row). Equations: one per z-variable, plus hᵀλ = 1.
    let ncols = m + 1;
    let neqs = sys.num_vars + 2;
    let mut a = vec![vec![Rational::zero(); ncols]; neqs];
    for (i, row) in sys.rows.iter().enumerate() {
        let (coeffs, rhs) = row.lower_form();
        for (j, c) in coeffs {
            a[j][i] = c;
        }
        a[t][i] = -rhs;
        if row.relation.is_strict() {
            a[t + 1][i] = Rational::one();
        }
    }
    a[t][m] = Rational::one();
    a[t + 1][m] = Rational::one();
    let mut b = vec![Rational::zero(); neqs];
    b[t + 1] = Rational::one();

    let outcome = PhaseOne::new(a, b).run();
    match outcome {
        PhaseOneOutcome::Feasible(lambda) => {
            FeasibilityVerdict::Infeasible(rational::to_primitive_integers(&lambda[..m]))
        }
        PhaseOneOutcome::Infeasible(y) => {
            // y = (z', s) with G z' + h s <= 0 and s > 0, so z = -z'/s.
            let s = &y[t + 1];
            let z: Vec<Rational> = y[..=t].iter().map(|v| -(v / s)).collect();
            let point = z[..t].iter().map(|v| v / &z[t]).collect();
            FeasibilityVerdict::Feasible(point)
        }
    }
}

/// Re-checks a verdict with rational arithmetic only.
pub fn verify(sys: &LinearSystem, verdict: &FeasibilityVerdict) -> Result<bool> {
    match verdict {
        FeasibilityVerdict::Feasible(point) => {
            if point.len() != sys.num_vars {
                return Err(Error::ShapeMismatch(format!(
                    "point has {} coordinates, system has {} variables",
                    point.len(),
                    sys.num_vars
                )));
            }
            Ok(sys
                .rows
                .iter()
                .all(|row| row.relation.holds(&row.evaluate(point), &row.rhs)))
        }
        FeasibilityVerdict::Infeasible(mult) => {
            if mult.len() != sys.rows.len() {
                return Err(Error::ShapeMismatch(format!(
                    "{} multipliers for {} rows",
                    mult.len(),
                    sys.rows.len()
                )));
            }
            if mult.iter().any(Signed::is_negative) {
                return Ok(false);
            }
            // Combine the rows oriented as `<=`/`<`: the left side must cancel
            // and the right side must be negative, or zero with a strict row used.
            let mut combo = vec![Rational::zero(); sys.num_vars];
            let mut rhs = Rational::zero();
            let mut strict_used = false;
            for (row, y) in sys.rows.iter().zip(mult) {
                if y.is_zero() {
                    continue;
                }
                let sign = if row.relation.is_upper() { Rational::one() } else { -Rational::one() };
                for (j, c) in &row.coeffs {
                    combo[*j] += &sign * c * y;
                }
                rhs += &sign * &row.rhs * y;
                strict_used |= row.relation.is_strict();
            }
            Ok(combo.iter().all(Zero::is_zero)
                && (rhs.is_negative() || (rhs.is_zero() && strict_used)))
        }
    }
}

/// Rewrites `> 0` as `>= 1` and `< 0` as `<= -1`. Feasibility is unchanged
/// because the input is a homogeneous cone condition.
pub fn strict_homogeneous_normalize(sys: &LinearSystem) -> Result<LinearSystem> {
    let mut out = LinearSystem::new(sys.num_vars);
    for (i, row) in sys.rows.iter().enumerate() {
        if !row.rhs.is_zero() || !row.relation.is_strict() {
            return Err(Error::NotHomogeneousStrict(i));
        }
        let (relation, rhs) = match row.relation {
            Relation::Greater => (Relation::GreaterEq, Rational::one()),
            _ => (Relation::LessEq, -Rational::one()),
        };
        out.rows.push(Row { coeffs: row.coeffs.clone(), relation, rhs });
    }
    Ok(out)
}

enum PhaseOneOutcome {
    /// A nonnegative solution of `A λ = b`.
    Feasible(Vec<Rational>),
    /// Phase-one dual `y` with `Aᵀ y <= 0` and `bᵀ y > 0`.
    Infeasible(Vec<Rational>),
}

/// Dense tableau for `min 1ᵀ a  s.t.  A λ + a = b,  λ, a >= 0` with `b >= 0`.
struct PhaseOne {
    rows: usize,
    structural: usize,
    /// `rows` rows of `structural + rows` entries followed by the right-hand side.
    tableau: Vec<Vec<Rational>>,
    basis: Vec<usize>,
}

impl PhaseOne {
    fn new(a: Vec<Vec<Rational>>, b: Vec<Rational>) -> Self {
        let rows = a.len();
        let structural = a.first().map_or(0, Vec::len);
        let tableau = a
            .into_iter()
            .zip(b)
            .enumerate()
            .map(|(i, (mut row, rhs))| {
                debug_assert!(!rhs.is_negative());
                row.extend((0..rows).map(|r| if r == i { Rational::one() } else { Rational::zero() }));
                row.push(rhs);
                row
            })
            .collect();
        let basis = (structural..structural + rows).collect();
        PhaseOne { rows, structural, tableau, basis }
    }

    fn is_artificial(&self, col: usize) -> bool {
        col >= self.structural
    }

    fn cost(&self, col: usize) -> Rational {
        if self.is_artificial(col) { Rational::one() } else { Rational::zero() }
    }

    /// Simplex multipliers `y = c_Bᵀ B⁻¹`, read off the artificial columns.
    fn duals(&self) -> Vec<Rational> {
        (0..self.rows)
            .map(|i| {
                let col = self.structural + i;
                (0..self.rows)
                    .filter(|&r| self.is_artificial(self.basis[r]))
                    .map(|r| &self.tableau[r][col])
                    .sum()
            })
            .collect()
    }

    fn reduced_cost(&self, col: usize) -> Rational {
        let mut rc = self.cost(col);
        for r in 0..self.rows {
            if self.is_artificial(self.basis[r]) {
                rc -= &self.tableau[r][col];
            }
        }
        rc
    }

    fn run(mut self) -> PhaseOneOutcome {
        let width = self.structural + self.rows;
        loop {
            // Bland: lowest-index improving column.
            let entering = (0..width).find(|&c| self.reduced_cost(c).is_negative());
            let Some(col) = entering else { break };
            let mut leaving: Option<(usize, Rational)> = None;
            for r in 0..self.rows {
                let pivot = &self.tableau[r][col];
                if !pivot.is_positive() {
                    continue;
                }
                let ratio = &self.tableau[r][width] / pivot;
                let better = match &leaving {
                    None => true,
                    Some((best_r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*best_r])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
            // The objective is bounded below by zero, so a leaving row exists.
            let (row, _) = leaving.expect("phase one is bounded");
            self.pivot(row, col);
        }
        let objective: Rational = (0..self.rows)
            .filter(|&r| self.is_artificial(self.basis[r]))
            .map(|r| &self.tableau[r][width])
            .sum();
        if objective.is_zero() {
            let mut lambda = vec![Rational::zero(); self.structural];
            for r in 0..self.rows {
                if !self.is_artificial(self.basis[r]) {
                    lambda[self.basis[r]] = self.tableau[r][width].clone();
                }
            }
            PhaseOneOutcome::Feasible(lambda)
        } else {
            PhaseOneOutcome::Infeasible(self.duals())
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.tableau[row][col].recip();
        for v in self.tableau[row].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = self.tableau[row].clone();
        for (r, line) in self.tableau.iter_mut().enumerate() {
            if r == row || line[col].is_zero() {
                continue;
            }
            let factor = line[col].clone();
            for (v, p) in line.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        self.basis[row] = col;
    }
}
