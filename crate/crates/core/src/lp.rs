//! Exact rational linear programming: dense two-phase simplex with Bland's
//! anti-cycling rule. All variables are nonnegative.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `minimize objective · x` subject to the constraints and `x >= 0`.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![Rational::zero(); num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn constrain(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars, "constraint width");
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn minimize(&self) -> LpOutcome {
        Tableau::build(self).solve(&self.objective)
    }

    /// Feasibility only.
    pub fn is_feasible(&self) -> bool {
        let zero = LinearProgram {
            objective: vec![Rational::zero(); self.num_vars],
            ..self.clone()
        };
        !matches!(zero.minimize(), LpOutcome::Infeasible)
    }
}

struct Tableau {
    /// rows × (cols + 1); the last column is the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
    num_vars: usize,
    artificial_start: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let m = lp.constraints.len();
        let n = lp.num_vars;
        let slacks = lp
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        // Every row gets an artificial; slack columns of `<=` rows with
        // nonnegative rhs could serve instead, but uniform artificials keep
        // phase one simple and the programs here are tiny.
        let artificial_start = n + slacks;
        let cols = artificial_start + m;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut slack = n;
        for (i, c) in lp.constraints.iter().enumerate() {
            let mut row = vec![Rational::zero(); cols + 1];
            for (j, a) in c.coeffs.iter().enumerate() {
                row[j] = a.clone();
            }
            match c.relation {
                Relation::Le => {
                    row[slack] = Rational::from_integer(1.into());
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = Rational::from_integer((-1).into());
                    slack += 1;
                }
                Relation::Eq => {}
            }
            row[cols] = c.rhs.clone();
            if row[cols].is_negative() {
                for x in row.iter_mut() {
                    *x = -&*x;
                }
            }
            row[artificial_start + i] = Rational::from_integer(1.into());
            rows.push(row);
            basis.push(artificial_start + i);
        }
        Tableau {
            rows,
            basis,
            cols,
            num_vars: n,
            artificial_start,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &piv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Reduced costs for `cost` over the allowed columns.
    fn reduced_costs(&self, cost: &[Rational], allowed: usize) -> Vec<Rational> {
        let mut red: Vec<Rational> = cost[..allowed].to_vec();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (j, r) in red.iter_mut().enumerate() {
                if !row[j].is_zero() {
                    *r -= cb * &row[j];
                }
            }
        }
        red
    }

    /// Run simplex iterations with Bland's rule. Returns false if unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> bool {
        loop {
            let red = self.reduced_costs(cost, allowed);
            let Some(enter) = red.iter().position(|r| r.is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = &row[enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &row[self.cols] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, enter),
            }
        }
    }

    fn solve(mut self, objective: &[Rational]) -> LpOutcome {
        // phase one: minimize the sum of artificials
        let mut phase1 = vec![Rational::zero(); self.cols];
        for c in phase1.iter_mut().skip(self.artificial_start) {
            *c = Rational::from_integer(1.into());
        }
        self.optimize(&phase1, self.cols);
        let infeasibility: Rational = self
            .rows
            .iter()
            .zip(&self.basis)
            .filter(|(_, &b)| b >= self.artificial_start)
            .map(|(row, _)| row[self.cols].clone())
            .sum();
        if infeasibility.is_positive() {
            return LpOutcome::Infeasible;
        }
        // drive zero-level artificials out of the basis, dropping redundant rows
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= self.artificial_start {
                match (0..self.artificial_start).find(|&j| !self.rows[r][j].is_zero()) {
                    Some(j) => {
                        self.pivot(r, j);
                        r += 1;
                    }
                    None => {
                        self.rows.remove(r);
                        self.basis.remove(r);
                    }
                }
            } else {
                r += 1;
            }
        }
        let mut cost = vec![Rational::zero(); self.cols];
        cost[..self.num_vars].clone_from_slice(objective);
        if !self.optimize(&cost, self.artificial_start) {
            return LpOutcome::Unbounded;
        }
        let mut point = vec![Rational::zero(); self.num_vars];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < self.num_vars {
                point[b] = row[self.cols].clone();
            }
        }
        let value = point
            .iter()
            .zip(objective)
            .map(|(x, c)| x * c)
            .sum();
        LpOutcome::Optimal { value, point }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn textbook_minimum() {
        // min -x - y  s.t. x + 2y <= 4, 3x + y <= 6
        let mut lp = LinearProgram::new(2);
        lp.objective = v(&[-1, -1]);
        lp.constrain(v(&[1, 2]), Relation::Le, int(4));
        lp.constrain(v(&[3, 1]), Relation::Le, int(6));
        match lp.minimize() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, ratio(-14, 5));
                assert_eq!(point, [ratio(8, 5), ratio(6, 5)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.constrain(v(&[1]), Relation::Ge, int(3));
        lp.constrain(v(&[1]), Relation::Le, int(2));
        assert_eq!(lp.minimize(), LpOutcome::Infeasible);
        assert!(!lp.is_feasible());

        let mut lp = LinearProgram::new(1);
        lp.objective = v(&[-1]);
        lp.constrain(v(&[1]), Relation::Ge, int(1));
        assert_eq!(lp.minimize(), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_equalities() {
        // x + y = 1 twice, min x
        let mut lp = LinearProgram::new(2);
        lp.objective = v(&[1, 0]);
        lp.constrain(v(&[1, 1]), Relation::Eq, int(1));
        lp.constrain(v(&[2, 2]), Relation::Eq, int(2));
        match lp.minimize() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(0)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_rhs_is_normalized() {
        // -x <= -2  (x >= 2), min x
        let mut lp = LinearProgram::new(1);
        lp.objective = v(&[1]);
        lp.constrain(v(&[-1]), Relation::Le, int(-2));
        match lp.minimize() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's cycling example; Bland's rule must terminate.
        let mut lp = LinearProgram::new(4);
        lp.objective = vec![ratio(-3, 4), int(150), ratio(-1, 50), int(6)];
        lp.constrain(vec![ratio(1, 4), int(-60), ratio(-1, 25), int(9)], Relation::Le, int(0));
        lp.constrain(vec![ratio(1, 2), int(-90), ratio(-1, 50), int(3)], Relation::Le, int(0));
        lp.constrain(v(&[0, 0, 1, 0]), Relation::Le, int(1));
        match lp.minimize() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, ratio(-1, 20)),
            other => panic!("{other:?}"),
        }
    }
}
