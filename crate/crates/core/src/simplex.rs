//! Two-phase dense-tableau simplex over exact rationals with Bland's rule.
//!
//! Variables are nonnegative. Bland's rule (smallest eligible index for both
//! the entering and the leaving variable) guarantees termination.

use num::{Signed, Zero};

use crate::linalg::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coefficients: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `maximize objective·x` subject to the constraints and `x >= 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        Self { num_vars, objective: vec![Rational::zero(); num_vars], constraints: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn set_objective(&mut self, objective: Vec<Rational>) {
        assert_eq!(objective.len(), self.num_vars);
        self.objective = objective;
    }

    pub fn add(&mut self, coefficients: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coefficients.len(), self.num_vars);
        self.constraints.push(Constraint { coefficients, relation, rhs });
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).run(&self.objective)
    }
}

struct Tableau {
    /// `rows x (cols + 1)`, right-hand side in the last column.
    a: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
    num_vars: usize,
    /// Columns at or beyond this index are artificial.
    first_artificial: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let m = lp.constraints.len();
        // normalise to nonnegative right-hand sides
        let rows: Vec<(Vec<Rational>, Relation, Rational)> = lp
            .constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    let flipped = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (c.coefficients.iter().map(|x| -x).collect(), flipped, -c.rhs.clone())
                } else {
                    (c.coefficients.clone(), c.relation, c.rhs.clone())
                }
            })
            .collect();
        let num_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let num_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let first_artificial = lp.num_vars + num_slack;
        let cols = first_artificial + num_art;
        let mut a = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut slack, mut art) = (lp.num_vars, first_artificial);
        for (coeffs, rel, rhs) in rows {
            let mut row = vec![Rational::zero(); cols + 1];
            row[..lp.num_vars].clone_from_slice(&coeffs);
            row[cols] = rhs;
            match rel {
                Relation::Le => {
                    row[slack] = Rational::from_integer(1.into());
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = Rational::from_integer((-1).into());
                    slack += 1;
                    row[art] = Rational::from_integer(1.into());
                    basis.push(art);
                    art += 1;
                }
                Relation::Eq => {
                    row[art] = Rational::from_integer(1.into());
                    basis.push(art);
                    art += 1;
                }
            }
            a.push(row);
        }
        Self { a, basis, cols, num_vars: lp.num_vars, first_artificial }
    }

    fn pivot(&mut self, obj: &mut [Rational], r: usize, c: usize) {
        let inv = self.a[r][c].recip();
        for x in self.a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.a[r].clone();
        for (i, row) in self.a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        if !obj[c].is_zero() {
            let f = obj[c].clone();
            for (x, p) in obj.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Reduced-cost row for `maximize cost·x`; the last entry is minus the objective value.
    fn objective_row(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut obj = cost.to_vec();
        obj.resize(self.cols + 1, Rational::zero());
        for (row, &b) in self.a.iter().zip(&self.basis) {
            if b < cost.len() && !cost[b].is_zero() {
                let f = cost[b].clone();
                for (x, p) in obj.iter_mut().zip(row) {
                    *x -= &f * p;
                }
            }
        }
        obj
    }

    /// Returns false when unbounded.
    fn optimize(&mut self, obj: &mut [Rational], allowed: usize) -> bool {
        loop {
            let Some(enter) = (0..allowed).find(|&j| obj[j].is_positive()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.a.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.cols] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(obj, r, enter);
        }
    }

    fn run(mut self, objective: &[Rational]) -> LpOutcome {
        if self.first_artificial < self.cols {
            let mut phase_one = vec![Rational::zero(); self.cols];
            for x in &mut phase_one[self.first_artificial..] {
                *x = Rational::from_integer((-1).into());
            }
            let mut obj = self.objective_row(&phase_one);
            self.optimize(&mut obj, self.cols);
            if !obj[self.cols].is_zero() {
                return LpOutcome::Infeasible;
            }
            // drive remaining (zero-valued) artificials out of the basis
            let mut r = 0;
            while r < self.a.len() {
                if self.basis[r] >= self.first_artificial {
                    if let Some(c) = (0..self.first_artificial).find(|&c| !self.a[r][c].is_zero()) {
                        self.pivot(&mut obj, r, c);
                        r += 1;
                    } else {
                        self.a.remove(r);
                        self.basis.remove(r);
                    }
                } else {
                    r += 1;
                }
            }
        }
        let mut obj = self.objective_row(objective);
        if !self.optimize(&mut obj, self.first_artificial) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Rational::zero(); self.num_vars];
        for (row, &b) in self.a.iter().zip(&self.basis) {
            if b < self.num_vars {
                x[b] = row[self.cols].clone();
            }
        }
        LpOutcome::Optimal { value: -obj[self.cols].clone(), x }
    }
}
