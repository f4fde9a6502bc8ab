//! Exact feasibility of mixed strict/weak homogeneous linear sign systems.
//!
//! A [`SignSystem`] asks for `x ∈ ℚᵈ` such that every linear form `aᵢ·x`
//! meets a sign requirement and the forms in each equality group share a
//! value. Strict requirements are handled with a common slack `t`: the LP
//! maximizes `t <= 1` subject to `aᵢ·x >= t` (resp. `<= -t`), and the system
//! is feasible iff the optimum is positive.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{dot, Rational, RationalMatrix, SubspaceBasis};
use crate::matroid;
use crate::sign::{Sign, SignVector};
use crate::simplex::{LinearProgram, LpOutcome, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Requirement {
    Zero,
    Positive,
    Negative,
    NonNegative,
    NonPositive,
    Free,
}

impl Requirement {
    pub fn exact(s: Sign) -> Self {
        match s {
            Sign::Pos => Requirement::Positive,
            Sign::Neg => Requirement::Negative,
            Sign::Zero => Requirement::Zero,
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(self, Requirement::Positive | Requirement::Negative)
    }

    /// Whether `value` meets the requirement with margin `slack` on strict rows.
    pub fn accepts(self, value: &Rational, slack: &Rational) -> bool {
        match self {
            Requirement::Zero => value.is_zero(),
            Requirement::Positive => value >= slack && value.is_positive(),
            Requirement::Negative => -value >= *slack && value.is_negative(),
            Requirement::NonNegative => !value.is_negative(),
            Requirement::NonPositive => !value.is_positive(),
            Requirement::Free => true,
        }
    }
}

/// Witness point of a feasible [`SignSystem`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityWitness {
    pub point: Vec<Rational>,
    pub slack: Rational,
}

#[derive(Clone, Debug)]
pub struct SignSystem {
    vars: usize,
    forms: Vec<Vec<Rational>>,
    requirements: Vec<Requirement>,
    groups: Vec<Vec<usize>>,
}

impl SignSystem {
    pub fn new(vars: usize, forms: Vec<Vec<Rational>>, requirements: Vec<Requirement>) -> Result<Self> {
        if forms.len() != requirements.len() {
            return Err(Error::Dimension(format!(
                "{} forms but {} requirements",
                forms.len(),
                requirements.len()
            )));
        }
        if forms.iter().any(|f| f.len() != vars) {
            return Err(Error::Dimension(format!("every form must have {vars} coefficients")));
        }
        Ok(Self { vars, forms, requirements, groups: Vec::new() })
    }

    /// Adds a set of rows whose forms must take a common value.
    pub fn with_group(mut self, rows: Vec<usize>) -> Result<Self> {
        if rows.iter().any(|&r| r >= self.forms.len()) {
            return Err(Error::Dimension("equality group refers to a missing row".into()));
        }
        if self.groups.iter().flatten().any(|r| rows.contains(r)) {
            return Err(Error::Dimension("equality groups must be disjoint".into()));
        }
        self.groups.push(rows);
        Ok(self)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        self.check(x, &Rational::zero())
    }

    fn check(&self, x: &[Rational], slack: &Rational) -> bool {
        if x.len() != self.vars {
            return false;
        }
        let values: Vec<Rational> = self.forms.iter().map(|f| dot(f, x)).collect();
        let rows_ok = values.iter().zip(&self.requirements).all(|(v, r)| r.accepts(v, slack));
        let groups_ok = self.groups.iter().all(|g| g.iter().all(|&i| values[i] == values[g[0]]));
        rows_ok && groups_ok
    }

    pub fn feasible(&self) -> Option<FeasibilityWitness> {
        let d = self.vars;
        // variables: p (d), q (d), t; x = p - q
        let nv = 2 * d + 1;
        let t = 2 * d;
        let split = |form: &[Rational]| {
            let mut row = vec![Rational::zero(); nv];
            for (j, a) in form.iter().enumerate() {
                row[j] = a.clone();
                row[d + j] = -a.clone();
            }
            row
        };
        let mut lp = LinearProgram::new(nv);
        let mut any_strict = false;
        for (form, req) in self.forms.iter().zip(&self.requirements) {
            let mut row = split(form);
            match req {
                Requirement::Zero => lp.add(row, Relation::Eq, Rational::zero()),
                Requirement::NonNegative => lp.add(row, Relation::Ge, Rational::zero()),
                Requirement::NonPositive => lp.add(row, Relation::Le, Rational::zero()),
                Requirement::Positive => {
                    row[t] = -Rational::one();
                    lp.add(row, Relation::Ge, Rational::zero());
                    any_strict = true;
                }
                Requirement::Negative => {
                    row[t] = Rational::one();
                    lp.add(row, Relation::Le, Rational::zero());
                    any_strict = true;
                }
                Requirement::Free => {}
            }
        }
        for g in &self.groups {
            for &i in &g[1..] {
                let diff: Vec<Rational> = self.forms[g[0]].iter().zip(&self.forms[i]).map(|(a, b)| a - b).collect();
                lp.add(split(&diff), Relation::Eq, Rational::zero());
            }
        }
        let mut bound = vec![Rational::zero(); nv];
        bound[t] = Rational::one();
        lp.add(bound.clone(), Relation::Le, Rational::one());
        lp.set_objective(bound);
        let LpOutcome::Optimal { x, value } = lp.solve() else {
            return None;
        };
        if any_strict && !value.is_positive() {
            return None;
        }
        let point: Vec<Rational> = (0..d).map(|j| &x[j] - &x[d + j]).collect();
        let slack = if any_strict { value } else { Rational::one() };
        let witness = FeasibilityWitness { point, slack };
        debug_assert!(self.check(&witness.point, &witness.slack));
        Some(witness)
    }

    /// Re-substitution check of a witness, strict rows with the witness slack.
    pub fn verify(&self, w: &FeasibilityWitness) -> bool {
        w.slack.is_positive() && self.check(&w.point, &w.slack)
    }
}

/// Finds `v ∈ span(basis)` meeting per-coordinate requirements and extra
/// requirements on linear forms over the ambient space.
pub fn vector_in_subspace(
    basis: &SubspaceBasis,
    coordinate: &[Requirement],
    extra: &[(Vec<Rational>, Requirement)],
) -> Option<Vec<Rational>> {
    let n = basis.ambient();
    assert_eq!(coordinate.len(), n);
    let k = basis.dim();
    let mut forms: Vec<Vec<Rational>> =
        (0..n).map(|i| basis.vectors().iter().map(|b| b[i].clone()).collect()).collect();
    let mut reqs = coordinate.to_vec();
    for (form, req) in extra {
        forms.push(basis.vectors().iter().map(|b| dot(form, b)).collect());
        reqs.push(*req);
    }
    let system = SignSystem::new(k, forms, reqs).expect("consistent dimensions");
    let w = system.feasible()?;
    Some(basis.combine(&w.point))
}

/// A vector of the subspace with sign vector exactly `tau`.
pub fn realize_in_subspace(basis: &SubspaceBasis, tau: &SignVector) -> Option<Vec<Rational>> {
    let reqs: Vec<Requirement> = tau.signs().into_iter().map(Requirement::exact).collect();
    vector_in_subspace(basis, &reqs, &[])
}

/// `x` with `sign(Mᵀx) = tau`, or `None` when `tau` is not a covector of `M`.
pub fn realize_sign_vector(m: &RationalMatrix, tau: &SignVector) -> Result<Option<Vec<Rational>>> {
    if tau.len() != m.cols() {
        return Err(Error::LengthMismatch { left: m.cols(), right: tau.len() });
    }
    let forms = (0..m.cols()).map(|j| m.column(j)).collect();
    let reqs = tau.signs().into_iter().map(Requirement::exact).collect();
    let system = SignSystem::new(m.rows(), forms, reqs)?;
    Ok(system.feasible().map(|w| w.point))
}

/// Whether `y` lies in the interior of the cone generated by the columns of
/// `w`: `y` must be strictly on the inner side of every facet.
pub fn is_interior_point(w: &RationalMatrix, y: &[Rational]) -> Result<bool> {
    if y.len() != w.rows() {
        return Err(Error::Dimension(format!("point has length {}, expected {}", y.len(), w.rows())));
    }
    w.require_full_rank()?;
    let facets = matroid::cocircuit_normals(w)?;
    Ok(facets.iter().filter(|(s, _)| s.is_nonnegative()).all(|(_, x)| dot(x, y).is_positive()))
}
