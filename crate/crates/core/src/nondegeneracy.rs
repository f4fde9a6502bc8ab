//! Exact search for degeneracy witnesses and the Newton-polytope sufficient
//! condition for nondegeneracy.
//!
//! A witness is `z = W̃ᵀx` with a positive component whose positive level sets
//! are all positively dependent in `W` and whose support meets no proper face
//! of `cone W`. The search runs over exponent covectors `τ̃`: for each one
//! lacking a covering face and whose positive part is positively dependent,
//! the positive part is split into admissible blocks and the level equalities
//! are tested for realizability by an exact LP.

use std::cell::RefCell;
use std::collections::HashMap;

use num::Signed;

use crate::certificate::{indices_of, positive_levels, DegeneracyWitness, LevelBlock};
use crate::error::{Error, Result};
use crate::linalg::{primitive, rref, Rational, RationalMatrix, SubspaceBasis};
use crate::matroid;
use crate::polyhedral::{vector_in_subspace, Requirement, SignSystem};
use crate::sign::{bits, SignVector, SignVectorSet};
use crate::spec::Caps;

pub enum SearchOutcome {
    NoWitness,
    Witness(DegeneracyWitness),
    /// A cap stopped the search; `frontier` lists the covectors left open.
    CapExceeded { cap: &'static str, frontier: Vec<SignVector> },
}

/// Inputs shared by the nondegeneracy procedures, on reduced echelon forms.
pub struct NondegeneracyProblem<'a> {
    pub coefficients: &'a RationalMatrix,
    pub exponents: &'a RationalMatrix,
    pub coefficient_kernel: &'a SubspaceBasis,
    /// `sign(ker W)`.
    pub vectors: &'a SignVectorSet,
    /// `sign(im Wᵀ)⊕`.
    pub coefficient_faces: &'a SignVectorSet,
    /// `sign(im W̃ᵀ)`.
    pub exponent_covectors: &'a SignVectorSet,
}

struct Blocks<'p> {
    vectors: &'p SignVectorSet,
    n: usize,
    unsplittable: RefCell<HashMap<u64, bool>>,
}

impl Blocks<'_> {
    /// `B` is admissible when a nonnegative vector of `ker W` has support `B`.
    fn admissible(&self, mask: u64) -> bool {
        self.vectors.contains(&SignVector::indicator(self.n, mask))
    }

    fn unsplittable(&self, mask: u64) -> bool {
        if let Some(&u) = self.unsplittable.borrow().get(&mask) {
            return u;
        }
        let low = mask & mask.wrapping_neg();
        let rest = mask & !low;
        // proper subsets containing the lowest element
        let mut sub = rest;
        let mut result = true;
        loop {
            let part = sub | low;
            if part != mask && self.admissible(part) && self.admissible(mask & !part) {
                result = false;
                break;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        self.unsplittable.borrow_mut().insert(mask, result);
        result
    }

    /// Calls `visit` on every partition of `mask` into unsplittable admissible
    /// blocks until it returns `false`; returns whether the walk completed.
    fn partitions(&self, mask: u64, acc: &mut Vec<u64>, visit: &mut dyn FnMut(&[u64]) -> bool) -> bool {
        if mask == 0 {
            return visit(acc);
        }
        let low = mask & mask.wrapping_neg();
        let rest = mask & !low;
        let mut sub = rest;
        loop {
            let block = sub | low;
            if self.admissible(block) && self.unsplittable(block) {
                acc.push(block);
                let go_on = self.partitions(mask & !block, acc, visit);
                acc.pop();
                if !go_on {
                    return false;
                }
            }
            if sub == 0 {
                return true;
            }
            sub = (sub - 1) & rest;
        }
    }
}

fn has_covering_face(faces: &SignVectorSet, support: u64) -> bool {
    faces.iter().any(|f| !f.is_zero() && f.support() & !support == 0)
}

fn positive_vector_on(kernel: &SubspaceBasis, support: u64, exact: bool) -> Option<Vec<Rational>> {
    let n = kernel.ambient();
    let reqs: Vec<Requirement> = (0..n)
        .map(|i| match (support >> i & 1 == 1, exact) {
            (true, _) => Requirement::Positive,
            (false, true) => Requirement::Zero,
            (false, false) => Requirement::Free,
        })
        .collect();
    vector_in_subspace(kernel, &reqs, &[]).map(|v| primitive(&v))
}

/// A vector of `ker W` that is nonnegative with support exactly `mask`.
pub fn nonnegative_kernel_vector(kernel: &SubspaceBasis, mask: u64) -> Option<Vec<Rational>> {
    positive_vector_on(kernel, mask, true)
}

/// A vector of `ker W` positive on `mask` and unconstrained elsewhere.
pub fn covering_kernel_vector(kernel: &SubspaceBasis, mask: u64) -> Option<Vec<Rational>> {
    positive_vector_on(kernel, mask, false)
}

impl NondegeneracyProblem<'_> {
    fn n(&self) -> usize {
        self.coefficients.cols()
    }

    /// Exponent covectors that could carry a witness, in sign-vector order.
    pub fn candidates(&self) -> Vec<SignVector> {
        let n = self.n();
        self.exponent_covectors
            .iter()
            .filter(|t| t.plus() != 0)
            .filter(|t| !has_covering_face(self.coefficient_faces, t.support()))
            .filter(|t| self.vectors.contains(&SignVector::indicator(n, t.plus())))
            .copied()
            .collect()
    }

    pub fn search(&self, caps: &Caps) -> Result<SearchOutcome> {
        let blocks = Blocks { vectors: self.vectors, n: self.n(), unsplittable: RefCell::new(HashMap::new()) };
        let mut frontier = Vec::new();
        let mut fired: Option<&'static str> = None;
        let mut partitions_seen = 0usize;
        for tau in self.candidates() {
            if tau.plus().count_ones() as usize > caps.max_blocks {
                frontier.push(tau);
                fired.get_or_insert("max_blocks");
                continue;
            }
            let mut found: Option<Vec<Rational>> = None;
            let mut capped = false;
            blocks.partitions(tau.plus(), &mut Vec::new(), &mut |partition| {
                if partitions_seen >= caps.max_partition_pairs {
                    capped = true;
                    return false;
                }
                partitions_seen += 1;
                match self.realize(&tau, partition) {
                    Some(x) => {
                        found = Some(x);
                        false
                    }
                    None => true,
                }
            });
            if let Some(x) = found {
                return self.witness(&tau, &x).map(SearchOutcome::Witness);
            }
            if capped {
                frontier.push(tau);
                fired.get_or_insert("max_partition_pairs");
            }
        }
        Ok(match fired {
            Some(cap) => SearchOutcome::CapExceeded { cap, frontier },
            None => SearchOutcome::NoWitness,
        })
    }

    /// `x` with `sign(W̃ᵀx) = τ̃` and `W̃ᵀx` constant on every block.
    fn realize(&self, tau: &SignVector, partition: &[u64]) -> Option<Vec<Rational>> {
        let n = self.n();
        let forms: Vec<Vec<Rational>> = (0..n).map(|j| self.exponents.column(j)).collect();
        let reqs = tau.signs().into_iter().map(Requirement::exact).collect();
        let mut system = SignSystem::new(self.exponents.rows(), forms, reqs).expect("consistent dimensions");
        for &b in partition.iter().filter(|b| b.count_ones() > 1) {
            system = system.with_group(bits(b).collect()).expect("blocks are disjoint");
        }
        system.feasible().map(|w| w.point)
    }

    fn witness(&self, tau: &SignVector, x: &[Rational]) -> Result<DegeneracyWitness> {
        let z = primitive(&self.exponents.tr_mul_vec(x));
        let sign = SignVector::sign_of(&z);
        if sign != *tau {
            return Err(Error::Internal(format!("realized {sign}, expected {tau}")));
        }
        let blocks = positive_levels(&z)
            .into_iter()
            .map(|(level, mask)| {
                let kernel_vector = nonnegative_kernel_vector(self.coefficient_kernel, mask)
                    .ok_or_else(|| Error::Internal(format!("level set {mask:b} is not positively dependent")))?;
                Ok(LevelBlock { level, indices: indices_of(mask), kernel_vector })
            })
            .collect::<Result<Vec<_>>>()?;
        let covering_kernel_vector = covering_kernel_vector(self.coefficient_kernel, sign.support())
            .ok_or_else(|| Error::Internal(format!("{sign} has a covering face")))?;
        Ok(DegeneracyWitness { row_vector: z, sign, blocks, covering_kernel_vector })
    }
}

/// Outcome of the Newton-polytope test.
pub enum NewtonOutcome {
    /// No positive face of `conv W̃` has a positively dependent index set.
    Sufficient,
    /// A positive face whose index set is positively dependent.
    Blocked { face: Vec<usize> },
}

/// Tests every positive face of the Newton polytope of the exponent matrix.
///
/// Faces are read off the covectors of `[W̃; −1ᵀ]`: a covector without `+`
/// entries describes a face `{ i : w̃ⁱ·x = λ }` supporting all points.
pub fn newton_polytope_test(
    exponents: &RationalMatrix,
    vectors: &SignVectorSet,
    cap: usize,
) -> Result<NewtonOutcome> {
    let n = exponents.cols();
    let d = exponents.rows();
    let mut rows = exponents.row_vectors();
    rows.push(vec![-Rational::from_integer(1.into()); n]);
    let (basis, _) = rref(&RationalMatrix::from_rows(rows)?);
    let lifted = RationalMatrix::from_rows(basis)?;
    for sigma in matroid::covectors(&lifted, cap)?.iter() {
        if sigma.plus() != 0 || sigma.zeros() == 0 {
            continue;
        }
        let face = sigma.zeros();
        if !vectors.contains(&SignVector::indicator(n, face)) {
            continue;
        }
        // variables (x, λ): w̃ⁱ·x − λ = 0 on the face, < 0 elsewhere, λ > 0
        let mut forms = Vec::with_capacity(n + 1);
        let mut reqs = Vec::with_capacity(n + 1);
        for j in 0..n {
            let mut f = exponents.column(j);
            f.push(-Rational::from_integer(1.into()));
            forms.push(f);
            reqs.push(if face >> j & 1 == 1 { Requirement::Zero } else { Requirement::Negative });
        }
        let mut lambda = vec![Rational::from_integer(0.into()); d + 1];
        lambda[d] = Rational::from_integer(1.into());
        forms.push(lambda);
        reqs.push(Requirement::Positive);
        if let Some(w) = SignSystem::new(d + 1, forms, reqs)?.feasible() {
            debug_assert!(w.point[d].is_positive());
            return Ok(NewtonOutcome::Blocked { face: indices_of(face) });
        }
    }
    Ok(NewtonOutcome::Sufficient)
}
