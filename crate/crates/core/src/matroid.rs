//! Oriented-matroid data of a realizable vector configuration.
//!
//! For a full-rank `d x n` matrix `W` the vectors are `sign(ker W)`, the
//! covectors `sign(im Wᵀ)`, and circuits/cocircuits the members of minimal
//! support. Circuits and cocircuits are computed directly from determinants
//! and, independently, cocircuits also from the chirotope; the full vector and
//! covector sets are composition closures of the circuits and cocircuits.

use std::collections::{BTreeMap, HashSet};

use itertools::Itertools;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, maximal_minors, rank, Rational, RationalMatrix, SubspaceBasis};
use crate::polyhedral::{vector_in_subspace, Requirement};
use crate::sign::{bits, Sign, SignVector, SignVectorSet};

/// Signs of the maximal minors, keyed by sorted column tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chirotope {
    d: usize,
    n: usize,
    values: BTreeMap<Vec<usize>, Sign>,
}

impl Chirotope {
    pub fn of(w: &RationalMatrix) -> Result<Self> {
        w.require_full_rank()?;
        let values = maximal_minors(w)?.into_iter().map(|(k, v)| (k, Sign::of(&v))).collect();
        Ok(Self { d: w.rows(), n: w.cols(), values })
    }

    pub fn rank(&self) -> usize {
        self.d
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    /// Value on an arbitrary ordered tuple, by alternating extension.
    pub fn eval(&self, tuple: &[usize]) -> Sign {
        assert_eq!(tuple.len(), self.d, "chirotope takes {}-tuples", self.d);
        let mut sorted = tuple.to_vec();
        let mut odd = false;
        // insertion sort to track the permutation parity
        for i in 1..sorted.len() {
            let mut j = i;
            while j > 0 && sorted[j - 1] > sorted[j] {
                sorted.swap(j - 1, j);
                odd = !odd;
                j -= 1;
            }
        }
        if sorted.windows(2).any(|p| p[0] == p[1]) {
            return Sign::Zero;
        }
        let s = self.values[&sorted];
        if odd {
            s.negate()
        } else {
            s
        }
    }

    pub fn values(&self) -> &BTreeMap<Vec<usize>, Sign> {
        &self.values
    }
}

/// Cocircuits `(χ(I,1), …, χ(I,n))` over sorted `(d-1)`-tuples `I`, closed under negation.
pub fn cocircuits_from_chirotope(chi: &Chirotope) -> SignVectorSet {
    let mut out = SignVectorSet::new(chi.n);
    for tuple in (0..chi.n).combinations(chi.d - 1) {
        let signs: Vec<Sign> = (0..chi.n)
            .map(|j| {
                let mut t = tuple.clone();
                t.push(j);
                chi.eval(&t)
            })
            .collect();
        let s = SignVector::from_signs(&signs);
        if !s.is_zero() {
            out.insert(s).expect("length n");
            out.insert(s.negate()).expect("length n");
        }
    }
    out
}

/// Circuits from signed Cramer expansions on `(d+1)`-subsets of columns.
pub fn circuits(w: &RationalMatrix) -> Result<SignVectorSet> {
    w.require_full_rank()?;
    let (d, n) = (w.rows(), w.cols());
    let mut out = SignVectorSet::new(n);
    for subset in (0..n).combinations(d + 1) {
        let mut v = vec![Rational::zero(); n];
        for (k, &j) in subset.iter().enumerate() {
            let rest: Vec<usize> = subset.iter().copied().filter(|&x| x != j).collect();
            let det = linalg::determinant(&w.select_columns(&rest))?;
            v[j] = if k % 2 == 0 { det } else { -det };
        }
        let s = SignVector::sign_of(&v);
        if !s.is_zero() {
            out.insert(s)?;
            out.insert(s.negate())?;
        }
    }
    Ok(out)
}

/// Cocircuits with a realizing normal `x` (so `sign(xᵀW)` is the cocircuit),
/// one per rank-`(d-1)` column subset, both orientations included.
pub fn cocircuit_normals(w: &RationalMatrix) -> Result<Vec<(SignVector, Vec<Rational>)>> {
    w.require_full_rank()?;
    let (d, n) = (w.rows(), w.cols());
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |x: Vec<Rational>| {
        let s = SignVector::sign_of(&w.tr_mul_vec(&x));
        if !s.is_zero() && seen.insert(s) {
            seen.insert(s.negate());
            let neg: Vec<Rational> = x.iter().map(|v| -v).collect();
            out.push((s, x));
            out.push((s.negate(), neg));
        }
    };
    if d == 1 {
        push(vec![Rational::one()]);
    } else {
        for subset in (0..n).combinations(d - 1) {
            let cols = w.select_columns(&subset);
            if rank(&cols) != d - 1 {
                continue;
            }
            let normal = linalg::kernel_basis(&cols.transpose());
            push(linalg::primitive(&normal.vectors()[0]));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Cocircuits from normals of rank-`(d-1)` column subsets.
pub fn cocircuits(w: &RationalMatrix) -> Result<SignVectorSet> {
    SignVectorSet::from_vectors(w.cols(), cocircuit_normals(w)?.into_iter().map(|(s, _)| s))
}

/// All compositions of generators, including the empty composition 0.
pub fn composition_closure(generators: &SignVectorSet, cap: usize) -> Result<SignVectorSet> {
    let n = generators.len_of_vectors();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let gens: Vec<SignVector> = generators.iter().copied().collect();
    let zero = SignVector::zero(n);
    let mut seen: HashSet<SignVector> = HashSet::from([zero]);
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = x.compose_unchecked(g);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    SignVectorSet::from_vectors(n, seen)
}

/// `sign(ker W)`.
pub fn vectors(w: &RationalMatrix, cap: usize) -> Result<SignVectorSet> {
    if w.cols() > cap {
        return Err(Error::CapExceeded { n: w.cols(), cap });
    }
    composition_closure(&circuits(w)?, cap)
}

/// `sign(im Wᵀ)`.
pub fn covectors(w: &RationalMatrix, cap: usize) -> Result<SignVectorSet> {
    if w.cols() > cap {
        return Err(Error::CapExceeded { n: w.cols(), cap });
    }
    composition_closure(&cocircuits(w)?, cap)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedMatroidData {
    pub circuits: SignVectorSet,
    pub cocircuits: SignVectorSet,
    pub vectors: SignVectorSet,
    pub covectors: SignVectorSet,
    pub chirotope: Chirotope,
}

impl OrientedMatroidData {
    pub fn compute(w: &RationalMatrix, cap: usize) -> Result<Self> {
        let circuits = circuits(w)?;
        let cocircuits = cocircuits(w)?;
        Ok(Self {
            vectors: composition_closure(&circuits, cap)?,
            covectors: composition_closure(&cocircuits, cap)?,
            chirotope: Chirotope::of(w)?,
            circuits,
            cocircuits,
        })
    }
}

/// Writes `tau` as a composition of circuits conformal to it.
///
/// Each chosen circuit covers a coordinate not covered by the earlier ones, so
/// the realizing vectors are linearly independent and the length is at most
/// `min(dim S, |supp tau|)`.
pub fn conformal_decompose(tau: &SignVector, circuits: &SignVectorSet) -> Result<Vec<SignVector>> {
    let conformal: Vec<&SignVector> = circuits.iter().filter(|c| c.le_unchecked(tau)).collect();
    let mut covered = 0u64;
    let mut out = Vec::new();
    while covered != tau.support() {
        let e = (tau.support() & !covered).trailing_zeros();
        let Some(rho) = conformal.iter().find(|c| c.support() >> e & 1 == 1) else {
            return Err(Error::NotAVector(tau.to_string()));
        };
        covered |= rho.support();
        out.push(**rho);
    }
    Ok(out)
}

/// Nonnegative covectors with the structural flags of the cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    pub faces: SignVectorSet,
    pub pointed: bool,
    pub lineality_dim: usize,
    pub robustly_generated: bool,
}

impl FaceLattice {
    pub fn from_covectors(w: &RationalMatrix, covectors: &SignVectorSet) -> Self {
        let faces = covectors.nonneg_part();
        let n = w.cols();
        let top = faces.iter().fold(SignVector::zero(n), |acc, f| acc.compose_unchecked(f));
        let lineal: Vec<usize> = bits(top.zeros()).collect();
        let lineality_dim = if lineal.is_empty() { 0 } else { rank(&w.select_columns(&lineal)) };
        let robustly_generated = w.rows() == 1 || {
            let single_zero: HashSet<u64> =
                faces.iter().filter(|f| f.zeros().count_ones() == 1).map(|f| f.zeros()).collect();
            faces
                .minimal_support_members()
                .iter()
                .all(|tau| bits(tau.zeros()).all(|i| single_zero.contains(&(1u64 << i))))
        };
        Self { faces, pointed: lineality_dim == 0, lineality_dim, robustly_generated }
    }

    /// Face inclusion is reverse sign order: `face(a) ⊆ face(b)` iff `b ≤ a`.
    pub fn face_contains(&self, outer: &SignVector, inner: &SignVector) -> bool {
        outer.le_unchecked(inner)
    }

    /// The face of the whole cone's lineality space (maximal covector).
    pub fn lineality_face(&self) -> SignVector {
        let n = self.faces.len_of_vectors();
        self.faces.iter().fold(SignVector::zero(n), |acc, f| acc.compose_unchecked(f))
    }
}

pub fn face_lattice(w: &RationalMatrix, cap: usize) -> Result<FaceLattice> {
    Ok(FaceLattice::from_covectors(w, &covectors(w, cap)?))
}

/// One side of the Minty alternative for a subspace `S` and sign vector `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MintyWitness {
    /// `x ∈ S` with `xᵢ > 0` on `σ⁺` and `xᵢ < 0` on `σ⁻`.
    InSubspace(Vec<Rational>),
    /// Nonzero `y ∈ S⊥` with `sign(y) ≤ σ`.
    InComplement(Vec<Rational>),
}

impl MintyWitness {
    pub fn verify(&self, s: &SubspaceBasis, sigma: &SignVector) -> bool {
        match self {
            MintyWitness::InSubspace(x) => {
                s.contains(x)
                    && (0..sigma.len()).all(|i| match sigma.get(i) {
                        Sign::Pos => Sign::of(&x[i]) == Sign::Pos,
                        Sign::Neg => Sign::of(&x[i]) == Sign::Neg,
                        Sign::Zero => true,
                    })
            }
            MintyWitness::InComplement(y) => {
                let sy = SignVector::sign_of(y);
                !sy.is_zero() && sy.le_unchecked(sigma) && s.orthogonal_complement().contains(y)
            }
        }
    }
}

/// Decides which alternative holds for nonzero `σ`, returning its witness.
pub fn minty_alternative(s: &SubspaceBasis, sigma: &SignVector) -> Result<MintyWitness> {
    let n = s.ambient();
    if sigma.len() != n {
        return Err(Error::LengthMismatch { left: n, right: sigma.len() });
    }
    if sigma.is_zero() {
        return Err(Error::Dimension("the alternative needs a nonzero sign vector".into()));
    }
    let strict: Vec<Requirement> = sigma
        .signs()
        .into_iter()
        .map(|x| match x {
            Sign::Zero => Requirement::Free,
            other => Requirement::exact(other),
        })
        .collect();
    if let Some(x) = vector_in_subspace(s, &strict, &[]) {
        return Ok(MintyWitness::InSubspace(x));
    }
    let weak: Vec<Requirement> = sigma
        .signs()
        .into_iter()
        .map(|x| match x {
            Sign::Pos => Requirement::NonNegative,
            Sign::Neg => Requirement::NonPositive,
            Sign::Zero => Requirement::Zero,
        })
        .collect();
    let weight: Vec<Rational> = sigma
        .signs()
        .into_iter()
        .map(|x| match x {
            Sign::Pos => Rational::one(),
            Sign::Neg => -Rational::one(),
            Sign::Zero => Rational::zero(),
        })
        .collect();
    let complement = s.orthogonal_complement();
    vector_in_subspace(&complement, &weak, &[(weight, Requirement::Positive)])
        .map(MintyWitness::InComplement)
        .ok_or_else(|| Error::Internal(format!("neither alternative holds for {sigma}")))
}
