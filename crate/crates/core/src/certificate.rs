//! Certificates attached to verdicts and their substitution checks.
//!
//! Every certificate consists of explicit rational vectors in `ℚⁿ` (or minor
//! values) whose claimed properties are checked by exact arithmetic against
//! the input matrices: kernel membership, row-space membership, and signs.
//! Indices inside certificates are 1-based.

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::json::{rational_str, rational_vec_str};
use crate::linalg::{in_kernel, in_row_space, maximal_minors, Rational, RationalMatrix};
use crate::matroid::{self, FaceLattice};
use crate::sign::{bits, Sign, SignVector};
use crate::spec::{Caps, ExponentialMapSpec};
use crate::verdict::Status;

/// Which matrix of the pair a certificate component refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Coefficient,
    Exponent,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Coefficient => Side::Exponent,
            Side::Exponent => Side::Coefficient,
        }
    }
}

/// A column subset with the maximal minors of both (reduced echelon) matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorEntry {
    pub subset: Vec<usize>,
    #[serde(with = "rational_str")]
    pub coefficient: Rational,
    #[serde(with = "rational_str")]
    pub exponent: Rational,
}

impl MinorEntry {
    pub fn product_sign(&self) -> Sign {
        Sign::of(&self.coefficient).mul(Sign::of(&self.exponent))
    }
}

/// One positive level set `{ i : z_i = level }` with a nonnegative kernel
/// vector of the coefficient matrix supported exactly on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelBlock {
    #[serde(with = "rational_str")]
    pub level: Rational,
    pub indices: Vec<usize>,
    #[serde(with = "rational_vec_str")]
    pub kernel_vector: Vec<Rational>,
}

/// A vector `z` in the row space of the exponent matrix violating
/// nondegeneracy: every positive level set of `z` is positively dependent in
/// the coefficient matrix and no proper face of the coefficient cone covers
/// the zero set of `z` (shown by a kernel vector positive on `supp z`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegeneracyWitness {
    #[serde(with = "rational_vec_str")]
    pub row_vector: Vec<Rational>,
    pub sign: SignVector,
    pub blocks: Vec<LevelBlock>,
    #[serde(with = "rational_vec_str")]
    pub covering_kernel_vector: Vec<Rational>,
}

/// Face structure of one cone, as reported and as re-derived on verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeSummary {
    pub faces: Vec<SignVector>,
    pub whole_space: bool,
    pub all_plus: bool,
    pub pointed: bool,
    pub lineality_dim: usize,
    pub robustly_generated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// Nonzero sign vector shared by `ker W` and `im W̃ᵀ`.
    CommonSign {
        sign: SignVector,
        #[serde(with = "rational_vec_str")]
        kernel_vector: Vec<Rational>,
        #[serde(with = "rational_vec_str")]
        row_vector: Vec<Rational>,
    },
    /// Every maximal minor pair.
    MinorTable { entries: Vec<MinorEntry> },
    /// Two minor pairs whose products violate the required sign pattern.
    MinorConflict { reference: MinorEntry, violating: MinorEntry },
    /// A nonnegative exponent covector no coefficient face lies below, with a
    /// kernel vector positive on its support.
    UncoveredFace {
        face: SignVector,
        #[serde(with = "rational_vec_str")]
        row_vector: Vec<Rational>,
        #[serde(with = "rational_vec_str")]
        kernel_vector: Vec<Rational>,
    },
    Degeneracy(DegeneracyWitness),
    /// An exponent covector for which both clauses of the sign condition fail.
    SignConditionViolation {
        sign: SignVector,
        #[serde(with = "rational_vec_str")]
        row_vector: Vec<Rational>,
        #[serde(with = "rational_vec_str")]
        nonnegative_kernel_vector: Vec<Rational>,
        #[serde(with = "rational_vec_str")]
        covering_kernel_vector: Vec<Rational>,
    },
    /// A sign vector of one kernel lying below no sign vector of the other,
    /// with a separating vector from the other row space.
    ClosureViolation {
        kernel_side: Side,
        sign: SignVector,
        #[serde(with = "rational_vec_str")]
        kernel_vector: Vec<Rational>,
        #[serde(with = "rational_vec_str")]
        separating_vector: Vec<Rational>,
    },
    /// A nonzero nonnegative vector of `ker W`: the generators are positively
    /// dependent, so no covector of `W` is all-plus.
    PositiveDependence {
        #[serde(with = "rational_vec_str")]
        kernel_vector: Vec<Rational>,
    },
    /// Cone structure refuting robustness under coefficient perturbations.
    ConeStructure {
        #[serde(skip_serializing_if = "Option::is_none", default)]
        closure: Option<Box<Certificate>>,
        coefficient_cone: ConeSummary,
        exponent_cone: ConeSummary,
    },
}

/// Original and reduced echelon matrices of a pair, for checking.
pub struct CheckContext {
    pub original: ExponentialMapSpec,
    pub canonical: ExponentialMapSpec,
    pub caps: Caps,
}

impl CheckContext {
    pub fn new(original: ExponentialMapSpec, caps: Caps) -> Self {
        let canonical = original.canonical();
        Self { original, canonical, caps }
    }

    fn matrix(&self, side: Side) -> &RationalMatrix {
        match side {
            Side::Coefficient => self.original.coefficients(),
            Side::Exponent => self.original.exponents(),
        }
    }

    fn in_kernel(&self, side: Side, v: &[Rational]) -> bool {
        in_kernel(self.matrix(side), v)
    }

    fn in_rows(&self, side: Side, v: &[Rational]) -> bool {
        in_row_space(self.matrix(side), v)
    }

    fn n(&self) -> usize {
        self.original.n()
    }
}

pub type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sign_is(v: &[Rational], s: &SignVector) -> bool {
    v.len() == s.len() && SignVector::sign_of(v) == *s
}

fn positive_on(v: &[Rational], support: u64) -> bool {
    bits(support).all(|i| i < v.len() && v[i].is_positive())
}

fn to_mask(indices: &[usize], n: usize) -> Option<u64> {
    indices.iter().try_fold(0u64, |acc, &i| (1..=n).contains(&i).then(|| acc | 1 << (i - 1)))
}

/// All minor pairs of the reduced echelon forms; the pair must have equal
/// row counts.
pub fn minor_entries(canonical: &ExponentialMapSpec) -> Vec<MinorEntry> {
    let a = maximal_minors(canonical.coefficients()).expect("d <= n");
    let b = maximal_minors(canonical.exponents()).expect("d <= n");
    a.into_iter()
        .map(|(subset, coefficient)| {
            let exponent = b[&subset].clone();
            MinorEntry { subset: subset.iter().map(|i| i + 1).collect(), coefficient, exponent }
        })
        .collect()
}

/// Face structure of the cone generated by the columns of `w`.
pub fn cone_summary(w: &RationalMatrix, cap: usize) -> crate::Result<ConeSummary> {
    let covectors = matroid::covectors(w, cap)?;
    let lattice = FaceLattice::from_covectors(w, &covectors);
    let n = w.cols();
    Ok(ConeSummary {
        whole_space: lattice.faces.len() == 1,
        all_plus: covectors.contains(&SignVector::all_plus(n)),
        faces: lattice.faces.iter().copied().collect(),
        pointed: lattice.pointed,
        lineality_dim: lattice.lineality_dim,
        robustly_generated: lattice.robustly_generated,
    })
}

impl ConeSummary {
    /// The cone clause of robustness under coefficient perturbations.
    pub fn compatible_with(&self, other: &ConeSummary) -> bool {
        (self.whole_space && other.whole_space)
            || (self.all_plus
                && other.all_plus
                && self.faces == other.faces
                && self.robustly_generated
                && other.robustly_generated)
    }
}

fn check_entry(entry: &MinorEntry, table: &[MinorEntry]) -> Check {
    ensure(table.contains(entry), || format!("minor entry for {:?} does not match the matrices", entry.subset))
}

fn mismatch(kind: &str, id: &str, status: Status) -> Check {
    Err(format!("a {kind} certificate is not evidence for {id} = {status:?}"))
}

impl Certificate {
    /// Checks the certificate as evidence that condition `id` has `status`.
    pub fn check(&self, id: &str, status: Status, ctx: &CheckContext) -> Check {
        let n = ctx.n();
        match self {
            Certificate::CommonSign { sign, kernel_vector, row_vector } => {
                if (id, status) != ("i-signs", Status::Fails) {
                    return mismatch("common-sign", id, status);
                }
                ensure(!sign.is_zero(), || "common sign vector is zero".into())?;
                ensure(sign_is(kernel_vector, sign), || "kernel vector has the wrong signs".into())?;
                ensure(sign_is(row_vector, sign), || "row vector has the wrong signs".into())?;
                ensure(ctx.in_kernel(Side::Coefficient, kernel_vector), || "vector not in ker W".into())?;
                ensure(ctx.in_rows(Side::Exponent, row_vector), || "vector not in the row space of W̃".into())
            }
            Certificate::MinorTable { entries } => {
                if id != "i-minors" {
                    return mismatch("minor-table", id, status);
                }
                ctx.original.require_square_pair().map_err(|e| e.to_string())?;
                let table = minor_entries(&ctx.canonical);
                ensure(*entries == table, || "minor table does not match the matrices".into())?;
                let signs: Vec<Sign> = entries.iter().map(MinorEntry::product_sign).collect();
                let has_pos = signs.contains(&Sign::Pos);
                let has_neg = signs.contains(&Sign::Neg);
                match status {
                    Status::Holds => ensure(has_pos != has_neg, || "minor products do not share a weak sign".into()),
                    Status::Fails => ensure(!has_pos && !has_neg, || "some minor product is nonzero".into()),
                    _ => mismatch("minor-table", id, status),
                }
            }
            Certificate::MinorConflict { reference, violating } => {
                if status != Status::Fails {
                    return mismatch("minor-conflict", id, status);
                }
                ctx.original.require_square_pair().map_err(|e| e.to_string())?;
                let table = minor_entries(&ctx.canonical);
                check_entry(reference, &table)?;
                check_entry(violating, &table)?;
                let (r, v) = (reference.product_sign(), violating.product_sign());
                match id {
                    "i-minors" => ensure(r != Sign::Zero && v == r.negate(), || "products are not opposite".into()),
                    "robust-both" => ensure(v == Sign::Zero || (r != Sign::Zero && v != r), || {
                        "products share a strict sign".into()
                    }),
                    "robust-exponents" => {
                        ensure(!reference.coefficient.is_zero() && !violating.coefficient.is_zero(), || {
                            "coefficient minors must be nonzero".into()
                        })?;
                        ensure(v == Sign::Zero || v != r, || "products share a strict sign".into())
                    }
                    _ => mismatch("minor-conflict", id, status),
                }
            }
            Certificate::UncoveredFace { face, row_vector, kernel_vector } => {
                if (id, status) != ("ii", Status::Fails) {
                    return mismatch("uncovered-face", id, status);
                }
                ensure(!face.is_zero() && face.is_nonnegative(), || "face must be nonzero and nonnegative".into())?;
                ensure(sign_is(row_vector, face), || "row vector does not realize the face".into())?;
                ensure(ctx.in_rows(Side::Exponent, row_vector), || "vector not in the row space of W̃".into())?;
                ensure(ctx.in_kernel(Side::Coefficient, kernel_vector), || "vector not in ker W".into())?;
                ensure(positive_on(kernel_vector, face.support()), || "kernel vector not positive on the face".into())
            }
            Certificate::Degeneracy(w) => {
                if (id, status) != ("iii", Status::Fails) {
                    return mismatch("degeneracy", id, status);
                }
                w.check(ctx)
            }
            Certificate::SignConditionViolation { sign, row_vector, nonnegative_kernel_vector, covering_kernel_vector } => {
                if (id, status) != ("iv", Status::Fails) {
                    return mismatch("sign-condition-violation", id, status);
                }
                ensure(sign.plus() != 0, || "sign vector has no positive entry".into())?;
                ensure(sign_is(row_vector, sign), || "row vector has the wrong signs".into())?;
                ensure(ctx.in_rows(Side::Exponent, row_vector), || "vector not in the row space of W̃".into())?;
                let pi = SignVector::indicator(n, sign.plus());
                ensure(sign_is(nonnegative_kernel_vector, &pi), || "nonnegative vector has the wrong support".into())?;
                ensure(ctx.in_kernel(Side::Coefficient, nonnegative_kernel_vector), || "vector not in ker W".into())?;
                ensure(ctx.in_kernel(Side::Coefficient, covering_kernel_vector), || "vector not in ker W".into())?;
                ensure(positive_on(covering_kernel_vector, sign.support()), || {
                    "covering vector not positive on the support".into()
                })
            }
            Certificate::ClosureViolation { kernel_side, sign, kernel_vector, separating_vector } => {
                let expected = match (id, status) {
                    ("cc" | "robust-exponents", Status::Fails) => Side::Coefficient,
                    ("cc-prime" | "robust-coefficients", Status::Fails) => Side::Exponent,
                    _ => return mismatch("closure-violation", id, status),
                };
                ensure(*kernel_side == expected, || "closure violation refers to the wrong kernel".into())?;
                ensure(!sign.is_zero() && sign_is(kernel_vector, sign), || "kernel vector has the wrong signs".into())?;
                ensure(ctx.in_kernel(*kernel_side, kernel_vector), || "vector not in the kernel".into())?;
                let sy = SignVector::sign_of(separating_vector);
                ensure(separating_vector.len() == n && !sy.is_zero() && sy.le_unchecked(sign), || {
                    "separating vector must be nonzero and conform to the sign vector".into()
                })?;
                ensure(ctx.in_rows(kernel_side.other(), separating_vector), || {
                    "separating vector not in the other row space".into()
                })
            }
            Certificate::ConeStructure { closure, coefficient_cone, exponent_cone } => {
                if (id, status) != ("robust-coefficients", Status::Fails) {
                    return mismatch("cone-structure", id, status);
                }
                let cap = ctx.caps.max_n_enumeration;
                let recompute = |w: &RationalMatrix| cone_summary(w, cap).map_err(|e| e.to_string());
                ensure(recompute(ctx.canonical.coefficients())? == *coefficient_cone, || {
                    "coefficient cone summary does not match".into()
                })?;
                ensure(recompute(ctx.canonical.exponents())? == *exponent_cone, || {
                    "exponent cone summary does not match".into()
                })?;
                match closure {
                    Some(c) => c.check(id, status, ctx),
                    None => ensure(!coefficient_cone.compatible_with(exponent_cone), || {
                        "the cones satisfy the robustness clause".into()
                    }),
                }
            }
            Certificate::PositiveDependence { kernel_vector } => {
                if (id, status) != ("pointed", Status::Fails) {
                    return mismatch("positive-dependence", id, status);
                }
                ensure(kernel_vector.len() == n, || "vector has the wrong length".into())?;
                let s = SignVector::sign_of(kernel_vector);
                ensure(!s.is_zero() && s.is_nonnegative(), || "vector must be nonzero and nonnegative".into())?;
                ensure(ctx.in_kernel(Side::Coefficient, kernel_vector), || "vector not in ker W".into())
            }
        }
    }
}

impl DegeneracyWitness {
    pub fn check(&self, ctx: &CheckContext) -> Check {
        let n = ctx.n();
        let z = &self.row_vector;
        ensure(sign_is(z, &self.sign), || "sign does not match the row vector".into())?;
        ensure(self.sign.plus() != 0, || "row vector has no positive component".into())?;
        ensure(ctx.in_rows(Side::Exponent, z), || "vector not in the row space of W̃".into())?;
        // the blocks must be exactly the positive level sets
        let mut covered = 0u64;
        for block in &self.blocks {
            let mask = to_mask(&block.indices, n).ok_or_else(|| "block index out of range".to_string())?;
            ensure(block.level.is_positive(), || "block level must be positive".into())?;
            let level_set = (0..n).filter(|&i| z[i] == block.level).fold(0u64, |acc, i| acc | 1 << i);
            ensure(level_set == mask, || format!("block at level {} is not the level set", block.level))?;
            ensure(sign_is(&block.kernel_vector, &SignVector::indicator(n, mask)), || {
                "block kernel vector has the wrong support".into()
            })?;
            ensure(ctx.in_kernel(Side::Coefficient, &block.kernel_vector), || "block vector not in ker W".into())?;
            covered |= mask;
        }
        ensure(covered == self.sign.plus(), || "blocks do not cover the positive support".into())?;
        ensure(ctx.in_kernel(Side::Coefficient, &self.covering_kernel_vector), || {
            "covering vector not in ker W".into()
        })?;
        ensure(positive_on(&self.covering_kernel_vector, self.sign.support()), || {
            "covering vector not positive on the support".into()
        })
    }
}

/// Levels `{ i : z_i = λ }` for every positive `λ`, in decreasing order.
pub fn positive_levels(z: &[Rational]) -> Vec<(Rational, u64)> {
    let mut levels: Vec<Rational> = z.iter().filter(|x| x.is_positive()).cloned().collect();
    levels.sort();
    levels.dedup();
    levels.reverse();
    levels
        .into_iter()
        .map(|l| {
            let mask = (0..z.len()).filter(|&i| z[i] == l).fold(0u64, |acc, i| acc | 1 << i);
            (l, mask)
        })
        .collect()
}

pub fn indices_of(mask: u64) -> Vec<usize> {
    bits(mask).map(|i| i + 1).collect()
}
