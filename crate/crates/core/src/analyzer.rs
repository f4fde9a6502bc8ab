//! Decision procedures for injectivity, bijectivity and robust bijectivity of
//! `F_c(x) = W (c ∘ exp(W̃ᵀ x))` over all `c > 0`.
//!
//! All procedures run on the reduced echelon forms of `W` and `W̃`; verdicts
//! depend only on the kernels, and certificates are vectors in `ℚⁿ` that are
//! checked against the input matrices.

use num::{One, Zero};

use crate::certificate::{
    cone_summary, minor_entries, Certificate, ConeSummary, MinorEntry, Side,
};
use crate::error::{Error, Result};
use crate::linalg::{primitive, Rational, RationalMatrix, SubspaceBasis};
use crate::matroid::{self, minty_alternative, FaceLattice, MintyWitness};
use crate::nondegeneracy::{
    covering_kernel_vector, newton_polytope_test, nonnegative_kernel_vector, NewtonOutcome, NondegeneracyProblem,
    SearchOutcome,
};
use crate::polyhedral::{realize_in_subspace, realize_sign_vector, vector_in_subspace, Requirement};
use crate::sign::{Sign, SignVector, SignVectorSet};
use crate::spec::{Caps, ExponentialMapSpec};
use crate::verdict::{Classification, ConditionVerdict, Status};

/// Condition identifiers, the statement tag each instantiates, and a summary.
pub const CONDITIONS: &[(&str, &str, &str)] = &[
    ("i-signs", "thm-inj", "sign(ker W) and sign(im W̃ᵀ) meet only in 0"),
    ("i-minors", "cor-inj-det", "products det(W_I) det(W̃_I) share a weak sign, one nonzero"),
    ("ii", "thm-bij-ii", "every nonzero nonnegative exponent covector lies above a nonzero coefficient face"),
    ("iii", "def-nondegenerate", "no degeneracy witness z in im W̃ᵀ exists"),
    ("iv", "prop-iv", "sign condition sufficient for nondegeneracy"),
    ("newton", "prop-newton", "no positive Newton-polytope face is positively dependent in W"),
    ("sign-equal", "cor-bij", "sign(ker W) = sign(ker W̃), sufficient for bijectivity"),
    ("pointed", "prop-pointed", "(+,...,+) is a covector of W"),
    ("cc", "eq-cc", "sign(ker W) lies in the closure of sign(ker W̃)"),
    ("cc-prime", "eq-cc-prime", "sign(ker W̃) lies in the closure of sign(ker W)"),
    ("robust-exponents", "thm-pert-tildeS", "bijective under small perturbations of ker W̃"),
    ("robust-coefficients", "thm-pert-S", "bijective under small perturbations of ker W"),
    ("robust-both", "thm-pert-S-tildeS", "bijective under small perturbations of both kernels"),
];

/// Tag of the overall classification.
pub const CLASSIFICATION_TAG: &str = "thm-bij";

pub fn tag_of(id: &str) -> &'static str {
    CONDITIONS.iter().find(|(i, _, _)| *i == id).map(|(_, t, _)| *t).unwrap_or("")
}

fn verdict(id: &str, status: Status) -> ConditionVerdict {
    ConditionVerdict::new(id, tag_of(id), status)
}

fn holds(id: &str) -> ConditionVerdict {
    verdict(id, Status::Holds)
}

fn fails(id: &str, certificate: Certificate) -> ConditionVerdict {
    verdict(id, Status::Fails).with_certificate(certificate)
}

fn inconclusive(id: &str, reason: impl Into<String>) -> ConditionVerdict {
    verdict(id, Status::Inconclusive).with_reason(reason)
}

/// Which robustness verdicts to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RobustSelection {
    pub exponents: bool,
    pub coefficients: bool,
    pub both: bool,
}

impl Default for RobustSelection {
    fn default() -> Self {
        Self { exponents: true, coefficients: true, both: true }
    }
}

impl RobustSelection {
    pub fn none() -> Self {
        Self { exponents: false, coefficients: false, both: false }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let none = Self::none();
        match s {
            "exponents" => Ok(Self { exponents: true, ..none }),
            "coefficients" => Ok(Self { coefficients: true, ..none }),
            "both" => Ok(Self { both: true, ..none }),
            "all" => Ok(Self::default()),
            other => Err(Error::Parse(format!(
                "unknown robustness selection {other:?}; use exponents, coefficients, both or all"
            ))),
        }
    }
}

/// Verdicts for one pair, with cone structure when it was enumerated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    pub n: usize,
    pub d: usize,
    pub caps: Caps,
    pub coefficient_cone: Option<ConeSummary>,
    pub exponent_cone: Option<ConeSummary>,
    pub conditions: Vec<ConditionVerdict>,
    pub classification: Classification,
}

impl Analysis {
    pub fn condition(&self, id: &str) -> Option<&ConditionVerdict> {
        self.conditions.iter().find(|c| c.id == id)
    }

    /// Status of `id`, `NotApplicable` when it was not computed.
    pub fn status(&self, id: &str) -> Status {
        self.condition(id).map_or(Status::NotApplicable, |c| c.status)
    }

    /// Injectivity from the sign form, or from the minor form when the sign
    /// form hit a cap.
    pub fn injectivity(&self) -> Status {
        match self.status("i-signs") {
            s @ (Status::Holds | Status::Fails) => s,
            _ => self.status("i-minors"),
        }
    }
}

struct Enumerated {
    vectors: SignVectorSet,
    exponent_vectors: SignVectorSet,
    covectors: SignVectorSet,
    exponent_covectors: SignVectorSet,
    faces: FaceLattice,
    exponent_faces: FaceLattice,
}

/// Shared state for the procedures on one pair.
pub struct Analyzer {
    spec: ExponentialMapSpec,
    caps: Caps,
    kernel: SubspaceBasis,
    exponent_kernel: SubspaceBasis,
    enumerated: Option<Enumerated>,
}

impl Analyzer {
    pub fn new(spec: &ExponentialMapSpec, caps: Caps) -> Result<Self> {
        let spec = spec.canonical();
        let n = spec.n();
        let enumerated = if n <= caps.max_n_enumeration {
            let cap = caps.max_n_enumeration;
            let (w, wt) = (spec.coefficients(), spec.exponents());
            let covectors = matroid::covectors(w, cap)?;
            let exponent_covectors = matroid::covectors(wt, cap)?;
            Some(Enumerated {
                vectors: matroid::vectors(w, cap)?,
                exponent_vectors: matroid::vectors(wt, cap)?,
                faces: FaceLattice::from_covectors(w, &covectors),
                exponent_faces: FaceLattice::from_covectors(wt, &exponent_covectors),
                covectors,
                exponent_covectors,
            })
        } else {
            None
        };
        Ok(Self {
            kernel: spec.coefficient_kernel(),
            exponent_kernel: spec.exponent_kernel(),
            spec,
            caps,
            enumerated,
        })
    }

    /// The reduced echelon pair the procedures run on.
    pub fn spec(&self) -> &ExponentialMapSpec {
        &self.spec
    }

    fn n(&self) -> usize {
        self.spec.n()
    }

    fn w(&self) -> &RationalMatrix {
        self.spec.coefficients()
    }

    fn wt(&self) -> &RationalMatrix {
        self.spec.exponents()
    }

    fn cap_reason(&self) -> String {
        format!("max_n_enumeration: n = {} exceeds {}", self.n(), self.caps.max_n_enumeration)
    }

    fn enumerated(&self) -> std::result::Result<&Enumerated, String> {
        self.enumerated.as_ref().ok_or_else(|| self.cap_reason())
    }

    fn kernel_of(&self, side: Side) -> &SubspaceBasis {
        match side {
            Side::Coefficient => &self.kernel,
            Side::Exponent => &self.exponent_kernel,
        }
    }

    /// Primitive `z = W̃ᵀx` with sign vector `tau`.
    fn exponent_row_vector(&self, tau: &SignVector) -> Result<Vec<Rational>> {
        let x = realize_sign_vector(self.wt(), tau)?
            .ok_or_else(|| Error::Internal(format!("{tau} is not a covector of the exponent matrix")))?;
        Ok(primitive(&self.wt().tr_mul_vec(&x)))
    }

    fn kernel_vector(&self, side: Side, tau: &SignVector) -> Result<Vec<Rational>> {
        realize_in_subspace(self.kernel_of(side), tau)
            .map(|v| primitive(&v))
            .ok_or_else(|| Error::Internal(format!("{tau} is not a vector of the kernel")))
    }

    pub fn cone_summaries(&self) -> Option<(ConeSummary, ConeSummary)> {
        self.enumerated.as_ref()?;
        let cap = self.caps.max_n_enumeration;
        Some((cone_summary(self.w(), cap).ok()?, cone_summary(self.wt(), cap).ok()?))
    }

    pub fn injectivity_via_signs(&self) -> Result<ConditionVerdict> {
        let id = "i-signs";
        let e = match self.enumerated() {
            Ok(e) => e,
            Err(reason) => return Ok(inconclusive(id, reason)),
        };
        // both sets are symmetric; report the member whose first entry is +
        let common = e
            .vectors
            .intersection(&e.exponent_covectors)
            .iter()
            .find(|s| !s.is_zero() && s.get(s.support().trailing_zeros() as usize) == Sign::Pos)
            .copied();
        let mirrored = e.exponent_vectors.intersection(&e.covectors).iter().any(|s| !s.is_zero());
        // the mirrored form is equivalent only for kernels of equal dimension
        if self.w().rows() == self.wt().rows() && common.is_some() != mirrored {
            return Err(Error::Internal("injectivity sign test disagrees with its mirrored form".into()));
        }
        Ok(match common {
            None => holds(id),
            Some(sign) => fails(
                id,
                Certificate::CommonSign {
                    kernel_vector: self.kernel_vector(Side::Coefficient, &sign)?,
                    row_vector: self.exponent_row_vector(&sign)?,
                    sign,
                },
            ),
        })
    }

    fn minors(&self) -> Result<Vec<MinorEntry>> {
        self.spec.require_square_pair()?;
        Ok(minor_entries(&self.spec))
    }

    pub fn injectivity_via_minors(&self) -> Result<ConditionVerdict> {
        let id = "i-minors";
        let entries = self.minors()?;
        let Some(reference) = entries.iter().find(|e| e.product_sign() != Sign::Zero) else {
            return Ok(fails(id, Certificate::MinorTable { entries }));
        };
        let r = reference.product_sign();
        if let Some(violating) = entries.iter().find(|e| e.product_sign() == r.negate()) {
            return Ok(fails(
                id,
                Certificate::MinorConflict { reference: reference.clone(), violating: violating.clone() },
            ));
        }
        Ok(holds(id).with_certificate(Certificate::MinorTable { entries }))
    }

    pub fn condition_ii(&self) -> Result<ConditionVerdict> {
        let id = "ii";
        let e = match self.enumerated() {
            Ok(e) => e,
            Err(reason) => return Ok(inconclusive(id, reason)),
        };
        for face in e.exponent_faces.faces.minimal_nonzero_members().iter() {
            let covered = e.faces.faces.iter().any(|f| !f.is_zero() && f.le_unchecked(face));
            if !covered {
                let kernel_vector = covering_kernel_vector(&self.kernel, face.support())
                    .ok_or_else(|| Error::Internal(format!("uncovered face {face} has no positive kernel vector")))?;
                return Ok(fails(
                    id,
                    Certificate::UncoveredFace { face: *face, row_vector: self.exponent_row_vector(face)?, kernel_vector },
                ));
            }
        }
        Ok(holds(id))
    }

    pub fn condition_iv(&self) -> Result<ConditionVerdict> {
        let id = "iv";
        let e = match self.enumerated() {
            Ok(e) => e,
            Err(reason) => return Ok(inconclusive(id, reason)),
        };
        let n = self.n();
        for tau in e.exponent_covectors.iter().filter(|t| t.plus() != 0) {
            let first_fails = e.vectors.contains(&SignVector::indicator(n, tau.plus()));
            let second_fails = e.vectors.iter().any(|rho| tau.support() & !rho.plus() == 0);
            if first_fails && second_fails {
                let nonnegative_kernel_vector = nonnegative_kernel_vector(&self.kernel, tau.plus())
                    .ok_or_else(|| Error::Internal("positive part is not positively dependent".into()))?;
                let covering_kernel_vector = covering_kernel_vector(&self.kernel, tau.support())
                    .ok_or_else(|| Error::Internal("no kernel vector positive on the support".into()))?;
                return Ok(fails(
                    id,
                    Certificate::SignConditionViolation {
                        sign: *tau,
                        row_vector: self.exponent_row_vector(tau)?,
                        nonnegative_kernel_vector,
                        covering_kernel_vector,
                    },
                ));
            }
        }
        Ok(holds(id))
    }

    pub fn newton_polytope_sufficient(&self) -> Result<ConditionVerdict> {
        let id = "newton";
        let e = match self.enumerated() {
            Ok(e) => e,
            Err(reason) => return Ok(verdict(id, Status::NoConclusion).with_reason(reason)),
        };
        Ok(match newton_polytope_test(self.wt(), &e.vectors, self.caps.max_n_enumeration)? {
            NewtonOutcome::Sufficient => holds(id),
            NewtonOutcome::Blocked { face } => verdict(id, Status::NoConclusion)
                .with_reason(format!("positive face {face:?} is positively dependent in W")),
        })
    }

    /// Whether `(+,…,+)` is a covector of `W`.
    pub fn pointed(&self) -> Result<ConditionVerdict> {
        let id = "pointed";
        let n = self.n();
        if realize_sign_vector(self.w(), &SignVector::all_plus(n))?.is_some() {
            return Ok(holds(id));
        }
        let reqs = vec![Requirement::NonNegative; n];
        let ones = vec![Rational::one(); n];
        let v = vector_in_subspace(&self.kernel, &reqs, &[(ones, Requirement::Positive)])
            .ok_or_else(|| Error::Internal("neither alternative holds for the all-plus covector".into()))?;
        Ok(fails(id, Certificate::PositiveDependence { kernel_vector: primitive(&v) }))
    }

    pub fn sign_equality(&self) -> ConditionVerdict {
        let id = "sign-equal";
        match self.enumerated() {
            Ok(e) if e.vectors == e.exponent_vectors => holds(id),
            Ok(_) => verdict(id, Status::NoConclusion),
            Err(reason) => verdict(id, Status::NoConclusion).with_reason(reason),
        }
    }

    /// `(cc)` for `Side::Coefficient`, `(cc′)` for `Side::Exponent`: every sign
    /// vector of that kernel lies below one of the other kernel.
    pub fn closure_condition(&self, side: Side) -> Result<ConditionVerdict> {
        let id = match side {
            Side::Coefficient => "cc",
            Side::Exponent => "cc-prime",
        };
        let e = match self.enumerated() {
            Ok(e) => e,
            Err(reason) => return Ok(inconclusive(id, reason)),
        };
        let (from, to) = match side {
            Side::Coefficient => (&e.vectors, &e.exponent_vectors),
            Side::Exponent => (&e.exponent_vectors, &e.vectors),
        };
        let Some(sign) = from.iter().find(|t| !to.iter().any(|rho| t.le_unchecked(rho))).copied() else {
            return Ok(holds(id));
        };
        let MintyWitness::InComplement(y) = minty_alternative(self.kernel_of(side.other()), &sign)? else {
            return Err(Error::Internal(format!("{sign} is realizable below the other kernel")));
        };
        Ok(fails(
            id,
            Certificate::ClosureViolation {
                kernel_side: side,
                sign,
                kernel_vector: self.kernel_vector(side, &sign)?,
                separating_vector: primitive(&y),
            },
        ))
    }

    pub fn closure_cc(&self) -> Result<ConditionVerdict> {
        self.closure_condition(Side::Coefficient)
    }

    pub fn closure_cc_prime(&self) -> Result<ConditionVerdict> {
        self.closure_condition(Side::Exponent)
    }

    /// Nondegeneracy, with the shortcut that decided it (if any) as route.
    /// The exact search always runs within caps and must agree with the
    /// shortcut.
    pub fn condition_iii(&self, iv: Status, newton: Status) -> Result<ConditionVerdict> {
        let id = "iii";
        let all_plus = realize_sign_vector(self.w(), &SignVector::all_plus(self.n()))?.is_some();
        let route = if all_plus {
            Some("all-plus")
        } else if iv == Status::Holds {
            Some("condition-iv")
        } else if newton == Status::Holds {
            Some("newton")
        } else {
            None
        };
        let e = match self.enumerated() {
            Ok(e) => e,
            Err(reason) => {
                return Ok(match route {
                    Some(r) => holds(id).with_route(r),
                    None => inconclusive(id, reason),
                })
            }
        };
        let problem = NondegeneracyProblem {
            coefficients: self.w(),
            exponents: self.wt(),
            coefficient_kernel: &self.kernel,
            vectors: &e.vectors,
            coefficient_faces: &e.faces.faces,
            exponent_covectors: &e.exponent_covectors,
        };
        Ok(match (problem.search(&self.caps)?, route) {
            (SearchOutcome::NoWitness, r) => holds(id).with_route(r.unwrap_or("exact-search")),
            (SearchOutcome::Witness(w), None) => {
                fails(id, Certificate::Degeneracy(w)).with_route("exact-search")
            }
            (SearchOutcome::Witness(w), Some(r)) => {
                return Err(Error::Internal(format!(
                    "shortcut {r} certifies nondegeneracy but {} is a degeneracy witness",
                    w.sign
                )))
            }
            (SearchOutcome::CapExceeded { .. }, Some(r)) => holds(id).with_route(r),
            (SearchOutcome::CapExceeded { cap, frontier }, None) => {
                let mut v = inconclusive(id, format!("{cap} exceeded"));
                v.frontier = frontier;
                v
            }
        })
    }

    fn minor_conflict_robust_exponents(&self) -> Result<Option<Certificate>> {
        let entries = self.minors()?;
        let relevant: Vec<&MinorEntry> = entries.iter().filter(|e| !e.coefficient.is_zero()).collect();
        let reference = relevant[0];
        let r = reference.product_sign();
        Ok(relevant
            .iter()
            .find(|e| e.product_sign() == Sign::Zero || e.product_sign() != r)
            .map(|v| Certificate::MinorConflict { reference: reference.clone(), violating: (*v).clone() }))
    }

    /// Robustness under perturbations of `ker W̃`: `(cc)`, checked against the
    /// minor form (`det(W_I) ≠ 0` forces a product of one strict sign).
    pub fn robust_exponents(&self, cc: &ConditionVerdict) -> Result<ConditionVerdict> {
        let id = "robust-exponents";
        let conflict = self.minor_conflict_robust_exponents()?;
        match cc.status {
            Status::Holds | Status::Fails => {
                if (cc.status == Status::Holds) != conflict.is_none() {
                    return Err(Error::Internal("closure and minor forms of exponent robustness disagree".into()));
                }
                let mut v = verdict(id, cc.status).with_route("closure");
                v.certificate = cc.certificate.clone();
                Ok(v)
            }
            _ => Ok(match conflict {
                None => holds(id).with_route("minors"),
                Some(c) => fails(id, c).with_route("minors"),
            }),
        }
    }

    /// Robustness under perturbations of both kernels: all minor products
    /// nonzero with one sign, compared with the sign-vector form.
    pub fn robust_both(&self) -> Result<ConditionVerdict> {
        let id = "robust-both";
        let entries = self.minors()?;
        let reference = &entries[0];
        let r = reference.product_sign();
        let conflict = entries
            .iter()
            .find(|e| e.product_sign() == Sign::Zero || e.product_sign() != r)
            .map(|v| Certificate::MinorConflict { reference: reference.clone(), violating: v.clone() });
        if let Ok(e) = self.enumerated() {
            let d = self.w().rows();
            let n = self.n();
            let cocircuits = matroid::cocircuits(self.w())?;
            let rank_one_short = SignVectorSet::from_vectors(
                n,
                e.covectors.iter().filter(|t| !t.is_zero() && t.zeros().count_ones() as usize + 1 == d).copied(),
            )?;
            let sign_form = e.vectors == e.exponent_vectors && rank_one_short == cocircuits;
            if sign_form != conflict.is_none() {
                return Err(Error::Internal("sign and minor forms of two-sided robustness disagree".into()));
            }
        }
        Ok(match conflict {
            None => holds(id),
            Some(c) => fails(id, c),
        })
    }

    /// Robustness under perturbations of `ker W`: `(cc′)` together with the
    /// cone clause (both cones everything, or both pointed with all-plus
    /// covectors, equal faces, and robustly generated).
    pub fn robust_coefficients(&self, cc_prime: &ConditionVerdict) -> Result<ConditionVerdict> {
        let id = "robust-coefficients";
        let Some((coefficient_cone, exponent_cone)) = self.cone_summaries() else {
            return Ok(inconclusive(id, self.cap_reason()));
        };
        match cc_prime.status {
            Status::Holds if coefficient_cone.compatible_with(&exponent_cone) => Ok(holds(id)),
            Status::Holds | Status::Fails => Ok(fails(
                id,
                Certificate::ConeStructure {
                    closure: cc_prime.certificate.clone().map(Box::new),
                    coefficient_cone,
                    exponent_cone,
                },
            )),
            _ => Ok(inconclusive(id, cc_prime.reason.clone().unwrap_or_else(|| self.cap_reason()))),
        }
    }

    pub fn analyze(&self, robust: RobustSelection) -> Result<Analysis> {
        self.spec.require_square_pair()?;
        let i_signs = self.injectivity_via_signs()?;
        let i_minors = self.injectivity_via_minors()?;
        if i_signs.status.is_definitive() && i_signs.status != i_minors.status {
            return Err(Error::Internal("sign and minor forms of injectivity disagree".into()));
        }
        let ii = self.condition_ii()?;
        let iv = self.condition_iv()?;
        let newton = self.newton_polytope_sufficient()?;
        let iii = self.condition_iii(iv.status, newton.status)?;
        let sign_equal = self.sign_equality();
        let pointed = self.pointed()?;
        let cc = self.closure_cc()?;
        let cc_prime = self.closure_cc_prime()?;
        let mut robust_verdicts = Vec::new();
        if robust.exponents {
            robust_verdicts.push(self.robust_exponents(&cc)?);
        }
        if robust.coefficients {
            robust_verdicts.push(self.robust_coefficients(&cc_prime)?);
        }
        if robust.both {
            robust_verdicts.push(self.robust_both()?);
        }
        let mut conditions = vec![i_signs, i_minors, ii, iii, iv, newton, sign_equal, pointed, cc, cc_prime];
        conditions.extend(robust_verdicts);
        let (coefficient_cone, exponent_cone) = match self.cone_summaries() {
            Some((a, b)) => (Some(a), Some(b)),
            None => (None, None),
        };
        let mut analysis = Analysis {
            n: self.n(),
            d: self.w().rows(),
            caps: self.caps,
            coefficient_cone,
            exponent_cone,
            conditions,
            classification: Classification::Inconclusive,
        };
        analysis.classification =
            Classification::from_conditions(analysis.injectivity(), analysis.status("ii"), analysis.status("iii"));
        let sufficient = ["sign-equal", "cc", "robust-exponents", "robust-coefficients", "robust-both"]
            .iter()
            .any(|id| analysis.status(id) == Status::Holds);
        if analysis.classification == Classification::Inconclusive && sufficient {
            analysis.classification = Classification::BijectiveForAllC;
        }
        let violations = implication_violations(&analysis);
        if !violations.is_empty() {
            return Err(Error::Internal(format!("verdicts violate known implications: {}", violations.join("; "))));
        }
        Ok(analysis)
    }
}

/// Implications between conditions that every analysis must satisfy. Only a
/// definite contradiction counts; an undecided consequent is not a violation.
pub fn implication_violations(a: &Analysis) -> Vec<String> {
    let mut out = Vec::new();
    let holds = |id: &str| a.status(id) == Status::Holds;
    let fails = |id: &str| a.status(id) == Status::Fails;
    let mut require = |cond: bool, msg: &str| {
        if !cond {
            out.push(msg.to_string());
        }
    };
    let not_injective = a.injectivity() == Status::Fails;
    if holds("cc") {
        require(!not_injective && !fails("ii") && !fails("iv"), "(cc) holds but (i), (ii) or (iv) fails");
    }
    if holds("cc-prime") {
        require(!not_injective && !fails("iv"), "(cc') holds but (i) or (iv) fails");
    }
    if holds("iv") {
        require(!fails("iii"), "(iv) holds but (iii) fails");
    }
    let not_bijective =
        matches!(a.classification, Classification::NotInjective | Classification::InjectiveNotBijective);
    if holds("sign-equal") {
        require(!not_bijective, "sign vectors agree but the map is not bijective");
    }
    if holds("cc-prime") && holds("ii") {
        if let (Some(c), Some(e)) = (&a.coefficient_cone, &a.exponent_cone) {
            require(c.faces == e.faces, "(cc') and (ii) hold but the face sets differ");
        }
    }
    if a.classification == Classification::BijectiveForAllC && holds("pointed") {
        if let Some(e) = &a.exponent_cone {
            require(e.all_plus, "bijective with all-plus coefficient covector but not exponent covector");
        }
    }
    for id in ["robust-exponents", "robust-coefficients", "robust-both"] {
        if holds(id) {
            require(!not_bijective, "robustly bijective but not bijective");
        }
    }
    if holds("robust-both") {
        require(!fails("robust-exponents") && !fails("robust-coefficients"), "two-sided robustness without one-sided");
    }
    out
}

pub fn analyze(spec: &ExponentialMapSpec, caps: Caps, robust: RobustSelection) -> Result<Analysis> {
    Analyzer::new(spec, caps)?.analyze(robust)
}

pub fn injectivity_via_signs(spec: &ExponentialMapSpec, caps: Caps) -> Result<ConditionVerdict> {
    Analyzer::new(spec, caps)?.injectivity_via_signs()
}

pub fn injectivity_via_minors(spec: &ExponentialMapSpec) -> Result<ConditionVerdict> {
    Analyzer::new(spec, Caps { max_n_enumeration: 0, ..Caps::default() })?.injectivity_via_minors()
}

pub fn closure_cc(spec: &ExponentialMapSpec, caps: Caps) -> Result<ConditionVerdict> {
    Analyzer::new(spec, caps)?.closure_cc()
}

pub fn closure_cc_prime(spec: &ExponentialMapSpec, caps: Caps) -> Result<ConditionVerdict> {
    Analyzer::new(spec, caps)?.closure_cc_prime()
}

pub fn robust_both(spec: &ExponentialMapSpec, caps: Caps) -> Result<ConditionVerdict> {
    Analyzer::new(spec, caps)?.robust_both()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::CheckContext;
    use crate::linalg::{rat, ratio};

    fn spec(w: &[&[i64]], wt: &[&[i64]]) -> ExponentialMapSpec {
        ExponentialMapSpec::from_ints(w, wt).unwrap()
    }

    fn sv(alpha: Rational) -> ExponentialMapSpec {
        let wt = RationalMatrix::from_rows(vec![
            vec![rat(1), rat(1), rat(0), rat(0), rat(-1), alpha],
            vec![rat(1), rat(-1), rat(0), rat(0), rat(0), rat(0)],
            vec![rat(0), rat(0), rat(1), rat(-1), rat(0), rat(0)],
        ])
        .unwrap();
        let w = RationalMatrix::from_ints(&[[0, 0, 1, 1, -1, 0], [1, -1, 0, 0, 0, -1], [0, 0, 1, -1, 0, 0]]).unwrap();
        ExponentialMapSpec::new(w, wt).unwrap()
    }

    fn run(s: &ExponentialMapSpec) -> Analysis {
        analyze(s, Caps::default(), RobustSelection::default()).unwrap()
    }

    fn certificates_check(s: &ExponentialMapSpec, a: &Analysis) {
        let ctx = CheckContext::new(s.clone(), a.caps);
        for c in &a.conditions {
            if let Some(cert) = &c.certificate {
                cert.check(&c.id, c.status, &ctx).unwrap_or_else(|e| panic!("{}: {e}", c.id));
            }
            if c.status == Status::Fails {
                assert!(c.certificate.is_some(), "{} fails without a certificate", c.id);
            }
        }
    }

    #[test]
    fn birch_case_is_robustly_bijective() {
        let s = spec(&[&[1, 0, 1], &[0, 1, 1]], &[&[1, 0, 1], &[0, 1, 1]]);
        let a = run(&s);
        assert_eq!(a.classification, Classification::BijectiveForAllC);
        for id in ["cc", "cc-prime", "sign-equal", "robust-exponents", "robust-both", "robust-coefficients"] {
            assert_eq!(a.status(id), Status::Holds, "{id}");
        }
        certificates_check(&s, &a);
    }

    #[test]
    fn one_dimensional_non_injective() {
        let s = spec(&[&[1, 1]], &[&[1, -1]]);
        let a = run(&s);
        assert_eq!(a.classification, Classification::NotInjective);
        let Some(Certificate::CommonSign { sign, .. }) = &a.condition("i-signs").unwrap().certificate else {
            panic!()
        };
        assert_eq!(sign.to_string(), "+-");
        certificates_check(&s, &a);
    }

    #[test]
    fn sign_vector_example_across_alpha() {
        for (alpha, expected) in [
            (ratio(1, 2), Classification::BijectiveForAllC),
            (ratio(3, 2), Classification::BijectiveForAllC),
            (rat(1), Classification::InjectiveNotBijective),
            (rat(2), Classification::InjectiveNotBijective),
            (rat(3), Classification::InjectiveNotBijective),
        ] {
            let s = sv(alpha.clone());
            let a = run(&s);
            assert_eq!(a.classification, expected, "alpha = {alpha}");
            assert_eq!(a.status("iv"), Status::Fails);
            certificates_check(&s, &a);
        }
    }

    #[test]
    fn closure_example_is_bijective_but_not_exponent_robust() {
        let s = spec(&[&[1, 1, -1]], &[&[1, 0, -1]]);
        let a = run(&s);
        assert_eq!(a.classification, Classification::BijectiveForAllC);
        assert_eq!(a.status("cc"), Status::Fails);
        assert_eq!(a.status("iv"), Status::Holds);
        assert_eq!(a.status("robust-exponents"), Status::Fails);
        certificates_check(&s, &a);
    }

    #[test]
    fn face_covering_example() {
        let s = spec(&[&[1, 1, 0], &[0, 1, 1]], &[&[1, 0, -1], &[0, 1, 0]]);
        let a = run(&s);
        assert_eq!(a.status("cc-prime"), Status::Holds);
        let ii = a.condition("ii").unwrap();
        assert_eq!(ii.status, Status::Fails);
        let Some(Certificate::UncoveredFace { face, .. }) = &ii.certificate else { panic!() };
        assert_eq!(face.to_string(), "0+0");
        assert_eq!(a.status("robust-coefficients"), Status::Fails);
        certificates_check(&s, &a);
    }

    #[test]
    fn minor_examples() {
        let ex1 = spec(&[&[1, 0, -1], &[0, 1, 0]], &[&[1, 0, -1], &[0, 1, -1]]);
        assert_eq!(injectivity_via_minors(&ex1).unwrap().status, Status::Holds);
        assert_eq!(robust_both(&ex1, Caps::default()).unwrap().status, Status::Fails);
        let same = spec(&[&[1, 0, -1], &[0, 1, -1]], &[&[1, 0, -1], &[0, 1, -1]]);
        assert_eq!(robust_both(&same, Caps::default()).unwrap().status, Status::Holds);
    }

    #[test]
    fn tiny_caps_make_nondegeneracy_inconclusive() {
        let s = sv(ratio(3, 2));
        let caps = Caps { max_blocks: 0, ..Caps::default() };
        let a = analyze(&s, caps, RobustSelection::default()).unwrap();
        assert_eq!(a.status("iii"), Status::Inconclusive);
        assert!(a.condition("iii").unwrap().reason.as_deref().unwrap().contains("max_blocks"));
        assert_eq!(a.classification, Classification::Inconclusive);
    }

    #[test]
    fn unequal_row_counts_are_rejected() {
        let s = spec(&[&[1, 1, 0]], &[&[1, 0, 0], &[0, 1, 0]]);
        assert!(matches!(
            analyze(&s, Caps::default(), RobustSelection::default()),
            Err(Error::UnequalRowCounts { .. })
        ));
        injectivity_via_signs(&s, Caps::default()).unwrap();
    }
}
