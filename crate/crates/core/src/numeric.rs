//! Floating-point evaluation of `F_c` and a damped Newton solver, used to
//! cross-check the exact verdicts.

use nalgebra::{DMatrix, DVector};
use num::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::spec::ExponentialMapSpec;
use crate::verdict::Classification;

/// Exponents beyond this magnitude are reported as overflow.
pub const EXPONENT_LIMIT: f64 = 700.0;

#[derive(Clone, Debug)]
pub struct NumericMapInstance {
    w: DMatrix<f64>,
    wt: DMatrix<f64>,
    c: DVector<f64>,
}

pub fn to_f64_matrix(m: &RationalMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j).to_f64().unwrap_or(f64::NAN))
}

impl NumericMapInstance {
    pub fn new(w: DMatrix<f64>, wt: DMatrix<f64>, c: DVector<f64>) -> Result<Self> {
        if w.ncols() != wt.ncols() || c.len() != w.ncols() {
            return Err(Error::Dimension(format!(
                "W has {} columns, W̃ has {}, c has length {}",
                w.ncols(),
                wt.ncols(),
                c.len()
            )));
        }
        if w.nrows() != wt.nrows() {
            return Err(Error::UnequalRowCounts { coeff: w.nrows(), exponent: wt.nrows() });
        }
        if c.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(Error::Dimension("c must be positive and finite".into()));
        }
        if w.iter().chain(wt.iter()).any(|x| !x.is_finite()) {
            return Err(Error::Dimension("matrix entries must be finite".into()));
        }
        Ok(Self { w, wt, c })
    }

    pub fn from_spec(spec: &ExponentialMapSpec, c: &[f64]) -> Result<Self> {
        Self::new(to_f64_matrix(spec.coefficients()), to_f64_matrix(spec.exponents()), DVector::from_column_slice(c))
    }

    pub fn dim(&self) -> usize {
        self.w.nrows()
    }

    /// `c ∘ exp(W̃ᵀx)`.
    fn weights(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        if x.len() != self.dim() || x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Dimension(format!("x must be a finite vector of length {}", self.dim())));
        }
        let e = self.wt.tr_mul(x);
        if let Some(v) = e.iter().find(|v| **v > EXPONENT_LIMIT) {
            return Err(Error::Overflow(format!("{v:.3e}")));
        }
        Ok(e.zip_map(&self.c, |ei, ci| ci * ei.max(-EXPONENT_LIMIT).exp()))
    }

    pub fn evaluate(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        Ok(&self.w * self.weights(x)?)
    }

    /// `W diag(c ∘ exp(W̃ᵀx)) W̃ᵀ`.
    pub fn jacobian(&self, x: &DVector<f64>) -> Result<DMatrix<f64>> {
        let weights = self.weights(x)?;
        let mut scaled = self.w.clone();
        for (j, wj) in weights.iter().enumerate() {
            scaled.column_mut(j).scale_mut(*wj);
        }
        Ok(scaled * self.wt.transpose())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    pub max_iterations: usize,
    /// Relative residual tolerance: `‖F(x) − y‖ ≤ tol · max(1, ‖y‖)`.
    pub tolerance: f64,
    /// Iterates with `‖x‖∞` above this are treated as escaping along a ray.
    pub divergence_bound: f64,
    pub armijo: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { max_iterations: 500, tolerance: 1e-10, divergence_bound: 100.0, armijo: 1e-4 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SolveStatus {
    Converged { x: Vec<f64>, residual: f64 },
    DivergedAlongRay { direction: Vec<f64> },
    MaxIterations,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub iterations: usize,
    pub residual: f64,
}

impl SolveResult {
    pub fn solution(&self) -> Option<&[f64]> {
        match &self.status {
            SolveStatus::Converged { x, .. } => Some(x),
            _ => None,
        }
    }
}

/// Damped Newton on `‖F_c(x) − y‖²` with Armijo backtracking (factor 1/2).
/// A singular Jacobian falls back to the gradient direction.
pub fn solve(instance: &NumericMapInstance, y: &DVector<f64>, x0: &DVector<f64>, opts: &SolveOptions) -> Result<SolveResult> {
    if y.len() != instance.dim() || y.iter().any(|v| !v.is_finite()) {
        return Err(Error::Dimension(format!("y must be a finite vector of length {}", instance.dim())));
    }
    let target = opts.tolerance * y.norm().max(1.0);
    let mut x = x0.clone();
    let mut r = instance.evaluate(&x)? - y;
    for it in 0..opts.max_iterations {
        let norm = r.norm();
        if norm <= target {
            return Ok(SolveResult {
                status: SolveStatus::Converged { x: x.iter().copied().collect(), residual: norm },
                iterations: it,
                residual: norm,
            });
        }
        let j = instance.jacobian(&x)?;
        let gradient = j.tr_mul(&r);
        let step = match j.clone().lu().solve(&(-&r)) {
            Some(s) if s.iter().all(|v| v.is_finite()) => s,
            _ => -&gradient,
        };
        let slope = gradient.dot(&step);
        let phi = 0.5 * norm * norm;
        let mut t = 1.0;
        let mut accepted = None;
        while t > 1e-14 {
            let trial = &x + &step * t;
            if let Ok(f) = instance.evaluate(&trial) {
                let rt = f - y;
                if 0.5 * rt.norm_squared() <= phi + opts.armijo * t * slope {
                    accepted = Some((trial, rt));
                    break;
                }
            }
            t *= 0.5;
        }
        let Some((next, rn)) = accepted else {
            return Ok(SolveResult { status: SolveStatus::MaxIterations, iterations: it, residual: norm });
        };
        x = next;
        r = rn;
        let size = x.amax();
        if size > opts.divergence_bound {
            return Ok(SolveResult {
                status: SolveStatus::DivergedAlongRay { direction: (&x / x.norm()).iter().copied().collect() },
                iterations: it + 1,
                residual: r.norm(),
            });
        }
    }
    let residual = r.norm();
    if residual <= target {
        return Ok(SolveResult {
            status: SolveStatus::Converged { x: x.iter().copied().collect(), residual },
            iterations: opts.max_iterations,
            residual,
        });
    }
    Ok(SolveResult { status: SolveStatus::MaxIterations, iterations: opts.max_iterations, residual })
}

/// Runs from the origin and from `starts − 1` random points in `[−3, 3]ᵈ`.
pub fn solve_multistart(
    instance: &NumericMapInstance,
    y: &DVector<f64>,
    starts: usize,
    seed: u64,
    opts: &SolveOptions,
) -> Result<Vec<SolveResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = instance.dim();
    (0..starts.max(1))
        .map(|k| {
            let x0 = if k == 0 {
                DVector::zeros(d)
            } else {
                DVector::from_fn(d, |_, _| rng.gen_range(-3.0..3.0))
            };
            solve(instance, y, &x0, opts)
        })
        .collect()
}

/// Converged points, merged when closer than `tol` in the max norm.
pub fn distinct_solutions(results: &[SolveResult], tol: f64) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for x in results.iter().filter_map(SolveResult::solution) {
        let close = |y: &Vec<f64>| x.iter().zip(y).all(|(a, b)| (a - b).abs() <= tol * a.abs().max(1.0));
        if !out.iter().any(close) {
            out.push(x.to_vec());
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub seed: u64,
    pub trials: usize,
    /// Trials in which the solver found more than one preimage.
    pub multiple_preimages: usize,
    /// Trials in which the target was not recovered.
    pub unrecovered: usize,
    pub contradictions: Vec<String>,
}

/// Samples `c = exp(U(−1,1))` and `x* ∈ U(−1,1)ᵈ`, solves for
/// `y = F_c(x*)` from several starts, and records every outcome that
/// contradicts `classification`.
pub fn probe_bijectivity(
    spec: &ExponentialMapSpec,
    classification: Classification,
    trials: usize,
    starts: usize,
    seed: u64,
) -> Result<ProbeReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = spec.n();
    let d = spec.coefficients().rows();
    let opts = SolveOptions::default();
    let mut report = ProbeReport { seed, trials, multiple_preimages: 0, unrecovered: 0, contradictions: Vec::new() };
    for trial in 0..trials {
        let c: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0f64..1.0).exp()).collect();
        let x_star = DVector::from_fn(d, |_, _| rng.gen_range(-1.0..1.0));
        let instance = NumericMapInstance::from_spec(spec, &c)?;
        let y = instance.evaluate(&x_star)?;
        let results = solve_multistart(&instance, &y, starts, rng.gen(), &opts)?;
        let found = distinct_solutions(&results, 1e-6);
        let recovered = found.iter().any(|x| x.iter().zip(x_star.iter()).all(|(a, b)| (a - b).abs() <= 1e-6));
        if !recovered {
            report.unrecovered += 1;
        }
        if found.len() > 1 {
            report.multiple_preimages += 1;
        }
        let injective = matches!(
            classification,
            Classification::BijectiveForAllC | Classification::InjectiveNotBijective
        );
        if injective && found.len() > 1 {
            report.contradictions.push(format!("trial {trial}: {} preimages of one point", found.len()));
        }
        if classification == Classification::BijectiveForAllC && !recovered {
            report.contradictions.push(format!("trial {trial}: solver did not recover x*"));
        }
    }
    Ok(report)
}
