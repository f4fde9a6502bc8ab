//! Limits of `F_c(t x)` as `t → ∞`.
//!
//! Grouping the terms by their exponent level `λ = w̃ⁱ·x` gives
//! `F_c(t x) = Σ_λ e^{λt} Σ_{i ∈ I(x,λ)} cᵢ wⁱ`; the largest level with a
//! nonzero inner sum decides between divergence and convergence.

use std::collections::BTreeMap;

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::{rational_str, rational_vec_str};
use crate::linalg::{dot, is_zero_vector, Rational};
use crate::polyhedral::is_interior_point;
use crate::spec::ExponentialMapSpec;

/// The level sets `I(x,λ) = { i : w̃ⁱ·x = λ }` of a direction (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelPartition {
    pub direction: Vec<Rational>,
    pub levels: BTreeMap<Rational, Vec<usize>>,
    /// Largest level whose weighted coefficient sum is nonzero.
    pub lambda_max: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RayLimit {
    /// `e^{-λt} F_c(t x)` tends to `direction`.
    Diverges {
        #[serde(with = "rational_str")]
        lambda: Rational,
        #[serde(with = "rational_vec_str")]
        direction: Vec<Rational>,
    },
    /// `F_c(t x)` tends to `limit`, a point of the coefficient cone.
    Converges {
        #[serde(with = "rational_vec_str")]
        limit: Vec<Rational>,
        interior: bool,
    },
}

fn weighted_sum(spec: &ExponentialMapSpec, c: &[Rational], indices: &[usize]) -> Vec<Rational> {
    let w = spec.coefficients();
    let mut out = vec![Rational::zero(); w.rows()];
    for &i in indices {
        for (r, o) in out.iter_mut().enumerate() {
            *o += &c[i] * w.get(r, i);
        }
    }
    out
}

pub fn level_partition(spec: &ExponentialMapSpec, c: &[Rational], x: &[Rational]) -> Result<LevelPartition> {
    let wt = spec.exponents();
    let n = spec.n();
    if x.len() != wt.rows() {
        return Err(Error::LengthMismatch { left: wt.rows(), right: x.len() });
    }
    if c.len() != n {
        return Err(Error::LengthMismatch { left: n, right: c.len() });
    }
    if c.iter().any(|ci| !ci.is_positive()) {
        return Err(Error::Dimension("coefficients c must be positive".into()));
    }
    if is_zero_vector(x) {
        return Err(Error::Dimension("the ray direction must be nonzero".into()));
    }
    let mut levels: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        levels.entry(dot(&wt.column(i), x)).or_default().push(i);
    }
    let lambda_max =
        levels.iter().rev().find(|(_, idx)| !is_zero_vector(&weighted_sum(spec, c, idx))).map(|(l, _)| l.clone());
    Ok(LevelPartition { direction: x.to_vec(), levels, lambda_max })
}

pub fn ray_limit(spec: &ExponentialMapSpec, c: &[Rational], x: &[Rational]) -> Result<(LevelPartition, RayLimit)> {
    let partition = level_partition(spec, c, x)?;
    let limit = match &partition.lambda_max {
        Some(l) if l.is_positive() => {
            RayLimit::Diverges { lambda: l.clone(), direction: weighted_sum(spec, c, &partition.levels[l]) }
        }
        _ => {
            let at_zero = partition.levels.get(&Rational::zero()).map(Vec::as_slice).unwrap_or(&[]);
            let limit = weighted_sum(spec, c, at_zero);
            let interior = is_interior_point(spec.coefficients(), &limit)?;
            RayLimit::Converges { limit, interior }
        }
    };
    Ok((partition, limit))
}
