//! The coefficient/exponent matrix pair and the search caps.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{canonical_form, kernel_basis, row_space_basis, RationalMatrix, SubspaceBasis};
use crate::sign::{DEFAULT_ENUMERATION_CAP, MAX_LEN};

/// The pair `(W, W̃)` defining `F_c(x) = W (c ∘ exp(W̃ᵀ x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentialMapSpec {
    coefficients: RationalMatrix,
    exponents: RationalMatrix,
}

impl ExponentialMapSpec {
    /// Both matrices must have full row rank and the same number of columns.
    pub fn new(coefficients: RationalMatrix, exponents: RationalMatrix) -> Result<Self> {
        if coefficients.cols() != exponents.cols() {
            return Err(Error::Dimension(format!(
                "coefficient matrix has {} columns, exponent matrix has {}",
                coefficients.cols(),
                exponents.cols()
            )));
        }
        if coefficients.cols() > MAX_LEN {
            return Err(Error::Dimension(format!("at most {MAX_LEN} columns are supported")));
        }
        for m in [&coefficients, &exponents] {
            if m.rows() > m.cols() {
                return Err(Error::Dimension(format!("{}x{} matrix has more rows than columns", m.rows(), m.cols())));
            }
            m.require_full_rank()?;
        }
        Ok(Self { coefficients, exponents })
    }

    pub fn from_ints<R: AsRef<[i64]>>(coefficients: &[R], exponents: &[R]) -> Result<Self> {
        Self::new(RationalMatrix::from_ints(coefficients)?, RationalMatrix::from_ints(exponents)?)
    }

    /// `W`.
    pub fn coefficients(&self) -> &RationalMatrix {
        &self.coefficients
    }

    /// `W̃`.
    pub fn exponents(&self) -> &RationalMatrix {
        &self.exponents
    }

    pub fn n(&self) -> usize {
        self.coefficients.cols()
    }

    pub fn require_square_pair(&self) -> Result<()> {
        if self.coefficients.rows() != self.exponents.rows() {
            return Err(Error::UnequalRowCounts { coeff: self.coefficients.rows(), exponent: self.exponents.rows() });
        }
        Ok(())
    }

    /// The same family written with reduced echelon matrices; all verdicts
    /// depend only on `ker W` and `ker W̃`, so this is the form analyzed.
    pub fn canonical(&self) -> Self {
        Self {
            coefficients: canonical_form(&self.coefficients).expect("full rank"),
            exponents: canonical_form(&self.exponents).expect("full rank"),
        }
    }

    /// `S = ker W`.
    pub fn coefficient_kernel(&self) -> SubspaceBasis {
        kernel_basis(&self.coefficients)
    }

    /// `S̃ = ker W̃`.
    pub fn exponent_kernel(&self) -> SubspaceBasis {
        kernel_basis(&self.exponents)
    }

    /// `S⊥ = im Wᵀ`.
    pub fn coefficient_rows(&self) -> SubspaceBasis {
        row_space_basis(&self.coefficients)
    }

    /// `S̃⊥ = im W̃ᵀ`.
    pub fn exponent_rows(&self) -> SubspaceBasis {
        row_space_basis(&self.exponents)
    }
}

/// Resource limits for the enumerations. Exceeding one yields an
/// inconclusive verdict naming the cap, never a guess.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    /// Largest `n` for which sign-vector sets are enumerated.
    pub max_n_enumeration: usize,
    /// Largest number of level partitions examined by the nondegeneracy search.
    pub max_partition_pairs: usize,
    /// Largest positive support split into level blocks.
    pub max_blocks: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self { max_n_enumeration: DEFAULT_ENUMERATION_CAP, max_partition_pairs: 100_000, max_blocks: 8 }
    }
}

impl Caps {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid caps: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(ExponentialMapSpec::from_ints(&[[1, 1]], &[[1, -1]]).is_ok());
        assert!(matches!(
            ExponentialMapSpec::from_ints(&[vec![1, 1]], &[vec![1, 1, 1]]),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            ExponentialMapSpec::from_ints(&[[1, 1], [2, 2]], &[[1, 0], [0, 1]]),
            Err(Error::RankDeficient { rank: 1, rows: 2 })
        ));
        let s = ExponentialMapSpec::from_ints(&[vec![1, 1, 0]], &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert!(matches!(s.require_square_pair(), Err(Error::UnequalRowCounts { coeff: 1, exponent: 2 })));
    }

    #[test]
    fn caps_parse_with_defaults() {
        let c = Caps::from_json(r#"{"max_blocks": 2}"#).unwrap();
        assert_eq!(c, Caps { max_blocks: 2, ..Caps::default() });
        assert!(Caps::from_json(r#"{"max_block": 2}"#).is_err());
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let a = ExponentialMapSpec::from_ints(&[[1, 0, -1], [0, 1, -1]], &[[1, 1, 0], [0, 1, 1]]).unwrap();
        let b = ExponentialMapSpec::from_ints(&[[1, 1, -2], [2, 1, -3]], &[[1, 2, 1], [0, -1, -1]]).unwrap();
        assert_eq!(a.canonical(), b.canonical());
    }
}
