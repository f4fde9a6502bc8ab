//! The algebra of sign vectors in `{-,0,+}ⁿ`.
//!
//! A sign vector is two bitmasks over at most 64 coordinates. The partial
//! order is the componentwise one with `0 < -` and `0 < +` (and `-`, `+`
//! incomparable).

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num::Signed;

use crate::error::{Error, Result};
use crate::linalg::Rational;

pub const MAX_LEN: usize = 64;
pub const DEFAULT_ENUMERATION_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(x: &Rational) -> Sign {
        if x.is_positive() {
            Sign::Pos
        } else if x.is_negative() {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn of_f64(x: f64) -> Sign {
        if x > 0.0 {
            Sign::Pos
        } else if x < 0.0 {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }

    pub fn mul(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Pos,
            _ => Sign::Neg,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }

    fn rank(self) -> u8 {
        match self {
            Sign::Neg => 0,
            Sign::Zero => 1,
            Sign::Pos => 2,
        }
    }
}

/// Element of `{-,0,+}ⁿ` with `n <= 64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignVector {
    len: u8,
    pos: u64,
    neg: u64,
}

fn mask(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl SignVector {
    pub fn zero(len: usize) -> Self {
        assert!(len <= MAX_LEN, "sign vectors have at most {MAX_LEN} coordinates");
        Self { len: len as u8, pos: 0, neg: 0 }
    }

    pub fn all_plus(len: usize) -> Self {
        let mut s = Self::zero(len);
        s.pos = mask(len);
        s
    }

    /// Builds from raw masks; bits at or above `len` and overlapping bits are rejected.
    pub fn from_masks(len: usize, pos: u64, neg: u64) -> Result<Self> {
        if len > MAX_LEN {
            return Err(Error::Dimension(format!("sign vector length {len} exceeds {MAX_LEN}")));
        }
        if pos & neg != 0 || (pos | neg) & !mask(len) != 0 {
            return Err(Error::Dimension("malformed sign masks".into()));
        }
        Ok(Self { len: len as u8, pos, neg })
    }

    pub fn from_signs(signs: &[Sign]) -> Self {
        let mut s = Self::zero(signs.len());
        for (i, &x) in signs.iter().enumerate() {
            s.set(i, x);
        }
        s
    }

    pub fn sign_of(v: &[Rational]) -> Self {
        Self::from_signs(&v.iter().map(Sign::of).collect::<Vec<_>>())
    }

    /// Indicator vector of a set of coordinates.
    pub fn indicator(len: usize, support: u64) -> Self {
        let mut s = Self::zero(len);
        s.pos = support & mask(len);
        s
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> Sign {
        assert!(i < self.len(), "sign index {i} out of range");
        if self.pos >> i & 1 == 1 {
            Sign::Pos
        } else if self.neg >> i & 1 == 1 {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn set(&mut self, i: usize, s: Sign) {
        assert!(i < self.len(), "sign index {i} out of range");
        let bit = 1u64 << i;
        self.pos &= !bit;
        self.neg &= !bit;
        match s {
            Sign::Pos => self.pos |= bit,
            Sign::Neg => self.neg |= bit,
            Sign::Zero => {}
        }
    }

    pub fn signs(&self) -> Vec<Sign> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    /// Bitmask of `τ⁺`.
    pub fn plus(&self) -> u64 {
        self.pos
    }

    /// Bitmask of `τ⁻`.
    pub fn minus(&self) -> u64 {
        self.neg
    }

    /// Bitmask of the support `τ⁺ ∪ τ⁻`.
    pub fn support(&self) -> u64 {
        self.pos | self.neg
    }

    /// Bitmask of the zero set `τ⁰`.
    pub fn zeros(&self) -> u64 {
        !self.support() & mask(self.len())
    }

    pub fn is_zero(&self) -> bool {
        self.support() == 0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.neg == 0
    }

    pub fn negate(&self) -> Self {
        Self { len: self.len, pos: self.neg, neg: self.pos }
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch { left: self.len(), right: other.len() });
        }
        Ok(())
    }

    /// `self ≤ other` in the order with `0 < -`, `0 < +`.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.le_unchecked(other))
    }

    pub(crate) fn le_unchecked(&self, other: &Self) -> bool {
        self.pos & !other.pos == 0 && self.neg & !other.neg == 0
    }

    /// `(τ∘ρ)ᵢ = τᵢ` if `τᵢ ≠ 0`, else `ρᵢ`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        let free = !self.support();
        Self { len: self.len, pos: self.pos | (other.pos & free), neg: self.neg | (other.neg & free) }
    }

    /// All products zero, or both signs occur among the products.
    pub fn is_orthogonal(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.orthogonal_unchecked(other))
    }

    pub(crate) fn orthogonal_unchecked(&self, other: &Self) -> bool {
        let plus = (self.pos & other.pos) | (self.neg & other.neg);
        let minus = (self.pos & other.neg) | (self.neg & other.pos);
        (plus == 0) == (minus == 0)
    }

    /// Every sign vector of length `len`, `3^len` of them.
    pub fn enumerate_all(len: usize, cap: usize) -> Result<Vec<SignVector>> {
        if len > cap {
            return Err(Error::CapExceeded { n: len, cap });
        }
        let mut out = vec![SignVector::zero(len)];
        for i in 0..len {
            let mut next = Vec::with_capacity(out.len() * 3);
            for s in &out {
                for x in [Sign::Neg, Sign::Zero, Sign::Pos] {
                    let mut t = *s;
                    t.set(i, x);
                    next.push(t);
                }
            }
            out = next;
        }
        Ok(out)
    }
}

impl Ord for SignVector {
    /// Lexicographic with `- < 0 < +` in each coordinate.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for i in 0..self.len() {
                let c = self.get(i).rank().cmp(&other.get(i).rank());
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for SignVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            write!(f, "{}", self.get(i).symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignVector({self})")
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .map(|c| match c {
                '-' => Ok(Sign::Neg),
                '0' => Ok(Sign::Zero),
                '+' => Ok(Sign::Pos),
                other => Err(Error::Parse(format!("invalid sign symbol {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if signs.len() > MAX_LEN {
            return Err(Error::Parse(format!("sign vector longer than {MAX_LEN}")));
        }
        Ok(SignVector::from_signs(&signs))
    }
}

impl serde::Serialize for SignVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for SignVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Finite set of equal-length sign vectors, iterated in sorted order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignVectorSet {
    len: usize,
    members: BTreeSet<SignVector>,
}

impl SignVectorSet {
    pub fn new(len: usize) -> Self {
        Self { len, members: BTreeSet::new() }
    }

    pub fn from_vectors(len: usize, vectors: impl IntoIterator<Item = SignVector>) -> Result<Self> {
        let mut set = Self::new(len);
        for v in vectors {
            set.insert(v)?;
        }
        Ok(set)
    }

    /// Parses strings such as `"+0-"`; panics on malformed input. Intended for tests and literals.
    pub fn parse(len: usize, items: &[&str]) -> Self {
        Self::from_vectors(len, items.iter().map(|s| s.parse::<SignVector>().expect("valid sign vector")))
            .expect("equal lengths")
    }

    pub fn len_of_vectors(&self) -> usize {
        self.len
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn insert(&mut self, v: SignVector) -> Result<bool> {
        if v.len() != self.len {
            return Err(Error::LengthMismatch { left: self.len, right: v.len() });
        }
        Ok(self.members.insert(v))
    }

    pub fn contains(&self, v: &SignVector) -> bool {
        self.members.contains(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &SignVector> + '_ {
        self.members.iter()
    }

    pub fn is_subset(&self, other: &SignVectorSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &SignVectorSet) -> SignVectorSet {
        Self { len: self.len, members: self.members.intersection(&other.members).copied().collect() }
    }

    /// All `σ ∈ {-,0,+}ⁿ` orthogonal to every member, by brute force.
    pub fn orthogonal_set(&self, cap: usize) -> Result<SignVectorSet> {
        let all = SignVector::enumerate_all(self.len, cap)?;
        Ok(Self {
            len: self.len,
            members: all.into_iter().filter(|s| self.members.iter().all(|t| s.orthogonal_unchecked(t))).collect(),
        })
    }

    /// `{τ : τ ≤ ρ for some member ρ}`.
    pub fn closure(&self) -> SignVectorSet {
        let mut members = BTreeSet::new();
        for rho in &self.members {
            let support = rho.support();
            // every τ ≤ ρ is ρ restricted to a subset of its support
            let mut sub = support;
            loop {
                members.insert(SignVector { len: rho.len, pos: rho.pos & sub, neg: rho.neg & sub });
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & support;
            }
        }
        Self { len: self.len, members }
    }

    /// `T ∩ {0,+}ⁿ`.
    pub fn nonneg_part(&self) -> SignVectorSet {
        Self { len: self.len, members: self.members.iter().filter(|s| s.is_nonnegative()).copied().collect() }
    }

    /// Nonzero members whose support strictly contains no other nonzero member's support.
    pub fn minimal_support_members(&self) -> SignVectorSet {
        let nonzero: Vec<&SignVector> = self.members.iter().filter(|s| !s.is_zero()).collect();
        let members = nonzero
            .iter()
            .filter(|s| {
                let sup = s.support();
                !nonzero.iter().any(|t| {
                    let tsup = t.support();
                    tsup != sup && tsup & !sup == 0
                })
            })
            .map(|s| **s)
            .collect();
        Self { len: self.len, members }
    }

    /// Members that are minimal under `≤` among nonzero members.
    pub fn minimal_nonzero_members(&self) -> SignVectorSet {
        let nonzero: Vec<&SignVector> = self.members.iter().filter(|s| !s.is_zero()).collect();
        let members = nonzero
            .iter()
            .filter(|s| !nonzero.iter().any(|t| t != *s && t.le_unchecked(s)))
            .map(|s| **s)
            .collect();
        Self { len: self.len, members }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.members.iter().map(ToString::to_string).collect()
    }
}

impl<'a> IntoIterator for &'a SignVectorSet {
    type Item = &'a SignVector;
    type IntoIter = std::collections::btree_set::Iter<'a, SignVector>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Indices of set bits in increasing order.
pub fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}
