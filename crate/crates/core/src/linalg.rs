//! Exact rational linear algebra.
//!
//! Everything here works over [`BigRational`]. Ranks and determinants use
//! fraction-free (Bareiss) elimination on integer-scaled rows; kernels and
//! row spaces come from the reduced row echelon form, which is canonical for
//! a given row space and therefore gives reproducible bases.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// A dense `rows x cols` matrix of rationals in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", self.row(i).iter().join(" "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("{rows}x{cols} matrix must be non-empty")));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from integer rows.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| rat_vec(r.as_ref())).collect())
    }

    pub fn identity(d: usize) -> Self {
        let mut entries = vec![Rational::zero(); d * d];
        for i in 0..d {
            entries[i * d + i] = Rational::one();
        }
        Self { rows: d, cols: d, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero_column(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self.get(i, j).is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, entries }
    }

    /// `M v` for `v` of length `cols`.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "mul_vec dimension");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// `Mᵀ u` for `u` of length `rows`.
    pub fn tr_mul_vec(&self, u: &[Rational]) -> Vec<Rational> {
        assert_eq!(u.len(), self.rows, "tr_mul_vec dimension");
        let mut out = vec![Rational::zero(); self.cols];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += ui * self.get(i, j);
            }
        }
        out
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                entries.push(acc);
            }
        }
        RationalMatrix::new(self.rows, other.cols, entries)
    }

    /// Submatrix with the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> RationalMatrix {
        let mut entries = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        RationalMatrix { rows: self.rows, cols: cols.len(), entries }
    }

    pub fn is_full_row_rank(&self) -> bool {
        rank(self) == self.rows
    }

    /// Errors unless the matrix has full row rank and `rows <= cols`.
    pub fn require_full_rank(&self) -> Result<()> {
        let r = rank(self);
        if r != self.rows {
            return Err(Error::RankDeficient { rank: r, rows: self.rows });
        }
        Ok(())
    }
}

/// Basis of a linear subspace of `ℚⁿ`. The vectors are linearly independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient: usize,
    vectors: Vec<Vec<Rational>>,
}

impl SubspaceBasis {
    pub fn new(ambient: usize, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(Error::Dimension(format!("basis vectors must have length {ambient}")));
        }
        if rank_of_rows(&vectors, ambient) != vectors.len() {
            return Err(Error::DependentBasis);
        }
        Ok(Self { ambient, vectors })
    }

    /// Spanning set, reduced to a basis.
    pub fn spanned_by(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        let (rows, _) = rref_rows(vectors, ambient);
        Self { ambient, vectors: rows }
    }

    pub fn zero(ambient: usize) -> Self {
        Self { ambient, vectors: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self { ambient, vectors: RationalMatrix::identity(ambient).row_vectors() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    /// `Σ coefficients[j] · vectors[j]`.
    pub fn combine(&self, coefficients: &[Rational]) -> Vec<Rational> {
        assert_eq!(coefficients.len(), self.vectors.len());
        let mut out = vec![Rational::zero(); self.ambient];
        for (c, v) in coefficients.iter().zip(&self.vectors) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(v) {
                *o += c * x;
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        if is_zero_vector(v) {
            return true;
        }
        let mut rows = self.vectors.clone();
        rows.push(v.to_vec());
        rank_of_rows(&rows, self.ambient) == self.vectors.len()
    }

    /// Mutual containment.
    pub fn same_span(&self, other: &SubspaceBasis) -> bool {
        self.ambient == other.ambient
            && self.dim() == other.dim()
            && other.vectors.iter().all(|v| self.contains(v))
            && self.vectors.iter().all(|v| other.contains(v))
    }

    pub fn orthogonal_complement(&self) -> SubspaceBasis {
        if self.vectors.is_empty() {
            return SubspaceBasis::full(self.ambient);
        }
        nullspace_of_rows(&self.vectors, self.ambient)
    }
}

/// Integer rows obtained by clearing denominators row by row.
fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect()
        })
        .collect()
}

/// Fraction-free Gaussian elimination. Returns the rank and, for square input,
/// the determinant of the integer matrix.
fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> (usize, BigInt) {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut negate = false;
    for k in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][k].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            negate = !negate;
        }
        for i in rank + 1..rows {
            for j in k + 1..cols {
                let v = &a[rank][k] * &a[i][j] - &a[i][k] * &a[rank][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[rank][k].clone();
        rank += 1;
    }
    let det = if rows == cols && rank == rows {
        if negate {
            -prev
        } else {
            prev
        }
    } else {
        BigInt::zero()
    };
    (rank, det)
}

fn rank_of_rows(rows: &[Vec<Rational>], cols: usize) -> usize {
    if rows.is_empty() || cols == 0 {
        return 0;
    }
    bareiss(integer_rows(rows), cols).0
}

/// Row rank by fraction-free elimination.
pub fn rank(m: &RationalMatrix) -> usize {
    rank_of_rows(&m.row_vectors(), m.cols)
}

/// Determinant of a square matrix.
pub fn determinant(m: &RationalMatrix) -> Result<Rational> {
    if m.rows != m.cols {
        return Err(Error::Dimension(format!("determinant of {}x{} matrix", m.rows, m.cols)));
    }
    let rows = m.row_vectors();
    let scales: Vec<BigInt> =
        rows.iter().map(|row| row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))).collect();
    let (_, det) = bareiss(integer_rows(&rows), m.cols);
    let denom = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
    Ok(Rational::new(det, denom))
}

/// Reduced row echelon form of a list of rows; returns the nonzero rows and
/// the pivot columns.
fn rref_rows(rows: &[Vec<Rational>], cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &a[r][j];
                    a[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Reduced row echelon form: nonzero rows and pivot columns.
pub fn rref(m: &RationalMatrix) -> (Vec<Vec<Rational>>, Vec<usize>) {
    rref_rows(&m.row_vectors(), m.cols)
}

fn nullspace_of_rows(rows: &[Vec<Rational>], cols: usize) -> SubspaceBasis {
    let (r, pivots) = rref_rows(rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let vectors = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect();
    SubspaceBasis { ambient: cols, vectors }
}

/// Basis of `ker M`, one vector per free column of the reduced echelon form.
pub fn kernel_basis(m: &RationalMatrix) -> SubspaceBasis {
    nullspace_of_rows(&m.row_vectors(), m.cols)
}

/// Basis of `im Mᵀ` (the row space), as reduced echelon rows.
pub fn row_space_basis(m: &RationalMatrix) -> SubspaceBasis {
    let (rows, _) = rref(m);
    SubspaceBasis { ambient: m.cols, vectors: rows }
}

/// The matrix whose rows are the reduced echelon basis of the row space of `m`.
/// Two matrices with the same row space have the same canonical form.
pub fn canonical_form(m: &RationalMatrix) -> Result<RationalMatrix> {
    let (rows, _) = rref(m);
    if rows.is_empty() {
        return Err(Error::RankDeficient { rank: 0, rows: m.rows });
    }
    RationalMatrix::from_rows(rows)
}

/// All `d x d` minors of a `d x n` matrix keyed by the sorted column subset.
pub fn maximal_minors(m: &RationalMatrix) -> Result<BTreeMap<Vec<usize>, Rational>> {
    if m.rows > m.cols {
        return Err(Error::Dimension(format!("{}x{} matrix has no maximal minors", m.rows, m.cols)));
    }
    (0..m.cols)
        .combinations(m.rows)
        .map(|subset| {
            let det = determinant(&m.select_columns(&subset))?;
            Ok((subset, det))
        })
        .collect()
}

/// A full-rank `d x n` matrix with kernel equal to the span of `basis`, with
/// `d = n - dim`. Rows are the reduced echelon basis of the orthogonal complement.
pub fn matrix_with_kernel(basis: &SubspaceBasis) -> Result<RationalMatrix> {
    if rank_of_rows(&basis.vectors, basis.ambient) != basis.dim() {
        return Err(Error::DependentBasis);
    }
    let complement = basis.orthogonal_complement();
    if complement.dim() == 0 {
        return Err(Error::Dimension("kernel is the whole space; no rows remain".into()));
    }
    let (rows, _) = rref_rows(&complement.vectors, basis.ambient);
    RationalMatrix::from_rows(rows)
}

/// Exact solution of `M x = b` when one exists.
pub fn solve(m: &RationalMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(b.len(), m.rows);
    let augmented: Vec<Vec<Rational>> = (0..m.rows)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();
    let (r, pivots) = rref_rows(&augmented, m.cols + 1);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); m.cols];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[m.cols].clone();
    }
    Some(x)
}

/// True when `z` lies in the row space of `m`.
pub fn in_row_space(m: &RationalMatrix, z: &[Rational]) -> bool {
    z.len() == m.cols && solve(&m.transpose(), z).is_some()
}

pub fn in_kernel(m: &RationalMatrix, v: &[Rational]) -> bool {
    v.len() == m.cols && is_zero_vector(&m.mul_vec(v))
}

/// Scales a nonzero vector to a primitive integer vector with the same signs.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

pub fn abs_max(v: &[Rational]) -> Rational {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_ints(rows).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RationalMatrix::identity(2)), 2);
        assert_eq!(rank(&m(&[&[1, 1, -1]])), 1);
        assert_eq!(rank(&m(&[&[1, 0, -1], &[0, 1, -1], &[1, 1, -2]])), 2);
    }

    #[test]
    fn rank_with_fractions_and_skipped_columns() {
        let a = RationalMatrix::from_rows(vec![
            vec![rat(0), ratio(1, 2), rat(1)],
            vec![rat(0), ratio(1, 3), ratio(2, 3)],
        ])
        .unwrap();
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn kernel_examples() {
        let w = m(&[&[1, 1, -1]]);
        let k = kernel_basis(&w);
        assert_eq!(k.dim(), 2);
        for v in k.vectors() {
            assert!(in_kernel(&w, v));
        }
        let expected = SubspaceBasis::new(3, vec![rat_vec(&[1, 0, 1]), rat_vec(&[0, 1, 1])]).unwrap();
        assert!(k.same_span(&expected));

        assert_eq!(kernel_basis(&RationalMatrix::identity(2)).dim(), 0);

        let wt = m(&[&[1, 0, -1]]);
        let k = kernel_basis(&wt);
        let expected = SubspaceBasis::new(3, vec![rat_vec(&[1, 0, 1]), rat_vec(&[0, 1, 0])]).unwrap();
        assert!(k.same_span(&expected));
    }

    #[test]
    fn row_space_examples() {
        let r = row_space_basis(&m(&[&[1, 1, -1]]));
        assert_eq!(r.vectors(), &[rat_vec(&[1, 1, -1])]);
        let r = row_space_basis(&RationalMatrix::identity(2));
        assert_eq!(r.vectors(), &[rat_vec(&[1, 0]), rat_vec(&[0, 1])]);

        let a = m(&[&[1, 0, -1], &[0, 1, -1]]);
        let r = row_space_basis(&a);
        let k = kernel_basis(&a);
        assert_eq!(r.dim(), 2);
        for u in r.vectors() {
            for v in k.vectors() {
                assert!(dot(u, v).is_zero());
            }
        }
    }

    #[test]
    fn minors_examples() {
        let mm = maximal_minors(&m(&[&[1, 0, -1], &[0, 1, -1]])).unwrap();
        assert_eq!(mm[&vec![0, 1]], rat(1));
        assert_eq!(mm[&vec![0, 2]], rat(-1));
        assert_eq!(mm[&vec![1, 2]], rat(1));

        let mm = maximal_minors(&RationalMatrix::identity(3)).unwrap();
        assert_eq!(mm.len(), 1);
        assert_eq!(mm[&vec![0, 1, 2]], rat(1));

        let mm = maximal_minors(&m(&[&[1, 1, -1]])).unwrap();
        assert_eq!(mm.values().cloned().collect::<Vec<_>>(), rat_vec(&[1, 1, -1]));
    }

    #[test]
    fn determinant_with_fractions() {
        let a = RationalMatrix::from_rows(vec![vec![ratio(1, 2), rat(1)], vec![ratio(1, 3), rat(2)]]).unwrap();
        // 1/2*2 - 1*1/3
        assert_eq!(determinant(&a).unwrap(), ratio(2, 3));
        let swapped = RationalMatrix::from_rows(vec![vec![ratio(1, 3), rat(2)], vec![ratio(1, 2), rat(1)]]).unwrap();
        assert_eq!(determinant(&swapped).unwrap(), ratio(-2, 3));
    }

    #[test]
    fn matrix_with_kernel_examples() {
        let b = SubspaceBasis::new(3, vec![rat_vec(&[1, 0, 1]), rat_vec(&[0, 1, 1])]).unwrap();
        let w = matrix_with_kernel(&b).unwrap();
        assert_eq!(w, m(&[&[1, 1, -1]]));

        let w = matrix_with_kernel(&SubspaceBasis::zero(2)).unwrap();
        assert_eq!(determinant(&w).unwrap(), rat(1));

        let b = SubspaceBasis::new(2, vec![rat_vec(&[1, 1])]).unwrap();
        assert_eq!(matrix_with_kernel(&b).unwrap(), m(&[&[1, -1]]));

        assert_eq!(
            SubspaceBasis::new(2, vec![rat_vec(&[1, 1]), rat_vec(&[2, 2])]),
            Err(Error::DependentBasis)
        );
    }

    #[test]
    fn solve_and_membership() {
        let a = m(&[&[1, 0, -1], &[0, 1, -1]]);
        assert!(in_row_space(&a, &rat_vec(&[2, 3, -5])));
        assert!(!in_row_space(&a, &rat_vec(&[1, 0, 0])));
        assert!(in_kernel(&a, &rat_vec(&[1, 1, 1])));
    }
}
