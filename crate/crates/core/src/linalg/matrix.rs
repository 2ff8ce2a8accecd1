//! Dense matrices over the rationals.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::scalar::{common_denominator, format_scalar, Scalar};
use super::upoly::{self, UPoly};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// The characteristic polynomial did not split into linear factors over the
/// rationals. `factor` holds the residual factor (coefficients low to high)
/// and `roots` the rational eigenvalues peeled off before it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitFailure {
    pub roots: Vec<Scalar>,
    pub factor: Vec<Scalar>,
}

impl fmt::Display for SplitFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.factor.iter().map(format_scalar).collect();
        write!(f, "characteristic polynomial has irreducible factor with coefficients [{}]", terms.join(", "))
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix with `cols` columns from a possibly empty list of rows.
    pub fn from_rows_with_cols(rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        assert!(rows.iter().all(|row| row.len() == cols), "ragged rows");
        Matrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from_integer(x.into())).collect()).collect())
    }

    pub fn from_columns(cols: &[Vec<Scalar>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_rows_with_cols(idx.iter().map(|&i| self.row(i).to_vec()).collect(), self.cols)
    }

    pub fn is_skew(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..self.cols).all(|j| self[(i, j)] == -self[(j, i)].clone()))
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn pow(&self, k: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Integer rows obtained by clearing each row's denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let den = Scalar::from_integer(common_denominator(row.iter()));
                row.iter().map(|x| (x * &den).to_integer()).collect()
            })
            .collect()
    }

    /// Row rank, by fraction-free (Bareiss) elimination on the row-scaled
    /// integer matrix.
    pub fn rank(&self) -> usize {
        let mut a = self.integer_rows();
        bareiss_rank(&mut a, self.cols)
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Scalar::one();
        }
        let mut scale = Scalar::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let row = self.row(i);
            let den = common_denominator(row.iter());
            scale *= Scalar::from_integer(den.clone());
            let den = Scalar::from_integer(den);
            a.push(row.iter().map(|x| (x * &den).to_integer()).collect());
        }
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return Scalar::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let det = Scalar::from_integer(a[n - 1][n - 1].clone()) / scale;
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = Scalar::one() / &m[(r, c)];
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(i, j)] - &f * &m[(r, j)];
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of the right null space `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    /// A basis of the row space (the nonzero rows of the RREF).
    pub fn row_space(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }

    /// One solution of `M x = b`, if the system is consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r[(i, self.cols)].clone();
        }
        Some(x)
    }

    /// Characteristic polynomial `det(t I - M)`, coefficients low to high.
    pub fn char_poly(&self) -> UPoly {
        assert!(self.is_square());
        let h = self.hessenberg();
        let n = self.rows;
        // p[k] = char poly of leading k x k block
        let mut p: Vec<UPoly> = vec![vec![Scalar::one()]];
        for k in 1..=n {
            let hk = &h[(k - 1, k - 1)];
            let mut next = upoly::mul(&p[k - 1], &vec![-hk.clone(), Scalar::one()]);
            let mut prod = Scalar::one();
            for i in (1..k).rev() {
                prod *= &h[(i, i - 1)];
                if prod.is_zero() {
                    break;
                }
                let c = &h[(i - 1, k - 1)] * &prod;
                if !c.is_zero() {
                    next = upoly::sub(&next, &upoly::scale(&p[i - 1], &c));
                }
            }
            p.push(next);
        }
        p.pop().unwrap()
    }

    /// Similar upper Hessenberg matrix.
    fn hessenberg(&self) -> Matrix {
        let n = self.rows;
        let mut h = self.clone();
        for k in 0..n.saturating_sub(2) {
            let Some(p) = (k + 1..n).find(|&i| !h[(i, k)].is_zero()) else {
                continue;
            };
            if p != k + 1 {
                h.swap_rows(p, k + 1);
                for i in 0..n {
                    h.data.swap(i * n + p, i * n + k + 1);
                }
            }
            let piv = h[(k + 1, k)].clone();
            for i in k + 2..n {
                if h[(i, k)].is_zero() {
                    continue;
                }
                let f = &h[(i, k)] / &piv;
                // row_i -= f row_{k+1}
                for j in 0..n {
                    if h[(k + 1, j)].is_zero() {
                        continue;
                    }
                    let v = &h[(i, j)] - &f * &h[(k + 1, j)];
                    h[(i, j)] = v;
                }
                // col_{k+1} += f col_i
                for r in 0..n {
                    if h[(r, i)].is_zero() {
                        continue;
                    }
                    let v = &h[(r, k + 1)] + &f * &h[(r, i)];
                    h[(r, k + 1)] = v;
                }
            }
        }
        h
    }

    fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self[(i, j)].is_zero()))
    }

    fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)].is_zero()))
    }

    /// Eigenvalue multiset (ascending) when the characteristic polynomial
    /// splits over the rationals.
    pub fn rational_eigenvalues(&self) -> Result<Vec<Scalar>, SplitFailure> {
        assert!(self.is_square(), "eigenvalues of a non-square matrix");
        if self.is_upper_triangular() || self.is_lower_triangular() {
            let mut d: Vec<Scalar> = (0..self.rows).map(|i| self[(i, i)].clone()).collect();
            d.sort();
            return Ok(d);
        }
        let cp = self.char_poly();
        let (mut roots, rest) = upoly::rational_roots(&cp);
        roots.sort();
        if upoly::degree(&rest) > 0 {
            return Err(SplitFailure { roots, factor: rest });
        }
        Ok(roots)
    }
}

/// Rank of an integer matrix by Bareiss elimination (destroys `a`).
pub(crate) fn bareiss_rank(a: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).filter(|&r| !a[r][c].is_zero()).min_by_key(|&r| a[r][c].abs()) else {
            continue;
        };
        a.swap(p, rank);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let v = (&a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Rank of a list of vectors of common length `dim`.
pub fn rank_of(vectors: &[Vec<Scalar>], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows_with_cols(vectors.to_vec(), dim).rank()
}

/// Basis of the intersection of the spans of `a` and `b` in `dim`-space.
pub fn intersect_spans(a: &[Vec<Scalar>], b: &[Vec<Scalar>], dim: usize) -> Vec<Vec<Scalar>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // solve sum x_i a_i - sum y_j b_j = 0
    let mut cols: Vec<Vec<Scalar>> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
    let m = Matrix::from_columns(&cols, dim);
    let ker = m.kernel();
    let vecs: Vec<Vec<Scalar>> = ker
        .iter()
        .map(|k| {
            let mut v = vec![Scalar::zero(); dim];
            for (i, ai) in a.iter().enumerate() {
                if k[i].is_zero() {
                    continue;
                }
                for (d, x) in ai.iter().enumerate() {
                    v[d] += &k[i] * x;
                }
            }
            v
        })
        .collect();
    Matrix::from_rows_with_cols(vecs, dim).row_space()
}

/// Greedily extends `base` by vectors from `candidates` (in order) until the
/// span stops growing or reaches `dim`. Returns the indices taken.
pub fn greedy_extension(base: &[Vec<Scalar>], candidates: &[Vec<Scalar>], dim: usize) -> Vec<usize> {
    let mut rows: Vec<Vec<Scalar>> = base.to_vec();
    let mut rank = rank_of(&rows, dim);
    let mut taken = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        if rank == dim {
            break;
        }
        rows.push(c.clone());
        let r = rank_of(&rows, dim);
        if r > rank {
            rank = r;
            taken.push(i);
        } else {
            rows.pop();
        }
    }
    taken
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{frac, int};

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::from_i64(&[&[0, 1], &[-1, 0]]).rank(), 2);
        assert_eq!(Matrix::zeros(3, 3).rank(), 0);
        assert_eq!(Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]).rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(2).kernel().is_empty());
        assert_eq!(Matrix::zeros(1, 3).kernel().len(), 3);
        let m = Matrix::from_i64(&[&[1, 1, 0], &[0, 0, 1]]);
        let k = m.kernel();
        assert_eq!(k, vec![vec![int(-1), int(1), int(0)]]);
    }

    #[test]
    fn determinant_matches_cofactor() {
        let m = Matrix::from_rows(vec![
            vec![frac(1, 2), int(2), int(0)],
            vec![int(3), int(-1), frac(2, 3)],
            vec![int(1), int(1), int(1)],
        ]);
        // cofactor expansion by hand: 1/2(-1-2/3) - 2(3-2/3) + 0 = -5/6 - 14/3 = -11/2
        assert_eq!(m.determinant(), frac(-11, 2));
        let singular = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.determinant(), int(0));
    }

    #[test]
    fn eigenvalues() {
        let d = Matrix::diagonal(&[int(2), int(-1), int(1), int(0)]);
        assert_eq!(d.rational_eigenvalues().unwrap(), vec![int(-1), int(0), int(1), int(2)]);
        assert_eq!(Matrix::identity(3).rational_eigenvalues().unwrap(), vec![int(1); 3]);
        let rot = Matrix::from_i64(&[&[0, 1], &[-1, 0]]);
        let err = rot.rational_eigenvalues().unwrap_err();
        assert_eq!(err.factor, vec![int(1), int(0), int(1)]);
        // conjugated diagonal: not triangular, forces the char-poly route
        let m = Matrix::from_i64(&[&[2, 1, 0], &[1, 2, 0], &[0, 3, 5]]);
        assert_eq!(m.rational_eigenvalues().unwrap(), vec![int(1), int(3), int(5)]);
    }

    #[test]
    fn char_poly_of_companion() {
        // companion matrix of t^3 - 6t^2 + 11t - 6
        let m = Matrix::from_i64(&[&[0, 0, 6], &[1, 0, -11], &[0, 1, 6]]);
        assert_eq!(m.char_poly(), vec![int(-6), int(11), int(-6), int(1)]);
    }

    #[test]
    fn solve_and_intersect() {
        let m = Matrix::from_i64(&[&[1, 1], &[1, -1]]);
        assert_eq!(m.solve(&[int(2), int(0)]).unwrap(), vec![int(1), int(1)]);
        let inconsistent = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(inconsistent.solve(&[int(1), int(2)]).is_none());
        let a = vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]];
        let b = vec![vec![int(0), int(1), int(0)], vec![int(0), int(0), int(1)]];
        let i = intersect_spans(&a, &b, 3);
        assert_eq!(i, vec![vec![int(0), int(1), int(0)]]);
    }
}
