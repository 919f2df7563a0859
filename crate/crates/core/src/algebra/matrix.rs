//! Dense exact matrices: fraction-free rank and determinants over Z and
//! Q[x], rational kernels, and the randomized-evaluation rank cross-check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::MPoly;
use super::Rat;
use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from rows; `cols` is required so that a matrix with
    /// no rows still has a width.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::NotRectangular);
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix<T> {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }
}

impl Matrix<Rat> {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![Rat::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Rat::one();
        }
        Matrix {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rat::from_integer(v.into())).collect())
                .collect(),
            cols,
        )
        .expect("rectangular literal")
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

impl Matrix<MPoly> {
    /// Entrywise evaluation at a point.
    pub fn evaluate(&self, point: &[Rat]) -> Result<Matrix<Rat>> {
        let data = self
            .data
            .iter()
            .map(|p| p.eval(point))
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(self.rows, self.cols, data)
    }
}

/// A matrix whose entries are all rationals or all polynomials in a common
/// ring; ranks of symbolic matrices are taken over the fraction field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactMatrix {
    Scalar(Matrix<Rat>),
    Symbolic(Matrix<MPoly>),
}

impl ExactMatrix {
    pub fn rows(&self) -> usize {
        match self {
            ExactMatrix::Scalar(m) => m.rows(),
            ExactMatrix::Symbolic(m) => m.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            ExactMatrix::Scalar(m) => m.cols(),
            ExactMatrix::Symbolic(m) => m.cols(),
        }
    }
}

/// Exact rank by fraction-free elimination.
pub fn exact_rank(m: &ExactMatrix) -> usize {
    match m {
        ExactMatrix::Scalar(m) => rank_scalar(m),
        ExactMatrix::Symbolic(m) => rank_symbolic(m),
    }
}

/// Entries usable in Bareiss elimination: an integral domain with exact
/// division, plus a weight used to pick cheap pivots.
trait BareissEntry: Clone {
    fn is_zero_entry(&self) -> bool;
    fn zero_entry(like: &Self) -> Self;
    fn one_entry(like: &Self) -> Self;
    fn fma_div(akk: &Self, aij: &Self, aik: &Self, akj: &Self, prev: &Self) -> Self;
    fn pivot_weight(&self) -> (u64, u64);
    fn negate(&self) -> Self;
}

impl BareissEntry for BigInt {
    fn is_zero_entry(&self) -> bool {
        self.is_zero()
    }
    fn zero_entry(_: &Self) -> Self {
        BigInt::zero()
    }
    fn one_entry(_: &Self) -> Self {
        BigInt::one()
    }
    fn fma_div(akk: &Self, aij: &Self, aik: &Self, akj: &Self, prev: &Self) -> Self {
        (akk * aij - aik * akj) / prev
    }
    fn pivot_weight(&self) -> (u64, u64) {
        (self.bits(), 0)
    }
    fn negate(&self) -> Self {
        -self
    }
}

impl BareissEntry for MPoly {
    fn is_zero_entry(&self) -> bool {
        self.is_zero()
    }
    fn zero_entry(like: &Self) -> Self {
        MPoly::zero(like.nvars())
    }
    fn one_entry(like: &Self) -> Self {
        MPoly::one(like.nvars())
    }
    fn fma_div(akk: &Self, aij: &Self, aik: &Self, akj: &Self, prev: &Self) -> Self {
        let num = &(akk * aij) - &(aik * akj);
        num.div_exact(prev)
            .expect("Bareiss quotient is exact over an integral domain")
    }
    fn pivot_weight(&self) -> (u64, u64) {
        (
            u64::from(self.total_degree().unwrap_or(0)),
            self.num_terms() as u64,
        )
    }
    fn negate(&self) -> Self {
        -self
    }
}

/// Bareiss elimination with full pivoting on the cheapest nonzero entry.
/// Returns the rank and the determinant (meaningful only when square).
fn bareiss<T: BareissEntry>(rows: usize, cols: usize, mut a: Vec<T>) -> (usize, Option<T>) {
    if rows == 0 || cols == 0 {
        return (0, None);
    }
    let like = a[0].clone();
    let idx = |i: usize, j: usize| i * cols + j;
    let mut prev = T::one_entry(&like);
    let mut negative = false;
    let mut k = 0;
    while k < rows.min(cols) {
        let mut best: Option<((u64, u64), usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                let e = &a[idx(i, j)];
                if e.is_zero_entry() {
                    continue;
                }
                let w = e.pivot_weight();
                if best.as_ref().is_none_or(|(bw, _, _)| w < *bw) {
                    best = Some((w, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        if pi != k {
            for j in 0..cols {
                a.swap(idx(k, j), idx(pi, j));
            }
            negative = !negative;
        }
        if pj != k {
            for i in 0..rows {
                a.swap(idx(i, k), idx(i, pj));
            }
            negative = !negative;
        }
        for i in k + 1..rows {
            let aik = a[idx(i, k)].clone();
            for j in k + 1..cols {
                let v = T::fma_div(&a[idx(k, k)], &a[idx(i, j)], &aik, &a[idx(k, j)], &prev);
                a[idx(i, j)] = v;
            }
            a[idx(i, k)] = T::zero_entry(&like);
        }
        prev = a[idx(k, k)].clone();
        k += 1;
    }
    let det = if rows == cols {
        Some(if k == rows {
            if negative {
                prev.negate()
            } else {
                prev
            }
        } else {
            T::zero_entry(&like)
        })
    } else {
        None
    };
    (k, det)
}

/// Integer rows with the same row space as the rational matrix.
fn clear_row_denominators(m: &Matrix<Rat>) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(m.rows * m.cols);
    for i in 0..m.rows {
        let row = m.row(i);
        let den = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        out.extend(
            row.iter()
                .map(|c| (c * Rat::from_integer(den.clone())).to_integer()),
        );
    }
    out
}

pub fn rank_scalar(m: &Matrix<Rat>) -> usize {
    bareiss(m.rows, m.cols, clear_row_denominators(m)).0
}

pub fn rank_symbolic(m: &Matrix<MPoly>) -> usize {
    bareiss(m.rows, m.cols, m.data.clone()).0
}

pub fn det_scalar(m: &Matrix<Rat>) -> Result<Rat> {
    if m.rows != m.cols {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if m.rows == 0 {
        return Ok(Rat::one());
    }
    let mut scale = BigInt::one();
    for i in 0..m.rows {
        scale *= m
            .row(i)
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    }
    let det = bareiss(m.rows, m.cols, clear_row_denominators(m))
        .1
        .expect("square");
    Ok(Rat::new(det, scale))
}

/// Determinant of a square polynomial matrix.
pub fn det_symbolic(m: &Matrix<MPoly>) -> Result<MPoly> {
    if m.rows != m.cols {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if m.rows == 0 {
        return Err(Error::InvalidArgument(
            "determinant of an empty polynomial matrix has no ring".into(),
        ));
    }
    Ok(bareiss(m.rows, m.cols, m.data.clone()).1.expect("square"))
}

/// Reduced row echelon form over Q; returns the pivot columns.
fn rref(m: &Matrix<Rat>) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut a = m.row_vecs();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Scales a nonzero rational vector to coprime integers whose first
/// nonzero entry is positive.
pub fn normalize_integer_vector(v: &[Rat]) -> Vec<Rat> {
    let den = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let num = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
    if num.is_zero() {
        return v.to_vec();
    }
    let mut f = Rat::new(den, num);
    if v.iter()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_negative())
    {
        f = -f;
    }
    v.iter().map(|c| c * &f).collect()
}

/// Basis of `{c : M c = 0}` in canonical integer form.
pub fn right_kernel(m: &Matrix<Rat>) -> Vec<Vec<Rat>> {
    let (a, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); m.cols];
            v[f] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][f].clone();
            }
            normalize_integer_vector(&v)
        })
        .collect()
}

/// Basis of `{c : cᵀ M = 0}` in canonical integer form.
pub fn left_kernel(m: &Matrix<Rat>) -> Vec<Vec<Rat>> {
    right_kernel(&m.transpose())
}

/// Whether `v` lies in the span of `basis` (all vectors of equal length).
pub fn in_span(basis: &[Vec<Rat>], v: &[Rat]) -> bool {
    let len = v.len();
    let base = Matrix::from_rows(basis.to_vec(), len).expect("equal lengths");
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    let ext = Matrix::from_rows(ext, len).expect("equal lengths");
    rank_scalar(&base) == rank_scalar(&ext)
}

/// Uniform integer points in `[-bound, bound]^n` from a seeded stream.
pub fn sample_points(n: usize, count: usize, seed: u64, bound: i64) -> Vec<Vec<Rat>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..n)
                .map(|_| Rat::from_integer(rng.gen_range(-bound..=bound).into()))
                .collect()
        })
        .collect()
}

/// Maximum scalar rank of a polynomial matrix over seeded random integer
/// points. A lower bound for the symbolic rank, equal to it with high
/// probability when the box is large relative to the entry degrees.
pub fn sampled_rank(
    m: &Matrix<MPoly>,
    nvars: usize,
    seed: u64,
    trials: usize,
    bound: i64,
) -> usize {
    sample_points(nvars, trials, seed, bound)
        .iter()
        .map(|p| rank_scalar(&m.evaluate(p).expect("point matches ring")))
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn identity_rank() {
        assert_eq!(exact_rank(&ExactMatrix::Scalar(Matrix::identity(3))), 3);
        let empty: Matrix<Rat> = Matrix::from_rows(vec![], 4).unwrap();
        assert_eq!(rank_scalar(&empty), 0);
    }

    #[test]
    fn symbolic_proportional_rows() {
        let t = MPoly::var(1, 0);
        let one = MPoly::one(1);
        let m = Matrix::from_rows(vec![vec![t.clone(), t.pow(2)], vec![one, t]], 2).unwrap();
        assert_eq!(exact_rank(&ExactMatrix::Symbolic(m.clone())), 1);
        assert!(det_symbolic(&m).unwrap().is_zero());
    }

    #[test]
    fn kernels_of_small_matrices() {
        let m = Matrix::from_ints(&[&[1, 0, 0]]);
        assert_eq!(right_kernel(&m).len(), 2);
        assert!(right_kernel(&Matrix::identity(3)).is_empty());
        let m = Matrix::from_ints(&[&[1, 1], &[2, 2]]);
        assert_eq!(right_kernel(&m), vec![vec![r(1), r(-1)]]);
        let dup = Matrix::from_ints(&[&[1, 2, 3], &[1, 2, 3], &[0, 1, 5]]);
        assert_eq!(left_kernel(&dup), vec![vec![r(1), r(-1), r(0)]]);
        let full = Matrix::from_ints(&[&[1, 0, 2], &[0, 1, 1]]);
        assert!(left_kernel(&full).is_empty());
    }

    #[test]
    fn determinants() {
        let m = Matrix::from_ints(&[&[2, 1], &[1, 3]]);
        assert_eq!(det_scalar(&m).unwrap(), r(5));
        let m = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(det_scalar(&m).unwrap(), r(-1));
        let half = Rat::new(1.into(), 2.into());
        let m = Matrix::from_rows(vec![vec![half.clone(), r(0)], vec![r(0), r(3)]], 2).unwrap();
        assert_eq!(det_scalar(&m).unwrap(), Rat::new(3.into(), 2.into()));
        let t = MPoly::var(1, 0);
        let m = Matrix::from_rows(
            vec![
                vec![MPoly::one(1), t.clone()],
                vec![t.clone(), MPoly::one(1)],
            ],
            2,
        )
        .unwrap();
        assert_eq!(det_symbolic(&m).unwrap(), &MPoly::one(1) - &t.pow(2));
    }

    #[test]
    fn non_square_determinant_rejected() {
        let m = Matrix::from_ints(&[&[1, 2, 3]]);
        assert!(matches!(det_scalar(&m), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn kernel_vectors_are_canonical() {
        let m = Matrix::from_ints(&[&[2, 4, -6]]);
        for v in right_kernel(&m) {
            assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
            let first = v.iter().find(|c| !c.is_zero()).unwrap();
            assert!(first.is_positive());
            assert!(v.iter().all(|c| c.is_integer()));
        }
    }
}
