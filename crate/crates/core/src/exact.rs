//! Arbitrary-precision integer and rational matrices.
//!
//! Everything here is exact. Rationals are `num_rational::BigRational`, which
//! keeps every value in lowest terms with a positive denominator, so
//! structural equality is mathematical equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Ring operations needed by the dense matrix routines.
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<Int>;
pub type RatMatrix = Matrix<Rat>;

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Malformed(
                "matrix dimensions must be positive".into(),
            ));
        }
        if data.len() != rows * cols {
            return Err(Error::Malformed(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Malformed("ragged matrix rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Matrix product. Panics when the inner dimensions disagree.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                acc + self.get(i, k).clone() * other.get(k, j).clone()
            })
        })
    }

    /// Matrix-vector product. Panics on length mismatch.
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "mul_vec dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|e| e.clone() * k.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|e| -e.clone())
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (i..self.cols).all(|j| *self.get(i, j) == -self.get(j, i).clone()))
    }

    /// `self * m * selfᵀ`.
    pub fn congruence(&self, m: &Self) -> Self {
        self.matmul(m).matmul(&self.transpose())
    }

    /// Add `k * row[src]` to `row[dst]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &T) {
        for j in 0..self.cols {
            let v = self.get(dst, j).clone() + k.clone() * self.get(src, j).clone();
            self.set(dst, j, v);
        }
    }

    /// Add `k * col[src]` to `col[dst]`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &T) {
        for i in 0..self.rows {
            let v = self.get(i, dst).clone() + k.clone() * self.get(i, src).clone();
            self.set(i, dst, v);
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: Self) -> Matrix<T> {
        self.matmul(rhs)
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    /// Convenience constructor from small literals.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect(),
        )
        .expect("well-formed literal matrix")
    }

    pub fn to_rat(&self) -> RatMatrix {
        self.map(|e| Rat::from_integer(e.clone()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !m.get(r, k).is_zero()) {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(k, k) * m.get(i, j) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1).clone()
    }

    pub fn is_even(&self) -> bool {
        self.entries().all(Integer::is_even)
    }
}

impl RatMatrix {
    pub fn is_integral(&self) -> bool {
        self.entries().all(Rat::is_integer)
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        self.is_integral().then(|| self.map(Rat::to_integer))
    }
}

/// Exact inverse of an integer matrix over the rationals.
pub fn rat_inverse(m: &IntMatrix) -> Result<RatMatrix> {
    rat_inverse_rat(&m.to_rat())
}

/// Exact inverse of a rational matrix by Gauss-Jordan elimination.
pub fn rat_inverse_rat(m: &RatMatrix) -> Result<RatMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(
            "inverse of a non-square matrix".into(),
        ));
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut inv = RatMatrix::identity(n);
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a.get(r, col).is_zero())
            .ok_or(Error::SingularMatrix)?;
        a.swap_rows(col, pivot);
        inv.swap_rows(col, pivot);
        let p = a.get(col, col).recip();
        for j in 0..n {
            a.set(col, j, a.get(col, j) * &p);
            inv.set(col, j, inv.get(col, j) * &p);
        }
        for r in 0..n {
            if r == col || a.get(r, col).is_zero() {
                continue;
            }
            let f = -a.get(r, col).clone();
            a.add_row_multiple(r, col, &f);
            inv.add_row_multiple(r, col, &f);
        }
    }
    Ok(inv)
}

pub fn is_unimodular(u: &IntMatrix) -> bool {
    u.is_square() && u.det().abs().is_one()
}

/// Integer solution of `a x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[Int]) -> Result<Option<Vec<Int>>> {
    if !a.is_square() || a.rows() != b.len() {
        return Err(Error::DimensionMismatch("solve_integer shape".into()));
    }
    let inv = rat_inverse(a)?;
    let rhs: Vec<Rat> = b.iter().cloned().map(Rat::from_integer).collect();
    let x = inv.mul_vec(&rhs);
    Ok(x.iter()
        .all(Rat::is_integer)
        .then(|| x.iter().map(Rat::to_integer).collect()))
}

pub fn int_vec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

pub fn to_rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().cloned().map(Rat::from_integer).collect()
}

/// The integer vector of a rational vector, or `None` if any entry is fractional.
pub fn to_int_vec(v: &[Rat]) -> Option<Vec<Int>> {
    v.iter()
        .all(Rat::is_integer)
        .then(|| v.iter().map(Rat::to_integer).collect())
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Least non-negative residue of `x` modulo `m` (`m > 0`).
pub fn mod_floor(x: &Int, m: &Int) -> Int {
    x.mod_floor(m)
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Rat) -> Rat {
    x - x.floor()
}
