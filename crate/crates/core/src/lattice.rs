//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers. Matrices are
//! small (at most a few dozen rows) so the algorithms favour clarity over speed.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            data.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: nrows,
            cols: ncols,
            data,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone().into();
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

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                expected: format!("{} rows", self.cols),
                found: format!("{}x{}", other.rows, other.cols),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// Evaluates the bilinear form `x^T M y`.
    pub fn bilinear(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        assert_eq!(x.len(), self.rows);
        assert_eq!(y.len(), self.cols);
        let mut acc = BigInt::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                acc += xi * &self[(i, j)] * yj;
            }
        }
        acc
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| self[(i, i)].is_one() && (0..i).all(|j| self[(i, j)].is_zero()))
    }

    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square());
        let mut a = to_rational(self);
        let n = self.rows;
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return BigInt::zero();
            };
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            let p = a[col][col].clone();
            det *= &p;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] / &p;
                for c in col..n {
                    let t = &factor * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
        debug_assert!(det.is_integer());
        det.to_integer()
    }

    /// Inverse over the integers; fails unless the determinant is a unit.
    pub fn inverse(&self) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::NotInvertible);
        }
        let sol = solve_rational(self, &IntMatrix::identity(self.rows)).ok_or(Error::NotInvertible)?;
        rational_to_integer(&sol).ok_or(Error::NotInvertible)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let t = factor * &self[(src, j)];
            self[(dst, j)] += t;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let t = factor * &self[(i, src)];
            self[(i, dst)] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix shapes do not compose")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of a Smith normal form computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    /// `d_1 | d_2 | ... | d_k`, `k = min(rows, cols)`, all non-negative.
    pub diagonal: Vec<BigInt>,
    /// Unimodular `U`, `V` with `U * m * V = diag`, when requested.
    pub transforms: Option<(IntMatrix, IntMatrix)>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// Diagonal entries greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| **d > BigInt::one()).cloned().collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    snf_impl(m, false)
}

pub fn smith_normal_form_with_transforms(m: &IntMatrix) -> SmithDecomposition {
    snf_impl(m, true)
}

fn snf_impl(m: &IntMatrix, track: bool) -> SmithDecomposition {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = track.then(|| IntMatrix::identity(rows));
    let mut v = track.then(|| IntMatrix::identity(cols));
    let k = rows.min(cols);

    macro_rules! swap_rows {
        ($x:expr, $y:expr) => {{
            a.swap_rows($x, $y);
            if let Some(u) = u.as_mut() {
                u.swap_rows($x, $y);
            }
        }};
    }
    macro_rules! swap_cols {
        ($x:expr, $y:expr) => {{
            a.swap_cols($x, $y);
            if let Some(v) = v.as_mut() {
                v.swap_cols($x, $y);
            }
        }};
    }
    macro_rules! add_row {
        ($dst:expr, $src:expr, $f:expr) => {{
            a.add_row_multiple($dst, $src, $f);
            if let Some(u) = u.as_mut() {
                u.add_row_multiple($dst, $src, $f);
            }
        }};
    }
    macro_rules! add_col {
        ($dst:expr, $src:expr, $f:expr) => {{
            a.add_col_multiple($dst, $src, $f);
            if let Some(v) = v.as_mut() {
                v.add_col_multiple($dst, $src, $f);
            }
        }};
    }

    for t in 0..k {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &a[(i, j)];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            swap_rows!(t, pi);
            swap_cols!(t, pj);
            let pivot = a[(t, t)].clone();
            for i in t + 1..rows {
                let q = nearest_quotient(&a[(i, t)], &pivot);
                if !q.is_zero() {
                    let neg = -q;
                    add_row!(i, t, &neg);
                }
            }
            for j in t + 1..cols {
                let q = nearest_quotient(&a[(t, j)], &pivot);
                if !q.is_zero() {
                    let neg = -q;
                    add_col!(j, t, &neg);
                }
            }
            let cleared = (t + 1..rows).all(|i| a[(i, t)].is_zero()) && (t + 1..cols).all(|j| a[(t, j)].is_zero());
            if !cleared {
                continue;
            }
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => add_row!(t, i, &BigInt::one()),
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            if let Some(u) = u.as_mut() {
                u.negate_row(t);
            }
        }
    }

    let diagonal = (0..k).map(|i| a[(i, i)].clone()).collect();
    SmithDecomposition {
        diagonal,
        transforms: u.zip(v),
    }
}

/// Invariants of the cokernel of `x -> x * m` on integer row vectors:
/// free rank `cols - rank(m)` and the invariant factors greater than one.
/// Quotient rounded to the nearest integer, so remainders satisfy `|r| <= |b|/2`.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if BigInt::from(2) * r.abs() > b.abs() {
        q + 1
    } else {
        q
    }
}

pub fn cokernel_invariants(m: &IntMatrix) -> (usize, Vec<BigInt>) {
    let snf = smith_normal_form(m);
    (m.cols() - snf.rank(), snf.torsion())
}

pub fn is_upper_unitriangular(m: &IntMatrix) -> bool {
    m.is_upper_unitriangular()
}

fn to_rational(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    (0..m.rows)
        .map(|i| m.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect()
}

/// Solves `a * X = b` exactly. Returns `None` when `a` is singular.
pub fn solve_rational(a: &IntMatrix, b: &IntMatrix) -> Option<Vec<Vec<BigRational>>> {
    assert!(a.is_square());
    assert_eq!(a.rows, b.rows);
    let n = a.rows;
    let mut lhs = to_rational(a);
    let mut rhs = to_rational(b);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !lhs[r][col].is_zero())?;
        lhs.swap(pivot, col);
        rhs.swap(pivot, col);
        let inv = lhs[col][col].recip();
        for c in 0..n {
            lhs[col][c] *= &inv;
        }
        for c in 0..b.cols {
            rhs[col][c] *= &inv;
        }
        for r in 0..n {
            if r == col || lhs[r][col].is_zero() {
                continue;
            }
            let factor = lhs[r][col].clone();
            for c in 0..n {
                let t = &factor * &lhs[col][c];
                lhs[r][c] -= t;
            }
            for c in 0..b.cols {
                let t = &factor * &rhs[col][c];
                rhs[r][c] -= t;
            }
        }
    }
    Some(rhs)
}

/// Inverse of a square rational matrix, `None` when singular.
pub fn rational_inverse(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut lhs: Vec<Vec<BigRational>> = m.to_vec();
    let mut rhs: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !lhs[r][col].is_zero())?;
        lhs.swap(pivot, col);
        rhs.swap(pivot, col);
        let inv = lhs[col][col].recip();
        for c in 0..n {
            lhs[col][c] *= &inv;
            rhs[col][c] *= &inv;
        }
        for r in 0..n {
            if r == col || lhs[r][col].is_zero() {
                continue;
            }
            let factor = lhs[r][col].clone();
            for c in 0..n {
                let t = &factor * &lhs[col][c];
                lhs[r][c] -= t;
                let t = &factor * &rhs[col][c];
                rhs[r][c] -= t;
            }
        }
    }
    Some(rhs)
}

/// Converts a rational matrix to an integer one if every entry is integral.
pub fn rational_to_integer(m: &[Vec<BigRational>]) -> Option<IntMatrix> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = IntMatrix::zeros(rows, cols);
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_integer() {
                return None;
            }
            out[(i, j)] = x.to_integer();
        }
    }
    Some(out)
}
