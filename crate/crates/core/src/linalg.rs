//! Exact dense linear algebra over the rationals and the integers.
//!
//! Ranks are computed by fraction-free elimination on integer rows (rational
//! rows are first scaled by the lcm of their denominators). Kernels over the
//! rationals use reduced row echelon form; integer kernels use unimodular
//! column operations, so the returned basis always spans the full kernel
//! lattice.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type ExactScalar = BigRational;

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

macro_rules! dense_common {
    ($ty:ident, $scalar:ty) => {
        impl $ty {
            pub fn new(rows: usize, cols: usize, entries: Vec<$scalar>) -> Result<Self> {
                if entries.len() != rows * cols {
                    return Err(Error::Shape(format!(
                        "{} entries for a {}x{} matrix",
                        entries.len(),
                        rows,
                        cols
                    )));
                }
                Ok(Self { rows, cols, entries })
            }

            pub fn zeros(rows: usize, cols: usize) -> Self {
                Self { rows, cols, entries: vec![<$scalar>::zero(); rows * cols] }
            }

            pub fn identity(n: usize) -> Self {
                let mut m = Self::zeros(n, n);
                for i in 0..n {
                    m.entries[i * n + i] = <$scalar>::one();
                }
                m
            }

            /// Builds a matrix from a list of rows. An empty list gives the 0x0 matrix.
            pub fn from_rows(rows: Vec<Vec<$scalar>>) -> Result<Self> {
                let cols = rows.first().map_or(0, Vec::len);
                if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
                    return Err(Error::Shape(format!(
                        "row {} has {} entries, expected {}",
                        bad,
                        rows[bad].len(),
                        cols
                    )));
                }
                let n = rows.len();
                Ok(Self { rows: n, cols, entries: rows.into_iter().flatten().collect() })
            }

            pub fn rows(&self) -> usize {
                self.rows
            }

            pub fn cols(&self) -> usize {
                self.cols
            }

            pub fn get(&self, r: usize, c: usize) -> &$scalar {
                &self.entries[r * self.cols + c]
            }

            pub fn set(&mut self, r: usize, c: usize, v: $scalar) {
                self.entries[r * self.cols + c] = v;
            }

            pub fn row(&self, r: usize) -> &[$scalar] {
                &self.entries[r * self.cols..(r + 1) * self.cols]
            }

            pub fn column(&self, c: usize) -> Vec<$scalar> {
                (0..self.rows).map(|r| self.get(r, c).clone()).collect()
            }

            pub fn row_vecs(&self) -> Vec<Vec<$scalar>> {
                (0..self.rows).map(|r| self.row(r).to_vec()).collect()
            }

            pub fn entries(&self) -> &[$scalar] {
                &self.entries
            }

            pub fn is_zero(&self) -> bool {
                self.entries.iter().all(Zero::is_zero)
            }

            pub fn transpose(&self) -> Self {
                let mut t = Self::zeros(self.cols, self.rows);
                for r in 0..self.rows {
                    for c in 0..self.cols {
                        t.entries[c * self.rows + r] = self.get(r, c).clone();
                    }
                }
                t
            }

            pub fn mul(&self, other: &Self) -> Result<Self> {
                if self.cols != other.rows {
                    return Err(Error::Shape(format!(
                        "cannot multiply {}x{} by {}x{}",
                        self.rows, self.cols, other.rows, other.cols
                    )));
                }
                let mut out = Self::zeros(self.rows, other.cols);
                for r in 0..self.rows {
                    for k in 0..self.cols {
                        let a = self.get(r, k);
                        if a.is_zero() {
                            continue;
                        }
                        for c in 0..other.cols {
                            let b = other.get(k, c);
                            if !b.is_zero() {
                                let idx = r * other.cols + c;
                                out.entries[idx] = &out.entries[idx] + a * b;
                            }
                        }
                    }
                }
                Ok(out)
            }

            pub fn select_columns(&self, cols: &[usize]) -> Self {
                let mut out = Self::zeros(self.rows, cols.len());
                for r in 0..self.rows {
                    for (j, &c) in cols.iter().enumerate() {
                        out.entries[r * cols.len() + j] = self.get(r, c).clone();
                    }
                }
                out
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}x{} [", self.rows, self.cols)?;
                for r in 0..self.rows {
                    if r > 0 {
                        write!(f, "; ")?;
                    }
                    for c in 0..self.cols {
                        if c > 0 {
                            write!(f, " ")?;
                        }
                        write!(f, "{}", self.get(r, c))?;
                    }
                }
                write!(f, "]")
            }
        }
    };
}

dense_common!(ExactMatrix, BigRational);
dense_common!(IntegerMatrix, BigInt);

impl ExactMatrix {
    pub fn from_integer_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn kernel_basis(&self) -> ExactMatrix {
        kernel_basis(self)
    }

    /// Integer matrix if every entry has denominator one.
    pub fn to_integer(&self) -> Option<IntegerMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|q| q.is_integer().then(|| q.to_integer()))
            .collect::<Option<Vec<_>>>()?;
        Some(IntegerMatrix { rows: self.rows, cols: self.cols, entries })
    }
}

impl IntegerMatrix {
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    pub fn to_exact(&self) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().cloned().map(BigRational::from_integer).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        integer_row_rank(self.row_vecs())
    }

    /// Determinant of a square matrix by Bareiss elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(bareiss_determinant(self.row_vecs()))
    }
}

/// Scales a rational row to a primitive integer row with the same span.
pub fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// Rank of a list of integer rows by fraction-free elimination. Each
/// eliminated row is divided by its content, so entries stay small and no
/// rational arithmetic is needed.
pub fn integer_row_rank(rows: Vec<Vec<BigInt>>) -> usize {
    integer_echelon(rows).len()
}

/// Row echelon form of integer rows (same row space), zero rows dropped.
pub fn integer_echelon(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    rows.retain(|r| r.iter().any(|v| !v.is_zero()));
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        // smallest nonzero pivot keeps growth down
        let pivot = (rank..rows.len())
            .filter(|&r| !rows[r][c].is_zero())
            .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        let pv = &prow[c];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let g = pv.gcd(&row[c]);
            let a = pv / &g;
            let b = &row[c] / &g;
            for j in c..cols {
                let v = &a * &row[j] - &b * &prow[j];
                row[j] = v;
            }
            make_primitive(&mut row[c..]);
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
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
    sign * &a[n - 1][n - 1]
}

/// Exact rank over the rationals.
pub fn rank(m: &ExactMatrix) -> usize {
    integer_row_rank((0..m.rows).map(|r| clear_denominators(m.row(r))).collect())
}

/// Reduced row echelon form; returns the pivot columns.
fn rref(m: &mut ExactMatrix) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
        if p != r {
            for j in 0..cols {
                m.entries.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = m.get(r, c).recip();
        for j in c..cols {
            let v = m.get(r, j) * &inv;
            m.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || m.get(i, c).is_zero() {
                continue;
            }
            let f = m.get(i, c).clone();
            for j in c..cols {
                let v = m.get(i, j) - &f * m.get(r, j);
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row echelon form together with its pivot columns.
pub fn row_echelon(m: &ExactMatrix) -> (ExactMatrix, Vec<usize>) {
    let mut out = m.clone();
    let pivots = rref(&mut out);
    (out, pivots)
}

/// Basis of the right kernel, one vector per column.
pub fn kernel_basis(m: &ExactMatrix) -> ExactMatrix {
    let (reduced, pivots) = row_echelon(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = ExactMatrix::zeros(m.cols, free.len());
    for (j, &f) in free.iter().enumerate() {
        out.set(f, j, BigRational::one());
        for (row, &p) in pivots.iter().enumerate() {
            out.set(p, j, -reduced.get(row, f).clone());
        }
    }
    out
}

/// Basis of the integer kernel lattice `{x in Z^n : a x = 0}`.
///
/// Column operations reduce `a` to column echelon form `a U = [H | 0]` with
/// `U` unimodular; the trailing columns of `U` are then a lattice basis of
/// the kernel (every column primitive, the lattice saturated).
pub fn integer_kernel(a: &IntegerMatrix) -> IntegerMatrix {
    let (d, n) = (a.rows, a.cols);
    let mut work: Vec<Vec<BigInt>> = (0..n).map(|c| a.column(c)).collect();
    let mut unimod: Vec<Vec<BigInt>> = (0..n)
        .map(|c| (0..n).map(|r| if r == c { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();

    let mut lead = 0;
    for r in 0..d {
        if lead == n {
            break;
        }
        for j in lead + 1..n {
            if work[j][r].is_zero() {
                continue;
            }
            if work[lead][r].is_zero() {
                work.swap(lead, j);
                unimod.swap(lead, j);
                continue;
            }
            // [x y; u v] with x*p + y*q = g, u = -q/g, v = p/g has determinant 1
            let p = work[lead][r].clone();
            let q = work[j][r].clone();
            let eg = p.extended_gcd(&q);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let u = -(&q / &g);
            let v = &p / &g;
            combine_columns(&mut work, lead, j, &x, &y, &u, &v);
            combine_columns(&mut unimod, lead, j, &x, &y, &u, &v);
        }
        if !work[lead][r].is_zero() {
            lead += 1;
        }
    }

    let kernel_cols = n - lead;
    let mut out = IntegerMatrix::zeros(n, kernel_cols);
    for (j, col) in unimod[lead..].iter().enumerate() {
        let mut col = col.clone();
        normalize_sign(&mut col);
        for (r, v) in col.into_iter().enumerate() {
            out.set(r, j, v);
        }
    }
    out
}

fn combine_columns(
    cols: &mut [Vec<BigInt>],
    a: usize,
    b: usize,
    x: &BigInt,
    y: &BigInt,
    u: &BigInt,
    v: &BigInt,
) {
    let (old_a, old_b) = (cols[a].clone(), cols[b].clone());
    cols[a] = old_a.iter().zip(&old_b).map(|(ca, cb)| x * ca + y * cb).collect();
    cols[b] = old_a.iter().zip(&old_b).map(|(ca, cb)| u * ca + v * cb).collect();
}

fn normalize_sign(col: &mut [BigInt]) {
    if col.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
        for v in col.iter_mut() {
            *v = -&*v;
        }
    }
}

/// Nonzero invariant factors of the Smith normal form, positive and in
/// divisibility order. Their count is the rank and their product is the gcd
/// of the maximal nonvanishing minors.
pub fn smith_invariants(a: &IntegerMatrix) -> Vec<BigInt> {
    let mut m = a.row_vecs();
    let (rows, cols) = (a.rows, a.cols);
    let mut t = 0;
    let mut out = Vec::new();
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }

        let mut clean = true;
        for i in t + 1..rows {
            if m[i][t].is_zero() {
                continue;
            }
            let q = m[i][t].div_floor(&m[t][t]);
            let pivot = m[t].clone();
            for (x, p) in m[i].iter_mut().zip(&pivot).skip(t) {
                *x -= &q * p;
            }
            clean &= m[i][t].is_zero();
        }
        for j in t + 1..cols {
            if m[t][j].is_zero() {
                continue;
            }
            let q = m[t][j].div_floor(&m[t][t]);
            for row in m.iter_mut().skip(t) {
                let v = &row[j] - &q * &row[t];
                row[j] = v;
            }
            clean &= m[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // divisibility: fold an offending row into row t and go again
        let offending = (t + 1..rows)
            .find(|&i| (t + 1..cols).any(|j| !m[i][j].is_multiple_of(&m[t][t])));
        if let Some(i) = offending {
            let extra = m[i].clone();
            for (x, e) in m[t].iter_mut().zip(&extra).skip(t) {
                *x += e;
            }
            continue;
        }
        out.push(m[t][t].abs());
        t += 1;
    }
    out
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
