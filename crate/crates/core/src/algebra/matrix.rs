//! Dense integer matrices and Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Row-major dense matrix over the integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[i64]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, &d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.set(i, i, d);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntegerMatrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows. An empty slice gives the 0x0 matrix.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(IntegerMatrix {
            rows: rows.len(),
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(move |(k, &v)| (k / self.cols, k % self.cols, v))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntegerMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, cur + a * rhs.get(k, j));
                }
            }
        }
        Ok(out)
    }

    /// The submatrix on the given row and column index lists, in that order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c));
            }
        }
        out
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &IntegerMatrix) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot stack {} rows beside {} rows",
                self.rows, rhs.rows
            )));
        }
        let mut out = Self::zeros(self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..rhs.cols {
                out.set(r, self.cols + c, rhs.get(r, c));
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank()
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerMatrix{}x{}{:?}", self.rows, self.cols, self.to_rows())
    }
}

/// Row-major dense matrix over arbitrary-precision integers, for
/// transforms whose entries outgrow `i64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BigMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl BigMatrix {
    fn zeros(rows: usize, cols: usize) -> Self {
        BigMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Largest absolute value of an entry, zero for an empty matrix.
    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(BigInt::abs).max().unwrap_or_default()
    }

    pub fn mul(&self, rhs: &BigMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    /// The submatrix on the given row and column index lists, in that order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.data[i * cols.len() + j] = self.get(r, c).clone();
            }
        }
        out
    }

    /// The same matrix over `i64`, if every entry fits.
    pub fn to_integer_matrix(&self) -> Option<IntegerMatrix> {
        let data = self.data.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<_>>>()?;
        Some(IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Row `i` of the result is row `order[i]` of `self`.
    fn permute_rows(&self, order: &[usize]) -> Self {
        let all: Vec<usize> = (0..self.cols).collect();
        self.select(order, &all)
    }

    fn permute_cols(&self, order: &[usize]) -> Self {
        let all: Vec<usize> = (0..self.rows).collect();
        self.select(&all, order)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// `row_dst -= q * row_src`.
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for c in 0..self.cols {
            let delta = q * self.get(src, c);
            self.data[dst * self.cols + c] -= delta;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let x = &mut self.data[r * self.cols + c];
            *x = -std::mem::take(x);
        }
    }

    /// Rows `(i, j)` replaced by `(x row_i + y row_j, s row_i + t row_j)` for `[x, y, s, t]`.
    fn combine_rows(&mut self, i: usize, j: usize, [x, y, s, t]: &[BigInt; 4]) {
        for c in 0..self.cols {
            let (p, q) = (self.get(i, c).clone(), self.get(j, c).clone());
            self.data[i * self.cols + c] = x * &p + y * &q;
            self.data[j * self.cols + c] = s * p + t * q;
        }
    }

    /// Columns `(i, j)` replaced by `(x col_i + y col_j, s col_i + t col_j)` for `[x, y, s, t]`.
    fn combine_cols(&mut self, i: usize, j: usize, [x, y, s, t]: &[BigInt; 4]) {
        for r in 0..self.rows {
            let (p, q) = (self.get(r, i).clone(), self.get(r, j).clone());
            self.data[r * self.cols + i] = x * &p + y * &q;
            self.data[r * self.cols + j] = s * p + t * q;
        }
    }

    fn leading(&self, r: usize) -> Option<usize> {
        (0..self.cols).find(|&c| !self.get(r, c).is_zero())
    }

    /// True when every row and every column has at most one nonzero entry.
    fn is_monomial(&self) -> bool {
        let mut row_seen = vec![false; self.rows];
        let mut col_seen = vec![false; self.cols];
        for (r, c) in self.nonzero_positions() {
            if row_seen[r] || col_seen[c] {
                return false;
            }
            row_seen[r] = true;
            col_seen[c] = true;
        }
        true
    }

    fn nonzero_positions(&self) -> Vec<(usize, usize)> {
        (0..self.rows)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .filter(|&(r, c)| !self.get(r, c).is_zero())
            .collect()
    }

    fn reversed_rows(&self) -> Self {
        let order: Vec<usize> = (0..self.rows).rev().collect();
        self.permute_rows(&order)
    }
}

impl From<&IntegerMatrix> for BigMatrix {
    fn from(m: &IntegerMatrix) -> Self {
        BigMatrix {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }
}

impl fmt::Debug for BigMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .to_rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        write!(f, "BigMatrix{}x{}{:?}", self.rows, self.cols, rows)
    }
}

/// `u * m * v == d` with `u`, `v` unimodular and `d` diagonal, nonnegative,
/// each diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: BigMatrix,
    pub d: IntegerMatrix,
    pub v: BigMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i))
            .collect()
    }

    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<i64> {
        self.diagonal().into_iter().filter(|&x| x != 0).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|&&x| x != 0).count()
    }

    /// Columns of `v` spanning the integer kernel of the original matrix.
    pub fn kernel_basis(&self) -> BigMatrix {
        let cols: Vec<usize> = (self.rank()..self.v.cols).collect();
        let rows: Vec<usize> = (0..self.v.rows).collect();
        self.v.select(&rows, &cols)
    }
}

/// Smith normal form from alternating row and column Hermite forms.
///
/// The Hermite forms use lattice reduction, which keeps the transforms far
/// smaller than plain elimination does; even so they outgrow `i64` on dense
/// 8x8 inputs, so they are kept as [`BigMatrix`].
///
/// # Panics
///
/// When an invariant factor exceeds the `i64` range.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = BigMatrix::from(m);
    let mut u = BigMatrix::identity(rows);
    let mut v = BigMatrix::identity(cols);

    while !a.is_monomial() {
        let (b, h) = hermite(a);
        u = b.mul(&u).expect("square transform");
        a = h;
        if a.is_monomial() {
            break;
        }
        // Reversing the rows puts each column's pivot last, so entries right
        // of a row pivot are the ones the column pass reduces.
        let (c, h) = hermite(a.reversed_rows().transpose());
        v = v.mul(&c.transpose()).expect("square transform");
        a = h.transpose().reversed_rows();
    }

    let mut pivots = a.nonzero_positions();
    pivots.sort_by_key(|&(r, c)| a.get(r, c).abs());
    let rank = pivots.len();
    let mut diag: Vec<BigInt> = pivots.iter().map(|&(r, c)| a.get(r, c).clone()).collect();
    u = u.permute_rows(&complete_order(pivots.iter().map(|p| p.0), rows));
    v = v.permute_cols(&complete_order(pivots.iter().map(|p| p.1), cols));

    for (i, x) in diag.iter_mut().enumerate() {
        if x.is_negative() {
            *x = -std::mem::take(x);
            u.negate_row(i);
        }
    }
    for i in 0..rank {
        for j in i + 1..rank {
            if (&diag[j] % &diag[i]).is_zero() {
                continue;
            }
            // diag(p, q) -> diag(g, pq/g)
            let e = diag[i].extended_gcd(&diag[j]);
            let (qg, pg) = (&diag[j] / &e.gcd, &diag[i] / &e.gcd);
            u.combine_rows(i, j, &[e.x.clone(), e.y.clone(), -&qg, pg.clone()]);
            v.combine_cols(i, j, &[BigInt::one(), BigInt::one(), -(&e.y * &qg), &e.x * &pg]);
            diag[j] = &diag[i] * &qg;
            diag[i] = e.gcd;
        }
    }

    let diag: Vec<i64> = diag
        .iter()
        .map(|x| x.to_i64().expect("invariant factor exceeds the i64 range"))
        .collect();
    SmithForm {
        u,
        d: IntegerMatrix::diagonal(rows, cols, &diag),
        v,
    }
}

/// `first` followed by the remaining indices below `n` in increasing order.
fn complete_order(first: impl Iterator<Item = usize>, n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = first.collect();
    let mut used = vec![false; n];
    for &i in &order {
        used[i] = true;
    }
    order.extend((0..n).filter(|&i| !used[i]));
    order
}

/// Row Hermite form `(b, h)` with `b * a = h`, zero rows first and pivots
/// moving left going down, by the lattice-reduction method of Havas,
/// Majewski and Matthews.
fn hermite(a: BigMatrix) -> (BigMatrix, BigMatrix) {
    let m = a.rows;
    let mut s = Hermite {
        n: a.cols,
        b: BigMatrix::identity(m),
        h: a,
        d: vec![BigInt::one(); m + 1],
        lam: vec![vec![BigInt::zero(); m + 1]; m + 1],
    };
    let mut k = 2;
    while k <= m {
        let (col1, col2) = s.reduce(k, k - 1);
        let swap = if col1 <= col2.min(s.n) {
            true
        } else if col1 == s.n + 1 && col2 == s.n + 1 {
            let lhs = (&s.d[k - 2] * &s.d[k] + &s.lam[k][k - 1] * &s.lam[k][k - 1]) * 4u8;
            lhs < &s.d[k - 1] * &s.d[k - 1] * 3u8
        } else {
            false
        };
        if swap {
            s.swap(k);
            if k > 2 {
                k -= 1;
            }
        } else {
            for i in (1..k - 1).rev() {
                s.reduce(k, i);
            }
            k += 1;
        }
    }
    (s.b, s.h)
}

/// State of the Hermite reduction; row indices are 1-based.
struct Hermite {
    n: usize,
    h: BigMatrix,
    b: BigMatrix,
    d: Vec<BigInt>,
    lam: Vec<Vec<BigInt>>,
}

impl Hermite {
    /// 1-based column of the first nonzero entry of row `i`, or `n + 1`.
    fn leading(&self, i: usize) -> usize {
        self.h.leading(i - 1).map_or(self.n + 1, |c| c + 1)
    }

    fn negate(&mut self, j: usize) {
        for r in 2..self.lam.len() {
            for s in 1..r {
                if r == j || s == j {
                    let x = &mut self.lam[r][s];
                    *x = -std::mem::take(x);
                }
            }
        }
        self.h.negate_row(j - 1);
        self.b.negate_row(j - 1);
    }

    /// Makes the pivots of rows `i` and `k` positive and reduces row `k` by row `i`.
    fn reduce(&mut self, k: usize, i: usize) -> (usize, usize) {
        let col1 = self.leading(i);
        if col1 <= self.n && self.h.get(i - 1, col1 - 1).is_negative() {
            self.negate(i);
        }
        let col2 = self.leading(k);
        if col2 <= self.n && self.h.get(k - 1, col2 - 1).is_negative() {
            self.negate(k);
        }
        let q: BigInt = if col1 <= self.n {
            self.h.get(k - 1, col1 - 1).div_floor(self.h.get(i - 1, col1 - 1))
        } else if self.lam[k][i].abs() * 2u8 > self.d[i] {
            (&self.lam[k][i] * 2u8 + &self.d[i]).div_floor(&(&self.d[i] * 2u8))
        } else {
            BigInt::zero()
        };
        if !q.is_zero() {
            self.h.sub_row(k - 1, i - 1, &q);
            self.b.sub_row(k - 1, i - 1, &q);
            let dq = &q * &self.d[i];
            self.lam[k][i] -= dq;
            for j in 1..i {
                let delta = &q * &self.lam[i][j];
                self.lam[k][j] -= delta;
            }
        }
        (col1, col2)
    }

    fn swap(&mut self, k: usize) {
        self.h.swap_rows(k - 1, k - 2);
        self.b.swap_rows(k - 1, k - 2);
        for j in 1..k - 1 {
            let tmp = std::mem::take(&mut self.lam[k][j]);
            self.lam[k][j] = std::mem::replace(&mut self.lam[k - 1][j], tmp);
        }
        let lk = self.lam[k][k - 1].clone();
        for i in k + 1..self.lam.len() {
            let (li1, li) = (self.lam[i][k - 1].clone(), self.lam[i][k].clone());
            let t = &li1 * &self.d[k] - &li * &lk;
            self.lam[i][k - 1] = (li1 * &lk + li * &self.d[k - 2]) / &self.d[k - 1];
            self.lam[i][k] = t / &self.d[k - 1];
        }
        self.d[k - 1] = (&self.d[k - 2] * &self.d[k] + &lk * &lk) / &self.d[k - 1];
    }
}
