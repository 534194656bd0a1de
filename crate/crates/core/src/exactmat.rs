//! Arbitrary-precision integer matrices and their canonical forms.
//!
//! Everything here is exact. Row-style Hermite normal form is the canonical
//! representative of a row span, Smith normal form gives elementary divisors,
//! and determinants use fraction-free (Bareiss) elimination.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Converts a slice of machine integers into big integers.
pub fn int_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

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
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows, all of which must have `cols` entries.
    pub fn from_rows_with_cols<T>(rows: &[Vec<T>], cols: usize) -> Result<Self>
    where
        T: Clone + Into<BigInt>,
    {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Ragged {
                    row: i,
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend(r.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix from non-empty rows; the column count is taken from the first row.
    /// An empty row list yields the 0x0 matrix.
    pub fn from_rows<T>(rows: &[Vec<T>]) -> Result<Self>
    where
        T: Clone + Into<BigInt>,
    {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
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

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[BigInt]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.row_iter().map(<[BigInt]>::to_vec).collect()
    }

    /// Rows as machine integers, if every entry fits.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        self.row_iter()
            .map(|r| r.iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        t
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Matrix with only the given rows, in order.
    pub fn select_rows(&self, idx: impl IntoIterator<Item = usize>) -> IntMatrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for i in idx {
            data.extend(self.row(i).iter().cloned());
            rows += 1;
        }
        IntMatrix {
            rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    *out.get_mut(i, j) += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix: `c · self`.
    pub fn left_mul_vec(&self, c: &[BigInt]) -> Result<Vec<BigInt>> {
        if c.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: c.len(),
            });
        }
        let mut out = vec![BigInt::zero(); self.cols];
        for (ci, row) in c.iter().zip(self.row_iter()) {
            if ci.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                *o += ci * x;
            }
        }
        Ok(out)
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

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = self.get_mut(i, j);
            *v = -std::mem::take(v);
        }
    }

    /// `row[dst] += k * row[src]`
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self.get(src, j) * k;
            *self.get_mut(dst, j) += s;
        }
    }

    /// `col[dst] += k * col[src]`
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self.get(i, src) * k;
            *self.get_mut(i, dst) += s;
        }
    }

    /// Replaces rows `(r, s)` by `(x·r + y·s, u·r + v·s)`.
    fn combine_rows(&mut self, r: usize, s: usize, coeffs: [&BigInt; 4]) {
        let [x, y, u, v] = coeffs;
        for j in 0..self.cols {
            let a = self.get(r, j).clone();
            let b = self.get(s, j).clone();
            *self.get_mut(r, j) = x * &a + y * &b;
            *self.get_mut(s, j) = u * &a + v * &b;
        }
    }

    fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.row_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Hermite form of `m` together with the unimodular transform that produced it.
#[derive(Clone, Debug)]
pub struct HermiteDecomposition {
    /// `transform · m`; the first `rank` rows are the HNF, the rest are zero.
    pub hermite: IntMatrix,
    /// Unimodular, `rows(m) x rows(m)`.
    pub transform: IntMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl HermiteDecomposition {
    pub fn compute(m: &IntMatrix) -> Self {
        let mut h = m.clone();
        let mut u = IntMatrix::identity(m.rows);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            for i in (r + 1)..m.rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                if h.get(r, c).is_zero() {
                    h.swap_rows(r, i);
                    u.swap_rows(r, i);
                    continue;
                }
                let a = h.get(r, c).clone();
                let b = h.get(i, c).clone();
                let e = a.extended_gcd(&b);
                let u2 = -(&b / &e.gcd);
                let v2 = &a / &e.gcd;
                let coeffs = [&e.x, &e.y, &u2, &v2];
                h.combine_rows(r, i, coeffs);
                u.combine_rows(r, i, coeffs);
            }
            if h.get(r, c).is_zero() {
                continue;
            }
            if h.get(r, c).is_negative() {
                h.negate_row(r);
                u.negate_row(r);
            }
            let p = h.get(r, c).clone();
            for i in 0..r {
                let q = h.get(i, c).div_floor(&p);
                if !q.is_zero() {
                    let k = -q;
                    h.add_row_multiple(i, r, &k);
                    u.add_row_multiple(i, r, &k);
                }
            }
            pivots.push(c);
            r += 1;
        }
        debug_assert!((r..m.rows).all(|i| h.is_zero_row(i)));
        HermiteDecomposition {
            hermite: h,
            transform: u,
            rank: r,
            pivots,
        }
    }

    /// Solves `y · H = target` against the non-zero HNF rows, if possible.
    fn solve_hermite(&self, target: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut residual = target.to_vec();
        let mut y = vec![BigInt::zero(); self.hermite.rows];
        for (k, &c) in self.pivots.iter().enumerate() {
            let p = self.hermite.get(k, c);
            let (q, rem) = residual[c].div_rem(p);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (j, res) in residual.iter_mut().enumerate() {
                    *res -= &q * self.hermite.get(k, j);
                }
            }
            y[k] = q;
        }
        residual.iter().all(Zero::is_zero).then_some(y)
    }
}

/// Row-style Hermite normal form of the row span of `m`, zero rows removed.
pub fn row_hnf(m: &IntMatrix) -> IntMatrix {
    let d = HermiteDecomposition::compute(m);
    d.hermite.select_rows(0..d.rank)
}

/// Basis (one vector per row) of the integer left kernel `{c : c · m = 0}`.
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let d = HermiteDecomposition::compute(m);
    d.transform.select_rows(d.rank..m.rows)
}

/// Integer coefficients `c` with `c · m = target`, or `None` if none exist.
pub fn solve_integer(m: &IntMatrix, target: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if target.len() != m.cols {
        return Err(Error::DimensionMismatch {
            expected: m.cols,
            got: target.len(),
        });
    }
    let d = HermiteDecomposition::compute(m);
    match d.solve_hermite(target) {
        Some(y) => Ok(Some(d.transform.left_mul_vec(&y)?)),
        None => Ok(None),
    }
}

/// Smith form `left · m · right = diag` with `right_inverse = right⁻¹` tracked
/// instead of `right` itself (the rows of `right_inverse` give adapted bases).
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    /// `min(rows, cols)` entries, each dividing the next; zeros trail.
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right_inverse: IntMatrix,
}

impl SmithDecomposition {
    pub fn compute(m: &IntMatrix) -> Self {
        let mut a = m.clone();
        let mut left = IntMatrix::identity(m.rows);
        let mut rinv = IntMatrix::identity(m.cols);
        let n = m.rows.min(m.cols);
        let mut t = 0;
        'outer: while t < n {
            loop {
                // smallest non-zero entry of the trailing block becomes the pivot
                let mut best: Option<(usize, usize)> = None;
                for i in t..m.rows {
                    for j in t..m.cols {
                        let v = a.get(i, j);
                        if v.is_zero() {
                            continue;
                        }
                        if best.is_none_or(|(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = best else {
                    break 'outer;
                };
                a.swap_rows(t, pi);
                left.swap_rows(t, pi);
                a.swap_cols(t, pj);
                rinv.swap_rows(t, pj);

                let p = a.get(t, t).clone();
                let mut dirty = false;
                for i in (t + 1)..m.rows {
                    let q = a.get(i, t) / &p;
                    if !q.is_zero() {
                        let k = -q;
                        a.add_row_multiple(i, t, &k);
                        left.add_row_multiple(i, t, &k);
                    }
                    dirty |= !a.get(i, t).is_zero();
                }
                for j in (t + 1)..m.cols {
                    let q = a.get(t, j) / &p;
                    if !q.is_zero() {
                        a.add_col_multiple(j, t, &(-&q));
                        rinv.add_row_multiple(t, j, &q);
                    }
                    dirty |= !a.get(t, j).is_zero();
                }
                if dirty {
                    continue;
                }
                let offender = ((t + 1)..m.rows)
                    .find(|&i| ((t + 1)..m.cols).any(|j| !a.get(i, j).is_multiple_of(&p)));
                match offender {
                    Some(i) => {
                        a.add_row_multiple(t, i, &BigInt::one());
                        left.add_row_multiple(t, i, &BigInt::one());
                    }
                    None => break,
                }
            }
            if a.get(t, t).is_negative() {
                a.negate_row(t);
                left.negate_row(t);
            }
            t += 1;
        }
        let diagonal = (0..n).map(|i| a.get(i, i).clone()).collect();
        SmithDecomposition {
            diagonal,
            left,
            right_inverse: rinv,
        }
    }
}

/// Smith normal form diagonal `d₁ | d₂ | … `, length `min(rows, cols)`.
pub fn snf(m: &IntMatrix) -> Vec<BigInt> {
    SmithDecomposition::compute(m).diagonal
}

/// |det(m)| by Bareiss fraction-free elimination.
pub fn abs_det(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a.get(k, k).is_zero() {
            match ((k + 1)..n).find(|&i| !a.get(i, k).is_zero()) {
                Some(i) => a.swap_rows(k, i),
                None => return Ok(BigInt::zero()),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j);
                *a.get_mut(i, j) = v / &prev;
            }
        }
        prev = a.get(k, k).clone();
    }
    Ok(a.get(n - 1, n - 1).abs())
}
