//! Dense integer matrices with arbitrary-precision entries and Smith normal form.
//!
//! The Smith normal form D = U·A·V (U, V unimodular, D diagonal with
//! d_1 | d_2 | ...) is the kernel underneath every group-presentation
//! computation in this crate. Pivot selection is deterministic: smallest
//! absolute value among the nonzero candidates, ties broken by lowest
//! (row, col).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense matrix over the integers. Entries are arbitrary precision, so no
/// intermediate computation can overflow.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of `i64` entries. Panics if the rows are ragged.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn diagonal(diag: &[i64]) -> Self {
        let n = diag.len();
        let mut m = Self::zero(n, n);
        for (i, v) in diag.iter().enumerate() {
            m[(i, i)] = BigInt::from(*v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = q * &self[(src, j)];
            self[(dst, j)] += add;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = q * &self[(i, src)];
            self[(i, dst)] += add;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination. Used by tests to
    /// certify unimodularity of the SNF transforms.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(k, k)] * &m[(i, j)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = &num / &prev;
                }
            }
            for i in k + 1..n {
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Smith normal form U·A·V = S with unimodular U, V.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Positive diagonal entries of S, in divisibility order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n)
            .map(|i| self.s[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Pivot: nonzero entry of smallest absolute value in the trailing submatrix,
/// ties broken by lowest (row, col).
fn find_pivot(m: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in k..m.rows() {
        for j in k..m.cols() {
            let v = m[(i, j)].abs();
            if v.is_zero() {
                continue;
            }
            match &best {
                Some((bv, _, _)) if *bv <= v => {}
                _ => best = Some((v, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Smith normal form of an integer matrix. Deterministic for a given input.
pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let (rows, cols) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let mut k = 0;
    while k < rows.min(cols) {
        let Some((pi, pj)) = find_pivot(&s, k) else {
            break;
        };
        s.swap_rows(k, pi);
        u.swap_rows(k, pi);
        s.swap_cols(k, pj);
        v.swap_cols(k, pj);

        loop {
            // Clear column k below the pivot.
            let mut dirty = false;
            for i in k + 1..rows {
                if !s[(i, k)].is_zero() {
                    let q = -(&s[(i, k)] / &s[(k, k)]);
                    s.add_row_multiple(i, k, &q);
                    u.add_row_multiple(i, k, &q);
                    if !s[(i, k)].is_zero() {
                        // Remainder is smaller than the pivot; swap it up and restart.
                        s.swap_rows(k, i);
                        u.swap_rows(k, i);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // Clear row k right of the pivot.
            for j in k + 1..cols {
                if !s[(k, j)].is_zero() {
                    let q = -(&s[(k, j)] / &s[(k, k)]);
                    s.add_col_multiple(j, k, &q);
                    v.add_col_multiple(j, k, &q);
                    if !s[(k, j)].is_zero() {
                        s.swap_cols(k, j);
                        v.swap_cols(k, j);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // Row and column are clear. Enforce that the pivot divides every
            // entry of the trailing block; if not, fold the offending row in
            // and continue reducing.
            let mut offender = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(&s[(i, j)] % &s[(k, k)]).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(k, i, &one);
                    u.add_row_multiple(k, i, &one);
                }
                None => break,
            }
        }

        if s[(k, k)].is_negative() {
            s.negate_row(k);
            u.negate_row(k);
        }
        k += 1;
    }
    Snf { u, s, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> Snf {
        let snf = smith_normal_form(a);
        // U·A·V = S exactly.
        assert_eq!(snf.u.mul(a).mul(&snf.v), snf.s, "U·A·V != S");
        // Unimodular transforms.
        assert_eq!(snf.u.det().abs(), BigInt::one());
        assert_eq!(snf.v.det().abs(), BigInt::one());
        // Diagonal, nonnegative, divisibility chain.
        for i in 0..snf.s.rows() {
            for j in 0..snf.s.cols() {
                if i != j {
                    assert!(snf.s[(i, j)].is_zero(), "off-diagonal entry");
                }
            }
        }
        let d = snf.diagonal();
        for w in d.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "divisibility violated: {w:?}");
        }
        snf
    }

    #[test]
    fn identity_case() {
        let snf = check(&IntMatrix::identity(2));
        assert_eq!(snf.diagonal(), vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn hand_reduced_2x2() {
        // d1 = gcd of entries = 2, d1·d2 = |det| = 8.
        let snf = check(&IntMatrix::from_rows(&[&[2, 4], &[6, 8]]));
        assert_eq!(snf.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_1x1() {
        let snf = check(&IntMatrix::from_rows(&[&[0]]));
        assert!(snf.diagonal().is_empty());
        assert!(snf.s.is_zero());
    }

    #[test]
    fn divisibility_fixup() {
        let snf = check(&IntMatrix::diagonal(&[6, 4]));
        assert_eq!(snf.diagonal(), vec![BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn rectangular_and_negative() {
        let snf = check(&IntMatrix::from_rows(&[&[-6, 111, -36, 6], &[5, -672, 210, 74], &[0, -255, 81, 24]]));
        let d = snf.diagonal();
        assert_eq!(d.len(), 3);
        for w in d.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn deterministic() {
        let a = IntMatrix::from_rows(&[&[2, 4], &[6, 8]]);
        let s1 = smith_normal_form(&a);
        let s2 = smith_normal_form(&a);
        assert_eq!(s1.u, s2.u);
        assert_eq!(s1.v, s2.v);
        assert_eq!(s1.s, s2.s);
    }
}
