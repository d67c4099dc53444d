//! Sparse integer matrices with arbitrary-precision entries, plus the Smith
//! normal form reduction used to read off homology from boundary operators.
//!
//! Only the invariant factors are needed here (no transforms), which keeps
//! the reduction simple: pick the nonzero entry of smallest absolute value,
//! clear its row and column with Euclidean steps, repeat, then fix up the
//! divisibility chain numerically on the diagonal.

use crate::abelian::FgAbGroup;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

/// Column-major sparse matrix over Z.
#[derive(Clone, Debug)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: Vec<BTreeMap<usize, BigInt>>,
}

impl SparseIntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols: vec![BTreeMap::new(); cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigInt) {
        assert!(row < self.rows && col < self.cols.len());
        if value.is_zero() {
            self.cols[col].remove(&row);
        } else {
            self.cols[col].insert(row, value);
        }
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: &BigInt) {
        if value.is_zero() {
            return;
        }
        let entry = self.cols[col].entry(row).or_insert_with(BigInt::zero);
        *entry += value;
        if entry.is_zero() {
            self.cols[col].remove(&row);
        }
    }

    pub fn nonzeros(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    /// Sets a whole column from a sparse vector of (row, coefficient).
    pub fn set_column(&mut self, col: usize, entries: &[(usize, BigInt)]) {
        for (row, v) in entries {
            self.add_to(*row, col, v);
        }
    }

    /// col[dst] += q·col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let updates: Vec<(usize, BigInt)> = self.cols[src]
            .iter()
            .map(|(r, v)| (*r, q * v))
            .collect();
        for (r, v) in updates {
            self.add_to(r, dst, &v);
        }
    }

    /// row[dst] += q·row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for col in &mut self.cols {
            let add = col.get(&src).map(|v| q * v);
            if let Some(add) = add {
                let entry = col.entry(dst).or_insert_with(BigInt::zero);
                *entry += add;
                if entry.is_zero() {
                    col.remove(&dst);
                }
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.cols.swap(a, b);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for col in &mut self.cols {
            let va = col.remove(&a);
            let vb = col.remove(&b);
            if let Some(v) = va {
                col.insert(b, v);
            }
            if let Some(v) = vb {
                col.insert(a, v);
            }
        }
    }

    /// Pivot among entries with row ≥ k, col ≥ k: smallest |value|, ties by
    /// lowest (row, col).
    fn find_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for (j, col) in self.cols.iter().enumerate().skip(k) {
            for (i, v) in col {
                if *i < k {
                    continue;
                }
                let a = v.abs();
                let better = match &best {
                    None => true,
                    Some((bv, bi, bj)) => a < *bv || (a == *bv && (*i, j) < (*bi, *bj)),
                };
                if better {
                    best = Some((a, *i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Invariant factors (positive, in divisibility order). Consumes the
    /// matrix.
    pub fn into_invariant_factors(mut self) -> Vec<BigUint> {
        let mut diag: Vec<BigInt> = Vec::new();
        let limit = self.rows.min(self.cols.len());
        let mut k = 0;
        while k < limit {
            let Some((pi, pj)) = self.find_pivot(k) else {
                break;
            };
            self.swap_rows(k, pi);
            self.swap_cols(k, pj);

            loop {
                // One entry of column k below the pivot, freshly read.
                let col_entry = self.cols[k]
                    .iter()
                    .find(|(r, _)| **r > k)
                    .map(|(r, v)| (*r, v.clone()));
                if let Some((r, v)) = col_entry {
                    let q = -(&v / &self.cols[k][&k]);
                    self.add_row_multiple(r, k, &q);
                    if self.cols[k].contains_key(&r) {
                        // Remainder smaller than pivot; promote it.
                        self.swap_rows(k, r);
                    }
                    continue;
                }
                // One entry of row k right of the pivot.
                let row_entry = (k + 1..self.cols.len())
                    .find_map(|j| self.cols[j].get(&k).cloned().map(|v| (j, v)));
                if let Some((j, v)) = row_entry {
                    let q = -(&v / &self.cols[k][&k]);
                    self.add_col_multiple(j, k, &q);
                    if self.cols[j].contains_key(&k) {
                        self.swap_cols(k, j);
                    }
                    continue;
                }
                break;
            }
            diag.push(self.cols[k][&k].abs());
            k += 1;
        }

        // Numerical divisibility fix-up: diag(a, b) ~ diag(gcd, lcm).
        loop {
            let mut changed = false;
            for i in 0..diag.len() {
                for j in i + 1..diag.len() {
                    if !(&diag[j] % &diag[i]).is_zero() {
                        let g = diag[i].gcd(&diag[j]);
                        let l = &diag[i] * &diag[j] / &g;
                        diag[i] = g;
                        diag[j] = l;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        diag.sort();
        diag.into_iter()
            .map(|d| d.to_biguint().expect("diagonal entries are positive"))
            .collect()
    }

    pub fn rank(self) -> usize {
        self.into_invariant_factors().len()
    }
}

/// Homology of a chain complex from its boundary matrices.
///
/// `dims[d]` is the rank of the degree-d chain group; `boundaries[d]` is the
/// matrix of ∂_d : C_d → C_{d−1} (so `boundaries[0]` is empty). Returns
/// H_d = Z^{dims[d] − rank ∂_d − rank ∂_{d+1}} ⊕ torsion(∂_{d+1}) for
/// d < dims.len() − 1.
pub fn homology_from_boundaries(dims: &[usize], boundaries: &[SparseIntMatrix]) -> Vec<FgAbGroup> {
    assert_eq!(dims.len(), boundaries.len());
    let factors: Vec<Vec<BigUint>> = boundaries
        .iter()
        .map(|b| b.clone().into_invariant_factors())
        .collect();
    let mut out = Vec::new();
    for d in 0..dims.len().saturating_sub(1) {
        let rank_in = factors[d].len();
        let rank_out = factors[d + 1].len();
        let free = dims[d] - rank_in - rank_out;
        out.push(FgAbGroup::from_orders(free, factors[d + 1].iter().cloned()));
    }
    out
}
