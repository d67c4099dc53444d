//! Iterated reduced bar construction on augmented differential graded
//! algebras, the brute-force route to the homology of iterated classifying
//! spaces of a finite cyclic group.
//!
//! An augmented DGA is stored in reduced form: only a basis of the
//! augmentation ideal, with the differential and the products as integer
//! structure constants. The bar construction tensors shifted copies of the
//! ideal into words; the Eilenberg–Zilber shuffle product makes the result a
//! commutative DGA again, so the construction iterates at chain level. After
//! k iterations the homology of the complex is the integral homology of the
//! k-fold delooping of the group.

use super::sparse::{homology_from_boundaries, SparseIntMatrix};
use crate::abelian::FgAbGroup;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("estimated work {estimate} exceeds the budget of {budget} matrix entries")]
    BudgetExceeded { estimate: u128, budget: u64 },
    #[error("unsupported group for the bar oracle: {0}")]
    UnsupportedGroup(String),
}

/// Resource limits for the oracle.
#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    /// Largest cyclic group order accepted.
    pub max_order: u64,
    /// Budget on the (dense upper bound of) boundary-matrix entries.
    pub budget: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            max_order: 8,
            budget: 5_000_000,
        }
    }
}

/// A basis letter: (internal degree, index within that degree).
type Letter = (usize, usize);
/// A bar word; its degree is the sum of the shifted letter degrees.
type Word = Vec<Letter>;
/// Sparse vector in a fixed degree's basis, sorted by index.
type SparseVec = Vec<(usize, BigInt)>;

fn shifted(letter: Letter) -> usize {
    letter.0 + 1
}

/// Augmented DGA in reduced presentation. `dims[d]` is the rank of the
/// degree-d part of the augmentation ideal; the unit is implicit.
pub struct FreeDga {
    dims: Vec<usize>,
    /// diff[d][i]: boundary of basis element (d, i) in the degree d−1 basis.
    diff: Vec<Vec<SparseVec>>,
    /// Structure constants of the (graded-commutative) product on the ideal.
    products: HashMap<(Letter, Letter), SparseVec>,
}

impl FreeDga {
    /// The group ring of Z/m, in reduced form: basis ḡ^t = g^t − e for
    /// t = 1..m−1 in degree 0, zero differential, and the reduced product
    /// ḡ^t·ḡ^u = (g^{t+u} − e) − ḡ^t − ḡ^u.
    pub fn cyclic_group_ring(m: u64) -> FreeDga {
        let n = (m as usize).saturating_sub(1);
        let mut products = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                let t = i as u64 + 1;
                let u = j as u64 + 1;
                let s = (t + u) % m;
                let mut acc: HashMap<usize, BigInt> = HashMap::new();
                if s != 0 {
                    *acc.entry(s as usize - 1).or_insert_with(BigInt::zero) += 1;
                }
                *acc.entry(i).or_insert_with(BigInt::zero) -= 1;
                *acc.entry(j).or_insert_with(BigInt::zero) -= 1;
                let mut vec: SparseVec = acc
                    .into_iter()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                vec.sort_by_key(|(idx, _)| *idx);
                products.insert(((0, i), (0, j)), vec);
            }
        }
        FreeDga {
            dims: vec![n],
            diff: vec![vec![Vec::new(); n]],
            products,
        }
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.dims.get(degree).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn diff_of(&self, letter: Letter) -> &SparseVec {
        static EMPTY: SparseVec = Vec::new();
        self.diff
            .get(letter.0)
            .and_then(|row| row.get(letter.1))
            .unwrap_or(&EMPTY)
    }

    fn product_of(&self, a: Letter, b: Letter) -> &SparseVec {
        static EMPTY: SparseVec = Vec::new();
        self.products.get(&(a, b)).unwrap_or(&EMPTY)
    }

    /// Boundary matrices ∂_d: C_d → C_{d−1} of the full complex
    /// Z·1 ⊕ ideal, for d = 0..=top. The unit occupies the single degree-0
    /// slot and is never hit by the differential.
    pub fn boundary_matrices(&self, top: usize) -> (Vec<usize>, Vec<SparseIntMatrix>) {
        let mut dims = Vec::with_capacity(top + 1);
        for d in 0..=top {
            let unit = usize::from(d == 0);
            dims.push(unit + self.dim(d));
        }
        let mut boundaries = Vec::with_capacity(top + 1);
        for d in 0..=top {
            let rows = if d == 0 { 0 } else { dims[d - 1] };
            let mut m = SparseIntMatrix::zero(rows, self.dim(d));
            if d > 0 {
                let row_offset = usize::from(d == 1);
                for i in 0..self.dim(d) {
                    for (j, c) in &self.diff[d][i] {
                        m.set(row_offset + *j, i, c.clone());
                    }
                }
            }
            boundaries.push(m);
        }
        (dims, boundaries)
    }
}

/// Word counts of the bar construction: dims_out[d] = number of nonempty
/// words of total shifted degree d over an ideal with the given dims.
pub fn bar_dims(base_dims: &[usize], top: usize) -> Vec<usize> {
    let mut with_empty = vec![0usize; top + 1];
    with_empty[0] = 1;
    for d in 1..=top {
        let mut total = 0usize;
        for s in 1..=d {
            let letters = base_dims.get(s - 1).copied().unwrap_or(0);
            total += letters * with_empty[d - s];
        }
        with_empty[d] = total;
    }
    let mut out = with_empty;
    out[0] = 0;
    out
}

/// Dense upper bound for the boundary-matrix entries of a complex with the
/// given dims.
pub fn dense_entry_estimate(dims: &[usize]) -> u128 {
    dims.windows(2)
        .map(|w| w[0] as u128 * w[1] as u128)
        .sum()
}

/// All (p,q)-shuffles of two letter lists with Koszul signs in the shifted
/// grading.
fn shuffles(a: &[Letter], b: &[Letter]) -> Vec<(Word, i64)> {
    if a.is_empty() {
        return vec![(b.to_vec(), 1)];
    }
    if b.is_empty() {
        return vec![(a.to_vec(), 1)];
    }
    let mut out = Vec::new();
    for (word, sign) in shuffles(&a[1..], b) {
        let mut w = Vec::with_capacity(word.len() + 1);
        w.push(a[0]);
        w.extend(word);
        out.push((w, sign));
    }
    // Taking b[0] first moves it past every remaining letter of a.
    let crossing: usize = a.iter().map(|&l| shifted(l)).sum();
    let flip = if (shifted(b[0]) * crossing) % 2 == 1 { -1 } else { 1 };
    for (word, sign) in shuffles(a, &b[1..]) {
        let mut w = Vec::with_capacity(word.len() + 1);
        w.push(b[0]);
        w.extend(word);
        out.push((w, sign * flip));
    }
    out
}

struct WordBasis {
    words: Vec<Vec<Word>>,
    index: HashMap<Word, usize>,
}

impl WordBasis {
    fn build(base: &FreeDga, top: usize) -> WordBasis {
        let mut words: Vec<Vec<Word>> = vec![Vec::new(); top + 1];
        // Deterministic order: by length-lexicographic extension over letters
        // sorted by (degree, index).
        fn extend(
            base: &FreeDga,
            top: usize,
            prefix: &mut Word,
            prefix_degree: usize,
            words: &mut Vec<Vec<Word>>,
        ) {
            if !prefix.is_empty() {
                words[prefix_degree].push(prefix.clone());
            }
            for deg in 0..=top.saturating_sub(prefix_degree + 1) {
                for idx in 0..base.dim(deg) {
                    let s = deg + 1;
                    if prefix_degree + s > top {
                        break;
                    }
                    prefix.push((deg, idx));
                    extend(base, top, prefix, prefix_degree + s, words);
                    prefix.pop();
                }
            }
        }
        let mut prefix = Vec::new();
        extend(base, top, &mut prefix, 0, &mut words);
        let mut index = HashMap::new();
        for bucket in &words {
            for (i, w) in bucket.iter().enumerate() {
                index.insert(w.clone(), i);
            }
        }
        WordBasis { words, index }
    }
}

/// One application of the reduced bar construction, with structure
/// materialized through total degree `top`. Products (needed to iterate) are
/// built only when `with_products` is set.
pub fn bar(base: &FreeDga, top: usize, with_products: bool) -> FreeDga {
    let basis = WordBasis::build(base, top);

    let mut dims = Vec::with_capacity(top + 1);
    for d in 0..=top {
        dims.push(basis.words[d].len());
    }

    // Differential: internal terms −(−1)^{n_t}[..d(x_t)..] plus merge terms
    // (−1)^{n_t}[..x_{t−1}·x_t..], with n_t the shifted degree of the prefix
    // before position t.
    let mut diff: Vec<Vec<SparseVec>> = Vec::with_capacity(top + 1);
    for bucket in basis.words.iter().take(top + 1) {
        let mut column_set = Vec::with_capacity(bucket.len());
        for word in bucket {
            let mut acc: HashMap<usize, BigInt> = HashMap::new();
            let mut prefix_shift = 0usize;
            for t in 0..word.len() {
                let sign_t: i64 = if prefix_shift.is_multiple_of(2) { 1 } else { -1 };
                // Internal differential of letter t.
                for (j, c) in base.diff_of(word[t]) {
                    let mut w = word.clone();
                    w[t] = (word[t].0 - 1, *j);
                    let idx = basis.index[&w];
                    *acc.entry(idx).or_insert_with(BigInt::zero) += c * BigInt::from(-sign_t);
                }
                // Merge of letters t−1 and t.
                if t > 0 {
                    for (j, c) in base.product_of(word[t - 1], word[t]) {
                        let mut w = Word::with_capacity(word.len() - 1);
                        w.extend_from_slice(&word[..t - 1]);
                        w.push((word[t - 1].0 + word[t].0, *j));
                        w.extend_from_slice(&word[t + 1..]);
                        let idx = basis.index[&w];
                        *acc.entry(idx).or_insert_with(BigInt::zero) += c * BigInt::from(sign_t);
                    }
                }
                prefix_shift += shifted(word[t]);
            }
            let mut vec: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            vec.sort_by_key(|(idx, _)| *idx);
            column_set.push(vec);
        }
        diff.push(column_set);
    }

    // Shuffle products for the next stage.
    let mut products = HashMap::new();
    if with_products {
        for d1 in 1..=top {
            for d2 in 1..=top - d1 {
                for (i1, w1) in basis.words[d1].iter().enumerate() {
                    for (i2, w2) in basis.words[d2].iter().enumerate() {
                        let mut acc: HashMap<usize, BigInt> = HashMap::new();
                        for (word, sign) in shuffles(w1, w2) {
                            let idx = basis.index[&word];
                            *acc.entry(idx).or_insert_with(BigInt::zero) += BigInt::from(sign);
                        }
                        let mut vec: SparseVec =
                            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                        vec.sort_by_key(|(idx, _)| *idx);
                        if !vec.is_empty() {
                            products.insert(((d1, i1), (d2, i2)), vec);
                        }
                    }
                }
            }
        }
    }

    FreeDga { dims, diff, products }
}

/// Result of the bar oracle: integral homology of the k-fold delooping of a
/// finite cyclic group through `max_degree`. Degrees k+i with i < k carry
/// the stable values.
#[derive(Debug, Clone)]
pub struct BarComplexResult {
    pub group: FgAbGroup,
    pub delooping_level: usize,
    pub homology: Vec<FgAbGroup>,
    /// Degrees i < stable_range_limit are stable (as shifts k+i).
    pub stable_range_limit: usize,
}

impl BarComplexResult {
    /// Stable homology in shifted degree i (that is, H_{k+i} of the k-fold
    /// delooping), defined for i < stable_range_limit.
    pub fn stable_homology(&self, i: usize) -> Option<&FgAbGroup> {
        if i < self.stable_range_limit {
            self.homology.get(self.delooping_level + i)
        } else {
            None
        }
    }
}

/// Integral homology of the k-fold iterated bar construction of Z[Z/m]
/// through `max_degree`, by Smith normal form of the boundary matrices.
pub fn bar_oracle(
    group: &FgAbGroup,
    k: usize,
    max_degree: usize,
    config: &OracleConfig,
) -> Result<BarComplexResult, OracleError> {
    if !group.is_finite() || group.invariant_factors().len() > 1 {
        return Err(OracleError::UnsupportedGroup(format!(
            "expected a finite cyclic group, got {group}"
        )));
    }
    let order = group
        .order()
        .and_then(|o| o.to_u64())
        .ok_or_else(|| OracleError::UnsupportedGroup("order too large".into()))?;
    if order > config.max_order {
        return Err(OracleError::UnsupportedGroup(format!(
            "order {order} exceeds the configured bound {}",
            config.max_order
        )));
    }
    if k == 0 {
        return Err(OracleError::UnsupportedGroup(
            "delooping level must be at least 1".into(),
        ));
    }

    let mut stage = FreeDga::cyclic_group_ring(order);
    for j in 1..=k {
        let top = (max_degree + 1).saturating_sub(k - j);
        let predicted = bar_dims(stage.dims(), top);
        let estimate = dense_entry_estimate(&predicted);
        if estimate > config.budget as u128 {
            return Err(OracleError::BudgetExceeded {
                estimate,
                budget: config.budget,
            });
        }
        stage = bar(&stage, top, j < k);
    }

    let (dims, boundaries) = stage.boundary_matrices(max_degree + 1);
    let homology = homology_from_boundaries(&dims, &boundaries);
    Ok(BarComplexResult {
        group: group.clone(),
        delooping_level: k,
        homology,
        stable_range_limit: k,
    })
}
