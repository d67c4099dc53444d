//! Exact arithmetic on finitely generated abelian groups.
//!
//! Groups are kept in invariant-factor normal form Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k
//! with 2 ≤ d_1 | d_2 | ... | d_k, so equality of values is equality of
//! groups. On top of that normal form the module provides Hom, Ext¹, tensor,
//! torsion functors and the classification of abelian extensions by explicit
//! cocycle enumeration.

pub mod matrix;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

pub use matrix::{smith_normal_form, IntMatrix, Snf};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AbelianError {
    /// Ext¹(quotient, kernel) is not finite, so extension classes cannot be
    /// enumerated. Unreachable for finitely generated inputs but kept so the
    /// contract of `classify_extensions` is explicit.
    #[error("Ext group of the extension problem is infinite")]
    InfiniteExtGroup,
    #[error("homomorphism does not respect relations: {0}")]
    InvalidHom(String),
    #[error("group expression parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

/// Finitely generated abelian group in invariant-factor normal form.
///
/// Two values are equal as Rust values exactly when the groups are
/// isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FgAbGroup {
    free_rank: usize,
    /// d_1 | d_2 | ... | d_k, each d_i ≥ 2.
    invariant_factors: Vec<BigUint>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        Self {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// Z/n for n ≥ 2; n = 1 gives the trivial group, n = 0 gives Z.
    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::trivial(),
            _ => Self {
                free_rank: 0,
                invariant_factors: vec![BigUint::from(n)],
            },
        }
    }

    /// Normal form of ⊕ Z/n_i ⊕ Z^free. Orders 0 count toward the free rank,
    /// orders 1 are dropped.
    pub fn from_orders(free_rank: usize, orders: impl IntoIterator<Item = BigUint>) -> Self {
        let mut free = free_rank;
        let mut torsion: Vec<BigUint> = Vec::new();
        for n in orders {
            if n.is_zero() {
                free += 1;
            } else if !n.is_one() {
                torsion.push(n);
            }
        }
        normalize_invariant_factors(&mut torsion);
        Self {
            free_rank: free,
            invariant_factors: torsion,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigUint] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Number of elements, None when infinite.
    pub fn order(&self) -> Option<BigUint> {
        if self.free_rank > 0 {
            return None;
        }
        Some(
            self.invariant_factors
                .iter()
                .fold(BigUint::one(), |acc, d| acc * d),
        )
    }

    /// Largest order of an element (the exponent), None when infinite.
    pub fn exponent(&self) -> Option<BigUint> {
        if self.free_rank > 0 {
            return None;
        }
        Some(
            self.invariant_factors
                .last()
                .cloned()
                .unwrap_or_else(BigUint::one),
        )
    }

    /// Whether the group contains an element of order exactly n (n ≥ 1).
    /// Finite element orders are exactly the divisors of the largest
    /// invariant factor; free generators contribute none.
    pub fn has_element_of_order(&self, n: &BigUint) -> bool {
        assert!(!n.is_zero(), "element order must be positive");
        if n.is_one() {
            return true;
        }
        self.invariant_factors
            .last()
            .map(|d| d.is_multiple_of(n))
            .unwrap_or(false)
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        FgAbGroup::from_orders(
            self.free_rank + other.free_rank,
            self.invariant_factors
                .iter()
                .chain(other.invariant_factors.iter())
                .cloned(),
        )
    }

    /// Orders of the canonical generators: 0 for each free generator, then
    /// the invariant factors.
    pub fn generator_orders(&self) -> Vec<BigUint> {
        let mut out = vec![BigUint::zero(); self.free_rank];
        out.extend(self.invariant_factors.iter().cloned());
        out
    }

    pub fn num_generators(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    /// The p-torsion subgroup (elements of p-power order).
    pub fn torsion_primary(&self, p: u64) -> FgAbGroup {
        assert!(is_prime(p), "p = {p} is not prime");
        let p = BigUint::from(p);
        let orders = self.invariant_factors.iter().map(|d| {
            let mut rest = d.clone();
            let mut part = BigUint::one();
            while rest.is_multiple_of(&p) {
                rest /= &p;
                part *= &p;
            }
            part
        });
        FgAbGroup::from_orders(0, orders)
    }

    /// The full torsion subgroup.
    pub fn torsion(&self) -> FgAbGroup {
        FgAbGroup {
            free_rank: 0,
            invariant_factors: self.invariant_factors.clone(),
        }
    }

    /// The quotient A/nA for n ≥ 1.
    pub fn quotient_by_multiple(&self, n: &BigUint) -> FgAbGroup {
        assert!(!n.is_zero());
        let orders = std::iter::repeat_n(n.clone(), self.free_rank)
            .chain(self.invariant_factors.iter().map(|d| d.gcd(n)));
        FgAbGroup::from_orders(0, orders)
    }

    /// The n-torsion subgroup A[n] = {a : n·a = 0} for n ≥ 1.
    pub fn torsion_subgroup_of_exponent(&self, n: &BigUint) -> FgAbGroup {
        assert!(!n.is_zero());
        FgAbGroup::from_orders(0, self.invariant_factors.iter().map(|d| d.gcd(n)))
    }

    /// Enumerates all elements of a finite group as generator-coordinate
    /// tuples. Panics on infinite groups.
    pub fn elements(&self) -> Vec<Vec<BigUint>> {
        assert!(self.is_finite(), "cannot enumerate an infinite group");
        let mut out = vec![Vec::new()];
        for d in &self.invariant_factors {
            let d = d.to_u64().expect("enumeration requires small factors");
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for tuple in &out {
                for v in 0..d {
                    let mut t = tuple.clone();
                    t.push(BigUint::from(v));
                    next.push(t);
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join("+"))
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serializes as `{"free_rank": r, "invariant_factors": [d1, ...]}` with the
/// factors as JSON numbers when they fit in u64 and decimal strings otherwise.
impl Serialize for FgAbGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        #[derive(Serialize)]
        #[serde(untagged)]
        enum Factor {
            Small(u64),
            Big(String),
        }
        let factors: Vec<Factor> = self
            .invariant_factors
            .iter()
            .map(|d| match d.to_u64() {
                Some(v) => Factor::Small(v),
                None => Factor::Big(d.to_string()),
            })
            .collect();
        let mut s = serializer.serialize_struct("FgAbGroup", 2)?;
        s.serialize_field("free_rank", &self.free_rank)?;
        s.serialize_field("invariant_factors", &factors)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for FgAbGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Factor {
            Small(u64),
            Big(String),
        }
        #[derive(Deserialize)]
        struct Raw {
            free_rank: usize,
            invariant_factors: Vec<Factor>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut orders = Vec::new();
        for f in raw.invariant_factors {
            let v = match f {
                Factor::Small(v) => BigUint::from(v),
                Factor::Big(s) => s
                    .parse::<BigUint>()
                    .map_err(|e| D::Error::custom(format!("bad invariant factor: {e}")))?,
            };
            if v.is_zero() || v.is_one() {
                return Err(D::Error::custom("invariant factors must be ≥ 2"));
            }
            orders.push(v);
        }
        Ok(FgAbGroup::from_orders(raw.free_rank, orders))
    }
}

/// Brings a multiset of torsion orders (each ≥ 2) into a divisibility chain
/// by repeated pairwise (gcd, lcm) replacement. No factorization needed.
fn normalize_invariant_factors(orders: &mut Vec<BigUint>) {
    orders.retain(|d| !d.is_one());
    loop {
        let mut changed = false;
        for i in 0..orders.len() {
            for j in i + 1..orders.len() {
                if !orders[j].is_multiple_of(&orders[i]) {
                    let g = orders[i].gcd(&orders[j]);
                    let l = &orders[i] * &orders[j] / &g;
                    orders[i] = g;
                    orders[j] = l;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    orders.retain(|d| !d.is_one());
    orders.sort();
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Coefficient group for Hom/Ext: either a finitely generated group or the
/// circle-type group C×. The latter is never modeled pointwise; all that
/// matters is that it is divisible (hence injective, Ext into it vanishes)
/// with torsion subgroup Q/Z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientGroup {
    FgAb(FgAbGroup),
    CircleDual,
}

impl CoefficientGroup {
    pub fn circle() -> Self {
        CoefficientGroup::CircleDual
    }
}

impl fmt::Display for CoefficientGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientGroup::FgAb(g) => write!(f, "{g}"),
            CoefficientGroup::CircleDual => write!(f, "Cx"),
        }
    }
}

/// Hom(A, C×) for finitely generated A: a finite character group isomorphic
/// to the torsion of A, times one circle factor per free generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterDescription {
    pub finite_part: FgAbGroup,
    pub circle_factor_count: usize,
}

/// Hom into a coefficient group: a group in normal form, or a character
/// description when the coefficients are C×.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomValue {
    Group(FgAbGroup),
    Characters(CharacterDescription),
}

/// Hom(a, b). For f.g. coefficients this is
/// Hom(Z, B) = B, Hom(Z/d, Z) = 0, Hom(Z/d, Z/e) = Z/gcd(d, e),
/// extended additively.
pub fn hom_group(a: &FgAbGroup, b: &CoefficientGroup) -> HomValue {
    match b {
        CoefficientGroup::CircleDual => HomValue::Characters(CharacterDescription {
            finite_part: a.torsion(),
            circle_factor_count: a.free_rank(),
        }),
        CoefficientGroup::FgAb(b) => {
            let mut orders = Vec::new();
            for _ in 0..a.free_rank() {
                orders.extend(b.invariant_factors().iter().cloned());
            }
            for d in a.invariant_factors() {
                for e in b.invariant_factors() {
                    orders.push(d.gcd(e));
                }
            }
            HomValue::Group(FgAbGroup::from_orders(a.free_rank() * b.free_rank(), orders))
        }
    }
}

/// Ext¹(a, b): zero on free sources and into C× (divisible coefficients are
/// injective); Ext(Z/d, Z) = Z/d and Ext(Z/d, Z/e) = Z/gcd(d, e) otherwise.
pub fn ext_group(a: &FgAbGroup, b: &CoefficientGroup) -> FgAbGroup {
    match b {
        CoefficientGroup::CircleDual => FgAbGroup::trivial(),
        CoefficientGroup::FgAb(b) => {
            let mut orders = Vec::new();
            for d in a.invariant_factors() {
                for _ in 0..b.free_rank() {
                    orders.push(d.clone());
                }
                for e in b.invariant_factors() {
                    orders.push(d.gcd(e));
                }
            }
            FgAbGroup::from_orders(0, orders)
        }
    }
}

/// a ⊗ b in normal form.
pub fn tensor(a: &FgAbGroup, b: &FgAbGroup) -> FgAbGroup {
    let mut orders = Vec::new();
    for _ in 0..a.free_rank() {
        orders.extend(b.invariant_factors().iter().cloned());
    }
    for _ in 0..b.free_rank() {
        orders.extend(a.invariant_factors().iter().cloned());
    }
    for d in a.invariant_factors() {
        for e in b.invariant_factors() {
            orders.push(d.gcd(e));
        }
    }
    FgAbGroup::from_orders(a.free_rank() * b.free_rank(), orders)
}

/// Torsion selector for `torsion_part`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionSelector {
    Prime(u64),
    All,
}

/// The p-torsion subgroup, or the full torsion subgroup for `All`.
pub fn torsion_part(a: &FgAbGroup, selector: TorsionSelector) -> FgAbGroup {
    match selector {
        TorsionSelector::Prime(p) => a.torsion_primary(p),
        TorsionSelector::All => a.torsion(),
    }
}

/// The cokernel of `m`: the group presented by the columns of `m` as
/// relations on row-many generators, in normal form.
pub fn cokernel(m: &IntMatrix) -> FgAbGroup {
    let snf = smith_normal_form(m);
    let diag = snf.diagonal();
    let free = m.rows() - diag.len();
    FgAbGroup::from_orders(
        free,
        diag.into_iter().map(|d| d.to_biguint().expect("SNF diagonal is nonnegative")),
    )
}

/// Isomorphism classes of middle groups E in 0 → kernel → E → quotient → 0.
///
/// Each class of Ext¹(quotient, kernel) = ⊕_j kernel/q_j·kernel is realized
/// by the explicit presentation ⟨gens(kernel), x_j | rels(kernel), q_j x_j =
/// lift(c_j)⟩ and normalized; the free part of the quotient splits off. The
/// result always contains the split class kernel ⊕ quotient.
pub fn classify_extensions(
    kernel: &FgAbGroup,
    quotient: &FgAbGroup,
) -> Result<std::collections::BTreeSet<FgAbGroup>, AbelianError> {
    let ext = ext_group(quotient, &CoefficientGroup::FgAb(kernel.clone()));
    if !ext.is_finite() {
        return Err(AbelianError::InfiniteExtGroup);
    }

    let q_orders: Vec<BigUint> = quotient.invariant_factors().to_vec();
    let k_orders = kernel.generator_orders();
    let nk = k_orders.len();
    let nq = q_orders.len();

    // Coordinate ranges for a class in ⊕_j kernel/q_j·kernel: the coordinate
    // of c_j on kernel generator i runs modulo ord(gen_i in kernel/q_j) =
    // q_j for free generators, gcd(d_i, q_j) for torsion ones.
    let mut coord_mod: Vec<Vec<u64>> = Vec::with_capacity(nq);
    for q in &q_orders {
        let mut row = Vec::with_capacity(nk);
        for o in &k_orders {
            let m = if o.is_zero() { q.clone() } else { o.gcd(q) };
            row.push(m.to_u64().expect("extension enumeration requires small groups"));
        }
        coord_mod.push(row);
    }

    let mut classes = std::collections::BTreeSet::new();
    let mut coords: Vec<Vec<u64>> = coord_mod.iter().map(|row| vec![0; row.len()]).collect();
    loop {
        // Presentation of the middle group: generators g_1..g_nk, x_1..x_nq,
        // relations d_i·g_i and q_j·x_j − Σ_i coords[j][i]·g_i.
        let gens = nk + nq;
        let mut m = IntMatrix::zero(gens, nk + nq);
        for (i, o) in k_orders.iter().enumerate() {
            if !o.is_zero() {
                m[(i, i)] = BigInt::from(o.clone());
            }
        }
        for j in 0..nq {
            m[(nk + j, nk + j)] = BigInt::from(q_orders[j].clone());
            for i in 0..nk {
                m[(i, nk + j)] = -BigInt::from(coords[j][i]);
            }
        }
        let middle = cokernel(&m).direct_sum(&FgAbGroup::free(quotient.free_rank()));
        classes.insert(middle);

        // Advance the multi-index over all Ext classes.
        let mut done = true;
        'advance: for j in 0..nq {
            for i in 0..nk {
                if coord_mod[j][i] <= 1 {
                    continue;
                }
                coords[j][i] += 1;
                if coords[j][i] < coord_mod[j][i] {
                    done = false;
                    break 'advance;
                }
                coords[j][i] = 0;
            }
        }
        if done {
            break;
        }
    }
    Ok(classes)
}

pub fn is_isomorphic(a: &FgAbGroup, b: &FgAbGroup) -> bool {
    a == b
}

/// A homomorphism between groups in normal form, as a matrix of generator
/// images: column i is the image of source generator i in target
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Builds and validates a homomorphism: for each source generator of
    /// order d, d times its image must vanish in the target (checked modulo
    /// the target relations).
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self, AbelianError> {
        if matrix.rows() != target.num_generators() || matrix.cols() != source.num_generators() {
            return Err(AbelianError::InvalidHom(format!(
                "matrix must be {}x{}, got {}x{}",
                target.num_generators(),
                source.num_generators(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        let src_orders = source.generator_orders();
        let tgt_orders = target.generator_orders();
        for (i, o) in src_orders.iter().enumerate() {
            if o.is_zero() {
                continue;
            }
            let o = BigInt::from(o.clone());
            for (j, e) in tgt_orders.iter().enumerate() {
                let v = &o * &matrix[(j, i)];
                let ok = if e.is_zero() {
                    v.is_zero()
                } else {
                    (v % BigInt::from(e.clone())).is_zero()
                };
                if !ok {
                    return Err(AbelianError::InvalidHom(format!(
                        "image of generator {i} is not annihilated by its order {o}"
                    )));
                }
            }
        }
        Ok(Self { source, target, matrix })
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Applies the map to an element given in source coordinates; the result
    /// is reduced modulo the target relations.
    pub fn apply(&self, coords: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.source.num_generators());
        let tgt_orders = self.target.generator_orders();
        (0..self.target.num_generators())
            .map(|j| {
                let mut acc = BigInt::zero();
                for (i, c) in coords.iter().enumerate() {
                    acc += &self.matrix[(j, i)] * c;
                }
                if tgt_orders[j].is_zero() {
                    acc
                } else {
                    acc.mod_floor(&BigInt::from(tgt_orders[j].clone()))
                }
            })
            .collect()
    }
}
