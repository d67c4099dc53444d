//! Catalog of target Picard spectra and exact arithmetic in the Witt group
//! of nondegenerate braided fusion categories.
//!
//! The Witt group is used purely through its isomorphism type
//! W ≅ Z/32 ⊕ ⊕_N(Z ⊕ Z/2 ⊕ Z/4); no braided categories are ever
//! constructed. The slightly degenerate variant sW ≅ ⊕_N(Z ⊕ Z/2 ⊕ Z/4)
//! receives W by a surjection that folds the mod-2 reduction of the Z/32
//! coordinate into a designated Z/2 slot.

use crate::abelian::{classify_extensions, AbelianError, FgAbGroup};
use crate::descriptor::GroupDescriptor;
use crate::spectra::{KInvariant, PiElement, TwoTermSpectrum, TwoTorsionHom};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TargetError {
    #[error("not in catalog: {0}")]
    NotInCatalog(String),
}

/// Names of the cataloged targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TargetName {
    Vect,
    SVect,
    Alg,
    SAlg,
    Fus,
    BrFus,
    Vect4,
    /// Universal target in dimension d (1 ≤ d ≤ 4).
    U(usize),
}

impl fmt::Display for TargetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetName::Vect => write!(f, "Vect"),
            TargetName::SVect => write!(f, "sVect"),
            TargetName::Alg => write!(f, "Alg"),
            TargetName::SAlg => write!(f, "sAlg"),
            TargetName::Fus => write!(f, "Fus"),
            TargetName::BrFus => write!(f, "BrFus"),
            TargetName::Vect4 => write!(f, "Vect4"),
            TargetName::U(d) => write!(f, "U{d}"),
        }
    }
}

impl TargetName {
    pub fn parse(s: &str) -> Result<TargetName, TargetError> {
        match s.to_ascii_lowercase().as_str() {
            "vect" => Ok(TargetName::Vect),
            "svect" => Ok(TargetName::SVect),
            "alg" => Ok(TargetName::Alg),
            "salg" => Ok(TargetName::SAlg),
            "fus" => Ok(TargetName::Fus),
            "brfus" => Ok(TargetName::BrFus),
            "vect4" => Ok(TargetName::Vect4),
            "u1" => Ok(TargetName::U(1)),
            "u2" => Ok(TargetName::U(2)),
            "u3" => Ok(TargetName::U(3)),
            "u4" => Ok(TargetName::U(4)),
            other => Err(TargetError::NotInCatalog(format!("unknown target '{other}'"))),
        }
    }
}

/// k-invariant status of a cataloged Picard spectrum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PicardKInvariant {
    Zero,
    Unknown,
    /// Known nontrivial, with a tag describing it.
    NontrivialKnown(&'static str),
}

/// A cataloged Picard spectrum: the invertible part of a target higher
/// category, presented by its homotopy groups.
#[derive(Debug, Clone)]
pub struct PicardSpectrum {
    pub name: TargetName,
    /// Categorical dimension: homotopy is recorded in degrees 0..=cat_dim.
    pub cat_dim: usize,
    /// homotopy[j] = π_j Pic.
    pub homotopy: Vec<GroupDescriptor>,
    /// Whether the top homotopy group is C×.
    pub top_complex: bool,
    pub k_invariant: PicardKInvariant,
    /// Whether the spectrum is a truncated shift of the character dual of
    /// the sphere, so that mapping in computes Hom(π₀(−), C×) directly.
    pub brown_comenetz: bool,
}

/// Homotopy of the sphere spectrum in degrees 0..=4: Z, Z/2, Z/2, Z/24, 0.
fn sphere_homotopy(j: usize) -> FgAbGroup {
    match j {
        0 => FgAbGroup::free(1),
        1 | 2 => FgAbGroup::cyclic(2),
        3 => FgAbGroup::cyclic(24),
        _ => FgAbGroup::trivial(),
    }
}

/// Catalog lookup.
pub fn picard(name: TargetName) -> Result<PicardSpectrum, TargetError> {
    let circle = GroupDescriptor::circle;
    let zero = GroupDescriptor::zero;
    let entry = match name {
        TargetName::Vect => PicardSpectrum {
            name,
            cat_dim: 1,
            homotopy: vec![zero(), circle()],
            top_complex: true,
            k_invariant: PicardKInvariant::Zero,
            brown_comenetz: false,
        },
        TargetName::SVect => PicardSpectrum {
            name,
            cat_dim: 1,
            homotopy: vec![GroupDescriptor::cyclic(2), circle()],
            top_complex: true,
            k_invariant: PicardKInvariant::NontrivialKnown(
                "super sign: the invertible odd line has symmetry -1",
            ),
            brown_comenetz: true,
        },
        TargetName::Alg => PicardSpectrum {
            name,
            cat_dim: 2,
            homotopy: vec![zero(), zero(), circle()],
            top_complex: true,
            k_invariant: PicardKInvariant::Zero,
            brown_comenetz: false,
        },
        TargetName::SAlg => PicardSpectrum {
            name,
            cat_dim: 2,
            homotopy: vec![
                GroupDescriptor::cyclic(2),
                GroupDescriptor::cyclic(2),
                circle(),
            ],
            top_complex: true,
            k_invariant: PicardKInvariant::NontrivialKnown("truncated shifted character dual of the sphere"),
            brown_comenetz: true,
        },
        TargetName::Fus => PicardSpectrum {
            name,
            cat_dim: 3,
            homotopy: vec![zero(), zero(), zero(), circle()],
            top_complex: true,
            k_invariant: PicardKInvariant::Zero,
            brown_comenetz: false,
        },
        TargetName::BrFus => PicardSpectrum {
            name,
            cat_dim: 4,
            homotopy: vec![GroupDescriptor::witt(), zero(), zero(), zero(), circle()],
            top_complex: true,
            k_invariant: PicardKInvariant::Unknown,
            brown_comenetz: false,
        },
        TargetName::Vect4 => PicardSpectrum {
            name,
            cat_dim: 4,
            homotopy: vec![zero(), zero(), zero(), zero(), circle()],
            top_complex: true,
            k_invariant: PicardKInvariant::Zero,
            brown_comenetz: false,
        },
        TargetName::U(d) if (1..=4).contains(&d) => {
            // π_j = Hom(π_{d−j} of the sphere, C×), dualized catalog
            // constants.
            let homotopy: Vec<GroupDescriptor> = (0..=d)
                .map(|j| {
                    let pi = sphere_homotopy(d - j);
                    if pi.is_trivial() {
                        zero()
                    } else if pi.free_rank() > 0 {
                        // dual of Z is the circle
                        GroupDescriptor::circles(pi.free_rank())
                    } else {
                        GroupDescriptor::fg(pi)
                    }
                })
                .collect();
            PicardSpectrum {
                name,
                cat_dim: d,
                homotopy,
                top_complex: true,
                k_invariant: PicardKInvariant::NontrivialKnown(
                    "truncated shifted character dual of the sphere",
                ),
                brown_comenetz: true,
            }
        }
        TargetName::U(d) => {
            return Err(TargetError::NotInCatalog(format!(
                "universal target only cataloged for dimensions 1..=4, got {d}"
            )))
        }
    };
    Ok(entry)
}

impl PicardSpectrum {
    /// π_j, zero above the categorical dimension.
    pub fn pi(&self, j: usize) -> GroupDescriptor {
        self.homotopy.get(j).cloned().unwrap_or_else(GroupDescriptor::zero)
    }

    /// The hypotheses of the two-term classification in dimension 4:
    /// top-complex with π₁ = π₂ = π₃ = 0. Returns the list of violations.
    pub fn four_dim_hypothesis_violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.cat_dim != 4 {
            v.push(format!("categorical dimension is {}, not 4", self.cat_dim));
        }
        if !self.top_complex {
            v.push("top homotopy group is not the circle".to_string());
        }
        for j in 1..=3 {
            if !self.pi(j).is_zero() {
                v.push(format!("π{j} = {} is nonzero", self.pi(j)));
            }
        }
        v
    }

    /// The spectrum as a two-term object (π₀, π_top) when the middle
    /// homotopy vanishes.
    pub fn as_two_term(&self) -> Option<TwoTermSpectrum> {
        for j in 1..self.cat_dim {
            if !self.pi(j).is_zero() {
                return None;
            }
        }
        let k = match &self.k_invariant {
            PicardKInvariant::Zero => KInvariant::Zero,
            PicardKInvariant::Unknown => KInvariant::Unknown,
            PicardKInvariant::NontrivialKnown(_) => {
                if self.name == TargetName::SVect {
                    // π₀ = Z/2 → C×, sending the odd line to −1.
                    KInvariant::TwoTorsionHom(TwoTorsionHom {
                        images: vec![PiElement::Phase(BigRational::new(
                            BigInt::from(1),
                            BigInt::from(2),
                        ))],
                    })
                } else {
                    return None;
                }
            }
        };
        Some(TwoTermSpectrum::new(
            self.pi(0),
            self.cat_dim,
            self.pi(self.cat_dim),
            k,
        ))
    }
}

// ---- Witt group arithmetic ----

/// One ⊕_N summand of the Witt group: (free Z part, Z/2 part, Z/4 part).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct WittSummand {
    pub free: i64,
    pub t2: u8,
    pub t4: u8,
}

impl WittSummand {
    pub fn new(free: i64, t2: u8, t4: u8) -> Self {
        Self {
            free,
            t2: t2 % 2,
            t4: t4 % 4,
        }
    }

    fn is_zero(&self) -> bool {
        self.free == 0 && self.t2 == 0 && self.t4 == 0
    }

    fn add(&self, other: &WittSummand) -> WittSummand {
        WittSummand::new(
            self.free + other.free,
            (self.t2 + other.t2) % 2,
            (self.t4 + other.t4) % 4,
        )
    }

    fn neg(&self) -> WittSummand {
        WittSummand::new(-self.free, (2 - self.t2) % 2, (4 - self.t4) % 4)
    }
}

/// An element of W ≅ Z/32 ⊕ ⊕_N(Z ⊕ Z/2 ⊕ Z/4) with finite support.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WittElement {
    pub c32: u8,
    pub summands: BTreeMap<u64, WittSummand>,
}

impl WittElement {
    pub fn new(c32: u8, summands: impl IntoIterator<Item = (u64, WittSummand)>) -> Self {
        let mut map = BTreeMap::new();
        for (idx, s) in summands {
            if !s.is_zero() {
                map.insert(idx, s);
            }
        }
        Self {
            c32: c32 % 32,
            summands: map,
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.c32 == 0 && self.summands.is_empty()
    }
}

/// An element of sW ≅ ⊕_N(Z ⊕ Z/2 ⊕ Z/4) with finite support.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SWittElement {
    pub summands: BTreeMap<u64, WittSummand>,
}

impl SWittElement {
    pub fn new(summands: impl IntoIterator<Item = (u64, WittSummand)>) -> Self {
        let mut map = BTreeMap::new();
        for (idx, s) in summands {
            if !s.is_zero() {
                map.insert(idx, s);
            }
        }
        Self { summands: map }
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }
}

pub fn witt_add(a: &WittElement, b: &WittElement) -> WittElement {
    let mut summands = a.summands.clone();
    for (idx, s) in &b.summands {
        let merged = summands
            .get(idx)
            .map(|t| t.add(s))
            .unwrap_or_else(|| s.clone());
        if merged.is_zero() {
            summands.remove(idx);
        } else {
            summands.insert(*idx, merged);
        }
    }
    WittElement {
        c32: (a.c32 + b.c32) % 32,
        summands,
    }
}

pub fn witt_neg(a: &WittElement) -> WittElement {
    WittElement {
        c32: (32 - a.c32) % 32,
        summands: a.summands.iter().map(|(i, s)| (*i, s.neg())).collect(),
    }
}

pub fn switt_add(a: &SWittElement, b: &SWittElement) -> SWittElement {
    let mut summands = a.summands.clone();
    for (idx, s) in &b.summands {
        let merged = summands
            .get(idx)
            .map(|t| t.add(s))
            .unwrap_or_else(|| s.clone());
        if merged.is_zero() {
            summands.remove(idx);
        } else {
            summands.insert(*idx, merged);
        }
    }
    SWittElement { summands }
}

/// Order of an element: infinite (None) when any free coordinate is
/// nonzero, otherwise the lcm of the coordinate orders. Torsion orders never
/// exceed 32.
pub fn witt_order(a: &WittElement) -> Option<BigUint> {
    let mut order = order_of_residue(a.c32 as u64, 32);
    for s in a.summands.values() {
        if s.free != 0 {
            return None;
        }
        order = order.lcm(&order_of_residue(s.t2 as u64, 2));
        order = order.lcm(&order_of_residue(s.t4 as u64, 4));
    }
    Some(order)
}

fn order_of_residue(r: u64, modulus: u64) -> BigUint {
    BigUint::from(modulus / modulus.gcd(&r))
}

/// The surjection W → sW: summands pass through unchanged, the Z/32
/// coordinate is dropped through its mod-2 reduction folded into the t2 slot
/// of summand index 0. Restricted to the Z/32 coordinate the kernel is the
/// index-two subgroup of even residues, of size 16.
pub fn witt_to_switt(a: &WittElement) -> SWittElement {
    let mut summands = a.summands.clone();
    if a.c32 % 2 == 1 {
        let slot = summands.entry(0).or_default();
        slot.t2 = (slot.t2 + 1) % 2;
        if slot.is_zero() {
            summands.remove(&0);
        }
    }
    SWittElement { summands }
}

/// Report of the finite-truncation re-derivation of the Witt group's
/// isomorphism type from extension theory.
#[derive(Debug, Clone)]
pub struct WittStructureReport {
    /// Isomorphism classes of extensions of the truncated torsion quotient
    /// by Z/16.
    pub extension_classes: BTreeSet<FgAbGroup>,
    /// The classes surviving the order filter: an element of order 32
    /// exists, none of order 64.
    pub surviving_classes: BTreeSet<FgAbGroup>,
    /// The torsion part of the corresponding truncation of the Witt group.
    pub truncated_witt_torsion: FgAbGroup,
}

/// Re-derives, at a finite truncation with `m` torsion summands, the
/// extension-theory step pinning the Witt group's isomorphism type:
/// enumerates extensions of (Z/2 ⊕ Z/4)^m by Z/16 and filters by "order-32
/// element present, no order-64 element".
pub fn witt_structure_check(m: usize) -> Result<WittStructureReport, AbelianError> {
    let kernel = FgAbGroup::cyclic(16);
    let mut quotient = FgAbGroup::trivial();
    for _ in 0..m {
        quotient = quotient
            .direct_sum(&FgAbGroup::cyclic(2))
            .direct_sum(&FgAbGroup::cyclic(4));
    }
    let extension_classes = classify_extensions(&kernel, &quotient)?;
    let surviving_classes: BTreeSet<FgAbGroup> = extension_classes
        .iter()
        .filter(|g| {
            g.has_element_of_order(&BigUint::from(32u32))
                && !g.has_element_of_order(&BigUint::from(64u32))
        })
        .cloned()
        .collect();
    let mut truncated = FgAbGroup::cyclic(32);
    for _ in 0..m {
        truncated = truncated
            .direct_sum(&FgAbGroup::cyclic(2))
            .direct_sum(&FgAbGroup::cyclic(4));
    }
    Ok(WittStructureReport {
        extension_classes,
        surviving_classes,
        truncated_witt_torsion: truncated,
    })
}

// ---- serialization of Witt elements: {c32, summands: {idx: [free,t2,t4]}} ----

impl Serialize for WittElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let summands: BTreeMap<String, [i64; 3]> = self
            .summands
            .iter()
            .map(|(i, s)| (i.to_string(), [s.free, s.t2 as i64, s.t4 as i64]))
            .collect();
        let mut st = serializer.serialize_struct("WittElement", 2)?;
        st.serialize_field("c32", &self.c32)?;
        st.serialize_field("summands", &summands)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for WittElement {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            #[serde(default)]
            c32: i64,
            #[serde(default)]
            summands: BTreeMap<String, [i64; 3]>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut summands = BTreeMap::new();
        for (k, [free, t2, t4]) in raw.summands {
            let idx: u64 = k
                .parse()
                .map_err(|e| D::Error::custom(format!("bad summand index '{k}': {e}")))?;
            if !(0..2).contains(&t2) || !(0..4).contains(&t4) {
                return Err(D::Error::custom("t2 must be in 0..2 and t4 in 0..4"));
            }
            let s = WittSummand::new(free, t2 as u8, t4 as u8);
            if !s.is_zero() {
                summands.insert(idx, s);
            }
        }
        if !(0..32).contains(&raw.c32) {
            return Err(D::Error::custom("c32 must be in 0..32"));
        }
        Ok(WittElement {
            c32: raw.c32 as u8,
            summands,
        })
    }
}
