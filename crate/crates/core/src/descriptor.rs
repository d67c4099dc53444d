//! Symbolic descriptors for the groups that appear in classification
//! results: finitely generated parts, circle factors C×, copies of the Witt
//! group W of nondegenerate braided fusion categories (and its slightly
//! degenerate variant sW), and countable direct sums ⊕_N T.
//!
//! A descriptor is a canonical form, so equality of descriptors is
//! isomorphism of the groups they denote within this catalog of shapes.

use crate::abelian::{hom_group, CoefficientGroup, FgAbGroup, HomValue};
use num_bigint::BigUint;
use num_integer::Integer;
use std::fmt;

/// Canonical form: fg ⊕ (C×)^circles ⊕ W^witt ⊕ sW^switt ⊕ ⊕_N(countable).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupDescriptor {
    pub fg: FgAbGroup,
    pub circles: usize,
    pub witt: usize,
    pub switt: usize,
    /// ⊕_N of this group; the trivial group means no such summand.
    pub countable: FgAbGroup,
}

impl GroupDescriptor {
    pub fn zero() -> Self {
        Self::fg(FgAbGroup::trivial())
    }

    pub fn fg(g: FgAbGroup) -> Self {
        Self {
            fg: g,
            circles: 0,
            witt: 0,
            switt: 0,
            countable: FgAbGroup::trivial(),
        }
    }

    pub fn integers() -> Self {
        Self::fg(FgAbGroup::free(1))
    }

    pub fn cyclic(n: u64) -> Self {
        Self::fg(FgAbGroup::cyclic(n))
    }

    pub fn circle() -> Self {
        Self {
            circles: 1,
            ..Self::zero()
        }
    }

    pub fn circles(n: usize) -> Self {
        Self {
            circles: n,
            ..Self::zero()
        }
    }

    pub fn witt() -> Self {
        Self {
            witt: 1,
            ..Self::zero()
        }
    }

    pub fn switt() -> Self {
        Self {
            switt: 1,
            ..Self::zero()
        }
    }

    pub fn countable_sum(t: FgAbGroup) -> Self {
        Self {
            countable: t,
            ..Self::zero()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.fg.is_trivial()
            && self.circles == 0
            && self.witt == 0
            && self.switt == 0
            && self.countable.is_trivial()
    }

    /// Whether the descriptor denotes a plain finitely generated group.
    pub fn as_fg(&self) -> Option<&FgAbGroup> {
        if self.circles == 0 && self.witt == 0 && self.switt == 0 && self.countable.is_trivial() {
            Some(&self.fg)
        } else {
            None
        }
    }

    pub fn direct_sum(&self, other: &GroupDescriptor) -> GroupDescriptor {
        GroupDescriptor {
            fg: self.fg.direct_sum(&other.fg),
            circles: self.circles + other.circles,
            witt: self.witt + other.witt,
            switt: self.switt + other.switt,
            countable: self.countable.direct_sum(&other.countable),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.circles == 0 && self.witt == 0 && self.switt == 0 && self.countable.is_trivial() && self.fg.is_finite()
    }

    pub fn order(&self) -> Option<BigUint> {
        if self.is_finite() {
            self.fg.order()
        } else {
            None
        }
    }

    /// The factors in display order: circle factors first, then Witt groups,
    /// then the finitely generated part, then any countable sum.
    pub fn factor_strings(&self) -> Vec<String> {
        let mut out = Vec::new();
        for _ in 0..self.circles {
            out.push("Cx".to_string());
        }
        for _ in 0..self.witt {
            out.push("W".to_string());
        }
        for _ in 0..self.switt {
            out.push("sW".to_string());
        }
        if !self.fg.is_trivial() {
            if self.fg.free_rank() == 1 {
                out.push("Z".to_string());
            } else if self.fg.free_rank() > 1 {
                out.push(format!("Z^{}", self.fg.free_rank()));
            }
            for d in self.fg.invariant_factors() {
                out.push(format!("Z/{d}"));
            }
        }
        if !self.countable.is_trivial() {
            out.push(format!("Sum_N({})", self.countable));
        }
        out
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", self.factor_strings().join("+"))
    }
}

impl fmt::Debug for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<FgAbGroup> for GroupDescriptor {
    fn from(g: FgAbGroup) -> Self {
        GroupDescriptor::fg(g)
    }
}

impl From<HomValue> for GroupDescriptor {
    fn from(v: HomValue) -> Self {
        match v {
            HomValue::Group(g) => GroupDescriptor::fg(g),
            HomValue::Characters(c) => GroupDescriptor {
                fg: c.finite_part,
                circles: c.circle_factor_count,
                ..GroupDescriptor::zero()
            },
        }
    }
}

/// d-torsion of the Witt group W = Z/32 ⊕ ⊕_N(Z ⊕ Z/2 ⊕ Z/4).
fn witt_torsion(d: &BigUint) -> GroupDescriptor {
    let g32 = d.gcd(&BigUint::from(32u32));
    let g2 = d.gcd(&BigUint::from(2u32));
    let g4 = d.gcd(&BigUint::from(4u32));
    GroupDescriptor {
        fg: FgAbGroup::from_orders(0, [g32]),
        countable: FgAbGroup::from_orders(0, [g2, g4]),
        ..GroupDescriptor::zero()
    }
}

/// d-torsion of sW = ⊕_N(Z ⊕ Z/2 ⊕ Z/4).
fn switt_torsion(d: &BigUint) -> GroupDescriptor {
    let g2 = d.gcd(&BigUint::from(2u32));
    let g4 = d.gcd(&BigUint::from(4u32));
    GroupDescriptor::countable_sum(FgAbGroup::from_orders(0, [g2, g4]))
}

/// Hom(A, D) for a finitely generated source A and a descriptor target D,
/// computed summand by summand. Every case that arises from the catalogs is
/// covered exactly:
/// Hom(Z, D) = D, Hom(Z/d, C×) = Z/d, Hom(Z/d, W) = W[d],
/// Hom(Z/d, ⊕_N T) = ⊕_N Hom(Z/d, T).
pub fn hom_fg_to_descriptor(a: &FgAbGroup, target: &GroupDescriptor) -> GroupDescriptor {
    let mut out = GroupDescriptor::zero();

    // Hom(A, fg part).
    out = out.direct_sum(&hom_group(a, &CoefficientGroup::FgAb(target.fg.clone())).into());

    // Hom(A, C×)^circles.
    if target.circles > 0 {
        let chars: GroupDescriptor = hom_group(a, &CoefficientGroup::CircleDual).into();
        for _ in 0..target.circles {
            out = out.direct_sum(&chars);
        }
    }

    // Hom(A, W) and Hom(A, sW): free generators contribute whole copies,
    // torsion generators contribute torsion subgroups.
    for _ in 0..target.witt {
        for _ in 0..a.free_rank() {
            out = out.direct_sum(&GroupDescriptor::witt());
        }
        for d in a.invariant_factors() {
            out = out.direct_sum(&witt_torsion(d));
        }
    }
    for _ in 0..target.switt {
        for _ in 0..a.free_rank() {
            out = out.direct_sum(&GroupDescriptor::switt());
        }
        for d in a.invariant_factors() {
            out = out.direct_sum(&switt_torsion(d));
        }
    }

    // Hom(A, ⊕_N T) = ⊕_N Hom(A, T): direct sums commute with Hom out of a
    // finitely generated (hence finitely presented) group.
    if !target.countable.is_trivial() {
        if let HomValue::Group(h) = hom_group(a, &CoefficientGroup::FgAb(target.countable.clone())) {
            if !h.is_trivial() {
                out = out.direct_sum(&GroupDescriptor::countable_sum(h));
            }
        }
    }

    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("group expression parse error at byte {position}: {message}")]
pub struct GroupExprError {
    pub position: usize,
    pub message: String,
}

/// Parses the group expression grammar: atoms `Z`, `Z/n`, `0`, `Cx`, `W`,
/// `sW`, powers with `^`, sums with `+` (e.g. `Z^2+Z/4+Z/6`).
pub fn parse_group_expr(text: &str) -> Result<GroupDescriptor, GroupExprError> {
    let mut out = GroupDescriptor::zero();
    let mut pos = 0usize;
    let bytes = text.as_bytes();
    let err = |position: usize, message: &str| GroupExprError {
        position,
        message: message.to_string(),
    };
    loop {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && !b"+^".contains(&bytes[pos]) && !bytes[pos].is_ascii_whitespace()
        {
            pos += 1;
        }
        let atom = &text[start..pos];
        let base = match atom {
            "Z" => GroupDescriptor::integers(),
            "0" => GroupDescriptor::zero(),
            "Cx" => GroupDescriptor::circle(),
            "W" => GroupDescriptor::witt(),
            "sW" => GroupDescriptor::switt(),
            _ => match atom.strip_prefix("Z/") {
                Some(n) => {
                    let n: u64 = n
                        .parse()
                        .map_err(|e| err(start, &format!("bad cyclic order: {e}")))?;
                    if n < 2 {
                        return Err(err(start, "cyclic order must be at least 2"));
                    }
                    GroupDescriptor::cyclic(n)
                }
                None => return Err(err(start, &format!("unknown group atom '{atom}'"))),
            },
        };
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let power = if pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            let pstart = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            text[pstart..pos]
                .parse::<usize>()
                .map_err(|e| err(pstart, &format!("bad exponent: {e}")))?
        } else {
            1
        };
        for _ in 0..power {
            out = out.direct_sum(&base);
        }
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos == bytes.len() {
            break;
        }
        if bytes[pos] != b'+' {
            return Err(err(pos, "expected '+' between summands"));
        }
        pos += 1;
    }
    Ok(out)
}
