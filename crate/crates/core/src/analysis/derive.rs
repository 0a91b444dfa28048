//! Subfamilies that relate constants of different orders.
//!
//! Given a family `A` on `X` and a set `S ⊆ X`:
//!
//! * the disjoint subfamily keeps the members missing `S`;
//! * the quotient subfamily keeps the members containing `S`, strips `S` from them, and
//!   adds the empty set.
//!
//! Both are re-grounded on `X \ S` by packing the remaining elements into `0..n - |S|` in
//! increasing order. The result is only a [`Family`] when it holds the empty set and the
//! full remainder and is union-closed; otherwise the defect is reported.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{is_union_closed, Family};
use crate::mask::{GroundSet, SubsetMask};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RemainderDefect {
    /// `S` is the whole ground set.
    EmptyRemainder,
    /// No member, or no union of members, equals the full remainder.
    MissingRemainder,
    NotUnionClosed,
}

impl fmt::Display for RemainderDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RemainderDefect::EmptyRemainder => "empty remainder",
            RemainderDefect::MissingRemainder => "not a family on remainder: full remainder missing",
            RemainderDefect::NotUnionClosed => "not a family on remainder: not union-closed",
        })
    }
}

/// Sizes of the three-way split of the members by how much of `S` they hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionSizes {
    /// `|A ∩ S| >= l`
    pub covered: u64,
    /// `1 <= |A ∩ S| < l` (always zero for `l = 1`)
    pub partial: u64,
    /// `A ∩ S = ∅`
    pub disjoint: u64,
}

impl PartitionSizes {
    pub fn total(&self) -> u64 {
        self.covered + self.partial + self.disjoint
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedFamily {
    /// `X \ S` in the original labels.
    pub remainder: SubsetMask,
    /// Members after re-grounding, sorted.
    pub members: Vec<SubsetMask>,
    pub family: std::result::Result<Family, RemainderDefect>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointSubfamily {
    pub derived: DerivedFamily,
    pub sizes: PartitionSizes,
}

fn regrounded(
    f: &Family,
    s: SubsetMask,
    add_empty: bool,
    pick: impl Fn(SubsetMask) -> Option<SubsetMask>,
) -> Result<DerivedFamily> {
    let ground = f.ground();
    ground.check(s)?;
    let remainder = ground.full().difference(s);
    let mut members: Vec<SubsetMask> =
        f.members().iter().filter_map(|&a| pick(a)).map(|a| a.compress(remainder)).collect();
    if add_empty {
        members.push(SubsetMask::EMPTY);
    }
    members.sort_unstable();
    members.dedup();
    let family = if remainder.is_empty() {
        Err(RemainderDefect::EmptyRemainder)
    } else {
        let g = GroundSet::with_limit(remainder.len(), 64).expect("nonzero remainder");
        if members.binary_search(&g.full()).is_err() || members.first() != Some(&SubsetMask::EMPTY) {
            Err(RemainderDefect::MissingRemainder)
        } else if !is_union_closed(&members, g) {
            Err(RemainderDefect::NotUnionClosed)
        } else {
            Ok(Family::from_sorted_unchecked(g, members.clone()))
        }
    };
    Ok(DerivedFamily { remainder, members, family })
}

/// The members of `f` disjoint from `s`, re-grounded on the remainder, with the split sizes
/// at threshold `l`.
pub fn derive_disjoint_subfamily(f: &Family, s: SubsetMask, l: u32) -> Result<DisjointSubfamily> {
    if l == 0 {
        return Err(Error::Params { k: s.len(), l });
    }
    let derived = regrounded(f, s, false, |a| a.is_disjoint(s).then_some(a))?;
    let mut sizes = PartitionSizes { covered: 0, partial: 0, disjoint: 0 };
    for a in f.members() {
        match a.intersection(s).len() {
            0 => sizes.disjoint += 1,
            c if c >= l => sizes.covered += 1,
            _ => sizes.partial += 1,
        }
    }
    assert_eq!(sizes.total(), f.len() as u64, "split must cover every member");
    Ok(DisjointSubfamily { derived, sizes })
}

/// `{A \ s : A in f, s ⊆ A} ∪ {∅}`, re-grounded on the remainder.
pub fn derive_quotient_subfamily(f: &Family, s: SubsetMask) -> Result<DerivedFamily> {
    regrounded(f, s, true, |a| s.is_subset_of(a).then_some(a.difference(s)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: u32) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn fam(n: u32, text: &str) -> Family {
        Family::parse(g(n), text).unwrap()
    }

    #[test]
    fn disjoint_of_powerset() {
        let p = Family::powerset(g(3));
        let d = derive_disjoint_subfamily(&p, SubsetMask(0b001), 1).unwrap();
        assert_eq!(d.sizes, PartitionSizes { covered: 4, partial: 0, disjoint: 4 });
        assert_eq!(d.derived.remainder, SubsetMask(0b110));
        assert_eq!(d.derived.family.unwrap(), Family::powerset(g(2)));
    }

    #[test]
    fn disjoint_of_trivial_is_flagged() {
        let d = derive_disjoint_subfamily(&Family::trivial(g(3)), SubsetMask(0b001), 1).unwrap();
        assert_eq!(d.derived.members, vec![SubsetMask::EMPTY]);
        assert_eq!(d.derived.family, Err(RemainderDefect::MissingRemainder));
        let whole = derive_disjoint_subfamily(&Family::trivial(g(2)), SubsetMask(0b11), 1).unwrap();
        assert_eq!(whole.derived.family, Err(RemainderDefect::EmptyRemainder));
    }

    #[test]
    fn partial_layer_counts() {
        let p = Family::powerset(g(4));
        let d = derive_disjoint_subfamily(&p, SubsetMask(0b0111), 2).unwrap();
        // |A ∩ S| over a 3-set: 0 -> 1*2, 1 -> 3*2, >=2 -> 4*2
        assert_eq!(d.sizes, PartitionSizes { covered: 8, partial: 6, disjoint: 2 });
    }

    #[test]
    fn rejects_foreign_set() {
        assert!(derive_disjoint_subfamily(&Family::trivial(g(2)), SubsetMask(0b100), 1).is_err());
        assert!(derive_quotient_subfamily(&Family::trivial(g(2)), SubsetMask(0b100)).is_err());
        assert!(derive_disjoint_subfamily(&Family::trivial(g(2)), SubsetMask(1), 0).is_err());
    }

    #[test]
    fn quotient_examples() {
        let q = derive_quotient_subfamily(&Family::powerset(g(3)), SubsetMask(0b001)).unwrap();
        assert_eq!(q.family.unwrap(), Family::powerset(g(2)));
        let q = derive_quotient_subfamily(&fam(2, "0,1,3"), SubsetMask(0b01)).unwrap();
        assert_eq!(q.remainder, SubsetMask(0b10));
        assert_eq!(q.family.unwrap(), fam(1, "0,1"));
        let q = derive_quotient_subfamily(&fam(3, "0,1,7"), SubsetMask(0b011)).unwrap();
        assert_eq!(q.family.unwrap(), fam(1, "0,1"));
    }

    #[test]
    fn quotient_adds_empty_set() {
        // no member equals S, so the empty set comes only from the added {∅}
        let q = derive_quotient_subfamily(&fam(3, "0,3,7"), SubsetMask(0b001)).unwrap();
        assert_eq!(q.members, vec![SubsetMask(0), SubsetMask(1), SubsetMask(3)]);
        assert_eq!(q.family.unwrap(), fam(2, "0,1,3"));
    }
}
