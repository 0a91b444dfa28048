//! Union-closed families and their text format.
//!
//! A [`Family`] always holds the empty set and the full ground set and is closed under
//! pairwise union. The text form lists member masks in ascending decimal order separated
//! by commas, e.g. `0,1,3` for `{{}, {0}, {0,1}}` on two elements; the ground size travels
//! separately as `n=2`, or inline in the annotated form `n=2:0,1,3`. Hex masks with a `0x`
//! prefix are accepted on input.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::mask::{GroundSet, SubsetMask};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Family {
    ground: GroundSet,
    members: Vec<SubsetMask>,
}

impl Family {
    /// Validates `masks` (any order, duplicates allowed) as a union-closed family.
    pub fn from_masks<I: IntoIterator<Item = SubsetMask>>(ground: GroundSet, masks: I) -> Result<Self> {
        let mut members: Vec<SubsetMask> = masks.into_iter().collect();
        for &m in &members {
            ground.check(m)?;
        }
        members.sort_unstable();
        members.dedup();
        if !is_union_closed(&members, ground) {
            return Err(Error::NotAFamily(format!("n={} members {}", ground.size(), join_masks(&members))));
        }
        Ok(Family { ground, members })
    }

    /// Caller guarantees `members` is sorted, deduplicated and union-closed.
    pub(crate) fn from_sorted_unchecked(ground: GroundSet, members: Vec<SubsetMask>) -> Self {
        debug_assert!(is_union_closed(&members, ground));
        Family { ground, members }
    }

    pub fn powerset(ground: GroundSet) -> Self {
        let members = (0..=ground.full().0).map(SubsetMask).collect();
        Family { ground, members }
    }

    /// `{{}, X}`
    pub fn trivial(ground: GroundSet) -> Self {
        Family { ground, members: vec![SubsetMask::EMPTY, ground.full()] }
    }

    #[inline]
    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    #[inline]
    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: SubsetMask) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    /// Relabels every element `i` as `perm[i]`.
    pub fn permute(&self, perm: &[u32]) -> Family {
        let mut members: Vec<SubsetMask> = self.members.iter().map(|m| m.permute(perm)).collect();
        members.sort_unstable();
        Family { ground: self.ground, members }
    }

    /// Parses the plain text form against a known ground set.
    pub fn parse(ground: GroundSet, text: &str) -> Result<Self> {
        let masks = parse_masks(text)?;
        Family::from_masks(ground, masks)
    }

    /// Parses `n=<size>:<masks>`.
    pub fn parse_annotated(text: &str) -> Result<Self> {
        let (head, body) = text
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected n=<size>:<masks>, got {text:?}")))?;
        let n = head
            .trim()
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse::<u32>().ok())
            .ok_or_else(|| Error::Parse(format!("bad ground size {head:?}")))?;
        Family::parse(GroundSet::new(n)?, body)
    }

    pub fn annotated(&self) -> String {
        format!("n={}:{}", self.ground.size(), self)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_masks(&self.members))
    }
}

fn join_masks(masks: &[SubsetMask]) -> String {
    masks.iter().map(|m| m.0.to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse_mask(token: &str) -> Result<SubsetMask> {
    let t = token.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse::<u64>(),
    };
    parsed.map(SubsetMask).map_err(|e| Error::Parse(format!("mask {t:?}: {e}")))
}

fn parse_masks(text: &str) -> Result<Vec<SubsetMask>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty family text".into()));
    }
    text.split(',').map(parse_mask).collect()
}

/// True iff `members` holds the empty set and the full set and every pairwise union.
/// Expects `members` sorted and deduplicated.
pub fn is_union_closed(members: &[SubsetMask], ground: GroundSet) -> bool {
    let has = |m: SubsetMask| members.binary_search(&m).is_ok();
    if !has(SubsetMask::EMPTY) || !has(ground.full()) {
        return false;
    }
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            let u = a.union(b);
            if u != b && !has(u) {
                return false;
            }
        }
    }
    true
}

/// The smallest family on `ground` containing every seed.
pub fn union_closure<I: IntoIterator<Item = SubsetMask>>(seeds: I, ground: GroundSet) -> Result<Family> {
    let mut closed: BTreeSet<SubsetMask> = BTreeSet::new();
    closed.insert(SubsetMask::EMPTY);
    closed.insert(ground.full());
    let mut pending: Vec<SubsetMask> = Vec::new();
    for s in seeds {
        ground.check(s)?;
        pending.push(s);
    }
    while let Some(s) = pending.pop() {
        if !closed.insert(s) {
            continue;
        }
        let unions: Vec<SubsetMask> = closed.iter().map(|&a| a.union(s)).filter(|u| !closed.contains(u)).collect();
        pending.extend(unions);
    }
    Ok(Family { ground, members: closed.into_iter().collect() })
}
