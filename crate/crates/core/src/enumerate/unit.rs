//! The search space split into units.
//!
//! Free masks are the proper nonempty subsets `1..full`, decided in ascending order. A unit
//! fixes the member count (a "layer", `2..=2^n`) and the decisions for the first `depth` free
//! masks. Within a layer, prefixes are numbered so that ascending prefix index follows
//! include-before-exclude order; mask `j` (1-based) is included iff bit `depth - j` of the
//! prefix index is clear. Walking units in index order and each unit in include-first order
//! reproduces the global stream order.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct UnitSpec {
    pub n: u32,
    /// Target member count, counting the empty and full set.
    pub layer: u32,
    pub depth: u32,
    pub prefix: u64,
}

/// Number of free masks for `n` elements.
#[inline]
pub(crate) fn free_masks(n: u32) -> u32 {
    (1u32 << n) - 2
}

#[inline]
pub(crate) fn layers(n: u32) -> u64 {
    (1u64 << n) - 1
}

pub(crate) fn unit_count(n: u32, depth: u32) -> u64 {
    layers(n) << depth
}

pub(crate) fn check_depth(n: u32, depth: u32) -> Result<()> {
    if depth > free_masks(n) || depth > 40 {
        return Err(Error::Token(format!("depth {depth} invalid for n={n}")));
    }
    Ok(())
}

impl UnitSpec {
    pub fn from_index(n: u32, depth: u32, index: u64) -> UnitSpec {
        UnitSpec { n, layer: 2 + (index >> depth) as u32, depth, prefix: index & ((1u64 << depth) - 1) }
    }

    /// Decision for free mask `j` (`1..=depth`).
    #[inline]
    pub fn includes(&self, j: u32) -> bool {
        self.prefix >> (self.depth - j) & 1 == 0
    }

    /// Bitset of the prefix masks this unit includes.
    pub fn prefix_bits(&self) -> u64 {
        (1..=self.depth).filter(|&j| self.includes(j)).fold(0u64, |acc, j| acc | 1 << j)
    }

    /// Index of the unit that would contain the family `bits`.
    pub fn index_of(depth: u32, bits: u64) -> u64 {
        let layer = bits.count_ones() as u64;
        let prefix = (1..=depth).fold(0u64, |acc, j| acc << 1 | u64::from(bits >> j & 1 == 0));
        ((layer - 2) << depth) | prefix
    }
}
