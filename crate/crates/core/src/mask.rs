//! Ground sets and subsets encoded as 64-bit masks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on the ground set size accepted by [`GroundSet::new`].
pub const DEFAULT_MAX_N: u32 = 16;
/// Masks are `u64`, so no ground set can be larger than this.
pub const HARD_MAX_N: u32 = 64;

/// The ground set `{0, .., n-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroundSet {
    n: u32,
}

impl GroundSet {
    pub fn new(n: u32) -> Result<Self> {
        Self::with_limit(n, DEFAULT_MAX_N)
    }

    /// Like [`GroundSet::new`] but with a caller-chosen maximum (clamped to the word width).
    pub fn with_limit(n: u32, max: u32) -> Result<Self> {
        let max = max.min(HARD_MAX_N);
        if n == 0 || n > max {
            return Err(Error::GroundSize { n, max });
        }
        Ok(GroundSet { n })
    }

    #[inline]
    pub fn size(self) -> u32 {
        self.n
    }

    /// Mask with every element set.
    #[inline]
    pub fn full(self) -> SubsetMask {
        SubsetMask(full_bits(self.n))
    }

    #[inline]
    pub fn contains(self, s: SubsetMask) -> bool {
        s.0 & !full_bits(self.n) == 0
    }

    pub fn check(self, s: SubsetMask) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::MaskOutOfGround { mask: s.0, n: self.n })
        }
    }

    /// All subsets of size `k`, ascending by mask value.
    pub fn k_subsets(self, k: u32) -> KSubsets {
        KSubsets::new(self.n, k)
    }
}

#[inline]
pub(crate) fn full_bits(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of a ground set; bit `i` is set iff element `i` is a member.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubsetMask(pub u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Self {
        SubsetMask(elements.into_iter().fold(0u64, |acc, e| acc | (1u64 << e)))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn has(self, e: u32) -> bool {
        e < 64 && self.0 >> e & 1 == 1
    }

    #[inline]
    pub fn union(self, o: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 | o.0)
    }

    #[inline]
    pub fn intersection(self, o: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & o.0)
    }

    #[inline]
    pub fn difference(self, o: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & !o.0)
    }

    #[inline]
    pub fn is_subset_of(self, o: SubsetMask) -> bool {
        self.0 & !o.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, o: SubsetMask) -> bool {
        self.0 & o.0 == 0
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        let mut b = self.0;
        std::iter::from_fn(move || {
            if b == 0 {
                None
            } else {
                let e = b.trailing_zeros();
                b &= b - 1;
                Some(e)
            }
        })
    }

    /// Packs the bits selected by `keep` into the low positions, preserving order.
    pub fn compress(self, keep: SubsetMask) -> SubsetMask {
        let mut out = 0u64;
        for (i, e) in keep.elements().enumerate() {
            if self.has(e) {
                out |= 1 << i;
            }
        }
        SubsetMask(out)
    }

    /// Inverse of [`SubsetMask::compress`]: spreads low bits onto the elements of `onto`.
    pub fn expand(self, onto: SubsetMask) -> SubsetMask {
        let mut out = 0u64;
        for (i, e) in onto.elements().enumerate() {
            if self.0 >> i & 1 == 1 {
                out |= 1 << e;
            }
        }
        SubsetMask(out)
    }

    /// Relabels element `i` as `perm[i]`.
    pub fn permute(self, perm: &[u32]) -> SubsetMask {
        SubsetMask(self.elements().fold(0, |acc, e| acc | 1 << perm[e as usize]))
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Iterator over the `k`-subsets of `{0, .., n-1}` in increasing mask order (Gosper's hack).
#[derive(Clone, Debug)]
pub struct KSubsets {
    next: Option<u64>,
    limit: u64,
}

impl KSubsets {
    pub(crate) fn new(n: u32, k: u32) -> Self {
        let next = if k > n {
            None
        } else if k == 0 {
            Some(0)
        } else {
            Some(full_bits(k))
        };
        KSubsets { next, limit: full_bits(n) }
    }
}

impl Iterator for KSubsets {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let (r, overflow) = cur.overflowing_add(c);
            if overflow {
                None
            } else {
                let nxt = (((r ^ cur) >> 2) / c) | r;
                (nxt <= self.limit && nxt & !self.limit == 0).then_some(nxt)
            }
        };
        Some(SubsetMask(cur))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn k_subsets_counts_and_order() {
        for n in 1..=10u32 {
            let g = GroundSet::new(n).unwrap();
            for k in 0..=n + 1 {
                let v: Vec<_> = g.k_subsets(k).collect();
                let expect = if k > n { 0 } else { binom(n as u64, k as u64) };
                assert_eq!(v.len() as u64, expect, "n={n} k={k}");
                assert!(v.windows(2).all(|w| w[0] < w[1]));
                assert!(v.iter().all(|s| s.len() == k && g.contains(*s)));
            }
        }
    }

    #[test]
    fn k_subsets_full_word() {
        let g = GroundSet::with_limit(64, 64).unwrap();
        assert_eq!(g.k_subsets(64).collect::<Vec<_>>(), vec![SubsetMask(u64::MAX)]);
        assert_eq!(g.k_subsets(63).count(), 64);
    }

    #[test]
    fn ground_limits() {
        assert!(GroundSet::new(0).is_err());
        assert!(GroundSet::new(17).is_err());
        assert!(GroundSet::with_limit(64, 100).is_ok());
        assert!(GroundSet::with_limit(65, 100).is_err());
        assert_eq!(GroundSet::new(3).unwrap().full(), SubsetMask(7));
    }

    #[test]
    fn compress_expand() {
        let keep = SubsetMask(0b10110);
        let s = SubsetMask(0b10010);
        let c = s.compress(keep);
        assert_eq!(c, SubsetMask(0b101));
        assert_eq!(c.expand(keep), s);
    }
}
