//! Compact families for enumeration: bit `m` of a [`FamilyBits`] is set iff mask `m` is a
//! member. With `u64` storage this covers ground sets of up to 6 elements.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::Family;
use crate::mask::{GroundSet, SubsetMask};

/// Largest ground set a [`FamilyBits`] can describe.
pub const MAX_BITS_N: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FamilyBits(pub u64);

impl FamilyBits {
    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn has(self, mask: u32) -> bool {
        self.0 >> mask & 1 == 1
    }

    pub fn masks(self) -> impl Iterator<Item = SubsetMask> {
        let mut b = self.0;
        std::iter::from_fn(move || {
            if b == 0 {
                None
            } else {
                let m = b.trailing_zeros();
                b &= b - 1;
                Some(SubsetMask(m as u64))
            }
        })
    }

    /// Caller guarantees the bits describe a union-closed family on `n` elements.
    pub fn to_family(self, n: u32) -> Family {
        let ground = GroundSet::with_limit(n, MAX_BITS_N).expect("n within bitset range");
        Family::from_sorted_unchecked(ground, self.masks().collect())
    }

    pub fn from_family(f: &Family) -> Result<Self> {
        let n = f.ground().size();
        if n > MAX_BITS_N {
            return Err(Error::Unsupported { what: "bitset family", n, limit: MAX_BITS_N });
        }
        Ok(FamilyBits(f.members().iter().fold(0u64, |acc, m| acc | 1 << m.0)))
    }

    /// Stream order: fewer members first, then lexicographic on the ascending mask list.
    ///
    /// For equal member counts the first difference between the two mask lists sits at the
    /// smallest mask in the symmetric difference, and whichever family owns it is smaller.
    pub fn stream_cmp(self, other: FamilyBits) -> Ordering {
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {
                let diff = self.0 ^ other.0;
                if diff == 0 {
                    Ordering::Equal
                } else if self.0 & diff & diff.wrapping_neg() != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            o => o,
        }
    }
}
