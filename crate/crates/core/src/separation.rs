//! The `k|l`-separation predicates.
//!
//! A family on `n >= k` elements is `k|l`-separated when, for every choice of `l` "inside"
//! elements `L` and `k - l` further "outside" elements `R`, some member contains all of `L`
//! and none of `R`. The weak form only asks the member to meet `L`. Only the split into
//! `L` and `R` matters, so both predicates range over disjoint pairs `(L, R)` rather than
//! ordered `k`-tuples.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::Family;
use crate::mask::{full_bits, KSubsets, SubsetMask};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(u32, u32)", into = "(u32, u32)")]
pub struct SeparationParams {
    k: u32,
    l: u32,
}

impl SeparationParams {
    pub fn new(k: u32, l: u32) -> Result<Self> {
        if l == 0 || l > k {
            return Err(Error::Params { k, l });
        }
        Ok(SeparationParams { k, l })
    }

    #[inline]
    pub fn k(self) -> u32 {
        self.k
    }

    #[inline]
    pub fn l(self) -> u32 {
        self.l
    }

    /// Every valid `(k, l)` with `k <= max_k`, ordered by `k` then `l`.
    pub fn all_up_to(max_k: u32) -> impl Iterator<Item = SeparationParams> {
        (1..=max_k).flat_map(|k| (1..=k).map(move |l| SeparationParams { k, l }))
    }
}

impl TryFrom<(u32, u32)> for SeparationParams {
    type Error = Error;
    fn try_from((k, l): (u32, u32)) -> Result<Self> {
        SeparationParams::new(k, l)
    }
}

impl From<SeparationParams> for (u32, u32) {
    fn from(p: SeparationParams) -> Self {
        (p.k, p.l)
    }
}

impl fmt::Display for SeparationParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.k, self.l)
    }
}

/// Calls `check(L, R)` for every disjoint pair with `|L| = l`, `|R| = k - l`; stops at the
/// first `false`.
fn all_splits(n: u32, p: SeparationParams, mut check: impl FnMut(SubsetMask, SubsetMask) -> bool) -> bool {
    let ground = full_bits(n);
    for inside in KSubsets::new(n, p.l) {
        let rest = SubsetMask(ground & !inside.0);
        for r in KSubsets::new(rest.len(), p.k - p.l) {
            if !check(inside, r.expand(rest)) {
                return false;
            }
        }
    }
    true
}

pub fn is_separated(f: &Family, p: SeparationParams) -> bool {
    let n = f.ground().size();
    if n < p.k {
        return false;
    }
    let members = f.members();
    all_splits(n, p, |inside, outside| members.iter().any(|a| inside.is_subset_of(*a) && a.is_disjoint(outside)))
}

pub fn is_weakly_separated(f: &Family, p: SeparationParams) -> bool {
    let n = f.ground().size();
    if n < p.k {
        return false;
    }
    let members = f.members();
    all_splits(n, p, |inside, outside| members.iter().any(|a| !a.is_disjoint(inside) && a.is_disjoint(outside)))
}
