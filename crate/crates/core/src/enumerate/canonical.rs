//! Canonical forms under relabeling of the ground set.
//!
//! The representative of an orbit is its smallest member in stream order, i.e. the
//! relabeling whose ascending mask list is lexicographically least. The orbit size is
//! `n! / |stabilizer|`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::family::Family;

use super::bits::{FamilyBits, MAX_BITS_N};

/// Largest ground set accepted by [`canonical_form`] (it scans all `n!` relabelings).
pub const MAX_CANONICAL_N: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalFamily {
    pub representative: Family,
    pub orbit_size: u64,
}

/// All permutations of `0..n` (Heap's algorithm).
pub fn permutations(n: u32) -> Vec<Vec<u32>> {
    let mut p: Vec<u32> = (0..n).collect();
    let mut c = vec![0usize; n as usize];
    let mut out = vec![p.clone()];
    let mut i = 0usize;
    while i < n as usize {
        if c[i] < i {
            if i.is_multiple_of(2) {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            out.push(p.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

pub fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

pub fn canonical_form(f: &Family) -> Result<CanonicalFamily> {
    let n = f.ground().size();
    if n > MAX_CANONICAL_N {
        return Err(Error::Unsupported { what: "canonical form", n, limit: MAX_CANONICAL_N });
    }
    let mut best = f.clone();
    let mut stabilizer = 0u64;
    for perm in permutations(n) {
        let img = f.permute(&perm);
        if img == *f {
            stabilizer += 1;
        }
        if img.members() < best.members() {
            best = img;
        }
    }
    Ok(CanonicalFamily { representative: best, orbit_size: factorial(n) / stabilizer })
}

/// Precomputed mask images under every permutation, for fast canonical tests on
/// [`FamilyBits`].
#[derive(Clone, Debug)]
pub struct PermTable {
    n: u32,
    masks: usize,
    images: Vec<u8>,
}

impl PermTable {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_BITS_N {
            return Err(Error::Unsupported { what: "permutation table", n, limit: MAX_BITS_N });
        }
        let masks = 1usize << n;
        let mut images = Vec::new();
        for perm in permutations(n) {
            for m in 0..masks as u64 {
                images.push(crate::mask::SubsetMask(m).permute(&perm).0 as u8);
            }
        }
        Ok(PermTable { n, masks, images })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    fn apply(&self, perm: usize, bits: u64) -> u64 {
        let table = &self.images[perm * self.masks..(perm + 1) * self.masks];
        let mut rest = bits;
        let mut out = 0u64;
        while rest != 0 {
            let m = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= 1u64 << table[m];
        }
        out
    }

    fn perm_count(&self) -> usize {
        self.images.len() / self.masks
    }

    /// Representative and orbit size of `bits`.
    pub fn canonical(&self, bits: FamilyBits) -> (FamilyBits, u64) {
        let mut best = bits;
        let mut stabilizer = 0u64;
        for p in 0..self.perm_count() {
            let img = FamilyBits(self.apply(p, bits.0));
            if img == bits {
                stabilizer += 1;
            }
            if img.stream_cmp(best) == Ordering::Less {
                best = img;
            }
        }
        (best, factorial(self.n) / stabilizer)
    }

    /// Orbit size if `bits` is its own representative, `None` otherwise.
    pub fn orbit_if_canonical(&self, bits: FamilyBits) -> Option<u64> {
        let mut stabilizer = 0u64;
        for p in 0..self.perm_count() {
            let img = FamilyBits(self.apply(p, bits.0));
            match img.stream_cmp(bits) {
                Ordering::Less => return None,
                Ordering::Equal => stabilizer += 1,
                Ordering::Greater => {}
            }
        }
        Some(factorial(self.n) / stabilizer)
    }
}
