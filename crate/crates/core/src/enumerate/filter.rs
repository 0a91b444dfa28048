//! Brute-force generation of one unit: every candidate member set of the right size is
//! listed in lexicographic order and kept iff it passes [`is_union_closed`].

use crate::error::{Error, Result};
use crate::family::is_union_closed;
use crate::mask::{GroundSet, SubsetMask};

use super::unit::UnitSpec;

#[derive(Clone, Debug)]
pub(crate) struct FilterUnit {
    ground: GroundSet,
    base: u64,
    rest: Vec<u32>,
    /// Positions into `rest` of the current combination; `None` before the first one.
    idx: Option<Vec<usize>>,
    pick: usize,
    done: bool,
}

impl FilterUnit {
    pub fn new(unit: UnitSpec) -> Self {
        let full = (1u32 << unit.n) - 1;
        let prefix = unit.prefix_bits();
        let base = prefix | 1 | 1u64 << full;
        let rest: Vec<u32> = (unit.depth + 1..full).collect();
        let fixed = base.count_ones();
        let ground = GroundSet::with_limit(unit.n, 64).expect("valid n");
        let (pick, done) = match unit.layer.checked_sub(fixed) {
            Some(p) if (p as usize) <= rest.len() => (p as usize, false),
            _ => (0, true),
        };
        FilterUnit { ground, base, rest, idx: None, pick, done }
    }

    pub fn resume_after(unit: UnitSpec, bits: u64) -> Result<Self> {
        let mut it = Self::new(unit);
        let bad = || Error::Token(format!("family {bits:#x} is not in unit {unit:?}"));
        if it.done || bits & ((1u64 << (unit.depth + 1)) - 1) != it.base & ((1u64 << (unit.depth + 1)) - 1) {
            return Err(bad());
        }
        let idx: Vec<usize> = it.rest.iter().enumerate().filter(|(_, &m)| bits >> m & 1 == 1).map(|(i, _)| i).collect();
        if idx.len() != it.pick || bits.count_ones() != unit.layer {
            return Err(bad());
        }
        it.idx = Some(idx);
        Ok(it)
    }

    fn step(&mut self) -> bool {
        let (r, m) = (self.pick, self.rest.len());
        match &mut self.idx {
            None => {
                self.idx = Some((0..r).collect());
                true
            }
            Some(idx) => {
                let Some(i) = (0..r).rev().find(|&i| idx[i] < m - r + i) else {
                    return false;
                };
                idx[i] += 1;
                for j in i + 1..r {
                    idx[j] = idx[j - 1] + 1;
                }
                true
            }
        }
    }
}

impl Iterator for FilterUnit {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while !self.done {
            if !self.step() {
                self.done = true;
                break;
            }
            let idx = self.idx.as_ref().expect("set by step");
            let bits = idx.iter().fold(self.base, |acc, &i| acc | 1u64 << self.rest[i]);
            let members: Vec<SubsetMask> =
                (0..64).filter(|m| bits >> m & 1 == 1).map(|m| SubsetMask(m as u64)).collect();
            if is_union_closed(&members, self.ground) {
                return Some(bits);
            }
        }
        None
    }
}
