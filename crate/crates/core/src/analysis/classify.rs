//! Labeled class sizes for every order `k|l` with `k <= n`.

use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate_bits, enumerate_canonical, Strategy, DEFAULT_MAX_N};
use crate::error::{Error, Result};
use crate::separation::{is_separated, is_weakly_separated, SeparationParams};

use super::ScanMode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCount {
    pub n: u32,
    pub k: u32,
    pub l: u32,
    pub total: u64,
    pub separated: u64,
    pub weakly_separated: u64,
}

/// Counts of separated and weakly separated labeled families on exactly `n` elements, one
/// row per `(k, l)` in increasing order. From `n = 5` on, representatives are scanned and
/// weighted by orbit size.
pub fn classify_all(n: u32) -> Result<Vec<ClassCount>> {
    if n > DEFAULT_MAX_N {
        return Err(Error::Unsupported { what: "class counts", n, limit: DEFAULT_MAX_N });
    }
    let params: Vec<SeparationParams> = SeparationParams::all_up_to(n).collect();
    let mut rows: Vec<ClassCount> = params
        .iter()
        .map(|p| ClassCount { n, k: p.k(), l: p.l(), total: 0, separated: 0, weakly_separated: 0 })
        .collect();
    let mut observe = |bits: crate::enumerate::FamilyBits, weight: u64| {
        let f = bits.to_family(n);
        for (row, &p) in rows.iter_mut().zip(&params) {
            row.total += weight;
            if is_separated(&f, p) {
                row.separated += weight;
            }
            if is_weakly_separated(&f, p) {
                row.weakly_separated += weight;
            }
        }
    };
    match ScanMode::default_for(n) {
        ScanMode::Labeled => enumerate_bits(n, Strategy::Recursive, DEFAULT_MAX_N)?.for_each(|b| observe(b, 1)),
        ScanMode::Canonical => {
            let mut reps = enumerate_canonical(n)?;
            while let Some((b, orbit)) = reps.next_bits() {
                observe(b, orbit);
            }
        }
    }
    Ok(rows)
}
