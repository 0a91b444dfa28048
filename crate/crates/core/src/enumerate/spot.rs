//! Sampled agreement checks between the recursive generator and the filter oracle, for
//! ground sets where a full filter run is too expensive.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::family::{is_union_closed, union_closure};
use crate::mask::{GroundSet, SubsetMask};

use super::bits::FamilyBits;
use super::cursor::EnumerationCursor;
use super::unit::{free_masks, UnitSpec};
use super::Strategy;

/// Free masks left undecided inside each sampled unit.
const SAMPLE_WIDTH: u32 = 8;

#[derive(Clone, Debug, Default, Serialize)]
pub struct SpotCheckReport {
    pub samples: u64,
    pub closed_samples: u64,
    pub families_compared: u64,
    pub mismatches: Vec<String>,
}

/// Draws `samples` candidate families (half uniform member sets, half closures of random
/// seeds). For each, both strategies enumerate the unit containing it; their outputs must
/// match, and the candidate must appear in them exactly when it is union-closed.
pub fn filter_spot_check(n: u32, samples: u64, seed: u64) -> Result<SpotCheckReport> {
    super::check_exhaustive(n, Strategy::Recursive, super::bits::MAX_BITS_N)?;
    let ground = GroundSet::new(n)?;
    let full = (1u32 << n) - 1;
    let depth = free_masks(n).saturating_sub(SAMPLE_WIDTH);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SpotCheckReport::default();
    for i in 0..samples {
        let candidate = if i % 2 == 0 {
            let free: u64 = rng.gen::<u64>() & (((1u64 << full) - 1) & !1);
            free | 1 | 1u64 << full
        } else {
            let seeds: Vec<SubsetMask> =
                (0..rng.gen_range(1..=3)).map(|_| SubsetMask(rng.gen_range(0..=full as u64))).collect();
            FamilyBits::from_family(&union_closure(seeds, ground)?)?.0
        };
        let members: Vec<SubsetMask> = FamilyBits(candidate).masks().collect();
        let closed = is_union_closed(&members, ground);
        report.samples += 1;
        report.closed_samples += u64::from(closed);

        let unit = UnitSpec::index_of(depth, candidate);
        let run = |s| -> Result<Vec<u64>> {
            let c = EnumerationCursor::range(n, s, depth, unit, unit + 1)?;
            Ok(c.stream().map(|b| b.0).collect())
        };
        let (rec, fil) = (run(Strategy::Recursive)?, run(Strategy::Filter)?);
        report.families_compared += rec.len() as u64;
        if rec != fil {
            report.mismatches.push(format!("unit {unit}: strategies disagree"));
        }
        if rec.contains(&candidate) != closed {
            report.mismatches.push(format!("candidate {candidate:#x}: closed={closed} but listed={}", !closed));
        }
    }
    Ok(report)
}
