use crate::error::{Error, Result};
use crate::family::Family;
use crate::mask::SubsetMask;
use crate::separation::SeparationParams;

/// Number of members meeting `s` in at least `l` elements. The denominator for any
/// fraction built from this is `f.len()`, which counts both the empty and the full set.
pub fn cover_count(f: &Family, s: SubsetMask, l: u32) -> u64 {
    f.members().iter().filter(|a| a.intersection(s).len() >= l).count() as u64
}

/// The `k`-set with the largest cover count at threshold `l`; ties go to the smallest mask.
pub fn best_cover(f: &Family, p: SeparationParams) -> Result<(SubsetMask, u64)> {
    let n = f.ground().size();
    if p.k() > n {
        return Err(Error::KExceedsGround { k: p.k(), n });
    }
    let mut best = (SubsetMask::EMPTY, 0u64);
    let mut seen = false;
    for s in f.ground().k_subsets(p.k()) {
        let c = cover_count(f, s, p.l());
        if !seen || c > best.1 {
            best = (s, c);
            seen = true;
        }
    }
    Ok(best)
}

/// Cover counts of every `k`-set, ascending by mask. Used for counterexample diagnostics.
pub fn cover_profile(f: &Family, p: SeparationParams) -> Result<Vec<(SubsetMask, u64)>> {
    let n = f.ground().size();
    if p.k() > n {
        return Err(Error::KExceedsGround { k: p.k(), n });
    }
    Ok(f.ground().k_subsets(p.k()).map(|s| (s, cover_count(f, s, p.l()))).collect())
}

/// The most frequent element and how many members contain it; smallest index on ties.
pub fn max_frequency(f: &Family) -> (u32, u64) {
    let mut best = (0u32, 0u64);
    for e in 0..f.ground().size() {
        let c = f.members().iter().filter(|a| a.has(e)).count() as u64;
        if c > best.1 {
            best = (e, c);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mask::GroundSet;

    fn g(n: u32) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn fam(n: u32, masks: &[u64]) -> Family {
        Family::from_masks(g(n), masks.iter().map(|&m| SubsetMask(m))).unwrap()
    }

    fn p(k: u32, l: u32) -> SeparationParams {
        SeparationParams::new(k, l).unwrap()
    }

    #[test]
    fn cover_count_examples() {
        assert_eq!(cover_count(&Family::powerset(g(3)), SubsetMask(0b011), 1), 6);
        assert_eq!(cover_count(&Family::trivial(g(4)), SubsetMask(0b0110), 2), 1);
        for s in g(4).k_subsets(2) {
            assert_eq!(cover_count(&Family::powerset(g(4)), s, 2), 4);
        }
    }

    #[test]
    fn best_cover_examples() {
        assert_eq!(best_cover(&Family::powerset(g(3)), p(1, 1)).unwrap(), (SubsetMask(1), 4));
        assert_eq!(best_cover(&fam(2, &[0, 1, 3]), p(1, 1)).unwrap(), (SubsetMask(1), 2));
        assert_eq!(best_cover(&fam(2, &[0, 1, 2, 3]), p(2, 1)).unwrap(), (SubsetMask(3), 3));
        assert!(matches!(best_cover(&fam(2, &[0, 3]), p(3, 1)), Err(Error::KExceedsGround { k: 3, n: 2 })));
    }

    #[test]
    fn best_cover_tie_break_prefers_smallest_mask() {
        // elements 1 and 2 each lie in three members
        let f = fam(3, &[0, 2, 4, 6, 7]);
        assert_eq!(best_cover(&f, p(1, 1)).unwrap(), (SubsetMask(2), 3));
    }

    #[test]
    fn max_frequency_examples() {
        assert_eq!(max_frequency(&fam(1, &[0, 1])), (0, 1));
        assert_eq!(max_frequency(&Family::powerset(g(3))), (0, 4));
        assert_eq!(max_frequency(&fam(2, &[0, 1, 3])), (0, 2));
    }

    #[test]
    fn profile_lists_every_k_set() {
        let prof = cover_profile(&Family::powerset(g(4)), p(2, 1)).unwrap();
        assert_eq!(prof.len(), 6);
        assert!(prof.iter().all(|&(_, c)| c == 12));
    }
}
