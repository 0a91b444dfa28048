//! Deterministic generation of every union-closed family on `n` labeled elements.
//!
//! Stream order is ascending member count, then lexicographic on the ascending mask list.
//! Two strategies produce the same stream: [`Strategy::Recursive`] extends partial families
//! with forced-union propagation, and [`Strategy::Filter`] tests every candidate subset of
//! the proper nonempty masks. The filter is the cross-validation oracle and is refused for
//! full runs above [`MAX_FILTER_N`]; [`spot::filter_spot_check`] samples it at larger `n`.

pub mod bits;
pub mod canonical;
pub mod checkpoint;
pub mod cursor;
mod dfs;
mod filter;
pub mod spot;
mod unit;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::Family;

pub use bits::FamilyBits;
pub use canonical::{canonical_form, CanonicalFamily, PermTable};
pub use checkpoint::Checkpoint;
pub use cursor::{partition_search, unit_cursors, CursorStream, EnumerationCursor};

/// Default hard stop for exhaustive runs.
pub const DEFAULT_MAX_N: u32 = 5;
/// Largest `n` for which the filter strategy may enumerate the whole stream.
pub const MAX_FILTER_N: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Recursive,
    Filter,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Recursive => "recursive",
            Strategy::Filter => "filter",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "recursive" => Some(Strategy::Recursive),
            "filter" => Some(Strategy::Filter),
            _ => None,
        }
    }

    pub(crate) fn code(self) -> &'static str {
        match self {
            Strategy::Recursive => "r",
            Strategy::Filter => "f",
        }
    }

    pub(crate) fn from_code(s: &str) -> Option<Self> {
        match s {
            "r" => Some(Strategy::Recursive),
            "f" => Some(Strategy::Filter),
            _ => None,
        }
    }
}

/// Checks `n` against the exhaustive-mode hard stop `max_n` (itself capped by the bitset width).
pub fn check_exhaustive(n: u32, strategy: Strategy, max_n: u32) -> Result<()> {
    let limit = max_n.min(bits::MAX_BITS_N);
    if n == 0 || n > limit {
        return Err(Error::Unsupported { what: "exhaustive enumeration", n, limit });
    }
    if strategy == Strategy::Filter && n > MAX_FILTER_N {
        return Err(Error::Unsupported { what: "full filter enumeration", n, limit: MAX_FILTER_N });
    }
    Ok(())
}

/// Families as compact bitsets, in stream order.
pub fn enumerate_bits(n: u32, strategy: Strategy, max_n: u32) -> Result<CursorStream> {
    check_exhaustive(n, strategy, max_n)?;
    Ok(EnumerationCursor::full(n, strategy).stream())
}

pub fn enumerate_families(n: u32, strategy: Strategy) -> Result<FamilyStream> {
    enumerate_families_with(n, strategy, DEFAULT_MAX_N)
}

pub fn enumerate_families_with(n: u32, strategy: Strategy, max_n: u32) -> Result<FamilyStream> {
    Ok(FamilyStream { n, inner: enumerate_bits(n, strategy, max_n)? })
}

#[derive(Clone, Debug)]
pub struct FamilyStream {
    n: u32,
    inner: CursorStream,
}

impl Iterator for FamilyStream {
    type Item = Family;
    fn next(&mut self) -> Option<Family> {
        self.inner.next().map(|b| b.to_family(self.n))
    }
}

/// One representative per isomorphism class, in stream order (each representative is the
/// first member of its orbit in the labeled stream).
pub fn enumerate_canonical(n: u32) -> Result<CanonicalStream> {
    enumerate_canonical_with(n, DEFAULT_MAX_N)
}

pub fn enumerate_canonical_with(n: u32, max_n: u32) -> Result<CanonicalStream> {
    let inner = enumerate_bits(n, Strategy::Recursive, max_n)?;
    Ok(CanonicalStream { inner, table: PermTable::new(n)? })
}

#[derive(Clone, Debug)]
pub struct CanonicalStream {
    inner: CursorStream,
    table: PermTable,
}

impl CanonicalStream {
    /// Next representative as a bitset, with its orbit size.
    pub fn next_bits(&mut self) -> Option<(FamilyBits, u64)> {
        for b in self.inner.by_ref() {
            if let Some(orbit) = self.table.orbit_if_canonical(b) {
                return Some((b, orbit));
            }
        }
        None
    }
}

impl Iterator for CanonicalStream {
    type Item = CanonicalFamily;
    fn next(&mut self) -> Option<CanonicalFamily> {
        let n = self.table.n();
        self.next_bits().map(|(b, orbit_size)| CanonicalFamily { representative: b.to_family(n), orbit_size })
    }
}
