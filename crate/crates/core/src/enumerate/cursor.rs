use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::bits::FamilyBits;
use super::dfs::RecursiveUnit;
use super::filter::FilterUnit;
use super::unit::{check_depth, unit_count, UnitSpec};
use super::Strategy;

/// A resumable position in the family stream, restricted to a contiguous range of units.
///
/// `unit` is the unit currently being read and `last` the most recent family it yielded.
/// The string form produced by `Display` is the resume token; `FromStr` reads it back.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct EnumerationCursor {
    n: u32,
    strategy: Strategy,
    depth: u32,
    start: u64,
    end: u64,
    unit: u64,
    last: Option<FamilyBits>,
}

impl EnumerationCursor {
    /// The whole stream for `n` elements.
    pub fn full(n: u32, strategy: Strategy) -> Self {
        Self::range(n, strategy, 0, 0, unit_count(n, 0)).expect("depth 0 always valid")
    }

    /// Units `start..end` at split depth `depth`.
    pub fn range(n: u32, strategy: Strategy, depth: u32, start: u64, end: u64) -> Result<Self> {
        check_depth(n, depth)?;
        if start > end || end > unit_count(n, depth) {
            return Err(Error::Token(format!("unit range {start}..{end} out of bounds")));
        }
        Ok(EnumerationCursor { n, strategy, depth, start, end, unit: start, last: None })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn units(&self) -> std::ops::Range<u64> {
        self.start..self.end
    }

    pub fn is_exhausted(&self) -> bool {
        self.unit >= self.end
    }

    pub fn stream(&self) -> CursorStream {
        CursorStream { cursor: *self, active: None }
    }
}

impl fmt::Display for EnumerationCursor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = match self.last {
            Some(b) => format!("{:x}", b.0),
            None => "-".into(),
        };
        write!(
            f,
            "v1/{}/{}/{}/{}-{}/{}/{}",
            self.n,
            self.strategy.code(),
            self.depth,
            self.start,
            self.end,
            self.unit,
            last
        )
    }
}

impl FromStr for EnumerationCursor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Token(format!("{why} in {s:?}"));
        let parts: Vec<&str> = s.trim().split('/').collect();
        if parts.len() != 7 || parts[0] != "v1" {
            return Err(bad("expected 7 fields starting with v1"));
        }
        let num = |t: &str| t.parse::<u64>().map_err(|_| bad("bad number"));
        let n = num(parts[1])? as u32;
        if !(1..=super::bits::MAX_BITS_N).contains(&n) {
            return Err(bad("n out of range"));
        }
        let strategy = Strategy::from_code(parts[2]).ok_or_else(|| bad("bad strategy"))?;
        let depth = num(parts[3])? as u32;
        let (a, b) = parts[4].split_once('-').ok_or_else(|| bad("bad unit range"))?;
        let mut c = EnumerationCursor::range(n, strategy, depth, num(a)?, num(b)?)?;
        let unit = num(parts[5])?;
        if unit < c.start || unit > c.end {
            return Err(bad("unit outside range"));
        }
        c.unit = unit;
        c.last = match parts[6] {
            "-" => None,
            hex => Some(FamilyBits(u64::from_str_radix(hex, 16).map_err(|_| bad("bad family"))?)),
        };
        if c.last.is_some() && unit >= c.end {
            return Err(bad("position past end"));
        }
        Ok(c)
    }
}

impl From<EnumerationCursor> for String {
    fn from(c: EnumerationCursor) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for EnumerationCursor {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Clone, Debug)]
enum UnitIter {
    Recursive(RecursiveUnit),
    Filter(FilterUnit),
}

impl Iterator for UnitIter {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        match self {
            UnitIter::Recursive(r) => r.next(),
            UnitIter::Filter(f) => f.next(),
        }
    }
}

/// Live iterator behind an [`EnumerationCursor`]. Single consumer.
#[derive(Clone, Debug)]
pub struct CursorStream {
    cursor: EnumerationCursor,
    active: Option<UnitIter>,
}

impl CursorStream {
    /// Snapshot of the current position; streaming from it yields exactly what this stream
    /// has not yet yielded.
    pub fn position(&self) -> EnumerationCursor {
        self.cursor
    }

    fn open(&self) -> Result<UnitIter> {
        let c = &self.cursor;
        let spec = UnitSpec::from_index(c.n, c.depth, c.unit);
        Ok(match (c.strategy, c.last) {
            (Strategy::Recursive, None) => UnitIter::Recursive(RecursiveUnit::new(spec)),
            (Strategy::Recursive, Some(b)) => UnitIter::Recursive(RecursiveUnit::resume_after(spec, b.0)?),
            (Strategy::Filter, None) => UnitIter::Filter(FilterUnit::new(spec)),
            (Strategy::Filter, Some(b)) => UnitIter::Filter(FilterUnit::resume_after(spec, b.0)?),
        })
    }

    /// Like `next`, but reports a resume position that does not belong to its unit.
    pub fn try_next(&mut self) -> Result<Option<FamilyBits>> {
        loop {
            if self.cursor.unit >= self.cursor.end {
                return Ok(None);
            }
            if self.active.is_none() {
                self.active = Some(self.open()?);
            }
            match self.active.as_mut().and_then(Iterator::next) {
                Some(b) => {
                    self.cursor.last = Some(FamilyBits(b));
                    return Ok(Some(FamilyBits(b)));
                }
                None => {
                    self.active = None;
                    self.cursor.unit += 1;
                    self.cursor.last = None;
                }
            }
        }
    }
}

impl Iterator for CursorStream {
    type Item = FamilyBits;

    /// Panics on a resume position that is not a leaf of its unit; use
    /// [`CursorStream::try_next`] on cursors read from untrusted tokens.
    fn next(&mut self) -> Option<FamilyBits> {
        self.try_next().expect("cursor position is not a member of its unit")
    }
}

/// Splits the stream for `n` into `parts` contiguous, disjoint cursors. Reading them in
/// order reproduces the full stream; some cursors may be empty when `parts` is large.
pub fn partition_search(n: u32, strategy: Strategy, parts: usize) -> Result<Vec<EnumerationCursor>> {
    if !(1..=super::bits::MAX_BITS_N).contains(&n) {
        return Err(Error::Unsupported { what: "partitioned enumeration", n, limit: super::bits::MAX_BITS_N });
    }
    let parts = parts.max(1) as u64;
    let max_depth = super::unit::free_masks(n).min(24);
    let depth = (0..=max_depth).find(|&d| unit_count(n, d) >= 4 * parts).unwrap_or(max_depth);
    let total = unit_count(n, depth);
    (0..parts)
        .map(|i| {
            let lo = (total as u128 * i as u128 / parts as u128) as u64;
            let hi = (total as u128 * (i + 1) as u128 / parts as u128) as u64;
            EnumerationCursor::range(n, strategy, depth, lo, hi)
        })
        .collect()
}

/// One cursor per unit at `depth`, in stream order.
pub fn unit_cursors(n: u32, strategy: Strategy, depth: u32) -> Result<Vec<EnumerationCursor>> {
    check_depth(n, depth)?;
    (0..unit_count(n, depth)).map(|u| EnumerationCursor::range(n, strategy, depth, u, u + 1)).collect()
}
