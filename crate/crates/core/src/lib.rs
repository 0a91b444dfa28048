//! Exhaustive enumeration of union-closed families on small ground sets, `k|l`-separation
//! predicates, and exact computation of per-size extremal cover constants.

pub mod analysis;
pub mod binomial;
pub mod cover;
pub mod driver;
pub mod enumerate;
pub mod error;
pub mod family;
pub mod fraction;
pub mod mask;
pub mod separation;

pub use binomial::{binomial, conjecture_bound, meets_bound};
pub use cover::{best_cover, cover_count, cover_profile, max_frequency};
pub use error::{Error, Result};
pub use family::{is_union_closed, union_closure, Family};
pub use fraction::ExactFraction;
pub use mask::{GroundSet, SubsetMask};
pub use separation::{is_separated, is_weakly_separated, SeparationParams};
