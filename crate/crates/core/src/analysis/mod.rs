//! Per-size extremal constants, conjecture checks, binomial audits and the subfamily
//! constructions used to relate constants of different orders.
//!
//! Every value computed here is a restriction to families on exactly `n` labeled elements.
//! Nothing here bounds the constants taken over all ground-set sizes.

pub mod audit;
pub mod classify;
pub mod derive;
pub mod proof_steps;
pub mod survey;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::family::Family;
use crate::separation::{is_separated, is_weakly_separated, SeparationParams};

pub use audit::{audit_binomial, AuditReport, InequalityId};
pub use classify::{classify_all, ClassCount};
pub use derive::{derive_disjoint_subfamily, derive_quotient_subfamily, PartitionSizes, RemainderDefect};
pub use proof_steps::{check_proof_steps, ProofStepReport, WitnessMode};
pub use survey::{
    empirical_constant, verify_all_orders, verify_conjecture, ConstantReport, ScanMode, Tally, Verdict, VerifyOutcome,
    VerifyReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    All,
    Separated,
    WeaklySeparated,
}

impl ClassKind {
    pub const ALL: [ClassKind; 3] = [ClassKind::All, ClassKind::Separated, ClassKind::WeaklySeparated];

    pub fn name(self) -> &'static str {
        match self {
            ClassKind::All => "all",
            ClassKind::Separated => "separated",
            ClassKind::WeaklySeparated => "weakly_separated",
        }
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "all" => Ok(ClassKind::All),
            "separated" => Ok(ClassKind::Separated),
            "weakly_separated" | "weak" => Ok(ClassKind::WeaklySeparated),
            _ => Err(Error::Parse(format!("unknown class {s:?}"))),
        }
    }
}

/// Which families to scan, and the order `k|l` used to score them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyClassSelector {
    pub kind: ClassKind,
    pub params: SeparationParams,
}

impl FamilyClassSelector {
    pub fn new(kind: ClassKind, params: SeparationParams) -> Self {
        FamilyClassSelector { kind, params }
    }

    pub fn admits(&self, f: &Family) -> bool {
        match self.kind {
            ClassKind::All => f.ground().size() >= self.params.k(),
            ClassKind::Separated => is_separated(f, self.params),
            ClassKind::WeaklySeparated => is_weakly_separated(f, self.params),
        }
    }
}

impl fmt::Display for FamilyClassSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind, self.params)
    }
}

/// Conjecture variants: the standard one scans separated families, the strong one weakly
/// separated families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Standard,
    Strong,
}

impl Variant {
    pub const BOTH: [Variant; 2] = [Variant::Standard, Variant::Strong];

    pub fn class(self) -> ClassKind {
        match self {
            Variant::Standard => ClassKind::Separated,
            Variant::Strong => ClassKind::WeaklySeparated,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Standard => "standard",
            Variant::Strong => "strong",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "standard" => Ok(Variant::Standard),
            "strong" => Ok(Variant::Strong),
            _ => Err(Error::Parse(format!("unknown variant {s:?}"))),
        }
    }
}
