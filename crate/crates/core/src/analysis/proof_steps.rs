//! Exhaustive checks of the claims made about the two subfamily constructions.
//!
//! Disjoint step, for `f` separated of order `(k + k')|l` and a `k`-set `S`:
//! `f` is separated of order `k|l`, the members missing `S` form a family on `X \ S` that is
//! separated of order `k'|l`, and adding that family's best cover to the members meeting `S`
//! in at least `l` points never exceeds the cover of `S ∪ S'` in `f`.
//!
//! Quotient step, for `f` separated of order `(k + k'')|(l + k'')` and a `k''`-set `S`:
//! `f` is separated of order `k''|k''`, the quotient by `S` is separated of order `k|l`, and
//! the quotient's best cover lifts to a cover of `S ∪ S''` in `f` at threshold `l + k''`.
//!
//! The designated `S` is the best cover (smallest mask on ties). Strict mode also tries every
//! `k`-set for the disjoint step and every `k''`-set lying in at least `2^-k''` of the members
//! for the quotient step.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cover::{best_cover, cover_count};
use crate::enumerate::{enumerate_families, Strategy};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::mask::SubsetMask;
use crate::separation::{is_separated, SeparationParams};

use super::derive::{derive_disjoint_subfamily, derive_quotient_subfamily};

pub const MAX_PROOF_STEP_N: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessMode {
    Designated,
    Strict,
}

impl WitnessMode {
    pub fn name(self) -> &'static str {
        match self {
            WitnessMode::Designated => "designated",
            WitnessMode::Strict => "strict",
        }
    }
}

impl fmt::Display for WitnessMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WitnessMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "designated" => Ok(WitnessMode::Designated),
            "strict" => Ok(WitnessMode::Strict),
            _ => Err(Error::Parse(format!("unknown witness mode {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Step {
    Disjoint,
    Quotient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// `f` lies in the smaller class.
    SmallerOrder,
    /// The derived members form a union-closed family on the remainder.
    FamilyOnRemainder,
    /// The derived family is separated of the residual order.
    ResidualOrder,
    /// The derived best cover lifts to a cover in `f`.
    CountChain,
}

/// One violated claim. `k2` is `k'` for the disjoint step and `k''` for the quotient step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub step: Step,
    pub claim: Claim,
    pub family: String,
    pub k: u32,
    pub k2: u32,
    pub l: u32,
    pub set: SubsetMask,
    pub designated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofStepReport {
    pub n: u32,
    pub mode: WitnessMode,
    pub families: u64,
    /// Number of (family, orders, `S`) cases examined.
    pub checks: u64,
    pub findings: Vec<Finding>,
}

impl ProofStepReport {
    pub fn designated_findings(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.designated)
    }

    pub fn passed(&self) -> bool {
        self.findings.is_empty()
    }
}

struct Checker<'a> {
    f: &'a Family,
    checks: u64,
    findings: Vec<Finding>,
}

impl Checker<'_> {
    fn flag(&mut self, step: Step, claim: Claim, (k, k2, l): (u32, u32, u32), set: SubsetMask, designated: bool) {
        self.findings.push(Finding { step, claim, family: self.f.to_string(), k, k2, l, set, designated });
    }

    fn disjoint(&mut self, k: u32, k2: u32, l: u32, s: SubsetMask, designated: bool) {
        self.checks += 1;
        let orders = (k, k2, l);
        let d = derive_disjoint_subfamily(self.f, s, l).expect("s within ground, l >= 1");
        let a1 = match &d.derived.family {
            Ok(a1) => a1,
            Err(_) => return self.flag(Step::Disjoint, Claim::FamilyOnRemainder, orders, s, designated),
        };
        let p2 = SeparationParams::new(k2, l).expect("k' >= l");
        if !is_separated(a1, p2) {
            return self.flag(Step::Disjoint, Claim::ResidualOrder, orders, s, designated);
        }
        let (s1, c1) = best_cover(a1, p2).expect("separated implies k' <= remainder");
        let lifted = cover_count(self.f, s.union(s1.expand(d.derived.remainder)), l);
        if lifted < d.sizes.covered + c1 {
            self.flag(Step::Disjoint, Claim::CountChain, orders, s, designated);
        }
    }

    fn quotient(&mut self, k: u32, k2: u32, l: u32, s: SubsetMask, designated: bool) {
        self.checks += 1;
        let orders = (k, k2, l);
        let q = derive_quotient_subfamily(self.f, s).expect("s within ground");
        let a2 = match &q.family {
            Ok(a2) => a2,
            Err(_) => return self.flag(Step::Quotient, Claim::FamilyOnRemainder, orders, s, designated),
        };
        let p = SeparationParams::new(k, l).expect("k >= l");
        if !is_separated(a2, p) {
            return self.flag(Step::Quotient, Claim::ResidualOrder, orders, s, designated);
        }
        let (s2, c2) = best_cover(a2, p).expect("separated implies k <= remainder");
        let lifted = cover_count(self.f, s.union(s2.expand(q.remainder)), l + k2);
        if lifted < c2 {
            self.flag(Step::Quotient, Claim::CountChain, orders, s, designated);
        }
    }
}

/// Runs both steps over every labeled family on `n <= 4` elements and every admissible
/// choice of orders.
pub fn check_proof_steps(n: u32, mode: WitnessMode) -> Result<ProofStepReport> {
    if n > MAX_PROOF_STEP_N {
        return Err(Error::Unsupported { what: "proof-step checks", n, limit: MAX_PROOF_STEP_N });
    }
    let mut report = ProofStepReport { n, mode, families: 0, checks: 0, findings: Vec::new() };
    let strict = mode == WitnessMode::Strict;
    for f in enumerate_families(n, Strategy::Recursive)? {
        report.families += 1;
        let ground = f.ground();
        let mut c = Checker { f: &f, checks: 0, findings: Vec::new() };

        // disjoint step: k >= l, k' >= l, k + k' <= n
        for k in 1..=n {
            for k2 in 1..=n - k {
                for l in 1..=k.min(k2) {
                    let big = SeparationParams::new(k + k2, l)?;
                    if !is_separated(&f, big) {
                        continue;
                    }
                    let small = SeparationParams::new(k, l)?;
                    if !is_separated(&f, small) {
                        c.checks += 1;
                        c.flag(Step::Disjoint, Claim::SmallerOrder, (k, k2, l), SubsetMask::EMPTY, true);
                        continue;
                    }
                    let (s, _) = best_cover(&f, small)?;
                    c.disjoint(k, k2, l, s, true);
                    if strict {
                        for t in ground.k_subsets(k).filter(|&t| t != s) {
                            c.disjoint(k, k2, l, t, false);
                        }
                    }
                }
            }
        }

        // quotient step: k >= l, k'' >= 1, k + k'' <= n
        let members = f.len() as u64;
        for k2 in 1..=n {
            let diag = SeparationParams::new(k2, k2)?;
            for k in 1..=n - k2 {
                for l in 1..=k {
                    let big = SeparationParams::new(k + k2, l + k2)?;
                    if !is_separated(&f, big) {
                        continue;
                    }
                    if !is_separated(&f, diag) {
                        c.checks += 1;
                        c.flag(Step::Quotient, Claim::SmallerOrder, (k, k2, l), SubsetMask::EMPTY, true);
                        continue;
                    }
                    let (s, _) = best_cover(&f, diag)?;
                    c.quotient(k, k2, l, s, true);
                    if strict {
                        for t in ground.k_subsets(k2).filter(|&t| t != s) {
                            // contained in at least 2^-k'' of the members
                            if cover_count(&f, t, k2) << k2 >= members {
                                c.quotient(k, k2, l, t, false);
                            }
                        }
                    }
                }
            }
        }

        report.checks += c.checks;
        report.findings.append(&mut c.findings);
    }
    Ok(report)
}
