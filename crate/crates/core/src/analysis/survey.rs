//! One pass over the family stream that scores every family against a list of class
//! selectors at once.
//!
//! For each selector a [`Tally`] keeps the number of families in the class, the smallest
//! best-cover fraction with the first family attaining it, and the first family whose best
//! cover falls below the conjectured bound. Tallies over consecutive stream segments merge
//! left to right, so any partition of the stream gives the same result.

use serde::{Deserialize, Serialize};

use crate::binomial::{conjecture_bound, meets_bound, MAX_BOUND_K};
use crate::cover::{best_cover, cover_profile};
use crate::driver::{run_survey, ScanConfig};
use crate::enumerate::FamilyBits;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::fraction::ExactFraction;
use crate::mask::SubsetMask;
use crate::separation::{is_separated, is_weakly_separated, SeparationParams};

use super::{ClassKind, FamilyClassSelector, Variant};

/// Whether every labeled family is scanned, or one representative per isomorphism class
/// weighted by its orbit size. Both give identical values, witnesses and counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanMode {
    Labeled,
    Canonical,
}

impl ScanMode {
    pub fn default_for(n: u32) -> Self {
        if n >= 5 {
            ScanMode::Canonical
        } else {
            ScanMode::Labeled
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ScanMode::Labeled => "labeled",
            ScanMode::Canonical => "canonical",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extremum {
    pub family: FamilyBits,
    pub set: SubsetMask,
    pub count: u64,
    pub members: u64,
}

impl Extremum {
    pub fn value(&self) -> ExactFraction {
        ExactFraction::new(self.count, self.members)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub selector: FamilyClassSelector,
    /// Labeled families in the class (orbit sizes summed in canonical mode).
    pub labeled: u64,
    /// Scanned families in the class (representatives in canonical mode).
    pub representatives: u64,
    /// Labeled families whose best cover is below the conjectured bound.
    pub below_labeled: u64,
    pub minimum: Option<Extremum>,
    pub first_below: Option<FamilyBits>,
}

impl Tally {
    pub fn new(selector: FamilyClassSelector) -> Self {
        Tally { selector, labeled: 0, representatives: 0, below_labeled: 0, minimum: None, first_below: None }
    }

    /// Folds in the tally of the stream segment that comes right after this one.
    pub fn merge(&mut self, later: &Tally) {
        debug_assert_eq!(self.selector, later.selector);
        self.labeled += later.labeled;
        self.representatives += later.representatives;
        self.below_labeled += later.below_labeled;
        if let Some(m) = later.minimum {
            if self.minimum.is_none_or(|cur| m.value() < cur.value()) {
                self.minimum = Some(m);
            }
        }
        if self.first_below.is_none() {
            self.first_below = later.first_below;
        }
    }
}

/// Per-family scoring with the separation tests and best covers shared between selectors.
#[derive(Clone, Debug)]
pub(crate) struct Evaluator {
    n: u32,
    selectors: Vec<FamilyClassSelector>,
}

#[derive(Clone, Copy, Default)]
struct Cached {
    separated: Option<bool>,
    weak: Option<bool>,
    best: Option<(SubsetMask, u64)>,
}

impl Evaluator {
    pub fn new(n: u32, selectors: &[FamilyClassSelector]) -> Result<Self> {
        for s in selectors {
            if s.params.k() > n {
                return Err(Error::KExceedsGround { k: s.params.k(), n });
            }
            if s.params.k() > MAX_BOUND_K {
                return Err(Error::BoundRange(s.params.k()));
            }
        }
        Ok(Evaluator { n, selectors: selectors.to_vec() })
    }

    pub fn fresh(&self) -> Vec<Tally> {
        self.selectors.iter().map(|&s| Tally::new(s)).collect()
    }

    pub fn observe(&self, tallies: &mut [Tally], bits: FamilyBits, weight: u64) {
        let f = bits.to_family(self.n);
        let stride = self.n as usize + 1;
        let mut cache = vec![Cached::default(); stride * stride];
        for (t, sel) in tallies.iter_mut().zip(&self.selectors) {
            let p = sel.params;
            let slot = &mut cache[p.k() as usize * stride + p.l() as usize];
            let admitted = match sel.kind {
                ClassKind::All => true,
                ClassKind::Separated => *slot.separated.get_or_insert_with(|| is_separated(&f, p)),
                ClassKind::WeaklySeparated => *slot.weak.get_or_insert_with(|| is_weakly_separated(&f, p)),
            };
            if !admitted {
                continue;
            }
            let (set, count) = *slot.best.get_or_insert_with(|| best_cover(&f, p).expect("k <= n checked"));
            let members = f.len() as u64;
            t.labeled += weight;
            t.representatives += 1;
            if !meets_bound(count, members, p) {
                t.below_labeled += weight;
                t.first_below.get_or_insert(bits);
            }
            let candidate = Extremum { family: bits, set, count, members };
            if t.minimum.is_none_or(|cur| candidate.value() < cur.value()) {
                t.minimum = Some(candidate);
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    MeetsBound,
    BelowBound,
}

/// The smallest best-cover fraction over one class on `n` elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantReport {
    pub n: u32,
    pub selector: FamilyClassSelector,
    /// Reduced `witness_count / witness.len()`.
    pub value: ExactFraction,
    /// First family in stream order attaining `value`.
    pub witness: Family,
    /// Best-cover set of the witness (smallest mask on ties).
    pub witness_s: SubsetMask,
    pub witness_count: u64,
    pub families_scanned: u64,
    pub classes_scanned: u64,
    pub conjectured: ExactFraction,
    pub verdict: Verdict,
    pub scan: ScanMode,
}

impl ConstantReport {
    pub fn from_tally(n: u32, t: &Tally, scan: ScanMode) -> Result<Self> {
        let m = t.minimum.ok_or_else(|| Error::EmptyClass { n, class: t.selector.to_string() })?;
        let value = m.value();
        let conjectured = conjecture_bound(t.selector.params)?;
        Ok(ConstantReport {
            n,
            selector: t.selector,
            value: value.reduced(),
            witness: m.family.to_family(n),
            witness_s: m.set,
            witness_count: m.count,
            families_scanned: t.labeled,
            classes_scanned: t.representatives,
            conjectured: conjectured.reduced(),
            verdict: if value < conjectured { Verdict::BelowBound } else { Verdict::MeetsBound },
            scan,
        })
    }

    pub fn row(&self) -> ConstantRow {
        ConstantRow {
            n: self.n,
            k: self.selector.params.k(),
            l: self.selector.params.l(),
            class: self.selector.kind,
            value_num: self.value.numerator(),
            value_den: self.value.denominator(),
            conjectured_num: self.conjectured.numerator(),
            conjectured_den: self.conjectured.denominator(),
            witness: self.witness.to_string(),
            witness_s: self.witness_s.0,
            witness_count: self.witness_count,
            witness_members: self.witness.len() as u64,
            families_scanned: self.families_scanned,
            classes_scanned: self.classes_scanned,
            verdict: self.verdict,
        }
    }
}

/// Flat serialized form of a [`ConstantReport`]; JSON and CSV share these fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantRow {
    pub n: u32,
    pub k: u32,
    pub l: u32,
    pub class: ClassKind,
    pub value_num: u64,
    pub value_den: u64,
    pub conjectured_num: u64,
    pub conjectured_den: u64,
    pub witness: String,
    pub witness_s: u64,
    pub witness_count: u64,
    pub witness_members: u64,
    pub families_scanned: u64,
    pub classes_scanned: u64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyOutcome {
    Pass,
    /// First family in stream order with no `k`-set reaching the bound, and the cover
    /// count of every `k`-set.
    Counterexample {
        family: Family,
        profile: Vec<(SubsetMask, u64)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub n: u32,
    pub params: SeparationParams,
    pub variant: Variant,
    pub outcome: VerifyOutcome,
    pub families_in_class: u64,
    pub classes_in_class: u64,
    /// Labeled families below the bound.
    pub counterexamples: u64,
    pub minimum: Option<ExactFraction>,
    pub conjectured: ExactFraction,
    /// The class was empty, so the pass carries no evidence.
    pub vacuous: bool,
}

impl VerifyReport {
    pub fn from_tally(n: u32, variant: Variant, t: &Tally) -> Result<Self> {
        let p = t.selector.params;
        let outcome = match t.first_below {
            None => VerifyOutcome::Pass,
            Some(b) => {
                let family = b.to_family(n);
                let profile = cover_profile(&family, p)?;
                VerifyOutcome::Counterexample { family, profile }
            }
        };
        Ok(VerifyReport {
            n,
            params: p,
            variant,
            outcome,
            families_in_class: t.labeled,
            classes_in_class: t.representatives,
            counterexamples: t.below_labeled,
            minimum: t.minimum.map(|m| m.value().reduced()),
            conjectured: conjecture_bound(p)?.reduced(),
            vacuous: t.labeled == 0,
        })
    }

    pub fn passed(&self) -> bool {
        self.outcome == VerifyOutcome::Pass
    }

    pub fn row(&self) -> VerifyRow {
        let (counterexample, profile) = match &self.outcome {
            VerifyOutcome::Pass => (None, None),
            VerifyOutcome::Counterexample { family, profile } => (
                Some(family.to_string()),
                Some(profile.iter().map(|(s, c)| format!("{}:{}", s.0, c)).collect::<Vec<_>>().join(";")),
            ),
        };
        VerifyRow {
            n: self.n,
            k: self.params.k(),
            l: self.params.l(),
            variant: self.variant,
            class: self.variant.class(),
            verdict: if self.passed() { "pass" } else { "counterexample" }.to_string(),
            vacuous: self.vacuous,
            families_scanned: self.families_in_class,
            classes_scanned: self.classes_in_class,
            counterexamples: self.counterexamples,
            min_num: self.minimum.map(|m| m.numerator()),
            min_den: self.minimum.map(|m| m.denominator()),
            conjectured_num: self.conjectured.numerator(),
            conjectured_den: self.conjectured.denominator(),
            counterexample,
            profile,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub n: u32,
    pub k: u32,
    pub l: u32,
    pub variant: Variant,
    pub class: ClassKind,
    pub verdict: String,
    pub vacuous: bool,
    pub families_scanned: u64,
    pub classes_scanned: u64,
    pub counterexamples: u64,
    pub min_num: Option<u64>,
    pub min_den: Option<u64>,
    pub conjectured_num: u64,
    pub conjectured_den: u64,
    pub counterexample: Option<String>,
    pub profile: Option<String>,
}

fn single_survey(n: u32, sel: FamilyClassSelector, cfg: &ScanConfig) -> Result<Tally> {
    let out = run_survey(n, &[sel], cfg)?;
    out.into_complete().map(|mut t| t.remove(0))
}

/// Minimum over the selected class on `n` elements of the best-cover fraction.
pub fn empirical_constant(n: u32, selector: FamilyClassSelector) -> Result<ConstantReport> {
    empirical_constant_with(n, selector, &ScanConfig::for_n(n))
}

pub fn empirical_constant_with(n: u32, selector: FamilyClassSelector, cfg: &ScanConfig) -> Result<ConstantReport> {
    let t = single_survey(n, selector, cfg)?;
    ConstantReport::from_tally(n, &t, cfg.mode)
}

/// Checks the conjectured bound on every family of the variant's class on `n` elements.
pub fn verify_conjecture(n: u32, p: SeparationParams, variant: Variant) -> Result<VerifyReport> {
    verify_conjecture_with(n, p, variant, &ScanConfig::for_n(n))
}

pub fn verify_conjecture_with(n: u32, p: SeparationParams, variant: Variant, cfg: &ScanConfig) -> Result<VerifyReport> {
    let t = single_survey(n, FamilyClassSelector::new(variant.class(), p), cfg)?;
    VerifyReport::from_tally(n, variant, &t)
}

/// Selectors for every `k <= n`, `l <= k`, both variants, ordered by `(k, l, variant)`.
pub fn all_order_selectors(n: u32) -> Vec<(Variant, FamilyClassSelector)> {
    SeparationParams::all_up_to(n)
        .flat_map(|p| Variant::BOTH.map(|v| (v, FamilyClassSelector::new(v.class(), p))))
        .collect()
}

/// [`verify_conjecture`] for every order on `n` elements in a single pass.
pub fn verify_all_orders(n: u32, cfg: &ScanConfig) -> Result<Vec<VerifyReport>> {
    let pairs = all_order_selectors(n);
    let selectors: Vec<FamilyClassSelector> = pairs.iter().map(|p| p.1).collect();
    let tallies = run_survey(n, &selectors, cfg)?.into_complete()?;
    pairs.iter().zip(&tallies).map(|((v, _), t)| VerifyReport::from_tally(n, *v, t)).collect()
}

/// Constants for every `(k, l, class)` on `n` elements, ordered by `k`, `l`, then class.
pub fn constants_table(n: u32, cfg: &ScanConfig) -> Result<Vec<ConstantReport>> {
    let selectors: Vec<FamilyClassSelector> =
        SeparationParams::all_up_to(n).flat_map(|p| ClassKind::ALL.map(|c| FamilyClassSelector::new(c, p))).collect();
    let tallies = run_survey(n, &selectors, cfg)?.into_complete()?;
    tallies.iter().map(|t| ConstantReport::from_tally(n, t, cfg.mode)).collect()
}
