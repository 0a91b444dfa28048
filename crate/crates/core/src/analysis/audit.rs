//! Exact audits of two binomial inequalities satisfied by the conjectured bound
//! `B(k, l) = 2^-k * sum_{i=l..=k} C(k, i)`:
//!
//! * superadditivity: `B(k + k', l) >= B(k, l) + B(k', l) - B(k, l) B(k', l)` for
//!   `l <= min(k, k')`;
//! * product: `B(k'' + k, l) >= 2^-k'' B(k, l)` for `l <= k`, and its shifted form
//!   `B(k'' + k, l + k'') >= 2^-k'' B(k, l)`.
//!
//! All decisions compare integers after multiplying through by `2^(k + k')`.

use serde::{Deserialize, Serialize};

use crate::binomial::tail_sum;
use crate::error::{Error, Result};
use crate::fraction::ExactFraction;

pub const MAX_AUDIT_K: u32 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InequalityId {
    Superadditivity,
    Product,
    ProductShifted,
}

impl InequalityId {
    pub const ALL: [InequalityId; 3] =
        [InequalityId::Superadditivity, InequalityId::Product, InequalityId::ProductShifted];

    pub fn name(self) -> &'static str {
        match self {
            InequalityId::Superadditivity => "superadditivity",
            InequalityId::Product => "product",
            InequalityId::ProductShifted => "product_shifted",
        }
    }
}

/// Parameters of one instance. For superadditivity `(a, b) = (k, k')`; for the product
/// forms `(a, b) = (k, k'')`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AuditTuple {
    pub a: u32,
    pub b: u32,
    pub l: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub inequality: InequalityId,
    pub max_k: u32,
    pub checked: u64,
    /// Instances where both sides are equal.
    pub equalities: u64,
    /// Sorted; empty iff the audit passed.
    pub failures: Vec<AuditTuple>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn n(k: u32, l: u32) -> i128 {
    tail_sum(k, l) as i128
}

/// Sign of `lhs - rhs` after clearing denominators.
pub fn superadditivity_margin(k: u32, k2: u32, l: u32) -> i128 {
    // B(k+k2) * 2^(k+k2) = N(k+k2); RHS * 2^(k+k2) = N(k) 2^k2 + N(k2) 2^k - N(k) N(k2)
    let rhs = (n(k, l) << k2) + (n(k2, l) << k) - n(k, l) * n(k2, l);
    n(k + k2, l) - rhs
}

pub fn product_margin(k: u32, k2: u32, l: u32) -> i128 {
    // both sides carry the denominator 2^(k+k2)
    n(k + k2, l) - n(k, l)
}

pub fn product_shifted_margin(k: u32, k2: u32, l: u32) -> i128 {
    n(k + k2, l + k2) - n(k, l)
}

pub fn bound(k: u32, l: u32) -> ExactFraction {
    ExactFraction::new(tail_sum(k, l) as u64, 1u64 << k)
}

/// Both sides of the superadditivity inequality, for display.
pub fn superadditivity_sides(k: u32, k2: u32, l: u32) -> (ExactFraction, ExactFraction) {
    let rhs = bound(k, l).checked_complement_product(bound(k2, l)).expect("fits for k, k' <= 30");
    (bound(k + k2, l).reduced(), rhs)
}

/// Both sides of the product inequality as printed (`l` on the left).
pub fn product_sides(k: u32, k2: u32, l: u32) -> (ExactFraction, ExactFraction) {
    let rhs = ExactFraction::new(1, 1u64 << k2).checked_mul(bound(k, l)).expect("fits for k, k'' <= 30");
    (bound(k + k2, l).reduced(), rhs)
}

fn check_range(max_k: u32) -> Result<()> {
    if max_k == 0 || max_k > MAX_AUDIT_K {
        return Err(Error::Unsupported { what: "binomial audit max_k", n: max_k, limit: MAX_AUDIT_K });
    }
    Ok(())
}

/// Instances of one inequality with all parameters in `1..=max_k`, in the given loop order.
fn tuples(id: InequalityId, max_k: u32, swap_loops: bool) -> Vec<AuditTuple> {
    let mut out = Vec::new();
    for x in 1..=max_k {
        for y in 1..=max_k {
            let (a, b) = if swap_loops { (y, x) } else { (x, y) };
            let lmax = match id {
                InequalityId::Superadditivity => a.min(b),
                InequalityId::Product | InequalityId::ProductShifted => a,
            };
            out.extend((1..=lmax).map(|l| AuditTuple { a, b, l }));
        }
    }
    out
}

fn margin(id: InequalityId, t: AuditTuple) -> i128 {
    match id {
        InequalityId::Superadditivity => superadditivity_margin(t.a, t.b, t.l),
        InequalityId::Product => product_margin(t.a, t.b, t.l),
        InequalityId::ProductShifted => product_shifted_margin(t.a, t.b, t.l),
    }
}

pub fn audit_one(id: InequalityId, max_k: u32, swap_loops: bool) -> Result<AuditReport> {
    check_range(max_k)?;
    let mut report = AuditReport { inequality: id, max_k, checked: 0, equalities: 0, failures: Vec::new() };
    for t in tuples(id, max_k, swap_loops) {
        let m = margin(id, t);
        report.checked += 1;
        if m == 0 {
            report.equalities += 1;
        }
        if m < 0 {
            report.failures.push(t);
        }
    }
    report.failures.sort_unstable();
    Ok(report)
}

/// Runs every inequality over parameters up to `max_k` (at most 30).
pub fn audit_binomial(max_k: u32) -> Result<Vec<AuditReport>> {
    InequalityId::ALL.iter().map(|&id| audit_one(id, max_k, false)).collect()
}
