use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A non-negative rational `numerator / denominator`.
///
/// Comparison and equality go through integer cross-multiplication, so `2/4 == 1/2`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ExactFraction {
    numerator: u64,
    denominator: u64,
}

impl ExactFraction {
    /// Panics if `denominator` is zero.
    pub fn new(numerator: u64, denominator: u64) -> Self {
        assert!(denominator > 0, "zero denominator");
        ExactFraction { numerator, denominator }
    }

    pub fn numerator(self) -> u64 {
        self.numerator
    }

    pub fn denominator(self) -> u64 {
        self.denominator
    }

    pub fn reduced(self) -> Self {
        let g = gcd(self.numerator, self.denominator);
        ExactFraction { numerator: self.numerator / g, denominator: self.denominator / g }
    }

    /// `self + other - self * other`, or `None` if the result leaves 64 bits or goes negative.
    pub fn checked_complement_product(self, other: Self) -> Option<Self> {
        let (a, b) = (self.numerator as u128, self.denominator as u128);
        let (c, d) = (other.numerator as u128, other.denominator as u128);
        // a/b + c/d - ac/(bd) = (ad + cb - ac) / bd
        let top = (a * d).checked_add(c * b)?.checked_sub(a * c)?;
        from_u128(top, b * d)
    }

    pub fn checked_mul(self, other: Self) -> Option<Self> {
        let num = self.numerator as u128 * other.numerator as u128;
        let den = self.denominator as u128 * other.denominator as u128;
        from_u128(num, den)
    }

    pub fn to_f64(self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

fn from_u128(num: u128, den: u128) -> Option<ExactFraction> {
    let g = gcd128(num, den);
    let (num, den) = (num / g, den / g);
    Some(ExactFraction { numerator: num.try_into().ok()?, denominator: den.try_into().ok()? })
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

impl PartialEq for ExactFraction {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExactFraction {}

impl PartialOrd for ExactFraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactFraction {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.numerator as u128 * other.denominator as u128;
        let rhs = other.numerator as u128 * self.denominator as u128;
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for ExactFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}
