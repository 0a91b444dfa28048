//! Binomial coefficients and the conjectured cover bound `2^-k * sum_{i=l..k} C(k, i)`.

use crate::error::{Error, Result};
use crate::fraction::ExactFraction;
use crate::separation::SeparationParams;

/// Largest `k` accepted by [`conjecture_bound`]; numerator and `2^k` both fit in a `u64`.
pub const MAX_BOUND_K: u32 = 62;

/// `C(n, k)`, or `None` on `u128` overflow.
pub fn binomial(n: u32, k: u32) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1); splitting out the common factor keeps the
        // intermediate product no larger than the result
        let d = (i + 1) as u128;
        let g = gcd(acc, d);
        acc = (acc / g).checked_mul((n - i) as u128 / (d / g))?;
    }
    Some(acc)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `sum_{i=l..=k} C(k, i)` for `k <= 126`.
pub fn tail_sum(k: u32, l: u32) -> u128 {
    assert!(k <= 126, "tail_sum supports k <= 126");
    (l..=k).map(|i| binomial(k, i).expect("C(k, i) fits u128 for k <= 126")).sum()
}

/// The conjectured value of the extremal constant for order `k|l`, as the unreduced
/// fraction `sum_{i=l..=k} C(k, i) / 2^k`.
pub fn conjecture_bound(p: SeparationParams) -> Result<ExactFraction> {
    if p.k() > MAX_BOUND_K {
        return Err(Error::BoundRange(p.k()));
    }
    let num = tail_sum(p.k(), p.l()) as u64;
    Ok(ExactFraction::new(num, 1u64 << p.k()))
}

/// Integer form of "count / members >= bound": `count * 2^k >= members * sum C(k, i)`.
pub fn meets_bound(count: u64, members: u64, p: SeparationParams) -> bool {
    assert!(p.k() <= MAX_BOUND_K);
    let lhs = (count as u128) << p.k();
    let rhs = members as u128 * tail_sum(p.k(), p.l());
    lhs >= rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal(rows: usize) -> Vec<Vec<u128>> {
        let mut t = vec![vec![1u128]];
        for r in 1..rows {
            let prev = &t[r - 1];
            let mut row = vec![1u128; r + 1];
            for i in 1..r {
                row[i] = prev[i - 1] + prev[i];
            }
            t.push(row);
        }
        t
    }

    #[test]
    fn matches_pascal_triangle() {
        let t = pascal(127);
        for n in 0..127u32 {
            for k in 0..=n {
                assert_eq!(binomial(n, k), Some(t[n as usize][k as usize]), "C({n},{k})");
            }
            assert_eq!(binomial(n, n + 1), Some(0));
        }
    }

    #[test]
    fn bound_examples() {
        let b = |k, l| conjecture_bound(SeparationParams::new(k, l).unwrap()).unwrap();
        assert_eq!(b(1, 1), ExactFraction::new(1, 2));
        assert_eq!(b(2, 2), ExactFraction::new(1, 4));
        assert_eq!(b(3, 2), ExactFraction::new(1, 2));
        for k in 1..=20u32 {
            assert_eq!(b(k, 1), ExactFraction::new((1 << k) - 1, 1 << k));
            assert_eq!(b(k, k), ExactFraction::new(1, 1 << k));
        }
        for j in 0..=30u32 {
            assert_eq!(b(2 * j + 1, j + 1), ExactFraction::new(1, 2));
        }
        assert_eq!(b(62, 1).denominator(), 1 << 62);
        assert!(conjecture_bound(SeparationParams::new(63, 1).unwrap()).is_err());
    }

    #[test]
    fn meets_bound_is_exact() {
        let p = SeparationParams::new(3, 2).unwrap();
        assert!(meets_bound(4, 8, p));
        assert!(!meets_bound(2, 5, p));
        assert!(meets_bound(3, 6, p));
    }
}
