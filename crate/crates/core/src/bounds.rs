//! Exact comparisons against bounds involving rational powers `n^(p/q)`.
//!
//! Everything here is integer arithmetic: an inequality `y <= c * n^(p/q)`
//! is decided as `y^q <= c^q * n^p`, and the closed-form recurrence bound
//! `3 / (1 - 2^-b) * c * d * n^(1+b)` is bracketed by dyadic rationals that
//! are refined until the comparison is decided.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use crate::Rational;

/// A rational exponent `p/q` in the open interval (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exponent {
    pub p: u32,
    pub q: u32,
}

impl Exponent {
    pub fn from_rational(beta: &Rational) -> Option<Self> {
        if !beta.is_positive() || *beta >= Rational::one() {
            return None;
        }
        let p = beta.numer().to_u32()?;
        let q = beta.denom().to_u32()?;
        Some(Exponent { p, q })
    }

    pub fn as_rational(&self) -> Rational {
        Rational::new(self.p as i64, self.q as i64)
    }
}

fn big(r: usize) -> BigInt {
    BigInt::from(r)
}

/// `size <= c * n^beta`, exactly.
pub fn within_power_bound(size: usize, c: &Rational, n: usize, beta: Exponent) -> bool {
    if c.is_negative() {
        return false;
    }
    let lhs = Rational::from(big(size).pow(beta.q));
    let rhs = c.pow(beta.q) * Rational::from(big(n).pow(beta.p));
    lhs <= rhs
}

/// Smallest integer `k` with `2^k >= x`, for `x > 0`.
pub fn ceil_log2(x: &Rational) -> i64 {
    assert!(x.is_positive(), "log of non-positive value");
    // starting guess from bit lengths, then adjust
    let guess = x.numer().bits() as i64 - x.denom().bits() as i64;
    let mut k = guess;
    while pow2(k) < *x {
        k += 1;
    }
    while pow2(k - 1) >= *x {
        k -= 1;
    }
    k
}

fn pow2(k: i64) -> Rational {
    if k >= 0 {
        Rational::from(BigInt::one() << k as usize)
    } else {
        Rational::from_bigints(BigInt::one(), BigInt::one() << (-k) as usize)
    }
}

/// `ceil(log2(c * n^beta))` for `c > 0`, `n >= 1`.
pub fn ceil_log2_scaled_power(c: &Rational, n: usize, beta: Exponent) -> i64 {
    assert!(n >= 1 && c.is_positive());
    let target = c.pow(beta.q) * Rational::from(big(n).pow(beta.p));
    let holds = |k: i64| pow2(k).pow(beta.q) >= target;
    let mut k = ceil_log2(&(c * Rational::from(n)));
    while !holds(k) {
        k += 1;
    }
    while holds(k - 1) {
        k -= 1;
    }
    k
}

/// Dyadic bracket `[lo, hi]` of `base^(p/q)` with `hi - lo <= 2^-bits`.
fn power_bracket(base: usize, p: u32, q: u32, bits: u32) -> (Rational, Rational) {
    let scale = BigUint::one() << (bits as usize * q as usize);
    let radicand = BigUint::from(base).pow(p) * scale;
    let root = radicand.nth_root(q);
    let exact = root.pow(q) == radicand;
    let den = BigInt::one() << bits as usize;
    let lo = Rational::from_bigints(BigInt::from(root.clone()), den.clone());
    let hi = if exact {
        lo.clone()
    } else {
        Rational::from_bigints(BigInt::from(root) + 1, den)
    };
    (lo, hi)
}

/// The closed-form recurrence solution `3 / (1 - 2^-beta) * c * d * n^(1+beta)`.
#[derive(Debug, Clone)]
pub struct RecurrenceBound {
    pub c: Rational,
    pub d: Rational,
    pub beta: Exponent,
    pub n: usize,
}

impl RecurrenceBound {
    pub fn new(c: Rational, d: Rational, beta: Exponent, n: usize) -> Self {
        RecurrenceBound { c, d, beta, n }
    }

    /// Rational bracket at `bits` of precision on each irrational factor.
    pub fn bracket(&self, bits: u32) -> (Rational, Rational) {
        if self.n == 0 || self.c.is_zero() || self.d.is_zero() {
            return (Rational::zero(), Rational::zero());
        }
        let (two_lo, two_hi) = power_bracket(2, self.beta.p, self.beta.q, bits);
        let (n_lo, n_hi) = power_bracket(self.n, self.beta.p, self.beta.q, bits);
        let one = Rational::one();
        let three = Rational::from_int(3);
        // 1 - 2^-beta lies in [1 - 1/two_lo, 1 - 1/two_hi]
        let gap_lo = &one - two_lo.recip();
        let gap_hi = &one - two_hi.recip();
        let scale = &self.c * &self.d * Rational::from(self.n);
        let hi = if gap_lo.is_positive() {
            &three / &gap_lo * &scale * &n_hi
        } else {
            // precision too coarse to bound from above
            Rational::from(BigInt::from(u64::MAX)).pow(4)
        };
        let lo = &three / &gap_hi * &scale * &n_lo;
        (lo, hi)
    }

    /// Decide `value <= bound` exactly, refining the bracket as needed.
    pub fn admits(&self, value: &Rational) -> bool {
        let mut bits = 32;
        loop {
            let (lo, hi) = self.bracket(bits);
            if *value <= lo {
                return true;
            }
            if *value > hi {
                return false;
            }
            if bits >= 4096 {
                // the bound is irrational, so equality cannot occur; be conservative
                return false;
            }
            bits *= 2;
        }
    }

    pub fn approx(&self) -> f64 {
        let (lo, hi) = self.bracket(48);
        (lo.to_f64() + hi.to_f64()) / 2.0
    }
}

/// `2^(d*n)`, the trivial leaf allowance, rounded up when `d*n` is fractional.
pub fn trivial_leaf_allowance(d: &Rational, n: usize) -> Rational {
    let exp = (d * Rational::from(n)).ceil();
    let e = exp.to_i64().unwrap_or(i64::MAX).max(0);
    pow2(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> Exponent {
        Exponent { p: 1, q: 2 }
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!(ceil_log2(&Rational::from_int(1)), 0);
        assert_eq!(ceil_log2(&Rational::from_int(2)), 1);
        assert_eq!(ceil_log2(&Rational::from_int(5)), 3);
        assert_eq!(ceil_log2(&Rational::from_int(8)), 3);
        assert_eq!(ceil_log2(&Rational::new(1, 2)), -1);
        assert_eq!(ceil_log2(&Rational::new(3, 4)), 0);
    }

    #[test]
    fn scaled_power_log() {
        // 2 * sqrt(9) = 6 -> 3
        assert_eq!(ceil_log2_scaled_power(&Rational::from_int(2), 9, half()), 3);
        // 4 * sqrt(4) = 8 -> 3
        assert_eq!(ceil_log2_scaled_power(&Rational::from_int(4), 4, half()), 3);
        // 1 * sqrt(5) ~ 2.236 -> 2
        assert_eq!(ceil_log2_scaled_power(&Rational::one(), 5, half()), 2);
    }

    #[test]
    fn power_bound_is_exact() {
        // 4 <= 2 * sqrt(4) but 5 > 2 * sqrt(4)
        assert!(within_power_bound(4, &Rational::from_int(2), 4, half()));
        assert!(!within_power_bound(5, &Rational::from_int(2), 4, half()));
        // 3 <= sqrt(10) ~ 3.162 but 4 is not
        assert!(within_power_bound(3, &Rational::one(), 10, half()));
        assert!(!within_power_bound(4, &Rational::one(), 10, half()));
    }

    #[test]
    fn recurrence_bound_matches_float() {
        let b = RecurrenceBound::new(Rational::from_int(4), Rational::from_int(2), half(), 16);
        let expect = 3.0 / (1.0 - 2f64.powf(-0.5)) * 4.0 * 2.0 * 16f64.powf(1.5);
        assert!((b.approx() - expect).abs() < 1e-6);
        assert!(b.admits(&Rational::from_int(expect.floor() as i64)));
        assert!(!b.admits(&Rational::from_int(expect.ceil() as i64)));
    }

    #[test]
    fn leaf_allowance() {
        assert_eq!(trivial_leaf_allowance(&Rational::from_int(2), 3), Rational::from_int(64));
        assert_eq!(trivial_leaf_allowance(&Rational::new(1, 2), 3), Rational::from_int(4));
    }
}
