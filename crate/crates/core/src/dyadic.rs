//! Exact non-negative dyadic rationals `numerator / 2^exponent`.
//!
//! Every Kraft mass is a finite sum of powers of two, so nothing more general
//! than a big numerator over a power-of-two denominator is ever needed.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign};
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// A non-negative dyadic rational kept in lowest terms: the numerator is odd
/// unless the value is zero, in which case the exponent is zero too.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigUint,
    exp: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDyadicError(pub String);

impl fmt::Display for ParseDyadicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed dyadic rational {:?} (expected \"a/2^k\")", self.0)
    }
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { num: BigUint::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { num: BigUint::one(), exp: 0 }
    }

    /// `2^-n`, the Kraft mass of an `n`-bit program.
    pub fn pow2_neg(n: u32) -> Self {
        Dyadic { num: BigUint::one(), exp: n }
    }

    pub fn new(num: BigUint, exp: u32) -> Self {
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }

    pub fn from_u64_scaled(num: u64, exp: u32) -> Self {
        Self::new(BigUint::from(num), exp)
    }

    /// `Σ counts[n] · 2^-n`, exact.
    pub fn from_length_counts(counts: &[u64]) -> Self {
        let Some(top) = counts.len().checked_sub(1) else {
            return Dyadic::zero();
        };
        let mut num = BigUint::zero();
        for (n, &c) in counts.iter().enumerate() {
            if c != 0 {
                num += BigUint::from(c) << (top - n);
            }
        }
        Self::new(num, top as u32)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().unwrap_or(0);
        let shift = tz.min(self.exp as u64) as u32;
        if shift > 0 {
            self.num >>= shift as usize;
            self.exp -= shift;
        }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    /// The `k` in `numerator / 2^k` (lowest terms).
    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Numerator over a common denominator `2^exp` (which must be at least
    /// this value's own exponent).
    fn scaled_num(&self, exp: u32) -> BigUint {
        debug_assert!(exp >= self.exp);
        &self.num << (exp - self.exp) as usize
    }

    /// `self - rhs`, or `None` if that would be negative.
    pub fn checked_sub(&self, rhs: &Dyadic) -> Option<Dyadic> {
        let e = self.exp.max(rhs.exp);
        let a = self.scaled_num(e);
        let b = rhs.scaled_num(e);
        if a < b {
            None
        } else {
            Some(Dyadic::new(a - b, e))
        }
    }

    /// `⌊self · 2^i⌋`.
    pub fn floor_scaled(&self, i: u32) -> BigUint {
        if i >= self.exp {
            &self.num << (i - self.exp) as usize
        } else {
            &self.num >> (self.exp - i) as usize
        }
    }

    /// Binary digit `i` (1-based, weight `2^-i`) of the expansion that
    /// terminates in zeros.
    pub fn digit(&self, i: u32) -> bool {
        self.floor_scaled(i).bit(0)
    }

    /// `self · 2^-shift`.
    pub fn shr(&self, shift: u32) -> Dyadic {
        Dyadic::new(self.num.clone(), self.exp + shift)
    }

    /// Approximate value for display; never used in decisions.
    pub fn to_f64(&self) -> f64 {
        let bits = self.num.bits();
        if bits > 60 {
            let drop = bits - 60;
            let top = (&self.num >> drop as usize).iter_u64_digits().next().unwrap_or(0) as f64;
            top * libm::exp2(drop as f64 - self.exp as f64)
        } else {
            let n = self.num.iter_u64_digits().next().unwrap_or(0) as f64;
            n * libm::exp2(-(self.exp as f64))
        }
    }
}

impl Add<&Dyadic> for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exp.max(rhs.exp);
        Dyadic::new(self.scaled_num(e) + rhs.scaled_num(e), e)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl AddAssign<&Dyadic> for Dyadic {
    fn add_assign(&mut self, rhs: &Dyadic) {
        *self = &*self + rhs;
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        self.scaled_num(e).cmp(&other.scaled_num(e))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    /// `a/2^k` in lowest terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.num, self.exp)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Dyadic {
    type Err = ParseDyadicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseDyadicError(String::from(s));
        let (a, k) = s.trim().split_once("/2^").ok_or_else(err)?;
        let num: BigUint = a.parse().map_err(|_| err())?;
        let exp: u32 = k.parse().map_err(|_| err())?;
        Ok(Dyadic::new(num, exp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn normalizes() {
        let d = Dyadic::from_u64_scaled(4, 5);
        assert_eq!(d.to_string(), "1/2^3");
        assert_eq!(Dyadic::from_u64_scaled(0, 9).to_string(), "0/2^0");
        assert_eq!(Dyadic::from_u64_scaled(6, 1).to_string(), "3/2^0");
    }

    #[test]
    fn arithmetic() {
        let eighth = Dyadic::pow2_neg(3);
        let sum = &eighth + &Dyadic::pow2_neg(3);
        assert_eq!(sum, Dyadic::pow2_neg(2));
        assert_eq!(Dyadic::one().checked_sub(&sum).unwrap().to_string(), "3/2^2");
        assert!(eighth.checked_sub(&Dyadic::one()).is_none());
        assert!(Dyadic::pow2_neg(3) < Dyadic::pow2_neg(2));
    }

    #[test]
    fn length_counts() {
        // one 3-bit program and two 5-bit programs: 1/8 + 2/32 = 3/16
        let d = Dyadic::from_length_counts(&[0, 0, 0, 1, 0, 2]);
        assert_eq!(d.to_string(), "3/2^4");
        assert_eq!(Dyadic::from_length_counts(&[]), Dyadic::zero());
        assert_eq!(Dyadic::from_length_counts(&[1]), Dyadic::one());
    }

    #[test]
    fn digits_and_floors() {
        let d: Dyadic = "5/2^4".parse().unwrap(); // 0.0101
        let digits: Vec<bool> = (1..=5).map(|i| d.digit(i)).collect();
        assert_eq!(digits, [false, true, false, true, false]);
        assert_eq!(d.floor_scaled(2), BigUint::from(1u32));
        assert_eq!(d.floor_scaled(4), BigUint::from(5u32));
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0/2^0", "1/2^0", "12345678901234567890123/2^90"] {
            let d: Dyadic = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert!("3/4".parse::<Dyadic>().is_err());
    }
}
