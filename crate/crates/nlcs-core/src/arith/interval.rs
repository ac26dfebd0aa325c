use super::{Rational, Sign};
use num_traits::{Signed, Zero};

/// Closed interval with exact rational endpoints, used for certified
/// evaluation of polynomials at boxes around algebraic points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn point(q: Rational) -> Self {
        RatInterval { lo: q.clone(), hi: q }
    }

    pub fn zero() -> Self {
        RatInterval::point(Rational::zero())
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Sign if the interval does not straddle zero.
    pub fn definite_sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Sign::Zero)
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        RatInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = candidates[0].clone();
        let mut hi = candidates[0].clone();
        for c in &candidates[1..] {
            if c < &lo {
                lo = c.clone();
            }
            if c > &hi {
                hi = c.clone();
            }
        }
        RatInterval::new(lo, hi)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = RatInterval::point(Rational::from(num_bigint::BigInt::from(1)));
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Interval division; `None` when the divisor straddles zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.contains_zero() {
            return None;
        }
        let recip = RatInterval::new(
            Rational::from(num_bigint::BigInt::from(1)) / other.hi.clone(),
            Rational::from(num_bigint::BigInt::from(1)) / other.lo.clone(),
        );
        Some(self.mul(&recip))
    }

    pub fn intersects(&self, other: &Self) -> bool {
        !(self.hi < other.lo || other.hi < self.lo)
    }

    /// Interval enclosure of the square root (requires `hi >= 0`; negative
    /// lower endpoints are clamped, tolerating outward-rounded inputs).
    pub fn sqrt(&self, scale_bits: u32) -> Self {
        let lo = if self.lo.is_negative() { Rational::zero() } else { self.lo.clone() };
        RatInterval::new(sqrt_lower(&lo, scale_bits), sqrt_upper(&self.hi, scale_bits))
    }
}

/// Rational lower bound for sqrt(q), q >= 0.
pub(crate) fn sqrt_lower(q: &Rational, scale_bits: u32) -> Rational {
    use num_integer::Roots;
    debug_assert!(!q.is_negative());
    let s = num_bigint::BigInt::from(1) << scale_bits;
    // sqrt(p/d) = sqrt(p*d)/d; floor(s*sqrt(pd))/ (s*d) <= sqrt(p/d).
    let pd = q.numer() * q.denom();
    let i = (&pd * &s * &s).sqrt();
    Rational::new(i, s * q.denom())
}

/// Rational upper bound for sqrt(q), q >= 0.
pub(crate) fn sqrt_upper(q: &Rational, scale_bits: u32) -> Rational {
    use num_integer::Roots;
    debug_assert!(!q.is_negative());
    let s = num_bigint::BigInt::from(1) << scale_bits;
    let pd = q.numer() * q.denom();
    let i = (&pd * &s * &s).sqrt() + num_bigint::BigInt::from(1);
    Rational::new(i, s * q.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn interval_mul_tracks_extremes() {
        let a = RatInterval::new(rat(-1), rat(2));
        let b = RatInterval::new(rat(3), rat(4));
        let c = a.mul(&b);
        assert_eq!(c.lo, rat(-4));
        assert_eq!(c.hi, rat(8));
        assert!(a.contains_zero());
        assert_eq!(b.definite_sign(), Some(Sign::Positive));
    }
}
