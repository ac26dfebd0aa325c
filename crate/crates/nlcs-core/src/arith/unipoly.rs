use super::{Rational, Sign};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense univariate polynomial with exact rational coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`; the leading coefficient is
/// nonzero and the zero polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// `c * x^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        UniPoly { coeffs }
    }

    /// `x - r`
    pub fn linear_root(r: &Rational) -> Self {
        UniPoly::from_coeffs(vec![-r.clone(), Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_eval(&self, x: &Rational) -> Sign {
        Sign::of(&self.eval(x))
    }

    pub fn neg(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        UniPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from(BigInt::from(i)))
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    /// Exact division with remainder over the rationals.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let factor = rem[k].clone() / lead.clone();
            if !factor.is_zero() {
                quot[k - dd] = factor.clone();
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    let idx = k - dd + i;
                    let delta = c * &factor;
                    rem[idx] -= delta;
                }
            }
            rem.pop();
        }
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    /// Exact quotient, panicking if the division is not exact.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact univariate division");
        q
    }

    /// Monic gcd over the rationals.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive_signless();
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading().unwrap().clone();
        a.scale(&(Rational::one() / lead))
    }

    /// `p / gcd(p, p')`: same distinct roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() || self.is_constant() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.is_constant() {
            return self.clone();
        }
        self.div_exact(&g)
    }

    /// Remove rational content and make the leading coefficient positive.
    /// The result has coprime integer coefficients.
    pub fn integer_primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        for n in &ints {
            num_gcd = num_gcd.gcd(n);
        }
        if num_gcd.is_zero() {
            num_gcd = BigInt::one();
        }
        if ints.last().map_or(false, |l| l.is_negative()) {
            num_gcd = -num_gcd;
        }
        UniPoly {
            coeffs: ints
                .into_iter()
                .map(|n| Rational::from(n / &num_gcd))
                .collect(),
        }
    }

    /// Divide by the (positive) rational content, preserving signs.
    fn primitive_signless(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        for n in &ints {
            num_gcd = num_gcd.gcd(n);
        }
        if num_gcd.is_zero() {
            num_gcd = BigInt::one();
        }
        UniPoly {
            coeffs: ints
                .into_iter()
                .map(|n| Rational::from(n / &num_gcd))
                .collect(),
        }
    }

    /// `p(x + shift)`
    pub fn shift(&self, shift: &Rational) -> Self {
        // Horner: p(x + s) built from the top coefficient down.
        let mut acc = UniPoly::zero();
        let xs = UniPoly::from_coeffs(vec![shift.clone(), Rational::one()]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&xs).add(&UniPoly::constant(c.clone()));
        }
        acc
    }

    /// `(-1)^deg * p(-x)`-style reflection: returns `p(-x)`.
    pub fn reflect(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    /// Cauchy root bound: every real root lies strictly inside `(-B, B)`.
    pub fn root_bound(&self) -> Rational {
        let lead = match self.leading() {
            Some(l) => l,
            None => return Rational::one(),
        };
        let mut max = Rational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let q = (c / lead).abs();
            if q > max {
                max = q;
            }
        }
        max + Rational::one() + Rational::one()
    }

    /// Sturm chain `p, p', -rem(...), ...` with sign-preserving content
    /// normalization to keep coefficients small.
    pub fn sturm_chain(&self) -> Vec<UniPoly> {
        let mut chain = Vec::new();
        let p = self.clone();
        if p.is_zero() {
            return chain;
        }
        chain.push(p.clone());
        let mut prev = p;
        let mut cur = prev.derivative().primitive_signless();
        while !cur.is_zero() {
            chain.push(cur.clone());
            let (_, r) = prev.div_rem(&cur);
            prev = cur;
            cur = r.neg().primitive_signless();
        }
        chain
    }

    /// Number of sign changes of the chain at `x`.
    pub fn sturm_variations(chain: &[UniPoly], x: &Rational) -> usize {
        let mut count = 0;
        let mut last = Sign::Zero;
        for p in chain {
            let s = p.sign_eval(x);
            if s == Sign::Zero {
                continue;
            }
            if last != Sign::Zero && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct real roots in `(lo, hi]` of the (squarefree) chain head.
    pub fn count_roots_in(chain: &[UniPoly], lo: &Rational, hi: &Rational) -> usize {
        if lo >= hi {
            return 0;
        }
        let v_lo = Self::sturm_variations(chain, lo);
        let v_hi = Self::sturm_variations(chain, hi);
        v_lo.saturating_sub(v_hi)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => write!(f, "x")?,
                1 => write!(f, "{a}*x")?,
                _ if a.is_one() => write!(f, "x^{i}")?,
                _ => write!(f, "{a}*x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat2};

    fn poly(cs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(cs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn ring_basics() {
        let p = poly(&[-1, 0, 1]); // x^2 - 1
        let a = poly(&[1, 1]);
        let b = poly(&[-1, 1]);
        assert_eq!(a.mul(&b), p);
        assert_eq!(p.add(&UniPoly::zero()), p);
        assert_eq!(p.eval(&rat(3)), rat(8));
        assert_eq!(p.derivative(), poly(&[0, 2]));
    }

    #[test]
    fn division_and_gcd() {
        let p = poly(&[-1, 0, 1]);
        let (q, r) = p.div_rem(&poly(&[1, 1]));
        assert_eq!(q, poly(&[-1, 1]));
        assert!(r.is_zero());

        let g = poly(&[-2, 1]); // x - 2
        let a = g.mul(&poly(&[1, 1]));
        let b = g.mul(&poly(&[3, 1]));
        assert_eq!(a.gcd(&b), g); // monic already
    }

    #[test]
    fn squarefree_strips_multiplicity() {
        let g = poly(&[-1, 1]);
        let p = g.mul(&g).mul(&poly(&[5, 1]));
        let sf = p.squarefree_part();
        // Same roots {1, -5}, each simple.
        assert_eq!(sf.degree(), Some(2));
        assert!(sf.eval(&rat(1)).is_zero());
        assert!(sf.eval(&rat(-5)).is_zero());
    }

    #[test]
    fn integer_primitive_normalizes() {
        let p = UniPoly::from_coeffs(vec![rat2(1, 2), rat2(-3, 4)]);
        let n = p.integer_primitive();
        assert_eq!(n, UniPoly::from_coeffs(vec![rat(-2), rat(3)]));
        assert!(n.leading().unwrap().is_positive());
    }

    #[test]
    fn shift_and_reflect() {
        let p = poly(&[0, 0, 1]); // x^2
        let s = p.shift(&rat(1)); // (x+1)^2
        assert_eq!(s, poly(&[1, 2, 1]));
        let r = poly(&[1, 2, 3]).reflect();
        assert_eq!(r, poly(&[1, -2, 3]));
    }

    #[test]
    fn sturm_counts_roots() {
        let p = poly(&[-2, 0, 1]); // x^2 - 2
        let chain = p.sturm_chain();
        assert_eq!(UniPoly::count_roots_in(&chain, &rat(-3), &rat(3)), 2);
        assert_eq!(UniPoly::count_roots_in(&chain, &rat(0), &rat(2)), 1);
        assert_eq!(UniPoly::count_roots_in(&chain, &rat(2), &rat(3)), 0);
    }
}
