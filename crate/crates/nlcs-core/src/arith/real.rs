use super::{
    rational_to_string, simplest_rational_between, ArithError, RatInterval, Rational, Sign,
    UniPoly,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Exact real algebraic number: a squarefree integer-primitive defining
/// polynomial together with an isolating interval.
///
/// For a non-rational value the interval is open, its endpoints are not
/// roots of the defining polynomial, and exactly one root lies inside.
/// Rational values carry `exact` and a collapsed interval.
#[derive(Debug, Clone)]
pub struct RealAlgebraic {
    defining: UniPoly,
    lo: Rational,
    hi: Rational,
    exact: Option<Rational>,
}

impl RealAlgebraic {
    pub fn from_rational(q: Rational) -> Self {
        let defining = UniPoly::linear_root(&q).integer_primitive();
        RealAlgebraic { defining, lo: q.clone(), hi: q.clone(), exact: Some(q) }
    }

    pub fn from_int(n: i64) -> Self {
        RealAlgebraic::from_rational(Rational::from(BigInt::from(n)))
    }

    /// Validating constructor: `defining` must have exactly one real root in
    /// `[lo, hi]`. Rational roots are detected when they sit on an endpoint
    /// or are found by the cheap probe.
    pub fn new(defining: UniPoly, lo: Rational, hi: Rational) -> Result<Self, ArithError> {
        if defining.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        if lo > hi {
            return Err(ArithError::EmptyInterval);
        }
        let sf = defining.squarefree_part().integer_primitive();
        if sf.eval(&lo).is_zero() {
            return Ok(RealAlgebraic::exact_with_defining(sf, lo));
        }
        if sf.eval(&hi).is_zero() {
            return Ok(RealAlgebraic::exact_with_defining(sf, hi));
        }
        let chain = sf.sturm_chain();
        let n = UniPoly::count_roots_in(&chain, &lo, &hi);
        if n != 1 {
            return Err(ArithError::BadIsolation(format!(
                "expected 1 root in ({lo}, {hi}), found {n}"
            )));
        }
        let mut out = RealAlgebraic { defining: sf, lo, hi, exact: None };
        out.probe_exact();
        Ok(out)
    }

    fn exact_with_defining(sf: UniPoly, r: Rational) -> Self {
        // Keep the linear factor as the minimal defining polynomial.
        let _ = sf;
        RealAlgebraic::from_rational(r)
    }

    fn from_isolated(defining: UniPoly, lo: Rational, hi: Rational) -> Self {
        debug_assert!(!defining.eval(&lo).is_zero() && !defining.eval(&hi).is_zero());
        debug_assert!(defining.sign_eval(&lo) != defining.sign_eval(&hi));
        RealAlgebraic { defining, lo, hi, exact: None }
    }

    /// Cheap attempt to recognize a rational value: tests the simplest
    /// rational in the interval.
    fn probe_exact(&mut self) {
        if self.exact.is_some() {
            return;
        }
        let s = simplest_rational_between(&self.lo, &self.hi);
        if self.defining.eval(&s).is_zero() {
            *self = RealAlgebraic::from_rational(s);
        }
    }

    /// Exhaustive rational-root recognition: any rational root of the
    /// primitive defining polynomial has denominator dividing the leading
    /// coefficient, so after refining the interval below `1/lc^2` at most one
    /// candidate remains.
    fn detect_exact_complete(&mut self) {
        if self.exact.is_some() {
            return;
        }
        if self.defining.degree() == Some(1) {
            let r = -self.defining.coeff(0) / self.defining.coeff(1);
            *self = RealAlgebraic::from_rational(r);
            return;
        }
        self.probe_exact();
        if self.exact.is_some() {
            return;
        }
        let lc = self.defining.leading().unwrap().numer().magnitude().clone();
        let lc = Rational::from(BigInt::from(lc));
        let limit = Rational::one() / (&lc * &lc);
        while &self.hi - &self.lo >= limit {
            if self.bisect_once() {
                return;
            }
        }
        // At most one rational with denominator dividing lc remains.
        let scaled_lo = &self.lo * &lc;
        let k = scaled_lo.floor() + Rational::one();
        let candidate = k / lc.clone();
        if candidate > self.lo && candidate < self.hi && self.defining.eval(&candidate).is_zero() {
            *self = RealAlgebraic::from_rational(candidate);
        }
    }

    pub fn defining(&self) -> &UniPoly {
        &self.defining
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn exact(&self) -> Option<&Rational> {
        self.exact.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn interval(&self) -> RatInterval {
        RatInterval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// One bisection step. Returns true when the value collapsed to exact.
    fn bisect_once(&mut self) -> bool {
        if self.exact.is_some() {
            return true;
        }
        let mid = (&self.lo + &self.hi) / Rational::from(BigInt::from(2));
        let sm = self.defining.sign_eval(&mid);
        if sm == Sign::Zero {
            *self = RealAlgebraic::from_rational(mid);
            return true;
        }
        if sm == self.defining.sign_eval(&self.lo) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
        false
    }

    /// Same number with interval width at most `width`.
    pub fn refined(&self, width: &Rational) -> Self {
        assert!(width.is_positive(), "refine width must be positive");
        let mut out = self.clone();
        while out.exact.is_none() && &out.width() > width {
            out.bisect_once();
        }
        out
    }

    pub fn sign(&self) -> Sign {
        if let Some(r) = &self.exact {
            return Sign::of(r);
        }
        let mut me = self.clone();
        loop {
            if !me.lo.is_negative() {
                return Sign::Positive;
            }
            if !me.hi.is_positive() {
                return Sign::Negative;
            }
            // lo < 0 < hi: the root is zero iff zero is a root of the
            // defining polynomial (the interval isolates exactly one root).
            if me.defining.coeff(0).is_zero() {
                return Sign::Zero;
            }
            me.bisect_once();
        }
    }

    pub fn neg(&self) -> Self {
        if let Some(r) = &self.exact {
            return RealAlgebraic::from_rational(-r.clone());
        }
        let defining = self.defining.reflect().integer_primitive();
        RealAlgebraic::from_isolated(defining, -self.hi.clone(), -self.lo.clone())
    }

    pub fn add_rational(&self, q: &Rational) -> Self {
        if let Some(r) = &self.exact {
            return RealAlgebraic::from_rational(r + q);
        }
        let defining = self.defining.shift(&-q.clone()).integer_primitive();
        RealAlgebraic::from_isolated(defining, &self.lo + q, &self.hi + q)
    }

    /// Exact total order.
    pub fn compare(&self, other: &Self) -> Ordering {
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            return a.cmp(b);
        }
        let mut x = self.clone();
        let mut y = other.clone();
        if let Some(ord) = Self::interval_order(&x, &y) {
            return ord;
        }
        // Overlapping intervals: decide equality exactly, then separate.
        let equal = match (&x.exact, &y.exact) {
            (Some(r), None) => y.defining.eval(r).is_zero() && r > &y.lo && r < &y.hi,
            (None, Some(r)) => x.defining.eval(r).is_zero() && r > &x.lo && r < &x.hi,
            (None, None) => {
                let h = x.defining.gcd(&y.defining);
                if h.is_constant() {
                    false
                } else {
                    let lo = (&x.lo).max(&y.lo).clone();
                    let hi = (&x.hi).min(&y.hi).clone();
                    if lo >= hi {
                        false
                    } else {
                        let chain = h.sturm_chain();
                        UniPoly::count_roots_in(&chain, &lo, &hi) >= 1
                    }
                }
            }
            (Some(_), Some(_)) => unreachable!(),
        };
        if equal {
            return Ordering::Equal;
        }
        loop {
            x.bisect_once();
            y.bisect_once();
            if let Some(ord) = Self::interval_order(&x, &y) {
                return ord;
            }
        }
    }

    fn lower(&self) -> &Rational {
        &self.lo
    }

    fn upper(&self) -> &Rational {
        &self.hi
    }

    fn interval_order(x: &Self, y: &Self) -> Option<Ordering> {
        if let (Some(a), Some(b)) = (&x.exact, &y.exact) {
            return Some(a.cmp(b));
        }
        if x.upper() < y.lower()
            || (x.upper() == y.lower() && (x.exact.is_none() || y.exact.is_none()))
        {
            return Some(Ordering::Less);
        }
        if y.upper() < x.lower()
            || (y.upper() == x.lower() && (x.exact.is_none() || y.exact.is_none()))
        {
            return Some(Ordering::Greater);
        }
        None
    }

    /// JSON form: `{"poly": [c0,...,cd], "lo": "p/q", "hi": "p/q"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .defining
            .coeffs()
            .iter()
            .map(|c| serde_json::Value::String(rational_to_string(c)))
            .collect();
        serde_json::json!({
            "poly": coeffs,
            "lo": rational_to_string(&self.lo),
            "hi": rational_to_string(&self.hi),
        })
    }
}

impl fmt::Display for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(r) => write!(f, "{}", rational_to_string(r)),
            None => write!(
                f,
                "root({}) in ({}, {})",
                self.defining,
                rational_to_string(&self.lo),
                rational_to_string(&self.hi)
            ),
        }
    }
}

impl PartialEq for RealAlgebraic {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for RealAlgebraic {}

impl PartialOrd for RealAlgebraic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

impl Ord for RealAlgebraic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

/// Exact sign of the univariate polynomial `p` at the algebraic point `a`.
/// Zero is decided by a gcd test; nonzero signs by interval refinement.
pub fn sign_at(p: &UniPoly, a: &RealAlgebraic) -> Sign {
    if p.is_zero() {
        return Sign::Zero;
    }
    if let Some(r) = a.exact() {
        return Sign::of(&p.eval(r));
    }
    let h = p.gcd(a.defining());
    if !h.is_constant() {
        let chain = h.sturm_chain();
        if UniPoly::count_roots_in(&chain, a.lo(), a.hi()) >= 1 {
            return Sign::Zero;
        }
    }
    let mut x = a.clone();
    loop {
        let iv = eval_on_interval(p, &x.interval());
        if let Some(s) = iv.definite_sign() {
            return s;
        }
        if x.bisect_once() {
            return Sign::of(&p.eval(x.exact().unwrap()));
        }
    }
}

/// Interval extension of `p` over `iv` (Horner).
pub fn eval_on_interval(p: &UniPoly, iv: &RatInterval) -> RatInterval {
    let mut acc = RatInterval::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(iv).add(&RatInterval::point(c.clone()));
    }
    acc
}

/// All distinct real roots in ascending order, without the exhaustive
/// rational-root pass (a cheap probe still recognizes most rational roots).
pub fn isolate_real_roots_raw(p: &UniPoly) -> Result<Vec<RealAlgebraic>, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let sf = p.squarefree_part().integer_primitive();
    if sf.degree() == Some(1) {
        let r = -sf.coeff(0) / sf.coeff(1);
        return Ok(vec![RealAlgebraic::from_rational(r)]);
    }
    let chain = sf.sturm_chain();
    let bound = sf.root_bound();
    let mut roots = Vec::new();
    isolate_rec(&sf, &chain, &-bound.clone(), &bound, &mut roots);
    Ok(roots)
}

fn isolate_rec(
    sf: &UniPoly,
    chain: &[UniPoly],
    lo: &Rational,
    hi: &Rational,
    out: &mut Vec<RealAlgebraic>,
) {
    let n = UniPoly::count_roots_in(chain, lo, hi);
    if n == 0 {
        return;
    }
    if n == 1 {
        let mut root = RealAlgebraic::from_isolated(sf.clone(), lo.clone(), hi.clone());
        root.probe_exact();
        out.push(root);
        return;
    }
    let mid = (lo + hi) / Rational::from(BigInt::from(2));
    if sf.eval(&mid).is_zero() {
        // Exact root at the bisection point: carve out a gap around it that
        // contains no other root, then recurse on both sides.
        let mut w = (hi - lo) / Rational::from(BigInt::from(8));
        loop {
            let m1 = &mid - &w;
            let m2 = &mid + &w;
            if !sf.eval(&m1).is_zero()
                && !sf.eval(&m2).is_zero()
                && UniPoly::count_roots_in(chain, &m1, &m2) == 1
            {
                isolate_rec(sf, chain, lo, &m1, out);
                out.push(RealAlgebraic::from_rational(mid.clone()));
                isolate_rec(sf, chain, &m2, hi, out);
                return;
            }
            w = w / Rational::from(BigInt::from(2));
        }
    }
    isolate_rec(sf, chain, lo, &mid, out);
    isolate_rec(sf, chain, &mid, hi, out);
}

/// All distinct real roots in ascending order. Rational roots are always
/// recognized and carry `exact`.
pub fn isolate_real_roots(p: &UniPoly) -> Result<Vec<RealAlgebraic>, ArithError> {
    let mut roots = isolate_real_roots_raw(p)?;
    for r in &mut roots {
        r.detect_exact_complete();
    }
    Ok(roots)
}

/// Deterministic rational strictly between two algebraic numbers.
pub fn rational_between(a: &RealAlgebraic, b: &RealAlgebraic) -> Result<Rational, ArithError> {
    if a.compare(b) != Ordering::Less {
        return Err(ArithError::EmptyInterval);
    }
    let mut x = a.clone();
    let mut y = b.clone();
    loop {
        let xu = x.exact().cloned().unwrap_or_else(|| x.hi().clone());
        let yl = y.exact().cloned().unwrap_or_else(|| y.lo().clone());
        if xu < yl {
            return Ok((&xu + &yl) / Rational::from(BigInt::from(2)));
        }
        x.bisect_once();
        y.bisect_once();
    }
}

/// Deterministic rational strictly below `a` (one below the refined lower
/// endpoint).
pub fn rational_below(a: &RealAlgebraic) -> Rational {
    if let Some(r) = a.exact() {
        return r - Rational::one();
    }
    let r = a.refined(&Rational::one());
    r.lo() - Rational::one()
}

/// Deterministic rational strictly above `a`.
pub fn rational_above(a: &RealAlgebraic) -> Rational {
    if let Some(r) = a.exact() {
        return r + Rational::one();
    }
    let r = a.refined(&Rational::one());
    r.hi() + Rational::one()
}

/// Sort ascending and merge equal values (exact comparison).
pub fn sort_dedup_roots(mut roots: Vec<RealAlgebraic>) -> Vec<RealAlgebraic> {
    roots.sort_by(|a, b| a.compare(b));
    roots.dedup_by(|a, b| a.compare(b) == Ordering::Equal);
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat2};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn upoly(cs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(cs.iter().map(|&c| rat(c)).collect())
    }

    fn sqrt2() -> RealAlgebraic {
        RealAlgebraic::new(upoly(&[-2, 0, 1]), rat(1), rat(2)).unwrap()
    }

    #[test]
    fn isolate_sqrt2() {
        let roots = isolate_real_roots(&upoly(&[-2, 0, 1])).unwrap();
        assert_eq!(roots.len(), 2);
        // Sturm oracle: exactly one root in each of [-2,-1] and [1,2].
        let chain = upoly(&[-2, 0, 1]).sturm_chain();
        assert_eq!(UniPoly::count_roots_in(&chain, &rat(-2), &rat(-1)), 1);
        assert_eq!(UniPoly::count_roots_in(&chain, &rat(1), &rat(2)), 1);
        let neg = RealAlgebraic::new(upoly(&[-2, 0, 1]), rat(-2), rat(-1)).unwrap();
        assert_eq!(roots[0].compare(&neg), Ordering::Equal);
        assert_eq!(roots[1].compare(&sqrt2()), Ordering::Equal);
        assert!(!roots[0].is_exact() && !roots[1].is_exact());
    }

    #[test]
    fn isolate_exact_roots() {
        let roots = isolate_real_roots(&upoly(&[-9, 0, 1])).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].exact(), Some(&rat(-3)));
        assert_eq!(roots[1].exact(), Some(&rat(3)));
    }

    #[test]
    fn isolate_no_real_roots() {
        let roots = isolate_real_roots(&upoly(&[1, 0, 1])).unwrap();
        assert!(roots.is_empty());
    }

    #[test]
    fn isolate_zero_poly_errors() {
        assert_eq!(
            isolate_real_roots(&UniPoly::zero()).unwrap_err(),
            ArithError::ZeroPolynomial
        );
    }

    #[test]
    fn planted_rational_roots_come_back_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let mut planted: Vec<Rational> = (0..3)
                .map(|_| rat2(rng.random_range(-12..12), rng.random_range(1..7)))
                .collect();
            planted.sort();
            planted.dedup();
            let mut p = UniPoly::constant(rat(1));
            for r in &planted {
                p = p.mul(&UniPoly::linear_root(r));
            }
            let roots = isolate_real_roots(&p).unwrap();
            assert_eq!(roots.len(), planted.len());
            for (root, want) in roots.iter().zip(planted.iter()) {
                assert_eq!(root.exact(), Some(want));
            }
        }
    }

    #[test]
    fn compare_examples() {
        assert_eq!(sqrt2().compare(&RealAlgebraic::from_rational(rat2(3, 2))), Ordering::Less);
        assert_eq!(sqrt2().compare(&sqrt2()), Ordering::Equal);
        assert_eq!(
            RealAlgebraic::from_int(-3).compare(&RealAlgebraic::from_int(3)),
            Ordering::Less
        );
    }

    #[test]
    fn compare_is_total_order_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut pool: Vec<RealAlgebraic> = Vec::new();
        while pool.len() < 12 {
            let cs: Vec<Rational> = (0..5).map(|_| rat(rng.random_range(-6..6))).collect();
            let p = UniPoly::from_coeffs(cs);
            if p.is_zero() || p.is_constant() {
                continue;
            }
            if let Ok(roots) = isolate_real_roots_raw(&p) {
                pool.extend(roots.into_iter().take(2));
            }
        }
        for i in 0..pool.len() {
            for j in 0..pool.len() {
                let ij = pool[i].compare(&pool[j]);
                let ji = pool[j].compare(&pool[i]);
                assert_eq!(ij, ji.reverse(), "antisymmetry");
                for k in 0..pool.len() {
                    let jk = pool[j].compare(&pool[k]);
                    if ij != Ordering::Greater && jk != Ordering::Greater {
                        assert_ne!(
                            pool[i].compare(&pool[k]),
                            Ordering::Greater,
                            "transitivity"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn sign_at_examples() {
        assert_eq!(sign_at(&upoly(&[-9, 0, 1]), &RealAlgebraic::from_int(-3)), Sign::Zero);
        assert_eq!(sign_at(&upoly(&[0, 1]), &sqrt2()), Sign::Positive);
        assert_eq!(sign_at(&upoly(&[-3, 0, 1]), &sqrt2()), Sign::Negative);
    }

    #[test]
    fn sign_at_zero_iff_shared_root() {
        // sign_at(p, a) = Zero exactly when gcd(p, defining) has a root in
        // a's interval.
        let a = sqrt2();
        let p = upoly(&[-2, 0, 1]).mul(&upoly(&[5, 1]));
        assert_eq!(sign_at(&p, &a), Sign::Zero);
        let g = p.gcd(a.defining());
        let chain = g.sturm_chain();
        assert!(UniPoly::count_roots_in(&chain, a.lo(), a.hi()) >= 1);

        let q = upoly(&[1, 1]);
        assert_ne!(sign_at(&q, &a), Sign::Zero);
        assert!(q.gcd(a.defining()).is_constant());
    }

    #[test]
    fn between_examples() {
        let m = rational_between(&RealAlgebraic::from_int(-3), &RealAlgebraic::from_int(-2))
            .unwrap();
        assert_eq!(m, rat2(-5, 2));

        let q = rational_between(&sqrt2(), &RealAlgebraic::from_rational(rat2(3, 2))).unwrap();
        // Oracle: the square of the result lies in (2, 9/4).
        let sq = &q * &q;
        assert!(sq > rat(2) && sq < rat2(9, 4));

        let below = rational_below(&RealAlgebraic::from_int(-5));
        assert_eq!(below, rat(-6));
        assert!(
            rational_between(&RealAlgebraic::from_int(1), &RealAlgebraic::from_int(1)).is_err()
        );
    }

    #[test]
    fn refine_examples() {
        let r = sqrt2().refined(&rat2(1, 8));
        assert!(r.width() <= rat2(1, 8));
        // Bisection oracle: interval still brackets sqrt(2).
        assert!(r.lo() * r.lo() < rat(2));
        assert!(r.hi() * r.hi() > rat(2));

        let e = RealAlgebraic::from_int(3).refined(&rat2(1, 100));
        assert_eq!(e.exact(), Some(&rat(3)));

        let tight = sqrt2().refined(&rat2(1, 16));
        let again = tight.refined(&rat(1));
        assert_eq!(again.lo(), tight.lo());
        assert_eq!(again.hi(), tight.hi());
    }

    #[test]
    fn refinement_preserves_compare_and_sign() {
        let a = sqrt2();
        let b = RealAlgebraic::new(upoly(&[-3, 0, 1]), rat(1), rat(2)).unwrap();
        let p = upoly(&[-5, 2, 1]);
        let before = (a.compare(&b), sign_at(&p, &a));
        let (ra, rb) = (a.refined(&rat2(1, 64)), b.refined(&rat2(1, 64)));
        assert_eq!((ra.compare(&rb), sign_at(&p, &ra)), before);
    }

    #[test]
    fn neg_and_shift() {
        let a = sqrt2();
        let n = a.neg();
        assert_eq!(n.sign(), Sign::Negative);
        assert_eq!(n.neg().compare(&a), Ordering::Equal);
        let shifted = a.add_rational(&rat(-2));
        assert_eq!(shifted.sign(), Sign::Negative);
        // sqrt(2) - 2 is a root of (x+2)^2 - 2.
        assert_eq!(sign_at(&upoly(&[2, 4, 1]), &shifted), Sign::Zero);
    }

    #[test]
    fn json_shape() {
        let v = sqrt2().to_json();
        assert_eq!(v["poly"][0], "-2");
        assert_eq!(v["poly"][2], "1");
        assert!(v["lo"].is_string() && v["hi"].is_string());
    }
}
