//! Sparse multivariate polynomial arithmetic and the elimination toolbox
//! (resultants, discriminants, principal subresultant coefficients) used by
//! CAD projection, plus exact evaluation at algebraic sample points.

mod parse;
mod point;
mod resultant;

pub use parse::{parse_poly, PolyParseError};
pub use point::{
    eval_box, eval_partial, isolate_roots_at_point, quadratic_expr_value, sign_at_point,
    value_at_point, EvalPartial, SpecializedRoots, UniAlgPoly,
};
pub use resultant::{discriminant, resultant, subresultant_psc};

use crate::arith::{ArithError, Rational, UniPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Index into the ordered variable list of a constraint system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub usize);

impl Var {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Errors from polynomial-level operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    DegreeTooLow(String),
    VariableMismatch(String),
    NonPrefixAssignment(String),
    Arith(ArithError),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::DegreeTooLow(m) => write!(f, "degree too low: {m}"),
            PolyError::VariableMismatch(m) => write!(f, "variable mismatch: {m}"),
            PolyError::NonPrefixAssignment(m) => write!(f, "non-prefix assignment: {m}"),
            PolyError::Arith(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for PolyError {}

impl From<ArithError> for PolyError {
    fn from(e: ArithError) -> Self {
        PolyError::Arith(e)
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms map exponent vectors (length = number of variables in the ambient
/// system) to nonzero coefficients. The `BTreeMap` gives a canonical,
/// deterministic term order (lexicographic on exponent vectors).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = MultiPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, v: Var) -> Self {
        MultiPoly::var_pow(nvars, v, 1)
    }

    pub fn var_pow(nvars: usize, v: Var, k: u32) -> Self {
        assert!(v.0 < nvars);
        let mut exp = vec![0; nvars];
        exp[v.0] = k;
        let mut p = MultiPoly::zero(nvars);
        p.terms.insert(exp, Rational::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (exp, c) in terms {
            assert_eq!(exp.len(), nvars);
            p.add_term(exp, c);
        }
        p
    }

    fn add_term(&mut self, exp: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    /// Highest variable with positive degree.
    pub fn main_var(&self) -> Option<Var> {
        let mut best: Option<usize> = None;
        for exp in self.terms.keys() {
            for (i, &e) in exp.iter().enumerate().rev() {
                if e > 0 {
                    best = Some(best.map_or(i, |b| b.max(i)));
                    break;
                }
            }
        }
        best.map(Var)
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e[v.0]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|e| e[v.0] > 0)
    }

    /// Variables with positive degree, ascending.
    pub fn vars_present(&self) -> Vec<Var> {
        let mut seen = vec![false; self.nvars];
        for exp in self.terms.keys() {
            for (i, &e) in exp.iter().enumerate() {
                if e > 0 {
                    seen[i] = true;
                }
            }
        }
        seen.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| Var(i)).collect()
    }

    /// Coefficient of `v^k` as a polynomial in the remaining variables.
    pub fn coefficient(&self, v: Var, k: u32) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (exp, c) in &self.terms {
            if exp[v.0] == k {
                let mut e = exp.clone();
                e[v.0] = 0;
                out.add_term(e, c.clone());
            }
        }
        out
    }

    /// All coefficients in `v`, index = power, length = degree + 1.
    pub fn coefficients_in(&self, v: Var) -> Vec<MultiPoly> {
        let d = self.degree(v);
        (0..=d).map(|k| self.coefficient(v, k)).collect()
    }

    pub fn leading_coefficient(&self, v: Var) -> MultiPoly {
        self.coefficient(v, self.degree(v))
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars, "mismatched variable universes");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars, "mismatched variable universes");
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exp, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn mul_var_pow(&self, v: Var, k: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[v.0] += k;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    pub fn derivative(&self, v: Var) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (exp, c) in &self.terms {
            let k = exp[v.0];
            if k == 0 {
                continue;
            }
            let mut e = exp.clone();
            e[v.0] = k - 1;
            out.add_term(e, c * Rational::from(BigInt::from(k)));
        }
        out
    }

    /// Substitute a rational value for one variable.
    pub fn subst_rational(&self, v: Var, value: &Rational) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (exp, c) in &self.terms {
            let k = exp[v.0];
            let mut e = exp.clone();
            e[v.0] = 0;
            let mut coeff = c.clone();
            for _ in 0..k {
                coeff *= value;
            }
            out.add_term(e, coeff);
        }
        out
    }

    /// Full rational evaluation; `point[i]` is the value of variable `i`.
    pub fn eval_rational(&self, point: &[Rational]) -> Rational {
        assert!(point.len() >= self.nvars || self.vars_present().iter().all(|v| v.0 < point.len()));
        let mut acc = Rational::zero();
        for (exp, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in exp.iter().enumerate() {
                for _ in 0..e {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        acc
    }

    /// Dense univariate view when at most `v` occurs.
    pub fn to_univariate(&self, v: Var) -> Option<UniPoly> {
        let mut coeffs = vec![Rational::zero(); self.degree(v) as usize + 1];
        for (exp, c) in &self.terms {
            for (i, &e) in exp.iter().enumerate() {
                if i != v.0 && e > 0 {
                    return None;
                }
            }
            coeffs[exp[v.0] as usize] = c.clone();
        }
        Some(UniPoly::from_coeffs(coeffs))
    }

    /// Any univariate view: picks the main variable.
    pub fn as_univariate(&self) -> Option<(Var, UniPoly)> {
        let v = self.main_var()?;
        self.to_univariate(v).map(|p| (v, p))
    }

    pub fn from_univariate(p: &UniPoly, nvars: usize, v: Var) -> MultiPoly {
        let mut out = MultiPoly::zero(nvars);
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; nvars];
                e[v.0] = k as u32;
                out.terms.insert(e, c.clone());
            }
        }
        out
    }

    /// Leading term in the lexicographic term order.
    fn leading_term(&self) -> Option<(&Vec<u32>, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Exact division; `None` when not divisible.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        let (dexp, dc) = {
            let (e, c) = divisor.leading_term().unwrap();
            (e.clone(), c.clone())
        };
        while !rem.is_zero() {
            let (rexp, rc) = {
                let (e, c) = rem.leading_term().unwrap();
                (e.clone(), c.clone())
            };
            if !dexp.iter().zip(&rexp).all(|(d, r)| d <= r) {
                return None;
            }
            let exp: Vec<u32> = rexp.iter().zip(&dexp).map(|(r, d)| r - d).collect();
            let c = rc / &dc;
            let mut t = MultiPoly::zero(self.nvars);
            t.terms.insert(exp, c);
            quot = quot.add(&t);
            rem = rem.sub(&t.mul(divisor));
        }
        Some(quot)
    }

    /// Pseudo-remainder of `self` by `other` with respect to `v`
    /// (`other` must have positive degree in `v`).
    pub fn pseudo_rem(&self, other: &MultiPoly, v: Var) -> MultiPoly {
        let dq = other.degree(v);
        debug_assert!(dq > 0 || !other.is_constant());
        let lq = other.leading_coefficient(v);
        let mut r = self.clone();
        while !r.is_zero() && r.degree(v) >= dq {
            let dr = r.degree(v);
            let lr = r.leading_coefficient(v);
            r = r.mul(&lq).sub(&other.mul(&lr).mul_var_pow(v, dr - dq));
            debug_assert!(r.is_zero() || r.degree(v) < dr);
        }
        r
    }

    /// Rational content (positive) so that `self / content` has coprime
    /// integer coefficients.
    fn rational_content(&self) -> Rational {
        if self.is_zero() {
            return Rational::one();
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&(c.numer() * (&den_lcm / c.denom())));
        }
        if num_gcd.is_zero() {
            num_gcd = BigInt::one();
        }
        Rational::new(num_gcd, den_lcm)
    }

    /// Integer-primitive scaling: coprime integer coefficients, sign kept.
    pub fn integer_primitive(&self) -> MultiPoly {
        let c = self.rational_content();
        self.scale(&(Rational::one() / c))
    }

    /// Canonical form: integer-primitive with positive leading (lex)
    /// coefficient. Used for projection-set dedup and constraint identity.
    pub fn canonical(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let p = self.integer_primitive();
        if p.leading_term().unwrap().1.is_negative() {
            p.neg()
        } else {
            p
        }
    }

    /// True when canonicalization flips the sign.
    pub fn canonical_sign_flipped(&self) -> bool {
        self.leading_term().map_or(false, |(_, c)| c.is_negative())
    }

    /// Content of `self` with respect to `v`: gcd of the `v`-coefficients.
    pub fn content_in(&self, v: Var) -> MultiPoly {
        let mut g = MultiPoly::zero(self.nvars);
        for c in self.coefficients_in(v) {
            if c.is_zero() {
                continue;
            }
            g = gcd_multi(&g, &c);
            if g.is_constant() && !g.is_zero() {
                return MultiPoly::one(self.nvars);
            }
        }
        if g.is_zero() {
            MultiPoly::one(self.nvars)
        } else {
            g
        }
    }

    pub fn primitive_part_in(&self, v: Var) -> MultiPoly {
        let c = self.content_in(v);
        if c.constant_value().map_or(false, |q| q.is_one()) {
            return self.integer_primitive();
        }
        self.div_exact(&c).expect("content divides").integer_primitive()
    }

    /// Squarefree part with respect to `v`: `p / gcd(p, dp/dv)` up to content.
    pub fn squarefree_part(&self, v: Var) -> MultiPoly {
        if self.is_zero() || self.degree(v) == 0 {
            return self.clone();
        }
        let d = self.derivative(v);
        let g = gcd_multi(self, &d);
        if g.is_constant() {
            return self.clone();
        }
        self.div_exact(&g).expect("gcd divides").integer_primitive()
    }

    /// Render with the given variable names.
    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

/// Multivariate gcd by primitive polynomial remainder sequences.
/// Defined up to a rational unit; the result is canonical.
pub fn gcd_multi(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.canonical();
    }
    if b.is_zero() {
        return a.canonical();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.nvars());
    }
    let va = a.main_var().unwrap();
    let vb = b.main_var().unwrap();
    let v = va.max(vb);
    if !a.contains_var(v) || !b.contains_var(v) {
        // Exactly one of them contains the top variable: the gcd divides the
        // other's content with respect to it.
        let (with_v, without_v) = if a.contains_var(v) { (a, b) } else { (b, a) };
        return gcd_multi(&with_v.content_in(v), without_v);
    }
    let ca = a.content_in(v);
    let cb = b.content_in(v);
    let pa = a.primitive_part_in(v);
    let pb = b.primitive_part_in(v);
    let cont = gcd_multi(&ca, &cb);

    let (mut f, mut g) = if pa.degree(v) >= pb.degree(v) { (pa, pb) } else { (pb, pa) };
    loop {
        let r = f.pseudo_rem(&g, v);
        if r.is_zero() {
            break;
        }
        if r.degree(v) == 0 {
            g = MultiPoly::one(a.nvars());
            break;
        }
        f = g;
        g = r.primitive_part_in(v);
    }
    let g = if g.is_constant() {
        MultiPoly::one(a.nvars())
    } else {
        g.primitive_part_in(v)
    };
    cont.mul(&g).canonical()
}

pub struct PolyDisplay<'a> {
    poly: &'a MultiPoly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        // Highest lex term first.
        let mut first = true;
        for (exp, c) in self.poly.terms.iter().rev() {
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            let is_const_term = exp.iter().all(|&e| e == 0);
            let mut wrote = false;
            if !a.is_one() || is_const_term {
                write!(f, "{}", crate::arith::rational_to_string(&a))?;
                wrote = true;
            }
            for (i, &e) in exp.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                let name = self
                    .names
                    .get(i)
                    .map(|s| s.as_str())
                    .unwrap_or("?");
                if e == 1 {
                    write!(f, "{name}")?;
                } else {
                    write!(f, "{name}^{e}")?;
                }
                wrote = true;
            }
            first = false;
        }
        Ok(())
    }
}
