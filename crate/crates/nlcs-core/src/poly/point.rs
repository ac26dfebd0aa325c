//! Exact evaluation of multivariate polynomials at sample points with real
//! algebraic coordinates.
//!
//! Sign and value queries run interval refinement first and fall back to a
//! resultant cascade: eliminating each algebraic coordinate of `z - p`
//! against its defining polynomial yields a nonzero rational polynomial whose
//! roots include the value, which an interval argument then pins down.
//! Root isolation of a specialized polynomial works the same way on the
//! polynomial itself, with per-candidate verification.

use super::{gcd_multi, resultant, MultiPoly, PolyError, Var};
use crate::arith::{
    isolate_real_roots_raw, ArithError, RatInterval, Rational, RealAlgebraic, Sign, UniPoly,
};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Result of specializing a polynomial at a partial sample point.
#[derive(Debug, Clone, PartialEq)]
pub enum SpecializedRoots {
    /// Every coefficient vanishes at the point.
    IdenticallyZero,
    /// Real roots of the specialized polynomial, ascending.
    Roots(Vec<RealAlgebraic>),
}

/// Univariate polynomial with real algebraic coefficients, the result of a
/// partial evaluation.
#[derive(Debug, Clone)]
pub struct UniAlgPoly {
    pub var: Var,
    pub coeffs: Vec<RealAlgebraic>,
}

/// Partial evaluation result: a sign when every variable is assigned, a
/// univariate polynomial when exactly one remains.
#[derive(Debug, Clone)]
pub enum EvalPartial {
    Sign(Sign),
    Poly(UniAlgPoly),
}

/// Interval evaluation of `p` over the product box of the coordinates'
/// isolating intervals. `p` may only mention variables in `coords`.
pub fn eval_box(p: &MultiPoly, coords: &[(Var, RealAlgebraic)]) -> RatInterval {
    let mut acc = RatInterval::zero();
    for (exp, c) in p.terms() {
        let mut term = RatInterval::point(c.clone());
        for (i, &e) in exp.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let iv = coords
                .iter()
                .find(|(v, _)| v.0 == i)
                .map(|(_, a)| a.interval())
                .expect("eval_box: unassigned variable");
            term = term.mul(&iv.pow(e));
        }
        acc = acc.add(&term);
    }
    acc
}

fn refine_coords(coords: &mut [(Var, RealAlgebraic)], width_shift: u32) {
    for (_, a) in coords.iter_mut() {
        let w = a.width();
        if w.is_zero() {
            continue;
        }
        let target = w / Rational::from(num_bigint::BigInt::from(1u64 << width_shift.min(16)));
        *a = a.refined(&target);
    }
}

/// Substitute exact rational coordinates directly; return the reduced
/// polynomial and the remaining algebraic coordinates that still occur.
fn split_point(p: &MultiPoly, point: &[RealAlgebraic]) -> (MultiPoly, Vec<(Var, RealAlgebraic)>) {
    let mut w = p.clone();
    for (i, val) in point.iter().enumerate() {
        let v = Var(i);
        if !w.contains_var(v) {
            continue;
        }
        if let Some(r) = val.exact() {
            w = w.subst_rational(v, r);
        }
    }
    let alg = point
        .iter()
        .enumerate()
        .filter(|(i, val)| val.exact().is_none() && w.contains_var(Var(*i)))
        .map(|(i, val)| (Var(i), val.clone()))
        .collect();
    (w, alg)
}

/// Eliminate the algebraic coordinates from `w` by resultants against their
/// defining polynomials (highest variable first). Every real zero of the
/// specialization of `w` at the point remains a zero of the result's
/// specialization; the result mentions none of the eliminated variables.
///
/// A vanishing resultant means the defining polynomial shares a factor with
/// `w`; when the coordinate's root lies in the cofactor the defining
/// polynomial is reduced and the step retried, otherwise the tower is
/// reported degenerate.
fn cascade(mut w: MultiPoly, alg: &[(Var, RealAlgebraic)]) -> Result<MultiPoly, PolyError> {
    for (v, a) in alg.iter().rev() {
        if w.is_zero() {
            return Err(ArithError::DegenerateTower("cascade collapsed to zero".into()).into());
        }
        if !w.contains_var(*v) {
            continue;
        }
        let mut d = MultiPoly::from_univariate(a.defining(), w.nvars(), *v);
        loop {
            let r = resultant(&d, &w, *v)?;
            if !r.is_zero() {
                w = r.integer_primitive();
                break;
            }
            let h = gcd_multi(&d, &w);
            let hu = match h.to_univariate(*v) {
                Some(hu) if !hu.is_constant() => hu,
                _ => {
                    return Err(ArithError::DegenerateTower(
                        "vanishing resultant without a univariate shared factor".into(),
                    )
                    .into())
                }
            };
            let chain = hu.sturm_chain();
            if UniPoly::count_roots_in(&chain, a.lo(), a.hi()) >= 1 {
                // The shared factor vanishes at the coordinate itself: the
                // specialized intermediate is identically zero and carries no
                // further information.
                return Err(ArithError::DegenerateTower(
                    "shared factor vanishes at the coordinate".into(),
                )
                .into());
            }
            d = d
                .div_exact(&h)
                .ok_or_else(|| ArithError::DegenerateTower("inexact factor division".into()))?;
            if d.degree(*v) == 0 {
                return Err(
                    ArithError::DegenerateTower("defining polynomial exhausted".into()).into()
                );
            }
        }
    }
    Ok(w)
}

/// Among isolated `roots` of a rational polynomial, return the one equal to
/// the value of `w` at the coordinates, refining intervals until unique.
fn identify_root(
    w: &MultiPoly,
    mut coords: Vec<(Var, RealAlgebraic)>,
    mut roots: Vec<RealAlgebraic>,
) -> RealAlgebraic {
    let mut shift = 2;
    loop {
        let iv = eval_box(w, &coords);
        let touching: Vec<usize> = roots
            .iter()
            .enumerate()
            .filter(|(_, r)| r.interval().intersects(&iv))
            .map(|(i, _)| i)
            .collect();
        if touching.len() == 1 {
            return roots.swap_remove(touching[0]);
        }
        debug_assert!(!touching.is_empty(), "value escaped all candidate roots");
        refine_coords(&mut coords, shift);
        for r in &mut roots {
            let w2 = r.width();
            if !w2.is_zero() {
                *r = r.refined(&(w2 / Rational::from(num_bigint::BigInt::from(4))));
            }
        }
        shift += 2;
    }
}

/// Exact value of `p` at the point, as a real algebraic number.
pub fn value_at_point(p: &MultiPoly, point: &[RealAlgebraic]) -> Result<RealAlgebraic, PolyError> {
    let (w, alg) = split_point(p, point);
    if let Some(c) = w.constant_value() {
        return Ok(RealAlgebraic::from_rational(c));
    }
    // z - p over an extended universe, then eliminate the coordinates.
    let nv = w.nvars();
    let z = Var(nv);
    let wz = extend_universe(&w, nv + 1);
    let zp = MultiPoly::var(nv + 1, z).sub(&wz);
    let alg_ext: Vec<(Var, RealAlgebraic)> =
        alg.iter().map(|(v, a)| (*v, a.clone())).collect();
    let g = cascade(zp, &alg_ext)?;
    let gu = g
        .to_univariate(z)
        .ok_or_else(|| ArithError::DegenerateTower("value cascade not univariate".into()))?;
    let roots = isolate_real_roots_raw(&gu)?;
    Ok(identify_root(&w, alg, roots))
}

/// Exact sign of `p` at the point. Interval refinement resolves nonzero
/// values; the cascade certifies zeros.
pub fn sign_at_point(p: &MultiPoly, point: &[RealAlgebraic]) -> Result<Sign, PolyError> {
    let (w, alg) = split_point(p, point);
    if let Some(c) = w.constant_value() {
        return Ok(Sign::of(&c));
    }
    let mut boxes = alg.clone();
    for round in 0..3u32 {
        let iv = eval_box(&w, &boxes);
        if let Some(s) = iv.definite_sign() {
            return Ok(s);
        }
        refine_coords(&mut boxes, 2 + 2 * round);
    }
    Ok(value_at_point(p, point)?.sign())
}

fn extend_universe(p: &MultiPoly, nvars: usize) -> MultiPoly {
    assert!(nvars >= p.nvars());
    MultiPoly::from_terms(
        nvars,
        p.terms().map(|(e, c)| {
            let mut e2 = e.clone();
            e2.resize(nvars, 0);
            (e2, c.clone())
        }),
    )
}

/// Real roots of `p` specialized at the partial point `point` (variables
/// `0..point.len()`), viewed as univariate in `target`.
pub fn isolate_roots_at_point(
    p: &MultiPoly,
    point: &[RealAlgebraic],
    target: Var,
) -> Result<SpecializedRoots, PolyError> {
    debug_assert!(target.0 >= point.len());
    let coeffs = p.coefficients_in(target);
    let mut eff_deg = None;
    for j in (0..coeffs.len()).rev() {
        if coeffs[j].is_zero() {
            continue;
        }
        if sign_at_point(&coeffs[j], point)? != Sign::Zero {
            eff_deg = Some(j);
            break;
        }
    }
    let t = match eff_deg {
        None => return Ok(SpecializedRoots::IdenticallyZero),
        Some(0) => return Ok(SpecializedRoots::Roots(Vec::new())),
        Some(t) => t,
    };
    let mut w_full = MultiPoly::zero(p.nvars());
    for (j, c) in coeffs.iter().enumerate().take(t + 1) {
        w_full = w_full.add(&c.mul_var_pow(target, j as u32));
    }
    let (w, alg) = split_point(&w_full, point);
    if alg.is_empty() {
        let u = w
            .to_univariate(target)
            .expect("rational specialization is univariate");
        return Ok(SpecializedRoots::Roots(isolate_real_roots_raw(&u)?));
    }

    // Candidate superset from the cascade, then filter.
    let r = cascade(w.clone(), &alg)?;
    let ru = r
        .to_univariate(target)
        .ok_or_else(|| ArithError::DegenerateTower("root cascade not univariate".into()))?;
    if ru.is_zero() {
        return Err(ArithError::DegenerateTower("zero candidate polynomial".into()).into());
    }
    if ru.is_constant() {
        return Ok(SpecializedRoots::Roots(Vec::new()));
    }
    let candidates = isolate_real_roots_raw(&ru)?;

    // For effective degree <= 2 the exact real-root count is one
    // discriminant sign away, which lets whole candidate sets be accepted
    // without per-candidate zero tests.
    let expected = match t {
        1 => Some(1usize),
        2 => {
            let delta = coeffs[1]
                .mul(&coeffs[1])
                .sub(&coeffs[2].mul(&coeffs[0]).scale(&Rational::from(num_bigint::BigInt::from(4))));
            match sign_at_point(&delta, point)? {
                Sign::Positive => Some(2),
                Sign::Zero => Some(1),
                Sign::Negative => Some(0),
            }
        }
        _ => None,
    };
    if expected == Some(0) {
        return Ok(SpecializedRoots::Roots(Vec::new()));
    }
    if expected == Some(candidates.len()) {
        return Ok(SpecializedRoots::Roots(candidates));
    }

    #[derive(Clone, Copy, PartialEq)]
    enum St {
        Unknown,
        Rejected,
    }
    let mut status = vec![St::Unknown; candidates.len()];
    let mut cands = candidates.clone();
    let mut boxes = alg.clone();
    for round in 0..4u32 {
        for (i, c) in cands.iter().enumerate() {
            if status[i] == St::Rejected {
                continue;
            }
            let mut ext = boxes.clone();
            ext.push((target, c.clone()));
            let iv = eval_box(&w, &ext);
            if !iv.contains_zero() {
                status[i] = St::Rejected;
            }
        }
        let unknown = status.iter().filter(|s| **s == St::Unknown).count();
        if let Some(exp) = expected {
            if unknown == exp {
                let kept: Vec<RealAlgebraic> = candidates
                    .into_iter()
                    .zip(&status)
                    .filter(|(_, s)| **s == St::Unknown)
                    .map(|(c, _)| c)
                    .collect();
                return Ok(SpecializedRoots::Roots(kept));
            }
        }
        refine_coords(&mut boxes, 2 + 2 * round);
        for c in cands.iter_mut() {
            let w2 = c.width();
            if !w2.is_zero() {
                *c = c.refined(&(w2 / Rational::from(num_bigint::BigInt::from(4))));
            }
        }
    }
    // Exact verification for the stragglers.
    let mut kept = Vec::new();
    for (i, c) in candidates.into_iter().enumerate() {
        if status[i] == St::Rejected {
            continue;
        }
        let mut ext: Vec<RealAlgebraic> = point.to_vec();
        while ext.len() < target.0 {
            ext.push(RealAlgebraic::from_rational(Rational::zero()));
        }
        ext.push(c.clone());
        if sign_at_point(&w_full, &ext)? == Sign::Zero {
            kept.push(c);
        }
    }
    Ok(SpecializedRoots::Roots(kept))
}

/// Substitute a prefix assignment `x_0..x_{k-1}` into `p`.
///
/// Returns the exact sign when every variable of `p` is assigned, or the
/// univariate polynomial (with real algebraic coefficients) in the single
/// remaining variable. Assignments must cover a contiguous prefix of the
/// variable order.
pub fn eval_partial(
    p: &MultiPoly,
    assignment: &BTreeMap<usize, RealAlgebraic>,
) -> Result<EvalPartial, PolyError> {
    let k = assignment.len();
    for i in 0..k {
        if !assignment.contains_key(&i) {
            return Err(PolyError::NonPrefixAssignment(format!(
                "assignment skips variable {i}"
            )));
        }
    }
    let point: Vec<RealAlgebraic> = (0..k).map(|i| assignment[&i].clone()).collect();
    let unassigned: Vec<Var> = p.vars_present().into_iter().filter(|v| v.0 >= k).collect();
    match unassigned.len() {
        0 => Ok(EvalPartial::Sign(sign_at_point(p, &point)?)),
        1 => {
            let u = unassigned[0];
            let mut coeffs = Vec::new();
            for c in p.coefficients_in(u) {
                coeffs.push(value_at_point(&c, &point)?);
            }
            while coeffs.last().map_or(false, |c| c.sign() == Sign::Zero) {
                coeffs.pop();
            }
            Ok(EvalPartial::Poly(UniAlgPoly { var: u, coeffs }))
        }
        _ => Err(PolyError::NonPrefixAssignment(format!(
            "{} variables beyond the assigned prefix",
            unassigned.len()
        ))),
    }
}

/// Exact value of `(A + B*sqrt(C)) / D` where the capital letters are the
/// values of the given polynomials at the point. Requires `D` nonzero and
/// `C` nonnegative at the point.
pub fn quadratic_expr_value(
    a: &MultiPoly,
    b: &MultiPoly,
    c: &MultiPoly,
    d: &MultiPoly,
    point: &[RealAlgebraic],
) -> Result<RealAlgebraic, PolyError> {
    let nv = a.nvars();
    let z = Var(nv);
    let (ae, be, ce, de) = (
        extend_universe(a, nv + 1),
        extend_universe(b, nv + 1),
        extend_universe(c, nv + 1),
        extend_universe(d, nv + 1),
    );
    // (D*z - A)^2 - B^2*C vanishes at the value.
    let lin = de.mul(&MultiPoly::var(nv + 1, z)).sub(&ae);
    let q = lin.mul(&lin).sub(&be.mul(&be).mul(&ce));
    let (w, alg) = split_point(&q, point);

    if alg.is_empty() {
        // Fully rational expression values.
        let av = a.eval_prefix(point);
        let bv = b.eval_prefix(point);
        let cv = c.eval_prefix(point);
        let dv = d.eval_prefix(point);
        if dv.is_zero() {
            return Err(PolyError::Arith(ArithError::BadIsolation(
                "zero denominator in root expression".into(),
            )));
        }
        if cv.is_negative() {
            return Err(PolyError::Arith(ArithError::BadIsolation(
                "negative radicand in root expression".into(),
            )));
        }
        let mid = &av / &dv;
        if bv.is_zero() || cv.is_zero() {
            return Ok(RealAlgebraic::from_rational(mid));
        }
        let u = w
            .to_univariate(z)
            .expect("rational specialization is univariate");
        let roots = isolate_real_roots_raw(&u)?;
        let side = Sign::of(&bv) == Sign::of(&dv);
        let midv = RealAlgebraic::from_rational(mid);
        let picked = roots.into_iter().find(|r| {
            let ord = r.compare(&midv);
            if side { ord == std::cmp::Ordering::Greater } else { ord == std::cmp::Ordering::Less }
        });
        return picked.ok_or_else(|| {
            PolyError::Arith(ArithError::BadIsolation("root expression value missing".into()))
        });
    }

    let g = cascade(w, &alg)?;
    let gu = g
        .to_univariate(z)
        .ok_or_else(|| ArithError::DegenerateTower("expression cascade not univariate".into()))?;
    let mut roots = isolate_real_roots_raw(&gu)?;
    // Identify by the interval value of the expression.
    let mut boxes = alg;
    let mut bits = 16u32;
    loop {
        let aiv = eval_box(&extend_restrict(a), &boxes);
        let biv = eval_box(&extend_restrict(b), &boxes);
        let civ = eval_box(&extend_restrict(c), &boxes);
        let div_ = eval_box(&extend_restrict(d), &boxes);
        if !div_.contains_zero() {
            let num = aiv.add(&biv.mul(&civ.sqrt(bits)));
            if let Some(wiv) = num.div(&div_) {
                let touching: Vec<usize> = roots
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| r.interval().intersects(&wiv))
                    .map(|(i, _)| i)
                    .collect();
                if touching.len() == 1 {
                    return Ok(roots.swap_remove(touching[0]));
                }
            }
        }
        refine_coords(&mut boxes, 4);
        for r in &mut roots {
            let w2 = r.width();
            if !w2.is_zero() {
                *r = r.refined(&(w2 / Rational::from(num_bigint::BigInt::from(4))));
            }
        }
        bits += 8;
    }
}

fn extend_restrict(p: &MultiPoly) -> MultiPoly {
    p.clone()
}

impl MultiPoly {
    /// Rational evaluation over a prefix of exact coordinates; variables
    /// outside the prefix must not occur.
    pub fn eval_prefix(&self, point: &[RealAlgebraic]) -> Rational {
        let vals: Vec<Rational> = point
            .iter()
            .map(|a| a.exact().cloned().unwrap_or_else(Rational::zero))
            .collect();
        self.eval_rational(&vals)
    }
}
