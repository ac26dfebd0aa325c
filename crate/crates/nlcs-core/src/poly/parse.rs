use super::{MultiPoly, Var};
use crate::arith::parse_rational;
use num_traits::ToPrimitive;
use std::fmt;

/// Parse error with a 1-based column offset into the given text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyParseError {
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for PolyParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "col {}: {}", self.col, self.msg)
    }
}

impl std::error::Error for PolyParseError {}

/// Parse `+ - * ^` expressions over declared variable names and rational
/// literals (`2`, `1/2`, `0.5`), e.g. `x^2 + y^2 - 1`.
pub fn parse_poly(text: &str, names: &[String]) -> Result<MultiPoly, PolyParseError> {
    let mut p = Parser { chars: text.char_indices().peekable(), text, names };
    let poly = p.expr()?;
    p.skip_ws();
    if let Some(&(i, c)) = p.chars.peek() {
        return Err(p.err(i, format!("unexpected character '{c}'")));
    }
    Ok(poly)
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    text: &'a str,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn err(&self, pos: usize, msg: String) -> PolyParseError {
        let col = self.text[..pos].chars().count() + 1;
        PolyParseError { col, msg }
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(&(_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some((_, '+')) => {
                    self.chars.next();
                    acc = acc.add(&self.term()?);
                }
                Some((_, '-')) => {
                    self.chars.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, PolyParseError> {
        let mut acc = self.factor()?;
        while let Some((_, '*')) = self.peek() {
            self.chars.next();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, PolyParseError> {
        let base = self.atom()?;
        if let Some((i, '^')) = self.peek() {
            self.chars.next();
            self.skip_ws();
            let start = match self.chars.peek() {
                Some(&(j, c)) if c.is_ascii_digit() => j,
                _ => return Err(self.err(i, "expected exponent after '^'".into())),
            };
            let mut end = start;
            while matches!(self.chars.peek(), Some(&(_, c)) if c.is_ascii_digit()) {
                let (j, c) = self.chars.next().unwrap();
                end = j + c.len_utf8();
            }
            let k: u32 = self.text[start..end]
                .parse()
                .map_err(|_| self.err(start, "exponent out of range".into()))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyParseError> {
        match self.peek() {
            Some((_, '(')) => {
                self.chars.next();
                let inner = self.expr()?;
                match self.peek() {
                    Some((_, ')')) => {
                        self.chars.next();
                        Ok(inner)
                    }
                    Some((i, c)) => Err(self.err(i, format!("expected ')', found '{c}'"))),
                    None => Err(self.err(self.text.len(), "expected ')'".into())),
                }
            }
            Some((_, '-')) => {
                self.chars.next();
                Ok(self.factor()?.neg())
            }
            Some((_, '+')) => {
                self.chars.next();
                self.factor()
            }
            Some((i, c)) if c.is_ascii_digit() || c == '.' => {
                let start = i;
                let mut end = i;
                let mut seen_slash = false;
                while let Some(&(j, c)) = self.chars.peek() {
                    if c.is_ascii_digit() || c == '.' {
                        end = j + c.len_utf8();
                        self.chars.next();
                    } else if c == '/' && !seen_slash {
                        // Lookahead: only part of the literal when a digit follows.
                        let mut clone = self.chars.clone();
                        clone.next();
                        if matches!(clone.peek(), Some(&(_, d)) if d.is_ascii_digit()) {
                            seen_slash = true;
                            end = j + 1;
                            self.chars.next();
                        } else {
                            break;
                        }
                    } else {
                        break;
                    }
                }
                let lit = &self.text[start..end];
                let q = parse_rational(lit)
                    .ok_or_else(|| self.err(start, format!("bad numeric literal '{lit}'")))?;
                Ok(MultiPoly::constant(self.names.len(), q))
            }
            Some((i, c)) if c.is_alphabetic() || c == '_' => {
                let start = i;
                let mut end = i;
                while let Some(&(j, c)) = self.chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '\'' || c == '!' || c == '.' {
                        end = j + c.len_utf8();
                        self.chars.next();
                    } else {
                        break;
                    }
                }
                let name = &self.text[start..end];
                match self.names.iter().position(|n| n == name) {
                    Some(idx) => Ok(MultiPoly::var(self.names.len(), Var(idx))),
                    None => Err(self.err(start, format!("undeclared variable '{name}'"))),
                }
            }
            Some((i, c)) => Err(self.err(i, format!("unexpected character '{c}'"))),
            None => Err(self.err(self.text.len(), "unexpected end of input".into())),
        }
    }
}

#[allow(dead_code)]
fn _u32(q: &crate::arith::Rational) -> Option<u32> {
    q.to_u32()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat2};

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_circle() {
        let ns = names(&["x", "y"]);
        let p = parse_poly("x^2 + y^2 - 1", &ns).unwrap();
        assert_eq!(p.degree(Var(0)), 2);
        assert_eq!(p.degree(Var(1)), 2);
        assert_eq!(p.eval_rational(&[rat(0), rat(1)]), rat(0));
    }

    #[test]
    fn parses_fraction_and_product() {
        let ns = names(&["x", "y"]);
        let p = parse_poly("x^2 - y + 1/2", &ns).unwrap();
        assert_eq!(p.eval_rational(&[rat(0), rat2(1, 2)]), rat(0));
        let q = parse_poly("(x + 5) * (x + 2) * (x - 6)", &ns).unwrap();
        assert_eq!(q.eval_rational(&[rat(6), rat(0)]), rat(0));
        assert_eq!(q.eval_rational(&[rat(0), rat(0)]), rat(-60));
    }

    #[test]
    fn rejects_undeclared_and_garbage() {
        let ns = names(&["x"]);
        let e = parse_poly("x + z", &ns).unwrap_err();
        assert!(e.msg.contains("undeclared variable 'z'"));
        assert!(parse_poly("x +", &ns).is_err());
        assert!(parse_poly("x ^ y", &ns).is_err());
    }

    #[test]
    fn unary_minus_and_decimal() {
        let ns = names(&["x"]);
        let p = parse_poly("-x^2 + 0.5", &ns).unwrap();
        assert_eq!(p.eval_rational(&[rat(1)]), rat2(-1, 2));
    }
}
