//! Expression grammar for polynomials.
//!
//! Rationals are written `p/q`, products with `*` or by juxtaposition, powers
//! with `^n`, and parentheses group. Variable names are matched greedily
//! against the declared alphabet, so `x1x0` reads as `x1·x0` when both are
//! declared. Whitespace is ignored.

use std::sync::Arc;

use crate::error::Error;
use crate::monomial::MonomialContext;
use crate::scalar::Scalar;
use crate::series::{Precision, Series};

/// Parses an exact polynomial in `ctx`. Error columns are 1-based.
pub fn parse_series<F: Scalar>(ctx: &Arc<MonomialContext>, text: &str) -> Result<Series<F>, Error> {
    let mut p = Parser { ctx, chars: text.chars().collect(), pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let v = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(&format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(v)
}

/// Parses a natural number from decimal digits.
pub fn parse_natural<F: Scalar>(digits: &str) -> Option<F> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let ten = F::from_i64(10);
    let mut acc = F::zero();
    for b in digits.bytes() {
        acc = acc * ten.clone() + F::from_i64(i64::from(b - b'0'));
    }
    Some(acc)
}

/// Parses `p`, `-p` or `p/q` into an exact scalar.
pub fn parse_rational<F: Scalar>(text: &str) -> Option<F> {
    let text = text.trim();
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, text),
    };
    let value = match body.split_once('/') {
        Some((n, d)) => {
            let d: F = parse_natural(d.trim())?;
            if d.is_zero() {
                return None;
            }
            parse_natural::<F>(n.trim())? / d
        }
        None => parse_natural(body)?,
    };
    Some(if neg { -value } else { value })
}

struct Parser<'a> {
    ctx: &'a Arc<MonomialContext>,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::Parse { column: self.pos + 1, message: message.to_string() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn skip_ws(&mut self) {
        while !self.at_end() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr<F: Scalar>(&mut self) -> Result<Series<F>, Error> {
        let mut acc = Series::zero(self.ctx, Precision::Exact);
        let mut sign = F::one();
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                sign = -F::one();
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc.add_scaled(&sign, &t);
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    sign = F::one();
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -F::one();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(&mut self) -> bool {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '(' => true,
            Some(_) => self.match_variable().is_some(),
            None => false,
        }
    }

    fn term<F: Scalar>(&mut self) -> Result<Series<F>, Error> {
        let mut acc = self.factor()?;
        loop {
            if self.peek() == Some('*') {
                self.pos += 1;
                let f = self.factor()?;
                acc = acc.mul(&f)?;
            } else if self.starts_factor() {
                let f = self.factor()?;
                acc = acc.mul(&f)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor<F: Scalar>(&mut self) -> Result<Series<F>, Error> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        if self.peek() == Some('-') {
            return Err(self.error("negative exponents are not allowed"));
        }
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected a natural exponent after `^`"));
        }
        let e: u32 = digits.parse().map_err(|_| self.error("exponent too large"))?;
        let mut out = Series::constant(self.ctx, F::one());
        for _ in 0..e {
            out = out.mul(&base)?;
        }
        Ok(out)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while !self.at_end() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn match_variable(&self) -> Option<(usize, usize)> {
        let rest = &self.chars[self.pos..];
        let mut best: Option<(usize, usize)> = None;
        for (idx, name) in self.ctx.variables().iter().enumerate() {
            let n: Vec<char> = name.chars().collect();
            if rest.starts_with(&n) && best.is_none_or(|(_, len)| n.len() > len) {
                best = Some((idx, n.len()));
            }
        }
        best
    }

    fn atom<F: Scalar>(&mut self) -> Result<Series<F>, Error> {
        match self.peek() {
            None => Err(self.error("unexpected end of expression")),
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let num = self.digits();
                let mut value: F = parse_natural(&num).expect("digits");
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.digits();
                    if den.is_empty() {
                        return Err(self.error("malformed rational: expected denominator"));
                    }
                    let d: F = parse_natural(&den).expect("digits");
                    if d.is_zero() {
                        self.pos = start;
                        return Err(self.error("malformed rational: zero denominator"));
                    }
                    value = value / d;
                }
                Ok(Series::constant(self.ctx, value))
            }
            Some(c) => match self.match_variable() {
                Some((idx, len)) => {
                    self.pos += len;
                    Ok(Series::monomial(self.ctx, self.ctx.variable(idx), F::one()))
                }
                None => {
                    if c.is_alphabetic() || c == '_' {
                        let start = self.pos;
                        let mut end = start;
                        while end < self.chars.len()
                            && (self.chars[end].is_alphanumeric() || self.chars[end] == '_')
                        {
                            end += 1;
                        }
                        let name: String = self.chars[start..end].iter().collect();
                        Err(self.error(&format!("unknown variable `{name}`")))
                    } else {
                        Err(self.error(&format!("unexpected `{c}`")))
                    }
                }
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Mode;
    use crate::Q;

    fn nc() -> Arc<MonomialContext> {
        Arc::new(MonomialContext::noncommutative(["x1", "x0"], Mode::Discrete).unwrap())
    }

    #[test]
    fn juxtaposition_and_powers() {
        let c = nc();
        let a: Series<Q> = parse_series(&c, "x1x0 - 2 x1 - x0 + 2").unwrap();
        let b: Series<Q> = parse_series(&c, "x1*x0 - 2*x1 - x0 + 2").unwrap();
        assert_eq!(a, b);
        let p: Series<Q> = parse_series(&c, "(x1 + x0)^2").unwrap();
        let q: Series<Q> = parse_series(&c, "x1x1 + x1x0 + x0x1 + x0x0").unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn noncommutative_products_do_not_commute() {
        let c = nc();
        let a: Series<Q> = parse_series(&c, "x1x0 - x0x1").unwrap();
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn rationals() {
        let c = Arc::new(MonomialContext::commutative(["x"], Mode::Adic).unwrap());
        let a: Series<Q> = parse_series(&c, "3/6 x").unwrap();
        assert_eq!(a.to_string(), "1/2*x");
        assert_eq!(parse_rational::<Q>("-4/6"), Some(Q::new((-2).into(), 3.into())));
        assert_eq!(parse_rational::<Q>("1/0"), None);
    }

    #[test]
    fn errors_are_positioned() {
        let c = Arc::new(MonomialContext::commutative(["x", "y"], Mode::Adic).unwrap());
        let err = parse_series::<Q>(&c, "x^-1").unwrap_err();
        assert_eq!(err, Error::Parse { column: 3, message: "negative exponents are not allowed".into() });
        let err = parse_series::<Q>(&c, "x + w").unwrap_err();
        assert!(matches!(err, Error::Parse { column: 5, .. }));
        let err = parse_series::<Q>(&c, "2/ + x").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        assert!(parse_series::<Q>(&c, "").is_err());
        assert!(parse_series::<Q>(&c, "(x + y").is_err());
    }
}
