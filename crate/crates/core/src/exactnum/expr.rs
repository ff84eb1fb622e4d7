//! Tiny grammar for polynomial coordinates in the generator `a`:
//!
//! ```text
//! expr := [sign] term (sign term)*
//! term := coef ['*'] mono | mono | coef
//! mono := 'a' ['^' uint]
//! coef := uint ['/' uint]
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use super::rational::Rational;
use crate::error::{Error, Result};

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.s.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn uint(&mut self) -> Result<Option<BigInt>> {
        self.skip_ws();
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(Some(txt.parse().expect("digits parse")))
    }

    fn coef(&mut self) -> Result<Option<Rational>> {
        let Some(n) = self.uint()? else { return Ok(None) };
        if self.eat(b'/') {
            let Some(d) = self.uint()? else { return self.err("expected a denominator") };
            if d.is_zero() {
                return self.err("zero denominator");
            }
            return Ok(Some(Rational::new(n, d)));
        }
        Ok(Some(Rational::from_integer(n)))
    }

    fn mono(&mut self, var: u8) -> Result<Option<usize>> {
        if !self.eat(var) {
            return Ok(None);
        }
        if self.eat(b'^') {
            let Some(k) = self.uint()? else { return self.err("expected an exponent") };
            let k: usize = k.try_into().or_else(|_| self.err("exponent too large"))?;
            if k > 64 {
                return self.err("exponent too large");
            }
            return Ok(Some(k));
        }
        Ok(Some(1))
    }
}

/// Parses a polynomial in `var` into ascending rational coefficients.
pub fn parse_poly(s: &str, var: char) -> Result<Vec<Rational>> {
    let var = u8::try_from(var).map_err(|_| Error::InvalidParameter("variable must be ASCII".into()))?;
    let mut c = Cursor { s: s.as_bytes(), pos: 0 };
    let mut out: Vec<Rational> = Vec::new();
    let mut first = true;
    loop {
        let neg = if c.eat(b'-') {
            true
        } else if c.eat(b'+') || first {
            false
        } else if c.peek().is_none() {
            break;
        } else {
            return c.err("expected '+' or '-'");
        };
        first = false;
        let coef = c.coef()?;
        let star = coef.is_some() && c.eat(b'*');
        let mono = c.mono(var)?;
        let k = match (&coef, mono) {
            (_, Some(k)) => k,
            (Some(_), None) if !star => 0,
            (Some(_), None) => return c.err(format!("expected '{}' after '*'", var as char)),
            (None, None) => return c.err("expected a coefficient or the generator"),
        };
        let mut v = coef.unwrap_or_else(|| Rational::from_integer(1.into()));
        if neg {
            v = -v;
        }
        if out.len() <= k {
            out.resize(k + 1, Rational::zero());
        }
        out[k] += v;
        if c.peek().is_none() {
            break;
        }
    }
    if out.is_empty() {
        return c.err("empty expression");
    }
    Ok(out)
}

/// Parses comma-separated integers, e.g. `"-1,3,3,1"`.
pub fn parse_int_list(s: &str) -> Result<Vec<BigInt>> {
    let mut pos = 0;
    s.split(',')
        .map(|tok| {
            let here = pos + tok.len() - tok.trim_start().len();
            pos += tok.len() + 1;
            tok.trim().parse::<BigInt>().map_err(|_| Error::Parse {
                pos: here,
                msg: format!("not an integer: {:?}", tok.trim()),
            })
        })
        .collect()
}

/// Parses `"lo,hi"` with rational endpoints.
pub fn parse_interval(s: &str) -> Result<(Rational, Rational)> {
    let Some((lo, hi)) = s.split_once(',') else {
        return Err(Error::Parse { pos: 0, msg: "expected \"lo,hi\"".into() });
    };
    let at = |p: usize| move |_| Error::Parse { pos: p, msg: "not a rational".into() };
    let lo = super::rational::parse_rational(lo).map_err(at(0))?;
    let hi = super::rational::parse_rational(hi).map_err(at(s.find(',').unwrap() + 1))?;
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    #[test]
    fn polynomials() {
        assert_eq!(parse_poly("a^2", 'a').unwrap(), vec![int(0), int(0), int(1)]);
        assert_eq!(parse_poly("2*a", 'a').unwrap(), vec![int(0), int(2)]);
        assert_eq!(parse_poly("1-3*a", 'a').unwrap(), vec![int(1), int(-3)]);
        assert_eq!(parse_poly(" -a^2 + 8a - 2 ", 'a').unwrap(), vec![int(-2), int(8), int(-1)]);
        assert_eq!(parse_poly("3/2*a-1/2", 'a').unwrap(), vec![rat(-1, 2), rat(3, 2)]);
        assert_eq!(parse_poly("7", 'a').unwrap(), vec![int(7)]);
        assert_eq!(parse_poly("0", 'a').unwrap(), vec![int(0)]);
    }

    #[test]
    fn positioned_errors() {
        assert_eq!(parse_poly("1+*a", 'a').unwrap_err(), Error::Parse { pos: 2, msg: "expected a coefficient or the generator".into() });
        assert!(matches!(parse_poly("2*", 'a'), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly("a b", 'a'), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly("", 'a'), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("1/0", 'a'), Err(Error::Parse { .. })));
        assert!(matches!(parse_int_list("1, x,3"), Err(Error::Parse { pos: 3, .. })));
    }

    #[test]
    fn lists_and_intervals() {
        assert_eq!(parse_int_list("-1,3,3,1").unwrap(), vec![(-1).into(), 3.into(), 3.into(), 1.into()]);
        assert_eq!(parse_interval("0,1").unwrap(), (int(0), int(1)));
        assert_eq!(parse_interval("1/4, 1/3").unwrap(), (rat(1, 4), rat(1, 3)));
        assert!(parse_interval("1").is_err());
    }
}
