//! Parser for transform-domain input expressions over the symbols U and V,
//! used by the command line's inverse direction. Accepts general rational
//! arithmetic (`1/((U-1)*(V-1))`, `(1/2)/((U-i)*V) + (1/2)/((U+i)*V)`) and
//! evaluates it into a reduced rational function; whether the result is
//! invertible is decided downstream by the separability analysis.

use crate::ratfunc::{BiPoly, BiRat, RatFuncError};
use crate::scalar::GaussRat;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UvParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for UvParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for UvParseError {}

/// Parses and evaluates an expression in U, V, i and rational constants.
pub fn parse_uv_expr(text: &str) -> Result<BiRat, UvParseError> {
    let mut p = UvParser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct UvParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> UvParser<'a> {
    fn err(&self, message: &str) -> UvParseError {
        UvParseError {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<BiRat, UvParseError> {
        let negate = self.eat(b'-');
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BiRat, UvParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat(b'/') {
                let rhs = self.factor()?;
                acc = acc.checked_div(&rhs).map_err(|e| match e {
                    RatFuncError::DivisionByZero => self.err("division by zero"),
                    other => self.err(&other.to_string()),
                })?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BiRat, UvParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected an unsigned integer exponent"));
            }
            let k: u32 = std::str::from_utf8(&self.bytes[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("integer exponent out of range"))?;
            let mut acc = BiRat::one();
            for _ in 0..k {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BiRat, UvParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(b'U') | Some(b'u') => {
                self.pos += 1;
                Ok(BiRat::from_poly(BiPoly::var_u()))
            }
            Some(b'V') | Some(b'v') => {
                self.pos += 1;
                Ok(BiRat::from_poly(BiPoly::var_v()))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(BiRat::from_gauss(GaussRat::i()))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_digit() || self.bytes[self.pos] == b'.')
                {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                let r = crate::scalar::parse_rational(s).map_err(|m| UvParseError {
                    offset: start,
                    message: m,
                })?;
                Ok(BiRat::from_gauss(GaussRat::from_rational(r)))
            }
            _ => Err(self.err("expected a number, 'i', 'U', 'V' or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> BiPoly {
        BiPoly::var_u()
    }

    fn v() -> BiPoly {
        BiPoly::var_v()
    }

    fn c(n: i64) -> BiPoly {
        BiPoly::constant(GaussRat::from_int(n))
    }

    #[test]
    fn simple_pole_product() {
        let f = parse_uv_expr("1/((U-1)*(V-1))").unwrap();
        let expected = BiRat::new(c(1), u().sub(&c(1)).mul(&v().sub(&c(1)))).unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn sums_with_complex_coefficients() {
        let f = parse_uv_expr("(1/2)/((U-i)*V) + (1/2)/((U+i)*V)").unwrap();
        // = U/((U^2+1) V)
        let expected = BiRat::new(u(), u().pow(2).add(&c(1)).mul(&v())).unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn powers_and_fractions() {
        let f = parse_uv_expr("3/(U^2*V)").unwrap();
        let expected = BiRat::new(c(3), u().pow(2).mul(&v())).unwrap();
        assert_eq!(f, expected);

    }

    #[test]
    fn division_by_zero_reported() {
        assert!(parse_uv_expr("1/(U-U)").is_err());
    }

    #[test]
    fn junk_reported_with_offset() {
        let err = parse_uv_expr("1/((U-1)*(W-1))").unwrap_err();
        assert_eq!(err.offset, 10);
    }
}
