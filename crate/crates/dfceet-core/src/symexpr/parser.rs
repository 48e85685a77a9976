//! Recursive-descent parser for the expression grammar shared by problem
//! files and the command line:
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := number | 'x' | 'y' | 'alpha' | 'i' | '(' expr ')'
//!         | 'e^(' affine ')' | fn '(' affine ')'
//! fn     := 'sin' | 'cos' | 'sinh' | 'cosh'
//! affine := ['-'] aterm (('+'|'-') aterm)*
//! aterm  := number ['*' ('x'|'y')] | 'x' | 'y'
//! number := 3 | 1/2 | 2.5   (decimals converted exactly)
//! ```
//!
//! Whitespace is insignificant. Transcendental arguments must be affine in
//! (x, y) with zero constant part (a nonzero constant would drag e^c outside
//! the Gaussian-rational coefficient field); `alpha` may never appear inside
//! them.

use crate::scalar::Rational;
use crate::symexpr::ast::{Affine, SurfaceExpr, TrigFn};
use crate::symexpr::Var;
use num::traits::{One, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    /// Malformed input; `offset` is the byte position of the problem.
    Syntax { offset: usize, message: String },
    /// A transcendental argument that is not an affine form in x and y.
    NonAffineArgument { offset: usize, message: String },
    /// `alpha` inside an exponent or trig argument.
    AlphaInExponent { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::NonAffineArgument { offset, .. }
            | ParseError::AlphaInExponent { offset } => *offset,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { offset, message } => {
                write!(f, "syntax error at byte {offset}: {message}")
            }
            ParseError::NonAffineArgument { offset, message } => {
                write!(f, "non-affine argument at byte {offset}: {message}")
            }
            ParseError::AlphaInExponent { offset } => write!(
                f,
                "alpha is not allowed inside exponents or trig arguments (byte {offset})"
            ),
        }
    }
}

impl std::error::Error for ParseError {}

/// Parses `text` into a [`SurfaceExpr`]. Total on the grammar above.
pub fn parse_expr(text: &str) -> Result<SurfaceExpr, ParseError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn syntax(&self, message: &str) -> ParseError {
        ParseError::Syntax {
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

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.syntax(&format!("expected '{}'", b as char)))
        }
    }

    fn expr(&mut self) -> Result<SurfaceExpr, ParseError> {
        let negate = self.eat(b'-');
        let mut acc = self.term()?;
        if negate {
            acc = SurfaceExpr::Mul(
                Box::new(SurfaceExpr::Number(-Rational::one())),
                Box::new(acc),
            );
        }
        loop {
            if self.eat(b'+') {
                let rhs = self.term()?;
                acc = SurfaceExpr::Add(Box::new(acc), Box::new(rhs));
            } else if self.eat(b'-') {
                let rhs = self.term()?;
                acc = SurfaceExpr::Sub(Box::new(acc), Box::new(rhs));
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<SurfaceExpr, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let rhs = self.factor()?;
            acc = SurfaceExpr::Mul(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SurfaceExpr, ParseError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.uint()?;
            return Ok(SurfaceExpr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<SurfaceExpr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(SurfaceExpr::Number(self.number()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let ident = self.ident();
                match ident {
                    "x" => Ok(SurfaceExpr::Var(Var::X)),
                    "y" => Ok(SurfaceExpr::Var(Var::Y)),
                    "i" => Ok(SurfaceExpr::ImagUnit),
                    "alpha" => Ok(SurfaceExpr::Alpha),
                    "e" => {
                        self.expect(b'^')?;
                        self.expect(b'(')?;
                        let a = self.affine()?;
                        self.expect(b')')?;
                        Ok(SurfaceExpr::Exp(a))
                    }
                    "sin" | "cos" | "sinh" | "cosh" => {
                        let f = match ident {
                            "sin" => TrigFn::Sin,
                            "cos" => TrigFn::Cos,
                            "sinh" => TrigFn::Sinh,
                            _ => TrigFn::Cosh,
                        };
                        self.expect(b'(')?;
                        let a = self.affine()?;
                        self.expect(b')')?;
                        Ok(SurfaceExpr::Trig(f, a))
                    }
                    other => Err(ParseError::Syntax {
                        offset: start,
                        message: format!("unknown symbol {other:?}"),
                    }),
                }
            }
            _ => Err(self.syntax("expected a number, variable, function or '('")),
        }
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos]).unwrap()
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected an unsigned integer exponent"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ParseError::Syntax {
                offset: start,
                message: "integer exponent out of range".into(),
            })
    }

    /// Unsigned rational literal: digits, optionally `.digits`, optionally
    /// `/digits`. No interior whitespace.
    fn number(&mut self) -> Result<Rational, ParseError> {
        let start = self.pos;
        let int = self.digits("expected digits")?;
        let mut value = Rational::from_integer(int);
        if self.pos < self.bytes.len() && self.bytes[self.pos] == b'.' {
            self.pos += 1;
            let fs = self.pos;
            let frac = self.digits("expected digits after decimal point")?;
            let scale = num::BigInt::from(10u32).pow((self.pos - fs) as u32);
            value += Rational::new(frac, scale);
        }
        if self.pos < self.bytes.len() && self.bytes[self.pos] == b'/' {
            self.pos += 1;
            let den = self.digits("expected digits after '/'")?;
            if den.is_zero() {
                return Err(ParseError::Syntax {
                    offset: start,
                    message: "zero denominator".into(),
                });
            }
            value /= Rational::from_integer(den);
        }
        Ok(value)
    }

    fn digits(&mut self, msg: &str) -> Result<num::BigInt, ParseError> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax(msg));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .unwrap())
    }

    /// Affine argument of exp/trig. Accumulates rational rates for x and y;
    /// rejects alpha, nested structure and nonzero constant parts.
    fn affine(&mut self) -> Result<Affine, ParseError> {
        let mut xrate = Rational::zero();
        let mut yrate = Rational::zero();
        let mut constant = Rational::zero();
        let const_offset = self.pos;
        let mut sign = if self.eat(b'-') { -1i32 } else { 1 };
        loop {
            self.aterm(sign, &mut xrate, &mut yrate, &mut constant)?;
            if self.eat(b'+') {
                sign = 1;
            } else if self.eat(b'-') {
                sign = -1;
            } else {
                break;
            }
        }
        if !constant.is_zero() {
            return Err(ParseError::NonAffineArgument {
                offset: const_offset,
                message: "constant part of a transcendental argument must be zero".into(),
            });
        }
        Ok(Affine { xrate, yrate })
    }

    fn aterm(
        &mut self,
        sign: i32,
        xrate: &mut Rational,
        yrate: &mut Rational,
        constant: &mut Rational,
    ) -> Result<(), ParseError> {
        let apply = |slot: &mut Rational, v: Rational| {
            if sign < 0 {
                *slot -= v;
            } else {
                *slot += v;
            }
        };
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                if self.eat(b'*') {
                    let off = self.pos;
                    match self.peek() {
                        Some(b'x') | Some(b'y') => {
                            let ident = self.ident();
                            match ident {
                                "x" => apply(xrate, n),
                                "y" => apply(yrate, n),
                                "alpha" => {
                                    return Err(ParseError::AlphaInExponent { offset: off })
                                }
                                _ => {
                                    return Err(ParseError::NonAffineArgument {
                                        offset: off,
                                        message: format!("expected x or y, found {ident:?}"),
                                    })
                                }
                            }
                        }
                        Some(c) if c.is_ascii_alphabetic() => {
                            let ident = self.ident();
                            if ident == "alpha" {
                                return Err(ParseError::AlphaInExponent { offset: off });
                            }
                            return Err(ParseError::NonAffineArgument {
                                offset: off,
                                message: format!("expected x or y, found {ident:?}"),
                            });
                        }
                        _ => {
                            return Err(ParseError::NonAffineArgument {
                                offset: off,
                                message: "expected x or y after '*'".into(),
                            })
                        }
                    }
                } else {
                    apply(constant, n);
                }
                if self.peek() == Some(b'*') {
                    return Err(ParseError::NonAffineArgument {
                        offset: self.pos,
                        message: "products of variables are not affine".into(),
                    });
                }
                Ok(())
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let off = self.pos;
                let ident = self.ident();
                match ident {
                    "x" => apply(xrate, Rational::one()),
                    "y" => apply(yrate, Rational::one()),
                    "alpha" => return Err(ParseError::AlphaInExponent { offset: off }),
                    other => {
                        return Err(ParseError::NonAffineArgument {
                            offset: off,
                            message: format!("{other:?} is not affine in x and y"),
                        })
                    }
                }
                // a '*' after a bare variable means a non-affine product
                if self.peek() == Some(b'*') {
                    return Err(ParseError::NonAffineArgument {
                        offset: self.pos,
                        message: "products of variables are not affine".into(),
                    });
                }
                Ok(())
            }
            Some(b'(') => Err(ParseError::NonAffineArgument {
                offset: self.pos,
                message: "nested parentheses are not allowed in affine arguments".into(),
            }),
            _ => Err(self.syntax("expected an affine term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    #[test]
    fn product_with_exponential() {
        // "e^(x+y)*(3 - x*y)" is a product of an exp node and (3 - x*y)
        let e = parse_expr("e^(x+y)*(3 - x*y)").unwrap();
        match e {
            SurfaceExpr::Mul(l, r) => {
                assert_eq!(
                    *l,
                    SurfaceExpr::Exp(Affine {
                        xrate: rat(1),
                        yrate: rat(1)
                    })
                );
                assert!(matches!(*r, SurfaceExpr::Sub(_, _)));
            }
            other => panic!("expected Mul, got {other:?}"),
        }
    }

    #[test]
    fn sin_with_rates() {
        let e = parse_expr("sin(2*x + 3*y)").unwrap();
        assert_eq!(
            e,
            SurfaceExpr::Trig(
                TrigFn::Sin,
                Affine {
                    xrate: rat(2),
                    yrate: rat(3)
                }
            )
        );
    }

    #[test]
    fn non_affine_exponent_is_rejected() {
        match parse_expr("e^(x*y)") {
            Err(ParseError::NonAffineArgument { .. }) => {}
            other => panic!("expected NonAffineArgument, got {other:?}"),
        }
    }

    #[test]
    fn alpha_in_exponent_is_rejected() {
        match parse_expr("e^(alpha*x)") {
            Err(ParseError::AlphaInExponent { .. }) => {}
            other => panic!("expected AlphaInExponent, got {other:?}"),
        }
        match parse_expr("sin(2*alpha)") {
            Err(ParseError::AlphaInExponent { .. }) => {}
            other => panic!("expected AlphaInExponent, got {other:?}"),
        }
    }

    #[test]
    fn nonzero_constant_argument_is_rejected() {
        match parse_expr("e^(2)") {
            Err(ParseError::NonAffineArgument { .. }) => {}
            other => panic!("expected NonAffineArgument, got {other:?}"),
        }
        // a zero constant is fine: e^(0) = 1
        assert!(parse_expr("e^(0)").is_ok());
    }

    #[test]
    fn syntax_error_carries_offset() {
        match parse_expr("1 + * 2") {
            Err(ParseError::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("expected Syntax, got {other:?}"),
        }
    }

    #[test]
    fn rational_and_decimal_literals() {
        assert_eq!(parse_expr("1/2").unwrap(), SurfaceExpr::Number(ratio(1, 2)));
        assert_eq!(parse_expr("2.5").unwrap(), SurfaceExpr::Number(ratio(5, 2)));
        // '/' is a fraction bar inside literals only, never an operator
        assert!(parse_expr("x/2").is_err());
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(
            parse_expr("e^( 1/2*x + 2*y )").unwrap(),
            parse_expr("e^(1/2*x+2*y)").unwrap()
        );
    }

    #[test]
    fn negative_rates_in_affine() {
        let e = parse_expr("e^(-x-2*y)").unwrap();
        assert_eq!(
            e,
            SurfaceExpr::Exp(Affine {
                xrate: rat(-1),
                yrate: rat(-2)
            })
        );
    }

    #[test]
    fn powers_and_alpha() {
        let e = parse_expr("alpha^2*x").unwrap();
        assert!(matches!(e, SurfaceExpr::Mul(_, _)));
        assert!(parse_expr("x^-1").is_err());
    }
}
