//! Renders real-valued exponential polynomials back into the expression
//! grammar. Terms with complex exponent rates are recombined with their
//! conjugate partners into cos/sin factors, so the output always re-parses
//! and re-lowers to the original expression.

use crate::scalar::{rational_to_string, GaussRat, Rational};
use crate::symexpr::{ExpPolyExpr, ExpPolyTerm};
use num::traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RenderError {
    /// The expression is not invariant under conjugation, so it denotes a
    /// complex-valued function and has no real rendering.
    NotRealValued,
}

impl fmt::Display for RenderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RenderError::NotRealValued => {
                write!(f, "expression is not real-valued; conjugate terms do not pair up")
            }
        }
    }
}

impl std::error::Error for RenderError {}

struct RenderedTerm {
    /// Sign-carrying rational prefactor.
    coeff: Rational,
    /// Remaining factors, already grammar-compatible.
    factors: Vec<String>,
}

/// Renders a conjugation-closed expression as a string in the input grammar.
pub fn render_expr(expr: &ExpPolyExpr) -> Result<String, RenderError> {
    if expr.is_zero() {
        return Ok("0".to_string());
    }
    if !expr.is_conjugation_closed() {
        return Err(RenderError::NotRealValued);
    }

    let mut rendered: Vec<RenderedTerm> = Vec::new();
    // representative -> (term, partner coeff), keyed on the canonical term order
    let mut seen: BTreeMap<(u32, u32, GaussRat, GaussRat), ()> = BTreeMap::new();
    for t in expr.terms() {
        let key = (t.xpow, t.ypow, t.xrate.clone(), t.yrate.clone());
        let conj_key = (t.xpow, t.ypow, t.xrate.conj(), t.yrate.conj());
        if t.xrate.is_real() && t.yrate.is_real() {
            // conjugation closure forces a real coefficient here
            rendered.push(render_real_rate_term(&t));
        } else if seen.contains_key(&conj_key) {
            // partner already rendered
        } else {
            seen.insert(key, ());
            // canonical representative: positive-lex imaginary rates, so the
            // argument prints as cos(x) rather than cos(-x)
            let rep = if (t.xrate.im.clone(), t.yrate.im.clone())
                < (Rational::zero(), Rational::zero())
            {
                ExpPolyTerm {
                    coeff: t.coeff.conj(),
                    xpow: t.xpow,
                    ypow: t.ypow,
                    xrate: t.xrate.conj(),
                    yrate: t.yrate.conj(),
                }
            } else {
                t
            };
            rendered.extend(render_conjugate_pair(&rep));
        }
    }

    let mut out = String::new();
    for (idx, term) in rendered.iter().enumerate() {
        let coeff = &term.coeff;
        if idx == 0 {
            if coeff.is_negative() {
                out.push('-');
            }
        } else if coeff.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mag = coeff.abs();
        let mut pieces: Vec<String> = Vec::new();
        if !mag.is_one() || term.factors.is_empty() {
            pieces.push(rational_to_string(&mag));
        }
        pieces.extend(term.factors.iter().cloned());
        out.push_str(&pieces.join("*"));
    }
    Ok(out)
}

fn power_factors(t: &ExpPolyTerm) -> Vec<String> {
    let mut factors = Vec::new();
    match t.xpow {
        0 => {}
        1 => factors.push("x".to_string()),
        p => factors.push(format!("x^{p}")),
    }
    match t.ypow {
        0 => {}
        1 => factors.push("y".to_string()),
        p => factors.push(format!("y^{p}")),
    }
    factors
}

/// Formats `a*x + b*y` for use inside `e^(...)` or trig arguments.
fn affine_string(a: &Rational, b: &Rational) -> String {
    let mut s = String::new();
    let push_part = |s: &mut String, r: &Rational, var: &str| {
        if r.is_zero() {
            return;
        }
        let lead = s.is_empty();
        if r.is_negative() {
            s.push_str(if lead { "-" } else { " - " });
        } else if !lead {
            s.push_str(" + ");
        }
        let mag = r.abs();
        if mag.is_one() {
            s.push_str(var);
        } else {
            s.push_str(&format!("{}*{}", rational_to_string(&mag), var));
        }
    };
    push_part(&mut s, a, "x");
    push_part(&mut s, b, "y");
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn render_real_rate_term(t: &ExpPolyTerm) -> RenderedTerm {
    let mut factors = power_factors(t);
    if !t.xrate.is_zero() || !t.yrate.is_zero() {
        factors.push(format!(
            "e^({})",
            affine_string(&t.xrate.re, &t.yrate.re)
        ));
    }
    RenderedTerm {
        coeff: t.coeff.re.clone(),
        factors,
    }
}

/// Renders `c e^((u+ip)x+(s+iq)y) + conj` as the pair of real terms
/// `2Re(c) x^r y^m e^(ux+sy) cos(px+qy) - 2Im(c) x^r y^m e^(ux+sy) sin(px+qy)`.
fn render_conjugate_pair(t: &ExpPolyTerm) -> Vec<RenderedTerm> {
    let u = &t.xrate.re;
    let s = &t.yrate.re;
    let p = &t.xrate.im;
    let q = &t.yrate.im;
    let a_cos = &t.coeff.re * Rational::from_integer(2.into());
    let b_sin = -(&t.coeff.im * Rational::from_integer(2.into()));

    let mut base = power_factors(t);
    if !u.is_zero() || !s.is_zero() {
        base.push(format!("e^({})", affine_string(u, s)));
    }
    let arg = affine_string(p, q);

    let mut out = Vec::new();
    if !a_cos.is_zero() {
        let mut factors = base.clone();
        factors.push(format!("cos({arg})"));
        out.push(RenderedTerm {
            coeff: a_cos,
            factors,
        });
    }
    if !b_sin.is_zero() {
        let mut factors = base;
        factors.push(format!("sin({arg})"));
        out.push(RenderedTerm {
            coeff: b_sin,
            factors,
        });
    }
    out
}
