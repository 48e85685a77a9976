//! Lowering of parsed surface expressions into exponential polynomials.
//!
//! Trigonometric and hyperbolic nodes are eliminated by Euler expansion:
//!
//! ```text
//! sin(θ)  = (e^(iθ) - e^(-iθ)) / 2i      cos(θ)  = (e^(iθ) + e^(-iθ)) / 2
//! sinh(θ) = (e^θ - e^(-θ)) / 2           cosh(θ) = (e^θ + e^(-θ)) / 2
//! ```
//!
//! `alpha` is handled by lowering into a polynomial in alpha whose
//! coefficients are exponential polynomials; fully crisp inputs are the
//! degree-zero case.

use crate::scalar::{ratio, GaussRat, Rational};
use crate::symexpr::ast::{Affine, SurfaceExpr, TrigFn};
use crate::symexpr::{ExpPolyExpr, Var};
use num::traits::Zero;
use std::fmt;

/// A polynomial in alpha with [`ExpPolyExpr`] coefficients, stored densely by
/// alpha power with no trailing zero slices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlphaExpPoly {
    slices: Vec<ExpPolyExpr>,
}

impl AlphaExpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_expr(e: ExpPolyExpr) -> Self {
        let mut p = AlphaExpPoly { slices: vec![e] };
        p.trim();
        p
    }

    /// Builds from per-power slices (index = alpha power).
    pub fn from_slices(slices: Vec<ExpPolyExpr>) -> Self {
        let mut p = AlphaExpPoly { slices };
        p.trim();
        p
    }

    pub fn alpha() -> Self {
        AlphaExpPoly {
            slices: vec![ExpPolyExpr::zero(), ExpPolyExpr::one()],
        }
    }

    fn trim(&mut self) {
        while self.slices.last().is_some_and(|s| s.is_zero()) {
            self.slices.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.slices.is_empty()
    }

    /// Degree in alpha, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.slices.len().checked_sub(1)
    }

    /// Coefficient of `alpha^k` (zero when absent).
    pub fn slice(&self, k: usize) -> ExpPolyExpr {
        self.slices.get(k).cloned().unwrap_or_default()
    }

    /// Non-zero `(alpha_power, coefficient)` pairs in increasing power order.
    pub fn slices(&self) -> impl Iterator<Item = (usize, &ExpPolyExpr)> {
        self.slices
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.slices.len().max(rhs.slices.len());
        let mut slices = Vec::with_capacity(n);
        for k in 0..n {
            slices.push(self.slice(k).add(&rhs.slice(k)));
        }
        let mut out = AlphaExpPoly { slices };
        out.trim();
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        AlphaExpPoly {
            slices: self.slices.iter().map(|s| s.neg()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut slices =
            vec![ExpPolyExpr::zero(); self.slices.len() + rhs.slices.len() - 1];
        for (i, a) in self.slices.iter().enumerate() {
            for (j, b) in rhs.slices.iter().enumerate() {
                slices[i + j] = slices[i + j].add(&a.mul(b));
            }
        }
        let mut out = AlphaExpPoly { slices };
        out.trim();
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::from_expr(ExpPolyExpr::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Evaluates the alpha polynomial at a numeric alpha and spatial point.
    pub fn eval(&self, x: f64, y: f64, alpha: f64) -> num::complex::Complex64 {
        let mut acc = num::complex::Complex64::new(0.0, 0.0);
        let mut apow = 1.0;
        for s in &self.slices {
            acc += s.eval(x, y) * apow;
            apow *= alpha;
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LowerError {
    /// `alpha` appeared where a crisp spatial expression was required.
    AlphaNotAllowed,
}

impl fmt::Display for LowerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowerError::AlphaNotAllowed => {
                write!(f, "alpha is not allowed in a crisp spatial expression")
            }
        }
    }
}

impl std::error::Error for LowerError {}

/// Lowers an alpha-free AST into a single exponential polynomial.
pub fn lower_to_exp_poly(ast: &SurfaceExpr) -> Result<ExpPolyExpr, LowerError> {
    if ast.contains_alpha() {
        return Err(LowerError::AlphaNotAllowed);
    }
    Ok(lower_with_alpha(ast).slice(0))
}

/// Lowers an AST into a polynomial in alpha with exponential-polynomial
/// coefficients. Total: the parser already bans alpha inside exponents.
pub fn lower_with_alpha(ast: &SurfaceExpr) -> AlphaExpPoly {
    match ast {
        SurfaceExpr::Number(r) => {
            AlphaExpPoly::from_expr(ExpPolyExpr::constant(GaussRat::from_rational(r.clone())))
        }
        SurfaceExpr::ImagUnit => AlphaExpPoly::from_expr(ExpPolyExpr::constant(GaussRat::i())),
        SurfaceExpr::Var(v) => AlphaExpPoly::from_expr(ExpPolyExpr::var(*v)),
        SurfaceExpr::Alpha => AlphaExpPoly::alpha(),
        SurfaceExpr::Add(a, b) => lower_with_alpha(a).add(&lower_with_alpha(b)),
        SurfaceExpr::Sub(a, b) => lower_with_alpha(a).sub(&lower_with_alpha(b)),
        SurfaceExpr::Mul(a, b) => lower_with_alpha(a).mul(&lower_with_alpha(b)),
        SurfaceExpr::Pow(a, k) => lower_with_alpha(a).pow(*k),
        SurfaceExpr::Exp(aff) => AlphaExpPoly::from_expr(exp_affine(aff)),
        SurfaceExpr::Trig(f, aff) => AlphaExpPoly::from_expr(euler_expand(*f, aff)),
    }
}

fn exp_affine(aff: &Affine) -> ExpPolyExpr {
    ExpPolyExpr::exponential(
        GaussRat::from_rational(aff.xrate.clone()),
        GaussRat::from_rational(aff.yrate.clone()),
    )
}

fn euler_expand(f: TrigFn, aff: &Affine) -> ExpPolyExpr {
    let a = &aff.xrate;
    let b = &aff.yrate;
    let real = |r: &Rational| GaussRat::from_rational(r.clone());
    let imag = |r: &Rational| GaussRat::new(Rational::zero(), r.clone());
    let half = GaussRat::from_ratio(1, 2);
    // 1/(2i) = -i/2
    let half_over_i = GaussRat::new(Rational::zero(), ratio(-1, 2));
    match f {
        TrigFn::Sin => {
            // (e^(iθ) - e^(-iθ)) * (-i/2)
            let plus = ExpPolyExpr::exponential(imag(a), imag(b)).scale(&half_over_i);
            let minus =
                ExpPolyExpr::exponential(-imag(a), -imag(b)).scale(&-half_over_i.clone());
            plus.add(&minus)
        }
        TrigFn::Cos => {
            let plus = ExpPolyExpr::exponential(imag(a), imag(b)).scale(&half);
            let minus = ExpPolyExpr::exponential(-imag(a), -imag(b)).scale(&half);
            plus.add(&minus)
        }
        TrigFn::Sinh => {
            let plus = ExpPolyExpr::exponential(real(a), real(b)).scale(&half);
            let minus = ExpPolyExpr::exponential(-real(a), -real(b)).scale(&-half.clone());
            plus.add(&minus)
        }
        TrigFn::Cosh => {
            let plus = ExpPolyExpr::exponential(real(a), real(b)).scale(&half);
            let minus = ExpPolyExpr::exponential(-real(a), -real(b)).scale(&half);
            plus.add(&minus)
        }
    }
}

impl Var {
    pub fn other(&self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};
    use crate::symexpr::parse_expr;

    fn lower(text: &str) -> ExpPolyExpr {
        lower_to_exp_poly(&parse_expr(text).unwrap()).unwrap()
    }

    #[test]
    fn sin_euler_identity() {
        // sin(x) = (1/2i) e^(ix) - (1/2i) e^(-ix)
        let got = lower("sin(x)");
        let i = GaussRat::i();
        let minus_half_i = GaussRat::new(rat(0), ratio(-1, 2));
        let expected = ExpPolyExpr::exponential(i.clone(), GaussRat::zero())
            .scale(&minus_half_i)
            .add(
                &ExpPolyExpr::exponential(-i, GaussRat::zero())
                    .scale(&-minus_half_i.clone()),
            );
        assert_eq!(got, expected);
    }

    #[test]
    fn cosh_expansion() {
        let got = lower("cosh(x)");
        let half = GaussRat::from_ratio(1, 2);
        let expected = ExpPolyExpr::exponential(GaussRat::one(), GaussRat::zero())
            .scale(&half)
            .add(&ExpPolyExpr::exponential(-GaussRat::one(), GaussRat::zero()).scale(&half));
        assert_eq!(got, expected);
    }

    #[test]
    fn forcing_term_shape() {
        // e^(x+y)*(3 - x*y) lowers to two terms
        let got = lower("e^(x+y)*(3 - x*y)");
        assert_eq!(got.num_terms(), 2);
        let e = ExpPolyExpr::exponential(GaussRat::one(), GaussRat::one());
        let expected = e.scale(&GaussRat::from_int(3)).sub(&ExpPolyExpr::monomial(
            GaussRat::one(),
            1,
            1,
            GaussRat::one(),
            GaussRat::one(),
        ));
        assert_eq!(got, expected);
    }

    #[test]
    fn merged_form_is_deterministic() {
        let a = lower("sin(x)^2 + cos(x)^2");
        // Pythagorean identity collapses to 1 by exact cancellation
        assert_eq!(a, ExpPolyExpr::one());
        let b = lower("cos(x)*cos(y) - sin(x)*sin(y)");
        let c = lower("cos(x+y)");
        assert_eq!(b, c);
    }

    #[test]
    fn alpha_splitting() {
        let p = lower_with_alpha(&parse_expr("(2+alpha)*e^(x+y)").unwrap());
        assert_eq!(p.degree(), Some(1));
        let e = ExpPolyExpr::exponential(GaussRat::one(), GaussRat::one());
        assert_eq!(p.slice(0), e.scale(&GaussRat::from_int(2)));
        assert_eq!(p.slice(1), e);
    }

    #[test]
    fn alpha_rejected_in_crisp_context() {
        let ast = parse_expr("alpha*x").unwrap();
        assert_eq!(
            lower_to_exp_poly(&ast),
            Err(LowerError::AlphaNotAllowed)
        );
    }

    #[test]
    fn real_input_closure() {
        // a real surface expression lowers to a conjugation-closed expr whose
        // float evaluation has negligible imaginary part
        for text in ["sin(2*x+3*y)", "cos(x)*(1+x^2)", "sinh(x)+cosh(y)", "sin(x)*cos(y)"] {
            let e = lower(text);
            assert!(e.is_conjugation_closed(), "{text} not closed");
            let v = e.eval(0.7, 0.4);
            assert!(v.im.abs() <= 1e-12, "{text} -> imag {}", v.im);
        }
    }
}
