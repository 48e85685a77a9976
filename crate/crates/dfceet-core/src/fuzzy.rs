//! Fuzzy numbers in alpha-parametric form and fuzzy-valued functions of
//! (x, y).
//!
//! A fuzzy scalar is a pair of polynomial bound functions
//! `(lower(alpha), upper(alpha))` on `[0, 1]`; a fuzzy function carries an
//! exponential-polynomial spatial slice per alpha power on each side.
//! Validity (lower <= upper, lower non-decreasing, upper non-increasing) is
//! certified on a configurable grid: the bound functions in scope are
//! low-degree polynomials, so a fixed grid is an adequate, cheap check.
//!
//! Subtraction is componentwise, which coincides with the Hukuhara
//! difference whenever that difference exists, and fails loudly (validity
//! check on the result) when it does not. Multiplication is evaluated
//! pointwise per alpha level because the min/max of four polynomial products
//! is generally not a polynomial.

use crate::scalar::{rational_to_string, Rational};
use crate::symexpr::{AlphaExpPoly, ExpPolyExpr, SurfaceExpr, Var};
use num::traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Univariate polynomial in alpha over the rationals, minimal degree
/// (no trailing zero coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlphaPoly {
    coeffs: Vec<Rational>,
}

impl AlphaPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = AlphaPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = AlphaPoly { coeffs };
        p.trim();
        p
    }

    /// `alpha^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        AlphaPoly { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, alpha: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * alpha + c;
        }
        acc
    }

    pub fn eval_f64(&self, alpha: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * alpha + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        AlphaPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl fmt::Display for AlphaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let mag = c.abs();
            match k {
                0 => write!(f, "{}", rational_to_string(&mag))?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", rational_to_string(&mag))?;
                    }
                    if k == 1 {
                        write!(f, "alpha")?;
                    } else {
                        write!(f, "alpha^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// A fuzzy number `(lower(alpha), upper(alpha))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzyScalar {
    pub lower: AlphaPoly,
    pub upper: AlphaPoly,
}

impl FuzzyScalar {
    pub fn new(lower: AlphaPoly, upper: AlphaPoly) -> Self {
        FuzzyScalar { lower, upper }
    }

    /// Embeds a crisp real number.
    pub fn crisp(r: Rational) -> Self {
        FuzzyScalar {
            lower: AlphaPoly::constant(r.clone()),
            upper: AlphaPoly::constant(r),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        FuzzyScalar {
            lower: self.lower.add(&rhs.lower),
            upper: self.upper.add(&rhs.upper),
        }
    }

    /// Componentwise subtraction; errors when the result is not a valid
    /// fuzzy number (the Hukuhara difference does not exist).
    pub fn sub(&self, rhs: &Self, grid: &ValidityGrid) -> Result<Self, FuzzyViolation> {
        let out = FuzzyScalar {
            lower: self.lower.sub(&rhs.lower),
            upper: self.upper.sub(&rhs.upper),
        };
        out.validate(grid)?;
        Ok(out)
    }

    /// Interval product per grid alpha: (min, max) of the four products of
    /// the evaluated bounds, exactly.
    pub fn mul_interval(
        &self,
        rhs: &Self,
        grid: &ValidityGrid,
    ) -> Vec<(Rational, (Rational, Rational))> {
        grid.alphas
            .iter()
            .map(|alpha| {
                let vl = self.lower.eval(alpha);
                let vu = self.upper.eval(alpha);
                let zl = rhs.lower.eval(alpha);
                let zu = rhs.upper.eval(alpha);
                let products = [&vl * &zl, &vl * &zu, &vu * &zl, &vu * &zu];
                let min = products.iter().min().unwrap().clone();
                let max = products.iter().max().unwrap().clone();
                (alpha.clone(), (min, max))
            })
            .collect()
    }

    /// Checks the fuzzy-number conditions on the alpha grid: bounds ordered,
    /// lower non-decreasing, upper non-increasing.
    pub fn validate(&self, grid: &ValidityGrid) -> Result<(), FuzzyViolation> {
        let mut prev: Option<(Rational, Rational, Rational)> = None;
        for alpha in &grid.alphas {
            let lo = self.lower.eval(alpha);
            let hi = self.upper.eval(alpha);
            if lo > hi {
                return Err(FuzzyViolation::BoundsOrder {
                    alpha: alpha.clone(),
                    point: None,
                });
            }
            if let Some((pa, plo, phi)) = prev {
                let _ = pa;
                if lo < plo {
                    return Err(FuzzyViolation::LowerDecreasing {
                        alpha: alpha.clone(),
                    });
                }
                if hi > phi {
                    return Err(FuzzyViolation::UpperIncreasing {
                        alpha: alpha.clone(),
                    });
                }
            }
            prev = Some((alpha.clone(), lo, hi));
        }
        Ok(())
    }
}

/// A fuzzy-valued function of (x, y): per side, a polynomial in alpha whose
/// coefficients are crisp exponential polynomials. The `pairs` accessors
/// expose the `(alpha weight, spatial function)` decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzyFunction {
    pub lower: AlphaExpPoly,
    pub upper: AlphaExpPoly,
}

/// First violation found when certifying fuzzy validity.
#[derive(Debug, Clone, PartialEq)]
pub enum FuzzyViolation {
    BoundsOrder {
        alpha: Rational,
        point: Option<(f64, f64)>,
    },
    LowerDecreasing {
        alpha: Rational,
    },
    UpperIncreasing {
        alpha: Rational,
    },
    /// A bound evaluated with a non-negligible imaginary part.
    NonRealValue {
        alpha: Rational,
        point: (f64, f64),
    },
}

impl fmt::Display for FuzzyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FuzzyViolation::BoundsOrder { alpha, point } => match point {
                Some((x, y)) => write!(
                    f,
                    "lower bound exceeds upper bound at alpha = {}, (x, y) = ({x}, {y})",
                    rational_to_string(alpha)
                ),
                None => write!(
                    f,
                    "lower bound exceeds upper bound at alpha = {}",
                    rational_to_string(alpha)
                ),
            },
            FuzzyViolation::LowerDecreasing { alpha } => write!(
                f,
                "lower bound decreases at alpha = {}",
                rational_to_string(alpha)
            ),
            FuzzyViolation::UpperIncreasing { alpha } => write!(
                f,
                "upper bound increases at alpha = {}",
                rational_to_string(alpha)
            ),
            FuzzyViolation::NonRealValue { alpha, point } => write!(
                f,
                "bound is not real-valued at alpha = {}, (x, y) = ({}, {})",
                rational_to_string(alpha),
                point.0,
                point.1
            ),
        }
    }
}

impl std::error::Error for FuzzyViolation {}

/// Grid on which fuzzy validity is certified.
#[derive(Debug, Clone)]
pub struct ValidityGrid {
    pub alphas: Vec<Rational>,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
}

impl Default for ValidityGrid {
    fn default() -> Self {
        let alphas = (0..=10).map(|k| Rational::new(k.into(), 10.into())).collect();
        let spatial = vec![0.0, 0.25, 0.5, 0.75, 1.0];
        ValidityGrid {
            alphas,
            xs: spatial.clone(),
            ys: spatial,
        }
    }
}

/// Absolute slack for float comparisons of spatial bound values; exact ties
/// (crisp data) must not be reported as violations.
const EVAL_EPS: f64 = 1e-9;

impl FuzzyFunction {
    pub fn new(lower: AlphaExpPoly, upper: AlphaExpPoly) -> Self {
        FuzzyFunction { lower, upper }
    }

    /// Embeds a crisp spatial function.
    pub fn crisp(e: ExpPolyExpr) -> Self {
        FuzzyFunction {
            lower: AlphaExpPoly::from_expr(e.clone()),
            upper: AlphaExpPoly::from_expr(e),
        }
    }

    pub fn zero() -> Self {
        FuzzyFunction {
            lower: AlphaExpPoly::zero(),
            upper: AlphaExpPoly::zero(),
        }
    }

    /// Builds from per-side ASTs (alpha polynomial in crisp spatial terms)
    /// and certifies validity on the grid.
    pub fn build(
        lower_ast: &SurfaceExpr,
        upper_ast: &SurfaceExpr,
        grid: &ValidityGrid,
    ) -> Result<Self, FuzzyViolation> {
        let f = FuzzyFunction {
            lower: crate::symexpr::lower_with_alpha(lower_ast),
            upper: crate::symexpr::lower_with_alpha(upper_ast),
        };
        f.validate(grid)?;
        Ok(f)
    }

    /// `(alpha^k, spatial slice)` pairs of one side.
    pub fn pairs(&self, side: Side) -> Vec<(AlphaPoly, ExpPolyExpr)> {
        self.side(side)
            .slices()
            .map(|(k, e)| (AlphaPoly::monomial(k), e.clone()))
            .collect()
    }

    pub fn side(&self, side: Side) -> &AlphaExpPoly {
        match side {
            Side::Lower => &self.lower,
            Side::Upper => &self.upper,
        }
    }

    pub fn swap_sides(&self) -> Self {
        FuzzyFunction {
            lower: self.upper.clone(),
            upper: self.lower.clone(),
        }
    }

    pub fn is_crisp(&self) -> bool {
        self.lower == self.upper
    }

    /// Applies an exponential-polynomial map to every slice of both sides.
    pub fn map_slices(&self, f: impl Fn(&ExpPolyExpr) -> ExpPolyExpr) -> Self {
        let map = |p: &AlphaExpPoly| {
            let deg = p.degree().map_or(0, |d| d + 1);
            let mut slices = Vec::with_capacity(deg);
            for k in 0..deg {
                slices.push(f(&p.slice(k)));
            }
            AlphaExpPoly::from_slices(slices)
        };
        FuzzyFunction {
            lower: map(&self.lower),
            upper: map(&self.upper),
        }
    }

    pub fn diff_n(&self, v: Var, order: u32) -> Self {
        self.map_slices(|e| e.diff_n(v, order))
    }

    pub fn trace_at_zero(&self, v: Var) -> Self {
        self.map_slices(|e| e.trace_at_zero(v))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        FuzzyFunction {
            lower: self.lower.add(&rhs.lower),
            upper: self.upper.add(&rhs.upper),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        FuzzyFunction {
            lower: self.lower.sub(&rhs.lower),
            upper: self.upper.sub(&rhs.upper),
        }
    }

    /// Certifies lower <= upper at every (alpha, x, y) grid point, and that
    /// both sides evaluate real.
    pub fn validate(&self, grid: &ValidityGrid) -> Result<(), FuzzyViolation> {
        for alpha in &grid.alphas {
            let af = alpha.to_f64().unwrap();
            for &x in &grid.xs {
                for &y in &grid.ys {
                    let lo = self.lower.eval(x, y, af);
                    let hi = self.upper.eval(x, y, af);
                    let scale = 1.0 + lo.norm().max(hi.norm());
                    if lo.im.abs() > EVAL_EPS * scale || hi.im.abs() > EVAL_EPS * scale {
                        return Err(FuzzyViolation::NonRealValue {
                            alpha: alpha.clone(),
                            point: (x, y),
                        });
                    }
                    if lo.re > hi.re + EVAL_EPS * scale {
                        return Err(FuzzyViolation::BoundsOrder {
                            alpha: alpha.clone(),
                            point: Some((x, y)),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Which bound of a fuzzy quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

impl Side {
    pub fn opposite(&self) -> Side {
        match self {
            Side::Lower => Side::Upper,
            Side::Upper => Side::Lower,
        }
    }
}

/// Renders one side of a fuzzy function in the input grammar, factoring a
/// common spatial part out of the alpha slices when one exists (the usual
/// presentation, e.g. `(2 + alpha)*e^(x+y)`).
pub fn render_fuzzy_side(side: &AlphaExpPoly) -> Result<String, crate::symexpr::RenderError> {
    if side.is_zero() {
        return Ok("0".to_string());
    }
    if let Some((apoly, base)) = factor_common_spatial(side) {
        let base_str = crate::symexpr::render_expr(&base)?;
        if apoly.degree() == Some(0) && apoly.coeff(0).is_one() {
            return Ok(base_str);
        }
        let base_str = if has_top_level_sum(&base_str) {
            format!("({base_str})")
        } else {
            base_str
        };
        return Ok(format!("({apoly})*{base_str}"));
    }
    let mut parts = Vec::new();
    for (k, e) in side.slices() {
        let s = crate::symexpr::render_expr(e)?;
        let factor = match k {
            0 => format!("({s})"),
            1 => format!("({s})*alpha"),
            _ => format!("({s})*alpha^{k}"),
        };
        parts.push(factor);
    }
    Ok(parts.join(" + "))
}

/// Whether a rendered expression has a +/- outside all parentheses (and so
/// needs wrapping before being used as a product factor).
fn has_top_level_sum(s: &str) -> bool {
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '+' | '-' if depth == 0 && i > 0 => return true,
            '-' if depth == 0 => return true,
            _ => {}
        }
    }
    false
}

/// If every alpha slice is a rational multiple of a common spatial function,
/// returns `(alpha polynomial, base)` with the base normalized so its first
/// term has unit coefficient.
fn factor_common_spatial(side: &AlphaExpPoly) -> Option<(AlphaPoly, ExpPolyExpr)> {
    let slices: Vec<(usize, &ExpPolyExpr)> = side.slices().collect();
    let (_, first) = slices.first()?;
    let lead = first.terms().next().unwrap().coeff;
    if !lead.is_real() {
        return None;
    }
    let base = first.scale(&lead.inv().ok()?);
    let mut coeffs: Vec<Rational> = Vec::new();
    for (k, slice) in &slices {
        let c = slice.terms().next().unwrap().coeff;
        if &base.scale(&c) != *slice || !c.is_real() {
            return None;
        }
        if coeffs.len() <= *k {
            coeffs.resize(*k + 1, Rational::zero());
        }
        coeffs[*k] = c.re;
    }
    Some((AlphaPoly::from_coeffs(coeffs), base))
}
