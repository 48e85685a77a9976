//! End-to-end closed-form solve of the partial Volterra fuzzy
//! integro-differential equation with convolution kernel
//!
//! ```text
//! Σ_h a_h ∂^h w/∂x^h + Σ_j b_j ∂^j w/∂y^j + c w
//!     = g + ∫_0^y ∫_0^x K(x-τ, y-μ) w(τ, μ) dτ dμ
//! ```
//!
//! with fuzzy forcing and fuzzy initial conditions. Under the positivity
//! hypotheses (a_h, b_j, c >= 0 with a nonzero leading set, K > 0) the lower
//! and upper bound equations decouple into crisp scalar problems; each one
//! transforms into an algebraic equation whose solution is
//!
//! ```text
//! ŵ = [ĝ + Σ_h a_h Σ_{k<h} U^(h-1-k) E{Φ_k} + Σ_j b_j Σ_{k<j} V^(j-1-k) E{Ψ_k}]
//!     / [Σ_h a_h U^h + Σ_j b_j V^j + c - K̂]
//! ```
//!
//! and inverts through reduction, separation and the table bijection.
//! Alpha weights ride through the linear pipeline symbolically, one slice
//! per alpha power. Under case (ii) differentiability the initial-condition
//! transforms swap sides (the lower equation consumes the upper conditions
//! and vice versa); the forcing term does not swap.

use crate::fuzzy::{AlphaPoly, FuzzyFunction, FuzzyViolation, Side, ValidityGrid};
use crate::ratfunc::{separate_with_bound, BiPoly, BiRat, RatFuncError, TransformExpr};
use crate::scalar::{GaussRat, Rational};
use crate::symexpr::{AlphaExpPoly, ExpPolyExpr, Var};
use crate::transform::{
    derivative_image, forward, forward_single, inverse, SingleTransformExpr, TransformError,
};
use num::traits::{Signed, Zero};
use std::fmt;

/// Strongly generalized differentiability case declared by the user:
/// case (i) keeps derivative bounds in order, case (ii) swaps them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffCase {
    I,
    II,
}

impl DiffCase {
    /// Which side's initial conditions feed the equation for `side`.
    pub fn ic_side(&self, side: Side) -> Side {
        match self {
            DiffCase::I => side,
            DiffCase::II => side.opposite(),
        }
    }
}

/// Full problem statement.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    /// Highest x-derivative order l >= 1.
    pub x_order: u32,
    /// Highest y-derivative order m >= 1.
    pub y_order: u32,
    /// a_1..a_l.
    pub x_coeffs: Vec<Rational>,
    /// b_1..b_m.
    pub y_coeffs: Vec<Rational>,
    pub c: Rational,
    /// Crisp convolution kernel K, required positive.
    pub kernel: ExpPolyExpr,
    pub forcing: FuzzyFunction,
    /// Φ_0..Φ_{l-1}: traces ∂^h w(0, y)/∂x^h, functions of y.
    pub x_ics: Vec<FuzzyFunction>,
    /// Ψ_0..Ψ_{m-1}: traces ∂^j w(x, 0)/∂y^j, functions of x.
    pub y_ics: Vec<FuzzyFunction>,
    pub case: DiffCase,
    /// Carried for display only; the algebra is independent of n.
    pub n_display: i64,
}

/// Knobs for validation and inversion.
#[derive(Debug, Clone)]
pub struct SolverOptions {
    pub grid: ValidityGrid,
    pub max_order: u32,
    pub snap_bound: u32,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            grid: ValidityGrid::default(),
            max_order: 4,
            snap_bound: crate::ratfunc::DEFAULT_SNAP_DENOMINATOR,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpecViolation {
    NegativeCoefficient { which: String },
    NoLeadingCoefficient,
    OrderOutOfRange { which: &'static str, order: u32, max: u32 },
    ArityMismatch { which: &'static str, expected: u32, got: usize },
    KernelNotPositive { x: f64, y: f64, value: f64 },
    KernelNotReal { x: f64, y: f64 },
    IcWrongVariable { which: String },
    InvalidFuzzyInput { which: String, violation: FuzzyViolation },
}

impl fmt::Display for SpecViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecViolation::NegativeCoefficient { which } => {
                write!(f, "NegativeCoefficient: {which}")
            }
            SpecViolation::NoLeadingCoefficient => write!(
                f,
                "at least one of the leading x/y coefficients or c must be strictly positive"
            ),
            SpecViolation::OrderOutOfRange { which, order, max } => {
                write!(f, "{which} order {order} outside 1..={max}")
            }
            SpecViolation::ArityMismatch {
                which,
                expected,
                got,
            } => write!(f, "{which}: expected {expected} entries, got {got}"),
            SpecViolation::KernelNotPositive { x, y, value } => {
                write!(f, "KernelNotPositive at ({x}, {y}): {value}")
            }
            SpecViolation::KernelNotReal { x, y } => {
                write!(f, "kernel is not real-valued at ({x}, {y})")
            }
            SpecViolation::IcWrongVariable { which } => {
                write!(f, "{which} depends on the wrong spatial variable")
            }
            SpecViolation::InvalidFuzzyInput { which, violation } => {
                write!(f, "{which}: {violation}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SolveError {
    Validation(Vec<SpecViolation>),
    /// The transform-domain denominator is identically zero.
    ZeroDenominator,
    /// Reduction left a denominator outside the invertible class.
    NotSolvable(RatFuncError),
    /// The recombined solution violates lower <= upper.
    InvalidFuzzyResult(FuzzyViolation),
    /// A slice failed conjugate pairing; indicates an upstream defect.
    ResidualImaginaryPart { term: String },
    Transform(TransformError),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::Validation(violations) => {
                write!(f, "invalid problem:")?;
                for v in violations {
                    write!(f, " [{v}]")?;
                }
                Ok(())
            }
            SolveError::ZeroDenominator => {
                write!(f, "transform-domain denominator is identically zero")
            }
            SolveError::NotSolvable(e) => {
                write!(f, "not solvable in exponential-polynomial class: {e}")
            }
            SolveError::InvalidFuzzyResult(v) => {
                write!(f, "solution is not a valid fuzzy function: {v}")
            }
            SolveError::ResidualImaginaryPart { term } => {
                write!(f, "residual imaginary part in solution term {term}")
            }
            SolveError::Transform(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SolveError {}

impl From<RatFuncError> for SolveError {
    fn from(e: RatFuncError) -> Self {
        SolveError::NotSolvable(e)
    }
}

impl From<TransformError> for SolveError {
    fn from(e: TransformError) -> Self {
        SolveError::Transform(e)
    }
}

/// Closed-form solution plus the transform-domain audit trail.
#[derive(Debug, Clone)]
pub struct Solution {
    pub value: FuzzyFunction,
    /// Per side, the separated transform-domain image of each alpha slice.
    pub transform_lower: Vec<(AlphaPoly, TransformExpr)>,
    pub transform_upper: Vec<(AlphaPoly, TransformExpr)>,
}

/// Checks every problem hypothesis; returns the full list of violations.
pub fn validate_spec(p: &ProblemSpec, opts: &SolverOptions) -> Result<(), Vec<SpecViolation>> {
    let mut out = Vec::new();
    for (which, order) in [("x", p.x_order), ("y", p.y_order)] {
        if order < 1 || order > opts.max_order {
            out.push(SpecViolation::OrderOutOfRange {
                which: if which == "x" { "x" } else { "y" },
                order,
                max: opts.max_order,
            });
        }
    }
    if p.x_coeffs.len() != p.x_order as usize {
        out.push(SpecViolation::ArityMismatch {
            which: "a coefficients",
            expected: p.x_order,
            got: p.x_coeffs.len(),
        });
    }
    if p.y_coeffs.len() != p.y_order as usize {
        out.push(SpecViolation::ArityMismatch {
            which: "b coefficients",
            expected: p.y_order,
            got: p.y_coeffs.len(),
        });
    }
    if p.x_ics.len() != p.x_order as usize {
        out.push(SpecViolation::ArityMismatch {
            which: "x initial conditions",
            expected: p.x_order,
            got: p.x_ics.len(),
        });
    }
    if p.y_ics.len() != p.y_order as usize {
        out.push(SpecViolation::ArityMismatch {
            which: "y initial conditions",
            expected: p.y_order,
            got: p.y_ics.len(),
        });
    }
    for (h, a) in p.x_coeffs.iter().enumerate() {
        if a.is_negative() {
            out.push(SpecViolation::NegativeCoefficient {
                which: format!("a_{}", h + 1),
            });
        }
    }
    for (j, b) in p.y_coeffs.iter().enumerate() {
        if b.is_negative() {
            out.push(SpecViolation::NegativeCoefficient {
                which: format!("b_{}", j + 1),
            });
        }
    }
    if p.c.is_negative() {
        out.push(SpecViolation::NegativeCoefficient { which: "c".into() });
    }
    let leading_positive = p.x_coeffs.last().is_some_and(|a| a.is_positive())
        || p.y_coeffs.last().is_some_and(|b| b.is_positive())
        || p.c.is_positive();
    if !leading_positive {
        out.push(SpecViolation::NoLeadingCoefficient);
    }

    for &x in &opts.grid.xs {
        for &y in &opts.grid.ys {
            let k = p.kernel.eval(x, y);
            if k.im.abs() > 1e-9 * (1.0 + k.norm()) {
                out.push(SpecViolation::KernelNotReal { x, y });
            } else if k.re <= 0.0 {
                out.push(SpecViolation::KernelNotPositive {
                    x,
                    y,
                    value: k.re,
                });
            }
        }
    }

    if let Err(violation) = p.forcing.validate(&opts.grid) {
        out.push(SpecViolation::InvalidFuzzyInput {
            which: "g".into(),
            violation,
        });
    }
    for (t, phi) in p.x_ics.iter().enumerate() {
        if fuzzy_depends_on(phi, Var::X) {
            out.push(SpecViolation::IcWrongVariable {
                which: format!("Phi_{t}"),
            });
        }
        if let Err(violation) = phi.validate(&opts.grid) {
            out.push(SpecViolation::InvalidFuzzyInput {
                which: format!("Phi_{t}"),
                violation,
            });
        }
    }
    for (t, psi) in p.y_ics.iter().enumerate() {
        if fuzzy_depends_on(psi, Var::Y) {
            out.push(SpecViolation::IcWrongVariable {
                which: format!("Psi_{t}"),
            });
        }
        if let Err(violation) = psi.validate(&opts.grid) {
            out.push(SpecViolation::InvalidFuzzyInput {
                which: format!("Psi_{t}"),
                violation,
            });
        }
    }

    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

fn fuzzy_depends_on(f: &FuzzyFunction, v: Var) -> bool {
    let check = |p: &AlphaExpPoly| p.slices().any(|(_, e)| e.depends_on(v));
    check(&f.lower) || check(&f.upper)
}

/// The transform-domain denominator `Σ a_h U^h + Σ b_j V^j + c - K̂`.
fn denominator(p: &ProblemSpec) -> Result<BiRat, SolveError> {
    let mut poly = BiPoly::constant(GaussRat::from_rational(p.c.clone()));
    for (h, a) in p.x_coeffs.iter().enumerate() {
        poly = poly.add(&BiPoly::monomial(
            GaussRat::from_rational(a.clone()),
            h as u32 + 1,
            0,
        ));
    }
    for (j, b) in p.y_coeffs.iter().enumerate() {
        poly = poly.add(&BiPoly::monomial(
            GaussRat::from_rational(b.clone()),
            0,
            j as u32 + 1,
        ));
    }
    let den = BiRat::from_poly(poly).sub(&forward(&p.kernel).to_birat());
    if den.is_zero() {
        return Err(SolveError::ZeroDenominator);
    }
    Ok(den)
}

/// Assembles the transform-domain solution `ŵ` of one side, one reduced
/// rational function per alpha power.
pub fn assemble(p: &ProblemSpec, side: Side) -> Result<Vec<(usize, BiRat)>, SolveError> {
    let den = denominator(p)?;
    let ic_side = p.case.ic_side(side);

    let g_side = p.forcing.side(side);
    let mut max_k = g_side.degree().map_or(0, |d| d + 1);
    for ic in p.x_ics.iter().chain(p.y_ics.iter()) {
        max_k = max_k.max(ic.side(ic_side).degree().map_or(0, |d| d + 1));
    }

    let mut out = Vec::new();
    for k in 0..max_k {
        let mut numerator = forward(&g_side.slice(k)).to_birat();

        // x-derivative boundary sums: a_h [Σ_{t<h} U^(h-1-t) E{Φ_t}]
        let phi_hats: Vec<SingleTransformExpr> = p
            .x_ics
            .iter()
            .map(|phi| forward_single(&phi.side(ic_side).slice(k), Var::Y))
            .collect::<Result<_, _>>()?;
        for (h, a) in p.x_coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let order = h as u32 + 1;
            let image = derivative_image(Var::X, order, &phi_hats[..order as usize])?;
            numerator =
                numerator.add(&image.boundary.scale(&GaussRat::from_rational(a.clone())));
        }

        let psi_hats: Vec<SingleTransformExpr> = p
            .y_ics
            .iter()
            .map(|psi| forward_single(&psi.side(ic_side).slice(k), Var::X))
            .collect::<Result<_, _>>()?;
        for (j, b) in p.y_coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let order = j as u32 + 1;
            let image = derivative_image(Var::Y, order, &psi_hats[..order as usize])?;
            numerator =
                numerator.add(&image.boundary.scale(&GaussRat::from_rational(b.clone())));
        }

        if numerator.is_zero() {
            continue;
        }
        let what = numerator.checked_div(&den).expect("denominator nonzero");
        out.push((k, what));
    }
    Ok(out)
}

/// Verifies that a slice denotes a real-valued function: every term must
/// have a conjugate partner (and real-rate terms a real coefficient). The
/// stored form is unchanged; conjugate pairs stay as they are.
pub fn realify(f: &ExpPolyExpr) -> Result<ExpPolyExpr, SolveError> {
    if f.is_conjugation_closed() {
        return Ok(f.clone());
    }
    // f - conj(f) exposes the unpaired imaginary content; report its first term
    let offending = f
        .sub(&f.conj())
        .terms()
        .next()
        .map(|t| {
            format!(
                "({})*x^{}*y^{}*e^(({})x+({})y)",
                t.coeff, t.xpow, t.ypow, t.xrate, t.yrate
            )
        })
        .unwrap_or_default();
    Err(SolveError::ResidualImaginaryPart { term: offending })
}

/// Validates the spec, then runs the pipeline.
pub fn solve(p: &ProblemSpec, opts: &SolverOptions) -> Result<Solution, SolveError> {
    validate_spec(p, opts).map_err(SolveError::Validation)?;
    let solution = solve_unchecked(p, opts)?;
    solution
        .value
        .validate(&opts.grid)
        .map_err(SolveError::InvalidFuzzyResult)?;
    Ok(solution)
}

/// The pipeline without input or output validity gating. Used by tests that
/// exercise algebraic identities on data that intentionally violates the
/// fuzzy ordering hypotheses.
pub fn solve_unchecked(p: &ProblemSpec, opts: &SolverOptions) -> Result<Solution, SolveError> {
    let mut sides: Vec<(AlphaExpPoly, Vec<(AlphaPoly, TransformExpr)>)> = Vec::new();
    for side in [Side::Lower, Side::Upper] {
        let slices = assemble(p, side)?;
        let mut spatial: Vec<ExpPolyExpr> = Vec::new();
        let mut audit = Vec::new();
        for (k, what) in slices {
            let separated = separate_with_bound(&what, opts.snap_bound)?;
            let expr = realify(&inverse(&separated))?;
            if spatial.len() <= k {
                spatial.resize(k + 1, ExpPolyExpr::zero());
            }
            spatial[k] = expr;
            audit.push((AlphaPoly::monomial(k), separated));
        }
        sides.push((AlphaExpPoly::from_slices(spatial), audit));
    }
    let (upper_poly, upper_audit) = sides.pop().unwrap();
    let (lower_poly, lower_audit) = sides.pop().unwrap();
    Ok(Solution {
        value: FuzzyFunction::new(lower_poly, upper_poly),
        transform_lower: lower_audit,
        transform_upper: upper_audit,
    })
}
