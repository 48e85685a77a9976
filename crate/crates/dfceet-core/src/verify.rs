//! Independent numerical oracle: substitutes a candidate solution into the
//! original equation with composite Gauss-Legendre quadrature for the
//! convolution integral and exact symbolic derivatives, and reports the
//! residual over a grid of (x, y, alpha). Also cross-checks forward
//! transforms against the defining integral for decaying integrands.
//!
//! The convolution path here shares no code with the symbolic convolution:
//! nothing but the kernel and solution evaluators enters the quadrature, so
//! agreement between the two routes is itself a meaningful check.
//! Derivatives are taken symbolically before evaluation, which leaves
//! quadrature as the only numeric error source; the truncation budget of
//! the improper-integral checks is `e^{Re(a) cutoff} * poly`, kept under
//! 1e-9 by the default cutoff.

use crate::fuzzy::Side;
use crate::scalar::Rational;
use crate::solver::{ProblemSpec, Solution};
use crate::symexpr::{AlphaExpPoly, CompiledExpPoly, ExpPolyExpr, Var};
use crate::transform::forward;
use num::complex::Complex64;
use num::traits::ToPrimitive;
use std::fmt;
use std::sync::OnceLock;

/// Nodes and weights of the 8-point Gauss-Legendre rule on [-1, 1],
/// computed once by Newton iteration on the Legendre recurrence.
fn gauss_legendre_8() -> &'static ([f64; 8], [f64; 8]) {
    static RULE: OnceLock<([f64; 8], [f64; 8])> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = 8usize;
        let mut nodes = [0.0; 8];
        let mut weights = [0.0; 8];
        for k in 0..n {
            // Chebyshev-like initial guess, then Newton
            let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..50 {
                let (p, dp) = legendre_and_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_and_derivative(n, x);
            nodes[k] = x;
            weights[k] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        (nodes, weights)
    })
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = pk;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Composite tensor Gauss-Legendre integral of `f` over `[0, x] x [0, y]`
/// with `panels` panels per axis (8 nodes per panel per axis).
pub fn quad2d_complex(
    f: impl Fn(f64, f64) -> Complex64,
    x: f64,
    y: f64,
    panels: usize,
) -> Complex64 {
    if x == 0.0 || y == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let (nodes, weights) = gauss_legendre_8();
    let panels = panels.max(1);
    let hx = x / panels as f64;
    let hy = y / panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for px in 0..panels {
        let cx = hx * px as f64 + hx / 2.0;
        for py in 0..panels {
            let cy = hy * py as f64 + hy / 2.0;
            for (ni, wi) in nodes.iter().zip(weights.iter()) {
                let tx = cx + ni * hx / 2.0;
                for (nj, wj) in nodes.iter().zip(weights.iter()) {
                    let ty = cy + nj * hy / 2.0;
                    acc += f(tx, ty) * (wi * wj);
                }
            }
        }
    }
    acc * (hx * hy / 4.0)
}

/// Real-valued variant; the imaginary part of the integrand is discarded
/// after accumulation.
pub fn quad2d(f: impl Fn(f64, f64) -> f64, x: f64, y: f64, panels: usize) -> f64 {
    quad2d_complex(|a, b| Complex64::new(f(a, b), 0.0), x, y, panels).re
}

/// Evaluation grid and tolerances of the residual oracle.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub alphas: Vec<f64>,
    pub tol: f64,
    pub panels: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            // interior points avoid trivial zero-measure convolutions
            xs: vec![0.1, 0.3, 0.5, 0.7, 0.9],
            ys: vec![0.1, 0.3, 0.5, 0.7, 0.9],
            alphas: (0..=10).map(|k| k as f64 / 10.0).collect(),
            tol: 1e-7,
            panels: 2,
        }
    }
}

/// Residual statistics of one side of the equation.
#[derive(Debug, Clone, Default)]
pub struct SideResiduals {
    pub max: f64,
    pub mean: f64,
    /// Grid point attaining the max, as (x, y, alpha).
    pub argmax: (f64, f64, f64),
}

#[derive(Debug, Clone)]
pub struct ResidualReport {
    pub lower: SideResiduals,
    pub upper: SideResiduals,
    pub grid_points: usize,
    pub tol: f64,
    pub panels: usize,
    pub pass: bool,
}

impl fmt::Display for ResidualReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "residual: lower max {:.3e} (mean {:.3e}), upper max {:.3e} (mean {:.3e})",
            self.lower.max, self.lower.mean, self.upper.max, self.upper.mean
        )?;
        write!(
            f,
            "grid {} points, {} panels/axis, tol {:.1e}: {}",
            self.grid_points,
            self.panels,
            self.tol,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

/// Initial-condition trace deviations.
#[derive(Debug, Clone)]
pub struct IcReport {
    pub max_deviation: f64,
    pub tol: f64,
    pub pass: bool,
    /// Condition attaining the max, e.g. "Phi_1 lower".
    pub argmax: String,
}

impl fmt::Display for IcReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "initial conditions: max deviation {:.3e} at {} (tol {:.1e}): {}",
            self.max_deviation,
            self.argmax,
            self.tol,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

fn eval_side(side: &AlphaExpPoly, x: f64, y: f64, alpha: f64) -> Complex64 {
    side.eval(x, y, alpha)
}

/// Substitutes the candidate into the equation and reports
/// `max |Σ a_h ∂^h w + Σ b_j ∂^j w + c w - g - K ** w|` over the grid. The
/// convolution is quadrature of the kernel against the candidate, sharing
/// nothing with the symbolic convolution. Each bound equation uses its own
/// side's components; the differentiability case enters through which data
/// the solution's traces match, not through the residual operator.
pub fn residual(p: &ProblemSpec, s: &Solution, cfg: &VerifyConfig) -> ResidualReport {
    let mut sides = Vec::new();
    for side in [Side::Lower, Side::Upper] {
        let w = s.value.side(side);
        let g = p.forcing.side(side);

        // exact symbolic operator application, one expression per slice
        let deg = w.degree().map_or(0, |d| d + 1);
        let mut operator_slices: Vec<ExpPolyExpr> = Vec::with_capacity(deg);
        for k in 0..deg {
            let wk = w.slice(k);
            let mut acc = wk.scale(&crate::scalar::GaussRat::from_rational(p.c.clone()));
            for (h, a) in p.x_coeffs.iter().enumerate() {
                if !num::traits::Zero::is_zero(a) {
                    acc = acc.add(
                        &wk.diff_n(Var::X, h as u32 + 1)
                            .scale(&crate::scalar::GaussRat::from_rational(a.clone())),
                    );
                }
            }
            for (j, b) in p.y_coeffs.iter().enumerate() {
                if !num::traits::Zero::is_zero(b) {
                    acc = acc.add(
                        &wk.diff_n(Var::Y, j as u32 + 1)
                            .scale(&crate::scalar::GaussRat::from_rational(b.clone())),
                    );
                }
            }
            operator_slices.push(acc);
        }
        let operator = AlphaExpPoly::from_slices(operator_slices);

        // precompiled evaluators keep the quadrature inner loop in floats
        let kernel = CompiledExpPoly::new(&p.kernel);
        let w_slices: Vec<CompiledExpPoly> =
            (0..deg).map(|k| CompiledExpPoly::new(&w.slice(k))).collect();

        let mut stats = SideResiduals::default();
        let mut count = 0usize;
        for &alpha in &cfg.alphas {
            for &x in &cfg.xs {
                for &y in &cfg.ys {
                    let lhs = eval_side(&operator, x, y, alpha);
                    let gval = eval_side(g, x, y, alpha);
                    let conv = quad2d_complex(
                        |tau, mu| {
                            let mut wval = Complex64::new(0.0, 0.0);
                            let mut apow = 1.0;
                            for slice in &w_slices {
                                wval += slice.eval(tau, mu) * apow;
                                apow *= alpha;
                            }
                            kernel.eval(x - tau, y - mu) * wval
                        },
                        x,
                        y,
                        cfg.panels,
                    );
                    let r = (lhs - gval - conv).norm();
                    count += 1;
                    stats.mean += r;
                    if r > stats.max {
                        stats.max = r;
                        stats.argmax = (x, y, alpha);
                    }
                }
            }
        }
        if count > 0 {
            stats.mean /= count as f64;
        }
        sides.push((stats, count));
    }
    let (upper, count) = sides.pop().unwrap();
    let (lower, _) = sides.pop().unwrap();
    let pass = lower.max <= cfg.tol && upper.max <= cfg.tol;
    ResidualReport {
        lower,
        upper,
        grid_points: count,
        tol: cfg.tol,
        panels: cfg.panels,
        pass,
    }
}

/// Checks the solution's traces against the declared initial conditions on
/// the grid. Under case (ii) each side's traces must match the opposite
/// side's conditions, mirroring the assembly.
pub fn check_ics(p: &ProblemSpec, s: &Solution, cfg: &VerifyConfig) -> IcReport {
    let mut max_dev: f64 = 0.0;
    let mut argmax = String::from("-");
    let mut update = |dev: f64, label: &str| {
        if dev > max_dev {
            max_dev = dev;
            argmax = label.to_string();
        }
    };
    for side in [Side::Lower, Side::Upper] {
        let data_side = p.case.ic_side(side);
        let side_name = match side {
            Side::Lower => "lower",
            Side::Upper => "upper",
        };
        for (h, phi) in p.x_ics.iter().enumerate() {
            let trace = s
                .value
                .side(side)
                .clone();
            let deg = trace.degree().map_or(0, |d| d + 1);
            let traced = AlphaExpPoly::from_slices(
                (0..deg)
                    .map(|k| trace.slice(k).diff_n(Var::X, h as u32).trace_at_zero(Var::X))
                    .collect(),
            );
            let expected = phi.side(data_side);
            for &alpha in &cfg.alphas {
                for &y in &cfg.ys {
                    let dev = (traced.eval(0.0, y, alpha) - expected.eval(0.0, y, alpha)).norm();
                    update(dev, &format!("Phi_{h} {side_name}"));
                }
            }
        }
        for (j, psi) in p.y_ics.iter().enumerate() {
            let trace = s.value.side(side).clone();
            let deg = trace.degree().map_or(0, |d| d + 1);
            let traced = AlphaExpPoly::from_slices(
                (0..deg)
                    .map(|k| trace.slice(k).diff_n(Var::Y, j as u32).trace_at_zero(Var::Y))
                    .collect(),
            );
            let expected = psi.side(data_side);
            for &alpha in &cfg.alphas {
                for &x in &cfg.xs {
                    let dev = (traced.eval(x, 0.0, alpha) - expected.eval(x, 0.0, alpha)).norm();
                    update(dev, &format!("Psi_{j} {side_name}"));
                }
            }
        }
    }
    IcReport {
        max_deviation: max_dev,
        tol: cfg.tol,
        pass: max_dev <= cfg.tol,
        argmax,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NumericCheckError {
    /// The defining integral only converges for decaying integrands.
    NonDecayingIntegrand,
}

impl fmt::Display for NumericCheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumericCheckError::NonDecayingIntegrand => {
                write!(f, "integrand does not decay; the defining integral diverges")
            }
        }
    }
}

impl std::error::Error for NumericCheckError {}

#[derive(Debug, Clone)]
pub struct ForwardCheck {
    pub numeric: Complex64,
    pub exact: Complex64,
    pub gap: f64,
}

/// Integrates the defining double integral of the transform for a decaying
/// exponential polynomial, truncated at `cutoff`, and compares against the
/// exact image evaluated at `U = i u^n, V = i v^n`.
pub fn numeric_forward_check(
    f: &ExpPolyExpr,
    u: f64,
    v: f64,
    n: i32,
    cutoff: f64,
    panels: usize,
) -> Result<ForwardCheck, NumericCheckError> {
    for t in f.terms() {
        let re_a = t.xrate.re.to_f64().unwrap_or(f64::INFINITY);
        let re_b = t.yrate.re.to_f64().unwrap_or(f64::INFINITY);
        if re_a >= 0.0 || re_b >= 0.0 {
            return Err(NumericCheckError::NonDecayingIntegrand);
        }
    }
    let un = u.powi(n);
    let vn = v.powi(n);
    let numeric = quad2d_complex(
        |x, y| f.eval(x, y) * Complex64::new(0.0, -(un * x + vn * y)).exp(),
        cutoff,
        cutoff,
        panels,
    );
    let exact = forward(f).eval_c64(Complex64::new(0.0, un), Complex64::new(0.0, vn));
    Ok(ForwardCheck {
        numeric,
        exact,
        gap: (numeric - exact).norm(),
    })
}

/// Rational alpha levels of a fuzzy grid as floats, for report serialization.
pub fn alphas_to_f64(alphas: &[Rational]) -> Vec<f64> {
    alphas.iter().map(|a| a.to_f64().unwrap()).collect()
}
