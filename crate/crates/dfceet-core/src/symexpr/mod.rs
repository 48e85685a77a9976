//! Exponential polynomials over (x, y): finite sums of terms
//! `C * x^r * y^m * e^(a*x + b*y)` with Gaussian-rational data.
//!
//! The class is closed under addition, multiplication, differentiation and
//! exact double convolution, and it is in exact bijection with the separable
//! partial-fraction expressions of the transform domain. Trigonometric and
//! hyperbolic inputs are Euler-expanded into this class at lowering time, so
//! a single master formula covers the whole elementary-function table.

mod ast;
mod lower;
mod parser;
mod render;

pub use ast::{Affine, SurfaceExpr, TrigFn};
pub use lower::{lower_to_exp_poly, lower_with_alpha, AlphaExpPoly, LowerError};
pub use parser::{parse_expr, ParseError};
pub use render::{render_expr, RenderError};

use crate::scalar::GaussRat;
use num::complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

/// One of the two spatial variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
}

/// Canonical term key: polynomial powers and exponent rates. Two terms merge
/// exactly when their keys coincide.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TermKey {
    pub xpow: u32,
    pub ypow: u32,
    pub xrate: GaussRat,
    pub yrate: GaussRat,
}

/// A single monomial `coeff * x^xpow * y^ypow * e^(xrate*x + yrate*y)`.
/// Stored terms always have a nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpPolyTerm {
    pub coeff: GaussRat,
    pub xpow: u32,
    pub ypow: u32,
    pub xrate: GaussRat,
    pub yrate: GaussRat,
}

/// A finite sum of [`ExpPolyTerm`]s in merged form; the empty sum is the zero
/// function. Merging keeps structural equality equivalent to semantic
/// equality on this class.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExpPolyExpr {
    terms: BTreeMap<TermKey, GaussRat>,
}

pub(crate) fn factorial(n: u32) -> GaussRat {
    let mut acc = num::BigInt::from(1);
    for k in 2..=n as u64 {
        acc *= k;
    }
    GaussRat::from_rational(crate::scalar::Rational::from_integer(acc))
}

pub(crate) fn binomial(n: u32, k: u32) -> GaussRat {
    debug_assert!(k <= n);
    let mut acc = num::BigInt::from(1);
    for j in 0..k as u64 {
        acc = acc * (n as u64 - j) / (j + 1);
    }
    GaussRat::from_rational(crate::scalar::Rational::from_integer(acc))
}

fn c64_lossy(g: &GaussRat) -> Complex64 {
    g.to_c64().unwrap_or(Complex64::new(f64::INFINITY, 0.0))
}

impl ExpPolyExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut e = Self::zero();
        e.add_term(ExpPolyTerm {
            coeff: c,
            xpow: 0,
            ypow: 0,
            xrate: GaussRat::zero(),
            yrate: GaussRat::zero(),
        });
        e
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn var(v: Var) -> Self {
        let mut e = Self::zero();
        let (xpow, ypow) = match v {
            Var::X => (1, 0),
            Var::Y => (0, 1),
        };
        e.add_term(ExpPolyTerm {
            coeff: GaussRat::one(),
            xpow,
            ypow,
            xrate: GaussRat::zero(),
            yrate: GaussRat::zero(),
        });
        e
    }

    /// `e^(a*x + b*y)`.
    pub fn exponential(a: GaussRat, b: GaussRat) -> Self {
        let mut e = Self::zero();
        e.add_term(ExpPolyTerm {
            coeff: GaussRat::one(),
            xpow: 0,
            ypow: 0,
            xrate: a,
            yrate: b,
        });
        e
    }

    pub fn monomial(coeff: GaussRat, xpow: u32, ypow: u32, xrate: GaussRat, yrate: GaussRat) -> Self {
        let mut e = Self::zero();
        e.add_term(ExpPolyTerm {
            coeff,
            xpow,
            ypow,
            xrate,
            yrate,
        });
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = ExpPolyTerm> + '_ {
        self.terms.iter().map(|(k, c)| ExpPolyTerm {
            coeff: c.clone(),
            xpow: k.xpow,
            ypow: k.ypow,
            xrate: k.xrate.clone(),
            yrate: k.yrate.clone(),
        })
    }

    /// Adds one term, merging on the canonical key and dropping exact zeros.
    pub fn add_term(&mut self, t: ExpPolyTerm) {
        if t.coeff.is_zero() {
            return;
        }
        let key = TermKey {
            xpow: t.xpow,
            ypow: t.ypow,
            xrate: t.xrate,
            yrate: t.yrate,
        };
        let entry = self.terms.entry(key.clone()).or_insert_with(GaussRat::zero);
        *entry = &*entry + &t.coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for t in rhs.terms() {
            out.add_term(t);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero();
        for mut t in self.terms() {
            t.coeff = -t.coeff;
            out.add_term(t);
        }
        out
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        let mut out = Self::zero();
        for mut t in self.terms() {
            t.coeff = &t.coeff * c;
            out.add_term(t);
        }
        out
    }

    /// Product: exponent rates add, polynomial powers add.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for a in self.terms() {
            for b in rhs.terms() {
                out.add_term(ExpPolyTerm {
                    coeff: &a.coeff * &b.coeff,
                    xpow: a.xpow + b.xpow,
                    ypow: a.ypow + b.ypow,
                    xrate: &a.xrate + &b.xrate,
                    yrate: &a.yrate + &b.yrate,
                });
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
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

    /// Exact partial derivative; the class is closed under it.
    pub fn diff(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for t in self.terms() {
            match v {
                Var::X => {
                    if t.xpow > 0 {
                        out.add_term(ExpPolyTerm {
                            coeff: &t.coeff * &GaussRat::from_int(t.xpow as i64),
                            xpow: t.xpow - 1,
                            ..t.clone()
                        });
                    }
                    if !t.xrate.is_zero() {
                        out.add_term(ExpPolyTerm {
                            coeff: &t.coeff * &t.xrate,
                            ..t
                        });
                    }
                }
                Var::Y => {
                    if t.ypow > 0 {
                        out.add_term(ExpPolyTerm {
                            coeff: &t.coeff * &GaussRat::from_int(t.ypow as i64),
                            ypow: t.ypow - 1,
                            ..t.clone()
                        });
                    }
                    if !t.yrate.is_zero() {
                        out.add_term(ExpPolyTerm {
                            coeff: &t.coeff * &t.yrate,
                            ..t
                        });
                    }
                }
            }
        }
        out
    }

    pub fn diff_n(&self, v: Var, order: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..order {
            out = out.diff(v);
        }
        out
    }

    /// Machine evaluation of the sum.
    pub fn eval(&self, x: f64, y: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in self.terms() {
            let rate = c64_lossy(&t.xrate) * x + c64_lossy(&t.yrate) * y;
            acc += c64_lossy(&t.coeff) * x.powi(t.xpow as i32) * y.powi(t.ypow as i32) * rate.exp();
        }
        acc
    }

    /// Trace at `v = 0`: substitutes zero for one variable, collapsing its
    /// powers and rates. The result depends only on the other variable.
    pub fn trace_at_zero(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for t in self.terms() {
            match v {
                Var::X => {
                    if t.xpow == 0 {
                        out.add_term(ExpPolyTerm {
                            xrate: GaussRat::zero(),
                            ..t
                        });
                    }
                }
                Var::Y => {
                    if t.ypow == 0 {
                        out.add_term(ExpPolyTerm {
                            yrate: GaussRat::zero(),
                            ..t
                        });
                    }
                }
            }
        }
        out
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.terms().any(|t| match v {
            Var::X => t.xpow > 0 || !t.xrate.is_zero(),
            Var::Y => t.ypow > 0 || !t.yrate.is_zero(),
        })
    }

    /// Termwise complex conjugate (conjugates coefficients and rates). For a
    /// real-valued expression this is the identity on the merged form.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero();
        for t in self.terms() {
            out.add_term(ExpPolyTerm {
                coeff: t.coeff.conj(),
                xpow: t.xpow,
                ypow: t.ypow,
                xrate: t.xrate.conj(),
                yrate: t.yrate.conj(),
            });
        }
        out
    }

    /// Whether the expression is invariant under conjugation, i.e. denotes a
    /// real-valued function of real (x, y).
    pub fn is_conjugation_closed(&self) -> bool {
        self == &self.conj()
    }

    /// Exact double convolution `(f ** g)(x, y) =
    /// ∫_0^y ∫_0^x f(x-τ, y-μ) g(τ, μ) dτ dμ`, computed termwise by iterated
    /// one-dimensional convolution of the separated factors. Independent of
    /// the transform-domain product route.
    pub fn convolve(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for a in self.terms() {
            for b in rhs.terms() {
                let cx = conv1d(a.xpow, &a.xrate, b.xpow, &b.xrate);
                let cy = conv1d(a.ypow, &a.yrate, b.ypow, &b.yrate);
                let scale = &a.coeff * &b.coeff;
                for (xc, xp, xr) in &cx {
                    for (yc, yp, yr) in &cy {
                        out.add_term(ExpPolyTerm {
                            coeff: &(&scale * xc) * yc,
                            xpow: *xp,
                            ypow: *yp,
                            xrate: xr.clone(),
                            yrate: yr.clone(),
                        });
                    }
                }
            }
        }
        out
    }
}

/// Float-precompiled form of an [`ExpPolyExpr`] for evaluation-heavy inner
/// loops (quadrature): coefficients and rates are converted once.
#[derive(Debug, Clone)]
pub struct CompiledExpPoly {
    terms: Vec<(Complex64, i32, i32, Complex64, Complex64)>,
}

impl CompiledExpPoly {
    pub fn new(e: &ExpPolyExpr) -> Self {
        CompiledExpPoly {
            terms: e
                .terms()
                .map(|t| {
                    (
                        c64_lossy(&t.coeff),
                        t.xpow as i32,
                        t.ypow as i32,
                        c64_lossy(&t.xrate),
                        c64_lossy(&t.yrate),
                    )
                })
                .collect(),
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, xp, yp, a, b) in &self.terms {
            acc += c * x.powi(*xp) * y.powi(*yp) * (a * x + b * y).exp();
        }
        acc
    }
}

/// One-dimensional convolution of `t^p e^(a t)` with `t^q e^(b t)` over
/// `[0, t]`, returned as a list of `(coeff, power, rate)` terms.
///
/// Equal rates give the Beta-function closed form
/// `p! q! / (p+q+1)! * t^(p+q+1) e^(a t)`; distinct rates expand the shifted
/// factor binomially and integrate `s^M e^(c s)` by the standard
/// antiderivative, all in exact arithmetic.
fn conv1d(p: u32, a: &GaussRat, q: u32, b: &GaussRat) -> Vec<(GaussRat, u32, GaussRat)> {
    if a == b {
        let coeff = (&factorial(p) * &factorial(q))
            .checked_div(&factorial(p + q + 1))
            .unwrap();
        return vec![(coeff, p + q + 1, a.clone())];
    }
    let c = b - a;
    let c_inv = c.inv().unwrap();
    let mut out: Vec<(GaussRat, u32, GaussRat)> = Vec::new();
    for j in 0..=p {
        let sign_j = if j % 2 == 0 {
            GaussRat::one()
        } else {
            -GaussRat::one()
        };
        let pre = &binomial(p, j) * &sign_j;
        let m = q + j;
        // ∫_0^t s^M e^(c s) ds
        //   = e^(c t) Σ_ν (-1)^ν M!/(M-ν)! c^{-(ν+1)} t^{M-ν}
        //     - (-1)^M M! c^{-(M+1)}
        let m_fact = factorial(m);
        for nu in 0..=m {
            let sign_nu = if nu % 2 == 0 {
                GaussRat::one()
            } else {
                -GaussRat::one()
            };
            let falling = m_fact.checked_div(&factorial(m - nu)).unwrap();
            let coeff = &(&(&pre * &sign_nu) * &falling) * &c_inv.pow(nu + 1);
            // pairs with e^(a t) * e^(c t) = e^(b t), power t^(p-j+M-ν)
            out.push((coeff, p - j + m - nu, b.clone()));
        }
        let sign_m = if m % 2 == 0 {
            GaussRat::one()
        } else {
            -GaussRat::one()
        };
        let tail = &(&pre * &sign_m) * &(&m_fact * &c_inv.pow(m + 1));
        out.push((-tail, p - j, a.clone()));
    }
    out
}

impl fmt::Display for ExpPolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for t in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", t.coeff)?;
            if t.xpow > 0 {
                write!(f, "*x^{}", t.xpow)?;
            }
            if t.ypow > 0 {
                write!(f, "*y^{}", t.ypow)?;
            }
            if !t.xrate.is_zero() || !t.yrate.is_zero() {
                write!(f, "*e^(({})x+({})y)", t.xrate, t.yrate)?;
            }
        }
        Ok(())
    }
}
