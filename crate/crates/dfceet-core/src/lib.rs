//! Core library of the `dfceet` solver: a symbolic-numeric engine that
//! solves partial Volterra fuzzy integro-differential equations with
//! convolution kernels in closed form via a double complex exponential
//! integral transform, and independently verifies solutions by quadrature.
//!
//! Layering, bottom up:
//!
//! - [`scalar`]: exact arithmetic over Q and Q(i).
//! - [`symexpr`]: exponential polynomials in (x, y), the parser for the
//!   input grammar, Euler lowering and exact convolution.
//! - [`fuzzy`]: alpha-parametric fuzzy numbers and fuzzy-valued functions.
//! - [`ratfunc`]: exact bivariate rational functions in the transform
//!   variables, GCD reduction, partial fractions and pole extraction.
//! - [`transform`]: the double transform as an exact bijection between the
//!   two classes, plus the shift/convolution/derivative rules.
//! - [`solver`]: end-to-end closed-form solve of the equation.
//! - [`verify`]: the independent numerical oracle (Gauss-Legendre
//!   quadrature of the original equation).

pub mod fuzzy;
pub mod ratfunc;
pub mod scalar;
pub mod solver;
pub mod symexpr;
pub mod table;
pub mod transform;
pub mod verify;

pub use fuzzy::{AlphaPoly, FuzzyFunction, FuzzyScalar, Side, ValidityGrid};
pub use ratfunc::{BiPoly, BiRat, RatFuncError, SepTerm, TransformExpr, UniPoly};
pub use scalar::{GaussRat, Rational, ScalarError};
pub use symexpr::{CompiledExpPoly, ExpPolyExpr, ExpPolyTerm, SurfaceExpr, Var};
