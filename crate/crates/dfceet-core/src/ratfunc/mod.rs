//! Exact bivariate rational-function algebra in the transform variables
//! U = iu^n and V = iv^n over Q(i): polynomial arithmetic, GCD-based
//! cancellation, separability analysis, partial fractions and pole
//! extraction. This is the machinery that makes the transform-domain
//! equation invertible.
//!
//! The algebra never sees n: once U and V are abstract indeterminates the
//! results are independent of it, so n is carried by the display layer only.

mod bipoly;
mod birat;
mod roots;
mod separate;
mod unipoly;

pub use bipoly::{BiPoly, BiVar};
pub use birat::BiRat;
pub use roots::{snap_roots, DEFAULT_SNAP_DENOMINATOR};
pub use separate::{separate, separate_with_bound, SepTerm, TransformExpr};
pub use unipoly::UniPoly;

use num::complex::Complex64;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum RatFuncError {
    DivisionByZero,
    /// A mixed irreducible factor (depending on both U and V) survived
    /// reduction; the table-based inverse does not apply.
    NonSeparableDenominator,
    /// Numerator degree >= denominator degree in U or V; the value is not in
    /// the strictly proper image class.
    ImproperRational,
    /// A denominator root could not be verified as a Gaussian rational of
    /// bounded denominator; carries the numeric approximation.
    UnsnappableRoot { approx: Complex64 },
}

impl fmt::Display for RatFuncError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatFuncError::DivisionByZero => write!(f, "division by zero rational function"),
            RatFuncError::NonSeparableDenominator => {
                write!(f, "denominator has a mixed irreducible factor in U and V")
            }
            RatFuncError::ImproperRational => {
                write!(f, "rational function is not strictly proper in U and V")
            }
            RatFuncError::UnsnappableRoot { approx } => write!(
                f,
                "denominator root near {approx} is not a Gaussian rational of bounded denominator"
            ),
        }
    }
}

impl std::error::Error for RatFuncError {}
