//! The double complex exponential integral transform
//! `A(iu^n, iv^n) = ∫_0^∞ ∫_0^∞ e^(-i(u^n x + v^n y)) w(x, y) dx dy`
//! and its single-variable companion, realized as an exact bijection between
//! exponential polynomials and separable partial fractions in U = iu^n,
//! V = iv^n:
//!
//! ```text
//! C x^r y^m e^(ax+by)  <->  C r! m! / ((U-a)^(r+1) (V-b)^(m+1))
//! ```
//!
//! The transform is defined formally on the whole class (analytic
//! continuation in U and V); convergence of the defining integral is not
//! enforced per term, and numeric cross-checks are restricted to decaying
//! integrands. On top of the bijection sit the theorem layer used by the
//! solver: the exponential shift rule, the convolution rule (images
//! multiply) and the derivative images with their initial-condition
//! boundary sums.

mod display;
mod uvparse;

pub use display::{render_birat_powers, render_power_form};
pub use uvparse::{parse_uv_expr, UvParseError};

use crate::ratfunc::{BiPoly, BiRat, BiVar, SepTerm, TransformExpr, UniPoly};
use crate::scalar::GaussRat;
use crate::symexpr::{factorial, ExpPolyExpr, ExpPolyTerm, Var};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransformError {
    /// `forward_single` needs a function of one spatial variable.
    MixedVariable,
    /// The initial-condition list does not match the derivative order.
    ArityMismatch { expected: u32, got: usize },
}

impl fmt::Display for TransformError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformError::MixedVariable => {
                write!(f, "expression depends on both spatial variables")
            }
            TransformError::ArityMismatch { expected, got } => write!(
                f,
                "derivative of order {expected} needs {expected} initial conditions, got {got}"
            ),
        }
    }
}

impl std::error::Error for TransformError {}

/// Forward transform, termwise by the master formula. Linear and exact.
pub fn forward(f: &ExpPolyExpr) -> TransformExpr {
    let mut out = TransformExpr::zero();
    for t in f.terms() {
        let coeff = &(&t.coeff * &factorial(t.xpow)) * &factorial(t.ypow);
        out.add_term(SepTerm {
            coeff,
            pole_u: t.xrate,
            mult_u: t.xpow + 1,
            pole_v: t.yrate,
            mult_v: t.ypow + 1,
        });
    }
    out
}

/// Inverse transform, termwise:
/// `c/((U-a)^p (V-b)^q) -> c x^(p-1) y^(q-1) e^(ax+by) / ((p-1)! (q-1)!)`.
/// The polynomial part must be zero, which [`crate::ratfunc::separate`]
/// guarantees.
pub fn inverse(t: &TransformExpr) -> ExpPolyExpr {
    assert!(
        t.poly_part().is_zero(),
        "inverse transform requires a zero polynomial part"
    );
    let mut out = ExpPolyExpr::zero();
    for s in t.terms() {
        let denom = &factorial(s.mult_u - 1) * &factorial(s.mult_v - 1);
        out.add_term(ExpPolyTerm {
            coeff: s.coeff.checked_div(&denom).unwrap(),
            xpow: s.mult_u - 1,
            ypow: s.mult_v - 1,
            xrate: s.pole_u,
            yrate: s.pole_v,
        });
    }
    out
}

/// Image of multiplication by `e^(ax+by)`: every pole translates,
/// `A(U, V) -> A(U - a, V - b)`.
pub fn shift(t: &TransformExpr, a: &GaussRat, b: &GaussRat) -> TransformExpr {
    let mut out = TransformExpr::zero();
    for s in t.terms() {
        out.add_term(SepTerm {
            pole_u: &s.pole_u + a,
            pole_v: &s.pole_v + b,
            ..s
        });
    }
    out
}

/// Convolution rule: the image of a double convolution is the product of the
/// images, returned as a reduced rational function. Multiplies the combined
/// numerators and merges the linear factor lists so the reduction stays on
/// the deflation fast path.
pub fn convolve_image(f: &TransformExpr, g: &TransformExpr) -> BiRat {
    let (nf, uf, vf) = f.common_parts();
    let (ng, ug, vg) = g.common_parts();
    let merge = |a: Vec<(GaussRat, u32)>, b: Vec<(GaussRat, u32)>| {
        let mut m: BTreeMap<GaussRat, u32> = a.into_iter().collect();
        for (pole, mult) in b {
            *m.entry(pole).or_insert(0) += mult;
        }
        m.into_iter().collect::<Vec<_>>()
    };
    BiRat::from_separable(nf.mul(&ng), &merge(uf, ug), &merge(vf, vg))
}

/// Single-variable transform image: a merged sum of `coeff/(W - pole)^mult`
/// in one transform variable W.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingleTransformExpr {
    terms: BTreeMap<(GaussRat, u32), GaussRat>,
    domain: BiVar,
}

impl SingleTransformExpr {
    pub fn zero(domain: BiVar) -> Self {
        SingleTransformExpr {
            terms: BTreeMap::new(),
            domain,
        }
    }

    pub fn domain(&self) -> BiVar {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, coeff: GaussRat, pole: GaussRat, mult: u32) {
        if coeff.is_zero() {
            return;
        }
        let key = (pole, mult);
        let entry = self.terms.entry(key.clone()).or_insert_with(GaussRat::zero);
        *entry = &*entry + &coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `(coeff, pole, mult)` triples in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (GaussRat, GaussRat, u32)> + '_ {
        self.terms
            .iter()
            .map(|((p, m), c)| (c.clone(), p.clone(), *m))
    }

    /// Lifts into the bivariate field with poles on this expression's axis.
    pub fn to_birat(&self) -> BiRat {
        let mut acc = BiRat::zero();
        for (c, p, m) in self.terms() {
            let den = BiPoly::from_unipoly(&UniPoly::linear(&p), self.domain).pow(m);
            acc = acc.add(&BiRat::new(BiPoly::constant(c), den).unwrap());
        }
        acc
    }
}

impl fmt::Display for SingleTransformExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let name = match self.domain {
            BiVar::U => "U",
            BiVar::V => "V",
        };
        let mut first = true;
        for (c, p, m) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let base = if p.is_zero() {
                name.to_string()
            } else {
                format!("({name} - ({p}))")
            };
            if m == 1 {
                write!(f, "({c})/{base}")?;
            } else {
                write!(f, "({c})/{base}^{m}")?;
            }
        }
        Ok(())
    }
}

/// Spatial variable -> transform variable: x pairs with U, y with V.
pub fn transform_domain_of(v: Var) -> BiVar {
    match v {
        Var::X => BiVar::U,
        Var::Y => BiVar::V,
    }
}

/// Single-variable forward transform of a function of one spatial variable:
/// `C t^m e^(bt) -> C m!/(W - b)^(m+1)`.
pub fn forward_single(f: &ExpPolyExpr, spatial: Var) -> Result<SingleTransformExpr, TransformError> {
    if f.depends_on(spatial.other()) {
        return Err(TransformError::MixedVariable);
    }
    let mut out = SingleTransformExpr::zero(transform_domain_of(spatial));
    for t in f.terms() {
        let (pow, rate) = match spatial {
            Var::X => (t.xpow, t.xrate),
            Var::Y => (t.ypow, t.yrate),
        };
        out.add_term(&t.coeff * &factorial(pow), rate, pow + 1);
    }
    Ok(out)
}

/// Image of an n-th order partial derivative: the transform of
/// `∂^h w/∂x^h` is `U^h ŵ` minus the boundary sum
/// `Σ_{k=0}^{h-1} U^(h-1-k) E{∂^k w/∂x^k (0, y)}` (and symmetrically in y).
/// The highest multiplier power pairs with the lowest-order condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivativeImage {
    pub axis: Var,
    pub order: u32,
    /// The fully evaluated initial-condition sum; its poles all come from
    /// the transformed initial conditions.
    pub boundary: BiRat,
}

impl DerivativeImage {
    /// The main multiplier `U^order` (or `V^order`).
    pub fn multiplier(&self) -> BiPoly {
        let var = match self.axis {
            Var::X => BiPoly::var_u(),
            Var::Y => BiPoly::var_v(),
        };
        var.pow(self.order)
    }

    /// `multiplier * w_hat - boundary`.
    pub fn apply(&self, w_hat: &BiRat) -> BiRat {
        BiRat::from_poly(self.multiplier())
            .mul(w_hat)
            .sub(&self.boundary)
    }
}

/// Builds the derivative image for `order`-many initial conditions
/// `ics[k] = E{∂^k w (0, ·)}`, k = 0..order-1.
pub fn derivative_image(
    axis: Var,
    order: u32,
    ics: &[SingleTransformExpr],
) -> Result<DerivativeImage, TransformError> {
    if ics.len() != order as usize {
        return Err(TransformError::ArityMismatch {
            expected: order,
            got: ics.len(),
        });
    }
    let expected_domain = transform_domain_of(axis.other());
    let var = match axis {
        Var::X => BiPoly::var_u(),
        Var::Y => BiPoly::var_v(),
    };
    let mut boundary = BiRat::zero();
    for (k, ic) in ics.iter().enumerate() {
        debug_assert_eq!(ic.domain(), expected_domain);
        let power = BiRat::from_poly(var.pow(order - 1 - k as u32));
        boundary = boundary.add(&power.mul(&ic.to_birat()));
    }
    Ok(DerivativeImage {
        axis,
        order,
        boundary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::separate;
    use crate::scalar::{rat, ratio};
    use crate::symexpr::{lower_to_exp_poly, parse_expr};

    fn g(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    fn lower(text: &str) -> ExpPolyExpr {
        lower_to_exp_poly(&parse_expr(text).unwrap()).unwrap()
    }

    fn u() -> BiPoly {
        BiPoly::var_u()
    }

    fn v() -> BiPoly {
        BiPoly::var_v()
    }

    fn c(n: i64) -> BiPoly {
        BiPoly::constant(g(n))
    }

    #[test]
    fn forward_of_one() {
        // 1 -> 1/(UV)
        let t = forward(&ExpPolyExpr::one());
        let expected = BiRat::new(c(1), u().mul(&v())).unwrap();
        assert_eq!(t.to_birat(), expected);
    }

    #[test]
    fn forward_of_exp() {
        // e^(x+y) -> 1/((U-1)(V-1))
        let t = forward(&lower("e^(x+y)"));
        let expected = BiRat::new(c(1), u().sub(&c(1)).mul(&v().sub(&c(1)))).unwrap();
        assert_eq!(t.to_birat(), expected);
    }

    #[test]
    fn forward_of_sine_recombines() {
        // sin(ax+by) -> (bU + aV)/((U^2+a^2)(V^2+b^2)) with a=2, b=3
        let t = forward(&lower("sin(2*x+3*y)"));
        let num = u().scale(&g(3)).add(&v().scale(&g(2)));
        let den = u().pow(2).add(&c(4)).mul(&v().pow(2).add(&c(9)));
        assert_eq!(t.to_birat(), BiRat::new(num, den).unwrap());
    }

    #[test]
    fn inverse_of_single_pole_pair() {
        let mut t = TransformExpr::zero();
        t.add_term(SepTerm {
            coeff: g(1),
            pole_u: g(1),
            mult_u: 1,
            pole_v: g(1),
            mult_v: 1,
        });
        assert_eq!(inverse(&t), lower("e^(x+y)"));
    }

    #[test]
    fn inverse_of_double_poles_at_zero() {
        // 1/(U^2 V^2) -> x y
        let mut t = TransformExpr::zero();
        t.add_term(SepTerm {
            coeff: g(1),
            pole_u: g(0),
            mult_u: 2,
            pole_v: g(0),
            mult_v: 2,
        });
        assert_eq!(inverse(&t), lower("x*y"));
    }

    #[test]
    fn inverse_recombining_cosine() {
        // (1/2)/((U-i)V) + (1/2)/((U+i)V) -> cos(x)
        let half = GaussRat::from_rational(ratio(1, 2));
        let mut t = TransformExpr::zero();
        t.add_term(SepTerm {
            coeff: half.clone(),
            pole_u: GaussRat::i(),
            mult_u: 1,
            pole_v: g(0),
            mult_v: 1,
        });
        t.add_term(SepTerm {
            coeff: half,
            pole_u: -GaussRat::i(),
            mult_u: 1,
            pole_v: g(0),
            mult_v: 1,
        });
        assert_eq!(inverse(&t), lower("cos(x)"));
    }

    #[test]
    fn shift_rule() {
        // shift(forward(1), 1, 1) = forward(e^(x+y))
        let shifted = shift(&forward(&ExpPolyExpr::one()), &g(1), &g(1));
        assert_eq!(shifted, forward(&lower("e^(x+y)")));

        // identity shift
        let t = forward(&lower("x*e^(2*x)+y"));
        assert_eq!(shift(&t, &g(0), &g(0)), t);

        // shift(forward(x), 2, 0) = forward(x e^(2x)) = 1/((U-2)^2 V)
        let shifted = shift(&forward(&lower("x")), &g(2), &g(0));
        assert_eq!(shifted, forward(&lower("x*e^(2*x)")));
    }

    #[test]
    fn convolution_rule_on_constants() {
        // forward(1)^2 = 1/(U^2 V^2) = forward(1 ** 1) = forward(xy)
        let one = forward(&ExpPolyExpr::one());
        let prod = convolve_image(&one, &one);
        assert_eq!(prod, forward(&lower("x*y")).to_birat());
    }

    #[test]
    fn convolution_rule_vs_symbolic_convolution() {
        let f = lower("e^(x+y)");
        let prod = convolve_image(&forward(&f), &forward(&f));
        assert_eq!(prod, forward(&f.convolve(&f)).to_birat());
        assert_eq!(prod, forward(&lower("x*y*e^(x+y)")).to_birat());
    }

    #[test]
    fn convolution_with_zero() {
        let f = forward(&lower("e^(x+y)"));
        let z = forward(&ExpPolyExpr::zero());
        assert!(convolve_image(&f, &z).is_zero());
    }

    #[test]
    fn single_transform_examples() {
        // e^y -> 1/(V-1)
        let t = forward_single(&lower("e^(y)"), Var::Y).unwrap();
        assert_eq!(
            t.to_birat(),
            BiRat::new(c(1), v().sub(&c(1))).unwrap()
        );

        // 1 -> 1/V
        let t = forward_single(&ExpPolyExpr::one(), Var::Y).unwrap();
        assert_eq!(t.to_birat(), BiRat::new(c(1), v()).unwrap());

        // y e^(2y) -> 1/(V-2)^2, the derivative of 1/(V-b) in b
        let t = forward_single(&lower("y*e^(2*y)"), Var::Y).unwrap();
        assert_eq!(
            t.to_birat(),
            BiRat::new(c(1), v().sub(&c(2)).pow(2)).unwrap()
        );

        // mixed input is rejected
        assert_eq!(
            forward_single(&lower("x*y"), Var::Y),
            Err(TransformError::MixedVariable)
        );
    }

    #[test]
    fn derivative_image_first_order() {
        // h=1: U ŵ - E{w(0,y)}; on f = e^(x+y) this equals forward(∂f/∂x)
        let f = lower("e^(x+y)");
        let trace = f.trace_at_zero(Var::X);
        let ic = forward_single(&trace, Var::Y).unwrap();
        let img = derivative_image(Var::X, 1, &[ic]).unwrap();
        let lhs = forward(&f.diff(Var::X)).to_birat();
        assert_eq!(lhs, img.apply(&forward(&f).to_birat()));
    }

    #[test]
    fn derivative_image_second_order_pairing() {
        // h=2 with Φ0 = Φ1 = e^y: boundary = (U+1)/(V-1)
        let phi = forward_single(&lower("e^(y)"), Var::Y).unwrap();
        let img = derivative_image(Var::X, 2, &[phi.clone(), phi]).unwrap();
        let expected = BiRat::new(u().add(&c(1)), v().sub(&c(1))).unwrap();
        assert_eq!(img.boundary, expected);
        assert_eq!(img.multiplier(), u().pow(2));
    }

    #[test]
    fn derivative_image_laplace_pattern() {
        // h=2 with Φ0 = 1, Φ1 = 0: U^2 ŵ - U/V
        let phi0 = forward_single(&ExpPolyExpr::one(), Var::Y).unwrap();
        let phi1 = SingleTransformExpr::zero(BiVar::V);
        let img = derivative_image(Var::X, 2, &[phi0, phi1]).unwrap();
        assert_eq!(img.boundary, BiRat::new(u(), v()).unwrap());
    }

    #[test]
    fn derivative_image_arity_check() {
        assert_eq!(
            derivative_image(Var::X, 2, &[]),
            Err(TransformError::ArityMismatch {
                expected: 2,
                got: 0
            })
        );
    }

    #[test]
    fn bijection_round_trip_spot() {
        for text in ["e^(x+y)", "x*y", "3*x^2*e^(2*x-y)+sin(x)", "cos(x+y)*sinh(y)"] {
            let f = lower(text);
            assert_eq!(inverse(&forward(&f)), f, "failed on {text}");
        }
    }

    #[test]
    fn separate_then_invert_equals_inverse_of_forward() {
        let f = lower("e^(x+y)*(3-x*y)");
        let rat_form = forward(&f).to_birat();
        let t = separate(&rat_form).unwrap();
        assert_eq!(inverse(&t), f);
        let _ = rat(0);
    }
}
