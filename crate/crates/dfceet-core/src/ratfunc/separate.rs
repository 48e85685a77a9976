//! Separability analysis and exact bivariate partial-fraction decomposition.
//!
//! A reduced rational function is invertible through the elementary-function
//! table exactly when its denominator factors into a product of a polynomial
//! in U alone and a polynomial in V alone. The test is constructive: the
//! V-content of the denominator must carry all of its V-dependence. Partial
//! fractions are then taken first in U over Q(i)[V] (Taylor expansion at
//! each pole via exact series division) and then in V per coefficient.

use crate::ratfunc::bipoly::{BiPoly, BiVar};
use crate::ratfunc::birat::BiRat;
use crate::ratfunc::roots::{snap_roots, DEFAULT_SNAP_DENOMINATOR};
use crate::ratfunc::unipoly::UniPoly;
use crate::ratfunc::RatFuncError;
use crate::scalar::GaussRat;
use crate::symexpr::binomial;
use num::complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

/// One separable partial fraction `coeff / ((U - pole_u)^mult_u *
/// (V - pole_v)^mult_v)` with positive multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SepTerm {
    pub coeff: GaussRat,
    pub pole_u: GaussRat,
    pub mult_u: u32,
    pub pole_v: GaussRat,
    pub mult_v: u32,
}

/// A finite sum of [`SepTerm`]s, merged on the pole/multiplicity key, plus a
/// polynomial part that must be zero before inversion (it always is for
/// values produced by [`separate`]; transforms of the function class in
/// scope are strictly proper).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TransformExpr {
    terms: BTreeMap<(GaussRat, u32, GaussRat, u32), GaussRat>,
    poly_part: BiPoly,
}

impl TransformExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.poly_part.is_zero()
    }

    pub fn add_term(&mut self, t: SepTerm) {
        if t.coeff.is_zero() {
            return;
        }
        let key = (t.pole_u, t.mult_u, t.pole_v, t.mult_v);
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
        out.poly_part = out.poly_part.add(&rhs.poly_part);
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-GaussRat::one())
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        let mut out = Self::zero();
        if c.is_zero() {
            return out;
        }
        for t in self.terms() {
            out.add_term(SepTerm {
                coeff: &t.coeff * c,
                ..t
            });
        }
        out.poly_part = self.poly_part.scale(c);
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = SepTerm> + '_ {
        self.terms.iter().map(|((pu, mu, pv, mv), c)| SepTerm {
            coeff: c.clone(),
            pole_u: pu.clone(),
            mult_u: *mu,
            pole_v: pv.clone(),
            mult_v: *mv,
        })
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn poly_part(&self) -> &BiPoly {
        &self.poly_part
    }

    /// The sum over the common denominator `P(U) Q(V)` (distinct pole
    /// factors at their maximal multiplicities): returns the combined
    /// numerator and the two factor lists, unreduced.
    pub fn common_parts(&self) -> (BiPoly, Vec<(GaussRat, u32)>, Vec<(GaussRat, u32)>) {
        let mut u_mult: BTreeMap<GaussRat, u32> = BTreeMap::new();
        let mut v_mult: BTreeMap<GaussRat, u32> = BTreeMap::new();
        for t in self.terms() {
            let mu = u_mult.entry(t.pole_u.clone()).or_insert(0);
            *mu = (*mu).max(t.mult_u);
            let mv = v_mult.entry(t.pole_v.clone()).or_insert(0);
            *mv = (*mv).max(t.mult_v);
        }
        let mut p_u = UniPoly::one();
        for (pole, m) in &u_mult {
            for _ in 0..*m {
                p_u = p_u.mul(&UniPoly::linear(pole));
            }
        }
        let mut q_v = UniPoly::one();
        for (pole, m) in &v_mult {
            for _ in 0..*m {
                q_v = q_v.mul(&UniPoly::linear(pole));
            }
        }
        let mut num = BiPoly::zero();
        for t in self.terms() {
            // cofactors P/(U - a)^m and Q/(V - b)^n by exact deflation
            let mut cof_u = p_u.clone();
            for _ in 0..t.mult_u {
                cof_u = cof_u.deflate(&t.pole_u).expect("pole divides P");
            }
            let mut cof_v = q_v.clone();
            for _ in 0..t.mult_v {
                cof_v = cof_v.deflate(&t.pole_v).expect("pole divides Q");
            }
            let term = BiPoly::from_unipoly(&cof_u, BiVar::U)
                .mul(&BiPoly::from_unipoly(&cof_v, BiVar::V))
                .scale(&t.coeff);
            num = num.add(&term);
        }
        if !self.poly_part.is_zero() {
            let den =
                BiPoly::from_unipoly(&p_u, BiVar::U).mul(&BiPoly::from_unipoly(&q_v, BiVar::V));
            num = num.add(&self.poly_part.mul(&den));
        }
        (
            num,
            u_mult.into_iter().collect(),
            v_mult.into_iter().collect(),
        )
    }

    /// Recombines into a reduced rational function. The denominator is a
    /// product of linear factors per axis, so the reduction is a sequence of
    /// exact deflations rather than a general bivariate GCD.
    pub fn to_birat(&self) -> BiRat {
        let (num, u_factors, v_factors) = self.common_parts();
        BiRat::from_separable(num, &u_factors, &v_factors)
    }

    pub fn eval_c64(&self, u: Complex64, v: Complex64) -> Complex64 {
        let mut acc = self.poly_part.eval_c64(u, v);
        for t in self.terms() {
            let pu = t.pole_u.to_c64().unwrap();
            let pv = t.pole_v.to_c64().unwrap();
            acc += t.coeff.to_c64().unwrap()
                / ((u - pu).powi(t.mult_u as i32) * (v - pv).powi(t.mult_v as i32));
        }
        acc
    }
}

impl fmt::Display for TransformExpr {
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
            let factor = |name: &str, pole: &GaussRat, mult: u32| {
                let base = if pole.is_zero() {
                    name.to_string()
                } else {
                    format!("({name} - ({pole}))")
                };
                if mult == 1 {
                    base
                } else {
                    format!("{base}^{mult}")
                }
            };
            write!(
                f,
                "/({}*{})",
                factor("U", &t.pole_u, t.mult_u),
                factor("V", &t.pole_v, t.mult_v)
            )?;
        }
        if !self.poly_part.is_zero() {
            write!(f, " + {}", self.poly_part)?;
        }
        Ok(())
    }
}

/// Decomposes a reduced rational function into separable partial fractions.
pub fn separate(f: &BiRat) -> Result<TransformExpr, RatFuncError> {
    separate_with_bound(f, DEFAULT_SNAP_DENOMINATOR)
}

pub fn separate_with_bound(f: &BiRat, snap_bound: u32) -> Result<TransformExpr, RatFuncError> {
    if f.is_zero() {
        return Ok(TransformExpr::zero());
    }
    let num = f.num();
    let den = f.den();
    let num_du = num.degree_u().unwrap();
    let num_dv = num.degree_v().unwrap();
    let den_du = den.degree_u().unwrap_or(0);
    let den_dv = den.degree_v().unwrap_or(0);
    if num_du >= den_du || num_dv >= den_dv {
        return Err(RatFuncError::ImproperRational);
    }

    // den must split as P(U) * Q(V): the V-content carries Q, the primitive
    // part must then be free of V
    let q0 = den.content_v();
    let prim = den
        .try_div_exact(&BiPoly::from_unipoly(&q0, BiVar::V))
        .expect("content divides");
    if prim.degree_v().unwrap_or(0) > 0 {
        return Err(RatFuncError::NonSeparableDenominator);
    }
    let p0 = UniPoly::from_coeffs(
        prim.as_u_coeffs()
            .iter()
            .map(|c| c.coeff(0))
            .collect::<Vec<_>>(),
    );

    let u_roots = snap_roots(&p0, snap_bound)?;
    let v_roots = snap_roots(&q0, snap_bound)?;

    // Stage 1: expand num/(P(U) Q(V)) at each U-pole by exact series
    // division; coefficients are polynomials in V.
    let num_u = num.as_u_coeffs();
    let mut out = TransformExpr::zero();
    for (pole_u, mult_u) in &u_roots {
        let mut reduced = p0.clone();
        for _ in 0..*mult_u {
            reduced = reduced.deflate(pole_u).expect("verified root");
        }
        let r_shift = reduced.shift(pole_u);
        let r0_inv = r_shift.coeff(0).inv().expect("pole order exact");

        // numerator Taylor coefficients at U = pole_u + T
        let mut num_shift: Vec<UniPoly> = vec![UniPoly::zero(); *mult_u as usize];
        for (s, slot) in num_shift.iter_mut().enumerate() {
            for (r, c) in num_u.iter().enumerate() {
                if r >= s {
                    let w = &binomial(r as u32, s as u32) * &pole_u.pow((r - s) as u32);
                    *slot = slot.add(&c.scale(&w));
                }
            }
        }

        // h[s] of num/R as a power series in T, mod T^mult_u
        let mut h: Vec<UniPoly> = Vec::with_capacity(*mult_u as usize);
        for s in 0..*mult_u as usize {
            let mut acc = num_shift[s].clone();
            for t in 1..=s {
                acc = acc.sub(&h[s - t].scale(&r_shift.coeff(t)));
            }
            h.push(acc.scale(&r0_inv));
        }

        // Stage 2: each h[s]/(Q(V)) decomposes in V
        for (s, hv) in h.iter().enumerate() {
            let mult = mult_u - s as u32;
            for (coeff, pole_v, mult_v) in pfd_univariate(hv, &q0, &v_roots) {
                out.add_term(SepTerm {
                    coeff,
                    pole_u: pole_u.clone(),
                    mult_u: mult,
                    pole_v,
                    mult_v,
                });
            }
        }
    }
    Ok(out)
}

/// Partial fractions of `num/den` in one variable given the den's roots;
/// `num` must be strictly proper.
fn pfd_univariate(
    num: &UniPoly,
    den: &UniPoly,
    roots: &[(GaussRat, u32)],
) -> Vec<(GaussRat, GaussRat, u32)> {
    let mut out = Vec::new();
    if num.is_zero() {
        return out;
    }
    for (pole, mult) in roots {
        let mut reduced = den.clone();
        for _ in 0..*mult {
            reduced = reduced.deflate(pole).expect("verified root");
        }
        let r_shift = reduced.shift(pole);
        let r0_inv = r_shift.coeff(0).inv().expect("pole order exact");
        let n_shift = num.shift(pole);
        let mut h: Vec<GaussRat> = Vec::with_capacity(*mult as usize);
        for s in 0..*mult as usize {
            let mut acc = n_shift.coeff(s);
            for t in 1..=s {
                acc = &acc - &(&h[s - t] * &r_shift.coeff(t));
            }
            h.push(&acc * &r0_inv);
        }
        for (s, c) in h.iter().enumerate() {
            if !c.is_zero() {
                out.push((c.clone(), pole.clone(), mult - s as u32));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn g(n: i64) -> GaussRat {
        GaussRat::from_int(n)
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

    fn sep(c: GaussRat, pu: i64, mu: u32, pv: i64, mv: u32) -> SepTerm {
        SepTerm {
            coeff: c,
            pole_u: g(pu),
            mult_u: mu,
            pole_v: g(pv),
            mult_v: mv,
        }
    }

    #[test]
    fn single_pole_pair() {
        // 1/((U-1)(V-1))
        let f = BiRat::new(c(1), u().sub(&c(1)).mul(&v().sub(&c(1)))).unwrap();
        let t = separate(&f).unwrap();
        assert_eq!(t.num_terms(), 1);
        let term = t.terms().next().unwrap();
        assert_eq!(term, sep(g(1), 1, 1, 1, 1));
    }

    #[test]
    fn partial_fractions_in_u() {
        // 1/((U-1)(U+1)V) = (1/2)/((U-1)V) - (1/2)/((U+1)V)
        let den = u().sub(&c(1)).mul(&u().add(&c(1))).mul(&v());
        let f = BiRat::new(c(1), den).unwrap();
        let t = separate(&f).unwrap();
        let half = GaussRat::from_rational(ratio(1, 2));
        let mut expected = TransformExpr::zero();
        expected.add_term(sep(half.clone(), 1, 1, 0, 1));
        expected.add_term(sep(-half, -1, 1, 0, 1));
        assert_eq!(t, expected);
    }

    #[test]
    fn mixed_irreducible_is_rejected() {
        // 1/(U+V)
        let f = BiRat::new(c(1), u().add(&v())).unwrap();
        assert_eq!(separate(&f), Err(RatFuncError::NonSeparableDenominator));
    }

    #[test]
    fn improper_is_rejected() {
        let f = BiRat::new(u(), u().sub(&c(1)).mul(&v())).unwrap();
        assert_eq!(separate(&f), Err(RatFuncError::ImproperRational));
        // degree equal in V only
        let f = BiRat::new(v(), u().mul(&v())).unwrap();
        assert_eq!(separate(&f), Err(RatFuncError::ImproperRational));
        // a bare constant has no strictly proper representation
        let f = BiRat::from_gauss(g(3));
        assert_eq!(separate(&f), Err(RatFuncError::ImproperRational));
    }

    #[test]
    fn round_trip_through_common_denominator() {
        // higher multiplicities and several poles per axis
        let den = u()
            .sub(&c(1))
            .pow(2)
            .mul(&u().add(&c(2)))
            .mul(&v().pow(2))
            .mul(&v().sub(&c(3)));
        let num = u().mul(&v().pow(2)).add(&c(5)).add(&u().pow(2).mul(&v()));
        let f = BiRat::new(num, den).unwrap();
        let t = separate(&f).unwrap();
        assert_eq!(t.to_birat(), f);
        assert!(t.poly_part().is_zero());
    }

    #[test]
    fn complex_poles_round_trip() {
        // 1/((U^2+1)(V-1)): poles at ±i in U
        let den = u().pow(2).add(&c(1)).mul(&v().sub(&c(1)));
        let f = BiRat::new(c(1), den).unwrap();
        let t = separate(&f).unwrap();
        assert_eq!(t.num_terms(), 2);
        assert_eq!(t.to_birat(), f);
    }
}
