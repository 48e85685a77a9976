//! Reduced bivariate rational functions in (U, V). Every value is kept in
//! canonical form: numerator and denominator coprime (full bivariate GCD)
//! and denominator monic in the lexicographic leading term, so structural
//! equality is semantic equality.

use crate::ratfunc::bipoly::{BiPoly, BiVar};
use crate::ratfunc::unipoly::UniPoly;
use crate::ratfunc::RatFuncError;
use crate::scalar::GaussRat;
use num::complex::Complex64;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiRat {
    num: BiPoly,
    den: BiPoly,
}

impl BiRat {
    /// Builds `num/den` in reduced canonical form.
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self, RatFuncError> {
        if den.is_zero() {
            return Err(RatFuncError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: BiPoly, den: BiPoly) -> Self {
        if num.is_zero() {
            return BiRat {
                num,
                den: BiPoly::one(),
            };
        }
        // transform-image denominators factor into per-axis linear factors
        // with Gaussian-rational roots; when that factorization verifies
        // exactly, reduction is a sequence of deflations instead of the
        // (much slower) general bivariate GCD
        if let Some(fast) = Self::try_reduce_separable(&num, &den) {
            return fast;
        }
        let g = BiPoly::gcd(&num, &den);
        let num = num.try_div_exact(&g).expect("gcd divides numerator");
        let den = den.try_div_exact(&g).expect("gcd divides denominator");
        let lc = den.leading_lex().unwrap().1;
        let lc_inv = lc.inv().unwrap();
        BiRat {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        }
    }

    fn try_reduce_separable(num: &BiPoly, den: &BiPoly) -> Option<Self> {
        use crate::ratfunc::roots::{snap_roots, DEFAULT_SNAP_DENOMINATOR};
        let q0 = den.content_v();
        let prim = den.try_div_exact(&BiPoly::from_unipoly(&q0, BiVar::V))?;
        if prim.degree_v().unwrap_or(0) > 0 {
            return None;
        }
        let p0 = UniPoly::from_coeffs(
            prim.as_u_coeffs()
                .iter()
                .map(|c| c.coeff(0))
                .collect::<Vec<_>>(),
        );
        let u_factors = snap_roots(&p0, DEFAULT_SNAP_DENOMINATOR).ok()?;
        let v_factors = snap_roots(&q0, DEFAULT_SNAP_DENOMINATOR).ok()?;
        // den = lc(p0) * prod of monic linear factors; fold the constant
        // into the numerator so the denominator stays monic
        let lc_inv = p0.leading().expect("nonzero denominator").inv().unwrap();
        Some(Self::from_separable(
            num.scale(&lc_inv),
            &u_factors,
            &v_factors,
        ))
    }

    /// Builds `num / (Π (U-a)^p · Π (V-b)^q)` reduced, cancelling common
    /// factors by exact deflation instead of a general GCD. Because every
    /// denominator factor is linear in a single variable, the full reduction
    /// is a sequence of synthetic divisions; this is the fast path for
    /// transform images, whose denominators are always of this shape.
    pub fn from_separable(
        num: BiPoly,
        u_factors: &[(GaussRat, u32)],
        v_factors: &[(GaussRat, u32)],
    ) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let mut num = num;
        let mut den = BiPoly::one();
        for (pole, mult) in u_factors {
            let mut remaining = *mult;
            while remaining > 0 {
                match num.deflate(BiVar::U, pole) {
                    Some(next) => {
                        num = next;
                        remaining -= 1;
                    }
                    None => break,
                }
            }
            if remaining > 0 {
                den = den.mul(
                    &BiPoly::from_unipoly(&UniPoly::linear(pole), BiVar::U).pow(remaining),
                );
            }
        }
        for (pole, mult) in v_factors {
            let mut remaining = *mult;
            while remaining > 0 {
                match num.deflate(BiVar::V, pole) {
                    Some(next) => {
                        num = next;
                        remaining -= 1;
                    }
                    None => break,
                }
            }
            if remaining > 0 {
                den = den.mul(
                    &BiPoly::from_unipoly(&UniPoly::linear(pole), BiVar::V).pow(remaining),
                );
            }
        }
        // the remaining factors are coprime to the numerator and the
        // denominator is a product of monic linears, hence already monic
        BiRat { num, den }
    }

    pub fn zero() -> Self {
        BiRat {
            num: BiPoly::zero(),
            den: BiPoly::one(),
        }
    }

    pub fn one() -> Self {
        BiRat {
            num: BiPoly::one(),
            den: BiPoly::one(),
        }
    }

    pub fn from_poly(p: BiPoly) -> Self {
        BiRat {
            num: p,
            den: BiPoly::one(),
        }
    }

    pub fn from_gauss(c: GaussRat) -> Self {
        Self::from_poly(BiPoly::constant(c))
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::reduced(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        BiRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::reduced(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiRat {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, RatFuncError> {
        if rhs.is_zero() {
            return Err(RatFuncError::DivisionByZero);
        }
        Ok(Self::reduced(
            self.num.mul(&rhs.den),
            self.den.mul(&rhs.num),
        ))
    }

    /// Exact evaluation; errors when the point lies on the denominator's
    /// zero set.
    pub fn eval(&self, u: &GaussRat, v: &GaussRat) -> Result<GaussRat, RatFuncError> {
        let d = self.den.eval(u, v);
        if d.is_zero() {
            return Err(RatFuncError::DivisionByZero);
        }
        Ok(self.num.eval(u, v).checked_div(&d).unwrap())
    }

    pub fn eval_c64(&self, u: Complex64, v: Complex64) -> Complex64 {
        self.num.eval_c64(u, v) / self.den.eval_c64(u, v)
    }
}

impl fmt::Display for BiRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "[{}] / [{}]", self.num, self.den)
        }
    }
}
