//! Dense univariate polynomials over the Gaussian rationals. Workhorse for
//! GCD computations, content extraction, Taylor shifts, square-free
//! decomposition and root deflation.

use crate::scalar::{GaussRat, Rational};
use num::bigint::BigInt;
use num::complex::Complex64;
use num::integer::Integer;
use num::traits::One;

/// `coeffs[k]` is the coefficient of `W^k`; no trailing zeros are stored, so
/// the zero polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<GaussRat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * W^k`.
    pub fn monomial(c: GaussRat, k: usize) -> Self {
        let mut coeffs = vec![GaussRat::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// `W - root`.
    pub fn linear(root: &GaussRat) -> Self {
        Self::from_coeffs(vec![-root.clone(), GaussRat::one()])
    }

    pub fn from_coeffs(coeffs: Vec<GaussRat>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> GaussRat {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn coeffs(&self) -> &[GaussRat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&GaussRat> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_coeffs((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_coeffs((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut coeffs =
            vec![GaussRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &GaussRat::from_int(k as i64))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn eval(&self, w: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * w) + c;
        }
        acc
    }

    pub fn eval_c64(&self, w: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * w + c.to_c64().unwrap_or(Complex64::new(f64::NAN, 0.0));
        }
        acc
    }

    pub fn make_monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Field division with remainder: `self = q * d + r`, `deg r < deg d`.
    /// Panics when `d` is zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quo = UniPoly::zero();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let t = rem.leading().unwrap().checked_div(&lc).unwrap();
            let tm = UniPoly::monomial(t, dr - dd);
            rem = rem.sub(&tm.mul(d));
            quo = quo.add(&tm);
        }
        (quo, rem)
    }

    /// Exact quotient, or None when the division leaves a remainder.
    pub fn try_div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic GCD. Computed fraction-free: both inputs are scaled to
    /// Gaussian-integer coefficients and run through the primitive
    /// pseudo-remainder sequence, extracting the Z[i] content after every
    /// step. Plain rational Euclid doubles coefficient digit counts per
    /// division and becomes unusable around degree 15; the primitive PRS
    /// keeps coefficients at the size of the content-free remainders.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut r0 = a.primitive_integer_part();
        let mut r1 = b.primitive_integer_part();
        if r0.degree() < r1.degree() {
            std::mem::swap(&mut r0, &mut r1);
        }
        if r1.is_zero() {
            return r0.make_monic();
        }
        while !r1.is_zero() {
            let r2 = Self::pseudo_rem(&r0, &r1).primitive_integer_part();
            r0 = r1;
            r1 = r2;
        }
        r0.make_monic()
    }

    /// Fraction-free remainder of `a` by `b` (nonzero): differs from the
    /// true remainder by a power of lc(b), which content extraction removes.
    fn pseudo_rem(a: &Self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo_rem by zero");
        let lcb = b.leading().unwrap().clone();
        let mut r = a.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lcr = r.leading().unwrap().clone();
            let shifted = Self::monomial(lcr, dr - db).mul(b);
            r = r.scale(&lcb).sub(&shifted);
        }
        r
    }

    /// Scales to Gaussian-integer coefficients and divides out their Z[i]
    /// content, leaving a primitive integer polynomial (up to units).
    fn primitive_integer_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.re.denom()).lcm(c.im.denom());
        }
        let scale = GaussRat::from_rational(Rational::from_integer(lcm));
        let scaled: Vec<GaussRat> = self.coeffs.iter().map(|c| c * &scale).collect();
        let mut content = GaussRat::zero();
        for c in &scaled {
            if !c.is_zero() {
                content = gauss_int_gcd(&content, c);
            }
            if content.norm_sqr().is_one() {
                break;
            }
        }
        let inv = content.inv().expect("nonzero content");
        Self::from_coeffs(scaled.iter().map(|c| c * &inv).collect())
    }

    /// Taylor shift `p(W) -> p(W + a)`.
    pub fn shift(&self, a: &GaussRat) -> Self {
        let lin = UniPoly::from_coeffs(vec![a.clone(), GaussRat::one()]);
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&UniPoly::constant(c.clone()));
        }
        acc
    }

    /// Divides by `(W - root)` exactly; None when `root` is not a root.
    pub fn deflate(&self, root: &GaussRat) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // synthetic division
        let n = self.coeffs.len();
        let mut out = vec![GaussRat::zero(); n - 1];
        let mut carry = GaussRat::zero();
        for k in (0..n).rev() {
            let v = &self.coeffs[k] + &(&carry * root);
            if k == 0 {
                if !v.is_zero() {
                    return None;
                }
            } else {
                out[k - 1] = v.clone();
                carry = v;
            }
        }
        Some(Self::from_coeffs(out))
    }

    /// Square-free decomposition (Yun): returns `[(q_1, 1), (q_2, 2), ...]`
    /// with `self = lc * prod q_j^j`, each `q_j` monic and square-free,
    /// omitting trivial (constant) factors.
    pub fn square_free_decomposition(&self) -> Vec<(Self, u32)> {
        let f = self.make_monic();
        if f.is_constant() {
            return Vec::new();
        }
        let df = f.derivative();
        let a0 = Self::gcd(&f, &df);
        let mut b = f.try_div_exact(&a0).unwrap();
        let mut c = df.try_div_exact(&a0).unwrap();
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1u32;
        while !b.is_constant() {
            let a = Self::gcd(&b, &d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.try_div_exact(&a).unwrap();
            c = d.try_div_exact(&a).unwrap();
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }
}

/// GCD in the Euclidean ring Z[i]: repeated division with componentwise
/// rounding, which shrinks the norm by at least half each step. Inputs must
/// have integer components; the result is defined up to a unit.
pub(crate) fn gauss_int_gcd(a: &GaussRat, b: &GaussRat) -> GaussRat {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let q = a.checked_div(&b).unwrap();
        let q_rounded = GaussRat::new(
            Rational::from_integer(round_rational(&q.re)),
            Rational::from_integer(round_rational(&q.im)),
        );
        let r = &a - &(&q_rounded * &b);
        a = b;
        b = r;
    }
    a
}

/// Nearest integer (ties toward +inf; any rounding within 1/2 preserves the
/// Euclidean bound).
fn round_rational(r: &Rational) -> BigInt {
    let two = BigInt::from(2);
    let num = r.numer() * &two + r.denom();
    num.div_floor(&(r.denom() * &two))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    fn poly(cs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(cs.iter().map(|&c| g(c)).collect())
    }

    #[test]
    fn divrem_exact_and_remainder() {
        // (W^2 - 1) / (W - 1) = W + 1
        let p = poly(&[-1, 0, 1]);
        let d = poly(&[-1, 1]);
        let (q, r) = p.divrem(&d);
        assert_eq!(q, poly(&[1, 1]));
        assert!(r.is_zero());

        let (q, r) = poly(&[1, 0, 1]).divrem(&poly(&[-1, 1]));
        assert_eq!(q, poly(&[1, 1]));
        assert_eq!(r, poly(&[2]));
    }

    #[test]
    fn gcd_of_shared_factor() {
        // gcd((W-1)(W-2), (W-1)(W-3)) = W - 1
        let a = poly(&[2, -3, 1]);
        let b = poly(&[3, -4, 1]);
        assert_eq!(UniPoly::gcd(&a, &b), poly(&[-1, 1]));
    }

    #[test]
    fn shift_matches_expansion() {
        // (W+1)^2 = W^2 + 2W + 1 from shifting W^2 by 1
        let p = poly(&[0, 0, 1]);
        assert_eq!(p.shift(&g(1)), poly(&[1, 2, 1]));
    }

    #[test]
    fn deflation_checks_the_root() {
        let p = poly(&[-2, 1]).mul(&poly(&[-3, 1]));
        let q = p.deflate(&g(2)).unwrap();
        assert_eq!(q, poly(&[-3, 1]));
        assert!(p.deflate(&g(5)).is_none());
    }

    #[test]
    fn square_free_decomposition_splits_multiplicities() {
        // (W-1)^2 (W+2)
        let p = poly(&[-1, 1]).mul(&poly(&[-1, 1])).mul(&poly(&[2, 1]));
        let sf = p.square_free_decomposition();
        assert_eq!(sf, vec![(poly(&[2, 1]), 1), (poly(&[-1, 1]), 2)]);
    }

    #[test]
    fn complex_coefficients() {
        // W^2 + 1 = (W - i)(W + i)
        let p = poly(&[1, 0, 1]);
        let q = p.deflate(&GaussRat::i()).unwrap();
        assert_eq!(q, UniPoly::from_coeffs(vec![GaussRat::i(), g(1)]));
        assert!(q.deflate(&-GaussRat::i()).unwrap().is_constant());
    }
}
