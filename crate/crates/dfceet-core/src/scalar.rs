//! Exact arithmetic over the rationals and the Gaussian rationals Q(i).
//!
//! Every coefficient in the symbolic engine lives here. Rationals are backed
//! by arbitrary-precision integers (`num`); intermediate GCD and
//! partial-fraction work routinely inflates coefficients far beyond 64 bits.
//! Values are canonicalized eagerly so that structural equality is semantic
//! equality.

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exact rational number in canonical form (positive denominator, reduced).
/// `BigRational` maintains both invariants on every operation.
pub type Rational = BigRational;

/// Shorthand for a small integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses a rational literal: `3`, `-7`, `1/2`, `2.5`. Decimal literals are
/// converted exactly (no float round-trip).
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty rational literal".into());
    }
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in {s:?}"))?;
        let den: BigInt = d
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in {s:?}"))?;
        if den.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let sign = if int_part.trim_start().starts_with('-') {
            -1
        } else {
            1
        };
        let int: BigInt = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            BigInt::zero()
        } else {
            int_part
                .parse()
                .map_err(|_| format!("bad integer part in {s:?}"))?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad fractional part in {s:?}"));
        }
        let digits: BigInt = frac_part
            .parse()
            .map_err(|_| format!("bad fractional part in {s:?}"))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac = Rational::new(digits, scale);
        let int = Rational::from_integer(int);
        return Ok(if sign < 0 { int - frac } else { int + frac });
    }
    let n: BigInt = s.parse().map_err(|_| format!("bad integer {s:?}"))?;
    Ok(Rational::from_integer(n))
}

/// Renders `r` the way the expression grammar expects (`3`, `-1/2`).
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Errors from scalar operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarError {
    DivisionByZero,
    /// The value does not fit in a machine float.
    Overflow,
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::DivisionByZero => write!(f, "division by zero"),
            ScalarError::Overflow => write!(f, "value exceeds machine float range"),
        }
    }
}

impl std::error::Error for ScalarError {}

/// Gaussian rational: an element of Q(i) with exact rational real and
/// imaginary parts. The coefficient field of the whole engine; in particular
/// it holds the imaginary unit and every pole location.
///
/// The derived `Ord` is lexicographic on (re, im). It is used for canonical
/// term ordering, not as a numeric order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussRat {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRat {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussRat {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    /// `n/d` as a real Gaussian rational.
    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(ratio(n, d))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `|z|^2 = z * conj(z)`, always a rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse. Errors on zero.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(GaussRat {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    /// Exact division. Errors when `rhs` is zero.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    /// `self^k` with `x^0 = 1` (the empty product), by binary exponentiation.
    pub fn pow(&self, k: u32) -> Self {
        let mut base = self.clone();
        let mut k = k;
        let mut acc = GaussRat::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Nearest machine complex value. Errors when either component is outside
    /// the finite f64 range.
    pub fn to_c64(&self) -> Result<Complex64, ScalarError> {
        let re = self.re.to_f64().ok_or(ScalarError::Overflow)?;
        let im = self.im.to_f64().ok_or(ScalarError::Overflow)?;
        if !re.is_finite() || !im.is_finite() {
            return Err(ScalarError::Overflow);
        }
        Ok(Complex64::new(re, im))
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: GaussRat) -> GaussRat {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: &GaussRat) -> GaussRat {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -&self
    }
}

/// Panicking division, for contexts where the divisor is known nonzero.
impl Div for &GaussRat {
    type Output = GaussRat;
    fn div(self, rhs: &GaussRat) -> GaussRat {
        self.checked_div(rhs).expect("division by zero GaussRat")
    }
}

impl Div for GaussRat {
    type Output = GaussRat;
    fn div(self, rhs: GaussRat) -> GaussRat {
        &self / &rhs
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", rational_to_string(&self.re));
        }
        if self.re.is_zero() {
            if self.im.is_one() {
                return write!(f, "i");
            }
            if self.im == -Rational::one() {
                return write!(f, "-i");
            }
            return write!(f, "{}*i", rational_to_string(&self.im));
        }
        let im_abs = self.im.abs();
        let sign = if self.im.is_negative() { "-" } else { "+" };
        if im_abs.is_one() {
            write!(f, "{} {} i", rational_to_string(&self.re), sign)
        } else {
            write!(
                f,
                "{} {} {}*i",
                rational_to_string(&self.re),
                sign,
                rational_to_string(&im_abs)
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::integer::Integer;
    use proptest::prelude::*;

    fn g(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> GaussRat {
        GaussRat::new(ratio(re_n, re_d), ratio(im_n, im_d))
    }

    #[test]
    fn conjugate_product_is_two() {
        let a = g(1, 1, 1, 1); // 1+i
        let b = g(1, 1, -1, 1); // 1-i
        assert_eq!(&a * &b, GaussRat::from_int(2));
    }

    #[test]
    fn one_over_i_is_minus_i() {
        let q = GaussRat::one().checked_div(&GaussRat::i()).unwrap();
        assert_eq!(q, -GaussRat::i());
    }

    #[test]
    fn half_plus_i_plus_half_minus_i_is_one() {
        let a = g(1, 2, 1, 1);
        let b = g(1, 2, -1, 1);
        assert_eq!(&a + &b, GaussRat::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            GaussRat::one().checked_div(&GaussRat::zero()),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(GaussRat::i().pow(2), GaussRat::from_int(-1));
    }

    #[test]
    fn one_plus_i_squared_is_two_i() {
        let z = g(1, 1, 1, 1);
        assert_eq!(z.pow(2), GaussRat::new(rat(0), rat(2)));
    }

    #[test]
    fn anything_to_the_zero_is_one() {
        assert_eq!(GaussRat::from_int(7).pow(0), GaussRat::one());
        assert_eq!(GaussRat::zero().pow(0), GaussRat::one());
    }

    #[test]
    fn to_c64_basics() {
        let third = GaussRat::from_ratio(1, 3).to_c64().unwrap();
        assert!((third.re - 1.0 / 3.0).abs() <= f64::EPSILON);
        assert_eq!(third.im, 0.0);

        let z = GaussRat::new(rat(0), ratio(-1, 2)).to_c64().unwrap();
        assert_eq!(z, Complex64::new(0.0, -0.5));
    }

    #[test]
    fn to_c64_overflow() {
        let huge = Rational::from_integer(BigInt::from(10).pow(400));
        let z = GaussRat::from_rational(huge);
        assert_eq!(z.to_c64(), Err(ScalarError::Overflow));
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational("1/2").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("2.5").unwrap(), ratio(5, 2));
        assert_eq!(parse_rational("-0.125").unwrap(), ratio(-1, 8));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    fn arb_gauss() -> impl Strategy<Value = GaussRat> {
        (
            -20i64..=20,
            1i64..=12,
            -20i64..=20,
            1i64..=12,
        )
            .prop_map(|(a, b, c, d)| g(a, b, c, d))
    }

    proptest! {
        #[test]
        fn canonical_form_after_ops(x in arb_gauss(), y in arb_gauss()) {
            for z in [&x + &y, &x * &y, &x - &y] {
                for part in [&z.re, &z.im] {
                    prop_assert!(part.denom().is_positive());
                    prop_assert!(part.numer().gcd(part.denom()).is_one() || part.numer().is_zero());
                }
            }
        }

        #[test]
        fn exact_round_trip(x in arb_gauss(), y in arb_gauss()) {
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!((&x * &y).checked_div(&y).unwrap(), x);
            }
        }

        #[test]
        fn conjugation_is_a_homomorphism(x in arb_gauss(), y in arb_gauss()) {
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
            prop_assert_eq!(x.conj().conj(), x.clone());
            prop_assert!((&x * &x.conj()).is_real());
        }
    }
}
