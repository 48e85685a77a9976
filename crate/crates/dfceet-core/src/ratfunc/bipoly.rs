//! Exact bivariate polynomials in the transform variables U and V over Q(i),
//! with a full Gauss-lemma bivariate GCD: Euclid in (Q(i)(V))[U] realized as
//! a primitive pseudo-remainder sequence plus content handling.

use crate::ratfunc::unipoly::UniPoly;
use crate::scalar::GaussRat;
use num::complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

/// Map from `(deg_u, deg_v)` to coefficient; zero coefficients are never
/// stored, so the zero polynomial is the empty map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    coeffs: BTreeMap<(u32, u32), GaussRat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut p = Self::zero();
        p.add_monomial(c, 0, 0);
        p
    }

    pub fn var_u() -> Self {
        Self::monomial(GaussRat::one(), 1, 0)
    }

    pub fn var_v() -> Self {
        Self::monomial(GaussRat::one(), 0, 1)
    }

    pub fn monomial(c: GaussRat, du: u32, dv: u32) -> Self {
        let mut p = Self::zero();
        p.add_monomial(c, du, dv);
        p
    }

    pub fn add_monomial(&mut self, c: GaussRat, du: u32, dv: u32) {
        if c.is_zero() {
            return;
        }
        let key = (du, dv);
        let entry = self.coeffs.entry(key).or_insert_with(GaussRat::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Some(c) when the polynomial is the constant c (including zero).
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.coeffs.len() {
            0 => Some(GaussRat::zero()),
            1 => self.coeffs.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn degree_u(&self) -> Option<u32> {
        self.coeffs.keys().map(|(u, _)| *u).max()
    }

    pub fn degree_v(&self) -> Option<u32> {
        self.coeffs.keys().map(|(_, v)| *v).max()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &GaussRat)> {
        self.coeffs.iter()
    }

    /// Leading term in lexicographic order with U major.
    pub fn leading_lex(&self) -> Option<((u32, u32), GaussRat)> {
        self.coeffs.iter().next_back().map(|(k, c)| (*k, c.clone()))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(du, dv), c) in rhs.coeffs.iter() {
            out.add_monomial(c.clone(), du, dv);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly {
            coeffs: self.coeffs.iter().map(|(k, a)| (*k, a * c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(au, av), a) in self.coeffs.iter() {
            for (&(bu, bv), b) in rhs.coeffs.iter() {
                out.add_monomial(a * b, au + bu, av + bv);
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

    pub fn eval(&self, u: &GaussRat, v: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for (&(du, dv), c) in self.coeffs.iter() {
            acc = &acc + &(&(c * &u.pow(du)) * &v.pow(dv));
        }
        acc
    }

    pub fn eval_c64(&self, u: Complex64, v: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(du, dv), c) in self.coeffs.iter() {
            let cc = c.to_c64().unwrap_or(Complex64::new(f64::NAN, 0.0));
            acc += cc * u.powi(du as i32) * v.powi(dv as i32);
        }
        acc
    }

    /// View as a polynomial in U with coefficients in Q(i)[V]:
    /// `out[k]` is the V-polynomial coefficient of `U^k`.
    pub fn as_u_coeffs(&self) -> Vec<UniPoly> {
        let deg = match self.degree_u() {
            None => return Vec::new(),
            Some(d) => d,
        };
        let mut out = vec![Vec::new(); deg as usize + 1];
        for (&(du, dv), c) in self.coeffs.iter() {
            let slot = &mut out[du as usize];
            if slot.len() <= dv as usize {
                slot.resize(dv as usize + 1, GaussRat::zero());
            }
            slot[dv as usize] = c.clone();
        }
        out.into_iter().map(UniPoly::from_coeffs).collect()
    }

    pub fn from_u_coeffs(coeffs: &[UniPoly]) -> Self {
        let mut out = Self::zero();
        for (du, p) in coeffs.iter().enumerate() {
            for (dv, c) in p.coeffs().iter().enumerate() {
                out.add_monomial(c.clone(), du as u32, dv as u32);
            }
        }
        out
    }

    /// Lifts a univariate polynomial into the bivariate ring.
    pub fn from_unipoly(p: &UniPoly, var: BiVar) -> Self {
        let mut out = Self::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            match var {
                BiVar::U => out.add_monomial(c.clone(), k as u32, 0),
                BiVar::V => out.add_monomial(c.clone(), 0, k as u32),
            }
        }
        out
    }

    /// Exact division by `(var - pole)` via synthetic division; None when
    /// the linear factor does not divide.
    pub fn deflate(&self, var: BiVar, pole: &GaussRat) -> Option<Self> {
        let coeffs = match var {
            BiVar::U => self.as_u_coeffs(),
            BiVar::V => self.transpose().as_u_coeffs(),
        };
        if coeffs.len() < 2 {
            return None;
        }
        let n = coeffs.len();
        let mut out = vec![UniPoly::zero(); n - 1];
        let mut carry = UniPoly::zero();
        for k in (0..n).rev() {
            let v = coeffs[k].add(&carry.scale(pole));
            if k == 0 {
                if !v.is_zero() {
                    return None;
                }
            } else {
                out[k - 1] = v.clone();
                carry = v;
            }
        }
        let p = Self::from_u_coeffs(&out);
        Some(match var {
            BiVar::U => p,
            BiVar::V => p.transpose(),
        })
    }

    /// Swaps the roles of U and V.
    pub fn transpose(&self) -> Self {
        BiPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(du, dv), c)| ((dv, du), c.clone()))
                .collect(),
        }
    }

    /// Content with respect to V: the monic GCD in Q(i)[V] of the
    /// U-coefficients.
    pub fn content_v(&self) -> UniPoly {
        let mut g = UniPoly::zero();
        for p in self.as_u_coeffs() {
            if !p.is_zero() {
                g = UniPoly::gcd(&g, &p);
            }
            if g.is_constant() && !g.is_zero() {
                return UniPoly::one();
            }
        }
        g
    }

    /// Exact quotient by lexicographic leading-term elimination, or None when
    /// the division leaves a remainder.
    pub fn try_div_exact(&self, d: &Self) -> Option<Self> {
        let (dk, dc) = d.leading_lex()?;
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while let Some((rk, rc)) = rem.leading_lex() {
            if rk.0 < dk.0 || rk.1 < dk.1 {
                return None;
            }
            let t = rc.checked_div(&dc).unwrap();
            let (tu, tv) = (rk.0 - dk.0, rk.1 - dk.1);
            let tm = Self::monomial(t, tu, tv);
            quo = quo.add(&tm);
            rem = rem.sub(&tm.mul(d));
        }
        Some(quo)
    }

    /// Normalizes so the lexicographic leading coefficient is 1.
    pub fn make_monic_lex(&self) -> Self {
        match self.leading_lex() {
            None => Self::zero(),
            Some((_, lc)) => self.scale(&lc.inv().unwrap()),
        }
    }

    /// Full bivariate GCD (monic in the lex leading term): Gauss's lemma
    /// splits each input into V-content times a primitive part; the contents'
    /// univariate GCD and the primitive parts' pseudo-remainder-sequence GCD
    /// multiply back together.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.make_monic_lex();
        }
        if b.is_zero() {
            return a.make_monic_lex();
        }
        let ca = a.content_v();
        let cb = b.content_v();
        let pa = a
            .try_div_exact(&Self::from_unipoly(&ca, BiVar::V))
            .expect("content divides");
        let pb = b
            .try_div_exact(&Self::from_unipoly(&cb, BiVar::V))
            .expect("content divides");
        let cont_gcd = UniPoly::gcd(&ca, &cb);
        let prim_gcd = primitive_prs_gcd(&pa.as_u_coeffs(), &pb.as_u_coeffs());
        Self::from_unipoly(&cont_gcd, BiVar::V)
            .mul(&prim_gcd)
            .make_monic_lex()
    }
}

/// Which variable of the bivariate ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BiVar {
    U,
    V,
}

/// GCD of two V-primitive polynomials viewed in (Q(i)(V))[U], via the
/// primitive pseudo-remainder sequence.
fn primitive_prs_gcd(a: &[UniPoly], b: &[UniPoly]) -> BiPoly {
    let mut r0: Vec<UniPoly> = a.to_vec();
    let mut r1: Vec<UniPoly> = b.to_vec();
    if r0.len() < r1.len() {
        std::mem::swap(&mut r0, &mut r1);
    }
    while !r1.is_empty() {
        let r2 = pseudo_rem(&r0, &r1);
        r0 = r1;
        r1 = primitive_part(r2);
    }
    let prim = primitive_part(r0);
    BiPoly::from_u_coeffs(&prim)
}

/// Fraction-free remainder of A by B in U (coefficients in Q(i)[V]); B must
/// be non-empty. The result differs from the true remainder by a power of
/// lc(B), which the primitive-part step removes.
fn pseudo_rem(a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
    let db = b.len() - 1;
    let lcb = b.last().unwrap().clone();
    let mut r: Vec<UniPoly> = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lcr = r.last().unwrap().clone();
        // r = lc(b) * r - lc(r) * U^(dr-db) * b
        let mut next = vec![UniPoly::zero(); dr];
        for (k, c) in r.iter().enumerate().take(dr) {
            next[k] = c.mul(&lcb);
        }
        for (k, c) in b.iter().enumerate().take(db) {
            let idx = k + dr - db;
            next[idx] = next[idx].sub(&c.mul(&lcr));
        }
        while next.last().is_some_and(|p| p.is_zero()) {
            next.pop();
        }
        r = next;
    }
    r
}

/// Divides out the GCD of the coefficient polynomials.
fn primitive_part(r: Vec<UniPoly>) -> Vec<UniPoly> {
    let mut g = UniPoly::zero();
    for p in &r {
        if !p.is_zero() {
            g = UniPoly::gcd(&g, p);
        }
    }
    if g.is_zero() || g.is_constant() {
        return r;
    }
    r.into_iter()
        .map(|p| {
            if p.is_zero() {
                p
            } else {
                p.try_div_exact(&g).expect("content divides")
            }
        })
        .collect()
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // print highest lex terms first
        for (&(du, dv), c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut printed = false;
            if !c.is_one() || (du == 0 && dv == 0) {
                write!(f, "({c})")?;
                printed = true;
            }
            for (name, d) in [("U", du), ("V", dv)] {
                if d > 0 {
                    if printed {
                        write!(f, "*")?;
                    }
                    printed = true;
                    if d == 1 {
                        write!(f, "{name}")?;
                    } else {
                        write!(f, "{name}^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
