//! Display of transform-domain values in powers of u and v (the integral
//! variables) instead of the canonical indeterminates U = iu^n, V = iv^n.
//!
//! Two renderers: `render_power_form` multiplies each partial fraction by
//! conjugate factors so denominators become real polynomials in u^2n, v^2n
//! (the familiar table shapes like `(1 + iu)(1 + iv)/((1 + u^2)(1 + v^2))`),
//! while `render_birat_powers` substitutes directly into a reduced rational
//! function, factoring the denominator axis-wise when it is separable.
//! Both are presentation only; the algebra never depends on n.

use crate::ratfunc::{BiPoly, BiRat, TransformExpr, UniPoly};
use crate::scalar::GaussRat;
use num::traits::{One, Signed, Zero};

fn u_pow_name(var: &str, n: i64, k: u32) -> String {
    // (var^n)^k printed with the literal exponent n*k
    let e = n * k as i64;
    match e {
        0 => "1".to_string(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

/// `a + i*u^n` (numerator-style conjugate factor), omitting zero parts.
fn conj_num_factor(a: &GaussRat, var: &str, n: i64) -> String {
    let iu = format!("i*{}", u_pow_name(var, n, 1));
    if a.is_zero() {
        iu
    } else {
        format!("({a} + {iu})")
    }
}

/// `a^2 + u^(2n)` (denominator-style real factor).
fn conj_den_factor(a: &GaussRat, var: &str, n: i64) -> String {
    let usq = u_pow_name(var, 2 * n, 1);
    let a2 = a.pow(2);
    if a2.is_zero() {
        usq
    } else {
        format!("({a2} + {usq})")
    }
}

/// Renders a sum of partial fractions in conjugate-multiplied power form.
pub fn render_power_form(t: &TransformExpr, n: i64) -> String {
    if t.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for s in t.terms() {
        // c/((U-a)^p (V-b)^q) = c (-1)^(p+q) (a+iu^n)^p (b+iv^n)^q
        //                       / ((a^2+u^2n)^p (b^2+v^2n)^q)
        let sign_flips = s.mult_u + s.mult_v;
        let coeff = if sign_flips % 2 == 0 {
            s.coeff.clone()
        } else {
            -s.coeff.clone()
        };
        let pow = |base: String, k: u32| {
            if k == 1 {
                base
            } else if base.starts_with('(') && base.ends_with(')') {
                format!("{base}^{k}")
            } else {
                format!("({base})^{k}")
            }
        };
        let num_u = pow(conj_num_factor(&s.pole_u, "u", n), s.mult_u);
        let num_v = pow(conj_num_factor(&s.pole_v, "v", n), s.mult_v);
        let den_u = pow(conj_den_factor(&s.pole_u, "u", n), s.mult_u);
        let den_v = pow(conj_den_factor(&s.pole_v, "v", n), s.mult_v);
        let coeff_str = if coeff.is_one() {
            String::new()
        } else {
            format!("({coeff})*")
        };
        parts.push(format!("{coeff_str}{num_u}*{num_v} / ({den_u}*{den_v})"));
    }
    parts.join(" + ")
}

/// Prints a polynomial in one transform variable as a polynomial in the
/// corresponding integral variable: `P(iu^n)` with monomial coefficients
/// `p_k i^k` made explicit.
fn unipoly_powers(p: &UniPoly, var: &str, n: i64) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let coeff = c * &GaussRat::i().pow(k as u32);
        let mono = u_pow_name(var, n, k as u32);
        let part = if k == 0 {
            format!("{coeff}")
        } else if coeff.is_one() {
            mono
        } else if coeff.is_real() && coeff.re.is_negative() && coeff.re.abs().is_one() {
            format!("-{mono}")
        } else {
            format!("({coeff})*{mono}")
        };
        parts.push(part);
    }
    parts.join(" + ")
}

/// Prints a bivariate polynomial in powers of u and v.
fn bipoly_powers(p: &BiPoly, n: i64) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (&(du, dv), c) in p.terms() {
        let coeff = c * &GaussRat::i().pow(du + dv);
        let mut factors = Vec::new();
        if du > 0 {
            factors.push(u_pow_name("u", n, du));
        }
        if dv > 0 {
            factors.push(u_pow_name("v", n, dv));
        }
        let mono = factors.join("*");
        let part = if mono.is_empty() {
            format!("{coeff}")
        } else if coeff.is_one() {
            mono
        } else {
            format!("({coeff})*{mono}")
        };
        parts.push(part);
    }
    parts.join(" + ")
}

/// Whether the transformed leading coefficient of `p(i u^n)` points into the
/// negative half (so the printed factor would lead with a minus sign).
fn flips_sign(p: &UniPoly) -> bool {
    match p.degree() {
        None => false,
        Some(d) => {
            let c = p.leading().unwrap() * &GaussRat::i().pow(d as u32);
            c.re.is_negative() || (c.re.is_zero() && c.im.is_negative())
        }
    }
}

/// Renders a reduced rational function in powers of u and v, factoring the
/// denominator into its U-part and V-part when it separates. Factors whose
/// substituted form would lead with a minus sign are negated pairwise into
/// the numerator, reproducing the usual real-denominator presentation.
pub fn render_birat_powers(f: &BiRat, n: i64) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    if f.den().as_constant().is_some_and(|c| c.is_one()) {
        return bipoly_powers(f.num(), n);
    }
    let q0 = f.den().content_v();
    let prim = f
        .den()
        .try_div_exact(&BiPoly::from_unipoly(&q0, crate::ratfunc::BiVar::V))
        .unwrap();
    if prim.degree_v().unwrap_or(0) == 0 && !q0.is_constant() {
        let p0 = UniPoly::from_coeffs(prim.as_u_coeffs().iter().map(|c| c.coeff(0)).collect());
        let mut num = f.num().clone();
        let mut p0 = p0;
        let mut q0 = q0;
        if flips_sign(&p0) {
            p0 = p0.scale(&-GaussRat::one());
            num = num.scale(&-GaussRat::one());
        }
        if flips_sign(&q0) {
            q0 = q0.scale(&-GaussRat::one());
            num = num.scale(&-GaussRat::one());
        }
        return format!(
            "[{}] / [({})*({})]",
            bipoly_powers(&num, n),
            unipoly_powers(&p0, "u", n),
            unipoly_powers(&q0, "v", n)
        );
    }
    format!(
        "[{}] / [{}]",
        bipoly_powers(f.num(), n),
        bipoly_powers(f.den(), n)
    )
}
