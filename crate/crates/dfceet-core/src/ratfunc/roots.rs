//! Exact pole extraction: numeric root finding (Aberth-Ehrlich) used only to
//! generate candidates, followed by snapping to Gaussian rationals of
//! bounded denominator and exact verification by synthetic division.
//!
//! The input is first split into square-free factors by exact GCD
//! arithmetic, so the numeric stage only ever sees simple roots and stays
//! well conditioned regardless of multiplicities. Correctness never rests on
//! floating point: a snapped root is accepted only if the exact deflation
//! leaves remainder zero, and the deflation chain must terminate at a
//! constant.

use crate::ratfunc::unipoly::UniPoly;
use crate::ratfunc::RatFuncError;
use crate::scalar::{GaussRat, Rational};
use num::complex::Complex64;
use num::BigInt;

/// Largest denominator tried (per real/imaginary component) when snapping a
/// numeric root to a Gaussian rational.
pub const DEFAULT_SNAP_DENOMINATOR: u32 = 64;

/// Finds all roots of `p` with multiplicities, as exact Gaussian rationals.
/// Errors with the offending numeric value when a root does not snap.
pub fn snap_roots(p: &UniPoly, max_den: u32) -> Result<Vec<(GaussRat, u32)>, RatFuncError> {
    let deg = match p.degree() {
        None | Some(0) => return Ok(Vec::new()),
        Some(d) => d,
    };
    let _ = deg;
    let mut out: Vec<(GaussRat, u32)> = Vec::new();
    for (factor, mult) in p.square_free_decomposition() {
        let approx = aberth_roots(&factor);
        let mut remaining = factor.clone();
        for z in approx {
            let snapped = snap_complex(z, max_den);
            match remaining.deflate(&snapped) {
                Some(next) => remaining = next,
                None => return Err(RatFuncError::UnsnappableRoot { approx: z }),
            }
            out.push((snapped, mult));
        }
        // every root deflated exactly, so only the unit constant may remain
        debug_assert!(remaining.is_constant());
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Aberth-Ehrlich simultaneous iteration on a square-free polynomial.
fn aberth_roots(p: &UniPoly) -> Vec<Complex64> {
    let monic = p.make_monic();
    let n = monic.degree().unwrap();
    let coeffs: Vec<Complex64> = monic
        .coeffs()
        .iter()
        .map(|c| c.to_c64().expect("coefficient within float range"))
        .collect();
    let dcoeffs: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();
    let eval = |cs: &[Complex64], z: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in cs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };

    // Cauchy bound for the initial circle; offset angle avoids symmetry traps
    let radius = 1.0 + coeffs[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.39;
            Complex64::from_polar(radius.max(0.5), theta)
        })
        .collect();

    for _ in 0..200 {
        let mut max_step: f64 = 0.0;
        let snapshot = z.clone();
        for i in 0..n {
            let zi = snapshot[i];
            let pv = eval(&coeffs, zi);
            let dv = eval(&dcoeffs, zi);
            if pv.norm() == 0.0 {
                continue;
            }
            let newton = if dv.norm() > 0.0 { pv / dv } else { pv };
            let mut sum = Complex64::new(0.0, 0.0);
            for (j, &zj) in snapshot.iter().enumerate() {
                if j != i {
                    sum += 1.0 / (zi - zj);
                }
            }
            let denom = 1.0 - newton * sum;
            let step = if denom.norm() > 1e-300 {
                newton / denom
            } else {
                newton
            };
            z[i] = zi - step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step < 1e-14 {
            break;
        }
    }
    z
}

/// Nearest rational with denominator at most `max_den`.
fn snap_real(x: f64, max_den: u32) -> Rational {
    let mut best = (f64::INFINITY, Rational::from_integer(BigInt::from(0)));
    for d in 1..=max_den as i64 {
        let n = (x * d as f64).round();
        if !n.is_finite() {
            continue;
        }
        let err = (x - n / d as f64).abs();
        if err < best.0 {
            best = (
                err,
                Rational::new(BigInt::from(n as i64), BigInt::from(d)),
            );
        }
    }
    best.1
}

fn snap_complex(z: Complex64, max_den: u32) -> GaussRat {
    GaussRat::new(snap_real(z.re, max_den), snap_real(z.im, max_den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn g(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    fn poly(cs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(cs.iter().map(|&c| g(c)).collect())
    }

    #[test]
    fn conjugate_pair() {
        // U^2 + 1 -> {i, -i}
        let roots = snap_roots(&poly(&[1, 0, 1]), 64).unwrap();
        assert_eq!(roots, vec![(-GaussRat::i(), 1), (GaussRat::i(), 1)]);
    }

    #[test]
    fn double_root() {
        // (U-1)^2
        let roots = snap_roots(&poly(&[1, -2, 1]), 64).unwrap();
        assert_eq!(roots, vec![(g(1), 2)]);
    }

    #[test]
    fn irrational_root_is_rejected() {
        // U^2 - 2 has roots ±sqrt(2), outside Q(i)
        match snap_roots(&poly(&[-2, 0, 1]), 64) {
            Err(RatFuncError::UnsnappableRoot { approx }) => {
                assert!((approx.norm() - 2f64.sqrt()).abs() < 1e-6);
            }
            other => panic!("expected UnsnappableRoot, got {other:?}"),
        }
    }

    #[test]
    fn rational_roots_with_small_denominators() {
        // (U - 1/2)(U + 3/4)(U - 5), scaled to integer coefficients
        let p = UniPoly::from_coeffs(vec![GaussRat::from_rational(ratio(-1, 2)), g(1)])
            .mul(&UniPoly::from_coeffs(vec![
                GaussRat::from_rational(ratio(3, 4)),
                g(1),
            ]))
            .mul(&poly(&[-5, 1]));
        let roots = snap_roots(&p, 64).unwrap();
        let mut expected = vec![
            (GaussRat::from_rational(ratio(1, 2)), 1),
            (GaussRat::from_rational(ratio(-3, 4)), 1),
            (g(5), 1),
        ];
        expected.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(roots, expected);
    }

    #[test]
    fn soundness_product_reconstructs_input() {
        // mixed multiplicities and complex roots
        let p = poly(&[1, 0, 1]) // (U-i)(U+i)
            .mul(&poly(&[-1, 1]).mul(&poly(&[-1, 1]))) // (U-1)^2
            .mul(&poly(&[3, 1])); // (U+3)
        let roots = snap_roots(&p, 64).unwrap();
        let mut rebuilt = UniPoly::one();
        let mut count = 0;
        for (root, mult) in &roots {
            for _ in 0..*mult {
                rebuilt = rebuilt.mul(&UniPoly::linear(root));
                count += 1;
            }
        }
        assert_eq!(count, p.degree().unwrap());
        assert_eq!(rebuilt.scale(p.leading().unwrap()), p);
    }

    #[test]
    fn gaussian_integer_roots() {
        // (U - (1+i))(U - (1-i)) = U^2 - 2U + 2
        let p = poly(&[2, -2, 1]);
        let roots = snap_roots(&p, 64).unwrap();
        let expected_a = GaussRat::new(rat(1), rat(1));
        let expected_b = GaussRat::new(rat(1), rat(-1));
        assert!(roots.iter().any(|(r, m)| r == &expected_a && *m == 1));
        assert!(roots.iter().any(|(r, m)| r == &expected_b && *m == 1));
    }
}
