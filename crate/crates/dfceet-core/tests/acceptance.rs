//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the quantity it measured. Everything symbolic is checked by structural
//! equality of canonical forms (zero tolerance); numeric checks state their
//! tolerance explicitly.

mod common;

use common::*;
use dfceet_core::fuzzy::{AlphaPoly, FuzzyScalar, FuzzyFunction, Side, ValidityGrid};
use dfceet_core::scalar::{rat, ratio, GaussRat};
use dfceet_core::solver::{solve, solve_unchecked, DiffCase, SolverOptions};
use dfceet_core::symexpr::{AlphaExpPoly, ExpPolyExpr, Var};
use dfceet_core::table::table_rows;
use dfceet_core::ratfunc::separate;
use dfceet_core::transform::{
    convolve_image, derivative_image, forward, forward_single, inverse,
};
use dfceet_core::verify::{numeric_forward_check, residual, VerifyConfig};
use num::complex::Complex64;
use rand::Rng;
use std::time::Instant;

#[test]
fn criterion_1_reference_problem_exact_reproduction() {
    let p = example_problem();
    let start = Instant::now();
    let s = solve(&p, &SolverOptions::default()).unwrap();
    let elapsed = start.elapsed();

    let expected = fuzzy("(2+alpha)*e^(x+y)", "(4-alpha)*e^(x+y)");
    assert_eq!(s.value, expected, "solution differs structurally");
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "solve took {elapsed:?}, budget 1 s"
    );
    eprintln!(
        "criterion 1 PASS: reference problem solved to (2+alpha)e^(x+y), (4-alpha)e^(x+y) \
         structurally in {elapsed:?}"
    );
}

#[test]
fn criterion_2_rule_table_fidelity() {
    // three rational instantiations per parameterized row
    let instantiations = [
        (rat(1), rat(1), 1u32, 2u32),
        (ratio(1, 2), rat(2), 0, 0),
        (rat(3), ratio(1, 3), 2, 3),
    ];
    let mut checked = 0;
    for (a, b, r, m) in &instantiations {
        for row in table_rows(a, b, *r, *m) {
            assert!(
                row.matches(),
                "row {} mismatch at a={a}, b={b}, r={r}, m={m}",
                row.index
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 30);
    eprintln!(
        "criterion 2 PASS: rules 1-10 match printed forms exactly at 3 instantiations \
         (rule 2 in corrected exponent form)"
    );
}

#[test]
fn criterion_3_convolution_rule() {
    let mut r = rng(0x5eed_0003);
    for case in 0..100 {
        let f = rand_exp_poly(&mut r, 3, 2);
        let g = rand_exp_poly(&mut r, 3, 2);
        // image of the symbolic convolution vs the reduced product of the
        // images, compared in canonical partial-fraction form (the two
        // representations are in exact bijection)
        let lhs = forward(&f.convolve(&g));
        let rhs = separate(&convolve_image(&forward(&f), &forward(&g))).unwrap();
        assert_eq!(lhs, rhs, "case {case}: f={f}, g={g}");
    }
    eprintln!("criterion 3 PASS: convolution rule exact on 100 random pairs");
}

#[test]
fn criterion_4_derivative_images() {
    let mut r = rng(0x5eed_0004);
    for case in 0..100 {
        let f = rand_exp_poly(&mut r, 3, 2);
        let h = r.random_range(1..=3u32);
        let j = r.random_range(1..=3u32);
        let what = forward(&f).to_birat();

        let x_ics: Vec<_> = (0..h)
            .map(|k| {
                forward_single(&f.diff_n(Var::X, k).trace_at_zero(Var::X), Var::Y).unwrap()
            })
            .collect();
        let img = derivative_image(Var::X, h, &x_ics).unwrap();
        let lhs = forward(&f.diff_n(Var::X, h)).to_birat();
        assert_eq!(lhs, img.apply(&what), "case {case} x-order {h}: f={f}");

        let y_ics: Vec<_> = (0..j)
            .map(|k| {
                forward_single(&f.diff_n(Var::Y, k).trace_at_zero(Var::Y), Var::X).unwrap()
            })
            .collect();
        let img = derivative_image(Var::Y, j, &y_ics).unwrap();
        let lhs = forward(&f.diff_n(Var::Y, j)).to_birat();
        assert_eq!(lhs, img.apply(&what), "case {case} y-order {j}: f={f}");
    }
    eprintln!("criterion 4 PASS: derivative images exact on 100 random functions, orders <= 3");
}

#[test]
fn criterion_5_bijection() {
    let mut r = rng(0x5eed_0005);
    for case in 0..100 {
        let f = rand_exp_poly(&mut r, 5, 3);
        assert_eq!(inverse(&forward(&f)), f, "inverse∘forward case {case}");
    }
    for case in 0..100 {
        let t = rand_transform_expr(&mut r, 5);
        assert_eq!(forward(&inverse(&t)), t, "forward∘inverse case {case}");
    }
    eprintln!("criterion 5 PASS: bijection holds structurally on 200 random instances");
}

#[test]
fn criterion_6_numeric_anchors() {
    // rule-4 instance: e^-(x+y) at u = v = n = 1 has image -i/2
    let check = numeric_forward_check(&lower("e^(-x-y)"), 1.0, 1.0, 1, 40.0, 40).unwrap();
    assert!((check.exact - Complex64::new(0.0, -0.5)).norm() < 1e-12);
    assert!(check.gap < 1e-6, "anchor gap {}", check.gap);

    // two further decaying instances
    let check2 = numeric_forward_check(&lower("x*e^(-2*x-y)"), 1.0, 1.0, 1, 40.0, 40).unwrap();
    assert!(check2.gap < 1e-6, "gap {}", check2.gap);
    let check3 =
        numeric_forward_check(&lower("y*e^(-x-3*y) + e^(-2*x-2*y)"), 1.0, 2.0, 1, 40.0, 40)
            .unwrap();
    assert!(check3.gap < 1e-6, "gap {}", check3.gap);
    eprintln!(
        "criterion 6 PASS: defining-integral anchors within 1e-6 \
         (gaps {:.2e}, {:.2e}, {:.2e})",
        check.gap, check2.gap, check3.gap
    );
}

#[test]
fn criterion_7_manufactured_solutions() {
    let mut r = rng(0x5eed_0007);
    let opts = SolverOptions::default();
    let cfg = VerifyConfig::default();
    let mut worst_residual: f64 = 0.0;
    for case in 0..50 {
        let made = manufacture(&mut r);
        let s = solve(&made.spec, &opts)
            .unwrap_or_else(|e| panic!("case {case} failed to solve: {e}"));
        assert_eq!(s.value, made.solution, "case {case}: exact recovery failed");
        let report = residual(&made.spec, &s, &cfg);
        assert!(
            report.pass && report.lower.max <= 1e-7 && report.upper.max <= 1e-7,
            "case {case}: residual {report}"
        );
        worst_residual = worst_residual.max(report.lower.max.max(report.upper.max));
    }

    // perturbation sensitivity on the reference problem: bump the lower
    // coefficient 2 -> 2.01 and the residual must exceed 1e-3
    let p = example_problem();
    let mut s = solve(&p, &opts).unwrap();
    let e = lower("e^(x+y)");
    s.value = FuzzyFunction::new(
        AlphaExpPoly::from_slices(vec![
            e.scale(&GaussRat::from_rational(ratio(201, 100))),
            e.clone(),
        ]),
        s.value.upper.clone(),
    );
    let report = residual(&p, &s, &cfg);
    assert!(
        report.lower.max > 1e-3,
        "perturbed residual only {:.3e}",
        report.lower.max
    );

    eprintln!(
        "criterion 7 PASS: 50 manufactured specs recovered exactly, residual max {:.2e} \
         (<= 1e-7); 1e-2 perturbation raises residual to {:.2e} (> 1e-3)",
        worst_residual, report.lower.max
    );
}

#[test]
fn criterion_8_fuzzy_arithmetic() {
    let mut r = rng(0x5eed_0008);
    let grid = ValidityGrid::default();

    let rand_valid_scalar = |r: &mut rand_chacha::ChaCha8Rng| {
        let q = |r: &mut rand_chacha::ChaCha8Rng, lo: i64, hi: i64| {
            ratio(r.random_range(lo..=hi), r.random_range(1..=3))
        };
        let r0 = q(r, -6, 6);
        let r1 = q(r, 0, 4);
        let r2 = q(r, 0, 2);
        let s1 = q(r, 0, 4);
        let s2 = q(r, 0, 2);
        let pad = q(r, 0, 4);
        let s0 = &r0 + &r1 + &r2 + &s1 + &s2 + &pad;
        FuzzyScalar::new(
            AlphaPoly::from_coeffs(vec![r0, r1, r2]),
            AlphaPoly::from_coeffs(vec![s0, -s1, -s2]),
        )
    };

    for case in 0..1000 {
        let a = rand_valid_scalar(&mut r);
        let b = rand_valid_scalar(&mut r);
        a.validate(&grid).unwrap();
        b.validate(&grid).unwrap();
        let got = a.mul_interval(&b, &grid);
        assert_eq!(got.len(), 11);
        for (alpha, (lo, hi)) in got {
            // brute force over the explicit four-product set
            let vl = a.lower.eval(&alpha);
            let vu = a.upper.eval(&alpha);
            let zl = b.lower.eval(&alpha);
            let zu = b.upper.eval(&alpha);
            let mut products = [&vl * &zl, &vl * &zu, &vu * &zl, &vu * &zu];
            products.sort();
            assert_eq!(lo, products[0], "case {case} alpha {alpha}");
            assert_eq!(hi, products[3], "case {case} alpha {alpha}");
        }
    }

    // validity: accept the reference inputs, reject the canned invalid ones
    let good = FuzzyScalar::new(
        AlphaPoly::from_coeffs(vec![rat(2), rat(1)]),
        AlphaPoly::from_coeffs(vec![rat(4), rat(-1)]),
    );
    assert!(good.validate(&grid).is_ok());
    assert!(fuzzy("(2+alpha)*e^(x)", "(4-alpha)*e^(x)").validate(&grid).is_ok());

    let crossing = FuzzyScalar::new(
        AlphaPoly::from_coeffs(vec![rat(0), rat(1)]),
        AlphaPoly::from_coeffs(vec![rat(1), rat(-1)]),
    );
    assert!(crossing.validate(&grid).is_err());
    let lower_decreasing = FuzzyScalar::new(
        AlphaPoly::from_coeffs(vec![rat(1), rat(-1)]),
        AlphaPoly::from_coeffs(vec![rat(2)]),
    );
    assert!(lower_decreasing.validate(&grid).is_err());
    let upper_increasing = FuzzyScalar::new(
        AlphaPoly::from_coeffs(vec![rat(0)]),
        AlphaPoly::from_coeffs(vec![rat(1), rat(1)]),
    );
    assert!(upper_increasing.validate(&grid).is_err());

    eprintln!(
        "criterion 8 PASS: interval product matches brute force on 1000 pairs x 11 levels; \
         validity accepts reference inputs and rejects all three canned violations"
    );
}

#[test]
fn criterion_9_case_ii_swap_symmetry() {
    let mut r = rng(0x5eed_0009);
    let opts = SolverOptions::default();

    // literal form: swap lower/upper in every fuzzy input and toggle the
    // case flag; outputs must swap exactly. Exercised on specs with crisp
    // initial conditions and genuinely fuzzy solution/forcing, where the
    // transform-domain equations make the symmetry an identity. The swapped
    // spec inverts the fuzzy ordering of g, so the ungated pipeline is used.
    for case in 0..20 {
        let start_case = if case % 2 == 0 { DiffCase::I } else { DiffCase::II };
        let made = manufacture_crisp_ics(&mut r, start_case);
        let s1 = solve_unchecked(&made.spec, &opts).unwrap();

        let mut swapped = made.spec.clone();
        swapped.forcing = swapped.forcing.swap_sides();
        swapped.x_ics = swapped.x_ics.iter().map(|ic| ic.swap_sides()).collect();
        swapped.y_ics = swapped.y_ics.iter().map(|ic| ic.swap_sides()).collect();
        swapped.case = match start_case {
            DiffCase::I => DiffCase::II,
            DiffCase::II => DiffCase::I,
        };
        let s2 = solve_unchecked(&swapped, &opts).unwrap();
        assert_eq!(
            s2.value,
            s1.value.swap_sides(),
            "case {case}: swap symmetry violated"
        );
    }

    // mirror identity on fully fuzzy inputs: toggling the case flag swaps
    // which side's initial conditions each equation consumes, so swapping
    // only the forcing sides must swap the outputs exactly even when the
    // initial conditions are alpha-dependent
    for case in 0..20 {
        let made = manufacture(&mut r);
        let s1 = solve_unchecked(&made.spec, &opts).unwrap();
        let mut mirrored = made.spec.clone();
        mirrored.forcing = mirrored.forcing.swap_sides();
        mirrored.case = DiffCase::II;
        let s2 = solve_unchecked(&mirrored, &opts).unwrap();
        assert_eq!(
            s2.value,
            s1.value.swap_sides(),
            "fuzzy mirror case {case}"
        );
    }

    eprintln!(
        "criterion 9 PASS: case-(ii) swap symmetry exact on 20 random crisp-IC specs, \
         plus the forcing-swap mirror identity on 20 fully fuzzy specs"
    );
}

#[test]
fn solution_passes_independent_checks() {
    // every solver output on a valid spec passes the residual and the
    // initial-condition trace check at the default tolerance
    let p = example_problem();
    let s = solve(&p, &SolverOptions::default()).unwrap();
    let cfg = VerifyConfig::default();
    let report = residual(&p, &s, &cfg);
    assert!(report.pass, "{report}");
    let ic = dfceet_core::verify::check_ics(&p, &s, &cfg);
    assert!(ic.pass, "{ic}");
    // exercise the fuzzy container helpers the criteria rely on
    assert_eq!(s.value.pairs(Side::Lower).len(), 2);
    assert!(!s.value.is_crisp());
    let _ = ExpPolyExpr::zero();
}
