//! Shared generators for the integration suites: seeded random expressions,
//! random transform-domain values, and manufactured problems (pick the
//! solution first, compute the forcing term by substitution, so the exact
//! answer is known by construction).

use dfceet_core::fuzzy::{FuzzyFunction, ValidityGrid};
use dfceet_core::ratfunc::{SepTerm, TransformExpr};
use dfceet_core::scalar::{rat, ratio, GaussRat, Rational};
use dfceet_core::solver::{validate_spec, DiffCase, ProblemSpec, SolverOptions};
use dfceet_core::symexpr::{lower_to_exp_poly, parse_expr, AlphaExpPoly, ExpPolyExpr, Var};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn lower(text: &str) -> ExpPolyExpr {
    lower_to_exp_poly(&parse_expr(text).unwrap()).unwrap()
}

pub fn fuzzy(lo: &str, up: &str) -> FuzzyFunction {
    FuzzyFunction::build(
        &parse_expr(lo).unwrap(),
        &parse_expr(up).unwrap(),
        &ValidityGrid::default(),
    )
    .unwrap()
}

/// Small Gaussian rationals used as exponent rates and pole locations.
pub fn rand_rate(r: &mut ChaCha8Rng) -> GaussRat {
    let pool = [
        GaussRat::zero(),
        GaussRat::from_int(1),
        GaussRat::from_int(-1),
        GaussRat::from_int(2),
        GaussRat::from_ratio(1, 2),
        GaussRat::from_ratio(-1, 2),
        GaussRat::i(),
        -GaussRat::i(),
        GaussRat::new(rat(1), rat(1)),
        GaussRat::new(rat(-1), rat(1)),
    ];
    pool[r.random_range(0..pool.len())].clone()
}

pub fn rand_coeff(r: &mut ChaCha8Rng) -> GaussRat {
    loop {
        let re = ratio(r.random_range(-4i64..=4), r.random_range(1i64..=3));
        let im = if r.random_range(0..3) == 0 {
            ratio(r.random_range(-2i64..=2), 1)
        } else {
            Rational::from_integer(0.into())
        };
        let g = GaussRat::new(re, im);
        if !g.is_zero() {
            return g;
        }
    }
}

/// Random exponential polynomial with at most `max_terms` terms and
/// polynomial powers at most `max_pow`.
pub fn rand_exp_poly(r: &mut ChaCha8Rng, max_terms: usize, max_pow: u32) -> ExpPolyExpr {
    let mut out = ExpPolyExpr::zero();
    let terms = r.random_range(1..=max_terms);
    for _ in 0..terms {
        out = out.add(&ExpPolyExpr::monomial(
            rand_coeff(r),
            r.random_range(0..=max_pow),
            r.random_range(0..=max_pow),
            rand_rate(r),
            rand_rate(r),
        ));
    }
    out
}

/// Random separable partial-fraction sum with distinct pole keys.
pub fn rand_transform_expr(r: &mut ChaCha8Rng, max_terms: usize) -> TransformExpr {
    let mut out = TransformExpr::zero();
    let terms = r.random_range(1..=max_terms);
    for _ in 0..terms {
        out.add_term(SepTerm {
            coeff: rand_coeff(r),
            pole_u: rand_rate(r),
            mult_u: r.random_range(1..=3),
            pole_v: rand_rate(r),
            mult_v: r.random_range(1..=3),
        });
    }
    out
}

/// A manufactured problem together with its exact solution.
pub struct Manufactured {
    pub spec: ProblemSpec,
    pub solution: FuzzyFunction,
}

fn nonneg_pool(r: &mut ChaCha8Rng, pool: &[(i64, i64)]) -> Rational {
    let (n, d) = pool[r.random_range(0..pool.len())];
    ratio(n, d)
}

/// Positive base function `e^(ax+by) (1 + γ x y)` with a, b, γ >= 0.
fn rand_base(r: &mut ChaCha8Rng) -> ExpPolyExpr {
    let a = nonneg_pool(r, &[(0, 1), (1, 2), (1, 1), (3, 2)]);
    let b = nonneg_pool(r, &[(0, 1), (1, 2), (1, 1)]);
    let gamma = nonneg_pool(r, &[(0, 1), (1, 2), (1, 1)]);
    let exp = ExpPolyExpr::exponential(
        GaussRat::from_rational(a),
        GaussRat::from_rational(b),
    );
    let poly = ExpPolyExpr::one().add(
        &ExpPolyExpr::var(Var::X)
            .mul(&ExpPolyExpr::var(Var::Y))
            .scale(&GaussRat::from_rational(gamma)),
    );
    exp.mul(&poly)
}

fn rand_kernel(r: &mut ChaCha8Rng) -> ExpPolyExpr {
    let k0 = nonneg_pool(r, &[(1, 1), (1, 2), (2, 1)]);
    let kap = nonneg_pool(r, &[(0, 1), (1, 2), (1, 1)]);
    let lam = nonneg_pool(r, &[(0, 1), (1, 2), (1, 1)]);
    ExpPolyExpr::exponential(GaussRat::from_rational(kap), GaussRat::from_rational(lam))
        .scale(&GaussRat::from_rational(k0))
}

/// Applies the left-hand operator and subtracts the convolution term; the
/// construction oracle for the forcing term.
pub fn forcing_by_substitution(
    w: &FuzzyFunction,
    x_coeffs: &[Rational],
    y_coeffs: &[Rational],
    c: &Rational,
    kernel: &ExpPolyExpr,
) -> FuzzyFunction {
    let mut g = w.map_slices(|e| e.scale(&GaussRat::from_rational(c.clone())));
    for (h, a) in x_coeffs.iter().enumerate() {
        if a == &Rational::from_integer(0.into()) {
            continue;
        }
        g = g.add(
            &w.diff_n(Var::X, h as u32 + 1)
                .map_slices(|e| e.scale(&GaussRat::from_rational(a.clone()))),
        );
    }
    for (j, b) in y_coeffs.iter().enumerate() {
        if b == &Rational::from_integer(0.into()) {
            continue;
        }
        g = g.add(
            &w.diff_n(Var::Y, j as u32 + 1)
                .map_slices(|e| e.scale(&GaussRat::from_rational(b.clone()))),
        );
    }
    g.sub(&w.map_slices(|e| kernel.convolve(e)))
}

fn assemble_spec(
    w: FuzzyFunction,
    x_order: u32,
    y_order: u32,
    x_coeffs: Vec<Rational>,
    y_coeffs: Vec<Rational>,
    c: Rational,
    kernel: ExpPolyExpr,
    case: DiffCase,
) -> Manufactured {
    let forcing = forcing_by_substitution(&w, &x_coeffs, &y_coeffs, &c, &kernel);
    let x_ics = (0..x_order)
        .map(|t| w.diff_n(Var::X, t).trace_at_zero(Var::X))
        .collect();
    let y_ics = (0..y_order)
        .map(|t| w.diff_n(Var::Y, t).trace_at_zero(Var::Y))
        .collect();
    Manufactured {
        spec: ProblemSpec {
            x_order,
            y_order,
            x_coeffs,
            y_coeffs,
            c,
            kernel,
            forcing,
            x_ics,
            y_ics,
            case,
            n_display: 1,
        },
        solution: w,
    }
}

/// Fully fuzzy manufactured spec, regenerated until every input passes
/// validation (the substitution can produce a forcing term that violates
/// the fuzzy ordering; such draws are discarded).
pub fn manufacture(r: &mut ChaCha8Rng) -> Manufactured {
    let opts = SolverOptions::default();
    loop {
        let x_order = r.random_range(1..=2u32);
        let y_order = r.random_range(1..=2u32);
        let mut x_coeffs: Vec<Rational> = (1..x_order)
            .map(|_| nonneg_pool(r, &[(0, 1), (1, 1), (1, 2)]))
            .collect();
        x_coeffs.push(nonneg_pool(r, &[(1, 1), (1, 2), (2, 1)]));
        let mut y_coeffs: Vec<Rational> = (1..y_order)
            .map(|_| nonneg_pool(r, &[(0, 1), (1, 1), (1, 2)]))
            .collect();
        y_coeffs.push(nonneg_pool(r, &[(1, 1), (1, 2), (2, 1)]));
        let c = nonneg_pool(r, &[(0, 1), (1, 1), (2, 1)]);

        let base = rand_base(r);
        let r0 = nonneg_pool(r, &[(1, 1), (2, 1), (1, 2)]);
        let r1 = nonneg_pool(r, &[(0, 1), (1, 1), (1, 2)]);
        let s1 = nonneg_pool(r, &[(0, 1), (1, 1)]);
        let pad = nonneg_pool(r, &[(0, 1), (1, 2), (1, 1)]);
        let s0 = &r0 + &r1 + &s1 + &pad;

        let scale = |q: &Rational| GaussRat::from_rational(q.clone());
        let w = FuzzyFunction::new(
            AlphaExpPoly::from_slices(vec![base.scale(&scale(&r0)), base.scale(&scale(&r1))]),
            AlphaExpPoly::from_slices(vec![
                base.scale(&scale(&s0)),
                base.scale(&scale(&s1)).neg(),
            ]),
        );

        let made = assemble_spec(
            w,
            x_order,
            y_order,
            x_coeffs,
            y_coeffs,
            c,
            rand_kernel(r),
            DiffCase::I,
        );
        if validate_spec(&made.spec, &opts).is_ok() {
            return made;
        }
    }
}

/// Manufactured first-order spec whose initial conditions are crisp (the
/// fuzzy deviation carries an x*y factor, so both traces collapse) while the
/// solution and forcing stay genuinely fuzzy.
pub fn manufacture_crisp_ics(r: &mut ChaCha8Rng, case: DiffCase) -> Manufactured {
    let opts = SolverOptions::default();
    loop {
        let x_coeffs = vec![nonneg_pool(r, &[(1, 1), (1, 2), (2, 1)])];
        let y_coeffs = vec![nonneg_pool(r, &[(0, 1), (1, 1), (1, 2)])];
        let c = nonneg_pool(r, &[(0, 1), (1, 1)]);

        let base = rand_base(r);
        let xy = ExpPolyExpr::var(Var::X).mul(&ExpPolyExpr::var(Var::Y));
        let dev = base.mul(&xy);
        let r0 = nonneg_pool(r, &[(1, 1), (2, 1)]);
        let c0 = nonneg_pool(r, &[(0, 1), (1, 2)]);
        let c1 = nonneg_pool(r, &[(0, 1), (1, 2), (1, 1)]);
        let d1 = nonneg_pool(r, &[(0, 1), (1, 2)]);
        let pad = nonneg_pool(r, &[(1, 2), (1, 1)]);
        let d0 = &c0 + &c1 + &d1 + &pad;

        let scale = |q: &Rational| GaussRat::from_rational(q.clone());
        let w = FuzzyFunction::new(
            AlphaExpPoly::from_slices(vec![
                base.scale(&scale(&r0)).add(&dev.scale(&scale(&c0))),
                dev.scale(&scale(&c1)),
            ]),
            AlphaExpPoly::from_slices(vec![
                base.scale(&scale(&r0)).add(&dev.scale(&scale(&d0))),
                dev.scale(&scale(&d1)).neg(),
            ]),
        );

        let made = assemble_spec(
            w,
            1,
            1,
            x_coeffs,
            y_coeffs,
            c,
            rand_kernel(r),
            case,
        );
        // crisp ICs by construction
        assert!(made.spec.x_ics.iter().all(|ic| ic.is_crisp()));
        assert!(made.spec.y_ics.iter().all(|ic| ic.is_crisp()));
        if validate_spec(&made.spec, &opts).is_ok() {
            return made;
        }
    }
}

/// The second-order reference problem with kernel e^(x+y) and solution
/// ((2+alpha) e^(x+y), (4-alpha) e^(x+y)).
pub fn example_problem() -> ProblemSpec {
    let ic_y = fuzzy("(2+alpha)*e^(y)", "(4-alpha)*e^(y)");
    let ic_x = fuzzy("(2+alpha)*e^(x)", "(4-alpha)*e^(x)");
    ProblemSpec {
        x_order: 2,
        y_order: 2,
        x_coeffs: vec![rat(0), rat(1)],
        y_coeffs: vec![rat(0), rat(1)],
        c: rat(1),
        kernel: lower("e^(x+y)"),
        forcing: fuzzy(
            "e^(x+y)*(3-x*y)*(2+alpha)",
            "e^(x+y)*(3-x*y)*(4-alpha)",
        ),
        x_ics: vec![ic_y.clone(), ic_y],
        y_ics: vec![ic_x.clone(), ic_x],
        case: DiffCase::I,
        n_display: 1,
    }
}
