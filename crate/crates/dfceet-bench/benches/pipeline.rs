use criterion::{criterion_group, criterion_main, Criterion};
use dfceet_core::fuzzy::{FuzzyFunction, ValidityGrid};
use dfceet_core::ratfunc::separate;
use dfceet_core::scalar::rat;
use dfceet_core::solver::{solve, DiffCase, ProblemSpec, SolverOptions};
use dfceet_core::symexpr::{lower_to_exp_poly, parse_expr, ExpPolyExpr};
use dfceet_core::transform::{forward, inverse};
use dfceet_core::verify::{quad2d_complex, residual, VerifyConfig};
use std::hint::black_box;

fn lower(text: &str) -> ExpPolyExpr {
    lower_to_exp_poly(&parse_expr(text).unwrap()).unwrap()
}

fn fuzzy(lo: &str, up: &str) -> FuzzyFunction {
    FuzzyFunction::build(
        &parse_expr(lo).unwrap(),
        &parse_expr(up).unwrap(),
        &ValidityGrid::default(),
    )
    .unwrap()
}

fn reference_problem() -> ProblemSpec {
    let ic_y = fuzzy("(2+alpha)*e^(y)", "(4-alpha)*e^(y)");
    let ic_x = fuzzy("(2+alpha)*e^(x)", "(4-alpha)*e^(x)");
    ProblemSpec {
        x_order: 2,
        y_order: 2,
        x_coeffs: vec![rat(0), rat(1)],
        y_coeffs: vec![rat(0), rat(1)],
        c: rat(1),
        kernel: lower("e^(x+y)"),
        forcing: fuzzy("e^(x+y)*(3-x*y)*(2+alpha)", "e^(x+y)*(3-x*y)*(4-alpha)"),
        x_ics: vec![ic_y.clone(), ic_y],
        y_ics: vec![ic_x.clone(), ic_x],
        case: DiffCase::I,
        n_display: 1,
    }
}

fn bench_solve(c: &mut Criterion) {
    let p = reference_problem();
    let opts = SolverOptions::default();
    c.bench_function("solve_reference_problem", |b| {
        b.iter(|| solve(black_box(&p), &opts).unwrap())
    });
}

fn bench_transform_round_trip(c: &mut Criterion) {
    let f = lower("3*x^2*y*e^(2*x-y) + sin(x+2*y) + e^(x+y)*(3-x*y)");
    c.bench_function("forward_inverse_round_trip", |b| {
        b.iter(|| {
            let t = forward(black_box(&f));
            inverse(&t)
        })
    });
}

fn bench_separation(c: &mut Criterion) {
    let f = lower("e^(x+y)*(3-x*y) + x^2*e^(2*x+y) + y*e^(x+2*y)");
    let value = forward(&f).to_birat();
    c.bench_function("separate_partial_fractions", |b| {
        b.iter(|| separate(black_box(&value)).unwrap())
    });
}

fn bench_convolution(c: &mut Criterion) {
    let f = lower("x*e^(x)+y");
    let g = lower("e^(2*x+y)");
    c.bench_function("symbolic_double_convolution", |b| {
        b.iter(|| black_box(&f).convolve(black_box(&g)))
    });
}

fn bench_quadrature(c: &mut Criterion) {
    let k = lower("e^(x+y)");
    let kc = dfceet_core::symexpr::CompiledExpPoly::new(&k);
    c.bench_function("quad2d_8x8x2", |b| {
        b.iter(|| {
            quad2d_complex(
                |tau, mu| kc.eval(black_box(0.9) - tau, 0.9 - mu) * kc.eval(tau, mu),
                0.9,
                0.9,
                2,
            )
        })
    });
}

fn bench_residual(c: &mut Criterion) {
    let p = reference_problem();
    let s = solve(&p, &SolverOptions::default()).unwrap();
    let cfg = VerifyConfig::default();
    c.bench_function("residual_default_grid", |b| {
        b.iter(|| residual(black_box(&p), &s, &cfg))
    });
}

criterion_group!(
    benches,
    bench_solve,
    bench_transform_round_trip,
    bench_separation,
    bench_convolution,
    bench_quadrature,
    bench_residual
);
criterion_main!(benches);
