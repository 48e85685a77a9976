//! Command-line front end: solve problem files, verify candidate solutions,
//! apply the transform in either direction and print the rule table.
//!
//! Exit codes are a stable contract: 0 success, 2 schema/parse error,
//! 3 validation failure, 4 not solvable in the exponential-polynomial
//! class, 5 residual check failed. Machine output (JSON) goes to stdout,
//! human-readable summaries to stderr.

mod output;
mod problem;

use clap::{Parser, Subcommand, ValueEnum};
use dfceet_core::ratfunc::separate;
use dfceet_core::solver::{
    solve_unchecked, validate_spec, ProblemSpec, Solution, SolveError, SolverOptions,
};
use dfceet_core::symexpr::{lower_to_exp_poly, parse_expr, render_expr};
use dfceet_core::table::table_rows;
use dfceet_core::transform::{
    forward, inverse, parse_uv_expr, render_birat_powers, render_power_form,
};
use dfceet_core::verify::{check_ics, residual, VerifyConfig};
use problem::{FuzzyPairFile, ProblemFile};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

const EXIT_PARSE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_NOT_SOLVABLE: u8 = 4;
const EXIT_RESIDUAL: u8 = 5;

#[derive(Parser)]
#[command(
    name = "dfceet",
    version,
    about = "Closed-form solver for partial Volterra fuzzy integro-differential \
             equations with convolution kernels, with independent numerical verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Forward,
    Inverse,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem file and verify the solution
    Solve {
        path: PathBuf,
        /// Also write the output document to this file
        #[arg(long)]
        out: Option<PathBuf>,
        /// Residual tolerance override
        #[arg(long)]
        tol: Option<f64>,
        /// Quadrature panels per axis override
        #[arg(long)]
        panels: Option<usize>,
    },
    /// Verify a problem file, optionally against a supplied solution
    Verify {
        path: PathBuf,
        /// JSON file with {"lower": "...", "upper": "..."} expressions to
        /// check instead of solving
        #[arg(long)]
        solution: Option<PathBuf>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        panels: Option<usize>,
    },
    /// Apply the double transform to an expression (or invert one)
    Transform {
        expr: String,
        #[arg(long, value_enum)]
        dir: Direction,
        /// Display power of the integral variables
        #[arg(long, default_value_t = 1)]
        n: i64,
    },
    /// Print the elementary-function table, engine vs printed forms
    Table {
        #[arg(long, default_value_t = 1)]
        n: i64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve {
            path,
            out,
            tol,
            panels,
        } => cmd_solve(&path, out.as_deref(), tol, panels),
        Command::Verify {
            path,
            solution,
            tol,
            panels,
        } => cmd_verify(&path, solution.as_deref(), tol, panels),
        Command::Transform { expr, dir, n } => cmd_transform(&expr, dir, n),
        Command::Table { n } => cmd_table(n),
    }
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn load_problem(path: &std::path::Path) -> Result<(ProblemFile, ProblemSpec), ExitCode> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let file = ProblemFile::from_json(&text).map_err(|e| fail(EXIT_PARSE, e))?;
    let spec = file.to_spec().map_err(|e| fail(EXIT_PARSE, e))?;
    Ok((file, spec))
}

fn verify_config(file: &ProblemFile, tol: Option<f64>, panels: Option<usize>) -> VerifyConfig {
    let mut cfg = VerifyConfig::default();
    if let Some(overrides) = &file.verify {
        if let Some(t) = overrides.tol {
            cfg.tol = t;
        }
        if let Some(p) = overrides.panels {
            cfg.panels = p;
        }
        if let Some(grid) = &overrides.grid {
            if let Some(x) = &grid.x {
                cfg.xs = x.clone();
            }
            if let Some(y) = &grid.y {
                cfg.ys = y.clone();
            }
            if let Some(a) = &grid.alpha {
                cfg.alphas = a.clone();
            }
        }
    }
    if let Some(t) = tol {
        cfg.tol = t;
    }
    if let Some(p) = panels {
        cfg.panels = p;
    }
    cfg
}

fn solve_pipeline(spec: &ProblemSpec) -> Result<Solution, ExitCode> {
    let opts = SolverOptions::default();
    if let Err(violations) = validate_spec(spec, &opts) {
        let mut msg = String::from("validation failed:");
        for v in &violations {
            msg.push_str(&format!("\n  {v}"));
        }
        return Err(fail(EXIT_VALIDATION, msg));
    }
    match solve_unchecked(spec, &opts) {
        Ok(s) => {
            if let Err(v) = s.value.validate(&opts.grid) {
                return Err(fail(EXIT_NOT_SOLVABLE, SolveError::InvalidFuzzyResult(v)));
            }
            Ok(s)
        }
        Err(e) => Err(fail(EXIT_NOT_SOLVABLE, e)),
    }
}

fn cmd_solve(
    path: &std::path::Path,
    out: Option<&std::path::Path>,
    tol: Option<f64>,
    panels: Option<usize>,
) -> ExitCode {
    let started = Instant::now();
    let (file, spec) = match load_problem(path) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let solution = match solve_pipeline(&spec) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let rendered = match output::render_solution(&solution) {
        Ok(r) => r,
        Err(e) => return fail(EXIT_NOT_SOLVABLE, e),
    };

    let cfg = verify_config(&file, tol, panels);
    let report = residual(&spec, &solution, &cfg);
    let ic = check_ics(&spec, &solution, &cfg);

    eprintln!("solution lower: {}", rendered.lower);
    eprintln!("solution upper: {}", rendered.upper);
    eprintln!("{report}");
    eprintln!("{ic}");

    let doc = output::build_document(
        &spec,
        &solution,
        rendered,
        &report,
        &ic,
        started.elapsed().as_millis(),
    );
    let json = serde_json::to_string_pretty(&doc).expect("document serializes");
    println!("{json}");
    if let Some(out_path) = out {
        if let Err(e) = std::fs::write(out_path, &json) {
            return fail(EXIT_PARSE, format!("{}: {e}", out_path.display()));
        }
    }
    if !report.pass || !ic.pass {
        eprintln!("residual check failed");
        return ExitCode::from(EXIT_RESIDUAL);
    }
    ExitCode::SUCCESS
}

fn cmd_verify(
    path: &std::path::Path,
    solution_path: Option<&std::path::Path>,
    tol: Option<f64>,
    panels: Option<usize>,
) -> ExitCode {
    let (file, spec) = match load_problem(path) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let solution = match solution_path {
        Some(sp) => {
            let text = match std::fs::read_to_string(sp) {
                Ok(t) => t,
                Err(e) => return fail(EXIT_PARSE, format!("{}: {e}", sp.display())),
            };
            let pair: FuzzyPairFile = match serde_json::from_str(&text) {
                Ok(p) => p,
                Err(e) => return fail(EXIT_PARSE, format!("{}: {e}", sp.display())),
            };
            let lower = match parse_expr(&pair.lower) {
                Ok(ast) => ast,
                Err(e) => return fail(EXIT_PARSE, format!("solution.lower: {e}")),
            };
            let upper = match parse_expr(&pair.upper) {
                Ok(ast) => ast,
                Err(e) => return fail(EXIT_PARSE, format!("solution.upper: {e}")),
            };
            Solution {
                value: dfceet_core::fuzzy::FuzzyFunction::new(
                    dfceet_core::symexpr::lower_with_alpha(&lower),
                    dfceet_core::symexpr::lower_with_alpha(&upper),
                ),
                transform_lower: Vec::new(),
                transform_upper: Vec::new(),
            }
        }
        None => match solve_pipeline(&spec) {
            Ok(s) => s,
            Err(code) => return code,
        },
    };

    let cfg = verify_config(&file, tol, panels);
    let report = residual(&spec, &solution, &cfg);
    let ic = check_ics(&spec, &solution, &cfg);
    eprintln!("{report}");
    eprintln!("{ic}");
    let doc = serde_json::json!({
        "residual": serde_json::to_value(output::residual_out(&report)).unwrap(),
        "ic_check": serde_json::to_value(output::ic_out(&ic)).unwrap(),
    });
    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    if report.pass && ic.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_RESIDUAL)
    }
}

fn cmd_transform(expr: &str, dir: Direction, n: i64) -> ExitCode {
    match dir {
        Direction::Forward => {
            let ast = match parse_expr(expr) {
                Ok(a) => a,
                Err(e) => return fail(EXIT_PARSE, e),
            };
            let lowered = match lower_to_exp_poly(&ast) {
                Ok(l) => l,
                Err(e) => return fail(EXIT_PARSE, e),
            };
            let image = forward(&lowered);
            println!("canonical: {image}");
            println!("powers of u, v: {}", render_power_form(&image, n));
            println!("combined: {}", render_birat_powers(&image.to_birat(), n));
            ExitCode::SUCCESS
        }
        Direction::Inverse => {
            let value = match parse_uv_expr(expr) {
                Ok(v) => v,
                Err(e) => return fail(EXIT_PARSE, e),
            };
            let separated = match separate(&value) {
                Ok(s) => s,
                Err(e) => {
                    return fail(
                        EXIT_NOT_SOLVABLE,
                        format!("not invertible in exponential-polynomial class: {e}"),
                    )
                }
            };
            let spatial = inverse(&separated);
            match render_expr(&spatial) {
                Ok(s) => println!("inverse: {s}"),
                // complex-valued inverses have no grammar rendering
                Err(_) => println!("inverse: {spatial}"),
            }
            ExitCode::SUCCESS
        }
    }
}

fn cmd_table(n: i64) -> ExitCode {
    use dfceet_core::scalar::{rat, ratio};
    let (a, b) = (rat(1), rat(1));
    let (r, m) = (1u32, 2u32);
    println!("elementary-function table at a = 1, b = 1, r = 1, m = 2, n = {n}");
    println!();
    let mut all_match = true;
    for row in table_rows(&a, &b, r, m) {
        let engine_t = forward(&row.function);
        println!("rule {:>2}: {}", row.index, row.description);
        println!("  engine : {}", render_power_form(&engine_t, n));
        println!(
            "  printed: {}",
            dfceet_core::table::rule_printed_text(row.index, &a, &b, r, m, n)
        );
        println!(
            "  match  : {}",
            if row.matches() { "exact" } else { "MISMATCH" }
        );
        if let Some(note) = row.footnote {
            println!("  note   : {note}");
        }
        all_match &= row.matches();
    }
    // a second instantiation catches coefficient-dependent slips
    for row in table_rows(&ratio(1, 2), &rat(2), 0, 0) {
        all_match &= row.matches();
    }
    if all_match {
        println!();
        println!("all rows match the engine exactly");
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_NOT_SOLVABLE)
    }
}
