//! Machine-readable result document written to stdout. Field order is fixed
//! by the struct layout, so identical inputs produce byte-identical output
//! up to the timing field.

use dfceet_core::fuzzy::{render_fuzzy_side, Side};
use dfceet_core::solver::{ProblemSpec, Solution};
use dfceet_core::verify::{IcReport, ResidualReport};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct SolutionStrings {
    pub lower: String,
    pub upper: String,
}

#[derive(Debug, Serialize)]
pub struct TransformAudit {
    pub lower: Vec<String>,
    pub upper: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct SideResidualOut {
    pub max: f64,
    pub mean: f64,
    pub argmax: (f64, f64, f64),
}

#[derive(Debug, Serialize)]
pub struct ResidualOut {
    pub lower: SideResidualOut,
    pub upper: SideResidualOut,
    pub grid_points: usize,
    pub panels: usize,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct IcOut {
    pub max_deviation: f64,
    pub tol: f64,
    pub argmax: String,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct OutputDocument {
    pub solution: SolutionStrings,
    pub transform_domain: TransformAudit,
    pub residual: ResidualOut,
    pub ic_check: IcOut,
    pub timing_ms: u128,
    pub version: &'static str,
}

fn side_residual(r: &dfceet_core::verify::SideResiduals) -> SideResidualOut {
    SideResidualOut {
        max: r.max,
        mean: r.mean,
        argmax: r.argmax,
    }
}

pub fn residual_out(r: &ResidualReport) -> ResidualOut {
    ResidualOut {
        lower: side_residual(&r.lower),
        upper: side_residual(&r.upper),
        grid_points: r.grid_points,
        panels: r.panels,
        tol: r.tol,
        pass: r.pass,
    }
}

pub fn ic_out(r: &IcReport) -> IcOut {
    IcOut {
        max_deviation: r.max_deviation,
        tol: r.tol,
        argmax: r.argmax.clone(),
        pass: r.pass,
    }
}

/// Renders one audit entry `(alpha weight) * [separated image]`.
fn audit_strings(entries: &[(dfceet_core::fuzzy::AlphaPoly, dfceet_core::ratfunc::TransformExpr)], n: i64) -> Vec<String> {
    entries
        .iter()
        .map(|(apoly, t)| {
            format!(
                "({apoly}) * [{t}]  =  ({apoly}) * [{}]",
                dfceet_core::transform::render_power_form(t, n)
            )
        })
        .collect()
}

pub struct Rendered {
    pub lower: String,
    pub upper: String,
}

pub fn render_solution(s: &Solution) -> Result<Rendered, dfceet_core::symexpr::RenderError> {
    Ok(Rendered {
        lower: render_fuzzy_side(s.value.side(Side::Lower))?,
        upper: render_fuzzy_side(s.value.side(Side::Upper))?,
    })
}

pub fn build_document(
    p: &ProblemSpec,
    s: &Solution,
    rendered: Rendered,
    residual: &ResidualReport,
    ic: &IcReport,
    timing_ms: u128,
) -> OutputDocument {
    OutputDocument {
        solution: SolutionStrings {
            lower: rendered.lower,
            upper: rendered.upper,
        },
        transform_domain: TransformAudit {
            lower: audit_strings(&s.transform_lower, p.n_display),
            upper: audit_strings(&s.transform_upper, p.n_display),
        },
        residual: residual_out(residual),
        ic_check: ic_out(ic),
        timing_ms,
        version: env!("CARGO_PKG_VERSION"),
    }
}
