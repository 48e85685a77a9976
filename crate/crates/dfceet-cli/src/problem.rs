//! Problem-file schema and its conversion to a solver problem. Rationals
//! travel as strings (`"1/2"`) so the exact core never sees rounded input.

use dfceet_core::fuzzy::FuzzyFunction;
use dfceet_core::scalar::{parse_rational, Rational};
use dfceet_core::solver::{DiffCase, ProblemSpec};
use dfceet_core::symexpr::{lower_to_exp_poly, lower_with_alpha, parse_expr, ExpPolyExpr};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FuzzyPairFile {
    pub lower: String,
    pub upper: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct VerifyOverrides {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub panels: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridOverride>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridOverride {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<f64>>,
}

/// On-disk problem document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemFile {
    /// Display-only transform parameter.
    #[serde(default = "default_n")]
    pub n: i64,
    /// Differentiability case: "i" or "ii".
    pub case: String,
    pub x_order: u32,
    pub y_order: u32,
    /// a_1..a_l as rational strings.
    pub a: Vec<String>,
    /// b_1..b_m as rational strings.
    pub b: Vec<String>,
    pub c: String,
    pub kernel: String,
    pub g: FuzzyPairFile,
    pub x_ics: Vec<FuzzyPairFile>,
    pub y_ics: Vec<FuzzyPairFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyOverrides>,
}

fn default_n() -> i64 {
    1
}

/// A schema or expression problem, with enough context to locate it.
#[derive(Debug)]
pub struct FileError {
    pub field: String,
    pub message: String,
}

impl std::fmt::Display for FileError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

impl std::error::Error for FileError {}

fn field_err<E: std::fmt::Display>(field: &str) -> impl Fn(E) -> FileError + '_ {
    move |e| FileError {
        field: field.to_string(),
        message: e.to_string(),
    }
}

fn parse_rat_field(field: &str, text: &str) -> Result<Rational, FileError> {
    parse_rational(text).map_err(|m| FileError {
        field: field.to_string(),
        message: m,
    })
}

fn parse_crisp_expr(field: &str, text: &str) -> Result<ExpPolyExpr, FileError> {
    let ast = parse_expr(text).map_err(field_err(field))?;
    lower_to_exp_poly(&ast).map_err(field_err(field))
}

/// Parse-only: fuzzy validity is the solver's job (a violation is a
/// validation failure, not a schema error).
fn parse_fuzzy_pair(field: &str, pair: &FuzzyPairFile) -> Result<FuzzyFunction, FileError> {
    let lower = parse_expr(&pair.lower).map_err(field_err(&format!("{field}.lower")))?;
    let upper = parse_expr(&pair.upper).map_err(field_err(&format!("{field}.upper")))?;
    Ok(FuzzyFunction::new(
        lower_with_alpha(&lower),
        lower_with_alpha(&upper),
    ))
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self, FileError> {
        serde_json::from_str(text).map_err(|e| FileError {
            field: "document".to_string(),
            message: e.to_string(),
        })
    }

    /// Parses all expressions and assembles the solver problem; solver
    /// validation decides whether the parsed data is admissible.
    pub fn to_spec(&self) -> Result<ProblemSpec, FileError> {
        let case = match self.case.as_str() {
            "i" => DiffCase::I,
            "ii" => DiffCase::II,
            other => {
                return Err(FileError {
                    field: "case".into(),
                    message: format!("expected \"i\" or \"ii\", got {other:?}"),
                })
            }
        };
        let a = self
            .a
            .iter()
            .enumerate()
            .map(|(h, s)| parse_rat_field(&format!("a[{h}]"), s))
            .collect::<Result<Vec<_>, _>>()?;
        let b = self
            .b
            .iter()
            .enumerate()
            .map(|(j, s)| parse_rat_field(&format!("b[{j}]"), s))
            .collect::<Result<Vec<_>, _>>()?;
        let c = parse_rat_field("c", &self.c)?;
        let kernel = parse_crisp_expr("kernel", &self.kernel)?;
        let forcing = parse_fuzzy_pair("g", &self.g)?;
        let x_ics = self
            .x_ics
            .iter()
            .enumerate()
            .map(|(t, p)| parse_fuzzy_pair(&format!("x_ics[{t}]"), p))
            .collect::<Result<Vec<_>, _>>()?;
        let y_ics = self
            .y_ics
            .iter()
            .enumerate()
            .map(|(t, p)| parse_fuzzy_pair(&format!("y_ics[{t}]"), p))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ProblemSpec {
            x_order: self.x_order,
            y_order: self.y_order,
            x_coeffs: a,
            y_coeffs: b,
            c,
            kernel,
            forcing,
            x_ics,
            y_ics,
            case,
            n_display: self.n,
        })
    }
}
