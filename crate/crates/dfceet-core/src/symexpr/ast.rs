use crate::scalar::Rational;
use crate::symexpr::Var;

/// Parsed input expression. Arguments of `exp`/trig nodes are affine forms in
/// (x, y) with rational rates and no constant part; the parser enforces this,
/// so lowering is total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceExpr {
    Number(Rational),
    ImagUnit,
    Var(Var),
    Alpha,
    Add(Box<SurfaceExpr>, Box<SurfaceExpr>),
    Sub(Box<SurfaceExpr>, Box<SurfaceExpr>),
    Mul(Box<SurfaceExpr>, Box<SurfaceExpr>),
    Pow(Box<SurfaceExpr>, u32),
    Exp(Affine),
    Trig(TrigFn, Affine),
}

/// `xrate * x + yrate * y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Affine {
    pub xrate: Rational,
    pub yrate: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigFn {
    Sin,
    Cos,
    Sinh,
    Cosh,
}

impl TrigFn {
    pub fn name(&self) -> &'static str {
        match self {
            TrigFn::Sin => "sin",
            TrigFn::Cos => "cos",
            TrigFn::Sinh => "sinh",
            TrigFn::Cosh => "cosh",
        }
    }
}

impl SurfaceExpr {
    pub fn contains_alpha(&self) -> bool {
        match self {
            SurfaceExpr::Alpha => true,
            SurfaceExpr::Add(a, b) | SurfaceExpr::Sub(a, b) | SurfaceExpr::Mul(a, b) => {
                a.contains_alpha() || b.contains_alpha()
            }
            SurfaceExpr::Pow(a, _) => a.contains_alpha(),
            _ => false,
        }
    }
}
