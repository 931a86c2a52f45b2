//! The `L_5` example: a Fock-positive element outside `QM(Pos(ℕ₀))`.

use crate::error::{Error, Result};
use crate::expr::{parse_rational, parse_scalar, parse_weyl_ast, parse_weyl_xy, ParseOptions};
use crate::gramcert::{
    coefficient_equations, equation_at, parse_equation, DisplayedEquation, GramCertificate,
    PipelineInputs, SymbolicGram,
};
use crate::linalg::Matrix;
use crate::linform::LinearForm;
use crate::scalar::{int, Rational, Scalar};
use crate::weyl::{build_lk_xy, WeylElement, XyForm};

pub const GRAM_JSON: &str = include_str!("../data/l5_gram.json");

/// `(1+X²)(L_5 + 7/5)(1+X²) = v₁* A₁ v₁ + v₂* A₂ v₂`.
pub fn gram_certificate() -> GramCertificate {
    GramCertificate::from_json(GRAM_JSON, ParseOptions::default()).expect("bundled certificate")
}

pub const H1_XY: &str = "(3*X + Y)/2";
pub const H2_XY: &str = "(3*X + Y + 2*X^2*Y + 2*X*Y^2)/2";
pub const H1_AST: &str = "(2*a + ast)/sqrt2";
pub const H2_AST: &str = "(a^3 - ast^2*a)/sqrt2";

pub fn h1() -> WeylElement {
    parse_weyl_xy(H1_XY).expect("h1").to_weyl()
}

pub fn h2() -> WeylElement {
    parse_weyl_xy(H2_XY).expect("h2").to_weyl()
}

pub fn h1_ast() -> WeylElement {
    parse_weyl_ast(H1_AST).expect("h1")
}

pub fn h2_ast() -> WeylElement {
    parse_weyl_ast(H2_AST).expect("h2")
}

pub fn l5_xy() -> XyForm {
    build_lk_xy(&int(5))
}

pub const STEP1_VECTOR: [&str; 8] = ["1", "X", "Y", "X^2", "X*Y", "Y^2", "X^2*Y", "X*Y^2"];
pub const STEP2_VECTOR: [&str; 6] = ["1", "X", "Y", "X*Y", "X^2*Y", "X*Y^2"];

fn vector(src: &[&str]) -> Vec<XyForm> {
    src.iter().map(|s| parse_weyl_xy(s).expect("monomial")).collect()
}

/// `u* B u + αN² + βN + γ`.
pub fn step1_gram() -> SymbolicGram {
    let n = parse_weyl_xy("N").expect("N");
    SymbolicGram::new("b", vector(&STEP1_VECTOR))
        .with_extra("alpha", &n * &n)
        .with_extra("beta", n)
        .with_extra("gamma", XyForm::one())
}

pub fn step2_gram() -> SymbolicGram {
    SymbolicGram::new("c", vector(&STEP2_VECTOR))
}

/// The `X⁴` and `Y⁴` coefficients of `L_5 + λ = u* B u + αN² + βN + γ`
/// are `±(b44 + α/4)` and `±(b66 + α/4)`; with `B ⪰ 0`, `α ≥ 0` this forces
/// `α = b44 = b66 = 0`.
pub fn step1_reduction_check() -> Result<[LinearForm; 2]> {
    let eqs = coefficient_equations(&l5_xy(), Some("lambda"), &step1_gram());
    let mut out = Vec::new();
    for (key, expected) in [((4, 0), "b44 + alpha/4"), ((0, 4), "b66 + alpha/4")] {
        let want = crate::expr::parse_linear(expected)?;
        let got = equation_at(&eqs, key)
            .map(|e| e.form.clone())
            .unwrap_or_default();
        let unit = |t: &Scalar| t.norm_sqr() == Scalar::from_int(1);
        if !got.ratio_to(&want).is_some_and(|t| unit(&t)) {
            return Err(Error::CheckFailed(format!("X^{}Y^{}: {got} = 0, expected {expected} = 0", key.0, key.1)));
        }
        out.push(got);
    }
    Ok([out[0].clone(), out[1].clone()])
}

pub const DISPLAYED_EQUATIONS: [((u32, u32), &str); 6] = [
    ((0, 0), "lambda - c11 + c32 + c41 - 2*c62 = 0"),
    ((0, 2), "c33 + c36 - 2*c63 - 2*c66 = -2"),
    (
        (1, 1),
        "-c14 - c23 + c32 + 2*c35 + c41 + 2*c44 + 2*c53 - 4*c62 - 6*c65 = -10",
    ),
    ((2, 0), "3*c52 - c22 = 0"),
    ((2, 4), "c66 = 1"),
    ((4, 2), "c55 = 1"),
];

pub const MULTIPLIERS: [&str; 6] = ["1", "-3/2", "-3/8", "1/6", "-33/8", "-9/8"];

pub const STEP3_A: [[&str; 6]; 6] = [
    ["1", "0", "0", "-3/8", "0", "0"],
    ["0", "1/6", "-3/8", "0", "0", "0"],
    ["0", "-5/8", "3/2", "0", "3/4", "3/2"],
    ["-5/8", "0", "0", "3/4", "0", "0"],
    ["0", "-1/2", "3/4", "0", "9/8", "0"],
    ["0", "1/2", "-3", "0", "-9/4", "9/8"],
];

pub fn step3_a() -> Matrix {
    let rows = STEP3_A
        .iter()
        .map(|r| r.iter().map(|s| parse_scalar(s).expect("entry")).collect())
        .collect();
    Matrix::from_rows(rows).expect("6x6")
}

pub fn multipliers() -> Vec<Rational> {
    MULTIPLIERS.iter().map(|s| parse_rational(s).expect("multiplier")).collect()
}

pub fn displayed_equations() -> Vec<DisplayedEquation> {
    DISPLAYED_EQUATIONS
        .iter()
        .map(|&(key, src)| DisplayedEquation {
            key,
            form: parse_equation(src).expect("equation"),
        })
        .collect()
}

pub fn pipeline_inputs() -> PipelineInputs {
    PipelineInputs {
        target: l5_xy(),
        param: "lambda".into(),
        gram: step2_gram(),
        displayed: displayed_equations(),
        multipliers: multipliers(),
        a: step3_a(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gramcert::{lower_bound_pipeline, verify};

    #[test]
    fn bundled_certificate_verifies() {
        assert!(verify(&gram_certificate()).is_yes());
    }

    #[test]
    fn pipeline_bound() {
        let r = lower_bound_pipeline(&pipeline_inputs()).unwrap();
        assert_eq!(r.bound, crate::scalar::rat(3, 2));
    }

    #[test]
    fn step1_reduction() {
        step1_reduction_check().unwrap();
    }
}
