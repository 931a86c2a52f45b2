//! Gram-matrix certificates `c*·t·c = Σ v* A v (+ extras)` over the Weyl
//! algebra, and their symbolic counterparts with unknown matrices.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{parse_in_with, parse_linear, ParseOptions, ScalarContext, WeylAstContext, WeylXyContext};
use crate::linalg::{psd_check, Matrix, PsdResult};
use crate::linform::LinearForm;
use crate::scalar::{Rational, Scalar};
use crate::weyl::{MonomialOrdering, WeylElement, XyForm};

/// Which generators certificate expressions are written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Presentation {
    #[serde(rename = "weyl-xy")]
    Xy,
    #[serde(rename = "weyl-ast")]
    Ast,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub algebra: Presentation,
    pub target: String,
    #[serde(default)]
    pub conjugator: Option<String>,
    #[serde(default)]
    pub extra: Vec<String>,
    pub blocks: Vec<BlockFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockFile {
    pub monomials: Vec<String>,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramBlock {
    monomials: Vec<WeylElement>,
    matrix: Matrix,
}

impl GramBlock {
    pub fn new(monomials: Vec<WeylElement>, matrix: Matrix) -> Result<Self> {
        let n = monomials.len();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::Shape(format!(
                "{n} monomials but a {}x{} matrix",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if !matrix.is_hermitian() {
            return Err(Error::NotHermitian(format!("{matrix:?}")));
        }
        Ok(GramBlock { monomials, matrix })
    }

    /// A rank-one block `h* h`.
    pub fn square(h: WeylElement) -> Self {
        GramBlock {
            monomials: vec![h],
            matrix: Matrix::identity(1),
        }
    }

    pub fn monomials(&self) -> &[WeylElement] {
        &self.monomials
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `Σ_ij v_i* A_ij v_j`.
    pub fn expand(&self) -> WeylElement {
        let stars: Vec<WeylElement> = self.monomials.iter().map(WeylElement::star).collect();
        let mut out = WeylElement::zero();
        for (i, vi) in stars.iter().enumerate() {
            for (j, vj) in self.monomials.iter().enumerate() {
                let c = &self.matrix[(i, j)];
                if !c.is_zero() {
                    out = &out + &(vi * vj).scale(c);
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramCertificate {
    pub target: WeylElement,
    pub conjugator: Option<WeylElement>,
    pub extra: Vec<WeylElement>,
    pub blocks: Vec<GramBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GramVerdict {
    Yes,
    /// `c*·t·c − Σ blocks − Σ extras`, nonzero.
    No { discrepancy: XyForm },
}

impl GramVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, GramVerdict::Yes)
    }
}

fn malformed(e: Error) -> Error {
    match e {
        Error::Malformed(_) => e,
        other => Error::Malformed(other.to_string()),
    }
}

fn parse_weyl(src: &str, alg: Presentation, opts: ParseOptions) -> Result<WeylElement> {
    match alg {
        Presentation::Xy => Ok(parse_in_with(src, &WeylXyContext, opts)?.to_weyl()),
        Presentation::Ast => parse_in_with(src, &WeylAstContext, opts),
    }
}

impl GramCertificate {
    pub fn from_json(src: &str, opts: ParseOptions) -> Result<Self> {
        let file: CertificateFile =
            serde_json::from_str(src).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_file(&file, opts)
    }

    pub fn from_file(file: &CertificateFile, opts: ParseOptions) -> Result<Self> {
        let alg = file.algebra;
        let weyl = |s: &str| parse_weyl(s, alg, opts).map_err(malformed);
        let target = weyl(&file.target)?;
        let conjugator = file.conjugator.as_deref().map(weyl).transpose()?;
        let extra = file.extra.iter().map(|s| weyl(s)).collect::<Result<_>>()?;
        let mut blocks = Vec::with_capacity(file.blocks.len());
        for (b, block) in file.blocks.iter().enumerate() {
            let monomials = block.monomials.iter().map(|s| weyl(s)).collect::<Result<_>>()?;
            let rows = block
                .matrix
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|s| parse_in_with(s, &ScalarContext, opts))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
                .map_err(malformed)?;
            let matrix = Matrix::from_rows(rows).map_err(malformed)?;
            let block = GramBlock::new(monomials, matrix)
                .map_err(|e| Error::Malformed(format!("block {b}: {e}")))?;
            blocks.push(block);
        }
        Ok(GramCertificate {
            target,
            conjugator,
            extra,
            blocks,
        })
    }

    /// `c*·t·c`.
    pub fn lhs(&self) -> WeylElement {
        match &self.conjugator {
            Some(c) => &(&c.star() * &self.target) * c,
            None => self.target.clone(),
        }
    }

    /// Blocks plus extras, with the blocks expanded in parallel.
    pub fn rhs(&self) -> WeylElement {
        let expanded: Vec<WeylElement> = std::thread::scope(|s| {
            let handles: Vec<_> = self
                .blocks
                .iter()
                .map(|b| s.spawn(move || b.expand()))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("block expansion panicked"))
                .collect()
        });
        expanded
            .iter()
            .chain(&self.extra)
            .fold(WeylElement::zero(), |acc, x| &acc + x)
    }
}

/// Exact expansion and comparison in normal order.
pub fn verify(cert: &GramCertificate) -> GramVerdict {
    let diff = &cert.lhs() - &cert.rhs();
    if diff.is_zero() {
        GramVerdict::Yes
    } else {
        GramVerdict::No {
            discrepancy: diff.to_xy(),
        }
    }
}

/// Exact PSD test by pivoted LDL.
pub fn psd_exact(a: &Matrix) -> Result<bool> {
    Ok(psd_check(a)?.is_psd())
}

/// Like [`psd_exact`], with a vector `v` such that `v* A v < 0` on failure.
pub fn psd_exact_check(a: &Matrix) -> Result<PsdResult> {
    psd_check(a)
}

/// Polynomial in `X, Y` with affine-linear coefficients, keyed `X^m Y^n`.
pub type SymbolicXy = BTreeMap<(u32, u32), LinearForm>;

fn accumulate(out: &mut SymbolicXy, x: &XyForm, coeff: &LinearForm) {
    for (&k, c) in x.terms() {
        let entry = out.entry(k).or_default();
        *entry = &*entry + &coeff.scale(c);
    }
    out.retain(|_, f| !f.is_zero());
}

/// `Σ_ij v_i* c_ij v_j + Σ name·elem` with every `c_ij` a separate unknown.
#[derive(Clone, Debug)]
pub struct SymbolicGram {
    prefix: String,
    monomials: Vec<XyForm>,
    extras: Vec<(String, XyForm)>,
}

impl SymbolicGram {
    pub fn new(prefix: &str, monomials: Vec<XyForm>) -> Self {
        SymbolicGram {
            prefix: prefix.to_string(),
            monomials,
            extras: Vec::new(),
        }
    }

    /// Adds the summand `name · elem` with `name` a real unknown.
    pub fn with_extra(mut self, name: &str, elem: XyForm) -> Self {
        self.extras.push((name.to_string(), elem));
        self
    }

    pub fn size(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[XyForm] {
        &self.monomials
    }

    /// Name of the `(i, j)` entry, 1-based: `c11`, `c12`, ... (`c1_10` past 9).
    pub fn unknown(&self, i: usize, j: usize) -> String {
        if self.size() <= 9 {
            format!("{}{}{}", self.prefix, i, j)
        } else {
            format!("{}{}_{}", self.prefix, i, j)
        }
    }

    /// Pairs `(c_ij, c_ji)`, `i < j`, constrained by `c_ij = conj(c_ji)`.
    pub fn symmetry_constraints(&self) -> Vec<(String, String)> {
        let n = self.size();
        (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .map(|(i, j)| (self.unknown(i, j), self.unknown(j, i)))
            .collect()
    }

    pub fn expansion(&self) -> SymbolicXy {
        let mut out = SymbolicXy::new();
        let stars: Vec<XyForm> = self.monomials.iter().map(XyForm::star).collect();
        for (i, vi) in stars.iter().enumerate() {
            for (j, vj) in self.monomials.iter().enumerate() {
                accumulate(&mut out, &(vi * vj), &LinearForm::var(&self.unknown(i + 1, j + 1)));
            }
        }
        for (name, x) in &self.extras {
            accumulate(&mut out, x, &LinearForm::var(name));
        }
        out
    }

    /// Concrete expansion for a numeric matrix and extra values.
    pub fn evaluate(&self, c: &Matrix, extras: &[Scalar]) -> Result<XyForm> {
        let n = self.size();
        if c.nrows() != n || c.ncols() != n || extras.len() != self.extras.len() {
            return Err(Error::Shape("symbolic Gram evaluation".into()));
        }
        let mut out = XyForm::zero();
        for i in 0..n {
            let vi = self.monomials[i].star();
            for j in 0..n {
                out = &out + &(&vi * &self.monomials[j]).scale(&c[(i, j)]);
            }
        }
        for ((_, x), v) in self.extras.iter().zip(extras) {
            out = &out + &x.scale(v);
        }
        Ok(out)
    }
}

/// One coefficient comparison `[target]_key − [expansion]_key = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub key: (u32, u32),
    pub form: LinearForm,
}

/// Display name of `X^m Y^n`.
pub fn monomial_label((m, n): (u32, u32)) -> String {
    let pw = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    let s = format!("{}{}", pw("X", m), pw("Y", n));
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// Coefficient equations for `target + param = Σ v* C v (+ extras)`, one per
/// monomial appearing on either side.
pub fn coefficient_equations(target: &XyForm, param: Option<&str>, gram: &SymbolicGram) -> Vec<Equation> {
    let mut lhs = SymbolicXy::new();
    accumulate(&mut lhs, target, &LinearForm::constant(Scalar::from_int(1)));
    if let Some(p) = param {
        accumulate(&mut lhs, &XyForm::one(), &LinearForm::var(p));
    }
    let rhs = gram.expansion();
    let keys: std::collections::BTreeSet<(u32, u32)> = lhs.keys().chain(rhs.keys()).copied().collect();
    keys.into_iter()
        .filter_map(|key| {
            let l = lhs.get(&key).cloned().unwrap_or_default();
            let r = rhs.get(&key).cloned().unwrap_or_default();
            let form = &l - &r;
            (!form.is_zero()).then_some(Equation { key, form })
        })
        .collect()
}

pub fn equation_at(eqs: &[Equation], key: (u32, u32)) -> Option<&Equation> {
    eqs.iter().find(|e| e.key == key)
}

/// Parses `lhs = rhs` into the form `lhs − rhs`.
pub fn parse_equation(src: &str) -> Result<LinearForm> {
    let (l, r) = src
        .split_once('=')
        .ok_or_else(|| Error::Malformed(format!("`{src}` has no `=`")))?;
    Ok(&parse_linear(l)? - &parse_linear(r)?)
}

/// A displayed equation tagged with the monomial whose coefficient it compares.
#[derive(Clone, Debug)]
pub struct DisplayedEquation {
    pub key: (u32, u32),
    pub form: LinearForm,
}

/// Inputs of the lower-bound argument: the target family `L + λ`, the Gram
/// vector, the displayed equations, their multipliers and the matrix `A` with
/// `Δ = tr(A Cᵀ)`.
#[derive(Clone, Debug)]
pub struct PipelineInputs {
    pub target: XyForm,
    pub param: String,
    pub gram: SymbolicGram,
    pub displayed: Vec<DisplayedEquation>,
    pub multipliers: Vec<Rational>,
    pub a: Matrix,
}

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub equation_count: usize,
    /// Sign `s` with `derived = s · displayed`, per displayed equation.
    pub signs: Vec<Scalar>,
    pub combination: LinearForm,
    pub delta: LinearForm,
    /// `λ ≥ bound` for every PSD solution.
    pub bound: Rational,
}

/// `tr(A Cᵀ) = Σ_ij A_ij c_ij`.
pub fn trace_form(a: &Matrix, gram: &SymbolicGram) -> LinearForm {
    let mut out = LinearForm::zero();
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            out.add_term(&gram.unknown(i + 1, j + 1), a[(i, j)].clone());
        }
    }
    out
}

/// `½(Aᵀ + Ā)`.
pub fn hermitian_part(a: &Matrix) -> Matrix {
    let half = Scalar::from_ratio(1, 2);
    (&a.transpose() + &a.map(Scalar::conj)).scale(&half)
}

/// Checks that the displayed equations follow from the expansion, that the
/// multiplier combination equals `λ − tr(A Cᵀ) − b` for a constant `b`, and
/// that `½(Aᵀ + Ā)` is PSD; then `λ ≥ b` on every PSD hermitian `C`.
pub fn lower_bound_pipeline(inp: &PipelineInputs) -> Result<PipelineReport> {
    if inp.a.nrows() != inp.gram.size() || inp.a.ncols() != inp.gram.size() {
        return Err(Error::Shape("A does not match the Gram vector".into()));
    }
    if inp.multipliers.len() != inp.displayed.len() {
        return Err(Error::Shape(format!(
            "{} multipliers for {} equations",
            inp.multipliers.len(),
            inp.displayed.len()
        )));
    }
    let eqs = coefficient_equations(&inp.target, Some(&inp.param), &inp.gram);
    let mut signs = Vec::new();
    for d in &inp.displayed {
        let label = monomial_label(d.key);
        let derived = equation_at(&eqs, d.key)
            .ok_or_else(|| Error::CheckFailed(format!("no equation at ({label})")))?;
        let t = derived
            .form
            .ratio_to(&d.form)
            .filter(|t| *t == Scalar::from_int(1) || *t == Scalar::from_int(-1))
            .ok_or_else(|| {
                Error::CheckFailed(format!(
                    "({label}): derived {} = 0, displayed {} = 0",
                    derived.form, d.form
                ))
            })?;
        signs.push(t);
    }

    let mut combination = LinearForm::zero();
    for (d, m) in inp.displayed.iter().zip(&inp.multipliers) {
        combination = &combination + &d.form.scale(&Scalar::from_rational(m.clone()));
    }
    let delta = trace_form(&inp.a, &inp.gram);
    let residual = &(&combination + &delta) - &LinearForm::var(&inp.param);
    if !residual.is_constant() {
        return Err(Error::CheckFailed(format!(
            "combination {combination} is not {} - Δ - const: residual {residual}",
            inp.param
        )));
    }
    let bound = (-residual.constant_term())
        .as_rational()
        .cloned()
        .ok_or_else(|| Error::CheckFailed(format!("bound {residual} is not rational")))?;

    let sym = hermitian_part(&inp.a);
    if let PsdResult::NotPsd { witness, value } = psd_check(&sym)? {
        return Err(Error::CheckFailed(format!(
            "(A^T + conj A)/2 is not PSD: v = {witness:?} gives {value}"
        )));
    }
    Ok(PipelineReport {
        equation_count: eqs.len(),
        signs,
        combination,
        delta,
        bound,
    })
}

/// Monomials `p^i q^j` (keyed `(i, j)`) admissible for `g` in `g* f g ≤ target`
/// when `f` is a polynomial of degree `d_n` in `N`, by both orderings.
pub fn step1_monomial_filter(d_n: u32, target: &WeylElement) -> Result<Vec<(u32, u32)>> {
    let mut bounds = Vec::new();
    for ord in [MonomialOrdering::Ord1, MonomialOrdering::Ord2] {
        let (v, lc) = target.leading(ord)?;
        if lc.sign().ok() != Some(1) {
            return Err(Error::Precondition(format!(
                "leading coefficient {lc} under {ord:?} is not positive"
            )));
        }
        // v_1(N^d) = (0, 2d), v_2(N^d) = (2d, 0)
        let vf = match ord {
            MonomialOrdering::Ord1 => (0, 2 * d_n),
            MonomialOrdering::Ord2 => (2 * d_n, 0),
        };
        bounds.push((ord, vf, v));
    }
    let deg = bounds[0].2 .0 + bounds[0].2 .1;
    let mut out = Vec::new();
    for total in 0..=deg / 2 {
        for i in 0..=total {
            let g = (i, total - i);
            let fits = bounds.iter().all(|(ord, vf, v)| {
                let w = (vf.0 + 2 * g.0, vf.1 + 2 * g.1);
                ord.cmp(w, *v) != std::cmp::Ordering::Greater
            });
            if fits {
                out.push(g);
            }
        }
    }
    out.sort_by(|a, b| MonomialOrdering::Ord1.cmp(*a, *b));
    Ok(out)
}

/// `p^i q^j` in the style `1`, `p`, `pq^2`.
pub fn pq_label((i, j): (u32, u32)) -> String {
    let pw = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    let s = format!("{}{}", pw("p", i), pw("q", j));
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_weyl_xy;
    use crate::weyl::build_lk;
    use crate::scalar::int;

    fn xy(s: &str) -> XyForm {
        parse_weyl_xy(s).unwrap()
    }

    #[test]
    fn rank_one_blocks() {
        let cert = GramCertificate {
            target: &build_lk(&int(5)) + &WeylElement::constant(Scalar::from_ratio(3, 2)),
            conjugator: None,
            extra: vec![],
            blocks: vec![
                GramBlock::square(xy("(3*X + Y)/2").to_weyl()),
                GramBlock::square(xy("(3*X + Y + 2*X^2*Y + 2*X*Y^2)/2").to_weyl()),
            ],
        };
        assert!(verify(&cert).is_yes());
        let mut off = cert.clone();
        off.target = &off.target + &WeylElement::one();
        assert_eq!(verify(&off), GramVerdict::No { discrepancy: XyForm::one() });
    }

    #[test]
    fn zero_certificate() {
        let cert = GramCertificate::from_json(
            r#"{"algebra": "weyl-xy", "target": "0", "conjugator": null,
                "blocks": [{"monomials": ["X", "Y"], "matrix": [["0", "0"], ["0", "0"]]}]}"#,
            ParseOptions::default(),
        )
        .unwrap();
        assert!(verify(&cert).is_yes());
    }

    #[test]
    fn load_rejects_bad_shapes() {
        let opts = ParseOptions::default();
        let asym = r#"{"algebra": "weyl-xy", "target": "0",
            "blocks": [{"monomials": ["X", "Y"], "matrix": [["1", "2"], ["3", "1"]]}]}"#;
        assert!(matches!(GramCertificate::from_json(asym, opts), Err(Error::Malformed(_))));
        let short = r#"{"algebra": "weyl-xy", "target": "0",
            "blocks": [{"monomials": ["X"], "matrix": [["1", "0"], ["0", "1"]]}]}"#;
        assert!(matches!(GramCertificate::from_json(short, opts), Err(Error::Malformed(_))));
        let decimal = r#"{"algebra": "weyl-ast", "target": "1.5",
            "blocks": []}"#;
        assert!(GramCertificate::from_json(decimal, opts).is_ok());
        let strict = ParseOptions { forbid_decimals: true };
        assert!(matches!(GramCertificate::from_json(decimal, strict), Err(Error::Malformed(_))));
    }

    #[test]
    fn psd_examples() {
        assert!(!psd_exact(&Matrix::from_ints(&[&[1, 2], &[2, 1]]).unwrap()).unwrap());
        assert!(psd_exact(&Matrix::from_ints(&[&[2, 1], &[1, 2]]).unwrap()).unwrap());
        assert!(psd_exact(&Matrix::from_ints(&[&[1, 2], &[0, 1]]).unwrap()).is_err());
    }

    #[test]
    fn symbolic_matches_concrete() {
        let g = SymbolicGram::new("c", vec![xy("1"), xy("X"), xy("X*Y")]).with_extra("alpha", xy("N"));
        let c = Matrix::from_ints(&[&[1, 2, 0], &[2, 5, -1], &[0, -1, 3]]).unwrap();
        let vals: BTreeMap<String, Scalar> = (1..=3)
            .flat_map(|i| (1..=3).map(move |j| (i, j)))
            .map(|(i, j)| (g.unknown(i, j), c[(i - 1, j - 1)].clone()))
            .chain([("alpha".to_string(), Scalar::from_int(7))])
            .collect();
        let concrete = g.evaluate(&c, &[Scalar::from_int(7)]).unwrap();
        let mut symbolic = XyForm::zero();
        for (&(m, n), f) in &g.expansion() {
            let v = f.substitute(&vals);
            assert!(v.is_constant());
            symbolic = &symbolic + &XyForm::monomial(m, n, v.constant_term().clone());
        }
        assert_eq!(symbolic, concrete);
    }

    #[test]
    fn filter_degree_zero() {
        let got = step1_monomial_filter(0, &build_lk(&int(5))).unwrap();
        assert_eq!(got.len(), 8);
        let labels: Vec<String> = got.into_iter().map(pq_label).collect();
        assert_eq!(labels, ["1", "p", "q", "p^2", "pq", "q^2", "p^2q", "pq^2"]);
    }

    #[test]
    fn filter_needs_positive_lc() {
        let neg = -&build_lk(&int(5));
        assert!(step1_monomial_filter(0, &neg).is_err());
    }

    #[test]
    fn labels() {
        assert_eq!(monomial_label((0, 0)), "1");
        assert_eq!(monomial_label((2, 4)), "X^2Y^4");
        assert_eq!(monomial_label((1, 1)), "XY");
    }
}
