//! Quadratic modules, certificates, and the Ind/Res operators.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::cexp::{BimoduleProjection, Element, ProjectionKind};
use crate::error::{Error, Result};
use crate::fock::{aplus_refute, psd_truncated_check, witness_element};
use crate::linalg::PsdResult;
use crate::matalg::SemialgebraicSet;
use crate::numfield::{in_induced_ordering, NumberField};
use crate::polyalg::{first_negative_natural, nonneg_on, Domain, Poly, PolyAlgebra};
use crate::scalar::{int, Rational, Scalar};
use crate::upoly::UPoly;
use crate::weyl::{ek_star_ek, WeylElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadraticModule {
    /// `QM(S)` in the ambient algebra of the generators.
    FinGen(Vec<Element>),
    /// Polynomials nonnegative on `ℕ₀`.
    PosN0,
    PosHalfline,
    PosR,
    /// Polynomials nonnegative on `K_S`, probed at the sample points.
    PosKS {
        set: SemialgebraicSet,
        samples: Vec<Vec<Rational>>,
    },
    /// `𝒩_λ = {f : f(λ) ≥ 0}`.
    PointEval(u64),
    /// `𝒩_∞`: nonnegative leading coefficient.
    LeadingCoeff,
    /// The ordering of `L` induced from `ℚ₊` by the trace.
    InducedOrdering(Arc<NumberField>),
}

impl fmt::Display for QuadraticModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadraticModule::FinGen(s) => {
                let gens: Vec<String> = s.iter().map(|g| g.to_string()).collect();
                write!(f, "QM({})", gens.join(", "))
            }
            QuadraticModule::PosN0 => write!(f, "Pos(N0)"),
            QuadraticModule::PosHalfline => write!(f, "Pos([0, inf))"),
            QuadraticModule::PosR => write!(f, "Pos(R)"),
            QuadraticModule::PosKS { set, .. } => write!(f, "Pos(K_S), |S| = {}", set.polys.len()),
            QuadraticModule::PointEval(l) => write!(f, "N_{l}"),
            QuadraticModule::LeadingCoeff => write!(f, "N_inf"),
            QuadraticModule::InducedOrdering(k) => write!(f, "Ind(Q+) in Q[theta]/({})", k.minpoly()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Yes,
    No(String),
    Unknown,
}

impl Membership {
    pub fn is_yes(&self) -> bool {
        *self == Membership::Yes
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Membership::No(_))
    }
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Membership::Yes => write!(f, "yes"),
            Membership::No(w) => write!(f, "no ({w})"),
            Membership::Unknown => write!(f, "unknown"),
        }
    }
}

/// A univariate polynomial view of `f`: polynomials as they are, Weyl
/// elements when they lie in `ℂ[N]`, scalars as constants.
fn as_univariate(f: &Element) -> Result<Poly> {
    match f {
        Element::Poly(p) if p.algebra().nvars() == 1 => Ok(p.clone()),
        Element::Weyl(w) => {
            let d = w.grading_decompose();
            if d.components().keys().any(|&k| k != 0) {
                return Err(Error::AlgebraMismatch(format!("{w} is not in C[N]")));
            }
            Ok(d.component(0))
        }
        Element::Scalar(s) => Ok(Poly::constant(&PolyAlgebra::number_operator(), s.clone())),
        other => Err(Error::AlgebraMismatch(format!("{other} is not a univariate polynomial"))),
    }
}

fn decided(ok: bool, why: impl FnOnce() -> String) -> Membership {
    if ok {
        Membership::Yes
    } else {
        Membership::No(why())
    }
}

/// Leading coefficient sign of a real univariate polynomial.
fn leading_sign(p: &Poly) -> Result<i8> {
    match p.terms().iter().next_back() {
        None => Ok(0),
        Some((_, c)) => c.sign(),
    }
}

pub fn membership(qm: &QuadraticModule, f: &Element) -> Result<Membership> {
    if !f.is_hermitian() {
        return Err(Error::NotHermitian(f.to_string()));
    }
    Ok(match qm {
        QuadraticModule::FinGen(_) => Membership::Unknown,
        QuadraticModule::PosN0 => {
            let p = as_univariate(f)?;
            match p.to_upoly() {
                Ok(u) => match first_negative_natural(&u) {
                    None => Membership::Yes,
                    Some(k) => Membership::No(format!("value {} at {k}", u.eval(&int(k as i64)))),
                },
                Err(Error::IrrationalCoefficients(_)) => decided(nonneg_on(&p, Domain::Naturals)?, || {
                    "negative at some natural number".into()
                }),
                Err(e) => return Err(e),
            }
        }
        QuadraticModule::PosHalfline => {
            decided(nonneg_on(&as_univariate(f)?, Domain::HalfLine)?, || "negative on [0, inf)".into())
        }
        QuadraticModule::PosR => decided(nonneg_on(&as_univariate(f)?, Domain::Reals)?, || "negative on R".into()),
        QuadraticModule::PosKS { set, samples } => {
            let Element::Poly(p) = f else {
                return Err(Error::AlgebraMismatch(format!("{f} is not a polynomial")));
            };
            for chi in samples {
                let pt: Vec<Scalar> = chi.iter().cloned().map(Scalar::from_rational).collect();
                if set.contains(&pt)? {
                    let v = p.eval(&pt)?;
                    if v.sign()? < 0 {
                        let coords: Vec<String> = chi.iter().map(|q| q.to_string()).collect();
                        return Ok(Membership::No(format!("value {v} at ({})", coords.join(", "))));
                    }
                }
            }
            Membership::Unknown
        }
        QuadraticModule::PointEval(l) => {
            let p = as_univariate(f)?;
            let v = p.eval(&[Scalar::from_int(*l as i64)])?;
            decided(v.sign()? >= 0, || format!("value {v}"))
        }
        QuadraticModule::LeadingCoeff => {
            let p = as_univariate(f)?;
            decided(leading_sign(&p)? >= 0, || "negative leading coefficient".into())
        }
        QuadraticModule::InducedOrdering(field) => {
            let Element::Field(x) = f else {
                return Err(Error::AlgebraMismatch(format!("{f} is not a field element")));
            };
            if x.field() != field {
                return Err(Error::AlgebraMismatch("element of another field".into()));
            }
            decided(x.is_zero() || in_induced_ordering(x)?, || {
                "negative at a real embedding".into()
            })
        }
    })
}

/// One summand `λ · a* s a` of a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMTerm {
    pub lambda: Rational,
    pub generator: usize,
    pub a: Element,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QMCertificate {
    pub terms: Vec<QMTerm>,
}

impl QMCertificate {
    /// `Σ a_i* a_i` with the generator `1`.
    pub fn sum_of_squares(elems: impl IntoIterator<Item = Element>) -> Self {
        QMCertificate {
            terms: elems
                .into_iter()
                .map(|a| QMTerm {
                    lambda: Rational::one(),
                    generator: 0,
                    a,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertVerdict {
    Yes,
    No { discrepancy: Element },
}

impl CertVerdict {
    pub fn is_yes(&self) -> bool {
        *self == CertVerdict::Yes
    }
}

/// Checks `Σ λᵢ aᵢ* s_{gᵢ} aᵢ = target` exactly.
pub fn verify_certificate(target: &Element, gens: &[Element], cert: &QMCertificate) -> Result<CertVerdict> {
    let mut acc: Option<Element> = None;
    for (i, t) in cert.terms.iter().enumerate() {
        if t.lambda.is_negative() {
            return Err(Error::Malformed(format!("term {i}: negative weight {}", t.lambda)));
        }
        let s = gens
            .get(t.generator)
            .ok_or_else(|| Error::Malformed(format!("term {i}: generator index {} out of range", t.generator)))?;
        let term = t.a.star().mul(s)?.mul(&t.a)?;
        let term = scale_element(&term, &t.lambda);
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term)?,
        });
    }
    let zero = scale_element(target, &Rational::zero());
    let sum = acc.unwrap_or_else(|| zero.clone());
    let diff = target.add(&scale_element(&sum, &-Rational::one()))?;
    Ok(if diff == zero {
        CertVerdict::Yes
    } else {
        CertVerdict::No { discrepancy: diff }
    })
}

pub fn scale_element(x: &Element, q: &Rational) -> Element {
    let s = Scalar::from_rational(q.clone());
    match x {
        Element::Scalar(a) => Element::Scalar(a * &s),
        Element::Poly(a) => Element::Poly(a.scale(&s)),
        Element::Weyl(a) => Element::Weyl(a.scale(&s)),
        Element::Matrix(a) => Element::Matrix(a.scale(&s)),
        Element::Field(a) => Element::Field(a.scale(q)),
        Element::Cyclic(a) => Element::Cyclic(a.scale(q)),
    }
}

/// How an Ind query is to be decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndMode {
    /// Test `p(x* f x) ∈ 𝒩` for each listed `x`.
    Witnesses(Vec<Element>),
    /// Weyl grading with `Pos(ℕ₀)`: truncated Fock Gram matrices up to this level.
    Fock(usize),
    /// Field trace with `ℚ₊`: the induced ordering.
    NumberField,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndVerdict {
    Yes,
    YesUpToLevel(usize),
    No { witness: Element, value: Element },
    Unknown,
}

impl fmt::Display for IndVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndVerdict::Yes => write!(f, "yes"),
            IndVerdict::YesUpToLevel(m) => write!(f, "yes up to level {m}"),
            IndVerdict::No { witness, value } => write!(f, "no: x = {witness}, p(x* f x) = {value}"),
            IndVerdict::Unknown => write!(f, "unknown"),
        }
    }
}

/// How inducibility of `𝒩` was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Inducibility {
    /// `p(e_k* e_k) ∈ 𝒩` for the homogeneous generators tested.
    HomogeneousGenerators,
    /// `p(x* x) ∈ 𝒩` on the supplied elements only.
    Sampled,
    /// Decided exactly (total reality of the field).
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndOutcome {
    pub verdict: IndVerdict,
    pub inducibility: Inducibility,
}

const GENERATOR_RANGE: i64 = 12;

/// `f ∈ Ind 𝒩 = {a : p(x* a x) ∈ 𝒩 for all x}`.
pub fn ind_membership(
    p: &BimoduleProjection,
    n: &QuadraticModule,
    f: &Element,
    mode: &IndMode,
) -> Result<IndOutcome> {
    if !f.is_hermitian() {
        return Err(Error::NotHermitian(f.to_string()));
    }
    match mode {
        IndMode::Fock(level) => {
            let (ProjectionKind::Grading, QuadraticModule::PosN0, Element::Weyl(w)) = (p.kind(), n, f) else {
                return Err(Error::Precondition(
                    "Fock mode needs the Weyl grading, Pos(N0) and a Weyl element".into(),
                ));
            };
            let verdict = match aplus_refute(w, *level)? {
                None => IndVerdict::YesUpToLevel(*level),
                Some(m) => match psd_truncated_check(w, m)? {
                    PsdResult::NotPsd { witness, value } => IndVerdict::No {
                        witness: Element::Weyl(witness_element(&witness)),
                        value: Element::Scalar(value),
                    },
                    PsdResult::Psd => unreachable!("level {m} was refuted"),
                },
            };
            Ok(IndOutcome {
                verdict,
                inducibility: check_graded_generators(n)?,
            })
        }
        IndMode::NumberField => {
            let (ProjectionKind::TrField(_), Element::Field(x)) = (p.kind(), f) else {
                return Err(Error::Precondition("number-field mode needs the field trace".into()));
            };
            let verdict = if x.is_zero() || in_induced_ordering(x)? {
                IndVerdict::Yes
            } else {
                let Some(w) = field_witness(x)? else {
                    return Err(Error::CheckFailed(format!("no witness found for {x}")));
                };
                IndVerdict::No {
                    value: p.apply(&Element::Field(&(&w * x) * &w))?,
                    witness: Element::Field(w),
                }
            };
            Ok(IndOutcome {
                verdict,
                inducibility: Inducibility::Exact,
            })
        }
        IndMode::Witnesses(xs) => {
            let inducibility = if matches!(p.kind(), ProjectionKind::Grading) {
                check_graded_generators(n)?
            } else {
                for x in xs {
                    let v = p.apply(&x.star().mul(x)?)?;
                    if membership(n, &v)?.is_no() {
                        return Err(Error::Precondition(format!(
                            "not inducible: p(x* x) = {v} is outside {n} for x = {x}"
                        )));
                    }
                }
                Inducibility::Sampled
            };
            for x in xs {
                let v = p.apply(&x.star().mul(f)?.mul(x)?)?;
                if membership(n, &v)?.is_no() {
                    return Ok(IndOutcome {
                        verdict: IndVerdict::No {
                            witness: x.clone(),
                            value: v,
                        },
                        inducibility,
                    });
                }
            }
            Ok(IndOutcome {
                verdict: IndVerdict::Unknown,
                inducibility,
            })
        }
    }
}

/// `p(e_k* e_k) ∈ 𝒩` for `|k| ≤ GENERATOR_RANGE`.
fn check_graded_generators(n: &QuadraticModule) -> Result<Inducibility> {
    for k in -GENERATOR_RANGE..=GENERATOR_RANGE {
        let g = Element::Poly(ek_star_ek(k));
        if membership(n, &g)?.is_no() {
            return Err(Error::Precondition(format!(
                "not inducible: e_{k}* e_{k} = {g} is outside {n}"
            )));
        }
    }
    Ok(Inducibility::HomogeneousGenerators)
}

/// `w` with `tr(w x w) < 0`, from the monomials and pairwise sums/differences.
fn field_witness(x: &crate::numfield::NFElement) -> Result<Option<crate::numfield::NFElement>> {
    use crate::numfield::{ntrace, NFElement};
    let field = x.field();
    let s = field.degree();
    let basis: Vec<NFElement> = (0..s).map(|i| NFElement::theta(field).pow(i as u32)).collect();
    let mut cands = basis.clone();
    for i in 0..s {
        for j in i + 1..s {
            cands.push(&basis[i] + &basis[j]);
            cands.push(&basis[i] - &basis[j]);
        }
    }
    for w in cands {
        if ntrace(&(&(&w * x) * &w)).is_negative() {
            return Ok(Some(w));
        }
    }
    // exact fallback: the LDL witness of the Hermite form
    let form = crate::numfield::hermite_form(x)?;
    if let PsdResult::NotPsd { witness, .. } = crate::linalg::psd_check(&form)? {
        let coeffs: Option<Vec<Rational>> = witness.iter().map(|c| c.as_rational().cloned()).collect();
        if let Some(cs) = coeffs {
            return Ok(Some(NFElement::new(field, UPoly::new(cs))));
        }
    }
    Ok(None)
}

/// Images `p(a* s a)` over a finite basis. These generate a sub-q.m. of
/// `Res QM(S)`; the full restriction is not finitely generated in general.
pub fn res_generators(p: &BimoduleProjection, gens: &[Element], basis: &[Element]) -> Result<Vec<Element>> {
    let mut out: Vec<Element> = Vec::new();
    for a in basis {
        for s in gens {
            let v = p.apply(&a.star().mul(s)?.mul(a)?)?;
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// `ᵏ𝒩` for the Weyl grading acting on q.m. of `ℂ[N]`; `None` when undefined.
pub fn graded_action(k: i64, qm: &QuadraticModule) -> Result<Option<QuadraticModule>> {
    match qm {
        QuadraticModule::PointEval(l) => {
            let norm = ek_star_ek(k).eval(&[Scalar::from_int(*l as i64)])?;
            if norm.sign()? > 0 {
                let shifted = *l as i64 - k;
                Ok(Some(QuadraticModule::PointEval(shifted as u64)))
            } else {
                Ok(None)
            }
        }
        QuadraticModule::LeadingCoeff => Ok(Some(QuadraticModule::LeadingCoeff)),
        other => Err(Error::Precondition(format!(
            "graded action is implemented for N_lambda and N_inf, not {other}"
        ))),
    }
}

/// Direct test of `f ∈ ᵏ𝒩 = {f : e_k* e_k f(N − k) ∈ 𝒩}`.
pub fn in_graded_image(k: i64, qm: &QuadraticModule, f: &Poly) -> Result<Membership> {
    let u = f.to_upoly()?;
    let shifted = Poly::from_upoly(&PolyAlgebra::number_operator(), &u.shift(&int(-k)));
    let g = &ek_star_ek(k) * &shifted;
    membership(qm, &Element::Poly(g))
}

/// `f ∈ Res(Ind 𝒩_∞)` via `⋂_{|k| ≤ range} ᵏ(𝒩_∞)`, evaluated from the
/// definition rather than the closed form.
pub fn res_ind_leading(f: &Poly, range: i64) -> Result<bool> {
    for k in -range..=range {
        if in_graded_image(k, &QuadraticModule::LeadingCoeff, f)?.is_no() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Certificate `f = s₀ + αN + βN(N−1)` with `s₀ ≥ 0` on ℝ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degree2Verdict {
    Yes { s0: UPoly, alpha: Rational, beta: Rational },
    No,
}

/// Membership of a real polynomial of degree ≤ 2 in `N` in the degree-2
/// part of `Σℬ² + NΣℬ² + N(N−1)Σℬ²`.
pub fn degree2_decide(f: &Poly) -> Result<Degree2Verdict> {
    let u = f.to_upoly()?;
    if u.degree().unwrap_or(0) > 2 {
        return Err(Error::DegreeTooLarge {
            got: u.degree().unwrap_or(0),
            max: 2,
        });
    }
    let (f0, f1, f2) = (u.coeff(0), u.coeff(1), u.coeff(2));
    if f0.is_negative() || f2.is_negative() {
        return Ok(Degree2Verdict::No);
    }
    let four = int(4);
    let (alpha, beta) = if !(&f1 + &f2).is_negative() {
        let beta = if f1.is_negative() { -f1.clone() } else { Rational::zero() };
        (&f1 + &beta, beta)
    } else {
        let h = |b: &Rational| {
            let t = &f1 + b;
            &t * &t + &four * &f0 * b - &four * &f0 * &f2
        };
        let star = -&f1 - &f0 * int(2);
        let beta = star.max(Rational::zero()).min(f2.clone());
        if h(&beta).is_positive() {
            return Ok(Degree2Verdict::No);
        }
        (Rational::zero(), beta)
    };
    let s0 = UPoly::new(vec![f0.clone(), &f1 - &alpha + &beta, &f2 - &beta]);
    Ok(Degree2Verdict::Yes { s0, alpha, beta })
}

/// Exact check of a [`Degree2Verdict::Yes`] certificate.
pub fn check_degree2_certificate(f: &Poly, v: &Degree2Verdict) -> Result<bool> {
    let Degree2Verdict::Yes { s0, alpha, beta } = v else {
        return Ok(false);
    };
    if alpha.is_negative() || beta.is_negative() {
        return Ok(false);
    }
    let (c, b, a) = (s0.coeff(0), s0.coeff(1), s0.coeff(2));
    let psd = !a.is_negative() && !c.is_negative() && &b * &b <= int(4) * &a * &c;
    let rebuilt = s0 + &UPoly::new(vec![Rational::zero(), alpha - beta, beta.clone()]);
    Ok(psd && rebuilt == f.to_upoly()?)
}

/// `L₅`-style targets as Weyl elements in the certificate layer.
pub fn weyl(x: WeylElement) -> Element {
    Element::Weyl(x)
}
