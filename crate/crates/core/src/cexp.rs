//! Bimodule projections `p: 𝒜 → ℬ` as values, with exact axiom checks.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;

use crate::cyclic::{CyclicAlgebra, CyclicElement};
use crate::error::{Error, Result};
use crate::matalg::{group_average, group_elements, act, MatPoly};
use crate::numfield::{ntrace, NFElement, NumberField};
use crate::polyalg::{nonneg_on, Domain, Poly, PolyAlgebra};
use crate::sample;
use crate::scalar::{Rational, Scalar};
use crate::weyl::WeylElement;

/// The algebras projections run between.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraId {
    Complex,
    Rationals,
    Poly(Arc<PolyAlgebra>),
    /// Polynomials in `var^power` inside `alg`.
    PolyPowers {
        alg: Arc<PolyAlgebra>,
        var: usize,
        power: u32,
    },
    Weyl,
    Matrix {
        base: Arc<PolyAlgebra>,
        n: usize,
    },
    /// `ℬ · I` inside `M_n(ℬ)`.
    ScalarMatrices {
        base: Arc<PolyAlgebra>,
        n: usize,
    },
    Field(Arc<NumberField>),
    Cyclic(Arc<CyclicAlgebra>),
}

impl AlgebraId {
    fn poly_powers(alg: &Arc<PolyAlgebra>, var: usize, power: u32) -> Self {
        if power == 1 {
            AlgebraId::Poly(alg.clone())
        } else {
            AlgebraId::PolyPowers {
                alg: alg.clone(),
                var,
                power,
            }
        }
    }

    pub fn one(&self) -> Element {
        match self {
            AlgebraId::Complex | AlgebraId::Rationals => Element::Scalar(Scalar::one()),
            AlgebraId::Poly(alg) | AlgebraId::PolyPowers { alg, .. } => Element::Poly(Poly::one(alg)),
            AlgebraId::Weyl => Element::Weyl(WeylElement::one()),
            AlgebraId::Matrix { base, n } | AlgebraId::ScalarMatrices { base, n } => {
                Element::Matrix(MatPoly::identity(base, *n))
            }
            AlgebraId::Field(f) => Element::Field(NFElement::one(f)),
            AlgebraId::Cyclic(c) => Element::Cyclic(CyclicElement::one(c)),
        }
    }

    /// Whether `x` lies in this algebra.
    pub fn contains(&self, x: &Element) -> bool {
        match (self, x) {
            (AlgebraId::Complex, Element::Scalar(_)) => true,
            (AlgebraId::Rationals, Element::Scalar(s)) => s.as_rational().is_some(),
            (AlgebraId::Poly(alg), Element::Poly(p)) => p.algebra() == alg,
            (AlgebraId::PolyPowers { alg, var, power }, Element::Poly(p)) => {
                p.algebra() == alg && p.terms().keys().all(|e| e[*var] % power == 0)
            }
            (AlgebraId::Weyl, Element::Weyl(_)) => true,
            (AlgebraId::Matrix { base, n }, Element::Matrix(m)) => m.algebra() == base && m.size() == *n,
            (AlgebraId::ScalarMatrices { base, n }, Element::Matrix(m)) => {
                m.algebra() == base
                    && m.size() == *n
                    && (0..*n).all(|i| {
                        (0..*n).all(|j| {
                            if i == j {
                                m.get(i, i) == m.get(0, 0)
                            } else {
                                m.get(i, j).is_zero()
                            }
                        })
                    })
            }
            (AlgebraId::Field(f), Element::Field(x)) => x.field() == f,
            (AlgebraId::Cyclic(c), Element::Cyclic(x)) => x.algebra() == c,
            _ => false,
        }
    }

    /// A random element, with polynomial parts of degree at most `deg`.
    pub fn random<R: Rng>(&self, rng: &mut R, deg: u32) -> Element {
        match self {
            AlgebraId::Complex => Element::Scalar(sample::scalar(rng)),
            AlgebraId::Rationals => Element::Scalar(Scalar::from_rational(sample::rational(rng))),
            AlgebraId::Poly(alg) => Element::Poly(sample::poly(rng, alg, deg)),
            AlgebraId::PolyPowers { alg, var, power } => Element::Poly(sample::poly_with_step(
                rng,
                alg,
                deg * power,
                Some((*var, *power)),
            )),
            AlgebraId::Weyl => Element::Weyl(sample::weyl(rng, deg)),
            AlgebraId::Matrix { base, n } => Element::Matrix(sample::matpoly(rng, base, *n, deg)),
            AlgebraId::ScalarMatrices { base, n } => {
                Element::Matrix(MatPoly::identity(base, *n).scale_poly(&sample::poly(rng, base, deg)))
            }
            AlgebraId::Field(f) => Element::Field(sample::nf_element(rng, f)),
            AlgebraId::Cyclic(c) => Element::Cyclic(sample::cyclic_element(rng, c)),
        }
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraId::Complex => write!(f, "C"),
            AlgebraId::Rationals => write!(f, "Q"),
            AlgebraId::Poly(alg) => write!(f, "poly[{}]", alg.names().join(", ")),
            AlgebraId::PolyPowers { alg, var, power } => {
                write!(f, "poly[{}^{power}]", alg.names()[*var])
            }
            AlgebraId::Weyl => write!(f, "weyl"),
            AlgebraId::Matrix { base, n } => write!(f, "M_{n}(poly[{}])", base.names().join(", ")),
            AlgebraId::ScalarMatrices { base, n } => {
                write!(f, "poly[{}]*I_{n}", base.names().join(", "))
            }
            AlgebraId::Field(k) => write!(f, "Q[theta]/({})", k.minpoly()),
            AlgebraId::Cyclic(c) => write!(f, "cyclic(n={}, a={})", c.n(), c.a()),
        }
    }
}

/// An element of one of the algebras in [`AlgebraId`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Scalar(Scalar),
    Poly(Poly),
    Weyl(WeylElement),
    Matrix(MatPoly),
    Field(NFElement),
    Cyclic(CyclicElement),
}

fn mismatch(a: &Element, b: &Element) -> Error {
    Error::AlgebraMismatch(format!("{} and {}", a.kind(), b.kind()))
}

impl Element {
    fn kind(&self) -> &'static str {
        match self {
            Element::Scalar(_) => "scalar",
            Element::Poly(_) => "polynomial",
            Element::Weyl(_) => "Weyl element",
            Element::Matrix(_) => "matrix",
            Element::Field(_) => "field element",
            Element::Cyclic(_) => "cyclic algebra element",
        }
    }

    pub fn add(&self, o: &Element) -> Result<Element> {
        Ok(match (self, o) {
            (Element::Scalar(a), Element::Scalar(b)) => Element::Scalar(a + b),
            (Element::Poly(a), Element::Poly(b)) if a.same_algebra(b) => Element::Poly(a + b),
            (Element::Weyl(a), Element::Weyl(b)) => Element::Weyl(a + b),
            (Element::Matrix(a), Element::Matrix(b)) if a.size() == b.size() => Element::Matrix(a + b),
            (Element::Field(a), Element::Field(b)) if a.field() == b.field() => Element::Field(a + b),
            (Element::Cyclic(a), Element::Cyclic(b)) if a.algebra() == b.algebra() => {
                Element::Cyclic(a + b)
            }
            _ => return Err(mismatch(self, o)),
        })
    }

    pub fn mul(&self, o: &Element) -> Result<Element> {
        Ok(match (self, o) {
            (Element::Scalar(a), Element::Scalar(b)) => Element::Scalar(a * b),
            (Element::Poly(a), Element::Poly(b)) if a.same_algebra(b) => Element::Poly(a * b),
            (Element::Weyl(a), Element::Weyl(b)) => Element::Weyl(a * b),
            (Element::Matrix(a), Element::Matrix(b)) if a.size() == b.size() => Element::Matrix(a * b),
            (Element::Field(a), Element::Field(b)) if a.field() == b.field() => Element::Field(a * b),
            (Element::Cyclic(a), Element::Cyclic(b)) if a.algebra() == b.algebra() => {
                Element::Cyclic(a * b)
            }
            _ => return Err(mismatch(self, o)),
        })
    }

    /// The involution. Number fields carry the trivial one.
    pub fn star(&self) -> Element {
        match self {
            Element::Scalar(a) => Element::Scalar(a.conj()),
            Element::Poly(a) => Element::Poly(a.star()),
            Element::Weyl(a) => Element::Weyl(a.star()),
            Element::Matrix(a) => Element::Matrix(a.star()),
            Element::Field(a) => Element::Field(a.clone()),
            Element::Cyclic(a) => Element::Cyclic(a.star()),
        }
    }

    pub fn is_hermitian(&self) -> bool {
        self.star() == *self
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Scalar(a) => write!(f, "{a}"),
            Element::Poly(a) => write!(f, "{a}"),
            Element::Weyl(a) => write!(f, "{a}"),
            Element::Matrix(a) => write!(f, "{a:?}"),
            Element::Field(a) => write!(f, "{a}"),
            Element::Cyclic(a) => write!(f, "{a}"),
        }
    }
}

/// A linear functional given by its values on monomials or by evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Functional {
    /// `φ(x^k) = moments[k]` on a univariate algebra; undefined above.
    Moments(Vec<Scalar>),
    /// `φ(f) = f(point)`.
    Point(Vec<Scalar>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectionKind {
    Identity(AlgebraId),
    /// Weyl algebra onto `ℂ[N]`, keeping the degree-zero component.
    Grading,
    /// `f ↦ ½(f(u) + f(−u))` with `u = var^(2^(level−1))`.
    Parity {
        alg: Arc<PolyAlgebra>,
        var: usize,
        level: u32,
    },
    /// `ℂ[z, z̄] → ℂ[t]`, `t = z z̄`.
    Charge(Arc<PolyAlgebra>),
    /// Average over the signed cyclic group acting on `M_n(ℬ)`.
    GroupAverage { base: Arc<PolyAlgebra>, n: usize },
    /// `M_n(ℬ) → ℬ`, the normalized trace.
    NtraceMatrix { base: Arc<PolyAlgebra>, n: usize },
    /// Cyclic algebra onto its maximal subfield.
    PAL(Arc<CyclicAlgebra>),
    /// `L → ℚ`, the normalized field trace.
    TrField(Arc<NumberField>),
    /// `φ / φ(1)`.
    Functional {
        alg: Arc<PolyAlgebra>,
        phi: Functional,
    },
    /// Stages in application order.
    Composition(Vec<BimoduleProjection>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleProjection {
    kind: ProjectionKind,
}

impl BimoduleProjection {
    pub fn identity(id: AlgebraId) -> Self {
        BimoduleProjection {
            kind: ProjectionKind::Identity(id),
        }
    }

    pub fn grading() -> Self {
        BimoduleProjection {
            kind: ProjectionKind::Grading,
        }
    }

    pub fn parity(alg: &Arc<PolyAlgebra>, var: &str, level: u32) -> Result<Self> {
        if level == 0 {
            return Err(Error::Precondition("parity level starts at 1".into()));
        }
        Ok(BimoduleProjection {
            kind: ProjectionKind::Parity {
                alg: alg.clone(),
                var: alg.var_index(var)?,
                level,
            },
        })
    }

    pub fn charge(alg: &Arc<PolyAlgebra>) -> Result<Self> {
        if alg.nvars() != 2 || alg.involution() != [1, 0] {
            return Err(Error::AlgebraMismatch(
                "charge projection needs ℂ[z, z̄] with z* = z̄".into(),
            ));
        }
        Ok(BimoduleProjection {
            kind: ProjectionKind::Charge(alg.clone()),
        })
    }

    pub fn group_average(base: &Arc<PolyAlgebra>, n: usize) -> Self {
        BimoduleProjection {
            kind: ProjectionKind::GroupAverage { base: base.clone(), n },
        }
    }

    pub fn ntrace_matrix(base: &Arc<PolyAlgebra>, n: usize) -> Self {
        BimoduleProjection {
            kind: ProjectionKind::NtraceMatrix { base: base.clone(), n },
        }
    }

    pub fn p_al(alg: &Arc<CyclicAlgebra>) -> Self {
        BimoduleProjection {
            kind: ProjectionKind::PAL(alg.clone()),
        }
    }

    pub fn tr_field(field: &Arc<NumberField>) -> Self {
        BimoduleProjection {
            kind: ProjectionKind::TrField(field.clone()),
        }
    }

    /// `φ/φ(1)`; needs `φ(1) ≠ 0` and real values on hermitian monomials.
    pub fn functional(alg: &Arc<PolyAlgebra>, phi: Functional) -> Result<Self> {
        let (one, real) = match &phi {
            Functional::Moments(m) => {
                if alg.nvars() != 1 || alg.involution() != [0] {
                    return Err(Error::AlgebraMismatch(
                        "moment functionals live on a univariate real algebra".into(),
                    ));
                }
                (m.first().cloned().unwrap_or_default(), m.iter().all(Scalar::is_real))
            }
            Functional::Point(pt) => {
                if pt.len() != alg.nvars() {
                    return Err(Error::Shape("evaluation point dimension".into()));
                }
                let real_point = (0..alg.nvars()).all(|i| {
                    let j = alg.involution()[i];
                    pt[j] == pt[i].conj()
                });
                (Scalar::one(), real_point)
            }
        };
        if one.is_zero() {
            return Err(Error::Precondition("φ(1) = 0".into()));
        }
        if !real {
            return Err(Error::Precondition("functional is not hermitian".into()));
        }
        Ok(BimoduleProjection {
            kind: ProjectionKind::Functional { alg: alg.clone(), phi },
        })
    }

    /// `p₂ ∘ p₁`.
    pub fn compose(p2: &BimoduleProjection, p1: &BimoduleProjection) -> Result<Self> {
        if p1.target() != p2.source() {
            return Err(Error::AlgebraMismatch(format!(
                "chain mismatch: {} then {}",
                p1.target(),
                p2.source()
            )));
        }
        let mut stages = Vec::new();
        for p in [p1, p2] {
            match &p.kind {
                ProjectionKind::Composition(s) => stages.extend(s.iter().cloned()),
                ProjectionKind::Identity(_) => {}
                _ => stages.push(p.clone()),
            }
        }
        Ok(match stages.len() {
            0 => BimoduleProjection::identity(p1.source()),
            1 => stages.pop().expect("one stage"),
            _ => BimoduleProjection {
                kind: ProjectionKind::Composition(stages),
            },
        })
    }

    pub fn kind(&self) -> &ProjectionKind {
        &self.kind
    }

    pub fn source(&self) -> AlgebraId {
        match &self.kind {
            ProjectionKind::Identity(id) => id.clone(),
            ProjectionKind::Grading => AlgebraId::Weyl,
            ProjectionKind::Parity { alg, var, level } => {
                AlgebraId::poly_powers(alg, *var, 1 << (level - 1))
            }
            ProjectionKind::Charge(alg) => AlgebraId::Poly(alg.clone()),
            ProjectionKind::GroupAverage { base, n } | ProjectionKind::NtraceMatrix { base, n } => {
                AlgebraId::Matrix { base: base.clone(), n: *n }
            }
            ProjectionKind::PAL(c) => AlgebraId::Cyclic(c.clone()),
            ProjectionKind::TrField(f) => AlgebraId::Field(f.clone()),
            ProjectionKind::Functional { alg, .. } => AlgebraId::Poly(alg.clone()),
            ProjectionKind::Composition(s) => s[0].source(),
        }
    }

    pub fn target(&self) -> AlgebraId {
        match &self.kind {
            ProjectionKind::Identity(id) => id.clone(),
            ProjectionKind::Grading => AlgebraId::Poly(PolyAlgebra::number_operator()),
            ProjectionKind::Parity { alg, var, level } => AlgebraId::poly_powers(alg, *var, 1 << level),
            ProjectionKind::Charge(_) => AlgebraId::Poly(PolyAlgebra::charge_zero()),
            ProjectionKind::GroupAverage { base, n } => AlgebraId::ScalarMatrices {
                base: base.clone(),
                n: *n,
            },
            ProjectionKind::NtraceMatrix { base, .. } => AlgebraId::Poly(base.clone()),
            ProjectionKind::PAL(c) => AlgebraId::Field(c.field().clone()),
            ProjectionKind::TrField(_) => AlgebraId::Rationals,
            ProjectionKind::Functional { .. } => AlgebraId::Complex,
            ProjectionKind::Composition(s) => s[s.len() - 1].target(),
        }
    }

    fn wrong_input(&self, x: &Element) -> Error {
        Error::AlgebraMismatch(format!("{} is not in {}", x, self.source()))
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if !self.source().contains(x) {
            return Err(self.wrong_input(x));
        }
        Ok(match (&self.kind, x) {
            (ProjectionKind::Identity(_), _) => x.clone(),
            (ProjectionKind::Grading, Element::Weyl(w)) => Element::Poly(w.grading_projection()),
            (ProjectionKind::Parity { alg, var, level }, Element::Poly(p)) => {
                Element::Poly(p.parity_projection_level(&alg.names()[*var], *level)?)
            }
            (ProjectionKind::Charge(_), Element::Poly(p)) => Element::Poly(p.charge_projection()?),
            (ProjectionKind::GroupAverage { .. }, Element::Matrix(m)) => Element::Matrix(group_average(m)?),
            (ProjectionKind::NtraceMatrix { .. }, Element::Matrix(m)) => Element::Poly(m.ntrace()),
            (ProjectionKind::PAL(_), Element::Cyclic(c)) => Element::Field(c.p_al()),
            (ProjectionKind::TrField(_), Element::Field(l)) => {
                Element::Scalar(Scalar::from_rational(ntrace(l)))
            }
            (ProjectionKind::Functional { phi, .. }, Element::Poly(p)) => {
                Element::Scalar(apply_functional(phi, p)?)
            }
            (ProjectionKind::Composition(stages), _) => {
                let mut acc = x.clone();
                for s in stages {
                    acc = s.apply(&acc)?;
                }
                acc
            }
            _ => return Err(self.wrong_input(x)),
        })
    }

    /// The inclusion `ℬ ↪ 𝒜`.
    pub fn include(&self, b: &Element) -> Result<Element> {
        if !self.target().contains(b) {
            return Err(Error::AlgebraMismatch(format!("{} is not in {}", b, self.target())));
        }
        Ok(match (&self.kind, b) {
            (ProjectionKind::Grading, Element::Poly(f)) => Element::Weyl(WeylElement::from_poly_in_n(f)?),
            (ProjectionKind::Charge(alg), Element::Poly(f)) => Element::Poly(Poly::from_terms(
                alg,
                f.terms().iter().map(|(e, c)| (vec![e[0], e[0]], c.clone())),
            )?),
            (ProjectionKind::NtraceMatrix { base, n }, Element::Poly(f)) => {
                Element::Matrix(MatPoly::identity(base, *n).scale_poly(f))
            }
            (ProjectionKind::PAL(c), Element::Field(l)) => Element::Cyclic(CyclicElement::scalar(c, l.clone())),
            (ProjectionKind::TrField(f), Element::Scalar(s)) => {
                let q = s.as_rational().ok_or_else(|| Error::NotReal(s.to_string()))?;
                Element::Field(NFElement::from_rational(f, q.clone()))
            }
            (ProjectionKind::Functional { alg, .. }, Element::Scalar(s)) => {
                Element::Poly(Poly::constant(alg, s.clone()))
            }
            (ProjectionKind::Composition(stages), _) => {
                let mut acc = b.clone();
                for s in stages.iter().rev() {
                    acc = s.include(&acc)?;
                }
                acc
            }
            _ => b.clone(),
        })
    }
}

fn apply_functional(phi: &Functional, p: &Poly) -> Result<Scalar> {
    match phi {
        Functional::Point(pt) => p.eval(pt),
        Functional::Moments(m) => {
            let mut acc = Scalar::zero();
            for (e, c) in p.terms() {
                let k = e[0] as usize;
                let mk = m.get(k).ok_or(Error::DegreeTooLarge {
                    got: k,
                    max: m.len().saturating_sub(1),
                })?;
                acc += &(c * mk);
            }
            Ok(&acc * &m[0].inv()?)
        }
    }
}

impl fmt::Display for BimoduleProjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ProjectionKind::Identity(id) => write!(f, "id[{id}]"),
            ProjectionKind::Grading => write!(f, "grading"),
            ProjectionKind::Parity { alg, var, level } => {
                write!(f, "parity[{}, level {level}]", alg.names()[*var])
            }
            ProjectionKind::Charge(_) => write!(f, "charge"),
            ProjectionKind::GroupAverage { n, .. } => write!(f, "group-average[{n}]"),
            ProjectionKind::NtraceMatrix { n, .. } => write!(f, "ntrace[{n}]"),
            ProjectionKind::PAL(_) => write!(f, "p_AL"),
            ProjectionKind::TrField(_) => write!(f, "tr_LK"),
            ProjectionKind::Functional { phi: Functional::Moments(_), .. } => write!(f, "moment-functional"),
            ProjectionKind::Functional { phi: Functional::Point(_), .. } => write!(f, "evaluation"),
            ProjectionKind::Composition(s) => {
                let names: Vec<String> = s.iter().rev().map(|p| p.to_string()).collect();
                write!(f, "{}", names.join(" o "))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    CE1,
    CE2,
    CE3,
    CE4,
    CE5,
    /// Values land in the target algebra.
    Range,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::CE1 => "CE1",
            Axiom::CE2 => "CE2",
            Axiom::CE3 => "CE3",
            Axiom::CE4 => "CE4",
            Axiom::CE5 => "CE5",
            Axiom::Range => "range",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomStatus {
    Pass,
    Fail { input: String, witness: String },
    /// A necessary condition held on every sample; membership itself is not decided.
    NotRefuted,
    UndecidableHere,
}

impl fmt::Display for AxiomStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomStatus::Pass => write!(f, "pass"),
            AxiomStatus::Fail { input, witness } => write!(f, "FAIL on {input}: {witness}"),
            AxiomStatus::NotRefuted => write!(f, "not refuted"),
            AxiomStatus::UndecidableHere => write!(f, "undecidable here"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub results: Vec<(Axiom, AxiomStatus)>,
}

impl AxiomReport {
    pub fn status(&self, ax: Axiom) -> Option<&AxiomStatus> {
        self.results.iter().find(|(a, _)| *a == ax).map(|(_, s)| s)
    }

    pub fn failures(&self) -> impl Iterator<Item = &(Axiom, AxiomStatus)> {
        self.results
            .iter()
            .filter(|(_, s)| matches!(s, AxiomStatus::Fail { .. }))
    }

    pub fn all_pass(&self, axioms: &[Axiom]) -> bool {
        axioms
            .iter()
            .all(|a| self.status(*a) == Some(&AxiomStatus::Pass))
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, s) in &self.results {
            writeln!(f, "{a}: {s}")?;
        }
        Ok(())
    }
}

/// Inputs for [`check_axioms`].
#[derive(Clone, Debug, Default)]
pub struct AxiomSamples {
    /// Elements of the source algebra; CE5 also uses `a*a` for each.
    pub source: Vec<Element>,
    /// Elements of the target algebra, for CE2.
    pub target: Vec<Element>,
    /// Known members of `ΣA²`, checked under CE5.
    pub squares: Vec<Element>,
}

impl AxiomSamples {
    pub fn random(p: &BimoduleProjection, k: usize, seed: u64) -> Self {
        let mut rng = sample::rng(seed);
        let (src, tgt) = (p.source(), p.target());
        let deg = sample_degree(p);
        AxiomSamples {
            source: (0..k).map(|_| src.random(&mut rng, deg)).collect(),
            target: (0..k.max(1)).map(|_| tgt.random(&mut rng, 1)).collect(),
            squares: Vec::new(),
        }
    }
}

fn sample_degree(p: &BimoduleProjection) -> u32 {
    match &p.kind {
        ProjectionKind::Functional { phi: Functional::Moments(m), .. } => (m.len() as u32).saturating_sub(1) / 2,
        ProjectionKind::Composition(s) => s.iter().map(sample_degree).min().unwrap_or(2),
        ProjectionKind::GroupAverage { .. } | ProjectionKind::NtraceMatrix { .. } => 1,
        ProjectionKind::Parity { .. } => 3,
        _ => 2,
    }
}

/// Exact per-sample verification of CE1–CE4, and CE5 where decidable.
pub fn check_axioms(p: &BimoduleProjection, samples: &AxiomSamples, with_ce5: bool) -> Result<AxiomReport> {
    let src = &samples.source;
    let fail = |input: String, witness: String| AxiomStatus::Fail { input, witness };
    let mut results = Vec::new();

    let mut range = AxiomStatus::Pass;
    let mut values = Vec::with_capacity(src.len());
    for a in src {
        let pa = p.apply(a)?;
        if range == AxiomStatus::Pass && !p.target().contains(&pa) {
            range = fail(a.to_string(), format!("{pa} is outside {}", p.target()));
        }
        values.push(pa);
    }

    let mut ce1 = AxiomStatus::Pass;
    for i in 0..src.len() {
        let j = (i + 1) % src.len();
        let lhs = p.apply(&src[i].add(&src[j])?)?;
        let rhs = values[i].add(&values[j])?;
        if lhs != rhs {
            ce1 = fail(format!("({}) + ({})", src[i], src[j]), format!("{lhs} != {rhs}"));
            break;
        }
    }
    results.push((Axiom::CE1, ce1));

    let mut ce2 = AxiomStatus::Pass;
    let tg = &samples.target;
    if !tg.is_empty() {
        for (i, a) in src.iter().enumerate() {
            let b1 = &tg[i % tg.len()];
            let b2 = &tg[(i + 1) % tg.len()];
            let (i1, i2) = (p.include(b1)?, p.include(b2)?);
            let lhs = p.apply(&i1.mul(a)?.mul(&i2)?)?;
            let rhs = b1.mul(&values[i])?.mul(b2)?;
            if lhs != rhs {
                ce2 = fail(format!("b1 = {b1}, a = {a}, b2 = {b2}"), format!("{lhs} != {rhs}"));
                break;
            }
        }
    }
    results.push((Axiom::CE2, ce2));

    let mut ce3 = AxiomStatus::Pass;
    for (a, pa) in src.iter().zip(&values) {
        let lhs = p.apply(&a.star())?;
        let rhs = pa.star();
        if lhs != rhs {
            ce3 = fail(a.to_string(), format!("{lhs} != {rhs}"));
            break;
        }
    }
    results.push((Axiom::CE3, ce3));

    let one = p.apply(&p.source().one())?;
    let ce4 = if one == p.target().one() {
        AxiomStatus::Pass
    } else {
        fail("1".into(), one.to_string())
    };
    results.push((Axiom::CE4, ce4));

    if with_ce5 {
        let mut squares: Vec<Element> = samples.squares.clone();
        for a in src {
            squares.push(a.star().mul(a)?);
        }
        let mut ce5 = AxiomStatus::Pass;
        for s in &squares {
            let ps = p.apply(s)?;
            match square_membership(p, &ps)? {
                AxiomStatus::Pass => {}
                AxiomStatus::Fail { .. } => {
                    ce5 = fail(s.to_string(), ps.to_string());
                    break;
                }
                weaker => {
                    if ce5 == AxiomStatus::Pass || weaker == AxiomStatus::UndecidableHere {
                        ce5 = weaker;
                    }
                }
            }
        }
        results.push((Axiom::CE5, ce5));
    }
    results.push((Axiom::Range, range));
    Ok(AxiomReport { results })
}

/// Decides `b ∈ ΣA²` for `b = p(s)` in the target, where a procedure exists.
fn square_membership(p: &BimoduleProjection, b: &Element) -> Result<AxiomStatus> {
    let verdict = |ok: bool| {
        if ok {
            AxiomStatus::Pass
        } else {
            AxiomStatus::Fail {
                input: String::new(),
                witness: b.to_string(),
            }
        }
    };
    let univariate_real = |alg: &Arc<PolyAlgebra>| alg.nvars() == 1 && alg.involution() == [0];
    Ok(match (p.source(), b) {
        (AlgebraId::Complex | AlgebraId::Poly(_) | AlgebraId::Weyl | AlgebraId::Matrix { .. }, Element::Scalar(s)) => {
            verdict(s.is_real() && s.sign()? >= 0)
        }
        (AlgebraId::Rationals | AlgebraId::Field(_) | AlgebraId::Cyclic(_), Element::Scalar(s)) => {
            // Nonnegative rationals are sums of four rational squares.
            if s.sign()? >= 0 {
                AxiomStatus::Pass
            } else {
                AxiomStatus::UndecidableHere
            }
        }
        (AlgebraId::Weyl, Element::Poly(f)) => {
            if nonneg_on(f, Domain::Naturals)? {
                AxiomStatus::NotRefuted
            } else {
                verdict(false)
            }
        }
        (AlgebraId::Poly(alg), Element::Poly(f)) if alg.nvars() == 2 && alg.involution() == [1, 0] => {
            if f.algebra().nvars() == 1 {
                verdict(nonneg_on(f, Domain::HalfLine)?)
            } else {
                AxiomStatus::UndecidableHere
            }
        }
        (AlgebraId::Poly(alg) | AlgebraId::PolyPowers { alg, .. }, Element::Poly(f)) if univariate_real(&alg) => {
            verdict(nonneg_on(f, Domain::Reals)?)
        }
        (AlgebraId::Matrix { base, .. }, Element::Poly(f)) if univariate_real(&base) => {
            verdict(nonneg_on(f, Domain::Reals)?)
        }
        (AlgebraId::Matrix { base, .. }, Element::Matrix(m)) if univariate_real(&base) => {
            if (AlgebraId::ScalarMatrices { base: base.clone(), n: m.size() }).contains(b) {
                verdict(nonneg_on(m.get(0, 0), Domain::Reals)?)
            } else {
                AxiomStatus::UndecidableHere
            }
        }
        _ => AxiomStatus::UndecidableHere,
    })
}

/// Checks that group-average values are fixed by every group element.
pub fn group_average_is_invariant(x: &MatPoly) -> Result<bool> {
    let avg = group_average(x)?;
    for g in group_elements(x.size()) {
        if act(&g, &avg)? != avg {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `ρ₀`: evaluation of `ℂ[N]` at `N = 0`.
pub fn vacuum_evaluation() -> BimoduleProjection {
    BimoduleProjection::functional(&PolyAlgebra::number_operator(), Functional::Point(vec![Scalar::zero()]))
        .expect("valid point")
}

/// `φ₀ = ρ₀ ∘ p` on the Weyl algebra.
pub fn vacuum_state() -> BimoduleProjection {
    BimoduleProjection::compose(&vacuum_evaluation(), &BimoduleProjection::grading()).expect("chain")
}

/// `tr_{𝔄/ℚ} = tr_{L/ℚ} ∘ p_{𝔄/L}`.
pub fn tr_ak(alg: &Arc<CyclicAlgebra>) -> BimoduleProjection {
    BimoduleProjection::compose(&BimoduleProjection::tr_field(alg.field()), &BimoduleProjection::p_al(alg))
        .expect("chain")
}

/// The two parity projections on `ℝ[x]` and their composite, which is not
/// a conditional expectation.
pub fn parity_chain(alg: &Arc<PolyAlgebra>, var: &str) -> Result<(BimoduleProjection, BimoduleProjection)> {
    let p1 = BimoduleProjection::parity(alg, var, 1)?;
    let p2 = BimoduleProjection::parity(alg, var, 2)?;
    Ok((p1.clone(), BimoduleProjection::compose(&p2, &p1)?))
}

pub fn rational_scalar(q: Rational) -> Element {
    Element::Scalar(Scalar::from_rational(q))
}
