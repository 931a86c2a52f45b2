//! Commutative polynomial *-algebras over [`Scalar`].
//!
//! An algebra is a list of generator names together with an involution on the
//! generators (identity for ℝ[x, y], the swap `z ↔ z̄` for ℂ[z, z̄]). The star
//! of a polynomial conjugates coefficients and substitutes generators.
//!
//! Besides arithmetic this module holds the parity and charge projections and
//! exact univariate nonnegativity deciders on ℝ, [0, ∞) and ℕ₀.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{int, Rational, Scalar};
use crate::upoly::{count_roots_between, isolate_real_roots, ExtPoint, RootCounter, UPoly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyAlgebra {
    names: Vec<String>,
    involution: Vec<usize>,
}

impl PolyAlgebra {
    /// Algebra with the given generators and involution (generator index to
    /// generator index). The map must square to the identity.
    pub fn new(names: Vec<String>, involution: Vec<usize>) -> Result<Self> {
        if names.len() != involution.len() {
            return Err(Error::Shape("involution map length".into()));
        }
        for (i, &j) in involution.iter().enumerate() {
            if j >= names.len() || involution[j] != i {
                return Err(Error::InvalidInvolution {
                    axiom: "star∘star = id".into(),
                    detail: format!("generator {} maps to index {j}", names[i]),
                });
            }
        }
        Ok(PolyAlgebra { names, involution })
    }

    /// Hermitian generators (`x* = x`), e.g. ℝ[x, y].
    pub fn hermitian(names: &[&str]) -> Arc<Self> {
        Arc::new(PolyAlgebra {
            names: names.iter().map(|s| s.to_string()).collect(),
            involution: (0..names.len()).collect(),
        })
    }

    /// ℂ[z, z̄] with `z* = z̄`.
    pub fn complex_plane(z: &str, zbar: &str) -> Arc<Self> {
        Arc::new(PolyAlgebra {
            names: vec![z.to_string(), zbar.to_string()],
            involution: vec![1, 0],
        })
    }

    /// ℂ[N], the commutative subalgebra generated by the number operator.
    pub fn number_operator() -> Arc<Self> {
        static ALG: OnceLock<Arc<PolyAlgebra>> = OnceLock::new();
        ALG.get_or_init(|| PolyAlgebra::hermitian(&["N"])).clone()
    }

    /// ℂ[t], the charge-zero subalgebra of ℂ[z, z̄] with `t = z z̄`.
    pub fn charge_zero() -> Arc<Self> {
        static ALG: OnceLock<Arc<PolyAlgebra>> = OnceLock::new();
        ALG.get_or_init(|| PolyAlgebra::hermitian(&["t"])).clone()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn involution(&self) -> &[usize] {
        &self.involution
    }
}

/// Sparse polynomial: exponent vector to nonzero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    alg: Arc<PolyAlgebra>,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl Poly {
    pub fn zero(alg: &Arc<PolyAlgebra>) -> Self {
        Poly {
            alg: alg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(alg: &Arc<PolyAlgebra>, c: Scalar) -> Self {
        let mut p = Poly::zero(alg);
        p.add_term(vec![0; alg.nvars()], c);
        p
    }

    pub fn one(alg: &Arc<PolyAlgebra>) -> Self {
        Poly::constant(alg, Scalar::one())
    }

    /// The generator `name`.
    pub fn var(alg: &Arc<PolyAlgebra>, name: &str) -> Result<Self> {
        let i = alg.var_index(name)?;
        let mut e = vec![0; alg.nvars()];
        e[i] = 1;
        let mut p = Poly::zero(alg);
        p.add_term(e, Scalar::one());
        Ok(p)
    }

    pub fn from_terms(
        alg: &Arc<PolyAlgebra>,
        terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>,
    ) -> Result<Self> {
        let mut p = Poly::zero(alg);
        for (e, c) in terms {
            if e.len() != alg.nvars() {
                return Err(Error::Shape(format!(
                    "exponent vector of length {} in an algebra with {} generators",
                    e.len(),
                    alg.nvars()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Univariate polynomial from a [`UPoly`], in an algebra with one generator.
    pub fn from_upoly(alg: &Arc<PolyAlgebra>, u: &UPoly) -> Self {
        assert_eq!(alg.nvars(), 1, "univariate algebra expected");
        let mut p = Poly::zero(alg);
        for (i, c) in u.coeffs().iter().enumerate() {
            p.add_term(vec![i as u32], Scalar::from_rational(c.clone()));
        }
        p
    }

    /// Univariate polynomial from scalar coefficients, low degree first.
    pub fn from_coeffs(alg: &Arc<PolyAlgebra>, cs: &[Scalar]) -> Self {
        assert_eq!(alg.nvars(), 1, "univariate algebra expected");
        let mut p = Poly::zero(alg);
        for (i, c) in cs.iter().enumerate() {
            p.add_term(vec![i as u32], c.clone());
        }
        p
    }

    pub(crate) fn add_term(&mut self, e: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn algebra(&self) -> &Arc<PolyAlgebra> {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the monomial with exponent vector `e`.
    pub fn coeff(&self, e: &[u32]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn same_algebra(&self, other: &Poly) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) || *self.alg == *other.alg
    }

    fn check_same(&self, other: &Poly) {
        assert!(
            self.same_algebra(other),
            "polynomials from different algebras"
        );
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut p = Poly::zero(&self.alg);
        for (e, v) in &self.terms {
            p.add_term(e.clone(), v * c);
        }
        p
    }

    pub fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::one(&self.alg), |acc, _| &acc * self)
    }

    /// The involution: conjugate coefficients, substitute generators.
    pub fn star(&self) -> Poly {
        let inv = self.alg.involution();
        let mut p = Poly::zero(&self.alg);
        for (e, c) in &self.terms {
            let mut img = vec![0; e.len()];
            for (i, &k) in e.iter().enumerate() {
                img[inv[i]] += k;
            }
            p.add_term(img, c.conj());
        }
        p
    }

    pub fn is_hermitian(&self) -> bool {
        self.star() == *self
    }

    pub fn has_real_coefficients(&self) -> bool {
        self.terms.values().all(Scalar::is_real)
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.alg.nvars() {
            return Err(Error::Shape(format!(
                "point of dimension {} for {} generators",
                point.len(),
                self.alg.nvars()
            )));
        }
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                t = &t * &x.pow(k);
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Parity projection `½(f(x) + f(-x))` in the named variable: keeps the
    /// monomials of even degree in it.
    pub fn parity_projection(&self, var: &str) -> Result<Poly> {
        self.parity_projection_level(var, 1)
    }

    /// Iterated parity projection. Level `k` acts on polynomials in `x^(2^(k-1))`
    /// as `g(u) ↦ ½(g(u) + g(-u))` with `u = x^(2^(k-1))`, keeping the powers of
    /// `x` divisible by `2^k`. Errors if the input is not a polynomial in `u`.
    pub fn parity_projection_level(&self, var: &str, level: u32) -> Result<Poly> {
        let i = self.alg.var_index(var)?;
        let step = 1u32 << (level.max(1) - 1);
        let mut p = Poly::zero(&self.alg);
        for (e, c) in &self.terms {
            if e[i] % step != 0 {
                return Err(Error::AlgebraMismatch(format!(
                    "{self} is not a polynomial in {var}^{step}"
                )));
            }
            if e[i] % (2 * step) == 0 {
                p.add_term(e.clone(), c.clone());
            }
        }
        Ok(p)
    }

    /// Charge projection ℂ[z, z̄] → ℂ[t]: keeps `zᵐ z̄ᵐ`, rewritten as `tᵐ`.
    pub fn charge_projection(&self) -> Result<Poly> {
        if self.alg.nvars() != 2 || self.alg.involution() != [1, 0] {
            return Err(Error::AlgebraMismatch(
                "charge projection needs ℂ[z, z̄] with z* = z̄".into(),
            ));
        }
        let target = PolyAlgebra::charge_zero();
        let mut p = Poly::zero(&target);
        for (e, c) in &self.terms {
            if e[0] == e[1] {
                p.add_term(vec![e[0]], c.clone());
            }
        }
        Ok(p)
    }

    /// Dense rational view of a univariate polynomial with rational
    /// coefficients.
    pub fn to_upoly(&self) -> Result<UPoly> {
        if self.alg.nvars() != 1 {
            return Err(Error::AlgebraMismatch(format!(
                "univariate polynomial expected, algebra has {} generators",
                self.alg.nvars()
            )));
        }
        let deg = self.degree().unwrap_or(0) as usize;
        let mut cs = vec![Rational::zero(); deg + 1];
        for (e, c) in &self.terms {
            if !c.is_real() {
                return Err(Error::NotReal(c.to_string()));
            }
            let q = c
                .as_rational()
                .ok_or_else(|| Error::IrrationalCoefficients(self.to_string()))?;
            cs[e[0] as usize] = q.clone();
        }
        Ok(UPoly::new(cs))
    }
}

/// Domains on which univariate nonnegativity is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Reals,
    /// `[0, ∞)`
    HalfLine,
    /// `{0, 1, 2, ...}`
    Naturals,
}

/// Exact decision of `f ≥ 0` on `domain` for a univariate polynomial with
/// coefficients in ℚ(√2).
pub fn nonneg_on(f: &Poly, domain: Domain) -> Result<bool> {
    match f.to_upoly() {
        Ok(u) => Ok(upoly_nonneg_on(&u, domain)),
        Err(Error::IrrationalCoefficients(_)) => Ok(sqrt2_nonneg_on(f, domain)),
        Err(e) => Err(e),
    }
}

/// `f = g + √2 h`: the real roots of `f` are among those of `g² − 2h²`, so
/// one sample per gap between them decides the sign pattern.
fn sqrt2_nonneg_on(f: &Poly, domain: Domain) -> bool {
    let deg = f.degree().unwrap_or(0) as usize;
    let mut g = vec![Rational::zero(); deg + 1];
    let mut h = vec![Rational::zero(); deg + 1];
    for (e, c) in &f.terms {
        let (r, s, _, _) = c.coords();
        g[e[0] as usize] = r.clone();
        h[e[0] as usize] = s.clone();
    }
    let (g, h) = (UPoly::new(g), UPoly::new(h));
    let norm = &(&g * &g) - &(&(&h * &h) * &UPoly::constant(int(2)));
    let at = |t: &Rational| f.eval(&[Scalar::from_rational(t.clone())]).and_then(|v| v.sign()).unwrap_or(-1) >= 0;
    if domain == Domain::Naturals {
        return natural_candidates(&norm).into_iter().all(|k| at(&int(k as i64)));
    }
    let roots = isolate_real_roots(&norm);
    let norm_counter = RootCounter::new(&norm);
    let mut points = Vec::new();
    for (lo, hi) in &roots {
        let (mut lo, mut hi) = (lo.clone(), hi.clone());
        while norm.eval(&lo).is_zero() {
            let mid = (&lo + &hi) / int(2);
            if norm_counter.count_in(&lo, &mid) == 0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        points.push(lo);
    }
    points.push(roots.last().map_or_else(Rational::zero, |(_, hi)| hi + Rational::one()));
    if domain == Domain::HalfLine {
        points.retain(|t| t.is_positive());
        points.push(Rational::zero());
    }
    points.iter().all(at)
}

pub fn upoly_nonneg_on(u: &UPoly, domain: Domain) -> bool {
    if u.is_zero() {
        return true;
    }
    match domain {
        Domain::Reals | Domain::HalfLine => {
            if u.lead().is_negative() {
                return false;
            }
            let odd = u.odd_multiplicity_part();
            if odd.degree() == Some(0) {
                return true;
            }
            // sign changes only at odd-multiplicity roots and is positive at +∞
            let lo = match domain {
                Domain::Reals => ExtPoint::NegInf,
                _ => ExtPoint::At(Rational::zero()),
            };
            count_roots_between(&odd, &lo, &ExtPoint::PosInf) == 0
        }
        Domain::Naturals => first_negative_natural(u).is_none(),
    }
}

/// Smallest `k ∈ ℕ₀` with `f(k) < 0`, if any.
pub fn first_negative_natural(u: &UPoly) -> Option<u64> {
    natural_candidates(u)
        .into_iter()
        .find(|&k| u.eval(&int(k as i64)).is_negative())
}

/// Naturals that decide the sign pattern of any `f` whose real roots are
/// among those of `p`: `0` and the integers around each root. The sign of
/// `f` is constant between consecutive roots, and the first natural in each
/// such gap is in the list.
fn natural_candidates(p: &UPoly) -> Vec<u64> {
    let mut out = vec![0u64];
    if p.is_zero() {
        return out;
    }
    let counter = RootCounter::new(p);
    let half = Rational::new(1.into(), 2.into());
    for (lo, hi) in isolate_real_roots(p) {
        let (mut lo, mut hi) = (lo, hi);
        while &hi - &lo >= Rational::one() {
            let mid = (&lo + &hi) * &half;
            if counter.count_in(&lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        if hi.is_negative() {
            continue;
        }
        let from = lo.floor().to_integer().to_i64().unwrap_or(0).max(0) as u64;
        let to = hi.ceil().to_integer().to_u64().unwrap_or(u64::MAX - 1) + 1;
        out.extend(from..=to);
    }
    out.sort_unstable();
    out.dedup();
    out
}

impl<'a> std::ops::Add<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn add(self, o: &Poly) -> Poly {
        self.check_same(o);
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl<'a> std::ops::Sub<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn sub(self, o: &Poly) -> Poly {
        self.check_same(o);
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), -c);
        }
        p
    }
}

impl<'a> std::ops::Mul<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn mul(self, o: &Poly) -> Poly {
        self.check_same(o);
        let mut p = Poly::zero(&self.alg);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        self.scale(&-Scalar::one())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Prints highest total degree first, in the expression grammar.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let monos: Vec<(String, &Scalar)> = keys
            .into_iter()
            .map(|e| {
                let m: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| {
                        if k == 1 {
                            self.alg.names[i].clone()
                        } else {
                            format!("{}^{k}", self.alg.names[i])
                        }
                    })
                    .collect();
                (m.join("*"), &self.terms[e])
            })
            .collect();
        write_terms(f, &monos)
    }
}

/// Writes `Σ c·m` in the expression grammar; an empty monomial is the unit.
pub(crate) fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(String, &Scalar)]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (k, (mono, c)) in terms.iter().enumerate() {
        // a single real rational coefficient prints inline with its sign
        let (neg, body) = match c.as_rational() {
            Some(q) => {
                let mag = q.abs();
                let body = match (mono.is_empty(), mag.is_one()) {
                    (true, _) => mag.to_string(),
                    (false, true) => mono.clone(),
                    (false, false) => format!("{mag}*{mono}"),
                };
                (q.is_negative(), body)
            }
            None => {
                let body = if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{mono}")
                };
                (false, body)
            }
        };
        match (k, neg) {
            (0, true) => write!(f, "-{body}")?,
            (0, false) => write!(f, "{body}")?,
            (_, true) => write!(f, " - {body}")?,
            (_, false) => write!(f, " + {body}")?,
        }
    }
    Ok(())
}
