//! Cyclic algebras `(L/ℚ, σ, a) = L ⊕ eL ⊕ … ⊕ e^{n−1}L` with `e^n = a` and
//! `l e = e σ(l)`.
//!
//! The involution is the identity on `L` and `e* = c e^{n−1}` for a chosen
//! unit `c`. Whether a given `(c, a, σ)` really defines an involution is
//! checked on construction.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numfield::{
    ntrace, signs_at_real_roots, totally_real, FieldAutomorphism, NFElement, NumberField,
};
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicAlgebra {
    field: Arc<NumberField>,
    sigma: FieldAutomorphism,
    n: usize,
    a: Rational,
    star_unit: NFElement,
}

/// `Σ_k e^k l_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct CyclicElement {
    alg: Arc<CyclicAlgebra>,
    comps: Vec<NFElement>,
}

impl CyclicAlgebra {
    /// Builds the algebra and validates the involution axioms on the basis
    /// `e^j θ^i`.
    pub fn new(
        sigma: FieldAutomorphism,
        n: usize,
        a: Rational,
        star_unit: NFElement,
    ) -> Result<Arc<Self>> {
        let field = sigma.image().field().clone();
        if n < 2 || sigma.order() != n {
            return Err(Error::Precondition(format!(
                "σ has order {}, expected exactly n = {n}",
                sigma.order()
            )));
        }
        if a.is_zero() {
            return Err(Error::Precondition("a must be nonzero".into()));
        }
        if star_unit.is_zero() {
            return Err(Error::Precondition("star unit must be nonzero".into()));
        }
        let alg = Arc::new(CyclicAlgebra {
            field,
            sigma,
            n,
            a,
            star_unit,
        });
        alg.validate_involution()?;
        for k in 0..n {
            let lam = alg.lambda_element(k);
            if lam.comps[1..].iter().any(|c| !c.is_zero()) {
                return Err(Error::InvalidInvolution {
                    axiom: "λ_k ∈ L".into(),
                    detail: format!("e*^{k} e^{k} = {lam}"),
                });
            }
        }
        Ok(alg)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn sigma(&self) -> &FieldAutomorphism {
        &self.sigma
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn star_unit(&self) -> &NFElement {
        &self.star_unit
    }

    /// `θ^i e^j` for `0 ≤ i < deg`, `0 ≤ j < n`.
    pub fn basis(self: &Arc<Self>) -> Vec<CyclicElement> {
        let s = self.field.degree();
        let theta = NFElement::theta(&self.field);
        let mut out = Vec::new();
        for j in 0..self.n {
            for i in 0..s {
                out.push(CyclicElement::e_power(self, j, theta.pow(i as u32)));
            }
        }
        out
    }

    fn validate_involution(self: &Arc<Self>) -> Result<()> {
        let basis = self.basis();
        for x in &basis {
            if x.star().star() != *x {
                return Err(Error::InvalidInvolution {
                    axiom: "x** = x".into(),
                    detail: format!("fails for x = {x}"),
                });
            }
        }
        for x in &basis {
            for y in &basis {
                if (x * y).star() != &y.star() * &x.star() {
                    return Err(Error::InvalidInvolution {
                        axiom: "(xy)* = y*x*".into(),
                        detail: format!("fails for x = {x}, y = {y}"),
                    });
                }
            }
        }
        Ok(())
    }

    fn lambda_element(self: &Arc<Self>, k: usize) -> CyclicElement {
        let e = CyclicElement::e(self);
        let ek = e.pow(k as u32);
        &ek.star() * &ek
    }

    /// `λ_k = e*^k e^k ∈ L`.
    pub fn lambda(self: &Arc<Self>, k: usize) -> NFElement {
        self.lambda_element(k).comps[0].clone()
    }

    pub fn lambdas(self: &Arc<Self>) -> Vec<NFElement> {
        (0..self.n).map(|k| self.lambda(k)).collect()
    }

    /// For each real embedding of `L` (in increasing root order): does its
    /// ordering make every `λ_k` nonnegative?
    pub fn star_orderings(self: &Arc<Self>) -> Result<Vec<bool>> {
        if !totally_real(&self.field)? {
            return Err(Error::Precondition(format!(
                "{} is not totally real",
                self.field.minpoly()
            )));
        }
        let lambdas = self.lambdas();
        let signs: Vec<Vec<i8>> = lambdas.iter().map(signs_at_real_roots).collect();
        let embeddings = self.field.degree();
        Ok((0..embeddings)
            .map(|r| signs.iter().all(|s| s[r] >= 0))
            .collect())
    }

    pub fn star_ordering_exists(self: &Arc<Self>) -> Result<bool> {
        Ok(self.star_orderings()?.into_iter().any(|b| b))
    }
}

impl CyclicElement {
    pub fn zero(alg: &Arc<CyclicAlgebra>) -> Self {
        CyclicElement {
            alg: alg.clone(),
            comps: vec![NFElement::zero(&alg.field); alg.n],
        }
    }

    pub fn from_components(alg: &Arc<CyclicAlgebra>, comps: Vec<NFElement>) -> Result<Self> {
        if comps.len() != alg.n {
            return Err(Error::Shape(format!(
                "{} components for n = {}",
                comps.len(),
                alg.n
            )));
        }
        Ok(CyclicElement {
            alg: alg.clone(),
            comps,
        })
    }

    /// `l ∈ L` as `e^0 l`.
    pub fn scalar(alg: &Arc<CyclicAlgebra>, l: NFElement) -> Self {
        CyclicElement::e_power(alg, 0, l)
    }

    pub fn one(alg: &Arc<CyclicAlgebra>) -> Self {
        CyclicElement::scalar(alg, NFElement::one(&alg.field))
    }

    pub fn e(alg: &Arc<CyclicAlgebra>) -> Self {
        CyclicElement::e_power(alg, 1, NFElement::one(&alg.field))
    }

    /// `e^j l` for `j < n`.
    pub fn e_power(alg: &Arc<CyclicAlgebra>, j: usize, l: NFElement) -> Self {
        let mut x = CyclicElement::zero(alg);
        x.comps[j] = l;
        x
    }

    pub fn algebra(&self) -> &Arc<CyclicAlgebra> {
        &self.alg
    }

    pub fn components(&self) -> &[NFElement] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(NFElement::is_zero)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CyclicElement {
            alg: self.alg.clone(),
            comps: self.comps.iter().map(|c| c.scale(q)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(CyclicElement::one(&self.alg), |acc, _| &acc * self)
    }

    fn check_same(&self, o: &CyclicElement) {
        assert!(
            Arc::ptr_eq(&self.alg, &o.alg) || self.alg == o.alg,
            "elements of different cyclic algebras"
        );
    }

    /// `(Σ e^k l_k)* = Σ l_k (e*)^k`, with `e* = c e^{n−1} = e^{n−1} σ^{n−1}(c)`.
    pub fn star(&self) -> Self {
        let alg = &self.alg;
        let n = alg.n;
        let c = alg.sigma.apply_pow(&alg.star_unit, n as i64 - 1);
        let estar = CyclicElement::e_power(alg, n - 1, c);
        let mut acc = CyclicElement::zero(alg);
        let mut pw = CyclicElement::one(alg);
        for l in &self.comps {
            acc = &acc + &(&CyclicElement::scalar(alg, l.clone()) * &pw);
            pw = &pw * &estar;
        }
        acc
    }

    pub fn is_hermitian(&self) -> bool {
        self.star() == *self
    }

    /// `p_{𝔄/L}(x) = l_0`.
    pub fn p_al(&self) -> NFElement {
        self.comps[0].clone()
    }

    /// `tr_{𝔄/ℚ} = ntrace ∘ p_{𝔄/L}`.
    pub fn tr_ak(&self) -> Rational {
        ntrace(&self.p_al())
    }

    /// The matrix image `ε(x) = Σ_k ε(e)^k ε(l_k)`.
    pub fn epsilon(&self) -> LMatrix {
        let alg = &self.alg;
        let eps_e = epsilon_e(alg);
        let mut acc = LMatrix::zero(&alg.field, alg.n);
        let mut pw = LMatrix::identity(&alg.field, alg.n);
        for l in &self.comps {
            acc = &acc + &(&pw * &epsilon_l(alg, l));
            pw = &pw * &eps_e;
        }
        acc
    }
}

impl<'a> std::ops::Add<&'a CyclicElement> for &'a CyclicElement {
    type Output = CyclicElement;

    fn add(self, o: &CyclicElement) -> CyclicElement {
        self.check_same(o);
        CyclicElement {
            alg: self.alg.clone(),
            comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> std::ops::Sub<&'a CyclicElement> for &'a CyclicElement {
    type Output = CyclicElement;

    fn sub(self, o: &CyclicElement) -> CyclicElement {
        self.check_same(o);
        CyclicElement {
            alg: self.alg.clone(),
            comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a - b).collect(),
        }
    }
}

/// `(e^j l)(e^k m) = e^{j+k} σ^k(l) m`, folding `e^n = a`.
impl<'a> std::ops::Mul<&'a CyclicElement> for &'a CyclicElement {
    type Output = CyclicElement;

    fn mul(self, o: &CyclicElement) -> CyclicElement {
        self.check_same(o);
        let alg = &self.alg;
        let n = alg.n;
        let mut out = CyclicElement::zero(alg);
        for (j, l) in self.comps.iter().enumerate() {
            if l.is_zero() {
                continue;
            }
            for (k, m) in o.comps.iter().enumerate() {
                if m.is_zero() {
                    continue;
                }
                let mut t = &alg.sigma.apply_pow(l, k as i64) * m;
                if j + k >= n {
                    t = t.scale(&alg.a);
                }
                let slot = (j + k) % n;
                out.comps[slot] = &out.comps[slot] + &t;
            }
        }
        out
    }
}

impl fmt::Debug for CyclicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicElement({self})")
    }
}

impl fmt::Display for CyclicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .comps
            .iter()
            .enumerate()
            .filter(|(_, l)| !l.is_zero())
            .map(|(k, l)| match k {
                0 => format!("({l})"),
                1 => format!("e*({l})"),
                _ => format!("e^{k}*({l})"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Square matrices over `L`.
#[derive(Clone, PartialEq, Eq)]
pub struct LMatrix {
    n: usize,
    entries: Vec<NFElement>,
}

impl LMatrix {
    pub fn zero(field: &Arc<NumberField>, n: usize) -> Self {
        LMatrix {
            n,
            entries: vec![NFElement::zero(field); n * n],
        }
    }

    pub fn identity(field: &Arc<NumberField>, n: usize) -> Self {
        let mut m = LMatrix::zero(field, n);
        for i in 0..n {
            m.set(i, i, NFElement::one(field));
        }
        m
    }

    /// `E_{mk} ⊗ l` (0-based indices).
    pub fn unit(field: &Arc<NumberField>, n: usize, m: usize, k: usize, l: NFElement) -> Self {
        let mut out = LMatrix::zero(field, n);
        out.set(m, k, l);
        out
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &NFElement {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: NFElement) {
        self.entries[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(NFElement::is_zero)
    }
}

impl<'a> std::ops::Add<&'a LMatrix> for &'a LMatrix {
    type Output = LMatrix;

    fn add(self, o: &LMatrix) -> LMatrix {
        LMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> std::ops::Mul<&'a LMatrix> for &'a LMatrix {
    type Output = LMatrix;

    fn mul(self, o: &LMatrix) -> LMatrix {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                let mut acc = NFElement::zero(self.get(0, 0).field());
                for k in 0..n {
                    acc = &acc + &(self.get(i, k) * o.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }
}

impl fmt::Debug for LMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let r: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "LMatrix[{}]", rows.join(", "))
    }
}

/// `ε(l) = diag(l, σ(l), …, σ^{n−1}(l))`.
pub fn epsilon_l(alg: &Arc<CyclicAlgebra>, l: &NFElement) -> LMatrix {
    let mut m = LMatrix::zero(&alg.field, alg.n);
    for i in 0..alg.n {
        m.set(i, i, alg.sigma.apply_pow(l, i as i64));
    }
    m
}

/// `ε(e) = a E_{1,n} + Σ_i E_{i+1,i}`.
pub fn epsilon_e(alg: &Arc<CyclicAlgebra>) -> LMatrix {
    let n = alg.n;
    let mut m = LMatrix::zero(&alg.field, n);
    for i in 0..n - 1 {
        m.set(i + 1, i, NFElement::one(&alg.field));
    }
    let corner = &m.get(0, n - 1).clone() + &NFElement::from_rational(&alg.field, alg.a.clone());
    m.set(0, n - 1, corner);
    m
}

/// `𝔓(E_mk ⊗ l) = (1/n) e^{m−k} σ^{1−k}(l)` (1-based), with
/// `e^{−j} = e^{n−j}/a`.
pub fn frak_p(alg: &Arc<CyclicAlgebra>, m: &LMatrix) -> Result<CyclicElement> {
    let n = alg.n;
    if m.size() != n {
        return Err(Error::Shape(format!("{}x{} matrix for n = {n}", m.size(), m.size())));
    }
    let inv_n = Rational::from_integer((n as i64).into()).recip();
    let inv_a = alg.a.recip();
    let mut out = CyclicElement::zero(alg);
    for row in 0..n {
        for col in 0..n {
            let l = m.get(row, col);
            if l.is_zero() {
                continue;
            }
            let d = row as i64 - col as i64;
            // 0-based col k0 = k − 1, so σ^{1−k} = σ^{−k0}
            let mut t = alg.sigma.apply_pow(l, -(col as i64)).scale(&inv_n);
            if d < 0 {
                t = t.scale(&inv_a);
            }
            let slot = d.rem_euclid(n as i64) as usize;
            out.comps[slot] = &out.comps[slot] + &t;
        }
    }
    Ok(out)
}

/// `X^τ = B⁻¹ Xᵀ B` with `B = diag(λ_0, …, λ_{n−1})`.
pub fn tau(alg: &Arc<CyclicAlgebra>, x: &LMatrix) -> Result<LMatrix> {
    let lambdas = alg.lambdas();
    let inv: Vec<NFElement> = lambdas.iter().map(NFElement::inv).collect::<Result<_>>()?;
    let t = x.transpose();
    let mut out = t.clone();
    for i in 0..alg.n {
        for j in 0..alg.n {
            out.set(i, j, &(&inv[i] * t.get(i, j)) * &lambdas[j]);
        }
    }
    Ok(out)
}

/// Checks the `n`th power relation on the matrix side: `ε(e)^n = a·Id`.
pub fn epsilon_e_power_is_scalar(alg: &Arc<CyclicAlgebra>) -> bool {
    let e = epsilon_e(alg);
    let pw = (0..alg.n).fold(LMatrix::identity(&alg.field, alg.n), |acc, _| &acc * &e);
    let mut target = LMatrix::identity(&alg.field, alg.n);
    for i in 0..alg.n {
        target.set(i, i, NFElement::from_rational(&alg.field, alg.a.clone()));
    }
    pw == target
}

/// The quaternion-type algebra `(ℚ(√2)/ℚ, θ ↦ −θ, a)` with `e* = c e`.
pub fn quaternion_sqrt2(a: i64, c: i64) -> Result<Arc<CyclicAlgebra>> {
    let field = NumberField::new(crate::upoly::UPoly::from_ints(&[-2, 0, 1]))?;
    let theta = NFElement::theta(&field);
    let sigma = FieldAutomorphism::new(-&theta)?;
    CyclicAlgebra::new(
        sigma,
        2,
        Rational::from_integer(a.into()),
        NFElement::from_int(&field, c),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn relations() {
        let alg = quaternion_sqrt2(-1, -1).unwrap();
        let e = CyclicElement::e(&alg);
        assert_eq!(&e * &e, CyclicElement::one(&alg).scale(&int(-1)));
        let t = NFElement::theta(alg.field());
        let tl = CyclicElement::scalar(&alg, t.clone());
        assert_eq!(&tl * &e, CyclicElement::e_power(&alg, 1, -&t));
        let one = CyclicElement::one(&alg);
        assert_eq!(&one * &tl, tl);
    }

    #[test]
    fn lambdas_and_orderings() {
        let good = quaternion_sqrt2(-1, -1).unwrap();
        assert_eq!(good.lambda(1), NFElement::from_int(good.field(), 1));
        assert!(good.star_ordering_exists().unwrap());
        let bad = quaternion_sqrt2(-1, 1).unwrap();
        assert_eq!(bad.lambda(1), NFElement::from_int(bad.field(), -1));
        assert!(!bad.star_ordering_exists().unwrap());
        let split = quaternion_sqrt2(1, 1).unwrap();
        assert!(split.star_ordering_exists().unwrap());
    }

    #[test]
    fn invalid_involution_rejected() {
        // e* = 2e gives e** = 4e
        let err = quaternion_sqrt2(-1, 2).unwrap_err();
        assert!(matches!(err, Error::InvalidInvolution { .. }));
    }

    #[test]
    fn epsilon_and_projection() {
        let alg = quaternion_sqrt2(-1, -1).unwrap();
        let f = alg.field().clone();
        assert!(epsilon_e_power_is_scalar(&alg));
        assert_eq!(CyclicElement::one(&alg).epsilon(), LMatrix::identity(&f, 2));
        for x in alg.basis() {
            assert_eq!(frak_p(&alg, &x.epsilon()).unwrap(), x);
            assert_eq!(x.star().epsilon(), tau(&alg, &x.epsilon()).unwrap());
        }
        let l = &NFElement::theta(&f) + &NFElement::from_int(&f, 3);
        assert_eq!(
            frak_p(&alg, &LMatrix::unit(&f, 2, 0, 0, l.clone())).unwrap(),
            CyclicElement::scalar(&alg, l.scale(&crate::scalar::rat(1, 2)))
        );
        assert!(frak_p(&alg, &LMatrix::zero(&f, 2)).unwrap().is_zero());
    }

    #[test]
    fn traces() {
        let alg = quaternion_sqrt2(-1, -1).unwrap();
        let f = alg.field().clone();
        assert_eq!(CyclicElement::one(&alg).tr_ak(), int(1));
        let el = CyclicElement::e_power(&alg, 1, NFElement::theta(&f));
        assert!(el.p_al().is_zero());
    }
}
