//! Number fields `ℚ[x]/(P)` with trace forms and their signatures.
//!
//! `P` must be monic and square-free. Irreducibility is not checked, so for a
//! reducible `P` the quotient is a product of fields and root counts refer to
//! distinct real roots of `P`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{inertia, signature_charpoly, Inertia, Matrix};
use crate::scalar::{Rational, Scalar};
use crate::upoly::{isolate_real_roots, sign_at_root, UPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    minpoly: UPoly,
}

impl NumberField {
    pub fn new(minpoly: UPoly) -> Result<Arc<Self>> {
        match minpoly.degree() {
            None | Some(0) => {
                return Err(Error::Precondition(
                    "defining polynomial must have degree ≥ 1".into(),
                ))
            }
            _ => {}
        }
        if !minpoly.lead().is_one() {
            return Err(Error::Precondition(format!("{minpoly} is not monic")));
        }
        if !minpoly.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        Ok(Arc::new(NumberField { minpoly }))
    }

    pub fn minpoly(&self) -> &UPoly {
        &self.minpoly
    }

    /// `s = [L : ℚ]`.
    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap_or(0)
    }
}

/// `Q(θ)` with `deg Q < s`.
#[derive(Clone, PartialEq, Eq)]
pub struct NFElement {
    field: Arc<NumberField>,
    poly: UPoly,
}

impl NFElement {
    pub fn new(field: &Arc<NumberField>, q: UPoly) -> Self {
        NFElement {
            poly: q.rem(&field.minpoly),
            field: field.clone(),
        }
    }

    pub fn from_rational(field: &Arc<NumberField>, q: Rational) -> Self {
        NFElement::new(field, UPoly::constant(q))
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> Self {
        NFElement::from_rational(field, Rational::from_integer(n.into()))
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        NFElement::from_int(field, 1)
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        NFElement::from_int(field, 0)
    }

    pub fn theta(field: &Arc<NumberField>) -> Self {
        NFElement::new(field, UPoly::x())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn poly(&self) -> &UPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.poly.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.poly.coeff(0)),
            _ => None,
        }
    }

    fn check_same(&self, o: &NFElement) {
        assert!(
            Arc::ptr_eq(&self.field, &o.field) || self.field == o.field,
            "elements of different number fields"
        );
    }

    pub fn scale(&self, q: &Rational) -> Self {
        NFElement::new(&self.field, self.poly.scale(q))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(NFElement::one(&self.field), |acc, _| &acc * self)
    }

    /// Inverse via the extended Euclidean algorithm; fails on zero divisors.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.field.minpoly.clone(), self.poly.clone());
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.degree() != Some(0) {
            return Err(Error::DivisionByZero);
        }
        let c = r0.coeff(0);
        Ok(NFElement::new(&self.field, t0.scale(&c.recip())))
    }

    /// `Q(g(θ))`.
    fn compose(&self, g: &NFElement) -> NFElement {
        let mut acc = NFElement::zero(&self.field);
        for c in self.poly.coeffs().iter().rev() {
            acc = &(&acc * g) + &NFElement::from_rational(&self.field, c.clone());
        }
        acc
    }

    /// `Q(ρ)` at an exact rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.poly.eval(x)
    }
}

impl<'a> std::ops::Add<&'a NFElement> for &'a NFElement {
    type Output = NFElement;

    fn add(self, o: &NFElement) -> NFElement {
        self.check_same(o);
        NFElement::new(&self.field, &self.poly + &o.poly)
    }
}

impl<'a> std::ops::Sub<&'a NFElement> for &'a NFElement {
    type Output = NFElement;

    fn sub(self, o: &NFElement) -> NFElement {
        self.check_same(o);
        NFElement::new(&self.field, &self.poly - &o.poly)
    }
}

impl<'a> std::ops::Mul<&'a NFElement> for &'a NFElement {
    type Output = NFElement;

    fn mul(self, o: &NFElement) -> NFElement {
        self.check_same(o);
        NFElement::new(&self.field, &self.poly * &o.poly)
    }
}

impl std::ops::Neg for &NFElement {
    type Output = NFElement;

    fn neg(self) -> NFElement {
        NFElement::new(&self.field, -&self.poly)
    }
}

impl fmt::Debug for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NFElement({self})")
    }
}

impl fmt::Display for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::upoly::write_univariate(f, self.poly.coeffs(), "theta")
    }
}

/// Normalized trace `(1/s) tr(m_α)` of the multiplication map.
pub fn ntrace(alpha: &NFElement) -> Rational {
    let s = alpha.field.degree();
    let theta = NFElement::theta(&alpha.field);
    let mut basis = NFElement::one(&alpha.field);
    let mut tr = Rational::zero();
    for i in 0..s {
        tr += (alpha * &basis).poly.coeff(i);
        basis = &basis * &theta;
    }
    tr / Rational::from_integer((s as i64).into())
}

/// The Hermite form `M_ij = ntrace(Q θ^{i+j})`, `0 ≤ i, j < s`.
pub fn hermite_form(q: &NFElement) -> Result<Matrix> {
    if q.is_zero() {
        return Err(Error::Precondition("Q vanishes in the field".into()));
    }
    let s = q.field.degree();
    let theta = NFElement::theta(&q.field);
    let mut traces = Vec::with_capacity(2 * s);
    let mut cur = q.clone();
    for _ in 0..2 * s - 1 {
        traces.push(ntrace(&cur));
        cur = &cur * &theta;
    }
    let mut m = Matrix::zeros(s, s);
    for i in 0..s {
        for j in 0..s {
            m[(i, j)] = Scalar::from_rational(traces[i + j].clone());
        }
    }
    Ok(m)
}

/// Inertia of a symmetric matrix by characteristic-polynomial sign
/// variations, confirmed against congruence diagonalization.
pub fn signature(m: &Matrix) -> Result<Inertia> {
    if !m.is_hermitian() {
        return Err(Error::NotHermitian("matrix is not symmetric".into()));
    }
    let by_charpoly = signature_charpoly(m)?;
    let by_ldl = inertia(m)?;
    if by_charpoly != by_ldl {
        return Err(Error::CheckFailed(format!(
            "signature disagreement: charpoly {by_charpoly}, LDL {by_ldl}"
        )));
    }
    Ok(by_charpoly)
}

/// Number of real roots of `P`: the signature of `Hom(P, 1)`.
pub fn real_root_count(field: &Arc<NumberField>) -> Result<usize> {
    let h = hermite_form(&NFElement::one(field))?;
    let sig = signature(&h)?.signature();
    Ok(sig as usize)
}

/// The ordering of ℚ induces to `L` exactly when `r = s`.
pub fn is_inducible(field: &Arc<NumberField>) -> Result<bool> {
    Ok(real_root_count(field)? == field.degree())
}

pub fn totally_real(field: &Arc<NumberField>) -> Result<bool> {
    is_inducible(field)
}

/// Membership in the induced ordering: `Hom(P, Q)` positive definite.
pub fn in_induced_ordering(q: &NFElement) -> Result<bool> {
    if !is_inducible(&q.field)? {
        return Err(Error::Precondition(format!(
            "{} is not totally real",
            q.field.minpoly
        )));
    }
    let inertia = signature(&hermite_form(q)?)?;
    Ok(inertia.pos == q.field.degree())
}

/// Exact signs of `Q` at the real roots of `P`, in increasing root order.
pub fn signs_at_real_roots(q: &NFElement) -> Vec<i8> {
    let p = q.field.minpoly();
    isolate_real_roots(p)
        .into_iter()
        .map(|(lo, hi)| sign_at_root(p, q.poly(), &lo, &hi))
        .collect()
}

/// A field endomorphism `θ ↦ g(θ)` of finite order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldAutomorphism {
    image: NFElement,
    order: usize,
}

impl FieldAutomorphism {
    /// Validates `P(g(θ)) = 0` and finds the order by iteration (at most `s`).
    pub fn new(image: NFElement) -> Result<Self> {
        let field = image.field.clone();
        let pg = NFElement::new(&field, field.minpoly.clone());
        if !pg.compose(&image).is_zero() {
            return Err(Error::NotAutomorphism(format!(
                "P(g(θ)) ≠ 0 for g = {image}"
            )));
        }
        let theta = NFElement::theta(&field);
        let mut cur = image.clone();
        for k in 1..=field.degree() {
            if cur == theta {
                return Ok(FieldAutomorphism { image, order: k });
            }
            cur = cur.compose(&image);
        }
        Err(Error::NotAutomorphism(format!(
            "θ ↦ {image} has no finite order ≤ {}",
            field.degree()
        )))
    }

    pub fn identity(field: &Arc<NumberField>) -> Self {
        FieldAutomorphism {
            image: NFElement::theta(field),
            order: 1,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn image(&self) -> &NFElement {
        &self.image
    }

    pub fn apply(&self, alpha: &NFElement) -> NFElement {
        alpha.compose(&self.image)
    }

    /// `σ^k`, with negative `k` read modulo the order.
    pub fn apply_pow(&self, alpha: &NFElement, k: i64) -> NFElement {
        let k = k.rem_euclid(self.order as i64);
        (0..k).fold(alpha.clone(), |acc, _| self.apply(&acc))
    }
}

/// `(1/|G|) Σ_{g ∈ ⟨σ⟩} g(α)`.
pub fn galois_average(alpha: &NFElement, sigma: &FieldAutomorphism) -> NFElement {
    let mut acc = NFElement::zero(&alpha.field);
    let mut cur = alpha.clone();
    for _ in 0..sigma.order {
        acc = &acc + &cur;
        cur = sigma.apply(&cur);
    }
    acc.scale(&Rational::from_integer((sigma.order as i64).into()).recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn field(cs: &[i64]) -> Arc<NumberField> {
        NumberField::new(UPoly::from_ints(cs)).unwrap()
    }

    #[test]
    fn ntrace_examples() {
        let k = field(&[-2, 0, 1]);
        let t = NFElement::theta(&k);
        assert_eq!(ntrace(&NFElement::one(&k)), int(1));
        assert_eq!(ntrace(&t), int(0));
        assert_eq!(ntrace(&(&t + &NFElement::one(&k))), int(1));
    }

    #[test]
    fn hermite_examples() {
        let k = field(&[-2, 0, 1]);
        assert_eq!(
            hermite_form(&NFElement::one(&k)).unwrap(),
            Matrix::from_ints(&[&[1, 0], &[0, 2]]).unwrap()
        );
        let g = field(&[1, 0, 1]);
        assert_eq!(
            hermite_form(&NFElement::one(&g)).unwrap(),
            Matrix::from_ints(&[&[1, 0], &[0, -1]]).unwrap()
        );
        assert!(hermite_form(&NFElement::zero(&k)).is_err());
    }

    #[test]
    fn root_counts() {
        assert_eq!(real_root_count(&field(&[-2, 0, 1])).unwrap(), 2);
        assert_eq!(real_root_count(&field(&[1, 0, 1])).unwrap(), 0);
        let k = field(&[1, 0, -10, 0, 1]);
        assert_eq!(real_root_count(&k).unwrap(), 4);
        assert!(totally_real(&k).unwrap());
        assert!(!is_inducible(&field(&[1, 0, 1])).unwrap());
        assert!(NumberField::new(UPoly::from_ints(&[1, 2, 1])).is_err());
        assert!(NumberField::new(UPoly::from_ints(&[1, 2])).is_err());
    }

    #[test]
    fn induced_ordering_examples() {
        let k = field(&[-2, 0, 1]);
        let t = NFElement::theta(&k);
        let three = NFElement::from_int(&k, 3);
        assert!(!in_induced_ordering(&t).unwrap());
        assert!(in_induced_ordering(&(&three - &t)).unwrap());
        assert!(in_induced_ordering(&NFElement::one(&k)).unwrap());
        assert_eq!(signs_at_real_roots(&t), vec![-1, 1]);
        assert!(in_induced_ordering(&NFElement::one(&field(&[1, 0, 1]))).is_err());
    }

    #[test]
    fn galois_examples() {
        let k = field(&[-2, 0, 1]);
        let t = NFElement::theta(&k);
        let sigma = FieldAutomorphism::new(-&t).unwrap();
        assert_eq!(sigma.order(), 2);
        assert!(galois_average(&t, &sigma).is_zero());
        let one_t = &t + &NFElement::one(&k);
        assert_eq!(galois_average(&one_t, &sigma), NFElement::one(&k));
        let id = FieldAutomorphism::identity(&k);
        assert_eq!(galois_average(&one_t, &id), one_t);
        assert!(FieldAutomorphism::new(&t + &NFElement::one(&k)).is_err());
    }

    #[test]
    fn inverse() {
        let k = field(&[1, 0, -10, 0, 1]);
        let t = NFElement::theta(&k);
        let x = &t.pow(3) + &NFElement::from_int(&k, 2);
        assert_eq!(&x * &x.inv().unwrap(), NFElement::one(&k));
    }
}
