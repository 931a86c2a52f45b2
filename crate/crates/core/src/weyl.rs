//! The Weyl algebra `ℂ⟨a, a* | a a* − a* a = 1⟩`.
//!
//! Elements are stored in normal order `Σ c_mn (a*)^m a^n`. Two further
//! presentations are available as views: `X = (a + a*)/√2`, `Y = (a − a*)/√2`
//! with `Y X − X Y = 1` (canonical order `X^m Y^n`), and `q = X`, `p = −iY`
//! with `p q − q p = −i` (canonical order `q^m p^n`).

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyalg::{write_terms, Poly, PolyAlgebra};
use crate::scalar::{Rational, Scalar};
use crate::upoly::{falling_factorial, rising_product, UPoly};

type Terms = BTreeMap<(u32, u32), Scalar>;

fn add_term(t: &mut Terms, key: (u32, u32), c: Scalar) {
    if c.is_zero() {
        return;
    }
    match t.entry(key) {
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

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, j| acc * BigInt::from(n - j) / BigInt::from(j + 1))
}

/// Product of normal-ordered words `L^m R^n` with `R L = L R + 1`:
/// `R^{n1} L^{m2} = Σ_k k! C(n1,k) C(m2,k) L^{m2-k} R^{n1-k}`.
fn normal_product(x: &Terms, y: &Terms) -> Terms {
    let mut out = Terms::new();
    for (&(m1, n1), c1) in x {
        for (&(m2, n2), c2) in y {
            let c = c1 * c2;
            let mut kfact = BigInt::one();
            for k in 0..=n1.min(m2) {
                if k > 0 {
                    kfact *= BigInt::from(k);
                }
                let w = &kfact * binomial(n1, k) * binomial(m2, k);
                add_term(&mut out, (m1 + m2 - k, n1 + n2 - k), c.scale_int(&w));
            }
        }
    }
    out
}

fn scale_terms(t: &Terms, c: &Scalar) -> Terms {
    let mut out = Terms::new();
    for (&k, v) in t {
        add_term(&mut out, k, v * c);
    }
    out
}

fn sum_terms(x: &Terms, y: &Terms, sign: &Scalar) -> Terms {
    let mut out = x.clone();
    for (&k, v) in y {
        add_term(&mut out, k, v * sign);
    }
    out
}

fn power_table(base: &Terms, n: u32) -> Vec<Terms> {
    let mut pows = vec![Terms::from([((0, 0), Scalar::one())])];
    for k in 1..=n as usize {
        let next = normal_product(&pows[k - 1], base);
        pows.push(next);
    }
    pows
}

fn max_exponents(t: &Terms) -> (u32, u32) {
    t.keys()
        .fold((0, 0), |(a, b), &(m, n)| (a.max(m), b.max(n)))
}

/// Rewrites a normal-ordered element `Σ c L^m R^n` by substituting images
/// for `L` and `R` and multiplying out.
fn substitute(t: &Terms, l: &Terms, r: &Terms) -> Terms {
    let (mm, nm) = max_exponents(t);
    let lp = power_table(l, mm);
    let rp = power_table(r, nm);
    let mut out = Terms::new();
    for (&(m, n), c) in t {
        let prod = normal_product(&lp[m as usize], &rp[n as usize]);
        for (k, v) in prod {
            add_term(&mut out, k, &v * c);
        }
    }
    out
}

macro_rules! normal_ordered_ops {
    ($ty:ident) => {
        impl<'a> std::ops::Add<&'a $ty> for &'a $ty {
            type Output = $ty;

            fn add(self, o: &$ty) -> $ty {
                $ty {
                    terms: sum_terms(&self.terms, &o.terms, &Scalar::one()),
                }
            }
        }

        impl<'a> std::ops::Sub<&'a $ty> for &'a $ty {
            type Output = $ty;

            fn sub(self, o: &$ty) -> $ty {
                $ty {
                    terms: sum_terms(&self.terms, &o.terms, &-Scalar::one()),
                }
            }
        }

        impl<'a> std::ops::Mul<&'a $ty> for &'a $ty {
            type Output = $ty;

            fn mul(self, o: &$ty) -> $ty {
                $ty {
                    terms: normal_product(&self.terms, &o.terms),
                }
            }
        }

        impl std::ops::Neg for &$ty {
            type Output = $ty;

            fn neg(self) -> $ty {
                self.scale(&-Scalar::one())
            }
        }

        impl std::ops::Add for $ty {
            type Output = $ty;

            fn add(self, o: $ty) -> $ty {
                &self + &o
            }
        }

        impl std::ops::Sub for $ty {
            type Output = $ty;

            fn sub(self, o: $ty) -> $ty {
                &self - &o
            }
        }

        impl std::ops::Mul for $ty {
            type Output = $ty;

            fn mul(self, o: $ty) -> $ty {
                &self * &o
            }
        }

        impl std::ops::Neg for $ty {
            type Output = $ty;

            fn neg(self) -> $ty {
                -&self
            }
        }

        impl $ty {
            pub fn zero() -> Self {
                $ty {
                    terms: Terms::new(),
                }
            }

            pub fn one() -> Self {
                $ty::constant(Scalar::one())
            }

            pub fn constant(c: Scalar) -> Self {
                $ty::monomial(0, 0, c)
            }

            /// The single term `c · L^m R^n`.
            pub fn monomial(m: u32, n: u32, c: Scalar) -> Self {
                let mut terms = Terms::new();
                add_term(&mut terms, (m, n), c);
                $ty { terms }
            }

            pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32), Scalar)>) -> Self {
                let mut terms = Terms::new();
                for (k, c) in it {
                    add_term(&mut terms, k, c);
                }
                $ty { terms }
            }

            pub fn terms(&self) -> &BTreeMap<(u32, u32), Scalar> {
                &self.terms
            }

            pub fn coeff(&self, m: u32, n: u32) -> Scalar {
                self.terms.get(&(m, n)).cloned().unwrap_or_default()
            }

            pub fn is_zero(&self) -> bool {
                self.terms.is_empty()
            }

            /// Total degree; `None` for zero.
            pub fn degree(&self) -> Option<u32> {
                self.terms.keys().map(|&(m, n)| m + n).max()
            }

            pub fn scale(&self, c: &Scalar) -> Self {
                $ty {
                    terms: scale_terms(&self.terms, c),
                }
            }

            pub fn pow(&self, k: u32) -> Self {
                (0..k).fold($ty::one(), |acc, _| &acc * self)
            }

            pub fn is_hermitian(&self) -> bool {
                self.star() == *self
            }

            pub fn has_rational_coefficients(&self) -> bool {
                self.terms.values().all(|c| c.as_rational().is_some())
            }
        }
    };
}

/// A Weyl algebra element in normal order `Σ c_mn (a*)^m a^n`, keyed `(m, n)`.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct WeylElement {
    terms: Terms,
}

/// The same algebra in the canonical basis `X^m Y^n`, keyed `(m, n)`.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct XyForm {
    terms: Terms,
}

/// The canonical basis `q^m p^n`, keyed `(p-exponent, q-exponent)`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct PqForm {
    terms: Terms,
}

normal_ordered_ops!(WeylElement);
normal_ordered_ops!(XyForm);

impl WeylElement {
    pub fn a() -> Self {
        WeylElement::monomial(0, 1, Scalar::one())
    }

    pub fn ast() -> Self {
        WeylElement::monomial(1, 0, Scalar::one())
    }

    /// The number operator `N = a* a`.
    pub fn number() -> Self {
        WeylElement::monomial(1, 1, Scalar::one())
    }

    /// `X = (a + a*)/√2`.
    pub fn x() -> Self {
        XyForm::x().to_weyl()
    }

    /// `Y = (a − a*)/√2`.
    pub fn y() -> Self {
        XyForm::y().to_weyl()
    }

    /// `e_k = a^k` for `k ≥ 0` and `(a*)^{-k}` for `k < 0`.
    pub fn e(k: i64) -> Self {
        if k >= 0 {
            WeylElement::monomial(0, k as u32, Scalar::one())
        } else {
            WeylElement::monomial((-k) as u32, 0, Scalar::one())
        }
    }

    /// `(a*^m a^n)* = a*^n a^m`: already normal ordered.
    pub fn star(&self) -> Self {
        WeylElement::from_terms(self.terms.iter().map(|(&(m, n), c)| ((n, m), c.conj())))
    }

    pub fn commutator(&self, o: &WeylElement) -> WeylElement {
        &(self * o) - &(o * self)
    }

    pub fn to_xy(&self) -> XyForm {
        let r = Scalar::inv_sqrt2();
        // a* = (X − Y)/√2, a = (X + Y)/√2
        let ast = Terms::from([((1, 0), r.clone()), ((0, 1), -&r)]);
        let a = Terms::from([((1, 0), r.clone()), ((0, 1), r)]);
        XyForm {
            terms: substitute(&self.terms, &ast, &a),
        }
    }

    pub fn from_xy(x: &XyForm) -> Self {
        x.to_weyl()
    }

    pub fn to_pq(&self) -> PqForm {
        self.to_xy().to_pq()
    }

    /// `f(N)` for a polynomial in the number operator.
    pub fn from_poly_in_n(f: &Poly) -> Result<Self> {
        if f.algebra().nvars() != 1 {
            return Err(Error::AlgebraMismatch(
                "polynomial in the number operator expected".into(),
            ));
        }
        let n = WeylElement::number();
        let deg = f.degree().unwrap_or(0);
        let pows = power_table(&n.terms, deg);
        let mut out = Terms::new();
        for (e, c) in f.terms() {
            for (&k, v) in &pows[e[0] as usize] {
                add_term(&mut out, k, v * c);
            }
        }
        Ok(WeylElement { terms: out })
    }

    /// Unique decomposition `x = Σ_k e_k f_k(N)`.
    ///
    /// `(a*)^m a^n = a^k F_m(N − k)` for `k = n − m ≥ 0` and
    /// `(a*)^{m−n} F_n(N)` for `m > n`, with `F_j` the falling factorial.
    pub fn grading_decompose(&self) -> GradingDecomposition {
        let mut comps: BTreeMap<i64, Vec<Scalar>> = BTreeMap::new();
        for (&(m, n), c) in &self.terms {
            let k = n as i64 - m as i64;
            let f = if k >= 0 {
                falling_factorial(m).shift(&-Rational::from_integer(k.into()))
            } else {
                falling_factorial(n)
            };
            let entry = comps.entry(k).or_default();
            if entry.len() < f.coeffs().len() {
                entry.resize(f.coeffs().len(), Scalar::zero());
            }
            for (slot, q) in entry.iter_mut().zip(f.coeffs()) {
                *slot += &c.scale(q);
            }
        }
        let alg = PolyAlgebra::number_operator();
        let components = comps
            .into_iter()
            .map(|(k, cs)| (k, Poly::from_coeffs(&alg, &cs)))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        GradingDecomposition { components }
    }

    /// The grading projection onto `ℂ[N]`: the degree-0 component.
    pub fn grading_projection(&self) -> Poly {
        let mut comp = Vec::new();
        for (&(m, n), c) in &self.terms {
            if m == n {
                let f = falling_factorial(m);
                if comp.len() < f.coeffs().len() {
                    comp.resize(f.coeffs().len(), Scalar::zero());
                }
                for (slot, q) in comp.iter_mut().zip(f.coeffs()) {
                    *slot += &c.scale(q);
                }
            }
        }
        Poly::from_coeffs(&PolyAlgebra::number_operator(), &comp)
    }

    /// `e_k` homogeneity degree `n − m` of every term, if all agree.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut ks = self.terms.keys().map(|&(m, n)| n as i64 - m as i64);
        let first = ks.next()?;
        ks.all(|k| k == first).then_some(first)
    }

    pub fn leading(&self, ord: MonomialOrdering) -> Result<((u32, u32), Scalar)> {
        self.to_pq().leading(ord)
    }
}

/// `e_k* e_k` as a polynomial in `N`.
pub fn ek_star_ek(k: i64) -> Poly {
    let u = match k.cmp(&0) {
        Ordering::Greater => falling_factorial(k as u32),
        Ordering::Less => rising_product((-k) as u32),
        Ordering::Equal => UPoly::one(),
    };
    Poly::from_upoly(&PolyAlgebra::number_operator(), &u)
}

/// `L_K = Y² X² Y² + (−Y)(X⁴ − K X²) Y`.
pub fn build_lk(k: &Rational) -> WeylElement {
    build_lk_xy(k).to_weyl()
}

pub fn build_lk_xy(k: &Rational) -> XyForm {
    let x = XyForm::x();
    let y = XyForm::y();
    let x2 = x.pow(2);
    let y2 = y.pow(2);
    let first = &(&y2 * &x2) * &y2;
    let inner = &x.pow(4) - &x2.scale(&Scalar::from_rational(k.clone()));
    let second = &(&(-&y) * &inner) * &y;
    &first + &second
}

impl XyForm {
    pub fn x() -> Self {
        XyForm::monomial(1, 0, Scalar::one())
    }

    pub fn y() -> Self {
        XyForm::monomial(0, 1, Scalar::one())
    }

    /// `X* = X`, `Y* = −Y`, so `(X^m Y^n)* = (−1)^n Y^n X^m`, reordered.
    pub fn star(&self) -> Self {
        let mut out = Terms::new();
        for (&(m, n), c) in &self.terms {
            let yx = normal_product(
                &Terms::from([((0, n), Scalar::one())]),
                &Terms::from([((m, 0), Scalar::one())]),
            );
            let sign = if n % 2 == 0 { c.conj() } else { -c.conj() };
            for (k, v) in yx {
                add_term(&mut out, k, &v * &sign);
            }
        }
        XyForm { terms: out }
    }

    pub fn to_weyl(&self) -> WeylElement {
        let r = Scalar::inv_sqrt2();
        // X = (a + a*)/√2, Y = (a − a*)/√2
        let x = Terms::from([((1, 0), r.clone()), ((0, 1), r.clone())]);
        let y = Terms::from([((1, 0), -&r), ((0, 1), r)]);
        WeylElement {
            terms: substitute(&self.terms, &x, &y),
        }
    }

    /// `X^m Y^n = q^m (i p)^n`, already in canonical `q^m p^n` order.
    pub fn to_pq(&self) -> PqForm {
        let i = Scalar::i();
        PqForm {
            terms: self
                .terms
                .iter()
                .map(|(&(m, n), c)| ((n, m), c * &i.pow(n)))
                .collect(),
        }
    }
}

/// The two graded orders on `(p-exponent, q-exponent)`: total degree first,
/// then the q-exponent (`Ord1`) or the p-exponent (`Ord2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrdering {
    Ord1,
    Ord2,
}

impl MonomialOrdering {
    pub fn cmp(&self, a: (u32, u32), b: (u32, u32)) -> Ordering {
        let deg = (a.0 + a.1).cmp(&(b.0 + b.1));
        let tie = match self {
            MonomialOrdering::Ord1 => a.1.cmp(&b.1),
            MonomialOrdering::Ord2 => a.0.cmp(&b.0),
        };
        deg.then(tie)
    }
}

impl PqForm {
    pub fn terms(&self) -> &BTreeMap<(u32, u32), Scalar> {
        &self.terms
    }

    /// Leading multidegree and coefficient under `ord`.
    pub fn leading(&self, ord: MonomialOrdering) -> Result<((u32, u32), Scalar)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(*a.0, *b.0))
            .map(|(&k, c)| (k, c.clone()))
            .ok_or(Error::ZeroElement)
    }
}

/// `x = Σ_k e_k f_k(N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingDecomposition {
    components: BTreeMap<i64, Poly>,
}

impl GradingDecomposition {
    pub fn components(&self) -> &BTreeMap<i64, Poly> {
        &self.components
    }

    /// `f_k`, zero when absent.
    pub fn component(&self, k: i64) -> Poly {
        self.components
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Poly::zero(&PolyAlgebra::number_operator()))
    }

    pub fn reassemble(&self) -> WeylElement {
        self.components.iter().fold(WeylElement::zero(), |acc, (&k, f)| {
            let fk = WeylElement::from_poly_in_n(f).expect("component lives in ℂ[N]");
            &acc + &(&WeylElement::e(k) * &fk)
        })
    }
}

/// The number operator algebra, for callers building polynomials in `N`.
pub fn n_algebra() -> Arc<PolyAlgebra> {
    PolyAlgebra::number_operator()
}

fn monomial_name(lname: &str, rname: &str, m: u32, n: u32) -> String {
    let pw = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    [pw(lname, m), pw(rname, n)]
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect::<Vec<_>>()
        .join("*")
}

fn write_normal_ordered(
    f: &mut fmt::Formatter<'_>,
    terms: &Terms,
    lname: &str,
    rname: &str,
) -> fmt::Result {
    let mut keys: Vec<&(u32, u32)> = terms.keys().collect();
    keys.sort_by(|a, b| (b.0 + b.1).cmp(&(a.0 + a.1)).then(b.cmp(a)));
    let named: Vec<(String, &Scalar)> = keys
        .into_iter()
        .map(|k| (monomial_name(lname, rname, k.0, k.1), &terms[k]))
        .collect();
    write_terms(f, &named)
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_normal_ordered(f, &self.terms, "ast", "a")
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement({self})")
    }
}

impl fmt::Display for XyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_normal_ordered(f, &self.terms, "X", "Y")
    }
}

impl fmt::Debug for XyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XyForm({self})")
    }
}
