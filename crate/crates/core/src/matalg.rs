//! Matrix algebras `M_N(ℬ)` over a commutative polynomial algebra.

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{psd_check, Matrix, PsdResult};
use crate::polyalg::{Poly, PolyAlgebra};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct MatPoly {
    alg: Arc<PolyAlgebra>,
    n: usize,
    entries: Vec<Poly>,
}

impl MatPoly {
    pub fn zero(alg: &Arc<PolyAlgebra>, n: usize) -> Self {
        MatPoly {
            alg: alg.clone(),
            n,
            entries: vec![Poly::zero(alg); n * n],
        }
    }

    pub fn identity(alg: &Arc<PolyAlgebra>, n: usize) -> Self {
        let mut m = MatPoly::zero(alg, n);
        for i in 0..n {
            m.set(i, i, Poly::one(alg));
        }
        m
    }

    pub fn from_rows(alg: &Arc<PolyAlgebra>, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("matrix must be square".into()));
        }
        let entries: Vec<Poly> = rows.into_iter().flatten().collect();
        if entries.iter().any(|p| !p.same_algebra(&Poly::zero(alg))) {
            return Err(Error::AlgebraMismatch("entries from another algebra".into()));
        }
        Ok(MatPoly {
            alg: alg.clone(),
            n,
            entries,
        })
    }

    /// Constant matrix from a scalar matrix.
    pub fn from_scalar_matrix(alg: &Arc<PolyAlgebra>, m: &Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Shape("matrix must be square".into()));
        }
        let n = m.nrows();
        let mut out = MatPoly::zero(alg, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, Poly::constant(alg, m[(i, j)].clone()));
            }
        }
        Ok(out)
    }

    pub fn algebra(&self) -> &Arc<PolyAlgebra> {
        &self.alg
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.n + j] = p;
    }

    /// `[b_ij]* = [b_ji*]`.
    pub fn star(&self) -> Self {
        let mut out = MatPoly::zero(&self.alg, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j).star());
            }
        }
        out
    }

    pub fn is_hermitian(&self) -> bool {
        self.star() == *self
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        MatPoly {
            alg: self.alg.clone(),
            n: self.n,
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// `b · A` for `b ∈ ℬ`.
    pub fn scale_poly(&self, b: &Poly) -> Self {
        MatPoly {
            alg: self.alg.clone(),
            n: self.n,
            entries: self.entries.iter().map(|p| b * p).collect(),
        }
    }

    /// Normalized trace `(1/N) Σ a_ii`.
    pub fn ntrace(&self) -> Poly {
        let sum = (0..self.n).fold(Poly::zero(&self.alg), |acc, i| &acc + self.get(i, i));
        sum.scale(&Scalar::from_ratio(1, self.n as i64))
    }

    /// Exact value at a point.
    pub fn eval(&self, point: &[Scalar]) -> Result<Matrix> {
        let rows = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).eval(point)).collect())
            .collect::<Result<Vec<Vec<Scalar>>>>()?;
        Matrix::from_rows(rows)
    }
}

impl<'a> std::ops::Add<&'a MatPoly> for &'a MatPoly {
    type Output = MatPoly;

    fn add(self, o: &MatPoly) -> MatPoly {
        assert_eq!(self.n, o.n, "matrix sizes differ");
        MatPoly {
            alg: self.alg.clone(),
            n: self.n,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> std::ops::Sub<&'a MatPoly> for &'a MatPoly {
    type Output = MatPoly;

    fn sub(self, o: &MatPoly) -> MatPoly {
        assert_eq!(self.n, o.n, "matrix sizes differ");
        MatPoly {
            alg: self.alg.clone(),
            n: self.n,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> std::ops::Mul<&'a MatPoly> for &'a MatPoly {
    type Output = MatPoly;

    fn mul(self, o: &MatPoly) -> MatPoly {
        assert_eq!(self.n, o.n, "matrix sizes differ");
        let n = self.n;
        let mut out = MatPoly::zero(&self.alg, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Poly::zero(&self.alg);
                for k in 0..n {
                    let (a, b) = (self.get(i, k), o.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }
}

impl fmt::Debug for MatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let r: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "MatPoly[{}]", rows.join(", "))
    }
}

/// An element `(ε_1, …, ε_N; j)` of `(ℤ/2)^N ⋊ ℤ/N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub signs: Vec<bool>,
    pub shift: usize,
}

/// All `N·2^N` group elements.
pub fn group_elements(n: usize) -> Vec<GroupElement> {
    let mut out = Vec::with_capacity(n << n);
    for mask in 0..(1usize << n) {
        for shift in 0..n {
            out.push(GroupElement {
                signs: (0..n).map(|i| mask >> i & 1 == 1).collect(),
                shift,
            });
        }
    }
    out
}

/// `T_g = diag(±1) · C^j` with `C` the cyclic shift `E_{1,2} + … + E_{N−1,N} + E_{N,1}`.
pub fn group_matrix(g: &GroupElement) -> Matrix {
    let n = g.signs.len();
    let mut c = Matrix::zeros(n, n);
    for i in 0..n {
        c[(i, (i + 1) % n)] = Scalar::one();
    }
    let cj = (0..g.shift).fold(Matrix::identity(n), |acc, _| &acc * &c);
    let d = Matrix::diagonal(
        &g.signs
            .iter()
            .map(|&neg| if neg { -Scalar::one() } else { Scalar::one() })
            .collect::<Vec<_>>(),
    );
    &d * &cj
}

/// `A^g = T_g* A T_g`.
pub fn act(g: &GroupElement, a: &MatPoly) -> Result<MatPoly> {
    let t = group_matrix(g);
    let tp = MatPoly::from_scalar_matrix(&a.alg, &t)?;
    let tstar = MatPoly::from_scalar_matrix(&a.alg, &t.conj_transpose())?;
    Ok(&(&tstar * a) * &tp)
}

/// Average of `A^g` over the whole group.
pub fn group_average(a: &MatPoly) -> Result<MatPoly> {
    let elems = group_elements(a.n);
    let mut acc = MatPoly::zero(&a.alg, a.n);
    for g in &elems {
        acc = &acc + &act(g, a)?;
    }
    Ok(acc.scale(&Scalar::from_ratio(1, elems.len() as i64)))
}

/// `K_S = {χ : p(χ) ≥ 0 for all p ∈ S}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemialgebraicSet {
    pub polys: Vec<Poly>,
}

impl SemialgebraicSet {
    pub fn new(polys: Vec<Poly>) -> Result<Self> {
        for p in &polys {
            if !p.has_real_coefficients() {
                return Err(Error::NotReal(p.to_string()));
            }
        }
        Ok(SemialgebraicSet { polys })
    }

    pub fn whole_space() -> Self {
        SemialgebraicSet { polys: Vec::new() }
    }

    pub fn contains(&self, point: &[Scalar]) -> Result<bool> {
        for p in &self.polys {
            if p.eval(point)?.sign()? < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A point of `K_S` where `A` fails to be PSD, with `vᵀ A(χ) v < 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub point: Vec<Rational>,
    pub witness: Vec<Scalar>,
    pub value: Scalar,
}

/// Searches the samples for a point of `K_S` at which `A` is not PSD.
/// `None` proves nothing.
pub fn ind_tr_refute(
    a: &MatPoly,
    s: &SemialgebraicSet,
    samples: &[Vec<Rational>],
) -> Result<Option<Refutation>> {
    if !a.is_hermitian() {
        return Err(Error::NotHermitian("matrix polynomial is not hermitian".into()));
    }
    let inv = a.alg.involution();
    if inv.iter().enumerate().any(|(i, &j)| i != j) {
        return Err(Error::Precondition("base algebra must be real".into()));
    }
    for chi in samples {
        let point: Vec<Scalar> = chi.iter().cloned().map(Scalar::from_rational).collect();
        if !s.contains(&point)? {
            continue;
        }
        if let PsdResult::NotPsd { witness, value } = psd_check(&a.eval(&point)?)? {
            return Ok(Some(Refutation {
                point: chi.clone(),
                witness,
                value,
            }));
        }
    }
    Ok(None)
}

/// A grid of `k` points per axis over a box (endpoints included when
/// `k ≥ 2`, the midpoint when `k = 1`).
pub fn grid_points(bounds: &[(Rational, Rational)], k: usize) -> Vec<Vec<Rational>> {
    let axes: Vec<Vec<Rational>> = bounds
        .iter()
        .map(|(lo, hi)| match k {
            0 => Vec::new(),
            1 => vec![(lo + hi) / Rational::from_integer(2.into())],
            _ => (0..k)
                .map(|t| {
                    let f = Rational::new(t.into(), (k - 1).into());
                    lo + (hi - lo) * f
                })
                .collect(),
        })
        .collect();
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        acc.iter()
            .flat_map(|p| {
                axis.iter().map(move |x| {
                    let mut q = p.clone();
                    q.push(x.clone());
                    q
                })
            })
            .collect()
    })
}

pub fn is_zero_matrix(a: &MatPoly) -> bool {
    a.entries.iter().all(Poly::is_zero)
}
