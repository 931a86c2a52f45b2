//! Dense matrices over [`Scalar`] with exact hermitian inertia.
//!
//! Positivity is decided by congruence diagonalization: elementary column
//! operations paired with their conjugate row operations reduce a hermitian
//! `A` to a diagonal `D = T* A T`. The signs of `D` give the inertia, and a
//! negative entry `d_k` hands back the refutation vector `T e_k`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_rationals(rows: &[Vec<Rational>]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().cloned().map(Scalar::from_rational).collect())
                .collect(),
        )
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn diagonal(d: &[Scalar]) -> Self {
        let mut m = Matrix::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn conj_transpose(&self) -> Matrix {
        self.transpose().map(Scalar::conj)
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i..self.cols).all(|j| self[(i, j)] == self[(j, i)].conj()))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        self.map(|x| x * c)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero(), |acc, i| &acc + &self[(i, i)])
    }

    /// Leading principal `k × k` submatrix.
    pub fn leading(&self, k: usize) -> Matrix {
        let mut m = Matrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// `A v` for a column vector.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Scalar::zero(), |acc, (a, x)| &acc + &(a * x))
            })
            .collect()
    }

    /// The hermitian form `v* A v`.
    pub fn quad_form(&self, v: &[Scalar]) -> Scalar {
        let av = self.mul_vec(v);
        v.iter()
            .zip(&av)
            .fold(Scalar::zero(), |acc, (x, y)| &acc + &(&x.conj() * y))
    }

    fn binop(&self, o: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix shapes differ");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Scalar::re_f64).collect())
            .collect()
    }

    fn swap_basis(&mut self, a: usize, b: usize) {
        for k in 0..self.rows {
            self.data.swap(k * self.cols + a, k * self.cols + b);
        }
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }

    /// Column operation `col_dst += c·col_src`, then the matching row
    /// operation `row_dst += c̄·row_src`. This is `S* W S` with
    /// `S = I + c E_{src,dst}`.
    fn congruence_add(&mut self, dst: usize, src: usize, c: &Scalar) {
        for k in 0..self.rows {
            let t = &self[(k, src)] * c;
            self[(k, dst)] += &t;
        }
        let cc = c.conj();
        for k in 0..self.cols {
            let t = &self[(src, k)] * &cc;
            self[(dst, k)] += &t;
        }
    }

    fn column_add(&mut self, dst: usize, src: usize, c: &Scalar) {
        for k in 0..self.rows {
            let t = &self[(k, src)] * c;
            self[(k, dst)] += &t;
        }
    }

    fn swap_columns(&mut self, a: usize, b: usize) {
        for k in 0..self.rows {
            self.data.swap(k * self.cols + a, k * self.cols + b);
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> std::ops::Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    fn add(self, o: &Matrix) -> Matrix {
        self.binop(o, |a, b| a + b)
    }
}

impl<'a> std::ops::Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    fn sub(self, o: &Matrix) -> Matrix {
        self.binop(o, |a, b| a - b)
    }
}

impl<'a> std::ops::Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    fn mul(self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix shapes do not chain");
        let mut m = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let t = a * &o[(k, j)];
                    m[(i, j)] += &t;
                }
            }
        }
        m
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Counts of positive, negative and zero eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Inertia {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.pos as i64 - self.neg as i64
    }

    pub fn rank(&self) -> usize {
        self.pos + self.neg
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.pos, self.neg, self.zero)
    }
}

/// A congruence diagonalization `D = T* A T`.
#[derive(Clone, Debug)]
pub struct Congruence {
    pub diag: Vec<Scalar>,
    pub transform: Matrix,
}

/// Diagonalizes a hermitian matrix by congruence, exactly.
pub fn congruence_diagonalize(a: &Matrix) -> Result<Congruence> {
    if !a.is_hermitian() {
        return Err(Error::NotHermitian("matrix is not hermitian".into()));
    }
    let n = a.nrows();
    let mut w = a.clone();
    let mut t = Matrix::identity(n);
    for k in 0..n {
        if w[(k, k)].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !w[(j, j)].is_zero()) {
                w.swap_basis(k, j);
                t.swap_columns(k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !w[(k, j)].is_zero()) {
                // (e_k + c e_j)* W (e_k + c e_j) = 2 |w_kj|² with c = conj(w_kj)
                let c = w[(k, j)].conj();
                w.congruence_add(k, j, &c);
                t.column_add(k, j, &c);
            } else {
                continue;
            }
        }
        let pivot_inv = w[(k, k)].inv()?;
        for i in k + 1..n {
            if w[(k, i)].is_zero() {
                continue;
            }
            let c = -(&w[(k, i)] * &pivot_inv);
            w.congruence_add(i, k, &c);
            t.column_add(i, k, &c);
        }
    }
    debug_assert!(w.is_diagonal());
    let diag = (0..n).map(|i| w[(i, i)].clone()).collect();
    Ok(Congruence { diag, transform: t })
}

fn inertia_of_diag(diag: &[Scalar]) -> Result<Inertia> {
    let mut res = Inertia {
        pos: 0,
        neg: 0,
        zero: 0,
    };
    for d in diag {
        match d.sign()? {
            1 => res.pos += 1,
            -1 => res.neg += 1,
            _ => res.zero += 1,
        }
    }
    Ok(res)
}

/// Inertia by congruence diagonalization.
pub fn inertia(a: &Matrix) -> Result<Inertia> {
    inertia_of_diag(&congruence_diagonalize(a)?.diag)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsdResult {
    Psd,
    /// `v* A v = value < 0`.
    NotPsd { witness: Vec<Scalar>, value: Scalar },
}

impl PsdResult {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdResult::Psd)
    }
}

/// Exact positive semidefiniteness with a refutation vector on failure.
pub fn psd_check(a: &Matrix) -> Result<PsdResult> {
    let c = congruence_diagonalize(a)?;
    for (k, d) in c.diag.iter().enumerate() {
        if d.sign()? < 0 {
            let witness: Vec<Scalar> = (0..a.nrows())
                .map(|i| c.transform[(i, k)].clone())
                .collect();
            let value = a.quad_form(&witness);
            debug_assert_eq!(&value, d);
            return Ok(PsdResult::NotPsd { witness, value });
        }
    }
    Ok(PsdResult::Psd)
}

pub fn is_psd(a: &Matrix) -> Result<bool> {
    Ok(psd_check(a)?.is_psd())
}

/// Characteristic polynomial `det(t I − A)`, low degree first, by
/// Faddeev–LeVerrier.
pub fn charpoly(a: &Matrix) -> Result<Vec<Scalar>> {
    if !a.is_square() {
        return Err(Error::Shape("characteristic polynomial of a non-square matrix".into()));
    }
    let n = a.nrows();
    let mut c = vec![Scalar::zero(); n + 1];
    c[n] = Scalar::one();
    let mut m = Matrix::zeros(n, n);
    let id = Matrix::identity(n);
    for k in 1..=n {
        m = &(a * &m) + &id.scale(&c[n - k + 1]);
        let am = a * &m;
        c[n - k] = -am.trace().scale(&Rational::new(1.into(), (k as i64).into()));
    }
    Ok(c)
}

fn sign_variations(signs: impl Iterator<Item = i8>) -> usize {
    let nz: Vec<i8> = signs.filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Inertia of a hermitian matrix from the sign variations of its
/// characteristic polynomial. All roots are real, so Descartes' rule is exact.
pub fn signature_charpoly(a: &Matrix) -> Result<Inertia> {
    if !a.is_hermitian() {
        return Err(Error::NotHermitian("matrix is not hermitian".into()));
    }
    let c = charpoly(a)?;
    let signs: Vec<i8> = c.iter().map(Scalar::sign).collect::<Result<_>>()?;
    let zero = signs.iter().position(|&s| s != 0).unwrap_or(0);
    let pos = sign_variations(signs.iter().copied());
    let neg = sign_variations(
        signs
            .iter()
            .enumerate()
            .map(|(i, &s)| if i % 2 == 1 { -s } else { s }),
    );
    Ok(Inertia { pos, neg, zero })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_ints(rows).unwrap()
    }

    #[test]
    fn psd_small_cases() {
        assert!(is_psd(&m(&[&[1, 0], &[0, 2]])).unwrap());
        assert!(!is_psd(&m(&[&[1, 2], &[2, 1]])).unwrap());
        assert!(is_psd(&m(&[&[0, 0], &[0, 0]])).unwrap());
        // zero pivot with a nonzero row
        assert!(!is_psd(&m(&[&[0, 1], &[1, 0]])).unwrap());
        assert!(!is_psd(&m(&[&[0, 1], &[1, 5]])).unwrap());
        assert!(is_psd(&m(&[&[0, 0, 0], &[0, 1, 1], &[0, 1, 1]])).unwrap());
    }

    #[test]
    fn witness_is_negative() {
        let a = m(&[&[0, 3, 0], &[3, 0, 1], &[0, 1, 2]]);
        match psd_check(&a).unwrap() {
            PsdResult::NotPsd { witness, value } => {
                assert_eq!(a.quad_form(&witness), value);
                assert_eq!(value.sign().unwrap(), -1);
            }
            PsdResult::Psd => panic!("indefinite matrix reported PSD"),
        }
    }

    #[test]
    fn complex_hermitian() {
        let i = Scalar::i();
        let one = Scalar::one();
        // [[1, i], [-i, 1]] is singular PSD
        let a = Matrix::from_rows(vec![vec![one.clone(), i.clone()], vec![-&i, one.clone()]]).unwrap();
        assert_eq!(inertia(&a).unwrap(), Inertia { pos: 1, neg: 0, zero: 1 });
        assert_eq!(signature_charpoly(&a).unwrap(), Inertia { pos: 1, neg: 0, zero: 1 });
        let b = Matrix::from_rows(vec![vec![Scalar::zero(), i.clone()], vec![-&i, Scalar::zero()]]).unwrap();
        assert_eq!(inertia(&b).unwrap(), Inertia { pos: 1, neg: 1, zero: 0 });
    }

    #[test]
    fn charpoly_and_signature() {
        let a = m(&[&[2, 1], &[1, 2]]);
        let c = charpoly(&a).unwrap();
        assert_eq!(c, vec![Scalar::from_int(3), Scalar::from_int(-4), Scalar::one()]);
        let d = m(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 0]]);
        assert_eq!(signature_charpoly(&d).unwrap(), Inertia { pos: 1, neg: 1, zero: 1 });
        assert_eq!(inertia(&d).unwrap(), signature_charpoly(&d).unwrap());
    }

    #[test]
    fn non_hermitian_rejected() {
        assert!(psd_check(&m(&[&[1, 2], &[3, 1]])).is_err());
        assert!(signature_charpoly(&m(&[&[1, 2], &[3, 1]])).is_err());
    }
}
