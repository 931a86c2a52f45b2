//! Exact scalars in ℚ(i, √2).
//!
//! A [`Scalar`] is `r + s·√2 + (u + v·√2)·i` with rational coordinates. This
//! is the smallest field holding every coefficient the library needs: the
//! `1/√2` of the position/momentum presentation of the Weyl algebra and the
//! Gaussian coefficients of complex *-algebras.
//!
//! Coordinates are kept reduced at all times (they are [`BigRational`]s), so
//! equality is plain coordinate comparison. The real subfield ℚ(√2) is
//! ordered; [`Scalar::sign`] decides signs exactly.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational number. Always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Builds a rational from a numerator/denominator pair of machine integers.
///
/// Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Sign of a rational as `-1`, `0` or `1`.
pub fn rat_sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Element `r + s√2 + (u + v√2)i` of ℚ(i, √2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    r: Rational,
    s: Rational,
    u: Rational,
    v: Rational,
}

impl Scalar {
    pub fn new(r: Rational, s: Rational, u: Rational, v: Rational) -> Self {
        Scalar { r, s, u, v }
    }

    pub fn from_rational(q: Rational) -> Self {
        Scalar {
            r: q,
            ..Scalar::default()
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::from_rational(rat(num, den))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar {
            u: Rational::one(),
            ..Scalar::default()
        }
    }

    pub fn sqrt2() -> Self {
        Scalar {
            s: Rational::one(),
            ..Scalar::default()
        }
    }

    /// `1/√2 = √2/2`.
    pub fn inv_sqrt2() -> Self {
        Scalar {
            s: rat(1, 2),
            ..Scalar::default()
        }
    }

    /// Coordinates `(r, s, u, v)`.
    pub fn coords(&self) -> (&Rational, &Rational, &Rational, &Rational) {
        (&self.r, &self.s, &self.u, &self.v)
    }

    /// Real part `r + s√2`.
    pub fn re(&self) -> Scalar {
        Scalar {
            r: self.r.clone(),
            s: self.s.clone(),
            ..Scalar::default()
        }
    }

    /// Imaginary part `u + v√2` (as a real scalar).
    pub fn im(&self) -> Scalar {
        Scalar {
            r: self.u.clone(),
            s: self.v.clone(),
            ..Scalar::default()
        }
    }

    pub fn is_real(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// `Some(q)` when the scalar is the rational number `q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.s.is_zero() && self.u.is_zero() && self.v.is_zero() {
            Some(&self.r)
        } else {
            None
        }
    }

    /// Complex conjugation, the involution fixing ℚ(√2).
    pub fn conj(&self) -> Scalar {
        Scalar {
            r: self.r.clone(),
            s: self.s.clone(),
            u: -&self.u,
            v: -&self.v,
        }
    }

    /// `|x|² = x·conj(x)`, a nonnegative element of ℚ(√2).
    pub fn norm_sqr(&self) -> Scalar {
        self * &self.conj()
    }

    /// Exact sign of a real scalar.
    ///
    /// The sign of `r + s√2` is read off the coordinate signs, comparing `r²`
    /// with `2s²` when they disagree.
    pub fn sign(&self) -> Result<i8> {
        if !self.is_real() {
            return Err(Error::NotReal(self.to_string()));
        }
        Ok(real_sign(&self.r, &self.s))
    }

    /// Compares two real scalars.
    pub fn cmp_real(&self, other: &Scalar) -> Result<Ordering> {
        Ok(match (self - other).sign()? {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    pub fn is_nonnegative(&self) -> Result<bool> {
        Ok(self.sign()? >= 0)
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // x⁻¹ = conj(x) / |x|², and |x|² = a + b√2 is inverted via its
        // √2-conjugate a - b√2.
        let n = self.norm_sqr();
        let (a, b) = (&n.r, &n.s);
        let d = a * a - b * b * int(2);
        let n_inv = Scalar {
            r: a / &d,
            s: -(b / &d),
            ..Scalar::default()
        };
        Ok(&self.conj() * &n_inv)
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, q: &Rational) -> Scalar {
        let m = |x: &Rational| if x.is_zero() { Rational::zero() } else { x * q };
        Scalar {
            r: m(&self.r),
            s: m(&self.s),
            u: m(&self.u),
            v: m(&self.v),
        }
    }

    pub fn scale_int(&self, n: &BigInt) -> Scalar {
        self.scale(&BigRational::from_integer(n.clone()))
    }

    /// Floating-point real part, for cross-checks only.
    pub fn re_f64(&self) -> f64 {
        self.r.to_f64().unwrap_or(f64::NAN)
            + self.s.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }

    /// Floating-point imaginary part, for cross-checks only.
    pub fn im_f64(&self) -> f64 {
        self.u.to_f64().unwrap_or(f64::NAN)
            + self.v.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }
}

/// Sign of `r + s√2`.
fn real_sign(r: &Rational, s: &Rational) -> i8 {
    let (sr, ss) = (rat_sign(r), rat_sign(s));
    if sr == 0 {
        return ss;
    }
    if ss == 0 || sr == ss {
        return sr;
    }
    // opposite signs: compare r² with 2s²
    match (r * r).cmp(&(s * s * int(2))) {
        Ordering::Greater => sr,
        Ordering::Less => ss,
        Ordering::Equal => 0,
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::default()
    }

    fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero() && self.u.is_zero() && self.v.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_rational(Rational::one())
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::from_rational(q)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn add(self, o: &Scalar) -> Scalar {
        Scalar {
            r: &self.r + &o.r,
            s: &self.s + &o.s,
            u: &self.u + &o.u,
            v: &self.v + &o.v,
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn sub(self, o: &Scalar) -> Scalar {
        Scalar {
            r: &self.r - &o.r,
            s: &self.s - &o.s,
            u: &self.u - &o.u,
            v: &self.v - &o.v,
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn mul(self, o: &Scalar) -> Scalar {
        if let Some(q) = o.as_rational() {
            return self.scale(q);
        }
        if let Some(q) = self.as_rational() {
            return o.scale(q);
        }
        // (a + b i)(c + d i) with a, b, c, d ∈ ℚ(√2)
        let two = int(2);
        let mul2 = |x1: &Rational, y1: &Rational, x2: &Rational, y2: &Rational| {
            (x1 * x2 + y1 * y2 * &two, x1 * y2 + y1 * x2)
        };
        let (ac_r, ac_s) = mul2(&self.r, &self.s, &o.r, &o.s);
        let (bd_r, bd_s) = mul2(&self.u, &self.v, &o.u, &o.v);
        let (ad_r, ad_s) = mul2(&self.r, &self.s, &o.u, &o.v);
        let (bc_r, bc_s) = mul2(&self.u, &self.v, &o.r, &o.s);
        Scalar {
            r: ac_r - bd_r,
            s: ac_s - bd_s,
            u: ad_r + bc_r,
            v: ad_s + bc_s,
        }
    }
}

/// Panics on division by zero; use [`Scalar::inv`] for a checked inverse.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar {
            r: -&self.r,
            s: -&self.s,
            u: -&self.u,
            v: -&self.v,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar { (&self).$m(o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.r += &o.r;
        self.s += &o.s;
        self.u += &o.u;
        self.v += &o.v;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        self.r -= &o.r;
        self.s -= &o.s;
        self.u -= &o.u;
        self.v -= &o.v;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

/// Prints in the expression grammar, e.g. `3/4 - 1/2*sqrt2 + i`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = [
            (&self.r, ""),
            (&self.s, "sqrt2"),
            (&self.u, "i"),
            (&self.v, "sqrt2*i"),
        ];
        let mut first = true;
        for (c, unit) in parts {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match (unit.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{unit}")?,
                (false, false) => write!(f, "{mag}*{unit}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(r: (i64, i64), sq: (i64, i64)) -> Scalar {
        Scalar::new(rat(r.0, r.1), rat(sq.0, sq.1), int(0), int(0))
    }

    #[test]
    fn sign_examples() {
        assert_eq!(Scalar::zero().sign().unwrap(), 0);
        assert_eq!(s((1, 1), (-1, 1)).sign().unwrap(), -1);
        assert_eq!(s((3, 4), (-1, 2)).sign().unwrap(), 1);
        assert!(Scalar::i().sign().is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let one_i = &Scalar::one() + &Scalar::i();
        let one_mi = &Scalar::one() - &Scalar::i();
        assert_eq!(&one_i * &one_mi, Scalar::from_int(2));
        assert_eq!(Scalar::sqrt2().pow(2), Scalar::from_int(2));
        let isq = &Scalar::i() * &Scalar::sqrt2();
        assert_eq!(isq.conj(), -&isq);
        assert!(Scalar::zero().inv().is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let x = Scalar::new(rat(3, 4), rat(-2, 5), rat(1, 3), rat(7, 2));
        assert_eq!(&x * &x.inv().unwrap(), Scalar::one());
        assert_eq!(Scalar::inv_sqrt2().pow(2), Scalar::from_ratio(1, 2));
    }

    #[test]
    fn display() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(s((3, 4), (-1, 2)).to_string(), "3/4 - 1/2*sqrt2");
        assert_eq!((-Scalar::i()).to_string(), "-i");
    }
}
