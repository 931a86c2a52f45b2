//! Dense univariate polynomials over ℚ and exact real-root machinery.
//!
//! Sturm sequences count distinct real roots in half-open intervals, square
//! free decomposition separates roots by multiplicity, and bisection with
//! rational endpoints isolates individual roots. Everything here is exact.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::scalar::{int, rat_sign, Rational};

/// Coefficients low degree first; no trailing zeros (the zero polynomial has
/// no coefficients).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

/// Evaluation point on the extended real line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtPoint {
    NegInf,
    At(Rational),
    PosInf,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        UPoly::new(cs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        UPoly::default()
    }

    pub fn one() -> Self {
        UPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UPoly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        UPoly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut v = vec![Rational::zero(); deg + 1];
        v[deg] = c;
        UPoly::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Sign at a point of the extended real line.
    pub fn sign_at(&self, p: &ExtPoint) -> i8 {
        match p {
            ExtPoint::At(x) => rat_sign(&self.eval(x)),
            ExtPoint::PosInf => rat_sign(&self.lead()),
            ExtPoint::NegInf => {
                let s = rat_sign(&self.lead());
                match self.degree() {
                    Some(d) if d % 2 == 1 => -s,
                    _ => s,
                }
            }
        }
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, q: &Rational) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| c * q).collect())
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rational::one() / self.lead()))
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `p(x + t)`.
    pub fn shift(&self, t: &Rational) -> UPoly {
        let lin = UPoly::new(vec![t.clone(), Rational::one()]);
        self.compose(&lin)
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &UPoly) -> UPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(UPoly::zero(), |acc, c| &(&acc * q) + &UPoly::constant(c.clone()))
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = Rational::one() / d.lead();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() * &lead_inv;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (UPoly::new(quot), UPoly::new(rem))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor (zero when both are zero).
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Yun's square-free decomposition: `p = lead · ∏ aᵢ^i` with monic,
    /// pairwise coprime, square-free `aᵢ`. Entry `k` of the result is
    /// `a_{k+1}`.
    pub fn squarefree_decomposition(&self) -> Vec<UPoly> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.div_rem(&a).0;
        let mut c = df.div_rem(&a).0;
        let mut d = &c - &b.derivative();
        loop {
            let ai = b.gcd(&d);
            b = b.div_rem(&ai).0;
            c = d.div_rem(&ai).0;
            out.push(ai);
            if b.degree() == Some(0) {
                break;
            }
            d = &c - &b.derivative();
        }
        while out.last().is_some_and(|p| p.degree() == Some(0)) {
            out.pop();
        }
        out
    }

    /// Product of the square-free factors of odd multiplicity. Its real roots
    /// are exactly the points where `self` changes sign.
    pub fn odd_multiplicity_part(&self) -> UPoly {
        self.squarefree_decomposition()
            .iter()
            .enumerate()
            .filter(|(i, _)| i % 2 == 0)
            .fold(UPoly::one(), |acc, (_, p)| &acc * p)
    }

    /// `p / gcd(p, p')`, the monic square-free part.
    pub fn squarefree_part(&self) -> UPoly {
        if self.degree().unwrap_or(0) == 0 {
            return UPoly::one();
        }
        self.div_rem(&self.gcd(&self.derivative())).0.monic()
    }

    /// Cauchy bound `1 + max |cᵢ| / |lead|`: every complex root has smaller
    /// modulus.
    pub fn cauchy_bound(&self) -> Rational {
        let lead = self.lead().abs();
        let m = self.coeffs[..self.coeffs.len().saturating_sub(1)]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero);
        Rational::one() + m / lead
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.to_f64_coeffs().iter().rev().fold(0.0, |acc, c| acc * x + c)
    }
}

/// Sturm sequence `p, p', -rem(p, p'), ...` (stops before zero). Each
/// entry after the first two is scaled by a positive constant to keep the
/// coefficients small; sign variations are unaffected.
pub fn sturm_sequence(p: &UPoly) -> Vec<UPoly> {
    let mut seq = vec![p.clone()];
    if p.is_zero() {
        return seq;
    }
    let mut cur = p.derivative();
    while !cur.is_zero() {
        let next = -&seq.last().unwrap().rem(&cur);
        seq.push(cur);
        cur = if next.is_zero() {
            next
        } else {
            let l = next.lead().abs();
            next.scale(&l.recip())
        };
    }
    seq
}

fn sign_variations(seq: &[UPoly], at: &ExtPoint) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|p| p.sign_at(at))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Root counter for the square-free part of a fixed polynomial.
#[derive(Clone, Debug)]
pub struct RootCounter {
    seq: Vec<UPoly>,
}

impl RootCounter {
    pub fn new(p: &UPoly) -> Self {
        let sf = p.squarefree_part();
        let seq = if sf.degree().unwrap_or(0) == 0 {
            Vec::new()
        } else {
            sturm_sequence(&sf)
        };
        RootCounter { seq }
    }

    /// Distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count(&self, lo: &ExtPoint, hi: &ExtPoint) -> usize {
        if self.seq.is_empty() {
            return 0;
        }
        // at a root of a square-free p the variation count equals the one
        // just to its right, which makes the interval half-open
        sign_variations(&self.seq, lo).saturating_sub(sign_variations(&self.seq, hi))
    }

    pub fn count_in(&self, lo: &Rational, hi: &Rational) -> usize {
        self.count(&ExtPoint::At(lo.clone()), &ExtPoint::At(hi.clone()))
    }
}

/// Number of distinct real roots of `p` in the half-open interval `(lo, hi]`.
///
/// `p` must be nonzero.
pub fn count_roots_between(p: &UPoly, lo: &ExtPoint, hi: &ExtPoint) -> usize {
    RootCounter::new(p).count(lo, hi)
}

/// Number of distinct real roots of a nonzero polynomial.
pub fn count_real_roots(p: &UPoly) -> usize {
    count_roots_between(p, &ExtPoint::NegInf, &ExtPoint::PosInf)
}

/// Disjoint isolating intervals `(lo, hi]`, one per distinct real root, in
/// increasing order.
pub fn isolate_real_roots(p: &UPoly) -> Vec<(Rational, Rational)> {
    let sf = p.squarefree_part();
    if sf.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let counter = RootCounter::new(&sf);
    let b = sf.cauchy_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match counter.count_in(&lo, &hi) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / int(2);
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Exact sign of `q` at the unique root of `p` inside the isolating interval
/// `(lo, hi]`.
pub fn sign_at_root(p: &UPoly, q: &UPoly, lo: &Rational, hi: &Rational) -> i8 {
    if q.is_zero() {
        return 0;
    }
    let sf = p.squarefree_part();
    let g = sf.gcd(q);
    if g.degree().unwrap_or(0) > 0 && RootCounter::new(&g).count_in(lo, hi) == 1 {
        return 0;
    }
    let (pc, qc) = (RootCounter::new(&sf), RootCounter::new(q));
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    loop {
        if qc.count_in(&lo, &hi) == 0 {
            return rat_sign(&q.eval(&hi));
        }
        let mid = (&lo + &hi) / int(2);
        if pc.count_in(&lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

impl<'a> std::ops::Add<&'a UPoly> for &'a UPoly {
    type Output = UPoly;

    fn add(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a> std::ops::Sub<&'a UPoly> for &'a UPoly {
    type Output = UPoly;

    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a> std::ops::Mul<&'a UPoly> for &'a UPoly {
    type Output = UPoly;

    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

impl std::ops::Neg for &UPoly {
    type Output = UPoly;

    fn neg(self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_univariate(f, &self.coeffs, "x")
    }
}

/// Writes `c_0 + c_1 x + ...` highest degree first, in the expression grammar.
pub(crate) fn write_univariate(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[Rational],
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
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
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        match (mono.is_empty(), mag.is_one()) {
            (true, _) => write!(f, "{mag}")?,
            (false, true) => write!(f, "{mono}")?,
            (false, false) => write!(f, "{mag}*{mono}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Falling factorial `x(x-1)...(x-k+1)` (1 for `k = 0`).
pub fn falling_factorial(k: u32) -> UPoly {
    (0..k).fold(UPoly::one(), |acc, j| {
        &acc * &UPoly::new(vec![-int(j as i64), Rational::one()])
    })
}

/// Rising product `(x+1)(x+2)...(x+k)` (1 for `k = 0`).
pub fn rising_product(k: u32) -> UPoly {
    (1..=k).fold(UPoly::one(), |acc, j| {
        &acc * &UPoly::new(vec![int(j as i64), Rational::one()])
    })
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn division_identity() {
        let a = UPoly::from_ints(&[1, -3, 0, 2, 5]);
        let d = UPoly::from_ints(&[-1, 0, 3]);
        let (q, r) = a.div_rem(&d);
        assert_eq!(&(&q * &d) + &r, a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn sturm_counts() {
        // (x-1)(x+2)(x-3)
        let p = &(&UPoly::from_ints(&[-1, 1]) * &UPoly::from_ints(&[2, 1])) * &UPoly::from_ints(&[-3, 1]);
        assert_eq!(count_real_roots(&p), 3);
        assert_eq!(count_real_roots(&UPoly::from_ints(&[1, 0, 1])), 0);
        assert_eq!(
            count_roots_between(&p, &ExtPoint::At(int(0)), &ExtPoint::PosInf),
            2
        );
        // half-open: root at hi included, root at lo excluded
        assert_eq!(
            count_roots_between(&p, &ExtPoint::At(int(1)), &ExtPoint::At(int(3))),
            1
        );
        assert_eq!(
            count_roots_between(&p, &ExtPoint::At(int(-2)), &ExtPoint::At(int(1))),
            1
        );
    }

    #[test]
    fn squarefree_decomposition_multiplicities() {
        // (x-1)^3 (x+1)^2 x
        let a = UPoly::from_ints(&[-1, 1]);
        let b = UPoly::from_ints(&[1, 1]);
        let p = &(&(&(&a * &a) * &a) * &(&b * &b)) * &UPoly::x();
        let dec = p.squarefree_decomposition();
        assert_eq!(dec.len(), 3);
        assert_eq!(dec[0], UPoly::x());
        assert_eq!(dec[1], b);
        assert_eq!(dec[2], a);
        assert_eq!(p.odd_multiplicity_part(), &UPoly::x() * &a);
    }

    #[test]
    fn isolation_and_sign() {
        // x^2 - 2 and q = x: signs -1, +1 at -√2, √2
        let p = UPoly::from_ints(&[-2, 0, 1]);
        let iv = isolate_real_roots(&p);
        assert_eq!(iv.len(), 2);
        let signs: Vec<i8> = iv
            .iter()
            .map(|(l, h)| sign_at_root(&p, &UPoly::x(), l, h))
            .collect();
        assert_eq!(signs, vec![-1, 1]);
        let q = UPoly::new(vec![rat(3, 1), rat(-1, 1)]);
        assert!(iv.iter().all(|(l, h)| sign_at_root(&p, &q, l, h) == 1));
        // q sharing a root with p
        let q0 = UPoly::from_ints(&[-2, 0, 1]);
        assert!(iv.iter().all(|(l, h)| sign_at_root(&p, &q0, l, h) == 0));
    }

    #[test]
    fn factorials() {
        assert_eq!(falling_factorial(2), UPoly::from_ints(&[0, -1, 1]));
        assert_eq!(rising_product(2), UPoly::from_ints(&[2, 3, 1]));
        assert_eq!(falling_factorial(0), UPoly::one());
    }
}
