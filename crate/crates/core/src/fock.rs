//! Truncated Fock representation on the unnormalized number basis
//! `ẽ_j = (a*)^j Ω`.
//!
//! In this basis `a ẽ_j = j ẽ_{j-1}`, `a* ẽ_j = ẽ_{j+1}` and
//! `⟨ẽ_i, ẽ_j⟩ = δ_ij i!`, so every Gram entry stays in ℚ(i, √2).

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{psd_check, Matrix, PsdResult};
use crate::scalar::Scalar;
use crate::upoly::factorial;
use crate::weyl::WeylElement;

/// `φ₀(x)`: the coefficient of the identity in normal order.
pub fn phi0(x: &WeylElement) -> Scalar {
    x.coeff(0, 0)
}

/// Gram matrix of a Weyl element at truncation level `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockGram {
    pub level: usize,
    pub matrix: Matrix,
}

/// `G_ij = φ₀(a^i x (a*)^j) = ⟨ẽ_i, x ẽ_j⟩` for `0 ≤ i, j ≤ M`.
///
/// The term `(a*)^m a^n` sends `ẽ_j` to `j!/(j−n)! · ẽ_{j−n+m}` when `n ≤ j`.
pub fn gram(x: &WeylElement, level: usize) -> FockGram {
    let dim = level + 1;
    let facts: Vec<_> = (0..=dim as u64).map(factorial).collect();
    let mut g = Matrix::zeros(dim, dim);
    for (&(m, n), c) in x.terms() {
        let (m, n) = (m as usize, n as usize);
        for j in n..dim {
            let i = j - n + m;
            if i >= dim {
                continue;
            }
            let w = &facts[j] / &facts[j - n] * &facts[i];
            let t = c.scale_int(&w);
            g[(i, j)] += &t;
        }
    }
    FockGram { level, matrix: g }
}

fn require_hermitian(x: &WeylElement) -> Result<()> {
    if x.is_hermitian() {
        Ok(())
    } else {
        Err(Error::NotHermitian(x.to_string()))
    }
}

/// Exact PSD test of the level-`M` Gram matrix, with a witness on failure.
///
/// A witness vector `v` corresponds to `y = Σ v_j (a*)^j` with
/// `φ₀(y* x y) < 0`.
pub fn psd_truncated_check(x: &WeylElement, level: usize) -> Result<PsdResult> {
    require_hermitian(x)?;
    psd_check(&gram(x, level).matrix)
}

pub fn psd_truncated(x: &WeylElement, level: usize) -> Result<bool> {
    Ok(psd_truncated_check(x, level)?.is_psd())
}

/// Smallest level `M ≤ max_level` at which the Gram matrix is not PSD.
pub fn aplus_refute(x: &WeylElement, max_level: usize) -> Result<Option<usize>> {
    require_hermitian(x)?;
    let full = gram(x, max_level).matrix;
    for m in 0..=max_level {
        if !psd_check(&full.leading(m + 1))?.is_psd() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Per-level PSD verdicts for `0 ≤ M ≤ max_level`.
pub fn level_table(x: &WeylElement, max_level: usize) -> Result<Vec<bool>> {
    require_hermitian(x)?;
    let full = gram(x, max_level).matrix;
    (0..=max_level)
        .map(|m| Ok(psd_check(&full.leading(m + 1))?.is_psd()))
        .collect()
}

/// The element `y = Σ v_j (a*)^j` attached to a coefficient vector.
pub fn witness_element(v: &[Scalar]) -> WeylElement {
    WeylElement::from_terms(
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| ((j as u32, 0), c.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::weyl::build_lk;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn phi0_examples() {
        assert_eq!(phi0(&WeylElement::one()), s(1));
        assert_eq!(phi0(&WeylElement::monomial(2, 3, s(1))), s(0));
        assert_eq!(phi0(&(&WeylElement::a() * &WeylElement::ast())), s(1));
    }

    #[test]
    fn gram_examples() {
        assert_eq!(gram(&WeylElement::one(), 2).matrix, Matrix::diagonal(&[s(1), s(1), s(2)]));
        assert_eq!(gram(&WeylElement::number(), 2).matrix, Matrix::diagonal(&[s(0), s(1), s(4)]));
        let nm1 = &WeylElement::number() - &WeylElement::one();
        assert_eq!(gram(&nm1, 1).matrix, Matrix::diagonal(&[s(-1), s(0)]));
    }

    #[test]
    fn refutations() {
        let nm1 = &WeylElement::number() - &WeylElement::one();
        assert!(!psd_truncated(&nm1, 1).unwrap());
        assert_eq!(aplus_refute(&WeylElement::constant(s(-1)), 5).unwrap(), Some(0));
        assert_eq!(aplus_refute(&build_lk(&int(5)), 12).unwrap(), Some(0));
        assert!(psd_truncated(&WeylElement::a(), 1).is_err());
    }

    #[test]
    fn witness_reproduces_negative_value() {
        let x = &WeylElement::number() - &WeylElement::constant(s(1));
        let PsdResult::NotPsd { witness, value } = psd_truncated_check(&x, 3).unwrap() else {
            panic!("N - 1 must fail");
        };
        let y = witness_element(&witness);
        assert_eq!(phi0(&(&(&y.star() * &x) * &y)), value);
    }
}
