//! Seeded random elements for sample-based checks.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cyclic::{CyclicAlgebra, CyclicElement};
use crate::matalg::MatPoly;
use crate::numfield::{NFElement, NumberField};
use crate::polyalg::{Poly, PolyAlgebra};
use crate::scalar::{rat, Rational, Scalar};
use crate::upoly::UPoly;
use crate::weyl::WeylElement;

pub const DEFAULT_SEED: u64 = 20_240_917;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed from `QMOD_SEED`, falling back to [`DEFAULT_SEED`].
pub fn env_seed() -> u64 {
    std::env::var("QMOD_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let q = rational(rng);
        if q != Rational::from_integer(0.into()) {
            return q;
        }
    }
}

/// Mostly real, sometimes complex or with a `√2` part.
pub fn scalar<R: Rng>(rng: &mut R) -> Scalar {
    let r = rational(rng);
    match rng.gen_range(0..4) {
        0 => Scalar::new(r, rational(rng), rational(rng), rational(rng)),
        1 => Scalar::new(r, Rational::default(), rational(rng), Rational::default()),
        _ => Scalar::from_rational(r),
    }
}

fn sparse<R: Rng>(rng: &mut R) -> bool {
    rng.gen_bool(0.4)
}

/// Random polynomial of total degree at most `deg`, in monomials whose
/// exponent of generator `step.0` is a multiple of `step.1`.
pub fn poly_with_step<R: Rng>(
    rng: &mut R,
    alg: &Arc<PolyAlgebra>,
    deg: u32,
    step: Option<(usize, u32)>,
) -> Poly {
    let n = alg.nvars();
    let mut terms = Vec::new();
    let mut e = vec![0u32; n];
    loop {
        let total: u32 = e.iter().sum();
        let ok = step.is_none_or(|(i, s)| e[i].is_multiple_of(s));
        if total <= deg && ok && !sparse(rng) {
            terms.push((e.clone(), scalar(rng)));
        }
        let mut k = 0;
        loop {
            if k == n {
                return Poly::from_terms(alg, terms).expect("exponent length");
            }
            e[k] += 1;
            if e.iter().sum::<u32>() <= deg {
                break;
            }
            e[k] = 0;
            k += 1;
        }
    }
}

pub fn poly<R: Rng>(rng: &mut R, alg: &Arc<PolyAlgebra>, deg: u32) -> Poly {
    poly_with_step(rng, alg, deg, None)
}

pub fn real_upoly<R: Rng>(rng: &mut R, deg: usize) -> UPoly {
    UPoly::new((0..=deg).map(|_| rational(rng)).collect())
}

pub fn weyl<R: Rng>(rng: &mut R, deg: u32) -> WeylElement {
    let mut terms = Vec::new();
    for m in 0..=deg {
        for n in 0..=deg - m {
            if !sparse(rng) {
                terms.push(((m, n), scalar(rng)));
            }
        }
    }
    WeylElement::from_terms(terms)
}

pub fn matpoly<R: Rng>(rng: &mut R, alg: &Arc<PolyAlgebra>, n: usize, deg: u32) -> MatPoly {
    let mut m = MatPoly::zero(alg, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, poly(rng, alg, deg));
        }
    }
    m
}

pub fn nf_element<R: Rng>(rng: &mut R, field: &Arc<NumberField>) -> NFElement {
    let cs = (0..field.degree()).map(|_| rational(rng)).collect();
    NFElement::new(field, UPoly::new(cs))
}

pub fn cyclic_element<R: Rng>(rng: &mut R, alg: &Arc<CyclicAlgebra>) -> CyclicElement {
    let comps = (0..alg.n()).map(|_| nf_element(rng, alg.field())).collect();
    CyclicElement::from_components(alg, comps).expect("component count")
}

/// Random monic polynomial of degree `deg` with nonzero discriminant.
pub fn squarefree_monic<R: Rng>(rng: &mut R, deg: usize) -> UPoly {
    loop {
        let mut cs: Vec<Rational> = (0..deg)
            .map(|_| Rational::from_integer(rng.gen_range(-6..=6).into()))
            .collect();
        cs.push(Rational::from_integer(1.into()));
        let p = UPoly::new(cs);
        if p.is_squarefree() {
            return p;
        }
    }
}
