//! Oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type Q = BigRational;

pub fn trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap();
    while r.len() >= b.len() && !r.is_empty() {
        let c = r.last().unwrap() / lb;
        let shift = r.len() - b.len();
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &c * bi;
        }
        r = trim(r);
    }
    r
}

pub fn deriv(p: &[Q]) -> Vec<Q> {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * Q::from_integer(BigInt::from(i))).collect())
}

/// Sign changes of the Sturm chain at −∞ minus those at +∞.
pub fn sturm_count(p: &[Q]) -> usize {
    let mut chain = vec![p.to_vec(), deriv(p)];
    while chain.last().is_some_and(|c| !c.is_empty()) {
        let n = chain.len();
        let r: Vec<Q> = rem(&chain[n - 2], &chain[n - 1]).into_iter().map(|c| -c).collect();
        chain.push(r);
    }
    chain.pop();
    let changes = |signs: Vec<bool>| signs.windows(2).filter(|w| w[0] != w[1]).count();
    let at_pos: Vec<bool> = chain.iter().map(|c| c.last().unwrap().is_positive()).collect();
    let at_neg: Vec<bool> = chain
        .iter()
        .map(|c| c.last().unwrap().is_positive() == ((c.len() - 1) % 2 == 0))
        .collect();
    changes(at_neg) - changes(at_pos)
}

pub fn squarefree(p: &[Q]) -> bool {
    let (mut a, mut b) = (p.to_vec(), deriv(p));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a.len() == 1
}
