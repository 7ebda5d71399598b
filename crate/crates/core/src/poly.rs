//! Dense integer polynomials, lowest degree first.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::CycloNum;

pub(crate) fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Quotient and remainder by a monic divisor.
pub(crate) fn divrem_monic(a: &[BigInt], b: &[i64]) -> (Vec<BigInt>, Vec<BigInt>) {
    let d = b.len() - 1;
    debug_assert_eq!(b[d], 1);
    if a.len() <= d {
        return (Vec::new(), trim(a.to_vec()));
    }
    let mut r = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - d];
    for i in (d..r.len()).rev() {
        let c = std::mem::take(&mut r[i]);
        if c.is_zero() {
            continue;
        }
        for (j, &bj) in b[..d].iter().enumerate() {
            if bj != 0 {
                r[i - d + j] -= &c * bj;
            }
        }
        quot[i - d] = c;
    }
    r.truncate(d);
    (trim(quot), trim(r))
}

/// Multiplicity of the monic factor `f` in `p`; `None` for `p = 0`.
pub(crate) fn valuation(p: &[BigInt], f: &[i64]) -> Option<usize> {
    let mut p = trim(p.to_vec());
    if p.is_empty() {
        return None;
    }
    let mut v = 0;
    loop {
        let (quot, r) = divrem_monic(&p, f);
        if !r.is_empty() {
            return Some(v);
        }
        p = quot;
        v += 1;
    }
}

/// The `n`-th derivative divided by `n!`, which stays integral.
pub(crate) fn taylor_shift_coeffs(p: &[BigInt], n: usize) -> Vec<BigInt> {
    p.iter()
        .enumerate()
        .skip(n)
        .map(|(j, c)| c * binomial(j as u64, n as u64))
        .collect()
}

pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub(crate) fn eval_rational(p: &[BigInt], x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

/// `p(ξ_n^e)` as an element of Q(ξ_n).
pub(crate) fn eval_at_root(p: &[BigInt], n: u64, e: i64) -> CycloNum {
    CycloNum::from_terms(
        n,
        p.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j as i64 * e, BigRational::from_integer(c.clone()))),
    )
}
