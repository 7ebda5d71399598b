//! λ-adic expansions in `Z[ξ_q]`, `q` prime, `λ = 1 - ξ_q`.
//!
//! `Z[ξ_q]/(λ) ≅ Z/qZ` via `ξ ↦ 1`, and `(q) = (λ)^{q-1}`. Every integral `x`
//! has a unique expansion `Σ g_n λ^n` with digits `g_n ∈ {0, …, q-1}`.
//! Division by `λ` uses `1/λ = U/q` with
//! `U = Π_{a=2}^{q-1}(1 - ξ^a) = -Σ_{j=1}^{q-1} j ξ^j`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::cyclotomic::{CycloNum, RootSum};
use crate::error::{invariant, Error, Result};
use crate::modular::{self, rem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

/// Integral element of `Z[ξ_q]` as coefficients of `1, ξ, …, ξ^{q-1}` modulo
/// the all-ones vector, kept canonical with a zero top coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Integral {
    q: i64,
    c: Vec<i128>,
}

impl Integral {
    fn from_cyclo(x: &CycloNum, q: i64) -> Result<Self> {
        check_prime(q)?;
        let x = match x.to_rational() {
            Ok(r) => CycloNum::from_rational(q as u64, r),
            Err(_) => x.clone(),
        };
        if !(q as u64).is_multiple_of(x.order()) {
            return Err(Error::Unsupported(format!(
                "element of Q(xi_{}) does not lie in Q(xi_{q})",
                x.order()
            )));
        }
        let x = x.promote(q as u64);
        let coeffs = x
            .integer_coeffs()
            .ok_or_else(|| Error::NonIntegral(x.to_string()))?;
        let mut c = vec![0i128; q as usize];
        for (i, v) in coeffs.iter().enumerate() {
            c[i] = v
                .to_i128()
                .ok_or_else(|| Error::Unsupported("coefficient exceeds 128 bits".into()))?;
        }
        Ok(Integral { q, c })
    }

    fn from_root_sum(r: &RootSum) -> Self {
        let mut out = Integral {
            q: r.order() as i64,
            c: r.counts().iter().map(|&v| v as i128).collect(),
        };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        let top = self.c[self.q as usize - 1];
        if top != 0 {
            for v in &mut self.c {
                *v -= top;
            }
        }
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }

    /// Image in Z/qZ under ξ ↦ 1.
    fn residue(&self) -> i64 {
        rem((self.c.iter().sum::<i128>() % self.q as i128) as i64, self.q)
    }

    /// Exact division by λ; requires `residue() == 0`.
    fn div_lambda(&self) -> Result<Self> {
        let q = self.q as usize;
        let qi = self.q as i128;
        let mut prod = vec![0i128; q];
        for (i, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for j in 1..q {
                let t = x.checked_mul(j as i128).ok_or_else(overflow)?;
                prod[(i + j) % q] = prod[(i + j) % q].checked_sub(t).ok_or_else(overflow)?;
            }
        }
        // x·U ≡ q·y is only determined up to multiples of Φ_q(ξ) = Σ ξ^j
        let shift = prod[q - 1].rem_euclid(qi);
        if prod.iter().any(|&v| (v - shift).rem_euclid(qi) != 0) {
            return Err(invariant("division by lambda left a non-integral element"));
        }
        let mut out = Integral {
            q: self.q,
            c: prod.into_iter().map(|v| (v - shift) / qi).collect(),
        };
        out.normalize();
        Ok(out)
    }
}

fn overflow() -> Error {
    Error::Unsupported("lambda-adic arithmetic exceeds 128 bits".into())
}

fn check_prime(q: i64) -> Result<()> {
    if !modular::is_prime(q) || q < 3 {
        return Err(Error::Unsupported(format!("lambda-adic expansion needs an odd prime, got {q}")));
    }
    Ok(())
}

/// Largest `v` with `λ^v | x`.
pub fn lambda_valuation(x: &CycloNum, q: i64) -> Result<Valuation> {
    let mut y = Integral::from_cyclo(x, q)?;
    if y.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let mut v = 0;
    while y.residue() == 0 {
        y = y.div_lambda()?;
        v += 1;
    }
    Ok(Valuation::Finite(v))
}

/// Digits `g_0, …, g_{N-1}` with `x ≡ Σ g_n λ^n (mod λ^N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaDigits {
    pub q: i64,
    pub digits: Vec<i64>,
}

impl LambdaDigits {
    /// `Σ g_n λ^n` as an element of Q(ξ_q).
    pub fn reconstruct(&self) -> CycloNum {
        let q = self.q as u64;
        let lambda = &CycloNum::one(q) - &CycloNum::root_of_unity(q, 1);
        let mut acc = CycloNum::zero(q);
        let mut power = CycloNum::one(q);
        for &g in &self.digits {
            acc = &acc + &power.scale(&BigRational::from_integer(g.into()));
            power = &power * &lambda;
        }
        acc
    }
}

fn digits_of(mut y: Integral, len: usize) -> Result<LambdaDigits> {
    let q = y.q;
    let mut digits = Vec::with_capacity(len);
    for _ in 0..len {
        let g = y.residue();
        digits.push(g);
        y.c[0] -= g as i128;
        y = y.div_lambda()?;
    }
    Ok(LambdaDigits { q, digits })
}

pub fn lambda_digits(x: &CycloNum, q: i64, len: usize) -> Result<LambdaDigits> {
    digits_of(Integral::from_cyclo(x, q)?, len)
}

/// `λ/(1 - ξ^k) = Σ_{j<k*} ξ^{kj}` with `k k* ≡ 1 (mod q)`.
fn lambda_over_one_minus(q: i64, k: i64, out: &mut RootSum, sign: i64, shift: i64) {
    let ks = modular::inverse(k, q).expect("k is a unit mod a prime");
    for j in 0..ks {
        out.add_root(shift + k * j, sign);
    }
}

fn rigidity_root_sum(q: i64, p: i64) -> Result<RootSum> {
    check_prime(q)?;
    if rem(p - 1, q) == 0 || rem(p + 1, q) == 0 || rem(p, q) == 0 {
        return Err(Error::Unsupported(format!("p = {p} must satisfy p ≢ 0, ±1 (mod {q})")));
    }
    let ps = modular::inverse(p, q).expect("prime modulus");
    let mut out = RootSum::new(q as u64);
    for pp in [rem(p, q), ps] {
        let shift = (q + 1) / 2 * pp;
        lambda_over_one_minus(q, rem(pp - 1, q), &mut out, 1, shift);
        lambda_over_one_minus(q, rem(pp + 1, q), &mut out, -1, shift);
    }
    Ok(out)
}

/// `(i/2)·λ·(I_q^{p;1} + I_q^{p*;1})`, written without `i` as
/// `Σ_{P ∈ {p, p*}} ξ^{(q+1)P/2} (λ/(1 - ξ^{P-1}) - λ/(1 - ξ^{P+1}))`.
pub fn rigidity_element(q: i64, p: i64) -> Result<CycloNum> {
    Ok(rigidity_root_sum(q, p)?.to_cyclo())
}

/// Digits of [`rigidity_element`].
pub fn rigidity_digits(q: i64, p: i64, len: usize) -> Result<LambdaDigits> {
    digits_of(Integral::from_root_sum(&rigidity_root_sum(q, p)?), len)
}

/// First `len` coefficients of `ξ^l λ/(1 - ξ^k) = (1-λ)^l / (k S(λ))`,
/// `S(λ) = Σ_j C(k-1, j) (-λ)^j / (j+1)`, as a formal series in `λ`.
pub fn root_quotient_coefficients(l: u64, k: u64, len: usize) -> Result<Vec<BigRational>> {
    if k == 0 {
        return Err(Error::Unsupported("k must be positive".into()));
    }
    let binom = |n: u64, r: u64| -> BigInt { crate::poly::binomial(n, r) };
    let sign = |j: usize| if j.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    let s: Vec<BigRational> = (0..len)
        .map(|j| BigRational::new(sign(j) * binom(k - 1, j as u64), BigInt::from(j + 1)))
        .collect();
    // 1/S by the recursion inv_n = -Σ_{j=1}^n s_j inv_{n-j}, s_0 = 1
    let mut inv: Vec<BigRational> = Vec::with_capacity(len);
    for n in 0..len {
        if n == 0 {
            inv.push(BigRational::one());
            continue;
        }
        let mut acc = BigRational::zero();
        for j in 1..=n {
            acc -= &s[j] * &inv[n - j];
        }
        inv.push(acc);
    }
    let k_inv = BigRational::new(BigInt::one(), BigInt::from(k));
    Ok((0..len)
        .map(|n| {
            let mut acc = BigRational::zero();
            for j in 0..=n.min(l as usize) {
                let a = BigRational::from_integer(sign(j) * binom(l, j as u64));
                acc += a * &inv[n - j];
            }
            acc * &k_inv
        })
        .collect())
}

/// `r mod q` for a q-integral rational, lifted to `{0, …, q-1}`.
pub fn reduce_mod(r: &BigRational, q: i64) -> Result<i64> {
    let qb = BigInt::from(q);
    let den = r.denom().mod_floor(&qb);
    if den.is_zero() {
        return Err(Error::NonIntegral(format!("{r} is not {q}-integral")));
    }
    let den_inv = modular::inverse(den.to_i64().expect("reduced"), q).expect("coprime");
    let num = r.numer().mod_floor(&qb).to_i64().expect("reduced");
    Ok(rem(num * den_inv, q))
}

/// `(1/24)(-2 + 3(q+1)^2 - (p+p*)(q+1)(q^2+2q-1)) mod q`.
pub fn g3_closed_form(q: i64, p: i64) -> Result<i64> {
    if q == 2 || q == 3 {
        return Err(Error::Unsupported(format!("1/24 is undefined modulo {q}")));
    }
    check_prime(q)?;
    if rem(p - 1, q) == 0 || rem(p + 1, q) == 0 {
        return Err(Error::Unsupported(format!("p = {p} must satisfy p ≢ ±1 (mod {q})")));
    }
    let ps = modular::inverse(p, q).ok_or(Error::NotCoprime { value: p, modulus: q })?;
    let qb = q as i128;
    let v = -2 + 3 * (qb + 1).pow(2) - (p as i128 + ps as i128) * (qb + 1) * (qb * qb + 2 * qb - 1);
    let v = v.rem_euclid(qb) as i64;
    let inv24 = modular::inverse(24, q).expect("q ≥ 5 prime");
    Ok(rem(v * inv24, q))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RigidityDecision {
    IsometricPlus,
    IsometricByInverse,
    Distinct,
}

/// Decides `p ≡ s` or `p ≡ s*` from the trace condition `p + p* ≡ s + s*`.
pub fn rigidity_decision(q: i64, p: i64, s: i64) -> Result<RigidityDecision> {
    check_prime(q)?;
    let ps = modular::inverse(p, q).ok_or(Error::NotCoprime { value: p, modulus: q })?;
    let ss = modular::inverse(s, q).ok_or(Error::NotCoprime { value: s, modulus: q })?;
    if rem(p + ps - s - ss, q) != 0 {
        return Ok(RigidityDecision::Distinct);
    }
    // p and p* are the two roots of X^2 - tX + 1 over F_q
    if rem(p - s, q) == 0 {
        Ok(RigidityDecision::IsometricPlus)
    } else if rem(p - ss, q) == 0 {
        Ok(RigidityDecision::IsometricByInverse)
    } else {
        Err(invariant(format!("equal traces mod {q} but {p} ∉ {{{s}, {ss}}}")))
    }
}

/// Whether `L(q; p)` and `L(q; s)` are forced to be +1-isometric by
/// isospectrality. For `q ≤ 7` there are at most two classes, one of them
/// homogeneous, so the decision is the isometry test itself; otherwise it
/// compares the third λ-adic digits.
pub fn spectral_rigidity(q: i64, p: i64, s: i64) -> Result<RigidityDecision> {
    let trivial = |x: i64| rem(x - 1, q) == 0 || rem(x + 1, q) == 0;
    if q <= 7 || trivial(p) || trivial(s) {
        let ps = modular::inverse(p, q).ok_or(Error::NotCoprime { value: p, modulus: q })?;
        return Ok(if rem(p - s, q) == 0 {
            RigidityDecision::IsometricPlus
        } else if rem(ps - s, q) == 0 {
            RigidityDecision::IsometricByInverse
        } else {
            RigidityDecision::Distinct
        });
    }
    let gp = rigidity_digits(q, p, 4)?.digits[3];
    let gs = rigidity_digits(q, s, 4)?.digits[3];
    if gp != gs {
        return Ok(RigidityDecision::Distinct);
    }
    rigidity_decision(q, p, s)
}
