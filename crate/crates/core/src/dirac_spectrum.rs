//! Dirac eigenvalue multiplicities of spin lens spaces.
//!
//! The eigenvalues on a lens space of dimension `n = 2m - 1` are
//! `±(n/2 + k)`, `k ≥ 0`, with multiplicities `m_k^±` encoded by the
//! generating functions
//!
//! ```text
//! F_±(z) = (1/q) Σ_{k=0}^{q-1} (A_k^± - z B_k^±) / Π_j (ξ_q^{k p_j} - z)(ξ_q^{-k p_j} - z)
//! ```
//!
//! where `A_k^±`, `B_k^±` are sums of `2^{m-1}` roots of unity `ξ_{2q}^{k W}`
//! over sign patterns (see [`character_numerator`]).
//!
//! Two exact routes to the Taylor coefficients are provided:
//!
//! * [`Method::Cyclotomic`] expands every summand as a power series over
//!   `Z[ξ_{2q}]`, sums over `k` and reduces the result to a rational.
//! * [`Method::CharacterCount`] swaps the order of summation. Every exponent
//!   is `k` times an even integer `W`, and `Σ_k ξ_{2q}^{kW} = q·[W ≡ 0 mod 2q]`,
//!   so each coefficient is a count of index tuples whose total weight
//!   vanishes modulo `2q`. This costs `O(m q K)` integer additions.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::cyclotomic::{self, CycloNum, RootSum};
use crate::error::{invariant, Error, Result};
use crate::lens_geometry::{Sign, SpinLensSpace};
use crate::modular::{self, rem};
use crate::poly;

/// `2^{⌊n/2⌋} · C(n + k - 1, k)`, the multiplicity of `±(n/2 + k)` on `S^n`.
pub fn sphere_multiplicity(n: u64, k: u64) -> Result<BigUint> {
    if n.is_multiple_of(2) {
        return Err(Error::Unsupported(format!("sphere dimension {n} must be odd")));
    }
    let mut c = BigUint::one();
    for i in 0..k {
        c = c * (n + i) / (i + 1);
    }
    Ok(c << (n / 2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
pub enum Method {
    Cyclotomic,
    #[default]
    CharacterCount,
}

/// Numerator `A - zB` of one summand: `constant = A`, `linear = -B`.
#[derive(Clone, Debug, PartialEq)]
pub struct NumeratorPair {
    pub constant: CycloNum,
    pub linear: CycloNum,
}

/// Root-of-unity exponents of the generating function of `s`, all in ξ_{2q}.
#[derive(Clone, Debug)]
struct Weights {
    q: i64,
    /// `W(e)` for the constant numerator of F_+ (sign patterns with Π ε = (-1)^{m+1}).
    odd_patterns: Vec<i64>,
    /// `W(e)` for the patterns with Π ε = (-1)^m.
    even_patterns: Vec<i64>,
    /// `±2 p_j`: the summand has the factor `1/(ξ_{2q}^{k a} - z)` for each.
    poles: Vec<i64>,
}

impl Weights {
    fn new(s: &SpinLensSpace) -> Self {
        let q = s.q();
        let reps = s.space().reps();
        let m = reps.len();
        let n = 2 * q;
        // odd q: exponent (q+1)·Σεp; even q: Σεp and the prefactor (-1)^{k(h+h_q^p)} = ξ_{2q}^{k q (h+h_q^p)}
        let (c, shift) = if q % 2 == 1 { (q + 1, 0) } else { (1, q * s.label_parity()) };
        let target = if m % 2 == 1 { 1 } else { -1 };
        let mut odd_patterns = Vec::new();
        let mut even_patterns = Vec::new();
        for bits in 0u32..1 << m {
            let mut prod = 1;
            let mut sum = 0i64;
            for (j, &p) in reps.iter().enumerate() {
                if bits >> j & 1 == 1 {
                    prod = -prod;
                    sum -= p;
                } else {
                    sum += p;
                }
            }
            let w = rem(c * rem(sum, n) + shift, n);
            if prod == target {
                odd_patterns.push(w);
            } else {
                even_patterns.push(w);
            }
        }
        let poles = reps
            .iter()
            .flat_map(|&p| [rem(2 * p, n), rem(-2 * p, n)])
            .collect();
        Weights { q, odd_patterns, even_patterns, poles }
    }

    fn numerators(&self, parity: Sign) -> (&[i64], &[i64]) {
        match parity {
            Sign::Plus => (&self.odd_patterns, &self.even_patterns),
            Sign::Minus => (&self.even_patterns, &self.odd_patterns),
        }
    }
}

/// The numerator of the `k`-th summand of `F_±`, in Q(ξ_{2q}).
pub fn character_numerator(s: &SpinLensSpace, k: i64, parity: Sign) -> NumeratorPair {
    let w = Weights::new(s);
    let n = 2 * w.q as u64;
    let (a, b) = w.numerators(parity);
    let mut constant = RootSum::new(n);
    let mut linear = RootSum::new(n);
    for &e in a {
        constant.add_root(k * e, 1);
    }
    for &e in b {
        linear.add_root(k * e, -1);
    }
    NumeratorPair {
        constant: constant.to_cyclo(),
        linear: linear.to_cyclo(),
    }
}

/// The first `K` multiplicities `m_k^±` of the eigenvalues `±(n/2 + k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityPrefix {
    pub n: usize,
    pub plus: Vec<u128>,
    pub minus: Vec<u128>,
}

impl MultiplicityPrefix {
    pub fn len(&self) -> usize {
        self.plus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_empty()
    }

    /// True iff the first `len` coefficients of `F_±` equal `F'_±`.
    pub fn same_spectrum(&self, other: &Self, len: usize) -> bool {
        self.plus[..len] == other.plus[..len] && self.minus[..len] == other.minus[..len]
    }

    /// True iff the first `len` coefficients of `F_±` equal `F'_∓`.
    pub fn reflected_spectrum(&self, other: &Self, len: usize) -> bool {
        self.plus[..len] == other.minus[..len] && self.minus[..len] == other.plus[..len]
    }

    fn check_bounds(&self) -> Result<()> {
        for k in 0..self.len() {
            let bound = sphere_multiplicity(self.n as u64, k as u64)?;
            for (label, v) in [("+", self.plus[k]), ("-", self.minus[k])] {
                if BigUint::from(v) > bound {
                    return Err(invariant(format!(
                        "m_{k}^{label} = {v} exceeds the sphere multiplicity {bound}"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn to_multiplicity(v: i128, k: usize, label: &str) -> Result<u128> {
    u128::try_from(v).map_err(|_| invariant(format!("m_{k}^{label} = {v} is negative")))
}

/// Multiplicities `m_0^±, …, m_{K-1}^±` of `s`.
pub fn multiplicity_prefix(s: &SpinLensSpace, len: usize, method: Method) -> Result<MultiplicityPrefix> {
    if len == 0 {
        return Err(Error::Unsupported("prefix length must be at least 1".into()));
    }
    let prefix = match method {
        Method::CharacterCount => character_count_prefix(s, len)?,
        Method::Cyclotomic => cyclotomic_prefix(s, len)?,
    };
    prefix.check_bounds()?;
    Ok(prefix)
}

/// `D[N][r]`: the number of `(n_1, …, n_{2m})` with `Σ n_i = N` and
/// `-Σ a_i (n_i + 1) ≡ r (mod 2q)`.
fn weight_counts(w: &Weights, len: usize) -> Result<Vec<Vec<u128>>> {
    let n = 2 * w.q as usize;
    let mut t = vec![vec![0u128; n]; len];
    t[0][0] = 1;
    let overflow = || Error::Unsupported("multiplicity exceeds 128-bit range".into());
    for &a in &w.poles {
        let shift = rem(-a, n as i64) as usize;
        let mut g = vec![vec![0u128; n]; len];
        // G_N[r + w] = T_N[r] + G_{N-1}[r]
        for big_n in 0..len {
            for r in 0..n {
                let mut v = t[big_n][r];
                if big_n > 0 {
                    v = v.checked_add(g[big_n - 1][r]).ok_or_else(overflow)?;
                }
                g[big_n][(r + shift) % n] = v;
            }
        }
        t = g;
    }
    Ok(t)
}

fn character_count_prefix(s: &SpinLensSpace, len: usize) -> Result<MultiplicityPrefix> {
    let w = Weights::new(s);
    let n = 2 * w.q;
    let d = weight_counts(&w, len)?;
    let coefficient = |parity: Sign, big_n: usize| -> Result<u128> {
        let (a, b) = w.numerators(parity);
        let mut v: i128 = 0;
        for &e in a {
            v += d[big_n][rem(-e, n) as usize] as i128;
        }
        if big_n > 0 {
            for &e in b {
                v -= d[big_n - 1][rem(-e, n) as usize] as i128;
            }
        }
        to_multiplicity(v, big_n, if parity == Sign::Plus { "+" } else { "-" })
    };
    let mut plus = Vec::with_capacity(len);
    let mut minus = Vec::with_capacity(len);
    for big_n in 0..len {
        plus.push(coefficient(Sign::Plus, big_n)?);
        minus.push(coefficient(Sign::Minus, big_n)?);
    }
    Ok(MultiplicityPrefix { n: 2 * s.m() - 1, plus, minus })
}

fn cyclotomic_prefix(s: &SpinLensSpace, len: usize) -> Result<MultiplicityPrefix> {
    let w = Weights::new(s);
    let q = w.q;
    let n = 2 * q as u64;
    let mut plus_total = vec![RootSum::new(n); len];
    let mut minus_total = vec![RootSum::new(n); len];
    for k in 0..q {
        // 1/(ξ^b - z) = Σ_N ξ^{-b(N+1)} z^N, so G_N = ξ^{-b}(S_N + G_{N-1})
        let mut series = vec![RootSum::new(n); len];
        series[0].add_root(0, 1);
        for &a in &w.poles {
            let b = k * a;
            let mut next: Vec<RootSum> = Vec::with_capacity(len);
            for big_n in 0..len {
                let mut acc = RootSum::new(n);
                acc.add_rotated_scaled(&series[big_n], -b, 1);
                if big_n > 0 {
                    acc.add_rotated_scaled(&next[big_n - 1], -b, 1);
                }
                next.push(acc);
            }
            series = next;
        }
        for (parity, total) in [(Sign::Plus, &mut plus_total), (Sign::Minus, &mut minus_total)] {
            let (a, b) = w.numerators(parity);
            for big_n in 0..len {
                for &e in a {
                    total[big_n].add_rotated_scaled(&series[big_n], k * e, 1);
                }
                if big_n > 0 {
                    for &e in b {
                        total[big_n].add_rotated_scaled(&series[big_n - 1], k * e, -1);
                    }
                }
            }
        }
    }
    let extract = |total: &[RootSum], label: &str| -> Result<Vec<u128>> {
        total
            .iter()
            .enumerate()
            .map(|(big_n, t)| {
                let value = t.to_cyclo_scaled(q).to_rational().map_err(|_| {
                    invariant(format!("m_{big_n}^{label} is not rational"))
                })?;
                if !value.is_integer() {
                    return Err(invariant(format!("m_{big_n}^{label} = {value} is not an integer")));
                }
                let v = value.to_integer().to_i128().ok_or_else(|| invariant("multiplicity overflow"))?;
                to_multiplicity(v, big_n, label)
            })
            .collect()
    };
    Ok(MultiplicityPrefix {
        n: 2 * s.m() - 1,
        plus: extract(&plus_total, "+")?,
        minus: extract(&minus_total, "-")?,
    })
}

/// Prefix length that decides isospectrality: `F_± = P/(1 - z^q)^{2m}` with
/// `deg P < 2mq`, so two such functions agreeing in their first `2mq`
/// Taylor coefficients have numerators congruent mod `z^{2mq}`, hence equal.
/// One extra coefficient is kept as margin.
pub fn certification_bound(q: i64, m: usize) -> usize {
    2 * m * q as usize + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PrefixMode {
    Quick(usize),
    Certified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IsospectralVerdict {
    /// `F_± = F'_±`.
    pub plus_one: bool,
    /// `F_± = F'_∓`.
    pub minus_one: bool,
    pub certified: bool,
}

impl IsospectralVerdict {
    pub fn holds(&self, eps: Sign) -> bool {
        match eps {
            Sign::Plus => self.plus_one,
            Sign::Minus => self.minus_one,
        }
    }
}

/// Verdict from two already computed prefixes of spaces with the same `q` and `m`.
pub fn compare_prefixes(a: &MultiplicityPrefix, b: &MultiplicityPrefix, certified_len: usize) -> IsospectralVerdict {
    let len = a.len().min(b.len());
    IsospectralVerdict {
        plus_one: a.same_spectrum(b, len),
        minus_one: a.reflected_spectrum(b, len),
        certified: len >= certified_len,
    }
}

pub fn certify_isospectral(a: &SpinLensSpace, b: &SpinLensSpace, mode: PrefixMode) -> Result<IsospectralVerdict> {
    // dimension and volume are spectral invariants
    if a.q() != b.q() || a.m() != b.m() {
        return Ok(IsospectralVerdict { plus_one: false, minus_one: false, certified: true });
    }
    let bound = certification_bound(a.q(), a.m());
    let len = match mode {
        PrefixMode::Quick(len) => len,
        PrefixMode::Certified => bound,
    };
    let pa = multiplicity_prefix(a, len, Method::CharacterCount)?;
    let pb = multiplicity_prefix(b, len, Method::CharacterCount)?;
    Ok(compare_prefixes(&pa, &pb, bound))
}

/// Pole data of `F_±` at one root of unity `ξ_q^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootPole {
    pub k: i64,
    pub plus: usize,
    pub minus: usize,
}

/// `F_± = P_±(z) / (1 - z^q)^{2m}` assembled exactly, with derived pole data.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PoleDiagnostics {
    pub q: i64,
    pub m: usize,
    #[serde(skip)]
    pub numerator_plus: Vec<BigInt>,
    #[serde(skip)]
    pub numerator_minus: Vec<BigInt>,
    /// One entry per `k = 0, …, q-1`.
    pub pole_orders: Vec<RootPole>,
    /// `(F_+(0), F_-(0))`.
    pub value_at_zero: (u128, u128),
    /// `lim_{z→1} (1 - z)^{2m-1} F_±(z)`.
    #[serde(serialize_with = "serialize_rational_pair")]
    pub limit_at_one: (Option<BigRational>, Option<BigRational>),
    /// `lim_{z→-1} (1 + z)^{2m-1} F_±(z)`, for even `q`.
    #[serde(serialize_with = "serialize_rational_pair")]
    pub limit_at_minus_one: (Option<BigRational>, Option<BigRational>),
}

fn serialize_rational_pair<S: serde::Serializer>(
    v: &(Option<BigRational>, Option<BigRational>),
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize as _;
    let f = |x: &Option<BigRational>| x.as_ref().map(ToString::to_string);
    (f(&v.0), f(&v.1)).serialize(ser)
}

impl PoleDiagnostics {
    pub fn numerator(&self, parity: Sign) -> &[BigInt] {
        match parity {
            Sign::Plus => &self.numerator_plus,
            Sign::Minus => &self.numerator_minus,
        }
    }

    pub fn pole_order(&self, parity: Sign, k: i64) -> usize {
        let e = &self.pole_orders[rem(k, self.q) as usize];
        match parity {
            Sign::Plus => e.plus,
            Sign::Minus => e.minus,
        }
    }
}

/// `(1 - z^q)^{2m}` as a dense polynomial.
pub(crate) fn denominator_poly(q: i64, m: usize) -> Vec<BigInt> {
    let e = 2 * m as u64;
    let mut out = vec![BigInt::zero(); e as usize * q as usize + 1];
    for j in 0..=e {
        let c = poly::binomial(e, j);
        out[j as usize * q as usize] = if j % 2 == 0 { c } else { -c };
    }
    out
}

/// `P_±` such that `F_± = P_± / (1 - z^q)^{2m}`, checked to be proper.
pub(crate) fn assemble_numerators(s: &SpinLensSpace) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let q = s.q();
    let m = s.m();
    let deg = 2 * m * q as usize;
    let len = deg + q as usize + 1;
    let prefix = multiplicity_prefix(s, len, Method::CharacterCount)?;
    let den = denominator_poly(q, m);
    let assemble = |coeffs: &[u128], label: &str| -> Result<Vec<BigInt>> {
        let series: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        let mut product = poly::mul(&series, &den);
        product.resize(len, BigInt::zero());
        if product[deg..len].iter().any(|c| !c.is_zero()) {
            return Err(invariant(format!(
                "F_{label} of {s} is not P/(1 - z^q)^{{2m}} with deg P < 2mq"
            )));
        }
        product.truncate(deg);
        Ok(poly::trim(product))
    };
    Ok((assemble(&prefix.plus, "+")?, assemble(&prefix.minus, "-")?))
}

/// `lim_{z→ζ} (1 - z/ζ)^{2m-1} F(z)` for `ζ = ±1`; `None` if the pole has order `2m`.
fn limit_at(p: &[BigInt], q: i64, m: usize, zeta: i64) -> Option<BigRational> {
    // 1 - z^q = (1 - z/ζ)·g(z) with g(ζ) = q
    let (quot, r) = poly::divrem_monic(p, &[-zeta, 1]);
    if !r.is_empty() {
        return None;
    }
    let value = poly::eval_rational(&quot, &BigRational::from_integer(zeta.into()));
    // P = (z - ζ)·quot = -ζ(1 - z/ζ)·quot
    let scale = BigRational::from_integer(BigInt::from(q).pow(2 * m as u32));
    Some(-value * BigRational::from_integer(zeta.into()) / scale)
}

pub fn pole_diagnostics(s: &SpinLensSpace) -> Result<PoleDiagnostics> {
    let q = s.q();
    let m = s.m();
    let (plus, minus) = assemble_numerators(s)?;
    let order_at = |p: &[BigInt], d: u64| -> usize {
        let v = poly::valuation(p, &cyclotomic::phi_poly(d)).unwrap_or(usize::MAX);
        (2 * m).saturating_sub(v)
    };
    let mut by_divisor = std::collections::HashMap::new();
    for d in modular::divisors(q as u64) {
        by_divisor.insert(d, (order_at(&plus, d), order_at(&minus, d)));
    }
    let pole_orders = (0..q)
        .map(|k| {
            let d = (q / modular::gcd(k, q)) as u64;
            let (p, mi) = by_divisor[&d];
            RootPole { k, plus: p, minus: mi }
        })
        .collect();
    let at_zero = |p: &[BigInt]| p.first().map_or(0, |c| c.to_u128().unwrap_or(0));
    let limit_at_minus_one = if q % 2 == 0 {
        (limit_at(&plus, q, m, -1), limit_at(&minus, q, m, -1))
    } else {
        (None, None)
    };
    Ok(PoleDiagnostics {
        q,
        m,
        value_at_zero: (at_zero(&plus), at_zero(&minus)),
        limit_at_one: (limit_at(&plus, q, m, 1), limit_at(&minus, q, m, 1)),
        limit_at_minus_one,
        pole_orders,
        numerator_plus: plus,
        numerator_minus: minus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lens_geometry::LensSpace;

    fn s3(q: i64, p: i64, h: u8) -> SpinLensSpace {
        SpinLensSpace::three_dim(q, p, h).unwrap()
    }

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn sphere_multiplicities() {
        let v: Vec<u64> = (0..3).map(|k| sphere_multiplicity(3, k).unwrap().to_u64().unwrap()).collect();
        assert_eq!(v, vec![2, 6, 12]);
        assert_eq!(sphere_multiplicity(5, 1).unwrap(), BigUint::from(20u32));
        assert!(sphere_multiplicity(4, 1).is_err());
    }

    #[test]
    fn numerator_examples() {
        let s = s3(7, 2, 0);
        let n0 = character_numerator(&s, 0, Sign::Plus);
        assert_eq!(n0.constant, CycloNum::from_int(14, 2));
        assert_eq!(n0.linear, CycloNum::from_int(14, -2));
        // q = 7, p = (1, 2), k = 1: A = ξ_14^{8·(1-2)} + ξ_14^{8·(2-1)} = 2 cos(8π/7)
        let n1 = character_numerator(&s, 1, Sign::Plus);
        assert!((n1.constant.embed().re - 2.0 * (8.0 * std::f64::consts::PI / 7.0).cos()).abs() < 1e-12);
        assert!(n1.constant.embed().im.abs() < 1e-12);
        let b = -2.0 * (8.0 * 3.0 * std::f64::consts::PI / 7.0).cos();
        assert!((n1.linear.embed().re - b).abs() < 1e-12);
        for k in 0..8 {
            for parity in Sign::BOTH {
                let a = character_numerator(&s3(8, 3, 0), k, parity);
                let b = character_numerator(&s3(8, 3, 1), k, parity);
                let sign = CycloNum::from_int(16, if k % 2 == 0 { 1 } else { -1 });
                assert_eq!(b.constant, &a.constant * &sign);
                assert_eq!(b.linear, &a.linear * &sign);
            }
        }
    }

    #[test]
    fn rp3_closed_form() {
        let p0 = multiplicity_prefix(&s3(2, 1, 0), 3, Method::Cyclotomic).unwrap();
        assert_eq!(p0.plus, vec![2, 0, 12]);
        assert_eq!(&p0.minus[..2], &[0, 6]);
        let p1 = multiplicity_prefix(&s3(2, 1, 1), 3, Method::CharacterCount).unwrap();
        assert_eq!(p1.plus, p0.minus);
        assert_eq!(p1.minus, p0.plus);
    }

    #[test]
    fn lowest_eigenvalue() {
        for q in [3, 5, 9, 25] {
            let p = multiplicity_prefix(&s3(q, 1, 0), 1, Method::Cyclotomic).unwrap();
            assert_eq!((p.plus[0], p.minus[0]), (2, 0));
        }
        for q in [4, 6, 10] {
            let p = multiplicity_prefix(&s3(q, 1, 1), 1, Method::Cyclotomic).unwrap();
            assert_eq!((p.plus[0], p.minus[0]), (0, 0));
        }
        // q = 2: τ_1 is the orientation reverse of τ_0
        let p = multiplicity_prefix(&s3(2, 1, 1), 1, Method::Cyclotomic).unwrap();
        assert_eq!((p.plus[0], p.minus[0]), (0, 2));
    }

    #[test]
    fn methods_agree() {
        for (q, p) in [(5, 2), (7, 3), (8, 3), (12, 5), (25, 7), (6, 1)] {
            for h in 0..2 {
                let s = s3(q, p, h);
                let a = multiplicity_prefix(&s, 30, Method::Cyclotomic).unwrap();
                let b = multiplicity_prefix(&s, 30, Method::CharacterCount).unwrap();
                assert_eq!(a, b, "{s}");
            }
        }
        let s = SpinLensSpace::new(LensSpace::new(5, vec![1, 2, 3]).unwrap(), None).unwrap();
        assert_eq!(
            multiplicity_prefix(&s, 12, Method::Cyclotomic).unwrap(),
            multiplicity_prefix(&s, 12, Method::CharacterCount).unwrap()
        );
    }

    #[test]
    fn sphere_fixture() {
        for m in 1..=4 {
            let s = SpinLensSpace::new(LensSpace::new(1, vec![1; m]).unwrap(), None).unwrap();
            for method in [Method::Cyclotomic, Method::CharacterCount] {
                let pre = multiplicity_prefix(&s, 30, method).unwrap();
                for k in 0..30 {
                    let expected = sphere_multiplicity(2 * m as u64 - 1, k as u64).unwrap();
                    assert_eq!(BigUint::from(pre.plus[k]), expected);
                    assert_eq!(BigUint::from(pre.minus[k]), expected);
                }
            }
        }
    }

    #[test]
    fn certification_examples() {
        let s = s3(11, 3, 0);
        let v = certify_isospectral(&s, &s, PrefixMode::Certified).unwrap();
        assert!(v.plus_one && v.certified);
        assert!(certify_isospectral(&s3(17, 4, 0), &s3(17, 4, 0), PrefixMode::Certified).unwrap().minus_one);
        for q in [5, 7, 9, 11] {
            for p in modular::units(q) {
                let v = certify_isospectral(&s3(q, p, 0), &s3(q, q - p, 0), PrefixMode::Certified).unwrap();
                assert!(v.minus_one);
            }
        }
        let v = certify_isospectral(&s3(11, 2, 0), &s3(11, 3, 0), PrefixMode::Certified).unwrap();
        assert!(!v.plus_one && !v.minus_one);
        let v = certify_isospectral(&s3(11, 2, 0), &s3(13, 2, 0), PrefixMode::Quick(5)).unwrap();
        assert!(!v.plus_one && v.certified);
        assert!(!certify_isospectral(&s, &s, PrefixMode::Quick(5)).unwrap().certified);
    }

    #[test]
    fn homogeneous_pole_orders() {
        for q in [3, 5, 9, 15] {
            let d = pole_diagnostics(&s3(q, 1, 0)).unwrap();
            assert_eq!(d.pole_order(Sign::Plus, 0), 3);
            assert_eq!(d.value_at_zero, (2, 0));
            assert_eq!(d.limit_at_one.0, Some(rat(2, q)));
        }
        let m3 = SpinLensSpace::new(LensSpace::new(5, vec![1, 1, 1, 1]).unwrap(), None).unwrap();
        assert_eq!(pole_diagnostics(&m3).unwrap().pole_order(Sign::Plus, 0), 7);
    }

    #[test]
    fn even_q_limit_at_minus_one() {
        // the k = q/2 summand is (-1)^{q/2}·2/(q(1+z)^3) for F_+ and its negative for F_-
        for q in [4, 6, 8, 10, 12, 14] {
            let d = pole_diagnostics(&s3(q, 1, 1)).unwrap();
            let sign = if q % 4 == 0 { 1 } else { -1 };
            assert_eq!(d.limit_at_minus_one, (Some(rat(2 * sign, q)), Some(rat(-2 * sign, q))));
            assert_eq!(d.value_at_zero, (0, 0));
            let d0 = pole_diagnostics(&s3(q, 1, 0)).unwrap();
            assert_eq!(d0.limit_at_minus_one.0, Some(rat(2, q)));
        }
        // F_+ = 1/(1-z)^3 - 1/(1+z)^3 on RP^3 with τ_1
        let d = pole_diagnostics(&s3(2, 1, 1)).unwrap();
        assert_eq!(d.limit_at_minus_one, (Some(rat(-1, 1)), Some(rat(1, 1))));
        assert_eq!(d.limit_at_one, (Some(rat(1, 1)), Some(rat(1, 1))));
    }

    #[test]
    fn non_homogeneous_pole_orders_drop() {
        let homogeneous = pole_diagnostics(&s3(25, 1, 0)).unwrap();
        let generic = pole_diagnostics(&s3(25, 7, 0)).unwrap();
        for parity in Sign::BOTH {
            let drop = (1..25).any(|k| generic.pole_order(parity, k) < homogeneous.pole_order(parity, k));
            assert!(drop);
            assert!((1..25).all(|k| generic.pole_order(parity, k) <= 2));
        }
    }

    #[test]
    fn assembled_function_reproduces_prefix() {
        let s = s3(9, 2, 0);
        let (plus, _) = assemble_numerators(&s).unwrap();
        let d = pole_diagnostics(&s).unwrap();
        assert_eq!(d.numerator(Sign::Plus), plus.as_slice());
        // expand P/(1 - z^q)^{2m} via (1 - z^9)^{-4} = Σ C(j+3, 3) z^{9j}
        let len = 60;
        let mut series = vec![BigInt::zero(); len];
        for (i, c) in plus.iter().enumerate() {
            for j in 0..len {
                if i + 9 * j < len {
                    series[i + 9 * j] += c * poly::binomial(j as u64 + 3, 3);
                }
            }
        }
        let pre = multiplicity_prefix(&s, len, Method::CharacterCount).unwrap();
        let expected: Vec<BigInt> = pre.plus.iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(series, expected);
    }
}
