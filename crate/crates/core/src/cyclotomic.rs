//! Exact arithmetic in cyclotomic fields Q(ξ_n).
//!
//! Elements are stored as polynomials in ξ_n of degree < φ(n), i.e. reduced
//! modulo the n-th cyclotomic polynomial Φ_n. This makes the representation
//! canonical, so field equality is coefficient equality.
//!
//! [`RootSum`] is the unreduced companion: an integer combination of n-th
//! roots of unity, stored modulo X^n - 1. Multiplying by a root of unity is a
//! rotation there, which is what the hot loops of the spectral code need.
//! Reducing a `RootSum` modulo Φ_n is the ring map Z[C_n] -> Z[ξ_n].

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::modular;

/// The n-th cyclotomic polynomial, coefficients in ascending degree.
pub fn cyclotomic_polynomial(n: u64) -> Result<Vec<BigInt>> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    Ok(phi_poly(n).iter().map(|&c| BigInt::from(c)).collect())
}

fn phi_cache() -> &'static RwLock<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Φ_n with machine-integer coefficients, memoised.
pub(crate) fn phi_poly(n: u64) -> Arc<Vec<i64>> {
    assert!(n > 0, "cyclotomic order must be positive");
    if let Some(p) = phi_cache().read().unwrap().get(&n) {
        return p.clone();
    }
    let p = Arc::new(compute_phi(n));
    phi_cache().write().unwrap().insert(n, p.clone());
    p
}

// Φ_n = Π_{d | n} (X^d - 1)^{μ(n/d)}: all multiplications first, then the
// exact divisions by X^d - 1.
fn compute_phi(n: u64) -> Vec<i64> {
    let divs = modular::divisors(n);
    let mut poly: Vec<i128> = vec![1];
    for &d in &divs {
        if modular::mobius(n / d) == 1 {
            let d = d as usize;
            let mut next = vec![0i128; poly.len() + d];
            for (i, &c) in poly.iter().enumerate() {
                next[i + d] += c;
                next[i] -= c;
            }
            poly = next;
        }
    }
    for &d in &divs {
        if modular::mobius(n / d) == -1 {
            let d = d as usize;
            // P = Q (X^d - 1)  =>  Q_i = Q_{i-d} - P_i
            let qlen = poly.len() - d;
            let mut quot = vec![0i128; qlen];
            for i in 0..qlen {
                let prev = if i >= d { quot[i - d] } else { 0 };
                quot[i] = prev - poly[i];
            }
            poly = quot;
        }
    }
    poly.into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect()
}

/// Degree of Φ_n.
pub fn degree(n: u64) -> usize {
    modular::euler_phi(n) as usize
}

/// An element of Q(ξ_n) with exact rational coefficients.
#[derive(Clone, Debug)]
pub struct CycloNum {
    order: u64,
    coeffs: Vec<BigRational>,
}

impl CycloNum {
    pub fn zero(order: u64) -> Self {
        assert!(order > 0, "cyclotomic order must be positive");
        CycloNum {
            order,
            coeffs: vec![BigRational::zero(); degree(order)],
        }
    }

    pub fn one(order: u64) -> Self {
        Self::from_rational(order, BigRational::one())
    }

    pub fn from_rational(order: u64, r: BigRational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(order: u64, v: i64) -> Self {
        Self::from_rational(order, BigRational::from_integer(v.into()))
    }

    /// ξ_n^e.
    pub fn root_of_unity(order: u64, e: i64) -> Self {
        let mut rs = RootSum::new(order);
        rs.add_root(e, 1);
        rs.to_cyclo()
    }

    /// Reduces an arbitrary polynomial in ξ_n (ascending coefficients).
    pub fn from_poly(order: u64, poly: &[BigRational]) -> Self {
        assert!(order > 0, "cyclotomic order must be positive");
        let n = order as usize;
        let mut folded = vec![BigRational::zero(); n];
        for (i, c) in poly.iter().enumerate() {
            if !c.is_zero() {
                folded[i % n] += c;
            }
        }
        CycloNum {
            order,
            coeffs: reduce_rational(order, folded),
        }
    }

    /// Builds Σ c_e ξ_n^e from (exponent, coefficient) pairs.
    pub fn from_terms<I>(order: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let n = order as i64;
        let mut folded = vec![BigRational::zero(); order as usize];
        for (e, c) in terms {
            folded[modular::rem(e, n) as usize] += c;
        }
        CycloNum {
            order,
            coeffs: reduce_rational(order, folded),
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Canonical coefficients with respect to 1, ξ_n, …, ξ_n^{φ(n)-1}.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True when every coefficient is an integer, i.e. the element lies in Z[ξ_n].
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Re-expresses the element in Q(ξ_m) for a multiple m of the order.
    pub fn promote(&self, m: u64) -> Self {
        assert!(m.is_multiple_of(self.order), "{} does not divide {}", self.order, m);
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as i64;
        CycloNum::from_terms(
            m,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (j as i64 * step, c.clone())),
        )
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let l = modular::lcm(a.order, b.order);
        (a.promote(l), b.promote(l))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycloNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Field inverse via the extended Euclidean algorithm against Φ_n.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero(self.order));
        }
        let phi: Vec<BigRational> = phi_poly(self.order)
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        let a = trim(self.coeffs.clone());
        let s = poly_inverse_mod(&a, &phi);
        Ok(CycloNum::from_poly(self.order, &s))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let (a, b) = Self::common(self, other);
        Ok(&a * &b.inv()?)
    }

    /// The automorphism ξ_n ↦ ξ_n^t.
    pub fn galois(&self, t: i64) -> Result<Self> {
        let n = self.order as i64;
        if modular::gcd(t, n) != 1 {
            return Err(Error::NotCoprime { value: t, modulus: n });
        }
        Ok(CycloNum::from_terms(
            self.order,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (j as i64 * t, c.clone())),
        ))
    }

    /// Complex conjugation, the automorphism ξ ↦ ξ^{-1}.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is a unit")
    }

    /// Numerical value under ξ_n ↦ e^{2πi/n}. Only ever used as a cross-check.
    pub fn embed(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let angle = 2.0 * std::f64::consts::PI * j as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), angle)
            })
            .sum()
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Result<BigRational> {
        if self.is_rational() {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NotRational(self.order))
        }
    }

    /// Integer coefficient vector, if the element lies in Z[ξ_n].
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn from_integer_coeffs(order: u64, coeffs: &[BigInt]) -> Self {
        let poly: Vec<BigRational> = coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        CycloNum::from_poly(order, &poly)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = CycloNum::one(self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloNum {}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let mag = c.abs();
            match j {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => write!(f, "ξ{}^{}", self.order, j)?,
                _ => write!(f, "{mag}·ξ{}^{}", self.order, j)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        let (a, b) = CycloNum::common(self, rhs);
        CycloNum {
            order: a.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        let (a, b) = CycloNum::common(self, rhs);
        CycloNum {
            order: a.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        let (a, b) = CycloNum::common(self, rhs);
        let order = a.order;
        // Clear denominators so the convolution runs over the integers.
        let (an, ad) = clear_denominators(&a.coeffs);
        let (bn, bd) = clear_denominators(&b.coeffs);
        let n = order as usize;
        let mut prod = vec![BigInt::zero(); n];
        for (i, x) in an.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in bn.iter().enumerate() {
                if !y.is_zero() {
                    prod[(i + j) % n] += x * y;
                }
            }
        }
        let reduced = reduce_integer(order, prod);
        let denom = ad * bd;
        CycloNum {
            order,
            coeffs: reduced
                .into_iter()
                .map(|c| BigRational::new(c, denom.clone()))
                .collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

fn clear_denominators(coeffs: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let denom = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = coeffs
        .iter()
        .map(|c| c.numer() * (&denom / c.denom()))
        .collect();
    (nums, denom)
}

/// Reduces a vector indexed modulo n by the monic Φ_n, from the top down.
fn reduce_integer(order: u64, mut v: Vec<BigInt>) -> Vec<BigInt> {
    let phi = phi_poly(order);
    let d = phi.len() - 1;
    for i in (d..v.len()).rev() {
        if v[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut v[i]);
        for (j, &pj) in phi[..d].iter().enumerate() {
            if pj != 0 {
                v[i - d + j] -= &c * pj;
            }
        }
    }
    v.truncate(d);
    v
}

fn reduce_rational(order: u64, v: Vec<BigRational>) -> Vec<BigRational> {
    let (nums, denom) = clear_denominators(&v);
    reduce_integer(order, nums)
        .into_iter()
        .map(|c| BigRational::new(c, denom.clone()))
        .collect()
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    r.truncate(db.max(1));
    (q, trim(r))
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect()
}

// s with a·s ≡ 1 (mod m), assuming gcd(a, m) = 1 and a ≠ 0.
fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    let (mut r0, mut r1) = (trim(m.to_vec()), trim(a.to_vec()));
    let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = trim(poly_sub(&s0, &poly_mul(&q, &s1)));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is the (constant) gcd.
    assert!(r0.len() == 1, "inverse requested for a non-unit");
    let g = r0[0].clone();
    s0.into_iter().map(|c| c / &g).collect()
}

/// An integer combination Σ c_e ξ_n^e of n-th roots of unity, stored modulo X^n - 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSum {
    order: u64,
    counts: Vec<i64>,
}

impl RootSum {
    pub fn new(order: u64) -> Self {
        assert!(order > 0, "cyclotomic order must be positive");
        RootSum {
            order,
            counts: vec![0; order as usize],
        }
    }

    pub fn from_counts(order: u64, counts: Vec<i64>) -> Self {
        assert_eq!(counts.len() as u64, order);
        RootSum { order, counts }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    fn idx(&self, e: i64) -> usize {
        modular::rem(e, self.order as i64) as usize
    }

    pub fn add_root(&mut self, e: i64, c: i64) {
        let i = self.idx(e);
        self.counts[i] += c;
    }

    /// Multiplication by ξ_n^e.
    pub fn rotated(&self, e: i64) -> Self {
        let n = self.order as usize;
        let s = self.idx(e);
        let mut counts = vec![0; n];
        for (i, &c) in self.counts.iter().enumerate() {
            counts[(i + s) % n] = c;
        }
        RootSum { order: self.order, counts }
    }

    pub fn add_assign_scaled(&mut self, other: &RootSum, c: i64) {
        assert_eq!(self.order, other.order);
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += c * b;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    /// `self += c · ξ^e · other`.
    pub fn add_rotated_scaled(&mut self, other: &RootSum, e: i64, c: i64) {
        assert_eq!(self.order, other.order);
        let n = self.order as usize;
        let s = self.idx(e);
        for (i, &b) in other.counts.iter().enumerate() {
            if b != 0 {
                self.counts[(i + s) % n] += c * b;
            }
        }
    }

    /// Convolution in Z[C_n].
    pub fn mul(&self, other: &RootSum) -> RootSum {
        assert_eq!(self.order, other.order);
        let n = self.order as usize;
        let mut counts = vec![0i64; n];
        for (i, &a) in self.counts.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.counts.iter().enumerate() {
                if b != 0 {
                    counts[(i + j) % n] += a * b;
                }
            }
        }
        RootSum { order: self.order, counts }
    }

    /// Convolution in Z[C_n], or `None` on overflow.
    pub fn checked_mul(&self, other: &RootSum) -> Option<RootSum> {
        assert_eq!(self.order, other.order);
        let n = self.order as usize;
        let mut counts = vec![0i64; n];
        for (i, &a) in self.counts.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.counts.iter().enumerate() {
                if b != 0 {
                    let slot = &mut counts[(i + j) % n];
                    *slot = slot.checked_add(a.checked_mul(b)?)?;
                }
            }
        }
        Some(RootSum { order: self.order, counts })
    }

    /// Applies ξ ↦ ξ^t.
    pub fn galois(&self, t: i64) -> RootSum {
        let mut out = RootSum::new(self.order);
        for (i, &c) in self.counts.iter().enumerate() {
            if c != 0 {
                out.add_root(i as i64 * t, c);
            }
        }
        out
    }

    /// Lifts into Z[C_m] for a multiple m of the order.
    pub fn promote(&self, m: u64) -> RootSum {
        assert!(m.is_multiple_of(self.order));
        let step = (m / self.order) as i64;
        let mut out = RootSum::new(m);
        for (i, &c) in self.counts.iter().enumerate() {
            if c != 0 {
                out.add_root(i as i64 * step, c);
            }
        }
        out
    }

    /// Canonical integer coefficients modulo Φ_n (length φ(n)).
    pub fn reduce(&self) -> Vec<i64> {
        let phi = phi_poly(self.order);
        let d = phi.len() - 1;
        let mut v: Vec<i128> = self.counts.iter().map(|&c| c as i128).collect();
        for i in (d..v.len()).rev() {
            let c = v[i];
            if c == 0 {
                continue;
            }
            v[i] = 0;
            for (j, &pj) in phi[..d].iter().enumerate() {
                if pj != 0 {
                    v[i - d + j] -= c * pj as i128;
                }
            }
        }
        v.truncate(d);
        v.into_iter()
            .map(|c| i64::try_from(c).expect("root sum coefficient overflow"))
            .collect()
    }

    pub fn to_cyclo(&self) -> CycloNum {
        CycloNum {
            order: self.order,
            coeffs: self
                .reduce()
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        }
    }

    /// The field element (1/denominator)·Σ c_e ξ^e.
    pub fn to_cyclo_scaled(&self, denominator: i64) -> CycloNum {
        let d = BigInt::from(denominator);
        CycloNum {
            order: self.order,
            coeffs: self
                .reduce()
                .into_iter()
                .map(|c| BigRational::new(c.into(), d.clone()))
                .collect(),
        }
    }
}

/// (1/q)-free expansion of 1/(1 - ζ) for ζ = ξ_n^e ≠ 1:
/// with d the order of ζ, 1/(1 - ζ) = -(1/d) Σ_{j<d} j ζ^j.
/// Returns the root sum Σ_{j<d} (-j·n/d) ζ^j, to be divided by n.
pub fn inverse_one_minus_root_scaled(n: u64, e: i64) -> Option<RootSum> {
    let ni = n as i64;
    let e = modular::rem(e, ni);
    if e == 0 {
        return None;
    }
    let d = ni / modular::gcd(e, ni);
    let scale = ni / d;
    let mut rs = RootSum::new(n);
    for j in 1..d {
        rs.add_root(j * e, -j * scale);
    }
    Some(rs)
}
