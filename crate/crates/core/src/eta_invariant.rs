//! Exact η-invariants of spin lens spaces of dimension `2m - 1 ≡ 3 (mod 4)`.
//!
//! ```text
//! q odd:  η = (-1)^{m/2+1} / (q 2^m) · Σ_{k=1}^{q-1} Π_j csc((q+1) k p_j π / q)
//! q even: η = (-1)^{m/2+1} / (q 2^m) · Σ_{k=1}^{q-1} (-1)^{k(h + h')} Π_j csc(k p_j π / q)
//! ```
//!
//! where `h'` depends on the [`EtaVariant`]. Each cosecant is exact via
//! `csc x = 2i e^{-ix} / (1 - e^{-2ix})`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{inverse_one_minus_root_scaled, CycloNum, RootSum};
use crate::error::{invariant, Error, Result};
use crate::lens_geometry::SpinLensSpace;
use crate::modular::{lcm, rem};

/// Which representative-dependent integer enters the even-q sign.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EtaVariant {
    /// `h_q^p` of the pinned representatives.
    #[default]
    Unstarred,
    /// `h_q^{p*}` with `p*` the least positive inverses, so always 0.
    Starred,
}

impl fmt::Display for EtaVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EtaVariant::Unstarred => "unstarred",
            EtaVariant::Starred => "starred",
        })
    }
}

impl FromStr for EtaVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unstarred" => Ok(EtaVariant::Unstarred),
            "starred" => Ok(EtaVariant::Starred),
            other => Err(Error::Unsupported(format!("unknown eta variant {other:?}"))),
        }
    }
}

/// `N · csc(aπ/q)` as a root sum of order `n` (a multiple of 4 and `2q`).
fn csc_scaled(a: i64, q: i64, n: u64) -> Result<RootSum> {
    let ni = n as i64;
    let inv = inverse_one_minus_root_scaled(n, -a * (ni / q)).ok_or(Error::Pole { func: "csc", a, q })?;
    let mut out = RootSum::new(n);
    out.add_rotated_scaled(&inv, ni / 4 - a * (ni / (2 * q)), 2);
    Ok(out)
}

/// `csc(aπ/q)` exactly, in Q(ξ_{lcm(4, 2q)}).
pub fn csc_exact(a: i64, q: i64) -> Result<CycloNum> {
    let n = lcm(4, 2 * q as u64);
    Ok(csc_scaled(a, q, n)?.to_cyclo_scaled(n as i64))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaValue {
    #[serde(skip)]
    pub space: SpinLensSpace,
    #[serde(serialize_with = "serialize_rational")]
    pub value: BigRational,
    pub variant: EtaVariant,
}

fn serialize_rational<S: serde::Serializer>(v: &BigRational, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&v.to_string())
}

pub fn eta_exact(s: &SpinLensSpace, variant: EtaVariant) -> Result<EtaValue> {
    let m = s.m();
    if m % 2 == 1 {
        return Err(Error::Unsupported(format!(
            "eta formula needs dimension 3 mod 4, got {}",
            2 * m - 1
        )));
    }
    let q = s.q();
    let n = lcm(4, 2 * q as u64);
    let reps = s.space().reps();
    let label = match (s.h(), variant) {
        (None, _) => 0,
        (Some(h), EtaVariant::Unstarred) => h as i64 + s.space().h_q(),
        (Some(h), EtaVariant::Starred) => h as i64,
    };
    let c = if q % 2 == 1 { q + 1 } else { 1 };
    let overflow = || Error::Unsupported("eta sum exceeds 64-bit root sums".into());
    let mut total = RootSum::new(n);
    for k in 1..q {
        let mut prod = csc_scaled(c * k * reps[0], q, n)?;
        for &p in &reps[1..] {
            prod = prod.checked_mul(&csc_scaled(c * k * p, q, n)?).ok_or_else(overflow)?;
        }
        let sign = if rem(k * label, 2) == 0 { 1 } else { -1 };
        total.add_assign_scaled(&prod, sign);
    }
    let sum = total
        .to_cyclo()
        .to_rational()
        .map_err(|_| invariant(format!("eta sum of {s} is not rational")))?;
    let sign = if (m / 2 + 1).is_multiple_of(2) { 1 } else { -1 };
    let scale = BigInt::from(n).pow(m as u32) * BigInt::from(q) * (BigInt::from(1) << m);
    Ok(EtaValue {
        space: s.clone(),
        value: sum * BigRational::new(sign.into(), scale),
        variant,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EtaRelation {
    /// `η = η'`, both non-zero.
    PlusMatch,
    /// `η = -η'`, both non-zero.
    MinusMatch,
    /// `η = η' = 0`.
    Both,
    None,
}

impl EtaRelation {
    pub fn from_values(a: &BigRational, b: &BigRational) -> Self {
        if a.is_zero() && b.is_zero() {
            EtaRelation::Both
        } else if a == b {
            EtaRelation::PlusMatch
        } else if *a == -b {
            EtaRelation::MinusMatch
        } else {
            EtaRelation::None
        }
    }

    pub fn allows(self, eps: crate::lens_geometry::Sign) -> bool {
        use crate::lens_geometry::Sign;
        matches!(
            (self, eps),
            (EtaRelation::Both, _) | (EtaRelation::PlusMatch, Sign::Plus) | (EtaRelation::MinusMatch, Sign::Minus)
        )
    }
}

pub fn eta_classify(a: &SpinLensSpace, b: &SpinLensSpace, variant: EtaVariant) -> Result<EtaRelation> {
    let ea = eta_exact(a, variant)?;
    let eb = eta_exact(b, variant)?;
    Ok(EtaRelation::from_values(&ea.value, &eb.value))
}

/// `Σ_{k<K} (m_k^+ - m_k^-)`, a finite proxy for spectral asymmetry.
pub fn partial_asymmetry(s: &SpinLensSpace, len: usize) -> Result<i128> {
    let pre = crate::dirac_spectrum::multiplicity_prefix(s, len, Default::default())?;
    Ok(pre.plus.iter().zip(&pre.minus).map(|(&a, &b)| a as i128 - b as i128).sum())
}

/// Sign of a rational as -1, 0 or 1.
pub fn signum(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
