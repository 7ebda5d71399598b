//! Residues of the three-dimensional generating functions at simple poles,
//! the quantities `I_q^{p;k}`, and the equation systems they satisfy under
//! isospectrality.
//!
//! Cotangents are built from `cot θ = i - 2i/(1 - e^{2iθ})` and the closed
//! form `1/(1 - ζ) = -(1/d) Σ_{j<d} j ζ^j` for `ζ` of order `d`, so no field
//! inversion is needed anywhere in this module.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::cyclotomic::{inverse_one_minus_root_scaled, CycloNum, RootSum};
use crate::dirac_spectrum::PoleDiagnostics;
use crate::error::{Error, Result};
use crate::lens_geometry::{Sign, SpinLensSpace};
use crate::modular::{self, lcm, rem};
use crate::poly;

/// Field order `lcm(4, 2q)` holding `i`, `ξ_q` and `ξ_{2q}`.
pub fn field_order(q: i64) -> u64 {
    lcm(4, 2 * q as u64)
}

/// `N · cot(aπ/q)` as a root sum of order `n` (a multiple of `4` and `q`).
fn cot_scaled(a: i64, q: i64, n: u64) -> Result<RootSum> {
    let ni = n as i64;
    let inv = inverse_one_minus_root_scaled(n, a * (ni / q)).ok_or(Error::Pole { func: "cot", a, q })?;
    let quarter = ni / 4;
    let mut out = RootSum::new(n);
    out.add_root(quarter, ni);
    out.add_rotated_scaled(&inv, quarter, -2);
    Ok(out)
}

/// `cot(aπ/q)` exactly, in Q(ξ_{lcm(4, q)}).
pub fn cot_exact(a: i64, q: i64) -> Result<CycloNum> {
    let n = lcm(4, q as u64);
    Ok(cot_scaled(a, q, n)?.to_cyclo_scaled(n as i64))
}

#[derive(Clone, Debug, PartialEq)]
pub struct IQuantity {
    pub q: i64,
    pub p: i64,
    pub k: i64,
    pub h: Option<u8>,
    /// Element of Q(ξ_{lcm(4, 2q)}).
    pub value: CycloNum,
}

fn check_index(q: i64, p: i64, k: i64) -> Result<()> {
    if modular::gcd(p, q) != 1 {
        return Err(Error::NotCoprime { value: p, modulus: q });
    }
    if rem(k * (p - 1), q) == 0 || rem(k * (p + 1), q) == 0 {
        return Err(Error::InvalidResidueIndex { q, p, k });
    }
    Ok(())
}

pub fn is_valid_index(q: i64, p: i64, k: i64) -> bool {
    check_index(q, p, k).is_ok()
}

/// Exponent of the root-of-unity prefactor of `I_q^{p;k(;h)}`, as a power of
/// `ξ_{2q}`, including the sign `(-1)^{k(h + h_q^p)}` for even `q`.
fn prefactor_exponent(q: i64, p: i64, k: i64, h: Option<u8>) -> i64 {
    if q % 2 == 1 {
        // ξ_q^{(q+1)/2·kp} = ξ_{2q}^{(q+1)kp}
        rem((q + 1) * rem(k * p, 2 * q), 2 * q)
    } else {
        let parity = h.unwrap_or(0) as i64 + p.div_euclid(q);
        rem(k * p + q * rem(k * parity, 2), 2 * q)
    }
}

fn spin_label(q: i64, h: Option<u8>) -> Result<Option<u8>> {
    if q % 2 == 1 {
        return Ok(None);
    }
    match h {
        Some(h @ (0 | 1)) => Ok(Some(h)),
        Some(h) => Err(Error::InvalidSpinLabel(h.to_string())),
        None => Err(Error::InvalidSpinLabel("<none>".into())),
    }
}

/// `I_q^{p;k}` (odd `q`) or `I_q^{p;k;h}` (even `q`).
pub fn i_quantity(q: i64, p: i64, k: i64, h: Option<u8>) -> Result<IQuantity> {
    check_index(q, p, k)?;
    let h = spin_label(q, h)?;
    let n = field_order(q);
    let mut diff = cot_scaled(k * (p - 1), q, n)?;
    diff.add_assign_scaled(&cot_scaled(k * (p + 1), q, n)?, -1);
    let step = n as i64 / (2 * q);
    let value = diff
        .rotated(step * prefactor_exponent(q, p, k, h))
        .to_cyclo_scaled(n as i64);
    Ok(IQuantity { q, p, k, h, value })
}

/// `(i/2)·I` as a root sum scaled by its order `q` (odd) or `2q` (even), via
/// `(i/2)(cot a - cot b) = 1/(1 - e^{2ia}) - 1/(1 - e^{2ib})`.
fn half_i_scaled(q: i64, p: i64, k: i64, h: Option<u8>) -> Result<RootSum> {
    check_index(q, p, k)?;
    let n = if q % 2 == 1 { q } else { 2 * q };
    let step = n / q;
    let pole = || Error::InvalidResidueIndex { q, p, k };
    let mut out = inverse_one_minus_root_scaled(n as u64, step * k * (p - 1)).ok_or_else(pole)?;
    out.add_assign_scaled(
        &inverse_one_minus_root_scaled(n as u64, step * k * (p + 1)).ok_or_else(pole)?,
        -1,
    );
    let e = prefactor_exponent(q, p, k, h);
    // odd q: ξ_{2q}^e with e even lies in Q(ξ_q)
    let e = if q % 2 == 1 { e / 2 } else { e };
    Ok(out.rotated(e))
}

/// `p*`, the least positive inverse, and `u(p, p*) = (p p* - 1)/q`.
pub fn inverse_and_u(q: i64, p: i64) -> Result<(i64, i64)> {
    let ps = modular::inverse(p, q).ok_or(Error::NotCoprime { value: p, modulus: q })?;
    Ok((ps, (p * ps - 1) / q))
}

/// Sign `(-1)^{k(u(p,p*) + h_q^p + h_q^{p*})}` on the `p*` term of the even-q equations.
fn star_sign(q: i64, p: i64, k: i64) -> Result<i64> {
    if q % 2 == 1 {
        return Ok(1);
    }
    let (ps, u) = inverse_and_u(q, p)?;
    let e = k * (u + p.div_euclid(q) + ps.div_euclid(q));
    Ok(if rem(e, 2) == 0 { 1 } else { -1 })
}

/// The weight `(-1)^{u(p,p*) + h_q^p + h_q^{p*}}`, for even `q`.
pub fn star_weight(q: i64, p: i64) -> Result<i64> {
    star_sign(q, p, 1)
}

fn cos_terms(n: u64, q: i64, b: i64) -> RootSum {
    // 2 cos(bπ/q) = ξ_{2q}^b + ξ_{2q}^{-b}
    let step = n as i64 / (2 * q);
    let mut out = RootSum::new(n);
    out.add_root(step * b, 1);
    out.add_root(-step * b, 1);
    out
}

fn three_dim_p(s: &SpinLensSpace) -> Result<i64> {
    s.space()
        .p()
        .ok_or_else(|| Error::Unsupported(format!("{s} is not of the form L(q; 1, p)")))
}

/// Residue `lim_{z→ξ_q^k} (ξ_q^k - z) F_±(z)` from the closed formula for
/// simple poles.
pub fn residue_at_root(s: &SpinLensSpace, k: i64, parity: Sign) -> Result<CycloNum> {
    let q = s.q();
    let p = three_dim_p(s)?;
    check_index(q, p, k)?;
    let n = field_order(q);
    let ni = n as i64;
    let step_q = ni / q;
    let (ps, u) = inverse_and_u(q, p)?;
    let c = if q % 2 == 1 { q + 1 } else { 1 };
    let par = parity.value();
    let x = step_q * k;
    let label = s.label_parity();
    let mut sum = RootSum::new(n);
    for (pp, sign_exp) in [(p, k * label), (ps, k * (ps * label + u))] {
        let sign = if q % 2 == 0 && rem(sign_exp, 2) == 1 { -1 } else { 1 };
        // 2(cos(k(P ∓ 1)cπ/q) - ξ_q^k cos(k(P ± 1)cπ/q))
        let mut numer = cos_terms(n, q, c * k * (pp - par));
        numer.add_rotated_scaled(&cos_terms(n, q, c * k * (pp + par)), x, -1);
        let mut cot = cot_scaled(k * (pp - 1), q, n)?;
        cot.add_assign_scaled(&cot_scaled(k * (pp + 1), q, n)?, -1);
        sum.add_assign_scaled(&numer.mul(&cot), sign);
    }
    // -2i/q · ξ^k/(1 - ξ^{2k})^2, with the 2 absorbed by the cosines
    let inv = inverse_one_minus_root_scaled(n, 2 * x).ok_or(Error::InvalidResidueIndex { q, p, k })?;
    let inv = inv.to_cyclo();
    let total = &(&sum.rotated(x + ni / 4).to_cyclo() * &inv) * &inv;
    // scales: cot by N, each inverse by N, and 1/q
    let scale = BigRational::new(BigInt::from(-1), BigInt::from(ni).pow(3) * q);
    Ok(total.scale(&scale))
}

/// The same residue from the assembled rational function `P/(1 - z^q)^{2m}`:
/// `-ζ^{2m} P^{(2m-1)}(ζ) / ((2m-1)! q^{2m})` at a pole of order at most one.
pub fn residue_by_limit(diag: &PoleDiagnostics, k: i64, parity: Sign) -> Result<CycloNum> {
    let q = diag.q;
    let m = diag.m;
    if diag.pole_order(parity, k) > 1 {
        return Err(Error::Unsupported(format!(
            "pole of order {} at ξ_{q}^{k}",
            diag.pole_order(parity, k)
        )));
    }
    let taylor = poly::taylor_shift_coeffs(diag.numerator(parity), 2 * m - 1);
    let value = poly::eval_at_root(&taylor, q as u64, k);
    let zeta = CycloNum::root_of_unity(q as u64, 2 * m as i64 * k);
    let scale = BigRational::new(BigInt::from(-1), BigInt::from(q).pow(2 * m as u32));
    Ok((&value * &zeta).scale(&scale))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GcdConditions {
    pub p_minus: i64,
    pub p_plus: i64,
    pub s_minus: i64,
    pub s_plus: i64,
    /// `(q,p-1) = (q,s-1)` and `(q,p+1) = (q,s+1)`.
    pub direct: bool,
    /// `(q,p-1) = (q,s+1)` and `(q,p+1) = (q,s-1)`.
    pub crossed: bool,
    /// `((q,p-1),(q,p+1))`: 1 for odd q, 2 for even q.
    pub parity_constant: i64,
}

pub fn gcd_conditions(q: i64, p: i64, s: i64) -> GcdConditions {
    let g = |x: i64| modular::gcd(x, q);
    let (p_minus, p_plus, s_minus, s_plus) = (g(p - 1), g(p + 1), g(s - 1), g(s + 1));
    GcdConditions {
        p_minus,
        p_plus,
        s_minus,
        s_plus,
        direct: p_minus == s_minus && p_plus == s_plus,
        crossed: p_minus == s_plus && p_plus == s_minus,
        parity_constant: modular::gcd(p_minus, p_plus),
    }
}

/// Outcome of checking the isospectrality equations for every residue index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquationEvidence {
    pub holds: bool,
    pub checked: Vec<i64>,
    /// Indices with `k(p ± 1) ≡ 0 (mod q)`.
    pub invalid: Vec<i64>,
    /// Valid for `p` but not for `s`, so the equation cannot hold.
    pub undefined_for_s: Vec<i64>,
    pub failed: Vec<i64>,
}

/// `I_q^{p;k} + w·I_q^{p*;k}` with `w` the even-q sign (1 for odd q).
pub fn equation_side(q: i64, p: i64, k: i64, h: Option<u8>) -> Result<CycloNum> {
    let (ps, _) = inverse_and_u(q, p)?;
    let a = i_quantity(q, p, k, h)?.value;
    let b = i_quantity(q, ps, k, h)?.value;
    Ok(if star_sign(q, p, k)? == 1 { &a + &b } else { &a - &b })
}

fn non_trivial_p(s: &SpinLensSpace) -> Result<i64> {
    let p = three_dim_p(s)?;
    let q = s.q();
    if rem(p - 1, q) == 0 || rem(p + 1, q) == 0 {
        return Err(Error::Unsupported(format!("{s} has p ≡ ±1 (mod {q})")));
    }
    Ok(p)
}

/// Checks `I^p + w I^{p*} = σ^{(1-ε)/2}(I^s + w' I^{s*})` for every valid `k`,
/// with `σ` complex conjugation, in Q(ξ_{lcm(4, 2q)}).
pub fn isospectral_equations_hold(a: &SpinLensSpace, b: &SpinLensSpace, eps: Sign) -> Result<EquationEvidence> {
    let p = non_trivial_p(a)?;
    let s = non_trivial_p(b)?;
    let q = a.q();
    let mut ev = EquationEvidence {
        holds: a.q() == b.q(),
        checked: Vec::new(),
        invalid: Vec::new(),
        undefined_for_s: Vec::new(),
        failed: Vec::new(),
    };
    if !ev.holds {
        return Ok(ev);
    }
    for k in 1..q {
        if !is_valid_index(q, p, k) {
            ev.invalid.push(k);
            continue;
        }
        if !is_valid_index(q, s, k) {
            ev.undefined_for_s.push(k);
            continue;
        }
        ev.checked.push(k);
        let lhs = equation_side(q, p, k, a.h())?;
        let mut rhs = equation_side(q, s, k, b.h())?;
        if eps == Sign::Minus {
            rhs = rhs.conj();
        }
        if lhs != rhs {
            ev.failed.push(k);
        }
    }
    ev.holds = ev.failed.is_empty() && ev.undefined_for_s.is_empty();
    Ok(ev)
}

/// Canonical forms of `(i/2)·(I^p + w I^{p*})` and of `-σ` of it for every
/// `k`, used to test the equations for many pairs of a fixed `q` at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationFingerprint {
    per_k: Vec<Option<(Vec<i64>, Vec<i64>)>>,
}

impl EquationFingerprint {
    /// `None` when `p ≡ ±1`, where the equations do not apply.
    pub fn new(s: &SpinLensSpace) -> Result<Option<Self>> {
        let Ok(p) = non_trivial_p(s) else {
            three_dim_p(s)?;
            return Ok(None);
        };
        let q = s.q();
        let (ps, _) = inverse_and_u(q, p)?;
        let mut per_k = vec![None];
        for k in 1..q {
            if !is_valid_index(q, p, k) {
                per_k.push(None);
                continue;
            }
            let mut side = half_i_scaled(q, p, k, s.h())?;
            side.add_assign_scaled(&half_i_scaled(q, ps, k, s.h())?, star_sign(q, p, k)?);
            let mut reflected = RootSum::new(side.order());
            // (i/2)σ(X) = -σ((i/2)X)
            reflected.add_assign_scaled(&side.galois(-1), -1);
            per_k.push(Some((side.reduce(), reflected.reduce())));
        }
        Ok(Some(EquationFingerprint { per_k }))
    }

    pub fn matches(&self, other: &Self, eps: Sign) -> bool {
        self.per_k.len() == other.per_k.len()
            && self.per_k.iter().zip(&other.per_k).all(|(a, b)| match (a, b) {
                (None, _) => true,
                (Some(_), None) => false,
                (Some((lhs, _)), Some((rhs, rhs_reflected))) => match eps {
                    Sign::Plus => lhs == rhs,
                    Sign::Minus => lhs == rhs_reflected,
                },
            })
    }
}
