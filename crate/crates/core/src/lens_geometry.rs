//! Lens spaces, their spin structures, and decision procedures for
//! ε-isometry and ε-spin-isometry.
//!
//! A lens space `L(q; p_1, …, p_m)` is stored with the integer
//! representatives it was built from. Those representatives matter for spin
//! structures on even-order lens spaces: the label `h` is only meaningful
//! together with `h_q^p = Σ ⌊p_j / q⌋`, so every spin congruence below is
//! evaluated with the pinned representatives.
//!
//! Three-dimensional spaces use the shorthand `L(q; p) = L(q; 1, p)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{self, rem};

/// Orientation sign ε ∈ {+1, -1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LensSpace {
    q: i64,
    reps: Vec<i64>,
    canonical: Vec<i64>,
}

impl LensSpace {
    /// `q = 1` is admitted and denotes the sphere itself.
    pub fn new(q: i64, ps: Vec<i64>) -> Result<Self> {
        if q < 1 {
            return Err(Error::InvalidLensSpace(format!("q = {q} must be positive")));
        }
        if ps.is_empty() {
            return Err(Error::InvalidLensSpace("no rotation parameters".into()));
        }
        for &p in &ps {
            if modular::gcd(p, q) != 1 {
                return Err(Error::NotCoprime { value: p, modulus: q });
            }
        }
        let canonical = ps
            .iter()
            .map(|&p| if q == 1 { 1 } else { rem(p, q) })
            .collect();
        Ok(LensSpace { q, reps: ps, canonical })
    }

    /// `L(q; p) = L(q; 1, p)`.
    pub fn three_dim(q: i64, p: i64) -> Result<Self> {
        Self::new(q, vec![1, p])
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn m(&self) -> usize {
        self.reps.len()
    }

    pub fn dimension(&self) -> usize {
        2 * self.m() - 1
    }

    /// The representatives the space was constructed with.
    pub fn reps(&self) -> &[i64] {
        &self.reps
    }

    /// Representatives in `0 < p < q`.
    pub fn canonical(&self) -> &[i64] {
        &self.canonical
    }

    /// The second parameter of a three-dimensional space `L(q; 1, p)`.
    pub fn p(&self) -> Option<i64> {
        (self.m() == 2 && self.reps[0] == 1).then(|| self.reps[1])
    }

    pub fn h_q(&self) -> i64 {
        self.reps.iter().map(|&p| p.div_euclid(self.q)).sum()
    }

    pub fn admits_spin(&self) -> bool {
        self.q % 2 == 1 || self.m().is_multiple_of(2)
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.reps.iter().map(i64::to_string).collect();
        write!(f, "L({}; {})", self.q, ps.join(", "))
    }
}

/// A lens space together with a spin structure.
///
/// For odd `q` the spin structure is unique and `h` is `None`; for even `q`
/// (and even `m`) `h ∈ {0, 1}` selects `τ_h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpinLensSpace {
    space: LensSpace,
    h: Option<u8>,
}

impl SpinLensSpace {
    pub fn new(space: LensSpace, h: Option<u8>) -> Result<Self> {
        if !space.admits_spin() {
            return Err(Error::NoSpinStructure {
                q: space.q,
                ps: space.reps.clone(),
            });
        }
        if space.q % 2 == 1 {
            return Ok(SpinLensSpace { space, h: None });
        }
        match h {
            Some(h @ (0 | 1)) => Ok(SpinLensSpace { space, h: Some(h) }),
            Some(h) => Err(Error::InvalidSpinLabel(h.to_string())),
            None => Err(Error::InvalidSpinLabel("<none>".into())),
        }
    }

    /// `L(q; p; h)`; `h` is ignored for odd `q`.
    pub fn three_dim(q: i64, p: i64, h: u8) -> Result<Self> {
        Self::new(LensSpace::three_dim(q, p)?, Some(h))
    }

    pub fn space(&self) -> &LensSpace {
        &self.space
    }

    pub fn h(&self) -> Option<u8> {
        self.h
    }

    pub fn q(&self) -> i64 {
        self.space.q
    }

    pub fn m(&self) -> usize {
        self.space.m()
    }

    /// `(h + h_q^p) mod 2`, the parity entering every even-q formula. Zero for odd q.
    pub fn label_parity(&self) -> i64 {
        match self.h {
            Some(h) => rem(h as i64 + self.space.h_q(), 2),
            None => 0,
        }
    }
}

impl fmt::Display for SpinLensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.space.reps.iter().map(i64::to_string).collect();
        match self.h {
            Some(h) => write!(f, "L({}; {}; h={})", self.space.q, ps.join(", "), h),
            None => write!(f, "L({}; {})", self.space.q, ps.join(", ")),
        }
    }
}

/// Arithmetic certificate of an ε-isometry `L(q; p) → L(q; s)`:
/// `ℓ · p_{σ(i)} · ε_{σ(i)} ≡ s_i (mod q)` with `Π ε_i = ε`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsometryWitness {
    pub ell: i64,
    /// Zero-based permutation, `sigma[i] = σ(i)`.
    pub sigma: Vec<usize>,
    /// Signs indexed by source coordinate.
    pub signs: Vec<Sign>,
    pub orientation: Sign,
    /// Whether the isometry relates the two spin structures (always true for odd q).
    pub spin_ok: bool,
    pub target: Vec<i64>,
}

impl IsometryWitness {
    /// Re-checks the defining congruences against `source`.
    pub fn verify(&self, source: &LensSpace) -> bool {
        let q = source.q;
        let m = source.m();
        if self.sigma.len() != m || self.signs.len() != m || self.target.len() != m {
            return false;
        }
        let mut seen = vec![false; m];
        for &j in &self.sigma {
            if j >= m || seen[j] {
                return false;
            }
            seen[j] = true;
        }
        let product = self.signs.iter().fold(Sign::Plus, |acc, &s| acc * s);
        product == self.orientation
            && (0..m).all(|i| {
                let j = self.sigma[i];
                rem(self.ell * source.reps[j] * self.signs[j].value() - self.target[i], q) == 0
            })
    }

    /// `(1/q) Σ (ℓ p_{σ(i)} ε_{σ(i)} - s_i)`, the integer in the spin congruence.
    fn spin_defect(&self, source: &LensSpace) -> i64 {
        let q = source.q;
        let total: i64 = (0..source.m())
            .map(|i| {
                let j = self.sigma[i];
                self.ell * source.reps[j] * self.signs[j].value() - self.target[i]
            })
            .sum();
        debug_assert_eq!(total % q, 0);
        total / q
    }
}

/// `h_q^p mod 2` for the given (not canonicalised) representatives.
pub fn h_invariant(q: i64, ps: &[i64]) -> Result<u8> {
    for &p in ps {
        if modular::gcd(p, q) != 1 {
            return Err(Error::NotCoprime { value: p, modulus: q });
        }
    }
    let h: i64 = ps.iter().map(|&p| p.div_euclid(q)).sum();
    Ok(rem(h, 2) as u8)
}

/// All spin structures of `space`: one for odd q, two (h = 0, 1) for q and m
/// even, none otherwise.
pub fn spin_structures(space: &LensSpace) -> Vec<SpinLensSpace> {
    if !space.admits_spin() {
        return Vec::new();
    }
    if space.q % 2 == 1 {
        return vec![SpinLensSpace { space: space.clone(), h: None }];
    }
    (0..2)
        .map(|h| SpinLensSpace { space: space.clone(), h: Some(h) })
        .collect()
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for j in 0..used.len() {
            if !used[j] {
                used[j] = true;
                prefix.push(j);
                go(prefix, used, out);
                prefix.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(m), &mut vec![false; m], &mut out);
    out
}

// Lexicographic with +1 before -1.
fn sign_patterns(m: usize) -> impl Iterator<Item = Vec<Sign>> {
    (0u32..1 << m).map(move |bits| {
        (0..m)
            .map(|i| {
                if bits >> (m - 1 - i) & 1 == 1 {
                    Sign::Minus
                } else {
                    Sign::Plus
                }
            })
            .collect()
    })
}

/// Every arithmetic isometry candidate in search order: ℓ ascending, σ
/// lexicographic, signs lexicographic.
fn isometry_candidates<'a>(
    a: &'a LensSpace,
    b: &'a LensSpace,
    eps: Sign,
) -> impl Iterator<Item = IsometryWitness> + 'a {
    let same_shape = a.q == b.q && a.m() == b.m();
    let q = a.q;
    let m = a.m();
    let ells = if same_shape { modular::units(q) } else { Vec::new() };
    let perms = if same_shape { permutations(m) } else { Vec::new() };
    ells.into_iter().flat_map(move |ell| {
        let perms = perms.clone();
        perms.into_iter().flat_map(move |sigma| {
            sign_patterns(m).filter_map(move |signs| {
                let orientation = signs.iter().fold(Sign::Plus, |acc, &s| acc * s);
                if orientation != eps {
                    return None;
                }
                let ok = (0..m).all(|i| {
                    let j = sigma[i];
                    rem(ell * a.reps[j] * signs[j].value() - b.reps[i], q) == 0
                });
                ok.then(|| IsometryWitness {
                    ell,
                    sigma: sigma.clone(),
                    signs,
                    orientation,
                    spin_ok: q % 2 == 1,
                    target: b.reps.clone(),
                })
            })
        })
    })
}

/// First ε-isometry witness between `a` and `b`, if any.
pub fn is_epsilon_isometric(a: &LensSpace, b: &LensSpace, eps: Sign) -> Option<IsometryWitness> {
    isometry_candidates(a, b, eps).next()
}

/// First ε-isometry witness that also relates the spin structures.
pub fn is_epsilon_spin_isometric(
    a: &SpinLensSpace,
    b: &SpinLensSpace,
    eps: Sign,
) -> Option<IsometryWitness> {
    if a.q() % 2 == 1 {
        return is_epsilon_isometric(&a.space, &b.space, eps);
    }
    let (h, h2) = (a.h? as i64, b.h? as i64);
    let lhs = h + h2 + a.space.h_q() + b.space.h_q();
    isometry_candidates(&a.space, &b.space, eps)
        .find(|w| rem(lhs - w.spin_defect(&a.space), 2) == 0)
        .map(|mut w| {
            w.spin_ok = true;
            w
        })
}

/// Closed-form ε-spin-isometry test for `L(q; 1, p; h)` and `L(q; 1, s; h')`.
pub fn is_epsilon_spin_isometric_3d(
    a: &SpinLensSpace,
    b: &SpinLensSpace,
    eps: Sign,
) -> Result<bool> {
    let (p, s) = match (a.space.p(), b.space.p()) {
        (Some(p), Some(s)) => (p, s),
        _ => {
            return Err(Error::Unsupported(format!(
                "closed-form test needs L(q; 1, p), got {a} and {b}"
            )))
        }
    };
    if a.q() != b.q() {
        return Ok(false);
    }
    let q = a.q();
    let e = eps.value();
    if q % 2 == 1 {
        return Ok(rem(p - e * s, q) == 0 || rem(p * s - e, q) == 0);
    }
    let lhs = a.h.unwrap_or(0) as i64 + b.h.unwrap_or(0) as i64 + a.space.h_q() + b.space.h_q();
    let direct = rem(e * p - s, q) == 0 && rem(lhs - (p - e * s) / q, 2) == 0;
    let crossed = rem(e * p * s - 1, q) == 0 && rem(lhs - (p * s - e) / q, 2) == 0;
    Ok(direct || crossed)
}

/// `p_i ≡ ±p_j (mod q)` for all pairs.
pub fn is_homogeneous(space: &LensSpace) -> bool {
    let q = space.q;
    let ps = &space.reps;
    (0..ps.len()).all(|i| {
        (i + 1..ps.len()).all(|j| rem(ps[i] - ps[j], q) == 0 || rem(ps[i] + ps[j], q) == 0)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassMode {
    /// Classes under +1-spin-isometry.
    Oriented,
    /// Classes under ε-spin-isometry for either ε.
    Unoriented,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut x = x;
    while parent[x] != r {
        let next = parent[x];
        parent[x] = r;
        x = next;
    }
    r
}

/// One canonical representative per spin-isometry class of three-dimensional
/// lens spaces with fundamental group of order `q`, in ascending `(p, h)`.
/// Each representative is the minimum `(p, h)` of its class with `0 < p < q`.
pub fn enumerate_classes_3d(q: i64, mode: ClassMode) -> Result<Vec<SpinLensSpace>> {
    if q < 2 {
        return Err(Error::InvalidLensSpace(format!("q = {q} must be at least 2")));
    }
    let labels: &[u8] = if q % 2 == 0 { &[0, 1] } else { &[0] };
    let mut spaces = Vec::new();
    for p in modular::units(q) {
        for &h in labels {
            spaces.push(SpinLensSpace::three_dim(q, p, h)?);
        }
    }
    let signs: &[Sign] = match mode {
        ClassMode::Oriented => &[Sign::Plus],
        ClassMode::Unoriented => &Sign::BOTH,
    };
    let mut parent: Vec<usize> = (0..spaces.len()).collect();
    for i in 0..spaces.len() {
        for j in i + 1..spaces.len() {
            if find(&mut parent, i) == find(&mut parent, j) {
                continue;
            }
            for &eps in signs {
                if is_epsilon_spin_isometric_3d(&spaces[i], &spaces[j], eps)? {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    // spaces are in ascending (p, h), so the smaller index is the minimum
                    parent[ri.max(rj)] = ri.min(rj);
                    break;
                }
            }
        }
    }
    Ok(spaces
        .iter()
        .enumerate()
        .filter(|&(i, _)| find(&mut parent, i) == i)
        .map(|(_, s)| s.clone())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l3(q: i64, p: i64) -> LensSpace {
        LensSpace::three_dim(q, p).unwrap()
    }

    fn s3(q: i64, p: i64, h: u8) -> SpinLensSpace {
        SpinLensSpace::three_dim(q, p, h).unwrap()
    }

    fn ps_of(classes: &[SpinLensSpace]) -> Vec<i64> {
        classes.iter().map(|c| c.space().p().unwrap()).collect()
    }

    #[test]
    fn h_invariant_examples() {
        assert_eq!(h_invariant(8, &[1, 3]).unwrap(), 0);
        assert_eq!(h_invariant(8, &[1, 11]).unwrap(), 1);
        assert_eq!(h_invariant(10, &[1, 3]).unwrap(), 0);
        assert!(h_invariant(10, &[1, 5]).is_err());
    }

    #[test]
    fn construction_checks_coprimality() {
        assert!(matches!(
            LensSpace::three_dim(10, 4),
            Err(Error::NotCoprime { value: 4, modulus: 10 })
        ));
        let l = LensSpace::new(7, vec![1, 9, -2]).unwrap();
        assert_eq!(l.canonical(), &[1, 2, 5]);
        assert_eq!(l.reps(), &[1, 9, -2]);
    }

    #[test]
    fn spin_structure_counts() {
        assert_eq!(spin_structures(&l3(7, 2)).len(), 1);
        assert_eq!(spin_structures(&l3(8, 3)).len(), 2);
        assert_eq!(spin_structures(&l3(2, 1)).len(), 2);
        assert!(spin_structures(&LensSpace::new(4, vec![1, 1, 3]).unwrap()).is_empty());
        assert_eq!(spin_structures(&LensSpace::new(5, vec![1, 2, 3]).unwrap()).len(), 1);
        assert!(matches!(
            SpinLensSpace::new(LensSpace::new(6, vec![1, 5, 1]).unwrap(), Some(0)),
            Err(Error::NoSpinStructure { .. })
        ));
        assert!(SpinLensSpace::new(l3(8, 3), None).is_err());
        assert!(SpinLensSpace::new(l3(8, 3), Some(2)).is_err());
        assert_eq!(SpinLensSpace::new(l3(7, 3), Some(1)).unwrap().h(), None);
    }

    #[test]
    fn isometry_examples() {
        let w = is_epsilon_isometric(&l3(7, 2), &l3(7, 4), Sign::Plus).unwrap();
        assert!(w.verify(&l3(7, 2)));
        let id = is_epsilon_isometric(&l3(11, 3), &l3(11, 3), Sign::Plus).unwrap();
        assert_eq!(id.ell, 1);
        assert_eq!(id.sigma, vec![0, 1]);
        assert_eq!(id.signs, vec![Sign::Plus, Sign::Plus]);
        let w = is_epsilon_isometric(&l3(17, 4), &l3(17, 4), Sign::Minus).unwrap();
        assert!(w.verify(&l3(17, 4)));
        assert_eq!(w.orientation, Sign::Minus);
        assert!(is_epsilon_isometric(&l3(11, 2), &l3(11, 3), Sign::Plus).is_none());
        assert!(is_epsilon_isometric(&l3(11, 2), &l3(13, 2), Sign::Plus).is_none());
    }

    #[test]
    fn spin_isometry_examples() {
        assert!(is_epsilon_spin_isometric(&s3(8, 3, 0), &s3(8, 3, 1), Sign::Plus).is_some());
        assert!(is_epsilon_spin_isometric(&s3(10, 3, 0), &s3(10, 3, 1), Sign::Minus).is_some());
        assert!(is_epsilon_spin_isometric(&s3(10, 3, 0), &s3(10, 3, 0), Sign::Minus).is_none());

        assert!(is_epsilon_spin_isometric_3d(&s3(7, 2, 0), &s3(7, 4, 0), Sign::Plus).unwrap());
        assert!(is_epsilon_spin_isometric_3d(&s3(17, 4, 0), &s3(17, 4, 0), Sign::Minus).unwrap());
        assert!(is_epsilon_spin_isometric_3d(&s3(8, 3, 0), &s3(8, 3, 1), Sign::Plus).unwrap());
        // RP^3: orientation reversal swaps the two spin structures
        assert!(is_epsilon_spin_isometric_3d(&s3(2, 1, 0), &s3(2, 1, 1), Sign::Minus).unwrap());
        assert!(!is_epsilon_spin_isometric_3d(&s3(2, 1, 0), &s3(2, 1, 1), Sign::Plus).unwrap());
    }

    // -1-spin-isometry of L(q; p; h) with itself would need (p^2 + 1)/q even.
    #[test]
    fn no_even_q_self_reversal() {
        for q in (2..=60).step_by(2) {
            for p in modular::units(q) {
                for h in 0..2 {
                    let s = s3(q, p, h);
                    assert!(!is_epsilon_spin_isometric_3d(&s, &s, Sign::Minus).unwrap());
                }
            }
        }
    }

    #[test]
    fn representative_shift_is_absorbed_by_h_q() {
        // L(10; 1, 13; h) is L(10; 1, 3; h): h_q^p and the defect both shift by one
        for h in 0..2 {
            let shifted = SpinLensSpace::three_dim(10, 13, h).unwrap();
            assert_eq!(shifted.space().h_q(), 1);
            assert!(is_epsilon_spin_isometric_3d(&shifted, &s3(10, 3, h), Sign::Plus).unwrap());
            assert!(is_epsilon_spin_isometric(&shifted, &s3(10, 3, h), Sign::Plus).is_some());
            assert!(!is_epsilon_spin_isometric_3d(&shifted, &s3(10, 3, 1 - h), Sign::Plus).unwrap());
        }
    }

    #[test]
    fn closed_form_agrees_with_search() {
        for q in 2..=60 {
            let labels: &[u8] = if q % 2 == 0 { &[0, 1] } else { &[0] };
            let units = modular::units(q);
            for &p in &units {
                for &s in &units {
                    for &h in labels {
                        for &h2 in labels {
                            let (a, b) = (s3(q, p, h), s3(q, s, h2));
                            for eps in Sign::BOTH {
                                let fast = is_epsilon_spin_isometric_3d(&a, &b, eps).unwrap();
                                let slow = is_epsilon_spin_isometric(&a, &b, eps);
                                assert_eq!(fast, slow.is_some(), "{a} {b} {eps}");
                                if let Some(w) = slow {
                                    assert!(w.verify(a.space()));
                                    assert!(w.spin_ok);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn isometry_is_symmetric_and_transitive() {
        for q in [9i64, 15, 16, 21] {
            let units = modular::units(q);
            for &a in &units {
                for &b in &units {
                    for eps in Sign::BOTH {
                        let ab = is_epsilon_isometric(&l3(q, a), &l3(q, b), eps).is_some();
                        let ba = is_epsilon_isometric(&l3(q, b), &l3(q, a), eps).is_some();
                        assert_eq!(ab, ba);
                    }
                    for &c in units.iter().step_by(3) {
                        let ab = is_epsilon_isometric(&l3(q, a), &l3(q, b), Sign::Plus).is_some();
                        let bc = is_epsilon_isometric(&l3(q, b), &l3(q, c), Sign::Plus).is_some();
                        if ab && bc {
                            assert!(is_epsilon_isometric(&l3(q, a), &l3(q, c), Sign::Plus).is_some());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn general_dimension_search() {
        // L(5; 1, 2, 3) -> multiply by 2: (2, 4, 6) = (2, -1, 1) mod 5
        let a = LensSpace::new(5, vec![1, 2, 3]).unwrap();
        let b = LensSpace::new(5, vec![1, 1, 2]).unwrap();
        let w = is_epsilon_isometric(&a, &b, Sign::Plus).or_else(|| is_epsilon_isometric(&a, &b, Sign::Minus));
        assert!(w.unwrap().verify(&a));
        let c = LensSpace::new(7, vec![1, 1, 1, 1]).unwrap();
        assert!(is_homogeneous(&c));
        assert!(is_epsilon_isometric(&c, &c, Sign::Minus).is_none() || is_homogeneous(&c));
    }

    #[test]
    fn homogeneity() {
        assert!(is_homogeneous(&l3(9, 1)));
        assert!(is_homogeneous(&l3(9, 8)));
        assert!(!is_homogeneous(&l3(25, 7)));
        assert!(!is_homogeneous(&LensSpace::new(13, vec![1, 1, 5]).unwrap()));
    }

    #[test]
    fn class_enumeration_examples() {
        let c25 = enumerate_classes_3d(25, ClassMode::Unoriented).unwrap();
        assert_eq!(ps_of(&c25), vec![1, 2, 3, 4, 7, 9]);
        let c7 = enumerate_classes_3d(7, ClassMode::Unoriented).unwrap();
        assert_eq!(ps_of(&c7), vec![1, 2]);
        let c2 = enumerate_classes_3d(2, ClassMode::Unoriented).unwrap();
        assert_eq!(c2.len(), 1);
        assert_eq!(enumerate_classes_3d(2, ClassMode::Oriented).unwrap().len(), 2);
        assert!(enumerate_classes_3d(1, ClassMode::Oriented).is_err());
    }

    fn brute_orbits(q: i64) -> usize {
        let units = modular::units(q);
        let mut seen = std::collections::HashSet::new();
        let mut count = 0;
        for &p in &units {
            if seen.contains(&p) {
                continue;
            }
            count += 1;
            let inv = modular::inverse(p, q).unwrap();
            for x in [p, q - p, inv, q - inv] {
                seen.insert(rem(x, q));
            }
        }
        count
    }

    #[test]
    fn class_counts_match_orbit_enumeration() {
        for q in 2..=200 {
            let classes = enumerate_classes_3d(q, ClassMode::Unoriented).unwrap();
            let orbits = brute_orbits(q);
            if q % 2 == 1 {
                assert_eq!(classes.len(), orbits, "q = {q}");
            } else {
                // spin classes project onto the isometry classes, one or two each
                let mut ps: Vec<i64> = Vec::new();
                for c in &classes {
                    let p = c.space().p().unwrap();
                    let inv = modular::inverse(p, q).unwrap();
                    let key = [p, q - p, inv, q - inv].into_iter().map(|x| rem(x, q)).min().unwrap();
                    ps.push(key);
                }
                ps.sort_unstable();
                let mut distinct = ps.clone();
                distinct.dedup();
                assert_eq!(distinct.len(), orbits, "q = {q}");
                assert!(classes.len() <= 2 * orbits);
            }
        }
    }
}
