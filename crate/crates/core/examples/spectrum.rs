//! Dirac multiplicities of a spin lens space, the two computation routes,
//! pole data of the generating functions and certified isospectrality.
//!
//! ```text
//! cargo run --example spectrum -- 17 4
//! ```

use lens_spectra::dirac_spectrum::{
    certification_bound, certify_isospectral, multiplicity_prefix, pole_diagnostics, Method, PrefixMode,
};
use lens_spectra::{Sign, SpinLensSpace};

fn main() -> lens_spectra::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (q, p) = (args.first().copied().unwrap_or(17), args.get(1).copied().unwrap_or(4));
    let h = args.get(2).copied().unwrap_or(0) as u8;
    let s = SpinLensSpace::three_dim(q, p, h)?;

    let fast = multiplicity_prefix(&s, 12, Method::CharacterCount)?;
    let exact = multiplicity_prefix(&s, 12, Method::Cyclotomic)?;
    assert_eq!(fast, exact);
    println!("{s}: m_k^± for eigenvalues ±(3/2 + k)");
    for k in 0..fast.len() {
        println!("  k={k:>2}  m+={:>4}  m-={:>4}", fast.plus[k], fast.minus[k]);
    }

    let diag = pole_diagnostics(&s)?;
    println!("value at z=0: {:?}", diag.value_at_zero);
    let (plus, minus) = &diag.limit_at_one;
    let show = |x: Option<String>| x.unwrap_or_else(|| "-".into());
    println!(
        "limit of (1 - z)^3 F_± at z=1: {} {}",
        show(plus.as_ref().map(ToString::to_string)),
        show(minus.as_ref().map(ToString::to_string))
    );
    let orders: Vec<usize> = (0..q).map(|k| diag.pole_order(Sign::Plus, k)).collect();
    println!("pole orders of F_+ at ξ^k: {orders:?}");

    let bound = certification_bound(q, 2);
    let len = bound.min(4 * q as usize + 1);
    let pre = multiplicity_prefix(&s, len, Method::CharacterCount)?;
    println!("symmetric up to k={len}: {}", pre.reflected_spectrum(&pre, len));

    for other in [q - p, (p * p) % q] {
        let t = SpinLensSpace::three_dim(q, other, h)?;
        let v = certify_isospectral(&s, &t, PrefixMode::Certified)?;
        println!("{s} vs {t}: +1 {}  -1 {}  (certified {})", v.plus_one, v.minus_one, v.certified);
    }
    Ok(())
}
