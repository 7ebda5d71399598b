//! Exact η-invariants of three-dimensional lens spaces and the η-based
//! comparison, including a pair with equal η that is not isometric.
//!
//! ```text
//! cargo run --example eta_table -- 25
//! ```

use lens_spectra::eta_invariant::{csc_exact, eta_classify, eta_exact, EtaVariant};
use lens_spectra::lens_geometry::{enumerate_classes_3d, is_epsilon_isometric, ClassMode};
use lens_spectra::{Sign, SpinLensSpace};

fn main() -> lens_spectra::Result<()> {
    let q = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(25);
    println!("csc(π/5) ≈ {:.7}", csc_exact(1, 5)?.embed().re);
    for c in enumerate_classes_3d(q, ClassMode::Unoriented)? {
        let e = eta_exact(&c, EtaVariant::Unstarred)?;
        println!("{:<24} eta = {}", c.to_string(), e.value);
    }

    let a = SpinLensSpace::three_dim(25, 4, 0)?;
    let b = SpinLensSpace::three_dim(25, 9, 0)?;
    let rel = eta_classify(&a, &b, EtaVariant::Unstarred)?;
    let isometric = Sign::BOTH.iter().any(|&e| is_epsilon_isometric(a.space(), b.space(), e).is_some());
    println!("{a} vs {b}: eta relation {rel:?}, isometric {isometric}");

    // even q: the two variants differ once a representative leaves (0, q)
    for variant in [EtaVariant::Unstarred, EtaVariant::Starred] {
        let x = eta_exact(&SpinLensSpace::three_dim(10, 13, 0)?, variant)?;
        let y = eta_exact(&SpinLensSpace::three_dim(10, 3, 0)?, variant)?;
        println!("{variant}: eta L(10;1,13;0) = {}, eta L(10;1,3;0) = {}", x.value, y.value);
    }
    Ok(())
}
