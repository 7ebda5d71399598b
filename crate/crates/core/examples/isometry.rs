//! Isometry and spin-isometry classification of lens spaces.

use lens_spectra::lens_geometry::{
    enumerate_classes_3d, is_epsilon_isometric, is_epsilon_spin_isometric, spin_structures, ClassMode,
};
use lens_spectra::{LensSpace, Sign, SpinLensSpace};

fn main() -> lens_spectra::Result<()> {
    // 4² ≡ -1 (mod 17), so L(17; 4) carries an orientation-reversing self-isometry
    let a = LensSpace::three_dim(17, 4)?;
    if let Some(w) = is_epsilon_isometric(&a, &a, Sign::Minus) {
        println!("{a} → {a}: ell={} sigma={:?} signs={:?} target={:?}", w.ell, w.sigma, w.signs, w.target);
        assert!(w.verify(&a));
    }

    let b = LensSpace::new(7, vec![1, 2, 3])?;
    let c = LensSpace::new(7, vec![1, 4, 5])?;
    for eps in Sign::BOTH {
        println!("{b} ~ {c} with orientation {eps}: {}", is_epsilon_isometric(&b, &c, eps).is_some());
    }

    // both spin structures on L(10; 1, 3), and which pairs are related
    let d = LensSpace::three_dim(10, 3)?;
    let spins = spin_structures(&d);
    for x in &spins {
        for y in &spins {
            for eps in Sign::BOTH {
                if is_epsilon_spin_isometric(x, y, eps).is_some() {
                    println!("{x} ≅ {y} (eps {eps})");
                }
            }
        }
    }
    let shifted = SpinLensSpace::three_dim(10, 13, 0)?;
    println!("{shifted} h = {:?}, h_q = {}", shifted.h(), shifted.space().h_q());

    for q in [12, 25, 30] {
        let oriented = enumerate_classes_3d(q, ClassMode::Oriented)?.len();
        let unoriented = enumerate_classes_3d(q, ClassMode::Unoriented)?.len();
        println!("q={q}: {oriented} oriented and {unoriented} unoriented spin classes");
    }
    Ok(())
}
