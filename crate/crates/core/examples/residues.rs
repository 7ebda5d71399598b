//! Residues of the generating functions at simple poles: the closed
//! cotangent formula against the rational-function limit, and the induced
//! residue equations for pairs of spaces.

use lens_spectra::dirac_spectrum::pole_diagnostics;
use lens_spectra::residue_analysis::{
    cot_exact, gcd_conditions, i_quantity, is_valid_index, isospectral_equations_hold, residue_at_root,
    residue_by_limit,
};
use lens_spectra::{Sign, SpinLensSpace};

fn main() -> lens_spectra::Result<()> {
    let cot = cot_exact(1, 8)?;
    println!("cot(π/8) ≈ {:.12}", cot.embed().re);

    let (q, p) = (13, 5);
    let s = SpinLensSpace::three_dim(q, p, 0)?;
    let diag = pole_diagnostics(&s)?;
    for k in (1..q).filter(|&k| is_valid_index(q, p, k)).take(4) {
        for parity in Sign::BOTH {
            let formula = residue_at_root(&s, k, parity)?;
            let limit = residue_by_limit(&diag, k, parity)?;
            let z = formula.embed();
            println!("k={k} F_{parity}: residue ≈ {:.6}{:+.6}i, agrees with limit: {}", z.re, z.im, formula == limit);
        }
        let i = i_quantity(q, p, k, None)?;
        println!("  I ≈ {:.6}", i.value.embed());
    }

    println!("{:?}", gcd_conditions(q, p, 8));
    for other in [8, 3, 7] {
        let t = SpinLensSpace::three_dim(q, other, 0)?;
        for eps in Sign::BOTH {
            let ev = isospectral_equations_hold(&s, &t, eps)?;
            println!("{s} vs {t} eps={eps}: equations hold {} (failed at {:?})", ev.holds, ev.failed);
        }
    }
    Ok(())
}
