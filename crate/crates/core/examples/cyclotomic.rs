//! Exact arithmetic in Q(ξ_n): roots of unity, inverses, Galois action and
//! the reduction of Galois-invariant sums to rationals.

use lens_spectra::cyclotomic::{inverse_one_minus_root_scaled, CycloNum};

fn main() -> lens_spectra::Result<()> {
    let n = 12;
    let z = CycloNum::root_of_unity(n, 1);
    let coeffs: Vec<String> = z.coeffs().iter().map(ToString::to_string).collect();
    println!("ξ_12 in the power basis: {coeffs:?}");
    println!("ξ_12^12 == 1: {}", z.pow(12) == CycloNum::one(n));

    // ξ + ξ^{-1} = 2 cos(π/6) is real but not rational
    let c = &z + &z.conj();
    println!("ξ + ξ⁻¹ ≈ {:.12}, rational: {}", c.embed().re, c.is_rational());

    // 1/(1 - ξ) exactly, and the same through the closed-form root sum
    let one_minus = &CycloNum::one(n) - &z;
    let inv = one_minus.inv()?;
    let closed = inverse_one_minus_root_scaled(n, 1).expect("ξ ≠ 1").to_cyclo_scaled(n as i64);
    println!("1/(1 - ξ) agrees with closed form: {}", inv == closed);

    // a Galois-invariant sum is rational: Σ_{gcd(k,12)=1} ξ^k = μ(12) = 0
    let mut trace = CycloNum::zero(n);
    for k in [1, 5, 7, 11] {
        trace = &trace + &z.galois(k)?;
    }
    println!("trace of ξ_12 = {}", trace.to_rational()?);

    // a product of conjugates: Π (1 - ξ_7^k) = 7
    let w = CycloNum::root_of_unity(7, 1);
    let mut norm = CycloNum::one(7);
    for k in 1..7 {
        norm = &norm * &(&CycloNum::one(7) - &w.pow(k));
    }
    println!("norm of 1 - ξ_7 = {}", norm.to_rational()?);
    Ok(())
}
