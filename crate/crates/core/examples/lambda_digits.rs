//! λ-adic digits with λ = 1 - ξ_q for prime q, and spectral rigidity
//! decided from the first few digits.

use lens_spectra::lambda_adic::{
    g3_closed_form, lambda_digits, lambda_valuation, root_quotient_coefficients, rigidity_digits, spectral_rigidity,
};
use lens_spectra::CycloNum;

fn main() -> lens_spectra::Result<()> {
    let q = 11;
    let lambda = &CycloNum::one(q as u64) - &CycloNum::root_of_unity(q as u64, 1);
    println!("v(λ³) = {:?}", lambda_valuation(&lambda.pow(3), q)?);
    println!("v(11) = {:?}", lambda_valuation(&CycloNum::from_int(q as u64, 11), q)?);
    println!("digits of 1 + λ²: {:?}", lambda_digits(&(&CycloNum::one(q as u64) + &lambda.pow(2)), q, 4)?.digits);

    for p in 2..q - 1 {
        let d = rigidity_digits(q, p, 6)?;
        println!("p={p:>2}: digits {:?}  g3 closed form {}", d.digits, g3_closed_form(q, p)?);
    }
    let coeffs: Vec<String> = root_quotient_coefficients(2, 3, 5)?.iter().map(ToString::to_string).collect();
    println!("coefficients for l=2, k=3: {coeffs:?}");

    for (p, s) in [(2, 6), (2, 3), (3, 4)] {
        println!("L({q}; {p}) vs L({q}; {s}): {:?}", spectral_rigidity(q, p, s)?);
    }
    Ok(())
}
