//! Exact polynomial arithmetic over Z: factoring, square-free parts and
//! cyclotomic detection.

use series_lab::exact::{
    cyclotomic_polynomial, factor_over_z, is_cyclotomic, square_free_decomposition, IntPolynomial,
};
use series_lab::Result;

pub fn run() -> Result<()> {
    for s in ["T^4+4", "T^6-1", "6T^3+11T^2+6T+1", "T^5-T-1"] {
        let p: IntPolynomial = s.parse()?;
        let f = factor_over_z(&p)?;
        let parts: Vec<String> = f
            .factors
            .iter()
            .map(|(q, e)| format!("({q})^{e}"))
            .collect();
        println!("{p:>18} = {} * {}", f.unit, parts.join(" "));
    }

    let p: IntPolynomial = "T^5-T^4-2T^3+2T^2+T-1".parse()?;
    for (q, e) in square_free_decomposition(&p)? {
        println!("square-free part of multiplicity {e}: {q}");
    }

    for n in [5, 12] {
        let phi = cyclotomic_polynomial(n);
        println!(
            "Phi_{n} = {phi}, detected order: {:?}",
            is_cyclotomic(&phi)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
