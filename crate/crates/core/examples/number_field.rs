//! Arithmetic in `Q(α)`: choosing an embedding, field operations, minimal
//! polynomials and numerical evaluation.

use series_lab::exact::{BigRational, IntPolynomial};
use series_lab::field::{element_degree, minimal_polynomial, NumberField};
use series_lab::Result;

pub fn run() -> Result<()> {
    let p: IntPolynomial = "T^3-2".parse()?;
    // Root 0 is the smallest real part; the real cube root comes last here.
    let k = NumberField::with_root(&p, 2)?;
    let a = k.generator();
    println!("{k:?}, alpha ~ {:?}", a.eval(64)?.to_f64_pair());

    let b = a.add(&k.one())?;
    let inv = b.inverse()?;
    println!("1/(alpha + 1) = {:?}", inv.coords());
    println!("check: {:?}", inv.mul(&b)?.coords());

    let c = a.mul(&a)?.sub(&a.scale(&BigRational::ratio(1, 2)))?;
    println!(
        "alpha^2 - alpha/2: minpoly {}, degree {}",
        minimal_polynomial(&c),
        element_degree(&c)
    );

    let r = a.pow(3);
    println!(
        "alpha^3 = {:?} (rational: {:?})",
        r.coords(),
        r.as_rational()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
