//! A series whose blocks all vanish at the roots of `U_1`, so its value there
//! is algebraic despite the lacunary layout.

use series_lab::certify::{degree_profile, exception_scan};
use series_lab::exact::{BigRational, IntPolynomial};
use series_lab::field::NumberField;
use series_lab::series::{adversarial_series, validate_structure};
use series_lab::Result;

pub fn run() -> Result<()> {
    let u: Vec<IntPolynomial> = ["2T-1", "T^2-T-1", "3T+1", "T^2+T-1"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_>>()?;
    let spec = adversarial_series(&u, 4)?;
    let s = spec.compile()?;
    let rep = validate_structure(&s, 4)?;
    println!("t = {:?}, s = {:?}", rep.t, rep.s);
    println!(
        "restart ratios: {:?}",
        rep.restart_ratios
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
    );

    let half = NumberField::rationals().from_rational(BigRational::ratio(1, 2));
    let p = degree_profile(&s, &half, 4)?;
    println!(
        "at 1/2: block values nonzero somewhere? {}",
        p.mahler_condition_prefix
    );

    let third = NumberField::rationals().from_rational(BigRational::ratio(1, 3));
    let p = degree_profile(&s, &third, 4)?;
    println!(
        "at 1/3: {}, degrees {:?}",
        p.mahler_condition_prefix,
        p.degrees()
    );

    let ex = exception_scan(&s, 1, 4)?;
    let names: Vec<String> = ex.exceptions.iter().map(|p| p.to_string()).collect();
    println!(
        "{} rational candidates, prefix exceptions {names:?}",
        ex.candidates.len()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
