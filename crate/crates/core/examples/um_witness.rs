//! `U_m` approximation witnesses for the Liouville series and their
//! independent re-verification.

use series_lab::certify::{degree_profile, um_witness, verify};
use series_lab::exact::BigRational;
use series_lab::field::NumberField;
use series_lab::report::to_canonical;
use series_lab::series::SeriesSpec;
use series_lab::Result;

pub fn run() -> Result<()> {
    let s = SeriesSpec::factorial(1).compile()?;
    let half = NumberField::rationals().from_rational(BigRational::ratio(1, 2));
    for w in [3, 5, 8] {
        let c = um_witness(&s, &half, &BigRational::from_i64(w), 1, 20)?;
        let json = c.to_json();
        println!(
            "alpha = 1/2, w = {w}: n = {}, log tail <= {}, threshold {}",
            json["payload"]["n"],
            json["payload"]["tail"]["log_bound"],
            json["payload"]["threshold"]
        );
        println!("  verify: {}", verify(&json)?["verified"]);
    }

    let poly = "2T^2-1".parse()?;
    let k = NumberField::with_root(&poly, 1)?;
    let a = k.generator();
    let profile = degree_profile(&s, &a, 5)?;
    println!(
        "degrees of F_n(2^(-1/2)): {:?}, stabilized m = {:?}",
        profile.degrees(),
        profile.stabilized_m
    );
    let c = um_witness(&s, &a, &BigRational::from_i64(3), 2, 20)?;
    let text = to_canonical(&c.to_json());
    println!(
        "degree-2 witness at n = {}, certificate {} bytes",
        c.payload["n"],
        text.len()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
