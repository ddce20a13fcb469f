//! Exhaustive lower-bound scan: how close can algebraic numbers of small
//! degree and height get to `Σ 2^{-n!}`?

use series_lab::certify::{lower_degree_scan, verify, ScanParams};
use series_lab::exact::BigRational;
use series_lab::field::NumberField;
use series_lab::series::SeriesSpec;
use series_lab::Result;

pub fn run() -> Result<()> {
    let s = SeriesSpec::factorial(1).compile()?;
    let half = NumberField::rationals().from_rational(BigRational::ratio(1, 2));

    // q^3 |gamma - p/q| over all p/q with max(|p|, q) <= 30.
    let r = lower_degree_scan(&s, &half, &ScanParams::new(1, 30, BigRational::from_i64(3)))?;
    let min = &r.payload["min"];
    println!(
        "rationals: min {} at {}",
        min["linear"]["approx"], min["minimal_polynomial"]
    );
    println!("excluded partial sums: {}", r.payload["excluded"]);

    // Quadratic irrationals, no height weight: plain distance.
    let r = lower_degree_scan(&s, &half, &ScanParams::new(2, 3, BigRational::from_i64(0)))?;
    println!(
        "degree <= 2, |coeffs| <= 3: closest beta is a root of {} at distance {}",
        r.payload["min"]["minimal_polynomial"], r.payload["min"]["linear"]["approx"]
    );
    println!(
        "re-check: {}",
        verify(&r.certificate.to_json())?["verified"]
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
