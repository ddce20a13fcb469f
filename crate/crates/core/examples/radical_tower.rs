//! Degrees of radical extensions and the power-basis expansion of
//! `Σ_{k<m} (a^{1/m})^{k!}`.

use series_lab::exact::BigRational;
use series_lab::radical::{coliou_expansion, radical_degree};
use series_lab::Result;

pub fn run() -> Result<()> {
    for (a, m) in [("2", 4), ("4", 2), ("-4", 4), ("-8", 3), ("9/4", 6)] {
        let r = radical_degree(&a.parse()?, m)?;
        println!(
            "({a})^(1/{m}): degree {} via {}, minpoly {}, subfields {:?}",
            r.degree, r.method, r.minimal_polynomial, r.subfield_degrees
        );
    }
    let half = BigRational::ratio(1, 2);
    for m in [2, 3, 4, 6] {
        let e = coliou_expansion(&half, m)?;
        let coords: Vec<String> = e.coords.iter().map(|c| c.to_string()).collect();
        println!(
            "m = {m}: coords {coords:?}, degree {}, minpoly {}",
            e.degree, e.minimal_polynomial
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
