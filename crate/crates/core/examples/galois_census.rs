//! Galois groups of small polynomials and the census of `S_m` polynomials
//! with constant term `±1`.

use series_lab::galois::{
    count_sm, fit_constant, galois_group, kronecker_small_root, DEFAULT_CENSUS_BUDGET,
};
use series_lab::Result;

pub fn run() -> Result<()> {
    for s in [
        "T^3-2",
        "T^3-3T+1",
        "T^4-2",
        "T^4+1",
        "T^4+8T+12",
        "T^4-T-1",
        "T^4+T^3+T^2+T+1",
    ] {
        println!("{s:<18} {}", galois_group(&s.parse()?)?);
    }

    let mut reports = Vec::new();
    for x in [2, 4, 8] {
        let r = count_sm(3, x, DEFAULT_CENSUS_BUDGET)?;
        println!(
            "m = 3, X = {x}: {} of {} are S_3, non-S_3 fraction {:.4}, small roots {}",
            r.sm_count,
            r.total,
            r.non_sm_count as f64 / r.total as f64,
            r.small_root_found
        );
        reports.push(r);
    }
    println!("fitted C over the grid: {:?}", fit_constant(&reports));

    let b = kronecker_small_root(&"T^3+T^2-1".parse()?)?;
    println!(
        "T^3+T^2-1 has a root of modulus {:.6} < 1",
        b.abs().to_f64()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
