//! Certified root isolation and refinement.

use series_lab::exact::IntPolynomial;
use series_lab::numerics::{isolate_roots, refine_root};
use series_lab::Result;

pub fn run() -> Result<()> {
    let p: IntPolynomial = "T^5-3T+1".parse()?;
    let roots = isolate_roots(&p, 64)?;
    for (i, r) in roots.iter().enumerate() {
        let (re, im) = r.ball.to_f64_pair();
        println!(
            "root {i}: {re:+.15} {im:+.15}i  radius {:.3e}",
            r.ball.rad.to_f64()
        );
    }
    let fine = refine_root(&p, &roots[0].ball, 512)?;
    println!("root 0 to 512 bits: radius 2^{}", fine.rad.top());

    let q = "T-1".parse::<IntPolynomial>()?.pow(3);
    for r in isolate_roots(&q, 64)? {
        println!(
            "{q}: root near {:?} with multiplicity {}",
            r.ball.to_f64_pair(),
            r.multiplicity
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
