//! Absolute logarithmic heights, the Liouville inequality, and the height
//! audit over a small sample.

use series_lab::exact::{BigRational, IntPolynomial};
use series_lab::field::NumberField;
use series_lab::heights::{
    audit_height_axioms, height, height_from_minpoly, liouville_check, rational_height,
};
use series_lab::Result;

pub fn run() -> Result<()> {
    let q = BigRational::ratio(-22, 7);
    println!(
        "h(-22/7) = {:.15} (log 22 = {:.15})",
        rational_height(&q, 1e-15)?.to_f64(),
        22f64.ln()
    );

    for s in ["T^2-2", "T^3-T-1", "T^4+T^3+T^2+T+1", "3T^2-T+5"] {
        let m: IntPolynomial = s.parse()?;
        let h = height_from_minpoly(&m, 1e-12)?;
        println!(
            "h(root of {s:<16}) in [{:.13}, {:.13}]",
            h.lower.to_f64(),
            h.upper.to_f64()
        );
    }

    let k = NumberField::new(&"T^2-2".parse()?)?;
    let sqrt2 = k.generator();
    let beta = sqrt2.add(&k.from_rational(BigRational::ratio(1, 2)))?;
    println!("h(1/2 + root) = {:.12}", height(&beta, 1e-12)?.to_f64());
    let lv = liouville_check(&sqrt2)?;
    println!(
        "Liouville: {:.6} <= {:.6} <= {:.6} pass={}",
        lv.lower.to_f64(),
        lv.abs.to_f64(),
        lv.upper.to_f64(),
        lv.pass
    );

    let pairs = vec![
        (sqrt2.clone(), sqrt2.clone()),
        (beta.clone(), beta.inverse()?),
    ];
    let polys: Vec<IntPolynomial> = vec!["T^2-T-1".parse()?];
    let recs = audit_height_axioms(&pairs, &polys, 1e-12)?;
    let bad = recs.iter().filter(|r| !r.pass).count();
    println!("audit: {} checks, {bad} violations", recs.len());
    for r in recs.iter().take(4) {
        println!("  {}", r.to_json_line());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
