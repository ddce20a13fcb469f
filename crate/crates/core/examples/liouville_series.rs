//! Block structure, exact partial sums, tail bounds and value enclosures for
//! lacunary series such as `Σ z^{n!}`.

use series_lab::exact::BigRational;
use series_lab::field::NumberField;
use series_lab::numerics::Dyadic;
use series_lab::series::{
    partial_sum, tail_bound_at, validate_structure, value_enclosure, Exponents, SeriesSpec,
};
use series_lab::Result;

pub fn run() -> Result<()> {
    let liouville = SeriesSpec::factorial(1).compile()?;
    let rep = validate_structure(&liouville, 6)?;
    println!("t = {:?}\ns = {:?}", rep.t, rep.s);
    println!(
        "gap ratios t_n/s_n: {:?}",
        rep.gap_ratios
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
    );

    let half = NumberField::rationals().from_rational(BigRational::ratio(1, 2));
    println!(
        "F_3(1/2) = {}",
        partial_sum(&liouville, &half, 3)?.as_rational().unwrap()
    );
    for n in 1..=4 {
        let tb = tail_bound_at(&liouville, &half, n)?;
        println!("n = {n}: |f(1/2) - F_n(1/2)| <= 2^{}", tb.bound.top());
    }
    let v = value_enclosure(&liouville, &half, &Dyadic::pow2(-200))?;
    println!("f(1/2) ~ {:.30} (used n = {})", v.ball.re.to_f64(), v.n);

    let k = NumberField::new(&"2T^2-1".parse()?)?;
    let k = NumberField::with_root(k.defining_poly(), 1)?;
    let inv_sqrt2 = k.generator();
    let f4 = partial_sum(&liouville, &inv_sqrt2, 4)?;
    println!(
        "F_4(2^(-1/2)) = {:?}",
        f4.coords()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
    );

    let sparse = SeriesSpec::diagonal(Exponents::Rule("two_pow_n_squared".into()), &[1, -1]);
    println!("{}", serde_json::to_string(&sparse.to_json()).unwrap());
    let s = sparse.compile()?;
    println!(
        "2^(n^2) layout: s_1..s_4 = {:?}",
        (1..=4).map(|n| s.s(n)).collect::<Result<Vec<_>>>()?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
