//! Acceptance criteria. Prints one PASS/FAIL line per criterion and fails the
//! target if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use series_lab::certify::{degree_profile, lower_degree_scan, um_witness, ScanParams};
use series_lab::exact::{cyclotomic_polynomial, factor_over_z, BigRational, IntPolynomial};
use series_lab::field::{element_degree, minimal_polynomial, NFElement, NumberField};
use series_lab::galois::{
    bound_holds, count_sm, fit_constant, CountReport, GroupLabel, DEFAULT_CENSUS_BUDGET,
};
use series_lab::heights::{height_from_minpoly, rational_height};
use series_lab::numerics::elementary::log_int;
use series_lab::numerics::{elementary::ln2, Interval};
use series_lab::radical::{radical_degree, radical_degree_by_factoring};
use series_lab::report::to_canonical;
use series_lab::series::{
    adversarial_series, partial_sum, tail_bound_at, validate_structure, SeriesSpec,
};

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn lib<T>(r: series_lab::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn poly(s: &str) -> IntPolynomial {
    s.parse().unwrap()
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::ratio(p, q)
}

/// Positive real root of `2T^m − 1`, i.e. `2^{-1/m}`.
fn inv_root_two(m: usize) -> NFElement {
    let mut c = vec![0i64; m + 1];
    c[0] = -1;
    c[m] = 2;
    let p = IntPolynomial::from_i64s(&c);
    (0..m)
        .map(|k| NumberField::with_root(&p, k).unwrap())
        .find(|k| k.is_real() && k.embedding_box().re.is_positive())
        .unwrap()
        .generator()
}

fn half() -> NFElement {
    NumberField::rationals().from_rational(rat(1, 2))
}

fn liouville() -> series_lab::series::Series {
    SeriesSpec::factorial(1).compile().unwrap()
}

fn ulp(x: f64) -> f64 {
    f64::from_bits(x.abs().to_bits() + 1) - x.abs()
}

// Criterion 1: exact rational heights and vanishing heights of roots of unity.
fn heights_exact() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut n = 0;
    while n < 1000 {
        let p: i64 = rng.gen_range(-1_000_000_000_000..=1_000_000_000_000);
        let q: i64 = rng.gen_range(1..=1_000_000_000_000);
        if num_integer::gcd(p, q) != 1 {
            continue;
        }
        n += 1;
        let h = lib(rational_height(&rat(p, q), 1e-15))?;
        let m = p.abs().max(q);
        let closed = (m as f64).ln();
        let (lo, hi) = (h.lower.to_f64(), h.upper.to_f64());
        ensure(
            h.width().to_f64() <= 1e-15,
            format!("width {} for {p}/{q}", h.width().to_f64()),
        )?;
        ensure(
            lo - 2.0 * ulp(closed) <= closed && closed <= hi + 2.0 * ulp(closed),
            format!("h({p}/{q}) = [{lo}, {hi}] misses log {m} = {closed}"),
        )?;
    }
    for order in 1..=30u64 {
        let h = lib(height_from_minpoly(&cyclotomic_polynomial(order), 1e-15))?;
        ensure(
            h.lower.is_zero() && h.upper.to_f64() <= 1e-15,
            format!("h(zeta_{order}) = {}", h.upper.to_f64()),
        )?;
    }
    Ok("1000 fractions, orders 1..30".into())
}

/// Durand–Kerner in double precision, independent of the certified code.
fn mahler_f64(p: &IntPolynomial) -> f64 {
    let n = p.degree();
    let c: Vec<f64> = p.coeffs().iter().map(|x| x.to_f64().unwrap()).collect();
    let lc = c[n];
    let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let div = |a: (f64, f64), b: (f64, f64)| {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    };
    let eval = |z: (f64, f64)| {
        let mut acc = (0.0, 0.0);
        for k in (0..=n).rev() {
            acc = mul(acc, z);
            acc.0 += c[k] / lc;
        }
        acc
    };
    let radius = 1.0 + c.iter().take(n).map(|x| (x / lc).abs()).fold(0.0, f64::max);
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let t = 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            (radius * t.cos(), radius * t.sin())
        })
        .collect();
    for _ in 0..2000 {
        for i in 0..n {
            let mut den = (1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den = mul(den, (z[i].0 - z[j].0, z[i].1 - z[j].1));
                }
            }
            let step = div(eval(z[i]), den);
            z[i] = (z[i].0 - step.0, z[i].1 - step.1);
        }
    }
    z.iter()
        .fold(lc.abs(), |acc, r| acc * (r.0.hypot(r.1)).max(1.0))
}

// Criterion 2: |log|M| − n·h| ≤ n log 2 on random irreducible polynomials.
fn sandwich() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut done = 0;
    let mut worst: f64 = 0.0;
    while done < 500 {
        let deg = rng.gen_range(1..=5usize);
        let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-20..=20)).collect();
        if c[deg] == 0 {
            continue;
        }
        if c[deg] < 0 {
            c.iter_mut().for_each(|x| *x = -*x);
        }
        let p = IntPolynomial::from_i64s(&c);
        if !p.content().is_one() || !lib(factor_over_z(&p))?.is_irreducible() {
            continue;
        }
        done += 1;
        let h = lib(height_from_minpoly(&p, 1e-12))?;
        let wp = 128;
        let n = Interval::from_i64(deg as i64);
        let diff = log_int(&p.max_abs(), wp)
            .sub(&h.interval().mul(&n, wp), wp)
            .abs();
        let bound = ln2(wp).mul(&n, wp);
        ensure(
            diff.hi <= bound.lo,
            format!(
                "sandwich violated for {p}: {} > {}",
                diff.hi.to_f64(),
                bound.lo.to_f64()
            ),
        )?;
        let oracle = mahler_f64(&p).ln() / deg as f64;
        let err = (oracle - h.to_f64()).abs();
        worst = worst.max(err);
        ensure(
            err <= 1e-8,
            format!("h({p}) = {} but floating oracle gives {oracle}", h.to_f64()),
        )?;
    }
    Ok(format!(
        "500 polynomials, 0 violations, max oracle gap {worst:.1e}"
    ))
}

/// `min max(|p|, q)^3 |γ − p/q|` and `min q^3 |γ − p/q|` over reduced p/q
/// with `|p|, q ≤ 50`, skipping partial sums; `γ` replaced by `F_6(1/2)`.
fn liouville_gap_oracle() -> (f64, f64) {
    let mut gamma = BigRational::zero();
    let mut excluded = Vec::new();
    let mut fact = 1i64;
    for k in 1..=6 {
        fact *= k;
        gamma = &gamma + &BigRational::new(BigInt::one(), BigInt::from(2).pow(fact as u32));
        excluded.push(gamma.clone());
    }
    let mut best_h = None::<BigRational>;
    let mut best_q = None::<BigRational>;
    for q in 1..=50i64 {
        for p in -50..=50i64 {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let b = rat(p, q);
            if excluded.contains(&b) {
                continue;
            }
            let d = (&gamma - &b).abs();
            let hq = BigRational::from_i64(p.abs().max(q).pow(3));
            let vh = &d * &hq;
            let vq = &d * &BigRational::from_i64(q.pow(3));
            if best_h.as_ref().is_none_or(|x| vh < *x) {
                best_h = Some(vh);
            }
            if best_q.as_ref().is_none_or(|x| vq < *x) {
                best_q = Some(vq);
            }
        }
    }
    (best_h.unwrap().to_f64(), best_q.unwrap().to_f64())
}

fn gap_scan_json() -> std::result::Result<serde_json::Value, String> {
    let r = lib(lower_degree_scan(
        &liouville(),
        &half(),
        &ScanParams::new(1, 50, BigRational::from_i64(3)),
    ))?;
    Ok(r.certificate.to_json())
}

// Criterion 3: certified Liouville-constant lower bound over q ≤ 50.
fn liouville_gap() -> Outcome {
    let cert = gap_scan_json()?;
    let lin = &cert["payload"]["min"]["linear"];
    let lo: series_lab::numerics::Dyadic = lin["lo"]
        .as_str()
        .unwrap()
        .parse()
        .map_err(|e| format!("{e}"))?;
    let hi: series_lab::numerics::Dyadic = lin["hi"]
        .as_str()
        .unwrap()
        .parse()
        .map_err(|e| format!("{e}"))?;
    let (oracle_h, oracle_q) = liouville_gap_oracle();
    ensure(lo.is_positive(), "minimum not certified positive")?;
    ensure(
        oracle_h == oracle_q,
        format!("height and denominator forms differ: {oracle_h} vs {oracle_q}"),
    )?;
    let (lo, hi) = (lo.to_f64(), hi.to_f64());
    ensure(
        lo >= oracle_q - ulp(oracle_q),
        format!("certified {lo} below oracle {oracle_q}"),
    )?;
    ensure(
        hi <= oracle_q + ulp(oracle_q),
        format!("certified upper {hi} above oracle {oracle_q}"),
    )?;
    ensure(
        cert["payload"]["min"]["minimal_polynomial"] == "T-1",
        "minimum not at 1",
    )?;
    Ok(format!(
        "min q^3|gamma - p/q| = {lo:.15} (oracle {oracle_q:.15}) at p/q = 1"
    ))
}

// Criterion 4: tail bounds dominate the directly summed tail, ratio ≤ 4.
fn tail_bounds() -> Outcome {
    let s = liouville();
    let mut worst: f64 = 0.0;
    for (name, alpha, root) in [("1/2", half(), 1u32), ("2^(-1/2)", inv_root_two(2), 2)] {
        for n in 1..=5u64 {
            let tb = lib(tail_bound_at(&s, &alpha, n))?;
            // Σ_{k>n} 2^{-k!/root}, exact for k ≥ 2 when root = 2; three terms
            // plus a geometric remainder below 2^{-5040/root}.
            let mut tail = BigRational::zero();
            let mut fact: u64 = (1..=n).product();
            for k in n + 1..=n + 3 {
                fact *= k;
                let e = fact / root as u64;
                tail = &tail + &BigRational::new(BigInt::one(), BigInt::from(2).pow(e as u32));
            }
            let bound = tb.bound.to_rational();
            ensure(
                bound >= tail,
                format!("{name}, n = {n}: bound below the true tail"),
            )?;
            let ratio = (&bound / &tail).to_f64();
            worst = worst.max(ratio);
            ensure(ratio <= 4.0, format!("{name}, n = {n}: ratio {ratio}"))?;
        }
    }
    Ok(format!(
        "alpha in {{1/2, 2^(-1/2)}}, n = 1..5, max ratio {worst:.3}"
    ))
}

/// Eisenstein at `p` for an integer polynomial.
fn eisenstein(f: &IntPolynomial, p: i64) -> bool {
    let p = BigInt::from(p);
    let n = f.degree();
    let c = f.coeffs();
    !(&c[n] % &p).is_zero()
        && c[..n].iter().all(|x| (x % &p).is_zero())
        && !(&c[0] % (&p * &p)).is_zero()
}

// Criterion 5: deg F_{m−1}(2^{-1/m}) = m.
fn coliou_degrees() -> Outcome {
    let s = liouville();
    for m in [2usize, 3, 4, 6] {
        let a = inv_root_two(m);
        let beta = lib(partial_sum(&s, &a, m as u64 - 1))?;
        let d = element_degree(&beta);
        ensure(d == m, format!("m = {m}: degree {d}"))?;
        if m == 3 {
            let mp = minimal_polynomial(&beta);
            ensure(
                mp == poly("4T^3-6T-3"),
                format!("m = 3 minimal polynomial {mp}"),
            )?;
            // β = x + x² with x³ = 1/2 satisfies 4β³ − 6β − 3 = 0, irreducible by Eisenstein at 3.
            let x = 0.5f64.cbrt();
            let b = x + x * x;
            ensure(
                (4.0 * b * b * b - 6.0 * b - 3.0).abs() < 1e-12,
                "oracle relation fails",
            )?;
            ensure(eisenstein(&poly("4T^3-6T-3"), 3), "Eisenstein oracle fails")?;
        }
    }
    Ok("m in {2, 3, 4, 6}; m = 3 gives 4T^3-6T-3".into())
}

fn witness_jsons() -> std::result::Result<Vec<String>, String> {
    let s = liouville();
    let mut out = Vec::new();
    for w in [3, 5, 10] {
        out.push(to_canonical(
            &lib(um_witness(&s, &half(), &BigRational::from_i64(w), 1, 20))?.to_json(),
        ));
    }
    for w in [3, 5] {
        out.push(to_canonical(
            &lib(um_witness(
                &s,
                &inv_root_two(2),
                &BigRational::from_i64(w),
                2,
                20,
            ))?
            .to_json(),
        ));
    }
    Ok(out)
}

// Criterion 6: witnesses exist and re-verify in a fresh process.
fn witnesses() -> Outcome {
    let certs = witness_jsons()?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut idx = Vec::new();
    for (i, text) in certs.iter().enumerate() {
        let path = dir.path().join(format!("cert{i}.json"));
        std::fs::write(&path, text).map_err(|e| e.to_string())?;
        let out = Command::new(env!("CARGO_BIN_EXE_series-lab"))
            .args(["certify", "verify"])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(
            out.status.success(),
            format!(
                "certificate {i} failed: {}",
                String::from_utf8_lossy(&out.stdout)
            ),
        )?;
        let v: serde_json::Value = serde_json::from_str(text).unwrap();
        idx.push(v["payload"]["n"].as_u64().unwrap());
    }
    ensure(
        idx[0] == 3,
        format!("alpha = 1/2, w = 3 witness at n = {}", idx[0]),
    )?;
    Ok(format!("witness indices {idx:?}, all verified by the CLI"))
}

// Criterion 7: lemma path and factorization path agree.
fn radical_lemma() -> Outcome {
    let bases = ["2", "-2", "3", "-3", "4", "-4", "8", "1/2"];
    let mut count = 0;
    for a in bases {
        let a: BigRational = a.parse().unwrap();
        for m in 1..=8u64 {
            let r = lib(radical_degree(&a, m))?;
            let f = lib(radical_degree_by_factoring(&a, m))?;
            ensure(
                r.degree == f.degree(),
                format!("({a}, {m}): {} vs factorization {}", r.degree, f.degree()),
            )?;
            count += 1;
        }
    }
    let r = lib(radical_degree(&rat(-4, 1), 4))?;
    ensure(
        r.degree == 2 && r.minus4_flag,
        "(-4, 4) should have degree 2 with the -4Q^4 flag",
    )?;
    Ok(format!("{count} pairs agree"))
}

fn census(x: u64, m: usize) -> std::result::Result<CountReport, String> {
    lib(count_sm(m, x, DEFAULT_CENSUS_BUDGET))
}

// Criterion 8: Galois census.
fn galois_census() -> Outcome {
    let r2 = census(3, 2)?;
    // Oracle: T² + aT + b, b = ±1, is irreducible iff a² − 4b is not a square.
    let mut oracle = 0;
    for a in -3i64..=3 {
        for b in [1i64, -1] {
            let d = a * a - 4 * b;
            let s = (d.max(0) as f64).sqrt().round() as i64;
            if d < 0 || s * s != d {
                oracle += 1;
            }
        }
    }
    ensure(
        r2.total == 14 && r2.sm_count == 11 && oracle == 11,
        format!("m = 2: {} of {}", r2.sm_count, r2.total),
    )?;
    let reports: Vec<CountReport> = [2, 4, 8]
        .iter()
        .map(|&x| census(x, 3))
        .collect::<Result<_, _>>()?;
    let frac: Vec<f64> = reports
        .iter()
        .map(|r| r.non_sm_count as f64 / r.total as f64)
        .collect();
    ensure(
        frac.windows(2).all(|w| w[1] < w[0]),
        format!("non-S3 fractions {frac:?} not decreasing"),
    )?;
    for r in &reports {
        for row in &r.rows {
            if row.group == Some(GroupLabel::S3) && !row.cyclotomic {
                let b = row
                    .small_root
                    .as_ref()
                    .ok_or(format!("{} lacks a small root", row.poly))?;
                ensure(
                    b.abs().hi < series_lab::numerics::Dyadic::one(),
                    format!("{}: root not inside", row.poly),
                )?;
            }
        }
    }
    let c = fit_constant(&reports).ok_or("no constant fits")?;
    ensure(
        reports.iter().all(|r| bound_holds(r, c)),
        "fitted bound fails on the grid",
    )?;
    Ok(format!(
        "m = 2: 11 of 14; m = 3 non-S3 fractions {frac:.4?}; fitted C = {c:.4}"
    ))
}

fn census_jsons() -> std::result::Result<Vec<String>, String> {
    let mut v = vec![to_canonical(&census(3, 2)?.to_json())];
    for x in [2, 4, 8] {
        let r = census(x, 3)?;
        v.push(to_canonical(&r.to_json()));
        v.push(r.to_csv());
    }
    Ok(v)
}

// Criterion 9: adversarial construction.
fn adversarial() -> Outcome {
    let u: Vec<IntPolynomial> = ["2T-1", "T^2-T-1", "3T+1", "T^2+T-1", "5T-2"]
        .iter()
        .map(|s| poly(s))
        .collect();
    let s = lib(lib(adversarial_series(&u, 5))?.compile())?;
    let rep = lib(validate_structure(&s, 5))?;
    let two = BigRational::from_i64(2);
    ensure(
        rep.restart_ratios.iter().all(|r| *r < two),
        format!("restart ratios {:?}", rep.restart_ratios),
    )?;
    ensure(
        rep.warnings.iter().all(|w| !w.contains("exceed")),
        format!("warnings {:?}", rep.warnings),
    )?;
    let p = lib(degree_profile(&s, &half(), 5))?;
    ensure(
        !p.mahler_condition_prefix,
        "a block is nonzero at the root of U_1",
    )?;
    let max = rep.restart_ratios.iter().max().unwrap();
    Ok(format!(
        "max restart ratio {max}, mahler_condition_prefix = false"
    ))
}

// Criterion 10: byte-identical artifacts across runs.
fn determinism() -> Outcome {
    let a = (
        gap_scan_json()?.to_string(),
        witness_jsons()?,
        census_jsons()?,
    );
    let b = (
        gap_scan_json()?.to_string(),
        witness_jsons()?,
        census_jsons()?,
    );
    ensure(a == b, "artifacts differ between runs")?;
    Ok(format!("{} artifacts identical", 1 + a.1.len() + a.2.len()))
}

type Criterion = (u32, &'static str, Option<u64>, fn() -> Outcome);

fn main() {
    let criteria: Vec<Criterion> = vec![
        (1, "height exactness", Some(10), heights_exact),
        (2, "height sandwich", Some(60), sandwich),
        (3, "Liouville constant lower bound", Some(30), liouville_gap),
        (4, "tail bounds", None, tail_bounds),
        (5, "radical expansion degrees", Some(20), coliou_degrees),
        (6, "U_m witnesses", Some(60), witnesses),
        (7, "radical degree lemma", Some(30), radical_lemma),
        (8, "Galois census", Some(300), galois_census),
        (9, "adversarial construction", Some(10), adversarial),
        (10, "determinism", None, determinism),
    ];
    let mut failed = 0;
    for (id, name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let over = limit.is_some_and(|l| took > Duration::from_secs(l));
        let (ok, detail) = match outcome {
            Ok(d) if !over => (true, d),
            Ok(d) => (false, format!("{d}; runtime over {}s", limit.unwrap())),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {id:>2} {:<4} {name}: {detail} [{:.2}s]",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
