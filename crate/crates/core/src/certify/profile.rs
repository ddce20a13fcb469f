//! Degrees and heights of the partial sums `F_n(α)`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{element_degree, NFElement};
use crate::heights::{height, HeightEnclosure};
use crate::numerics::elementary::log_int;
use crate::numerics::Interval;
use crate::report;
use crate::series::{abs_upper, block_value, Series};

use super::HEIGHT_TOL;

#[derive(Clone, Debug)]
pub struct ProfileRow {
    pub n: u64,
    pub degree: usize,
    pub height: HeightEnclosure,
    /// `P_n(α) ≠ 0`, i.e. `F_n(α) ≠ F_{n−1}(α)`.
    pub block_nonzero: bool,
    /// `s_n·h(α) + log max_{k ≤ s_n}|a_k| + log(s_n + 1)`.
    pub height_bound: Interval,
    pub bound_holds: bool,
}

#[derive(Clone, Debug)]
pub struct DegreeProfile {
    pub rows: Vec<ProfileRow>,
    pub stabilized_m: Option<usize>,
    pub mahler_condition_prefix: bool,
}

impl DegreeProfile {
    pub fn degrees(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.degree).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.rows.iter().map(|r| json!({
                "n": r.n,
                "degree": r.degree,
                "height": r.height.to_json(),
                "block_nonzero": r.block_nonzero,
                "height_bound": report::interval(&r.height_bound),
                "height_bound_holds": r.bound_holds,
            })).collect::<Vec<_>>(),
            "stabilized_m": self.stabilized_m,
            "stabilized_m_caveat": "heuristic: read off a finite prefix, not a proof of recurrence",
            "mahler_condition_prefix": self.mahler_condition_prefix,
        })
    }
}

/// Smallest degree carried by two distinct values among the last `⌈N/2⌉` rows.
fn stabilized(rows: &[ProfileRow], values: &[NFElement]) -> Option<usize> {
    let k = rows.len().div_ceil(2);
    let start = rows.len() - k;
    let mut best: Option<usize> = None;
    for i in start..rows.len() {
        let d = rows[i].degree;
        let twice =
            (start..rows.len()).any(|j| j != i && rows[j].degree == d && values[j] != values[i]);
        if twice && best.is_none_or(|b| d < b) {
            best = Some(d);
        }
    }
    best
}

pub fn degree_profile(series: &Series, alpha: &NFElement, n_max: u64) -> Result<DegreeProfile> {
    if n_max < 2 {
        return Err(Error::Invalid("degree profile needs N ≥ 2".into()));
    }
    let n_max = series.block_count().map_or(n_max, |c| n_max.min(c));
    let floor = series
        .radius_floor()
        .ok_or_else(|| Error::Invalid("series has no radius floor".into()))?;
    if abs_upper(alpha)?.to_rational() >= *floor {
        return Err(Error::Invalid(
            "|α| is not certified below the radius floor".into(),
        ));
    }
    let wp = 64;
    let h_alpha = height(alpha, HEIGHT_TOL)?.interval();
    let mut acc = alpha.field().zero();
    let mut max_coeff = num_bigint::BigInt::from(0);
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for n in 1..=n_max {
        let p = block_value(series, alpha, n)?;
        for (_, c) in series.block_terms(n)? {
            let c = num_traits::Signed::abs(&c);
            if c > max_coeff {
                max_coeff = c;
            }
        }
        acc = acc.add(&p)?;
        let s_n = series.s(n)?;
        let h = height(&acc, HEIGHT_TOL)?;
        let s_iv = Interval::from_i64(s_n as i64);
        let mut bound = h_alpha
            .mul(&s_iv, wp)
            .add(&log_int(&(s_n + 1).into(), wp), wp);
        if max_coeff > num_bigint::BigInt::from(1) {
            bound = bound.add(&log_int(&max_coeff, wp), wp);
        }
        rows.push(ProfileRow {
            n,
            degree: element_degree(&acc),
            bound_holds: h.lower <= bound.hi,
            height: h,
            block_nonzero: !p.is_zero(),
            height_bound: bound,
        });
        values.push(acc.clone());
    }
    let stabilized_m = stabilized(&rows, &values);
    let mahler_condition_prefix = rows.iter().any(|r| r.block_nonzero);
    Ok(DegreeProfile {
        rows,
        stabilized_m,
        mahler_condition_prefix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{BigRational, IntPolynomial};
    use crate::field::NumberField;
    use crate::series::{adversarial_series, SeriesSpec};

    fn inv_sqrt2() -> NFElement {
        let k = NumberField::new(&"T^2-2".parse().unwrap()).unwrap();
        let k = if k.embedding_box().re.is_negative() {
            NumberField::with_root(k.defining_poly(), 1).unwrap()
        } else {
            k
        };
        k.generator().scale(&BigRational::ratio(1, 2))
    }

    #[test]
    fn liouville_at_inverse_sqrt2() {
        let s = SeriesSpec::factorial(1).compile().unwrap();
        let p = degree_profile(&s, &inv_sqrt2(), 5).unwrap();
        assert_eq!(p.degrees(), vec![2; 5]);
        assert_eq!(p.stabilized_m, Some(2));
        assert!(p.mahler_condition_prefix);
        assert!(p.rows.iter().all(|r| r.bound_holds));
    }

    #[test]
    fn shifted_liouville_is_rational() {
        let s = SeriesSpec::factorial(2).compile().unwrap();
        let p = degree_profile(&s, &inv_sqrt2(), 5).unwrap();
        assert_eq!(p.degrees(), vec![1; 5]);
        assert_eq!(p.stabilized_m, Some(1));
    }

    #[test]
    fn adversarial_at_root_of_first_factor() {
        let u: Vec<IntPolynomial> = ["2T-1", "3T-1", "T^2-T-1"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let s = adversarial_series(&u, 3).unwrap().compile().unwrap();
        let k = NumberField::rationals();
        let alpha = k.from_rational(BigRational::ratio(1, 2));
        let p = degree_profile(&s, &alpha, 3).unwrap();
        assert!(!p.mahler_condition_prefix);
        assert_eq!(p.stabilized_m, None);
    }
}
