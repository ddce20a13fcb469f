//! Series whose values at the roots of `U_1` are algebraic although every
//! block restarts far out: `f(z) = Σ z^{t_{n−1}} Q_n(z)` with `Q_n = U_1⋯U_n`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::spec::{NumStr, SeriesKind, SeriesSpec};
use crate::error::{Error, Result};
use crate::exact::IntPolynomial;

/// Block starts `t`, block ends `s`, coefficients, and `Q_1..Q_n`.
pub(crate) type Layout = (
    Vec<u64>,
    Vec<u64>,
    BTreeMap<u64, BigInt>,
    Vec<IntPolynomial>,
);

/// Block boundaries, coefficients and `Q_n` for the first `n` blocks.
///
/// `t_{n−1}` is the least integer with `t_{n−1} ≥ deg Q_n` (strict for
/// `n ≥ 2`, which keeps `s_n < 2 t_{n−1}`), `t_{n−1} > s_{n−1}`, and
/// `max_{j ≤ n} |Q_j| ≤ (1 + 1/n)^{t_{n−1}}`. The final `t_n` is `s_n + 1`.
pub(crate) fn layout(u: &[IntPolynomial], n: usize) -> Result<Layout> {
    if u.is_empty() || n == 0 {
        return Err(Error::Invalid(
            "adversarial construction needs a nonempty U".into(),
        ));
    }
    if n > u.len() {
        return Err(Error::Invalid(format!(
            "requested {n} blocks but U has {} polynomials",
            u.len()
        )));
    }
    if let Some(p) = u.iter().find(|p| p.is_zero() || p.degree() == 0) {
        return Err(Error::Invalid(format!(
            "U must contain nonconstant polynomials, got {p}"
        )));
    }
    let mut q = IntPolynomial::constant(BigInt::from(1));
    let mut qs = Vec::new();
    let mut t: Vec<u64> = Vec::new();
    let mut s: Vec<u64> = Vec::new();
    let mut coeffs = BTreeMap::new();
    let mut height = BigInt::zero();
    for (i, ui) in u.iter().take(n).enumerate() {
        let idx = (i + 1) as u64;
        q = &q * ui;
        height = height.max(q.max_abs());
        let deg = q.degree() as u64;
        let mut lo = if idx >= 2 { deg + 1 } else { deg };
        if let Some(&prev) = s.last() {
            lo = lo.max(prev + 1);
        }
        // Least t ≥ lo with height·idx^t ≤ (idx+1)^t.
        let mut a = BigInt::from(idx).pow(lo as u32);
        let mut b = BigInt::from(idx + 1).pow(lo as u32);
        let mut tn = lo;
        while &height * &a > b {
            a *= idx;
            b *= idx + 1;
            tn += 1;
        }
        t.push(tn);
        s.push(tn + deg);
        for (j, c) in q.coeffs().iter().enumerate() {
            if !c.is_zero() {
                coeffs.insert(tn + j as u64, c.clone());
            }
        }
        qs.push(q.clone());
    }
    t.push(s[s.len() - 1] + 1);
    Ok((t, s, coeffs, qs))
}

/// Spec for the first `n` blocks of the construction over `u`.
pub fn adversarial_series(u: &[IntPolynomial], n: usize) -> Result<SeriesSpec> {
    layout(u, n)?;
    let mut spec = SeriesSpec::with_kind(SeriesKind::Adversarial {
        u: u.iter().map(|p| p.to_string()).collect(),
        n,
    });
    spec.restart_bound = Some(NumStr("2".into()));
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn two_linear_factors() {
        let (t, s, c, q) = layout(&[p("T-1"), p("T+1")], 2).unwrap();
        assert_eq!(t, vec![1, 3, 6]);
        assert_eq!(s, vec![2, 5]);
        assert_eq!(q[1], p("T^2-1"));
        assert_eq!(c.get(&3), Some(&BigInt::from(-1)));
        assert_eq!(c.get(&5), Some(&BigInt::from(1)));
    }

    #[test]
    fn single_factor() {
        let (t, s, _, _) = layout(&[p("T-1")], 1).unwrap();
        assert_eq!((t[0], s[0]), (1, 2));
        assert!(layout(&[], 1).is_err());
    }

    #[test]
    fn growth_constraint_binds() {
        let (t, s, _, _) = layout(&[p("3T-1"), p("T+5"), p("T-7")], 3).unwrap();
        for i in 1..s.len() {
            assert!(s[i] < 2 * t[i]);
        }
        // |Q_3| = |(3T-1)(T+5)(T-7)| = 103 needs (4/3)^t ≥ 103.
        assert!(t[2] >= 17);
    }
}
