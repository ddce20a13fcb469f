//! Exact recognition of cyclotomic polynomials.

use super::integer::euler_phi;
use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// All `n` with `φ(n) = d`.
///
/// `φ(n) ≥ sqrt(n/2)`, so every preimage satisfies `n ≤ 2d²` (plus a small
/// margin for `d = 1`).
pub fn phi_preimages(d: u64) -> Vec<u64> {
    let limit = 2 * d * d + 2;
    (1..=limit).filter(|&n| euler_phi(n) == d).collect()
}

/// For a monic irreducible `P`, returns `Some(n)` if `P = Φ_n`.
///
/// The test is exact: an irreducible factor of `T^n − 1` of degree `φ(n)`
/// is `Φ_n`, and the smallest such `n` is its order.
pub fn is_cyclotomic(p: &IntPolynomial) -> Result<Option<u64>> {
    if p.is_zero() || !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = p.degree() as u64;
    if d == 0 {
        return Ok(None);
    }
    // Cyclotomic polynomials have constant term ±1 and coefficients bounded
    // well below 2^d for d ≤ 16; quick rejection before the divisions.
    if !p.coeff(0).magnitude().eq(&num_bigint::BigUint::from(1u32)) {
        return Ok(None);
    }
    for n in phi_preimages(d) {
        if p.divides(&IntPolynomial::x_pow_minus_one(n as usize)) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// `Φ_n` by the recursive quotient `(T^n − 1) / ∏_{d | n, d < n} Φ_d`.
pub fn cyclotomic_polynomial(n: u64) -> IntPolynomial {
    let mut acc = IntPolynomial::x_pow_minus_one(n as usize);
    for d in super::integer::divisors(n) {
        if d < n {
            acc = acc
                .div_exact(&cyclotomic_polynomial(d))
                .expect("Φ_d divides T^n - 1");
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let p = |c: &[i64]| IntPolynomial::from_i64s(c);
        assert_eq!(is_cyclotomic(&p(&[1, 1, 1])).unwrap(), Some(3));
        assert_eq!(is_cyclotomic(&p(&[-2, 0, 1])).unwrap(), None);
        assert_eq!(is_cyclotomic(&p(&[1, 0, 0, 0, 1])).unwrap(), Some(8));
        assert_eq!(is_cyclotomic(&p(&[1, 0, 2])), Err(Error::NotMonic));
        assert_eq!(is_cyclotomic(&p(&[-1, 1])).unwrap(), Some(1));
        assert_eq!(is_cyclotomic(&p(&[1, 1])).unwrap(), Some(2));
    }

    #[test]
    fn preimages() {
        assert_eq!(phi_preimages(1), vec![1, 2]);
        assert_eq!(phi_preimages(4), vec![5, 8, 10, 12]);
    }
}
