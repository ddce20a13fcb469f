//! Whether `Q(α)` has a proper subfield other than `Q`.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::IntPolynomial;
use crate::field::NumberField;
use crate::galois::{galois_group, GroupLabel};

fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// `c^{n−1}·p(T/c)` for leading coefficient `c`: monic, same splitting field.
fn monic_companion(p: &IntPolynomial) -> IntPolynomial {
    let c = p.leading();
    if c.is_one() {
        return p.clone();
    }
    let n = p.degree();
    let coeffs = (0..=n)
        .map(|i| {
            if i == n {
                BigInt::one()
            } else {
                p.coeff(i) * c.pow((n - 1 - i) as u32)
            }
        })
        .collect();
    IntPolynomial::new(coeffs)
}

/// True when the only subfields of `Q(α)` are `Q` and `Q(α)`.
///
/// Prime degree (and degree 1) is always simple. In degree 4 the field is
/// simple exactly for Galois group `S_4` or `A_4`, whose point stabilizers
/// are maximal.
pub fn simplicity_check(field: &NumberField) -> Result<bool> {
    let n = field.degree();
    if n == 1 || is_prime(n) {
        return Ok(true);
    }
    if n == 4 {
        let g = galois_group(&monic_companion(field.defining_poly()))?;
        return Ok(matches!(g, GroupLabel::S4 | GroupLabel::A4));
    }
    Err(Error::SimplicityUndecided(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(p: &str) -> Result<bool> {
        simplicity_check(&NumberField::new(&p.parse().unwrap()).unwrap())
    }

    #[test]
    fn examples() {
        assert!(check("T^3-2").unwrap());
        assert!(!check("T^4-2").unwrap());
        assert!(!check("T^4+T^3+T^2+T+1").unwrap());
        assert!(check("T^4+8T+12").unwrap());
        assert!(check("T^4-T-1").unwrap());
        assert!(check("2T^4-1").is_ok_and(|s| !s));
        assert!(matches!(check("T^6-2"), Err(Error::SimplicityUndecided(6))));
    }
}
