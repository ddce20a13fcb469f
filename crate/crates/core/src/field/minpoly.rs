//! Minimal polynomials by the first linear dependence among powers.

use num_traits::{One, Zero};

use super::NFElement;
use crate::exact::{BigRational, IntPolynomial, RatPolynomial};

/// Primitive Z-irreducible polynomial with positive leading coefficient
/// vanishing at `β`.
pub fn minimal_polynomial(beta: &NFElement) -> IntPolynomial {
    if let Some(q) = beta.as_rational() {
        return RatPolynomial::new(vec![-q, BigRational::one()]).to_primitive_int();
    }
    let m = beta.field().degree();
    // Echelon rows: (pivot, reduced vector, combination of powers giving it).
    let mut rows: Vec<(usize, Vec<BigRational>, Vec<BigRational>)> = Vec::new();
    let mut power = beta.field().one();
    for k in 0..=m {
        let mut v = power.coords().to_vec();
        let mut comb = vec![BigRational::zero(); k + 1];
        comb[k] = BigRational::one();
        for (pivot, rv, rc) in &rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = &v[*pivot] / &rv[*pivot];
            for (x, y) in v.iter_mut().zip(rv) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
            for (x, y) in comb.iter_mut().zip(rc) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        match v.iter().position(|c| !c.is_zero()) {
            None => return RatPolynomial::new(comb).to_primitive_int(),
            Some(pivot) => rows.push((pivot, v, comb)),
        }
        power = power.mul(beta).expect("same field");
    }
    unreachable!("powers 0..=m of an element are linearly dependent")
}

pub fn element_degree(beta: &NFElement) -> usize {
    minimal_polynomial(beta).degree()
}
