//! Factorization over Z: square-free decomposition, factorization modulo
//! small primes, degree-set sieve, Hensel lifting and subset recombination.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::integer::nth_root_floor;
use super::modp::{factor_squarefree, PolyP};
use super::poly::{square_free_decomposition, IntPolynomial};
use crate::error::{Error, Result};

/// Default degree cap for [`factor_over_z`].
pub const DEFAULT_DEGREE_CAP: usize = 16;

/// `P = unit · ∏ factor^multiplicity` with `unit = ±δ(P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: BigInt,
    pub factors: Vec<(IntPolynomial, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPolynomial {
        let mut acc = IntPolynomial::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

pub fn factor_over_z(p: &IntPolynomial) -> Result<Factorization> {
    factor_over_z_with_cap(p, DEFAULT_DEGREE_CAP)
}

pub fn factor_over_z_with_cap(p: &IntPolynomial, cap: usize) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() > cap {
        return Err(Error::FactorDegreeCap {
            degree: p.degree(),
            cap,
        });
    }
    let content = p.content();
    let unit = if p.leading().is_negative() {
        -content
    } else {
        content
    };
    let mut factors = Vec::new();
    for (g, m) in square_free_decomposition(p)? {
        for f in factor_squarefree_primitive(&g) {
            factors.push((f, m));
        }
    }
    factors.sort_by(|a, b| poly_order(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Ok(Factorization { unit, factors })
}

/// Deterministic order: by degree, then coefficients from the top down.
pub fn poly_order(a: &IntPolynomial, b: &IntPolynomial) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// Irreducible factors of a primitive square-free polynomial with positive
/// leading coefficient.
fn factor_squarefree_primitive(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let n = f.degree();
    if n <= 1 {
        return vec![f.clone()];
    }
    // Pull out the factor T first; it breaks the mod-p squarefree search otherwise.
    if f.coeff(0).is_zero() {
        let rest = f.div_exact(&IntPolynomial::from_i64s(&[0, 1])).unwrap();
        let mut out = vec![IntPolynomial::from_i64s(&[0, 1])];
        out.extend(factor_squarefree_primitive(&rest));
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let lc = f.leading();
    let mut best: Option<(u64, Vec<PolyP>)> = None;
    let mut allowed: BTreeSet<usize> = (0..=n).collect();
    let mut tried = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = reduce(f, p);
        if fp.gcd(&fp.derivative()).degree() > 0 {
            continue;
        }
        let fs = factor_squarefree(&fp.monic(), &mut rng);
        let mut sums = BTreeSet::from([0usize]);
        for g in &fs {
            let next: Vec<usize> = sums.iter().map(|s| s + g.degree()).collect();
            sums.extend(next);
        }
        allowed = allowed.intersection(&sums).copied().collect();
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= 5 || allowed.len() <= 2 {
            break;
        }
    }
    let (p, modular) = best.expect("some prime is good for a square-free polynomial");
    if allowed.len() <= 2 || modular.len() == 1 {
        return vec![f.clone()];
    }
    // Factor coefficients of lc·g for g | f are bounded by |lc|·2^n·‖f‖₂.
    let norm = nth_root_floor(f.norm2_sq().magnitude(), 2) + 1u32;
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * BigInt::from(norm);
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus = &modulus * &modulus;
    }
    let lifted = multifactor_lift(f, &modular, &pb, &modulus);
    recombine(f, lifted, &modulus, &allowed)
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..100).filter(|&q| super::integer::is_prime_u64(q))
}

fn reduce(f: &IntPolynomial, p: u64) -> PolyP {
    let pb = BigInt::from(p);
    PolyP::new(
        p,
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

// Polynomials with coefficients reduced modulo an arbitrary integer m.

fn zm(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = v.iter().map(|c| c.mod_floor(m)).collect();
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

fn zm_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zm(&out, m)
}

fn zm_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let v: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect();
    zm(&v, m)
}

fn zm_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let v: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect();
    zm(&v, m)
}

/// Division by a monic polynomial modulo m.
fn zm_divrem_monic(a: &[BigInt], d: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let dd = d.len() - 1;
    if a.len() <= dd {
        return (Vec::new(), zm(a, m));
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - dd];
    for k in (0..q.len()).rev() {
        let t = r[k + dd].mod_floor(m);
        if t.is_zero() {
            continue;
        }
        for (i, dc) in d.iter().enumerate() {
            r[k + i] -= &t * dc;
        }
        q[k] = t;
    }
    r.truncate(dd);
    (zm(&q, m), zm(&r, m))
}

fn lift_p(a: &PolyP) -> Vec<BigInt> {
    a.c.iter().map(|&x| BigInt::from(x)).collect()
}

/// Two-factor quadratic Hensel lifting: from `f ≡ g·h (mod p)`, `h` monic,
/// to the same congruence modulo `target`.
fn hensel_two(
    f: &[BigInt],
    g: &PolyP,
    h: &PolyP,
    p: &BigInt,
    target: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let (_, s, t) = g.ext_gcd(h);
    let (mut g, mut h, mut s, mut t) = (lift_p(g), lift_p(h), lift_p(&s), lift_p(&t));
    let mut m = p.clone();
    while &m < target {
        let m2 = &m * &m;
        let e = zm_sub(f, &zm_mul(&g, &h, &m2), &m2);
        let (q, r) = zm_divrem_monic(&zm_mul(&s, &e, &m2), &h, &m2);
        let g2 = zm_add(
            &zm_add(&g, &zm_mul(&t, &e, &m2), &m2),
            &zm_mul(&q, &g, &m2),
            &m2,
        );
        let h2 = zm_add(&h, &r, &m2);
        let b = zm_sub(
            &zm_add(&zm_mul(&s, &g2, &m2), &zm_mul(&t, &h2, &m2), &m2),
            &[BigInt::one()],
            &m2,
        );
        let (c, d) = zm_divrem_monic(&zm_mul(&s, &b, &m2), &h2, &m2);
        s = zm_sub(&s, &d, &m2);
        t = zm_sub(
            &zm_sub(&t, &zm_mul(&t, &b, &m2), &m2),
            &zm_mul(&c, &g2, &m2),
            &m2,
        );
        g = g2;
        h = h2;
        m = m2;
    }
    (zm(&g, target), zm(&h, target))
}

/// Lifts `f ≡ lc·∏ factors (mod p)` to monic factors modulo `target`.
fn multifactor_lift(
    f: &IntPolynomial,
    factors: &[PolyP],
    p: &BigInt,
    target: &BigInt,
) -> Vec<Vec<BigInt>> {
    fn go(
        f: &[BigInt],
        factors: &[PolyP],
        p: &BigInt,
        target: &BigInt,
        out: &mut Vec<Vec<BigInt>>,
    ) {
        if factors.len() == 1 {
            // f ≡ lc·g: normalize to monic modulo target.
            let lc = f.last().unwrap().clone();
            let inv = mod_inverse(&lc, target);
            let g: Vec<BigInt> = f.iter().map(|c| c * &inv).collect();
            out.push(zm(&g, target));
            return;
        }
        let half = factors.len() / 2;
        let pu = factors[0].p;
        let lc_p = (f.last().unwrap().mod_floor(p)).to_u64().unwrap();
        let mut g = PolyP::new(pu, vec![lc_p]);
        for a in &factors[..half] {
            g = g.mul(a);
        }
        let mut h = PolyP::one(pu);
        for a in &factors[half..] {
            h = h.mul(a);
        }
        let (gl, hl) = hensel_two(f, &g, &h, p, target);
        go(&gl, &factors[..half], p, target, out);
        go(&hl, &factors[half..], p, target, out);
    }
    let mut out = Vec::new();
    go(&zm(f.coeffs(), target), factors, p, target, &mut out);
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

fn symmetric(v: &[BigInt], m: &BigInt) -> IntPolynomial {
    let half = m >> 1;
    IntPolynomial::new(
        v.iter()
            .map(|c| {
                let c = c.mod_floor(m);
                if c > half {
                    c - m
                } else {
                    c
                }
            })
            .collect(),
    )
}

fn recombine(
    f: &IntPolynomial,
    mut lifted: Vec<Vec<BigInt>>,
    m: &BigInt,
    allowed: &BTreeSet<usize>,
) -> Vec<IntPolynomial> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let k = lifted.len();
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let deg: usize = subset.iter().map(|&i| lifted[i].len() - 1).sum();
            if allowed.contains(&deg) {
                let lc = rest.leading();
                let mut g = vec![lc.clone()];
                for &i in &subset {
                    g = zm_mul(&g, &lifted[i], m);
                }
                let cand = symmetric(&g, m).primitive_part();
                if let Some(q) = rest.div_exact(&cand) {
                    out.push(cand);
                    rest = q;
                    for &i in subset.iter().rev() {
                        lifted.remove(i);
                    }
                    continue 'outer;
                }
            }
            // Next subset of the same size in lexicographic order.
            let mut i = size;
            loop {
                if i == 0 {
                    size += 1;
                    continue 'outer;
                }
                i -= 1;
                if subset[i] < k - size + i {
                    break;
                }
            }
            subset[i] += 1;
            for j in i + 1..size {
                subset[j] = subset[j - 1] + 1;
            }
        }
    }
    out.push(rest.primitive_part());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn sophie_germain() {
        let f = factor_over_z(&p(&[4, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(&[2, -2, 1]), 1), (p(&[2, 2, 1]), 1)]);
        assert_eq!(f.unit, BigInt::one());
    }

    #[test]
    fn content_and_irreducible() {
        let f = factor_over_z(&p(&[-2, 0, 2])).unwrap();
        assert_eq!(f.unit, BigInt::from(2));
        assert_eq!(f.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
        let f = factor_over_z(&p(&[-2, 0, 1])).unwrap();
        assert!(f.is_irreducible());
    }

    #[test]
    fn swinnerton_dyer_like_and_cap() {
        // T^8 - 1 = (T-1)(T+1)(T^2+1)(T^4+1), with a negative scalar.
        let q = p(&[3, 0, 0, 0, 0, 0, 0, 0, -3]);
        let f = factor_over_z(&q).unwrap();
        assert_eq!(f.factors.len(), 4);
        assert_eq!(f.expand(), q);
        let big = IntPolynomial::x_pow_minus_one(17);
        assert!(matches!(
            factor_over_z(&big),
            Err(Error::FactorDegreeCap { .. })
        ));
    }

    #[test]
    fn non_monic_with_multiplicity() {
        // (2T+1)^2 (3T^2-5) T
        let a = p(&[1, 2]);
        let b = p(&[-5, 0, 3]);
        let q = &(&a.pow(2) * &b) * &p(&[0, 1]);
        let f = factor_over_z(&q).unwrap();
        assert_eq!(f.expand(), q);
        assert_eq!(f.factors, vec![(p(&[0, 1]), 1), (a, 2), (b, 1)]);
    }
}
