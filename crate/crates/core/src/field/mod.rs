//! Number fields `Q(α)` in the power basis and their elements.

mod minpoly;

use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factor_over_z, BigRational, IntPolynomial, RatPolynomial};
use crate::numerics::roots::{eval_rat_poly, isolate_squarefree, precision_cap, refine_root};
use crate::numerics::ComplexBall;

pub use minpoly::{element_degree, minimal_polynomial};

/// `Q(α)` for `α` a chosen root of a Z-irreducible polynomial.
pub struct NumberField {
    defining: IntPolynomial,
    monic: RatPolynomial,
    root_index: usize,
    embedding_box: ComplexBall,
    refined: Mutex<ComplexBall>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(root {} of {})", self.root_index, self.defining)
    }
}

impl NumberField {
    /// Field generated by the canonical root: smallest real part, then
    /// smallest imaginary part.
    pub fn new(poly: &IntPolynomial) -> Result<Arc<Self>> {
        Self::with_root(poly, 0)
    }

    /// Field generated by the `k`-th certified root in canonical order.
    pub fn with_root(poly: &IntPolynomial, k: usize) -> Result<Arc<Self>> {
        let defining = Self::check_irreducible(poly)?;
        let roots = isolate_squarefree(&defining, 64)?;
        let ball = roots.get(k).cloned().ok_or_else(|| {
            Error::Invalid(format!(
                "root index {k} out of range (degree {})",
                roots.len()
            ))
        })?;
        Ok(Self::build(defining, k, ball))
    }

    /// Field generated by the unique root inside a caller-supplied box.
    pub fn with_box(poly: &IntPolynomial, bx: &ComplexBall) -> Result<Arc<Self>> {
        let defining = Self::check_irreducible(poly)?;
        let mut prec = 64;
        loop {
            let roots = isolate_squarefree(&defining, prec)?;
            let hits: Vec<usize> = (0..roots.len())
                .filter(|&i| roots[i].overlaps(bx))
                .collect();
            if hits.is_empty() {
                return Err(Error::Invalid("embedding box contains no root".into()));
            }
            let inside: Vec<usize> = hits
                .iter()
                .copied()
                .filter(|&i| bx.contains_ball(&roots[i]))
                .collect();
            if inside.len() >= 2 {
                return Err(Error::Invalid(
                    "embedding box contains several roots".into(),
                ));
            }
            if inside.len() == 1 && hits.len() == 1 {
                let k = inside[0];
                return Ok(Self::build(defining, k, roots[k].clone()));
            }
            prec *= 2;
            if prec > precision_cap() {
                return Err(Error::PrecisionCap {
                    cap: precision_cap(),
                });
            }
        }
    }

    /// `Q` itself, presented as `Q(0)` with defining polynomial `T`.
    pub fn rationals() -> Arc<Self> {
        let t = IntPolynomial::from_i64s(&[0, 1]);
        Self::build(t, 0, ComplexBall::zero(64))
    }

    fn check_irreducible(poly: &IntPolynomial) -> Result<IntPolynomial> {
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if poly.degree() == 0 {
            return Err(Error::Invalid(
                "defining polynomial must be nonconstant".into(),
            ));
        }
        let f = factor_over_z(poly)?;
        if !f.is_irreducible() {
            return Err(Error::Invalid(format!("{poly} is not irreducible over Z")));
        }
        Ok(poly.primitive_part())
    }

    fn build(defining: IntPolynomial, root_index: usize, ball: ComplexBall) -> Arc<Self> {
        let monic = defining.to_rat().monic();
        Arc::new(Self {
            defining,
            monic,
            root_index,
            refined: Mutex::new(ball.clone()),
            embedding_box: ball,
        })
    }

    pub fn defining_poly(&self) -> &IntPolynomial {
        &self.defining
    }

    pub fn monic_poly(&self) -> &RatPolynomial {
        &self.monic
    }

    pub fn degree(&self) -> usize {
        self.defining.degree()
    }

    pub fn root_index(&self) -> usize {
        self.root_index
    }

    pub fn embedding_box(&self) -> &ComplexBall {
        &self.embedding_box
    }

    /// True when the chosen root is certified real.
    pub fn is_real(&self) -> bool {
        self.embedding_box.im.is_zero()
    }

    /// The chosen root to within `2^-bits · max(1, |α|)`.
    pub fn embedding(&self, bits: u64) -> Result<ComplexBall> {
        let mut cache = self.refined.lock().unwrap_or_else(|e| e.into_inner());
        let fine = refine_root(&self.defining, &cache, bits)?;
        if fine.rad < cache.rad {
            *cache = fine.clone();
        }
        Ok(fine)
    }

    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other)
            || (self.defining == other.defining && self.root_index == other.root_index)
    }

    pub fn element(self: &Arc<Self>, coords: Vec<BigRational>) -> Result<NFElement> {
        if coords.len() > self.degree() {
            return Err(Error::Invalid(format!(
                "expected at most {} coordinates, got {}",
                self.degree(),
                coords.len()
            )));
        }
        let mut coords = coords;
        coords.resize(self.degree(), BigRational::zero());
        Ok(NFElement {
            field: self.clone(),
            coords,
        })
    }

    pub fn from_rational(self: &Arc<Self>, q: BigRational) -> NFElement {
        let mut coords = vec![BigRational::zero(); self.degree()];
        coords[0] = q;
        NFElement {
            field: self.clone(),
            coords,
        }
    }

    pub fn zero(self: &Arc<Self>) -> NFElement {
        self.from_rational(BigRational::zero())
    }

    pub fn one(self: &Arc<Self>) -> NFElement {
        self.from_rational(BigRational::one())
    }

    /// The generator `α`.
    pub fn generator(self: &Arc<Self>) -> NFElement {
        let poly = RatPolynomial::x().rem(&self.monic);
        self.from_poly(&poly)
    }

    /// Element represented by `p(α)`.
    pub fn from_poly(self: &Arc<Self>, p: &RatPolynomial) -> NFElement {
        let r = p.rem(&self.monic);
        let mut coords = r.into_coeffs();
        coords.resize(self.degree(), BigRational::zero());
        NFElement {
            field: self.clone(),
            coords,
        }
    }
}

/// Element of a number field, as coordinates in `1, α, …, α^{m−1}`.
#[derive(Clone)]
pub struct NFElement {
    field: Arc<NumberField>,
    coords: Vec<BigRational>,
}

impl PartialEq for NFElement {
    fn eq(&self, o: &Self) -> bool {
        self.field.same_as(&o.field) && self.coords == o.coords
    }
}

impl fmt::Debug for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] in {:?}", parts.join(", "), self.field)
    }
}

impl NFElement {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn as_poly(&self) -> RatPolynomial {
        RatPolynomial::new(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// `Some(q)` if the element is the rational `q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coords.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.field.same_as(&o.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let coords = self
            .coords
            .iter()
            .zip(&o.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            field: self.field.clone(),
            coords,
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let coords = self
            .coords
            .iter()
            .zip(&o.coords)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            field: self.field.clone(),
            coords,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        if let Some(q) = self.as_rational() {
            return Ok(o.scale(&q));
        }
        if let Some(q) = o.as_rational() {
            return Ok(self.scale(&q));
        }
        Ok(self.field.from_poly(&(&self.as_poly() * &o.as_poly())))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(self.field.from_rational(q.recip()?));
        }
        let (g, s, _) = self.as_poly().ext_gcd(self.field.monic_poly());
        debug_assert!(g.degree() == 0, "irreducible modulus");
        Ok(self.field.from_poly(&s))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        self.mul(&o.inverse()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).unwrap();
            }
        }
        acc
    }

    /// Ball around the image of the element under the field's embedding,
    /// with radius at most `2^-bits`.
    pub fn eval(&self, bits: u64) -> Result<ComplexBall> {
        let cap = precision_cap();
        if let Some(q) = self.as_rational() {
            let b = ComplexBall::from_rational(&q, bits.max(64) + 4);
            if b.rad.is_zero() || b.rad.top() <= -(bits as i64) {
                return Ok(b);
            }
        }
        let p = self.as_poly();
        let mut extra = 16
            + self
                .coords
                .iter()
                .map(|c| c.numer().bits().max(c.denom().bits()))
                .max()
                .unwrap_or(0)
                / 8;
        loop {
            let wp = bits + extra;
            if wp > cap.max(bits + 64) {
                return Err(Error::PrecisionCap { cap });
            }
            let a = self.field.embedding(wp)?.with_prec(wp);
            let v = eval_rat_poly(&p, &a);
            if v.rad.is_zero() || v.rad.top() <= -(bits as i64) {
                return Ok(v);
            }
            extra += (v.rad.top() + bits as i64).max(0) as u64 + 8;
        }
    }
}
