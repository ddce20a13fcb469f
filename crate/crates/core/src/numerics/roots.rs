//! Certified isolation of the complex roots of integer polynomials.
//!
//! Approximations come from Aberth–Ehrlich iteration in rounded dyadic
//! arithmetic. They are only trusted after the inclusion test: with the
//! Weierstrass corrections `W_i = P(z_i) / (lc·∏_{j≠i}(z_i − z_j))`, the roots
//! of `P` are the eigenvalues of `diag(z_i) − [W_i]_{ij}`, so Gerschgorin gives
//! disks `D(z_i − W_i, (n−1)|W_i|)`, and an isolated disk holds exactly one
//! root. All quantities in the test are evaluated in ball arithmetic.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::ball::ComplexBall;
use super::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};
use crate::exact::{square_free_decomposition, BigRational, IntPolynomial, RatPolynomial};

/// Default hard cap on working precision, in bits.
pub const DEFAULT_PRECISION_CAP: u64 = 1 << 20;

/// Working precision cap: `SERIES_LAB_PRECISION_CAP` if set, else
/// [`DEFAULT_PRECISION_CAP`].
pub fn precision_cap() -> u64 {
    static CAP: OnceLock<u64> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("SERIES_LAB_PRECISION_CAP")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .filter(|&v: &u64| v >= 64)
            .unwrap_or(DEFAULT_PRECISION_CAP)
    })
}

/// One isolated root with its multiplicity in the input polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBall {
    pub ball: ComplexBall,
    pub multiplicity: u32,
}

/// Approximate complex number; every operation rounds to nearest at `prec`.
#[derive(Clone, Debug)]
struct Cx {
    re: Dyadic,
    im: Dyadic,
}

impl Cx {
    fn zero() -> Self {
        Cx {
            re: Dyadic::zero(),
            im: Dyadic::zero(),
        }
    }
    fn add(&self, o: &Cx, p: u64) -> Cx {
        Cx {
            re: self.re.add_round(&o.re, p, Round::Nearest),
            im: self.im.add_round(&o.im, p, Round::Nearest),
        }
    }
    fn sub(&self, o: &Cx, p: u64) -> Cx {
        Cx {
            re: self.re.sub_round(&o.re, p, Round::Nearest),
            im: self.im.sub_round(&o.im, p, Round::Nearest),
        }
    }
    fn mul(&self, o: &Cx, p: u64) -> Cx {
        Cx {
            re: self
                .re
                .mul(&o.re)
                .sub(&self.im.mul(&o.im))
                .round(p, Round::Nearest),
            im: self
                .re
                .mul(&o.im)
                .add(&self.im.mul(&o.re))
                .round(p, Round::Nearest),
        }
    }
    fn norm2(&self) -> Dyadic {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn div(&self, o: &Cx, p: u64) -> Option<Cx> {
        if o.is_zero() {
            return None;
        }
        let n = o.norm2().round(p + 8, Round::Nearest);
        let num = self.mul(
            &Cx {
                re: o.re.clone(),
                im: o.im.neg(),
            },
            p + 8,
        );
        Some(Cx {
            re: num.re.div_round(&n, p, Round::Nearest),
            im: num.im.div_round(&n, p, Round::Nearest),
        })
    }
    /// `⌊log2 |z|⌋`-ish magnitude, `i64::MIN` for zero.
    fn mag(&self) -> i64 {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => i64::MIN,
            (false, true) => self.re.top(),
            (true, false) => self.im.top(),
            _ => self.re.top().max(self.im.top()),
        }
    }
    fn round(&self, p: u64) -> Cx {
        Cx {
            re: self.re.round(p, Round::Nearest),
            im: self.im.round(p, Round::Nearest),
        }
    }
}

fn horner(coeffs: &[Dyadic], z: &Cx, p: u64) -> Cx {
    let mut acc = Cx::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, p);
        acc.re = acc.re.add_round(c, p, Round::Nearest);
    }
    acc
}

fn horner_ball(coeffs: &[BigInt], z: &ComplexBall) -> ComplexBall {
    let mut acc = ComplexBall::zero(z.prec);
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(&ComplexBall::from_int(c, z.prec));
    }
    acc
}

/// `log2 |c|` as a float, for nonzero `c`.
fn log2_abs(c: &BigInt) -> f64 {
    let bits = c.bits();
    if bits <= 1000 {
        c.abs().to_f64().unwrap().log2()
    } else {
        let shift = bits - 60;
        ((c.abs() >> shift).to_f64().unwrap()).log2() + shift as f64
    }
}

/// Starting points on circles whose radii come from the upper convex hull of
/// `(i, log2|a_i|)`.
fn initial_points(p: &IntPolynomial) -> Vec<Cx> {
    let n = p.degree();
    let pts: Vec<(usize, f64)> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, log2_abs(c)))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross =
                (b.0 as f64 - a.0 as f64) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut out = Vec::with_capacity(n);
    let sigma = 0.7;
    for w in hull.windows(2) {
        let (i, li) = w[0];
        let (j, lj) = w[1];
        let k = j - i;
        let lr = (li - lj) / k as f64;
        let e = lr.floor();
        let scale = 2f64.powf(lr - e);
        for m in 0..k {
            let th = 2.0 * PI * m as f64 / k as f64 + 2.0 * PI * i as f64 / n as f64 + sigma;
            let re = Dyadic::from_f64(scale * th.cos()).mul_pow2(e as i64);
            let im = Dyadic::from_f64(scale * th.sin()).mul_pow2(e as i64);
            out.push(Cx { re, im });
        }
    }
    // Roots at zero (trailing zero coefficients) are handled by the caller.
    while out.len() < n {
        out.push(Cx {
            re: Dyadic::pow2(-1),
            im: Dyadic::pow2(-2),
        });
    }
    out
}

/// Runs Aberth–Ehrlich sweeps until the corrections are below the working
/// precision or the sweep budget is spent.
fn aberth(coeffs: &[Dyadic], dcoeffs: &[Dyadic], z: &mut [Cx], wp: u64, sweeps: usize) {
    let n = z.len();
    for _ in 0..sweeps {
        let mut converged = true;
        for i in 0..n {
            let pv = horner(coeffs, &z[i], wp);
            if pv.is_zero() {
                continue;
            }
            let dv = horner(dcoeffs, &z[i], wp);
            let Some(ratio) = pv.div(&dv, wp) else {
                continue;
            };
            let one = Cx {
                re: Dyadic::one(),
                im: Dyadic::zero(),
            };
            let mut s = Cx::zero();
            for j in 0..n {
                if i != j {
                    if let Some(inv) = one.div(&z[i].sub(&z[j], wp), wp) {
                        s = s.add(&inv, wp);
                    }
                }
            }
            let den = one.sub(&ratio.mul(&s, wp), wp);
            let Some(w) = ratio.div(&den, wp) else {
                continue;
            };
            let zm = z[i].mag().max(0);
            if w.mag() > zm - wp as i64 + 4 {
                converged = false;
            }
            z[i] = z[i].sub(&w, wp);
        }
        if converged {
            break;
        }
    }
}

/// Inclusion test. Returns certified disks (midpoints rounded to `wp`) or
/// `None` when some disks overlap or a denominator is not certified nonzero.
fn certify(p: &IntPolynomial, z: &[Cx], wp: u64) -> Option<Vec<ComplexBall>> {
    let n = z.len();
    let lc = ComplexBall::from_int(&p.leading(), wp);
    let balls: Vec<ComplexBall> = z
        .iter()
        .map(|c| ComplexBall::exact(c.re.clone(), c.im.clone(), wp))
        .collect();
    let mut disks = Vec::with_capacity(n);
    for i in 0..n {
        let pv = horner_ball(p.coeffs(), &balls[i]);
        let mut den = lc.clone();
        for j in 0..n {
            if i != j {
                den = den.mul(&balls[i].sub(&balls[j]));
            }
        }
        let w = pv.div(&den).ok()?;
        let wabs = w.mid_abs_upper().add_round(&w.rad, 30, Round::Up);
        let r = w
            .rad
            .add_round(&wabs.mul(&Dyadic::from_i64(n as i64 - 1)), 30, Round::Up);
        let c = ComplexBall::new(z[i].re.clone(), z[i].im.clone(), r, wp).sub(&ComplexBall::exact(
            w.re.clone(),
            w.im.clone(),
            wp,
        ));
        disks.push(c);
    }
    for i in 0..n {
        for j in i + 1..n {
            if disks[i].overlaps(&disks[j]) {
                return None;
            }
        }
    }
    Some(disks)
}

/// Marks roots real where the conjugate disk can only meet its own disk.
/// Returns `false` if some disk touches the real axis without being decided.
fn settle_real(disks: &mut [ComplexBall]) -> bool {
    let n = disks.len();
    for i in 0..n {
        if disks[i].im.is_zero() {
            continue;
        }
        if disks[i].im.abs() > disks[i].rad {
            continue;
        }
        let conj = disks[i].conj();
        let alone = (0..n).all(|j| j == i || !conj.overlaps(&disks[j]));
        if !alone {
            return false;
        }
        let rad = disks[i].rad.add_round(&disks[i].im.abs(), 30, Round::Up);
        disks[i] = ComplexBall::new(disks[i].re.clone(), Dyadic::zero(), rad, disks[i].prec);
    }
    // A conjugate disk meeting exactly one other disk holds the conjugate
    // root; mirror it so that conjugate pairs share a real part exactly.
    for i in 0..n {
        if !disks[i].im.is_positive() {
            continue;
        }
        let conj = disks[i].conj();
        let hits: Vec<usize> = (0..n)
            .filter(|&j| j != i && conj.overlaps(&disks[j]))
            .collect();
        if hits.len() != 1 || !disks[hits[0]].im.is_negative() {
            return false;
        }
        disks[hits[0]] = conj;
    }
    true
}

fn radius_ok(b: &ComplexBall, precision: u64) -> bool {
    if b.rad.is_zero() {
        return true;
    }
    let scale = b.re.top().max(b.im.top()).max(0);
    b.rad.top() <= scale - precision as i64
}

/// Certified roots of a square-free polynomial with radii at most
/// `2^-precision · max(1, |root|)`.
pub fn isolate_squarefree(p: &IntPolynomial, precision: u64) -> Result<Vec<ComplexBall>> {
    let cap = precision_cap();
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = p.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        let root = BigRational::new(-p.coeff(0), p.coeff(1));
        return Ok(vec![ComplexBall::from_rational(&root, precision + 8)]);
    }
    if p.coeff(0).is_zero() {
        let rest = p.div_exact(&IntPolynomial::from_i64s(&[0, 1])).unwrap();
        let mut out = isolate_squarefree(&rest, precision)?;
        out.push(ComplexBall::zero(precision));
        sort_balls(&mut out);
        return Ok(out);
    }
    let coeffs: Vec<Dyadic> = p.coeffs().iter().map(Dyadic::from_int).collect();
    let dcoeffs: Vec<Dyadic> = p
        .derivative()
        .coeffs()
        .iter()
        .map(Dyadic::from_int)
        .collect();
    let mut z = initial_points(p);
    let mut wp = 64u64;
    let mut sweeps = 40 + 20 * n;
    loop {
        if wp > cap {
            return Err(Error::PrecisionCap { cap });
        }
        for c in z.iter_mut() {
            *c = c.round(wp);
        }
        aberth(&coeffs, &dcoeffs, &mut z, wp, sweeps);
        if let Some(mut disks) = certify(p, &z, wp) {
            if settle_real(&mut disks) && disks.iter().all(|b| radius_ok(b, precision)) {
                sort_balls(&mut disks);
                return Ok(disks);
            }
        }
        wp *= 2;
        sweeps = 8 + 2 * n;
    }
}

fn sort_balls(v: &mut [ComplexBall]) {
    v.sort_by(|a, b| a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im)));
}

/// Certified roots of a nonzero polynomial, with multiplicities, sorted by
/// real part then imaginary part.
pub fn isolate_roots(p: &IntPolynomial, precision: u64) -> Result<Vec<RootBall>> {
    let parts = square_free_decomposition(p)?;
    let mut prec = precision;
    loop {
        let mut all: Vec<RootBall> = Vec::new();
        for (g, m) in &parts {
            for ball in isolate_squarefree(g, prec)? {
                all.push(RootBall {
                    ball,
                    multiplicity: *m,
                });
            }
        }
        let disjoint =
            (0..all.len()).all(|i| (i + 1..all.len()).all(|j| !all[i].ball.overlaps(&all[j].ball)));
        if disjoint {
            all.sort_by(|a, b| {
                a.ball
                    .re
                    .cmp(&b.ball.re)
                    .then_with(|| a.ball.im.cmp(&b.ball.im))
            });
            return Ok(all);
        }
        prec *= 2;
        if prec > precision_cap() {
            return Err(Error::PrecisionCap {
                cap: precision_cap(),
            });
        }
    }
}

/// Shrinks a ball known to contain exactly one root of the square-free `p`
/// until its radius is at most `2^-bits · max(1, |root|)`.
pub fn refine_root(p: &IntPolynomial, ball: &ComplexBall, bits: u64) -> Result<ComplexBall> {
    if radius_ok(ball, bits) {
        return Ok(ball.clone());
    }
    let cap = precision_cap();
    let n = p.degree() as i64;
    if n == 1 {
        let root = BigRational::new(-p.coeff(0), p.coeff(1));
        return Ok(ComplexBall::from_rational(&root, bits + 8));
    }
    let real = ball.im.is_zero();
    let coeffs: Vec<Dyadic> = p.coeffs().iter().map(Dyadic::from_int).collect();
    let dp = p.derivative();
    let dcoeffs: Vec<Dyadic> = dp.coeffs().iter().map(Dyadic::from_int).collect();
    let mut z = Cx {
        re: ball.re.clone(),
        im: ball.im.clone(),
    };
    let mut wp = (2 * ball.prec).max(64).max(bits / 4);
    loop {
        if wp > cap.max(bits + 64) {
            return Err(Error::PrecisionCap { cap });
        }
        // Newton steps at this precision.
        for _ in 0..8 {
            let pv = horner(&coeffs, &z, wp);
            let dv = horner(&dcoeffs, &z, wp);
            match pv.div(&dv, wp) {
                Some(step) => {
                    z = z.sub(&step, wp);
                    if real {
                        z.im = Dyadic::zero();
                    }
                    if step.mag() < z.mag().max(0) - wp as i64 {
                        break;
                    }
                }
                None => break,
            }
        }
        // Some root lies within n·|P(z)/P'(z)| of z; inside the original ball
        // it must be the isolated one.
        let zb = ComplexBall::exact(z.re.clone(), z.im.clone(), wp);
        let pv = horner_ball(p.coeffs(), &zb);
        let dv = horner_ball(dp.coeffs(), &zb);
        if let Ok(q) = pv.div(&dv) {
            let qa = q.mid_abs_upper().add_round(&q.rad, 30, Round::Up);
            let rho = qa.mul(&Dyadic::from_i64(n)).round(30, Round::Up);
            let cand = ComplexBall::new(z.re.clone(), z.im.clone(), rho, wp);
            if ball.contains_ball(&cand) && radius_ok(&cand, bits) {
                return Ok(cand);
            }
        }
        wp *= 2;
    }
}

/// Horner evaluation of a rational-coefficient polynomial on a ball.
pub fn eval_rat_poly(p: &RatPolynomial, z: &ComplexBall) -> ComplexBall {
    let mut acc = ComplexBall::zero(z.prec);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z).add(&ComplexBall::from_rational(c, z.prec));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn sqrt_two() {
        let r = isolate_roots(&p(&[-2, 0, 1]), 64).unwrap();
        assert_eq!(r.len(), 2);
        let s = std::f64::consts::SQRT_2;
        assert!((r[0].ball.re.to_f64() + s).abs() < 1e-15 && r[0].ball.im.is_zero());
        assert!((r[1].ball.re.to_f64() - s).abs() < 1e-15 && r[1].ball.im.is_zero());
        assert!(r[1].ball.rad.top() <= -63);
        // Bisection oracle: the ball brackets the sign change of T² − 2.
        let lo = r[1].ball.re.sub(&r[1].ball.rad).to_rational();
        let hi = r[1].ball.re.add(&r[1].ball.rad).to_rational();
        let f = |x: &BigRational| x * x - BigRational::from_i64(2);
        assert!(f(&lo).is_negative() && f(&hi).is_positive());
    }

    #[test]
    fn imaginary_pair() {
        let r = isolate_roots(&p(&[1, 0, 1]), 64).unwrap();
        assert!(r[0]
            .ball
            .contains_point(&Dyadic::zero(), &Dyadic::from_i64(-1)));
        assert!(r[1]
            .ball
            .contains_point(&Dyadic::zero(), &Dyadic::from_i64(1)));
    }

    #[test]
    fn multiplicity_reported() {
        let r = isolate_roots(&p(&[1, -2, 1]), 64).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].multiplicity, 2);
        assert!(r[0].ball.contains_rational(&BigRational::from_i64(1)));
    }

    #[test]
    fn cyclotomic_and_wide_spread() {
        let r = isolate_squarefree(&p(&[1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]), 64).unwrap();
        assert_eq!(r.len(), 12);
        // Roots 10^-20 and 10^20.
        let big = BigInt::from(10u32).pow(20u32);
        let sq: BigInt = &big * &big + 1;
        let q = IntPolynomial::new(vec![big.clone(), -sq, big]);
        let r = isolate_squarefree(&q, 64).unwrap();
        assert!((r[0].re.to_f64() - 1e-20).abs() < 1e-19);
        assert!((r[1].re.to_f64() / 1e20 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn refine_to_many_bits() {
        let q = p(&[-2, 0, 1]);
        let r = isolate_squarefree(&q, 64).unwrap();
        let fine = refine_root(&q, &r[1], 1000).unwrap();
        assert!(fine.rad.top() <= -999);
        assert!(r[1].contains_ball(&fine));
    }
}
