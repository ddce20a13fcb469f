//! Polynomials over a small prime field F_p (p < 2^31), lowest degree first.

use rand::Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyP {
    pub p: u64,
    pub c: Vec<u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

impl PolyP {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        Self { p, c }
    }

    pub fn from_signed(p: u64, c: &[i128]) -> Self {
        let pi = p as i128;
        Self::new(p, c.iter().map(|&v| v.rem_euclid(pi) as u64).collect())
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lead(), self.p);
        Self::new(self.p, self.c.iter().map(|&x| x * inv % self.p).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| self.c.get(i).unwrap_or(&0) + o.c.get(i).unwrap_or(&0))
            .collect();
        Self::new(self.p, v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| self.c.get(i).unwrap_or(&0) + self.p - o.c.get(i).unwrap_or(&0))
            .collect();
        Self::new(self.p, v)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.p, vec![]);
        }
        let mut v = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                v[i + j] = (v[i + j] + a * b) % self.p;
            }
        }
        Self::new(self.p, v)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero());
        let p = self.p;
        if self.c.len() < d.c.len() {
            return (Self::new(p, vec![]), self.clone());
        }
        let inv = inv_mod(d.lead(), p);
        let dd = d.degree();
        let mut r = self.c.clone();
        let mut q = vec![0u64; self.c.len() - dd];
        for k in (0..q.len()).rev() {
            let t = r[k + dd] * inv % p;
            if t == 0 {
                continue;
            }
            q[k] = t;
            for (i, &dc) in d.c.iter().enumerate() {
                r[k + i] = (r[k + i] + p - t * dc % p) % p;
            }
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·o = g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::new(p, vec![]));
        let (mut t0, mut t1) = (Self::new(p, vec![]), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        let inv = Self::new(p, vec![inv_mod(r0.lead(), p)]);
        (r0.mul(&inv), s0.mul(&inv), t0.mul(&inv))
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| a * (i as u64 % self.p) % self.p)
            .collect();
        Self::new(self.p, v)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }
}

/// Distinct-degree factorization of a monic square-free polynomial.
pub fn distinct_degree(f: &PolyP) -> Vec<(PolyP, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = PolyP::x(p);
    let mut h = x.clone();
    let mut i = 0;
    while rest.degree() >= 2 * (i + 1) {
        i += 1;
        h = h.pow_mod(p as u128, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.degree() > 0 {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, i));
        }
    }
    if rest.degree() > 0 {
        let d = rest.degree();
        out.push((rest.monic(), d));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of distinct monic irreducibles
/// of degree `d` (odd p).
pub fn equal_degree<R: Rng>(f: &PolyP, d: usize, rng: &mut R) -> Vec<PolyP> {
    let p = f.p;
    if f.degree() == d {
        return vec![f.monic()];
    }
    let e = ((p as u128).pow(d as u32) - 1) / 2;
    loop {
        let a: Vec<u64> = (0..f.degree()).map(|_| rng.gen_range(0..p)).collect();
        let a = PolyP::new(p, a);
        if a.degree() == 0 {
            continue;
        }
        let b = a.pow_mod(e, f).sub(&PolyP::one(p));
        let g = b.gcd(f);
        if g.degree() > 0 && g.degree() < f.degree() {
            let h = f.div_rem(&g).0.monic();
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Complete factorization of a monic square-free polynomial into monic
/// irreducibles, sorted for determinism.
pub fn factor_squarefree<R: Rng>(f: &PolyP, rng: &mut R) -> Vec<PolyP> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f) {
        out.extend(equal_degree(&g, d, rng));
    }
    out.sort_by(|a, b| a.c.len().cmp(&b.c.len()).then_with(|| a.c.cmp(&b.c)));
    out
}
