//! Dense univariate polynomials over Z in the parameter s.
//!
//! Coefficients are stored low degree first with trailing zeros stripped.
//! The gcd is computed with a dense modular algorithm (images modulo 62-bit
//! primes, Chinese remaindering, trial division).

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::sync::OnceLock;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    c: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly { c: vec![BigInt::one()] }
    }

    pub fn constant(v: BigInt) -> Self {
        Self::from_coeffs(vec![v])
    }

    /// `v * s^k`
    pub fn monomial(v: BigInt, k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = v;
        Self::from_coeffs(c)
    }

    pub fn from_coeffs(mut c: Vec<BigInt>) -> Self {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        ZPoly { c }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&BigInt> {
        self.c.last()
    }

    pub fn neg(&self) -> Self {
        ZPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let (long, short) = if self.c.len() >= o.c.len() { (self, o) } else { (o, self) };
        let mut c = long.c.clone();
        for (x, y) in c.iter_mut().zip(short.c.iter()) {
            *x += y;
        }
        Self::from_coeffs(c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut c = self.c.clone();
        if c.len() < o.c.len() {
            c.resize(o.c.len(), BigInt::zero());
        }
        for (x, y) in c.iter_mut().zip(o.c.iter()) {
            *x -= y;
        }
        Self::from_coeffs(c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        Self::from_coeffs(c)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        ZPoly { c: self.c.iter().map(|x| x * k).collect() }
    }

    /// Divides every coefficient by `k`, which must divide all of them.
    pub fn div_scalar(&self, k: &BigInt) -> Self {
        ZPoly { c: self.c.iter().map(|x| x / k).collect() }
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Evaluates at an integer point.
    pub fn eval(&self, s: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for x in self.c.iter().rev() {
            acc = acc * s + x;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self` in Z[s].
    pub fn try_div(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.is_one() {
            return Some(self.clone());
        }
        let dd = d.c.len() - 1;
        if self.c.len() - 1 < dd {
            return None;
        }
        if dd == 0 {
            let k = &d.c[0];
            let mut out = Vec::with_capacity(self.c.len());
            for x in &self.c {
                let (q, r) = x.div_rem(k);
                if !r.is_zero() {
                    return None;
                }
                out.push(q);
            }
            return Some(ZPoly { c: out });
        }
        let lc = d.c.last().unwrap();
        let mut r = self.c.clone();
        let qlen = r.len() - dd;
        let mut q = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (t, rem) = top.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, y) in d.c.iter().enumerate() {
                r[k + i] -= &t * y;
            }
            q[k] = t;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(q))
    }

    /// Exact quotient; panics when the division is not exact.
    pub fn div_exact(&self, d: &Self) -> Self {
        self.try_div(d).expect("inexact polynomial division")
    }

    /// gcd in Z[s], including the integer content, with positive leading coefficient.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.normalize_sign();
        }
        if o.is_zero() {
            return self.normalize_sign();
        }
        let ca = self.content();
        let cb = o.content();
        let c = ca.gcd(&cb);
        if self.c.len() == 1 || o.c.len() == 1 {
            return Self::constant(c);
        }
        // Shared power of s.
        let va = self.c.iter().take_while(|x| x.is_zero()).count();
        let vb = o.c.iter().take_while(|x| x.is_zero()).count();
        let v = va.min(vb);
        let a = ZPoly { c: self.c[va..].iter().map(|x| x / &ca).collect() };
        let b = ZPoly { c: o.c[vb..].iter().map(|x| x / &cb).collect() };
        let g = if a == b { a.normalize_sign() } else { primitive_gcd(&a, &b) };
        let mut out = vec![BigInt::zero(); v];
        out.extend(g.c.into_iter().map(|x| x * &c));
        ZPoly { c: out }
    }

    fn normalize_sign(&self) -> Self {
        match self.lc() {
            Some(l) if l.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    /// Multiplies by -1 if needed so the leading coefficient is positive.
    pub fn with_positive_lc(self) -> Self {
        match self.lc() {
            Some(l) if l.is_negative() => self.neg(),
            _ => self,
        }
    }
}

/// gcd of two primitive polynomials of positive degree with nonzero constant terms.
fn primitive_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let la = a.lc().unwrap();
    let lb = b.lc().unwrap();
    let g = la.gcd(lb);
    let mut acc: Option<(Vec<BigInt>, BigInt)> = None;
    let mut acc_deg = usize::MAX;
    let mut last: Option<ZPoly> = None;
    for &p in primes().iter() {
        let ap = reduce_mod(a, p);
        let bp = reduce_mod(b, p);
        if ap.len() != a.c.len() || bp.len() != b.c.len() {
            continue;
        }
        let mut gp = gcd_mod(ap, bp, p);
        let dg = gp.len() - 1;
        if dg == 0 {
            return ZPoly::one();
        }
        let gm = mod_big(&g, p);
        for x in gp.iter_mut() {
            *x = mulmod(*x, gm, p);
        }
        if dg > acc_deg {
            continue;
        }
        if dg < acc_deg {
            acc_deg = dg;
            acc = Some((gp.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(p)));
            last = None;
        } else {
            let (h, m) = acc.take().unwrap();
            let inv = invmod(mod_big(&m, p), p);
            let mut nh = Vec::with_capacity(h.len());
            for (hc, &gc) in h.iter().zip(gp.iter()) {
                let hm = mod_big(hc, p);
                let t = mulmod((gc + p - hm) % p, inv, p);
                nh.push(hc + &m * BigInt::from(t));
            }
            let nm = &m * BigInt::from(p);
            acc = Some((nh, nm));
        }
        let (h, m) = acc.as_ref().unwrap();
        let half: BigInt = m >> 1;
        let sym: Vec<BigInt> = h
            .iter()
            .map(|x| if x > &half { x - m } else { x.clone() })
            .collect();
        let cand = ZPoly::from_coeffs(sym);
        if last.as_ref() == Some(&cand) {
            let cc = cand.content();
            let pp = cand.div_scalar(&cc).with_positive_lc();
            if a.try_div(&pp).is_some() && b.try_div(&pp).is_some() {
                return pp;
            }
        }
        last = Some(cand);
    }
    panic!("modular gcd ran out of primes");
}

fn primes() -> &'static Vec<u64> {
    static P: OnceLock<Vec<u64>> = OnceLock::new();
    P.get_or_init(|| {
        let mut v = Vec::new();
        let mut x: u64 = (1u64 << 62) - 1;
        while v.len() < 1024 {
            if is_prime_u64(x) {
                v.push(x);
            }
            x -= 2;
        }
        v
    })
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn mod_big(x: &BigInt, p: u64) -> u64 {
    let (sign, digits) = x.to_u64_digits();
    let mut r: u128 = 0;
    for &d in digits.iter().rev() {
        r = ((r << 64) | d as u128) % p as u128;
    }
    let r = r as u64;
    if sign == Sign::Minus && r != 0 {
        p - r
    } else {
        r
    }
}

fn reduce_mod(a: &ZPoly, p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = a.c.iter().map(|x| mod_big(x, p)).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Monic gcd over F_p; inputs nonzero.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        rem_mod(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    let inv = invmod(*a.last().unwrap(), p);
    for x in a.iter_mut() {
        *x = mulmod(*x, inv, p);
    }
    a
}

fn rem_mod(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let inv = invmod(b[db], p);
    while a.len() > db {
        let top = *a.last().unwrap();
        if top != 0 {
            let t = mulmod(top, inv, p);
            let off = a.len() - 1 - db;
            for (i, &y) in b.iter().enumerate() {
                let s = mulmod(t, y, p);
                let x = &mut a[off + i];
                *x = if *x >= s { *x - s } else { *x + p - s };
            }
        }
        a.pop();
        while a.last() == Some(&0) {
            a.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(v: &[i64]) -> ZPoly {
        ZPoly::from_coeffs(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = zp(&[3, -2, 0, 7]);
        let b = zp(&[-5, 1, 4]);
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&b), a);
        assert!(p.add(&ZPoly::one()).try_div(&b).is_none());
    }

    #[test]
    fn gcd_shared_factor() {
        let f = zp(&[1, 1]);
        let a = f.mul(&zp(&[2, 0, 3])).scale(&BigInt::from(6));
        let b = f.mul(&f).mul(&zp(&[-1, 5])).scale(&BigInt::from(4));
        assert_eq!(a.gcd(&b), f.scale(&BigInt::from(2)));
    }

    #[test]
    fn gcd_with_power_of_s() {
        let a = zp(&[0, 0, 2, 2]);
        let b = zp(&[0, 3, 3]);
        assert_eq!(a.gcd(&b), zp(&[0, 1, 1]));
    }

    #[test]
    fn gcd_of_large_discriminant_powers() {
        // (6^6 8^8 9^9 s^24 - 24^24)^3 against its square.
        let c = BigInt::from(6u32).pow(6) * BigInt::from(8u32).pow(8) * BigInt::from(9u32).pow(9);
        let d = ZPoly::monomial(c, 24).sub(&ZPoly::constant(BigInt::from(24u32).pow(24)));
        let a = d.mul(&d).mul(&d).mul(&zp(&[1, 0, 1]));
        let b = d.mul(&d).mul(&zp(&[0, 1]));
        let g = a.gcd(&b);
        let dd = d.mul(&d);
        assert_eq!(g, dd.with_positive_lc());
    }

    #[test]
    fn primes_are_prime() {
        let ps = primes();
        assert!(ps.len() > 100);
        assert!(ps.iter().take(5).all(|&p| is_prime_u64(p)));
        assert!(!is_prime_u64(561));
    }
}
