//! Univariate polynomials in s with rational coefficients.

use super::zpoly::ZPoly;
use super::BigRat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

/// Polynomial in the deformation parameter s, coefficients indexed by power.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SPoly {
    coeffs: Vec<BigRat>,
}

impl SPoly {
    pub fn zero() -> Self {
        SPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * s^k`
    pub fn monomial(c: BigRat, k: usize) -> Self {
        let mut v = vec![BigRat::zero(); k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().map_or(false, |x| x.is_zero()) {
            coeffs.pop();
        }
        SPoly { coeffs }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self::from_coeffs(v.iter().map(|&x| BigRat::from_integer(x.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRat {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&BigRat> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        SPoly { coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigRat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::from_coeffs(v)
    }

    pub fn scale(&self, k: &BigRat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * k).collect())
    }

    pub fn eval(&self, s: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * s + c;
        }
        acc
    }

    /// Euclidean division over Q.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lc = d.lc().unwrap().clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigRat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = &r[k + dd] / &lc;
            if t.is_zero() {
                continue;
            }
            for (i, y) in d.coeffs.iter().enumerate() {
                r[k + i] -= &t * y;
            }
            q[k] = t;
        }
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    /// Monic gcd over Q by the Euclidean algorithm (zero if both are zero).
    pub fn gcd_euclid(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic gcd over Q computed through the modular integer gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (_, a) = self.to_primitive_z();
        let (_, b) = o.to_primitive_z();
        Self::from_z(&a.gcd(&b)).monic()
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    /// Nonnegative rational content: the positive c with self/c in Z[s] primitive.
    pub fn content(&self) -> BigRat {
        if self.is_zero() {
            return BigRat::zero();
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in &self.coeffs {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        BigRat::new(num, den)
    }

    /// Splits `self = c * p` with p primitive in Z[s] and c > 0 rational.
    pub fn to_primitive_z(&self) -> (BigRat, ZPoly) {
        if self.is_zero() {
            return (BigRat::zero(), ZPoly::zero());
        }
        let c = self.content();
        let v: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|x| {
                let y = x / &c;
                debug_assert!(y.is_integer());
                y.to_integer()
            })
            .collect();
        (c, ZPoly::from_coeffs(v))
    }

    pub fn from_z(z: &ZPoly) -> Self {
        Self::from_coeffs(z.coeffs().iter().map(|x| BigRat::from_integer(x.clone())).collect())
    }

    /// Integer polynomial view; `None` if some coefficient is not integral.
    pub fn to_z(&self) -> Option<ZPoly> {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            Some(ZPoly::from_coeffs(self.coeffs.iter().map(|c| c.to_integer()).collect()))
        } else {
            None
        }
    }
}

impl fmt::Display for SPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigRat::zero();
            let a = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_c = !a.is_one() || k == 0;
            if show_c {
                write!(f, "{}", a)?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}s", if show_c { "*" } else { "" })?,
                _ => write!(f, "{}s^{}", if show_c { "*" } else { "" }, k)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclid_and_modular_gcd_agree() {
        let f = SPoly::from_ints(&[1, -2, 1]);
        let a = f.mul(&SPoly::from_ints(&[3, 0, 1]));
        let b = f.mul(&SPoly::from_ints(&[0, 5, 7, 1]));
        assert_eq!(a.gcd_euclid(&b), f.monic());
        assert_eq!(a.gcd(&b), f.monic());
    }

    #[test]
    fn content_splits_exactly() {
        let p = SPoly::from_coeffs(vec![BigRat::new(2.into(), 3.into()), BigRat::new(4.into(), 9.into())]);
        let (c, z) = p.to_primitive_z();
        assert_eq!(c, BigRat::new(2.into(), 9.into()));
        assert_eq!(z.coeffs(), &[BigInt::from(3), BigInt::from(2)]);
    }

    #[test]
    fn display() {
        assert_eq!(SPoly::from_ints(&[-256, 0, 0, 0, 1]).to_string(), "s^4 - 256");
    }
}
