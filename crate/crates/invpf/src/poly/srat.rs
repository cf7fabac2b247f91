//! Elements of the rational function field Q(s).

use super::spoly::SPoly;
use super::zpoly::ZPoly;
use super::BigRat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Reduced fraction of integer polynomials in s.
///
/// Stored as `num/den` with `num, den` in Z[s], coprime in Z[s] (integer
/// content included) and `den` with positive leading coefficient. This form
/// is canonical, so structural equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SRat {
    num: ZPoly,
    den: ZPoly,
}

impl Default for SRat {
    fn default() -> Self {
        Self::zero()
    }
}

impl SRat {
    pub fn zero() -> Self {
        SRat { num: ZPoly::zero(), den: ZPoly::one() }
    }

    pub fn one() -> Self {
        SRat { num: ZPoly::one(), den: ZPoly::one() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_zpoly(ZPoly::constant(BigInt::from(v)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Self::from_zpoly(ZPoly::constant(v))
    }

    pub fn from_bigrat(v: &BigRat) -> Self {
        Self::from_parts(ZPoly::constant(v.numer().clone()), ZPoly::constant(v.denom().clone()))
    }

    pub fn from_zpoly(p: ZPoly) -> Self {
        SRat { num: p, den: ZPoly::one() }
    }

    /// `c * s^k`
    pub fn s_power(c: BigInt, k: usize) -> Self {
        Self::from_zpoly(ZPoly::monomial(c, k))
    }

    pub fn from_spoly(p: &SPoly) -> Self {
        let (c, z) = p.to_primitive_z();
        Self::from_parts(z.scale(c.numer()), ZPoly::constant(c.denom().clone()))
    }

    pub fn from_spolys(num: &SPoly, den: &SPoly) -> Self {
        Self::from_spoly(num).div(&Self::from_spoly(den))
    }

    /// Builds and normalizes `num/den`; panics on a zero denominator.
    pub fn from_parts(num: ZPoly, den: ZPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        Self::signed(num, den)
    }

    fn signed(num: ZPoly, den: ZPoly) -> Self {
        if den.lc().unwrap().is_negative() {
            SRat { num: num.neg(), den: den.neg() }
        } else {
            SRat { num, den }
        }
    }

    pub fn num_z(&self) -> &ZPoly {
        &self.num
    }

    pub fn den_z(&self) -> &ZPoly {
        &self.den
    }

    pub fn num(&self) -> SPoly {
        SPoly::from_z(&self.num)
    }

    pub fn den(&self) -> SPoly {
        SPoly::from_z(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Constant value if this element lies in Q.
    pub fn as_constant(&self) -> Option<BigRat> {
        if self.num.is_constant() && self.den.is_constant() {
            let n = self.num.coeffs().first().cloned().unwrap_or_else(BigInt::zero);
            Some(BigRat::new(n, self.den.coeffs()[0].clone()))
        } else {
            None
        }
    }

    /// Polynomial value if the denominator is a constant.
    pub fn as_spoly(&self) -> Option<SPoly> {
        if self.den.is_constant() {
            let d = BigRat::from_integer(self.den.coeffs()[0].clone());
            Some(SPoly::from_z(&self.num).scale(&d.recip()))
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        SRat { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return SRat { num: self.num.add(&o.num), den: ZPoly::one() };
        }
        if self.den == o.den {
            let t = self.num.add(&o.num);
            return Self::from_parts(t, self.den.clone());
        }
        let g = self.den.gcd(&o.den);
        if g.is_one() {
            let t = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            if t.is_zero() {
                return Self::zero();
            }
            return Self::signed(t, self.den.mul(&o.den));
        }
        let b1 = self.den.div_exact(&g);
        let d1 = o.den.div_exact(&g);
        let t = self.num.mul(&d1).add(&o.num.mul(&b1));
        if t.is_zero() {
            return Self::zero();
        }
        let g2 = t.gcd(&g);
        if g2.is_one() {
            Self::signed(t, b1.mul(&o.den))
        } else {
            Self::signed(t.div_exact(&g2), b1.mul(&o.den.div_exact(&g2)))
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return SRat { num: self.num.mul(&o.num), den: ZPoly::one() };
        }
        let g1 = if o.den.is_one() { ZPoly::one() } else { self.num.gcd(&o.den) };
        let g2 = if self.den.is_one() { ZPoly::one() } else { o.num.gcd(&self.den) };
        let (a, d) = if g1.is_one() { (self.num.clone(), o.den.clone()) } else { (self.num.div_exact(&g1), o.den.div_exact(&g1)) };
        let (c, b) = if g2.is_one() { (o.num.clone(), self.den.clone()) } else { (o.num.div_exact(&g2), self.den.div_exact(&g2)) };
        Self::signed(a.mul(&c), b.mul(&d))
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::signed(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.recip())
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        if k.is_one() {
            return self.clone();
        }
        self.mul(&Self::from_bigint(k.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Evaluates at a rational point; `None` where the denominator vanishes.
    pub fn eval(&self, s: &BigRat) -> Option<BigRat> {
        let d = SPoly::from_z(&self.den).eval(s);
        if d.is_zero() {
            return None;
        }
        Some(SPoly::from_z(&self.num).eval(s) / d)
    }
}

impl fmt::Display for SRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = SPoly::from_z(&self.num);
        if self.den.is_one() {
            return write!(f, "{}", n);
        }
        let d = SPoly::from_z(&self.den);
        let wrap = |p: &SPoly| {
            let t = p.coeffs().iter().filter(|c| !c.is_zero()).count();
            if t > 1 { format!("({})", p) } else { p.to_string() }
        };
        write!(f, "{}/{}", wrap(&n), wrap(&d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sr(n: &[i64], d: &[i64]) -> SRat {
        SRat::from_spolys(&SPoly::from_ints(n), &SPoly::from_ints(d))
    }

    #[test]
    fn normalizes_sign_and_content() {
        let a = sr(&[2, 2], &[-4, -4]);
        assert_eq!(a, SRat::from_bigrat(&BigRat::new((-1).into(), 2.into())));
        let b = sr(&[0, 6], &[0, 0, 4]);
        assert_eq!(b.num_z().coeffs(), &[BigInt::from(3)]);
        assert_eq!(b.den_z().coeffs(), &[BigInt::zero(), BigInt::from(2)]);
    }

    #[test]
    fn add_cancels_to_zero() {
        let a = sr(&[1], &[-1, 1]);
        assert!(a.sub(&a).is_zero());
    }

    fn small_poly() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-6i64..7, 1..4)
    }

    fn nonzero(v: &[i64]) -> bool {
        v.iter().any(|&x| x != 0)
    }

    proptest! {
        #[test]
        fn field_ops_agree_with_evaluation(a in small_poly(), b in small_poly(), c in small_poly(), d in small_poly()) {
            prop_assume!(nonzero(&b) && nonzero(&d));
            let x = sr(&a, &b);
            let y = sr(&c, &d);
            let s0 = BigRat::new(37.into(), 11.into());
            let (xv, yv) = (x.eval(&s0), y.eval(&s0));
            prop_assume!(xv.is_some() && yv.is_some());
            let (xv, yv) = (xv.unwrap(), yv.unwrap());
            prop_assert_eq!(x.add(&y).eval(&s0).unwrap(), &xv + &yv);
            prop_assert_eq!(x.mul(&y).eval(&s0).unwrap(), &xv * &yv);
            let z = x.add(&y).sub(&y);
            prop_assert_eq!(z, x.clone());
            if !y.is_zero() {
                prop_assert_eq!(x.div(&y).mul(&y), x.clone());
            }
        }

        #[test]
        fn results_are_reduced(a in small_poly(), b in small_poly(), c in small_poly(), d in small_poly()) {
            prop_assume!(nonzero(&b) && nonzero(&d));
            let r = sr(&a, &b).add(&sr(&c, &d)).mul(&sr(&c, &b));
            let n = r.num();
            let dd = r.den();
            prop_assert!(dd.lc().unwrap() > &BigRat::zero());
            if !n.is_zero() {
                prop_assert_eq!(n.gcd_euclid(&dd), SPoly::one());
            }
        }
    }
}
