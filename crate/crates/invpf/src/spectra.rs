//! Hodge profile, Poincaré series, unity-product forms of the characteristic
//! polynomials at λ = 0 and λ = ∞, and monodromy eigenvalues.

use crate::error::{Error, Result};
use crate::invertible::{ExponentMatrix, WeightSystem};
use crate::pf_formula::{alpha_beta_from_dual, euler_phi};
use crate::poly::BigRat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Sorted multiset of fractions in `[0, 1)`, each standing for `exp(2πi·x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CyclotomicMultiset {
    pub elements: Vec<BigRat>,
}

/// `∏(1 − t^ν) / ∏(1 − t^η)`, orders kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnityProductForm {
    pub numerator_orders: Vec<u64>,
    pub denominator_orders: Vec<u64>,
}

/// A characteristic polynomial in unity-product form, or as explicit roots
/// when no integral product form exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChiForm {
    Product(UnityProductForm),
    Explicit(Vec<(BigRat, usize)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeProfile {
    pub p_values: Vec<i64>,
    pub p_plus: i64,
    pub p_minus: i64,
    /// `h[k]` counts `p⁻¹(p_minus + k)`.
    pub h: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareSeries {
    pub form: UnityProductForm,
    pub zeros: CyclotomicMultiset,
    pub poles: CyclotomicMultiset,
}

fn frac_mod1(x: &BigRat) -> BigRat {
    x - BigRat::from_integer(x.floor().to_integer())
}

impl CyclotomicMultiset {
    pub fn new(it: impl IntoIterator<Item = BigRat>) -> Self {
        let mut elements: Vec<BigRat> = it.into_iter().map(|x| frac_mod1(&x)).collect();
        elements.sort();
        CyclotomicMultiset { elements }
    }

    /// All `m`-th roots of unity.
    pub fn roots_of_unity(m: u64) -> Self {
        Self::new((0..m).map(|k| BigRat::new(BigInt::from(k), BigInt::from(m))))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn union(&self, o: &Self) -> Self {
        Self::new(self.elements.iter().chain(o.elements.iter()).cloned())
    }

    /// Removes common elements with multiplicity from both sides.
    pub fn cancel(&self, o: &Self) -> (Self, Self) {
        let mut a = self.elements.clone();
        let mut b = Vec::new();
        for x in &o.elements {
            if let Some(p) = a.iter().position(|y| y == x) {
                a.remove(p);
            } else {
                b.push(x.clone());
            }
        }
        (Self::new(a), Self::new(b))
    }

    /// `x ↦ 1 − x (mod 1)` maps the multiset to itself.
    pub fn is_conjugation_closed(&self) -> bool {
        Self::new(self.elements.iter().map(|x| BigRat::one() - x)) == *self
    }

    pub fn all_zero(&self) -> bool {
        self.elements.iter().all(|x| x.is_zero())
    }

    /// Multiplicity per element.
    pub fn counts(&self) -> BTreeMap<BigRat, usize> {
        let mut m = BTreeMap::new();
        for x in &self.elements {
            *m.entry(x.clone()).or_insert(0) += 1;
        }
        m
    }
}

impl fmt::Display for CyclotomicMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.elements.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", v.join(", "))
    }
}

impl UnityProductForm {
    /// Exponent per order, `+` for numerator and `−` for denominator.
    pub fn exponents(&self) -> BTreeMap<u64, i64> {
        let mut m = BTreeMap::new();
        for &v in &self.numerator_orders {
            *m.entry(v).or_insert(0) += 1;
        }
        for &v in &self.denominator_orders {
            *m.entry(v).or_insert(0) -= 1;
        }
        m.retain(|_, c| *c != 0);
        m
    }

    pub fn from_exponents(c: &BTreeMap<u64, i64>) -> Self {
        let mut num = Vec::new();
        let mut den = Vec::new();
        for (&m, &k) in c {
            for _ in 0..k.max(0) {
                num.push(m);
            }
            for _ in 0..(-k).max(0) {
                den.push(m);
            }
        }
        UnityProductForm { numerator_orders: num, denominator_orders: den }
    }

    /// Multiset of roots of the numerator minus those of the denominator, as
    /// (zeros, poles) after cancellation.
    pub fn zeros_poles(&self) -> (CyclotomicMultiset, CyclotomicMultiset) {
        let z = self.numerator_orders.iter().fold(CyclotomicMultiset::default(), |acc, &m| acc.union(&CyclotomicMultiset::roots_of_unity(m)));
        let p = self.denominator_orders.iter().fold(CyclotomicMultiset::default(), |acc, &m| acc.union(&CyclotomicMultiset::roots_of_unity(m)));
        z.cancel(&p)
    }

    /// Quotient as a formal product.
    pub fn divide(&self, o: &Self) -> Self {
        let mut e = self.exponents();
        for (m, k) in o.exponents() {
            *e.entry(m).or_insert(0) -= k;
        }
        e.retain(|_, c| *c != 0);
        Self::from_exponents(&e)
    }

    /// Renders like `2·3·7·42/1·6·14·21`; an empty numerator is written `∅`.
    pub fn render(&self) -> String {
        let j = |v: &[u64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("·");
        let num = if self.numerator_orders.is_empty() { "∅".to_string() } else { j(&self.numerator_orders) };
        if self.denominator_orders.is_empty() {
            num
        } else {
            format!("{}/{}", num, j(&self.denominator_orders))
        }
    }

    /// Parses `ν₁·ν₂/η₁·η₂`; `·`, `*` and `.` all separate orders.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let (a, b) = match t.split_once('/') {
            Some((a, b)) => (a, Some(b)),
            None => (t, None),
        };
        let list = |s: &str| -> Result<Vec<u64>> {
            let s = s.trim();
            if s == "∅" || s.is_empty() {
                return Ok(Vec::new());
            }
            let mut v: Vec<u64> = s
                .split(|c| c == '·' || c == '*' || c == '.')
                .map(|x| x.trim().parse::<u64>().map_err(|_| Error::Parse { pos: 0, msg: format!("bad order '{}' in {}", x, text) }))
                .collect::<Result<_>>()?;
            v.sort();
            Ok(v)
        };
        Ok(UnityProductForm { numerator_orders: list(a)?, denominator_orders: b.map(list).transpose()?.unwrap_or_default() })
    }
}

impl fmt::Display for UnityProductForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl ChiForm {
    pub fn render(&self) -> String {
        match self {
            ChiForm::Product(p) => p.render(),
            ChiForm::Explicit(v) => {
                let parts: Vec<String> = v.iter().map(|(x, k)| format!("{}^{}", x, k)).collect();
                format!("[{}]", parts.join(", "))
            }
        }
    }

    pub fn as_product(&self) -> Option<&UnityProductForm> {
        match self {
            ChiForm::Product(p) => Some(p),
            ChiForm::Explicit(_) => None,
        }
    }
}

/// Hodge profile from sorted shift multisets.
pub fn hodge_profile(alphas: &[BigRat], betas: &[BigRat]) -> Result<HodgeProfile> {
    if alphas.len() != betas.len() || alphas.is_empty() {
        return Err(Error::SizeMismatch(format!("{} alphas, {} betas", alphas.len(), betas.len())));
    }
    let mut a = alphas.to_vec();
    let mut b = betas.to_vec();
    a.sort();
    b.sort();
    let p_values: Vec<i64> = b
        .iter()
        .enumerate()
        .map(|(k, bk)| a.iter().filter(|x| *x < bk).count() as i64 - k as i64)
        .collect();
    let p_plus = p_values[0];
    let p_minus = *p_values.last().unwrap();
    let lo = *p_values.iter().min().unwrap();
    let hi = *p_values.iter().max().unwrap();
    let h = (lo..=hi).map(|j| p_values.iter().filter(|&&p| p == j).count()).collect();
    Ok(HodgeProfile { p_values, p_plus, p_minus, h })
}

impl HodgeProfile {
    pub fn is_palindromic(&self) -> bool {
        self.h.iter().eq(self.h.iter().rev())
    }
}

/// `(1 − t^d)/∏(1 − t^{qᵢ})` with its reduced zeros and poles.
pub fn poincare_series(w: &WeightSystem) -> PoincareSeries {
    let mut den = w.q.clone();
    den.sort();
    let form = UnityProductForm { numerator_orders: vec![w.d], denominator_orders: den };
    let (zeros, poles) = form.zeros_poles();
    PoincareSeries { form, zeros, poles }
}

/// Solves `multiset = ⊎ c_m·(all m-th roots)` over orders dividing `l`.
pub fn unity_product(ms: &CyclotomicMultiset, l: u64) -> ChiForm {
    let counts = ms.counts();
    let mut by_order: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (x, &k) in &counts {
        let e: u64 = x.denom().try_into().unwrap_or(u64::MAX);
        by_order.entry(e).or_default().push(k);
    }
    let explicit = || ChiForm::Explicit(counts.iter().map(|(x, &k)| (x.clone(), k)).collect());
    let mut a: BTreeMap<u64, i64> = BTreeMap::new();
    for (&e, ks) in &by_order {
        if l % e != 0 || ks.len() as u64 != euler_phi(e) || ks.iter().any(|&k| k != ks[0]) {
            return explicit();
        }
        a.insert(e, ks[0] as i64);
    }
    let divisors: Vec<u64> = (1..=l).filter(|m| l % m == 0).collect();
    let mut c: BTreeMap<u64, i64> = BTreeMap::new();
    for &m in divisors.iter().rev() {
        let above: i64 = divisors.iter().filter(|&&k| k != m && k % m == 0).map(|k| c.get(k).copied().unwrap_or(0)).sum();
        let v = a.get(&m).copied().unwrap_or(0) - above;
        if v != 0 {
            c.insert(m, v);
        }
    }
    ChiForm::Product(UnityProductForm::from_exponents(&c))
}

/// (χ₀, χ∞): roots `β/d̂` and `α/d̂` respectively.
pub fn chi_forms(alphas: &[BigRat], betas: &[BigRat], d_hat: u64, q_hat: &[u64]) -> (ChiForm, ChiForm) {
    let d = BigRat::from_integer(BigInt::from(d_hat));
    let l = q_hat.iter().fold(d_hat, |acc, &q| acc.lcm(&q));
    let z = CyclotomicMultiset::new(betas.iter().map(|b| b / &d));
    let p = CyclotomicMultiset::new(alphas.iter().map(|a| a / &d));
    (unity_product(&z, l), unity_product(&p, l))
}

/// χ forms straight from the polynomial.
pub fn chi_forms_of(e: &ExponentMatrix) -> Result<(ChiForm, ChiForm)> {
    e.weights()?.require_calabi_yau()?;
    let w = e.dual_weights()?;
    let (a, b) = alpha_beta_from_dual(&w.q, w.d);
    Ok(chi_forms(&a, &b, w.d, &w.q))
}

/// Monodromy eigenvalues at λ = 0 (`α/d̂`) and λ = ∞ (`β/d̂`).
pub fn monodromy_eigenvalues(e: &ExponentMatrix) -> Result<(CyclotomicMultiset, CyclotomicMultiset)> {
    e.weights()?.require_calabi_yau()?;
    let w = e.dual_weights()?;
    let (a, b) = alpha_beta_from_dual(&w.q, w.d);
    let d = BigRat::from_integer(BigInt::from(w.d));
    Ok((CyclotomicMultiset::new(a.iter().map(|x| x / &d)), CyclotomicMultiset::new(b.iter().map(|x| x / &d))))
}
