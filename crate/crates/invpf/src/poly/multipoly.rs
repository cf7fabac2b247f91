//! Multivariate polynomials over Q(s) and weighted monomial orders.

use super::srat::SRat;
use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn zero(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Exponent(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Exponent(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Self) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// Weighted degree `Σ mᵢ·wᵢ`.
pub fn weighted_degree(m: &Exponent, w: &[u64]) -> Result<u64> {
    if m.len() != w.len() {
        return Err(Error::LengthMismatch { expected: w.len(), found: m.len() });
    }
    Ok(m.0.iter().zip(w).map(|(&a, &b)| a as u64 * b).sum())
}

/// Weighted degree order with reverse-lexicographic tie-break.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedOrder {
    pub weights: Vec<u64>,
}

impl WeightedOrder {
    pub fn new(weights: Vec<u64>) -> Self {
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        WeightedOrder { weights }
    }

    pub fn degree(&self, m: &Exponent) -> u64 {
        m.0.iter().zip(&self.weights).map(|(&a, &b)| a as u64 * b).sum()
    }

    /// Higher weighted degree is larger; on ties, the monomial with the smaller
    /// exponent in the last differing variable is larger.
    pub fn cmp(&self, a: &Exponent, b: &Exponent) -> Ordering {
        match self.degree(a).cmp(&self.degree(b)) {
            Ordering::Equal => {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
            o => o,
        }
    }
}

/// Polynomial in `n` variables with coefficients in Q(s).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Exponent, SRat>,
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        MultiPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: SRat) -> Self {
        Self::term(Exponent::zero(n), c)
    }

    pub fn term(e: Exponent, c: SRat) -> Self {
        let n = e.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MultiPoly { n, terms }
    }

    pub fn monomial(e: Exponent) -> Self {
        Self::term(e, SRat::one())
    }

    pub fn from_terms(n: usize, it: impl IntoIterator<Item = (Exponent, SRat)>) -> Self {
        let mut p = Self::zero(n);
        for (e, c) in it {
            assert_eq!(e.len(), n, "exponent length mismatch");
            p.add_term(e, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &SRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponent) -> SRat {
        self.terms.get(e).cloned().unwrap_or_else(SRat::zero)
    }

    pub fn add_term(&mut self, e: Exponent, c: &SRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.add(c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "variable count mismatch");
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c);
        }
        r
    }

    pub fn neg(&self) -> Self {
        MultiPoly { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "variable count mismatch");
        let mut r = Self::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1.mul(e2), &c1.mul(c2));
            }
        }
        r
    }

    pub fn scale(&self, k: &SRat) -> Self {
        if k.is_zero() {
            return Self::zero(self.n);
        }
        MultiPoly { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.mul(k))).collect() }
    }

    pub fn mul_monomial(&self, m: &Exponent) -> Self {
        MultiPoly { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.mul(m), c.clone())).collect() }
    }

    /// Formal partial derivative with respect to variable `i` (0-based).
    pub fn partial_derivative(&self, i: usize) -> Self {
        assert!(i < self.n, "variable index out of range");
        let mut r = Self::zero(self.n);
        for (e, c) in &self.terms {
            let k = e.0[i];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2.0[i] -= 1;
            r.add_term(e2, &c.mul_int(&k.into()));
        }
        r
    }

    /// Leading term under `ord`.
    pub fn leading(&self, ord: &WeightedOrder) -> Option<(&Exponent, &SRat)> {
        self.terms.iter().max_by(|a, b| ord.cmp(a.0, b.0))
    }

    /// Weighted degree of the highest term, if nonzero.
    pub fn weighted_degree(&self, w: &[u64]) -> Option<u64> {
        self.terms.keys().map(|e| weighted_degree(e, w).unwrap()).max()
    }

    pub fn is_homogeneous(&self, w: &[u64]) -> bool {
        let mut it = self.terms.keys().map(|e| weighted_degree(e, w).unwrap());
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    /// Renders with the given variable names.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let m = render_monomial(e, names);
            let cs = c.to_string();
            let cs = if cs.contains(' ') { format!("({})", cs) } else { cs };
            parts.push(match (m.as_str(), cs.as_str()) {
                ("1", _) => cs.clone(),
                (_, "1") => m.clone(),
                _ => format!("{}*{}", cs, m),
            });
        }
        parts.join(" + ")
    }
}

/// Renders a monomial like `w^4*x^3` using the given names; `1` for the empty product.
pub fn render_monomial(e: &Exponent, names: &[String]) -> String {
    let mut out = Vec::new();
    for (i, &k) in e.0.iter().enumerate() {
        match k {
            0 => {}
            1 => out.push(names[i].clone()),
            _ => out.push(format!("{}^{}", names[i], k)),
        }
    }
    if out.is_empty() { "1".into() } else { out.join("*") }
}

/// Default variable names `x1..xn`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{}", i)).collect()
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&default_names(self.n)))
    }
}
