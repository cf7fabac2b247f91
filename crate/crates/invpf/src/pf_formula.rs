//! Index sets, order, shift multisets and the closed-form Picard-Fuchs and
//! GKZ operators of `f = g + s·∏xᵢ`.
//!
//! Everything is built from the dual weights `q̂`, `d̂` of the transpose.
//! An operator `c_L·s^p·∏(δ+α) − c_R·∏(δ−β)` is stored in factored form and
//! compared after expansion up to a rational scalar.

use crate::error::{Error, Result};
use crate::invertible::ExponentMatrix;
use crate::poly::{BigRat, SPoly, SRat, ZPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

/// Index sets built from the dual weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSets {
    pub d_hat: u64,
    pub q_hat: Vec<u64>,
    /// `Q[i] = {j·d̂/q̂ᵢ : j = 1..q̂ᵢ}`.
    pub q_sets: Vec<Vec<BigRat>>,
    pub qz: Vec<Vec<u64>>,
    pub qq: Vec<Vec<BigRat>>,
    /// Integers in `[0, d̂)` of the form `j·d̂/q̂ᵢ`, `j = 0..q̂ᵢ−1`.
    pub i_set: Vec<u64>,
    /// `{1..d̂} ∖ ∪ QZᵢ`.
    pub v_set: Vec<u64>,
    pub u: usize,
    pub v: usize,
}

/// Factored operator `c_left·s^{s_power}·∏(δ+α) − c_right·∏(δ−β)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PFOperator {
    pub c_left: BigRat,
    pub s_power: u64,
    pub alphas: Vec<BigRat>,
    pub c_right: BigRat,
    pub betas: Vec<BigRat>,
}

/// Operator expanded in powers of δ; `coeffs[k]` multiplies `δ^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExpandedOperator {
    pub coeffs: Vec<SPoly>,
}

/// Operator in `𝒟 = λ d/dλ`, `λ = (−s)^{−d̂}`:
/// `c_left·∏(𝒟 − a) − c_right·λ·∏(𝒟 + b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaOperator {
    pub c_left: BigRat,
    pub zero_roots: Vec<BigRat>,
    pub c_right: BigRat,
    pub infinity_roots: Vec<BigRat>,
}

fn ratio(a: u64, b: u64) -> BigRat {
    BigRat::new(BigInt::from(a), BigInt::from(b))
}

fn cy_dual(e: &ExponentMatrix) -> Result<(Vec<u64>, u64)> {
    e.weights()?.require_calabi_yau()?;
    let w = e.dual_weights()?;
    Ok((w.q, w.d))
}

/// Index sets from dual weights directly.
pub fn index_sets_from_dual(q_hat: &[u64], d_hat: u64) -> IndexSets {
    let mut q_sets = Vec::new();
    let mut qz = Vec::new();
    let mut qq = Vec::new();
    let mut union_z = BTreeSet::new();
    let mut i_set = BTreeSet::new();
    for &q in q_hat {
        let set: Vec<BigRat> = (1..=q).map(|j| ratio(j * d_hat, q)).collect();
        let z: Vec<u64> = (1..=q).filter(|j| (j * d_hat) % q == 0).map(|j| j * d_hat / q).collect();
        let nz: Vec<BigRat> = set.iter().filter(|x| !x.is_integer()).cloned().collect();
        union_z.extend(z.iter().copied());
        for j in 0..q {
            if (j * d_hat) % q == 0 {
                i_set.insert(j * d_hat / q);
            }
        }
        q_sets.push(set);
        qz.push(z);
        qq.push(nz);
    }
    let total: usize = q_sets.iter().map(|s| s.len()).sum();
    let u = total - union_z.len();
    let v_set: Vec<u64> = (1..=d_hat).filter(|x| !union_z.contains(x)).collect();
    let v = v_set.len();
    IndexSets { d_hat, q_hat: q_hat.to_vec(), q_sets, qz, qq, i_set: i_set.into_iter().collect(), v_set, u, v }
}

pub fn index_sets(e: &ExponentMatrix) -> Result<IndexSets> {
    let (q, d) = cy_dual(e)?;
    Ok(index_sets_from_dual(&q, d))
}

/// Order of the Picard-Fuchs operator.
pub fn pf_order(e: &ExponentMatrix) -> Result<usize> {
    Ok(index_sets(e)?.u)
}

/// The multiset `⊔ᵢ {j·d̂/q̂ᵢ : j = 0..q̂ᵢ−1}`, sorted.
pub fn gkz_alphas_from_dual(q_hat: &[u64], d_hat: u64) -> Vec<BigRat> {
    let mut a: Vec<BigRat> = q_hat.iter().flat_map(|&q| (0..q).map(move |j| ratio(j * d_hat, q))).collect();
    a.sort();
    a
}

/// Removes one copy of each element of `remove` from the sorted multiset `a`.
fn multiset_minus(a: &[BigRat], remove: &[BigRat]) -> Vec<BigRat> {
    let mut out = a.to_vec();
    for r in remove {
        if let Some(p) = out.iter().position(|x| x == r) {
            out.remove(p);
        }
    }
    out
}

/// Shift multisets from dual weights: α = GKZ α minus one copy of each element
/// of I, β = {0..d̂−1} ∖ I.
pub fn alpha_beta_from_dual(q_hat: &[u64], d_hat: u64) -> (Vec<BigRat>, Vec<BigRat>) {
    let is = index_sets_from_dual(q_hat, d_hat);
    let iset: Vec<BigRat> = is.i_set.iter().map(|&x| BigRat::from_integer(x.into())).collect();
    let alphas = multiset_minus(&gkz_alphas_from_dual(q_hat, d_hat), &iset);
    let betas = (0..d_hat).filter(|x| !is.i_set.contains(x)).map(|x| BigRat::from_integer(x.into())).collect();
    (alphas, betas)
}

pub fn alpha_beta(e: &ExponentMatrix) -> Result<(Vec<BigRat>, Vec<BigRat>)> {
    let (q, d) = cy_dual(e)?;
    Ok(alpha_beta_from_dual(&q, d))
}

/// Alternative α construction `A ∖ (A ∩ D)` with `A` the GKZ multiset; with
/// `shifted = false` D is `{0..d̂−1}`, otherwise `{1..d̂}`.
pub fn alphas_set_difference(q_hat: &[u64], d_hat: u64, shifted: bool) -> Vec<BigRat> {
    let a = gkz_alphas_from_dual(q_hat, d_hat);
    let range = if shifted { 1..=d_hat } else { 0..=d_hat - 1 };
    let common: BTreeSet<BigRat> = a.iter().filter(|x| x.is_integer() && range.contains(&x.to_integer().try_into().unwrap_or(u64::MAX))).cloned().collect();
    let common: Vec<BigRat> = common.into_iter().collect();
    multiset_minus(&a, &common)
}

fn prod_pow(q_hat: &[u64]) -> BigInt {
    q_hat.iter().fold(BigInt::one(), |acc, &q| acc * BigInt::from(q).pow(q as u32))
}

fn neg_dhat_pow(d_hat: u64) -> BigInt {
    (-BigInt::from(d_hat)).pow(d_hat as u32)
}

pub fn pf_operator_from_dual(q_hat: &[u64], d_hat: u64) -> PFOperator {
    let (alphas, betas) = alpha_beta_from_dual(q_hat, d_hat);
    PFOperator {
        c_left: BigRat::from_integer(prod_pow(q_hat)),
        s_power: d_hat,
        alphas,
        c_right: BigRat::from_integer(neg_dhat_pow(d_hat)),
        betas,
    }
}

/// Closed-form Picard-Fuchs operator.
pub fn pf_operator(e: &ExponentMatrix) -> Result<PFOperator> {
    let (q, d) = cy_dual(e)?;
    Ok(pf_operator_from_dual(&q, d))
}

pub fn gkz_operator_from_dual(q_hat: &[u64], d_hat: u64) -> PFOperator {
    PFOperator {
        c_left: BigRat::from_integer(prod_pow(q_hat)),
        s_power: d_hat,
        alphas: gkz_alphas_from_dual(q_hat, d_hat),
        c_right: BigRat::from_integer(neg_dhat_pow(d_hat)),
        betas: (1..=d_hat).map(|j| BigRat::from_integer(j.into())).collect(),
    }
}

/// Uncancelled GKZ operator; the Picard-Fuchs operator divides it on the right.
pub fn gkz_operator(e: &ExponentMatrix) -> Result<PFOperator> {
    let (q, d) = cy_dual(e)?;
    Ok(gkz_operator_from_dual(&q, d))
}

/// Elementary symmetric expansion of `∏(δ + r)`, coefficients by δ-power.
fn poly_from_shifts(shifts: &[BigRat], sign: i32) -> Vec<BigRat> {
    let mut c = vec![BigRat::one()];
    for r in shifts {
        let r = if sign < 0 { -r } else { r.clone() };
        let mut nc = vec![BigRat::zero(); c.len() + 1];
        for (k, x) in c.iter().enumerate() {
            nc[k + 1] += x;
            nc[k] += x * &r;
        }
        c = nc;
    }
    c
}

impl PFOperator {
    pub fn order(&self) -> usize {
        self.alphas.len().max(self.betas.len())
    }

    /// Multiplies out and normalizes to a primitive integer operator.
    pub fn expand(&self) -> ExpandedOperator {
        let left = poly_from_shifts(&self.alphas, 1);
        let right = poly_from_shifts(&self.betas, -1);
        let m = left.len().max(right.len());
        let coeffs = (0..m)
            .map(|k| {
                let l = left.get(k).cloned().unwrap_or_else(BigRat::zero) * &self.c_left;
                let r = right.get(k).cloned().unwrap_or_else(BigRat::zero) * &self.c_right;
                SPoly::monomial(l, self.s_power as usize).sub(&SPoly::constant(r))
            })
            .collect();
        ExpandedOperator::normalized(coeffs)
    }

    /// Scalars with gcd 1 for the two summands (sign kept on the right one).
    pub fn reduced_constants(&self) -> (BigInt, BigInt) {
        let l = &self.c_left;
        let r = &self.c_right;
        let num = l.numer().gcd(r.numer());
        let den = l.denom().lcm(r.denom());
        let g = BigRat::new(num, den);
        let mut a = (l / &g).to_integer();
        let mut b = (r / &g).to_integer();
        if a.is_negative() {
            a = -a;
            b = -b;
        }
        (a, b)
    }

    /// Rewrites with `δ = −d̂·𝒟` and `λ = (−s)^{−d̂}`, where `d̂` is the s-power.
    pub fn to_lambda(&self) -> LambdaOperator {
        let d = BigRat::from_integer(BigInt::from(self.s_power));
        let sign = if self.s_power % 2 == 0 { BigRat::one() } else { -BigRat::one() };
        let mut zr: Vec<BigRat> = self.alphas.iter().map(|a| a / &d).collect();
        let mut ir: Vec<BigRat> = self.betas.iter().map(|b| b / &d).collect();
        zr.sort();
        ir.sort();
        LambdaOperator { c_left: self.c_left.clone(), zero_roots: zr, c_right: &self.c_right * sign, infinity_roots: ir }
    }

    /// Paper-style text such as `s^4 d^3 - 2^8 (d-1)(d-2)(d-3)`.
    pub fn render(&self) -> String {
        self.render_with("d")
    }

    pub fn render_with(&self, delta: &str) -> String {
        let (a, b) = self.reduced_constants();
        let mut out = String::new();
        let ca = render_factored(&a);
        if ca != "1" {
            out.push_str(&ca);
            out.push(' ');
        }
        match self.s_power {
            0 => {}
            1 => out.push_str("s "),
            p => out.push_str(&format!("s^{} ", p)),
        }
        out.push_str(&render_factors(&self.alphas, delta, 1));
        let out = out.trim_end().to_string();
        let sign = if b.is_negative() { "+" } else { "-" };
        let cb = render_factored(&b.abs());
        let rf = render_factors(&self.betas, delta, -1);
        let right = if cb == "1" { rf } else if rf.is_empty() { cb } else { format!("{} {}", cb, rf) };
        format!("{} {} {}", out, sign, if right.is_empty() { "1".to_string() } else { right })
    }
}

impl fmt::Display for PFOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

fn render_factors(shifts: &[BigRat], delta: &str, sign: i32) -> String {
    let mut sorted = shifts.to_vec();
    sorted.sort();
    let zeros = sorted.iter().filter(|x| x.is_zero()).count();
    let mut out = String::new();
    match zeros {
        0 => {}
        1 => out.push_str(delta),
        k => out.push_str(&format!("{}^{}", delta, k)),
    }
    for r in sorted.iter().filter(|x| !x.is_zero()) {
        let (op, v) = match (sign > 0, r.is_negative()) {
            (true, false) | (false, true) => ('+', r.abs()),
            _ => ('-', r.abs()),
        };
        out.push_str(&format!("({}{}{})", delta, op, v));
    }
    out
}

/// `2^8 3^9`-style prime factorization for integers built from small primes.
pub fn render_factored(n: &BigInt) -> String {
    if n.is_zero() {
        return "0".into();
    }
    let mut m = n.abs();
    let mut parts = Vec::new();
    let mut p = BigInt::from(2);
    while p < BigInt::from(1000) && !m.is_one() {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e == 1 {
            parts.push(p.to_string());
        } else if e > 1 {
            parts.push(format!("{}^{}", p, e));
        }
        p += 1;
    }
    if !m.is_one() {
        parts.push(m.to_string());
    }
    let body = if parts.is_empty() { "1".to_string() } else { parts.join(" ") };
    if n.is_negative() { format!("-{}", body) } else { body }
}

impl ExpandedOperator {
    /// Clears denominators, divides by the integer content and makes the top δ-coefficient's leading term positive.
    pub fn normalized(coeffs: Vec<SPoly>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return ExpandedOperator { coeffs };
        }
        let den = coeffs.iter().flat_map(|c| c.coeffs().iter()).fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let dr = BigRat::from_integer(den);
        let zs: Vec<ZPoly> = coeffs.iter().map(|c| c.scale(&dr).to_z().unwrap()).collect();
        let mut g = BigInt::zero();
        for z in &zs {
            g = g.gcd(&z.content());
            if g.is_one() {
                break;
            }
        }
        let mut zs: Vec<ZPoly> = zs.iter().map(|z| z.div_scalar(&g)).collect();
        if zs.last().unwrap().lc().unwrap().is_negative() {
            zs = zs.iter().map(|z| z.neg()).collect();
        }
        ExpandedOperator { coeffs: zs.iter().map(SPoly::from_z).collect() }
    }

    /// Normalizes a relation with coefficients in Q(s): clears denominators
    /// and divides by the gcd of all coefficients in Z[s].
    pub fn from_srat(coeffs: &[SRat]) -> Self {
        let mut den = ZPoly::one();
        for c in coeffs {
            let g = den.gcd(c.den_z());
            den = den.mul(&c.den_z().div_exact(&g));
        }
        let zs: Vec<ZPoly> = coeffs.iter().map(|c| c.num_z().mul(&den.div_exact(c.den_z()))).collect();
        let mut g = ZPoly::zero();
        for z in &zs {
            g = g.gcd(z);
            if g.is_one() {
                break;
            }
        }
        if g.is_zero() {
            return ExpandedOperator { coeffs: Vec::new() };
        }
        Self::normalized(zs.iter().map(|z| SPoly::from_z(&z.div_exact(&g))).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Equality up to a nonzero rational factor.
    pub fn projectively_equal(&self, o: &Self) -> bool {
        Self::normalized(self.coeffs.clone()) == Self::normalized(o.coeffs.clone())
    }

    /// Plain text `(s^4 - 256)*d^3 + ...`.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let cs = if c.coeffs().iter().filter(|x| !x.is_zero()).count() > 1 { format!("({})", cs) } else { cs };
            parts.push(match k {
                0 => cs,
                1 => format!("{}*d", cs),
                _ => format!("{}*d^{}", cs, k),
            });
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            match (i, p.strip_prefix('-')) {
                (0, _) => out.push_str(p),
                (_, Some(rest)) => write!(out, " - {}", rest).unwrap(),
                (_, None) => write!(out, " + {}", p).unwrap(),
            }
        }
        out
    }
}

impl fmt::Display for LambdaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = render_factors(&self.zero_roots, "D", -1);
        let r = render_factors(&self.infinity_roots, "D", 1);
        let (a, b) = PFOperator {
            c_left: self.c_left.clone(),
            s_power: 0,
            alphas: vec![],
            c_right: self.c_right.clone(),
            betas: vec![],
        }
        .reduced_constants();
        let ca = render_factored(&a);
        let lhs = if ca == "1" { l } else { format!("{} {}", ca, l) };
        let sign = if b.is_negative() { "+" } else { "-" };
        let cb = render_factored(&b.abs());
        let cb = if cb == "1" { String::new() } else { format!("{} ", cb) };
        write!(f, "{} {} {}L {}", lhs, sign, cb, r)
    }
}

/// Parses paper-style operator text.
///
/// Accepts `d`, `δ` or `D` for the derivation, an optional scalar made of
/// prime powers (`2^22 3^15 7^7`, `2·6^3`), an optional `s^p`, then linear
/// factors `(d+a)`, `(d-b)` and powers `d^k`. The two summands are separated
/// by `-` or `+`.
pub fn parse_operator(text: &str) -> Result<PFOperator> {
    let t: String = text
        .chars()
        .map(|c| match c {
            'δ' | 'D' => 'd',
            '·' | '*' => ' ',
            '−' => '-',
            c => c,
        })
        .collect();
    let chars: Vec<char> = t.chars().collect();
    let mut depth = 0;
    let mut split = None;
    let mut seen_body = false;
    for (i, &c) in chars.iter().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && seen_body => {
                split = Some(i);
                break;
            }
            c if !c.is_whitespace() => seen_body = true,
            _ => {}
        }
    }
    let split = split.ok_or(Error::Parse { pos: 0, msg: "operator needs two summands".into() })?;
    let lhs: String = chars[..split].iter().collect();
    let rhs: String = chars[split + 1..].iter().collect();
    let right_sign = if chars[split] == '-' { 1 } else { -1 };
    let (cl, sp_l, fl) = parse_summand(&lhs, 0)?;
    let (cr, sp_r, fr) = parse_summand(&rhs, split + 1)?;
    if sp_r != 0 {
        return Err(Error::Parse { pos: split + 1, msg: "s may only appear in the first summand".into() });
    }
    let alphas = fl;
    let betas = fr.into_iter().map(|x| -x).collect();
    Ok(PFOperator {
        c_left: cl,
        s_power: sp_l,
        alphas,
        c_right: cr * BigRat::from_integer(right_sign.into()),
        betas,
    })
}

/// Returns (scalar, s-power, shifts r of factors (d + r)).
fn parse_summand(s: &str, base: usize) -> Result<(BigRat, u64, Vec<BigRat>)> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut scalar = BigRat::one();
    let mut s_power = 0u64;
    let mut shifts = Vec::new();
    let err = |pos: usize, msg: &str| Error::Parse { pos: base + pos + 1, msg: msg.into() };
    let read_int = |i: &mut usize| -> Option<BigInt> {
        let st = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        if st == *i { None } else { chars[st..*i].iter().collect::<String>().parse().ok() }
    };
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip_ws(&mut i);
        if i >= chars.len() {
            break;
        }
        let c = chars[i];
        if c.is_ascii_digit() {
            let b = read_int(&mut i).unwrap();
            let mut e = 1u32;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                e = read_int(&mut i).ok_or_else(|| err(i, "expected exponent"))?.try_into().map_err(|_| err(i, "exponent too large"))?;
            }
            scalar *= BigRat::from_integer(b.pow(e));
        } else if c == 's' {
            i += 1;
            let mut e = 1u64;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                e = read_int(&mut i).ok_or_else(|| err(i, "expected exponent"))?.try_into().map_err(|_| err(i, "exponent too large"))?;
            }
            s_power += e;
        } else if c == 'd' {
            i += 1;
            let mut e = 1u64;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                e = read_int(&mut i).ok_or_else(|| err(i, "expected exponent"))?.try_into().map_err(|_| err(i, "exponent too large"))?;
            }
            for _ in 0..e {
                shifts.push(BigRat::zero());
            }
        } else if c == '(' {
            let close = chars[i..].iter().position(|&x| x == ')').ok_or_else(|| err(i, "unclosed parenthesis"))? + i;
            let inner: String = chars[i + 1..close].iter().filter(|c| !c.is_whitespace()).collect();
            let rest = inner.strip_prefix('d').ok_or_else(|| err(i, "factor must start with d"))?;
            let (sg, num) = if let Some(r) = rest.strip_prefix('+') {
                (1, r)
            } else if let Some(r) = rest.strip_prefix('-') {
                (-1, r)
            } else if rest.is_empty() {
                (1, "0")
            } else {
                return Err(err(i, "expected + or - in factor"));
            };
            let v = parse_rat(num).ok_or_else(|| err(i, "bad number in factor"))?;
            shifts.push(if sg > 0 { v } else { -v });
            i = close + 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let e: u64 = read_int(&mut i).ok_or_else(|| err(i, "expected exponent"))?.try_into().map_err(|_| err(i, "exponent too large"))?;
                let last = shifts.last().unwrap().clone();
                for _ in 1..e {
                    shifts.push(last.clone());
                }
            }
        } else {
            return Err(err(i, &format!("unexpected character '{}'", c)));
        }
    }
    Ok((scalar, s_power, shifts))
}

fn parse_rat(s: &str) -> Option<BigRat> {
    match s.split_once('/') {
        Some((a, b)) => Some(BigRat::new(a.parse().ok()?, b.parse().ok()?)),
        None => Some(BigRat::from_integer(s.parse().ok()?)),
    }
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invertible::tests::{em, emv};
    use crate::poly::{int, rat};

    fn ints(v: &[i64]) -> Vec<BigRat> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn index_set_examples() {
        let e = em("x1^18+x2^2*x3+x3^3*x4+x4^3");
        let is = index_sets(&e).unwrap();
        assert_eq!(is.q_hat, vec![1, 9, 3, 5]);
        assert_eq!(is.q_sets[0], ints(&[18]));
        assert_eq!(is.q_sets[1], ints(&[2, 4, 6, 8, 10, 12, 14, 16, 18]));
        assert_eq!(is.q_sets[2], ints(&[6, 12, 18]));
        assert_eq!(is.q_sets[3], vec![rat(18, 5), rat(36, 5), rat(54, 5), rat(72, 5), int(18)]);
        assert_eq!(is.u, 9);
        assert_eq!(is.u, is.v);
        let e = em("x1^5*x2+x2^4*x3+x3^8+x4^2");
        assert_eq!(index_sets(&e).unwrap().u, 4);
    }

    #[test]
    fn order_examples() {
        assert_eq!(pf_order(&em("x1^4+x2^4+x3^4+x4^4")).unwrap(), 3);
        assert_eq!(pf_order(&emv("w^16+x^4+y^2*z+x*z^2", "w,x,y,z")).unwrap(), 8);
        assert_eq!(pf_order(&emv("w^12+x^4+y^2*z+y*z^2", "w,x,y,z")).unwrap(), 6);
        assert!(matches!(pf_order(&em("x1^7+x2^3+x3^2")), Err(Error::NotCalabiYau { .. })));
    }

    #[test]
    fn alpha_beta_examples() {
        let (a, b) = alpha_beta(&emv("w^42+x^7+y^3+z^2", "w,x,y,z")).unwrap();
        assert_eq!(a, ints(&[0, 0, 0, 6, 12, 14, 18, 21, 24, 28, 30, 36]));
        assert_eq!(b, ints(&[1, 5, 11, 13, 17, 19, 23, 25, 29, 31, 37, 41]));
        let (a, b) = alpha_beta(&emv("w^12+x^4+y^2*z+y*z^2", "w,x,y,z")).unwrap();
        assert_eq!(a, ints(&[0, 0, 0, 3, 6, 9]));
        assert_eq!(b, ints(&[1, 2, 5, 7, 10, 11]));
        let (a, b) = alpha_beta(&em("x1^4+x2^4+x3^4+x4^4")).unwrap();
        assert_eq!(a, ints(&[0, 0, 0]));
        assert_eq!(b, ints(&[1, 2, 3]));
    }

    #[test]
    fn pf_operator_examples() {
        let fq = pf_operator(&em("x1^4+x2^4+x3^4+x4^4")).unwrap();
        assert_eq!(fq.render(), "s^4 d^3 - 2^8 (d-1)(d-2)(d-3)");
        let table = parse_operator("s^4δ^3-2^8(δ-1)(δ-2)(δ-3)").unwrap();
        assert_eq!(fq.expand(), table.expand());
        let e6 = pf_operator(&em("x1^3+x2^3+x3^3")).unwrap();
        assert_eq!(e6.expand(), parse_operator("s^3δ^2 + 3^3(δ-1)(δ-2)").unwrap().expand());
        let q10 = pf_operator(&emv("w^24+x^4+y^3+x*z^2", "w,x,y,z")).unwrap();
        let t = parse_operator("s^24δ^3(δ+6)(δ+8)(δ+12)(δ+16)(δ+18) - 2^24 3^9(δ-1)(δ-5)(δ-7)(δ-11)(δ-13)(δ-17)(δ-19)(δ-23)").unwrap();
        assert_eq!(q10.expand(), t.expand());
        let u12 = pf_operator(&emv("w^12+x^4+y^2*z+y*z^2", "w,x,y,z")).unwrap();
        assert_eq!(u12.render(), "s^12 d^3(d+3)(d+6)(d+9) - 2^8 3^9 (d-1)(d-2)(d-5)(d-7)(d-10)(d-11)");
    }

    #[test]
    fn gkz_examples() {
        let g = gkz_operator(&em("x1^4+x2^4+x3^4+x4^4")).unwrap();
        let t = parse_operator("s^4δ^4 - 2^8(δ-1)(δ-2)(δ-3)(δ-4)").unwrap();
        assert_eq!(g.expand(), t.expand());
        let g = gkz_operator(&em("x1^3+x2^3+x3^3")).unwrap();
        assert_eq!(g.expand(), parse_operator("s^3δ^3 + 3^3(δ-1)(δ-2)(δ-3)").unwrap().expand());
    }

    #[test]
    fn expand_examples() {
        let fq = pf_operator(&em("x1^4+x2^4+x3^4+x4^4")).unwrap().expand();
        assert_eq!(fq.coeffs[3], SPoly::from_ints(&[-256, 0, 0, 0, 1]));
        assert_eq!(fq.coeffs[2], SPoly::from_ints(&[1536]));
        assert_eq!(fq.coeffs[1], SPoly::from_ints(&[-2816]));
        assert_eq!(fq.coeffs[0], SPoly::from_ints(&[1536]));
        let triv = PFOperator { c_left: int(1), s_power: 1, alphas: vec![], c_right: int(1), betas: vec![] };
        assert_eq!(triv.expand().coeffs, vec![SPoly::from_ints(&[-1, 1])]);
        let z12 = pf_operator(&emv("w^22+x^4*y+x*y^3+z^2", "w,x,y,z")).unwrap();
        let t = parse_operator("3^6s^22δ^3(δ+11/3)(δ+11/2)(δ+22/3)(δ+11)(δ+44/3)(δ+33/2)(δ+55/3) - 2^8 11^11(δ-1)(δ-3)(δ-5)(δ-7)(δ-9)(δ-13)(δ-15)(δ-17)(δ-19)(δ-21)").unwrap();
        assert!(z12.expand().projectively_equal(&t.expand()));
        assert!(z12.expand().coeffs.iter().all(|c| c.coeffs().iter().all(|x| x.is_integer())));
    }

    #[test]
    fn lambda_examples() {
        let l = pf_operator(&em("x1^4+x2^4+x3^4+x4^4")).unwrap().to_lambda();
        assert_eq!(l.zero_roots, ints(&[0, 0, 0]));
        assert_eq!(l.infinity_roots, vec![rat(1, 4), rat(1, 2), rat(3, 4)]);
        assert_eq!(l.c_right, BigRat::from_integer(BigInt::from(4).pow(4)));
        let l = pf_operator(&emv("w^42+x^7+y^3+z^2", "w,x,y,z")).unwrap().to_lambda();
        assert_eq!(&l.zero_roots[..6], &[int(0), int(0), int(0), rat(1, 7), rat(2, 7), rat(1, 3)]);
    }

    #[test]
    fn set_difference_variants() {
        let q = [1u64, 6, 14, 21];
        let (a, _) = alpha_beta_from_dual(&q, 42);
        assert_eq!(alphas_set_difference(&q, 42, false), a);
        let shifted = alphas_set_difference(&q, 42, true);
        assert_eq!(shifted.iter().filter(|x| x.is_zero()).count(), 4);
    }

    #[test]
    fn parse_render_roundtrip() {
        let op = pf_operator(&emv("w^13+x^3*y+y^2*z+x*z^2", "w,x,y,z")).unwrap();
        let back = parse_operator(&op.render()).unwrap();
        assert_eq!(back.expand(), op.expand());
        assert!(op.render().contains(" + 13^13 "));
    }
}
