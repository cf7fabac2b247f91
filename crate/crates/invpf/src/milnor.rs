//! Distinguished Milnor-ring basis monomials read off from the shift
//! multiset α, plus Jacobi-path diagnostics: earliest derivative positions
//! and the step multiset.

use crate::error::{Error, Result};
use crate::invertible::ExponentMatrix;
use crate::pf_formula::{alpha_beta_from_dual, index_sets_from_dual};
use crate::poly::{weighted_degree, BigRat, Exponent};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

/// One distinguished basis monomial and the shift it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisEntry {
    /// Pole level ℓ; the monomial has weighted degree `d·(ℓ−1)`.
    pub level: usize,
    pub alpha: BigRat,
    pub exponent: Exponent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCatalog {
    pub by_level: BTreeMap<usize, Vec<Exponent>>,
    pub entries: Vec<BasisEntry>,
}

impl BasisCatalog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn level(&self, l: usize) -> &[Exponent] {
        self.by_level.get(&l).map(|v| v.as_slice()).unwrap_or(&[])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositionTable {
    /// Earliest usable positions per variable, ascending. Values `≤ 0` are
    /// reported as computed; they mean the derivative must move right.
    pub smallest_positions: Vec<Vec<i64>>,
    /// True when `q̂ᵢ·kᵢ = d̂` (no extra vertex).
    pub pure: Vec<bool>,
}

/// `(1,…,1) + Σᵢ |{q ∈ Qᵢ : q ≤ α}|·stepᵢ`.
pub fn vertex(e: &ExponentMatrix, q_sets: &[Vec<BigRat>], alpha: &BigRat) -> Vec<i64> {
    let steps = e.step_vectors().steps;
    let mut v = vec![1i64; e.n()];
    for (i, q) in q_sets.iter().enumerate() {
        let c = q.iter().filter(|x| *x <= alpha).count() as i64;
        for (vk, sk) in v.iter_mut().zip(&steps[i]) {
            *vk += c * sk;
        }
    }
    v
}

/// The u distinguished basis monomials, grouped by pole level.
///
/// The j-th smallest shift α_j (1-based) sits at level `j − |{β < α_j}|`;
/// its monomial is `vertex(α_j) + (ℓ−2)·(1,…,1)`. The n−1 zero shifts give
/// `(∏x)^{ℓ−1}` at levels 1..n−1.
pub fn basis_monomials(e: &ExponentMatrix) -> Result<BasisCatalog> {
    let w = e.weights()?;
    w.require_calabi_yau()?;
    let n = e.n();
    if n < 3 {
        return Err(Error::SizeMismatch(format!("need at least 3 variables, got {}", n)));
    }
    let dual = e.dual_weights()?;
    let is = index_sets_from_dual(&dual.q, dual.d);
    let (mut alphas, mut betas) = alpha_beta_from_dual(&dual.q, dual.d);
    alphas.sort();
    betas.sort();
    let mut entries = Vec::new();
    for (j0, a) in alphas.iter().enumerate() {
        let below = betas.iter().filter(|b| *b < a).count();
        let level = j0 + 1 - below;
        let v: Vec<i64> = if a.is_zero() {
            vec![level as i64 - 1; n]
        } else {
            vertex(e, &is.q_sets, a).into_iter().map(|x| x + level as i64 - 2).collect()
        };
        if v.iter().any(|&x| x < 0) {
            return Err(Error::NegativeVertex { alpha: a.to_string(), vertex: v });
        }
        let exponent = Exponent(v.iter().map(|&x| x as u32).collect());
        debug_assert_eq!(weighted_degree(&exponent, &w.q).ok(), Some(w.d * (level as u64 - 1)));
        entries.push(BasisEntry { level, alpha: a.clone(), exponent });
    }
    let mut by_level: BTreeMap<usize, Vec<Exponent>> = BTreeMap::new();
    for en in &entries {
        by_level.entry(en.level).or_default().push(en.exponent.clone());
    }
    Ok(BasisCatalog { by_level, entries })
}

/// Earliest Jacobi-path positions per partial derivative.
pub fn jacobi_positions(e: &ExponentMatrix) -> Result<PositionTable> {
    e.weights()?.require_calabi_yau()?;
    let dual = e.dual_weights()?;
    let is = index_sets_from_dual(&dual.q, dual.d);
    let n = e.n() as i64;
    let mut smallest_positions = Vec::new();
    let mut pure = Vec::new();
    for i in 0..e.n() {
        let case_i = dual.q[i] * e.k(i) as u64 == dual.d;
        let mut pos: Vec<i64> = is.q_sets[i]
            .iter()
            .map(|q| {
                let fl = q.floor().to_integer().to_i64().expect("position overflow");
                if case_i {
                    fl - n + 2
                } else if q.is_integer() {
                    fl - n + 1
                } else {
                    fl - n + 2
                }
            })
            .collect();
        pos.sort();
        smallest_positions.push(pos);
        pure.push(case_i);
    }
    Ok(PositionTable { smallest_positions, pure })
}

/// How often each partial derivative is used along a Jacobi path: `q̂ᵢ`.
pub fn path_step_multiset(e: &ExponentMatrix) -> Result<Vec<u64>> {
    e.weights()?.require_calabi_yau()?;
    Ok(e.dual_weights()?.q)
}

/// `Σᵢ countᵢ·stepᵢ`; zero for the step multiset of a Jacobi path.
pub fn path_closure(e: &ExponentMatrix, counts: &[u64]) -> Vec<BigInt> {
    let steps = e.step_vectors().steps;
    let mut v = vec![BigInt::zero(); e.n()];
    for (c, s) in counts.iter().zip(&steps) {
        for (vk, sk) in v.iter_mut().zip(s) {
            *vk += BigInt::from(*c) * BigInt::from(*sk);
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invertible::tests::{emv, names};
    use crate::poly::{rat, render_monomial};

    fn render_level(c: &BasisCatalog, l: usize) -> Vec<String> {
        let nm = names("w,x,y,z");
        c.level(l).iter().map(|m| render_monomial(m, &nm)).collect()
    }

    #[test]
    fn s11_walkthrough() {
        let s11 = emv("w^16+x^4+y^2*z+x*z^2", "w,x,y,z");
        let dual = s11.dual_weights().unwrap();
        let is = index_sets_from_dual(&dual.q, dual.d);
        assert_eq!(vertex(&s11, &is.q_sets, &rat(4, 1)), vec![4, 3, 0, 0]);
        assert_eq!(vertex(&s11, &is.q_sets, &rat(16, 3)), vec![5, 0, 1, 1]);
        let c = basis_monomials(&s11).unwrap();
        let mut mid = render_level(&c, 2);
        mid.sort();
        let mut want: Vec<String> = "wxyz,w^12x,w^8x^2,w^4x^3,w^10z,w^5yz".split(',').map(String::from).collect();
        want = want.iter().map(|s| render_monomial(&parse_mono(s), &names("w,x,y,z"))).collect();
        want.sort();
        assert_eq!(mid, want);
        assert_eq!(render_level(&c, 1), vec!["1"]);
        assert_eq!(render_level(&c, 3), vec!["w^2*x^2*y^2*z^2"]);
        assert_eq!(c.len(), 8);
    }

    fn parse_mono(s: &str) -> Exponent {
        let names = ['w', 'x', 'y', 'z'];
        let mut e = vec![0u32; 4];
        let ch: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < ch.len() {
            let v = names.iter().position(|&c| c == ch[i]).unwrap();
            i += 1;
            let mut k = 1;
            if i < ch.len() && ch[i] == '^' {
                i += 1;
                let st = i;
                while i < ch.len() && ch[i].is_ascii_digit() {
                    i += 1;
                }
                k = ch[st..i].iter().collect::<String>().parse().unwrap();
            }
            e[v] += k;
        }
        Exponent(e)
    }

    #[test]
    fn e12_middle_level() {
        let c = basis_monomials(&emv("w^42+x^7+y^3+z^2", "w,x,y,z")).unwrap();
        let mut mid: Vec<Exponent> = c.level(2).to_vec();
        mid.sort();
        let mut want: Vec<Exponent> = "wxyz,w^36x,w^30x^2,w^24x^3,w^18x^4,w^12x^5,w^6x^6,w^28y,w^14y^2,w^21z".split(',').map(parse_mono).collect();
        want.sort();
        assert_eq!(mid, want);
    }

    #[test]
    fn positions_example() {
        let e = emv("x1^18+x2^2*x3+x3^3*x4+x4^3", "x1,x2,x3,x4");
        let t = jacobi_positions(&e).unwrap();
        assert_eq!(t.smallest_positions[0], vec![16]);
        assert_eq!(t.smallest_positions[1], vec![0, 2, 4, 6, 8, 10, 12, 14, 16]);
        assert_eq!(t.smallest_positions[2], vec![3, 9, 15]);
        assert_eq!(t.smallest_positions[3], vec![1, 5, 8, 12, 15]);
        assert_eq!(t.pure, vec![true, true, false, false]);
        let f = emv("x1^4+x2^4+x3^4+x4^4", "x1,x2,x3,x4");
        assert!(jacobi_positions(&f).unwrap().smallest_positions.iter().all(|p| p == &vec![2]));
    }

    #[test]
    fn step_multiset_examples() {
        let e = emv("x1^18+x2^2*x3+x3^3*x4+x4^3", "x1,x2,x3,x4");
        let c = path_step_multiset(&e).unwrap();
        assert_eq!(c, vec![1, 9, 3, 5]);
        assert_eq!(c.iter().sum::<u64>(), 18);
        assert!(path_closure(&e, &c).iter().all(|x| x.is_zero()));
        let e = emv("x1^5*x2+x2^4*x3+x3^8+x4^2", "x1,x2,x3,x4");
        let c = path_step_multiset(&e).unwrap();
        assert_eq!(c, vec![2, 2, 1, 5]);
        assert!(path_closure(&e, &c).iter().all(|x| x.is_zero()));
    }
}
