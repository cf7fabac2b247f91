//! Random invertible polynomials for the property and acceptance suites.

#![allow(dead_code)]

use invpf::invertible::{AtomicPart, ExponentMatrix, PartKind};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeMap;

/// Atomic parts on variables `0..m` keyed by their length and weight sum
/// `Σ qᵢ/d`, for completing a partial polynomial to a Calabi-Yau one.
pub struct PartTable {
    by_sum: BTreeMap<(usize, BigRational), Vec<AtomicPart>>,
}

fn part(kind: PartKind, exps: &[u32]) -> AtomicPart {
    AtomicPart { kind, variables: (0..exps.len()).collect(), exponents: exps.to_vec() }
}

/// `Σ qᵢ/d` of one part on its own.
pub fn weight_sum(p: &AtomicPart) -> BigRational {
    let e = ExponentMatrix::from_parts(p.variables.len(), &[part(p.kind, &p.exponents)]).expect("atomic part");
    let w = e.weights().expect("weights");
    BigRational::new(BigInt::from(w.q.iter().sum::<u64>()), BigInt::from(w.d))
}

impl PartTable {
    /// Fermat exponents up to 60, two-variable parts up to 24, three-variable
    /// parts up to 8.
    pub fn new() -> Self {
        let mut by_sum: BTreeMap<(usize, BigRational), Vec<AtomicPart>> = BTreeMap::new();
        let mut add = |p: AtomicPart| by_sum.entry((p.variables.len(), weight_sum(&p))).or_default().push(p);
        for a in 2..=60 {
            add(part(PartKind::Chain, &[a]));
        }
        for a in 2..=24 {
            for b in 2..=24 {
                add(part(PartKind::Chain, &[a, b]));
                add(part(PartKind::Loop, &[a, b]));
            }
        }
        for a in 2..=8 {
            for b in 2..=8 {
                for c in 2..=8 {
                    add(part(PartKind::Chain, &[a, b, c]));
                    add(part(PartKind::Loop, &[a, b, c]));
                }
            }
        }
        PartTable { by_sum }
    }

    /// A random part of length `m`.
    pub fn any<R: Rng>(&self, rng: &mut R, m: usize) -> AtomicPart {
        let keys: Vec<_> = self.by_sum.keys().filter(|(l, _)| *l == m).collect();
        let k = keys[rng.gen_range(0..keys.len())];
        self.by_sum[k].choose(rng).unwrap().clone()
    }

    /// A random part of length `m` with weight sum `s`.
    pub fn with_sum<R: Rng>(&self, rng: &mut R, m: usize, s: &BigRational) -> Option<AtomicPart> {
        self.by_sum.get(&(m, s.clone())).and_then(|v| v.choose(rng)).cloned()
    }
}

/// Random part lengths summing to `n`.
fn lengths<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut left = n;
    let mut out = Vec::new();
    while left > 0 {
        let m = rng.gen_range(1..=left.min(3));
        out.push(m);
        left -= m;
    }
    out
}

/// Places parts on a random permutation of the variables.
fn assemble<R: Rng>(rng: &mut R, n: usize, parts: Vec<AtomicPart>) -> ExponentMatrix {
    let mut vars: Vec<usize> = (0..n).collect();
    vars.shuffle(rng);
    let mut next = 0;
    let placed: Vec<AtomicPart> = parts
        .into_iter()
        .map(|p| {
            let m = p.variables.len();
            let v = vars[next..next + m].to_vec();
            next += m;
            AtomicPart { kind: p.kind, variables: v, exponents: p.exponents }
        })
        .collect();
    ExponentMatrix::from_parts(n, &placed).expect("parts partition the variables")
}

/// Random invertible polynomial in `n` variables, Calabi-Yau or not.
pub fn random_invertible<R: Rng>(rng: &mut R, table: &PartTable, n: usize) -> ExponentMatrix {
    let parts = lengths(rng, n).into_iter().map(|m| table.any(rng, m)).collect();
    assemble(rng, n, parts)
}

/// Random Calabi-Yau invertible polynomial with `2 ≤ n ≤ max_n` variables and
/// dual degree at most `max_dhat`.
pub fn random_cy<R: Rng>(rng: &mut R, table: &PartTable, max_n: usize, max_dhat: u64) -> ExponentMatrix {
    loop {
        let n = rng.gen_range(2..=max_n);
        let mut ls = lengths(rng, n);
        let last = ls.pop().unwrap();
        let mut parts: Vec<AtomicPart> = ls.into_iter().map(|m| table.any(rng, m)).collect();
        let used: BigRational = parts.iter().map(weight_sum).sum();
        let need = BigRational::from_integer(1.into()) - used;
        let Some(p) = table.with_sum(rng, last, &need) else { continue };
        parts.push(p);
        let e = assemble(rng, n, parts);
        let w = e.weights().unwrap();
        assert!(w.is_calabi_yau(), "generator produced a non-CY polynomial");
        if e.dual_weights().unwrap().d <= max_dhat {
            return e;
        }
    }
}
