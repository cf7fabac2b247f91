//! Invertible polynomials: parsing, loop/chain decomposition, weights,
//! Berglund-Hübsch transpose, the Calabi-Yau check and step vectors.
//!
//! Monomials are indexed by their diagonal variable: monomial `i` is the one
//! containing `x_i^{k_i}` with `k_i >= 2`, possibly times one other variable
//! to the first power. The input order of the monomials is kept separately.

use crate::error::{Error, Result};
use crate::poly::{BigRat, Exponent};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Exponent matrix of an invertible polynomial with all coefficients 1.
#[derive(Clone, Debug)]
pub struct ExponentMatrix {
    n: usize,
    /// `mono[j][i]` is the exponent of `x_i` in monomial `j`.
    mono: Vec<Vec<u32>>,
    /// `input_pos[j]` is the position of monomial `j` in the parsed text.
    input_pos: Vec<usize>,
}

impl PartialEq for ExponentMatrix {
    fn eq(&self, o: &Self) -> bool {
        self.mono == o.mono
    }
}

impl Eq for ExponentMatrix {}

impl std::hash::Hash for ExponentMatrix {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.mono.hash(h);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PartKind {
    Loop,
    Chain,
}

/// One loop or chain summand, variables listed along the arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AtomicPart {
    pub kind: PartKind,
    pub variables: Vec<usize>,
    pub exponents: Vec<u32>,
}

/// Reduced weights and degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeightSystem {
    pub q: Vec<u64>,
    pub d: u64,
}

/// `steps[i]` is the displacement of the arrow for the i-th partial derivative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepVectors {
    pub steps: Vec<Vec<i64>>,
}

impl ExponentMatrix {
    /// Builds from monomial exponent vectors in any order.
    pub fn from_monomials(monos: &[Vec<u32>]) -> Result<Self> {
        let n = monos.len();
        if n == 0 {
            return Err(Error::NotInvertible("empty polynomial".into()));
        }
        for m in monos {
            if m.len() != n {
                return Err(Error::LengthMismatch { expected: n, found: m.len() });
            }
        }
        let mut slot: Vec<Option<usize>> = vec![None; n];
        for (pos, m) in monos.iter().enumerate() {
            let big: Vec<usize> = (0..n).filter(|&i| m[i] >= 2).collect();
            let ones: Vec<usize> = (0..n).filter(|&i| m[i] == 1).collect();
            if big.len() != 1 {
                return Err(Error::NotInvertible(format!(
                    "monomial {} must have exactly one exponent >= 2, found {}",
                    pos + 1,
                    big.len()
                )));
            }
            if ones.len() > 1 {
                return Err(Error::NotInvertible(format!(
                    "monomial {} has more than one variable with exponent 1",
                    pos + 1
                )));
            }
            let i = big[0];
            if slot[i].is_some() {
                return Err(Error::NotInvertible(format!(
                    "two monomials have a high power of variable {}",
                    i + 1
                )));
            }
            slot[i] = Some(pos);
        }
        let input_pos: Vec<usize> = slot.into_iter().map(|s| s.unwrap()).collect();
        let mono: Vec<Vec<u32>> = input_pos.iter().map(|&p| monos[p].clone()).collect();
        let em = ExponentMatrix { n, mono, input_pos };
        let mut indeg = vec![0usize; n];
        for j in 0..n {
            if let Some(t) = em.pointer(j) {
                indeg[t] += 1;
            }
        }
        if let Some(v) = indeg.iter().position(|&c| c > 1) {
            return Err(Error::NotInvertible(format!(
                "variable {} appears to the first power in several monomials",
                v + 1
            )));
        }
        Ok(em)
    }

    /// Diagonal (Brieskorn-Pham) matrix.
    pub fn diagonal(k: &[u32]) -> Result<Self> {
        let n = k.len();
        let monos: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = k[i];
                v
            })
            .collect();
        Self::from_monomials(&monos)
    }

    /// Builds from a list of atomic parts.
    pub fn from_parts(n: usize, parts: &[AtomicPart]) -> Result<Self> {
        let mut monos = vec![vec![0u32; n]; n];
        let mut seen = vec![false; n];
        for p in parts {
            let m = p.variables.len();
            if m == 0 || p.exponents.len() != m {
                return Err(Error::NotInvertible("malformed atomic part".into()));
            }
            for (t, &v) in p.variables.iter().enumerate() {
                if v >= n || seen[v] {
                    return Err(Error::NotInvertible("parts do not partition the variables".into()));
                }
                seen[v] = true;
                monos[v][v] = p.exponents[t];
                let next = if t + 1 < m {
                    Some(p.variables[t + 1])
                } else if p.kind == PartKind::Loop {
                    Some(p.variables[0])
                } else {
                    None
                };
                if let Some(w) = next {
                    monos[v][w] += 1;
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::NotInvertible("parts do not cover every variable".into()));
        }
        Self::from_monomials(&monos)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `E_{ij}`: exponent of variable `i` in monomial `j`.
    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.mono[j][i]
    }

    /// Exponent vector of monomial `j` (the one with diagonal variable `j`).
    pub fn column(&self, j: usize) -> &[u32] {
        &self.mono[j]
    }

    pub fn columns(&self) -> &[Vec<u32>] {
        &self.mono
    }

    /// Monomial exponent vectors in the order they were given.
    pub fn columns_in_input_order(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.n];
        for (j, &p) in self.input_pos.iter().enumerate() {
            out[p] = self.mono[j].clone();
        }
        out
    }

    /// Diagonal exponent `k_i`.
    pub fn k(&self, i: usize) -> u32 {
        self.mono[i][i]
    }

    /// The variable to the first power in monomial `i`, if any.
    pub fn pointer(&self, i: usize) -> Option<usize> {
        (0..self.n).find(|&t| t != i && self.mono[i][t] == 1)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| self.pointer(i).is_none())
    }

    /// Berglund-Hübsch transpose.
    pub fn transpose(&self) -> ExponentMatrix {
        let n = self.n;
        let mono = (0..n).map(|j| (0..n).map(|i| self.mono[i][j]).collect()).collect();
        ExponentMatrix { n, mono, input_pos: (0..n).collect() }
    }

    /// Loop/chain decomposition ordered by smallest variable index.
    pub fn decompose(&self) -> Vec<AtomicPart> {
        let n = self.n;
        let mut indeg = vec![0; n];
        for i in 0..n {
            if let Some(t) = self.pointer(i) {
                indeg[t] += 1;
            }
        }
        let mut used = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if indeg[start] == 0 {
                let mut vars = Vec::new();
                let mut cur = Some(start);
                while let Some(v) = cur {
                    used[v] = true;
                    vars.push(v);
                    cur = self.pointer(v);
                }
                let exps = vars.iter().map(|&v| self.k(v)).collect();
                parts.push(AtomicPart { kind: PartKind::Chain, variables: vars, exponents: exps });
            }
        }
        for start in 0..n {
            if used[start] {
                continue;
            }
            let mut vars = Vec::new();
            let mut cur = start;
            while !used[cur] {
                used[cur] = true;
                vars.push(cur);
                cur = self.pointer(cur).expect("cycle member without pointer");
            }
            let exps = vars.iter().map(|&v| self.k(v)).collect();
            parts.push(AtomicPart { kind: PartKind::Loop, variables: vars, exponents: exps });
        }
        parts.sort_by_key(|p| *p.variables.iter().min().unwrap());
        parts
    }

    /// Parts sorted by (kind, length, smallest index) for comparisons.
    pub fn canonical_parts(&self) -> Vec<AtomicPart> {
        let mut p = self.decompose();
        p.sort_by_key(|a| (a.kind, a.variables.len(), *a.variables.iter().min().unwrap()));
        p
    }

    /// Reduced weights: each monomial has weighted degree `d`.
    pub fn weights(&self) -> Result<WeightSystem> {
        let n = self.n;
        let mut a: Vec<Vec<BigRat>> = (0..n)
            .map(|j| {
                let mut row: Vec<BigRat> = (0..n).map(|i| BigRat::from_integer(self.mono[j][i].into())).collect();
                row.push(BigRat::one());
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(col, piv);
            let inv = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in col..=n {
                        let t = &f * &a[col][c];
                        a[r][c] -= t;
                    }
                }
            }
        }
        let sol: Vec<BigRat> = (0..n).map(|i| a[i][n].clone()).collect();
        if sol.iter().any(|x| !x.is_positive()) {
            return Err(Error::NotInvertible("weights are not all positive".into()));
        }
        let l = sol.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = sol.iter().map(|x| (x * BigRat::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let q: Vec<u64> = ints.iter().map(|x| (x / &g).to_u64().expect("weight overflow")).collect();
        let d = (l / g).to_u64().expect("degree overflow");
        Ok(WeightSystem { q, d })
    }

    /// Weights of the transpose.
    pub fn dual_weights(&self) -> Result<WeightSystem> {
        self.transpose().weights()
    }

    /// `step_i = (1,…,1) − exponent vector of monomial i`.
    pub fn step_vectors(&self) -> StepVectors {
        let steps = (0..self.n).map(|i| self.mono[i].iter().map(|&e| 1 - e as i64).collect()).collect();
        StepVectors { steps }
    }

    /// Renders as text with the given names, monomials in input order.
    pub fn render(&self, names: &[String]) -> String {
        self.columns_in_input_order()
            .iter()
            .map(|m| crate::poly::render_monomial(&Exponent(m.clone()), names))
            .collect::<Vec<_>>()
            .join("+")
    }
}

impl WeightSystem {
    pub fn is_calabi_yau(&self) -> bool {
        self.q.iter().sum::<u64>() == self.d
    }

    pub fn require_calabi_yau(&self) -> Result<()> {
        if self.is_calabi_yau() {
            Ok(())
        } else {
            Err(Error::NotCalabiYau { sum: self.q.iter().sum(), degree: self.d })
        }
    }
}

/// True iff `Σ qᵢ = d`.
pub fn is_calabi_yau(w: &WeightSystem) -> bool {
    w.is_calabi_yau()
}

/// Parses `x1^7+x2^3+x3^2` style text; with `names`, identifiers are looked up there.
pub fn parse_polynomial(text: &str, names: Option<&[String]>) -> Result<(ExponentMatrix, Vec<String>)> {
    let toks = tokenize(text)?;
    let mut terms: Vec<Vec<(usize, String, u32)>> = vec![Vec::new()];
    let mut i = 0;
    let mut expect_factor = true;
    while i < toks.len() {
        let (pos, ref t) = toks[i];
        match t {
            Tok::Ident(name) if expect_factor => {
                let mut e = 1u32;
                if i + 2 < toks.len() + 1 && matches!(toks.get(i + 1), Some((_, Tok::Caret))) {
                    match toks.get(i + 2) {
                        Some((p2, Tok::Int(v))) => {
                            if *v == 0 {
                                return Err(Error::Parse { pos: *p2, msg: format!("variable {} with exponent 0", name) });
                            }
                            e = u32::try_from(*v).map_err(|_| Error::Parse { pos: *p2, msg: "exponent too large".into() })?;
                            i += 2;
                        }
                        _ => return Err(Error::Parse { pos, msg: "expected integer exponent after '^'".into() }),
                    }
                }
                if name == "s" {
                    return Err(Error::Parse { pos, msg: "the deformation term s*x1*...*xn is implicit; omit it".into() });
                }
                terms.last_mut().unwrap().push((pos, name.clone(), e));
                expect_factor = false;
            }
            Tok::Int(_) if expect_factor => {
                return Err(Error::Parse { pos, msg: "explicit coefficients are not allowed; all coefficients are 1".into() });
            }
            Tok::Star if !expect_factor => expect_factor = true,
            Tok::Plus if !expect_factor => {
                terms.push(Vec::new());
                expect_factor = true;
            }
            _ => return Err(Error::Parse { pos, msg: format!("unexpected {}", t.describe()) }),
        }
        i += 1;
    }
    if expect_factor {
        return Err(Error::Parse { pos: text.len(), msg: "unexpected end of input".into() });
    }
    let names_out: Vec<String>;
    let index_of: Box<dyn Fn(&str, usize) -> Result<usize>>;
    match names {
        Some(ns) => {
            names_out = ns.to_vec();
            let ns = ns.to_vec();
            index_of = Box::new(move |s: &str, pos: usize| {
                ns.iter().position(|x| x == s).ok_or(Error::Parse { pos, msg: format!("unknown variable {}", s) })
            });
        }
        None => {
            let mut maxi = 0usize;
            for t in &terms {
                for (pos, name, _) in t {
                    let k = indexed_var(name).ok_or(Error::Parse {
                        pos: *pos,
                        msg: format!("variable {} is not of the form x<i>; pass variable names", name),
                    })?;
                    maxi = maxi.max(k);
                }
            }
            names_out = (1..=maxi).map(|i| format!("x{}", i)).collect();
            index_of = Box::new(|s: &str, _pos: usize| Ok(indexed_var(s).unwrap() - 1));
        }
    }
    let n = names_out.len();
    if terms.len() != n {
        return Err(Error::NotInvertible(format!("{} monomials in {} variables", terms.len(), n)));
    }
    let mut monos = Vec::new();
    for t in &terms {
        let mut v = vec![0u32; n];
        for (pos, name, e) in t {
            let k = index_of(name, *pos)?;
            v[k] += e;
        }
        monos.push(v);
    }
    let used: Vec<bool> = (0..n).map(|i| monos.iter().any(|m| m[i] > 0)).collect();
    if let Some(i) = used.iter().position(|u| !u) {
        return Err(Error::NotInvertible(format!("variable {} does not occur", names_out[i])));
    }
    Ok((ExponentMatrix::from_monomials(&monos)?, names_out))
}

fn indexed_var(s: &str) -> Option<usize> {
    let rest = s.strip_prefix('x')?;
    let k: usize = rest.parse().ok()?;
    if k >= 1 { Some(k) } else { None }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Plus,
    Star,
    Caret,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier '{}'", s),
            Tok::Int(v) => format!("number {}", v),
            Tok::Plus => "'+'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c == '+' {
            out.push((pos, Tok::Plus));
            i += 1;
        } else if c == '*' {
            out.push((pos, Tok::Star));
            i += 1;
        } else if c == '^' {
            out.push((pos, Tok::Caret));
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[st..i].iter().collect();
            let v = s.parse().map_err(|_| Error::Parse { pos, msg: "number too large".into() })?;
            out.push((pos, Tok::Int(v)));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[st..i].iter().collect())));
        } else {
            return Err(Error::Parse { pos, msg: format!("unexpected character '{}'", c) });
        }
    }
    Ok(out)
}
