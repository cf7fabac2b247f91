//! Buchberger's algorithm over Q(s) for weighted-homogeneous ideals, with
//! cofactor tracking so ideal members can be written in the original
//! generators.

use crate::error::{Error, Result};
use crate::poly::{Exponent, MultiPoly, SRat, WeightedOrder};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

/// Largest supported number of variables.
pub const MAX_VARS: usize = 6;

/// Packed monomial with cached weighted degree. Ordered by weighted degree,
/// then reverse-lexicographically (same order as [`WeightedOrder`]).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mono {
    deg: u64,
    e: [u16; MAX_VARS],
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        match self.deg.cmp(&o.deg) {
            Ordering::Equal => {
                for i in (0..MAX_VARS).rev() {
                    if self.e[i] != o.e[i] {
                        return o.e[i].cmp(&self.e[i]);
                    }
                }
                Ordering::Equal
            }
            x => x,
        }
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Mono {
    pub fn one() -> Self {
        Mono { deg: 0, e: [0; MAX_VARS] }
    }

    pub fn deg(&self) -> u64 {
        self.deg
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.e[i]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(&o.e) {
            *a += b;
        }
        Mono { deg: self.deg + o.deg, e }
    }

    pub fn divides(&self, o: &Self) -> bool {
        self.deg <= o.deg && self.e.iter().zip(&o.e).all(|(a, b)| a <= b)
    }

    /// `self / o`; requires `o | self`.
    pub fn div(&self, o: &Self) -> Self {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(&o.e) {
            *a -= b;
        }
        Mono { deg: self.deg - o.deg, e }
    }

    pub fn coprime(&self, o: &Self) -> bool {
        self.e.iter().zip(&o.e).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Polynomial as terms sorted by descending monomial.
pub type Terms = Vec<(Mono, SRat)>;

/// Variable count and weights; converts between [`MultiPoly`] and [`Terms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    pub n: usize,
    pub w: Vec<u64>,
}

impl Ring {
    pub fn new(w: &[u64]) -> Self {
        assert!(w.len() <= MAX_VARS, "at most {} variables", MAX_VARS);
        Ring { n: w.len(), w: w.to_vec() }
    }

    pub fn mono(&self, x: &[u32]) -> Mono {
        let mut e = [0u16; MAX_VARS];
        let mut deg = 0;
        for (i, &k) in x.iter().enumerate() {
            e[i] = u16::try_from(k).expect("exponent too large");
            deg += k as u64 * self.w[i];
        }
        Mono { deg, e }
    }

    pub fn exponent(&self, m: &Mono) -> Exponent {
        Exponent(m.e[..self.n].iter().map(|&k| k as u32).collect())
    }

    pub fn lcm(&self, a: &Mono, b: &Mono) -> Mono {
        let mut e = [0u16; MAX_VARS];
        let mut deg = 0;
        for i in 0..self.n {
            e[i] = a.e[i].max(b.e[i]);
            deg += e[i] as u64 * self.w[i];
        }
        Mono { deg, e }
    }

    /// Monomial `x_i`.
    pub fn var(&self, i: usize) -> Mono {
        let mut x = vec![0u32; self.n];
        x[i] = 1;
        self.mono(&x)
    }

    pub fn to_terms(&self, p: &MultiPoly) -> Terms {
        let mut t: Terms = p.terms().map(|(e, c)| (self.mono(&e.0), c.clone())).collect();
        t.sort_by(|a, b| b.0.cmp(&a.0));
        t
    }

    pub fn to_multi(&self, t: &Terms) -> MultiPoly {
        MultiPoly::from_terms(self.n, t.iter().map(|(m, c)| (self.exponent(m), c.clone())))
    }

    /// `∂p/∂x_i`; order is preserved so no re-sorting is needed.
    pub fn derivative(&self, p: &Terms, i: usize) -> Terms {
        p.iter()
            .filter(|(m, _)| m.e[i] > 0)
            .map(|(m, c)| {
                let mut e = m.e;
                e[i] -= 1;
                (Mono { deg: m.deg - self.w[i], e }, c.mul_int(&m.e[i].into()))
            })
            .collect()
    }
}

/// `a + c·m·b`.
pub fn add_scaled(a: &Terms, c: &SRat, m: &Mono, b: &Terms) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    while i < a.len() || j < b.len() {
        let bm = b.get(j).map(|(x, _)| x.mul(m));
        match (a.get(i), bm) {
            (Some((am, ac)), Some(bm)) => match am.cmp(&bm) {
                Ordering::Greater => {
                    out.push((*am, ac.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm, c.mul(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = ac.add(&c.mul(&b[j].1));
                    if !v.is_zero() {
                        out.push((bm, v));
                    }
                    i += 1;
                    j += 1;
                }
            },
            (Some((am, ac)), None) => {
                out.push((*am, ac.clone()));
                i += 1;
            }
            (None, Some(bm)) => {
                out.push((bm, c.mul(&b[j].1)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

pub fn add(a: &Terms, b: &Terms) -> Terms {
    add_scaled(a, &SRat::one(), &Mono::one(), b)
}

pub fn sub(a: &Terms, b: &Terms) -> Terms {
    add_scaled(a, &SRat::from_int(-1), &Mono::one(), b)
}

pub fn scale(a: &Terms, c: &SRat) -> Terms {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(m, x)| (*m, x.mul(c))).collect()
}

pub fn mul(a: &Terms, b: &Terms) -> Terms {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len() == 1 {
        return scale(&b.iter().map(|(m, c)| (m.mul(&a[0].0), c.clone())).collect(), &a[0].1);
    }
    let mut acc: BTreeMap<Mono, SRat> = BTreeMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = ma.mul(mb);
            let v = ca.mul(cb);
            match acc.get_mut(&m) {
                Some(x) => *x = x.add(&v),
                None => {
                    acc.insert(m, v);
                }
            }
        }
    }
    acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect()
}

/// Full reduction of `p` by monic `basis`; returns the remainder and, when
/// `want_quotients`, the quotient of each basis element.
pub fn reduce(p: &Terms, basis: &[&Terms], want_quotients: bool) -> (Terms, Vec<Terms>) {
    let mut quots: Vec<Terms> = vec![Vec::new(); if want_quotients { basis.len() } else { 0 }];
    let mut rem: Terms = Vec::new();
    let mut acc: BTreeMap<Mono, SRat> = p.iter().cloned().collect();
    while let Some((t, c)) = acc.pop_last() {
        if c.is_zero() {
            continue;
        }
        match basis.iter().position(|g| g[0].0.divides(&t)) {
            Some(k) => {
                let g = basis[k];
                let m = t.div(&g[0].0);
                for (gm, gc) in &g[1..] {
                    let key = gm.mul(&m);
                    let v = c.mul(gc);
                    match acc.get_mut(&key) {
                        Some(x) => {
                            *x = x.sub(&v);
                            if x.is_zero() {
                                acc.remove(&key);
                            }
                        }
                        None => {
                            acc.insert(key, v.neg());
                        }
                    }
                }
                if want_quotients {
                    quots[k].push((m, c));
                }
            }
            None => rem.push((t, c)),
        }
    }
    (rem, quots)
}

/// Wall-clock budget shared by long-running computations.
#[derive(Clone, Debug)]
pub struct Budget {
    start: Instant,
    limit: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { start: Instant::now(), limit: None }
    }

    pub fn seconds(s: u64) -> Self {
        Budget { start: Instant::now(), limit: Some(Duration::from_secs(s)) }
    }

    pub fn check(&self) -> Result<()> {
        match self.limit {
            Some(l) if self.start.elapsed() > l => Err(Error::Timeout(l.as_secs())),
            _ => Ok(()),
        }
    }

    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }
}

/// Reduced Gröbner basis, monic, sorted by ascending leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub order: WeightedOrder,
    pub generators: Vec<MultiPoly>,
    ring: Ring,
    inputs: Vec<Terms>,
    basis: Vec<Terms>,
    /// `basis[k] = Σⱼ reprs[k][j]·inputs[j]`, when tracked.
    reprs: Option<Vec<Vec<Terms>>>,
}

struct Elem {
    p: Terms,
    r: Vec<Terms>,
    active: bool,
}

fn combine(r: &[Terms], quots: &[Terms], elems: &[&Vec<Terms>]) -> Vec<Terms> {
    let mut out = r.to_vec();
    for (q, er) in quots.iter().zip(elems) {
        if q.is_empty() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(er.iter()) {
            *o = sub(o, &mul(q, x));
        }
    }
    out
}

fn make_monic(p: &mut Terms, r: &mut [Terms]) {
    let lc = p[0].1.clone();
    if lc.is_one() {
        return;
    }
    let inv = lc.recip();
    *p = scale(p, &inv);
    for x in r.iter_mut() {
        *x = scale(x, &inv);
    }
}

/// Reduced Gröbner basis of `gens` under `order`.
pub fn groebner(gens: &[MultiPoly], order: &WeightedOrder) -> GroebnerBasis {
    groebner_with(gens, order, true, &Budget::unlimited()).expect("unlimited budget")
}

/// Buchberger with normal selection and Gebauer-Möller pruning. Inputs must
/// be weighted homogeneous. With `track`, cofactors in the inputs are kept.
pub fn groebner_with(gens: &[MultiPoly], order: &WeightedOrder, track: bool, budget: &Budget) -> Result<GroebnerBasis> {
    assert!(!gens.is_empty(), "no generators");
    let ring = Ring::new(&order.weights);
    let ng = gens.len();
    let inputs: Vec<Terms> = gens.iter().map(|g| ring.to_terms(g)).collect();
    let mut pending: Vec<usize> = (0..ng).filter(|&j| !inputs[j].is_empty()).collect();
    pending.sort_by_key(|&j| (inputs[j][0].0.deg(), j));
    let mut pending = pending.into_iter().peekable();
    let mut elems: Vec<Elem> = Vec::new();
    let mut pairs: Vec<(usize, usize, Mono)> = Vec::new();
    loop {
        budget.check()?;
        let gdeg = pending.peek().map(|&j| inputs[j][0].0.deg());
        let pbest = pairs.iter().enumerate().min_by(|a, b| a.1 .2.cmp(&b.1 .2).then(a.0.cmp(&b.0))).map(|(k, p)| (k, p.2.deg()));
        let (mut h, mut hr) = match (gdeg, pbest) {
            (None, None) => break,
            (Some(g), p) if p.map_or(true, |(_, pd)| g <= pd) => {
                let j = pending.next().unwrap();
                let mut r = vec![Vec::new(); if track { ng } else { 0 }];
                if track {
                    r[j] = vec![(Mono::one(), SRat::one())];
                }
                (inputs[j].clone(), r)
            }
            (_, Some((k, _))) => {
                let (a, b, l) = pairs.swap_remove(k);
                let ma = l.div(&elems[a].p[0].0);
                let mb = l.div(&elems[b].p[0].0);
                let one = SRat::one();
                let mone = SRat::from_int(-1);
                let s = add_scaled(&add_scaled(&Vec::new(), &one, &ma, &elems[a].p), &mone, &mb, &elems[b].p);
                let r = if track {
                    (0..ng).map(|j| add_scaled(&add_scaled(&Vec::new(), &one, &ma, &elems[a].r[j]), &mone, &mb, &elems[b].r[j])).collect()
                } else {
                    Vec::new()
                };
                (s, r)
            }
            _ => unreachable!(),
        };
        let act: Vec<usize> = (0..elems.len()).filter(|&k| elems[k].active).collect();
        let basis: Vec<&Terms> = act.iter().map(|&k| &elems[k].p).collect();
        let (rem, quots) = reduce(&h, &basis, track);
        if rem.is_empty() {
            continue;
        }
        if track {
            let er: Vec<&Vec<Terms>> = act.iter().map(|&k| &elems[k].r).collect();
            hr = combine(&hr, &quots, &er);
        }
        h = rem;
        make_monic(&mut h, &mut hr);
        let idx = elems.len();
        let lh = h[0].0;
        elems.push(Elem { p: h, r: hr, active: false });
        // Gebauer-Möller update.
        let mut cands: Vec<(usize, Mono)> = act.iter().map(|&g| (g, ring.lcm(&lh, &elems[g].p[0].0))).collect();
        cands.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
        let mut kept: Vec<(usize, Mono)> = Vec::new();
        for i in 0..cands.len() {
            let (g1, l1) = cands[i];
            let cop = lh.coprime(&elems[g1].p[0].0);
            let dominated = cands[i + 1..].iter().chain(kept.iter()).any(|(_, l2)| l2.divides(&l1));
            if cop || !dominated {
                kept.push((g1, l1));
            }
        }
        pairs.retain(|&(a, b, l)| {
            !(lh.divides(&l) && ring.lcm(&elems[a].p[0].0, &lh) != l && ring.lcm(&elems[b].p[0].0, &lh) != l)
        });
        for (g, l) in kept {
            if !lh.coprime(&elems[g].p[0].0) {
                pairs.push((g, idx, l));
            }
        }
        for &g in &act {
            if lh.divides(&elems[g].p[0].0) {
                elems[g].active = false;
            }
        }
        elems[idx].active = true;
    }
    // Interreduce.
    let mut act: Vec<usize> = (0..elems.len()).filter(|&k| elems[k].active).collect();
    act.sort_by(|&a, &b| elems[a].p[0].0.cmp(&elems[b].p[0].0));
    let mut basis = Vec::new();
    let mut reprs = Vec::new();
    for &k in &act {
        budget.check()?;
        let others: Vec<usize> = act.iter().copied().filter(|&o| o != k).collect();
        let ob: Vec<&Terms> = others.iter().map(|&o| &elems[o].p).collect();
        let (rem, quots) = reduce(&elems[k].p, &ob, track);
        debug_assert!(rem[0].1.is_one());
        if track {
            let er: Vec<&Vec<Terms>> = others.iter().map(|&o| &elems[o].r).collect();
            reprs.push(combine(&elems[k].r, &quots, &er));
        }
        basis.push(rem);
    }
    let generators = basis.iter().map(|t| ring.to_multi(t)).collect();
    Ok(GroebnerBasis { order: order.clone(), generators, ring, inputs, basis, reprs: if track { Some(reprs) } else { None } })
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Exponent> {
        self.basis.iter().map(|t| self.ring.exponent(&t[0].0)).collect()
    }

    pub fn has_cofactors(&self) -> bool {
        self.reprs.is_some()
    }

    /// Remainder and quotients of `p` against the basis.
    pub fn reduce_terms(&self, p: &Terms, want_quotients: bool) -> (Terms, Vec<Terms>) {
        let b: Vec<&Terms> = self.basis.iter().collect();
        reduce(p, &b, want_quotients)
    }

    /// Cofactors in the input generators for `Σ quots[k]·basis[k]`.
    pub fn cofactors_from_quotients(&self, quots: &[Terms]) -> Vec<Terms> {
        let reprs = self.reprs.as_ref().expect("basis computed without cofactor tracking");
        let zero = vec![Vec::new(); self.inputs.len()];
        let er: Vec<&Vec<Terms>> = reprs.iter().collect();
        combine(&zero, quots, &er).into_iter().map(|t| scale(&t, &SRat::from_int(-1))).collect()
    }

    /// `Σⱼ cofⱼ·inputⱼ`.
    pub fn expand_cofactors(&self, cof: &[Terms]) -> Terms {
        cof.iter().zip(&self.inputs).fold(Vec::new(), |acc, (c, g)| add(&acc, &mul(c, g)))
    }

    pub fn contains_terms(&self, p: &Terms) -> bool {
        self.reduce_terms(p, false).0.is_empty()
    }

    /// Standard monomials of the given weighted degree, descending.
    pub fn standard_monomials(&self, degree: u64) -> Vec<Mono> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.ring.n];
        enumerate_degree(&self.ring.w, 0, degree, &mut cur, &mut |x| {
            let m = self.ring.mono(x);
            if !self.basis.iter().any(|g| g[0].0.divides(&m)) {
                out.push(m);
            }
        });
        out.sort_by(|a, b| b.cmp(a));
        out
    }
}

/// Calls `f` on every exponent vector of weighted degree `left` in the
/// variables from `i` on.
pub fn enumerate_degree(w: &[u64], i: usize, left: u64, cur: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if i == w.len() - 1 {
        if left % w[i] == 0 {
            cur[i] = (left / w[i]) as u32;
            f(cur);
            cur[i] = 0;
        }
        return;
    }
    let mut k = 0u64;
    while k * w[i] <= left {
        cur[i] = k as u32;
        enumerate_degree(w, i + 1, left - k * w[i], cur, f);
        k += 1;
    }
    cur[i] = 0;
}

/// Remainder of `p` modulo the basis.
pub fn normal_form(p: &MultiPoly, gb: &GroebnerBasis) -> MultiPoly {
    let t = gb.ring.to_terms(p);
    gb.ring.to_multi(&gb.reduce_terms(&t, false).0)
}

/// All standard monomials of weighted degree `degree`. The weights must be
/// those of the basis order.
pub fn weight_kbase(gb: &GroebnerBasis, degree: u64, w: &[u64]) -> Vec<Exponent> {
    assert_eq!(w, gb.ring.w.as_slice(), "weights differ from the basis order");
    gb.standard_monomials(degree).iter().map(|m| gb.ring.exponent(m)).collect()
}

/// Cofactors `l` with `p = Σ lⱼ·genⱼ`, re-expanded and checked.
pub fn lift(p: &MultiPoly, gb: &GroebnerBasis) -> Result<Vec<MultiPoly>> {
    let t = gb.ring.to_terms(p);
    let (rem, quots) = gb.reduce_terms(&t, true);
    if !rem.is_empty() {
        return Err(Error::NotInIdeal);
    }
    let cof = gb.cofactors_from_quotients(&quots);
    if gb.expand_cofactors(&cof) != t {
        return Err(Error::LiftMismatch);
    }
    Ok(cof.iter().map(|c| gb.ring.to_multi(c)).collect())
}
