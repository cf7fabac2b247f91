//! Picard-Fuchs operators by Griffiths-Dwork pole reduction in the Milnor
//! ring of `f = g + s·∏xᵢ` over Q(s).

use super::groebner::{add, groebner_with, scale, sub, Budget, GroebnerBasis, Mono, Ring, Terms, MAX_VARS};
use crate::error::{Error, Result};
use crate::invertible::ExponentMatrix;
use crate::pf_formula::ExpandedOperator;
use crate::poly::{default_names, Exponent, MultiPoly, SRat, WeightedOrder, ZPoly};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::HashMap;

/// Stirling numbers of the second kind `w[m][i] = S(i+1, m+1)`: the
/// coefficient of `(−1)^m m! s^{m+1}(∏x)^m Ω₀/f^{m+1}` in `δⁱω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaMatrix {
    pub w: Vec<Vec<BigInt>>,
}

/// Fills the table by the reference recursion
/// `w[l][k] = l·w[l][k−1] + w[l−1][k−1]` (1-based).
pub fn delta_matrix(kn: usize) -> DeltaMatrix {
    let size = kn + 1;
    let mut w = vec![vec![BigInt::zero(); size + 1]; size + 1];
    for kk in 1..=size {
        w[1][kk] = BigInt::one();
        w[kk][kk] = BigInt::one();
        if kk >= 3 {
            w[2][kk] = &w[2][kk - 1] + (BigInt::one() << (kk - 2));
        }
        for ll in 3..kk {
            w[ll][kk] = BigInt::from(ll) * &w[ll][kk - 1] + &w[ll - 1][kk - 1];
        }
    }
    DeltaMatrix { w: (1..=size).map(|m| w[m][1..=size].to_vec()).collect() }
}

impl DeltaMatrix {
    pub fn size(&self) -> usize {
        self.w.len()
    }

    /// Coefficient of the m-th form in `δⁱω`, sign included.
    pub fn signed(&self, m: usize, i: usize) -> BigInt {
        if m % 2 == 0 {
            self.w[m][i].clone()
        } else {
            -self.w[m][i].clone()
        }
    }

    /// `r_m^i = −r_{m−1}^{i−1} + (m+1)·r_m^{i−1}` for the signed entries.
    pub fn satisfies_recursion(&self) -> bool {
        let n = self.size();
        (1..n).all(|i| {
            (0..n).all(|m| {
                let prev_m1 = if m == 0 { BigInt::zero() } else { self.signed(m - 1, i - 1) };
                self.signed(m, i) == -prev_m1 + BigInt::from(m + 1) * self.signed(m, i - 1)
            })
        }) && (0..n).all(|i| self.w[0][i].is_one())
    }
}

#[derive(Clone, Debug)]
pub struct OracleOptions {
    pub max_dhat: u64,
    pub max_vars: usize,
    pub timeout_seconds: Option<u64>,
    /// Re-expand every lift certificate and fail on mismatch.
    pub verify_lifts: bool,
    pub record_ledger: bool,
    /// Relabels variable i as `perm[i]` before computing; the operator must
    /// not depend on it.
    pub variable_permutation: Option<Vec<usize>>,
    pub names: Option<Vec<String>>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { max_dhat: 24, max_vars: 4, timeout_seconds: Some(300), verify_lifts: true, record_ledger: false, variable_permutation: None, names: None }
    }
}

/// One Griffiths step: the polynomial at pole level `level` was split into
/// basis part and `Σ cofactorⱼ·∂ⱼf`.
#[derive(Clone, Debug, Serialize)]
pub struct LedgerStep {
    pub form: usize,
    pub level: usize,
    pub terms: usize,
    pub cofactors: Vec<String>,
    pub basis_coordinates: Vec<(usize, String)>,
    pub certificate_checked: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ReductionLedger {
    pub basis: Vec<(usize, String)>,
    pub steps: Vec<LedgerStep>,
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub operator: ExpandedOperator,
    /// Relation coefficients as found, before normalization.
    pub relation: Vec<SRat>,
    pub kbase: Vec<Vec<Exponent>>,
    pub groebner_size: usize,
    pub ledger: Option<ReductionLedger>,
    pub elapsed_ms: u128,
}

/// Milnor ring of the family with its graded k-base and reduction machinery.
pub struct MilnorRing {
    pub ring: Ring,
    pub d: u64,
    pub gb: GroebnerBasis,
    /// Standard monomials at levels 1..n−1 (degree `(ℓ−1)·d`).
    pub levels: Vec<Vec<Mono>>,
    columns: HashMap<Mono, usize>,
    f: Terms,
    names: Vec<String>,
    budget: Budget,
    verify_lifts: bool,
    pub ledger: Option<ReductionLedger>,
}

impl MilnorRing {
    /// Sets up `f = g + s·∏x`, its Jacobian Gröbner basis and k-bases.
    pub fn new(e: &ExponentMatrix, opts: &OracleOptions) -> Result<Self> {
        let w = e.weights()?;
        w.require_calabi_yau()?;
        let dual = e.dual_weights()?;
        let n = e.n();
        if n > opts.max_vars || n > MAX_VARS {
            return Err(Error::ScaleBound(format!("n = {} exceeds {}", n, opts.max_vars.min(MAX_VARS))));
        }
        if dual.d > opts.max_dhat {
            return Err(Error::ScaleBound(format!("dual degree {} exceeds {}", dual.d, opts.max_dhat)));
        }
        let perm: Vec<usize> = opts.variable_permutation.clone().unwrap_or_else(|| (0..n).collect());
        let mut seen = perm.clone();
        seen.sort();
        if seen != (0..n).collect::<Vec<_>>() {
            return Err(Error::SizeMismatch(format!("{:?} is not a permutation of 0..{}", perm, n)));
        }
        let mut wp = vec![0u64; n];
        for i in 0..n {
            wp[perm[i]] = w.q[i];
        }
        let ring = Ring::new(&wp);
        let permute = |x: &[u32]| {
            let mut y = vec![0u32; n];
            for i in 0..n {
                y[perm[i]] = x[i];
            }
            y
        };
        let mut f: Terms = e.columns().iter().map(|c| (ring.mono(&permute(c)), SRat::one())).collect();
        f.push((ring.mono(&vec![1; n]), SRat::s_power(BigInt::one(), 1)));
        f.sort_by(|a, b| b.0.cmp(&a.0));
        let budget = match opts.timeout_seconds {
            Some(t) => Budget::seconds(t),
            None => Budget::unlimited(),
        };
        let jac: Vec<MultiPoly> = (0..n).map(|i| ring.to_multi(&ring.derivative(&f, i))).collect();
        let gb = groebner_with(&jac, &WeightedOrder::new(wp.clone()), true, &budget)?;
        let mut levels = Vec::new();
        let mut columns = HashMap::new();
        for l in 1..n {
            let k = gb.standard_monomials((l as u64 - 1) * w.d);
            for m in &k {
                columns.insert(*m, columns.len());
            }
            levels.push(k);
        }
        let names = opts.names.clone().unwrap_or_else(|| default_names(n));
        let ledger = if opts.record_ledger {
            let basis = levels.iter().enumerate().flat_map(|(l, ms)| ms.iter().map(move |m| (l + 1, *m))).map(|(l, m)| (l, crate::poly::render_monomial(&ring.exponent(&m), &names))).collect();
            Some(ReductionLedger { basis, steps: Vec::new() })
        } else {
            None
        };
        Ok(MilnorRing { ring, d: w.d, gb, levels, columns, f, names, budget, verify_lifts: opts.verify_lifts, ledger })
    }

    pub fn kn(&self) -> usize {
        self.columns.len()
    }

    pub fn f(&self) -> MultiPoly {
        self.ring.to_multi(&self.f)
    }

    /// `(∏x)^m` reduces to zero in the Milnor ring.
    pub fn product_power_in_ideal(&self, m: u32) -> bool {
        let t = vec![(self.ring.mono(&vec![m; self.ring.n]), SRat::one())];
        self.gb.contains_terms(&t)
    }

    /// The m-th form numerator `(−1)^m m! s^{m+1}(∏x)^m`.
    pub fn omega_numerator(&self, m: usize) -> Terms {
        let mut c = (1..=m).fold(BigInt::one(), |a, k| a * BigInt::from(k));
        if m % 2 == 1 {
            c = -c;
        }
        vec![(self.ring.mono(&vec![m as u32; self.ring.n]), SRat::s_power(c, m + 1))]
    }

    /// Coordinates of `p·Ω₀/f^ℓ` (ℓ from the degree of `p`) in the k-base,
    /// modulo exact forms.
    pub fn coordinates(&mut self, p: &Terms, form: usize) -> Result<Vec<SRat>> {
        let mut coords = vec![SRat::zero(); self.kn()];
        let mut p = p.clone();
        while !p.is_empty() {
            self.budget.check()?;
            let level = (p[0].0.deg() / self.d) as usize + 1;
            let (rem, quots) = self.gb.reduce_terms(&p, true);
            let mut contrib = Vec::new();
            for (m, c) in &rem {
                let k = *self.columns.get(m).ok_or_else(|| Error::SizeMismatch(format!("standard monomial at level {} outside the k-base", level)))?;
                coords[k] = coords[k].add(c);
                contrib.push((k, c.to_string()));
            }
            let inj = sub(&p, &rem);
            if inj.is_empty() {
                self.log(form, level, p.len(), &[], contrib, false);
                break;
            }
            if level < 2 {
                return Err(Error::NotInIdeal);
            }
            let cof = self.gb.cofactors_from_quotients(&quots);
            if self.verify_lifts && self.gb.expand_cofactors(&cof) != inj {
                return Err(Error::LiftMismatch);
            }
            self.log(form, level, p.len(), &cof, contrib, self.verify_lifts);
            let h = divergence(&self.ring, &cof);
            p = scale(&h, &SRat::from_int(1).div(&SRat::from_int(level as i64 - 1)));
        }
        Ok(coords)
    }

    fn log(&mut self, form: usize, level: usize, terms: usize, cof: &[Terms], contrib: Vec<(usize, String)>, checked: bool) {
        if let Some(l) = self.ledger.as_mut() {
            let cofactors = cof.iter().map(|c| self.ring.to_multi(c).display_with(&self.names)).collect();
            l.steps.push(LedgerStep { form, level, terms, cofactors, basis_coordinates: contrib, certificate_checked: checked });
        }
    }

    /// Coordinates of `p·Ω₀/f^ℓ` for a [`MultiPoly`] `p`.
    pub fn coordinates_of(&mut self, p: &MultiPoly) -> Result<Vec<SRat>> {
        let t = self.ring.to_terms(p);
        self.coordinates(&t, usize::MAX)
    }

    pub fn elapsed_ms(&self) -> u128 {
        self.budget.elapsed().as_millis()
    }
}

fn lcm(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let g = a.gcd(b);
    a.mul(&b.div_exact(&g))
}

/// A vector `c ≠ 0` with `Σ cⱼ·colsⱼ = 0`, if the columns are dependent.
/// Fraction-free (Bareiss) elimination over Z[s]; only the last column may
/// be free.
pub fn last_column_relation(cols: &[Vec<SRat>]) -> Result<Option<Vec<SRat>>> {
    let ncol = cols.len();
    let nrow = cols[0].len();
    let mut lam = Vec::with_capacity(ncol);
    let mut a = vec![vec![ZPoly::zero(); ncol]; nrow];
    for (j, c) in cols.iter().enumerate() {
        let l = c.iter().filter(|x| !x.is_zero()).fold(ZPoly::one(), |l, x| lcm(&l, x.den_z()));
        for (i, x) in c.iter().enumerate() {
            if !x.is_zero() {
                a[i][j] = x.num_z().mul(&l.div_exact(x.den_z()));
            }
        }
        lam.push(l);
    }
    let mut prev = ZPoly::one();
    let mut row = 0;
    let mut pivots = Vec::new();
    let mut free = Vec::new();
    for col in 0..ncol {
        let Some(p) = (row..nrow).find(|&i| !a[i][col].is_zero()) else {
            free.push(col);
            continue;
        };
        a.swap(row, p);
        for i in row + 1..nrow {
            for j in col + 1..ncol {
                a[i][j] = a[row][col].mul(&a[i][j]).sub(&a[i][col].mul(&a[row][j])).div_exact(&prev);
            }
            a[i][col] = ZPoly::zero();
        }
        prev = a[row][col].clone();
        pivots.push((row, col));
        row += 1;
    }
    match free.as_slice() {
        [] => Ok(None),
        [c] if *c == ncol - 1 => {
            let mut x = vec![SRat::zero(); ncol];
            x[ncol - 1] = SRat::one();
            for &(r, c) in pivots.iter().rev() {
                let mut acc = SRat::zero();
                for j in c + 1..ncol {
                    if !a[r][j].is_zero() && !x[j].is_zero() {
                        acc = acc.add(&SRat::from_zpoly(a[r][j].clone()).mul(&x[j]));
                    }
                }
                x[c] = acc.neg().div(&SRat::from_zpoly(a[r][c].clone()));
            }
            Ok(Some(x.iter().zip(&lam).map(|(xj, l)| xj.mul(&SRat::from_zpoly(l.clone()))).collect()))
        }
        _ => Err(Error::Nullspace(free.len())),
    }
}

/// Recomputes the Picard-Fuchs operator from scratch: coordinates of
/// `δⁱω` in the Milnor-ring basis until the first linear relation.
pub fn picard_fuchs_oracle(e: &ExponentMatrix, opts: &OracleOptions) -> Result<OracleResult> {
    let mut mr = MilnorRing::new(e, opts)?;
    let kn = mr.kn();
    let dm = delta_matrix(kn);
    let mut forms: Vec<Vec<SRat>> = Vec::new();
    let mut rows: Vec<Vec<SRat>> = Vec::new();
    for i in 0..=kn {
        let p = mr.omega_numerator(i);
        forms.push(mr.coordinates(&p, i)?);
        let row: Vec<SRat> = (0..kn)
            .map(|c| {
                (0..=i).fold(SRat::zero(), |acc, m| {
                    let x = &forms[m][c];
                    if x.is_zero() {
                        acc
                    } else {
                        acc.add(&x.mul_int(&dm.w[m][i]))
                    }
                })
            })
            .collect();
        rows.push(row);
        if let Some(rel) = last_column_relation(&rows)? {
            return Ok(OracleResult {
                operator: ExpandedOperator::from_srat(&rel),
                relation: rel,
                kbase: mr.levels.iter().map(|l| l.iter().map(|m| mr.ring.exponent(m)).collect()).collect(),
                groebner_size: mr.gb.len(),
                elapsed_ms: mr.elapsed_ms(),
                ledger: mr.ledger.take(),
            });
        }
    }
    Err(Error::Nullspace(0))
}

/// Sum of `∂ⱼ cofⱼ`.
pub(crate) fn divergence(ring: &Ring, cof: &[Terms]) -> Terms {
    cof.iter().enumerate().fold(Vec::new(), |acc, (j, c)| add(&acc, &ring.derivative(c, j)))
}
