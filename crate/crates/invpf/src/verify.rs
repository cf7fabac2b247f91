//! Runs every module against the embedded corpus and reports per-field
//! agreement.
//!
//! A field with an erratum passes only when the correction agrees with the
//! computation and the verbatim value does not, so a stale erratum fails.

use crate::corpus::{Corpus, CorpusEntry, Field};
use crate::error::{Error, Result};
use crate::griffiths_dwork::{picard_fuchs_oracle, MilnorRing, OracleOptions};
use crate::invertible::{parse_polynomial, ExponentMatrix};
use crate::milnor::basis_monomials;
use crate::pf_formula::{alpha_beta, parse_operator, pf_operator, ExpandedOperator};
use crate::poly::{render_monomial, BigRat, Exponent, SPoly, SRat};
use crate::spectra::{chi_forms_of, hodge_profile, UnityProductForm};
use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

pub const REPORT_SCHEMA: &str = "invpf.verify/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub field: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub erratum: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub entries: usize,
    pub passed: usize,
    pub failed: usize,
    pub checks: usize,
    pub checks_failed: usize,
    pub checks_skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub entries: Vec<EntryReport>,
    pub summary: Summary,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Also run the Griffiths-Dwork oracle on entries with `d̂ ≤ max_dhat`.
    pub oracle: bool,
    pub max_dhat: u64,
    pub timeout_seconds: Option<u64>,
    /// Check only these columns; `None` checks all.
    pub fields: Option<Vec<String>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { oracle: false, max_dhat: OracleOptions::default().max_dhat, timeout_seconds: Some(300), fields: None }
    }
}

/// `(1,6,14,21)` or `1,6,14,21`.
pub fn parse_tuple(text: &str) -> Result<Vec<u64>> {
    let t = text.trim().trim_start_matches('(').trim_end_matches(')');
    t.split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|_| Error::Parse { pos: 0, msg: format!("bad integer '{}' in {}", x.trim(), text) }))
        .collect()
}

/// Comma-separated rationals such as `0,0,15/4,10`; a trailing comma is allowed.
pub fn parse_rat_list(text: &str) -> Result<Vec<BigRat>> {
    text.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            let bad = || Error::Parse { pos: 0, msg: format!("bad rational '{}'", x) };
            match x.split_once('/') {
                Some((a, b)) => {
                    let d: BigInt = b.trim().parse().map_err(|_| bad())?;
                    if d.is_zero() {
                        return Err(bad());
                    }
                    Ok(BigRat::new(a.trim().parse().map_err(|_| bad())?, d))
                }
                None => Ok(BigRat::from_integer(x.parse().map_err(|_| bad())?)),
            }
        })
        .collect()
}

/// A product of `name` or `name^k` factors joined by `*`, or `1`.
pub fn parse_monomial(text: &str, names: &[String]) -> Result<Exponent> {
    let mut e = vec![0u32; names.len()];
    let t = text.trim();
    if t == "1" {
        return Ok(Exponent(e));
    }
    for f in t.split('*') {
        let (name, k) = match f.trim().split_once('^') {
            Some((n, k)) => (n.trim(), k.trim().parse::<u32>().map_err(|_| Error::Parse { pos: 0, msg: format!("bad exponent in {}", f) })?),
            None => (f.trim(), 1),
        };
        let i = names.iter().position(|x| x == name).ok_or(Error::Parse { pos: 0, msg: format!("unknown variable '{}'", name) })?;
        e[i] += k;
    }
    Ok(Exponent(e))
}

/// Parses `d^4: c_q s^10 - c_d; d^3: 5 c_q s^10 + 20 c_d; ...` with the named
/// integer constants substituted. Returns coefficients indexed by δ-power.
pub fn parse_relation(text: &str, consts: &BTreeMap<String, BigInt>) -> Result<Vec<SPoly>> {
    let perr = |m: String| Error::Parse { pos: 0, msg: m };
    let mut out: Vec<SPoly> = Vec::new();
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (head, body) = part.split_once(':').ok_or_else(|| perr(format!("missing ':' in '{}'", part)))?;
        let k: usize = match head.trim() {
            "1" => 0,
            "d" => 1,
            h => h.strip_prefix("d^").and_then(|x| x.parse().ok()).ok_or_else(|| perr(format!("bad power '{}'", h)))?,
        };
        let mut poly = SPoly::zero();
        let body = body.replace('-', "+-");
        for term in body.split('+').map(str::trim).filter(|t| !t.is_empty()) {
            let (neg, term) = match term.strip_prefix('-') {
                Some(t) => (true, t.trim()),
                None => (false, term),
            };
            let mut c = BigInt::one();
            let mut p = 0usize;
            for tok in term.split_whitespace() {
                if let Ok(v) = tok.parse::<BigInt>() {
                    c *= v;
                } else if let Some(v) = consts.get(tok) {
                    c *= v;
                } else if tok == "s" {
                    p += 1;
                } else if let Some(e) = tok.strip_prefix("s^") {
                    p += e.parse::<usize>().map_err(|_| perr(format!("bad s power '{}'", tok)))?;
                } else {
                    return Err(perr(format!("unknown token '{}'", tok)));
                }
            }
            if neg {
                c = -c;
            }
            poly = poly.add(&SPoly::monomial(BigRat::from_integer(c), p));
        }
        if out.len() <= k {
            out.resize(k + 1, SPoly::zero());
        }
        out[k] = out[k].add(&poly);
    }
    Ok(out)
}

fn rat_list(v: &[BigRat]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn sorted(v: &[u64]) -> Vec<u64> {
    let mut v = v.to_vec();
    v.sort();
    v
}

fn tuple(v: &[u64]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// Rank over Q(s) by Gaussian elimination.
fn rank(mut rows: Vec<Vec<SRat>>) -> usize {
    let ncol = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncol {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for i in r + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].mul(&inv);
            for j in col..ncol {
                let t = rows[r][j].mul(&f);
                rows[i][j] = rows[i][j].sub(&t);
            }
        }
        r += 1;
    }
    r
}

/// Row-reduces `rows` so that rows whose first `split` entries vanish span
/// exactly the vectors of the row space with that property; returns them.
fn kernel_of_prefix(mut rows: Vec<Vec<SRat>>, split: usize) -> Vec<Vec<SRat>> {
    let ncol = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..split.min(ncol) {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for i in r + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].mul(&inv);
            for j in col..ncol {
                let t = rows[r][j].mul(&f);
                rows[i][j] = rows[i][j].sub(&t);
            }
        }
        r += 1;
    }
    rows.split_off(r)
}

/// Checks that `monomials` are a basis of the pole-order-2 graded piece of
/// the cohomology spanned by the period form `ω = s·Ω₀/f` and its
/// derivatives, inside the Milnor ring of `g + s·∏x` over Q(s).
///
/// With `V` the span of `ω, ∂ω, …` (dimension `u`), the piece is
/// `(V ∩ F₂) / F₁` where `Fₗ` holds forms of pole order at most `ℓ`. A
/// monomial `m` stands for `m·Ω₀/f²`, whose class modulo `F₁` is its normal
/// form. This accepts any valid choice of representatives, such as one that
/// differs from another by an element of the Jacobian ideal.
pub fn spans_used_middle_piece(e: &ExponentMatrix, monomials: &[Exponent]) -> Result<bool> {
    let u = pf_operator(e)?.order();
    let opts = OracleOptions { max_dhat: u64::MAX, timeout_seconds: None, verify_lifts: false, ..OracleOptions::default() };
    let mut mr = MilnorRing::new(e, &opts)?;
    let sizes: Vec<usize> = mr.levels.iter().map(Vec::len).collect();
    if sizes.len() < 2 {
        return Ok(monomials.is_empty());
    }
    let lo = sizes[0];
    let hi = lo + sizes[1];
    // Reorder coordinates as [levels ≥ 3 | level 2] so the elimination below
    // clears the high levels first.
    let reorder = |c: Vec<SRat>| -> Vec<SRat> { c[hi..].iter().chain(&c[lo..hi]).cloned().collect() };
    let mut forms = Vec::with_capacity(u);
    for k in 0..u {
        let p = mr.omega_numerator(k);
        forms.push(reorder(mr.coordinates(&p, k)?));
    }
    let high = forms[0].len() - sizes[1];
    let piece: Vec<Vec<SRat>> = kernel_of_prefix(forms, high).into_iter().map(|v| v[high..].to_vec()).collect();
    let dim = rank(piece.clone());
    let mut listed = Vec::with_capacity(monomials.len());
    for m in monomials {
        if m.0.len() != e.n() {
            return Err(Error::LengthMismatch { expected: e.n(), found: m.0.len() });
        }
        let t = vec![(mr.ring.mono(&m.0), SRat::one())];
        listed.push(reorder(mr.coordinates(&t, usize::MAX)?)[high..].to_vec());
    }
    let all: Vec<Vec<SRat>> = piece.into_iter().chain(listed.iter().cloned()).collect();
    Ok(monomials.len() == dim && rank(listed) == dim && rank(all) == dim)
}

/// Compares one field, honoring an erratum.
fn field_check(name: &str, f: &Field, actual: String, matches: impl Fn(&str) -> Result<bool>) -> Check {
    let verdict = |s: &str| matches(s).unwrap_or(false);
    let parse_note = |s: &str| matches(s).err().map(|e| format!("expected value does not parse: {}", e));
    match &f.erratum {
        None => {
            let ok = verdict(&f.verbatim);
            Check {
                field: name.into(),
                status: if ok { Status::Pass } else { Status::Fail },
                expected: f.verbatim.clone(),
                actual,
                erratum: None,
                detail: parse_note(&f.verbatim).or_else(|| (!ok).then(|| format!("mismatch ({})", f.origin))),
            }
        }
        Some(er) => {
            let verbatim_ok = verdict(&f.verbatim);
            let corrected_ok = verdict(&er.corrected);
            let detail = if verbatim_ok {
                Some(format!("stale erratum: the transcribed value already agrees ({})", f.origin))
            } else if !corrected_ok {
                parse_note(&er.corrected).or_else(|| Some(format!("corrected value disagrees ({})", f.origin)))
            } else {
                None
            };
            Check {
                field: name.into(),
                status: if corrected_ok && !verbatim_ok { Status::Pass } else { Status::Fail },
                expected: er.corrected.clone(),
                actual,
                erratum: Some(format!("transcribed '{}': {}", f.verbatim, er.note)),
                detail,
            }
        }
    }
}

fn entry_matrix(entry: &CorpusEntry) -> Result<ExponentMatrix> {
    let text = entry.polynomial().ok_or_else(|| Error::Corpus(format!("{} has no polynomial", entry.id)))?;
    Ok(parse_polynomial(text, entry.vars.as_deref())?.0)
}

fn names_of(entry: &CorpusEntry, n: usize) -> Vec<String> {
    entry.vars.clone().unwrap_or_else(|| crate::poly::default_names(n))
}

fn run_checks(entry: &CorpusEntry, corpus: &Corpus, opts: &VerifyOptions) -> Result<Vec<Check>> {
    let e = entry_matrix(entry)?;
    let names = names_of(entry, e.n());
    let w = e.weights()?;
    let dual = e.dual_weights()?;
    let mut checks = Vec::new();
    let field = |n: &str| entry.field(n).filter(|_| opts.fields.as_ref().map_or(true, |fs| fs.iter().any(|f| f == n)));

    if let Some(f) = field("weights") {
        checks.push(field_check("weights", f, tuple(&w.q), |t| Ok(parse_tuple(t)? == w.q)));
    }
    if let Some(f) = field("degree") {
        checks.push(field_check("degree", f, w.d.to_string(), |t| Ok(t.trim().parse::<u64>().ok() == Some(w.d))));
    }
    // The partner's weights agree with the transpose's up to variable order.
    if let Some(f) = field("dual") {
        let actual = format!("{} {}", tuple(&dual.q), dual.d);
        checks.push(field_check("dual", f, actual, |t| {
            let other = corpus.get(t.trim()).ok_or_else(|| Error::Corpus(format!("unknown dual {}", t)))?;
            let ow = entry_matrix(other)?.weights()?;
            Ok(ow.d == dual.d && sorted(&ow.q) == sorted(&dual.q))
        }));
    }
    if let Some(f) = field("dual_weights") {
        checks.push(field_check("dual_weights", f, tuple(&dual.q), |t| Ok(parse_tuple(t)? == dual.q)));
    }
    if let Some(f) = field("dual_degree") {
        checks.push(field_check("dual_degree", f, dual.d.to_string(), |t| Ok(t.trim().parse::<u64>().ok() == Some(dual.d))));
    }
    let op = pf_operator(&e)?;
    let expanded = op.expand();
    let u = op.order();
    for name in ["order", "u"] {
        if let Some(f) = field(name) {
            checks.push(field_check(name, f, u.to_string(), |t| Ok(t.trim().parse::<usize>().ok() == Some(u))));
        }
    }
    let (mut alphas, mut betas) = alpha_beta(&e)?;
    alphas.sort();
    betas.sort();
    let same_multiset = |t: &str, want: &[BigRat]| -> Result<bool> {
        let mut v = parse_rat_list(t)?;
        v.sort();
        Ok(v == want)
    };
    if let Some(f) = field("alphas") {
        checks.push(field_check("alphas", f, rat_list(&alphas), |t| same_multiset(t, &alphas)));
    }
    if let Some(f) = field("betas") {
        checks.push(field_check("betas", f, rat_list(&betas), |t| same_multiset(t, &betas)));
    }
    if let Some(f) = field("operator") {
        checks.push(field_check("operator", f, op.render(), |t| Ok(parse_operator(t)?.expand().projectively_equal(&expanded))));
    }
    if field("h11").is_some() || field("monomials").is_some() {
        let cat = basis_monomials(&e)?;
        let mut mid: Vec<Exponent> = cat.level(2).to_vec();
        mid.sort();
        let hp = hodge_profile(&alphas, &betas)?;
        if let Some(f) = field("h11") {
            let h11 = hp.h.get(1).copied().unwrap_or(0);
            let actual = format!("{} (u-2 = {}, level-2 basis size {})", h11, u.saturating_sub(2), mid.len());
            checks.push(field_check("h11", f, actual, |t| {
                let v = t.trim().parse::<usize>().ok();
                Ok(v == Some(h11) && v == Some(u.saturating_sub(2)) && v == Some(mid.len()))
            }));
        }
        if let Some(f) = field("monomials") {
            let actual = mid.iter().map(|m| render_monomial(m, &names)).collect::<Vec<_>>().join(",");
            checks.push(field_check("monomials", f, actual, |t| {
                let v = t.split(',').map(|m| parse_monomial(m, &names)).collect::<Result<Vec<_>>>()?;
                let mut w = v.clone();
                w.sort();
                Ok(w == mid || spans_used_middle_piece(&e, &v)?)
            }));
        }
    }
    if field("chi0").is_some() || field("chi_inf").is_some() {
        let (c0, ci) = chi_forms_of(&e)?;
        for (name, c) in [("chi0", &c0), ("chi_inf", &ci)] {
            if let Some(f) = field(name) {
                checks.push(field_check(name, f, c.render(), |t| {
                    let want = UnityProductForm::parse(t)?;
                    Ok(c.as_product().map_or(false, |p| p.exponents() == want.exponents()))
                }));
            }
        }
    }
    let mut consts: BTreeMap<String, BigInt> = BTreeMap::new();
    let c_q: BigInt = dual.q.iter().map(|&q| Pow::pow(BigInt::from(q), q as u32)).product();
    let c_d: BigInt = Pow::pow(-BigInt::from(dual.d), dual.d as u32);
    for (name, v) in [("c_q", &c_q), ("c_d", &c_d)] {
        if let Some(f) = field(name) {
            checks.push(field_check(name, f, v.to_string(), |t| Ok(t.trim().parse::<BigInt>().ok().as_ref() == Some(v))));
            consts.insert(name.to_string(), v.clone());
        }
    }
    let relation = match field("relation") {
        Some(f) => {
            let rel = |t: &str| -> Result<ExpandedOperator> { Ok(ExpandedOperator::normalized(parse_relation(t, &consts)?)) };
            checks.push(field_check("relation", f, expanded.render(), |t| Ok(rel(t)?.projectively_equal(&expanded))));
            rel(f.erratum.as_ref().map_or(&f.verbatim, |er| &er.corrected)).ok()
        }
        None => None,
    };
    if opts.oracle {
        checks.push(oracle_check(entry, &e, &expanded, relation.as_ref(), opts, dual.d));
    }
    Ok(checks)
}

fn oracle_check(entry: &CorpusEntry, e: &ExponentMatrix, expanded: &ExpandedOperator, relation: Option<&ExpandedOperator>, opts: &VerifyOptions, d_hat: u64) -> Check {
    let mut c = Check { field: "oracle".into(), status: Status::Skip, expected: expanded.render(), actual: String::new(), erratum: None, detail: None };
    if d_hat > opts.max_dhat {
        c.detail = Some(format!("skipped: dual degree {} exceeds --max-dhat {}", d_hat, opts.max_dhat));
        return c;
    }
    let oo = OracleOptions { max_dhat: opts.max_dhat, timeout_seconds: opts.timeout_seconds, names: entry.vars.clone(), ..OracleOptions::default() };
    match picard_fuchs_oracle(e, &oo) {
        Ok(r) => {
            c.actual = r.operator.render();
            let mut ok = r.operator.projectively_equal(expanded);
            let mut detail = format!("{} ms, k-base sizes {:?}", r.elapsed_ms, r.kbase.iter().map(Vec::len).collect::<Vec<_>>());
            if let Some(rel) = relation {
                let exact = &r.operator == rel;
                ok &= exact;
                detail.push_str(if exact { ", relation reproduced exactly" } else { ", relation differs" });
            }
            c.status = if ok { Status::Pass } else { Status::Fail };
            c.detail = Some(detail);
        }
        Err(err) => {
            c.status = Status::Fail;
            c.detail = Some(format!("oracle failed: {}", err));
        }
    }
    c
}

/// Verifies one entry.
pub fn verify_entry(entry: &CorpusEntry, corpus: &Corpus, opts: &VerifyOptions) -> EntryReport {
    match run_checks(entry, corpus, opts) {
        Ok(checks) => {
            let passed = checks.iter().all(|c| c.status != Status::Fail);
            EntryReport { id: entry.id.clone(), passed, checks, error: None }
        }
        Err(err) => EntryReport { id: entry.id.clone(), passed: false, checks: Vec::new(), error: Some(err.to_string()) },
    }
}

/// Verifies all entries matching `patterns` in parallel; output keeps corpus order.
pub fn verify(corpus: &Corpus, patterns: &str, opts: &VerifyOptions) -> Report {
    let selected = corpus.select(patterns);
    let entries: Vec<EntryReport> = selected.par_iter().map(|e| verify_entry(e, corpus, opts)).collect();
    let all: Vec<&Check> = entries.iter().flat_map(|e| e.checks.iter()).collect();
    let summary = Summary {
        entries: entries.len(),
        passed: entries.iter().filter(|e| e.passed).count(),
        failed: entries.iter().filter(|e| !e.passed).count(),
        checks: all.len(),
        checks_failed: all.iter().filter(|c| c.status == Status::Fail).count(),
        checks_skipped: all.iter().filter(|c| c.status == Status::Skip).count(),
    };
    Report { schema: REPORT_SCHEMA, entries, summary }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::load;
    use crate::poly::rat;

    #[test]
    fn value_parsers() {
        assert_eq!(parse_tuple("(1,6,14,21)").unwrap(), vec![1, 6, 14, 21]);
        assert_eq!(parse_rat_list("0,15/4,10,").unwrap(), vec![rat(0, 1), rat(15, 4), rat(10, 1)]);
        assert!(parse_rat_list("1/0").is_err());
        let n: Vec<String> = "w,x,y,z".split(',').map(String::from).collect();
        assert_eq!(parse_monomial("w^5*y*z", &n).unwrap(), Exponent(vec![5, 0, 1, 1]));
        assert_eq!(parse_monomial("1", &n).unwrap(), Exponent(vec![0; 4]));
        assert!(parse_monomial("v", &n).is_err());
        let consts: BTreeMap<String, BigInt> = [("c".to_string(), BigInt::from(7))].into_iter().collect();
        let r = parse_relation("d^2: 2 c s^3 - c; 1: -5", &consts).unwrap();
        assert_eq!(r[2], SPoly::from_ints(&[-7, 0, 0, 14]));
        assert!(r[1].is_zero());
        assert_eq!(r[0], SPoly::from_ints(&[-5]));
    }

    #[test]
    fn erratum_logic() {
        let f = |v: &str, er: Option<&str>| Field {
            verbatim: v.into(),
            erratum: er.map(|c| crate::corpus::Erratum { corrected: c.into(), note: "n".into() }),
            origin: "t:1".into(),
        };
        let m = |t: &str| Ok(t == "ok");
        assert_eq!(field_check("x", &f("ok", None), "ok".into(), m).status, Status::Pass);
        assert_eq!(field_check("x", &f("bad", None), "ok".into(), m).status, Status::Fail);
        assert_eq!(field_check("x", &f("bad", Some("ok")), "ok".into(), m).status, Status::Pass);
        assert_eq!(field_check("x", &f("ok", Some("ok")), "ok".into(), m).status, Status::Fail);
        assert_eq!(field_check("x", &f("bad", Some("bad")), "ok".into(), m).status, Status::Fail);
    }

    #[test]
    fn selected_entries_pass() {
        let c = load().unwrap();
        let r = verify(&c, "ASD:S11,ELL:*,YON:1", &VerifyOptions::default());
        assert_eq!(r.summary.entries, 5);
        for e in &r.entries {
            assert!(e.passed, "{:#?}", e);
        }
    }

    #[test]
    fn report_is_deterministic() {
        let c = load().unwrap();
        let a = verify(&c, "ASD:*", &VerifyOptions::default());
        let b = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| verify(&c, "ASD:*", &VerifyOptions::default()));
        assert_eq!(a, b);
    }

    #[test]
    fn middle_piece_accepts_other_representatives_only_when_valid() {
        let n: Vec<String> = "w,x,y,z".split(',').map(String::from).collect();
        let (e, _) = parse_polynomial("w^20+x^5+y^2*z+z^2", Some(&n)).unwrap();
        let list = |t: &str| t.split(',').map(|m| parse_monomial(m, &n).unwrap()).collect::<Vec<_>>();
        let ours = basis_monomials(&e).unwrap().level(2).to_vec();
        assert!(spans_used_middle_piece(&e, &ours).unwrap());
        // y^2 ≡ -2z modulo the Jacobian ideal of g but not of g + s·wxyz.
        assert!(!spans_used_middle_piece(&e, &list("w*x*y*z,w^16*x,w^12*x^2,w^8*x^3,w^4*x^4,w^10*y^2")).unwrap());
        // Too few elements.
        assert!(!spans_used_middle_piece(&e, &ours[1..]).unwrap());
        let (q, _) = parse_polynomial("x^4+y^4+z^4+w^4", Some(&["x".into(), "y".into(), "z".into(), "w".into()])).unwrap();
        assert!(spans_used_middle_piece(&q, &list("w*x*y*z")).unwrap());
        assert!(!spans_used_middle_piece(&q, &list("w^2*x^2")).unwrap());
    }

    #[test]
    fn whole_corpus_passes_with_errata() {
        let c = load().unwrap();
        let r = verify(&c, "*", &VerifyOptions::default());
        assert!(r.all_passed(), "{:#?}", r.entries.iter().filter(|e| !e.passed).collect::<Vec<_>>());
        let corrected: Vec<String> = r.entries.iter().filter(|e| e.checks.iter().any(|c| c.erratum.is_some())).map(|e| e.id.clone()).collect();
        assert_eq!(corrected.len(), 11, "{:?}", corrected);
    }
}
