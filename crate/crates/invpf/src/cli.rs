//! Command-line front end: argument parsing, text and JSON rendering.
//!
//! JSON output carries a `schema` tag; every rational is an object
//! `{"num": n, "den": d}` with exact integers, never a float.

use crate::corpus;
use crate::error::{Error, Result};
use crate::griffiths_dwork::{picard_fuchs_oracle, OracleOptions};
use crate::invertible::{parse_polynomial, AtomicPart, ExponentMatrix, PartKind};
use crate::milnor::{basis_monomials, jacobi_positions, path_closure, path_step_multiset};
use crate::pf_formula::{alpha_beta, gkz_operator, pf_operator, ExpandedOperator, PFOperator};
use crate::poly::{render_monomial, BigRat, Exponent, SPoly};
use crate::spectra::{chi_forms_of, hodge_profile, monodromy_eigenvalues, poincare_series, ChiForm, CyclotomicMultiset};
use crate::verify::{verify, Status, VerifyOptions};
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Map, Number, Value};
use std::fmt::Write as _;
use std::str::FromStr;

pub const JSON_SCHEMA: &str = "invpf.cli/1";

#[derive(Parser, Debug)]
#[command(name = "invpf", version, about = "Picard-Fuchs operators of invertible Calabi-Yau polynomials")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Variable names in order, e.g. w,x,y,z (default: x1,x2,...).
    #[arg(long, global = true, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decomposition, weights, transpose, Calabi-Yau check and order.
    Analyze { polynomial: String },
    /// Closed-form Picard-Fuchs operator.
    Pf {
        polynomial: String,
        /// Also give the operator in D = λ d/dλ with λ = (−s)^(−d̂).
        #[arg(long)]
        lambda: bool,
        /// Give the uncancelled GKZ operator as well.
        #[arg(long)]
        gkz: bool,
    },
    /// Hodge profile, χ forms, Poincaré series of the transpose, monodromy.
    Spectra { polynomial: String },
    /// Distinguished Milnor-ring monomials and Jacobi-path positions.
    Basis { polynomial: String },
    /// Recompute the operator by Griffiths-Dwork pole reduction.
    Oracle {
        polynomial: String,
        #[arg(long, default_value_t = 24)]
        max_dhat: u64,
        #[arg(long, default_value_t = 300)]
        timeout_seconds: u64,
        /// Write the reduction ledger (cofactors and basis coordinates) as JSON.
        #[arg(long, value_name = "PATH")]
        emit_ledger: Option<String>,
    },
    /// Check the embedded corpus; exits nonzero on any failure.
    Verify {
        /// Comma-separated id globs, e.g. "ASD:*" or "YON:1,YON:3".
        #[arg(default_value = "*")]
        filter: String,
        /// Also run the oracle on entries with d̂ ≤ --max-dhat.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 24)]
        max_dhat: u64,
        #[arg(long, default_value_t = 300)]
        timeout_seconds: u64,
    },
    /// List corpus entries.
    ListCorpus {
        #[arg(default_value = "*")]
        filter: String,
    },
}

/// Result of a command: exit status and what to print on stdout.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

/// `{num, den}` with exact integers.
pub fn rat_json(x: &BigRat) -> Value {
    json!({ "num": int_json(x.numer()), "den": int_json(x.denom()) })
}

pub fn int_json(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integer literal"))
}

fn rats_json(v: &[BigRat]) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

/// Coefficients in ascending powers of s.
pub fn spoly_json(p: &SPoly) -> Value {
    Value::Array(p.coeffs().iter().map(rat_json).collect())
}

/// `coefficients[k]` multiplies δ^k.
pub fn expanded_json(op: &ExpandedOperator) -> Value {
    json!({ "text": op.render(), "coefficients": op.coeffs.iter().map(spoly_json).collect::<Vec<_>>() })
}

fn operator_json(op: &PFOperator) -> Value {
    json!({
        "factored": op.render(),
        "order": op.order(),
        "c_left": rat_json(&op.c_left),
        "s_power": op.s_power,
        "alphas": rats_json(&op.alphas),
        "c_right": rat_json(&op.c_right),
        "betas": rats_json(&op.betas),
        "expanded": expanded_json(&op.expand()),
    })
}

fn chi_json(c: &ChiForm) -> Value {
    match c {
        ChiForm::Product(p) => json!({ "text": p.render(), "numerator": p.numerator_orders, "denominator": p.denominator_orders }),
        ChiForm::Explicit(v) => json!({
            "text": c.render(),
            "roots": v.iter().map(|(x, k)| json!({ "root": rat_json(x), "multiplicity": k })).collect::<Vec<_>>(),
        }),
    }
}

fn multiset_json(m: &CyclotomicMultiset) -> Value {
    rats_json(&m.elements)
}

fn tuple(v: &[u64]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn rats(v: &[BigRat]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn part_text(p: &AtomicPart, names: &[String]) -> String {
    let body: Vec<String> = p.variables.iter().zip(&p.exponents).map(|(&v, k)| format!("{}^{}", names[v], k)).collect();
    let kind = match p.kind {
        PartKind::Loop => "loop",
        PartKind::Chain if p.variables.len() == 1 => "fermat",
        PartKind::Chain => "chain",
    };
    format!("{}[{}]", kind, body.join(" -> "))
}

fn with_schema(command: &str, mut body: Map<String, Value>) -> String {
    body.insert("schema".into(), json!(JSON_SCHEMA));
    body.insert("command".into(), json!(command));
    serde_json::to_string_pretty(&Value::Object(body)).expect("serializable") + "\n"
}

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("object literal"),
    }
}

fn parse_input(text: &str, vars: &Option<Vec<String>>) -> Result<(ExponentMatrix, Vec<String>)> {
    parse_polynomial(text, vars.as_deref())
}

/// Error text with a caret under the offending column for parse errors.
pub fn describe_error(input: Option<&str>, err: &Error) -> String {
    match (input, err) {
        (Some(text), Error::Parse { pos, .. }) if *pos >= 1 && *pos <= text.chars().count() + 1 => {
            format!("error: {}\n  {}\n  {}^\n", err, text, " ".repeat(pos - 1))
        }
        _ => format!("error: {}\n", err),
    }
}

fn analyze(text: &str, cli: &Cli) -> Result<String> {
    let (e, names) = parse_input(text, &cli.vars)?;
    let w = e.weights()?;
    let dual = e.dual_weights()?;
    let cy = w.is_calabi_yau();
    let u = if cy { Some(pf_operator(&e)?.order()) } else { None };
    let parts: Vec<String> = e.decompose().iter().map(|p| part_text(p, &names)).collect();
    let transpose = e.transpose().render(&names);
    let steps = e.step_vectors().steps;
    let sum: u64 = w.q.iter().sum();
    if cli.json {
        return Ok(with_schema(
            "analyze",
            obj(json!({
                "polynomial": e.render(&names),
                "variables": names,
                "parts": e.decompose(),
                "weights": w.q, "degree": w.d,
                "transpose": transpose,
                "dual_weights": dual.q, "dual_degree": dual.d,
                "calabi_yau": cy, "weight_sum": sum,
                "order": u,
                "steps": steps,
            })),
        ));
    }
    let mut s = String::new();
    writeln!(s, "polynomial    {}", e.render(&names)).unwrap();
    writeln!(s, "parts         {}", parts.join("  ")).unwrap();
    writeln!(s, "weights       {}  degree {}", tuple(&w.q), w.d).unwrap();
    writeln!(s, "transpose     {}", transpose).unwrap();
    writeln!(s, "dual weights  {}  degree {}", tuple(&dual.q), dual.d).unwrap();
    if cy {
        writeln!(s, "Calabi-Yau    yes").unwrap();
        writeln!(s, "order u       {}", u.unwrap()).unwrap();
    } else {
        writeln!(s, "Calabi-Yau    no ({} != {})", sum, w.d).unwrap();
    }
    Ok(s)
}

fn pf(text: &str, lambda: bool, gkz: bool, cli: &Cli) -> Result<String> {
    let (e, _) = parse_input(text, &cli.vars)?;
    let op = pf_operator(&e)?;
    let lam = op.to_lambda();
    let g = if gkz { Some(gkz_operator(&e)?) } else { None };
    if cli.json {
        let mut m = obj(json!({ "operator": operator_json(&op) }));
        if lambda {
            m.insert(
                "lambda".into(),
                json!({
                    "text": lam.to_string(),
                    "zero_roots": rats_json(&lam.zero_roots),
                    "infinity_roots": rats_json(&lam.infinity_roots),
                    "c_left": rat_json(&lam.c_left),
                    "c_right": rat_json(&lam.c_right),
                }),
            );
        }
        if let Some(g) = &g {
            m.insert("gkz".into(), operator_json(g));
        }
        return Ok(with_schema("pf", m));
    }
    let mut s = String::new();
    writeln!(s, "operator  {}", op.render()).unwrap();
    writeln!(s, "order     {}", op.order()).unwrap();
    writeln!(s, "expanded  {}", op.expand().render()).unwrap();
    if lambda {
        writeln!(s, "lambda    {}", lam).unwrap();
        writeln!(s, "  roots at λ=0  {}", rats(&lam.zero_roots)).unwrap();
        writeln!(s, "  roots at λ=∞  {}", rats(&lam.infinity_roots)).unwrap();
    }
    if let Some(g) = &g {
        writeln!(s, "gkz       {}", g.render()).unwrap();
        writeln!(s, "gkz order {}", g.order()).unwrap();
    }
    Ok(s)
}

fn spectra(text: &str, cli: &Cli) -> Result<String> {
    let (e, _) = parse_input(text, &cli.vars)?;
    let (a, b) = alpha_beta(&e)?;
    let hp = hodge_profile(&a, &b)?;
    let (c0, ci) = chi_forms_of(&e)?;
    let ps = poincare_series(&e.dual_weights()?);
    let (at0, atinf) = monodromy_eigenvalues(&e)?;
    let quotient = match (c0.as_product(), ci.as_product()) {
        (Some(x), Some(y)) => Some(x.divide(y)),
        _ => None,
    };
    let identity = quotient.as_ref().map(|q| q.exponents() == ps.form.exponents());
    let mut sa = a.clone();
    let mut sb = b.clone();
    sa.sort();
    sb.sort();
    if cli.json {
        return Ok(with_schema(
            "spectra",
            obj(json!({
                "alphas": rats_json(&sa), "betas": rats_json(&sb),
                "hodge": { "p_values": hp.p_values, "h": hp.h, "p_plus": hp.p_plus, "p_minus": hp.p_minus },
                "chi0": chi_json(&c0), "chi_inf": chi_json(&ci),
                "poincare_transpose": { "text": ps.form.render(), "zeros": multiset_json(&ps.zeros), "poles": multiset_json(&ps.poles) },
                "quotient_identity": identity,
                "monodromy": { "lambda_0": multiset_json(&at0), "lambda_inf": multiset_json(&atinf) },
            })),
        ));
    }
    let mut s = String::new();
    writeln!(s, "alphas        {}", rats(&sa)).unwrap();
    writeln!(s, "betas         {}", rats(&sb)).unwrap();
    writeln!(s, "hodge h       {:?}  (p+ = {}, p- = {})", hp.h, hp.p_plus, hp.p_minus).unwrap();
    writeln!(s, "chi_0         {}", c0.render()).unwrap();
    writeln!(s, "chi_inf       {}", ci.render()).unwrap();
    writeln!(s, "poincare g^t  {}", ps.form.render()).unwrap();
    match identity {
        Some(ok) => writeln!(s, "chi_0/chi_inf = poincare g^t: {}", if ok { "yes" } else { "NO" }).unwrap(),
        None => writeln!(s, "chi_0/chi_inf: no product form").unwrap(),
    }
    writeln!(s, "monodromy λ=0 {}", at0).unwrap();
    writeln!(s, "monodromy λ=∞ {}", atinf).unwrap();
    Ok(s)
}

fn basis(text: &str, cli: &Cli) -> Result<String> {
    let (e, names) = parse_input(text, &cli.vars)?;
    let cat = basis_monomials(&e)?;
    let pos = jacobi_positions(&e)?;
    let steps = path_step_multiset(&e)?;
    let closed = path_closure(&e, &steps).iter().all(|x| x.is_zero());
    let mono = |m: &Exponent| render_monomial(m, &names);
    if cli.json {
        let levels: Vec<Value> = cat
            .by_level
            .iter()
            .map(|(l, ms)| json!({ "level": l, "monomials": ms.iter().map(mono).collect::<Vec<_>>(), "exponents": ms.iter().map(|m| m.0.clone()).collect::<Vec<_>>() }))
            .collect();
        let entries: Vec<Value> = cat.entries.iter().map(|en| json!({ "alpha": rat_json(&en.alpha), "level": en.level, "monomial": mono(&en.exponent) })).collect();
        return Ok(with_schema(
            "basis",
            obj(json!({ "levels": levels, "entries": entries, "jacobi_positions": pos, "step_multiset": steps, "path_closes": closed })),
        ));
    }
    let mut s = String::new();
    for (l, ms) in &cat.by_level {
        writeln!(s, "level {}  {}", l, ms.iter().map(mono).collect::<Vec<_>>().join(", ")).unwrap();
    }
    for (i, p) in pos.smallest_positions.iter().enumerate() {
        let ps: Vec<String> = p.iter().map(|x| x.to_string()).collect();
        writeln!(s, "d/d{:<4} positions {}{}", names[i], ps.join(","), if pos.pure[i] { "" } else { "  (with extra vertex)" }).unwrap();
    }
    writeln!(s, "step multiset {:?}, path closes: {}", steps, closed).unwrap();
    Ok(s)
}

fn oracle(text: &str, max_dhat: u64, timeout: u64, ledger: &Option<String>, cli: &Cli) -> Result<(i32, String)> {
    let (e, names) = parse_input(text, &cli.vars)?;
    let closed = pf_operator(&e)?.expand();
    let opts = OracleOptions { max_dhat, timeout_seconds: Some(timeout), record_ledger: ledger.is_some(), names: Some(names), ..OracleOptions::default() };
    let r = picard_fuchs_oracle(&e, &opts)?;
    let agrees = r.operator.projectively_equal(&closed);
    if let (Some(path), Some(l)) = (ledger, &r.ledger) {
        let body = obj(json!({ "ledger": l, "operator": expanded_json(&r.operator) }));
        std::fs::write(path, with_schema("oracle-ledger", body)).map_err(|err| Error::Corpus(format!("cannot write {}: {}", path, err)))?;
    }
    let sizes: Vec<usize> = r.kbase.iter().map(Vec::len).collect();
    let code = if agrees { 0 } else { 1 };
    if cli.json {
        return Ok((
            code,
            with_schema(
                "oracle",
                obj(json!({
                    "operator": expanded_json(&r.operator),
                    "closed_form": expanded_json(&closed),
                    "agrees": agrees,
                    "kbase_sizes": sizes,
                    "groebner_size": r.groebner_size,
                    "elapsed_ms": r.elapsed_ms as u64,
                })),
            ),
        ));
    }
    let mut s = String::new();
    writeln!(s, "oracle      {}", r.operator.render()).unwrap();
    writeln!(s, "closed form {}", closed.render()).unwrap();
    writeln!(s, "agrees      {}", if agrees { "yes" } else { "NO" }).unwrap();
    writeln!(s, "k-base      {:?}  Gröbner basis {} elements  {} ms", sizes, r.groebner_size, r.elapsed_ms).unwrap();
    Ok((code, s))
}

fn verify_cmd(filter: &str, oracle: bool, max_dhat: u64, timeout: u64, cli: &Cli) -> Result<(i32, String)> {
    let c = corpus::load()?;
    let opts = VerifyOptions { oracle, max_dhat, timeout_seconds: Some(timeout), fields: None };
    let r = verify(&c, filter, &opts);
    let code = if r.all_passed() && r.summary.entries > 0 { 0 } else { 1 };
    if cli.json {
        let mut v = serde_json::to_value(&r).expect("serializable");
        v["command"] = json!("verify");
        return Ok((code, serde_json::to_string_pretty(&v).expect("serializable") + "\n"));
    }
    let mut s = String::new();
    for en in &r.entries {
        let tag = if en.passed { "PASS" } else { "FAIL" };
        let fields: Vec<String> = en
            .checks
            .iter()
            .map(|c| match c.status {
                Status::Pass if c.erratum.is_some() => format!("{}*", c.field),
                Status::Pass => c.field.clone(),
                Status::Fail => format!("{}!", c.field),
                Status::Skip => format!("{}?", c.field),
            })
            .collect();
        writeln!(s, "{} {:<9} {}", tag, en.id, fields.join(" ")).unwrap();
        if let Some(err) = &en.error {
            writeln!(s, "     error: {}", err).unwrap();
        }
        for c in en.checks.iter().filter(|c| c.status == Status::Fail) {
            writeln!(s, "     {}: expected {}\n     {}  actual   {}", c.field, c.expected, " ".repeat(c.field.len()), c.actual).unwrap();
            if let Some(d) = &c.detail {
                writeln!(s, "     {}", d).unwrap();
            }
        }
    }
    let sm = &r.summary;
    writeln!(s, "{}/{} entries pass; {} checks, {} failed, {} skipped (* = passes after erratum, ? = skipped)", sm.passed, sm.entries, sm.checks, sm.checks_failed, sm.checks_skipped).unwrap();
    Ok((code, s))
}

fn list_corpus(filter: &str, cli: &Cli) -> Result<String> {
    let c = corpus::load()?;
    let sel = c.select(filter);
    if cli.json {
        let v: Vec<Value> = sel
            .iter()
            .map(|e| {
                let fields: Map<String, Value> = e.fields.iter().map(|(k, f)| (k.clone(), json!(f.verbatim))).collect();
                json!({ "id": e.id, "vars": e.vars, "tables": e.tables, "fields": fields })
            })
            .collect();
        return Ok(with_schema("list-corpus", obj(json!({ "entries": v }))));
    }
    let mut s = String::new();
    for e in sel {
        writeln!(s, "{:<9} {:<34} [{}]", e.id, e.polynomial().unwrap_or("-"), e.tables.join(", ")).unwrap();
    }
    Ok(s)
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> std::result::Result<Outcome, String> {
    let input = match &cli.command {
        Command::Analyze { polynomial } | Command::Pf { polynomial, .. } | Command::Spectra { polynomial } | Command::Basis { polynomial } | Command::Oracle { polynomial, .. } => {
            Some(polynomial.as_str())
        }
        _ => None,
    };
    let res: Result<(i32, String)> = match &cli.command {
        Command::Analyze { polynomial } => analyze(polynomial, cli).map(|s| (0, s)),
        Command::Pf { polynomial, lambda, gkz } => pf(polynomial, *lambda, *gkz, cli).map(|s| (0, s)),
        Command::Spectra { polynomial } => spectra(polynomial, cli).map(|s| (0, s)),
        Command::Basis { polynomial } => basis(polynomial, cli).map(|s| (0, s)),
        Command::Oracle { polynomial, max_dhat, timeout_seconds, emit_ledger } => oracle(polynomial, *max_dhat, *timeout_seconds, emit_ledger, cli),
        Command::Verify { filter, oracle, max_dhat, timeout_seconds } => verify_cmd(filter, *oracle, *max_dhat, *timeout_seconds, cli),
        Command::ListCorpus { filter } => list_corpus(filter, cli).map(|s| (0, s)),
    };
    match res {
        Ok((code, stdout)) => Ok(Outcome { code, stdout }),
        Err(err) if cli.json => Err(serde_json::to_string_pretty(&json!({ "schema": JSON_SCHEMA, "error": err.to_string() })).unwrap() + "\n"),
        Err(err) => Err(describe_error(input, &err)),
    }
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let _ = out.write_all(o.stdout.as_bytes());
            o.code
        }
        Err(msg) => {
            let _ = err.write_all(msg.as_bytes());
            2
        }
    }
}
