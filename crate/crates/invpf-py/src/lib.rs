//! Python bindings. Each function runs the matching `invpf` subcommand in
//! JSON mode and returns the decoded document; rationals `{num, den}` become
//! `fractions.Fraction`.

use invpf::cli::{execute, Cli, Command, JSON_SCHEMA};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyString};

const DECODER: &str = r#"
import json
from fractions import Fraction

def _hook(d):
    if len(d) == 2 and "num" in d and "den" in d:
        return Fraction(int(d["num"]), int(d["den"]))
    return d

def decode(text):
    return json.loads(text, object_hook=_hook)
"#;

fn decode(py: Python<'_>, text: &str) -> PyResult<PyObject> {
    let m = PyModule::from_code_bound(py, DECODER, "invpf_decode.py", "invpf_decode")?;
    Ok(m.getattr("decode")?.call1((PyString::new_bound(py, text),))?.unbind())
}

fn run(py: Python<'_>, vars: Option<Vec<String>>, command: Command) -> PyResult<PyObject> {
    let cli = Cli { json: true, vars, command };
    match py.allow_threads(|| execute(&cli)) {
        Ok(out) => decode(py, &out.stdout),
        Err(msg) => {
            let doc = decode(py, &msg)?;
            let text = doc.bind(py).downcast::<PyDict>().ok().and_then(|d| d.get_item("error").ok().flatten()).map_or(msg.clone(), |e| e.to_string());
            Err(PyValueError::new_err(text))
        }
    }
}

/// Decomposition into atomic parts, weights, transpose and Calabi-Yau check.
#[pyfunction]
#[pyo3(signature = (polynomial, vars=None))]
fn analyze(py: Python<'_>, polynomial: String, vars: Option<Vec<String>>) -> PyResult<PyObject> {
    run(py, vars, Command::Analyze { polynomial })
}

/// Closed-form Picard-Fuchs operator, optionally in λ form and as GKZ.
#[pyfunction]
#[pyo3(signature = (polynomial, vars=None, lambda_form=false, gkz=false))]
fn pf(py: Python<'_>, polynomial: String, vars: Option<Vec<String>>, lambda_form: bool, gkz: bool) -> PyResult<PyObject> {
    run(py, vars, Command::Pf { polynomial, lambda: lambda_form, gkz })
}

/// Hodge profile, χ forms, Poincaré series and monodromy.
#[pyfunction]
#[pyo3(signature = (polynomial, vars=None))]
fn spectra(py: Python<'_>, polynomial: String, vars: Option<Vec<String>>) -> PyResult<PyObject> {
    run(py, vars, Command::Spectra { polynomial })
}

/// Distinguished Milnor-ring monomials.
#[pyfunction]
#[pyo3(signature = (polynomial, vars=None))]
fn basis(py: Python<'_>, polynomial: String, vars: Option<Vec<String>>) -> PyResult<PyObject> {
    run(py, vars, Command::Basis { polynomial })
}

/// Griffiths-Dwork recomputation compared against the closed form.
#[pyfunction]
#[pyo3(signature = (polynomial, vars=None, max_dhat=24, timeout_seconds=300))]
fn oracle(py: Python<'_>, polynomial: String, vars: Option<Vec<String>>, max_dhat: u64, timeout_seconds: u64) -> PyResult<PyObject> {
    run(py, vars, Command::Oracle { polynomial, max_dhat, timeout_seconds, emit_ledger: None })
}

/// Checks corpus entries matching `filter`.
#[pyfunction]
#[pyo3(signature = (filter="*".to_string(), oracle=false, max_dhat=24, timeout_seconds=300))]
fn verify(py: Python<'_>, filter: String, oracle: bool, max_dhat: u64, timeout_seconds: u64) -> PyResult<PyObject> {
    run(py, None, Command::Verify { filter, oracle, max_dhat, timeout_seconds })
}

/// Corpus entries matching `filter`, as transcribed.
#[pyfunction]
#[pyo3(signature = (filter="*".to_string()))]
fn list_corpus(py: Python<'_>, filter: String) -> PyResult<PyObject> {
    run(py, None, Command::ListCorpus { filter })
}

#[pymodule]
fn invpf_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("JSON_SCHEMA", JSON_SCHEMA)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(pf, m)?)?;
    m.add_function(wrap_pyfunction!(spectra, m)?)?;
    m.add_function(wrap_pyfunction!(basis, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(list_corpus, m)?)?;
    Ok(())
}
