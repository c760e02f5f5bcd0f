//! Python bindings. Reports cross the boundary as JSON lines, the same stream the CLI writes.
//!
//! The plain-Rust layer below is always built; the `python` feature adds the extension module.

use iquantum::catalog;
use iquantum::iqg::IQuantum;
use iquantum_cli::{load_diagram, run, CliError, Command, RunConfig, Suite};

/// Exit code and report lines of one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub exit_code: i32,
    pub lines: Vec<String>,
}

pub fn run_lines(cfg: &RunConfig) -> Result<RunOutput, CliError> {
    let mut buf = Vec::new();
    let outcome = run(cfg, &mut buf)?;
    let text = String::from_utf8(buf).expect("serde_json writes UTF-8");
    Ok(RunOutput { exit_code: outcome.summary.exit_code(), lines: text.lines().map(str::to_string).collect() })
}

pub fn config(command: Command, diagram: Option<String>, ell: Option<Vec<u32>>, word: Option<String>, jobs: usize) -> RunConfig {
    RunConfig { diagram, ells: ell.unwrap_or_default(), word, jobs, ..RunConfig::new(command) }
}

pub fn verify_config(
    suite: &str,
    diagram: Option<String>,
    ell: Option<Vec<u32>>,
    jobs: usize,
) -> Result<RunConfig, CliError> {
    let suite: Suite = suite.parse().map_err(CliError::Config)?;
    Ok(config(Command::Verify(suite), diagram, ell, None, jobs))
}

/// `B_i` for a 1-based white node, or `F_i` for a black one, as a normal-form string.
pub fn b_generator(diagram: &str, node: usize) -> Result<String, CliError> {
    let d = load_diagram(diagram)?;
    let i = node.checked_sub(1).ok_or_else(|| CliError::Config("nodes are numbered from 1".into()))?;
    let iq = IQuantum::new(&d).map_err(|e| CliError::Config(e.to_string()))?;
    let b = iq.b_generator(i).map_err(|e| CliError::Config(e.to_string()))?;
    Ok(b.value.to_string())
}

pub fn catalog_names() -> Vec<String> {
    catalog::names().map(str::to_string).collect()
}

#[cfg(feature = "python")]
mod python {
    use pyo3::exceptions::PyValueError;
    use pyo3::prelude::*;

    use super::*;

    fn py_err(e: CliError) -> PyErr {
        PyValueError::new_err(e.to_string())
    }

    /// Names of the shipped diagram fixtures.
    #[pyfunction]
    #[pyo3(name = "catalog")]
    fn py_catalog() -> Vec<String> {
        catalog_names()
    }

    /// `(exit_code, json_lines)` for the invariants report.
    #[pyfunction]
    #[pyo3(signature = (diagram=None, ell=None, word=None))]
    fn invariants(diagram: Option<String>, ell: Option<Vec<u32>>, word: Option<String>) -> PyResult<(i32, Vec<String>)> {
        let out = run_lines(&config(Command::Invariants, diagram, ell, word, 1)).map_err(py_err)?;
        Ok((out.exit_code, out.lines))
    }

    /// `(exit_code, json_lines)` for one verification suite.
    #[pyfunction]
    #[pyo3(signature = (suite, diagram=None, ell=None, jobs=1))]
    fn verify(suite: &str, diagram: Option<String>, ell: Option<Vec<u32>>, jobs: usize) -> PyResult<(i32, Vec<String>)> {
        let cfg = verify_config(suite, diagram, ell, jobs).map_err(py_err)?;
        let out = run_lines(&cfg).map_err(py_err)?;
        Ok((out.exit_code, out.lines))
    }

    #[pyfunction]
    #[pyo3(name = "b_generator")]
    fn py_b_generator(diagram: &str, node: usize) -> PyResult<String> {
        b_generator(diagram, node).map_err(py_err)
    }

    #[pymodule]
    fn iquantum_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
        m.add_function(wrap_pyfunction!(py_catalog, m)?)?;
        m.add_function(wrap_pyfunction!(invariants, m)?)?;
        m.add_function(wrap_pyfunction!(verify, m)?)?;
        m.add_function(wrap_pyfunction!(py_b_generator, m)?)?;
        Ok(())
    }
}
