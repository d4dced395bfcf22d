//! Python bindings for the fundcone crate.

use pyo3::prelude::*;

#[pymodule]
fn fundcone_py(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
