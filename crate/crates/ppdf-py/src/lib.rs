use pyo3::prelude::*;

#[pymodule]
fn ppdf_py(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
