//! Python bindings: `import termirial`.

use num_bigint::BigUint;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use termirial_core::fractal::{self, Format};
use termirial_core::loopnest::{self, LoopNestProgram};
use termirial_core::{oracle, GuardError, Order, DEFAULT_BUDGET};

pyo3::create_exception!(
    termirial,
    BudgetExceeded,
    PyException,
    "A bounded computation would exceed its budget."
);
pyo3::create_exception!(
    termirial,
    LoopParseError,
    PyValueError,
    "Malformed loop-nest source."
);

fn order(p: i64) -> PyResult<Order> {
    Order::new(p).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn guard(e: GuardError) -> PyErr {
    match e {
        GuardError::OutOfDomain(_) => PyValueError::new_err(e.to_string()),
        _ => BudgetExceeded::new_err(e.to_string()),
    }
}

#[pyfunction]
fn factorial(n: u64) -> BigUint {
    termirial_core::factorial(n)
}

#[pyfunction]
fn binomial(n: u64, k: u64) -> BigUint {
    termirial_core::binomial(n, k)
}

/// Order-`p` termirial of `n` (order 1 when `p` is omitted).
#[pyfunction]
#[pyo3(name = "termirial", signature = (n, p = 1))]
fn termirial_value(n: u64, p: i64) -> PyResult<BigUint> {
    Ok(termirial_core::termirial_p(n, order(p)?))
}

#[pyfunction]
fn termirial_binomial(n: u64, p: i64) -> PyResult<BigUint> {
    Ok(termirial_core::termirial_p_binomial(n, order(p)?))
}

/// `(lhs, rhs)` of the Pascal-rule analog.
#[pyfunction]
fn pascal_check(n: u64, p: i64) -> PyResult<(BigUint, BigUint)> {
    Ok(termirial_core::pascal_check(n, order(p)?))
}

#[pyfunction]
fn convolution_terms(n: u64, m: u64, p: i64) -> PyResult<Vec<BigUint>> {
    Ok(termirial_core::convolution_terms(n, m, order(p)?))
}

#[pyfunction]
#[pyo3(signature = (n, p, budget = DEFAULT_BUDGET))]
fn nested_sum(n: u64, p: i64, budget: u64) -> PyResult<BigUint> {
    oracle::nested_sum(n, order(p)?, budget).map_err(guard)
}

#[pyfunction]
#[pyo3(signature = (n, p, budget = DEFAULT_BUDGET))]
fn subsets(n: u64, p: u64, budget: u64) -> PyResult<Vec<Vec<u64>>> {
    oracle::subsets(n, p, budget).map_err(guard)
}

/// `[(leading, count), ...]` for the `p`-subsets of `{1..n}`.
#[pyfunction]
#[pyo3(signature = (n, p, budget = DEFAULT_BUDGET))]
fn decompose_by_leading(n: u64, p: u64, budget: u64) -> PyResult<Vec<(u64, u64)>> {
    let d = oracle::decompose_by_leading(n, p, budget).map_err(guard)?;
    Ok(d.groups.iter().map(|g| (g.leading, g.count)).collect())
}

/// A parsed chain of `for` loops.
#[pyclass(frozen, name = "LoopNest")]
struct PyLoopNest {
    prog: LoopNestProgram,
}

#[pymethods]
impl PyLoopNest {
    #[staticmethod]
    fn parse(source: &str) -> PyResult<Self> {
        loopnest::parse(source)
            .map(|prog| PyLoopNest { prog })
            .map_err(|e| LoopParseError::new_err((e.kind.name(), e.line, e.column, e.to_string())))
    }

    #[getter]
    fn depth(&self) -> usize {
        self.prog.depth()
    }

    #[getter]
    fn param_name(&self) -> &str {
        &self.prog.param_name
    }

    #[getter]
    fn param_value(&self) -> Option<u64> {
        self.prog.param_value
    }

    #[getter]
    fn theta_exponent(&self) -> u64 {
        loopnest::analyze(&self.prog).theta_exponent
    }

    #[getter]
    fn closed_form(&self) -> String {
        loopnest::analyze(&self.prog).closed_form.to_string()
    }

    /// Exact iteration count for `n`, or for the program's own value.
    #[pyo3(signature = (n = None))]
    fn count(&self, n: Option<u64>) -> Option<BigUint> {
        let mut prog = self.prog.clone();
        if n.is_some() {
            prog.param_value = n;
        }
        loopnest::analyze(&prog).exact_count
    }

    #[pyo3(signature = (n, budget = DEFAULT_BUDGET))]
    fn simulate(&self, n: u64, budget: u64) -> PyResult<BigUint> {
        loopnest::simulate(&self.prog, n, budget).map_err(guard)
    }

    fn render(&self) -> String {
        self.prog.render()
    }

    fn __repr__(&self) -> String {
        format!(
            "LoopNest(depth={}, param={:?})",
            self.prog.depth(),
            self.prog.param_name
        )
    }
}

/// Grey-square figure of an order-`p` termirial.
#[pyclass(frozen, name = "Figure")]
struct PyFigure {
    fig: fractal::FractalFigure,
}

#[pymethods]
impl PyFigure {
    #[new]
    #[pyo3(signature = (n, p, budget = fractal::DEFAULT_CELL_BUDGET))]
    fn new(n: u64, p: u32, budget: u64) -> PyResult<Self> {
        fractal::build(n, p, budget)
            .map(|fig| PyFigure { fig })
            .map_err(guard)
    }

    #[getter]
    fn count(&self) -> usize {
        self.fig.count()
    }

    #[getter]
    fn cells(&self) -> Vec<(u64, u64)> {
        self.fig.grey_cells.iter().copied().collect()
    }

    fn ascii(&self) -> String {
        self.fig.render(Format::Ascii)
    }

    fn svg(&self) -> String {
        self.fig.render(Format::Svg)
    }
}

/// `(ratio_numer, ratio_denom, dimension_estimate)` for `S_{p-1} / S_p`.
#[pyfunction]
fn surface_ratio(n: u64, p: u32) -> PyResult<(BigUint, BigUint, f64)> {
    let r = fractal::surface_report(n, p).map_err(guard)?;
    let parts = |v: &num_bigint::BigInt| v.to_biguint().expect("ratio is positive");
    Ok((
        parts(r.ratio.numer()),
        parts(r.ratio.denom()),
        r.dimension_estimate,
    ))
}

#[pymodule]
pub fn termirial(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add("LoopParseError", m.py().get_type::<LoopParseError>())?;
    m.add_function(wrap_pyfunction!(factorial, m)?)?;
    m.add_function(wrap_pyfunction!(binomial, m)?)?;
    m.add_function(wrap_pyfunction!(termirial_value, m)?)?;
    m.add_function(wrap_pyfunction!(termirial_binomial, m)?)?;
    m.add_function(wrap_pyfunction!(pascal_check, m)?)?;
    m.add_function(wrap_pyfunction!(convolution_terms, m)?)?;
    m.add_function(wrap_pyfunction!(nested_sum, m)?)?;
    m.add_function(wrap_pyfunction!(subsets, m)?)?;
    m.add_function(wrap_pyfunction!(decompose_by_leading, m)?)?;
    m.add_function(wrap_pyfunction!(surface_ratio, m)?)?;
    m.add_class::<PyLoopNest>()?;
    m.add_class::<PyFigure>()?;
    Ok(())
}
