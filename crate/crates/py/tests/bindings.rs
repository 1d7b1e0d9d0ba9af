use pyo3::prelude::*;
use pyo3::types::PyDict;

fn with_module<F>(f: F)
where
    F: for<'py> FnOnce(Python<'py>, Bound<'py, PyModule>) -> PyResult<()>,
{
    Python::attach(|py| {
        let module = pyo3::wrap_pymodule!(termirial::termirial)(py);
        let module = module.bind(py).clone().cast_into::<PyModule>().unwrap();
        f(py, module).unwrap();
    });
}

#[test]
fn arithmetic() {
    with_module(|_py, m| {
        let v: u64 = m.getattr("termirial")?.call1((100, 3))?.extract()?;
        assert_eq!(v, 4_421_275);
        let v: u64 = m.getattr("termirial")?.call1((4,))?.extract()?;
        assert_eq!(v, 10);
        let v: u64 = m.getattr("binomial")?.call1((103, 4))?.extract()?;
        assert_eq!(v, 4_421_275);
        let terms: Vec<u64> = m
            .getattr("convolution_terms")?
            .call1((2, 2, 2))?
            .extract()?;
        assert_eq!(terms, vec![4, 6, 6, 4]);
        let (l, r): (u64, u64) = m.getattr("pascal_check")?.call1((3, 1))?.extract()?;
        assert_eq!((l, r), (20, 20));
        assert!(m.getattr("termirial")?.call1((3, -2)).is_err());
        Ok(())
    });
}

#[test]
fn big_values_cross_as_python_ints() {
    with_module(|py, m| {
        let f = m.getattr("factorial")?.call1((30,))?;
        let locals = PyDict::new(py);
        locals.set_item("f", f)?;
        let ok: bool = py
            .eval(
                c"f == 265252859812191058636308480000000",
                None,
                Some(&locals),
            )?
            .extract()?;
        assert!(ok);
        Ok(())
    });
}

#[test]
fn oracles_and_classes() {
    with_module(|py, m| {
        let groups: Vec<(u64, u64)> = m
            .getattr("decompose_by_leading")?
            .call1((5, 3))?
            .extract()?;
        assert_eq!(groups, vec![(1, 6), (2, 3), (3, 1)]);
        let err = m.getattr("nested_sum")?.call1((60, 8)).unwrap_err();
        assert!(err.is_instance(py, &m.getattr("BudgetExceeded")?.cast_into()?));

        let nest = m.getattr("LoopNest")?.call_method1(
            "parse",
            ("n = 100\nfor i = 1 to n\nfor j = 1 to i\nfor k = 1 to j\nfor l = 1 to k",),
        )?;
        let count: u64 = nest.call_method0("count")?.extract()?;
        assert_eq!(count, 4_421_275);
        let theta: u64 = nest.getattr("theta_exponent")?.extract()?;
        assert_eq!(theta, 4);
        let sim: u64 = nest.call_method1("simulate", (10,))?.extract()?;
        assert_eq!(sim, 715);

        let err = m
            .getattr("LoopNest")?
            .call_method1("parse", ("for i = 1 to n\nfor j = 1 to x",))
            .unwrap_err();
        assert!(err.is_instance(py, &m.getattr("LoopParseError")?.cast_into()?));

        let fig = m.getattr("Figure")?.call1((4, 2))?;
        let cells: usize = fig.getattr("count")?.extract()?;
        assert_eq!(cells, 20);
        let art: String = fig.call_method0("ascii")?.extract()?;
        assert_eq!(art.matches('#').count(), 20);
        Ok(())
    });
}
