//! Python bindings. Values cross the boundary as text in the expression
//! language (and JSON for series), which keeps the binding surface small.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use ballcut_core::cuts::{cut_equal, induced_cut};
use ballcut_core::curve::genus2_example as genus2;
use ballcut_core::expr::{eval, parse_cut, parse_element, parse_in, to_rational_fn, Env, Scope};
use ballcut_core::orderings::{classify_index, ordering_sign, place_equal, place_value};
use ballcut_core::realroots::{sturm_count as count, Endpoint, Interval};
use ballcut_core::series::rat::parse_rat;
use ballcut_core::ultrametric::dist as ultra_dist;
use ballcut_core::{Error, GroupMode, Precision, Series};

create_exception!(ballcut, BallcutError, PyException);
create_exception!(ballcut, IndeterminateError, BallcutError);

fn err(e: Error) -> PyErr {
    let msg = format!("[{}] {e}", e.code());
    if e.is_indeterminate() {
        IndeterminateError::new_err(msg)
    } else {
        BallcutError::new_err(msg)
    }
}

fn precision(p: &str) -> PyResult<Precision> {
    let depth = parse_rat(p).map_err(err)?;
    if depth <= ballcut_core::series::rat::rat(0) {
        return Err(err(Error::InvalidInput("precision must be positive".into())));
    }
    Ok(Precision::new(depth))
}

fn mode(name: &str) -> PyResult<GroupMode> {
    GroupMode::from_name(name).ok_or_else(|| err(Error::InvalidInput(format!("unknown mode `{name}`"))))
}

/// A truncated series with the precision used to build it.
#[pyclass(name = "Series", module = "ballcut", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySeries {
    inner: Series,
    prec: Precision,
}

impl PySeries {
    fn wrap(&self, inner: Series) -> Self {
        PySeries {
            inner,
            prec: self.prec.clone(),
        }
    }
}

#[pymethods]
impl PySeries {
    /// Parses an expression; `t` is available in either mode.
    #[new]
    #[pyo3(signature = (text, mode_name = "aux_infinitesimal", prec = "8"))]
    fn new(text: &str, mode_name: &str, prec: &str) -> PyResult<Self> {
        let prec = precision(prec)?;
        let ast = parse_in(text, &Scope::default().with_aux()).map_err(err)?;
        let inner = eval(&ast, &Env::new(mode(mode_name)?, prec.clone())).map_err(err)?;
        Ok(PySeries { inner, prec })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner: Series = serde_json::from_str(text)
            .map_err(|e| err(Error::InvalidInput(e.to_string())))?;
        Ok(PySeries {
            inner,
            prec: Precision::default(),
        })
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("serializable")
    }

    fn __add__(&self, o: &PySeries) -> PyResult<Self> {
        Ok(self.wrap(self.inner.add(&o.inner).map_err(err)?))
    }

    fn __sub__(&self, o: &PySeries) -> PyResult<Self> {
        Ok(self.wrap(self.inner.sub(&o.inner).map_err(err)?))
    }

    fn __mul__(&self, o: &PySeries) -> PyResult<Self> {
        Ok(self.wrap(self.inner.mul(&o.inner).map_err(err)?))
    }

    fn __truediv__(&self, o: &PySeries) -> PyResult<Self> {
        Ok(self.wrap(self.inner.div(&o.inner, &self.prec).map_err(err)?))
    }

    fn __neg__(&self) -> Self {
        self.wrap(self.inner.neg())
    }

    fn __eq__(&self, o: &PySeries) -> bool {
        self.inner == o.inner
    }

    fn nth_root(&self, n: u32) -> PyResult<Self> {
        Ok(self.wrap(self.inner.nth_root(n, &self.prec).map_err(err)?))
    }

    fn sign(&self) -> PyResult<i8> {
        self.inner.sign().map_err(err)
    }

    fn valuation(&self) -> PyResult<String> {
        Ok(self.inner.valuation().map_err(err)?.to_string())
    }

    fn standard_part(&self) -> PyResult<String> {
        Ok(self.inner.standard_part().map_err(err)?.to_string())
    }

    /// The cut of the base field filled by this element.
    fn induced_cut(&self) -> PyResult<String> {
        Ok(induced_cut(&self.inner).map_err(err)?.to_string())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Series('{}')", self.inner)
    }
}

/// Ultrametric distance `v(a - b)` of two elements of the base field.
#[pyfunction]
#[pyo3(signature = (a, b, prec = "8"))]
fn dist(a: &str, b: &str, prec: &str) -> PyResult<String> {
    let p = precision(prec)?;
    let env = Env::new(GroupMode::AuxInfinitesimal, p);
    let a = eval(&parse_in(a, &Scope::default()).map_err(err)?, &env).map_err(err)?;
    let b = eval(&parse_in(b, &Scope::default()).map_err(err)?, &env).map_err(err)?;
    Ok(ultra_dist(&a, &b).map_err(err)?.to_string())
}

#[pyfunction]
#[pyo3(name = "ordering_sign", signature = (cut, func, prec = "8"))]
fn py_ordering_sign(cut: &str, func: &str, prec: &str) -> PyResult<i8> {
    let p = precision(prec)?;
    let c = parse_cut(cut, &p).map_err(err)?;
    let f = parse_in(func, &Scope::with_vars(&["x"])).map_err(err)?;
    let f = to_rational_fn(&f, "x", &p).map_err(err)?;
    ordering_sign(&c, &f).map_err(err)
}

#[pyfunction]
#[pyo3(name = "place_value", signature = (cut, func, prec = "8"))]
fn py_place_value(cut: &str, func: &str, prec: &str) -> PyResult<String> {
    let p = precision(prec)?;
    let c = parse_cut(cut, &p).map_err(err)?;
    let f = parse_in(func, &Scope::with_vars(&["x"])).map_err(err)?;
    let f = to_rational_fn(&f, "x", &p).map_err(err)?;
    Ok(place_value(&c, &f, &p).map_err(err)?.to_string())
}

#[pyfunction]
#[pyo3(name = "place_equal")]
fn py_place_equal(a: &str, b: &str) -> PyResult<bool> {
    let p = Precision::default();
    place_equal(&parse_cut(a, &p).map_err(err)?, &parse_cut(b, &p).map_err(err)?).map_err(err)
}

#[pyfunction]
#[pyo3(name = "cut_equal")]
fn py_cut_equal(a: &str, b: &str) -> PyResult<bool> {
    let p = Precision::default();
    cut_equal(&parse_cut(a, &p).map_err(err)?, &parse_cut(b, &p).map_err(err)?).map_err(err)
}

#[pyfunction]
#[pyo3(name = "classify_index")]
fn py_classify_index(cut: &str) -> PyResult<u8> {
    Ok(classify_index(&parse_cut(cut, &Precision::default()).map_err(err)?))
}

/// Distinct real roots of a polynomial in `x` on `(lo, hi]`.
#[pyfunction]
#[pyo3(signature = (poly, lo = "-inf", hi = "+inf"))]
fn sturm_count(poly: &str, lo: &str, hi: &str) -> PyResult<usize> {
    let p = Precision::default();
    let f = parse_in(poly, &Scope::with_vars(&["x"])).map_err(err)?;
    let f = to_rational_fn(&f, "x", &p).map_err(err)?;
    if f.denominator().degree() != Some(0) {
        return Err(err(Error::InvalidInput(format!("{f} is not a polynomial"))));
    }
    let end = |s: &str| -> PyResult<Endpoint> {
        Ok(match s.trim() {
            "-inf" => Endpoint::NegInf,
            "+inf" | "inf" => Endpoint::PosInf,
            e => Endpoint::At(parse_element(e, &p).map_err(err)?),
        })
    };
    count(f.numerator(), &Interval::new(end(lo)?, end(hi)?)).map_err(err)
}

/// The genus-2 example as a JSON string.
#[pyfunction]
#[pyo3(signature = (prec = "8"))]
fn genus2_example(prec: &str) -> PyResult<String> {
    let r = genus2(&precision(prec)?).map_err(err)?;
    Ok(r.to_json().to_string())
}

#[pymodule]
fn ballcut(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySeries>()?;
    m.add("BallcutError", m.py().get_type::<BallcutError>())?;
    m.add("IndeterminateError", m.py().get_type::<IndeterminateError>())?;
    m.add_function(wrap_pyfunction!(dist, m)?)?;
    m.add_function(wrap_pyfunction!(py_ordering_sign, m)?)?;
    m.add_function(wrap_pyfunction!(py_place_value, m)?)?;
    m.add_function(wrap_pyfunction!(py_place_equal, m)?)?;
    m.add_function(wrap_pyfunction!(py_cut_equal, m)?)?;
    m.add_function(wrap_pyfunction!(py_classify_index, m)?)?;
    m.add_function(wrap_pyfunction!(sturm_count, m)?)?;
    m.add_function(wrap_pyfunction!(genus2_example, m)?)?;
    Ok(())
}
