//! Python bindings. Counts come back as Python ints and exact rationals as
//! `fractions.Fraction`; sequences may be passed as ints, Fractions or
//! `"p/q"` strings.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use dualgarside::free_cumulants::{self as fc, parse_rational, ExactSeq, FormalSeries, SeqRole};
use num_rational::BigRational;
use dualgarside::{dual_braid, garside_count as gc, nc_lattice as nc, BraidWord, Error, LatticeFamily, Limits};

create_exception!(dualgarside, ResourceLimitError, PyRuntimeError, "A size cap was exceeded.");
create_exception!(dualgarside, NonConvergenceError, PyRuntimeError, "Power iteration did not converge.");

fn py_err(e: Error) -> PyErr {
    match e {
        Error::InvalidInput(_) => PyValueError::new_err(e.to_string()),
        Error::ResourceLimit { .. } => ResourceLimitError::new_err(e.to_string()),
        Error::NonConvergence { .. } => NonConvergenceError::new_err(e.to_string()),
    }
}

fn limits() -> PyResult<Limits> {
    Limits::from_env().map_err(py_err)
}

fn family(name: &str) -> PyResult<LatticeFamily> {
    name.parse().map_err(py_err)
}

fn fraction<'py>(py: Python<'py>, x: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((x.numer().clone(), x.denom().clone()))
}

fn fractions<'py>(py: Python<'py>, xs: &[BigRational]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    xs.iter().map(|x| fraction(py, x)).collect()
}

fn to_seq(values: &[Bound<'_, PyAny>], role: SeqRole) -> PyResult<ExactSeq> {
    let terms = values
        .iter()
        .map(|v| parse_rational(&v.str()?.to_string()).map_err(py_err))
        .collect::<PyResult<Vec<_>>>()?;
    ExactSeq::new(terms, role).map_err(py_err)
}

/// A noncrossing partition of `{1..n}` with canonically ordered blocks.
#[pyclass(name = "NcPartition", module = "dualgarside", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyNcPartition(nc::NcPartition);

#[pymethods]
impl PyNcPartition {
    #[new]
    fn new(n: usize, blocks: Vec<Vec<usize>>) -> PyResult<Self> {
        nc::NcPartition::new(n, blocks).map(PyNcPartition).map_err(py_err)
    }

    #[staticmethod]
    fn bottom(n: usize) -> Self {
        PyNcPartition(nc::NcPartition::bottom(n))
    }

    #[staticmethod]
    fn top(n: usize) -> Self {
        PyNcPartition(nc::NcPartition::top(n))
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn blocks(&self) -> Vec<Vec<usize>> {
        self.0.blocks().to_vec()
    }

    fn kreweras(&self) -> Self {
        PyNcPartition(nc::kreweras(&self.0))
    }

    fn rotate(&self, s: i64) -> Self {
        PyNcPartition(nc::rotate(&self.0, s))
    }

    fn meet(&self, other: &PyNcPartition) -> PyResult<Self> {
        nc::meet(&self.0, &other.0).map(PyNcPartition).map_err(py_err)
    }

    fn join(&self, other: &PyNcPartition) -> PyResult<Self> {
        nc::join(&self.0, &other.0).map(PyNcPartition).map_err(py_err)
    }

    fn leq(&self, other: &PyNcPartition) -> PyResult<bool> {
        nc::leq(&self.0, &other.0).map_err(py_err)
    }

    /// μ(self, 0_n).
    fn mobius(&self) -> BigInt {
        nc::mobius_to_zero(&self.0)
    }

    /// Signed letters of the braid word `a_p`.
    fn braid_word(&self) -> Vec<i32> {
        dual_braid::partition_to_braid(&self.0).letters().to_vec()
    }

    /// One-line image list of the permutation whose cycles are the blocks.
    fn permutation(&self) -> Vec<usize> {
        dual_braid::partition_to_permutation(&self.0).images().to_vec()
    }

    fn __repr__(&self) -> String {
        format!("NcPartition({}, {:?})", self.0.n(), self.0.blocks())
    }
}

#[pyfunction]
fn catalan(n: usize) -> BigInt {
    nc::catalan(n).into()
}

#[pyfunction]
fn enumerate_nc(n: usize) -> PyResult<Vec<PyNcPartition>> {
    Ok(nc::enumerate_nc(n, limits()?).map_err(py_err)?.into_iter().map(PyNcPartition).collect())
}

/// Rows of the 0/1 incidence matrix over `enumerate_nc(n)`.
#[pyfunction]
fn incidence_matrix(n: usize) -> PyResult<Vec<Vec<u8>>> {
    let m = gc::incidence_matrix(n, limits()?).map_err(py_err)?;
    Ok((0..m.size()).map(|i| m.row(i).to_vec()).collect())
}

#[pyfunction]
fn count_braids(n: usize, d: usize) -> PyResult<BigInt> {
    Ok(gc::count_braids(n, d, limits()?).map_err(py_err)?.into())
}

/// `(partition, count)` pairs in enumeration order.
#[pyfunction]
fn count_by_last(n: usize, d: usize) -> PyResult<Vec<(PyNcPartition, BigInt)>> {
    let v = gc::count_by_last(n, d, limits()?).map_err(py_err)?;
    Ok(v.values.into_iter().map(|(p, c)| (PyNcPartition(p), c.into())).collect())
}

#[pyfunction]
fn determinant_exact(n: usize) -> PyResult<BigInt> {
    gc::determinant_exact(n, limits()?).map_err(py_err)
}

#[pyfunction]
fn determinant_formula(n: usize) -> PyResult<BigInt> {
    Ok(gc::determinant_formula(n).map_err(py_err)?.into())
}

#[pyfunction]
#[pyo3(signature = (n, tol = 1e-9))]
fn spectral_radius(n: usize, tol: f64) -> PyResult<f64> {
    Ok(gc::spectral_radius(n, tol, limits()?).map_err(py_err)?.radius)
}

#[pyfunction]
fn part_size_total(n: usize, k: usize) -> PyResult<BigInt> {
    Ok(gc::part_size_total(n, k, limits()?).map_err(py_err)?.into())
}

#[pyfunction]
#[pyo3(signature = (cumulants, family = "free"))]
fn moments_from_cumulants<'py>(
    py: Python<'py>,
    cumulants: Vec<Bound<'py, PyAny>>,
    family: &str,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let r = to_seq(&cumulants, SeqRole::Cumulants)?;
    let m = fc::moments_from_cumulants(&r, self::family(family)?, limits()?).map_err(py_err)?;
    fractions(py, m.terms())
}

#[pyfunction]
#[pyo3(signature = (moments, family = "free"))]
fn cumulants_from_moments<'py>(
    py: Python<'py>,
    moments: Vec<Bound<'py, PyAny>>,
    family: &str,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let m = to_seq(&moments, SeqRole::Moments)?;
    let r = fc::cumulants_from_moments(&m, self::family(family)?, limits()?).map_err(py_err)?;
    fractions(py, r.terms())
}

#[pyfunction]
#[pyo3(signature = (factors, order, family = "free"))]
fn product_cumulants<'py>(
    py: Python<'py>,
    factors: Vec<Vec<Bound<'py, PyAny>>>,
    order: usize,
    family: &str,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let rs = factors.iter().map(|f| to_seq(f, SeqRole::Cumulants)).collect::<PyResult<Vec<_>>>()?;
    let r = fc::product_cumulants(&rs, self::family(family)?, order, limits()?).map_err(py_err)?;
    fractions(py, r.terms())
}

#[pyfunction]
#[pyo3(signature = (n, k, family = "free"))]
fn count_joining_tuples(n: usize, k: usize, family: &str) -> PyResult<BigInt> {
    Ok(fc::count_joining_tuples(self::family(family)?, n, k, limits()?).map_err(py_err)?.into())
}

/// Coefficients `R_1..R_N` of the series solving `R(z M(z)) = M(z)`.
#[pyfunction]
fn series_solve_r<'py>(py: Python<'py>, moments: Vec<Bound<'py, PyAny>>) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let m = FormalSeries::from_seq(&to_seq(&moments, SeqRole::Moments)?);
    fractions(py, &fc::series_solve_r(&m).coeffs()[1..])
}

#[pyfunction]
fn band_generator(i: usize, j: usize, n: usize) -> PyResult<Vec<i32>> {
    Ok(dual_braid::band_generator(i, j, n).map_err(py_err)?.letters().to_vec())
}

#[pyfunction]
fn braid_to_permutation(strands: usize, letters: Vec<i32>) -> PyResult<Vec<usize>> {
    let w = BraidWord::new(strands, letters).map_err(py_err)?;
    Ok(dual_braid::braid_to_permutation(&w).images().to_vec())
}

#[pymodule]
#[pyo3(name = "dualgarside")]
fn init(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNcPartition>()?;
    m.add("ResourceLimitError", m.py().get_type::<ResourceLimitError>())?;
    m.add("NonConvergenceError", m.py().get_type::<NonConvergenceError>())?;
    m.add_function(wrap_pyfunction!(catalan, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_nc, m)?)?;
    m.add_function(wrap_pyfunction!(incidence_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(count_braids, m)?)?;
    m.add_function(wrap_pyfunction!(count_by_last, m)?)?;
    m.add_function(wrap_pyfunction!(determinant_exact, m)?)?;
    m.add_function(wrap_pyfunction!(determinant_formula, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_radius, m)?)?;
    m.add_function(wrap_pyfunction!(part_size_total, m)?)?;
    m.add_function(wrap_pyfunction!(moments_from_cumulants, m)?)?;
    m.add_function(wrap_pyfunction!(cumulants_from_moments, m)?)?;
    m.add_function(wrap_pyfunction!(product_cumulants, m)?)?;
    m.add_function(wrap_pyfunction!(count_joining_tuples, m)?)?;
    m.add_function(wrap_pyfunction!(series_solve_r, m)?)?;
    m.add_function(wrap_pyfunction!(band_generator, m)?)?;
    m.add_function(wrap_pyfunction!(braid_to_permutation, m)?)?;
    Ok(())
}
