//! Python bindings. Operators cross the boundary as text in the same
//! grammar the CLI reads, so every value printed here parses back.

use dfan_core::grammar::{parse_element, parse_monomial_ideal, parse_operator, parse_w_operator};
use dfan_core::{
    self as core, member_n, BasicCone as CoreCone, FanLimits, FiberVerdict, HomogenizedModule,
    LinearForm, Membership, OpVec, Operator as CoreOperator, Rational, ShiftMatrix,
};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(dfan, AlgebraError, PyException);
create_exception!(dfan, ParseError, PyValueError);

fn algebra(e: core::AlgebraError) -> PyErr {
    AlgebraError::new_err(e.to_string())
}

fn parse(e: core::ParseError) -> PyErr {
    ParseError::new_err(e.to_string())
}

/// Accepts ints and strings such as `"3/2"`.
fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(i) = obj.extract::<i64>() {
        return Ok(Rational::from_integer(i.into()));
    }
    let s: String = obj.extract()?;
    s.trim()
        .parse::<Rational>()
        .map_err(|_| PyValueError::new_err(format!("not a rational number: {s}")))
}

fn form(weight: &[Bound<'_, PyAny>]) -> PyResult<LinearForm> {
    let coeffs = weight.iter().map(rational).collect::<PyResult<Vec<_>>>()?;
    LinearForm::new(coeffs).map_err(algebra)
}

/// A differential operator in `D = Q<x1..xn, d1..dn>`, or in `D[t]` when
/// it mentions `t`.
#[pyclass(frozen, module = "dfan")]
struct Operator {
    inner: CoreOperator,
}

#[pymethods]
impl Operator {
    #[new]
    fn new(text: &str, n: usize) -> PyResult<Self> {
        Ok(Self {
            inner: parse_operator(text, n).map_err(parse)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn __mul__(&self, other: &Operator) -> PyResult<Operator> {
        Ok(Self {
            inner: self.inner.mul(&other.inner).map_err(algebra)?,
        })
    }

    /// Product in `D[t]`, where `d_i x_i = x_i d_i + t`.
    fn mul_dt(&self, other: &Operator) -> PyResult<Operator> {
        Ok(Self {
            inner: self.inner.mul_dt(&other.inner).map_err(algebra)?,
        })
    }

    fn __add__(&self, other: &Operator) -> Operator {
        Self {
            inner: &self.inner + &other.inner,
        }
    }

    fn __sub__(&self, other: &Operator) -> Operator {
        Self {
            inner: &self.inner - &other.inner,
        }
    }

    fn __eq__(&self, other: &Operator) -> bool {
        self.inner == other.inner
    }

    fn homogenize(&self) -> PyResult<Operator> {
        Ok(Self {
            inner: self.inner.homogenize().map_err(algebra)?,
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Operator({:?}, {})", self.inner.to_string(), self.inner.n())
    }
}

/// An element of the free module `D^r`, components marked `e1 .. er`.
#[pyclass(frozen, module = "dfan")]
struct Element {
    inner: OpVec,
}

#[pymethods]
impl Element {
    #[new]
    #[pyo3(signature = (text, n, r = 1))]
    fn new(text: &str, n: usize, r: usize) -> PyResult<Self> {
        Ok(Self {
            inner: parse_element(text, n, r).map_err(parse)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// `P * self`.
    fn left_mul(&self, p: &Operator) -> PyResult<Element> {
        Ok(Self {
            inner: self.inner.left_mul(&p.inner).map_err(algebra)?,
        })
    }

    fn __add__(&self, other: &Element) -> Element {
        Self {
            inner: &self.inner + &other.inner,
        }
    }

    fn __eq__(&self, other: &Element) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Element({:?}, {}, {})",
            self.inner.to_string(),
            self.inner.n(),
            self.inner.rank()
        )
    }
}

/// A basic cone given by its ray forms, one per row; `|det| = 1`.
#[pyclass(frozen, module = "dfan")]
struct BasicCone {
    inner: CoreCone,
}

#[pymethods]
impl BasicCone {
    #[new]
    fn new(rows: Vec<Vec<i64>>) -> PyResult<Self> {
        Ok(Self {
            inner: CoreCone::new(rows).map_err(algebra)?,
        })
    }

    #[staticmethod]
    fn orthant(k: usize) -> Self {
        Self {
            inner: CoreCone::orthant(k),
        }
    }

    #[getter]
    fn rows(&self) -> Vec<Vec<i64>> {
        self.inner.rows().to_vec()
    }

    /// Columns of the inverse, the free generators of the dual monoid.
    #[getter]
    fn columns(&self) -> Vec<Vec<i64>> {
        self.inner.columns()
    }

    fn interior_weight(&self) -> Vec<i64> {
        self.inner.interior_weight()
    }

    fn __repr__(&self) -> String {
        format!("BasicCone({:?})", self.inner.rows())
    }
}

/// A reduced standard basis of `h(N)` for one weight.
#[pyclass(frozen, module = "dfan")]
struct StandardBasis {
    inner: core::StandardBasis,
}

#[pymethods]
impl StandardBasis {
    #[getter]
    fn elements(&self) -> Vec<Element> {
        self.inner
            .elements()
            .into_iter()
            .map(|inner| Element { inner })
            .collect()
    }

    #[getter]
    fn weight(&self) -> String {
        self.inner.form().to_string()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// Divides `h(g)`; returns the quotients and the remainder.
    fn divide(&self, g: &Element) -> PyResult<(Vec<Operator>, Element)> {
        let h = g.inner.homogenize().map_err(algebra)?;
        let res = core::divide(&h, &self.inner).map_err(algebra)?;
        Ok((
            res.quotients
                .into_iter()
                .map(|inner| Operator { inner })
                .collect(),
            Element {
                inner: res.remainder,
            },
        ))
    }

    /// Whether `g` lies in `N`.
    fn contains(&self, g: &Element) -> PyResult<bool> {
        let h = g.inner.homogenize().map_err(algebra)?;
        Ok(matches!(
            member_n(&h, &self.inner, 0).map_err(algebra)?,
            Membership::Yes(_)
        ))
    }

    fn __repr__(&self) -> String {
        format!(
            "<StandardBasis of {} elements at L = {}>",
            self.inner.len(),
            self.inner.form()
        )
    }
}

/// The standard fan: cones of weights sharing one reduced standard basis.
#[pyclass(frozen, module = "dfan")]
struct Fan {
    inner: core::Fan,
}

#[pymethods]
impl Fan {
    fn __len__(&self) -> usize {
        self.inner.cones().len()
    }

    fn maximal_count(&self) -> usize {
        self.inner.maximal_cones().count()
    }

    /// Each cone as a dict with `sample`, `dimension`, `equalities`,
    /// `inequalities` and `basis`.
    fn cones<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        self.inner
            .cones()
            .iter()
            .map(|c| {
                let d = PyDict::new(py);
                d.set_item("sample", c.sample().to_vec())?;
                d.set_item("dimension", c.dimension())?;
                d.set_item("equalities", c.equalities().to_vec())?;
                d.set_item("inequalities", c.inequalities().to_vec())?;
                let basis: Vec<String> =
                    c.basis().elements().iter().map(|e| e.to_string()).collect();
                d.set_item("basis", basis)?;
                Ok(d)
            })
            .collect()
    }

    /// Index of the cone whose relative interior holds the weight.
    fn cone_index(&self, weight: Vec<Bound<'_, PyAny>>) -> PyResult<usize> {
        self.inner.index_of_weight(&form(&weight)?).map_err(algebra)
    }
}

/// `N = D g_1 + ... + D g_p` inside `D^r` with shift matrix `shifts`
/// (one column of length `k` per component).
#[pyclass(frozen, module = "dfan")]
struct Module {
    inner: HomogenizedModule,
}

#[pymethods]
impl Module {
    #[new]
    #[pyo3(signature = (generators, n, k, r = 1, shifts = None))]
    fn new(
        generators: Vec<String>,
        n: usize,
        k: usize,
        r: usize,
        shifts: Option<Vec<Vec<i64>>>,
    ) -> PyResult<Self> {
        let gens = generators
            .iter()
            .map(|g| parse_element(g, n, r))
            .collect::<Result<Vec<_>, _>>()
            .map_err(parse)?;
        let shifts = match shifts {
            Some(cols) => ShiftMatrix::new(cols).map_err(algebra)?,
            None => ShiftMatrix::zero(k, r),
        };
        if shifts.k() != k {
            return Err(PyValueError::new_err(format!(
                "shifts have {} rows, expected {k}",
                shifts.k()
            )));
        }
        Ok(Self {
            inner: HomogenizedModule::new(gens, shifts).map_err(algebra)?,
        })
    }

    fn standard_basis(&self, weight: Vec<Bound<'_, PyAny>>) -> PyResult<StandardBasis> {
        let l = form(&weight)?;
        Ok(StandardBasis {
            inner: self.inner.standard_basis(&l).map_err(algebra)?,
        })
    }

    fn fan(&self) -> PyResult<Fan> {
        Ok(Fan {
            inner: core::standard_fan(&self.inner, FanLimits::default()).map_err(algebra)?,
        })
    }

    /// Decides whether the fiber of the Rees module at the origin vanishes.
    /// Returns `{"verdict": "zero" | "nonzero" | "inconclusive", ...}`.
    #[pyo3(signature = (degree_bound = None))]
    fn fiber<'py>(
        &self,
        py: Python<'py>,
        degree_bound: Option<u32>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let verdict =
            core::fiber_v_zero_test(self.inner.generators(), self.inner.shifts(), degree_bound)
                .map_err(algebra)?;
        let d = PyDict::new(py);
        match verdict {
            FiberVerdict::Zero { witnesses } => {
                d.set_item("verdict", "zero")?;
                d.set_item(
                    "witnesses",
                    witnesses.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                )?;
            }
            FiberVerdict::Nonzero {
                component,
                degree,
                form,
            } => {
                d.set_item("verdict", "nonzero")?;
                d.set_item("component", component + 1)?;
                d.set_item("degree", degree)?;
                d.set_item("weight", form.to_string())?;
            }
            FiberVerdict::Inconclusive { bound } => {
                d.set_item("verdict", "inconclusive")?;
                d.set_item("bound", bound)?;
            }
        }
        Ok(d)
    }
}

/// Splits `q` into pieces `q_j` in `N cap V^Gamma_(s - C_j)`, one per index
/// of `ideal` (0-based coordinates of `W`). The certificate is verified and
/// replayed before the pieces are returned.
#[pyfunction]
fn flat_decompose(
    q: &Element,
    degree: Vec<i64>,
    cone: &BasicCone,
    ideal: Vec<usize>,
    basis: &StandardBasis,
) -> PyResult<Vec<Element>> {
    let cert = core::flat_decompose(&q.inner, &degree, &cone.inner, &ideal, &basis.inner, None)
        .map_err(algebra)?;
    cert.verify(&basis.inner).map_err(algebra)?;
    cert.replay(&basis.inner).map_err(algebra)?;
    Ok(cert
        .pieces
        .into_iter()
        .map(|inner| Element { inner })
        .collect())
}

/// Normalizes a relation `sum_i W^(a_i) Q_i = 0`; returns `R[i][p]` as text.
#[pyfunction]
fn kernel_normalize(
    exponents: Vec<Vec<u32>>,
    operators: Vec<String>,
    n: usize,
) -> PyResult<Vec<Vec<String>>> {
    let k = exponents.first().map_or(0, Vec::len);
    let ops = operators
        .iter()
        .map(|q| parse_w_operator(q, n, k))
        .collect::<Result<Vec<_>, _>>()
        .map_err(parse)?;
    let norm = core::kernel_normalize(&exponents, &ops).map_err(algebra)?;
    norm.verify().map_err(algebra)?;
    Ok(norm
        .r
        .iter()
        .map(|row| row.iter().map(|w| w.to_text()).collect())
        .collect())
}

/// Chain from `H` to the unit ideal; each step is the added monomial and
/// the coordinates `J` with `(H_i : m_i) = W_J`.
#[pyfunction]
fn monomial_chain(ideal: &str, k: usize) -> PyResult<Vec<(Vec<u32>, Vec<usize>)>> {
    let h = parse_monomial_ideal(ideal, k).map_err(parse)?;
    let chain = core::monomial_filtration(&h);
    chain.validate().map_err(algebra)?;
    Ok(chain
        .steps
        .into_iter()
        .map(|s| (s.monomial, s.coordinates))
        .collect())
}

#[pymodule]
fn dfan(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("AlgebraError", m.py().get_type::<AlgebraError>())?;
    m.add("ParseError", m.py().get_type::<ParseError>())?;
    m.add_class::<Operator>()?;
    m.add_class::<Element>()?;
    m.add_class::<BasicCone>()?;
    m.add_class::<StandardBasis>()?;
    m.add_class::<Fan>()?;
    m.add_class::<Module>()?;
    m.add_function(wrap_pyfunction!(flat_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_normalize, m)?)?;
    m.add_function(wrap_pyfunction!(monomial_chain, m)?)?;
    Ok(())
}
