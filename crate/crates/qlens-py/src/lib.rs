//! Python bindings: exact q-arithmetic, the sphere algebra verifications,
//! integer Smith normal form, and the lens space K-theory pipeline.

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use qlens::gysin;
use qlens::intlin::{self, CokerOrder, IntMatrix};
use qlens::kring;
use qlens::ncalg::{self, AlgebraError, RewriteBudget};
use qlens::qcoeff;

fn budget(limit: Option<u64>) -> RewriteBudget {
    limit.map(RewriteBudget::new).unwrap_or_default()
}

fn algebra_err(e: AlgebraError) -> PyErr {
    match e {
        AlgebraError::BudgetExhausted { .. } => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// Exact Laurent polynomial in `s` with `s**2 = q`.
#[pyclass(frozen, skip_from_py_object, name = "HalfLaurent")]
#[derive(Clone)]
struct PyHalfLaurent {
    inner: qcoeff::HalfLaurent,
}

#[pymethods]
impl PyHalfLaurent {
    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("HalfLaurent({})", self.inner)
    }

    fn __eq__(&self, other: &PyHalfLaurent) -> bool {
        self.inner == other.inner
    }

    fn __add__(&self, other: &PyHalfLaurent) -> PyHalfLaurent {
        PyHalfLaurent {
            inner: &self.inner + &other.inner,
        }
    }

    fn __mul__(&self, other: &PyHalfLaurent) -> PyHalfLaurent {
        PyHalfLaurent {
            inner: &self.inner * &other.inner,
        }
    }

    /// Substitute s = 1 (the classical limit); returns (numerator, denominator).
    fn eval_at_one(&self) -> (BigInt, BigInt) {
        let v = self.inner.eval_at_one();
        (v.numer().clone(), v.denom().clone())
    }

    /// Terms as a list of (exponent of s, numerator, denominator).
    fn terms(&self) -> Vec<(i64, BigInt, BigInt)> {
        self.inner
            .iter()
            .map(|(e, c)| (*e, c.numer().clone(), c.denom().clone()))
            .collect()
    }
}

/// The balanced q-integer [m].
#[pyfunction]
fn qint(m: i64) -> PyHalfLaurent {
    PyHalfLaurent {
        inner: qcoeff::qint(m),
    }
}

/// The q-factorial [m]!.
#[pyfunction]
fn qfact(m: u32) -> PyHalfLaurent {
    PyHalfLaurent {
        inner: qcoeff::qfact(m),
    }
}

/// The q-multinomial [j_0, ..., j_k]!.
#[pyfunction]
fn qmultinomial(parts: Vec<u32>) -> PyHalfLaurent {
    PyHalfLaurent {
        inner: qcoeff::qmultinomial(&parts),
    }
}

/// Element of the quantum sphere coordinate algebra in normal form.
#[pyclass(frozen, skip_from_py_object, name = "NCPoly")]
#[derive(Clone)]
struct PyNCPoly {
    inner: ncalg::NCPoly,
}

#[pymethods]
impl PyNCPoly {
    /// The generator z_index (or its adjoint) in the sphere of dimension 2n+1.
    #[staticmethod]
    #[pyo3(signature = (n, index, starred = false))]
    fn generator(n: u8, index: u8, starred: bool) -> PyResult<PyNCPoly> {
        if index > n {
            return Err(PyValueError::new_err(format!(
                "generator index {index} exceeds ambient bound {n}"
            )));
        }
        Ok(PyNCPoly {
            inner: ncalg::NCPoly::generator(n, index, starred),
        })
    }

    #[staticmethod]
    fn one(n: u8) -> PyNCPoly {
        PyNCPoly {
            inner: ncalg::NCPoly::one(n),
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("NCPoly({})", self.inner)
    }

    fn __eq__(&self, other: &PyNCPoly) -> bool {
        self.inner == other.inner
    }

    fn __add__(&self, other: &PyNCPoly) -> PyResult<PyNCPoly> {
        if self.inner.ambient() != other.inner.ambient() {
            return Err(PyValueError::new_err("ambient bound mismatch"));
        }
        Ok(PyNCPoly {
            inner: &self.inner + &other.inner,
        })
    }

    fn __sub__(&self, other: &PyNCPoly) -> PyResult<PyNCPoly> {
        if self.inner.ambient() != other.inner.ambient() {
            return Err(PyValueError::new_err("ambient bound mismatch"));
        }
        Ok(PyNCPoly {
            inner: &self.inner - &other.inner,
        })
    }

    #[pyo3(signature = (other, budget = None))]
    fn mul(&self, other: &PyNCPoly, budget: Option<u64>) -> PyResult<PyNCPoly> {
        self.inner
            .mul(&other.inner, self::budget(budget))
            .map(|inner| PyNCPoly { inner })
            .map_err(algebra_err)
    }

    fn adjoint(&self) -> PyNCPoly {
        PyNCPoly {
            inner: self.inner.adjoint(),
        }
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_one(&self) -> bool {
        self.inner.is_one()
    }

    /// Circle-action weight, or None when the element is inhomogeneous.
    fn u1_degree(&self) -> Option<i64> {
        self.inner.u1_degree()
    }

    fn zr_invariant(&self, r: u32) -> bool {
        self.inner.zr_invariant(r)
    }
}

#[pyfunction]
#[pyo3(signature = (n, degree, budget = None))]
fn verify_isometry(n: u8, degree: i64, budget: Option<u64>) -> PyResult<bool> {
    ncalg::verify_isometry(n, degree, self::budget(budget)).map_err(algebra_err)
}

#[pyfunction]
#[pyo3(signature = (n, degree, budget = None))]
fn verify_projection(n: u8, degree: i64, budget: Option<u64>) -> PyResult<bool> {
    ncalg::verify_projection(n, degree, self::budget(budget)).map_err(algebra_err)
}

#[pyfunction]
#[pyo3(signature = (n, budget = None))]
fn verify_qtrace(n: u8, budget: Option<u64>) -> PyResult<bool> {
    ncalg::verify_qtrace(n, self::budget(budget)).map_err(algebra_err)
}

#[pyfunction]
#[pyo3(signature = (n, r, index, budget = None))]
fn verify_partial_isometry(n: u8, r: u32, index: i64, budget: Option<u64>) -> PyResult<bool> {
    ncalg::verify_partial_isometry(n, r, index, self::budget(budget)).map_err(algebra_err)
}

#[pyfunction]
#[pyo3(signature = (n, r, degree, budget = None))]
fn hopf_galois_witness(n: u8, r: u32, degree: u32, budget: Option<u64>) -> PyResult<bool> {
    ncalg::hopf_galois_witness(n, r, degree, self::budget(budget)).map_err(algebra_err)
}

/// Coefficients of the class of the degree-N line bundle in 1, u, ..., u^n.
#[pyfunction]
fn line_bundle_class(n: usize, degree: i64) -> Vec<BigInt> {
    kring::line_bundle_class(n, degree).coeffs().to_vec()
}

/// Coefficients of the Euler class 1 - (1-u)^r.
#[pyfunction]
fn euler_class(n: usize, r: u64) -> PyResult<Vec<BigInt>> {
    if r < 1 {
        return Err(PyValueError::new_err("r must be at least 1"));
    }
    Ok(kring::euler_class(n, r).coeffs().to_vec())
}

/// Pairing of mu_k with the element whose u-coefficients are given.
#[pyfunction]
fn pair_mu(k: usize, coeffs: Vec<BigInt>) -> PyResult<BigInt> {
    if coeffs.is_empty() {
        return Err(PyValueError::new_err("empty coefficient vector"));
    }
    let x = kring::TruncPoly::from_coeffs(coeffs.len() - 1, &coeffs);
    kring::pair_mu(k, &x).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn to_matrix(rows: Vec<Vec<BigInt>>) -> PyResult<IntMatrix> {
    if rows.is_empty() || rows[0].is_empty() {
        return Err(PyValueError::new_err("matrix must be nonempty"));
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err("ragged rows"));
    }
    let mut m = IntMatrix::zero(rows.len(), cols);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            m[(i, j)] = v.clone();
        }
    }
    Ok(m)
}

fn from_matrix(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].clone()).collect())
        .collect()
}

type SnfTuple = (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<BigInt>);

/// Smith normal form with certificates: returns (d, p, q, alphas) with
/// p * a * q = d.
#[pyfunction]
fn smith_normal_form(rows: Vec<Vec<BigInt>>) -> PyResult<SnfTuple> {
    let a = to_matrix(rows)?;
    let s = intlin::snf(&a);
    Ok((
        from_matrix(&s.d),
        from_matrix(&s.p),
        from_matrix(&s.q),
        s.alphas,
    ))
}

/// Order of the class of v in Z^rows / Im(A); None means infinite order.
#[pyfunction]
fn coker_order(rows: Vec<Vec<BigInt>>, v: Vec<BigInt>) -> PyResult<Option<BigInt>> {
    let a = to_matrix(rows)?;
    match intlin::coker_order(&a, &v).map_err(|e| PyValueError::new_err(e.to_string()))? {
        CokerOrder::Finite(t) => Ok(Some(t)),
        CokerOrder::Infinite => Ok(None),
    }
}

/// Integer solution x of A x = v, or None when v is outside the image.
#[pyfunction]
fn image_membership(rows: Vec<Vec<BigInt>>, v: Vec<BigInt>) -> PyResult<Option<Vec<BigInt>>> {
    let a = to_matrix(rows)?;
    intlin::image_membership(&a, &v).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Basis of the integer kernel lattice of A.
#[pyfunction]
fn kernel_basis(rows: Vec<Vec<BigInt>>) -> PyResult<Vec<Vec<BigInt>>> {
    Ok(intlin::kernel_basis(&to_matrix(rows)?))
}

/// The Euler multiplication matrix for (n, r).
#[pyfunction]
fn euler_mult_matrix(n: usize, r: u64) -> PyResult<Vec<Vec<BigInt>>> {
    if n < 1 || r < 1 {
        return Err(PyValueError::new_err("need n >= 1 and r >= 1"));
    }
    Ok(from_matrix(&gysin::euler_mult_matrix(n, r)))
}

/// K-theory of the lens space of dimension 2n+1 and index r.
#[pyclass(frozen, name = "KTheoryResult")]
struct PyKTheoryResult {
    #[pyo3(get)]
    n: usize,
    #[pyo3(get)]
    r: u64,
    #[pyo3(get)]
    k0: String,
    #[pyo3(get)]
    k1: String,
    #[pyo3(get)]
    invariant_factors: Vec<BigInt>,
    #[pyo3(get)]
    torsion: Vec<BigInt>,
    #[pyo3(get)]
    kernel_basis: Vec<Vec<BigInt>>,
    /// (expression, order) pairs read off the Smith transform.
    #[pyo3(get)]
    auto_generators: Vec<(String, BigInt)>,
}

#[pymethods]
impl PyKTheoryResult {
    fn __repr__(&self) -> String {
        format!(
            "KTheoryResult(n={}, r={}, K0='{}', K1='{}')",
            self.n, self.r, self.k0, self.k1
        )
    }
}

#[pyfunction]
fn compute_ktheory(n: usize, r: u64) -> PyResult<PyKTheoryResult> {
    let k = gysin::compute_ktheory(n, r).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(PyKTheoryResult {
        n: k.n,
        r: k.r,
        k0: k.k0_display(),
        k1: k.k1_display(),
        invariant_factors: k.invariant_factors.clone(),
        torsion: k.torsion(),
        kernel_basis: k.kernel_basis.clone(),
        auto_generators: k
            .auto_generators
            .iter()
            .map(|(e, o)| (e.to_string(), o.clone()))
            .collect(),
    })
}

/// Tabulated torsion generator claims for n in {1, 2, 3} as
/// (expression, claimed order) pairs.
#[pyfunction]
fn generator_claims(n: usize, r: u64) -> PyResult<Vec<(String, BigInt)>> {
    match gysin::generator_claims(n, r) {
        Some(claims) => Ok(claims
            .iter()
            .map(|c| (c.expr.to_string(), c.claimed_order.clone()))
            .collect()),
        None => Err(PyValueError::new_err(format!(
            "no tabulated generators for n = {n}"
        ))),
    }
}

/// Check the tabulated claims: returns (per-claim (expr, claimed, computed,
/// ok) tuples, whether the claims generate the torsion subgroup).
type ClaimRows = Vec<(String, BigInt, String, bool)>;

#[pyfunction]
fn verify_generator_claims(n: usize, r: u64) -> PyResult<(ClaimRows, bool)> {
    let claims = gysin::generator_claims(n, r)
        .ok_or_else(|| PyValueError::new_err(format!("no tabulated generators for n = {n}")))?;
    let report = gysin::verify_generator_claims(n, r, &claims)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    let rows = report
        .checks
        .iter()
        .map(|c| {
            let computed = match &c.computed_order {
                CokerOrder::Finite(t) => t.to_string(),
                CokerOrder::Infinite => "infinite".to_string(),
            };
            (
                c.claim.expr.to_string(),
                c.claim.claimed_order.clone(),
                computed,
                c.order_matches,
            )
        })
        .collect();
    Ok((rows, report.generates_torsion))
}

#[pymodule]
fn qlens_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHalfLaurent>()?;
    m.add_class::<PyNCPoly>()?;
    m.add_class::<PyKTheoryResult>()?;
    m.add_function(wrap_pyfunction!(qint, m)?)?;
    m.add_function(wrap_pyfunction!(qfact, m)?)?;
    m.add_function(wrap_pyfunction!(qmultinomial, m)?)?;
    m.add_function(wrap_pyfunction!(verify_isometry, m)?)?;
    m.add_function(wrap_pyfunction!(verify_projection, m)?)?;
    m.add_function(wrap_pyfunction!(verify_qtrace, m)?)?;
    m.add_function(wrap_pyfunction!(verify_partial_isometry, m)?)?;
    m.add_function(wrap_pyfunction!(hopf_galois_witness, m)?)?;
    m.add_function(wrap_pyfunction!(line_bundle_class, m)?)?;
    m.add_function(wrap_pyfunction!(euler_class, m)?)?;
    m.add_function(wrap_pyfunction!(pair_mu, m)?)?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(coker_order, m)?)?;
    m.add_function(wrap_pyfunction!(image_membership, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_basis, m)?)?;
    m.add_function(wrap_pyfunction!(euler_mult_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(compute_ktheory, m)?)?;
    m.add_function(wrap_pyfunction!(generator_claims, m)?)?;
    m.add_function(wrap_pyfunction!(verify_generator_claims, m)?)?;
    Ok(())
}
