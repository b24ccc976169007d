//! Python bindings for `fusionkit`.

use std::sync::Arc;

use fusionkit::adjoint_rules::{
    fuse as fuse_affine, fuse_tensor as fuse_finite, nontrivial_conditions,
};
use fusionkit::tadpole::{
    self, adjoint_formula, zero_formula, PiecewisePolynomial, TadpoleMethod, Q,
};
use fusionkit::weights::{affinize, enumerate_level as enumerate};
use fusionkit::{AlgebraId, Engine, Error, FusionDecomposition, RootSystem, Weight};
use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

create_exception!(
    fusionkit_py,
    FusionkitError,
    PyValueError,
    "Invalid input or out-of-domain request."
);
create_exception!(
    fusionkit_py,
    NoClosedFormError,
    FusionkitError,
    "No closed form exists for this algebra."
);

/// Python exception class an error maps to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ErrorClass {
    Input,
    NoClosedForm,
    Arithmetic,
}

fn classify(err: &Error) -> ErrorClass {
    match err {
        Error::NoClosedForm(_) => ErrorClass::NoClosedForm,
        Error::Overflow(_)
        | Error::NonIntegral { .. }
        | Error::NegativeMultiplicity { .. }
        | Error::FoldDiverged(_) => ErrorClass::Arithmetic,
        _ => ErrorClass::Input,
    }
}

fn py_err(err: Error) -> PyErr {
    let msg = err.to_string();
    match classify(&err) {
        ErrorClass::Input => FusionkitError::new_err(msg),
        ErrorClass::NoClosedForm => NoClosedFormError::new_err(msg),
        ErrorClass::Arithmetic => PyArithmeticError::new_err(msg),
    }
}

fn parse_engine(name: &str) -> Result<Engine, String> {
    match name {
        "rule" => Ok(Engine::Rule),
        "oracle" => Ok(Engine::Oracle),
        other => Err(format!(
            "unknown engine {other:?} (expected \"rule\" or \"oracle\")"
        )),
    }
}

fn parse_method(name: &str) -> Result<TadpoleMethod, String> {
    match name {
        "enum" => Ok(TadpoleMethod::Enumeration),
        "formula" => Ok(TadpoleMethod::Formula),
        "oracle" => Ok(TadpoleMethod::Oracle),
        other => Err(format!(
            "unknown method {other:?} (expected \"enum\", \"formula\" or \"oracle\")"
        )),
    }
}

fn entries(d: &FusionDecomposition) -> Vec<(Vec<i64>, u64)> {
    d.iter().map(|(w, m)| (w.labels().to_vec(), m)).collect()
}

fn ratio_string(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A simple Lie algebra with its root data.
#[pyclass(module = "fusionkit_py", name = "Algebra", frozen)]
struct PyAlgebra {
    rs: Arc<RootSystem>,
}

#[pymethods]
impl PyAlgebra {
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        let id: AlgebraId = name.parse().map_err(py_err)?;
        Ok(PyAlgebra {
            rs: RootSystem::shared(id).map_err(py_err)?,
        })
    }

    #[getter]
    fn name(&self) -> String {
        self.rs.algebra().to_string()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.rs.rank()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.rs.dimension()
    }

    #[getter]
    fn dual_coxeter(&self) -> i64 {
        self.rs.dual_coxeter()
    }

    /// Comarks `(1, m_1, ..., m_r)`.
    #[getter]
    fn comarks(&self) -> Vec<i64> {
        self.rs.comarks().to_vec()
    }

    /// Dynkin labels of the highest root.
    #[getter]
    fn highest_root(&self) -> Vec<i64> {
        self.rs.highest_root().labels().to_vec()
    }

    /// Positive roots in simple-root coordinates.
    fn positive_roots(&self) -> Vec<Vec<i64>> {
        self.rs
            .positive_roots()
            .iter()
            .map(|r| r.coords().to_vec())
            .collect()
    }

    /// `(root coords, index, threshold_plus, threshold_minus)` with a 0-based index.
    fn nontrivial_conditions(&self) -> Vec<(Vec<i64>, usize, u32, u32)> {
        nontrivial_conditions(&self.rs)
            .into_iter()
            .map(|c| {
                (
                    c.root.coords().to_vec(),
                    c.index,
                    c.threshold_plus,
                    c.threshold_minus,
                )
            })
            .collect()
    }

    /// Affine weights of the given level, as `(l0, l1, ..., lr)`.
    fn enumerate_level(&self, level: u64) -> Vec<Vec<i64>> {
        enumerate(&self.rs, level)
            .map(|w| w.labels().to_vec())
            .collect()
    }

    /// Fusion `mu x theta` at `level`, as `[(labels, multiplicity)]`.
    #[pyo3(signature = (level, labels, engine = "rule"))]
    fn fuse(
        &self,
        py: Python<'_>,
        level: u64,
        labels: Vec<i64>,
        engine: &str,
    ) -> PyResult<Vec<(Vec<i64>, u64)>> {
        let engine = parse_engine(engine).map_err(FusionkitError::new_err)?;
        let mu = affinize(&self.rs, &Weight::new(labels), level).map_err(py_err)?;
        let d = py
            .detach(|| fuse_affine(&self.rs, &mu, engine))
            .map_err(py_err)?;
        Ok(entries(&d))
    }

    /// Tensor product `mu x theta`, as `[(labels, multiplicity)]`.
    #[pyo3(signature = (labels, engine = "rule"))]
    fn tensor(
        &self,
        py: Python<'_>,
        labels: Vec<i64>,
        engine: &str,
    ) -> PyResult<Vec<(Vec<i64>, u64)>> {
        let engine = parse_engine(engine).map_err(FusionkitError::new_err)?;
        let mu = Weight::new(labels);
        let d = py
            .detach(|| fuse_finite(&self.rs, &mu, engine))
            .map_err(py_err)?;
        Ok(entries(&d))
    }

    /// `T_theta`, or `T_0` with `zero=True`.
    #[pyo3(signature = (level, method = "enum", zero = false))]
    fn tadpole(&self, py: Python<'_>, level: u64, method: &str, zero: bool) -> PyResult<u128> {
        let method = parse_method(method).map_err(FusionkitError::new_err)?;
        let id = self.rs.algebra();
        let report = py
            .detach(|| tadpole::tadpole(id, level, method, zero))
            .map_err(py_err)?;
        Ok(report.value)
    }

    /// `T_{theta+0}`: nonzero affine labels summed over all weights of the level.
    fn theta_plus_zero(&self, py: Python<'_>, level: u64) -> PyResult<u128> {
        py.detach(|| tadpole::theta_plus_zero(&self.rs, level))
            .map_err(py_err)
    }

    /// Closed form for `T_theta`, or `T_0` with `zero=True`.
    #[pyo3(signature = (zero = false))]
    fn closed_form(&self, zero: bool) -> PyResult<PyClosedForm> {
        let id = self.rs.algebra();
        let form = if zero {
            zero_formula(id)
        } else {
            adjoint_formula(id)
        }
        .map_err(py_err)?;
        Ok(PyClosedForm { form })
    }

    fn __repr__(&self) -> String {
        format!("Algebra('{}')", self.rs.algebra())
    }
}

/// A quasi-polynomial in the level: one polynomial in `J` per residue of
/// `k = period * J + residue`.
#[pyclass(module = "fusionkit_py", name = "ClosedForm", frozen)]
struct PyClosedForm {
    form: PiecewisePolynomial,
}

#[pymethods]
impl PyClosedForm {
    #[getter]
    fn period(&self) -> u64 {
        self.form.period()
    }

    /// Branch polynomials as strings in `J`.
    fn branches(&self) -> Vec<String> {
        self.form
            .branches()
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    /// Coefficients of one branch, lowest degree first, as exact strings.
    fn coefficients(&self, residue: u64) -> PyResult<Vec<String>> {
        if residue >= self.form.period() {
            return Err(FusionkitError::new_err(format!(
                "residue {residue} >= period {}",
                self.form.period()
            )));
        }
        Ok(self
            .form
            .branch(residue)
            .coefficients()
            .iter()
            .map(ratio_string)
            .collect())
    }

    fn branch_name(&self, level: u64) -> String {
        self.form.branch_name(level)
    }

    fn __call__(&self, level: u64) -> PyResult<u128> {
        self.form.eval(level).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "ClosedForm('{}', period={})",
            self.form.algebra(),
            self.form.period()
        )
    }
}

/// Falling power `x (x-1) ... (x-m+1)` of the rational `num/den`, as `(num, den)`.
#[pyfunction]
#[pyo3(signature = (num, m, den = 1))]
fn falling_power(num: i128, m: u32, den: i128) -> PyResult<(i128, i128)> {
    if den == 0 {
        return Err(FusionkitError::new_err("zero denominator"));
    }
    let v = tadpole::falling_power(Q::new(num, den), m).map_err(py_err)?;
    Ok((*v.numer(), *v.denom()))
}

/// Names of every supported algebra up to the given rank.
#[pyfunction]
#[pyo3(signature = (max_rank = 8))]
fn algebras(max_rank: usize) -> Vec<String> {
    AlgebraId::all_up_to(max_rank)
        .iter()
        .map(ToString::to_string)
        .collect()
}

#[pymodule]
fn fusionkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyClosedForm>()?;
    m.add_function(wrap_pyfunction!(falling_power, m)?)?;
    m.add_function(wrap_pyfunction!(algebras, m)?)?;
    m.add("FusionkitError", m.py().get_type::<FusionkitError>())?;
    m.add("NoClosedFormError", m.py().get_type::<NoClosedFormError>())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn engine_and_method_names() {
        assert_eq!(parse_engine("rule"), Ok(Engine::Rule));
        assert_eq!(parse_engine("oracle"), Ok(Engine::Oracle));
        assert!(parse_engine("Rule").is_err());
        for m in [
            TadpoleMethod::Enumeration,
            TadpoleMethod::Formula,
            TadpoleMethod::Oracle,
        ] {
            assert_eq!(parse_method(m.name()), Ok(m));
        }
        assert!(parse_method("all").is_err());
    }

    #[test]
    fn error_classes() {
        let g2: AlgebraId = "G2".parse().unwrap();
        assert_eq!(classify(&Error::NoClosedForm(g2)), ErrorClass::NoClosedForm);
        assert_eq!(classify(&Error::Overflow("x")), ErrorClass::Arithmetic);
        assert_eq!(
            classify(&Error::UnknownAlgebra("Q1".into())),
            ErrorClass::Input
        );
        assert_eq!(classify(&Error::LevelMismatch(3, 2)), ErrorClass::Input);
    }

    #[test]
    fn ratio_strings() {
        assert_eq!(ratio_string(&Q::new(6, 3)), "2");
        assert_eq!(ratio_string(&Q::new(-3, 6)), "-1/2");
    }

    #[test]
    fn entries_are_sorted_labels() {
        let rs = RootSystem::build("A1".parse().unwrap()).unwrap();
        let mu = affinize(&rs, &Weight::new(vec![2]), 2).unwrap();
        let d = fuse_affine(&rs, &mu, Engine::Rule).unwrap();
        assert_eq!(entries(&d), vec![(vec![0], 1)]);
    }
}
