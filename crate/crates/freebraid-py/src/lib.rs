//! Python bindings: thin string-based wrappers over the core library.
//! Inputs use the same textual syntax as the command line, outputs come
//! back as strings, tuples, or JSON documents.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use freebraid::autos::{compose, tame_decompose};
use freebraid::braided_autos::{
    classify_aut_group, is_braided_automorphism, witness_suite, CheckMethod,
};
use freebraid::braiding::{
    braided_isomorphic, canonical_form, dual_braiding, extend_braiding, yang_baxter_check,
    DiagonalBraiding, ExtensionMethod, TensorElement,
};
use freebraid::parse::{parse_braiding, parse_endomorphism, parse_poly};
use freebraid::scalar::FieldSpec;
use freebraid::Endomorphism;

fn err(e: freebraid::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field_of(name: &str) -> PyResult<FieldSpec> {
    if name.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(p) = name.strip_prefix("fp:") {
        let p: u64 = p
            .parse()
            .map_err(|_| PyValueError::new_err(format!("bad prime in '{name}'")))?;
        return FieldSpec::prime_field(p).map_err(err);
    }
    Err(PyValueError::new_err(format!(
        "expected field 'q' or 'fp:P', got '{name}'"
    )))
}

/// A diagonal braiding together with every decision procedure that takes one.
#[pyclass(frozen)]
struct Braiding {
    inner: DiagonalBraiding,
}

#[pymethods]
impl Braiding {
    #[new]
    #[pyo3(signature = (text, field = "q"))]
    fn new(text: &str, field: &str) -> PyResult<Self> {
        let inner = parse_braiding(text, field_of(field)?).map_err(err)?;
        Ok(Braiding { inner })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Braiding({})", self.inner)
    }

    fn n(&self) -> usize {
        self.inner.n()
    }

    fn is_involutive(&self) -> bool {
        self.inner.is_involutive()
    }

    fn yang_baxter(&self) -> bool {
        yang_baxter_check(&self.inner)
    }

    fn dual(&self) -> PyResult<Braiding> {
        Ok(Braiding { inner: dual_braiding(&self.inner).map_err(err)? })
    }

    fn canonical(&self) -> PyResult<Braiding> {
        Ok(Braiding { inner: canonical_form(&self.inner).map_err(err)? })
    }

    fn isomorphic(&self, other: &Braiding) -> PyResult<bool> {
        braided_isomorphic(&self.inner, &other.inner).map_err(err)
    }

    /// Name and description of the braided automorphism group.
    fn classify(&self) -> PyResult<(String, String)> {
        let kind = classify_aut_group(&self.inner).map_err(err)?;
        Ok((kind.name().to_string(), kind.description().to_string()))
    }

    /// Extends the braiding to `left (x) right` and returns the terms as
    /// `(coefficient, left, right)` string triples.
    #[pyo3(signature = (left, right, method = "closed"))]
    fn extend(&self, left: &str, right: &str, method: &str) -> PyResult<Vec<(String, String, String)>> {
        let field = self.inner.field();
        let n = self.inner.n();
        let l = parse_poly(left, n, field).map_err(err)?;
        let r = parse_poly(right, n, field).map_err(err)?;
        let m = match method {
            "operator" => ExtensionMethod::Operator,
            "closed" => ExtensionMethod::ClosedForm,
            other => {
                return Err(PyValueError::new_err(format!(
                    "expected method 'operator' or 'closed', got '{other}'"
                )))
            }
        };
        let split = TensorElement::from_split(&l, &r).map_err(err)?;
        let mut out = TensorElement::zero(n, field);
        for ((u, v), c) in split.terms() {
            for ((a, b), d) in extend_braiding(u, v, &self.inner, m).map_err(err)?.terms() {
                out.add_term(a.clone(), b.clone(), c.mul(d));
            }
        }
        Ok(out
            .terms()
            .map(|((a, b), c)| (c.to_string(), a.to_string(), b.to_string()))
            .collect())
    }

    /// Whether `phi` (parsed in this braiding's field) is an automorphism of
    /// the braided algebra, by the bicharacter test or the truncated oracle.
    #[pyo3(signature = (phi, method = "bicharacter", truncation = None))]
    fn check_automorphism(&self, phi: &str, method: &str, truncation: Option<usize>) -> PyResult<bool> {
        let phi = parse_endomorphism(phi, self.inner.field()).map_err(err)?;
        let m = match method {
            "bicharacter" => CheckMethod::Bicharacter,
            "oracle" => CheckMethod::TruncatedOracle(truncation),
            other => {
                return Err(PyValueError::new_err(format!(
                    "expected method 'bicharacter' or 'oracle', got '{other}'"
                )))
            }
        };
        is_braided_automorphism(&phi, &self.inner, m).map_err(err)
    }

    /// Runs the randomized membership witness and returns the report as a
    /// JSON document.
    #[pyo3(signature = (seed, members = 5, truncation = None))]
    fn witness(&self, seed: u64, members: usize, truncation: Option<usize>) -> PyResult<String> {
        let report = witness_suite(&self.inner, seed, members, truncation).map_err(err)?;
        serde_json::to_string_pretty(&report)
            .map_err(|e| PyValueError::new_err(format!("report serialization failed: {e}")))
    }
}

/// An endomorphism of the free algebra on two generators.
#[pyclass(frozen)]
struct Endo {
    inner: Endomorphism,
}

#[pymethods]
impl Endo {
    #[new]
    #[pyo3(signature = (text, field = "q"))]
    fn new(text: &str, field: &str) -> PyResult<Self> {
        let inner = parse_endomorphism(text, field_of(field)?).map_err(err)?;
        Ok(Endo { inner })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Endo({})", self.inner)
    }

    /// `self` followed by `other`.
    fn compose(&self, other: &Endo) -> PyResult<Endo> {
        Ok(Endo { inner: compose(&self.inner, &other.inner).map_err(err)? })
    }

    /// Elementary factors as `(target, scale, addend)` string triples in
    /// application order, or `None` when the map is not a tame automorphism.
    fn decompose(&self) -> PyResult<Option<Vec<(u8, String, String)>>> {
        let dec = match tame_decompose(&self.inner).map_err(err)? {
            Some(d) => d,
            None => return Ok(None),
        };
        Ok(Some(
            dec.factors
                .iter()
                .map(|f| (f.target(), f.scale().to_string(), f.addend().to_string()))
                .collect(),
        ))
    }
}

#[pymodule]
fn freebraid_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Braiding>()?;
    m.add_class::<Endo>()?;
    Ok(())
}
