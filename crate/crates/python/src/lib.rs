//! Python bindings. Exact integers cross as Python ints; an infinite
//! index or distance comes back as `None`. Structured reports are returned
//! as JSON text.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::Value;

use hyperballean::ballean::{
    exp_ball_enumerate, exp_ball_membership, mu_set_distance, FiniteSubset,
};
use hyperballean::exactmat::{self, IntMatrix};
use hyperballean::groups::{
    all_subgroups, asdim_classify, component_census, fag_log_distance, iso_points_classify,
    Element, FagSubgroup, Family, FiniteAbelianGroup, GroupDescriptor,
};
use hyperballean::lattice::{ExtNat, Lattice};
use hyperballean::verify::{run_suite, VerifyConfig};
use hyperballean::witnesses::{self, PrimeTuple, TaxiPoint};

fn err(e: hyperballean::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn ext(v: ExtNat) -> Option<BigUint> {
    v.as_finite().cloned()
}

fn matrix(rows: &[Vec<BigInt>]) -> PyResult<IntMatrix> {
    IntMatrix::from_rows(rows).map_err(err)
}

fn dump(v: &Value) -> String {
    serde_json::to_string(v).expect("json")
}

fn descriptor(text: &str) -> PyResult<GroupDescriptor> {
    let v: Value = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
    GroupDescriptor::from_json(&v).map_err(err)
}

/// A subgroup of Z^n given by generator rows.
#[pyclass(
    name = "Lattice",
    module = "pyballean",
    frozen,
    eq,
    skip_from_py_object
)]
#[derive(Clone, PartialEq)]
struct PyLattice {
    inner: Lattice,
}

#[pymethods]
impl PyLattice {
    #[new]
    fn new(ambient: usize, rows: Vec<Vec<BigInt>>) -> PyResult<Self> {
        let m = IntMatrix::from_rows_with_cols(&rows, ambient).map_err(err)?;
        Ok(Self {
            inner: Lattice::from_generators(ambient, &m).map_err(err)?,
        })
    }

    /// kZ inside Z.
    #[staticmethod]
    fn multiples(k: BigInt) -> Self {
        Self {
            inner: Lattice::multiples(k),
        }
    }

    #[getter]
    fn ambient(&self) -> usize {
        self.inner.ambient()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// Canonical basis rows (row Hermite form).
    fn basis(&self) -> Vec<Vec<BigInt>> {
        self.inner.basis().to_rows()
    }

    fn contains(&self, x: Vec<BigInt>) -> PyResult<bool> {
        self.inner.member(&x).map_err(err)
    }

    fn saturation(&self) -> Self {
        Self {
            inner: self.inner.saturation(),
        }
    }

    fn intersection(&self, other: &PyLattice) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.intersection(&other.inner).map_err(err)?,
        })
    }

    fn sum(&self, other: &PyLattice) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.sum(&other.inner).map_err(err)?,
        })
    }

    fn index_in(&self, sup: &PyLattice) -> PyResult<Option<BigUint>> {
        self.inner.index_in(&sup.inner).map(ext).map_err(err)
    }

    fn commensurable(&self, other: &PyLattice) -> PyResult<bool> {
        self.inner.commensurable(&other.inner).map_err(err)
    }

    /// max of the two indices over the intersection, or None.
    fn mu(&self, other: &PyLattice) -> PyResult<Option<BigUint>> {
        self.inner
            .log_subgroup_distance(&other.inner)
            .map(ext)
            .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Lattice({})", self.inner)
    }
}

/// Subgroup of a finite abelian group.
#[pyclass(
    name = "Subgroup",
    module = "pyballean",
    frozen,
    eq,
    skip_from_py_object
)]
#[derive(Clone, PartialEq)]
struct PySubgroup {
    inner: FagSubgroup,
}

#[pymethods]
impl PySubgroup {
    #[getter]
    fn order(&self) -> u64 {
        self.inner.order()
    }

    fn elements(&self) -> Vec<Element> {
        self.inner.elements()
    }

    fn contains(&self, x: Element) -> PyResult<bool> {
        self.inner.contains(&x).map_err(err)
    }

    fn mu(&self, other: &PySubgroup) -> PyResult<Option<BigUint>> {
        fag_log_distance(&self.inner, &other.inner)
            .map(ext)
            .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Subgroup({})", self.inner)
    }
}

/// Z(m1) + ... + Z(mk) with m1 | m2 | ... | mk.
#[pyclass(
    name = "FiniteAbelianGroup",
    module = "pyballean",
    frozen,
    eq,
    skip_from_py_object
)]
#[derive(Clone, PartialEq)]
struct PyGroup {
    inner: FiniteAbelianGroup,
}

impl PyGroup {
    fn subset(&self, elems: Vec<Vec<i64>>) -> PyResult<FiniteSubset<FiniteAbelianGroup>> {
        let elems = elems
            .iter()
            .map(|e| self.inner.normalize(e))
            .collect::<hyperballean::Result<Vec<_>>>()
            .map_err(err)?;
        FiniteSubset::new(&self.inner, elems).map_err(err)
    }

    fn elems(&self, elems: Vec<Vec<i64>>) -> PyResult<Vec<Element>> {
        elems
            .iter()
            .map(|e| self.inner.normalize(e))
            .collect::<hyperballean::Result<Vec<_>>>()
            .map_err(err)
    }
}

#[pymethods]
impl PyGroup {
    #[new]
    fn new(factors: Vec<u64>) -> PyResult<Self> {
        Ok(Self {
            inner: FiniteAbelianGroup::new(factors).map_err(err)?,
        })
    }

    #[getter]
    fn factors(&self) -> Vec<u64> {
        self.inner.factors().to_vec()
    }

    #[getter]
    fn order(&self) -> u64 {
        self.inner.order()
    }

    fn subgroup(&self, gens: Vec<Vec<i64>>) -> PyResult<PySubgroup> {
        let gens = self.elems(gens)?;
        Ok(PySubgroup {
            inner: FagSubgroup::from_elements(&self.inner, &gens).map_err(err)?,
        })
    }

    fn subgroups(&self) -> Vec<PySubgroup> {
        all_subgroups(&self.inner)
            .into_iter()
            .map(|inner| PySubgroup { inner })
            .collect()
    }

    /// Covering distance μ(Y, Z) between nonempty finite subsets.
    fn mu(&self, y: Vec<Vec<i64>>, z: Vec<Vec<i64>>) -> PyResult<Option<BigUint>> {
        let r = mu_set_distance(&self.subset(y)?, &self.subset(z)?).map_err(err)?;
        Ok(ext(r.mu))
    }

    /// Every Z in the exp-ball around Y with radius F.
    fn exp_ball(&self, y: Vec<Vec<i64>>, radius: Vec<Vec<i64>>) -> PyResult<Vec<Vec<Element>>> {
        let r = self.elems(radius)?;
        let ball = exp_ball_enumerate(&self.subset(y)?, &r).map_err(err)?;
        Ok(ball
            .into_iter()
            .map(|s| s.elems().iter().cloned().collect())
            .collect())
    }

    fn in_exp_ball(
        &self,
        z: Vec<Vec<i64>>,
        y: Vec<Vec<i64>>,
        radius: Vec<Vec<i64>>,
    ) -> PyResult<bool> {
        let r = self.elems(radius)?;
        exp_ball_membership(&self.subset(z)?, &self.subset(y)?, &r).map_err(err)
    }

    /// The cyclic-subgroup tree of a p-group, as JSON.
    fn cyclic_tree(&self) -> PyResult<String> {
        Ok(dump(
            &witnesses::cyclic_subgroup_tree(&self.inner)
                .map_err(err)?
                .to_json(),
        ))
    }

    fn __repr__(&self) -> String {
        format!("FiniteAbelianGroup({})", self.inner)
    }
}

#[pyfunction]
fn row_hnf(rows: Vec<Vec<BigInt>>) -> PyResult<Vec<Vec<BigInt>>> {
    Ok(exactmat::row_hnf(&matrix(&rows)?).to_rows())
}

/// Nonzero invariant factors.
#[pyfunction]
fn snf(rows: Vec<Vec<BigInt>>) -> PyResult<Vec<BigInt>> {
    Ok(exactmat::snf(&matrix(&rows)?))
}

#[pyfunction]
fn abs_det(rows: Vec<Vec<BigInt>>) -> PyResult<BigInt> {
    exactmat::abs_det(&matrix(&rows)?).map_err(err)
}

/// μ′ between the images of two exponent vectors, from the closed form.
#[pyfunction]
fn dlog(primes: Vec<u64>, m: Vec<u64>, m2: Vec<u64>) -> PyResult<Option<BigUint>> {
    let pt = PrimeTuple::new(&primes).map_err(err)?;
    witnesses::dlog_closed_form(&pt, &TaxiPoint { coords: m }, &TaxiPoint { coords: m2 })
        .map(ext)
        .map_err(err)
}

/// The lattice of Z^n generated by p_i^{m_i} e_i.
#[pyfunction]
fn iota(primes: Vec<u64>, m: Vec<u64>) -> PyResult<PyLattice> {
    let pt = PrimeTuple::new(&primes).map_err(err)?;
    Ok(PyLattice {
        inner: witnesses::iota(&pt, &TaxiPoint { coords: m }).map_err(err)?,
    })
}

#[pyfunction]
fn lz_exp_ball(n: u64, m: u64) -> PyResult<Vec<u64>> {
    witnesses::lz_exp_ball(n, m).map_err(err)
}

#[pyfunction]
fn lz_log_ball(n: u64, k: u64) -> PyResult<Vec<u64>> {
    witnesses::lz_log_ball(n, k).map_err(err)
}

/// Levels of the ball; the whole group never lies in a ball around H_n.
#[pyfunction]
fn prufer_ball(p: u64, n: u32, k: u64) -> PyResult<Vec<String>> {
    Ok(witnesses::prufer_ball(p, n, k)
        .map_err(err)?
        .iter()
        .map(ToString::to_string)
        .collect())
}

#[pyfunction]
fn asdim(descriptor_json: &str) -> PyResult<String> {
    let c = asdim_classify(&descriptor(descriptor_json)?).map_err(err)?;
    let mut v = c.report.to_json();
    v["reason"] = Value::from(c.reason);
    Ok(dump(&v))
}

#[pyfunction]
fn iso_points(descriptor_json: &str) -> PyResult<String> {
    Ok(dump(
        &iso_points_classify(&descriptor(descriptor_json)?)
            .map_err(err)?
            .to_json(),
    ))
}

#[pyfunction]
fn components(descriptor_json: &str) -> PyResult<String> {
    let f = Family::from_descriptor(&descriptor(descriptor_json)?).map_err(err)?;
    Ok(dump(&component_census(&f).map_err(err)?.to_json()))
}

/// Runs a verification suite and returns its reports as a JSON list.
#[pyfunction]
#[pyo3(signature = (suite = "all", seed = 0, max_coord = None, primes = None))]
fn verify(
    py: Python<'_>,
    suite: &str,
    seed: u64,
    max_coord: Option<u64>,
    primes: Option<Vec<u64>>,
) -> PyResult<String> {
    let cfg = VerifyConfig {
        seed,
        max_coord,
        primes,
    };
    let suite = suite.to_string();
    let reports = py.detach(|| run_suite(&suite, &cfg)).map_err(err)?;
    Ok(dump(&Value::Array(
        reports.iter().map(|r| r.to_json()).collect(),
    )))
}

/// Hamming distance between finite subsets of indices.
#[pyfunction]
fn hamming(a: BTreeSet<u64>, b: BTreeSet<u64>) -> usize {
    a.symmetric_difference(&b).count()
}

#[pymodule]
fn pyballean(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLattice>()?;
    m.add_class::<PyGroup>()?;
    m.add_class::<PySubgroup>()?;
    m.add_function(wrap_pyfunction!(row_hnf, m)?)?;
    m.add_function(wrap_pyfunction!(snf, m)?)?;
    m.add_function(wrap_pyfunction!(abs_det, m)?)?;
    m.add_function(wrap_pyfunction!(dlog, m)?)?;
    m.add_function(wrap_pyfunction!(iota, m)?)?;
    m.add_function(wrap_pyfunction!(lz_exp_ball, m)?)?;
    m.add_function(wrap_pyfunction!(lz_log_ball, m)?)?;
    m.add_function(wrap_pyfunction!(prufer_ball, m)?)?;
    m.add_function(wrap_pyfunction!(asdim, m)?)?;
    m.add_function(wrap_pyfunction!(iso_points, m)?)?;
    m.add_function(wrap_pyfunction!(components, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(hamming, m)?)?;
    Ok(())
}
