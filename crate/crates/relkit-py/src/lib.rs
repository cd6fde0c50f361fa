//! Python bindings. The module is named `relkit`; objects are looked up by
//! name in a `Workspace` and wrapped in thin classes that hold the resolved
//! Rust values.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use relkit::algebra::{
    check_algebra_object, check_opalgebra_object, em_category, kleisli, resolution_from_em, resolution_from_kleisli, GradingPool,
};
use relkit::cli::{corpus_workspace, exit_code, run_args};
use relkit::dual::{co_em, co_kleisli, RelativeComonad};
use relkit::enriched::Cat;
use relkit::error::{Budget, Certified, Error, ValidationReport};
use relkit::json::{to_json, Emitter, Workspace as Ws};
use relkit::relmonad::{
    enumerate_monad_morphisms, enumerate_monads, induced_monad, PresentationKind, RelativeAdjunction, RelativeMonad,
};

create_exception!(relkit, RelkitError, PyException, "Any relkit failure.");
create_exception!(relkit, LawViolation, RelkitError, "An object failed one of its laws.");
create_exception!(relkit, MalformedInput, RelkitError, "Tables, references or frames do not fit together.");
create_exception!(relkit, BudgetExceeded, RelkitError, "An enumeration would exceed its budget.");

fn err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::LawViolation(_) => LawViolation::new_err(msg),
        Error::EnumerationBudgetExceeded { .. } => BudgetExceeded::new_err(msg),
        Error::MalformedTables(_) | Error::FrameMismatch(_) | Error::NotParallel | Error::CardinalityOverflow(..) => {
            MalformedInput::new_err(msg)
        }
        _ => RelkitError::new_err(msg),
    }
}

/// `(law, at)` pairs of a report; empty when the object is valid.
pub fn violations(rep: &ValidationReport) -> Vec<(String, Vec<usize>)> {
    rep.violations.iter().map(|v| (v.law.clone(), v.at.clone())).collect()
}

pub fn hom_matrix(c: &Cat) -> Vec<Vec<usize>> {
    (0..c.n()).map(|x| (0..c.n()).map(|y| c.hom(x, y)).collect()).collect()
}

pub fn budget_of(b: Option<u64>) -> Budget {
    b.map(|b| Budget(b as u128)).unwrap_or_default()
}

fn verdict(c: Certified) -> (bool, String) {
    (c.holds(), to_json(&c))
}

#[pyclass(name = "Category", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyCategory {
    c: Cat,
}

#[pymethods]
impl PyCategory {
    #[getter]
    fn name(&self) -> String {
        self.c.name.clone()
    }

    #[getter]
    fn objects(&self) -> Vec<String> {
        self.c.objects.clone()
    }

    /// `homs[x][y]` is the base object `C(x, y)`.
    #[getter]
    fn homs(&self) -> Vec<Vec<usize>> {
        hom_matrix(&self.c)
    }

    fn validate(&self) -> Vec<(String, Vec<usize>)> {
        violations(&self.c.validate())
    }

    fn __repr__(&self) -> String {
        format!("Category({}, {} objects)", self.c.name, self.c.n())
    }
}

#[pyclass(name = "Monad", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyMonad {
    m: RelativeMonad,
}

#[pymethods]
impl PyMonad {
    #[getter]
    fn name(&self) -> String {
        self.m.name.clone()
    }

    #[getter]
    fn root(&self) -> String {
        self.m.j.name.clone()
    }

    #[getter]
    fn obj_map(&self) -> Vec<usize> {
        self.m.obj_map.clone()
    }

    fn validate(&self) -> Vec<(String, Vec<usize>)> {
        violations(&self.m.validate())
    }

    fn kleisli(&self) -> PyResult<PyCategory> {
        Ok(PyCategory { c: kleisli(&self.m).map_err(err)?.cat })
    }

    /// Eilenberg-Moore category and the carriers of its algebras.
    #[pyo3(signature = (budget=None))]
    fn eilenberg_moore(&self, budget: Option<u64>) -> PyResult<(PyCategory, Vec<usize>)> {
        let em = em_category(&self.m, budget_of(budget)).map_err(err)?;
        Ok((PyCategory { c: em.cat.clone() }, em.algebras.iter().map(|a| a.carrier).collect()))
    }

    fn kleisli_resolution(&self) -> PyResult<PyAdjunction> {
        Ok(PyAdjunction { a: resolution_from_kleisli(&self.m).map_err(err)?.1 })
    }

    #[pyo3(signature = (budget=None))]
    fn em_resolution(&self, budget: Option<u64>) -> PyResult<PyAdjunction> {
        Ok(PyAdjunction { a: resolution_from_em(&self.m, budget_of(budget)).map_err(err)?.1 })
    }

    /// Bounded check that the Kleisli opalgebra is universal; `(holds, json)`.
    #[pyo3(signature = (budget=None))]
    fn certify_kleisli(&self, budget: Option<u64>) -> PyResult<(bool, String)> {
        let kl = kleisli(&self.m).map_err(err)?;
        let pool = GradingPool::for_monad(&self.m, &[kl.cat.clone()]).map_err(err)?;
        Ok(verdict(check_opalgebra_object(&self.m, &kl.opalgebra(), &pool, budget_of(budget)).map_err(err)?))
    }

    /// Bounded check that the Eilenberg-Moore algebra is universal.
    #[pyo3(signature = (budget=None))]
    fn certify_em(&self, budget: Option<u64>) -> PyResult<(bool, String)> {
        let b = budget_of(budget);
        let em = em_category(&self.m, b).map_err(err)?;
        let pool = GradingPool::for_monad(&self.m, &[em.cat.clone()]).map_err(err)?;
        Ok(verdict(check_algebra_object(&self.m, &em.algebra(), &pool, b).map_err(err)?))
    }

    fn dual(&self) -> PyComonad {
        PyComonad { d: RelativeComonad::from_dual(&self.m) }
    }

    /// A bundle holding the monad and everything it references.
    fn to_json(&self) -> String {
        let mut em = Emitter::new();
        em.monad(&self.m);
        to_json(&em.into_bundle())
    }

    fn __eq__(&self, other: &PyMonad) -> bool {
        self.m == other.m
    }

    fn __repr__(&self) -> String {
        format!("Monad({}, t = {:?})", self.m.name, self.m.obj_map)
    }
}

#[pyclass(name = "Comonad", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyComonad {
    d: RelativeComonad,
}

#[pymethods]
impl PyComonad {
    #[getter]
    fn name(&self) -> String {
        self.d.name.clone()
    }

    #[getter]
    fn obj_map(&self) -> Vec<usize> {
        self.d.obj_map.clone()
    }

    fn validate(&self) -> Vec<(String, Vec<usize>)> {
        violations(&self.d.validate())
    }

    fn co_kleisli(&self) -> PyResult<PyCategory> {
        Ok(PyCategory { c: co_kleisli(&self.d).map_err(err)?.cat })
    }

    /// Co-Eilenberg-Moore category and the carriers of its coalgebras.
    #[pyo3(signature = (budget=None))]
    fn co_eilenberg_moore(&self, budget: Option<u64>) -> PyResult<(PyCategory, Vec<usize>)> {
        let ce = co_em(&self.d, budget_of(budget)).map_err(err)?;
        Ok((PyCategory { c: ce.cat.clone() }, ce.coalgebras.iter().map(|c| c.carrier).collect()))
    }

    fn dual(&self) -> PyMonad {
        PyMonad { m: self.d.to_dual() }
    }

    fn __eq__(&self, other: &PyComonad) -> bool {
        self.d == other.d
    }

    fn __repr__(&self) -> String {
        format!("Comonad({}, d = {:?})", self.d.name, self.d.obj_map)
    }
}

#[pyclass(name = "Adjunction", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyAdjunction {
    a: RelativeAdjunction,
}

fn presentation_kind(s: &str) -> PyResult<PresentationKind> {
    match s.replace('-', "_").as_str() {
        "hom_iso" => Ok(PresentationKind::HomIso),
        "universal_arrow" => Ok(PresentationKind::UniversalArrow),
        "unit_counit" => Ok(PresentationKind::UnitCounit),
        "couniversal" => Ok(PresentationKind::Couniversal),
        other => Err(MalformedInput::new_err(format!("unknown presentation {other}"))),
    }
}

#[pymethods]
impl PyAdjunction {
    #[getter]
    fn name(&self) -> String {
        self.a.name.clone()
    }

    #[getter]
    fn apex(&self) -> PyCategory {
        PyCategory { c: self.a.apex().clone() }
    }

    fn validate(&self) -> Vec<(String, Vec<usize>)> {
        violations(&self.a.validate())
    }

    fn induced_monad(&self) -> PyResult<PyMonad> {
        Ok(PyMonad { m: induced_monad(&self.a).map_err(err)? })
    }

    /// The adjunction re-expressed in another presentation, as a bundle.
    #[pyo3(signature = (kind="hom_iso"))]
    fn to_json(&self, kind: &str) -> PyResult<String> {
        let k = presentation_kind(kind)?;
        self.a.to_presentation(k).map_err(err)?;
        let mut em = Emitter::new();
        em.adjunction(&self.a, k);
        Ok(to_json(&em.into_bundle()))
    }

    fn __repr__(&self) -> String {
        format!("Adjunction({}, apex {})", self.a.name, self.a.apex().name)
    }
}

#[pyclass(name = "Workspace")]
pub struct PyWorkspace {
    ws: Ws,
}

#[pymethods]
impl PyWorkspace {
    /// The built-in corpus.
    #[staticmethod]
    fn corpus() -> PyResult<Self> {
        Ok(PyWorkspace { ws: corpus_workspace().map_err(err)? })
    }

    /// A JSON file or a directory of them.
    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(PyWorkspace { ws: Ws::load(std::path::Path::new(path)).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyWorkspace { ws: Ws::from_items(Ws::parse(text).map_err(err)?).map_err(err)? })
    }

    /// `(kind, name)` of every object.
    fn names(&self) -> Vec<(String, String)> {
        self.ws.entries.iter().map(|e| (e.kind().as_str().to_string(), e.name().to_string())).collect()
    }

    /// `(subject, laws)` for every object that fails its validator.
    fn validate(&self) -> Vec<(String, Vec<String>)> {
        self.ws.validate_all().into_iter().filter(|r| !r.is_ok()).map(|r| (r.subject.clone(), r.laws())).collect()
    }

    fn category(&self, name: &str) -> PyResult<PyCategory> {
        Ok(PyCategory { c: self.ws.category(name).map_err(err)? })
    }

    fn monad(&self, name: &str) -> PyResult<PyMonad> {
        Ok(PyMonad { m: self.ws.monad(name).map_err(err)? })
    }

    fn comonad(&self, name: &str) -> PyResult<PyComonad> {
        Ok(PyComonad { d: self.ws.comonad(name).map_err(err)? })
    }

    fn adjunction(&self, name: &str) -> PyResult<PyAdjunction> {
        Ok(PyAdjunction { a: self.ws.adjunction(name).map_err(err)? })
    }

    /// Every monad on the named root, optionally with `t(x) <= max_t`.
    #[pyo3(signature = (root, max_t=None, budget=None))]
    fn enumerate_monads(&self, root: &str, max_t: Option<usize>, budget: Option<u64>) -> PyResult<Vec<PyMonad>> {
        let j = self.ws.functor(root).map_err(err)?;
        let keep = |t: &[usize]| max_t.is_none_or(|m| t.iter().all(|&x| x <= m));
        let ms = enumerate_monads(&j, keep, budget_of(budget)).map_err(err)?;
        Ok(ms.into_iter().map(|m| PyMonad { m }).collect())
    }

    /// Number of monad morphisms between two named monads.
    #[pyo3(signature = (source, target, budget=None))]
    fn count_morphisms(&self, source: &str, target: &str, budget: Option<u64>) -> PyResult<usize> {
        let (s, t) = (self.ws.monad(source).map_err(err)?, self.ws.monad(target).map_err(err)?);
        Ok(enumerate_monad_morphisms(&s, &t, budget_of(budget)).map_err(err)?.len())
    }

    fn __len__(&self) -> usize {
        self.ws.entries.len()
    }
}

/// Runs a CLI command in-process: `run(["kleisli", "TMAX"])` returns
/// `(exit_code, json)` with the same codes as the binary.
#[pyfunction]
fn run(args: Vec<String>) -> (i32, String) {
    match run_args(std::iter::once("relkit".to_string()).chain(args)) {
        Ok(out) => (out.code, out.json),
        Err(e) => (exit_code(&e), e.to_string()),
    }
}

#[pymodule]
#[pyo3(name = "relkit")]
fn relkit_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("RelkitError", py.get_type::<RelkitError>())?;
    m.add("LawViolation", py.get_type::<LawViolation>())?;
    m.add("MalformedInput", py.get_type::<MalformedInput>())?;
    m.add("BudgetExceeded", py.get_type::<BudgetExceeded>())?;
    m.add_class::<PyWorkspace>()?;
    m.add_class::<PyCategory>()?;
    m.add_class::<PyMonad>()?;
    m.add_class::<PyComonad>()?;
    m.add_class::<PyAdjunction>()?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use relkit::corpus;

    #[test]
    fn helpers_match_the_core() {
        let t = corpus::tmax();
        assert!(violations(&t.validate()).is_empty());
        let bad = RelativeMonad::bool_from_objects("bad", &corpus::j01(), vec![1, 2]);
        assert!(violations(&bad.validate()).iter().any(|(l, at)| l == "well_typed.ext" && at == &vec![1, 0]));
        assert_eq!(hom_matrix(&corpus::ch3()), vec![vec![1, 1, 1], vec![0, 1, 1], vec![0, 0, 1]]);
        assert_eq!(budget_of(None), Budget::default());
        assert_eq!(budget_of(Some(7)), Budget(7));
    }

    #[test]
    fn presentation_names() {
        assert_eq!(presentation_kind("unit-counit").unwrap(), PresentationKind::UnitCounit);
        assert_eq!(presentation_kind("hom_iso").unwrap(), PresentationKind::HomIso);
    }

    #[test]
    fn run_reports_cli_exit_codes() {
        let (code, out) = run(vec!["enumerate".into(), "monads".into(), "INC1".into(), "--max-t".into(), "2".into()]);
        assert_eq!(code, 0);
        assert!(out.contains("\"count\": 5"));
        assert_eq!(run(vec!["kleisli".into(), "NOPE".into()]).0, 2);
        assert_eq!(run(vec!["check".into(), "dense".into(), "J01".into()]).0, 1);
    }
}
