//! Python bindings. Reports cross the boundary as JSON strings; small values
//! as native Python objects.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use symcx::exactalg::{DenseMatrix, Genericity, PrimeField, Rationals};
use symcx::homspace::{complexity_over_primes, generic_modality_over_primes, CaseSpec, SubgroupSpec};
use symcx::liestruct::{self, ParabolicComposition};
use symcx::symplin::{self, AntisymmetricForm};
use symcx::sympcx::{self as sc, Clause, OrbitSet, SamplerConfig, TheoremCheck};

fn err(e: symcx::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn genericity(seed: u64, primes: usize, trials: usize) -> Genericity {
    Genericity {
        seed,
        primes,
        trials,
        ..Genericity::default()
    }
}

fn comp(blocks: Vec<usize>) -> PyResult<ParabolicComposition> {
    ParabolicComposition::new(blocks).map_err(err)
}

/// Nilpotent orbit label: a partition of `n`.
#[pyclass(frozen, eq, hash, str, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition(liestruct::Partition);

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[pymethods]
impl Partition {
    #[new]
    fn new(parts: Vec<usize>) -> PyResult<Self> {
        liestruct::Partition::new(parts).map(Self).map_err(err)
    }

    #[staticmethod]
    fn all(n: usize) -> Vec<Partition> {
        liestruct::Partition::all(n).into_iter().map(Self).collect()
    }

    #[getter]
    fn parts(&self) -> Vec<usize> {
        self.0.parts().to_vec()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn orbit_dim(&self) -> usize {
        self.0.orbit_dim()
    }

    fn transpose(&self) -> Partition {
        Self(self.0.transpose())
    }

    fn __repr__(&self) -> String {
        format!("Partition({:?})", self.0.parts())
    }
}

/// Closed interval bounding a symplectic dimension.
#[pyclass(frozen, eq, get_all, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lower: usize,
    upper: usize,
}

#[pymethods]
impl Interval {
    fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    fn __repr__(&self) -> String {
        format!("Interval({}, {})", self.lower, self.upper)
    }
}

impl From<symplin::SdimInterval> for Interval {
    fn from(i: symplin::SdimInterval) -> Self {
        Self {
            lower: i.lower,
            upper: i.upper,
        }
    }
}

/// A homogeneous space `G/H`, e.g. `Case("sl3", "torus")`.
#[pyclass(frozen)]
pub struct Case {
    spec: CaseSpec,
    gen: Genericity,
}

#[pymethods]
impl Case {
    #[new]
    #[pyo3(signature = (group, subgroup, seed = 0, primes = 5, trials = 5))]
    fn new(group: &str, subgroup: &str, seed: u64, primes: usize, trials: usize) -> PyResult<Self> {
        let spec = CaseSpec::new(group.parse().map_err(err)?, subgroup.parse().map_err(err)?);
        let gen = genericity(seed, primes, trials);
        gen.validate().map_err(err)?;
        Ok(Self { spec, gen })
    }

    fn __repr__(&self) -> String {
        format!("Case({:?})", self.spec.to_string())
    }

    fn dim(&self) -> PyResult<usize> {
        let f = PrimeField::new(self.gen.select_primes().map_err(err)?[0]).map_err(err)?;
        Ok(self.spec.space(f).map_err(err)?.dim())
    }

    fn complexity(&self) -> PyResult<usize> {
        Ok(complexity_over_primes(&self.spec, &self.gen).map_err(err)?.value)
    }

    fn generic_modality(&self, acting: &str) -> PyResult<usize> {
        let acting: SubgroupSpec = acting.parse().map_err(err)?;
        Ok(generic_modality_over_primes(&self.spec, &acting, &self.gen).map_err(err)?.value)
    }

    fn sc_orbit(&self, orbit: &Partition) -> PyResult<Interval> {
        let o = sc::sc_orbit_over_primes(&self.spec, &orbit.0, &self.gen, &SamplerConfig::default()).map_err(err)?;
        Ok(o.interval.into())
    }

    fn c_orbit(&self, orbit: &Partition) -> PyResult<Option<i64>> {
        let o = sc::sc_orbit_over_primes(&self.spec, &orbit.0, &self.gen, &SamplerConfig::default()).map_err(err)?;
        Ok(o.c_orbit)
    }

    /// `orbits` is `"nilpotent_cone"`, `"richardson_closure:2,1"` or `"2,1;1,1,1"`.
    #[pyo3(signature = (orbits = "nilpotent_cone"))]
    fn sc_set(&self, orbits: &str) -> PyResult<Interval> {
        let xi: OrbitSet = orbits.parse().map_err(err)?;
        Ok(sc::sc_set(&self.spec, &xi, &self.gen, &SamplerConfig::default()).map_err(err)?.interval.into())
    }

    /// Returns `(verdict, report_json)`.
    #[pyo3(signature = (clause, p = None, orbits = None))]
    fn verify(&self, clause: &str, p: Option<Vec<usize>>, orbits: Option<&str>) -> PyResult<(String, String)> {
        let case = self.spec.clone();
        let p = || p.clone().map(comp).unwrap_or_else(|| Ok(ParabolicComposition::borel(case.group.n)));
        let check = match clause.parse::<Clause>().map_err(err)? {
            Clause::I => TheoremCheck::I {
                case: case.clone(),
                orbits: orbits.unwrap_or("nilpotent_cone").parse().map_err(err)?,
            },
            Clause::III => TheoremCheck::III { case: case.clone(), p: p()? },
            Clause::IV => TheoremCheck::IV { case: case.clone() },
            Clause::CorB => TheoremCheck::CorB { case: case.clone(), p: p()? },
        };
        let r = sc::verify_theorem_a(&check, &self.gen, &SamplerConfig::default()).map_err(err)?;
        let verdict = r.verdict.map_or("NONE".to_string(), |v| v.to_string());
        Ok((verdict, serde_json::to_string(&r).expect("reports serialize")))
    }
}

#[pyfunction]
fn orbit_dim(parts: Vec<usize>) -> PyResult<usize> {
    Ok(Partition::new(parts)?.0.orbit_dim())
}

#[pyfunction]
fn jordan_type(matrix: Vec<Vec<i64>>) -> PyResult<Partition> {
    let m = DenseMatrix::from_i64_rows(Rationals, &matrix).map_err(err)?;
    liestruct::jordan_type(&m).map(Partition).map_err(err)
}

#[pyfunction]
fn richardson_partition(blocks: Vec<usize>) -> PyResult<Partition> {
    Ok(Partition(liestruct::richardson_partition(&comp(blocks)?)))
}

#[pyfunction]
fn double_coset_count(n: usize, p: Vec<usize>, q: Vec<usize>) -> PyResult<usize> {
    liestruct::weyl_double_coset_count(n, &comp(p)?, &comp(q)?).map_err(err)
}

#[pyfunction]
fn sdim_linear(matrix: Vec<Vec<i64>>) -> PyResult<usize> {
    let m = DenseMatrix::from_i64_rows(Rationals, &matrix).map_err(err)?;
    symplin::sdim_linear(&AntisymmetricForm::new(m).map_err(err)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (orbit, seed = 0))]
fn orbital_variety_check(orbit: &Partition, seed: u64) -> PyResult<(String, String)> {
    let gen = genericity(seed, 5, 5);
    let r = sc::orbital_variety_check(&orbit.0, orbit.0.n(), &gen, &SamplerConfig::default()).map_err(err)?;
    let verdict = r.verdict.map_or("NONE".to_string(), |v| v.to_string());
    Ok((verdict, serde_json::to_string(&r).expect("reports serialize")))
}

/// Runs the command-line interface in-process: `run_cli(["orbit-dim", "--orbit", "2,1"])`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String) {
    let seed = std::env::var(symcx::cli::SEED_ENV).ok();
    symcx::cli::run(std::iter::once("symcx".to_string()).chain(args), seed.as_deref())
}

#[pymodule]
fn symcx_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Partition>()?;
    m.add_class::<Interval>()?;
    m.add_class::<Case>()?;
    m.add_function(wrap_pyfunction!(orbit_dim, m)?)?;
    m.add_function(wrap_pyfunction!(jordan_type, m)?)?;
    m.add_function(wrap_pyfunction!(richardson_partition, m)?)?;
    m.add_function(wrap_pyfunction!(double_coset_count, m)?)?;
    m.add_function(wrap_pyfunction!(sdim_linear, m)?)?;
    m.add_function(wrap_pyfunction!(orbital_variety_check, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
