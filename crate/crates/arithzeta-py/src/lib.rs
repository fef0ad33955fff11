//! Python bindings: the classical arithmetic functions, quadratic-field
//! ideal tables, variety zeta series, Witt-vector quotient groups, and the
//! verification suites. Exact big integers cross the boundary as Python
//! ints; reports cross as JSON strings.

use arithzeta::classical::ClassicalFnId;
use arithzeta::monoid::ArithFn;
use arithzeta::primes::Sieve;
use arithzeta::quadfield::{IdealMonoid, QuadraticField as QF};
use arithzeta::suites::{self, SuiteConfig};
use arithzeta::varzeta::{self, CycleFn, VarietySpec};
use arithzeta::witt;
use arithzeta::Int;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: arithzeta::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn classical(name: &str, n: u64) -> PyResult<Int> {
    let sieve = Sieve::new();
    let f: ClassicalFnId = name.parse().map_err(err)?;
    f.eval(&sieve, n).map_err(err)
}

#[pyfunction]
fn phi(n: u64) -> PyResult<Int> {
    classical("phi", n)
}

#[pyfunction]
fn sigma(m: u32, n: u64) -> PyResult<Int> {
    let sieve = Sieve::new();
    arithzeta::classical::sigma(&sieve, m, n).map_err(err)
}

#[pyfunction]
fn psi(n: u64) -> PyResult<Int> {
    classical("psi", n)
}

#[pyfunction]
fn liouville(n: u64) -> PyResult<Int> {
    classical("lambda", n)
}

#[pyfunction]
fn mobius(n: u64) -> PyResult<Int> {
    classical("mu", n)
}

#[pyfunction]
fn abs_mobius(n: u64) -> PyResult<Int> {
    classical("abs_mu", n)
}

#[pyfunction]
fn chi_minus1(n: u64) -> PyResult<Int> {
    classical("chi_minus1", n)
}

#[pyfunction]
fn r2(n: u64) -> PyResult<Int> {
    classical("r2", n)
}

#[pyfunction]
fn sl2_index(n: u64) -> PyResult<Int> {
    arithzeta::classical::sl2_index(n, arithzeta::classical::SL2_DEFAULT_CAP).map_err(err)
}

#[pyfunction]
fn euler_check(bound: u64) -> PyResult<bool> {
    let sieve = Sieve::new();
    Ok(arithzeta::classical::euler_check(&sieve, bound)
        .map_err(err)?
        .passed())
}

/// Order of the Witt unit-quotient product group G(n); equals psi(n).
#[pyfunction]
fn g_order(n: u64) -> PyResult<Int> {
    witt::g_n_order(n).map_err(err)
}

/// JSON report of W_k(F_{p^2})^x / W_k(F_p)^x.
#[pyfunction]
fn psi_group_report(p: u64, k: u32) -> PyResult<String> {
    let report = witt::psi_group(p, k).map_err(err)?;
    Ok(serde_json::to_string_pretty(&report).unwrap())
}

/// Run a verification suite with default bounds; returns the JSON report.
#[pyfunction]
#[pyo3(signature = (name, seed = 0))]
fn run_suite(name: &str, seed: u64) -> PyResult<String> {
    let cfg = SuiteConfig {
        seed,
        ..SuiteConfig::default()
    };
    let report = suites::run_suite(name, &cfg).map_err(err)?;
    Ok(serde_json::to_string_pretty(&report).unwrap())
}

/// The ideal monoid of Q(sqrt(d)) with its arithmetic functions and the
/// quotient-ring oracle.
#[pyclass]
struct QuadraticField {
    field: QF,
    ideals: IdealMonoid,
    bound: u64,
}

#[pymethods]
impl QuadraticField {
    #[new]
    #[pyo3(signature = (d, norm_bound = 200))]
    fn new(d: i64, norm_bound: u64) -> PyResult<Self> {
        let sieve = Sieve::new();
        let field = QF::new(&sieve, d).map_err(err)?;
        let ideals = IdealMonoid::up_to(&sieve, field, norm_bound).map_err(err)?;
        Ok(QuadraticField {
            field,
            ideals,
            bound: norm_bound,
        })
    }

    fn discriminant(&self) -> i64 {
        self.field.discriminant()
    }

    /// Splitting data for a rational prime: (label, kind, norm) triples.
    fn split(&self, p: u64) -> PyResult<Vec<(String, String, u64)>> {
        let sieve = Sieve::new();
        let atoms = arithzeta::quadfield::split_prime(&sieve, self.field, p).map_err(err)?;
        Ok(atoms
            .iter()
            .map(|a| {
                let kind = match a.kind {
                    arithzeta::quadfield::SplitKind::Split => "split",
                    arithzeta::quadfield::SplitKind::Inert => "inert",
                    arithzeta::quadfield::SplitKind::Ramified => "ramified",
                };
                (a.label(), kind.to_string(), a.norm)
            })
            .collect())
    }

    /// Dedekind zeta coefficients a_1..a_bound (ideal counts by norm).
    fn zeta_coefficients(&self, bound: u64) -> PyResult<Vec<Int>> {
        let series = self
            .ideals
            .dirichlet_pushforward(&ArithFn::zeta(), bound.min(self.bound))
            .map_err(err)?;
        series.integer_coeffs().map_err(err)
    }

    /// Rows (norm, ideal, value) of an arithmetic function on ideals.
    fn table(&self, name: &str, bound: u64) -> PyResult<Vec<(u64, String, Int)>> {
        let value: Box<dyn Fn(&arithzeta::monoid::Element) -> Int> = match name {
            "norm" => Box::new(|e| self.ideals.norm(e)),
            "phi" => Box::new(|e| self.ideals.phi_k(e)),
            "sigma1" => Box::new(|e| self.ideals.sigma1_k(e)),
            "psi" => Box::new(|e| self.ideals.psi_k(e)),
            "lambda" => Box::new(|e| self.ideals.lambda_k(e)),
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown ideal function: {other}"
                )))
            }
        };
        let mut rows = Vec::new();
        for (e, n) in self
            .ideals
            .enumerate_ideals(bound.min(self.bound))
            .map_err(err)?
        {
            let label = if e.is_identity() {
                "(1)".to_string()
            } else {
                self.ideals.monoid().render(&e)
            };
            rows.push((n, label, value(&e)));
        }
        Ok(rows)
    }

    /// Exhaustive unit count of the quotient ring at the first ideal of
    /// the given norm (oracle side of the totient).
    fn unit_count_at_norm(&self, norm: u64) -> PyResult<Option<Int>> {
        for (e, n) in self.ideals.enumerate_ideals(self.bound).map_err(err)? {
            if n == norm {
                let ring = self.ideals.quotient_ring(&e, 400).map_err(err)?;
                return Ok(Some(ring.unit_count()));
            }
        }
        Ok(None)
    }
}

/// A variety over a prime field, with point counts and zeta series.
#[pyclass]
struct Variety {
    spec: VarietySpec,
}

#[pymethods]
impl Variety {
    /// Builtin varieties: point, A1, A2, Gm, P1, P2.
    #[staticmethod]
    fn builtin(name: &str, p: u64) -> PyResult<Self> {
        let spec = varzeta::builtin(name).map_err(err)?.at_prime(p);
        Ok(Variety { spec })
    }

    /// Parse the line-oriented key=value spec format.
    #[staticmethod]
    fn from_spec(text: &str) -> PyResult<Self> {
        let spec = varzeta::parse_spec(text).map_err(err)?;
        Ok(Variety { spec })
    }

    fn name(&self) -> String {
        self.spec.name.clone()
    }

    fn count_points(&self, m: u32) -> PyResult<u64> {
        varzeta::count_points(&self.spec, m).map_err(err)
    }

    /// Closed points of each degree 1..=degree.
    fn spectrum(&self, degree: u32) -> PyResult<Vec<u64>> {
        Ok(varzeta::spectrum_of(&self.spec, degree).map_err(err)?.b)
    }

    fn zeta_series(&self, degree: u32) -> PyResult<Vec<Int>> {
        let s = varzeta::spectrum_of(&self.spec, degree).map_err(err)?;
        s.zeta_series(degree)
            .map_err(err)?
            .integer_coeffs()
            .map_err(err)
    }

    /// Generating-function coefficients of zeta, phi, sigma1, psi or lambda.
    fn series(&self, name: &str, degree: u32) -> PyResult<Vec<Int>> {
        let func: CycleFn = name.parse().map_err(err)?;
        let s = varzeta::spectrum_of(&self.spec, degree).map_err(err)?;
        s.cycle_series(func, degree)
            .map_err(err)?
            .integer_coeffs()
            .map_err(err)
    }

    /// Run the full variety check battery; returns the JSON report.
    fn verify(&self, degree: u32) -> PyResult<String> {
        let cfg = SuiteConfig {
            variety_degree: degree,
            ..SuiteConfig::default()
        };
        let report = suites::run_variety_for(&cfg, &self.spec).map_err(err)?;
        Ok(serde_json::to_string_pretty(&report).unwrap())
    }
}

/// W_k(F_{p^a}) with explicit coordinate arithmetic.
#[pyclass]
struct WittRing {
    ring: witt::WittRing,
}

#[pymethods]
impl WittRing {
    #[new]
    #[pyo3(signature = (p, k, ext_degree = 1))]
    fn new(p: u64, k: u32, ext_degree: u32) -> PyResult<Self> {
        Ok(WittRing {
            ring: witt::WittRing::new(p, k, ext_degree).map_err(err)?,
        })
    }

    fn size(&self) -> u64 {
        self.ring.size()
    }

    fn add(&self, u: Vec<u32>, v: Vec<u32>) -> PyResult<Vec<u32>> {
        self.ring.add(&u, &v).map_err(err)
    }

    fn mul(&self, u: Vec<u32>, v: Vec<u32>) -> PyResult<Vec<u32>> {
        self.ring.mul(&u, &v).map_err(err)
    }

    fn invert(&self, u: Vec<u32>) -> PyResult<Vec<u32>> {
        self.ring.invert(&u).map_err(err)
    }

    fn unit_count(&self) -> PyResult<u64> {
        Ok(self.ring.units().map_err(err)?.len() as u64)
    }
}

#[pymodule]
fn arithzeta_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(sigma, m)?)?;
    m.add_function(wrap_pyfunction!(psi, m)?)?;
    m.add_function(wrap_pyfunction!(liouville, m)?)?;
    m.add_function(wrap_pyfunction!(mobius, m)?)?;
    m.add_function(wrap_pyfunction!(abs_mobius, m)?)?;
    m.add_function(wrap_pyfunction!(chi_minus1, m)?)?;
    m.add_function(wrap_pyfunction!(r2, m)?)?;
    m.add_function(wrap_pyfunction!(sl2_index, m)?)?;
    m.add_function(wrap_pyfunction!(euler_check, m)?)?;
    m.add_function(wrap_pyfunction!(g_order, m)?)?;
    m.add_function(wrap_pyfunction!(psi_group_report, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_class::<QuadraticField>()?;
    m.add_class::<Variety>()?;
    m.add_class::<WittRing>()?;
    Ok(())
}
