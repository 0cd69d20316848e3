//! Python bindings for the verification library: sieved class sequences,
//! subset-sum tables, completeness certificates, representation witnesses,
//! and the order-super-commuting graph machinery.
//!
//! Usage from Python:
//!
//!     import dcomplete_py as dc
//!     seq = dc.sieve_class(4, 1, 1_000_000)
//!     cert = dc.certify(4, 1, 122, 13)
//!     assert cert.valid
//!     g = dc.build_order_graph(9)
//!     assert g.diameter() == 3

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use dcomplete::primes;
use dcomplete::sumset;
use dcomplete::supergraph;
use dcomplete::symgroup;

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn class_of(d: u64, r: u64) -> PyResult<primes::PrimeClass> {
    primes::PrimeClass::new(d, r).map_err(value_err)
}

fn universe_of(name: &str) -> PyResult<sumset::Universe> {
    match name {
        "odd-primes" => Ok(sumset::Universe::OddPrimes),
        "all-primes" => Ok(sumset::Universe::AllPrimes),
        other => Err(PyValueError::new_err(format!(
            "unknown universe {other:?}: expected 'odd-primes' or 'all-primes'"
        ))),
    }
}

/// A sieved residue-class prime sequence with exact partial sums.
/// Indices in `prime`, `partial_sum` and `partial_sum_gap` are 1-based.
#[pyclass]
struct ClassSequence {
    inner: primes::ClassSequence,
}

#[pymethods]
impl ClassSequence {
    #[getter]
    fn modulus(&self) -> u64 {
        self.inner.class().modulus()
    }

    #[getter]
    fn residue(&self) -> u64 {
        self.inner.class().residue()
    }

    #[getter]
    fn limit(&self) -> u64 {
        self.inner.limit()
    }

    fn primes(&self) -> Vec<u64> {
        self.inner.primes().to_vec()
    }

    fn partial_sums(&self) -> Vec<u64> {
        self.inner.partial_sums().to_vec()
    }

    fn prime(&self, n: usize) -> PyResult<u64> {
        self.inner.prime(n).map_err(value_err)
    }

    fn partial_sum(&self, n: usize) -> PyResult<u64> {
        self.inner.partial_sum(n).map_err(value_err)
    }

    /// S(n) - q(n+1), the quantity whose growth drives completeness.
    fn partial_sum_gap(&self, n: usize) -> PyResult<i64> {
        primes::partial_sum_gap(&self.inner, n).map_err(value_err)
    }

    /// q(n+2) <= 2*q(n+1) for every n in [n_from, n_to].
    fn gap_monotone_check(&self, n_from: usize, n_to: usize) -> PyResult<bool> {
        primes::gap_monotone_check(&self.inner, n_from, n_to).map_err(value_err)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "ClassSequence({}, {} primes up to {})",
            self.inner.class(),
            self.inner.len(),
            self.inner.limit()
        )
    }
}

/// Sieve the complete class sequence up to `limit`. The class (1, 0)
/// means all primes.
#[pyfunction]
fn sieve_class(d: u64, r: u64, limit: u64) -> PyResult<ClassSequence> {
    let class = class_of(d, r)?;
    Ok(ClassSequence { inner: primes::sieve_class(class, limit).map_err(value_err)? })
}

/// Integers x in [x_lo, x_hi] with no class prime in (x, (num/den)*x],
/// sieving internally. Empty means the interval claim verified.
#[pyfunction]
fn interval_check(d: u64, r: u64, num: u64, den: u64, x_lo: u64, x_hi: u64) -> PyResult<Vec<u64>> {
    let class = class_of(d, r)?;
    let ratio = primes::Ratio::new(num, den).map_err(value_err)?;
    Ok(primes::interval_check(class, ratio, x_lo, x_hi).map_err(value_err)?.failures)
}

/// Per-prefix achievable-sum bitsets of an increasing sequence.
#[pyclass]
struct PresenceTable {
    inner: sumset::PresenceTable,
}

#[pymethods]
impl PresenceTable {
    fn is_achievable(&self, prefix: usize, m: u64) -> bool {
        self.inner.is_achievable(prefix, m)
    }

    fn achievable_sums(&self, prefix: usize) -> PyResult<Vec<u64>> {
        self.inner.achievable_sums(prefix).map_err(value_err)
    }

    /// A deterministic subset of the full prefix summing to m, or None.
    fn witness(&self, m: u64) -> Option<Vec<u64>> {
        self.inner.witness(m)
    }

    fn __repr__(&self) -> String {
        format!("PresenceTable({} prefixes)", self.inner.n_max())
    }
}

#[pyfunction]
fn build_presence(sequence: Vec<u64>, n_max: usize) -> PyResult<PresenceTable> {
    Ok(PresenceTable { inner: sumset::build_presence(&sequence, n_max).map_err(value_err)? })
}

/// Exact subset-count coefficients of an increasing sequence.
#[pyclass]
struct CoefficientTable {
    inner: sumset::CoefficientTable,
}

#[pymethods]
impl CoefficientTable {
    fn coefficient(&self, prefix: usize, m: u64) -> PyResult<u128> {
        self.inner.coefficient(prefix, m).map_err(value_err)
    }

    /// The stable value: the coefficient of m once the sequence outgrows m.
    fn stable_coefficient(&self, m: u64) -> Option<u128> {
        self.inner.stable_coefficient(m)
    }

    fn row_sum(&self, prefix: usize) -> PyResult<u128> {
        Ok(self.inner.row(prefix).map_err(value_err)?.iter().sum())
    }

    fn __repr__(&self) -> String {
        format!("CoefficientTable({} prefixes)", self.inner.n_max())
    }
}

#[pyfunction]
fn build_coefficients(sequence: Vec<u64>, n_max: usize) -> PyResult<CoefficientTable> {
    Ok(CoefficientTable { inner: sumset::build_coefficients(&sequence, n_max).map_err(value_err)? })
}

/// Check the window hypothesis at prefix n0 for threshold k0 on a raw
/// sequence. Returns (ok, window_lo, window_hi, zero_below, zero_above).
#[pyfunction]
fn verify_window(
    sequence: Vec<u64>,
    n0: usize,
    k0: u64,
) -> PyResult<(bool, u64, u64, Option<u64>, Option<u64>)> {
    let table = sumset::build_presence(&sequence, n0).map_err(value_err)?;
    let report = sumset::verify_window(&table, n0, k0).map_err(value_err)?;
    Ok((report.ok, report.window.0, report.window.1, report.zero_below, report.zero_above))
}

/// A checked completeness certificate.
#[pyclass]
struct Certificate {
    inner: sumset::CompletenessCertificate,
}

#[pymethods]
impl Certificate {
    #[getter]
    fn valid(&self) -> bool {
        self.inner.valid
    }

    #[getter]
    fn window_ok(&self) -> bool {
        self.inner.window_ok
    }

    #[getter]
    fn boundary_zeros(&self) -> (Option<u64>, Option<u64>) {
        (self.inner.boundary_zero_below, self.inner.boundary_zero_above)
    }

    #[getter]
    fn gap_base(&self) -> i64 {
        self.inner.gap_base
    }

    #[getter]
    fn gap_min(&self) -> i64 {
        self.inner.gap_min
    }

    #[getter]
    fn analytic_tail(&self) -> String {
        self.inner.analytic_tail.clone()
    }

    #[getter]
    fn failure(&self) -> Option<String> {
        self.inner.failure.clone()
    }

    /// The certificate as one JSON object (the CLI's row format).
    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Certificate({}, k0={}, n0={}, valid={})",
            self.inner.class, self.inner.k0, self.inner.n0, self.inner.valid
        )
    }
}

/// Certify that every integer >= k0 is a sum of distinct class primes,
/// with conditions verified for primes up to check_limit.
#[pyfunction]
#[pyo3(signature = (d, r, k0, n0, sieve_limit = 1_000_000, check_limit = 100_000))]
fn certify(
    d: u64,
    r: u64,
    k0: u64,
    n0: usize,
    sieve_limit: u64,
    check_limit: u64,
) -> PyResult<Certificate> {
    let seq = primes::sieve_class(class_of(d, r)?, sieve_limit).map_err(value_err)?;
    let cert = sumset::certify_completeness(&seq, k0, n0, check_limit).map_err(value_err)?;
    Ok(Certificate { inner: cert })
}

/// One sum of distinct class primes equal to m (ascending parts), or None.
#[pyfunction]
fn represent(m: u64, d: u64, r: u64) -> PyResult<Option<Vec<u64>>> {
    let seq = primes::sieve_class(class_of(d, r)?, m.max(2)).map_err(value_err)?;
    let witness = sumset::represent(&seq, m).map_err(value_err)?;
    if let Some(w) = &witness {
        w.validate().map_err(PyValueError::new_err)?;
    }
    Ok(witness.map(|w| w.parts))
}

/// All m <= limit that are not sums of distinct class primes.
#[pyfunction]
fn exceptional_set(d: u64, r: u64, limit: u64) -> PyResult<Vec<u64>> {
    let seq = primes::sieve_class(class_of(d, r)?, limit.max(2)).map_err(value_err)?;
    sumset::exceptional_set(&seq, limit).map_err(value_err)
}

/// Two disjoint sets of distinct primes from the universe ("odd-primes" or
/// "all-primes"), each summing to m, or None.
#[pyfunction]
#[pyo3(signature = (m, universe = "odd-primes"))]
fn double_representation(m: u64, universe: &str) -> PyResult<Option<(Vec<u64>, Vec<u64>)>> {
    let d = sumset::double_representation_free(m, universe_of(universe)?).map_err(value_err)?;
    if let Some(d) = &d {
        d.validate().map_err(PyValueError::new_err)?;
    }
    Ok(d.map(|d| (d.t1, d.t2)))
}

/// Class-split double representation: one sum from primes 1 mod 4, one
/// from primes 3 mod 4, or None.
#[pyfunction]
fn double_representation_split(m: u64) -> PyResult<Option<(Vec<u64>, Vec<u64>)>> {
    let a = primes::sieve_class(class_of(4, 1)?, m.max(2)).map_err(value_err)?;
    let b = primes::sieve_class(class_of(4, 3)?, m.max(2)).map_err(value_err)?;
    let d = sumset::double_representation_split(m, &a, &b).map_err(value_err)?;
    if let Some(d) = &d {
        d.validate().map_err(PyValueError::new_err)?;
    }
    Ok(d.map(|d| (d.t1, d.t2)))
}

/// All m <= limit with no two disjoint prime sums from the universe.
#[pyfunction]
#[pyo3(signature = (limit, universe = "odd-primes"))]
fn double_exceptional_set(limit: u64, universe: &str) -> PyResult<Vec<u64>> {
    sumset::double_exceptional_set(universe_of(universe)?, limit).map_err(value_err)
}

/// The distinct element orders of S_n.
#[pyfunction]
fn element_orders(n: u64) -> PyResult<Vec<u64>> {
    Ok(symgroup::element_orders(n).map_err(value_err)?.iter().collect())
}

/// Element orders of the centralizer of a permutation with the given cycle
/// lengths (e.g. [5, 1, 1] for a 5-cycle in S_7).
#[pyfunction]
fn centralizer_orders(parts: Vec<u64>) -> PyResult<Vec<u64>> {
    let t = symgroup::CycleType::from_parts(&parts).map_err(value_err)?;
    Ok(symgroup::centralizer_orders(&t).iter().collect())
}

/// Unordered order pairs realized by commuting permutations of S_n,
/// by explicit enumeration (n <= 8).
#[pyfunction]
fn brute_force_commuting_orders(n: u64) -> PyResult<Vec<(u64, u64)>> {
    Ok(symgroup::brute_force_commuting_orders(n).map_err(value_err)?.into_iter().collect())
}

/// The order quotient of the reduced order-super-commuting graph of S_n.
#[pyclass]
struct OrderGraph {
    inner: supergraph::OrderGraph,
}

#[pymethods]
impl OrderGraph {
    #[getter]
    fn n(&self) -> u64 {
        self.inner.n()
    }

    fn vertices(&self) -> Vec<u64> {
        self.inner.vertices().to_vec()
    }

    fn dominant_removed(&self) -> Vec<u64> {
        self.inner.dominant().to_vec()
    }

    fn has_edge(&self, a: u64, b: u64) -> bool {
        self.inner.has_edge(a, b)
    }

    fn edges(&self) -> Vec<(u64, u64)> {
        self.inner.edges()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    /// The witnessing cycle type of an edge, as a string like "2^2 1^5".
    fn edge_witness(&self, a: u64, b: u64) -> Option<String> {
        self.inner.edge_witness(a, b).map(|t| t.to_string())
    }

    fn components(&self) -> Vec<Vec<u64>> {
        self.inner.components()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    /// Quotient diameter; None when the graph is disconnected.
    fn diameter(&self) -> Option<u64> {
        match self.inner.diameter() {
            supergraph::Diameter::Finite(d) => Some(d),
            supergraph::Diameter::Infinite => None,
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "OrderGraph(n={}, {} vertices, {} edges)",
            self.inner.n(),
            self.inner.vertices().len(),
            self.inner.edge_count()
        )
    }
}

/// Build the reduced order-super-commuting graph quotient (4 <= n <= 60).
#[pyfunction]
fn build_order_graph(n: u64) -> PyResult<OrderGraph> {
    Ok(OrderGraph { inner: supergraph::build_order_graph(n).map_err(value_err)? })
}

/// A witness for the arithmetic criterion equivalent to diameter 3.
#[pyclass]
struct CriterionWitness {
    inner: supergraph::CriterionWitness,
}

#[pymethods]
impl CriterionWitness {
    #[getter]
    fn m(&self) -> u64 {
        self.inner.m
    }

    /// (prime, exponent) pairs of the first set.
    #[getter]
    fn t1(&self) -> Vec<(u64, u32)> {
        self.inner.t1.clone()
    }

    #[getter]
    fn t2(&self) -> Vec<(u64, u32)> {
        self.inner.t2.clone()
    }

    #[getter]
    fn m_beta(&self) -> u64 {
        self.inner.m_beta
    }

    /// Re-derive all defining inequalities; raises on any violation.
    fn validate(&self) -> PyResult<()> {
        self.inner.validate().map_err(PyValueError::new_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "CriterionWitness(n={}, m={}, t1={:?}, t2={:?})",
            self.inner.n, self.inner.m, self.inner.t1, self.inner.t2
        )
    }
}

/// Search for a criterion witness at n (needs n and n-1 composite).
#[pyfunction]
#[pyo3(signature = (n, odd_only = false))]
fn criterion_search(n: u64, odd_only: bool) -> PyResult<Option<CriterionWitness>> {
    let w = supergraph::criterion_search_with(n, odd_only).map_err(value_err)?;
    Ok(w.map(|inner| CriterionWitness { inner }))
}

/// Sweep n in [4, n_max]: criterion witnesses for composite pairs, graph
/// diameters and component counts up to graph_max. Returns
/// (rows_checked, discrepancies).
#[pyfunction]
#[pyo3(signature = (n_max, graph_max = 60, odd_only = false))]
fn verify_corollary2(n_max: u64, graph_max: u64, odd_only: bool) -> PyResult<(usize, Vec<String>)> {
    let report = supergraph::verify_corollary2(n_max, graph_max, odd_only).map_err(value_err)?;
    Ok((report.rows.len(), report.discrepancies))
}

#[pymodule]
fn dcomplete_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<ClassSequence>()?;
    m.add_class::<PresenceTable>()?;
    m.add_class::<CoefficientTable>()?;
    m.add_class::<Certificate>()?;
    m.add_class::<OrderGraph>()?;
    m.add_class::<CriterionWitness>()?;
    m.add_function(wrap_pyfunction!(sieve_class, m)?)?;
    m.add_function(wrap_pyfunction!(interval_check, m)?)?;
    m.add_function(wrap_pyfunction!(build_presence, m)?)?;
    m.add_function(wrap_pyfunction!(build_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(verify_window, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(represent, m)?)?;
    m.add_function(wrap_pyfunction!(exceptional_set, m)?)?;
    m.add_function(wrap_pyfunction!(double_representation, m)?)?;
    m.add_function(wrap_pyfunction!(double_representation_split, m)?)?;
    m.add_function(wrap_pyfunction!(double_exceptional_set, m)?)?;
    m.add_function(wrap_pyfunction!(element_orders, m)?)?;
    m.add_function(wrap_pyfunction!(centralizer_orders, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_commuting_orders, m)?)?;
    m.add_function(wrap_pyfunction!(build_order_graph, m)?)?;
    m.add_function(wrap_pyfunction!(criterion_search, m)?)?;
    m.add_function(wrap_pyfunction!(verify_corollary2, m)?)?;
    Ok(())
}
