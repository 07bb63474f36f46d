//! Python bindings for the extrapolation library: model construction, the
//! three estimation pipelines, and the grid/bound helpers.

use pyo3::exceptions::{PyNotImplementedError, PyValueError};
use pyo3::prelude::*;

use chebtrot::bounds::{
    cheb_remainder_bound, spectral_truncation_chain, total_steps_bound,
};
use chebtrot::chebgrid::{fit, lebesgue_factor, make_grid, weights_at_zero};
use chebtrot::error::SimError;
use chebtrot::estimators::{
    estimate_trotter_error, extrapolate_expectation, extrapolate_ground_energy, DataModel,
    EnergyEstimator,
};
use chebtrot::operators::{build_pauli_term, build_tfim, eig_herm, sum_matrix, HamiltonianModel};
use chebtrot::phase_est::{window_error_budget, GaussianWindowSpec};

fn to_py(err: SimError) -> PyErr {
    match err {
        SimError::Capability(msg) => PyNotImplementedError::new_err(msg),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// Hamiltonian given as a weighted sum of Pauli strings.
#[pyclass(frozen)]
struct Model {
    inner: HamiltonianModel,
}

#[pymethods]
impl Model {
    /// Transverse-field Ising chain with open boundaries.
    #[staticmethod]
    fn tfim(num_spins: usize, j: f64, g: f64) -> PyResult<Self> {
        Ok(Model {
            inner: build_tfim(num_spins, j, g).map_err(to_py)?,
        })
    }

    /// Build from `(coeff, pauli)` pairs such as `(-1.0, "ZZ")`.
    #[staticmethod]
    fn from_terms(terms: Vec<(f64, String)>) -> PyResult<Self> {
        let built = terms
            .into_iter()
            .map(|(coeff, pauli)| build_pauli_term(coeff, &pauli))
            .collect::<Result<Vec<_>, _>>()
            .map_err(to_py)?;
        Ok(Model {
            inner: HamiltonianModel::new(built).map_err(to_py)?,
        })
    }

    /// Parse the JSON model-file format used by the command-line tool.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Model {
            inner: HamiltonianModel::from_json(text).map_err(to_py)?,
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn num_terms(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn norm_sum(&self) -> f64 {
        self.inner.norm_sum()
    }

    /// Eigenvalues of the full Hamiltonian, ascending.
    fn spectrum(&self) -> PyResult<Vec<f64>> {
        let eig = eig_herm(&sum_matrix(&self.inner)).map_err(to_py)?;
        Ok(eig.eigenvalues.iter().cloned().collect())
    }

    fn ground_energy(&self) -> PyResult<f64> {
        Ok(self.spectrum()?[0])
    }

    /// Extrapolate the tracked ground energy to zero step size.
    #[pyo3(signature = (order, t, n, a=1.0))]
    fn extrapolate_energy(&self, order: usize, t: f64, n: usize, a: f64) -> PyResult<EnergyResult> {
        let r = extrapolate_ground_energy(&self.inner, order, t, n, a, &EnergyEstimator::Exact)
            .map_err(to_py)?;
        Ok(EnergyResult {
            estimate: r.estimate,
            reference: r.exact_reference,
            systematic_error: r.systematic_error,
            exponentials_total: r.cost.exponentials_total,
            node_values: r.per_node.iter().map(|rec| (rec.s, rec.value)).collect(),
        })
    }

    /// Extrapolated Heisenberg-picture expectation of a Pauli observable in
    /// the given computational basis state, normalized by the observable
    /// norm.
    #[pyo3(signature = (order, t, n, pauli, basis_state=0, a=1.0))]
    fn expectation(
        &self,
        order: usize,
        t: f64,
        n: usize,
        pauli: &str,
        basis_state: usize,
        a: f64,
    ) -> PyResult<EnergyResult> {
        let dim = self.inner.dim();
        if basis_state >= dim {
            return Err(PyValueError::new_err(format!(
                "basis state {basis_state} out of range for dimension {dim}"
            )));
        }
        let observable = build_pauli_term(1.0, pauli).map_err(to_py)?.matrix;
        let mut rho =
            nalgebra::DMatrix::<num_complex::Complex64>::zeros(dim, dim);
        rho[(basis_state, basis_state)] = num_complex::Complex64::new(1.0, 0.0);
        let r = extrapolate_expectation(
            &self.inner,
            &rho,
            &observable,
            order,
            t,
            n,
            a,
            &DataModel::Exact,
        )
        .map_err(to_py)?;
        Ok(EnergyResult {
            estimate: r.estimate,
            reference: r.exact_reference,
            systematic_error: r.systematic_error,
            exponentials_total: r.cost.exponentials_total,
            node_values: r.per_node.iter().map(|rec| (rec.s, rec.value)).collect(),
        })
    }

    /// Extrapolated normalized Frobenius distance between one product-formula
    /// step and the exact evolution, next to its directly computed value.
    #[pyo3(signature = (order, t, n, a=1.0))]
    fn trotter_error(&self, order: usize, t: f64, n: usize, a: f64) -> PyResult<(f64, f64)> {
        let r = estimate_trotter_error(&self.inner, order, t, n, a, None).map_err(to_py)?;
        Ok((r.estimate, r.exact_reference))
    }

    /// Bernstein-ellipse truncation bound for the configured run, or None
    /// when the analyticity radius does not reach the unit interval.
    #[pyo3(signature = (order, t, n, a=1.0))]
    fn truncation_bound(&self, order: usize, t: f64, n: usize, a: f64) -> PyResult<Option<f64>> {
        let chain = spectral_truncation_chain(&self.inner, order, t, a).map_err(to_py)?;
        Ok(chain.bound(n))
    }

    fn __repr__(&self) -> String {
        format!(
            "Model(dim={}, terms={}, norm_sum={})",
            self.inner.dim(),
            self.inner.m(),
            self.inner.norm_sum()
        )
    }
}

/// Extrapolation outcome with the executed node data.
#[pyclass(frozen, get_all)]
struct EnergyResult {
    estimate: f64,
    reference: f64,
    systematic_error: f64,
    exponentials_total: u64,
    node_values: Vec<(f64, f64)>,
}

#[pymethods]
impl EnergyResult {
    fn __repr__(&self) -> String {
        format!(
            "EnergyResult(estimate={}, reference={}, systematic_error={})",
            self.estimate, self.reference, self.systematic_error
        )
    }
}

/// Chebyshev nodes a·cos((2i−1)π/(2n)), positive half first.
#[pyfunction]
#[pyo3(signature = (n, a=1.0))]
fn chebyshev_nodes(n: usize, a: f64) -> PyResult<Vec<f64>> {
    Ok(make_grid(n, a).map_err(to_py)?.nodes)
}

/// Closed-form extrapolation weights d(0).
#[pyfunction]
#[pyo3(signature = (n, a=1.0))]
fn extrapolation_weights(n: usize, a: f64) -> PyResult<Vec<f64>> {
    Ok(weights_at_zero(&make_grid(n, a).map_err(to_py)?))
}

/// Interpolate node data and evaluate at s = 0.
#[pyfunction]
#[pyo3(signature = (values, a=1.0))]
fn extrapolate_to_zero(values: Vec<f64>, a: f64) -> PyResult<f64> {
    let grid = make_grid(values.len(), a).map_err(to_py)?;
    Ok(fit(&grid, &values).map_err(to_py)?.estimate_at_zero)
}

/// Lebesgue-style stability factor (2/π)ln(n+1) + 1.
#[pyfunction]
fn stability_factor(n: usize) -> f64 {
    lebesgue_factor(n)
}

/// Upper bound on the summed integer step counts of one grid.
#[pyfunction]
#[pyo3(signature = (n, a=1.0))]
fn step_count_bound(n: usize, a: f64) -> PyResult<f64> {
    total_steps_bound(n, a).map_err(to_py)
}

/// Interpolation remainder bound a^n·2^(1−n)/n! times a derivative sup.
#[pyfunction]
fn remainder_bound(n: usize, a: f64, deriv_sup: f64) -> f64 {
    cheb_remainder_bound(n, a, deriv_sup)
}

/// Gaussian window preparation budget (trunc, alias, renorm, total).
#[pyfunction]
#[pyo3(signature = (m, q, sigma_over_t))]
fn window_budget(m: usize, q: usize, sigma_over_t: f64) -> PyResult<(f64, f64, f64, f64)> {
    let spec = GaussianWindowSpec::new(m, q, sigma_over_t, 1.0).map_err(to_py)?;
    let b = window_error_budget(&spec);
    Ok((b.eps_trunc, b.eps_alias, b.eps_renorm, b.eps_total))
}

#[pymodule]
fn chebtrot_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Model>()?;
    m.add_class::<EnergyResult>()?;
    m.add_function(wrap_pyfunction!(chebyshev_nodes, m)?)?;
    m.add_function(wrap_pyfunction!(extrapolation_weights, m)?)?;
    m.add_function(wrap_pyfunction!(extrapolate_to_zero, m)?)?;
    m.add_function(wrap_pyfunction!(stability_factor, m)?)?;
    m.add_function(wrap_pyfunction!(step_count_bound, m)?)?;
    m.add_function(wrap_pyfunction!(remainder_bound, m)?)?;
    m.add_function(wrap_pyfunction!(window_budget, m)?)?;
    Ok(())
}
