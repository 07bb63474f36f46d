//! Dense Hermitian operator algebra on a handful of qubits.
//!
//! Provides Pauli-string construction, the transverse-field Ising builder
//! used by the experiments, and exact spectral oracles (eigendecomposition,
//! matrix exponentials).  Everything is a dense `2^n × 2^n` complex matrix;
//! the deliberate capability cap is [`MAX_QUBITS`] qubits.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{SimError, SimResult};

/// Largest supported register size; larger requests get a capability error.
pub const MAX_QUBITS: usize = 12;

/// Entrywise Hermiticity tolerance enforced on construction.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// One labeled Hermitian term `H_j` of a Hamiltonian `H = Σ_j H_j`.
#[derive(Debug, Clone)]
pub struct HermitianTerm {
    /// Human-readable identifier, e.g. `"-J ZZ"` or `"X1"`.
    pub label: String,
    /// Dense matrix of dimension `2^n`, energy units with ħ = 1.
    pub matrix: DMatrix<Complex64>,
    /// Cached spectral norm (largest singular value).
    pub norm: f64,
}

impl HermitianTerm {
    /// Wrap a dense Hermitian matrix, computing and caching its norm.
    ///
    /// Rejects matrices that are not Hermitian to [`HERMITICITY_TOL`]
    /// entrywise; violations are rejected rather than symmetrized.
    pub fn new(label: impl Into<String>, matrix: DMatrix<Complex64>) -> SimResult<Self> {
        check_square_pow2(&matrix)?;
        let dev = hermiticity_deviation(&matrix);
        if dev > HERMITICITY_TOL {
            return Err(SimError::input(format!(
                "term is not Hermitian: entrywise deviation {dev:.3e} exceeds {HERMITICITY_TOL:.0e}"
            )));
        }
        let norm = spectral_norm_hermitian(&matrix)?;
        Ok(Self {
            label: label.into(),
            matrix,
            norm,
        })
    }

    /// Number of qubits the term acts on.
    pub fn num_qubits(&self) -> usize {
        self.matrix.nrows().trailing_zeros() as usize
    }
}

/// Ordered sum decomposition `H = Σ_j H_j` plus cached metadata.
#[derive(Debug, Clone)]
pub struct HamiltonianModel {
    /// Terms in the order the product formula visits them.
    pub terms: Vec<HermitianTerm>,
    /// Register width n; all terms are `2^n × 2^n`.
    pub num_qubits: usize,
}

impl HamiltonianModel {
    /// Build a model from non-empty, dimension-consistent terms.
    pub fn new(terms: Vec<HermitianTerm>) -> SimResult<Self> {
        let first = terms
            .first()
            .ok_or_else(|| SimError::input("model needs at least one term"))?;
        let num_qubits = first.num_qubits();
        if terms.iter().any(|t| t.num_qubits() != num_qubits) {
            return Err(SimError::input("terms disagree on register width"));
        }
        Ok(Self { terms, num_qubits })
    }

    /// Term count m.
    pub fn m(&self) -> usize {
        self.terms.len()
    }

    /// Largest cached term norm, `max_j ‖H_j‖`.
    pub fn hmax(&self) -> f64 {
        self.terms.iter().fold(0.0, |acc, t| acc.max(t.norm))
    }

    /// Sum of the cached term norms, `Σ_j ‖H_j‖`.
    pub fn norm_sum(&self) -> f64 {
        self.terms.iter().map(|t| t.norm).sum()
    }

    /// Hilbert-space dimension `2^n`.
    pub fn dim(&self) -> usize {
        1 << self.num_qubits
    }

    /// Parse a model description file.
    ///
    /// Format: `{"num_qubits": n, "terms": [{"coeff": c, "pauli": "ZZ.."}]}`;
    /// every Pauli string must have length `num_qubits`.
    pub fn from_json(text: &str) -> SimResult<Self> {
        let spec: ModelSpec = serde_json::from_str(text)
            .map_err(|e| SimError::input(format!("model JSON: {e}")))?;
        spec.build()
    }
}

/// Serialized model description (see [`HamiltonianModel::from_json`]).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelSpec {
    /// Register width n.
    pub num_qubits: usize,
    /// Pauli-string terms, in product-formula order.
    pub terms: Vec<PauliTermSpec>,
}

/// One `coeff × Pauli-string` entry of a [`ModelSpec`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PauliTermSpec {
    /// Real coefficient.
    pub coeff: f64,
    /// String over `{I, X, Y, Z}`, one character per qubit.
    pub pauli: String,
}

impl ModelSpec {
    /// Materialize the dense model, validating string lengths.
    pub fn build(&self) -> SimResult<HamiltonianModel> {
        if self.num_qubits == 0 || self.num_qubits > MAX_QUBITS {
            return Err(SimError::capability(format!(
                "num_qubits must be in 1..={MAX_QUBITS}, got {}",
                self.num_qubits
            )));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.pauli.len() != self.num_qubits {
                return Err(SimError::input(format!(
                    "pauli string {:?} has length {}, expected {}",
                    t.pauli,
                    t.pauli.len(),
                    self.num_qubits
                )));
            }
            terms.push(build_pauli_term(t.coeff, &t.pauli)?);
        }
        HamiltonianModel::new(terms)
    }
}

/// Exact eigensystem of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    /// Eigenvalues sorted ascending.
    pub eigenvalues: DVector<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub eigenvectors: DMatrix<Complex64>,
    /// Minimum adjacent eigenvalue difference (0 for degenerate spectra).
    pub gap: f64,
}

impl SpectralDecomposition {
    /// Smallest eigenvalue.
    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Eigenvector column for the smallest eigenvalue.
    pub fn ground_state(&self) -> DVector<Complex64> {
        self.eigenvectors.column(0).into_owned()
    }
}

/// Build `coeff × P_1 ⊗ P_2 ⊗ …` from a string over `{I, X, Y, Z}`.
///
/// The cached norm is `|coeff|` exactly, since Pauli strings are unitary.
pub fn build_pauli_term(coeff: f64, pauli_string: &str) -> SimResult<HermitianTerm> {
    if pauli_string.is_empty() {
        return Err(SimError::input("pauli string must be nonempty"));
    }
    if !coeff.is_finite() {
        return Err(SimError::input("coefficient must be finite"));
    }
    if pauli_string.len() > MAX_QUBITS {
        return Err(SimError::capability(format!(
            "pauli string length {} exceeds the {MAX_QUBITS}-qubit cap",
            pauli_string.len()
        )));
    }
    let mut matrix = DMatrix::<Complex64>::identity(1, 1);
    for ch in pauli_string.chars() {
        let factor = single_pauli(ch)?;
        matrix = matrix.kronecker(&factor);
    }
    matrix *= Complex64::new(coeff, 0.0);
    Ok(HermitianTerm {
        label: format!("{coeff}*{pauli_string}"),
        matrix,
        norm: coeff.abs(),
    })
}

/// Transverse-field Ising chain `H = −J(Σ Z_i Z_{i+1} + g Σ X_i)`, open
/// boundary, decomposed as all ZZ terms followed by all X terms.
pub fn build_tfim(num_spins: usize, j: f64, g: f64) -> SimResult<HamiltonianModel> {
    if num_spins < 2 {
        return Err(SimError::input(format!(
            "chain needs at least 2 spins, got {num_spins}"
        )));
    }
    if num_spins > MAX_QUBITS {
        return Err(SimError::capability(format!(
            "{num_spins} spins exceeds the {MAX_QUBITS}-qubit cap"
        )));
    }
    let mut terms = Vec::with_capacity(2 * num_spins - 1);
    for i in 0..num_spins - 1 {
        let mut s = vec!['I'; num_spins];
        s[i] = 'Z';
        s[i + 1] = 'Z';
        terms.push(build_pauli_term(-j, &s.iter().collect::<String>())?);
    }
    for i in 0..num_spins {
        let mut s = vec!['I'; num_spins];
        s[i] = 'X';
        terms.push(build_pauli_term(-j * g, &s.iter().collect::<String>())?);
    }
    HamiltonianModel::new(terms)
}

/// Entrywise sum `Σ_j H_j` of the model's terms.
pub fn sum_matrix(model: &HamiltonianModel) -> DMatrix<Complex64> {
    let dim = model.dim();
    let mut sum = DMatrix::<Complex64>::zeros(dim, dim);
    for t in &model.terms {
        sum += &t.matrix;
    }
    sum
}

/// Exact eigendecomposition of a Hermitian matrix, ascending eigenvalues.
pub fn eig_herm(matrix: &DMatrix<Complex64>) -> SimResult<SpectralDecomposition> {
    check_square_pow2(matrix)?;
    let dev = hermiticity_deviation(matrix);
    if dev > 1e-10 {
        return Err(SimError::input(format!(
            "matrix is not Hermitian: entrywise deviation {dev:.3e}"
        )));
    }
    // nalgebra's solver assumes exact Hermiticity; hand it the symmetrized
    // matrix so the 1e-10 input slack cannot leak into complex eigenvalues.
    let sym = (matrix + matrix.adjoint()).scale(0.5);
    let eig = nalgebra::SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let n = order.len();
    let mut eigenvalues = DVector::<f64>::zeros(n);
    let mut eigenvectors = DMatrix::<Complex64>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvalues[dst] = eig.eigenvalues[src];
        eigenvectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    let gap = if n < 2 {
        0.0
    } else {
        (1..n).fold(f64::INFINITY, |acc, i| {
            acc.min(eigenvalues[i] - eigenvalues[i - 1])
        })
    };
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        gap,
    })
}

/// Exact `exp(−i·H·τ)` of a Hermitian matrix via eigendecomposition.
pub fn expm_herm(matrix: &DMatrix<Complex64>, tau: f64) -> SimResult<DMatrix<Complex64>> {
    let eig = eig_herm(matrix)?;
    let mut scaled = eig.eigenvectors.clone();
    for (jcol, &lambda) in eig.eigenvalues.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, -lambda * tau);
        for v in scaled.column_mut(jcol).iter_mut() {
            *v *= phase;
        }
    }
    Ok(&scaled * eig.eigenvectors.adjoint())
}

/// Spectral norm of a Hermitian matrix (largest |eigenvalue|).
pub fn spectral_norm_hermitian(matrix: &DMatrix<Complex64>) -> SimResult<f64> {
    let eig = eig_herm(matrix)?;
    Ok(eig
        .eigenvalues
        .iter()
        .fold(0.0_f64, |acc, &v| acc.max(v.abs())))
}

/// Frobenius norm of `a − b`.
pub fn frobenius_distance(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).norm()
}

/// Spectral norm of a general (not necessarily Hermitian) matrix, computed
/// as the square root of the largest eigenvalue of `M†M`.
pub fn spectral_norm(matrix: &DMatrix<Complex64>) -> f64 {
    let gram = matrix.adjoint() * matrix;
    let eig = nalgebra::SymmetricEigen::new((&gram + gram.adjoint()).scale(0.5));
    eig.eigenvalues
        .iter()
        .fold(0.0_f64, |acc, &v| acc.max(v.max(0.0)))
        .sqrt()
}

fn single_pauli(ch: char) -> SimResult<DMatrix<Complex64>> {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let entries = match ch {
        'I' => [one, z, z, one],
        'X' => [z, one, one, z],
        'Y' => [z, -i, i, z],
        'Z' => [one, z, z, -one],
        other => {
            return Err(SimError::input(format!(
                "invalid pauli character {other:?}, expected one of I, X, Y, Z"
            )))
        }
    };
    Ok(DMatrix::from_row_slice(2, 2, &entries))
}

fn hermiticity_deviation(matrix: &DMatrix<Complex64>) -> f64 {
    let adj = matrix.adjoint();
    (matrix - adj)
        .iter()
        .fold(0.0_f64, |acc, v| acc.max(v.norm()))
}

pub fn check_square_pow2(matrix: &DMatrix<Complex64>) -> SimResult<()> {
    let n = matrix.nrows();
    if n != matrix.ncols() {
        return Err(SimError::input(format!(
            "matrix must be square, got {}×{}",
            n,
            matrix.ncols()
        )));
    }
    if n == 0 || !n.is_power_of_two() {
        return Err(SimError::input(format!(
            "dimension must be a power of two, got {n}"
        )));
    }
    if n > (1 << MAX_QUBITS) {
        return Err(SimError::capability(format!(
            "dimension {n} exceeds the {MAX_QUBITS}-qubit cap"
        )));
    }
    Ok(())
}
