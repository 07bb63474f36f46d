//! Chebyshev nodes, orthonormal basis, fit, and evaluation at zero.
//!
//! The extrapolation grid is the set of Chebyshev nodes
//!
//!   s_i = a·cos((2i−1)π/(2n)),  i = 1..n,   n even,
//!
//! which avoids the origin and makes the design matrix of the orthonormal
//! Chebyshev basis
//!
//!   p_0(s) = √(1/n)·T_0(s/a),   p_j(s) = √(2/n)·T_j(s/a)  (j ≥ 1)
//!
//! exactly orthogonal, so the fit `c = Vᵀy` is perfectly conditioned.  The
//! extrapolated value at s = 0 is the dot product of the data with the
//! closed-form weight vector
//!
//!   d_k(0) = (1/n)·(−1)^{k+n/2}·tan((2k−1)π/(2n)),
//!
//! whose 1-norm stays below the Lebesgue-style factor (2/π)·ln(n+1) + 1, so
//! data errors amplify at most logarithmically.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::{SimError, SimResult};

/// Chebyshev node set on `[−a, a]` with its orthonormal basis matrix.
#[derive(Debug, Clone)]
pub struct ChebyshevGrid {
    /// Interval half-width a > 0.
    pub a: f64,
    /// Even node count n ≥ 2.
    pub n: usize,
    /// Nodes in construction order (strictly decreasing, sign-symmetric).
    pub nodes: Vec<f64>,
    /// Basis matrix `V[k][j] = p_j(s_k)`; orthogonal by construction.
    pub v: DMatrix<f64>,
}

impl ChebyshevGrid {
    /// Nodes with positive sign, i.e. the first n/2 entries.
    pub fn positive_nodes(&self) -> &[f64] {
        &self.nodes[..self.n / 2]
    }
}

/// Result of fitting data on a grid: coefficients and the value at zero.
#[derive(Debug, Clone)]
pub struct InterpolationFit {
    /// Grid the data was fitted on.
    pub grid: ChebyshevGrid,
    /// Coefficients in the orthonormal basis, `c = Vᵀy`.
    pub c: DVector<f64>,
    /// Extrapolated value `p(0) = d(0)·y`.
    pub estimate_at_zero: f64,
    /// Closed-form weights `d(0)`.
    pub weights_d0: Vec<f64>,
}

/// Build the grid and its orthonormal basis matrix.
pub fn make_grid(n: usize, a: f64) -> SimResult<ChebyshevGrid> {
    if n < 2 || n % 2 != 0 {
        return Err(SimError::input(format!(
            "node count must be even and at least 2, got {n}"
        )));
    }
    if !(a > 0.0) || !a.is_finite() {
        return Err(SimError::input(format!("half-width must be positive, got {a}")));
    }
    let angles: Vec<f64> = (1..=n)
        .map(|i| (2 * i - 1) as f64 * PI / (2.0 * n as f64))
        .collect();
    let nodes: Vec<f64> = angles.iter().map(|&th| a * th.cos()).collect();
    // V[k][j] = p_j(s_k); T_j at a node is cos(j·θ_k) exactly.
    let norm0 = (1.0 / n as f64).sqrt();
    let norm = (2.0 / n as f64).sqrt();
    let v = DMatrix::from_fn(n, n, |k, j| {
        if j == 0 {
            norm0
        } else {
            norm * (j as f64 * angles[k]).cos()
        }
    });
    Ok(ChebyshevGrid { a, n, nodes, v })
}

/// Fit data on the grid: `c = Vᵀy` plus the evaluation at zero.
pub fn fit(grid: &ChebyshevGrid, y: &[f64]) -> SimResult<InterpolationFit> {
    if y.len() != grid.n {
        return Err(SimError::input(format!(
            "data length {} does not match node count {}",
            y.len(),
            grid.n
        )));
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(SimError::input("data contains non-finite entries"));
    }
    let yv = DVector::from_column_slice(y);
    let c = grid.v.transpose() * &yv;
    let weights_d0 = weights_at_zero(grid);
    let estimate_at_zero = weights_d0.iter().zip(y.iter()).map(|(d, v)| d * v).sum();
    Ok(InterpolationFit {
        grid: grid.clone(),
        c,
        estimate_at_zero,
        weights_d0,
    })
}

impl InterpolationFit {
    /// Evaluate the interpolant at arbitrary `s` by Clenshaw recurrence.
    ///
    /// Returns the value and a flag that is true when `|s| > a`, i.e. the
    /// evaluation extrapolates beyond the data interval.
    pub fn evaluate(&self, s: f64) -> (f64, bool) {
        let n = self.grid.n;
        let x = s / self.grid.a;
        // Convert orthonormal-basis coefficients to plain T_j coefficients.
        let norm0 = (1.0 / n as f64).sqrt();
        let norm = (2.0 / n as f64).sqrt();
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for j in (1..n).rev() {
            let coef = self.c[j] * norm;
            let b = coef + 2.0 * x * b1 - b2;
            b2 = b1;
            b1 = b;
        }
        let value = self.c[0] * norm0 + x * b1 - b2;
        (value, s.abs() > self.grid.a)
    }
}

/// Closed-form weights `d(0)` mapping node data to the value at zero.
pub fn weights_at_zero(grid: &ChebyshevGrid) -> Vec<f64> {
    let n = grid.n;
    (1..=n)
        .map(|k| {
            let sign = if (k + n / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let angle = (2 * k - 1) as f64 * PI / (2.0 * n as f64);
            sign * angle.tan() / n as f64
        })
        .collect()
}

/// Logarithmic amplification factor `(2/π)·ln(n+1) + 1` that bounds
/// `‖d(0)‖₁`; data tolerances are divided by this factor.
pub fn lebesgue_factor(n: usize) -> f64 {
    (2.0 / PI) * ((n as f64) + 1.0).ln() + 1.0
}

/// Propagate independent per-node noise to the value at zero.
///
/// Returns `(exact, bound)`: the exact standard deviation
/// `σ_R(0) = ‖diag(σ)·d(0)‖₂` and the closed-form bound `√2·max_j σ_j`.
pub fn propagate_variance(sigmas: &[f64], grid: &ChebyshevGrid) -> SimResult<(f64, f64)> {
    if sigmas.len() != grid.n {
        return Err(SimError::input(format!(
            "sigma length {} does not match node count {}",
            sigmas.len(),
            grid.n
        )));
    }
    if sigmas.iter().any(|&s| s < 0.0 || !s.is_finite()) {
        return Err(SimError::input("standard deviations must be finite and nonnegative"));
    }
    let d0 = weights_at_zero(grid);
    let exact = d0
        .iter()
        .zip(sigmas.iter())
        .map(|(d, s)| (d * s).powi(2))
        .sum::<f64>()
        .sqrt();
    let bound = 2.0_f64.sqrt() * sigmas.iter().fold(0.0_f64, |acc, &s| acc.max(s));
    Ok((exact, bound))
}
