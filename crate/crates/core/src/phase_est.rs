//! Gaussian-window phase estimation, simulated exactly.
//!
//! An ancilla register of m qubits is prepared in a truncated discrete
//! Gaussian over x ∈ {−(2^{m−1}−1), …, 2^{m−1}−1}, the system register
//! receives U^x controlled on the ancilla, and a unitary DFT over a
//! zero-padded q-qubit register reads the eigenphase spectrum back out.
//! Phases are handled in cycles (units of one full turn) throughout;
//! callers convert to energy with their own t·s·e′ factor.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{SimError, SimResult};

/// Largest padded register, and a cap on total DFT work (entries × support).
pub const MAX_REGISTER_QUBITS: usize = 20;
const MAX_DFT_WORK: u64 = 1 << 26;

/// Geometry of a Gaussian ancilla window: m window qubits padded to q,
/// time-domain width sigma against sample spacing t_sample.
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct GaussianWindowSpec {
    pub m: usize,
    pub q: usize,
    pub sigma: f64,
    pub t_sample: f64,
    /// Frequency spacing 1/(2^q·T) of the padded register.
    pub f_spacing: f64,
    /// Fourier-conjugate width 1/(4πσ).
    pub sigma_f: f64,
}

impl GaussianWindowSpec {
    pub fn new(m: usize, q: usize, sigma: f64, t_sample: f64) -> SimResult<Self> {
        if m == 0 {
            return Err(SimError::input("window needs at least one qubit"));
        }
        if q < m {
            return Err(SimError::input(format!(
                "padded register q = {q} must not be smaller than the window m = {m}"
            )));
        }
        if q > MAX_REGISTER_QUBITS {
            return Err(SimError::capability(format!(
                "padded register q = {q} exceeds the {MAX_REGISTER_QUBITS}-qubit cap"
            )));
        }
        if !(sigma > 0.0) || !sigma.is_finite() || !(t_sample > 0.0) || !t_sample.is_finite() {
            return Err(SimError::input("sigma and t_sample must be positive"));
        }
        Ok(GaussianWindowSpec {
            m,
            q,
            sigma,
            t_sample,
            f_spacing: 1.0 / ((1u64 << q) as f64 * t_sample),
            sigma_f: 1.0 / (4.0 * std::f64::consts::PI * sigma),
        })
    }

    /// Width ratio σ/T.
    pub fn ratio(&self) -> f64 {
        self.sigma / self.t_sample
    }

    /// Whether σ/T sits inside the intended scaling band
    /// 0.1·√2^m ≤ σ/T ≤ 10·√2^m.
    pub fn regime_ok(&self) -> bool {
        let root = ((1u64 << self.m) as f64).sqrt();
        self.ratio() >= 0.1 * root && self.ratio() <= 10.0 * root
    }
}

/// Truncated discrete Gaussian amplitudes over x ∈ {−(2^{m−1}−1), …,
/// 2^{m−1}−1}; the x = −2^{m−1} slot stays empty.
#[derive(Debug, Clone)]
pub struct WindowState {
    pub m: usize,
    /// Real amplitudes indexed by i with x = i − (2^{m−1} − 1).
    pub amplitudes: Vec<f64>,
    /// Gaussian-density normalization N = Σ p(xT; σ).
    pub normalization: f64,
}

impl WindowState {
    pub fn support_min(&self) -> i64 {
        -((1i64 << (self.m - 1)) - 1)
    }
}

/// Exact measurement distribution over padded frequency bins.
#[derive(Debug, Clone)]
pub struct PhaseDistribution {
    /// Probabilities, bin order 0..2^q−1.
    pub probs: Vec<f64>,
    /// Signed phase of each bin in cycles, in [−½, ½).
    pub bin_phase: Vec<f64>,
}

impl PhaseDistribution {
    /// Mean phase on the circle, in cycles.
    pub fn circular_mean_cycles(&self) -> f64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (p, phase) in self.probs.iter().zip(&self.bin_phase) {
            acc += Complex64::from_polar(*p, 2.0 * std::f64::consts::PI * phase);
        }
        acc.arg() / (2.0 * std::f64::consts::PI)
    }

    /// Spread around the circular mean, in cycles.
    pub fn stddev_cycles(&self) -> f64 {
        let mean = self.circular_mean_cycles();
        let mut var = 0.0;
        for (p, phase) in self.probs.iter().zip(&self.bin_phase) {
            let mut d = phase - mean;
            d -= d.round();
            var += p * d * d;
        }
        var.sqrt()
    }
}

/// Per-node standard deviations minimizing total sampling cost at fixed
/// extrapolation variance.
#[derive(Debug, Clone)]
pub struct VarianceAllocation {
    /// σ_k for the positive nodes k = 1..n/2; infinite where excluded.
    pub sigmas: Vec<f64>,
    /// Nodes skipped because their weight vanishes.
    pub excluded: Vec<bool>,
    /// Cost functional Σ 1/(σ_k·cos_k) at the optimum.
    pub l0: f64,
}

/// Error budget of the padded window against ideal Gaussian samples.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct WindowBudget {
    pub eps_trunc: f64,
    pub eps_alias: f64,
    pub eps_renorm: f64,
    pub eps_total: f64,
}

fn gaussian_density(y: f64, sigma: f64) -> f64 {
    (-y * y / (2.0 * sigma * sigma)).exp()
        / (2.0 * std::f64::consts::PI * sigma * sigma).sqrt()
}

/// Prepare the normalized window amplitudes √(p(xT;σ)/N).
pub fn make_window(m: usize, sigma: f64, t_sample: f64) -> SimResult<WindowState> {
    if m == 0 || m > MAX_REGISTER_QUBITS {
        return Err(SimError::input(format!(
            "window qubits must lie in 1..={MAX_REGISTER_QUBITS}, got {m}"
        )));
    }
    if !(sigma > 0.0) || !(t_sample > 0.0) {
        return Err(SimError::input("sigma and t_sample must be positive"));
    }
    let half = (1i64 << (m - 1)) - 1;
    let mut dens = Vec::with_capacity((2 * half + 1) as usize);
    for x in -half..=half {
        dens.push(gaussian_density(x as f64 * t_sample, sigma));
    }
    let normalization: f64 = dens.iter().sum();
    let amplitudes = dens.iter().map(|p| (p / normalization).sqrt()).collect();
    Ok(WindowState {
        m,
        amplitudes,
        normalization,
    })
}

/// Embed the window into a q-qubit register (time-domain zero-padding) and
/// apply the unitary DFT; returns the 2^q frequency amplitudes.
pub fn upsample(window: &WindowState, q: usize) -> SimResult<Vec<Complex64>> {
    if q < window.m {
        return Err(SimError::input(format!(
            "cannot upsample an m = {} window into q = {q} qubits",
            window.m
        )));
    }
    if q > MAX_REGISTER_QUBITS {
        return Err(SimError::capability(format!(
            "padded register q = {q} exceeds the {MAX_REGISTER_QUBITS}-qubit cap"
        )));
    }
    let size = 1u64 << q;
    if size * window.amplitudes.len() as u64 > MAX_DFT_WORK {
        return Err(SimError::capability(
            "window DFT exceeds the desk-scale work cap",
        ));
    }
    let scale = 1.0 / (size as f64).sqrt();
    let x0 = window.support_min();
    let mut out = Vec::with_capacity(size as usize);
    for k in 0..size {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &w) in window.amplitudes.iter().enumerate() {
            let x = x0 + i as i64;
            let angle = -2.0 * std::f64::consts::PI * (k as f64) * (x as f64) / size as f64;
            acc += Complex64::from_polar(w, angle);
        }
        out.push(acc * scale);
    }
    Ok(out)
}

/// Signed frequency index of bin k in a 2^q register.
pub fn signed_bin(k: usize, q: usize) -> i64 {
    let size = 1i64 << q;
    if (k as i64) >= size / 2 {
        k as i64 - size
    } else {
        k as i64
    }
}

/// Ideal frequency-domain samples √(p(kF;σ_f)/N_f) in DFT bin order, with
/// the unpaired k = −2^{q−1} slot zeroed and excluded from N_f.
pub fn analytic_window_targets(spec: &GaussianWindowSpec) -> Vec<f64> {
    let size = 1usize << spec.q;
    let edge = -(1i64 << (spec.q - 1));
    let mut dens = vec![0.0; size];
    let mut norm = 0.0;
    for (k, d) in dens.iter_mut().enumerate() {
        let ks = signed_bin(k, spec.q);
        if ks == edge {
            continue;
        }
        *d = gaussian_density(ks as f64 * spec.f_spacing, spec.sigma_f);
        norm += *d;
    }
    dens.iter().map(|d| (d / norm).sqrt()).collect()
}

/// Closed-form spectral error budget of the padded window: truncation and
/// aliasing leakage, the renormalization echo 2^{q/2}(ε_tr + ε_al), and
/// their total.
pub fn window_error_budget(spec: &GaussianWindowSpec) -> WindowBudget {
    let half = ((1u64 << (spec.m - 1)) - 1) as f64;
    let window = make_window(spec.m, spec.sigma, spec.t_sample)
        .expect("spec was validated at construction");
    let n = window.normalization;
    let root_sigma_over_t = spec.sigma.sqrt() / spec.t_sample;
    let common = (8.0 * std::f64::consts::PI).powf(0.25) * root_sigma_over_t
        / ((2.0_f64).powf(spec.q as f64 / 2.0) * n.sqrt());
    let eps_trunc =
        common * (-(spec.t_sample * half / (2.0 * spec.sigma)).powi(2)).exp();
    let eps_alias =
        4.0 * common * (-(std::f64::consts::PI * spec.ratio()).powi(2)).exp();
    let eps_renorm = (2.0_f64).powf(spec.q as f64 / 2.0) * (eps_trunc + eps_alias);
    WindowBudget {
        eps_trunc,
        eps_alias,
        eps_renorm,
        eps_total: eps_trunc + eps_alias + eps_renorm,
    }
}

/// Exact measurement distribution of windowed phase estimation: the joint
/// state Σ_x w_x |x⟩ ⊗ U^x|ψ⟩ is built by repeated application of U and U†,
/// zero-padded to q qubits, and Fourier-transformed on the ancilla.
pub fn gqpe_distribution(
    u: &DMatrix<Complex64>,
    psi: &DVector<Complex64>,
    spec: &GaussianWindowSpec,
) -> SimResult<PhaseDistribution> {
    let dim = u.nrows();
    if dim != u.ncols() || dim != psi.len() {
        return Err(SimError::input(
            "unitary and state dimensions must match and be square",
        ));
    }
    let unitarity = (u.adjoint() * u - DMatrix::<Complex64>::identity(dim, dim)).norm();
    if unitarity > 1e-8 {
        return Err(SimError::input(format!(
            "matrix is not unitary: ‖U†U − I‖_F = {unitarity:.3e}"
        )));
    }
    if (psi.norm() - 1.0).abs() > 1e-10 {
        return Err(SimError::input("state vector must be normalized"));
    }
    let window = make_window(spec.m, spec.sigma, spec.t_sample)?;
    let size = 1u64 << spec.q;
    if size * window.amplitudes.len() as u64 * dim as u64 > MAX_DFT_WORK {
        return Err(SimError::capability(
            "phase-estimation DFT exceeds the desk-scale work cap",
        ));
    }

    // Columns of the joint state over the window support.
    let half = (1i64 << (spec.m - 1)) - 1;
    let offset = half as usize;
    let mut columns: Vec<DVector<Complex64>> =
        vec![DVector::zeros(dim); window.amplitudes.len()];
    columns[offset] = psi.clone();
    for x in 1..=half {
        let next = u * &columns[offset + x as usize - 1];
        columns[offset + x as usize] = next;
    }
    let u_dag = u.adjoint();
    for x in 1..=half {
        let next = &u_dag * &columns[offset - x as usize + 1];
        columns[offset - x as usize] = next;
    }

    let scale = 1.0 / (size as f64).sqrt();
    let mut probs = Vec::with_capacity(size as usize);
    let mut bin_phase = Vec::with_capacity(size as usize);
    for k in 0..size {
        let mut acc = DVector::<Complex64>::zeros(dim);
        for (i, &w) in window.amplitudes.iter().enumerate() {
            let x = -half + i as i64;
            let angle = -2.0 * std::f64::consts::PI * (k as f64) * (x as f64) / size as f64;
            let phase = Complex64::from_polar(w * scale, angle);
            acc.zip_apply(&columns[i], |a, c| *a += phase * c);
        }
        probs.push(acc.norm_squared());
        bin_phase.push(signed_bin(k as usize, spec.q) as f64 / size as f64);
    }
    Ok(PhaseDistribution { probs, bin_phase })
}

/// Draw phase estimates from a distribution, stream 0.
pub fn sample_phases(
    dist: &PhaseDistribution,
    shots: usize,
    seed: u64,
) -> SimResult<Vec<f64>> {
    sample_phases_stream(dist, shots, seed, 0)
}

/// Draw phase estimates on an explicit counter stream so independent nodes
/// stay reproducible under any scheduling.
pub fn sample_phases_stream(
    dist: &PhaseDistribution,
    shots: usize,
    seed: u64,
    stream: u64,
) -> SimResult<Vec<f64>> {
    if shots == 0 {
        return Err(SimError::input("need at least one shot"));
    }
    let mut cdf = Vec::with_capacity(dist.probs.len());
    let mut acc = 0.0;
    for &p in &dist.probs {
        acc += p;
        cdf.push(acc);
    }
    let total = acc;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut out = Vec::with_capacity(shots);
    for _ in 0..shots {
        let u: f64 = rng.gen_range(0.0..total);
        let idx = cdf.partition_point(|&c| c < u).min(cdf.len() - 1);
        out.push(dist.bin_phase[idx]);
    }
    Ok(out)
}

/// Optimal per-node standard deviations for a target extrapolation
/// deviation σ_P: σ_k = σ_P/(√2·c_k^{2/3}·cos_k^{1/3}·√S) over the positive
/// nodes, with S = Σ c_j^{2/3}/cos_j^{2/3}.  The constraint
/// 2·Σ c_k²σ_k² = σ_P² holds at the optimum.
pub fn allocate_node_variances(
    d0: &[f64],
    nodes: &[f64],
    sigma_p: f64,
) -> SimResult<VarianceAllocation> {
    let n = d0.len();
    if n == 0 || n % 2 != 0 || nodes.len() != n {
        return Err(SimError::input(
            "weights and nodes must have equal even length",
        ));
    }
    if !(sigma_p > 0.0) || !sigma_p.is_finite() {
        return Err(SimError::input(format!(
            "target deviation must be positive, got {sigma_p}"
        )));
    }
    let half = n / 2;
    let mut excluded = vec![false; half];
    let mut s_sum = 0.0;
    for k in 0..half {
        let c = d0[k].abs();
        let cos = nodes[k].abs();
        if cos == 0.0 {
            return Err(SimError::input("nodes must be nonzero"));
        }
        if c == 0.0 {
            excluded[k] = true;
            continue;
        }
        s_sum += c.powf(2.0 / 3.0) / cos.powf(2.0 / 3.0);
    }
    if s_sum == 0.0 {
        return Err(SimError::input("all node weights vanish"));
    }
    let mut sigmas = vec![f64::INFINITY; half];
    let mut l0 = 0.0;
    for k in 0..half {
        if excluded[k] {
            continue;
        }
        let c = d0[k].abs();
        let cos = nodes[k].abs();
        sigmas[k] = sigma_p
            / (2.0_f64.sqrt() * c.powf(2.0 / 3.0) * cos.powf(1.0 / 3.0) * s_sum.sqrt());
        l0 += 1.0 / (sigmas[k] * cos);
    }
    Ok(VarianceAllocation {
        sigmas,
        excluded,
        l0,
    })
}
