//! End-to-end extrapolation pipelines.
//!
//! Each pipeline evaluates a step-size-dependent quantity at the positive
//! Chebyshev nodes, mirrors the data to the negative nodes (the quantity is
//! even in s), fits the interpolant, and reads off the s = 0 value.  An
//! exact reference from dense diagonalization accompanies every estimate,
//! along with an exponential-count cost ledger.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::chebgrid::{fit, make_grid, InterpolationFit};
use crate::error::{SimError, SimResult};
use crate::operators::{
    check_square_pow2, eig_herm, expm_herm, frobenius_distance, spectral_norm_hermitian,
    sum_matrix, HamiltonianModel,
};
use crate::phase_est::{gqpe_distribution, sample_phases_stream, GaussianWindowSpec};
use crate::trotter::{
    apply_scheme, evolve_fractional, integer_step_count, st_scheme, unitary_eig, unitary_power,
    TrotterScheme,
};

/// Fraction of the phase window reserved as padding; eigenphases must stay
/// within π·(1 − DELTA_PAD) of zero so no energy wraps around the circle.
pub const DELTA_PAD: f64 = 0.2;

/// How ground-state phases are read out of the node unitaries.
#[derive(Debug, Clone)]
pub enum EnergyEstimator {
    /// Principal eigenphase from dense eigendecomposition.
    Exact,
    /// Windowed phase estimation with sampled shots.
    Gqpe {
        spec: GaussianWindowSpec,
        shots: usize,
        seed: u64,
    },
}

/// How expectation-value data is perturbed before fitting.
#[derive(Debug, Clone)]
pub enum DataModel {
    Exact,
    GaussianNoise { sigma: f64, seed: u64 },
    Shot { shots: usize, seed: u64 },
}

/// Additive noise on the extracted Frobenius phase.
#[derive(Debug, Clone, Copy)]
pub struct PhaseNoise {
    pub sigma: f64,
    pub seed: u64,
}

/// Sampling model recorded in a cost ledger.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepetitionModel {
    Exact,
    Shots(u64),
    IqaeFormula,
}

/// Exponential count charged to one node.
#[derive(Debug, Clone, Copy)]
pub struct NodeCost {
    pub s: f64,
    pub e_prime: u64,
    pub repetitions: u64,
    pub exponentials: u64,
}

/// Exponential-count ledger over the positive nodes.
#[derive(Debug, Clone)]
pub struct CostLedger {
    pub exponentials_total: u64,
    pub per_node: Vec<NodeCost>,
    pub repetitions_model: RepetitionModel,
    /// Exponentials charged per formula step, 2m·5^{k−1}.
    pub nominal_stage_count: u64,
    /// Stage count after merging adjacent same-term factors.
    pub merged_stage_count: usize,
    /// True only when negative nodes are executed instead of reusing the
    /// mirrored data.
    pub mirror_executed: bool,
}

/// One positive node's contribution to a fit.
#[derive(Debug, Clone, Copy)]
pub struct NodeRecord {
    pub s: f64,
    /// Data value entering the fit (energy, normalized expectation, or
    /// Frobenius phase, depending on the pipeline).
    pub value: f64,
    /// Injected or sampled standard deviation; None means exact data.
    pub sigma: Option<f64>,
    pub e_prime: i64,
}

/// A zero-step estimate with its provenance.
#[derive(Debug, Clone)]
pub struct ExtrapolationResult {
    /// Final deliverable; for the Frobenius pipeline this is sin of the
    /// fitted phase, otherwise the fit value at s = 0.
    pub estimate: f64,
    pub fit: InterpolationFit,
    pub per_node: Vec<NodeRecord>,
    pub exact_reference: f64,
    pub systematic_error: f64,
    pub cost: CostLedger,
    /// Set when noise pushed a phase outside [0, π/2] and it was clamped.
    pub clamped: bool,
}

/// Exponential-count ledger for an n-node grid: each positive node charges
/// `2m·5^{k−1}·e′_k·repetitions`.  Negative nodes reuse mirrored data and
/// charge nothing.
pub fn cost_ledger(
    n: usize,
    a: f64,
    order: usize,
    m: usize,
    repetitions_per_node: &[u64],
) -> SimResult<CostLedger> {
    let grid = make_grid(n, a)?;
    let scheme = st_scheme(order, m)?;
    let half = n / 2;
    if repetitions_per_node.len() != 1 && repetitions_per_node.len() != half {
        return Err(SimError::input(format!(
            "need 1 or {half} repetition entries, got {}",
            repetitions_per_node.len()
        )));
    }
    let stage = scheme.nominal_stage_count();
    let s1 = grid.nodes[0];
    let mut per_node = Vec::with_capacity(half);
    let mut total = 0u64;
    for k in 0..half {
        let s = grid.nodes[k];
        let e_prime = integer_step_count(s, s1)? as u64;
        let reps = repetitions_per_node[k.min(repetitions_per_node.len() - 1)];
        let exponentials = stage * e_prime * reps;
        total += exponentials;
        per_node.push(NodeCost {
            s,
            e_prime,
            repetitions: reps,
            exponentials,
        });
    }
    let uniform_one = repetitions_per_node.iter().all(|&r| r == 1);
    Ok(CostLedger {
        exponentials_total: total,
        per_node,
        repetitions_model: if uniform_one {
            RepetitionModel::Exact
        } else {
            RepetitionModel::Shots(*repetitions_per_node.iter().max().unwrap())
        },
        nominal_stage_count: stage,
        merged_stage_count: scheme.merged_stage_count(),
        mirror_executed: false,
    })
}

fn check_phase_window(phases: &[f64]) -> SimResult<()> {
    let limit = std::f64::consts::PI * (1.0 - DELTA_PAD);
    let max_abs = phases.iter().fold(0.0_f64, |acc, &p| acc.max(p.abs()));
    if max_abs > limit {
        return Err(SimError::domain(format!(
            "eigenphase {max_abs:.4} exceeds the padded window {limit:.4}; \
             reduce t or the step parameter"
        )));
    }
    Ok(())
}

fn overlap_weight(vectors: &DMatrix<Complex64>, j: usize, target: &DVector<Complex64>) -> f64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..target.len() {
        acc += vectors[(i, j)].conj() * target[i];
    }
    acc.norm_sqr()
}

/// Column index and eigenphase of the eigenvector with maximal overlap
/// against a reference state, with a level-crossing guard: the selected
/// level must still carry the maximal phase (the ground level does, since
/// phases are −E times a positive factor).
fn tracked_level(
    phases: &[f64],
    vectors: &DMatrix<Complex64>,
    target: &DVector<Complex64>,
) -> SimResult<(usize, f64)> {
    let mut best = 0usize;
    let mut best_w = -1.0;
    for j in 0..phases.len() {
        let w = overlap_weight(vectors, j, target);
        if w > best_w {
            best_w = w;
            best = j;
        }
    }
    let scale = phases.iter().fold(1.0_f64, |acc, &p| acc.max(p.abs()));
    let tol = 1e-9 * scale;
    let selected = phases[best];
    let extreme = phases.iter().fold(f64::NEG_INFINITY, |acc, &p| acc.max(p));
    if (selected - extreme).abs() > tol {
        return Err(SimError::domain(
            "level crossing: the tracked state no longer carries the extreme eigenphase",
        ));
    }
    Ok((best, selected))
}

fn circular_mean_cycles(samples: &[f64]) -> f64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &p in samples {
        acc += Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * p);
    }
    acc.arg() / (2.0 * std::f64::consts::PI)
}

fn standard_normal(rng: &mut ChaCha12Rng) -> f64 {
    loop {
        let u1: f64 = rng.gen();
        if u1 > 1e-300 {
            let u2: f64 = rng.gen();
            return (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos();
        }
    }
}

/// Ground-state energy by node-wise phase readout and extrapolation to
/// s = 0.  Each positive node k evaluates S(t·s_k)^{e′_k}, reads the phase
/// of the level tracked by overlap with the s = 0 ground state, converts it
/// to energy, and mirrors the value to −s_k.
pub fn extrapolate_ground_energy(
    model: &HamiltonianModel,
    order: usize,
    t: f64,
    n: usize,
    a: f64,
    estimator: &EnergyEstimator,
) -> SimResult<ExtrapolationResult> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(SimError::input(format!("time must be positive, got {t}")));
    }
    let grid = make_grid(n, a)?;
    let scheme = st_scheme(order, model.m())?;
    let reference = eig_herm(&sum_matrix(model))?;
    let ground = reference.ground_state();
    let e0 = reference.ground_energy();
    let half = n / 2;
    let s1 = grid.nodes[0];

    let records: Vec<SimResult<NodeRecord>> = (0..half)
        .into_par_iter()
        .map(|k| {
            let s = grid.nodes[k];
            let e_prime = integer_step_count(s, s1)?;
            let step = apply_scheme(model, &scheme, t * s)?;
            let powered = unitary_power(&step, e_prime);
            let (phases, vectors) = unitary_eig(&powered)?;
            check_phase_window(&phases)?;
            // Phase is −E·t·s·e′, so the ground level carries the largest
            // phase; track it by overlap with the s = 0 ground state.
            let (level, theta) = tracked_level(&phases, &vectors, &ground)?;
            let denom = t * s * e_prime as f64;
            match estimator {
                EnergyEstimator::Exact => Ok(NodeRecord {
                    s,
                    value: -theta / denom,
                    sigma: None,
                    e_prime,
                }),
                EnergyEstimator::Gqpe { spec, shots, seed } => {
                    let psi = vectors.column(level).into_owned();
                    let dist = gqpe_distribution(&powered, &psi, spec)?;
                    let samples = sample_phases_stream(&dist, *shots, *seed, k as u64)?;
                    let mean_cycles = circular_mean_cycles(&samples);
                    let mut var = 0.0;
                    for &p in &samples {
                        let mut d = p - mean_cycles;
                        d -= d.round();
                        var += d * d;
                    }
                    let sd_cycles = (var / samples.len() as f64).sqrt();
                    let se_cycles = sd_cycles / (samples.len() as f64).sqrt();
                    // The distribution peaks at θ cycles, so energy is
                    // −2π·cycles/denominator.
                    let factor = 2.0 * std::f64::consts::PI / denom;
                    Ok(NodeRecord {
                        s,
                        value: -factor * mean_cycles,
                        sigma: Some(se_cycles * factor.abs()),
                        e_prime,
                    })
                }
            }
        })
        .collect();

    let mut per_node = Vec::with_capacity(half);
    for r in records {
        per_node.push(r?);
    }

    let mut y = vec![0.0; n];
    for (k, rec) in per_node.iter().enumerate() {
        y[k] = rec.value;
        y[n - 1 - k] = rec.value;
    }
    let fit = fit(&grid, &y)?;
    let estimate = fit.estimate_at_zero;
    let reps: Vec<u64> = match estimator {
        EnergyEstimator::Exact => vec![1],
        EnergyEstimator::Gqpe { shots, .. } => vec![*shots as u64],
    };
    let cost = cost_ledger(n, a, order, model.m(), &reps)?;
    Ok(ExtrapolationResult {
        estimate,
        fit,
        per_node,
        exact_reference: e0,
        systematic_error: (estimate - e0).abs(),
        cost,
        clamped: false,
    })
}

/// Normalized Heisenberg-picture expectation tr(ρ·Ũ_s† O Ũ_s)/‖O‖ per node,
/// optionally perturbed, extrapolated to s = 0.
pub fn extrapolate_expectation(
    model: &HamiltonianModel,
    rho: &DMatrix<Complex64>,
    observable: &DMatrix<Complex64>,
    order: usize,
    t: f64,
    n: usize,
    a: f64,
    data_model: &DataModel,
) -> SimResult<ExtrapolationResult> {
    let dim = model.dim();
    if rho.nrows() != dim || rho.ncols() != dim || observable.nrows() != dim
        || observable.ncols() != dim
    {
        return Err(SimError::input(
            "state and observable must match the model dimension",
        ));
    }
    let trace: Complex64 = (0..dim).map(|i| rho[(i, i)]).sum();
    if (trace.re - 1.0).abs() > 1e-10 || trace.im.abs() > 1e-10 {
        return Err(SimError::input(format!(
            "density matrix must have unit trace, got {trace}"
        )));
    }
    if (rho - rho.adjoint()).norm() > 1e-10 {
        return Err(SimError::input("density matrix must be Hermitian"));
    }
    if (observable - observable.adjoint()).norm() > 1e-10 {
        return Err(SimError::input("observable must be Hermitian"));
    }
    let norm_o = spectral_norm_hermitian(observable)?;
    if norm_o <= 0.0 {
        return Err(SimError::input("observable must be nonzero"));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(SimError::input(format!(
            "time must be nonnegative, got {t}"
        )));
    }
    let grid = make_grid(n, a)?;
    let scheme = st_scheme(order, model.m())?;
    let half = n / 2;

    let expectation = |u: &DMatrix<Complex64>| -> f64 {
        let evolved = u.adjoint() * observable * u;
        let mut tr = Complex64::new(0.0, 0.0);
        for i in 0..dim {
            for j in 0..dim {
                tr += rho[(i, j)] * evolved[(j, i)];
            }
        }
        tr.re / norm_o
    };

    let u_exact = expm_herm(&sum_matrix(model), t)?;
    let reference = expectation(&u_exact);

    let raw: Vec<SimResult<(f64, f64)>> = (0..half)
        .into_par_iter()
        .map(|k| {
            let s = grid.nodes[k];
            let u = evolve_fractional(model, &scheme, t, s)?;
            Ok((s, expectation(&u)))
        })
        .collect();

    // Exact values are even in s, so the mirrored entries reuse the
    // positive-node computation; each of the n data points then receives
    // its own independent perturbation stream.
    let mut f_even = vec![0.0; n];
    for (k, r) in raw.into_iter().enumerate() {
        let (_, f_exact) = r?;
        f_even[k] = f_exact;
        f_even[n - 1 - k] = f_exact;
    }
    let mut y = vec![0.0; n];
    let mut sigmas = vec![None; n];
    for idx in 0..n {
        let (value, sigma) = match data_model {
            DataModel::Exact => (f_even[idx], None),
            DataModel::GaussianNoise { sigma, seed } => {
                let mut rng = ChaCha12Rng::seed_from_u64(*seed);
                rng.set_stream(idx as u64);
                (f_even[idx] + sigma * standard_normal(&mut rng), Some(*sigma))
            }
            DataModel::Shot { shots, seed } => {
                let mut rng = ChaCha12Rng::seed_from_u64(*seed);
                rng.set_stream(idx as u64);
                // Block-encoded amplitude (1 + f)/2 with unit normalization.
                let p = ((1.0 + f_even[idx]) / 2.0).clamp(0.0, 1.0);
                let mut hits = 0u64;
                for _ in 0..*shots {
                    if rng.gen::<f64>() < p {
                        hits += 1;
                    }
                }
                let p_hat = hits as f64 / *shots as f64;
                let se = (p * (1.0 - p) / *shots as f64).sqrt() * 2.0;
                (2.0 * p_hat - 1.0, Some(se))
            }
        };
        y[idx] = value;
        sigmas[idx] = sigma;
    }
    let s1 = grid.nodes[0];
    let mut per_node = Vec::with_capacity(half);
    for k in 0..half {
        per_node.push(NodeRecord {
            s: grid.nodes[k],
            value: y[k],
            sigma: sigmas[k],
            e_prime: integer_step_count(grid.nodes[k], s1)?,
        });
    }
    let fit = fit(&grid, &y)?;
    let estimate = fit.estimate_at_zero;
    let reps: Vec<u64> = match data_model {
        DataModel::Shot { shots, .. } => vec![*shots as u64],
        _ => vec![1],
    };
    let cost = cost_ledger(n, a, order, model.m(), &reps)?;
    Ok(ExtrapolationResult {
        estimate,
        fit,
        per_node,
        exact_reference: reference,
        systematic_error: (estimate - reference).abs(),
        cost,
        clamped: false,
    })
}

/// Measurement probability of the difference branch of the two-unitary
/// interference circuit on the maximally mixed state: ‖U − V‖_F²/2^{n+2}.
pub fn frobenius_probability(
    u: &DMatrix<Complex64>,
    v: &DMatrix<Complex64>,
) -> SimResult<f64> {
    check_square_pow2(u)?;
    check_square_pow2(v)?;
    if u.nrows() != v.nrows() {
        return Err(SimError::input(format!(
            "dimension mismatch: {} vs {}",
            u.nrows(),
            v.nrows()
        )));
    }
    let fd = frobenius_distance(u, v);
    Ok(fd * fd / (4.0 * u.nrows() as f64))
}

/// Trotter error d(Ũ_s(t), S(t)) per node mapped through φ = asin(√p),
/// extrapolated in φ, and mapped back as d̂ = sin(φ̂(0)).  The reference is
/// the directly computed d(S(t), e^{−iHt}).
pub fn estimate_trotter_error(
    model: &HamiltonianModel,
    order: usize,
    t: f64,
    n: usize,
    a: f64,
    phase_noise: Option<PhaseNoise>,
) -> SimResult<ExtrapolationResult> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(SimError::input(format!("time must be positive, got {t}")));
    }
    let grid = make_grid(n, a)?;
    let scheme = st_scheme(order, model.m())?;
    let half = n / 2;
    let s_full = apply_scheme(model, &scheme, t)?;
    let u_exact = expm_herm(&sum_matrix(model), t)?;
    let reference = frobenius_probability(&s_full, &u_exact)?.sqrt();

    let raw: Vec<SimResult<(f64, f64)>> = (0..half)
        .into_par_iter()
        .map(|k| {
            let s = grid.nodes[k];
            let u = evolve_fractional(model, &scheme, t, s)?;
            let p = frobenius_probability(&u, &s_full)?;
            Ok((s, p.sqrt().min(1.0).asin()))
        })
        .collect();

    let mut phi_even = vec![0.0; n];
    for (k, r) in raw.into_iter().enumerate() {
        let (_, phi) = r?;
        phi_even[k] = phi;
        phi_even[n - 1 - k] = phi;
    }
    let mut y = vec![0.0; n];
    let mut clamped = false;
    for idx in 0..n {
        let mut phi = phi_even[idx];
        if let Some(noise) = phase_noise {
            let mut rng = ChaCha12Rng::seed_from_u64(noise.seed);
            rng.set_stream(idx as u64);
            phi += noise.sigma * standard_normal(&mut rng);
            let clipped = phi.clamp(0.0, std::f64::consts::FRAC_PI_2);
            if clipped != phi {
                clamped = true;
                phi = clipped;
            }
        }
        y[idx] = phi;
    }
    let s1 = grid.nodes[0];
    let mut per_node = Vec::with_capacity(half);
    for k in 0..half {
        per_node.push(NodeRecord {
            s: grid.nodes[k],
            value: y[k],
            sigma: phase_noise.map(|p| p.sigma),
            e_prime: integer_step_count(grid.nodes[k], s1)?,
        });
    }
    let fit = fit(&grid, &y)?;
    let estimate = fit.estimate_at_zero.sin();
    let cost = cost_ledger(n, a, order, model.m(), &[1])?;
    Ok(ExtrapolationResult {
        estimate,
        fit,
        per_node,
        exact_reference: reference,
        systematic_error: (estimate - reference).abs(),
        cost,
        clamped,
    })
}

/// Ground energy of the effective Hamiltonian at step s, tracked by overlap
/// with a reference state.
pub fn tracked_ground_energy(
    model: &HamiltonianModel,
    scheme: &TrotterScheme,
    t: f64,
    s: f64,
    ground: &DVector<Complex64>,
) -> SimResult<f64> {
    let step = apply_scheme(model, scheme, t * s)?;
    let (phases, vectors) = unitary_eig(&step)?;
    check_phase_window(&phases)?;
    let (_, theta) = tracked_level(&phases, &vectors, ground)?;
    Ok(-theta / (t * s))
}

/// Cost-versus-accuracy comparison between plain step refinement and node
/// extrapolation at matched systematic error.
#[derive(Debug, Clone)]
pub struct CrossoverReport {
    pub eps_grid: Vec<f64>,
    /// (steps r, exponentials, error) for the plain formula at sampled r.
    pub single_points: Vec<(u64, u64, f64)>,
    /// (n, exponentials, error) for extrapolation at each node count.
    pub extrap_points: Vec<(usize, u64, f64)>,
    /// Cheapest single-formula cost meeting each ε, if reachable.
    pub single_costs: Vec<Option<u64>>,
    /// Cheapest extrapolation cost meeting each ε with the n that won.
    pub extrap_costs: Vec<Option<(u64, usize)>>,
    /// Largest grid ε such that extrapolation wins at it and at every
    /// smaller grid ε.
    pub eps_star: Option<f64>,
}

const MAX_SINGLE_STEPS: u64 = 1 << 21;

/// Scan target errors and report where extrapolation becomes cheaper than
/// refining the plain formula.
pub fn crossover_scan(
    model: &HamiltonianModel,
    order: usize,
    t: f64,
    a: f64,
    n_list: &[usize],
    eps_grid: &[f64],
) -> SimResult<CrossoverReport> {
    if eps_grid.is_empty() || n_list.is_empty() {
        return Err(SimError::input("need at least one ε and one node count"));
    }
    let scheme = st_scheme(order, model.m())?;
    let stage = scheme.nominal_stage_count();
    let reference = eig_herm(&sum_matrix(model))?;
    let ground = reference.ground_state();
    let e0 = reference.ground_energy();

    let mut cache: std::collections::BTreeMap<u64, f64> = std::collections::BTreeMap::new();
    let mut err_at = |r: u64| -> SimResult<f64> {
        if let Some(&e) = cache.get(&r) {
            return Ok(e);
        }
        let val = tracked_ground_energy(model, &scheme, t, 1.0 / r as f64, &ground)?;
        let e = (val - e0).abs();
        cache.insert(r, e);
        Ok(e)
    };

    let mut extrap_points = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let result = extrapolate_ground_energy(model, order, t, n, a, &EnergyEstimator::Exact)?;
        extrap_points.push((n, result.cost.exponentials_total, result.systematic_error));
    }

    let mut single_costs = Vec::with_capacity(eps_grid.len());
    let mut extrap_costs = Vec::with_capacity(eps_grid.len());
    let mut single_points: Vec<(u64, u64, f64)> = Vec::new();
    for &eps in eps_grid {
        // Double r until the error target is met, then bisect for the
        // smallest sufficient step count.
        let mut hi = 1u64;
        let mut reachable = true;
        while err_at(hi)? > eps {
            if hi >= MAX_SINGLE_STEPS {
                reachable = false;
                break;
            }
            hi *= 2;
        }
        let single = if reachable {
            let mut lo = hi / 2;
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if err_at(mid)? <= eps {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            single_points.push((hi, hi * stage, err_at(hi)?));
            Some(hi * stage)
        } else {
            None
        };
        single_costs.push(single);

        let best = extrap_points
            .iter()
            .filter(|(_, _, err)| *err <= eps)
            .min_by_key(|(_, cost, _)| *cost)
            .map(|&(n, cost, _)| (cost, n));
        extrap_costs.push(best);
    }
    single_points.sort_by_key(|&(r, _, _)| r);
    single_points.dedup_by_key(|&mut (r, _, _)| r);

    // Walk from the smallest ε upward; extrapolation must win everywhere
    // below ε*.
    let mut order_idx: Vec<usize> = (0..eps_grid.len()).collect();
    order_idx.sort_by(|&i, &j| eps_grid[i].total_cmp(&eps_grid[j]));
    let mut eps_star = None;
    for &i in &order_idx {
        let win = match (&extrap_costs[i], &single_costs[i]) {
            (Some((ec, _)), Some(sc)) => ec < sc,
            (Some(_), None) => true,
            _ => false,
        };
        if win {
            eps_star = Some(eps_grid[i]);
        } else {
            break;
        }
    }
    Ok(CrossoverReport {
        eps_grid: eps_grid.to_vec(),
        single_points,
        extrap_points,
        single_costs,
        extrap_costs,
        eps_star,
    })
}
