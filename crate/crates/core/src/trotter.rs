//! Symmetric product formulas, fractional steps, and effective Hamiltonians.
//!
//! The order-2 scheme for terms H_1..H_m is the palindrome
//!
//!   S_2(t) = e^{−iH_1 t/2} ⋯ e^{−iH_{m−1} t/2} e^{−iH_m t} e^{−iH_{m−1} t/2} ⋯ e^{−iH_1 t/2},
//!
//! and order 2k is built recursively as
//!
//!   S_{2k}(t) = S_{2k−2}(u_k t)² S_{2k−2}((1−4u_k)t) S_{2k−2}(u_k t)²,
//!   u_k = (4 − 4^{1/(2k−1)})^{−1}.
//!
//! The step parameter s ∈ (0,1] defines the fractional evolution
//! Ũ_s(t) = S(st)^{1/s}, evaluated exactly through the principal
//! eigendecomposition of the unitary, and the effective Hamiltonian
//! H̃_s = (i/(st))·log S(st), the Hermitian generator whose exact evolution
//! reproduces the Trotterized one.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{SimError, SimResult};
use crate::operators::{expm_herm, HamiltonianModel};

/// Margin kept between eigenphases and the ±π branch cut.
pub const BRANCH_MARGIN: f64 = 1e-6;

/// Stage list realizing an order-2k symmetric product formula.
#[derive(Debug, Clone)]
pub struct TrotterScheme {
    /// Formula order 2k (even, ≥ 2).
    pub order: usize,
    /// Number of Hamiltonian terms m the scheme addresses.
    pub num_terms: usize,
    /// Stages in application order: `(term index, fraction)` meaning a factor
    /// `exp(−i·H_term·fraction·t)`.  Adjacent same-term stages are merged.
    pub stages: Vec<(usize, f64)>,
}

impl TrotterScheme {
    /// Half-order k.
    pub fn k(&self) -> usize {
        self.order / 2
    }

    /// Unmerged stage count `2m·5^{k−1}` of the symmetric construction;
    /// this is the exponential count a single step charges to the ledger.
    pub fn nominal_stage_count(&self) -> u64 {
        2 * self.num_terms as u64 * 5u64.pow(self.k() as u32 - 1)
    }

    /// Stage count after merging adjacent same-term factors.
    pub fn merged_stage_count(&self) -> usize {
        self.stages.len()
    }
}

/// Hermitian generator reproducing the Trotterized evolution at step s.
#[derive(Debug, Clone)]
pub struct EffectiveHamiltonian {
    /// Dense Hermitian matrix H̃_s.
    pub matrix: DMatrix<Complex64>,
    /// Step parameter the generator belongs to.
    pub s: f64,
    /// Evolution time t.
    pub t: f64,
    /// Formula order 2k.
    pub order: usize,
}

/// Build the order-2k symmetric scheme for m terms.
pub fn st_scheme(order: usize, m: usize) -> SimResult<TrotterScheme> {
    if order == 0 || order % 2 != 0 {
        return Err(SimError::input(format!(
            "formula order must be even and positive, got {order}"
        )));
    }
    if m == 0 {
        return Err(SimError::input("scheme needs at least one term"));
    }
    // Order-2 palindrome: half-steps out to the last term and back.
    let mut stages: Vec<(usize, f64)> = Vec::with_capacity(2 * m - 1);
    for j in 0..m - 1 {
        stages.push((j, 0.5));
    }
    stages.push((m - 1, 1.0));
    for j in (0..m - 1).rev() {
        stages.push((j, 0.5));
    }

    let mut current_order = 2;
    while current_order < order {
        let k = current_order / 2 + 1;
        let u = 1.0 / (4.0 - 4.0_f64.powf(1.0 / (2.0 * k as f64 - 1.0)));
        let block_scales = [u, u, 1.0 - 4.0 * u, u, u];
        let mut next = Vec::with_capacity(5 * stages.len());
        for scale in block_scales {
            for &(idx, frac) in &stages {
                next.push((idx, frac * scale));
            }
        }
        stages = merge_adjacent(next);
        current_order += 2;
    }

    Ok(TrotterScheme {
        order,
        num_terms: m,
        stages,
    })
}

fn merge_adjacent(stages: Vec<(usize, f64)>) -> Vec<(usize, f64)> {
    let mut merged: Vec<(usize, f64)> = Vec::with_capacity(stages.len());
    for (idx, frac) in stages {
        match merged.last_mut() {
            Some((last_idx, last_frac)) if *last_idx == idx => *last_frac += frac,
            _ => merged.push((idx, frac)),
        }
    }
    merged
}

/// Evaluate the product formula `S_{2k}(t)` as a dense unitary.
pub fn apply_scheme(
    model: &HamiltonianModel,
    scheme: &TrotterScheme,
    t: f64,
) -> SimResult<DMatrix<Complex64>> {
    if scheme.num_terms != model.m() {
        return Err(SimError::input(format!(
            "scheme addresses {} terms but model has {}",
            scheme.num_terms,
            model.m()
        )));
    }
    let dim = model.dim();
    let mut u = DMatrix::<Complex64>::identity(dim, dim);
    for &(idx, frac) in &scheme.stages {
        let factor = expm_herm(&model.terms[idx].matrix, frac * t)?;
        u = u * factor;
    }
    Ok(u)
}

/// Eigendecompose a unitary into principal eigenphases θ_j ∈ (−π, π] and an
/// orthonormal eigenvector matrix Q, so `U = Q·diag(e^{iθ})·Q†`.
///
/// Works through the commuting Hermitian pair `A = (U+U†)/2`,
/// `B = (U−U†)/(2i)`: A is diagonalized first, then B is diagonalized inside
/// each degenerate A-cluster, which separates conjugate phase pairs.
pub fn unitary_eig(u: &DMatrix<Complex64>) -> SimResult<(Vec<f64>, DMatrix<Complex64>)> {
    let dim = u.nrows();
    if dim != u.ncols() {
        return Err(SimError::input("matrix must be square"));
    }
    let dev = (u.adjoint() * u - DMatrix::<Complex64>::identity(dim, dim)).norm();
    if dev > 1e-8 {
        return Err(SimError::input(format!(
            "matrix is not unitary: ‖U†U − I‖_F = {dev:.3e}"
        )));
    }

    let a = (u + u.adjoint()).scale(0.5);
    let b = (u - u.adjoint()) * Complex64::new(0.0, -0.5);

    let eig_a = nalgebra::SymmetricEigen::new(a);
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&p, &q| eig_a.eigenvalues[p].total_cmp(&eig_a.eigenvalues[q]));

    let mut alphas = vec![0.0; dim];
    let mut q = DMatrix::<Complex64>::zeros(dim, dim);
    for (dst, &src) in order.iter().enumerate() {
        alphas[dst] = eig_a.eigenvalues[src];
        q.set_column(dst, &eig_a.eigenvectors.column(src));
    }

    // Cluster degenerate cos-eigenvalues and separate them by sin.
    let cluster_tol = 1e-8;
    let mut phases = vec![0.0; dim];
    let mut start = 0;
    while start < dim {
        let mut end = start + 1;
        while end < dim && alphas[end] - alphas[end - 1] <= cluster_tol {
            end += 1;
        }
        let width = end - start;
        if width == 1 {
            let col = q.column(start);
            let beta = (col.adjoint() * &b * col)[(0, 0)].re;
            phases[start] = beta.atan2(alphas[start]);
        } else {
            let qc = q.columns(start, width).into_owned();
            let b_sub = qc.adjoint() * &b * &qc;
            let eig_b = nalgebra::SymmetricEigen::new((&b_sub + b_sub.adjoint()).scale(0.5));
            let rotated = &qc * &eig_b.eigenvectors;
            for (offset, &beta) in eig_b.eigenvalues.iter().enumerate() {
                let mut alpha = alphas[start + offset];
                // Keep the pair on the unit circle despite cluster spread.
                alpha = alpha.clamp(-1.0, 1.0);
                phases[start + offset] = beta.atan2(alpha);
                q.set_column(start + offset, &rotated.column(offset));
            }
        }
        start = end;
    }

    // atan2 returns −π only for negative-zero inputs; fold onto the
    // principal branch's closed end.
    for th in phases.iter_mut() {
        if *th <= -std::f64::consts::PI {
            *th = std::f64::consts::PI;
        }
    }
    Ok((phases, q))
}

/// Fractional evolution `Ũ_s(t) = S(st)^{1/s}` via principal eigenphases.
pub fn evolve_fractional(
    model: &HamiltonianModel,
    scheme: &TrotterScheme,
    t: f64,
    s: f64,
) -> SimResult<DMatrix<Complex64>> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(SimError::input(format!(
            "step parameter must lie in (0, 1], got {s}"
        )));
    }
    let step = apply_scheme(model, scheme, s * t)?;
    let (phases, q) = unitary_eig(&step)?;
    check_branch_margin(&phases)?;
    let mut scaled = q.clone();
    for (jcol, &theta) in phases.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, theta / s);
        for v in scaled.column_mut(jcol).iter_mut() {
            *v *= phase;
        }
    }
    Ok(&scaled * q.adjoint())
}

/// Signed integer application count `e′_k = sign(s_k)·ceil(s_1/|s_k|)`, the
/// number of `S(s_k t)` factors that overshoots one full `s_1` step.
pub fn integer_step_count(s_k: f64, s_1: f64) -> SimResult<i64> {
    if s_k == 0.0 {
        return Err(SimError::input("node value must be nonzero"));
    }
    if !(s_1 > 0.0) {
        return Err(SimError::input(format!(
            "reference node must be positive, got {s_1}"
        )));
    }
    let count = (s_1 / s_k.abs()).ceil() as i64;
    Ok(if s_k > 0.0 { count } else { -count })
}

/// Effective Hamiltonian `H̃_s = (i/(st))·log S(st)` on the principal branch.
pub fn effective_hamiltonian(
    model: &HamiltonianModel,
    scheme: &TrotterScheme,
    t: f64,
    s: f64,
) -> SimResult<EffectiveHamiltonian> {
    if s == 0.0 || s.abs() > 1.0 || !s.is_finite() {
        return Err(SimError::input(format!(
            "step parameter must lie in [−1, 1] and be nonzero, got {s}"
        )));
    }
    let step = apply_scheme(model, scheme, s * t)?;
    let (phases, q) = unitary_eig(&step)?;
    check_branch_margin(&phases)?;
    let scale = -1.0 / (s * t);
    let mut scaled = q.clone();
    for (jcol, &theta) in phases.iter().enumerate() {
        let energy = Complex64::new(scale * theta, 0.0);
        for v in scaled.column_mut(jcol).iter_mut() {
            *v *= energy;
        }
    }
    let raw = &scaled * q.adjoint();
    let matrix = (&raw + raw.adjoint()).scale(0.5);
    Ok(EffectiveHamiltonian {
        matrix,
        s,
        t,
        order: scheme.order,
    })
}

/// Integer power of a unitary by repeated squaring; negative exponents use
/// the conjugate transpose.
pub fn unitary_power(u: &DMatrix<Complex64>, exponent: i64) -> DMatrix<Complex64> {
    let dim = u.nrows();
    let mut base = if exponent < 0 { u.adjoint() } else { u.clone() };
    let mut e = exponent.unsigned_abs();
    let mut acc = DMatrix::<Complex64>::identity(dim, dim);
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

/// Whether `(s, t)` sits inside the derivative-series convergence domain
/// `k·(5/3)^k·m·hmax·|s|·t ≤ π/20`.  Diagnostic only; exact simulation stays
/// valid beyond it.
pub fn step_domain_ok(model: &HamiltonianModel, scheme: &TrotterScheme, t: f64, s: f64) -> bool {
    let k = scheme.k() as f64;
    let lhs = k * (5.0_f64 / 3.0).powf(k) * model.m() as f64 * model.hmax() * s.abs() * t.abs();
    lhs <= std::f64::consts::PI / 20.0
}

fn check_branch_margin(phases: &[f64]) -> SimResult<()> {
    let max_abs = phases.iter().fold(0.0_f64, |acc, &p| acc.max(p.abs()));
    if max_abs >= std::f64::consts::PI - BRANCH_MARGIN {
        return Err(SimError::domain(format!(
            "eigenphase {max_abs:.6} is within {BRANCH_MARGIN:.0e} of the ±π branch cut; \
             reduce the step s·t"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{build_pauli_term, build_tfim, eig_herm, sum_matrix};
    use proptest::prelude::*;

    const U2: f64 = 0.4144907717943757;

    fn tfim211() -> HamiltonianModel {
        build_tfim(2, 1.0, 1.0).unwrap()
    }

    fn exact_evolution(model: &HamiltonianModel, t: f64) -> DMatrix<Complex64> {
        expm_herm(&sum_matrix(model), t).unwrap()
    }

    fn commuting_model() -> HamiltonianModel {
        let t1 = build_pauli_term(1.0, "ZI").unwrap();
        let t2 = build_pauli_term(0.6, "IZ").unwrap();
        HamiltonianModel::new(vec![t1, t2]).unwrap()
    }

    #[test]
    fn order2_two_terms_palindrome() {
        let scheme = st_scheme(2, 2).unwrap();
        assert_eq!(scheme.stages, vec![(0, 0.5), (1, 1.0), (0, 0.5)]);
        assert_eq!(scheme.nominal_stage_count(), 4);
    }

    #[test]
    fn order4_coefficients() {
        let scheme = st_scheme(4, 2).unwrap();
        // Evaluate u_2 = 1/(4 − 4^{1/3}) from its defining expression.
        let u = 1.0 / (4.0 - 4.0_f64.powf(1.0 / 3.0));
        assert!((u - U2).abs() < 1e-15);
        assert!((scheme.stages[1].1 - u).abs() < 1e-15);
        // Middle stage of the palindrome carries the negative fraction 1−4u.
        let mid = scheme.stages[scheme.stages.len() / 2];
        assert_eq!(mid.0, 1);
        assert!((mid.1 - (1.0 - 4.0 * u)).abs() < 1e-12);
        assert!((mid.1 + 0.6579630871775028).abs() < 1e-12);
        assert_eq!(scheme.nominal_stage_count(), 20);
        assert!(scheme.merged_stage_count() <= 20);
    }

    #[test]
    fn fractions_sum_to_one_per_term() {
        for order in [2usize, 4, 6] {
            for m in 1..=4 {
                let scheme = st_scheme(order, m).unwrap();
                for j in 0..m {
                    let total: f64 = scheme
                        .stages
                        .iter()
                        .filter(|(idx, _)| *idx == j)
                        .map(|(_, f)| f)
                        .sum();
                    assert!(
                        (total - 1.0).abs() < 1e-12,
                        "order {order}, m {m}, term {j}: fractions sum to {total}"
                    );
                }
            }
        }
    }

    #[test]
    fn stage_list_is_palindromic() {
        for order in [2usize, 4, 6] {
            for m in 1..=4 {
                let scheme = st_scheme(order, m).unwrap();
                let n = scheme.stages.len();
                for i in 0..n {
                    let (ja, fa) = scheme.stages[i];
                    let (jb, fb) = scheme.stages[n - 1 - i];
                    assert_eq!(ja, jb);
                    assert!((fa - fb).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn odd_order_rejected() {
        assert!(matches!(st_scheme(3, 2), Err(SimError::Input(_))));
    }

    #[test]
    fn apply_at_zero_is_identity() {
        let model = tfim211();
        let scheme = st_scheme(2, model.m()).unwrap();
        let u = apply_scheme(&model, &scheme, 0.0).unwrap();
        let id = DMatrix::<Complex64>::identity(4, 4);
        assert!((u - id).norm() < 1e-14);
    }

    #[test]
    fn commuting_terms_make_formula_exact() {
        let model = commuting_model();
        let scheme = st_scheme(2, model.m()).unwrap();
        let u = apply_scheme(&model, &scheme, 0.7).unwrap();
        let exact = exact_evolution(&model, 0.7);
        assert!((u - exact).norm() < 1e-12);
    }

    #[test]
    fn order2_error_scales_as_t_cubed() {
        let model = tfim211();
        let scheme = st_scheme(2, model.m()).unwrap();
        let mut points = Vec::new();
        for &t in &[0.02, 0.04, 0.08, 0.16] {
            let err = (apply_scheme(&model, &scheme, t).unwrap() - exact_evolution(&model, t))
                .norm();
            points.push((t.ln(), err.ln()));
        }
        let slope = fit_slope(&points);
        assert!((slope - 3.0).abs() < 0.1, "slope {slope}");
    }

    #[test]
    fn returned_evolutions_are_unitary() {
        let model = tfim211();
        for order in [2usize, 4] {
            let scheme = st_scheme(order, model.m()).unwrap();
            let u = apply_scheme(&model, &scheme, 0.3).unwrap();
            let id = DMatrix::<Complex64>::identity(4, 4);
            assert!((u.adjoint() * &u - &id).norm() <= 1e-10);
            let frac = evolve_fractional(&model, &scheme, 0.3, 0.37).unwrap();
            assert!((frac.adjoint() * &frac - &id).norm() <= 1e-10);
        }
    }

    #[test]
    fn time_reversal_symmetry() {
        let model = tfim211();
        for order in [2usize, 4] {
            let scheme = st_scheme(order, model.m()).unwrap();
            let forward = apply_scheme(&model, &scheme, 0.4).unwrap();
            let backward = apply_scheme(&model, &scheme, -0.4).unwrap();
            assert!((backward - forward.adjoint()).norm() < 1e-12);
        }
    }

    #[test]
    fn unitary_eig_reconstructs() {
        let model = tfim211();
        let scheme = st_scheme(2, model.m()).unwrap();
        let u = apply_scheme(&model, &scheme, 0.9).unwrap();
        let (phases, q) = unitary_eig(&u).unwrap();
        let mut scaled = q.clone();
        for (j, &th) in phases.iter().enumerate() {
            let lam = Complex64::from_polar(1.0, th);
            for v in scaled.column_mut(j).iter_mut() {
                *v *= lam;
            }
        }
        let recon = &scaled * q.adjoint();
        assert!((recon - u).norm() < 1e-10);
    }

    #[test]
    fn unitary_eig_separates_conjugate_pairs() {
        // exp(−iZθ) has eigenvalues e^{∓iθ} with equal real parts, landing
        // in one cos-cluster; the sin pass must split them.
        let z = build_pauli_term(1.0, "Z").unwrap();
        let u = expm_herm(&z.matrix, 0.8).unwrap();
        let (mut phases, _) = unitary_eig(&u).unwrap();
        phases.sort_by(f64::total_cmp);
        assert!((phases[0] + 0.8).abs() < 1e-12);
        assert!((phases[1] - 0.8).abs() < 1e-12);
    }

    #[test]
    fn unitary_eig_rejects_non_unitary() {
        let mut m = DMatrix::<Complex64>::identity(2, 2);
        m[(0, 0)] = Complex64::new(2.0, 0.0);
        assert!(matches!(unitary_eig(&m), Err(SimError::Input(_))));
    }

    #[test]
    fn fractional_at_s1_is_single_step() {
        let model = tfim211();
        let scheme = st_scheme(2, model.m()).unwrap();
        let u = evolve_fractional(&model, &scheme, 0.5, 1.0).unwrap();
        let step = apply_scheme(&model, &scheme, 0.5).unwrap();
        assert!((u - step).norm() < 1e-12);
    }

    #[test]
    fn fractional_at_half_is_two_half_steps() {
        let model = tfim211();
        let scheme = st_scheme(2, model.m()).unwrap();
        let u = evolve_fractional(&model, &scheme, 0.5, 0.5).unwrap();
        let half = apply_scheme(&model, &scheme, 0.25).unwrap();
        assert!((u - &half * &half).norm() < 1e-12);
    }

    #[test]
    fn fractional_integer_reciprocal_matches_power() {
        let model = tfim211();
        let scheme = st_scheme(2, model.m()).unwrap();
        let u = evolve_fractional(&model, &scheme, 0.4, 0.25).unwrap();
        let step = apply_scheme(&model, &scheme, 0.1).unwrap();
        assert!((u - unitary_power(&step, 4)).norm() < 1e-10);
    }

    #[test]
    fn fractional_error_scales_as_s_squared() {
        let model = tfim211();
        let scheme = st_scheme(2, model.m()).unwrap();
        let exact = exact_evolution(&model, 0.5);
        let mut points = Vec::new();
        for &s in &[0.05, 0.1, 0.2, 0.4] {
            let err = (evolve_fractional(&model, &scheme, 0.5, s).unwrap() - &exact).norm();
            points.push((s.ln(), err.ln()));
        }
        let slope = fit_slope(&points);
        assert!((slope - 2.0).abs() < 0.1, "slope {slope}");
    }

    #[test]
    fn fractional_rejects_out_of_range_s() {
        let model = tfim211();
        let scheme = st_scheme(2, model.m()).unwrap();
        for bad in [0.0, -0.3, 1.5] {
            assert!(matches!(
                evolve_fractional(&model, &scheme, 0.5, bad),
                Err(SimError::Input(_))
            ));
        }
    }

    #[test]
    fn integer_step_count_examples() {
        assert_eq!(integer_step_count(0.7, 0.7).unwrap(), 1);
        let s1 = (std::f64::consts::PI / 16.0).cos();
        let s2 = (3.0 * std::f64::consts::PI / 16.0).cos();
        assert_eq!(integer_step_count(s2, s1).unwrap(), 2);
        assert_eq!(integer_step_count(-0.7, 0.7).unwrap(), -1);
        assert!(matches!(
            integer_step_count(0.0, 1.0),
            Err(SimError::Input(_))
        ));
    }

    #[test]
    fn effective_hamiltonian_single_term_is_exact() {
        let z = build_pauli_term(1.0, "Z").unwrap();
        let model = HamiltonianModel::new(vec![z.clone()]).unwrap();
        let scheme = st_scheme(2, 1).unwrap();
        let h = effective_hamiltonian(&model, &scheme, 0.9, 0.37).unwrap();
        assert!((h.matrix - z.matrix).norm() < 1e-12);
    }

    #[test]
    fn effective_hamiltonian_commuting_is_exact() {
        let model = commuting_model();
        let scheme = st_scheme(2, model.m()).unwrap();
        let h = effective_hamiltonian(&model, &scheme, 0.8, 0.6).unwrap();
        assert!((h.matrix - sum_matrix(&model)).norm() < 1e-12);
    }

    #[test]
    fn effective_hamiltonian_generates_fractional_evolution() {
        let model = tfim211();
        let scheme = st_scheme(2, model.m()).unwrap();
        for &s in &[0.2, 0.55, 1.0] {
            let h = effective_hamiltonian(&model, &scheme, 0.2, s).unwrap();
            let dev = (&h.matrix - h.matrix.adjoint()).norm();
            assert!(dev < 1e-10);
            let u = expm_herm(&h.matrix, 0.2).unwrap();
            let frac = evolve_fractional(&model, &scheme, 0.2, s).unwrap();
            assert!((u - frac).norm() < 1e-10, "s={s}");
        }
    }

    #[test]
    fn effective_hamiltonian_distance_scales_as_s_squared() {
        let model = tfim211();
        let scheme = st_scheme(2, model.m()).unwrap();
        let h = sum_matrix(&model);
        let mut points = Vec::new();
        for &s in &[0.05, 0.1, 0.2, 0.4] {
            let ham = effective_hamiltonian(&model, &scheme, 0.2, s).unwrap();
            let err = crate::operators::spectral_norm_hermitian(&(ham.matrix - &h)).unwrap();
            points.push((s.ln(), err.ln()));
        }
        let slope = fit_slope(&points);
        assert!((slope - 2.0).abs() < 0.1, "slope {slope}");
    }

    #[test]
    fn effective_hamiltonian_even_in_s() {
        let model = tfim211();
        let scheme = st_scheme(2, model.m()).unwrap();
        for &s in &[0.3, 0.75, 1.0] {
            let plus = effective_hamiltonian(&model, &scheme, 0.2, s).unwrap();
            let minus = effective_hamiltonian(&model, &scheme, 0.2, -s).unwrap();
            let ep = eig_herm(&plus.matrix).unwrap();
            let em = eig_herm(&minus.matrix).unwrap();
            for (a, b) in ep.eigenvalues.iter().zip(em.eigenvalues.iter()) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn branch_cut_reported() {
        let z = build_pauli_term(1.0, "Z").unwrap();
        let model = HamiltonianModel::new(vec![z]).unwrap();
        let scheme = st_scheme(2, 1).unwrap();
        let err = effective_hamiltonian(&model, &scheme, std::f64::consts::PI, 1.0);
        assert!(matches!(err, Err(SimError::Domain(_))));
    }

    #[test]
    fn step_domain_flag() {
        let model = tfim211();
        let scheme = st_scheme(2, model.m()).unwrap();
        assert!(step_domain_ok(&model, &scheme, 0.01, 1.0));
        assert!(!step_domain_ok(&model, &scheme, 1.0, 1.0));
    }

    fn fit_slope(points: &[(f64, f64)]) -> f64 {
        let n = points.len() as f64;
        let sx: f64 = points.iter().map(|p| p.0).sum();
        let sy: f64 = points.iter().map(|p| p.1).sum();
        let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
        (n * sxy - sx * sy) / (n * sxx - sx * sx)
    }

    proptest! {
        #[test]
        fn prop_schemes_merge_and_balance(order_half in 1usize..4, m in 1usize..5) {
            let scheme = st_scheme(2 * order_half, m).unwrap();
            // No two adjacent stages share a term index after merging.
            for w in scheme.stages.windows(2) {
                prop_assert!(w[0].0 != w[1].0);
            }
            prop_assert!(scheme.merged_stage_count() as u64 <= scheme.nominal_stage_count());
        }

        #[test]
        fn prop_time_reversal(t in 0.01f64..0.6) {
            let model = tfim211();
            let scheme = st_scheme(2, model.m()).unwrap();
            let forward = apply_scheme(&model, &scheme, t).unwrap();
            let backward = apply_scheme(&model, &scheme, -t).unwrap();
            prop_assert!((backward - forward.adjoint()).norm() < 1e-12);
        }
    }
}
