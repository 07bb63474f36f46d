//! Closed-form error and cost bounds as pure evaluators.
//!
//! Every function here annotates a computation; none gates one.  The exact
//! simulators elsewhere in the crate produce the true quantities, and these
//! evaluators produce the analytic ceilings the test suites check them
//! against.  Values that can overflow are also reported in log10.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::chebgrid::lebesgue_factor;
use crate::error::{SimError, SimResult};
use crate::operators::{spectral_norm, HamiltonianModel};
use crate::trotter::{st_scheme, TrotterScheme};

pub const EULER_MASCHERONI: f64 = 0.5772156649015329;

/// One recorded validity assumption with its numeric slack.
#[derive(Debug, Clone)]
pub struct Assumption {
    pub name: &'static str,
    pub satisfied: bool,
    /// Distance to the assumption boundary; negative when violated.
    pub margin: f64,
}

/// A bound value plus the assumptions under which it is meaningful.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub value: f64,
    pub log10_value: f64,
    pub domain_ok: bool,
    pub assumptions: Vec<Assumption>,
}

impl BoundReport {
    fn new(value: f64, assumptions: Vec<Assumption>) -> Self {
        let domain_ok = assumptions.iter().all(|a| a.satisfied);
        BoundReport {
            value,
            log10_value: value.log10(),
            domain_ok,
            assumptions,
        }
    }
}

/// How a commutator budget was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommMode {
    /// Nested commutator norms by direct matrix arithmetic (desk scale only).
    ExactNested,
    /// Triangle-inequality ceiling ‖B‖·2^p·(Σ‖A_j‖)^p per stage.
    CrudeNorm,
}

/// Aggregated commutator budget for a scheme.
#[derive(Debug, Clone)]
pub struct CommutatorBudget {
    pub alpha_comm: f64,
    pub p: usize,
    pub mode: CommMode,
}

/// Radius pair for geometric-convergence estimates: the largest real
/// argument `r_max` the growth equation admits, and the ellipse parameter
/// `ρ_max = r_max + √(r_max² − 1)` when `r_max > 1`.
#[derive(Debug, Clone, Copy)]
pub struct AnalyticityRadius {
    pub r_max: f64,
    pub rho_max: Option<f64>,
}

/// Two-regime derivative and extrapolation bounds for expectation values.
/// Both regimes are evaluated; `interp_min` is the usable minimum.
#[derive(Debug, Clone, Copy)]
pub struct ExpvalBounds {
    /// True when the large-argument regime c > n applies.
    pub regime_large_c: bool,
    pub deriv_large_c: f64,
    pub deriv_large_c_log10: f64,
    pub interp_large_c: f64,
    pub interp_large_c_log10: f64,
    pub deriv_small_c: f64,
    pub deriv_small_c_log10: f64,
    pub interp_small_c: f64,
    pub interp_small_c_log10: f64,
    pub interp_min: f64,
}

/// Interpolation node count and grid half-width meeting a target accuracy.
#[derive(Debug, Clone, Copy)]
pub struct PeInterpParams {
    /// Real solution of n² = X^{1/n}.
    pub n_real: f64,
    /// That solution rounded up to an even node count ≥ 2.
    pub n_star: usize,
    /// Grid half-width matched to n_star.
    pub a: f64,
}

/// Growth bound `2·t^{−1}·n^n·(e²·k·(5/3)^k·m·hmax·t)^{n+1}` on the n-th
/// step-parameter derivative of the effective Hamiltonian (0⁰ = 1).
///
/// The convergence assumption `k(5/3)^k·m·hmax·t ≤ π/20` is recorded at
/// s = 1 with its margin; the value is returned either way.
pub fn heff_derivative_bound(
    n_deriv: usize,
    k: usize,
    m: usize,
    hmax: f64,
    t: f64,
) -> SimResult<BoundReport> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(SimError::input(format!("time must be positive, got {t}")));
    }
    if k == 0 || m == 0 {
        return Err(SimError::input("k and m must be at least 1"));
    }
    if !(hmax > 0.0) {
        return Err(SimError::input("hmax must be positive"));
    }
    let n = n_deriv as f64;
    let growth = k as f64 * (5.0_f64 / 3.0).powi(k as i32) * m as f64 * hmax;
    let base = std::f64::consts::E.powi(2) * growth * t;
    let value = 2.0 / t * n.powi(n_deriv as i32) * base.powi(n_deriv as i32 + 1);
    let lhs = growth * t;
    let limit = std::f64::consts::PI / 20.0;
    let report = BoundReport {
        value,
        log10_value: log10_of(
            (2.0 / t).ln() + n_deriv as f64 * n.max(1.0).ln() + (n_deriv as f64 + 1.0) * base.ln(),
        ),
        domain_ok: lhs <= limit,
        assumptions: vec![Assumption {
            name: "step-domain",
            satisfied: lhs <= limit,
            margin: limit - lhs,
        }],
    };
    Ok(report)
}

/// Leading-term interpolation-error estimate `deriv_sup·(a/(2n))^n` at s = 0
/// for n even; odd n returns 0 (the origin is then itself a node) with the
/// parity assumption flagged.
///
/// This is an estimate, not a ceiling: it drops the factorial and node
/// product of the full remainder.  Domination tests use
/// [`cheb_remainder_bound`] instead.
pub fn cheb_error_bound(n: usize, a: f64, deriv_sup: f64) -> SimResult<BoundReport> {
    if n == 0 {
        return Err(SimError::input("node count must be at least 1"));
    }
    if !(a > 0.0) || !a.is_finite() {
        return Err(SimError::input(format!(
            "grid half-width must be positive, got {a}"
        )));
    }
    if !(deriv_sup >= 0.0) {
        return Err(SimError::input("derivative bound must be nonnegative"));
    }
    let even = n % 2 == 0;
    let value = if even {
        deriv_sup * (a / (2.0 * n as f64)).powi(n as i32)
    } else {
        0.0
    };
    Ok(BoundReport {
        value,
        log10_value: value.log10(),
        domain_ok: even,
        assumptions: vec![Assumption {
            name: "even-node-count",
            satisfied: even,
            margin: 0.0,
        }],
    })
}

/// Rigorous interpolation remainder at s = 0: `deriv_sup·a^n·2^{1−n}/n!`.
///
/// The node product Π|0 − s_i| equals `(a^n/2^{n−1})·Π|cos((2i−1)π/(2n))|
/// = a^n·2^{1−n}` on this grid, and the n-th-derivative remainder divides by
/// n!.  Odd n returns 0 since the origin is a node.
pub fn cheb_remainder_bound(n: usize, a: f64, deriv_sup: f64) -> f64 {
    if n == 0 || n % 2 == 1 {
        return 0.0;
    }
    let ln_value = deriv_sup.ln() + n as f64 * a.ln() + (1.0 - n as f64) * 2.0_f64.ln()
        - ln_factorial(n);
    ln_value.exp()
}

/// Ceiling `(4n/(πa))·(γ_EM + ln(2n+2))` on the summed reciprocal node
/// magnitudes Σ 1/|s_k|, which sets the total step count of a grid.
pub fn total_steps_bound(n: usize, a: f64) -> SimResult<f64> {
    if n == 0 || n % 2 != 0 {
        return Err(SimError::input(format!(
            "node count must be even and positive, got {n}"
        )));
    }
    if !(a > 0.0) || !a.is_finite() {
        return Err(SimError::input(format!(
            "grid half-width must be positive, got {a}"
        )));
    }
    Ok(4.0 * n as f64 / (std::f64::consts::PI * a)
        * (EULER_MASCHERONI + (2.0 * n as f64 + 2.0).ln()))
}

/// Geometric truncation bound `4C·ρ^{−n}/(ρ−1)` for a function analytic and
/// bounded by C on the ellipse with parameter ρ > 1.
pub fn bernstein_bound(c: f64, rho: f64, n: usize) -> SimResult<f64> {
    if !(c >= 0.0) {
        return Err(SimError::input("magnitude bound C must be nonnegative"));
    }
    if !(rho > 1.0) {
        return Err(SimError::domain(format!(
            "ellipse parameter must exceed 1, got {rho}"
        )));
    }
    Ok(4.0 * c * rho.powi(-(n as i32)) / (rho - 1.0))
}

/// Largest analyticity radius compatible with the growth model
/// `α·r^p·e^{βr}/(p+1)! = γ₀/2`, solved by the principal Lambert branch:
/// `r_max = (p/β)·W₀((β/p)·(γ₀(p+1)!/(2α))^{1/p})`.
///
/// `rho_max` is populated only when `r_max > 1`, the condition for an
/// ellipse that covers the standardized interval [−1, 1].
pub fn analyticity_radius(
    alpha: f64,
    beta: f64,
    p: usize,
    gamma0: f64,
) -> SimResult<AnalyticityRadius> {
    if !(alpha > 0.0 && beta > 0.0 && gamma0 > 0.0) || p == 0 {
        return Err(SimError::input(
            "analyticity radius needs positive alpha, beta, gamma0 and p ≥ 1",
        ));
    }
    let pf = p as f64;
    let ln_arg = (gamma0.ln() + ln_factorial(p + 1) - (2.0 * alpha).ln()) / pf;
    let w = lambert_w0(beta / pf * ln_arg.exp())?;
    let r_max = pf / beta * w;
    let rho_max = if r_max > 1.0 {
        Some(r_max + (r_max * r_max - 1.0).sqrt())
    } else {
        None
    };
    Ok(AnalyticityRadius { r_max, rho_max })
}

/// Triangle-inequality commutator ceiling for one stage against the tail
/// norm of the stages after it: `‖B‖·2^p·(Σ‖A_j‖)^p`.
pub fn alpha_comm_pair_crude(norm_b: f64, sum_norm_a: f64, p: usize) -> f64 {
    norm_b * 2.0_f64.powi(p as i32) * sum_norm_a.powi(p as i32)
}

/// Exact nested-commutator budget for one stage:
/// Σ over compositions q₁+⋯+q_s = p of `multinomial(p; q)·‖ad_{A_s}^{q_s}
/// ⋯ ad_{A_1}^{q_1}(B)‖`, with A_1 the innermost adjoint.
pub fn alpha_comm_pair_exact(
    a_list: &[DMatrix<Complex64>],
    b: &DMatrix<Complex64>,
    p: usize,
) -> SimResult<f64> {
    let s = a_list.len();
    if s == 0 {
        return Ok(0.0);
    }
    let mut total = 0.0;
    let mut q = vec![0usize; s];
    compositions(p, 0, &mut q, &mut |q| {
        let mut op = b.clone();
        let mut nonzero = false;
        for (j, &qj) in q.iter().enumerate() {
            for _ in 0..qj {
                op = &a_list[j] * &op - &op * &a_list[j];
                nonzero = true;
            }
        }
        debug_assert!(nonzero || p == 0);
        total += multinomial(p, q) * spectral_norm(&op);
        Ok(())
    })?;
    Ok(total)
}

/// Commutator budget of a whole scheme: for each stage l with operator
/// B_l (fraction included), the later stages act as the adjoint list, and
/// the per-stage budgets are summed.
///
/// Exact-nested mode runs dense matrix arithmetic and is capped at desk
/// scale (p ≤ 4, m ≤ 3, ≤ 25 merged stages); beyond that it reports a
/// capability error naming crude-norm mode as the fallback.
pub fn alpha_comm(
    model: &HamiltonianModel,
    scheme: &TrotterScheme,
    p: usize,
    mode: CommMode,
) -> SimResult<CommutatorBudget> {
    if p == 0 {
        return Err(SimError::input("commutator order p must be at least 1"));
    }
    if scheme.num_terms != model.m() {
        return Err(SimError::input(format!(
            "scheme addresses {} terms but model has {}",
            scheme.num_terms,
            model.m()
        )));
    }
    let stage_norms: Vec<f64> = scheme
        .stages
        .iter()
        .map(|&(j, f)| f.abs() * model.terms[j].norm)
        .collect();

    let alpha = match mode {
        CommMode::CrudeNorm => {
            let mut total = 0.0;
            for l in 0..stage_norms.len() {
                let tail: f64 = stage_norms[l + 1..].iter().sum();
                total += alpha_comm_pair_crude(stage_norms[l], tail, p);
            }
            total
        }
        CommMode::ExactNested => {
            if p > 4 || model.m() > 3 || scheme.stages.len() > 25 {
                return Err(SimError::capability(
                    "exact-nested commutator budget is limited to p ≤ 4, 3 terms, \
                     and 25 stages; use crude-norm mode",
                ));
            }
            let stage_ops: Vec<DMatrix<Complex64>> = scheme
                .stages
                .iter()
                .map(|&(j, f)| model.terms[j].matrix.scale(f))
                .collect();
            let mut total = 0.0;
            for l in 0..stage_ops.len() {
                total += alpha_comm_pair_exact(&stage_ops[l + 1..], &stage_ops[l], p)?;
            }
            total
        }
    };
    Ok(CommutatorBudget {
        alpha_comm: alpha,
        p,
        mode,
    })
}

/// Ceiling on ‖H − H̃_s‖ for the order-p scheme at step s:
/// `(5/2)·α_comm·|τ|^p·e^{2|τ|Σ‖H_j‖}/(p+1)!` with τ = s·t.
///
/// Three validity assumptions are recorded with margins and never enforced:
/// the step cap |τ| ≤ 1/8, the series budget α_comm·|τ|^p·e^{…}/(p+1)! ≤
/// 1/20, and the contraction |τ|·bound ≤ 15/8 (the bound standing proxy for
/// the exact distance).
pub fn heff_distance_bound(
    model: &HamiltonianModel,
    t: f64,
    s: f64,
    p: usize,
    mode: CommMode,
) -> SimResult<BoundReport> {
    if p == 0 || p % 2 != 0 {
        return Err(SimError::input(format!(
            "formula order p must be even and positive, got {p}"
        )));
    }
    let scheme = st_scheme(p, model.m())?;
    let budget = alpha_comm(model, &scheme, p, mode)?;
    let tau = (s * t).abs();
    let sum_norms = model.norm_sum();
    let series = budget.alpha_comm * tau.powi(p as i32) * (2.0 * tau * sum_norms).exp()
        / factorial(p + 1);
    let value = 2.5 * series;
    let assumptions = vec![
        Assumption {
            name: "step-size",
            satisfied: tau <= 0.125,
            margin: 0.125 - tau,
        },
        Assumption {
            name: "series-budget",
            satisfied: series <= 0.05,
            margin: 0.05 - series,
        },
        Assumption {
            name: "log-contraction",
            satisfied: tau * value <= 1.875,
            margin: 1.875 - tau * value,
        },
    ];
    Ok(BoundReport::new(value, assumptions))
}

/// Derivative and extrapolation bounds for normalized expectation values,
/// in both regimes of c = k(5/3)^k·m·hmax·t against the node count n.
/// Deliberately loose; reported with log10 companions because the values
/// overflow quickly.
pub fn expval_deriv_bound(n: usize, c: f64, a: f64) -> SimResult<ExpvalBounds> {
    if n == 0 {
        return Err(SimError::input("node count must be at least 1"));
    }
    if !(c >= 0.0) || !c.is_finite() {
        return Err(SimError::input(format!(
            "growth parameter must be nonnegative, got {c}"
        )));
    }
    if !(a > 0.0) || !a.is_finite() {
        return Err(SimError::input(format!(
            "grid half-width must be positive, got {a}"
        )));
    }
    let nf = n as f64;
    let e = std::f64::consts::E;
    let sqrt_8_pi = (8.0 / std::f64::consts::PI).sqrt();
    let sqrt_2_pi = (2.0 / std::f64::consts::PI).sqrt();

    // c > n regime: (c·√(e³(1+√(8/π)e²)))^{2n} and (129c²a/n)^n.
    let k1 = e.powi(3) * (1.0 + sqrt_8_pi * e.powi(2));
    let ln_deriv_large = if c == 0.0 {
        f64::NEG_INFINITY
    } else {
        2.0 * nf * (c.ln() + 0.5 * k1.ln())
    };
    let ln_interp_large = if c == 0.0 {
        f64::NEG_INFINITY
    } else {
        nf * (129.0 * c * c * a / nf).ln()
    };

    // c ≤ n regime: √(2n/π)·(e⁴c/2)^n·n!·e^{4ce²√(2/π)} and 2√2·n·(6ca)^n·e^{24c}.
    let ln_deriv_small = if c == 0.0 {
        f64::NEG_INFINITY
    } else {
        0.5 * (2.0 * nf / std::f64::consts::PI).ln()
            + nf * (e.powi(4) * c / 2.0).ln()
            + ln_factorial(n)
            + 4.0 * c * e.powi(2) * sqrt_2_pi
    };
    let ln_interp_small = if c == 0.0 {
        f64::NEG_INFINITY
    } else {
        (2.0 * 2.0_f64.sqrt() * nf).ln() + nf * (6.0 * c * a).ln() + 24.0 * c
    };

    let interp_large = ln_interp_large.exp();
    let interp_small = ln_interp_small.exp();
    Ok(ExpvalBounds {
        regime_large_c: c > nf,
        deriv_large_c: ln_deriv_large.exp(),
        deriv_large_c_log10: log10_of(ln_deriv_large),
        interp_large_c: interp_large,
        interp_large_c_log10: log10_of(ln_interp_large),
        deriv_small_c: ln_deriv_small.exp(),
        deriv_small_c_log10: log10_of(ln_deriv_small),
        interp_small_c: interp_small,
        interp_small_c_log10: log10_of(ln_interp_small),
        interp_min: interp_large.min(interp_small),
    })
}

/// Node count and grid half-width for phase-estimation extrapolation at
/// target accuracy ε: solves n² = X^{1/n} with X = mk(5/3)^k·hmax·(1+Γ)/ε
/// through the Lambert form n = ln X/(2W₀(ln X/2)), rounds up to even ≥ 2,
/// and evaluates the matched half-width
/// `a = 2(64ε)^{1/n}·(n!)^{−1/n}·(32k·e²·(5/3)^{k−1}·m·hmax·(1+Γ))^{−(1+1/n)}`.
pub fn pe_interp_params(
    m: usize,
    k: usize,
    hmax: f64,
    gamma_big: f64,
    eps: f64,
) -> SimResult<PeInterpParams> {
    if m == 0 || k == 0 {
        return Err(SimError::input("m and k must be at least 1"));
    }
    if !(hmax > 0.0) || !(eps > 0.0) || !(gamma_big >= 0.0) {
        return Err(SimError::input(
            "need hmax > 0, eps > 0, and Gamma ≥ 0 for interpolation sizing",
        ));
    }
    let x = m as f64 * k as f64 * (5.0_f64 / 3.0).powi(k as i32) * hmax * (1.0 + gamma_big) / eps;
    let n_real = if x <= 1.0 {
        1.0
    } else {
        let lx = x.ln();
        lx / (2.0 * lambert_w0(lx / 2.0)?)
    };
    let mut n_star = (n_real.ceil() as usize).max(2);
    if n_star % 2 == 1 {
        n_star += 1;
    }
    let nf = n_star as f64;
    let grind = 32.0
        * k as f64
        * std::f64::consts::E.powi(2)
        * (5.0_f64 / 3.0).powi(k as i32 - 1)
        * m as f64
        * hmax
        * (1.0 + gamma_big);
    let ln_a = 2.0_f64.ln() + (64.0 * eps).ln() / nf - ln_factorial(n_star) / nf
        - (1.0 + 1.0 / nf) * grind.ln();
    Ok(PeInterpParams {
        n_real,
        n_star,
        a: ln_a.exp(),
    })
}

/// Grover-oracle count for amplitude estimation at data tolerance ε:
/// `(200·γ·L_n/ε)·ln((2n/δ)·log₂(γ·L_n·π/ε))`.
pub fn iqae_oracle_count(
    eps_data: f64,
    gamma_ratio: f64,
    n: usize,
    delta: f64,
) -> SimResult<f64> {
    if !(eps_data > 0.0 && gamma_ratio > 0.0) || n == 0 {
        return Err(SimError::input(
            "oracle count needs positive eps_data, gamma_ratio, and n ≥ 1",
        ));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(SimError::input(format!(
            "confidence delta must lie in (0, 1), got {delta}"
        )));
    }
    let l_n = lebesgue_factor(n);
    let inner = gamma_ratio * l_n * std::f64::consts::PI / eps_data;
    if inner <= 1.0 {
        return Err(SimError::domain(format!(
            "tolerance too loose: gamma·L_n·π/eps = {inner:.6} must exceed 1"
        )));
    }
    Ok(200.0 * gamma_ratio * l_n / eps_data * ((2.0 * n as f64 / delta) * inner.log2()).ln())
}

/// Concentration ceilings at kk deviation units: Chebyshev `1/kk²` and
/// Markov `1/kk`.  The estimate, scale, and qubit count are carried for
/// reporting only; the ceilings depend on kk alone.
pub fn tail_bounds(
    _d_hat: f64,
    _xi: f64,
    kk: f64,
    _n_qubits: usize,
) -> SimResult<(f64, f64)> {
    if !(kk > 0.0) {
        return Err(SimError::input(format!(
            "deviation multiple must be positive, got {kk}"
        )));
    }
    Ok((1.0 / (kk * kk), 1.0 / kk))
}

/// Eigenvalue perturbation check for normal matrices: true iff some
/// eigenvalue of A lies within `norm_diff` of `lambda_b`.
pub fn bauer_fike_check(eigs_a: &[f64], lambda_b: f64, norm_diff: f64) -> bool {
    eigs_a
        .iter()
        .map(|&lam| (lam - lambda_b).abs())
        .fold(f64::INFINITY, f64::min)
        <= norm_diff
}

/// Principal Lambert branch W₀ on [−1/e, ∞), Halley iteration to 1e-13.
pub fn lambert_w0(x: f64) -> SimResult<f64> {
    if !x.is_finite() || x < -std::f64::consts::E.recip() - 1e-12 {
        return Err(SimError::domain(format!(
            "lambert W0 needs x ≥ −1/e, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let mut w = if x > std::f64::consts::E {
        let l = x.ln();
        l - l.ln()
    } else if x > -0.25 {
        x * (1.0 - x).max(0.1)
    } else {
        -1.0 + (2.0 * (std::f64::consts::E * x + 1.0).max(0.0)).sqrt()
    };
    halley(x, &mut w);
    Ok(w)
}

/// Secondary Lambert branch W₋₁ on [−1/e, 0), Halley iteration to 1e-13.
pub fn lambert_wm1(x: f64) -> SimResult<f64> {
    if !(x < 0.0) || x < -std::f64::consts::E.recip() - 1e-12 {
        return Err(SimError::domain(format!(
            "lambert W-1 needs −1/e ≤ x < 0, got {x}"
        )));
    }
    let mut w = if x > -0.2 {
        let l = (-x).ln();
        l - (-l).ln()
    } else {
        -1.0 - (2.0 * (std::f64::consts::E * x + 1.0).max(0.0)).sqrt()
    };
    halley(x, &mut w);
    Ok(w)
}

fn halley(x: f64, w: &mut f64) {
    for _ in 0..100 {
        let ew = w.exp();
        let f = *w * ew - x;
        let denom = ew * (*w + 1.0) - (*w + 2.0) * f / (2.0 * *w + 2.0);
        let step = f / denom;
        *w -= step;
        if step.abs() <= 1e-13 * (1.0 + w.abs()) {
            break;
        }
    }
}

/// Exact factorial as f64; overflows to infinity past n = 170.
pub fn factorial(n: usize) -> f64 {
    (2..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Log factorial by direct summation, exact enough for n ≤ a few thousand.
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

fn multinomial(p: usize, parts: &[usize]) -> f64 {
    let mut value = factorial(p);
    for &q in parts {
        value /= factorial(q);
    }
    value
}

fn compositions(
    remaining: usize,
    slot: usize,
    q: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> SimResult<()>,
) -> SimResult<()> {
    if slot == q.len() - 1 {
        q[slot] = remaining;
        visit(q)?;
        return Ok(());
    }
    for v in 0..=remaining {
        q[slot] = v;
        compositions(remaining - v, slot + 1, q, visit)?;
    }
    Ok(())
}

fn log10_of(ln_value: f64) -> f64 {
    ln_value / std::f64::consts::LN_10
}

/// Ingredients of the spectral truncation bound for a tracked eigenvalue of
/// the effective Hamiltonian, assembled once per (model, order, t, a).
#[derive(Debug, Clone)]
pub struct TruncationChain {
    /// Commutator budget rescaled to the standardized interval.
    pub alpha_z: f64,
    /// Norm-sum growth rate rescaled to the standardized interval.
    pub beta_z: f64,
    /// Spectral gap above the tracked level at s = 0.
    pub gamma0: f64,
    /// Uniform magnitude ceiling ‖H‖ + γ₀/2 for the tracked eigenvalue on
    /// the analyticity ellipse.
    pub c: f64,
    /// None when no ellipse covering [−1, 1] is certified.
    pub radius: Option<AnalyticityRadius>,
}

impl TruncationChain {
    pub fn rho(&self) -> Option<f64> {
        self.radius.as_ref().and_then(|r| r.rho_max)
    }

    /// Geometric tail bound on the n-node interpolation error of the
    /// tracked eigenvalue; None when the chain is not certified or the
    /// polynomial degree n − 1 vanishes.
    pub fn bound(&self, n: usize) -> Option<f64> {
        let rho = self.rho()?;
        if n < 2 {
            return None;
        }
        bernstein_bound(self.c, rho, n - 1).ok()
    }
}

/// Build the truncation chain for the ground level: crude commutator
/// budget, exponential growth rate 2Σ‖H_j‖, both rescaled by the node
/// scale a·t, then the largest certified Bernstein ellipse.
pub fn spectral_truncation_chain(
    model: &HamiltonianModel,
    order: usize,
    t: f64,
    a: f64,
) -> SimResult<TruncationChain> {
    if !(t > 0.0 && a > 0.0) || !t.is_finite() || !a.is_finite() {
        return Err(SimError::input(format!(
            "need positive finite t and a, got t={t}, a={a}"
        )));
    }
    let scheme = st_scheme(order, model.m())?;
    let budget = alpha_comm(model, &scheme, order, CommMode::CrudeNorm)?;
    let alpha = 2.5 * budget.alpha_comm;
    let beta = 2.0 * model.norm_sum();
    let at = a * t;
    let alpha_z = alpha * at.powi(order as i32);
    let beta_z = beta * at;
    let eig = crate::operators::eig_herm(&crate::operators::sum_matrix(model))?;
    let gamma0 = eig.eigenvalues[1] - eig.eigenvalues[0];
    let norm_h = eig
        .eigenvalues
        .iter()
        .fold(0.0_f64, |acc, &v| acc.max(v.abs()));
    let c = norm_h + gamma0 / 2.0;
    let radius = if alpha_z > 0.0 && gamma0 > 1e-12 {
        Some(analyticity_radius(alpha_z, beta_z, order, gamma0)?)
    } else {
        None
    };
    Ok(TruncationChain {
        alpha_z,
        beta_z,
        gamma0,
        c,
        radius,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebgrid::make_grid;
    use crate::operators::{
        build_pauli_term, build_tfim, eig_herm, spectral_norm_hermitian, sum_matrix,
    };
    use crate::trotter::effective_hamiltonian;
    use nalgebra::DMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn random_hermitian(rng: &mut ChaCha12Rng, dim: usize) -> DMatrix<Complex64> {
        let raw = DMatrix::from_fn(dim, dim, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        (&raw + raw.adjoint()).scale(0.5)
    }

    #[test]
    fn derivative_bound_matches_closed_form() {
        // 2·(e²·5/3)^1 with n=0, evaluated independently.
        let r = heff_derivative_bound(0, 1, 1, 1.0, 1.0).unwrap();
        assert!((r.value - 24.630186996435498).abs() < 1e-11 * r.value);
        // 2/0.01·(e²·(5/3)·2·0.01)², evaluated independently.
        let r = heff_derivative_bound(1, 1, 2, 1.0, 0.01).unwrap();
        assert!((r.value - 12.132922229587608).abs() < 1e-11 * r.value);
    }

    #[test]
    fn derivative_bound_domain_flag() {
        let ok = heff_derivative_bound(0, 1, 1, 1.0, 0.01).unwrap();
        assert!(ok.domain_ok);
        assert!(ok.assumptions[0].margin > 0.0);
        let bad = heff_derivative_bound(0, 1, 1, 1.0, 1.0).unwrap();
        assert!(!bad.domain_ok);
        assert!(bad.assumptions[0].margin < 0.0);
        assert!(bad.value.is_finite());
    }

    #[test]
    fn derivative_bound_monotone_in_t() {
        let mut last = 0.0;
        for &t in &[0.01, 0.1, 0.5, 1.0, 2.0] {
            let v = heff_derivative_bound(2, 1, 3, 1.0, t).unwrap().value;
            assert!(v > last);
            last = v;
        }
    }

    #[test]
    fn derivative_bound_rejects_bad_time() {
        assert!(matches!(
            heff_derivative_bound(0, 1, 1, 1.0, 0.0),
            Err(SimError::Input(_))
        ));
    }

    #[test]
    fn cheb_error_examples() {
        // (1/4)² = 1/16.
        let r = cheb_error_bound(2, 1.0, 1.0).unwrap();
        assert!((r.value - 0.0625).abs() < 1e-15);
        assert!(r.domain_ok);
        // 2·(0.5/8)⁴.
        let r = cheb_error_bound(4, 0.5, 2.0).unwrap();
        assert!((r.value - 3.0517578125e-5).abs() < 1e-18);
        // Odd node counts place a node at the origin: zero error, flagged.
        let r = cheb_error_bound(3, 1.0, 1.0).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(!r.domain_ok);
    }

    #[test]
    fn cheb_error_eventually_decreasing_in_n() {
        let mut last = f64::INFINITY;
        for n in [2usize, 4, 6, 8, 10] {
            let v = cheb_error_bound(n, 1.0, 1.0).unwrap().value;
            assert!(v < last);
            last = v;
        }
    }

    #[test]
    fn remainder_bound_closed_form() {
        // e¹·1²·2^{−1}/2! = e/4.
        let v = cheb_remainder_bound(2, 1.0, std::f64::consts::E);
        assert!((v - std::f64::consts::E / 4.0).abs() < 1e-14);
        assert_eq!(cheb_remainder_bound(3, 1.0, 1.0), 0.0);
    }

    #[test]
    fn steps_bound_value_and_scaling() {
        // (8/π)(γ_EM + ln 6), evaluated independently.
        let v = total_steps_bound(2, 1.0).unwrap();
        assert!((v - 6.032545642536155).abs() < 1e-12);
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = rng.gen_range(0.1..4.0);
            let n = 2 * rng.gen_range(1..30usize);
            let scaled = total_steps_bound(n, a).unwrap();
            let unit = total_steps_bound(n, 1.0).unwrap();
            assert!((scaled - unit / a).abs() < 1e-10 * scaled.abs());
        }
        assert!(matches!(total_steps_bound(3, 1.0), Err(SimError::Input(_))));
    }

    #[test]
    fn bernstein_examples_and_decay() {
        assert!((bernstein_bound(1.0, 2.0, 0).unwrap() - 4.0).abs() < 1e-15);
        assert!((bernstein_bound(1.0, 2.0, 10).unwrap() - 4.0 / 1024.0).abs() < 1e-15);
        let r3 = bernstein_bound(2.0, 3.0, 7).unwrap();
        let r4 = bernstein_bound(2.0, 3.0, 8).unwrap();
        assert!((r4 / r3 - 1.0 / 3.0).abs() < 1e-12);
        assert!(matches!(
            bernstein_bound(1.0, 1.0, 2),
            Err(SimError::Domain(_))
        ));
        // Larger ellipse, smaller bound.
        assert!(bernstein_bound(1.0, 4.0, 5).unwrap() < bernstein_bound(1.0, 2.0, 5).unwrap());
    }

    #[test]
    fn lambert_branches_invert() {
        assert!((lambert_w0(1.0).unwrap() - 0.5671432904097838).abs() < 1e-13);
        for &x in &[-0.3, -0.1, 0.05, 0.5, 1.0, 3.0, 20.0, 1e4] {
            let w = lambert_w0(x).unwrap();
            assert!((w * w.exp() - x).abs() <= 1e-12 * (1.0 + x.abs()), "x={x}");
        }
        for &x in &[-0.367, -0.3, -0.2, -0.05, -1e-4] {
            let w = lambert_wm1(x).unwrap();
            assert!((w * w.exp() - x).abs() <= 1e-12, "x={x}");
            assert!(w <= -1.0 + 1e-9);
        }
        assert!(matches!(lambert_w0(-1.0), Err(SimError::Domain(_))));
        assert!(matches!(lambert_wm1(0.1), Err(SimError::Domain(_))));
    }

    #[test]
    fn analyticity_radius_example() {
        // Bisection oracle on the defining equation r²·e^r/3! = 1/2,
        // i.e. r²e^r = 3.
        let mut lo = 0.0_f64;
        let mut hi = 5.0_f64;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid * mid * mid.exp() < 3.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let oracle = 0.5 * (lo + hi);
        let r = analyticity_radius(1.0, 1.0, 2, 1.0).unwrap();
        assert!((r.r_max - oracle).abs() < 1e-10);
        assert!((r.r_max - 1.0332309037176648).abs() < 1e-12);
        let rho = r.rho_max.unwrap();
        assert!((rho - 1.293165703998855).abs() < 1e-12);
    }

    #[test]
    fn analyticity_radius_defining_equation() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..50 {
            let alpha = rng.gen_range(0.05..5.0);
            let beta = rng.gen_range(0.05..3.0);
            let p = rng.gen_range(1..5usize);
            let gamma0 = rng.gen_range(0.05..3.0);
            let r = analyticity_radius(alpha, beta, p, gamma0).unwrap().r_max;
            let lhs = alpha * r.powi(p as i32) * (beta * r).exp() / factorial(p + 1);
            assert!(
                (lhs - gamma0 / 2.0).abs() <= 1e-10 * (1.0 + gamma0),
                "residual {lhs} vs {}",
                gamma0 / 2.0
            );
        }
    }

    #[test]
    fn analyticity_radius_flags_small_r() {
        let r = analyticity_radius(1.0, 1.0, 2, 1e-4).unwrap();
        assert!(r.r_max <= 1.0);
        assert!(r.rho_max.is_none());
    }

    #[test]
    fn crude_pair_formula() {
        assert!((alpha_comm_pair_crude(1.0, 2.0, 2) - 16.0).abs() < 1e-15);
    }

    #[test]
    fn crude_budget_for_two_spin_chain() {
        // Stage norms for the order-2 palindrome over the three unit-norm
        // terms are (1/2, 1/2, 1, 1/2, 1/2); summing ‖B‖·4·(tail)² gives
        // 12.5 + 8 + 4 + 0.5 + 0 = 25.
        let model = build_tfim(2, 1.0, 1.0).unwrap();
        let scheme = st_scheme(2, model.m()).unwrap();
        let budget = alpha_comm(&model, &scheme, 2, CommMode::CrudeNorm).unwrap();
        assert!((budget.alpha_comm - 25.0).abs() < 1e-12);
    }

    #[test]
    fn exact_budget_vanishes_for_commuting_terms() {
        let t1 = build_pauli_term(1.0, "ZI").unwrap();
        let t2 = build_pauli_term(0.6, "IZ").unwrap();
        let model = crate::operators::HamiltonianModel::new(vec![t1, t2]).unwrap();
        let scheme = st_scheme(2, model.m()).unwrap();
        for p in 1..=3 {
            let budget = alpha_comm(&model, &scheme, p, CommMode::ExactNested).unwrap();
            assert!(budget.alpha_comm.abs() < 1e-12);
        }
    }

    #[test]
    fn exact_budget_below_crude() {
        let model = build_tfim(2, 1.0, 1.0).unwrap();
        let scheme = st_scheme(2, model.m()).unwrap();
        for p in 1..=3 {
            let exact = alpha_comm(&model, &scheme, p, CommMode::ExactNested)
                .unwrap()
                .alpha_comm;
            let crude = alpha_comm(&model, &scheme, p, CommMode::CrudeNorm)
                .unwrap()
                .alpha_comm;
            assert!(exact <= crude * (1.0 + 1e-12), "p={p}: {exact} > {crude}");
        }
    }

    #[test]
    fn exact_pair_below_crude_on_random_triples() {
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        for _ in 0..20 {
            let b = random_hermitian(&mut rng, 4);
            let a1 = random_hermitian(&mut rng, 4);
            let a2 = random_hermitian(&mut rng, 4);
            let sum_a = spectral_norm(&a1) + spectral_norm(&a2);
            let norm_b = spectral_norm(&b);
            for p in 1..=3 {
                let exact = alpha_comm_pair_exact(&[a1.clone(), a2.clone()], &b, p).unwrap();
                let crude = alpha_comm_pair_crude(norm_b, sum_a, p);
                assert!(exact <= crude * (1.0 + 1e-12), "p={p}");
            }
        }
    }

    #[test]
    fn exact_budget_capability_cap() {
        let model = build_tfim(3, 1.0, 1.0).unwrap();
        let scheme = st_scheme(2, model.m()).unwrap();
        assert!(matches!(
            alpha_comm(&model, &scheme, 2, CommMode::ExactNested),
            Err(SimError::Capability(_))
        ));
    }

    #[test]
    fn distance_bound_zero_cases() {
        let t1 = build_pauli_term(1.0, "ZI").unwrap();
        let t2 = build_pauli_term(0.6, "IZ").unwrap();
        let model = crate::operators::HamiltonianModel::new(vec![t1, t2]).unwrap();
        let r = heff_distance_bound(&model, 0.1, 1.0, 2, CommMode::ExactNested).unwrap();
        assert!(r.value.abs() < 1e-12);
        let model = build_tfim(2, 1.0, 1.0).unwrap();
        let r = heff_distance_bound(&model, 0.0, 1.0, 2, CommMode::CrudeNorm).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn distance_bound_dominates_exact_distance() {
        let model = build_tfim(2, 1.0, 1.0).unwrap();
        let scheme = st_scheme(2, model.m()).unwrap();
        let h = sum_matrix(&model);
        let bound = heff_distance_bound(&model, 0.1, 1.0, 2, CommMode::CrudeNorm).unwrap();
        assert!(bound.value.is_finite());
        let ham = effective_hamiltonian(&model, &scheme, 0.1, 1.0).unwrap();
        let exact = spectral_norm_hermitian(&(ham.matrix - &h)).unwrap();
        assert!(exact <= bound.value);
        // At τ = 0.1 the step-size assumption holds with margin 0.025.
        assert!(bound.assumptions[0].satisfied);
        assert!((bound.assumptions[0].margin - 0.025).abs() < 1e-12);
    }

    #[test]
    fn distance_bound_dominates_within_flags() {
        // Smaller t keeps every validity assumption satisfied at all nodes.
        let model = build_tfim(2, 1.0, 1.0).unwrap();
        let scheme = st_scheme(2, model.m()).unwrap();
        let h = sum_matrix(&model);
        let grid = make_grid(8, 1.0).unwrap();
        for &s in grid.positive_nodes() {
            let bound = heff_distance_bound(&model, 0.05, s, 2, CommMode::CrudeNorm).unwrap();
            assert!(bound.domain_ok, "flags should hold at s={s}");
            let ham = effective_hamiltonian(&model, &scheme, 0.05, s).unwrap();
            let exact = spectral_norm_hermitian(&(ham.matrix - &h)).unwrap();
            assert!(exact <= bound.value, "s={s}: {exact} > {}", bound.value);
        }
    }

    #[test]
    fn expval_bounds_example_and_limits() {
        // 2√2·4·(0.6)⁴·e²⁴ in the small-c regime.
        let b = expval_deriv_bound(4, 1.0, 0.1).unwrap();
        assert!(!b.regime_large_c);
        assert!((b.interp_small_c - 3.8839850720e10).abs() < 1e2);
        assert!(b.interp_min <= b.interp_small_c);
        assert!(b.interp_min <= b.interp_large_c);
        let zero = expval_deriv_bound(4, 0.0, 0.1).unwrap();
        assert_eq!(zero.interp_small_c, 0.0);
        assert_eq!(zero.interp_large_c, 0.0);
        let large = expval_deriv_bound(2, 5.0, 0.1).unwrap();
        assert!(large.regime_large_c);
        assert!(large.deriv_large_c_log10.is_finite());
    }

    #[test]
    fn pe_params_example() {
        // Bisection oracle for n² = X^{1/n} at X = 2·(5/3)/1e-3.
        let x: f64 = 2.0 * (5.0 / 3.0) / 1e-3;
        let mut lo = 1.0_f64;
        let mut hi = 200.0_f64;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid * mid - x.powf(1.0 / mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let oracle = 0.5 * (lo + hi);
        let p = pe_interp_params(2, 1, 1.0, 0.0, 1e-3).unwrap();
        assert!((p.n_real - oracle).abs() < 1e-9, "{} vs {oracle}", p.n_real);
        assert_eq!(p.n_star, 4);
        // Defining equation holds at the real root.
        assert!((p.n_real * p.n_real - x.powf(1.0 / p.n_real)).abs() < 1e-8);
        assert!((p.a - 2.0609193957e-4).abs() < 1e-12);
    }

    #[test]
    fn pe_params_monotone_in_eps() {
        let mut last = 0usize;
        for &eps in &[1e-1, 1e-2, 1e-3, 1e-5, 1e-8, 1e-12] {
            let p = pe_interp_params(2, 1, 1.0, 0.0, eps).unwrap();
            assert!(p.n_star >= last, "n_star fell at eps={eps}");
            last = p.n_star;
        }
    }

    #[test]
    fn iqae_count_regression() {
        // Direct evaluation pinned at build time.
        let v = iqae_oracle_count(0.01, 1.0, 4, 0.05).unwrap();
        assert!((v - 295858.1961741917).abs() < 1e-6 * v);
        // Doubling the tolerance more than halves the count.
        let half = iqae_oracle_count(0.02, 1.0, 4, 0.05).unwrap();
        assert!(half < v / 2.0);
        // Looser confidence lowers the count.
        let loose = iqae_oracle_count(0.01, 1.0, 4, 0.5).unwrap();
        assert!(loose < v);
        assert!(matches!(
            iqae_oracle_count(1e3, 1e-6, 4, 0.05),
            Err(SimError::Domain(_))
        ));
    }

    #[test]
    fn tail_bound_values() {
        assert_eq!(tail_bounds(0.1, 1.0, 2.0, 2).unwrap(), (0.25, 0.5));
        assert_eq!(tail_bounds(0.1, 1.0, 10.0, 2).unwrap(), (0.01, 0.1));
        assert!(matches!(
            tail_bounds(0.1, 1.0, 0.0, 2),
            Err(SimError::Input(_))
        ));
    }

    #[test]
    fn tail_bounds_hold_empirically() {
        // Sampling oracle: squared Frobenius distances of random diagonal
        // unitary pairs, 10⁴ trials.
        let mut rng = ChaCha12Rng::seed_from_u64(77);
        let dim = 4;
        let trials = 10_000;
        let mut xs = Vec::with_capacity(trials);
        for _ in 0..trials {
            let mut sq = 0.0;
            for _ in 0..dim {
                let a = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
                let b = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
                let d = Complex64::from_polar(1.0, a) - Complex64::from_polar(1.0, b);
                sq += d.norm_sqr();
            }
            xs.push(sq / (4.0 * dim as f64));
        }
        let mean = xs.iter().sum::<f64>() / trials as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / trials as f64;
        let sd = var.sqrt();
        for &kk in &[2.0, 4.0, 10.0] {
            let (cheb, markov) = tail_bounds(mean, sd, kk, 2).unwrap();
            let markov_freq =
                xs.iter().filter(|&&x| x >= kk * mean).count() as f64 / trials as f64;
            let cheb_freq = xs.iter().filter(|&&x| (x - mean).abs() >= kk * sd).count() as f64
                / trials as f64;
            assert!(markov_freq <= markov, "kk={kk}");
            assert!(cheb_freq <= cheb, "kk={kk}");
        }
    }

    #[test]
    fn bauer_fike_examples() {
        assert!(bauer_fike_check(&[-1.0, 1.0], 1.05, 0.1));
        assert!(!bauer_fike_check(&[-1.0, 1.0], 2.0, 0.5));
    }

    #[test]
    fn bauer_fike_random_perturbations() {
        let mut rng = ChaCha12Rng::seed_from_u64(101);
        for _ in 0..1000 {
            let a = random_hermitian(&mut rng, 4);
            let e = random_hermitian(&mut rng, 4).scale(0.05);
            let b = &a + &e;
            let eigs_a: Vec<f64> = eig_herm(&a).unwrap().eigenvalues.iter().copied().collect();
            let eigs_b = eig_herm(&b).unwrap().eigenvalues;
            let norm_e = spectral_norm_hermitian(&e).unwrap();
            for &lb in eigs_b.iter() {
                assert!(bauer_fike_check(&eigs_a, lb, norm_e + 1e-12));
            }
        }
    }

    #[test]
    fn factorial_helpers() {
        assert_eq!(factorial(0), 1.0);
        assert_eq!(factorial(5), 120.0);
        assert!((ln_factorial(20) - factorial(20).ln()).abs() < 1e-9);
        assert!((multinomial(4, &[2, 1, 1]) - 12.0).abs() < 1e-12);
        assert!((multinomial(3, &[0, 3]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn truncation_chain_two_spin_values() {
        let model = crate::operators::build_tfim(2, 1.0, 1.0).unwrap();
        let chain = spectral_truncation_chain(&model, 2, 0.1, 1.0).unwrap();
        // Crude budget 25 rescaled by (a·t)² = 0.01, times the series
        // prefactor 2.5.
        assert!((chain.alpha_z - 0.625).abs() < 1e-12);
        assert!((chain.beta_z - 0.6).abs() < 1e-12);
        let sqrt5 = 5.0_f64.sqrt();
        assert!((chain.gamma0 - (sqrt5 - 1.0)).abs() < 1e-10);
        assert!((chain.c - (sqrt5 + (sqrt5 - 1.0) / 2.0)).abs() < 1e-10);
        let radius = chain.radius.as_ref().unwrap();
        // Defining equation of the radius: α·r^p·e^{β·r}/(p+1)! = γ₀/2.
        let lhs = chain.alpha_z * radius.r_max.powi(2) * (chain.beta_z * radius.r_max).exp()
            / 6.0;
        assert!((lhs - chain.gamma0 / 2.0).abs() < 1e-10);
        assert!(radius.r_max > 1.5 && radius.r_max < 1.6);
        let rho = chain.rho().unwrap();
        assert!((rho - (radius.r_max + (radius.r_max * radius.r_max - 1.0).sqrt())).abs() < 1e-12);
        // Bounds fall geometrically with the node count.
        let b2 = chain.bound(2).unwrap();
        let b4 = chain.bound(4).unwrap();
        let b8 = chain.bound(8).unwrap();
        assert!(b2 > b4 && b4 > b8);
        assert!((b4 / b2 - rho.powi(-2)).abs() < 1e-12 * b4 / b2);
        assert!(b2 > 2.0 && b2 < 3.0);
    }

    #[test]
    fn truncation_chain_unavailable_cases() {
        // A single-term model has no commutators at all.
        let zz = crate::operators::build_pauli_term(-1.0, "ZZ").unwrap();
        let model = HamiltonianModel::new(vec![zz]).unwrap();
        let chain = spectral_truncation_chain(&model, 2, 0.1, 1.0).unwrap();
        assert!(chain.alpha_z == 0.0);
        assert!(chain.radius.is_none());
        assert!(chain.bound(4).is_none());

        // At large a·t the certified ellipse shrinks below the interval.
        let tfim = crate::operators::build_tfim(2, 1.0, 1.0).unwrap();
        let chain = spectral_truncation_chain(&tfim, 2, 10.0, 1.0).unwrap();
        let radius = chain.radius.as_ref().unwrap();
        assert!(radius.r_max <= 1.0);
        assert!(radius.rho_max.is_none());
        assert!(chain.bound(4).is_none());
    }
}
