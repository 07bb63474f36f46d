//! Subcommand implementations: each builds its tables in memory, writes
//! them atomically, and renders SVG plots from the written CSV text.

use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use chebtrot::bounds::{
    cheb_error_bound, heff_derivative_bound, heff_distance_bound, spectral_truncation_chain,
    BoundReport, CommMode,
};
use chebtrot::chebgrid::make_grid;
use chebtrot::estimators::{
    crossover_scan, estimate_trotter_error, extrapolate_expectation, extrapolate_ground_energy,
    ExtrapolationResult, RepetitionModel,
};
use chebtrot::operators::{eig_herm, sum_matrix};
use chebtrot::phase_est::{
    analytic_window_targets, gqpe_distribution, make_window, upsample, window_error_budget,
    GaussianWindowSpec, PhaseDistribution, MAX_REGISTER_QUBITS,
};
use chebtrot::trotter::{apply_scheme, integer_step_count, st_scheme, unitary_eig, unitary_power};

use crate::config::{EstimatorChoice, ExperimentConfig, OutputFormat};
use crate::output::{fmt_num, fmt_opt, write_atomic, Table};
use crate::svg::{svg_from_csv, PlotSpec, Series};
use crate::CliError;

#[derive(Serialize)]
struct NodeRow {
    s: f64,
    value: f64,
    sigma: Option<f64>,
    e_prime: i64,
    exponentials: u64,
}

#[derive(Serialize)]
struct LedgerEcho {
    exponentials_total: u64,
    nominal_stage_count: u64,
    merged_stage_count: usize,
    repetitions_model: String,
    mirror_executed: bool,
}

#[derive(Serialize)]
struct ResultRecord<'a> {
    config: &'a ExperimentConfig,
    n: usize,
    estimate: f64,
    reference: f64,
    systematic_error: f64,
    clamped: bool,
    per_node: Vec<NodeRow>,
    ledger: LedgerEcho,
}

fn node_rows(result: &ExtrapolationResult) -> Vec<NodeRow> {
    result
        .per_node
        .iter()
        .zip(&result.cost.per_node)
        .map(|(r, c)| NodeRow {
            s: r.s,
            value: r.value,
            sigma: r.sigma,
            e_prime: r.e_prime,
            exponentials: c.exponentials,
        })
        .collect()
}

fn reps_label(model: &RepetitionModel) -> String {
    match model {
        RepetitionModel::Exact => "exact".to_string(),
        RepetitionModel::Shots(k) => format!("shots({k})"),
        RepetitionModel::IqaeFormula => "iqae_formula".to_string(),
    }
}

fn record<'a>(
    config: &'a ExperimentConfig,
    n: usize,
    result: &ExtrapolationResult,
) -> ResultRecord<'a> {
    ResultRecord {
        config,
        n,
        estimate: result.estimate,
        reference: result.exact_reference,
        systematic_error: result.systematic_error,
        clamped: result.clamped,
        per_node: node_rows(result),
        ledger: LedgerEcho {
            exponentials_total: result.cost.exponentials_total,
            nominal_stage_count: result.cost.nominal_stage_count,
            merged_stage_count: result.cost.merged_stage_count,
            repetitions_model: reps_label(&result.cost.repetitions_model),
            mirror_executed: result.cost.mirror_executed,
        },
    }
}

/// Per-node CSV with the full record columns.
fn fit_table(result: &ExtrapolationResult) -> Table {
    let mut t = Table::new(&["s", "value", "sigma", "e_prime", "exponentials"]);
    for row in node_rows(result) {
        t.row(vec![
            fmt_num(row.s),
            fmt_num(row.value),
            fmt_opt(row.sigma),
            row.e_prime.to_string(),
            row.exponentials.to_string(),
        ]);
    }
    t
}

fn write_csv_and_plot(
    out: &Path,
    stem: &str,
    table: &Table,
    plot: &PlotSpec,
) -> Result<(), CliError> {
    let csv = table.to_csv();
    write_atomic(out, &format!("{stem}.csv"), csv.as_bytes())?;
    let svg = svg_from_csv(&csv, plot);
    write_atomic(out, &format!("{stem}.svg"), svg.as_bytes())?;
    Ok(())
}

fn distribution_table(
    dist: &PhaseDistribution,
    spec: &GaussianWindowSpec,
) -> Result<Table, CliError> {
    let mut t = Table::new(&["bin", "phase_cycles", "prob"]);
    t.comment(serde_json::to_string(spec)?);
    for (k, &p) in dist.probs.iter().enumerate() {
        t.row(vec![k.to_string(), fmt_num(dist.bin_phase[k]), fmt_num(p)]);
    }
    Ok(t)
}

pub fn cmd_energy(cfg: &ExperimentConfig) -> Result<(), CliError> {
    cfg.validate()?;
    let model = cfg.model.build()?;
    let out = cfg.resolve_out_dir()?;
    let estimator = cfg.estimator.build(cfg.seed)?;
    let chain = spectral_truncation_chain(&model, cfg.order, cfg.t, cfg.a)?;

    let mut summary = Table::new(&["n", "systematic_error", "bound"]);
    for &n in &cfg.n_list {
        let result = extrapolate_ground_energy(&model, cfg.order, cfg.t, n, cfg.a, &estimator)?;
        match cfg.format {
            OutputFormat::Csv => {
                let mut fit = Table::new(&["s", "energy", "sigma"]);
                for rec in &result.per_node {
                    fit.row(vec![fmt_num(rec.s), fmt_num(rec.value), fmt_opt(rec.sigma)]);
                }
                write_csv_and_plot(
                    &out,
                    &format!("energy_fit_n{n}"),
                    &fit,
                    &PlotSpec {
                        title: format!("Node energies (n={n})"),
                        x_col: 0,
                        x_label: "s".into(),
                        y_label: "energy".into(),
                        series: vec![Series {
                            y_col: 1,
                            label: "node energy".into(),
                        }],
                        log_x: false,
                        log_y: false,
                        filter: None,
                    },
                )?;
            }
            OutputFormat::Json => {
                let text = serde_json::to_string_pretty(&record(cfg, n, &result))?;
                write_atomic(&out, &format!("energy_result_n{n}.json"), text.as_bytes())?;
            }
        }
        summary.row(vec![
            n.to_string(),
            fmt_num(result.systematic_error),
            fmt_opt(chain.bound(n)),
        ]);
    }

    match cfg.format {
        OutputFormat::Csv => {
            write_csv_and_plot(
                &out,
                "energy_summary",
                &summary,
                &PlotSpec {
                    title: "Extrapolation error vs node count".into(),
                    x_col: 0,
                    x_label: "n".into(),
                    y_label: "error".into(),
                    series: vec![
                        Series {
                            y_col: 1,
                            label: "systematic error".into(),
                        },
                        Series {
                            y_col: 2,
                            label: "truncation bound".into(),
                        },
                    ],
                    log_x: false,
                    log_y: true,
                    filter: None,
                },
            )?;
        }
        OutputFormat::Json => {
            write_atomic(&out, "energy_summary.csv", summary.to_csv().as_bytes())?;
        }
    }

    if let EstimatorChoice::Gqpe { .. } = cfg.estimator {
        dump_energy_distribution(cfg, &out)?;
    }
    Ok(())
}

/// Phase distribution actually sampled at the outermost node of the
/// largest configured grid.
fn dump_energy_distribution(cfg: &ExperimentConfig, out: &Path) -> Result<(), CliError> {
    let EstimatorChoice::Gqpe {
        m,
        q,
        sigma_over_t,
        ..
    } = &cfg.estimator
    else {
        return Ok(());
    };
    let spec = GaussianWindowSpec::new(*m, *q, *sigma_over_t, 1.0)?;
    let model = cfg.model.build()?;
    let n = *cfg.n_list.iter().max().unwrap();
    let grid = make_grid(n, cfg.a)?;
    let scheme = st_scheme(cfg.order, model.m())?;
    let s = grid.nodes[0];
    let e_prime = integer_step_count(s, grid.nodes[0])?;
    let powered = unitary_power(&apply_scheme(&model, &scheme, cfg.t * s)?, e_prime);
    let (_, vectors) = unitary_eig(&powered)?;
    let ground = eig_herm(&sum_matrix(&model))?.ground_state();
    let mut best = 0usize;
    let mut best_w = -1.0;
    for j in 0..vectors.ncols() {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..vectors.nrows() {
            acc += vectors[(i, j)].conj() * ground[i];
        }
        if acc.norm_sqr() > best_w {
            best_w = acc.norm_sqr();
            best = j;
        }
    }
    let psi = vectors.column(best).into_owned();
    let dist = gqpe_distribution(&powered, &psi, &spec)?;
    let table = distribution_table(&dist, &spec)?;
    write_atomic(out, "phase_distribution.csv", table.to_csv().as_bytes())?;
    Ok(())
}

pub fn cmd_expval(cfg: &ExperimentConfig) -> Result<(), CliError> {
    cfg.validate()?;
    let model = cfg.model.build()?;
    let out = cfg.resolve_out_dir()?;
    let observable = cfg.observable.build()?;
    let rho = cfg.rho.build(model.dim())?;
    let data_model = cfg.data_model.build(cfg.seed);

    let mut summary = Table::new(&["n", "estimate", "systematic_error"]);
    for &n in &cfg.n_list {
        let result = extrapolate_expectation(
            &model,
            &rho,
            &observable,
            cfg.order,
            cfg.t,
            n,
            cfg.a,
            &data_model,
        )?;
        match cfg.format {
            OutputFormat::Csv => {
                write_csv_and_plot(
                    &out,
                    &format!("expval_fit_n{n}"),
                    &fit_table(&result),
                    &PlotSpec {
                        title: format!("Node expectation values (n={n})"),
                        x_col: 0,
                        x_label: "s".into(),
                        y_label: "normalized expectation".into(),
                        series: vec![Series {
                            y_col: 1,
                            label: "node value".into(),
                        }],
                        log_x: false,
                        log_y: false,
                        filter: None,
                    },
                )?;
            }
            OutputFormat::Json => {
                let text = serde_json::to_string_pretty(&record(cfg, n, &result))?;
                write_atomic(&out, &format!("expval_result_n{n}.json"), text.as_bytes())?;
            }
        }
        summary.row(vec![
            n.to_string(),
            fmt_num(result.estimate),
            fmt_num(result.systematic_error),
        ]);
    }
    if cfg.format == OutputFormat::Csv {
        write_csv_and_plot(
            &out,
            "expval_summary",
            &summary,
            &PlotSpec {
                title: "Expectation extrapolation error".into(),
                x_col: 0,
                x_label: "n".into(),
                y_label: "error".into(),
                series: vec![Series {
                    y_col: 2,
                    label: "systematic error".into(),
                }],
                log_x: false,
                log_y: true,
                filter: None,
            },
        )?;
    } else {
        write_atomic(&out, "expval_summary.csv", summary.to_csv().as_bytes())?;
    }
    Ok(())
}

pub fn cmd_trotter_error(cfg: &ExperimentConfig) -> Result<(), CliError> {
    cfg.validate()?;
    let model = cfg.model.build()?;
    let out = cfg.resolve_out_dir()?;
    let noise = cfg.phase_noise.map(|p| p.build(cfg.seed));

    let mut summary = Table::new(&["n", "estimate", "reference", "systematic_error"]);
    for &n in &cfg.n_list {
        let result = estimate_trotter_error(&model, cfg.order, cfg.t, n, cfg.a, noise)?;
        match cfg.format {
            OutputFormat::Csv => {
                write_csv_and_plot(
                    &out,
                    &format!("trotter_error_fit_n{n}"),
                    &fit_table(&result),
                    &PlotSpec {
                        title: format!("Frobenius phases (n={n})"),
                        x_col: 0,
                        x_label: "s".into(),
                        y_label: "phase".into(),
                        series: vec![Series {
                            y_col: 1,
                            label: "asin sqrt p".into(),
                        }],
                        log_x: false,
                        log_y: false,
                        filter: None,
                    },
                )?;
            }
            OutputFormat::Json => {
                let text = serde_json::to_string_pretty(&record(cfg, n, &result))?;
                write_atomic(
                    &out,
                    &format!("trotter_error_result_n{n}.json"),
                    text.as_bytes(),
                )?;
            }
        }
        summary.row(vec![
            n.to_string(),
            fmt_num(result.estimate),
            fmt_num(result.exact_reference),
            fmt_num(result.systematic_error),
        ]);
    }
    if cfg.format == OutputFormat::Csv {
        write_csv_and_plot(
            &out,
            "trotter_error_summary",
            &summary,
            &PlotSpec {
                title: "Trotter-error estimate accuracy".into(),
                x_col: 0,
                x_label: "n".into(),
                y_label: "error".into(),
                series: vec![Series {
                    y_col: 3,
                    label: "estimate vs direct".into(),
                }],
                log_x: false,
                log_y: true,
                filter: None,
            },
        )?;
    } else {
        write_atomic(
            &out,
            "trotter_error_summary.csv",
            summary.to_csv().as_bytes(),
        )?;
    }
    Ok(())
}

pub fn cmd_truncation(cfg: &ExperimentConfig) -> Result<(), CliError> {
    cfg.validate()?;
    let model = cfg.model.build()?;
    let out = cfg.resolve_out_dir()?;
    let chain = spectral_truncation_chain(&model, cfg.order, cfg.t, cfg.a)?;

    let mut table = Table::new(&["n", "exact_error", "bernstein_bound"]);
    for &n in &cfg.n_list {
        let result = extrapolate_ground_energy(
            &model,
            cfg.order,
            cfg.t,
            n,
            cfg.a,
            &chebtrot::estimators::EnergyEstimator::Exact,
        )?;
        table.row(vec![
            n.to_string(),
            fmt_num(result.systematic_error),
            fmt_opt(chain.bound(n)),
        ]);
    }
    write_csv_and_plot(
        &out,
        "truncation",
        &table,
        &PlotSpec {
            title: "Truncation error and its certified bound".into(),
            x_col: 0,
            x_label: "n".into(),
            y_label: "error".into(),
            series: vec![
                Series {
                    y_col: 1,
                    label: "exact error".into(),
                },
                Series {
                    y_col: 2,
                    label: "bound".into(),
                },
            ],
            log_x: false,
            log_y: true,
            filter: None,
        },
    )?;
    Ok(())
}

pub fn cmd_cost(cfg: &ExperimentConfig) -> Result<(), CliError> {
    cfg.validate()?;
    let model = cfg.model.build()?;
    let out = cfg.resolve_out_dir()?;
    let eps_grid = cfg.cost.eps_grid();
    let report = crossover_scan(&model, cfg.order, cfg.t, cfg.a, &cfg.cost.n_list, &eps_grid)?;

    let mut table = Table::new(&["epsilon", "cost_single", "cost_extrap", "n_used"]);
    for (i, &eps) in report.eps_grid.iter().enumerate() {
        let single = report.single_costs[i]
            .map(|c| c.to_string())
            .unwrap_or_default();
        let (extrap, n_used) = report.extrap_costs[i]
            .map(|(c, n)| (c.to_string(), n.to_string()))
            .unwrap_or_default();
        table.row(vec![fmt_num(eps), single, extrap, n_used]);
    }
    write_csv_and_plot(
        &out,
        "cost",
        &table,
        &PlotSpec {
            title: "Exponential count vs target error".into(),
            x_col: 0,
            x_label: "target error".into(),
            y_label: "exponentials".into(),
            series: vec![
                Series {
                    y_col: 1,
                    label: "single formula".into(),
                },
                Series {
                    y_col: 2,
                    label: "extrapolation".into(),
                },
            ],
            log_x: true,
            log_y: true,
            filter: None,
        },
    )?;

    let mut star = Table::new(&["eps_star"]);
    star.row(vec![fmt_opt(report.eps_star)]);
    write_atomic(&out, "cost_star.csv", star.to_csv().as_bytes())?;
    Ok(())
}

pub fn cmd_window(cfg: &ExperimentConfig) -> Result<(), CliError> {
    let out = cfg.resolve_out_dir()?;
    let sweep = &cfg.window;

    let mut table = Table::new(&[
        "m",
        "q",
        "sigma_over_t",
        "measured",
        "eps_trunc",
        "eps_alias",
        "eps_renorm",
        "eps_total",
    ]);
    table.comment(serde_json::to_string(sweep)?);
    let mut violation = None;
    for &m in &sweep.m_list {
        for &off in &sweep.q_offsets {
            let q = m + off;
            if q > MAX_REGISTER_QUBITS {
                continue;
            }
            let ratio = ((1u64 << m) as f64).sqrt();
            let spec = GaussianWindowSpec::new(m, q, ratio, 1.0)?;
            let window = make_window(spec.m, spec.sigma, spec.t_sample)?;
            let upsampled = upsample(&window, q)?;
            let targets = analytic_window_targets(&spec);
            let measured: f64 = upsampled
                .iter()
                .zip(&targets)
                .map(|(a, b)| (a - Complex64::new(*b, 0.0)).norm_sqr())
                .sum::<f64>()
                .sqrt();
            let budget = window_error_budget(&spec);
            if measured > budget.eps_total {
                violation = Some((m, q, measured, budget.eps_total));
            }
            table.row(vec![
                m.to_string(),
                q.to_string(),
                fmt_num(ratio),
                fmt_num(measured),
                fmt_num(budget.eps_trunc),
                fmt_num(budget.eps_alias),
                fmt_num(budget.eps_renorm),
                fmt_num(budget.eps_total),
            ]);
        }
    }
    write_csv_and_plot(
        &out,
        "window_sweep",
        &table,
        &PlotSpec {
            title: format!("Window preparation error (m={})", sweep.demo_m),
            x_col: 1,
            x_label: "q".into(),
            y_label: "l2 error".into(),
            series: vec![
                Series {
                    y_col: 3,
                    label: "measured".into(),
                },
                Series {
                    y_col: 7,
                    label: "budget".into(),
                },
            ],
            log_x: false,
            log_y: true,
            filter: Some((0, sweep.demo_m.to_string())),
        },
    )?;

    dump_demo_distribution(cfg, &out)?;

    if let Some((m, q, measured, budget)) = violation {
        return Err(CliError::Domain(format!(
            "window preparation error exceeded its budget at m={m}, q={q}: {measured} > {budget}"
        )));
    }
    Ok(())
}

/// Exact phase distribution for a two-level unitary at the configured demo
/// eigenphase.
fn dump_demo_distribution(cfg: &ExperimentConfig, out: &Path) -> Result<(), CliError> {
    let sweep = &cfg.window;
    let ratio = ((1u64 << sweep.demo_m) as f64).sqrt();
    let spec = GaussianWindowSpec::new(sweep.demo_m, sweep.demo_q, ratio, 1.0)?;
    let theta = sweep.demo_theta;
    let mut u = DMatrix::<Complex64>::zeros(2, 2);
    u[(0, 0)] = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * theta);
    u[(1, 1)] = Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * 0.23);
    let mut psi = nalgebra::DVector::<Complex64>::zeros(2);
    psi[0] = Complex64::new(1.0, 0.0);
    let dist = gqpe_distribution(&u, &psi, &spec)?;
    let table = distribution_table(&dist, &spec)?;
    write_atomic(out, "phase_distribution_demo.csv", table.to_csv().as_bytes())?;
    Ok(())
}

#[derive(Serialize)]
struct AssumptionEcho {
    name: String,
    satisfied: bool,
    margin: f64,
}

#[derive(Serialize)]
struct BoundLine {
    name: String,
    value: f64,
    log10_value: f64,
    domain_ok: bool,
    assumptions: Vec<AssumptionEcho>,
}

fn bound_line(name: String, report: &BoundReport) -> BoundLine {
    BoundLine {
        name,
        value: report.value,
        log10_value: report.log10_value,
        domain_ok: report.domain_ok,
        assumptions: report
            .assumptions
            .iter()
            .map(|a| AssumptionEcho {
                name: a.name.to_string(),
                satisfied: a.satisfied,
                margin: a.margin,
            })
            .collect(),
    }
}

pub fn cmd_bounds(cfg: &ExperimentConfig) -> Result<(), CliError> {
    cfg.validate()?;
    let model = cfg.model.build()?;
    let k = cfg.order / 2;

    let mut lines = Vec::new();
    for &n in &cfg.n_list {
        let deriv = heff_derivative_bound(n, k, model.m(), model.hmax(), cfg.t)?;
        lines.push(bound_line(format!("phase derivative sup (n={n})"), &deriv));
        let interp = cheb_error_bound(n, cfg.a, deriv.value)?;
        lines.push(bound_line(format!("interpolation remainder (n={n})"), &interp));
    }
    let dist = heff_distance_bound(&model, cfg.t, 1.0, cfg.order, CommMode::CrudeNorm)?;
    lines.push(bound_line("effective-Hamiltonian distance (s=1)".into(), &dist));

    let mut text = String::new();
    match cfg.format {
        OutputFormat::Json => {
            text.push_str(&serde_json::to_string_pretty(&lines)?);
            text.push('\n');
        }
        OutputFormat::Csv => {
            text.push_str(&format!(
                "{:<38} {:>14} {:>9} {:>4}  {}\n",
                "bound", "value", "log10", "ok", "assumptions"
            ));
            for line in &lines {
                let assumptions = line
                    .assumptions
                    .iter()
                    .map(|a| {
                        format!(
                            "{}:{}({:+.3})",
                            a.name,
                            if a.satisfied { "yes" } else { "no" },
                            a.margin
                        )
                    })
                    .collect::<Vec<_>>()
                    .join(" ");
                text.push_str(&format!(
                    "{:<38} {:>14.6e} {:>9.3} {:>4}  {}\n",
                    line.name,
                    line.value,
                    line.log10_value,
                    if line.domain_ok { "yes" } else { "no" },
                    assumptions
                ));
            }
        }
    }
    match std::io::Write::write_all(&mut std::io::stdout(), text.as_bytes()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(e.into()),
    }
}
