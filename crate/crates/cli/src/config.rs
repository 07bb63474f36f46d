//! Experiment configuration: a single JSON file whose fields individual
//! CLI flags may override.  Precedence, highest first: flag, environment
//! (threads only), config file, built-in default.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use chebtrot::estimators::{DataModel, EnergyEstimator, PhaseNoise};
use chebtrot::operators::{build_pauli_term, build_tfim, HamiltonianModel};
use chebtrot::phase_est::GaussianWindowSpec;

use crate::CliError;

/// Hamiltonian source: inline transverse-Ising parameters or a model file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelChoice {
    Tfim { num_spins: usize, j: f64, g: f64 },
    File { path: PathBuf },
}

impl Default for ModelChoice {
    fn default() -> Self {
        ModelChoice::Tfim {
            num_spins: 2,
            j: 1.0,
            g: 1.0,
        }
    }
}

impl ModelChoice {
    pub fn build(&self) -> Result<HamiltonianModel, CliError> {
        match self {
            ModelChoice::Tfim { num_spins, j, g } => Ok(build_tfim(*num_spins, *j, *g)?),
            ModelChoice::File { path } => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Config(format!("cannot read model file {}: {e}", path.display()))
                })?;
                Ok(HamiltonianModel::from_json(&text)?)
            }
        }
    }
}

/// Phase readout for the energy pipeline.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum EstimatorChoice {
    Exact,
    Gqpe {
        m: usize,
        q: usize,
        sigma_over_t: f64,
        shots: usize,
    },
}

impl Default for EstimatorChoice {
    fn default() -> Self {
        EstimatorChoice::Exact
    }
}

impl EstimatorChoice {
    pub fn build(&self, seed: u64) -> Result<EnergyEstimator, CliError> {
        match self {
            EstimatorChoice::Exact => Ok(EnergyEstimator::Exact),
            EstimatorChoice::Gqpe {
                m,
                q,
                sigma_over_t,
                shots,
            } => Ok(EnergyEstimator::Gqpe {
                spec: GaussianWindowSpec::new(*m, *q, *sigma_over_t, 1.0)?,
                shots: *shots,
                seed,
            }),
        }
    }
}

/// Perturbation applied to expectation-value data.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum DataModelChoice {
    Exact,
    GaussianNoise { sigma: f64 },
    Shot { shots: usize },
}

impl Default for DataModelChoice {
    fn default() -> Self {
        DataModelChoice::Exact
    }
}

impl DataModelChoice {
    pub fn build(&self, seed: u64) -> DataModel {
        match self {
            DataModelChoice::Exact => DataModel::Exact,
            DataModelChoice::GaussianNoise { sigma } => DataModel::GaussianNoise {
                sigma: *sigma,
                seed,
            },
            DataModelChoice::Shot { shots } => DataModel::Shot {
                shots: *shots,
                seed,
            },
        }
    }
}

/// Single-Pauli-string observable for the expectation pipeline.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservableSpec {
    pub pauli: String,
    pub coeff: f64,
}

impl Default for ObservableSpec {
    fn default() -> Self {
        ObservableSpec {
            pauli: "ZI".to_string(),
            coeff: 1.0,
        }
    }
}

impl ObservableSpec {
    pub fn build(&self) -> Result<nalgebra::DMatrix<num_complex::Complex64>, CliError> {
        Ok(build_pauli_term(self.coeff, &self.pauli)?.matrix)
    }
}

/// Initial state for the expectation pipeline.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RhoSpec {
    pub basis_state: usize,
}

impl Default for RhoSpec {
    fn default() -> Self {
        RhoSpec { basis_state: 0 }
    }
}

impl RhoSpec {
    pub fn build(&self, dim: usize) -> Result<nalgebra::DMatrix<num_complex::Complex64>, CliError> {
        if self.basis_state >= dim {
            return Err(CliError::Config(format!(
                "basis_state {} out of range for dimension {dim}",
                self.basis_state
            )));
        }
        let mut rho = nalgebra::DMatrix::<num_complex::Complex64>::zeros(dim, dim);
        rho[(self.basis_state, self.basis_state)] = num_complex::Complex64::new(1.0, 0.0);
        Ok(rho)
    }
}

/// Additive noise on extracted Frobenius phases.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseNoiseSpec {
    pub sigma: f64,
}

impl PhaseNoiseSpec {
    pub fn build(&self, seed: u64) -> PhaseNoise {
        PhaseNoise {
            sigma: self.sigma,
            seed,
        }
    }
}

/// Target-error scan driving the cost-crossover report.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CostScanConfig {
    pub eps_log10_min: f64,
    pub eps_log10_max: f64,
    pub points_per_decade: usize,
    pub n_list: Vec<usize>,
}

impl Default for CostScanConfig {
    fn default() -> Self {
        CostScanConfig {
            eps_log10_min: -8.0,
            eps_log10_max: -2.0,
            points_per_decade: 2,
            n_list: vec![4, 6, 8, 10, 12],
        }
    }
}

impl CostScanConfig {
    /// Descending ε grid from 10^max down to 10^min.
    pub fn eps_grid(&self) -> Vec<f64> {
        let decades = (self.eps_log10_max - self.eps_log10_min).abs();
        let steps = (decades * self.points_per_decade as f64).round() as usize;
        (0..=steps)
            .map(|i| {
                10f64.powf(
                    self.eps_log10_max - i as f64 / self.points_per_decade.max(1) as f64,
                )
            })
            .collect()
    }
}

/// Register sweep for the window-budget report.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WindowSweepConfig {
    pub m_list: Vec<usize>,
    pub q_offsets: Vec<usize>,
    pub demo_m: usize,
    pub demo_q: usize,
    pub demo_theta: f64,
}

impl Default for WindowSweepConfig {
    fn default() -> Self {
        WindowSweepConfig {
            m_list: vec![4, 5, 6, 7, 8],
            q_offsets: vec![0, 1, 2, 3, 4],
            demo_m: 6,
            demo_q: 8,
            demo_theta: 0.1371,
        }
    }
}

/// File format for experiment outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl Default for OutputFormat {
    fn default() -> Self {
        OutputFormat::Csv
    }
}

/// One experiment: model, formula order, time, node counts, grid scale,
/// readout models, seeds, and output plumbing.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub model: ModelChoice,
    pub order: usize,
    pub t: f64,
    pub n_list: Vec<usize>,
    pub a: f64,
    pub estimator: EstimatorChoice,
    pub data_model: DataModelChoice,
    pub observable: ObservableSpec,
    pub rho: RhoSpec,
    pub phase_noise: Option<PhaseNoiseSpec>,
    pub seed: u64,
    pub out_dir: Option<PathBuf>,
    pub threads: Option<usize>,
    pub format: OutputFormat,
    pub cost: CostScanConfig,
    pub window: WindowSweepConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            model: ModelChoice::default(),
            order: 2,
            t: 0.1,
            n_list: vec![2, 4, 6, 8],
            a: 1.0,
            estimator: EstimatorChoice::default(),
            data_model: DataModelChoice::default(),
            observable: ObservableSpec::default(),
            rho: RhoSpec::default(),
            phase_noise: None,
            seed: 7,
            out_dir: None,
            threads: None,
            format: OutputFormat::Csv,
            cost: CostScanConfig::default(),
            window: WindowSweepConfig::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| {
                    CliError::Config(format!("cannot read config {}: {e}", p.display()))
                })?;
                serde_json::from_str(&text)
                    .map_err(|e| CliError::Config(format!("invalid config: {e}")))
            }
        }
    }

    /// Fold in CLI flags; a present flag always wins over the file.
    pub fn apply_overrides(
        &mut self,
        out: Option<PathBuf>,
        seed: Option<u64>,
        threads: Option<usize>,
        format: Option<OutputFormat>,
    ) {
        if let Some(dir) = out {
            self.out_dir = Some(dir);
        }
        if let Some(s) = seed {
            self.seed = s;
        }
        if let Some(k) = threads {
            self.threads = Some(k);
        }
        if let Some(f) = format {
            self.format = f;
        }
    }

    /// Output directory; must already exist (never auto-created, so a typo
    /// cannot scatter files).
    pub fn resolve_out_dir(&self) -> Result<PathBuf, CliError> {
        let dir = self
            .out_dir
            .clone()
            .unwrap_or_else(|| PathBuf::from("."));
        if !dir.is_dir() {
            return Err(CliError::Config(format!(
                "output directory {} does not exist",
                dir.display()
            )));
        }
        Ok(dir)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.order == 0 || self.order % 2 != 0 {
            return Err(CliError::Config(format!(
                "order must be a positive even integer, got {}",
                self.order
            )));
        }
        if self.n_list.is_empty() {
            return Err(CliError::Config("n_list must not be empty".into()));
        }
        for &n in &self.n_list {
            if n == 0 || n % 2 != 0 {
                return Err(CliError::Config(format!(
                    "node counts must be positive even integers, got {n}"
                )));
            }
        }
        Ok(())
    }
}
