//! Experiment configuration: TOML files with CLI overrides.

use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Master seed; all randomness derives from named sub-seeds of it.
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_out_dir")]
    pub out_dir: String,
    /// Snapshot cache directory; disabled when empty. The PARAMROM_CACHE
    /// environment variable overrides the configured value.
    #[serde(default)]
    pub cache_dir: String,
    #[serde(default)]
    pub convergence_low: LowDimConfig,
    #[serde(default)]
    pub convergence_high: HighDimConfig,
    #[serde(default)]
    pub reconstruct: ReconstructConfig,
}

fn default_seed() -> u64 {
    7
}

fn default_out_dir() -> String {
    "runs".into()
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            seed: default_seed(),
            out_dir: default_out_dir(),
            cache_dir: String::new(),
            convergence_low: LowDimConfig::default(),
            convergence_high: HighDimConfig::default(),
            reconstruct: ReconstructConfig::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let config: Self = toml::from_str(&text)?;
        Ok(config)
    }

    /// Cache directory after applying the environment override.
    pub fn effective_cache_dir(&self) -> Option<std::path::PathBuf> {
        let from_env = std::env::var("PARAMROM_CACHE").ok();
        let dir = from_env.unwrap_or_else(|| self.cache_dir.clone());
        if dir.is_empty() {
            None
        } else {
            Some(dir.into())
        }
    }
}

/// Low-dimensional convergence sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct LowDimConfig {
    pub t_grids: Vec<usize>,
    pub x_grids: Vec<usize>,
    /// Per-axis sample count of the trapezoid error integration over the
    /// parameter box.
    pub eval_points_per_axis: usize,
    pub quad_order: usize,
}

impl Default for LowDimConfig {
    fn default() -> Self {
        Self {
            t_grids: vec![5, 10, 20, 30, 100],
            x_grids: vec![5, 10, 20, 30, 40, 50],
            eval_points_per_axis: 101,
            quad_order: 4,
        }
    }
}

/// High-dimensional (ELM) convergence sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct HighDimConfig {
    pub m_values: Vec<usize>,
    pub x_grids: Vec<usize>,
    /// M = features_per_point * J.
    pub features_per_point: usize,
    pub mc_samples: usize,
    pub mc_repeats: usize,
    pub networks: usize,
    pub quad_order: usize,
}

impl Default for HighDimConfig {
    fn default() -> Self {
        Self {
            m_values: vec![200, 400, 1000, 2000],
            x_grids: vec![5, 10, 20],
            features_per_point: 4,
            mc_samples: 2000,
            mc_repeats: 3,
            networks: 5,
            quad_order: 4,
        }
    }
}

/// Parameter ranges for the Gaussian potential draw.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct PotentialSpec {
    pub base: f64,
    pub amplitude_range: [f64; 2],
    pub sigma_range: [f64; 2],
}

impl Default for PotentialSpec {
    fn default() -> Self {
        Self {
            base: 1.0,
            amplitude_range: [5.0, 10.0],
            sigma_range: [0.2, 0.3],
        }
    }
}

/// Which quantity a reconstruction experiment sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StudyKind {
    /// Single run at the configured settings.
    Single,
    /// Sweep the pixel counts in `pixel_resolutions`.
    Resolution,
    /// Sweep the coverage blocks in `coverage_sides`.
    Coverage,
    /// Sweep the noise amplitudes in `rho_values`, weighted and unweighted.
    Noise,
}

/// Reconstruction experiment settings.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct ReconstructConfig {
    pub study: StudyKind,
    pub n_t: usize,
    pub mesh: usize,
    pub reference_mesh: usize,
    pub j_points: usize,
    pub features_per_point: usize,
    /// Pixels per axis of the measurement grid.
    pub pixels: usize,
    pub iterations: usize,
    /// Independent noisy realizations per sweep point (noise study only).
    pub realizations: usize,
    pub rho_noise: f64,
    pub weighted: bool,
    pub rho_values: Vec<f64>,
    pub coverage_sides: Vec<usize>,
    pub pixel_resolutions: Vec<usize>,
    pub potential: PotentialSpec,
    /// Grid side for the sup-norm potential-error estimate.
    pub potential_error_grid: usize,
}

impl Default for ReconstructConfig {
    fn default() -> Self {
        Self {
            study: StudyKind::Single,
            n_t: 10,
            mesh: 20,
            reference_mesh: 40,
            j_points: 1000,
            features_per_point: 4,
            pixels: 25,
            iterations: 200,
            realizations: 20,
            rho_noise: 0.0,
            weighted: false,
            rho_values: vec![0.02, 0.05, 0.1],
            coverage_sides: vec![25, 19, 15, 11],
            pixel_resolutions: vec![3, 7, 15, 25],
            potential: PotentialSpec::default(),
            potential_error_grid: 200,
        }
    }
}
