//! JSON run configuration. Unknown keys are rejected everywhere.

use std::fs;
use std::path::{Path, PathBuf};

use corrinv_core::models::{
    CorrelationModel, DeterminantalModel, Gaussian, KirkwoodModel, LowActivityModel, MayerOrder, PoissonModel,
    TabulatedModel,
};
use corrinv_core::quadrature::{Box, QuadratureSpec, DEFAULT_MAX_TOTAL_DIM};
use corrinv_core::inversion::{SeriesSpec, DEFAULT_MAX_ORDER, DEFAULT_TAIL_TOL};
use serde::{Deserialize, Serialize};

use crate::error::{io, CliError, Result};
use crate::tables;

/// Default box halfwidth in units of the model's correlation length.
pub const BOX_LENGTHS: f64 = 6.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelConfig,
    #[serde(default, rename = "box")]
    pub bx: BoxConfig,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
    #[serde(default)]
    pub series: SeriesConfig,
    #[serde(default)]
    pub targets: TargetsConfig,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub diagnostics: DiagnosticsConfig,
    #[serde(default)]
    pub oracle: OracleConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianConfig {
    pub amplitude: f64,
    pub width: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<f64>,
}

impl GaussianConfig {
    fn build(&self) -> Gaussian {
        Gaussian { amplitude: self.amplitude, width: self.width, cutoff: self.cutoff }
    }
}

fn one() -> usize {
    1
}

fn sqrt2() -> f64 {
    std::f64::consts::SQRT_2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelConfig {
    Poisson {
        rho: f64,
        #[serde(default = "one")]
        dim: usize,
    },
    Kirkwood {
        sigma: f64,
        h: GaussianConfig,
        #[serde(default = "one")]
        dim: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_order: Option<usize>,
    },
    /// Kernel `exp(-r^2 / width^2)`; the default width gives `exp(-r^2 / 2)`.
    Determinantal {
        z: f64,
        #[serde(default = "sqrt2")]
        kernel_width: f64,
        #[serde(default = "one")]
        dim: usize,
    },
    /// One-dimensional; `u.cutoff` defaults to four widths.
    LowActivity {
        z: f64,
        u: GaussianConfig,
        mayer_order: u8,
    },
    /// One-dimensional; paths relative to the config file.
    Tabulated {
        rho: f64,
        g2: PathBuf,
        t3: PathBuf,
    },
}

impl ModelConfig {
    pub fn kind(&self) -> &'static str {
        match self {
            ModelConfig::Poisson { .. } => "poisson",
            ModelConfig::Kirkwood { .. } => "kirkwood",
            ModelConfig::Determinantal { .. } => "determinantal",
            ModelConfig::LowActivity { .. } => "low_activity",
            ModelConfig::Tabulated { .. } => "tabulated",
        }
    }

    pub fn is_tabulated(&self) -> bool {
        matches!(self, ModelConfig::Tabulated { .. })
    }

    pub fn build(&self) -> Result<std::boxed::Box<dyn CorrelationModel>> {
        Ok(match self {
            ModelConfig::Poisson { rho, dim } => std::boxed::Box::new(PoissonModel::new(*rho, *dim)?),
            ModelConfig::Kirkwood { sigma, h, dim, max_order } => {
                let order = max_order.unwrap_or(KirkwoodModel::<Gaussian>::DEFAULT_MAX_ORDER);
                std::boxed::Box::new(KirkwoodModel::with_max_order(*sigma, h.build(), *dim, order)?)
            }
            ModelConfig::Determinantal { z, kernel_width, dim } => {
                std::boxed::Box::new(DeterminantalModel::new(*z, Gaussian::new(1.0, *kernel_width), *dim)?)
            }
            ModelConfig::LowActivity { z, u, mayer_order } => {
                let order = match mayer_order {
                    0 => MayerOrder::Zero,
                    1 => MayerOrder::One,
                    other => return Err(CliError::Invalid(format!("model.mayer_order must be 0 or 1, got {other}"))),
                };
                let mut pot = u.build();
                pot.cutoff = Some(u.cutoff.unwrap_or(4.0 * u.width));
                std::boxed::Box::new(LowActivityModel::new(*z, pot, order)?)
            }
            ModelConfig::Tabulated { rho, g2, t3 } => {
                let g2 = tables::load_g2(g2)?;
                let t3 = tables::load_t3(t3)?;
                std::boxed::Box::new(TabulatedModel::new(*rho, g2, t3)?)
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxConfig {
    /// Defaults to six correlation lengths.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub halfwidth: Option<f64>,
    /// Repeat every series in the doubled box and report the changes.
    #[serde(default)]
    pub check_doubling: bool,
}

impl BoxConfig {
    pub fn build(&self, model: &dyn CorrelationModel) -> Result<Box> {
        let l = self.halfwidth.unwrap_or(BOX_LENGTHS * model.correlation_length());
        Ok(Box::new(model.dim(), l)?)
    }
}

fn max_dim() -> usize {
    DEFAULT_MAX_TOTAL_DIM
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum QuadratureConfig {
    Auto {
        #[serde(default)]
        seed: u64,
        #[serde(default = "max_dim")]
        max_total_dim: usize,
    },
    Tensor {
        nodes_per_axis: usize,
        #[serde(default = "max_dim")]
        max_total_dim: usize,
    },
    MonteCarlo {
        samples: usize,
        seed: u64,
    },
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig::Auto { seed: 0, max_total_dim: DEFAULT_MAX_TOTAL_DIM }
    }
}

impl QuadratureConfig {
    pub fn build(&self) -> QuadratureSpec {
        match *self {
            QuadratureConfig::Auto { seed, max_total_dim } => QuadratureSpec::auto(seed).with_max_total_dim(max_total_dim),
            QuadratureConfig::Tensor { nodes_per_axis, max_total_dim } => {
                QuadratureSpec::tensor(nodes_per_axis).with_max_total_dim(max_total_dim)
            }
            QuadratureConfig::MonteCarlo { samples, seed } => QuadratureSpec::monte_carlo(samples, seed),
        }
    }
}

fn tail_tol() -> f64 {
    DEFAULT_TAIL_TOL
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesConfig {
    /// Defaults to 3, or 1 for tabulated models.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_order: Option<usize>,
    #[serde(default = "tail_tol")]
    pub tail_tol: f64,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig { max_order: None, tail_tol: DEFAULT_TAIL_TOL }
    }
}

impl SeriesConfig {
    pub fn build(&self, tabulated: bool) -> Result<SeriesSpec> {
        let k = self.max_order.unwrap_or(if tabulated { 1 } else { DEFAULT_MAX_ORDER });
        if tabulated && k > 1 {
            return Err(CliError::Invalid("tabulated models support K ≤ 1".into()));
        }
        if k == 0 {
            return Err(CliError::Invalid("series.max_order must be at least 1".into()));
        }
        if !(self.tail_tol > 0.0) {
            return Err(CliError::Invalid("series.tail_tol must be positive".into()));
        }
        Ok(SeriesSpec::new(k).with_tail_tol(self.tail_tol))
    }
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetsConfig {
    /// Separations `r`; `H` is evaluated at `x1 = -r/2`, `x2 = r/2` on the first axis.
    #[serde(default)]
    pub separations: Vec<f64>,
    #[serde(default = "yes")]
    pub mu: bool,
}

impl Default for TargetsConfig {
    fn default() -> Self {
        TargetsConfig { separations: Vec::new(), mu: true }
    }
}

fn potential_csv() -> PathBuf {
    "potential.csv".into()
}
fn mu_csv() -> PathBuf {
    "mu.csv".into()
}
fn report_json() -> PathBuf {
    "report.json".into()
}

/// File names, relative to the `--out` directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "potential_csv")]
    pub potential: PathBuf,
    #[serde(default = "mu_csv")]
    pub mu: PathBuf,
    #[serde(default = "report_json")]
    pub report: PathBuf,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { potential: potential_csv(), mu: mu_csv(), report: report_json() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagnosticsConfig {
    /// Estimate the mixing constants and compare with the radius bound.
    #[serde(default = "yes")]
    pub assumptions: bool,
}

impl Default for DiagnosticsConfig {
    fn default() -> Self {
        DiagnosticsConfig { assumptions: true }
    }
}

fn oracle_samples() -> usize {
    20
}
fn oracle_seed() -> u64 {
    1
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleConfig {
    /// Random point sets per check.
    #[serde(default = "oracle_samples")]
    pub samples: usize,
    #[serde(default = "oracle_seed")]
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { samples: oracle_samples(), seed: oracle_seed() }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(io(path))?;
    serde_json::from_str(&text).map_err(|source| CliError::Config { path: path.to_path_buf(), source })
}

impl RunConfig {
    /// Parses `path`, resolving table paths against its directory and
    /// checking that they exist.
    pub fn load(path: &Path) -> Result<Self> {
        let mut cfg: RunConfig = read_json(path)?;
        let base = path.parent().unwrap_or(Path::new("."));
        if let ModelConfig::Tabulated { g2, t3, .. } = &mut cfg.model {
            for (key, p) in [("model.g2", g2), ("model.t3", t3)] {
                if p.is_relative() {
                    *p = base.join(&*p);
                }
                if !p.is_file() {
                    return Err(CliError::Invalid(format!("{key}: no such file {}", p.display())));
                }
            }
        }
        Ok(cfg)
    }
}

/// Input of the `bounds` command.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsConfig {
    #[serde(rename = "M")]
    pub m: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "D_rho")]
    pub d_rho: f64,
    #[serde(rename = "d_of_r", default = "unit")]
    pub d_of_r: f64,
    #[serde(default = "k_max")]
    pub k_max: usize,
    #[serde(default = "grid")]
    pub grid: usize,
}

fn unit() -> f64 {
    1.0
}
fn k_max() -> usize {
    corrinv_core::bounds::DEFAULT_K_MAX
}
fn grid() -> usize {
    corrinv_core::bounds::DEFAULT_GRID
}

impl BoundsConfig {
    pub fn load(path: &Path) -> Result<Self> {
        read_json(path)
    }
}
