//! The `bounds` command.

use std::path::Path;

use corrinv_core::bounds::{bound_report, BoundParams, BoundReport};
use serde::Serialize;

use crate::config::BoundsConfig;
use crate::error::Result;
use crate::output::{ensure_dir, write_json};

#[derive(Debug, Clone, Serialize)]
pub struct LambertRow {
    pub t: f64,
    pub ell: f64,
    pub s: f64,
}

/// Contents of `bounds.json`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundsOutput {
    #[serde(rename = "M")]
    pub m: f64,
    #[serde(rename = "A")]
    pub a_const: f64,
    #[serde(rename = "D_rho")]
    pub d_rho: f64,
    pub d_of_r: f64,
    pub a: Vec<f64>,
    pub c: Vec<f64>,
    /// `w[0]` is undefined and written as 0.
    pub w: Vec<f64>,
    pub chi: f64,
    pub theta: f64,
    pub radius: f64,
    pub t_star: f64,
    pub ratio_radius: Option<f64>,
    pub lambert_grid: Vec<LambertRow>,
}

impl From<BoundReport> for BoundsOutput {
    fn from(r: BoundReport) -> Self {
        BoundsOutput {
            m: r.params.m,
            a_const: r.params.a,
            d_rho: r.params.d_rho,
            d_of_r: r.params.d_of_r,
            a: r.a,
            c: r.c,
            w: r.w,
            chi: r.chi,
            theta: r.theta,
            radius: r.radius,
            t_star: r.t_star,
            ratio_radius: r.ratio_radius,
            lambert_grid: r.lambert_check.iter().map(|p| LambertRow { t: p.t, ell: p.ell, s: p.s }).collect(),
        }
    }
}

pub fn compute(cfg: &BoundsConfig) -> Result<BoundsOutput> {
    let p = BoundParams::new(cfg.m, cfg.a, cfg.d_rho, cfg.d_of_r)?;
    Ok(bound_report(&p, cfg.k_max, cfg.grid)?.into())
}

/// Reads the parameters at `config` and writes `bounds.json` under `out`.
pub fn run(config: &Path, out: &Path) -> Result<BoundsOutput> {
    let cfg = BoundsConfig::load(config)?;
    let report = compute(&cfg)?;
    ensure_dir(out)?;
    write_json(&out.join("bounds.json"), &report)?;
    Ok(report)
}
