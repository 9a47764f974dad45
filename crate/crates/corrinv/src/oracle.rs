//! The `oracle-check` command: main-path values against independent oracles.

use std::path::Path;

use corrinv_core::models::{rho_family, CorrelationModel, Gaussian};
use corrinv_core::omega::{omega_one, omega_two, reconstruct_check};
use corrinv_core::oracles::{
    kirkwood_omega_one_oracle, kirkwood_omega_two_oracle, mayer_leading_omega, truncation_oracle, ORACLE_MAX_FIELD,
    TRUNCATION_MAX,
};
use corrinv_core::ruelle::star_log;
use corrinv_core::PointTuple;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{ModelConfig, RunConfig};
use crate::error::{CliError, Result};

pub const TRUNCATION_TOL: f64 = 1e-11;
pub const RECONSTRUCT_TOL: f64 = 1e-10;
pub const KIRKWOOD_TOL: f64 = 1e-9;
pub const MAYER_TOL: f64 = 1e-10;
/// Half-width of the cube the random points are drawn from.
const SPREAD: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub max_residual: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.max_residual <= self.tolerance
    }
}

fn rel(a: f64, b: f64) -> f64 {
    let d = (a - b).abs() / (1.0 + b.abs());
    if d.is_nan() {
        f64::INFINITY
    } else {
        d
    }
}

struct Sampler {
    rng: ChaCha8Rng,
    dim: usize,
}

impl Sampler {
    fn points(&mut self, n: usize) -> PointTuple {
        let coords = (0..n * self.dim).map(|_| self.rng.random_range(-SPREAD..SPREAD)).collect();
        PointTuple::from_flat(self.dim, coords).expect("coordinate count matches")
    }

    fn point(&mut self) -> Vec<f64> {
        self.points(1).coords().to_vec()
    }
}

fn check<F>(name: String, tolerance: f64, samples: usize, mut residual: F) -> Result<Check>
where
    F: FnMut() -> Result<f64>,
{
    let mut max_residual: f64 = 0.0;
    for _ in 0..samples {
        let r = residual()?;
        max_residual = if r.is_nan() { f64::INFINITY } else { max_residual.max(r) };
    }
    Ok(Check { name, cases: samples, max_residual, tolerance })
}

fn kirkwood_checks(
    model: &dyn CorrelationModel,
    sigma: f64,
    h: &Gaussian,
    rng: &mut Sampler,
    samples: usize,
    out: &mut Vec<Check>,
) -> Result<()> {
    for k in 1..=ORACLE_MAX_FIELD.min(model.max_order() - 1) {
        out.push(check(format!("kirkwood omega one anchor, k = {k}"), KIRKWOOD_TOL, samples, || {
            let x = rng.point();
            let ys = rng.points(k);
            Ok(rel(omega_one(model, &x, &ys)?, kirkwood_omega_one_oracle(sigma, h, &x, &ys)?))
        })?);
    }
    for k in 1..=ORACLE_MAX_FIELD.min(model.max_order().saturating_sub(2)) {
        out.push(check(format!("kirkwood omega two anchors, k = {k}"), KIRKWOOD_TOL, samples, || {
            let (x1, x2) = (rng.point(), rng.point());
            let ys = rng.points(k);
            Ok(rel(omega_two(model, &x1, &x2, &ys)?, kirkwood_omega_two_oracle(sigma, h, &x1, &x2, &ys)?))
        })?);
    }
    Ok(())
}

/// At `mayer_order = 0` the normalized one- and two-anchor cluster
/// functions times `z^(n_white)` reproduce the Mayer graph sums exactly.
fn mayer_checks(
    model: &dyn CorrelationModel,
    z: f64,
    u: &Gaussian,
    rng: &mut Sampler,
    samples: usize,
    out: &mut Vec<Check>,
) -> Result<()> {
    for n_white in 1..=2usize {
        for k in 1..=3usize.min(model.max_order() - n_white) {
            out.push(check(format!("mayer leading order, {n_white} anchor(s), k = {k}"), MAYER_TOL, samples, || {
                let anchors = rng.points(n_white);
                let ys = rng.points(k);
                let main = if n_white == 1 {
                    omega_one(model, anchors.point(0), &ys)?
                } else {
                    omega_two(model, anchors.point(0), anchors.point(1), &ys)?
                };
                let scaled = z.powi(n_white as i32) * main;
                Ok(rel(scaled, mayer_leading_omega(z, u, &anchors, &ys)?))
            })?);
        }
    }
    Ok(())
}

/// Runs every applicable check for the model of `cfg`.
pub fn compute(cfg: &RunConfig) -> Result<Vec<Check>> {
    if cfg.model.is_tabulated() {
        return Err(CliError::Invalid("oracle-check needs an analytic model; model.kind is tabulated".into()));
    }
    let model = cfg.model.build()?;
    let model: &dyn CorrelationModel = model.as_ref();
    let samples = cfg.oracle.samples;
    let mut rng = Sampler { rng: ChaCha8Rng::seed_from_u64(cfg.oracle.seed), dim: model.dim() };
    let mut out = Vec::new();

    let n_max = model.max_order().min(TRUNCATION_MAX).min(5);
    let log = star_log(&rho_family(model, n_max))?;
    for n in 1..=n_max {
        out.push(check(format!("truncation, n = {n}"), TRUNCATION_TOL, samples, || {
            let p = rng.points(n);
            let oracle = truncation_oracle(&|q: &PointTuple| model.rho(q), &p)?;
            Ok(rel(log.eval(&p)?, oracle).max(rel(model.rho_t(&p)?, oracle)))
        })?);
    }
    for k in 1..=3usize.min(model.max_order().saturating_sub(2)) {
        out.push(check(format!("reconstruction, k = {k}"), RECONSTRUCT_TOL, samples, || {
            let (x1, x2) = (rng.point(), rng.point());
            let ys = rng.points(k);
            Ok(reconstruct_check(model, &x1, &x2, &ys)?)
        })?);
    }
    match &cfg.model {
        ModelConfig::Kirkwood { sigma, h, .. } => {
            let h = Gaussian { amplitude: h.amplitude, width: h.width, cutoff: h.cutoff };
            kirkwood_checks(model, *sigma, &h, &mut rng, samples, &mut out)?;
        }
        ModelConfig::LowActivity { z, u, mayer_order: 0 } => {
            let u = Gaussian { amplitude: u.amplitude, width: u.width, cutoff: Some(u.cutoff.unwrap_or(4.0 * u.width)) };
            mayer_checks(model, *z, &u, &mut rng, samples, &mut out)?;
        }
        _ => {}
    }
    Ok(out)
}

/// Loads `config` and runs the checks.
pub fn run(config: &Path) -> Result<Vec<Check>> {
    compute(&RunConfig::load(config)?)
}
