//! The `invert` command: `H(r)` and `mu` series with their diagnostics.

use std::path::Path;

use corrinv_core::bounds::{radius_bound, BoundParams};
use corrinv_core::inversion::{h_series, mu_series, SeriesResult, SeriesSpec};
use corrinv_core::models::{estimate_assumptions, CorrelationModel};
use corrinv_core::quadrature::{Box, QuadratureKind, QuadratureSpec};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::output::{ensure_dir, write_csv, write_json};

/// Largest change of a converged partial sum tolerated when the box doubles.
pub const DOUBLING_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesRecord {
    pub halfwidth: f64,
    pub order_terms: Vec<f64>,
    pub partial_sums: Vec<f64>,
    pub quadrature_errors: Vec<f64>,
    pub value: f64,
    pub tail_estimate: f64,
    pub converged: bool,
}

impl From<&SeriesResult> for SeriesRecord {
    fn from(s: &SeriesResult) -> Self {
        SeriesRecord {
            halfwidth: s.bx.halfwidth(),
            order_terms: s.order_terms.clone(),
            partial_sums: s.partial_sums.clone(),
            quadrature_errors: s.quadrature_errors.clone(),
            value: s.value(),
            tail_estimate: s.tail_estimate(),
            converged: s.converged,
        }
    }
}

/// A series in the configured box and, optionally, in the doubled box.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Target {
    /// Separation for `H`; absent for `mu`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    pub series: SeriesRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub doubled: Option<SeriesRecord>,
    /// `|S_k(2L) - S_k(L)|` per partial sum.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub doubling_deltas: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssumptionCheck {
    #[serde(rename = "M")]
    pub m: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "D_rho")]
    pub d_rho: f64,
    pub r: f64,
    pub d_of_r: f64,
    pub radius: f64,
    pub within_radius: bool,
}

/// Contents of `report.json`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub model: String,
    pub max_order: usize,
    pub tail_tol: f64,
    pub halfwidth: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Target>,
    pub potential: Vec<Target>,
    /// Largest doubling change over converged series.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_stability: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assumptions: Option<AssumptionCheck>,
    pub warnings: Vec<String>,
}

fn anchors(dim: usize, r: f64) -> (Vec<f64>, Vec<f64>) {
    let mut x1 = vec![0.0; dim];
    let mut x2 = vec![0.0; dim];
    x1[0] = -0.5 * r;
    x2[0] = 0.5 * r;
    (x1, x2)
}

/// Explicit tensor rules keep their node spacing in the doubled box so the
/// check measures truncation of the box rather than loss of resolution.
fn doubled_spec(spec: &QuadratureSpec) -> QuadratureSpec {
    match spec.kind {
        QuadratureKind::Tensor { nodes_per_axis } => QuadratureSpec { kind: QuadratureKind::Tensor { nodes_per_axis: 2 * nodes_per_axis }, ..*spec },
        _ => *spec,
    }
}

struct Run<'a> {
    model: &'a dyn CorrelationModel,
    series: SeriesSpec,
    bx: Box,
    spec: QuadratureSpec,
    doubling: bool,
}

impl Run<'_> {
    fn target<F>(&self, r: Option<f64>, eval: F) -> Result<Target>
    where
        F: Fn(&Box, &QuadratureSpec) -> corrinv_core::Result<SeriesResult>,
    {
        let s = eval(&self.bx, &self.spec)?;
        let (doubled, doubling_deltas) = if self.doubling {
            let d = eval(&self.bx.doubled(), &doubled_spec(&self.spec))?;
            let deltas = s.partial_sums.iter().zip(&d.partial_sums).map(|(a, b)| (a - b).abs()).collect();
            (Some(SeriesRecord::from(&d)), Some(deltas))
        } else {
            (None, None)
        };
        Ok(Target { r, series: SeriesRecord::from(&s), doubled, doubling_deltas })
    }

    fn h(&self, r: f64) -> Result<Target> {
        let (x1, x2) = anchors(self.model.dim(), r);
        self.target(Some(r), |bx, spec| h_series(self.model, &x1, &x2, &self.series, bx, spec))
    }

    fn mu(&self) -> Result<Target> {
        self.target(None, |bx, spec| mu_series(self.model, &self.series, bx, spec))
    }
}

fn check_assumptions(
    model: &dyn CorrelationModel,
    r: f64,
    bx: &Box,
    spec: &QuadratureSpec,
) -> corrinv_core::Result<AssumptionCheck> {
    let p = estimate_assumptions(model, r, bx, spec)?;
    let radius = radius_bound(&BoundParams::new(p.m, p.a, p.d_rho, p.d_of_r)?)?.radius;
    Ok(AssumptionCheck {
        m: p.m,
        a: p.a,
        d_rho: p.d_rho,
        r: p.r,
        d_of_r: p.d_of_r,
        radius,
        within_radius: p.d_rho <= radius,
    })
}

/// Runs every series of `cfg` without writing anything.
pub fn compute(cfg: &RunConfig) -> Result<ConvergenceReport> {
    let series = cfg.series.build(cfg.model.is_tabulated())?;
    let model = cfg.model.build()?;
    let model: &dyn CorrelationModel = model.as_ref();
    let bx = cfg.bx.build(model)?;
    let spec = cfg.quadrature.build();
    let hc = model.hard_core_radius();
    for (i, &r) in cfg.targets.separations.iter().enumerate() {
        if !r.is_finite() || r < 0.0 {
            return Err(CliError::Invalid(format!("targets.separations[{i}] must be a finite non-negative number")));
        }
        if r < hc {
            return Err(CliError::Invalid(format!(
                "targets.separations[{i}] = {r} lies inside the hard-core radius {hc}"
            )));
        }
    }
    let run = Run { model, series, bx, spec, doubling: cfg.bx.check_doubling };
    let mut warnings = Vec::new();

    let mu = if cfg.targets.mu { Some(run.mu()?) } else { None };
    let potential = cfg.targets.separations.iter().map(|&r| run.h(r)).collect::<Result<Vec<_>>>()?;

    let label = |t: &Target| match t.r {
        Some(r) => format!("H at r = {r}"),
        None => "mu".to_string(),
    };
    let mut l_stability: Option<f64> = None;
    for t in mu.iter().chain(&potential) {
        if !t.series.converged {
            warnings.push(format!(
                "{}: tail criterion unmet (|t_K| = {:e}, tail_tol = {:e})",
                label(t),
                t.series.tail_estimate,
                series.tail_tol
            ));
        }
        if let (Some(d), Some(deltas)) = (&t.doubled, &t.doubling_deltas) {
            if t.series.converged && d.converged {
                let worst = deltas.iter().copied().fold(0.0, f64::max);
                l_stability = Some(l_stability.unwrap_or(0.0).max(worst));
                if !(worst < DOUBLING_TOL) {
                    warnings.push(format!("{}: doubling the box moves a partial sum by {worst:e}", label(t)));
                }
            }
        }
    }

    let assumptions = if cfg.diagnostics.assumptions {
        let r = cfg.targets.separations.iter().copied().fold(f64::INFINITY, f64::min);
        let r = if r.is_finite() { r } else { hc };
        match check_assumptions(model, r, &bx, &spec) {
            Ok(a) => {
                if !a.within_radius {
                    warnings.push(format!(
                        "estimated D_rho = {:e} exceeds the radius bound {:e}; convergence is not guaranteed",
                        a.d_rho, a.radius
                    ));
                }
                Some(a)
            }
            Err(e) => {
                warnings.push(format!("assumption estimate failed: {e}"));
                None
            }
        }
    } else {
        None
    };

    Ok(ConvergenceReport {
        model: cfg.model.kind().to_string(),
        max_order: series.max_order,
        tail_tol: series.tail_tol,
        halfwidth: bx.halfwidth(),
        mu,
        potential,
        l_stability,
        assumptions,
        warnings,
    })
}

fn header(first: &str, order0: &str, k: usize, estimate: &str) -> Vec<String> {
    let mut h = vec![first.to_string(), order0.to_string()];
    h.extend((1..=k).map(|i| format!("term{i}")));
    h.push(estimate.to_string());
    h.push("tail_estimate".to_string());
    h
}

fn row(lead: f64, s: &SeriesRecord) -> Vec<f64> {
    let mut v = vec![lead];
    v.extend(&s.order_terms);
    v.push(s.value);
    v.push(s.tail_estimate);
    v
}

/// Loads `config`, runs it, and writes the CSVs and `report.json` under `out`.
pub fn run(config: &Path, out: &Path) -> Result<ConvergenceReport> {
    let cfg = RunConfig::load(config)?;
    let report = compute(&cfg)?;
    ensure_dir(out)?;
    let k = report.max_order;
    let rows: Vec<Vec<f64>> = report.potential.iter().map(|t| row(t.r.unwrap_or(0.0), &t.series)).collect();
    write_csv(&out.join(&cfg.output.potential), &header("r", "pmf", k, "H_estimate"), &rows)?;
    if let Some(mu) = &report.mu {
        write_csv(&out.join(&cfg.output.mu), &header("x", "log_rho", k, "mu_estimate"), &[row(0.0, &mu.series)])?;
    }
    write_json(&out.join(&cfg.output.report), &report)?;
    Ok(report)
}
