//! Truncated series for the chemical potential `mu` and the pair potential
//! `H`, the potential of mean force, the first-order correction and the
//! Janossy densities of a box.

use alloc::vec::Vec;

use crate::combinatorics::factorial;
use crate::error::{Error, Result};
use crate::models::CorrelationModel;
use crate::omega::{omega_one, omega_two, two_anchor_tables, HARD_CORE_FLOOR};
use crate::point::PointTuple;
use crate::quadrature::{integrate_k, Box, Estimate, QuadratureSpec};

pub const DEFAULT_TAIL_TOL: f64 = 1e-8;
pub const DEFAULT_MAX_ORDER: usize = 3;

/// How far to sum and when to call the sum converged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSpec {
    pub max_order: usize,
    pub tail_tol: f64,
}

impl SeriesSpec {
    pub fn new(max_order: usize) -> Self {
        SeriesSpec { max_order, tail_tol: DEFAULT_TAIL_TOL }
    }

    pub fn with_tail_tol(mut self, tail_tol: f64) -> Self {
        self.tail_tol = tail_tol;
        self
    }
}

impl Default for SeriesSpec {
    fn default() -> Self {
        SeriesSpec::new(DEFAULT_MAX_ORDER)
    }
}

/// Per-order terms `t_0, ..., t_K` of a truncated series and their partial sums.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesResult {
    pub order_terms: Vec<f64>,
    pub partial_sums: Vec<f64>,
    pub quadrature_errors: Vec<f64>,
    pub bx: Box,
    /// `|t_K| < tail_tol`, or `|t_K| < |t_{K-1}|` for `K >= 2`.
    pub converged: bool,
}

impl SeriesResult {
    fn assemble(order_terms: Vec<f64>, quadrature_errors: Vec<f64>, bx: Box, tail_tol: f64) -> Self {
        let mut partial_sums = Vec::with_capacity(order_terms.len());
        let mut acc = 0.0;
        for t in &order_terms {
            acc += t;
            partial_sums.push(acc);
        }
        let k = order_terms.len() - 1;
        let last = libm::fabs(order_terms[k]);
        let converged = k >= 1 && (last < tail_tol || (k >= 2 && last < libm::fabs(order_terms[k - 1])));
        SeriesResult { order_terms, partial_sums, quadrature_errors, bx, converged }
    }

    /// The full truncated sum.
    pub fn value(&self) -> f64 {
        self.partial_sums[self.partial_sums.len() - 1]
    }

    pub fn max_order(&self) -> usize {
        self.order_terms.len() - 1
    }

    /// Truncation error estimate `|t_K|`.
    pub fn tail_estimate(&self) -> f64 {
        libm::fabs(self.order_terms[self.order_terms.len() - 1])
    }
}

fn sign(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn check_setup<M: CorrelationModel + ?Sized>(model: &M, series: &SeriesSpec, bx: &Box, anchors: usize) -> Result<()> {
    if bx.dim() != model.dim() {
        return Err(Error::Mismatch("box dimension"));
    }
    if series.max_order == 0 {
        return Err(Error::Invalid("series order must be at least 1".into()));
    }
    let need = series.max_order + anchors;
    if need > model.max_order() {
        return Err(Error::OrderExceeded { requested: need, max: model.max_order() });
    }
    Ok(())
}

fn point<M: CorrelationModel + ?Sized>(model: &M, x: &[f64]) -> Result<PointTuple> {
    if x.len() != model.dim() {
        return Err(Error::Mismatch("anchor dimension"));
    }
    PointTuple::from_flat(model.dim(), x.to_vec())
}

/// `mu = log rho + sum_k (-1)^k / k! int omega^(k)(x; y_k) dy_k`, anchored at
/// the origin.
pub fn mu_series<M: CorrelationModel + ?Sized>(
    model: &M,
    series: &SeriesSpec,
    bx: &Box,
    spec: &QuadratureSpec,
) -> Result<SeriesResult> {
    let origin = alloc::vec![0.0; model.dim()];
    mu_series_at(model, &origin, series, bx, spec)
}

/// [`mu_series`] with the anchor at `x`.
pub fn mu_series_at<M: CorrelationModel + ?Sized>(
    model: &M,
    x: &[f64],
    series: &SeriesSpec,
    bx: &Box,
    spec: &QuadratureSpec,
) -> Result<SeriesResult> {
    check_setup(model, series, bx, 1)?;
    point(model, x)?;
    let rho = model.density();
    if !(rho > 0.0) {
        return Err(Error::ZeroDensity);
    }
    let mut terms = alloc::vec![libm::log(rho)];
    let mut errors = alloc::vec![0.0];
    for k in 1..=series.max_order {
        let e = integrate_k(&|ys: &PointTuple| omega_one(model, x, ys), k, bx, spec)?;
        let c = sign(k) / factorial(k);
        terms.push(c * e.value);
        errors.push(libm::fabs(c) * e.error);
    }
    Ok(SeriesResult::assemble(terms, errors, *bx, series.tail_tol))
}

/// `-log(rho^(2)(x1, x2) / rho^2)`.
pub fn pmf<M: CorrelationModel + ?Sized>(model: &M, x1: &[f64], x2: &[f64]) -> Result<f64> {
    let pair = point(model, x1)?.concat(&point(model, x2)?);
    let rho = model.density();
    if !(rho > 0.0) {
        return Err(Error::ZeroDensity);
    }
    let rho2 = model.rho(&pair)?;
    if !(rho2 > HARD_CORE_FLOOR) {
        return Err(Error::HardCore { separation: pair.distance(0, 1), radius: model.hard_core_radius() });
    }
    Ok(-libm::log(rho2 / (rho * rho)))
}

/// `H(x1, x2) = -log(rho^(2) / rho^2) - sum_k (-1)^k / k! int omega^(k)(x1, x2; y_k) dy_k`.
pub fn h_series<M: CorrelationModel + ?Sized>(
    model: &M,
    x1: &[f64],
    x2: &[f64],
    series: &SeriesSpec,
    bx: &Box,
    spec: &QuadratureSpec,
) -> Result<SeriesResult> {
    check_setup(model, series, bx, 2)?;
    let mut terms = alloc::vec![pmf(model, x1, x2)?];
    let mut errors = alloc::vec![0.0];
    for k in 1..=series.max_order {
        let e = integrate_k(&|ys: &PointTuple| omega_two(model, x1, x2, ys), k, bx, spec)?;
        let c = -sign(k) / factorial(k);
        terms.push(c * e.value);
        errors.push(libm::fabs(c) * e.error);
    }
    Ok(SeriesResult::assemble(terms, errors, *bx, series.tail_tol))
}

/// `(1 / rho^(2)) int [rho_T^(3)(x1, x2, y) - rho_T^(2)(x1, x2) (rho_T^(2)(x1, y) + rho_T^(2)(x2, y)) / rho] dy`.
pub fn u0_correction<M: CorrelationModel + ?Sized>(
    model: &M,
    x1: &[f64],
    x2: &[f64],
    bx: &Box,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    if bx.dim() != model.dim() {
        return Err(Error::Mismatch("box dimension"));
    }
    model.check_order(3)?;
    let p1 = point(model, x1)?;
    let p2 = point(model, x2)?;
    let pair = p1.concat(&p2);
    let rho = model.density();
    let rho2 = model.rho(&pair)?;
    if !(rho2 > HARD_CORE_FLOOR) {
        return Err(Error::HardCore { separation: pair.distance(0, 1), radius: model.hard_core_radius() });
    }
    let rt2 = model.rho_t(&pair)?;
    let f = |ys: &PointTuple| {
        let t3 = model.rho_t(&pair.concat(ys))?;
        let t1y = model.rho_t(&p1.concat(ys))?;
        let t2y = model.rho_t(&p2.concat(ys))?;
        Ok((t3 - rt2 * (t1y + t2y) / rho) / rho2)
    };
    integrate_k(&f, 1, bx, spec)
}

/// A Janossy density of the box from its correlation series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Janossy {
    /// `sum_{k <= K} (-1)^k / k! int rho^(n+k)(xs, y_k) dy_k`.
    pub alternating: f64,
    /// For `n = 0`: `exp(sum_{1 <= k <= K} (-1)^k / k! int rho_T^(k))`.
    pub exponential: Option<f64>,
}

/// `j^(n)(xs)` for `n = xs.len() / dim` in `{0, 1, 2}`, truncated at `k_trunc`.
pub fn janossy<M: CorrelationModel + ?Sized>(
    model: &M,
    xs: &PointTuple,
    bx: &Box,
    k_trunc: usize,
    spec: &QuadratureSpec,
) -> Result<Janossy> {
    let n = xs.len();
    if n > 2 {
        return Err(Error::Invalid("Janossy densities are provided for n <= 2".into()));
    }
    if xs.dim() != model.dim() || bx.dim() != model.dim() {
        return Err(Error::Mismatch("point dimension"));
    }
    model.check_order(n + k_trunc)?;
    let mut alternating = model.rho(xs)?;
    for k in 1..=k_trunc {
        let e = integrate_k(&|ys: &PointTuple| model.rho(&xs.concat(ys)), k, bx, spec)?;
        alternating += sign(k) / factorial(k) * e.value;
    }
    let exponential = if n == 0 {
        let mut exponent = 0.0;
        for k in 1..=k_trunc {
            let e = integrate_k(&|ys: &PointTuple| model.rho_t(ys), k, bx, spec)?;
            exponent += sign(k) / factorial(k) * e.value;
        }
        Some(libm::exp(exponent))
    } else {
        None
    };
    Ok(Janossy { alternating, exponential })
}

/// The four series whose total is `log j^(2)(x1, x2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogJ2Parts {
    /// Order 0 is `log rho^(2)(x1, x2)`, order `k` integrates `rho_T^(k)`.
    pub rho_t: SeriesResult,
    pub omega_x1: SeriesResult,
    pub omega_x2: SeriesResult,
    pub omega_x1x2: SeriesResult,
}

impl LogJ2Parts {
    pub fn total(&self) -> f64 {
        self.rho_t.value() + self.omega_x1.value() + self.omega_x2.value() + self.omega_x1x2.value()
    }
}

/// Splits `log j^(2)` into its `rho_T`, `omega_x1`, `omega_x2` and
/// `omega_{x1,x2}` series; one two-anchor table per node serves all four.
pub fn log_j2_decomposition<M: CorrelationModel + ?Sized>(
    model: &M,
    x1: &[f64],
    x2: &[f64],
    series: &SeriesSpec,
    bx: &Box,
    spec: &QuadratureSpec,
) -> Result<LogJ2Parts> {
    check_setup(model, series, bx, 2)?;
    let pair = point(model, x1)?.concat(&point(model, x2)?);
    let rho2 = model.rho(&pair)?;
    if !(rho2 > HARD_CORE_FLOOR) {
        return Err(Error::HardCore { separation: pair.distance(0, 1), radius: model.hard_core_radius() });
    }
    let mut terms: [Vec<f64>; 4] = [alloc::vec![libm::log(rho2)], alloc::vec![0.0], alloc::vec![0.0], alloc::vec![0.0]];
    let mut errors: [Vec<f64>; 4] = core::array::from_fn(|_| alloc::vec![0.0]);
    for k in 1..=series.max_order {
        let c = sign(k) / factorial(k);
        for part in 0..4 {
            let f = |ys: &PointTuple| {
                let t = two_anchor_tables(model, x1, x2, ys)?;
                Ok(match part {
                    0 => t.rho_t.full(),
                    1 => t.omega_x1.full(),
                    2 => t.omega_x2.full(),
                    _ => t.omega_x1x2.full(),
                })
            };
            let e = integrate_k(&f, k, bx, spec)?;
            terms[part].push(c * e.value);
            errors[part].push(libm::fabs(c) * e.error);
        }
    }
    let [t0, t1, t2, t3] = terms;
    let [e0, e1, e2, e3] = errors;
    let tol = series.tail_tol;
    Ok(LogJ2Parts {
        rho_t: SeriesResult::assemble(t0, e0, *bx, tol),
        omega_x1: SeriesResult::assemble(t1, e1, *bx, tol),
        omega_x2: SeriesResult::assemble(t2, e2, *bx, tol),
        omega_x1x2: SeriesResult::assemble(t3, e3, *bx, tol),
    })
}
