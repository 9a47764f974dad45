use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::point::PointTuple;
use crate::quadrature::{integrate_k, Box, QuadratureSpec};

use super::CorrelationModel;

/// Constants of the mixing bound
/// `int |rho_T^(m+k)(x_m, y_k)| dy_k <= (m+k-1)! M A^m D_rho^k rho^m` (m = 1, 2)
/// and of the pair lower bound `rho^2 <= d(r) rho^(2)` beyond distance `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssumptionParams {
    pub m: f64,
    pub a: f64,
    pub d_rho: f64,
    pub r: f64,
    pub d_of_r: f64,
}

impl AssumptionParams {
    pub fn new(m: f64, a: f64, d_rho: f64, r: f64, d_of_r: f64) -> Result<Self> {
        let p = AssumptionParams { m, a, d_rho, r, d_of_r };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let pos = [self.m, self.a, self.d_rho, self.d_of_r];
        if pos.iter().any(|v| !(*v > 0.0) || !v.is_finite()) || !(self.r >= 0.0) {
            return Err(Error::Invalid(alloc::format!("assumption constants must be positive: {self:?}")));
        }
        Ok(())
    }
}

/// Number of anchor separations sampled for the `m = 2` bound.
const SEPARATIONS: usize = 12;
/// Grid points for the `d(r)` supremum.
const D_GRID: usize = 400;

/// Numerical estimate of [`AssumptionParams`] with `M = A = 1`.
///
/// `D_rho` is the smallest value compatible with the `k = 1, 2` integrals at
/// `m = 1` and the `k = 1` integral at `m = 2`; `d(r)` is the supremum of
/// `rho^2 / rho^(2)` over separations `s >= r` on a grid out to the box size.
pub fn estimate_assumptions<M: CorrelationModel + ?Sized>(
    model: &M,
    r: f64,
    bx: &Box,
    spec: &QuadratureSpec,
) -> Result<AssumptionParams> {
    let dim = model.dim();
    if bx.dim() != dim {
        return Err(Error::Mismatch("box dimension"));
    }
    let rho = model.density();
    let origin = PointTuple::from_flat(dim, alloc::vec![0.0; dim])?;
    let abs_t = |anchor: &PointTuple| {
        let anchor = anchor.clone();
        move |ys: &PointTuple| Ok(libm::fabs(model.rho_t(&anchor.concat(ys))?))
    };
    let i11 = integrate_k(&abs_t(&origin), 1, bx, spec)?.value;
    let mut d = i11 / rho;
    if model.max_order() >= 3 {
        let i12 = integrate_k(&abs_t(&origin), 2, bx, spec)?.value;
        d = d.max(libm::sqrt(i12 / (2.0 * rho)));
        let reach = bx.halfwidth();
        for i in 0..SEPARATIONS {
            let s = reach * i as f64 / SEPARATIONS as f64;
            let mut c = alloc::vec![0.0; 2 * dim];
            c[dim] = s;
            let pair = PointTuple::from_flat(dim, c)?;
            let i21 = integrate_k(&abs_t(&pair), 1, bx, spec)?.value;
            d = d.max(i21 / (2.0 * rho * rho));
        }
    }
    let d_of_r = pair_bound(model, r, 2.0 * bx.halfwidth())?;
    AssumptionParams::new(1.0, 1.0, d.max(f64::MIN_POSITIVE), r, d_of_r)
}

/// `max(1, sup_{r <= s <= r + reach} rho^2 / rho^(2)(s))`; the supremum tends
/// to one at infinite separation.
fn pair_bound<M: CorrelationModel + ?Sized>(model: &M, r: f64, reach: f64) -> Result<f64> {
    let dim = model.dim();
    let rho = model.density();
    let mut sup: f64 = 1.0;
    let seps: Vec<f64> = (0..=D_GRID).map(|i| r + reach * i as f64 / D_GRID as f64).collect();
    for s in seps {
        let mut c = alloc::vec![0.0; 2 * dim];
        c[dim] = s;
        let rho2 = model.rho(&PointTuple::from_flat(dim, c)?)?;
        if !(rho2 > 0.0) {
            return Err(Error::HardCore { separation: s, radius: model.hard_core_radius() });
        }
        sup = sup.max(rho * rho / rho2);
    }
    Ok(sup)
}
