//! Correlation-function providers.
//!
//! Every model exposes `rho^(n)` and `rho_T^(n)` at arbitrary point tuples,
//! with `rho^(0) = 1` and `rho_T^(0) = 0`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::point::PointTuple;
use crate::ruelle::{self, FiniteFamily};

mod assumptions;
mod determinantal;
mod kirkwood;
mod low_activity;
mod poisson;
mod radial;
mod tabulated;

/// `1/e`, less a little slack so a sampled decay point on the boundary counts.
pub(crate) const DECAY: f64 = (1.0 - 1e-9) / core::f64::consts::E;

pub use assumptions::{estimate_assumptions, AssumptionParams};
pub use determinantal::DeterminantalModel;
pub use kirkwood::KirkwoodModel;
pub use low_activity::{LowActivityModel, MayerOrder};
pub use poisson::PoissonModel;
pub use radial::{Gaussian, Radial};
pub use tabulated::{GridTable, RadialTable, TabulatedModel};

/// A translation-invariant point process described by its correlation functions.
pub trait CorrelationModel: Send + Sync {
    fn dim(&self) -> usize;

    /// `rho = rho^(1)`.
    fn density(&self) -> f64;

    /// Largest `n` for which `rho` and `rho_t` are available.
    fn max_order(&self) -> usize;

    /// Constant of the Ruelle bound `rho^(n) <= xi^n`.
    fn ruelle_xi(&self) -> f64;

    /// `rho^(n)` at the `n = points.len()` points.
    fn rho(&self, points: &PointTuple) -> Result<f64>;

    /// Truncated correlation `rho_T^(n)`.
    fn rho_t(&self, points: &PointTuple) -> Result<f64>;

    /// `rho_T` on every subset of `points`, indexed by bitmask.
    fn rho_t_table(&self, points: &PointTuple) -> Result<Vec<f64>> {
        let n = points.len();
        ruelle::check_table_size(n)?;
        self.check_order(n)?;
        let mut table = vec![0.0; 1 << n];
        for (mask, slot) in table.iter_mut().enumerate().skip(1) {
            *slot = self.rho_t(&points.select(mask as u32))?;
        }
        Ok(table)
    }

    /// Distance beyond which the pair correlation stays below `1/e` of its
    /// peak; sets the default box.
    fn correlation_length(&self) -> f64 {
        1.0
    }

    /// Separation below which `rho^(2)` may vanish.
    fn hard_core_radius(&self) -> f64 {
        0.0
    }

    fn check_order(&self, n: usize) -> Result<()> {
        if n > self.max_order() {
            Err(Error::OrderExceeded { requested: n, max: self.max_order() })
        } else {
            Ok(())
        }
    }
}

/// `(rho^(n))_{n <= n_max}` as a family.
pub fn rho_family<'a, M: CorrelationModel + ?Sized>(model: &'a M, n_max: usize) -> FiniteFamily<'a> {
    FiniteFamily::new(model.dim(), n_max.min(model.max_order()), 1.0, move |p| model.rho(p))
}

/// `(rho_T^(n))_{n <= n_max}` as a family.
pub fn rho_t_family<'a, M: CorrelationModel + ?Sized>(model: &'a M, n_max: usize) -> FiniteFamily<'a> {
    FiniteFamily::new(model.dim(), n_max.min(model.max_order()), 0.0, move |p| model.rho_t(p))
}

pub(crate) fn check_len<M: CorrelationModel + ?Sized>(model: &M, points: &PointTuple) -> Result<()> {
    if points.dim() != model.dim() {
        return Err(Error::Mismatch("point dimension"));
    }
    model.check_order(points.len())
}
