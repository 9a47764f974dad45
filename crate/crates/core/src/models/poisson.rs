use crate::error::{Error, Result};
use crate::point::PointTuple;

use super::{check_len, CorrelationModel};

/// Ideal gas: independent points at constant density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonModel {
    rho: f64,
    dim: usize,
}

impl PoissonModel {
    pub const MAX_ORDER: usize = 12;

    pub fn new(rho: f64, dim: usize) -> Result<Self> {
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::ZeroDensity);
        }
        if dim == 0 {
            return Err(Error::Invalid("dimension must be at least 1".into()));
        }
        Ok(PoissonModel { rho, dim })
    }
}

impl CorrelationModel for PoissonModel {
    fn dim(&self) -> usize {
        self.dim
    }

    fn density(&self) -> f64 {
        self.rho
    }

    fn max_order(&self) -> usize {
        Self::MAX_ORDER
    }

    fn ruelle_xi(&self) -> f64 {
        self.rho
    }

    fn rho(&self, points: &PointTuple) -> Result<f64> {
        check_len(self, points)?;
        Ok(libm::pow(self.rho, points.len() as f64))
    }

    fn rho_t(&self, points: &PointTuple) -> Result<f64> {
        check_len(self, points)?;
        Ok(if points.len() == 1 { self.rho } else { 0.0 })
    }
}
