use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::point::PointTuple;
use crate::quadrature::adaptive_1d_breaks;
use crate::ruelle::{self, partition_logs};

use super::{check_len, CorrelationModel, DECAY, Gaussian, Radial};

/// How many black vertices the activity expansion of `rho` keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MayerOrder {
    /// `rho^(m) = z^m exp(-U)`.
    Zero,
    /// One extra integrated particle.
    One,
}

/// Absolute tolerance of the `y` integral in the first-order bracket.
const BRACKET_TOL: f64 = 1e-12;

/// Gas of particles with pair potential `u` at small activity `z`, in one
/// dimension:
/// `rho^(m) = z^m exp(-sum u) [1 + z int (prod (1 + f(x_i - y)) - 1) dy]`,
/// with the bracket dropped at [`MayerOrder::Zero`].
pub struct LowActivityModel<U: Radial = Gaussian> {
    z: f64,
    u: U,
    range: f64,
    length: f64,
    order: MayerOrder,
    density: f64,
    u_min: f64,
    f_norm: f64,
}

impl<U: Radial> core::fmt::Debug for LowActivityModel<U> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("LowActivityModel")
            .field("z", &self.z)
            .field("range", &self.range)
            .field("order", &self.order)
            .field("density", &self.density)
            .finish_non_exhaustive()
    }
}

impl<U: Radial> LowActivityModel<U> {
    pub const MAX_ORDER: usize = 5;

    /// `u` must have a finite range.
    pub fn new(z: f64, u: U, order: MayerOrder) -> Result<Self> {
        if !(z > 0.0) || !z.is_finite() {
            return Err(Error::ZeroDensity);
        }
        let range = u
            .range()
            .filter(|r| *r > 0.0 && r.is_finite())
            .ok_or_else(|| Error::Invalid("pair potential needs a finite positive range".into()))?;
        let mut u_min: f64 = 0.0;
        let mut length: f64 = 0.0;
        let f0 = libm::fabs(libm::expm1(-u.value(0.0)));
        for i in 0..=2000 {
            let r = range * i as f64 / 2000.0;
            let v = u.value(r);
            if v.is_nan() {
                return Err(Error::Invalid("pair potential is NaN".into()));
            }
            u_min = u_min.min(v);
            if libm::fabs(libm::expm1(-v)) > f0 * DECAY {
                length = r;
            }
        }
        let f = |r: f64| libm::expm1(-u.value(libm::fabs(r)));
        let fa = |r: f64| libm::fabs(f(r));
        let f_int = adaptive_1d_breaks(&f, &[-range, 0.0, range], BRACKET_TOL)?.value;
        let f_norm = adaptive_1d_breaks(&fa, &[-range, 0.0, range], BRACKET_TOL)?.value;
        let density = match order {
            MayerOrder::Zero => z,
            MayerOrder::One => z * (1.0 + z * f_int),
        };
        if !(density > 0.0) {
            return Err(Error::Invalid("activity too large: first-order density is not positive".into()));
        }
        Ok(LowActivityModel { z, u, range, length: length.max(1e-3), order, density, u_min, f_norm })
    }

    pub fn activity(&self) -> f64 {
        self.z
    }

    pub fn potential(&self) -> &U {
        &self.u
    }

    pub fn mayer_order(&self) -> MayerOrder {
        self.order
    }

    fn mayer_f(&self, r: f64) -> f64 {
        libm::expm1(-self.u.value(libm::fabs(r)))
    }

    fn boltzmann(&self, x: &[f64]) -> f64 {
        let mut energy = 0.0;
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                energy += self.u.value(libm::fabs(x[i] - x[j]));
            }
        }
        libm::exp(-energy)
    }

    fn bracket(&self, x: &[f64]) -> Result<f64> {
        if self.order == MayerOrder::Zero || x.is_empty() {
            return Ok(1.0);
        }
        let integrand = |y: f64| x.iter().map(|&xi| 1.0 + self.mayer_f(xi - y)).product::<f64>() - 1.0;
        let mut breaks: Vec<f64> = x.iter().flat_map(|&xi| [xi - self.range, xi, xi + self.range]).collect();
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        let integral = adaptive_1d_breaks(&integrand, &breaks, BRACKET_TOL)?;
        Ok(1.0 + self.z * integral.value)
    }
}

impl<U: Radial> CorrelationModel for LowActivityModel<U> {
    fn dim(&self) -> usize {
        1
    }

    fn density(&self) -> f64 {
        self.density
    }

    fn max_order(&self) -> usize {
        Self::MAX_ORDER
    }

    fn ruelle_xi(&self) -> f64 {
        let n = Self::MAX_ORDER as f64;
        let a = -self.u_min;
        let pair = libm::exp((n - 1.0) * a / 2.0);
        let bracket = match self.order {
            MayerOrder::Zero => 1.0,
            MayerOrder::One => 1.0 + self.z * n * libm::exp(n * a) * self.f_norm,
        };
        self.z * pair * bracket
    }

    fn rho(&self, points: &PointTuple) -> Result<f64> {
        check_len(self, points)?;
        let x = points.coords();
        if x.is_empty() {
            return Ok(1.0);
        }
        let zm = libm::pow(self.z, x.len() as f64);
        Ok(zm * self.boltzmann(x) * self.bracket(x)?)
    }

    fn rho_t(&self, points: &PointTuple) -> Result<f64> {
        check_len(self, points)?;
        if points.is_empty() {
            return Ok(0.0);
        }
        let table = self.rho_t_table(points)?;
        Ok(table[table.len() - 1])
    }

    fn rho_t_table(&self, points: &PointTuple) -> Result<Vec<f64>> {
        let n = points.len();
        ruelle::check_table_size(n)?;
        check_len(self, points)?;
        let mut rho = vec![1.0; 1 << n];
        for (mask, slot) in rho.iter_mut().enumerate().skip(1) {
            *slot = self.rho(&points.select(mask as u32))?;
        }
        let mut table = vec![0.0; 1 << n];
        partition_logs(&rho, &mut table);
        Ok(table)
    }

    fn correlation_length(&self) -> f64 {
        self.length
    }
}
