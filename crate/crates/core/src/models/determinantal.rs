use alloc::vec;
use alloc::vec::Vec;

use crate::combinatorics::cyclic_permutations;
use crate::error::{Error, Result};
use crate::point::PointTuple;

use super::{check_len, CorrelationModel, DECAY, Gaussian, Radial};

/// Determinantal process with kernel `z kappa(x - y)`:
/// `rho^(n) = z^n det(kappa(x_i - x_j))`, truncated correlations from cycles.
pub struct DeterminantalModel<K: Radial = Gaussian> {
    z: f64,
    kappa: K,
    dim: usize,
    max_order: usize,
    cycles: Vec<Vec<Vec<usize>>>,
    length: f64,
}

impl<K: Radial> core::fmt::Debug for DeterminantalModel<K> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("DeterminantalModel")
            .field("z", &self.z)
            .field("dim", &self.dim)
            .field("max_order", &self.max_order)
            .finish_non_exhaustive()
    }
}

impl DeterminantalModel<Gaussian> {
    /// Gaussian kernel `exp(-r^2 / 2)`.
    pub fn gaussian(z: f64, dim: usize) -> Result<Self> {
        DeterminantalModel::new(z, Gaussian::new(1.0, core::f64::consts::SQRT_2), dim)
    }
}

impl<K: Radial> DeterminantalModel<K> {
    pub const DEFAULT_MAX_ORDER: usize = 7;
    pub const ORDER_CEILING: usize = 9;

    pub fn new(z: f64, kappa: K, dim: usize) -> Result<Self> {
        Self::with_max_order(z, kappa, dim, Self::DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(z: f64, kappa: K, dim: usize, max_order: usize) -> Result<Self> {
        if !(z > 0.0) || !z.is_finite() {
            return Err(Error::ZeroDensity);
        }
        if dim == 0 {
            return Err(Error::Invalid("dimension must be at least 1".into()));
        }
        if max_order == 0 || max_order > Self::ORDER_CEILING {
            return Err(Error::LimitExceeded {
                what: "determinantal order",
                requested: max_order,
                limit: Self::ORDER_CEILING,
            });
        }
        if libm::fabs(kappa.value(0.0) - 1.0) > 1e-12 {
            return Err(Error::Invalid("kernel must satisfy kappa(0) = 1".into()));
        }
        let mut length = 0.0;
        for i in 0..=4000 {
            let r = i as f64 / 200.0;
            let v = kappa.value(r);
            if !v.is_finite() || libm::fabs(v) > 1.0 + 1e-12 {
                return Err(Error::Invalid(alloc::format!("kernel must satisfy |kappa| <= 1, kappa({r}) = {v}")));
            }
            // rho_T^(2) decays like kappa^2
            if v * v > DECAY {
                length = r;
            }
        }
        let mut cycles = Vec::with_capacity(max_order + 1);
        cycles.push(Vec::new());
        for n in 1..=max_order {
            cycles.push(cyclic_permutations(n)?.collect());
        }
        Ok(DeterminantalModel { z, kappa, dim, max_order, cycles, length: length.max(1e-3) })
    }

    fn kernel_matrix(&self, points: &PointTuple) -> Vec<f64> {
        let n = points.len();
        let mut k = vec![0.0; n * n];
        for i in 0..n {
            k[i * n + i] = self.kappa.value(0.0);
            for j in i + 1..n {
                let v = self.kappa.value(points.distance(i, j));
                k[i * n + j] = v;
                k[j * n + i] = v;
            }
        }
        k
    }
}

/// Determinant by LU with partial pivoting.
pub(crate) fn determinant(mut a: Vec<f64>, n: usize) -> f64 {
    let mut det = 1.0;
    for c in 0..n {
        let pivot = (c..n)
            .max_by(|&i, &j| libm::fabs(a[i * n + c]).total_cmp(&libm::fabs(a[j * n + c])))
            .unwrap_or(c);
        let p = a[pivot * n + c];
        if p == 0.0 {
            return 0.0;
        }
        if pivot != c {
            for j in 0..n {
                a.swap(c * n + j, pivot * n + j);
            }
            det = -det;
        }
        det *= p;
        for i in c + 1..n {
            let f = a[i * n + c] / p;
            if f != 0.0 {
                for j in c..n {
                    a[i * n + j] -= f * a[c * n + j];
                }
            }
        }
    }
    det
}

impl<K: Radial> CorrelationModel for DeterminantalModel<K> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn density(&self) -> f64 {
        self.z
    }

    fn max_order(&self) -> usize {
        self.max_order
    }

    /// Hadamard: a positive semi-definite matrix with unit diagonal has `det <= 1`.
    fn ruelle_xi(&self) -> f64 {
        self.z
    }

    fn rho(&self, points: &PointTuple) -> Result<f64> {
        check_len(self, points)?;
        let n = points.len();
        if n == 0 {
            return Ok(1.0);
        }
        Ok(libm::pow(self.z, n as f64) * determinant(self.kernel_matrix(points), n))
    }

    fn rho_t(&self, points: &PointTuple) -> Result<f64> {
        check_len(self, points)?;
        let n = points.len();
        if n == 0 {
            return Ok(0.0);
        }
        let k = self.kernel_matrix(points);
        let sum: f64 = self.cycles[n]
            .iter()
            .map(|perm| perm.iter().enumerate().map(|(j, &s)| k[j * n + s]).product::<f64>())
            .sum();
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        Ok(sign * libm::pow(self.z, n as f64) * sum)
    }

    fn correlation_length(&self) -> f64 {
        self.length
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders_in_closed_form() {
        let m = DeterminantalModel::gaussian(0.4, 1).unwrap();
        let x = [0.1, 0.9, -0.5];
        let kap = |a: f64, b: f64| libm::exp(-(a - b) * (a - b) / 2.0);
        let p2 = PointTuple::line(&x[..2]);
        let k12 = kap(x[0], x[1]);
        assert!((m.rho_t(&p2).unwrap() + 0.16 * k12 * k12).abs() < 1e-15);
        assert!((m.rho(&p2).unwrap() - 0.16 * (1.0 - k12 * k12)).abs() < 1e-15);
        let p3 = PointTuple::line(&x);
        let want = 2.0 * 0.064 * k12 * kap(x[0], x[2]) * kap(x[1], x[2]);
        assert!((m.rho_t(&p3).unwrap() - want).abs() < 1e-15);
        assert_eq!(m.density(), 0.4);
    }

    #[test]
    fn determinant_of_known_matrices() {
        assert!((determinant(vec![2.0, 1.0, 1.0, 3.0], 2) - 5.0).abs() < 1e-15);
        assert!((determinant(vec![0.0, 1.0, 1.0, 0.0], 2) + 1.0).abs() < 1e-15);
        assert_eq!(determinant(vec![1.0, 2.0, 2.0, 4.0], 2), 0.0);
    }

    #[test]
    fn rejects_bad_kernels() {
        assert!(DeterminantalModel::new(0.2, Gaussian::new(0.5, 1.0), 1).is_err());
        assert!(DeterminantalModel::with_max_order(0.2, Gaussian::new(1.0, 1.0), 1, 10).is_err());
    }
}
