use alloc::vec::Vec;

use crate::combinatorics::connected_graphs;
use crate::error::{Error, Result};
use crate::point::PointTuple;
use crate::ruelle::{self, partition_logs};

use super::{check_len, CorrelationModel, DECAY, Gaussian, Radial};

/// Kirkwood closure process: `rho^(n) = sigma^n prod_{i<j} (1 + h(x_i - x_j))`.
///
/// Truncated correlations are sums over connected graphs with edge weight `h`.
pub struct KirkwoodModel<H: Radial = Gaussian> {
    sigma: f64,
    h: H,
    dim: usize,
    max_order: usize,
    h_sup: f64,
    // connected graphs per vertex count, as masks over the pair list
    graphs: Vec<Vec<u32>>,
    length: f64,
}

impl<H: Radial> core::fmt::Debug for KirkwoodModel<H> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("KirkwoodModel")
            .field("sigma", &self.sigma)
            .field("dim", &self.dim)
            .field("max_order", &self.max_order)
            .finish_non_exhaustive()
    }
}

impl<H: Radial> KirkwoodModel<H> {
    pub const DEFAULT_MAX_ORDER: usize = 6;
    pub const ORDER_CEILING: usize = 7;

    /// `h_sup` is an upper bound on `h`, used for the Ruelle constant.
    pub fn new(sigma: f64, h: H, dim: usize) -> Result<Self> {
        Self::with_max_order(sigma, h, dim, Self::DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(sigma: f64, h: H, dim: usize, max_order: usize) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::ZeroDensity);
        }
        if dim == 0 {
            return Err(Error::Invalid("dimension must be at least 1".into()));
        }
        if max_order == 0 || max_order > Self::ORDER_CEILING {
            return Err(Error::LimitExceeded {
                what: "Kirkwood order",
                requested: max_order,
                limit: Self::ORDER_CEILING,
            });
        }
        // sample h for the sup bound and the positivity of g = 1 + h
        let mut h_sup: f64 = 0.0;
        let mut length = 0.0;
        let h0 = libm::fabs(h.value(0.0)).max(1e-300);
        for i in 0..=4000 {
            let r = i as f64 / 200.0;
            let v = h.value(r);
            if !v.is_finite() || 1.0 + v < 0.0 {
                return Err(Error::Invalid(alloc::format!("1 + h must be non-negative, h({r}) = {v}")));
            }
            h_sup = h_sup.max(v);
            if libm::fabs(v) > h0 * DECAY {
                length = r;
            }
        }
        let mut graphs = Vec::with_capacity(max_order + 1);
        graphs.push(Vec::new());
        for n in 1..=max_order {
            let pairs = pair_index(n);
            let masks = connected_graphs(n)?
                .map(|edges| edges.iter().fold(0u32, |m, &(i, j)| m | 1 << pairs[i][j]))
                .collect();
            graphs.push(masks);
        }
        Ok(KirkwoodModel { sigma, h, dim, max_order, h_sup, graphs, length: length.max(1e-3) })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn structure(&self) -> &H {
        &self.h
    }

    /// `h(x_i - x_j)` for every pair, in pair-list order.
    fn pair_values(&self, points: &PointTuple) -> Vec<f64> {
        let n = points.len();
        let mut v = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                v.push(self.h.value(points.distance(i, j)));
            }
        }
        v
    }
}

/// `pairs[i][j]` = position of the pair `(i, j)` in the lexicographic pair list.
#[allow(clippy::needless_range_loop)]
fn pair_index(n: usize) -> Vec<Vec<usize>> {
    let mut idx = alloc::vec![alloc::vec![0; n]; n];
    let mut c = 0;
    for i in 0..n {
        for j in i + 1..n {
            idx[i][j] = c;
            idx[j][i] = c;
            c += 1;
        }
    }
    idx
}

impl<H: Radial> CorrelationModel for KirkwoodModel<H> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn density(&self) -> f64 {
        self.sigma
    }

    fn max_order(&self) -> usize {
        self.max_order
    }

    fn ruelle_xi(&self) -> f64 {
        // prod over pairs of g <= (1 + sup h)^(n(n-1)/2) <= ((1 + sup h)^((N-1)/2))^n
        let g = 1.0 + self.h_sup.max(0.0);
        self.sigma * libm::pow(g, (self.max_order as f64 - 1.0) / 2.0)
    }

    fn rho(&self, points: &PointTuple) -> Result<f64> {
        check_len(self, points)?;
        let n = points.len();
        let prod: f64 = self.pair_values(points).iter().map(|h| 1.0 + h).product();
        Ok(libm::pow(self.sigma, n as f64) * prod)
    }

    fn rho_t(&self, points: &PointTuple) -> Result<f64> {
        check_len(self, points)?;
        let n = points.len();
        if n == 0 {
            return Ok(0.0);
        }
        let h = self.pair_values(points);
        let mut sum = 0.0;
        for &mask in &self.graphs[n] {
            let mut w = 1.0;
            let mut m = mask;
            while m != 0 {
                w *= h[m.trailing_zeros() as usize];
                m &= m - 1;
            }
            sum += w;
        }
        Ok(libm::pow(self.sigma, n as f64) * sum)
    }

    /// Builds `rho` on all subsets from one pass over the pairs and inverts
    /// the partition sums, instead of a graph sum per subset.
    fn rho_t_table(&self, points: &PointTuple) -> Result<Vec<f64>> {
        let n = points.len();
        ruelle::check_table_size(n)?;
        check_len(self, points)?;
        let mut g = alloc::vec![1.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = 1.0 + self.h.value(points.distance(i, j));
                g[i * n + j] = v;
                g[j * n + i] = v;
            }
        }
        let mut rho = alloc::vec![1.0; 1 << n];
        for mask in 1..1usize << n {
            let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
            let rest = mask ^ (1 << top);
            let mut v = rho[rest] * self.sigma;
            let mut m = rest;
            while m != 0 {
                v *= g[top * n + m.trailing_zeros() as usize];
                m &= m - 1;
            }
            rho[mask] = v;
        }
        let mut table = alloc::vec![0.0; 1 << n];
        partition_logs(&rho, &mut table);
        Ok(table)
    }

    fn correlation_length(&self) -> f64 {
        self.length
    }
}
