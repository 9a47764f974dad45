#![allow(dead_code)]

use corrinv_core::models::{
    DeterminantalModel, Gaussian, GridTable, KirkwoodModel, LowActivityModel, MayerOrder, PoissonModel,
    RadialTable, TabulatedModel,
};
use corrinv_core::ruelle::FiniteFamily;
use corrinv_core::PointTuple;
use proptest::prelude::*;

/// Smooth symmetric family: `c_n exp(-alpha |x|^2) + b_n sum_{i<j} cos(x_i - x_j)`.
pub fn family(order0: f64, c: [f64; 6], b: [f64; 6], alpha: f64) -> FiniteFamily<'static> {
    FiniteFamily::new(1, 5, order0, move |p| {
        let n = p.len();
        let sq: f64 = p.coords().iter().map(|x| x * x).sum();
        let mut pair = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                pair += (p.point(i)[0] - p.point(j)[0]).cos();
            }
        }
        Ok(c[n] * (-alpha * sq).exp() + b[n] * pair)
    })
}

pub fn coeffs() -> impl Strategy<Value = [f64; 6]> {
    prop::array::uniform6(-1.0f64..1.0)
}

pub fn tuple(max: usize) -> impl Strategy<Value = PointTuple> {
    prop::collection::vec(-2.0f64..2.0, 1..=max).prop_map(|v| PointTuple::line(&v))
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

pub fn kirkwood(a: f64) -> KirkwoodModel {
    KirkwoodModel::new(0.3, Gaussian::new(a, 1.0), 1).unwrap()
}

pub fn determinantal() -> DeterminantalModel {
    DeterminantalModel::gaussian(0.3, 1).unwrap()
}

pub fn low_activity() -> LowActivityModel {
    LowActivityModel::new(0.1, Gaussian::truncated(0.5, 1.0), MayerOrder::One).unwrap()
}

pub fn poisson() -> PoissonModel {
    PoissonModel::new(0.4, 1).unwrap()
}

/// Kirkwood `g2` and `t3` on a grid of step `h` out to `extent`.
pub fn kirkwood_tables(sigma: f64, a: f64, h: f64, extent: f64) -> TabulatedModel {
    let hf = |r: f64| a * (-r * r).exp();
    let n = (extent / h).round() as usize;
    let r: Vec<f64> = (0..=n).map(|i| i as f64 * h).collect();
    let g2: Vec<f64> = r.iter().map(|&r| 1.0 + hf(r)).collect();
    let axis: Vec<f64> = (0..=2 * n).map(|i| -extent + i as f64 * h).collect();
    let mut t3 = Vec::with_capacity(axis.len() * axis.len());
    for &p in &axis {
        for &q in &axis {
            let (h1, h2, h12) = (hf(p.abs()), hf(q.abs()), hf((p - q).abs()));
            t3.push(h1 * h2 + h1 * h12 + h2 * h12 + h1 * h2 * h12);
        }
    }
    TabulatedModel::new(
        sigma,
        RadialTable::new(r, g2).unwrap(),
        GridTable::new(axis.clone(), axis, t3).unwrap(),
    )
    .unwrap()
}
