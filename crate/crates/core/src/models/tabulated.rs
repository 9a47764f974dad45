use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::point::PointTuple;

use super::{check_len, CorrelationModel, DECAY};

/// Tolerance on `t3(a, b) = t3(b, a)` at the grid nodes.
pub const SYMMETRY_TOL: f64 = 1e-8;

fn check_axis(name: &str, axis: &[f64]) -> Result<()> {
    if axis.len() < 2 {
        return Err(Error::Invalid(format!("{name}: need at least two grid points")));
    }
    if axis.iter().any(|v| !v.is_finite()) {
        return Err(Error::Invalid(format!("{name}: non-finite grid point")));
    }
    if let Some(w) = axis.windows(2).find(|w| !(w[1] > w[0])) {
        return Err(Error::Invalid(format!("{name}: grid not strictly increasing at {}", w[1])));
    }
    Ok(())
}

/// Index `i` with `axis[i] <= x <= axis[i + 1]` and the weight of `axis[i + 1]`.
fn locate(axis: &[f64], x: f64) -> Option<(usize, f64)> {
    let last = axis.len() - 1;
    if !(x >= axis[0] && x <= axis[last]) {
        return None;
    }
    let i = axis.partition_point(|&a| a <= x).saturating_sub(1).min(last - 1);
    let t = (x - axis[i]) / (axis[i + 1] - axis[i]);
    Some((i, t))
}

/// Radial distribution function `g2(r)` on a grid starting at `r = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialTable {
    r: Vec<f64>,
    g2: Vec<f64>,
}

impl RadialTable {
    pub fn new(r: Vec<f64>, g2: Vec<f64>) -> Result<Self> {
        if r.len() != g2.len() {
            return Err(Error::Invalid("g2 table: column lengths differ".into()));
        }
        check_axis("g2 table", &r)?;
        if r[0] != 0.0 {
            return Err(Error::Invalid(format!("g2 table: grid must start at r = 0, found {}", r[0])));
        }
        if let Some((r, g)) = r.iter().zip(&g2).find(|(_, g)| !(**g >= 0.0) || !g.is_finite()) {
            return Err(Error::Invalid(format!("g2 table: g2({r}) = {g} must be finite and non-negative")));
        }
        Ok(RadialTable { r, g2 })
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn values(&self) -> &[f64] {
        &self.g2
    }

    /// Linear interpolation, `1` beyond the grid.
    pub fn interp(&self, r: f64) -> f64 {
        match locate(&self.r, r) {
            // exact at nodes, including the last one
            Some((i, t)) => {
                if t == 0.0 {
                    self.g2[i]
                } else {
                    (1.0 - t) * self.g2[i] + t * self.g2[i + 1]
                }
            }
            None => 1.0,
        }
    }

    pub fn r_max(&self) -> f64 {
        self.r[self.r.len() - 1]
    }
}

/// `t3(a, b)` on a rectangular grid over signed differences, row-major in `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridTable {
    a: Vec<f64>,
    b: Vec<f64>,
    values: Vec<f64>,
}

impl GridTable {
    pub fn new(a: Vec<f64>, b: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        check_axis("t3 table (r1)", &a)?;
        check_axis("t3 table (r2)", &b)?;
        if values.len() != a.len() * b.len() {
            return Err(Error::Invalid(format!(
                "t3 table: {} values for a {}x{} grid",
                values.len(),
                a.len(),
                b.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Invalid("t3 table: non-finite value".into()));
        }
        let table = GridTable { a, b, values };
        table.check_symmetry()?;
        Ok(table)
    }

    /// Builds the grid from scattered `(a, b, value)` rows covering a full rectangle.
    pub fn from_rows(rows: &[(f64, f64, f64)]) -> Result<Self> {
        let axis = |pick: fn(&(f64, f64, f64)) -> f64| {
            let mut v: Vec<f64> = rows.iter().map(pick).collect();
            v.sort_by(f64::total_cmp);
            v.dedup();
            v
        };
        let a = axis(|r| r.0);
        let b = axis(|r| r.1);
        let mut values = alloc::vec![f64::NAN; a.len() * b.len()];
        let mut seen = alloc::vec![false; values.len()];
        for &(x, y, v) in rows {
            let i = a.partition_point(|&p| p < x);
            let j = b.partition_point(|&p| p < y);
            let k = i * b.len() + j;
            if seen[k] {
                return Err(Error::Invalid(format!("t3 table: duplicate node ({x}, {y})")));
            }
            seen[k] = true;
            values[k] = v;
        }
        if let Some(k) = seen.iter().position(|s| !s) {
            return Err(Error::Invalid(format!(
                "t3 table: missing node ({}, {})",
                a[k / b.len()],
                b[k % b.len()]
            )));
        }
        GridTable::new(a, b, values)
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.b.len() + j]
    }

    fn check_symmetry(&self) -> Result<()> {
        // every node whose mirror (b, a) is also a node must agree with it
        for (i, &x) in self.a.iter().enumerate() {
            for (j, &y) in self.b.iter().enumerate() {
                let (Ok(mi), Ok(mj)) = (
                    self.a.binary_search_by(|p| p.total_cmp(&y)),
                    self.b.binary_search_by(|p| p.total_cmp(&x)),
                ) else {
                    continue;
                };
                let diff = libm::fabs(self.at(i, j) - self.at(mi, mj));
                if diff > SYMMETRY_TOL {
                    return Err(Error::Invalid(format!(
                        "t3 table: asymmetry {diff:e} at ({x}, {y}) exceeds {SYMMETRY_TOL:e}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn bilinear(&self, x: f64, y: f64) -> Option<f64> {
        let (i, s) = locate(&self.a, x)?;
        let (j, t) = locate(&self.b, y)?;
        let v00 = self.at(i, j);
        if s == 0.0 && t == 0.0 {
            return Some(v00);
        }
        let v10 = self.at(i + 1, j);
        let v01 = self.at(i, j + 1);
        let v11 = self.at(i + 1, j + 1);
        Some((1.0 - s) * ((1.0 - t) * v00 + t * v01) + s * ((1.0 - t) * v10 + t * v11))
    }

    /// Bilinear interpolation, falling back on the reflection `(-a, -b)` and
    /// then on `0` outside the grid.
    pub fn interp(&self, a: f64, b: f64) -> f64 {
        self.bilinear(a, b).or_else(|| self.bilinear(-a, -b)).unwrap_or(0.0)
    }

    pub fn extent(&self) -> f64 {
        let m = |v: &[f64]| libm::fabs(v[0]).max(libm::fabs(v[v.len() - 1]));
        m(&self.a).max(m(&self.b))
    }

    pub fn sup_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(libm::fabs(*v)))
    }
}

/// One-dimensional model built from tabulated `g2` and `t3`:
/// `rho^(2) = rho^2 g2(|x1 - x2|)`, `rho_T^(3) = rho^3 t3(x1 - y, x2 - y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedModel {
    rho: f64,
    g2: RadialTable,
    t3: GridTable,
}

impl TabulatedModel {
    pub const MAX_ORDER: usize = 3;

    pub fn new(rho: f64, g2: RadialTable, t3: GridTable) -> Result<Self> {
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::ZeroDensity);
        }
        Ok(TabulatedModel { rho, g2, t3 })
    }

    /// `g2 = 1`, `t3 = 0`: the Poisson process at density `rho`.
    pub fn ideal(rho: f64) -> Result<Self> {
        let g2 = RadialTable::new(alloc::vec![0.0, 1.0], alloc::vec![1.0, 1.0])?;
        let t3 = GridTable::new(alloc::vec![-1.0, 1.0], alloc::vec![-1.0, 1.0], alloc::vec![0.0; 4])?;
        TabulatedModel::new(rho, g2, t3)
    }

    pub fn g2(&self) -> &RadialTable {
        &self.g2
    }

    pub fn t3(&self) -> &GridTable {
        &self.t3
    }

    fn rho_t2(&self, a: f64, b: f64) -> f64 {
        self.rho * self.rho * (self.g2.interp(libm::fabs(a - b)) - 1.0)
    }

    fn rho_t3(&self, x: &[f64]) -> f64 {
        self.rho * self.rho * self.rho * self.t3.interp(x[0] - x[2], x[1] - x[2])
    }

    fn coords(points: &PointTuple) -> &[f64] {
        points.coords()
    }
}

impl CorrelationModel for TabulatedModel {
    fn dim(&self) -> usize {
        1
    }

    fn density(&self) -> f64 {
        self.rho
    }

    fn max_order(&self) -> usize {
        Self::MAX_ORDER
    }

    fn ruelle_xi(&self) -> f64 {
        let g_sup = self.g2.values().iter().fold(1.0f64, |m, g| m.max(*g));
        // rho^(3) <= rho^3 (1 + 3 (g_sup - 1) + sup |t3|)
        let three = 1.0 + 3.0 * (g_sup - 1.0) + self.t3.sup_abs();
        self.rho * libm::sqrt(g_sup).max(libm::cbrt(three))
    }

    fn rho(&self, points: &PointTuple) -> Result<f64> {
        check_len(self, points)?;
        let x = Self::coords(points);
        let r = self.rho;
        Ok(match x.len() {
            0 => 1.0,
            1 => r,
            2 => r * r * self.g2.interp(libm::fabs(x[0] - x[1])),
            _ => {
                self.rho_t3(x)
                    + r * (self.rho_t2(x[0], x[1]) + self.rho_t2(x[0], x[2]) + self.rho_t2(x[1], x[2]))
                    + r * r * r
            }
        })
    }

    fn rho_t(&self, points: &PointTuple) -> Result<f64> {
        check_len(self, points)?;
        let x = Self::coords(points);
        Ok(match x.len() {
            0 => 0.0,
            1 => self.rho,
            2 => self.rho_t2(x[0], x[1]),
            _ => self.rho_t3(x),
        })
    }

    fn correlation_length(&self) -> f64 {
        let r = self.g2.r();
        let g = self.g2.values();
        let peak = g.iter().fold(0.0f64, |m, v| m.max(libm::fabs(v - 1.0)));
        let last = (0..r.len()).rev().find(|&i| libm::fabs(g[i] - 1.0) > peak * DECAY).map_or(0.0, |i| r[i]);
        last.max(1e-3)
    }

    fn hard_core_radius(&self) -> f64 {
        let g = self.g2.values();
        match g.iter().position(|&v| v > 0.0) {
            Some(0) => 0.0,
            Some(i) => self.g2.r()[i - 1],
            None => self.g2.r_max(),
        }
    }
}
