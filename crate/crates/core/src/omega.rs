//! The cluster functions `omega^(k)(x; y_k)`, `omega^(k)(x1, x2; y_k)` and the
//! family `F_{x1,x2}` whose star exponential is `rho^(2+k) / rho^(2)`.
//!
//! All values for one tuple `y_k` come from a single `rho_T` subset table over
//! the anchors followed by the field points; every recursion is filled
//! bottom-up over subsets of `y_k`, in increasing bitmask order.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::models::CorrelationModel;
use crate::point::PointTuple;
use crate::ruelle::{partition_logs, partition_sums, subset_convolution_at};

/// Values below this are treated as a vanishing pair correlation.
pub const HARD_CORE_FLOOR: f64 = 1e-300;

/// A function of the subsets of `ys`, for fixed anchors. The empty subset
/// carries no value.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetTable {
    anchors: PointTuple,
    ys: PointTuple,
    values: Vec<f64>,
}

impl SubsetTable {
    pub fn anchors(&self) -> &PointTuple {
        &self.anchors
    }

    pub fn ys(&self) -> &PointTuple {
        &self.ys
    }

    /// Value on the subset `mask` of `ys`; `None` for the empty set or an
    /// out-of-range mask.
    pub fn get(&self, mask: u32) -> Option<f64> {
        if mask == 0 {
            None
        } else {
            self.values.get(mask as usize).copied()
        }
    }

    /// Value on all of `ys`.
    pub fn full(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Values by mask, slot 0 set to zero.
    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

fn point_tuple(dim: usize, x: &[f64]) -> Result<PointTuple> {
    if x.len() != dim {
        return Err(Error::Mismatch("anchor dimension"));
    }
    PointTuple::from_flat(dim, x.to_vec())
}

fn check_ys<M: CorrelationModel + ?Sized>(model: &M, ys: &PointTuple) -> Result<()> {
    if ys.is_empty() {
        return Err(Error::Invalid("omega needs at least one field point".into()));
    }
    if ys.dim() != model.dim() {
        return Err(Error::Mismatch("point dimension"));
    }
    Ok(())
}

/// `rho_T(anchors, S) / rho^(anchors)` as a function of `S`, with the value 1
/// on the empty set: `ratio[S] = table[bits | S << shift] / norm`.
fn anchored_ratio(table: &[f64], bits: usize, shift: usize, k: usize, norm: f64) -> Vec<f64> {
    let mut r = vec![0.0; 1 << k];
    r[0] = 1.0;
    for (s, slot) in r.iter_mut().enumerate().skip(1) {
        *slot = table[bits | s << shift] / norm;
    }
    r
}

/// `omega(x; S)` on every subset from `A(S) = rho_T(x, S) / rho`: the block
/// values whose partition sums are `A`.
fn omega_one_from(ratio: &[f64]) -> Vec<f64> {
    let mut omega = vec![0.0; ratio.len()];
    partition_logs(ratio, &mut omega);
    omega
}

/// The four-term recursion for `omega(x1, x2; S)`.
///
/// `rt12[S] = rho_T(x1, x2, S)`, `a1`, `a2` the one-anchor ratios, `rho2` the
/// pair correlation at the anchors and `rt2 = rho_T^(2)(x1, x2)`.
fn omega_two_from(rt12: &[f64], a1: &[f64], a2: &[f64], rho2: f64, rt2: f64) -> Vec<f64> {
    let n = rt12.len();
    // C(T) = sum over splits of T of A1 A2, empty parts allowed
    let c: Vec<f64> = (0..n as u32).map(|t| subset_convolution_at(a1, a2, t)).collect();
    let mut omega = vec![0.0; n];
    let mut exp = vec![0.0; n];
    exp[0] = 1.0;
    let pair = rt2 / rho2;
    for mask in 1..n as u32 {
        let mut v = rt12[mask as usize] / rho2 - pair * c[mask as usize];
        // proper non-empty sigma3, coupled through exp* omega
        let mut s3 = (mask - 1) & mask;
        while s3 != 0 {
            v -= c[(mask ^ s3) as usize] * exp[s3 as usize];
            s3 = (s3 - 1) & mask;
        }
        // partitions into at least two blocks, least element in the first
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut multi = 0.0;
        if rest != 0 {
            let mut sub = (rest - 1) & rest;
            loop {
                let b = low | sub;
                multi += omega[b as usize] * exp[(mask ^ b) as usize];
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
        omega[mask as usize] = v - multi;
        exp[mask as usize] = v;
    }
    omega
}

/// `omega^(k)(x; ys)` on every subset of `ys`.
pub fn omega_one_table<M: CorrelationModel + ?Sized>(model: &M, x: &[f64], ys: &PointTuple) -> Result<SubsetTable> {
    check_ys(model, ys)?;
    let rho = model.density();
    if !(rho > 0.0) {
        return Err(Error::ZeroDensity);
    }
    let anchor = point_tuple(model.dim(), x)?;
    let table = model.rho_t_table(&anchor.concat(ys))?;
    let ratio = anchored_ratio(&table, 1, 1, ys.len(), rho);
    let mut values = omega_one_from(&ratio);
    values[0] = 0.0;
    Ok(SubsetTable { anchors: anchor, ys: ys.clone(), values })
}

/// `omega^(k)(x; y_1, ..., y_k)`.
pub fn omega_one<M: CorrelationModel + ?Sized>(model: &M, x: &[f64], ys: &PointTuple) -> Result<f64> {
    Ok(omega_one_table(model, x, ys)?.full())
}

/// Everything derived from one `rho_T` table over `(x1, x2, ys)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoAnchorTables {
    /// `rho_T(S)` for subsets `S` of `ys`.
    pub rho_t: SubsetTable,
    pub omega_x1: SubsetTable,
    pub omega_x2: SubsetTable,
    pub omega_x1x2: SubsetTable,
    /// `rho^(2)(x1, x2)`.
    pub rho2: f64,
}

impl TwoAnchorTables {
    /// `F_{x1,x2}` on every subset of `ys`.
    pub fn f2(&self) -> SubsetTable {
        let values = (0..self.rho_t.values.len())
            .map(|s| {
                self.rho_t.values[s] + self.omega_x1.values[s] + self.omega_x2.values[s] + self.omega_x1x2.values[s]
            })
            .collect();
        SubsetTable { anchors: self.omega_x1x2.anchors.clone(), ys: self.rho_t.ys.clone(), values }
    }
}

/// Builds [`TwoAnchorTables`]; needs the model at order `2 + k`.
pub fn two_anchor_tables<M: CorrelationModel + ?Sized>(
    model: &M,
    x1: &[f64],
    x2: &[f64],
    ys: &PointTuple,
) -> Result<TwoAnchorTables> {
    check_ys(model, ys)?;
    let rho = model.density();
    if !(rho > 0.0) {
        return Err(Error::ZeroDensity);
    }
    let dim = model.dim();
    let p1 = point_tuple(dim, x1)?;
    let p2 = point_tuple(dim, x2)?;
    let anchors = p1.concat(&p2);
    let rho2 = model.rho(&anchors)?;
    if !(rho2 > HARD_CORE_FLOOR) {
        return Err(Error::HardCore { separation: anchors.distance(0, 1), radius: model.hard_core_radius() });
    }
    let k = ys.len();
    let table = model.rho_t_table(&anchors.concat(ys))?;
    let rt2 = table[3];
    let a1 = anchored_ratio(&table, 1, 2, k, rho);
    let a2 = anchored_ratio(&table, 2, 2, k, rho);
    let rt12: Vec<f64> = (0..1usize << k).map(|s| if s == 0 { 0.0 } else { table[3 | s << 2] }).collect();
    let mut w12 = omega_two_from(&rt12, &a1, &a2, rho2, rt2);
    let mut w1 = omega_one_from(&a1);
    let mut w2 = omega_one_from(&a2);
    w12[0] = 0.0;
    w1[0] = 0.0;
    w2[0] = 0.0;
    let rt: Vec<f64> = (0..1usize << k).map(|s| table[s << 2]).collect();
    let wrap = |anchor: PointTuple, values| SubsetTable { anchors: anchor, ys: ys.clone(), values };
    Ok(TwoAnchorTables {
        rho_t: wrap(PointTuple::empty(dim), rt),
        omega_x1: wrap(p1, w1),
        omega_x2: wrap(p2, w2),
        omega_x1x2: wrap(anchors, w12),
        rho2,
    })
}

/// `omega^(k)(x1, x2; ys)` on every subset of `ys`.
pub fn omega_two_table<M: CorrelationModel + ?Sized>(
    model: &M,
    x1: &[f64],
    x2: &[f64],
    ys: &PointTuple,
) -> Result<SubsetTable> {
    Ok(two_anchor_tables(model, x1, x2, ys)?.omega_x1x2)
}

/// `omega^(k)(x1, x2; y_1, ..., y_k)`.
pub fn omega_two<M: CorrelationModel + ?Sized>(model: &M, x1: &[f64], x2: &[f64], ys: &PointTuple) -> Result<f64> {
    Ok(omega_two_table(model, x1, x2, ys)?.full())
}

/// `F_{x1,x2}^(k)(ys) = rho_T(ys) + omega(x1; ys) + omega(x2; ys) + omega(x1, x2; ys)`.
pub fn f2_family<M: CorrelationModel + ?Sized>(model: &M, x1: &[f64], x2: &[f64], ys: &PointTuple) -> Result<f64> {
    Ok(two_anchor_tables(model, x1, x2, ys)?.f2().full())
}

/// `|rho^(2)(x1, x2) (exp* F_{x1,x2})(ys) - rho^(2+k)(x1, x2, ys)|`.
pub fn reconstruct_check<M: CorrelationModel + ?Sized>(
    model: &M,
    x1: &[f64],
    x2: &[f64],
    ys: &PointTuple,
) -> Result<f64> {
    let tables = two_anchor_tables(model, x1, x2, ys)?;
    let f = tables.f2();
    let mut exp = vec![0.0; f.values.len()];
    partition_sums(&f.values, &mut exp);
    let dim = model.dim();
    let anchors = point_tuple(dim, x1)?.concat(&point_tuple(dim, x2)?);
    let direct = model.rho(&anchors.concat(ys))?;
    Ok(libm::fabs(tables.rho2 * exp[exp.len() - 1] - direct))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{Gaussian, KirkwoodModel, PoissonModel};

    fn h(a: f64, b: f64) -> f64 {
        0.3 * libm::exp(-(a - b) * (a - b))
    }

    fn kirkwood() -> KirkwoodModel {
        KirkwoodModel::new(0.2, Gaussian::new(0.3, 1.0), 1).unwrap()
    }

    #[test]
    fn poisson_is_exactly_zero() {
        let m = PoissonModel::new(0.7, 1).unwrap();
        let ys = PointTuple::line(&[0.1, -0.4, 1.0]);
        let t = two_anchor_tables(&m, &[0.0], &[0.5], &ys).unwrap();
        for s in 1..8 {
            assert_eq!(t.omega_x1x2.get(s), Some(0.0));
            assert_eq!(t.omega_x1.get(s), Some(0.0));
        }
        let f = t.f2();
        assert_eq!(f.get(1), Some(0.7));
        assert_eq!(f.get(3), Some(0.0));
    }

    #[test]
    fn kirkwood_low_orders() {
        let m = kirkwood();
        let (x, y1, y2) = (0.2, -0.5, 0.9);
        let w1 = omega_one(&m, &[x], &PointTuple::line(&[y1])).unwrap();
        assert!((w1 - 0.2 * h(x, y1)).abs() < 1e-15);
        let w2 = omega_one(&m, &[x], &PointTuple::line(&[y1, y2])).unwrap();
        let want = 0.04 * h(y1, y2) * (h(x, y1) + h(x, y2) + h(x, y1) * h(x, y2));
        assert!((w2 - want).abs() < 1e-15);
        let x2 = 1.1;
        let w12 = omega_two(&m, &[x], &[x2], &PointTuple::line(&[y1])).unwrap();
        assert!((w12 - 0.2 * h(x, y1) * h(x2, y1)).abs() < 1e-15);
        let f = f2_family(&m, &[x], &[x2], &PointTuple::line(&[y1])).unwrap();
        assert!((f - 0.2 * (1.0 + h(x, y1)) * (1.0 + h(x2, y1))).abs() < 1e-15);
    }

    #[test]
    fn reconstruction_vanishes() {
        let m = kirkwood();
        let ys = PointTuple::line(&[0.3, -0.2, 0.8]);
        assert!(reconstruct_check(&m, &[0.0], &[0.6], &ys).unwrap() < 1e-15);
    }

    #[test]
    fn empty_field_rejected() {
        let m = kirkwood();
        assert!(omega_one(&m, &[0.0], &PointTuple::empty(1)).is_err());
    }
}
