//! Ruelle's algebra of functions on finite configurations, truncated at a
//! fixed maximal number of points.
//!
//! A [`FiniteFamily`] is a lazy evaluator: composing families composes
//! closures, and each evaluation enumerates subsets of the concrete tuple.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::point::PointTuple;

/// Largest tuple the subset tables accept.
pub const MAX_TABLE_POINTS: usize = 16;

type Evaluator<'a> = Arc<dyn Fn(&PointTuple) -> Result<f64> + Send + Sync + 'a>;

/// `F = (F^(n))_{0 <= n <= n_max}`: a scalar part plus symmetric n-point
/// functions.
#[derive(Clone)]
pub struct FiniteFamily<'a> {
    dim: usize,
    n_max: usize,
    order0: f64,
    eval: Evaluator<'a>,
}

impl core::fmt::Debug for FiniteFamily<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("FiniteFamily")
            .field("dim", &self.dim)
            .field("n_max", &self.n_max)
            .field("order0", &self.order0)
            .finish_non_exhaustive()
    }
}

impl<'a> FiniteFamily<'a> {
    /// `eval` is only called on tuples with `1 <= len <= n_max`.
    pub fn new<F>(dim: usize, n_max: usize, order0: f64, eval: F) -> Self
    where
        F: Fn(&PointTuple) -> Result<f64> + Send + Sync + 'a,
    {
        FiniteFamily { dim, n_max, order0, eval: Arc::new(eval) }
    }

    /// The unit element `1`: one on the empty configuration, zero elsewhere.
    pub fn unit(dim: usize, n_max: usize) -> Self {
        FiniteFamily::new(dim, n_max, 1.0, |_| Ok(0.0))
    }

    pub fn zero(dim: usize, n_max: usize) -> Self {
        FiniteFamily::new(dim, n_max, 0.0, |_| Ok(0.0))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn order0(&self) -> f64 {
        self.order0
    }

    pub fn eval(&self, points: &PointTuple) -> Result<f64> {
        if points.is_empty() {
            return Ok(self.order0);
        }
        if points.dim() != self.dim {
            return Err(Error::Mismatch("point dimension"));
        }
        if points.len() > self.n_max {
            return Err(Error::OrderExceeded { requested: points.len(), max: self.n_max });
        }
        (self.eval)(points)
    }

    /// Same family with a smaller order bound.
    pub fn truncated(&self, n_max: usize) -> Self {
        FiniteFamily { n_max: n_max.min(self.n_max), ..self.clone() }
    }

    pub fn add(&self, other: &FiniteFamily<'a>) -> Result<Self> {
        check_compatible(self, other)?;
        let (a, b) = (self.clone(), other.clone());
        Ok(FiniteFamily::new(self.dim, self.n_max, self.order0 + other.order0, move |p| {
            Ok(a.eval(p)? + b.eval(p)?)
        }))
    }

    pub fn scale(&self, c: f64) -> Self {
        let a = self.clone();
        FiniteFamily::new(self.dim, self.n_max, c * self.order0, move |p| Ok(c * a.eval(p)?))
    }

    /// Values on every subset of `points`, indexed by bitmask.
    pub fn subset_values(&self, points: &PointTuple) -> Result<Vec<f64>> {
        let n = points.len();
        check_table_size(n)?;
        let mut table = vec![0.0; 1 << n];
        table[0] = self.order0;
        for (mask, slot) in table.iter_mut().enumerate().skip(1) {
            *slot = self.eval(&points.select(mask as u32))?;
        }
        Ok(table)
    }
}

fn check_compatible(a: &FiniteFamily<'_>, b: &FiniteFamily<'_>) -> Result<()> {
    if a.n_max != b.n_max {
        return Err(Error::Mismatch("order bounds"));
    }
    if a.dim != b.dim {
        return Err(Error::Mismatch("dimensions"));
    }
    Ok(())
}

pub(crate) fn check_table_size(n: usize) -> Result<()> {
    if n > MAX_TABLE_POINTS {
        return Err(Error::LimitExceeded {
            what: "subset table points",
            requested: n,
            limit: MAX_TABLE_POINTS,
        });
    }
    Ok(())
}

/// `(Psi * Phi)(eta) = sum over gamma subset of eta of Psi(gamma) Phi(eta \ gamma)`.
pub fn star_product<'a>(psi: &FiniteFamily<'a>, phi: &FiniteFamily<'a>) -> Result<FiniteFamily<'a>> {
    check_compatible(psi, phi)?;
    let (a, b) = (psi.clone(), phi.clone());
    Ok(FiniteFamily::new(psi.dim, psi.n_max, psi.order0 * phi.order0, move |p| {
        let ta = a.subset_values(p)?;
        let tb = b.subset_values(p)?;
        Ok(subset_convolution_at(&ta, &tb, (ta.len() - 1) as u32))
    }))
}

/// `sum over gamma subset of mask of a[gamma] b[mask \ gamma]`.
pub(crate) fn subset_convolution_at(a: &[f64], b: &[f64], mask: u32) -> f64 {
    let mut s = 0.0;
    let mut g = mask;
    loop {
        s += a[g as usize] * b[(mask & !g) as usize];
        if g == 0 {
            break;
        }
        g = (g - 1) & mask;
    }
    s
}

/// Fills `exp` with the partition sums of `blocks` over every subset:
/// `exp[S] = sum over set partitions pi of S of prod_i blocks[pi_i]`.
pub(crate) fn partition_sums(blocks: &[f64], exp: &mut [f64]) {
    exp[0] = 1.0;
    for mask in 1..blocks.len() as u32 {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        // blocks containing the least element: low | sub for sub subset of rest
        let mut s = 0.0;
        let mut sub = rest;
        loop {
            let b = low | sub;
            s += blocks[b as usize] * exp[(mask ^ b) as usize];
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        exp[mask as usize] = s;
    }
}

/// Inverse of [`partition_sums`]: given `exp` with `exp[0] = 1`, recovers the
/// block values bottom-up,
/// `blocks[S] = exp[S] - sum over partitions of S with >= 2 blocks`.
pub(crate) fn partition_logs(exp: &[f64], blocks: &mut [f64]) {
    let n = exp.len();
    // multi[S] = contribution of partitions with at least two blocks
    let mut full = vec![0.0; n];
    full[0] = 1.0;
    blocks[0] = 0.0;
    for mask in 1..n as u32 {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut multi = 0.0;
        if rest != 0 {
            let mut sub = (rest - 1) & rest;
            // proper blocks low | sub, sub a proper subset of rest
            loop {
                let b = low | sub;
                multi += blocks[b as usize] * full[(mask ^ b) as usize];
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
        blocks[mask as usize] = exp[mask as usize] - multi;
        full[mask as usize] = blocks[mask as usize] + multi;
    }
}

/// `exp*(Phi) = 1 + sum_n Phi^{*n} / n!`, for `Phi(empty) = 0`.
///
/// At `n` points this is the sum over set partitions of the products of `Phi`
/// over the blocks.
pub fn star_exp<'a>(phi: &FiniteFamily<'a>) -> Result<FiniteFamily<'a>> {
    if phi.order0 != 0.0 {
        return Err(Error::BadScalarPart { expected: 0.0, found: phi.order0 });
    }
    let a = phi.clone();
    Ok(FiniteFamily::new(phi.dim, phi.n_max, 1.0, move |p| {
        let mut blocks = a.subset_values(p)?;
        blocks[0] = 0.0;
        let mut exp = vec![0.0; blocks.len()];
        partition_sums(&blocks, &mut exp);
        Ok(exp[exp.len() - 1])
    }))
}

/// Inverse of [`star_exp`] on families with unit scalar part.
pub fn star_log<'a>(psi: &FiniteFamily<'a>) -> Result<FiniteFamily<'a>> {
    if libm::fabs(psi.order0 - 1.0) > 1e-12 {
        return Err(Error::BadScalarPart { expected: 1.0, found: psi.order0 });
    }
    let a = psi.clone();
    Ok(FiniteFamily::new(psi.dim, psi.n_max, 0.0, move |p| {
        let mut exp = a.subset_values(p)?;
        exp[0] = 1.0;
        let mut blocks = vec![0.0; exp.len()];
        partition_logs(&exp, &mut blocks);
        Ok(blocks[blocks.len() - 1])
    }))
}

/// `(D_gamma Psi)(eta) = Psi(eta u gamma)` for `eta` disjoint from `gamma`,
/// zero otherwise. The order bound shrinks by `|gamma|`.
pub fn d_reduce<'a>(gamma: &PointTuple, psi: &FiniteFamily<'a>) -> Result<FiniteFamily<'a>> {
    if gamma.dim() != psi.dim {
        return Err(Error::Mismatch("point dimension"));
    }
    let g = gamma.len();
    if g > psi.n_max {
        return Err(Error::OrderExceeded { requested: g, max: psi.n_max });
    }
    let order0 = psi.eval(gamma)?;
    let a = psi.clone();
    let gamma = gamma.clone();
    Ok(FiniteFamily::new(psi.dim, psi.n_max - g, order0, move |eta| {
        let clash = eta.iter().any(|p| gamma.iter().any(|q| p == q));
        if clash {
            return Ok(0.0);
        }
        a.eval(&gamma.concat(eta))
    }))
}
