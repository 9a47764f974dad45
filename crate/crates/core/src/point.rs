use alloc::vec::Vec;

use crate::error::{Error, Result};

/// An ordered tuple of points in `R^d`, stored as one flat coordinate buffer.
#[derive(Debug, Clone, PartialEq)]
pub struct PointTuple {
    dim: usize,
    coords: Vec<f64>,
}

impl PointTuple {
    pub fn empty(dim: usize) -> Self {
        PointTuple { dim, coords: Vec::new() }
    }

    /// Builds a tuple from flat coordinates; the length must be a multiple of `dim`.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 || !coords.len().is_multiple_of(dim) {
            return Err(Error::Invalid(alloc::format!(
                "{} coordinates do not split into points of dimension {dim}",
                coords.len()
            )));
        }
        Ok(PointTuple { dim, coords })
    }

    /// One-dimensional tuple, one coordinate per point.
    pub fn line(xs: &[f64]) -> Self {
        PointTuple { dim: 1, coords: xs.to_vec() }
    }

    pub fn from_points(dim: usize, points: &[&[f64]]) -> Result<Self> {
        let mut coords = Vec::with_capacity(dim * points.len());
        for p in points {
            if p.len() != dim {
                return Err(Error::Mismatch("point dimension"));
            }
            coords.extend_from_slice(p);
        }
        Ok(PointTuple { dim, coords })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn coords_mut(&mut self) -> &mut [f64] {
        &mut self.coords
    }

    pub fn push(&mut self, p: &[f64]) {
        debug_assert_eq!(p.len(), self.dim);
        self.coords.extend_from_slice(p);
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    /// Sub-tuple of the points whose bit is set in `mask`, in index order.
    pub fn select(&self, mask: u32) -> PointTuple {
        let mut out = PointTuple {
            dim: self.dim,
            coords: Vec::with_capacity(self.dim * mask.count_ones() as usize),
        };
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            out.coords.extend_from_slice(self.point(i));
            m &= m - 1;
        }
        out
    }

    /// Sub-tuple of the listed indices.
    pub fn pick(&self, idx: &[usize]) -> PointTuple {
        let mut out = PointTuple::empty(self.dim);
        for &i in idx {
            out.coords.extend_from_slice(self.point(i));
        }
        out
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &PointTuple) -> PointTuple {
        debug_assert_eq!(self.dim, other.dim);
        let mut coords = Vec::with_capacity(self.coords.len() + other.coords.len());
        coords.extend_from_slice(&self.coords);
        coords.extend_from_slice(&other.coords);
        PointTuple { dim: self.dim, coords }
    }

    /// Every point shifted by `c`.
    pub fn shifted(&self, c: &[f64]) -> PointTuple {
        let mut out = self.clone();
        for p in out.coords.chunks_exact_mut(self.dim) {
            for (x, s) in p.iter_mut().zip(c) {
                *x += s;
            }
        }
        out
    }

    /// Euclidean distance between points `i` and `j`.
    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        distance(self.point(i), self.point(j))
    }
}

#[inline]
pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    if a.len() == 1 {
        return libm::fabs(a[0] - b[0]);
    }
    let s: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    libm::sqrt(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn select_keeps_index_order() {
        let t = PointTuple::line(&[0.0, 1.0, 2.0, 3.0]);
        assert_eq!(t.select(0b1010).coords(), &[1.0, 3.0]);
        assert!(t.select(0).is_empty());
    }

    #[test]
    fn flat_length_must_divide() {
        assert!(PointTuple::from_flat(2, alloc::vec![1.0, 2.0, 3.0]).is_err());
        let t = PointTuple::from_flat(2, alloc::vec![0.0, 0.0, 3.0, 4.0]).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.distance(0, 1), 5.0);
    }
}
