//! Brute-force reference values: Kirkwood graph sums for the cluster
//! functions, truncation by explicit partition recursion, and the
//! zero-black-vertex Mayer graphs.
//!
//! Nothing here goes through the subset recursions of [`crate::ruelle`] or
//! [`crate::omega`].

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::combinatorics::{bicolored_graphs, set_partitions, ColoredGraph};
use crate::error::{Error, Result};
use crate::models::Radial;
use crate::point::{distance, PointTuple};

/// Largest number of field points the graph oracles accept.
pub const ORACLE_MAX_FIELD: usize = 4;
/// Largest tuple for [`truncation_oracle`].
pub const TRUNCATION_MAX: usize = 6;

/// A graph with the product of its edge factors at concrete coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphWeight {
    pub graph: ColoredGraph,
    pub weight: f64,
}

/// Vertex `v` of a colored graph: anchors first, then field points.
fn vertex<'a>(anchors: &'a PointTuple, ys: &'a PointTuple, v: usize) -> &'a [f64] {
    if v < anchors.len() {
        anchors.point(v)
    } else {
        ys.point(v - anchors.len())
    }
}

/// Weighs `graph` with `edge(|x_i - x_j|)` on every edge.
pub fn graph_weight<E: Radial + ?Sized>(
    graph: &ColoredGraph,
    edge: &E,
    anchors: &PointTuple,
    ys: &PointTuple,
) -> GraphWeight {
    let weight = graph
        .edges
        .iter()
        .map(|&(i, j)| edge.value(distance(vertex(anchors, ys, i), vertex(anchors, ys, j))))
        .product();
    GraphWeight { graph: graph.clone(), weight }
}

fn check_field(ys: &PointTuple) -> Result<()> {
    if ys.len() > ORACLE_MAX_FIELD {
        return Err(Error::LimitExceeded { what: "oracle field points", requested: ys.len(), limit: ORACLE_MAX_FIELD });
    }
    Ok(())
}

fn kirkwood_sum<H: Radial + ?Sized>(sigma: f64, h: &H, anchors: &PointTuple, ys: &PointTuple) -> Result<f64> {
    check_field(ys)?;
    if anchors.dim() != ys.dim() {
        return Err(Error::Mismatch("point dimension"));
    }
    let sum: f64 = bicolored_graphs(anchors.len(), ys.len())?.map(|g| graph_weight(&g, h, anchors, ys).weight).sum();
    Ok(libm::pow(sigma, ys.len() as f64) * sum)
}

/// `sigma^k sum over the one-anchor graph class of prod h` for the Kirkwood
/// closure.
pub fn kirkwood_omega_one_oracle<H: Radial + ?Sized>(sigma: f64, h: &H, x: &[f64], ys: &PointTuple) -> Result<f64> {
    let anchor = PointTuple::from_flat(ys.dim(), x.to_vec())?;
    kirkwood_sum(sigma, h, &anchor, ys)
}

/// `sigma^k sum over the two-anchor graph class of prod h`; the class has no
/// anchor-anchor edge.
pub fn kirkwood_omega_two_oracle<H: Radial + ?Sized>(
    sigma: f64,
    h: &H,
    x1: &[f64],
    x2: &[f64],
    ys: &PointTuple,
) -> Result<f64> {
    let anchors = PointTuple::from_points(ys.dim(), &[x1, x2])?;
    kirkwood_sum(sigma, h, &anchors, ys)
}

/// `rho_T` at `tuple` from `rho_T(S) = rho(S) - sum over partitions of S into
/// at least two blocks of prod rho_T(block)`, memoized on subsets.
pub fn truncation_oracle<F>(rho: &F, tuple: &PointTuple) -> Result<f64>
where
    F: Fn(&PointTuple) -> Result<f64> + ?Sized,
{
    let n = tuple.len();
    if n > TRUNCATION_MAX {
        return Err(Error::LimitExceeded { what: "truncation oracle points", requested: n, limit: TRUNCATION_MAX });
    }
    if n == 0 {
        return Ok(0.0);
    }
    let mut memo = BTreeMap::new();
    let all: Vec<usize> = (0..n).collect();
    truncate(rho, tuple, &all, &mut memo)
}

fn truncate<F>(rho: &F, tuple: &PointTuple, idx: &[usize], memo: &mut BTreeMap<Vec<usize>, f64>) -> Result<f64>
where
    F: Fn(&PointTuple) -> Result<f64> + ?Sized,
{
    if let Some(v) = memo.get(idx) {
        return Ok(*v);
    }
    let mut value = rho(&tuple.pick(idx))?;
    for partition in set_partitions(idx.len()) {
        if partition.len() < 2 {
            continue;
        }
        let mut prod = 1.0;
        for block in &partition.blocks {
            let sub: Vec<usize> = block.iter().map(|&b| idx[b]).collect();
            prod *= truncate(rho, tuple, &sub, memo)?;
        }
        value -= prod;
    }
    memo.insert(idx.to_vec(), value);
    Ok(value)
}

/// Connected graphs with `n_white` anchors and `k` field vertices, no
/// anchor-anchor edge, whose field vertices stay connected once the anchors
/// are removed. Found by filtering every admissible edge set.
pub fn mayer_graph_class(n_white: usize, k: usize) -> Result<Vec<ColoredGraph>> {
    if !(1..=2).contains(&n_white) {
        return Err(Error::Invalid(alloc::format!("n_white must be 1 or 2, got {n_white}")));
    }
    if k > ORACLE_MAX_FIELD {
        return Err(Error::LimitExceeded { what: "oracle field points", requested: k, limit: ORACLE_MAX_FIELD });
    }
    let n = n_white + k;
    let mut slots = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if j >= n_white {
                slots.push((i, j));
            }
        }
    }
    let mut out = Vec::new();
    for code in 0u32..1 << slots.len() {
        let edges: Vec<(usize, usize)> =
            slots.iter().enumerate().filter(|(b, _)| code >> b & 1 == 1).map(|(_, e)| *e).collect();
        let whole = components(n, 0, &edges) == 1;
        let field = k == 0 || components(n, n_white, &edges) == 1;
        if whole && field {
            out.push(ColoredGraph { n_white, n_black: k, edges });
        }
    }
    Ok(out)
}

/// Number of connected components on the vertices `from..n`, ignoring edges
/// that touch a lower vertex.
fn components(n: usize, from: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for &(i, j) in edges {
        if i < from || j < from {
            continue;
        }
        let (a, b) = (root(&mut parent, i), root(&mut parent, j));
        if a != b {
            parent[a] = b;
        }
    }
    (from..n).filter(|&v| root(&mut parent, v) == v).count()
}

/// Leading activity term of the cluster function for a gas with pair
/// potential `u`:
/// `z^(n_white + k) sum over the anchored Mayer graph class of prod f`,
/// `f = exp(-u) - 1`, with `n_white = anchors.len()`.
///
/// Carries the factor `z^(n_white)` relative to the normalized cluster
/// functions, which divide by `rho^(n_white)`.
pub fn mayer_leading_omega<U: Radial + ?Sized>(z: f64, u: &U, anchors: &PointTuple, ys: &PointTuple) -> Result<f64> {
    if anchors.dim() != ys.dim() {
        return Err(Error::Mismatch("point dimension"));
    }
    let f = |r: f64| libm::expm1(-u.value(r));
    let sum: f64 = mayer_graph_class(anchors.len(), ys.len())?
        .iter()
        .map(|g| graph_weight(g, &f, anchors, ys).weight)
        .sum();
    Ok(libm::pow(z, (anchors.len() + ys.len()) as f64) * sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{CorrelationModel, DeterminantalModel, Gaussian};

    fn h(r: f64) -> f64 {
        0.3 * libm::exp(-r * r)
    }

    #[test]
    fn one_anchor_closed_forms() {
        let (x, y1, y2) = (0.1, 0.7, -0.6);
        let w1 = kirkwood_omega_one_oracle(0.2, &h, &[x], &PointTuple::line(&[y1])).unwrap();
        assert!((w1 - 0.2 * h(x - y1)).abs() < 1e-16);
        let w2 = kirkwood_omega_one_oracle(0.2, &h, &[x], &PointTuple::line(&[y1, y2])).unwrap();
        let want = 0.04 * h(y1 - y2) * (h(x - y1) + h(x - y2) + h(x - y1) * h(x - y2));
        assert!((w2 - want).abs() < 1e-16);
        let zero = |_: f64| 0.0;
        assert_eq!(kirkwood_omega_one_oracle(0.2, &zero, &[x], &PointTuple::line(&[y1, y2])).unwrap(), 0.0);
    }

    #[test]
    fn two_anchor_single_graph() {
        let w = kirkwood_omega_two_oracle(0.2, &h, &[0.0], &[1.0], &PointTuple::line(&[0.4])).unwrap();
        assert!((w - 0.2 * h(0.4) * h(0.6)).abs() < 1e-16);
    }

    #[test]
    fn mayer_class_matches_kirkwood_class() {
        for w in 1..=2 {
            for k in 0..=ORACLE_MAX_FIELD {
                let mut a: Vec<Vec<(usize, usize)>> = mayer_graph_class(w, k).unwrap().into_iter().map(|g| g.edges).collect();
                let mut b: Vec<Vec<(usize, usize)>> = bicolored_graphs(w, k)
                    .unwrap()
                    .map(|g| {
                        let mut e = g.edges;
                        e.sort();
                        e
                    })
                    .collect();
                a.sort();
                b.sort();
                assert_eq!(a, b, "w={w} k={k}");
            }
        }
    }

    #[test]
    fn mayer_single_graphs() {
        let u = Gaussian::new(0.5, 1.0);
        let f = |r: f64| libm::expm1(-0.5 * libm::exp(-r * r));
        let ys = PointTuple::line(&[0.3]);
        let one = mayer_leading_omega(0.1, &u, &PointTuple::line(&[0.0]), &ys).unwrap();
        assert!((one - 0.01 * f(0.3)).abs() < 1e-17);
        let two = mayer_leading_omega(0.1, &u, &PointTuple::line(&[0.0, 1.0]), &ys).unwrap();
        assert!((two - 0.001 * f(0.3) * f(0.7)).abs() < 1e-18);
        let free = Gaussian::new(0.0, 1.0);
        assert_eq!(mayer_leading_omega(0.1, &free, &PointTuple::line(&[0.0]), &ys).unwrap(), 0.0);
    }

    #[test]
    fn truncation_of_determinant() {
        let m = DeterminantalModel::gaussian(0.4, 1).unwrap();
        let p = PointTuple::line(&[0.0, 0.5, -0.8]);
        let t = truncation_oracle(&|q: &PointTuple| m.rho(q), &p).unwrap();
        let k = |a: f64, b: f64| libm::exp(-(a - b) * (a - b) / 2.0);
        let want = 2.0 * 0.064 * k(0.0, 0.5) * k(0.0, -0.8) * k(0.5, -0.8);
        assert!((t - want).abs() < 1e-15);
    }
}
