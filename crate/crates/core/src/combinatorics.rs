//! Set partitions, ordered splits, Bell polynomials and the graph families
//! behind the cluster recursions.
//!
//! Every enumerator is a plain iterator with a fixed, lexicographic order, so
//! fixtures built from them are stable between runs.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub const MAX_GRAPH_VERTICES: usize = 8;
pub const MAX_BLACK_VERTICES: usize = 7;
pub const MAX_CYCLE_LENGTH: usize = 9;

/// An unordered set partition of `{0..n-1}`; blocks sorted by least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    pub blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Ground-set size.
    pub fn size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }
}

/// Iterator over all set partitions of `{0..n-1}` by restricted growth strings.
#[derive(Debug, Clone)]
pub struct SetPartitions {
    n: usize,
    // rgs[i] = block of element i; maxes[i] = max(rgs[0..i])
    rgs: Vec<usize>,
    maxes: Vec<usize>,
    done: bool,
}

/// All unordered set partitions of `{0..n-1}`; `n = 0` yields the single
/// empty partition. The count is the Bell number `B(n)`.
pub fn set_partitions(n: usize) -> SetPartitions {
    SetPartitions { n, rgs: vec![0; n], maxes: vec![0; n], done: false }
}

/// Set partitions of `{0..n-1}` into exactly `k` blocks (Stirling `S(n, k)` of them).
pub fn set_partitions_into(n: usize, k: usize) -> impl Iterator<Item = Partition> {
    set_partitions(n).filter(move |p| p.len() == k)
}

impl Iterator for SetPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let n = self.n;
        let nblocks = if n == 0 { 0 } else { self.rgs.iter().copied().max().unwrap_or(0) + 1 };
        let mut blocks = vec![Vec::new(); nblocks];
        for (i, &b) in self.rgs.iter().enumerate() {
            blocks[b].push(i);
        }
        let out = Partition { blocks };

        // advance: rightmost position that can still grow
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.rgs[i] <= self.maxes[i] {
                self.rgs[i] += 1;
                let m = self.maxes[i].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.maxes[j] = m;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Labelled, possibly empty parts covering an index set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedSplit {
    pub parts: Vec<Vec<usize>>,
}

/// Filters applied while enumerating ordered splits.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SplitFilter {
    /// Reject the assignment where every part is empty.
    pub some_nonempty: bool,
    /// Require `0 < |last part| < |indices|`.
    pub last_part_proper: bool,
}

/// Iterator over all assignments of `indices` to `m` labelled parts.
#[derive(Debug, Clone)]
pub struct OrderedSplits {
    indices: Vec<usize>,
    m: usize,
    filter: SplitFilter,
    labels: Vec<usize>,
    done: bool,
}

/// Every assignment of each index to one of `m` labelled parts satisfying `filter`.
pub fn ordered_splits(indices: &[usize], m: usize, filter: SplitFilter) -> Result<OrderedSplits> {
    if !(2..=3).contains(&m) {
        return Err(Error::Invalid(alloc::format!("ordered splits need m in {{2,3}}, got {m}")));
    }
    Ok(OrderedSplits {
        indices: indices.to_vec(),
        m,
        filter,
        labels: vec![0; indices.len()],
        done: false,
    })
}

impl OrderedSplits {
    fn accept(&self) -> bool {
        let k = self.indices.len();
        if self.filter.some_nonempty && k == 0 {
            return false;
        }
        if self.filter.last_part_proper {
            let last = self.labels.iter().filter(|&&l| l == self.m - 1).count();
            if last == 0 || last >= k {
                return false;
            }
        }
        true
    }

    fn advance(&mut self) {
        for l in self.labels.iter_mut().rev() {
            *l += 1;
            if *l < self.m {
                return;
            }
            *l = 0;
        }
        self.done = true;
    }
}

impl Iterator for OrderedSplits {
    type Item = OrderedSplit;

    fn next(&mut self) -> Option<OrderedSplit> {
        while !self.done {
            let hit = self.accept();
            let split = hit.then(|| {
                let mut parts = vec![Vec::new(); self.m];
                for (&idx, &l) in self.indices.iter().zip(&self.labels) {
                    parts[l].push(idx);
                }
                OrderedSplit { parts }
            });
            self.advance();
            if let Some(s) = split {
                return Some(s);
            }
        }
        None
    }
}

/// Binomial coefficient as a float.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut c = 1.0;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// Complete exponential Bell polynomial `B_k(t_1, .., t_k)`: the sum over the
/// set partitions of `{1..k}` of the product of `t_{block size}`, `B_0 = 1`.
///
/// Evaluated with `B_{n+1} = sum_i C(n, i) t_{i+1} B_{n-i}`.
pub fn bell_polynomial(t: &[f64]) -> f64 {
    let k = t.len();
    let mut b = Vec::with_capacity(k + 1);
    b.push(1.0);
    for n in 0..k {
        let mut s = 0.0;
        for i in 0..=n {
            s += binomial(n, i) * t[i] * b[n - i];
        }
        b.push(s);
    }
    b[k]
}

fn pair_list(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    pairs
}

/// Connectivity of a graph on `n` vertices given by adjacency bitmasks.
fn adjacency_connected(adj: &[u32], vertices: u32) -> bool {
    if vertices == 0 {
        return true;
    }
    let start = vertices.trailing_zeros() as usize;
    let mut seen = 1u32 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[v] & vertices & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == vertices
}

/// Connected simple graphs on labelled vertices, as edge lists.
#[derive(Debug, Clone)]
pub struct ConnectedGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next_mask: u64,
    end: u64,
}

/// All connected simple graphs on `n` labelled vertices (`1 <= n <= 8`).
pub fn connected_graphs(n: usize) -> Result<ConnectedGraphs> {
    if n == 0 || n > MAX_GRAPH_VERTICES {
        return Err(Error::LimitExceeded {
            what: "connected graph vertices",
            requested: n,
            limit: MAX_GRAPH_VERTICES,
        });
    }
    let pairs = pair_list(n);
    let end = 1u64 << pairs.len();
    Ok(ConnectedGraphs { n, pairs, next_mask: 0, end })
}

impl Iterator for ConnectedGraphs {
    type Item = Vec<(usize, usize)>;

    fn next(&mut self) -> Option<Self::Item> {
        let full = (1u32 << self.n) - 1;
        let mut adj = [0u32; MAX_GRAPH_VERTICES];
        while self.next_mask < self.end {
            let mask = self.next_mask;
            self.next_mask += 1;
            adj[..self.n].iter_mut().for_each(|a| *a = 0);
            let mut edges = 0;
            for (b, &(i, j)) in self.pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                    edges += 1;
                }
            }
            if edges + 1 < self.n {
                continue;
            }
            if adjacency_connected(&adj[..self.n], full) {
                return Some(
                    self.pairs
                        .iter()
                        .enumerate()
                        .filter(|(b, _)| mask >> b & 1 == 1)
                        .map(|(_, &e)| e)
                        .collect(),
                );
            }
        }
        None
    }
}

/// A graph with `n_white` white vertices `0..n_white` followed by `n_black`
/// black vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    pub n_white: usize,
    pub n_black: usize,
    pub edges: Vec<(usize, usize)>,
}

impl ColoredGraph {
    pub fn vertex_count(&self) -> usize {
        self.n_white + self.n_black
    }
}

/// Iterator over the class of connected graphs with 1 or 2 white vertices,
/// no white-white edge, and a connected black subgraph.
pub struct BicoloredGraphs {
    n_white: usize,
    k: usize,
    black: Vec<Vec<(usize, usize)>>,
    black_idx: usize,
    // attachment subsets of the black vertices for each white vertex, counting from 1
    attach: [u32; 2],
    done: bool,
}

/// Members of the white/black graph class used by the Kirkwood ω sums:
/// no white-white edges, connected, and still connected once the white
/// vertices are deleted.
pub fn bicolored_graphs(n_white: usize, k_black: usize) -> Result<BicoloredGraphs> {
    if !(1..=2).contains(&n_white) {
        return Err(Error::Invalid(alloc::format!("n_white must be 1 or 2, got {n_white}")));
    }
    if k_black > MAX_BLACK_VERTICES {
        return Err(Error::LimitExceeded {
            what: "black vertices",
            requested: k_black,
            limit: MAX_BLACK_VERTICES,
        });
    }
    let black = if k_black == 0 { vec![Vec::new()] } else { connected_graphs(k_black)?.collect() };
    Ok(BicoloredGraphs { n_white, k: k_black, black, black_idx: 0, attach: [1, 1], done: false })
}

impl Iterator for BicoloredGraphs {
    type Item = ColoredGraph;

    fn next(&mut self) -> Option<ColoredGraph> {
        if self.done {
            return None;
        }
        let w = self.n_white;
        let k = self.k;
        if k == 0 {
            self.done = true;
            // a lone white vertex is connected; two are not
            return (w == 1).then(|| ColoredGraph { n_white: 1, n_black: 0, edges: Vec::new() });
        }
        let mut edges = Vec::new();
        for (white, &a) in self.attach[..w].iter().enumerate() {
            for b in 0..k {
                if a >> b & 1 == 1 {
                    edges.push((white, w + b));
                }
            }
        }
        edges.extend(self.black[self.black_idx].iter().map(|&(i, j)| (w + i, w + j)));
        let out = ColoredGraph { n_white: w, n_black: k, edges };

        let top = (1u32 << k) - 1;
        let mut carry = true;
        for a in self.attach[..w].iter_mut().rev() {
            if *a < top {
                *a += 1;
                carry = false;
                break;
            }
            *a = 1;
        }
        if carry {
            self.black_idx += 1;
            if self.black_idx == self.black.len() {
                self.done = true;
            }
        }
        Some(out)
    }
}

/// Permutations of `{0..n-1}` made of a single `n`-cycle, as image vectors
/// (`perm[i]` is the image of `i`).
pub struct CyclicPermutations {
    rest: Vec<usize>,
    done: bool,
}

/// All `(n-1)!` single-cycle permutations of `{0..n-1}` (`1 <= n <= 9`).
pub fn cyclic_permutations(n: usize) -> Result<CyclicPermutations> {
    if n == 0 || n > MAX_CYCLE_LENGTH {
        return Err(Error::LimitExceeded {
            what: "cycle length",
            requested: n,
            limit: MAX_CYCLE_LENGTH,
        });
    }
    Ok(CyclicPermutations { rest: (1..n).collect(), done: false })
}

impl Iterator for CyclicPermutations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let n = self.rest.len() + 1;
        let mut perm = vec![0; n];
        let mut cur = 0;
        for &r in &self.rest {
            perm[cur] = r;
            cur = r;
        }
        perm[cur] = 0;
        if !next_permutation(&mut self.rest) {
            self.done = true;
        }
        Some(perm)
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All submasks of `mask`, from `mask` itself down to the empty mask.
pub fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut cur = Some(mask);
    core::iter::from_fn(move || {
        let s = cur?;
        cur = if s == 0 { None } else { Some((s - 1) & mask) };
        Some(s)
    })
}
