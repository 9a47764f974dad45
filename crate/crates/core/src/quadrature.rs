//! Cubature over `Lambda^k` with `Lambda = [-L, L]^d`.
//!
//! Tensor Gauss-Legendre rules estimate their error against the rule with
//! half the nodes; Monte Carlo reports the sample standard error. Both walk
//! their nodes in a fixed order, so results are bit-reproducible.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::point::PointTuple;

pub const DEFAULT_MAX_TOTAL_DIM: usize = 6;
pub const DEFAULT_MC_SAMPLES: usize = 200_000;

/// The integration window `[-L, L]^d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Box {
    dim: usize,
    halfwidth: f64,
}

impl Box {
    pub fn new(dim: usize, halfwidth: f64) -> Result<Self> {
        if dim == 0 || !(halfwidth > 0.0) || !halfwidth.is_finite() {
            return Err(Error::Invalid(alloc::format!(
                "box needs d >= 1 and L > 0, got d = {dim}, L = {halfwidth}"
            )));
        }
        Ok(Box { dim, halfwidth })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfwidth(&self) -> f64 {
        self.halfwidth
    }

    /// `|Lambda|`.
    pub fn volume(&self) -> f64 {
        libm::pow(2.0 * self.halfwidth, self.dim as f64)
    }

    pub fn doubled(&self) -> Box {
        Box { dim: self.dim, halfwidth: 2.0 * self.halfwidth }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadratureKind {
    /// Full product Gauss-Legendre rule.
    Tensor { nodes_per_axis: usize },
    /// Uniform sampling with a mandatory seed.
    MonteCarlo { samples: usize, seed: u64 },
    /// 32 nodes per axis up to 2 total dimensions, 16 at 3, Monte Carlo beyond.
    Auto { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub kind: QuadratureKind,
    /// Ceiling on `d * k` for tensor rules.
    pub max_total_dim: usize,
}

impl QuadratureSpec {
    pub fn tensor(nodes_per_axis: usize) -> Self {
        QuadratureSpec {
            kind: QuadratureKind::Tensor { nodes_per_axis },
            max_total_dim: DEFAULT_MAX_TOTAL_DIM,
        }
    }

    pub fn monte_carlo(samples: usize, seed: u64) -> Self {
        QuadratureSpec {
            kind: QuadratureKind::MonteCarlo { samples, seed },
            max_total_dim: DEFAULT_MAX_TOTAL_DIM,
        }
    }

    pub fn auto(seed: u64) -> Self {
        QuadratureSpec { kind: QuadratureKind::Auto { seed }, max_total_dim: DEFAULT_MAX_TOTAL_DIM }
    }

    pub fn with_max_total_dim(mut self, max: usize) -> Self {
        self.max_total_dim = max;
        self
    }

    fn validate(&self) -> Result<()> {
        let ok = match self.kind {
            QuadratureKind::Tensor { nodes_per_axis } => nodes_per_axis > 0,
            QuadratureKind::MonteCarlo { samples, .. } => samples > 1,
            QuadratureKind::Auto { .. } => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid("quadrature counts must be positive".into()))
        }
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec::auto(0)
    }
}

/// An integral value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = libm::cos(core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if libm::fabs(dx) < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn checked(value: f64, node: &PointTuple) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { node: node.coords().to_vec() })
    }
}

fn tensor_rule<F>(f: &F, k: usize, bx: &Box, n: usize) -> Result<f64>
where
    F: Fn(&PointTuple) -> Result<f64> + ?Sized,
{
    let (x, w) = gauss_legendre(n);
    let l = bx.halfwidth;
    let total = bx.dim * k;
    let mut idx = vec![0usize; total];
    let mut pts = PointTuple::from_flat(bx.dim, vec![0.0; total])?;
    let mut sum = 0.0;
    'outer: loop {
        let mut weight = 1.0;
        for (c, &i) in pts.coords_mut().iter_mut().zip(&idx) {
            *c = l * x[i];
            weight *= w[i];
        }
        sum += weight * checked(f(&pts)?, &pts)?;
        for i in idx.iter_mut().rev() {
            *i += 1;
            if *i < n {
                continue 'outer;
            }
            *i = 0;
        }
        break;
    }
    Ok(sum * libm::pow(l, total as f64))
}

fn monte_carlo<F>(f: &F, k: usize, bx: &Box, samples: usize, seed: u64) -> Result<Estimate>
where
    F: Fn(&PointTuple) -> Result<f64> + ?Sized,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = bx.dim * k;
    let l = bx.halfwidth;
    let mut pts = PointTuple::from_flat(bx.dim, vec![0.0; total])?;
    // Welford accumulation
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for s in 0..samples {
        for c in pts.coords_mut() {
            let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            *c = l * (2.0 * u - 1.0);
        }
        let v = checked(f(&pts)?, &pts)?;
        let delta = v - mean;
        mean += delta / (s + 1) as f64;
        m2 += delta * (v - mean);
    }
    let vol = libm::pow(bx.volume(), k as f64);
    let var = m2 / (samples - 1) as f64;
    Ok(Estimate { value: mean * vol, error: libm::sqrt(var / samples as f64) * vol })
}

/// `integral over Lambda^k of f(y_1, .., y_k)`.
pub fn integrate_k<F>(f: &F, k: usize, bx: &Box, spec: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(&PointTuple) -> Result<f64> + ?Sized,
{
    spec.validate()?;
    if k == 0 {
        let v = f(&PointTuple::empty(bx.dim))?;
        return Ok(Estimate { value: v, error: 0.0 });
    }
    let total = bx.dim * k;
    let kind = match spec.kind {
        QuadratureKind::Auto { seed } => match total {
            1 | 2 => QuadratureKind::Tensor { nodes_per_axis: 32 },
            3 => QuadratureKind::Tensor { nodes_per_axis: 16 },
            _ => QuadratureKind::MonteCarlo { samples: DEFAULT_MC_SAMPLES, seed },
        },
        other => other,
    };
    match kind {
        QuadratureKind::Tensor { nodes_per_axis } => {
            if total > spec.max_total_dim {
                return Err(Error::DimensionCeiling { total, max: spec.max_total_dim });
            }
            let fine = tensor_rule(f, k, bx, nodes_per_axis)?;
            let coarse = tensor_rule(f, k, bx, (nodes_per_axis / 2).max(1))?;
            Ok(Estimate { value: fine, error: libm::fabs(fine - coarse) })
        }
        QuadratureKind::MonteCarlo { samples, seed } => monte_carlo(f, k, bx, samples, seed),
        QuadratureKind::Auto { .. } => unreachable!(),
    }
}

// Gauss-Kronrod 7-15 abscissae and weights on [-1, 1] (nonnegative half).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, libm::fabs((k - g) * h))
}

/// Adaptive Gauss-Kronrod integration of `f` over `[a, b]`, bisecting the
/// worst interval until the summed error is below `tol`.
pub fn adaptive_1d<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64, tol: f64) -> Result<Estimate> {
    if a == b {
        return Ok(Estimate { value: 0.0, error: 0.0 });
    }
    let mut pieces: Vec<(f64, f64, f64, f64)> = Vec::new();
    let (v, e) = kronrod(f, a, b);
    pieces.push((a, b, v, e));
    for _ in 0..2000 {
        let err: f64 = pieces.iter().map(|p| p.3).sum();
        if err <= tol {
            break;
        }
        let (worst, _) = pieces
            .iter()
            .enumerate()
            .fold((0, -1.0), |acc, (i, p)| if p.3 > acc.1 { (i, p.3) } else { acc });
        let (lo, hi, _, _) = pieces.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = kronrod(f, lo, mid);
        let (v2, e2) = kronrod(f, mid, hi);
        pieces.push((lo, mid, v1, e1));
        pieces.push((mid, hi, v2, e2));
    }
    // sum in position order for reproducibility
    pieces.sort_by(|p, q| p.0.total_cmp(&q.0));
    let value: f64 = pieces.iter().map(|p| p.2).sum();
    let error: f64 = pieces.iter().map(|p| p.3).sum();
    if !value.is_finite() {
        return Err(Error::NonFinite { node: vec![a, b] });
    }
    if error > tol {
        return Err(Error::QuadratureFailure { estimate: value, error });
    }
    Ok(Estimate { value, error })
}

/// [`adaptive_1d`] over consecutive sub-intervals between sorted breakpoints.
pub fn adaptive_1d_breaks<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    breaks: &[f64],
    tol: f64,
) -> Result<Estimate> {
    let mut total = Estimate { value: 0.0, error: 0.0 };
    let pieces = breaks.len().saturating_sub(1).max(1);
    for w in breaks.windows(2) {
        let e = adaptive_1d(f, w[0], w[1], tol / pieces as f64)?;
        total.value += e.value;
        total.error += e.error;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(l: f64) -> Box {
        Box::new(1, l).unwrap()
    }

    #[test]
    fn volume_of_unit_integrand() {
        let e = integrate_k(&|_: &PointTuple| Ok(1.0), 2, &line(2.0), &QuadratureSpec::tensor(8)).unwrap();
        assert!((e.value - 16.0).abs() < 1e-12);
    }

    #[test]
    fn odd_integrand_vanishes() {
        let e = integrate_k(&|p: &PointTuple| Ok(p.point(0)[0]), 1, &line(3.0), &QuadratureSpec::tensor(9))
            .unwrap();
        assert!(e.value.abs() < 1e-14);
    }

    #[test]
    fn gaussian_square_is_pi() {
        let f = |p: &PointTuple| Ok(libm::exp(-p.point(0)[0].powi(2) - p.point(1)[0].powi(2)));
        let e = integrate_k(&f, 2, &line(6.0), &QuadratureSpec::tensor(48)).unwrap();
        // erf(6)^2 pi differs from pi by ~1e-16
        let exact = core::f64::consts::PI * libm::erf(6.0).powi(2);
        assert!((e.value - exact).abs() < 1e-10, "{}", e.value - exact);
        assert!((e.value - core::f64::consts::PI).abs() < 1e-10);
    }

    #[test]
    fn tensor_rule_is_exact_on_monomials() {
        for n in [1usize, 2, 3, 5, 8, 16] {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            assert!(x.windows(2).all(|p| p[0] < p[1]));
            for deg in 0..2 * n {
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg + 1) as f64 };
                assert!((q - exact).abs() < 1e-13, "n={n} deg={deg}: {q} vs {exact}");
            }
        }
    }

    #[test]
    fn monte_carlo_within_four_standard_errors() {
        let f = |p: &PointTuple| Ok(libm::exp(-0.5 * (p.point(0)[0].powi(2) + p.point(1)[0].powi(2))) * (1.0 + 0.3 * p.point(0)[0] * p.point(1)[0]));
        let bx = line(3.0);
        let t = integrate_k(&f, 2, &bx, &QuadratureSpec::tensor(32)).unwrap();
        let mc = integrate_k(&f, 2, &bx, &QuadratureSpec::monte_carlo(50_000, 7)).unwrap();
        assert!((mc.value - t.value).abs() < 4.0 * mc.error, "{} vs {} ± {}", mc.value, t.value, mc.error);
        let again = integrate_k(&f, 2, &bx, &QuadratureSpec::monte_carlo(50_000, 7)).unwrap();
        assert_eq!(mc, again);
    }

    #[test]
    fn tensor_symmetric_under_slot_relabeling() {
        let f = |p: &PointTuple| Ok(libm::exp(-p.point(0)[0].powi(2)) * libm::cos(p.point(1)[0]) + p.point(2)[0].powi(2));
        let g = |p: &PointTuple| Ok(libm::exp(-p.point(2)[0].powi(2)) * libm::cos(p.point(0)[0]) + p.point(1)[0].powi(2));
        let bx = line(1.5);
        let spec = QuadratureSpec::tensor(10);
        let (a, b) = (integrate_k(&f, 3, &bx, &spec).unwrap().value, integrate_k(&g, 3, &bx, &spec).unwrap().value);
        assert!((a - b).abs() < 1e-13 * a.abs());
    }

    #[test]
    fn ceiling_and_non_finite() {
        let bx = line(1.0);
        let one = |_: &PointTuple| Ok(1.0);
        assert!(matches!(
            integrate_k(&one, 7, &bx, &QuadratureSpec::tensor(2)),
            Err(Error::DimensionCeiling { total: 7, max: 6 })
        ));
        let bad = |p: &PointTuple| Ok(1.0 / p.point(0)[0]);
        assert!(matches!(integrate_k(&bad, 1, &bx, &QuadratureSpec::tensor(3)), Err(Error::NonFinite { .. })));
        assert!(Box::new(1, 0.0).is_err());
    }

    #[test]
    fn adaptive_handles_kinks() {
        let f = |x: f64| libm::fabs(x - 0.3);
        let e = adaptive_1d(&f, -1.0, 1.0, 1e-12).unwrap();
        let exact = 0.5 * 1.3 * 1.3 + 0.5 * 0.7 * 0.7;
        assert!((e.value - exact).abs() < 1e-11);
        let g = |x: f64| libm::exp(-x * x);
        let e = adaptive_1d_breaks(&g, &[-8.0, 0.0, 8.0], 1e-13).unwrap();
        assert!((e.value - libm::sqrt(core::f64::consts::PI)).abs() < 1e-12);
    }
}
