//! Bound sequences for the two-anchor cluster functions, their exponential
//! generating functions and the resulting radius of convergence in `t D_rho`.

use alloc::vec::Vec;

use crate::combinatorics::{bell_polynomial, binomial, factorial};
use crate::error::{Error, Result};

const LN2: f64 = core::f64::consts::LN_2;

/// Constants entering the bounds; `c0 = d(r) M A^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundParams {
    pub m: f64,
    pub a: f64,
    pub d_rho: f64,
    pub d_of_r: f64,
}

impl BoundParams {
    /// `M = 0` is accepted as the degenerate case; the rest must be positive.
    pub fn new(m: f64, a: f64, d_rho: f64, d_of_r: f64) -> Result<Self> {
        let finite = [m, a, d_rho, d_of_r].iter().all(|v| v.is_finite());
        if !finite || !(m >= 0.0) || !(a > 0.0) || !(d_rho > 0.0) || !(d_of_r > 0.0) {
            return Err(Error::Invalid(alloc::format!(
                "bound constants must be positive: M={m}, A={a}, D_rho={d_rho}, d(r)={d_of_r}"
            )));
        }
        Ok(BoundParams { m, a, d_rho, d_of_r })
    }

    pub fn c0(&self) -> f64 {
        self.d_of_r * self.m * self.a * self.a
    }

    fn ma(&self) -> f64 {
        self.m * self.a
    }
}

/// `a_0 = 1`, `a_k = k! M A D_rho^k`.
pub fn a_seq(p: &BoundParams, k_max: usize) -> Vec<f64> {
    (0..=k_max)
        .map(|k| if k == 0 { 1.0 } else { factorial(k) * p.ma() * libm::pow(p.d_rho, k as f64) })
        .collect()
}

/// `c_k = d(r) (k+1)! M A^2 D_rho^k`.
pub fn c_seq(p: &BoundParams, k_max: usize) -> Vec<f64> {
    (0..=k_max)
        .map(|k| p.d_of_r * factorial(k + 1) * p.m * p.a * p.a * libm::pow(p.d_rho, k as f64))
        .collect()
}

/// `w_k / k!` for `k = 0..=k_max` (slot 0 holds 0), from the recursion divided
/// through by `k!` so that no factorial is ever formed.
///
/// With `e_n = [t^n] exp(sum_j (w_j / j!) t^j)`, `e_k = B_k(w_1, .., w_k) / k!`
/// and the convolutions of `a_l / l!` replace the binomial sums.
pub fn w_scaled(p: &BoundParams, k_max: usize) -> Vec<f64> {
    let ma = p.ma();
    let c0 = p.c0();
    let a_hat = |k: usize| if k == 0 { 1.0 } else { ma * libm::pow(p.d_rho, k as f64) };
    let c_hat = |k: usize| p.d_of_r * (k + 1) as f64 * p.m * p.a * p.a * libm::pow(p.d_rho, k as f64);
    // aa[n] = sum_l a_hat(l) a_hat(n - l)
    let aa: Vec<f64> = (0..=k_max).map(|n| (0..=n).map(|l| a_hat(l) * a_hat(n - l)).sum()).collect();
    let mut w = alloc::vec![0.0; k_max + 1];
    let mut e = alloc::vec![0.0; k_max + 1];
    e[0] = 1.0;
    for k in 1..=k_max {
        // B_k(w_1, .., w_{k-1}, 0) / k!
        let partial: f64 = (1..k).map(|j| j as f64 * w[j] * e[k - j]).sum::<f64>() / k as f64;
        let cross: f64 = (1..k).map(|l| e[l] * aa[k - l]).sum();
        w[k] = c_hat(k) + partial + c0 * aa[k] + cross;
        e[k] = partial + w[k];
    }
    w
}

/// `w_k` for `k = 0..=k_max`, slot 0 holding 0.
pub fn w_seq(p: &BoundParams, k_max: usize) -> Vec<f64> {
    w_scaled(p, k_max).iter().enumerate().map(|(k, w)| if k == 0 { 0.0 } else { w * factorial(k) }).collect()
}

/// The recursion term by term with Bell polynomials and binomial sums.
/// Factorials limit this to moderate `k`.
pub fn w_seq_direct(p: &BoundParams, k_max: usize) -> Vec<f64> {
    let a = a_seq(p, k_max);
    let c = c_seq(p, k_max);
    let c0 = c[0];
    let aa = |n: usize| (0..=n).map(|l| binomial(n, l) * a[l] * a[n - l]).sum::<f64>();
    let mut w = alloc::vec![0.0; k_max + 1];
    if k_max >= 1 {
        w[1] = c[1] + 2.0 * c0 * a[1];
    }
    for k in 2..=k_max {
        let mut args: Vec<f64> = w[1..k].to_vec();
        args.push(0.0);
        let mut v = c[k] + bell_polynomial(&args) + c0 * aa(k);
        for l in 1..k {
            v += binomial(k, l) * bell_polynomial(&w[1..=l]) * aa(k - l);
        }
        w[k] = v;
    }
    w
}

/// `(E_a(t), E_c(t))` in closed form, for `t D_rho < 1`. For `M = 0` both
/// series are polynomials (`1` and `0`) and have no pole.
pub fn egf_values(p: &BoundParams, t: f64) -> Result<(f64, f64)> {
    if p.m == 0.0 {
        return Ok((1.0, 0.0));
    }
    let x = t * p.d_rho;
    if !(x < 1.0) {
        return Err(Error::Pole { t, d_rho: p.d_rho });
    }
    let ea = 1.0 + p.ma() * x / (1.0 - x);
    let ec = p.c0() / ((1.0 - x) * (1.0 - x));
    Ok((ea, ec))
}

/// `l(t) = 2 log E_a - (2 c0 - E_c - (c0 - 1) E_a^2) / 2`.
pub fn ell(p: &BoundParams, t: f64) -> Result<f64> {
    let (ea, ec) = egf_values(p, t)?;
    let c0 = p.c0();
    Ok(2.0 * libm::log(ea) - 0.5 * (2.0 * c0 - ec - (c0 - 1.0) * ea * ea))
}

/// `l` with `log E_a` replaced by its upper bound `E_a - 1`; the radius is
/// where this majorant reaches `log 2 - 1`.
pub fn ell_majorant(p: &BoundParams, t: f64) -> Result<f64> {
    let (ea, ec) = egf_values(p, t)?;
    let c0 = p.c0();
    Ok(2.0 * (ea - 1.0) - 0.5 * (2.0 * c0 - ec - (c0 - 1.0) * ea * ea))
}

/// `s(t) = -W_0(-exp(l(t)) / 2)`.
pub fn s_of_t(p: &BoundParams, t: f64) -> Result<f64> {
    Ok(-lambert_w0(-0.5 * libm::exp(ell(p, t)?))?)
}

const INV_E: f64 = 0.367_879_441_171_442_33;

/// Principal branch of the Lambert W function on `[-1/e, inf)`, by Halley
/// iteration.
pub fn lambert_w0(x: f64) -> Result<f64> {
    if x.is_nan() || x < -INV_E - 1e-15 {
        return Err(Error::Domain { value: x, lower: -INV_E });
    }
    if x <= -INV_E {
        return Ok(-1.0);
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    let mut w = if libm::fabs(x) < 0.3 {
        x
    } else if x < -0.25 {
        // branch-point expansion in p = sqrt(2 (e x + 1))
        let p = libm::sqrt(2.0 * (core::f64::consts::E * x + 1.0));
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else if x > core::f64::consts::E {
        let l = libm::log(x);
        l - libm::log(l)
    } else {
        libm::log1p(x)
    };
    for _ in 0..40 {
        let ew = libm::exp(w);
        let f = w * ew - x;
        let wp1 = w + 1.0;
        if wp1 == 0.0 {
            break;
        }
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        w -= step;
        if libm::fabs(step) <= 4.0 * f64::EPSILON * (1.0 + libm::fabs(w)) {
            break;
        }
    }
    Ok(w.max(-1.0))
}

/// The sufficient condition `D_rho |t| <= radius`, with its abbreviations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Radius {
    pub chi: f64,
    pub theta: f64,
    pub radius: f64,
}

/// `chi = 2(MA(c0 + 1) + c0 - 1 + 2 log 2)`,
/// `theta = (c0 - 1)(MA)^2 - 2(c0 + 1)MA + 1 - c0 - 2 log 2` and the smaller
/// absolute root of `theta x^2 + chi x + 1 - 2 log 2`.
pub fn radius_bound(p: &BoundParams) -> Result<Radius> {
    let ma = p.ma();
    let c0 = p.c0();
    let chi = 2.0 * (ma * (c0 + 1.0) + c0 - 1.0 + 2.0 * LN2);
    let theta = (c0 - 1.0) * ma * ma - 2.0 * (c0 + 1.0) * ma + 1.0 - c0 - 2.0 * LN2;
    if theta == 0.0 {
        return Err(Error::Invalid("theta vanishes; the quadratic degenerates".into()));
    }
    let q = 1.0 - 2.0 * LN2;
    let mut disc = chi * chi - 4.0 * theta * q;
    if disc < 0.0 {
        // rounding at a double root
        if disc > -1e-12 * chi * chi.max(1.0) {
            disc = 0.0;
        } else {
            return Err(Error::NegativeDiscriminant { chi, theta, discriminant: disc });
        }
    }
    let sq = libm::sqrt(disc);
    let r1 = libm::fabs((-chi + sq) / (2.0 * theta));
    let r2 = libm::fabs((-chi - sq) / (2.0 * theta));
    Ok(Radius { chi, theta, radius: r1.min(r2) })
}

/// Ratio-test estimate `(w_{K-1} / (K-1)!) / (w_K / K!)` of the radius of
/// `sum_k t^k w_k / k!`, from the last two terms.
pub fn egf_ratio_radius(w_scaled: &[f64]) -> Option<f64> {
    let k = w_scaled.len().checked_sub(1)?;
    if k < 2 || !(w_scaled[k] > 0.0) {
        return None;
    }
    Some(w_scaled[k - 1] / w_scaled[k])
}

/// One point of the `l` / `s` grid on `[0, radius / D_rho]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambertPoint {
    pub t: f64,
    pub ell: f64,
    pub s: f64,
}

/// Everything the bound machinery produces for one parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub params: BoundParams,
    pub a: Vec<f64>,
    pub c: Vec<f64>,
    /// `w_0` is undefined and reported as 0.
    pub w: Vec<f64>,
    pub chi: f64,
    pub theta: f64,
    pub radius: f64,
    /// `radius / D_rho`.
    pub t_star: f64,
    pub ratio_radius: Option<f64>,
    pub lambert_check: Vec<LambertPoint>,
}

pub const DEFAULT_K_MAX: usize = 14;
pub const DEFAULT_GRID: usize = 21;

/// Sequences to `k_max`, the radius and an evenly spaced `l` / `s` grid.
pub fn bound_report(p: &BoundParams, k_max: usize, grid: usize) -> Result<BoundReport> {
    let r = radius_bound(p)?;
    let t_star = r.radius / p.d_rho;
    let mut lambert_check = Vec::with_capacity(grid);
    for i in 0..grid {
        let t = if grid > 1 { t_star * i as f64 / (grid - 1) as f64 } else { 0.0 };
        lambert_check.push(LambertPoint { t, ell: ell(p, t)?, s: s_of_t(p, t)? });
    }
    Ok(BoundReport {
        params: *p,
        a: a_seq(p, k_max),
        c: c_seq(p, k_max),
        w: w_seq(p, k_max),
        chi: r.chi,
        theta: r.theta,
        radius: r.radius,
        t_star,
        ratio_radius: egf_ratio_radius(&w_scaled(p, k_max.max(2))),
        lambert_check,
    })
}
