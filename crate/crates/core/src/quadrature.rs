//! Gauss-Legendre rules and an adaptive panel integrator for vector-valued
//! integrands.

use std::f64::consts::PI;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// `n`-point rule on `[-1, 1]`, nodes from Newton iteration on `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
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
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(self.weights.iter())
            .map(move |(x, w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }

    fn integrate_vec<const N: usize, F: Fn(f64) -> [f64; N]>(
        &self,
        a: f64,
        b: f64,
        f: &F,
    ) -> [f64; N] {
        let mut acc = [0.0; N];
        for (x, w) in self.mapped(a, b) {
            let v = f(x);
            for (s, vi) in acc.iter_mut().zip(v.iter()) {
                *s += w * vi;
            }
        }
        acc
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Shared 20-point rule used by the adaptive integrator.
pub fn gl20() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(20))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdaptiveOptions {
    /// Target absolute error for the whole interval.
    pub tol: f64,
    /// Upper bound on the length of the initial panels.
    pub max_panel: f64,
    pub max_depth: u32,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_panel: f64::INFINITY,
            max_depth: 30,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate<const N: usize> {
    pub value: [f64; N],
    pub abs_error: f64,
    pub panels: usize,
}

/// Adaptive Gauss-Legendre integration with interval halving. Initial panels
/// are integrated in parallel and summed in panel order, so the result does
/// not depend on scheduling.
pub fn adaptive<const N: usize, F>(
    a: f64,
    b: f64,
    opts: AdaptiveOptions,
    f: F,
) -> Result<Estimate<N>>
where
    F: Fn(f64) -> [f64; N] + Sync,
{
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "quadrature tolerance must be positive, got {}",
            opts.tol
        )));
    }
    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(Error::InvalidParameter(format!(
            "bad integration interval [{a}, {b}]"
        )));
    }
    let total = b - a;
    if total == 0.0 {
        return Ok(Estimate {
            value: [0.0; N],
            abs_error: 0.0,
            panels: 0,
        });
    }
    let count = if opts.max_panel.is_finite() && opts.max_panel > 0.0 {
        ((total / opts.max_panel).ceil() as usize).max(1)
    } else {
        1
    };
    if count > 1_000_000 {
        return Err(Error::ResourceCap(format!(
            "{count} initial quadrature panels requested"
        )));
    }
    let width = total / count as f64;
    let rule = gl20();
    let parts: Vec<Estimate<N>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let lo = a + i as f64 * width;
            let hi = if i + 1 == count { b } else { lo + width };
            let coarse = rule.integrate_vec(lo, hi, &f);
            refine(rule, &f, lo, hi, coarse, opts.tol / total, opts.max_depth)
        })
        .collect();
    let mut out = Estimate {
        value: [0.0; N],
        abs_error: 0.0,
        panels: 0,
    };
    for p in parts {
        for (s, v) in out.value.iter_mut().zip(p.value.iter()) {
            *s += v;
        }
        out.abs_error += p.abs_error;
        out.panels += p.panels;
    }
    Ok(out)
}

fn refine<const N: usize, F: Fn(f64) -> [f64; N]>(
    rule: &GaussLegendre,
    f: &F,
    lo: f64,
    hi: f64,
    coarse: [f64; N],
    tol_density: f64,
    depth: u32,
) -> Estimate<N> {
    let mid = 0.5 * (lo + hi);
    let left = rule.integrate_vec(lo, mid, f);
    let right = rule.integrate_vec(mid, hi, f);
    let mut fine = [0.0; N];
    let mut diff: f64 = 0.0;
    let mut mag: f64 = 0.0;
    for i in 0..N {
        fine[i] = left[i] + right[i];
        diff = diff.max((fine[i] - coarse[i]).abs());
        mag = mag.max(fine[i].abs());
    }
    let allowed = (tol_density * (hi - lo)).max(64.0 * f64::EPSILON * mag);
    if diff <= allowed || depth == 0 {
        return Estimate {
            value: fine,
            abs_error: diff,
            panels: 2,
        };
    }
    let l = refine(rule, f, lo, mid, left, tol_density, depth - 1);
    let r = refine(rule, f, mid, hi, right, tol_density, depth - 1);
    let mut value = [0.0; N];
    for i in 0..N {
        value[i] = l.value[i] + r.value[i];
    }
    Estimate {
        value,
        abs_error: l.abs_error + r.abs_error,
        panels: l.panels + r.panels,
    }
}
