//! Radial reduction of Fourier integrals over `R^m`.
//!
//! Every kernel in this crate has the form
//!
//! ```text
//! (2π)^{-m} ∫ w(|ξ|) e^{i<u,ξ>} [c₊ e^{-z₀|ξ|} χ₊(ξ) + c₋ e^{z₀|ξ|} χ₋(ξ)] dξ
//! ```
//!
//! with `χ± = ½(1 ± iξ/|ξ|)`. Integrating over spheres first leaves a real
//! para-vector `s + v u/|u|` whose coefficients are one-dimensional integrals
//! against Bessel functions:
//!
//! ```text
//! s = (2π)^{-m} ∫ w r^{m-1} ½(c₊e^{-z₀r} + c₋e^{z₀r}) A(r|u|) dr
//! v = (2π)^{-m} ∫ w r^{m-1} ½(c₋e^{z₀r} - c₊e^{-z₀r}) V(r|u|) dr
//! ```
//!
//! where `A` and `V` are the scalar and vector sphere factors below.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::bessel::{bessel_scaled, sphere_area, BesselOrder};
use crate::clifford::{check_dim, ParaVector};
use crate::error::{Error, Result};
use crate::quadrature::{adaptive, gl20, AdaptiveOptions, GaussLegendre};

pub const DEFAULT_TOL: f64 = 1e-10;

/// Distance to the divergence boundary below which evaluation is refused.
pub const BOUNDARY_GUARD: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RadialProfile {
    /// Indicator of the ball `|ξ| <= radius`.
    Ball { radius: f64 },
    /// `e^{-rate r}`.
    ExpDecay { rate: f64 },
    /// `2r / (e^{2ar} - e^{-2ar})`.
    BergmanWeight { a: f64 },
    /// `2r e^{-2ar}`.
    BergmanHalfspace { a: f64 },
}

impl RadialProfile {
    pub fn validate(&self) -> Result<()> {
        let (name, value) = match *self {
            RadialProfile::Ball { radius } => ("ball radius", radius),
            RadialProfile::ExpDecay { rate } => ("decay rate", rate),
            RadialProfile::BergmanWeight { a } | RadialProfile::BergmanHalfspace { a } => {
                ("strip half-width", a)
            }
        };
        if value > 0.0 && value.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "{name} must be positive and finite, got {value}"
            )))
        }
    }

    pub fn weight(&self, r: f64) -> f64 {
        self.weight_times_exp(r, 0.0)
    }

    /// `w(r) e^{growth r}`, with the exponentials combined so that large
    /// `r` never overflows when the product decays.
    pub fn weight_times_exp(&self, r: f64, growth: f64) -> f64 {
        match *self {
            RadialProfile::Ball { radius } => {
                if r <= radius {
                    (growth * r).exp()
                } else {
                    0.0
                }
            }
            RadialProfile::ExpDecay { rate } => ((growth - rate) * r).exp(),
            RadialProfile::BergmanHalfspace { a } => 2.0 * r * ((growth - 2.0 * a) * r).exp(),
            RadialProfile::BergmanWeight { a } => {
                let x = 2.0 * a * r;
                if x < 1e-8 {
                    (1.0 / (2.0 * a)) * (growth * r).exp()
                } else if x < 20.0 {
                    r / x.sinh() * (growth * r).exp()
                } else {
                    2.0 * r * ((growth - 2.0 * a) * r).exp() / (1.0 - (-2.0 * x).exp())
                }
            }
        }
    }

    /// Exponential decay rate of the weight; `None` for compact support.
    pub fn decay_rate(&self) -> Option<f64> {
        match *self {
            RadialProfile::Ball { .. } => None,
            RadialProfile::ExpDecay { rate } => Some(rate),
            RadialProfile::BergmanWeight { a } | RadialProfile::BergmanHalfspace { a } => {
                Some(2.0 * a)
            }
        }
    }

    /// `(C, p)` with `w(r) <= C r^p e^{-rate r}` for `r >= r_min`.
    fn tail_envelope(&self, r_min: f64) -> (f64, i32) {
        match *self {
            RadialProfile::Ball { .. } | RadialProfile::ExpDecay { .. } => (1.0, 0),
            RadialProfile::BergmanHalfspace { .. } => (2.0, 1),
            RadialProfile::BergmanWeight { a } => (2.0 / (1.0 - (-4.0 * a * r_min).exp()), 1),
        }
    }
}

/// Coefficients of the `χ₊` and `χ₋` channels.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Channels {
    pub plus: f64,
    pub minus: f64,
}

impl Channels {
    pub const BOTH: Channels = Channels {
        plus: 1.0,
        minus: 1.0,
    };
    pub const PLUS: Channels = Channels {
        plus: 1.0,
        minus: 0.0,
    };
    pub const MINUS: Channels = Channels {
        plus: 0.0,
        minus: 1.0,
    };

    /// Largest exponential growth rate among the active channels.
    fn growth(&self, z0: f64) -> f64 {
        let mut g = f64::NEG_INFINITY;
        if self.plus != 0.0 {
            g = g.max(-z0);
        }
        if self.minus != 0.0 {
            g = g.max(z0);
        }
        g
    }
}

/// Value `s + v u/|u|` of a radial integral.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RadialPair {
    pub s: f64,
    pub v: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialEstimate {
    pub pair: RadialPair,
    pub abs_error: f64,
    /// Upper limit actually used for the radial variable.
    pub cutoff: f64,
}

/// `∫_{S^{m-1}} e^{it<u',ξ'>} dσ(ξ') = (2π)^{m/2} t^{-(m-2)/2} J_{(m-2)/2}(t)`.
pub fn sphere_scalar_factor(m: usize, t: f64) -> Result<f64> {
    check_dim(m)?;
    let k = BesselOrder::from_twice(m as i32 - 2)?;
    Ok((2.0 * PI).powf(m as f64 / 2.0) * bessel_scaled(k, t)?)
}

/// `V` with `∫_{S^{m-1}} e^{it<u',ξ'>} ξ' dσ(ξ') = i V(t) u'`; equals
/// `-A'(t)` and `(2π)^{m/2} t^{-(m-2)/2} J_{m/2}(t)`.
pub fn sphere_vector_factor(m: usize, t: f64) -> Result<f64> {
    check_dim(m)?;
    let k = BesselOrder::from_twice(m as i32)?;
    Ok((2.0 * PI).powf(m as f64 / 2.0) * t * bessel_scaled(k, t)?)
}

/// Evaluates the radial reduction for a para-vector `z` with scalar part
/// `z0` and `|z̲| = u_norm`.
pub fn radial_integral(
    m: usize,
    profile: &RadialProfile,
    channels: Channels,
    z0: f64,
    u_norm: f64,
    tol: f64,
) -> Result<RadialEstimate> {
    check_dim(m)?;
    profile.validate()?;
    if !(u_norm >= 0.0 && u_norm.is_finite() && z0.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "bad evaluation point: z0 = {z0}, |u| = {u_norm}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if channels.plus == 0.0 && channels.minus == 0.0 {
        return Ok(RadialEstimate {
            pair: RadialPair::default(),
            abs_error: 0.0,
            cutoff: 0.0,
        });
    }
    let growth = channels.growth(z0);
    let (cutoff, tail) = match profile.decay_rate() {
        None => match *profile {
            RadialProfile::Ball { radius } => (radius, 0.0),
            _ => unreachable!(),
        },
        Some(rate) => {
            let margin = rate - growth;
            if margin <= BOUNDARY_GUARD {
                return Err(Error::StripViolation(format!(
                    "channel growth e^({growth} r) is not dominated by the weight decay \
                     e^(-{rate} r); the integral diverges"
                )));
            }
            tail_cutoff(m, profile, channels, margin, tol / 10.0)
        }
    };

    let scalar_order = BesselOrder::from_twice(m as i32 - 2)?;
    let vector_order = BesselOrder::from_twice(m as i32)?;
    let norm = (2.0 * PI).powf(-(m as f64) / 2.0);
    let power = m as i32 - 1;
    let integrand = |r: f64| -> [f64; 2] {
        let plus = 0.5 * channels.plus * profile.weight_times_exp(r, -z0);
        let minus = 0.5 * channels.minus * profile.weight_times_exp(r, z0);
        let t = r * u_norm;
        let rp = r.powi(power);
        // (2π)^{-m} (2π)^{m/2} = (2π)^{-m/2}
        let a = bessel_scaled(scalar_order, t).unwrap_or(f64::NAN);
        let s = norm * rp * (plus + minus) * a;
        let v = if u_norm == 0.0 {
            0.0
        } else {
            let b = bessel_scaled(vector_order, t).unwrap_or(f64::NAN);
            norm * rp * (minus - plus) * t * b
        };
        [s, v]
    };
    let opts = AdaptiveOptions {
        tol: 0.9 * tol,
        max_panel: PI / u_norm.max(1.0),
        ..Default::default()
    };
    let est = adaptive(0.0, cutoff, opts, integrand)?;
    if !est.value.iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidParameter(
            "radial integrand produced a non-finite value".into(),
        ));
    }
    Ok(RadialEstimate {
        pair: RadialPair {
            s: est.value[0],
            v: if u_norm == 0.0 { 0.0 } else { est.value[1] },
        },
        abs_error: est.abs_error + tail,
        cutoff,
    })
}

/// Smallest `R` (on a geometric ladder) with the analytic tail bound below
/// `target`; returns `(R, bound)`.
fn tail_cutoff(
    m: usize,
    profile: &RadialProfile,
    channels: Channels,
    margin: f64,
    target: f64,
) -> (f64, f64) {
    let amp = (2.0 * PI).powi(-(m as i32))
        * sphere_area(m)
        * 0.5
        * (channels.plus.abs() + channels.minus.abs());
    let mut r = (1.0 / margin).max(1.0);
    loop {
        let (c, p) = profile.tail_envelope(r);
        let q = (m as i32 - 1 + p) as f64;
        if margin - q / r > 0.5 * margin {
            // ∫_R^∞ r^q e^{-μ r} dr <= R^q e^{-μR} / (μ - q/R)
            let bound = amp * c * (q * r.ln() - margin * r).exp() / (margin - q / r);
            if bound < target {
                return (r, bound);
            }
        }
        r *= 1.25;
    }
}

/// Brute-force spherical tensor-grid evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleEstimate {
    pub pair: RadialPair,
    /// Difference between two grid resolutions.
    pub abs_error: f64,
    /// Largest component of the result that should vanish by symmetry
    /// (imaginary parts and the vector part orthogonal to `u`).
    pub symmetry_defect: f64,
    pub nodes: usize,
}

pub const ORACLE_NODE_CAP_BASE: usize = 512;

/// Evaluates the same integral as [`radial_integral`] on an explicit tensor
/// grid over `ξ = r ξ'`: composite Gauss-Legendre in `r`, trapezoid in the
/// azimuth and Gauss-Legendre in `cos θ` (for `m = 3`). Phases
/// `e^{i<u,ξ>}` and the projections `χ±` are applied pointwise.
pub fn tensor_oracle(
    profile: &RadialProfile,
    channels: Channels,
    z: &ParaVector,
    tail_tol: f64,
) -> Result<OracleEstimate> {
    let m = z.dim();
    if m > 3 {
        return Err(Error::UnsupportedDimension(m));
    }
    profile.validate()?;
    let u = z.vector();
    let u_norm = z.vector_norm();
    let cutoff = match profile.decay_rate() {
        None => match *profile {
            RadialProfile::Ball { radius } => radius,
            _ => unreachable!(),
        },
        Some(rate) => {
            let margin = rate - channels.growth(z.x0);
            if margin <= BOUNDARY_GUARD {
                return Err(Error::StripViolation(
                    "oracle integral diverges for this point".into(),
                ));
            }
            tail_cutoff(m, profile, channels, margin, tail_tol).0
        }
    };
    let coarse = oracle_grid(profile, channels, z.x0, u, u_norm, cutoff, 0)?;
    let fine = oracle_grid(profile, channels, z.x0, u, u_norm, cutoff, 1)?;
    let proj = |acc: &[[f64; 2]; 4]| -> (RadialPair, f64) {
        let s = acc[0][0];
        let mut defect = acc[0][1].abs();
        let mut v = 0.0;
        if u_norm > 0.0 {
            for j in 0..m {
                v += acc[j + 1][0] * u[j] / u_norm;
            }
        }
        for j in 0..m {
            let along = if u_norm > 0.0 { v * u[j] / u_norm } else { 0.0 };
            defect = defect.max((acc[j + 1][0] - along).abs());
            defect = defect.max(acc[j + 1][1].abs());
        }
        (RadialPair { s, v }, defect)
    };
    let (coarse_pair, _) = proj(&coarse.0);
    let (pair, defect) = proj(&fine.0);
    let abs_error = (pair.s - coarse_pair.s)
        .abs()
        .max((pair.v - coarse_pair.v).abs());
    Ok(OracleEstimate {
        pair,
        abs_error,
        symmetry_defect: defect,
        nodes: fine.1,
    })
}

/// Returns `[scalar, e_1, .., e_m]` as (re, im) pairs and the node count.
fn oracle_grid(
    profile: &RadialProfile,
    channels: Channels,
    z0: f64,
    u: &[f64],
    u_norm: f64,
    cutoff: f64,
    level: usize,
) -> Result<([[f64; 2]; 4], usize)> {
    let m = u.len();
    let base_len = 1.0f64.min(PI / u_norm.max(1e-300));
    let panel_len = base_len / (1.0 + 0.5 * level as f64);
    let panels = (cutoff / panel_len).ceil().max(1.0) as usize;
    let rule = gl20();
    let step = cutoff / panels as f64;
    let radial: Vec<(f64, f64)> = (0..panels)
        .flat_map(|p| {
            let lo = p as f64 * step;
            rule.mapped(lo, lo + step).collect::<Vec<_>>()
        })
        .collect();
    let extra = 8 * level;
    let angular_count = |r: f64| -> (usize, usize) {
        let t = r * u_norm;
        match m {
            1 => (1, 2),
            2 => (1, (1.3 * t).ceil() as usize + 24 + extra),
            _ => (
                (0.75 * t).ceil() as usize + 20 + extra,
                (1.3 * t).ceil() as usize + 24 + extra,
            ),
        }
    };
    let nodes: usize = radial
        .iter()
        .map(|(r, _)| {
            let (a, b) = angular_count(*r);
            a * b
        })
        .sum();
    let cap = ORACLE_NODE_CAP_BASE.pow(m as u32);
    if nodes > cap {
        return Err(Error::ResourceCap(format!(
            "tensor oracle needs {nodes} nodes, cap is 512^{m} = {cap}"
        )));
    }
    let shells: Vec<[[f64; 2]; 4]> = radial
        .par_iter()
        .map(|&(r, wr)| {
            let mut acc = [[0.0; 2]; 4];
            let plus = 0.5 * channels.plus * profile.weight_times_exp(r, -z0);
            let minus = 0.5 * channels.minus * profile.weight_times_exp(r, z0);
            let sym = plus + minus;
            let anti = plus - minus;
            let (n_polar, n_az) = angular_count(r);
            let polar = if m == 3 {
                GaussLegendre::new(n_polar)
            } else {
                GaussLegendre::new(1)
            };
            let mut add = |dir: &[f64], weight: f64| {
                let phase: f64 = r * dir.iter().zip(u).map(|(d, uj)| d * uj).sum::<f64>();
                let (sn, cs) = phase.sin_cos();
                let w = wr * weight * r.powi(m as i32 - 1);
                // e^{iφ} (sym + anti i ξ')
                acc[0][0] += w * sym * cs;
                acc[0][1] += w * sym * sn;
                for j in 0..m {
                    // i e^{iφ} = -sin φ + i cos φ
                    acc[j + 1][0] += w * anti * dir[j] * (-sn);
                    acc[j + 1][1] += w * anti * dir[j] * cs;
                }
            };
            match m {
                1 => {
                    add(&[1.0], 1.0);
                    add(&[-1.0], 1.0);
                }
                2 => {
                    let h = 2.0 * PI / n_az as f64;
                    for k in 0..n_az {
                        let phi = k as f64 * h;
                        add(&[phi.cos(), phi.sin()], h);
                    }
                }
                _ => {
                    let h = 2.0 * PI / n_az as f64;
                    for (eta, weta) in polar.mapped(-1.0, 1.0) {
                        let rho = (1.0 - eta * eta).sqrt();
                        for k in 0..n_az {
                            let phi = k as f64 * h;
                            add(&[rho * phi.cos(), rho * phi.sin(), eta], h * weta);
                        }
                    }
                }
            }
            acc
        })
        .collect();
    let mut total = [[0.0; 2]; 4];
    for shell in &shells {
        for (t, s) in total.iter_mut().zip(shell.iter()) {
            t[0] += s[0];
            t[1] += s[1];
        }
    }
    let norm = (2.0 * PI).powi(-(m as i32));
    for t in total.iter_mut() {
        t[0] *= norm;
        t[1] *= norm;
    }
    Ok((total, nodes))
}
