//! Uniform-grid Clifford-valued functions and their spectra.
//!
//! Fourier convention: `F(ξ) = ∫ f(x) e^{-i<x,ξ>} dx`, inverse carries
//! `(2π)^{-m}`. On a grid `x_n = origin + n Δx` this becomes a Riemann sum
//! evaluated with FFTs, frequencies `ξ_k = 2π k / (N Δx)` in FFT order.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::clifford::{check_dim, Multivector, ParaVector};
use crate::error::{Error, Result};
use crate::kernels::{
    cauchy_kernel, chi_from_direction, monogenic_exp, monogenic_exp_half, KernelKind, Sign,
    StripGeometry,
};
use crate::radial::{RadialPair, RadialProfile};

/// Direction used for `χ±` in the zero-frequency bin, where `ξ/|ξ|` is
/// undefined: `χ±(0) = ½(1 ± i e_1)`.
pub const ZERO_BIN_DIRECTION: usize = 1;

/// Largest exponent accepted by the slice multipliers before `exp` overflows.
pub const MAX_EXPONENT: f64 = 709.0;

#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    pub m: usize,
    pub shape: Vec<usize>,
    pub spacing: Vec<f64>,
    pub origin: Vec<f64>,
    pub samples: Vec<Multivector>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub m: usize,
    pub shape: Vec<usize>,
    /// Spatial spacing of the grid the spectrum belongs to.
    pub spacing: Vec<f64>,
    pub origin: Vec<f64>,
    pub coeffs: Vec<Multivector>,
}

fn check_layout(
    m: usize,
    shape: &[usize],
    spacing: &[f64],
    origin: &[f64],
    len: usize,
) -> Result<()> {
    check_dim(m)?;
    if shape.len() != m || spacing.len() != m || origin.len() != m {
        return Err(Error::GridMismatch(format!(
            "grid metadata must have {m} entries per field"
        )));
    }
    if shape.iter().any(|&n| n == 0) {
        return Err(Error::GridMismatch("grid axes must be non-empty".into()));
    }
    if spacing.iter().any(|&d| !(d > 0.0 && d.is_finite())) {
        return Err(Error::GridMismatch("grid spacing must be positive".into()));
    }
    if origin.iter().any(|o| !o.is_finite()) {
        return Err(Error::GridMismatch("grid origin must be finite".into()));
    }
    let count = shape
        .iter()
        .try_fold(1usize, |acc, &n| acc.checked_mul(n))
        .ok_or_else(|| Error::GridMismatch("grid too large".into()))?;
    if count != len {
        return Err(Error::GridMismatch(format!(
            "shape {shape:?} needs {count} samples, found {len}"
        )));
    }
    Ok(())
}

/// Multi-index of a row-major flat index (last axis fastest).
fn unravel(shape: &[usize], mut flat: usize, out: &mut [usize]) {
    for j in (0..shape.len()).rev() {
        out[j] = flat % shape[j];
        flat /= shape[j];
    }
}

fn signed_index(k: usize, n: usize) -> f64 {
    if k < n.div_ceil(2) {
        k as f64
    } else {
        k as f64 - n as f64
    }
}

impl GridFunction {
    pub fn new(
        m: usize,
        shape: Vec<usize>,
        spacing: Vec<f64>,
        origin: Vec<f64>,
        samples: Vec<Multivector>,
    ) -> Result<Self> {
        check_layout(m, &shape, &spacing, &origin, samples.len())?;
        if samples.iter().any(|s| s.dim() != m) {
            return Err(Error::GridMismatch(format!(
                "every sample must live in the algebra with m = {m}"
            )));
        }
        Ok(Self {
            m,
            shape,
            spacing,
            origin,
            samples,
        })
    }

    /// Samples `f` at every grid point.
    pub fn from_fn<F>(shape: Vec<usize>, spacing: Vec<f64>, origin: Vec<f64>, f: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> Multivector + Sync,
    {
        let m = shape.len();
        let count: usize = shape.iter().product();
        check_layout(m, &shape, &spacing, &origin, count)?;
        let samples = (0..count)
            .into_par_iter()
            .map(|flat| {
                let mut idx = vec![0; m];
                unravel(&shape, flat, &mut idx);
                let x: Vec<f64> = (0..m)
                    .map(|j| origin[j] + idx[j] as f64 * spacing[j])
                    .collect();
                f(&x)
            })
            .collect();
        Self::new(m, shape, spacing, origin, samples)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn point(&self, flat: usize) -> Vec<f64> {
        let mut idx = vec![0; self.m];
        unravel(&self.shape, flat, &mut idx);
        (0..self.m)
            .map(|j| self.origin[j] + idx[j] as f64 * self.spacing[j])
            .collect()
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing.iter().product()
    }

    /// `Σ |f_n|² Δx^m`.
    pub fn norm_sqr(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_sqr()).sum::<f64>() * self.cell_volume()
    }

    pub fn same_grid(&self, other: &GridFunction) -> bool {
        self.m == other.m
            && self.shape == other.shape
            && self.spacing == other.spacing
            && self.origin == other.origin
    }

    fn check_same_grid(&self, other: &GridFunction) -> Result<()> {
        if self.same_grid(other) {
            Ok(())
        } else {
            Err(Error::GridMismatch(
                "functions are sampled on different grids".into(),
            ))
        }
    }

    /// Largest coefficient-norm difference between two functions on one grid.
    pub fn max_difference(&self, other: &GridFunction) -> Result<f64> {
        self.check_same_grid(other)?;
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (*a - *b).norm())
            .fold(0.0, f64::max))
    }

    pub fn max_norm(&self) -> f64 {
        self.samples.iter().map(|s| s.norm()).fold(0.0, f64::max)
    }

    pub fn zip_with(
        &self,
        other: &GridFunction,
        op: impl Fn(Multivector, Multivector) -> Multivector,
    ) -> Result<GridFunction> {
        self.check_same_grid(other)?;
        Ok(GridFunction {
            samples: self
                .samples
                .iter()
                .zip(&other.samples)
                .map(|(a, b)| op(*a, *b))
                .collect(),
            ..self.clone()
        })
    }
}

impl Spectrum {
    pub fn frequency(&self, flat: usize) -> Vec<f64> {
        let mut idx = vec![0; self.m];
        unravel(&self.shape, flat, &mut idx);
        (0..self.m)
            .map(|j| {
                2.0 * PI * signed_index(idx[j], self.shape[j])
                    / (self.shape[j] as f64 * self.spacing[j])
            })
            .collect()
    }

    /// `Δξ^m = Π 2π / (N_j Δx_j)`.
    pub fn cell_volume(&self) -> f64 {
        (0..self.m)
            .map(|j| 2.0 * PI / (self.shape[j] as f64 * self.spacing[j]))
            .product()
    }

    pub fn max_frequency(&self) -> f64 {
        (0..self.coeffs.len())
            .map(|k| norm(&self.frequency(k)))
            .fold(0.0, f64::max)
    }

    /// `(2π)^{-m} Σ |F_k|² Δξ^m`, which equals the spatial `L²` norm squared.
    pub fn norm_sqr(&self) -> f64 {
        self.weighted_norm_sqr(|_| 1.0)
    }

    fn weighted_norm_sqr(&self, weight: impl Fn(&[f64]) -> f64) -> f64 {
        let scale = (2.0 * PI).powi(-(self.m as i32)) * self.cell_volume();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let w = weight(&self.frequency(k));
                w * w * c.norm_sqr()
            })
            .sum::<f64>()
            * scale
    }

    pub fn map_with_frequency(
        &self,
        op: impl Fn(&[f64], Multivector) -> Result<Multivector> + Sync,
    ) -> Result<Spectrum> {
        let coeffs = (0..self.coeffs.len())
            .into_par_iter()
            .map(|k| op(&self.frequency(k), self.coeffs[k]))
            .collect::<Result<Vec<_>>>()?;
        Ok(Spectrum {
            coeffs,
            ..self.clone()
        })
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

/// In-place multi-dimensional FFT of one component array.
fn fft_nd(data: &mut [Complex64], shape: &[usize], inverse: bool, planner: &mut FftPlanner<f64>) {
    let m = shape.len();
    for axis in 0..m {
        let n = shape[axis];
        if n == 1 {
            continue;
        }
        let fft = if inverse {
            planner.plan_fft_inverse(n)
        } else {
            planner.plan_fft_forward(n)
        };
        let stride: usize = shape[axis + 1..].iter().product();
        let block = stride * n;
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        for start in (0..data.len()).step_by(block) {
            for offset in 0..stride {
                let base = start + offset;
                for (i, slot) in line.iter_mut().enumerate() {
                    *slot = data[base + i * stride];
                }
                fft.process(&mut line);
                for (i, v) in line.iter().enumerate() {
                    data[base + i * stride] = *v;
                }
            }
        }
    }
}

fn transform_components(
    m: usize,
    shape: &[usize],
    input: &[Multivector],
    inverse: bool,
) -> Vec<Multivector> {
    let blades = 1usize << m;
    let comps: Vec<Vec<Complex64>> = (0..blades)
        .into_par_iter()
        .map(|b| {
            let mut data: Vec<Complex64> = input.iter().map(|s| s.coeff(b)).collect();
            if data.iter().any(|c| *c != Complex64::new(0.0, 0.0)) {
                let mut planner = FftPlanner::new();
                fft_nd(&mut data, shape, inverse, &mut planner);
            }
            data
        })
        .collect();
    (0..input.len())
        .map(|k| {
            let mut out = Multivector::zero_unchecked(m);
            for (b, comp) in comps.iter().enumerate() {
                out.set_coeff(b, comp[k]);
            }
            out
        })
        .collect()
}

/// Forward transform `F_k = Σ_n f_n e^{-i<x_n, ξ_k>} Δx^m`.
pub fn dft(f: &GridFunction) -> Spectrum {
    let raw = transform_components(f.m, &f.shape, &f.samples, false);
    let mut spec = Spectrum {
        m: f.m,
        shape: f.shape.clone(),
        spacing: f.spacing.clone(),
        origin: f.origin.clone(),
        coeffs: raw,
    };
    let vol = f.cell_volume();
    let origin = f.origin.clone();
    let phases: Vec<Complex64> = (0..spec.coeffs.len())
        .map(|k| {
            let xi = spec.frequency(k);
            let ph: f64 = origin.iter().zip(&xi).map(|(o, x)| o * x).sum();
            Complex64::from_polar(vol, -ph)
        })
        .collect();
    for (c, p) in spec.coeffs.iter_mut().zip(phases) {
        *c = c.scale(p);
    }
    spec
}

/// Inverse transform `f_n = (2π)^{-m} Σ_k F_k e^{i<x_n, ξ_k>} Δξ^m`.
pub fn idft(g: &Spectrum) -> GridFunction {
    let count: f64 = g.shape.iter().map(|&n| n as f64).product();
    let vol: f64 = g.spacing.iter().product();
    let scale = 1.0 / (count * vol);
    let shifted: Vec<Multivector> = (0..g.coeffs.len())
        .map(|k| {
            let xi = g.frequency(k);
            let ph: f64 = g.origin.iter().zip(&xi).map(|(o, x)| o * x).sum();
            g.coeffs[k].scale(Complex64::from_polar(scale, ph))
        })
        .collect();
    GridFunction {
        m: g.m,
        shape: g.shape.clone(),
        spacing: g.spacing.clone(),
        origin: g.origin.clone(),
        samples: transform_components(g.m, &g.shape, &shifted, true),
    }
}

/// `∫ conj(f) g dx` on the grid.
pub fn inner_product(f: &GridFunction, g: &GridFunction) -> Result<Multivector> {
    f.check_same_grid(g)?;
    let mut acc = Multivector::zero(f.m)?;
    for (a, b) in f.samples.iter().zip(&g.samples) {
        acc = acc + a.conjugate() * *b;
    }
    Ok(acc * f.cell_volume())
}

/// `(2π)^{-m} ∫ conj(F) G dξ` on the frequency grid.
pub fn spectral_inner_product(f: &Spectrum, g: &Spectrum) -> Result<Multivector> {
    if f.shape != g.shape || f.spacing != g.spacing || f.m != g.m {
        return Err(Error::GridMismatch("spectra on different grids".into()));
    }
    let mut acc = Multivector::zero(f.m)?;
    for (a, b) in f.coeffs.iter().zip(&g.coeffs) {
        acc = acc + a.conjugate() * *b;
    }
    Ok(acc * ((2.0 * PI).powi(-(f.m as i32)) * f.cell_volume()))
}

/// Relative Plancherel residual `|∫conj(f)g - (2π)^{-m}∫conj(Ff)Fg| / (‖f‖‖g‖)`.
pub fn plancherel_check(f: &GridFunction, g: &GridFunction) -> Result<f64> {
    let lhs = inner_product(f, g)?;
    let rhs = spectral_inner_product(&dft(f), &dft(g))?;
    let scale = (f.norm_sqr() * g.norm_sqr()).sqrt();
    let diff = (lhs - rhs).norm();
    Ok(if scale == 0.0 { diff } else { diff / scale })
}

/// `χ±` with the zero-bin convention.
pub fn chi_or_zero_bin(sign: Sign, xi: &[f64]) -> Multivector {
    let r = norm(xi);
    if r == 0.0 {
        let mut dir = vec![0.0; xi.len()];
        dir[ZERO_BIN_DIRECTION - 1] = 1.0;
        chi_from_direction(sign, &dir)
    } else {
        let dir: Vec<f64> = xi.iter().map(|c| c / r).collect();
        chi_from_direction(sign, &dir)
    }
}

/// Slice multiplier `e^{-x₀|ξ|}χ₊(ξ) + e^{x₀|ξ|}χ₋(ξ)`.
pub fn slice_multiplier(x0: f64, xi: &[f64]) -> Multivector {
    let r = norm(xi);
    chi_or_zero_bin(Sign::Plus, xi) * (-x0 * r).exp()
        + chi_or_zero_bin(Sign::Minus, xi) * (x0 * r).exp()
}

fn check_exponent(x0: f64, spec: &Spectrum) -> Result<()> {
    let max_xi = spec.max_frequency();
    if x0.abs() * max_xi > MAX_EXPONENT {
        return Err(Error::MultiplierOverflow {
            x0: x0.abs(),
            max_xi,
        });
    }
    Ok(())
}

/// Spectrum of the slice `f(x₀ + ·)` from the spectrum of `f(0 + ·)`.
pub fn propagate_spectrum(spec: &Spectrum, x0: f64, geometry: &StripGeometry) -> Result<Spectrum> {
    if geometry.m != spec.m {
        return Err(Error::DimensionMismatch {
            expected: geometry.m,
            found: spec.m,
        });
    }
    if !(x0.abs() < geometry.a) {
        return Err(Error::StripViolation(format!(
            "|x0| = {} must be < a = {}",
            x0.abs(),
            geometry.a
        )));
    }
    check_exponent(x0, spec)?;
    spec.map_with_frequency(|xi, c| Ok(slice_multiplier(x0, xi) * c))
}

/// `f(x₀ + ·)` for boundary data `f(0 + ·)` of a function on the strip.
pub fn propagate_slice(
    f0: &GridFunction,
    x0: f64,
    geometry: &StripGeometry,
) -> Result<GridFunction> {
    let spec = propagate_spectrum(&dft(f0), x0, geometry)?;
    Ok(idft(&spec))
}

/// Splits `f0` into its `χ₊` and `χ₋` spectral parts.
pub fn hardy_split(f0: &GridFunction) -> (GridFunction, GridFunction) {
    let spec = dft(f0);
    let part = |sign: Sign| {
        let s = spec
            .map_with_frequency(|xi, c| Ok(chi_or_zero_bin(sign, xi) * c))
            .expect("projection cannot fail");
        idft(&s)
    };
    (part(Sign::Plus), part(Sign::Minus))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ConditionKind {
    BallSupport { radius: f64 },
    StripWeight { a: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralCondition {
    pub kind: ConditionKind,
    pub pass: bool,
    /// Relative spectral mass outside the ball, or `‖e^{a|ξ|} F‖₂`.
    pub margin: f64,
}

/// Threshold on the relative mass outside the ball.
pub const SUPPORT_THRESHOLD: f64 = 1e-10;

pub fn ball_support(spec: &Spectrum, radius: f64) -> SpectralCondition {
    let total: f64 = spec.coeffs.iter().map(|c| c.norm_sqr()).sum();
    let outside: f64 = spec
        .coeffs
        .iter()
        .enumerate()
        .filter(|(k, _)| norm(&spec.frequency(*k)) > radius)
        .map(|(_, c)| c.norm_sqr())
        .sum();
    let margin = if total == 0.0 { 0.0 } else { outside / total };
    SpectralCondition {
        kind: ConditionKind::BallSupport { radius },
        pass: margin <= SUPPORT_THRESHOLD,
        margin,
    }
}

pub fn strip_weight(spec: &Spectrum, a: f64) -> SpectralCondition {
    let weighted = spec.weighted_norm_sqr(|xi| (a * norm(xi)).exp()).sqrt();
    SpectralCondition {
        kind: ConditionKind::StripWeight { a },
        pass: weighted.is_finite(),
        margin: if weighted.is_finite() {
            weighted
        } else {
            f64::INFINITY
        },
    }
}

/// Monogenic extension `(2π)^{-m} Σ_{|ξ_k| <= R} e(x, ξ_k) F_k Δξ^m` of
/// band-limited grid data.
pub fn pw_extend(spec: &Spectrum, radius: f64, x: &ParaVector) -> Result<Multivector> {
    let cond = ball_support(spec, radius);
    if !cond.pass {
        return Err(Error::SupportViolation {
            radius,
            outside_mass: cond.margin,
        });
    }
    pw_extend_unchecked(spec, radius, x)
}

fn pw_extend_unchecked(spec: &Spectrum, radius: f64, x: &ParaVector) -> Result<Multivector> {
    if x.dim() != spec.m {
        return Err(Error::DimensionMismatch {
            expected: spec.m,
            found: x.dim(),
        });
    }
    let scale = (2.0 * PI).powi(-(spec.m as i32)) * spec.cell_volume();
    let mut acc = Multivector::zero(spec.m)?;
    for (k, c) in spec.coeffs.iter().enumerate() {
        let xi = spec.frequency(k);
        let r = norm(&xi);
        if r > radius {
            continue;
        }
        let e = if r == 0.0 {
            Multivector::one(spec.m)?
        } else {
            monogenic_exp(x, &xi)?
        };
        acc = acc + e * *c;
    }
    Ok(acc * scale)
}

/// Extension of many points sharing one support check.
pub fn pw_extend_many(
    spec: &Spectrum,
    radius: f64,
    points: &[ParaVector],
) -> Result<Vec<Multivector>> {
    let cond = ball_support(spec, radius);
    if !cond.pass {
        return Err(Error::SupportViolation {
            radius,
            outside_mass: cond.margin,
        });
    }
    points
        .par_iter()
        .map(|p| pw_extend_unchecked(spec, radius, p))
        .collect()
}

/// Norm of the central-difference Dirac operator `Σ_k e_k ∂_k f` at `x`
/// (`e_0 = 1`).
pub fn dirac_residual<F>(field: F, x: &ParaVector, h: f64) -> Result<f64>
where
    F: Fn(&ParaVector) -> Result<Multivector>,
{
    if !(h > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "step must be positive, got {h}"
        )));
    }
    let m = x.dim();
    let mut acc = Multivector::zero(m)?;
    for k in 0..=m {
        let diff = (field(&x.shifted(k, h))? - field(&x.shifted(k, -h))?) * (0.5 / h);
        acc = acc
            + if k == 0 {
                diff
            } else {
                Multivector::basis_vector(m, k)? * diff
            };
    }
    Ok(acc.norm())
}

/// A plane-wave atom `e(x, ξ) c`.
#[derive(Clone, Debug, PartialEq)]
pub struct Atom {
    pub xi: Vec<f64>,
    pub coeff: Multivector,
}

/// Finite sum of atoms; a left-monogenic function on `R^{m+1}` whose values
/// are known exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomSum {
    pub m: usize,
    pub atoms: Vec<Atom>,
}

impl AtomSum {
    pub fn new(m: usize, atoms: Vec<Atom>) -> Result<Self> {
        check_dim(m)?;
        for atom in &atoms {
            if atom.xi.len() != m || atom.coeff.dim() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: atom.xi.len(),
                });
            }
            if norm(&atom.xi) == 0.0 {
                return Err(Error::InadmissibleAtom("zero frequency".into()));
            }
        }
        Ok(Self { m, atoms })
    }

    pub fn eval(&self, x: &ParaVector) -> Result<Multivector> {
        let mut acc = Multivector::zero(self.m)?;
        for a in &self.atoms {
            acc = acc + monogenic_exp(x, &a.xi)? * a.coeff;
        }
        Ok(acc)
    }

    /// `f±(x) = Σ e±(x, ξ) c`.
    pub fn eval_half(&self, sign: Sign, x: &ParaVector) -> Result<Multivector> {
        let mut acc = Multivector::zero(self.m)?;
        for a in &self.atoms {
            acc = acc + monogenic_exp_half(sign, x, &a.xi)? * a.coeff;
        }
        Ok(acc)
    }

    fn max_frequency(&self) -> f64 {
        self.atoms.iter().map(|a| norm(&a.xi)).fold(0.0, f64::max)
    }
}

/// Which reproducing identity `reproduce_check` discretizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reproducing {
    PaleyWiener,
    Szego,
    Bergman,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReproduceReport {
    pub residual: f64,
    pub computed: Multivector,
    pub expected: Multivector,
    pub nodes: usize,
}

/// Discretization parameters for one resolution level; each level doubles
/// the window length (boundary pairings) or the panel count (volume pairing).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairingResolution {
    pub window: f64,
    pub step: f64,
    pub window_power: i32,
    pub panels: usize,
}

impl PairingResolution {
    pub fn for_level(kind: Reproducing, level: u32) -> Self {
        let factor = 2f64.powi(level as i32);
        match kind {
            Reproducing::PaleyWiener => Self {
                window: 16.0 * factor,
                step: 0.5,
                window_power: 4,
                panels: 0,
            },
            Reproducing::Szego => Self {
                window: 16.0 * factor,
                step: 0.25,
                window_power: 4,
                panels: 0,
            },
            Reproducing::Bergman => Self {
                window: 0.0,
                step: 0.0,
                window_power: 0,
                panels: 32 << level,
            },
        }
    }

    /// Radius beyond which the window is below `1e-13`.
    fn extent(&self) -> f64 {
        self.window * (30.0f64).powf(1.0 / self.window_power as f64)
    }

    fn window_at(&self, dist: f64) -> f64 {
        (-(dist / self.window).powi(self.window_power)).exp()
    }
}

/// Pairs `f` with the kernel section at `x` and returns `|⟨f, K(·,x̄)⟩ - f(x)|`.
///
/// * `PaleyWiener`: `∫ conj(P(y, x̄)) f(y) dy` over `y₀ = 0`, windowed.
/// * `Szego`: `∫ conj(S₊(-a+y, x̄)) f₊(-a+y) dy + ∫ conj(S₋(a+y, x̄)) f₋(a+y) dy`,
///   windowed, with the Hardy components of `f`.
/// * `Bergman`: `∫_{-a}^{a} ∫ conj(B(w₀+y, x̄)) f(w₀+y) dy dw₀` with the inner
///   integral in Plancherel form and composite Simpson in `w₀`.
pub fn reproduce_check(
    kind: Reproducing,
    geometry: &StripGeometry,
    f: &AtomSum,
    x: &ParaVector,
    resolution: PairingResolution,
    tol: f64,
) -> Result<ReproduceReport> {
    if f.m != geometry.m || x.dim() != geometry.m {
        return Err(Error::DimensionMismatch {
            expected: geometry.m,
            found: f.m,
        });
    }
    if f.atoms.is_empty() {
        let zero = Multivector::zero(geometry.m)?;
        return Ok(ReproduceReport {
            residual: 0.0,
            computed: zero,
            expected: zero,
            nodes: 0,
        });
    }
    let expected = f.eval(x)?;
    let (computed, nodes) = match kind {
        Reproducing::PaleyWiener => {
            if f.max_frequency() >= PI {
                return Err(Error::InadmissibleAtom(format!(
                    "frequency {} lies outside the open ball of radius π",
                    f.max_frequency()
                )));
            }
            pair_paley_wiener(geometry, f, x, resolution, tol)?
        }
        Reproducing::Szego => {
            check_in_strip(geometry, x)?;
            pair_szego(geometry, f, x, resolution)?
        }
        Reproducing::Bergman => {
            check_in_strip(geometry, x)?;
            if 2.0 * geometry.a * f.max_frequency() > MAX_EXPONENT {
                return Err(Error::InadmissibleAtom(
                    "frequency too large for the strip weight".into(),
                ));
            }
            pair_bergman(geometry, f, x, resolution)?
        }
    };
    Ok(ReproduceReport {
        residual: (computed - expected).norm(),
        computed,
        expected,
        nodes,
    })
}

fn check_in_strip(geometry: &StripGeometry, x: &ParaVector) -> Result<()> {
    if x.x0.abs() < geometry.a {
        Ok(())
    } else {
        Err(Error::StripViolation(format!(
            "|x0| = {} must be < a = {}",
            x.x0.abs(),
            geometry.a
        )))
    }
}

/// Integer offsets `n` with `|n| h <= extent`, as flat lists.
fn lattice(m: usize, extent: f64, step: f64) -> Vec<Vec<i64>> {
    let n = (extent / step).ceil() as i64;
    let mut out = Vec::new();
    let mut idx = vec![-n; m];
    loop {
        let r2: i64 = idx.iter().map(|v| v * v).sum();
        if (r2 as f64).sqrt() * step <= extent {
            out.push(idx.clone());
        }
        let mut j = 0;
        loop {
            idx[j] += 1;
            if idx[j] <= n {
                break;
            }
            idx[j] = -n;
            j += 1;
            if j == m {
                return out;
            }
        }
    }
}

fn pair_paley_wiener(
    geometry: &StripGeometry,
    f: &AtomSum,
    x: &ParaVector,
    res: PairingResolution,
    tol: f64,
) -> Result<(Multivector, usize)> {
    let m = geometry.m;
    let h = res.step;
    let points = lattice(m, res.extent(), h);
    // P(y, x̄) on y₀ = 0 depends on y̲ - x̲ = h n only through |n|
    let mut keys: Vec<i64> = points
        .iter()
        .map(|n| n.iter().map(|v| v * v).sum())
        .collect();
    keys.sort_unstable();
    keys.dedup();
    let (profile, channels) = KernelKind::PaleyWiener.radial_spec(geometry);
    let pairs: Vec<RadialPair> = keys
        .par_iter()
        .map(|&k| {
            let u = (k as f64).sqrt() * h;
            crate::radial::radial_integral(m, &profile, channels, x.x0, u, tol).map(|e| e.pair)
        })
        .collect::<Result<_>>()?;
    let vol = h.powi(m as i32);
    let partial: Vec<Multivector> = points
        .par_chunks(4096)
        .map(|chunk| -> Result<Multivector> {
            let mut acc = Multivector::zero(m)?;
            for n in chunk {
                let key: i64 = n.iter().map(|v| v * v).sum();
                let pair = pairs[keys.binary_search(&key).expect("key present")];
                let u: Vec<f64> = n.iter().map(|v| *v as f64 * h).collect();
                let kernel = crate::kernels::pair_to_multivector(pair, &u);
                let y: Vec<f64> = x.vector().iter().zip(&u).map(|(a, b)| a + b).collect();
                let fy = f.eval(&ParaVector::new(0.0, &y)?)?;
                let w = res.window_at(norm(&u)) * vol;
                acc = acc + kernel.conjugate() * fy * w;
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    Ok((sum_in_order(m, partial)?, points.len()))
}

fn pair_szego(
    geometry: &StripGeometry,
    f: &AtomSum,
    x: &ParaVector,
    res: PairingResolution,
) -> Result<(Multivector, usize)> {
    let m = geometry.m;
    let h = res.step;
    let a = geometry.a;
    let points = lattice(m, res.extent(), h);
    let vol = h.powi(m as i32);
    let xbar = x.conjugate();
    let partial: Vec<Multivector> = points
        .par_chunks(4096)
        .map(|chunk| -> Result<Multivector> {
            let mut acc = Multivector::zero(m)?;
            for n in chunk {
                let u: Vec<f64> = n.iter().map(|v| *v as f64 * h).collect();
                let y: Vec<f64> = x.vector().iter().zip(&u).map(|(p, q)| p + q).collect();
                let w = res.window_at(norm(&u)) * vol;
                // S₊(w, x̄) = E(w + x̄ + 2a) on x₀ = -a, S₋(w, x̄) = -E(w + x̄ - 2a) on x₀ = a
                let lower = ParaVector::new(-a, &y)?;
                let upper = ParaVector::new(a, &y)?;
                let s_plus = cauchy_kernel(&lower.add(&xbar)?.shifted_x0(2.0 * a))?;
                let s_minus = -cauchy_kernel(&upper.add(&xbar)?.shifted_x0(-2.0 * a))?;
                let f_plus = f.eval_half(Sign::Plus, &lower)?;
                let f_minus = f.eval_half(Sign::Minus, &upper)?;
                acc = acc + (s_plus.conjugate() * f_plus + s_minus.conjugate() * f_minus) * w;
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    Ok((sum_in_order(m, partial)?, 2 * points.len()))
}

fn pair_bergman(
    geometry: &StripGeometry,
    f: &AtomSum,
    x: &ParaVector,
    res: PairingResolution,
) -> Result<(Multivector, usize)> {
    let m = geometry.m;
    let a = geometry.a;
    let panels = res.panels.max(2) + res.panels % 2;
    let step = 2.0 * a / panels as f64;
    let weight = RadialProfile::BergmanWeight { a };
    let mut acc = Multivector::zero(m)?;
    for i in 0..=panels {
        let w0 = -a + i as f64 * step;
        let simpson = if i == 0 || i == panels {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        // slice pairing (2π)^{-m} ∫ conj(B̂) f̂ dξ, evaluated atom by atom:
        // B̂(ξ) = ρ(|ξ|) e^{-i<x̲,ξ>} M(w₀ + x₀, ξ), f̂ = (2π)^m δ_ξ₀ M(w₀, ξ₀) c
        let mut slice = Multivector::zero(m)?;
        for atom in &f.atoms {
            let r = norm(&atom.xi);
            let phase: f64 = x.vector().iter().zip(&atom.xi).map(|(p, q)| p * q).sum();
            let kernel_hat = slice_multiplier(w0 + x.x0, &atom.xi)
                * Complex64::from_polar(weight.weight(r), -phase);
            slice = slice + kernel_hat.conjugate() * slice_multiplier(w0, &atom.xi) * atom.coeff;
        }
        acc = acc + slice * (simpson * step / 3.0);
    }
    Ok((acc, panels + 1))
}

fn sum_in_order(m: usize, parts: Vec<Multivector>) -> Result<Multivector> {
    let mut acc = Multivector::zero(m)?;
    for p in parts {
        acc = acc + p;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom(m: usize, a: f64) -> StripGeometry {
        StripGeometry::new(m, a).unwrap()
    }

    fn gaussian_grid(n: usize, h: f64) -> GridFunction {
        let o = -(n as f64) * h / 2.0;
        GridFunction::from_fn(vec![n, n], vec![h, h], vec![o, o], |x| {
            let r2 = x[0] * x[0] + x[1] * x[1];
            Multivector::scalar(2, (-r2 / 2.0).exp()).unwrap()
        })
        .unwrap()
    }

    /// Deterministic pseudo-random Clifford-valued grid.
    fn noise_grid(m: usize, n: usize, seed: u64) -> GridFunction {
        let mut state = seed;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let count = n.pow(m as u32);
        let samples = (0..count)
            .map(|_| {
                let c: Vec<Complex64> = (0..1 << m)
                    .map(|_| Complex64::new(next(), next()))
                    .collect();
                Multivector::from_coeffs(m, &c).unwrap()
            })
            .collect();
        GridFunction::new(m, vec![n; m], vec![0.3; m], vec![-1.0; m], samples).unwrap()
    }

    #[test]
    fn impulse_has_flat_spectrum() {
        let mut f = GridFunction::from_fn(vec![8, 8], vec![0.5, 0.5], vec![0.0, 0.0], |_| {
            Multivector::zero(2).unwrap()
        })
        .unwrap();
        f.samples[0] = Multivector::one(2).unwrap();
        let spec = dft(&f);
        for c in &spec.coeffs {
            assert!((c.coeff(0) - Complex64::new(0.25, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn gaussian_transform() {
        let f = gaussian_grid(64, 0.25);
        let spec = dft(&f);
        for (k, c) in spec.coeffs.iter().enumerate() {
            let xi = spec.frequency(k);
            let r2 = xi[0] * xi[0] + xi[1] * xi[1];
            let want = 2.0 * PI * (-r2 / 2.0).exp();
            assert!((c.coeff(0) - Complex64::new(want, 0.0)).norm() < 1e-6);
        }
    }

    #[test]
    fn round_trip() {
        for m in 1..=3 {
            let f = noise_grid(m, 6, 11 + m as u64);
            let back = idft(&dft(&f));
            assert!(back.max_difference(&f).unwrap() < 1e-12 * f.max_norm());
        }
    }

    #[test]
    fn plancherel() {
        let g = gaussian_grid(32, 0.3);
        assert!(plancherel_check(&g, &g).unwrap() < 1e-10);
        let f = noise_grid(2, 16, 5);
        let h = noise_grid(2, 16, 9);
        assert!(plancherel_check(&f, &h).unwrap() < 1e-10);
        let zero = GridFunction::new(
            2,
            f.shape.clone(),
            f.spacing.clone(),
            f.origin.clone(),
            vec![Multivector::zero(2).unwrap(); f.len()],
        )
        .unwrap();
        assert_eq!(plancherel_check(&f, &zero).unwrap(), 0.0);
        assert!(plancherel_check(&f, &gaussian_grid(16, 0.3)).is_err());
    }

    #[test]
    fn hardy_split_properties() {
        let f = noise_grid(2, 16, 21);
        let (p, q) = hardy_split(&f);
        let sum = p.zip_with(&q, |a, b| a + b).unwrap();
        assert!(sum.max_difference(&f).unwrap() < 1e-12);
        let (pp, pq) = hardy_split(&p);
        assert!(pp.max_difference(&p).unwrap() < 1e-12);
        assert!(pq.max_norm() < 1e-12);
        let lhs = f.norm_sqr();
        assert!((lhs - p.norm_sqr() - q.norm_sqr()).abs() < 1e-10 * lhs);
    }

    #[test]
    fn plus_aligned_input_is_fixed() {
        let xi0 = [2.0 * PI / (16.0 * 0.5) * 3.0, 0.0];
        let chi = crate::kernels::chi(Sign::Plus, &xi0).unwrap();
        let f = GridFunction::from_fn(vec![16, 16], vec![0.5, 0.5], vec![0.0, 0.0], |x| {
            chi * Complex64::from_polar(1.0, x[0] * xi0[0])
        })
        .unwrap();
        let (p, q) = hardy_split(&f);
        assert!(p.max_difference(&f).unwrap() < 1e-12);
        assert!(q.max_norm() < 1e-12);
        // the χ₊ atom decays like e^{-x₀|ξ₀|}
        let g = geom(2, 1.0);
        let slice = propagate_slice(&f, 0.4, &g).unwrap();
        let scaled = GridFunction {
            samples: f
                .samples
                .iter()
                .map(|s| *s * (-0.4 * xi0[0]).exp())
                .collect(),
            ..f.clone()
        };
        assert!(slice.max_difference(&scaled).unwrap() < 1e-12);
    }

    #[test]
    fn propagation_semigroup_and_identity() {
        let g = geom(2, 1.0);
        let f = noise_grid(2, 16, 3);
        let id = propagate_slice(&f, 0.0, &g).unwrap();
        assert!(id.max_difference(&f).unwrap() < 1e-12);
        let spec = dft(&f);
        let once = propagate_spectrum(&spec, 0.2, &g).unwrap();
        let twice =
            propagate_spectrum(&propagate_spectrum(&spec, 0.1, &g).unwrap(), 0.1, &g).unwrap();
        let scale = once.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        for (a, b) in once.coeffs.iter().zip(&twice.coeffs) {
            assert!((*a - *b).norm() <= 1e-10 * scale);
        }
        assert!(matches!(
            propagate_slice(&f, 1.0, &g),
            Err(Error::StripViolation(_))
        ));
    }

    #[test]
    fn overflow_guard_names_max_frequency() {
        let g = geom(1, 100.0);
        let f = GridFunction::from_fn(vec![64], vec![0.01], vec![0.0], |_| {
            Multivector::one(1).unwrap()
        })
        .unwrap();
        match propagate_slice(&f, 50.0, &g) {
            Err(Error::MultiplierOverflow { max_xi, .. }) => {
                assert!((max_xi - PI / 0.01).abs() < 1e-9)
            }
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn extension_extends() {
        let f = GridFunction::from_fn(vec![16, 16], vec![0.5, 0.5], vec![-4.0, -4.0], |x| {
            let r2 = x[0] * x[0] + x[1] * x[1];
            Multivector::scalar(2, (-r2).exp()).unwrap()
        })
        .unwrap();
        let spec = dft(&f);
        let big = 10.0;
        for flat in [0, 17, 100, 255] {
            let p = f.point(flat);
            let x = ParaVector::new(0.0, &p).unwrap();
            let v = pw_extend(&spec, big, &x).unwrap();
            assert!((v - f.samples[flat]).norm() < 1e-12);
        }
        assert!(matches!(
            pw_extend(&spec, 1.0, &ParaVector::origin(2).unwrap()),
            Err(Error::SupportViolation { .. })
        ));
    }

    #[test]
    fn dirac_residual_controls() {
        let x = ParaVector::new(0.3, &[0.2, -0.4]).unwrap();
        let c = Multivector::one(2).unwrap();
        assert_eq!(dirac_residual(|_| Ok(c), &x, 1e-3).unwrap(), 0.0);
        let xi = [0.6, 0.8];
        let wave = |p: &ParaVector| {
            let ph: f64 = p.vector().iter().zip(&xi).map(|(a, b)| a * b).sum();
            Multivector::scalar(2, Complex64::from_polar(1.0, ph))
        };
        let r = dirac_residual(wave, &x, 1e-3).unwrap();
        assert!((r - 1.0).abs() < 1e-5);
        let r1 = dirac_residual(cauchy_kernel, &x.shifted_x0(1.0), 1e-2).unwrap();
        let r2 = dirac_residual(cauchy_kernel, &x.shifted_x0(1.0), 5e-3).unwrap();
        assert!(r1 / r2 > 3.5 && r1 / r2 < 4.5, "{r1:e} {r2:e}");
    }

    #[test]
    fn zero_function_reproduces_trivially() {
        let g = geom(2, 1.0);
        let f = AtomSum::new(2, vec![]).unwrap();
        let x = ParaVector::new(0.1, &[0.0, 0.0]).unwrap();
        for kind in [
            Reproducing::PaleyWiener,
            Reproducing::Szego,
            Reproducing::Bergman,
        ] {
            let r = reproduce_check(
                kind,
                &g,
                &f,
                &x,
                PairingResolution::for_level(kind, 0),
                1e-10,
            )
            .unwrap();
            assert_eq!(r.residual, 0.0);
        }
    }

    #[test]
    fn inadmissible_atoms_rejected() {
        let g = geom(2, 1.0);
        let atom = Atom {
            xi: vec![3.5, 0.0],
            coeff: Multivector::one(2).unwrap(),
        };
        let f = AtomSum::new(2, vec![atom]).unwrap();
        let x = ParaVector::origin(2).unwrap();
        let res = PairingResolution::for_level(Reproducing::PaleyWiener, 0);
        assert!(matches!(
            reproduce_check(Reproducing::PaleyWiener, &g, &f, &x, res, 1e-10),
            Err(Error::InadmissibleAtom(_))
        ));
        let zero = Atom {
            xi: vec![0.0, 0.0],
            coeff: Multivector::one(2).unwrap(),
        };
        assert!(AtomSum::new(2, vec![zero]).is_err());
    }

    #[test]
    fn bergman_pairing_single_atom_converges() {
        let g = geom(2, 1.0);
        let atom = Atom {
            xi: vec![0.6, -0.3],
            coeff: Multivector::basis_vector(2, 1).unwrap(),
        };
        let f = AtomSum::new(2, vec![atom]).unwrap();
        let x = ParaVector::new(0.2, &[0.5, 0.1]).unwrap();
        let coarse = reproduce_check(
            Reproducing::Bergman,
            &g,
            &f,
            &x,
            PairingResolution::for_level(Reproducing::Bergman, 0),
            1e-10,
        )
        .unwrap();
        let fine = reproduce_check(
            Reproducing::Bergman,
            &g,
            &f,
            &x,
            PairingResolution::for_level(Reproducing::Bergman, 1),
            1e-10,
        )
        .unwrap();
        assert!(coarse.residual < 1e-5);
        assert!(fine.residual * 4.0 <= coarse.residual);
    }
}
