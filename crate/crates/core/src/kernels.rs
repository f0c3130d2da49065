//! Monogenic exponential, Cauchy and Poisson kernels, the sinc functions and
//! the reproducing kernels of the Paley-Wiener, strip Hardy and strip
//! Bergman spaces.
//!
//! Two-point kernels take `(w, x)` and depend only on `z = w + x̄`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::bessel::GeometricConstants;
use crate::clifford::{check_dim, Multivector, ParaVector};
use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use crate::radial::{
    radial_integral, tensor_oracle, Channels, RadialPair, RadialProfile, BOUNDARY_GUARD,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    fn channels(self) -> Channels {
        match self {
            Sign::Plus => Channels::PLUS,
            Sign::Minus => Channels::MINUS,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StripGeometry {
    pub m: usize,
    pub a: f64,
}

impl StripGeometry {
    pub fn new(m: usize, a: f64) -> Result<Self> {
        check_dim(m)?;
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "strip half-width must be positive, got {a}"
            )));
        }
        Ok(Self { m, a })
    }

    fn check_point(&self, p: &ParaVector) -> Result<()> {
        if p.dim() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: p.dim(),
            });
        }
        Ok(())
    }

    /// `z = w + x̄`.
    pub fn combine(&self, w: &ParaVector, x: &ParaVector) -> Result<ParaVector> {
        self.check_point(w)?;
        self.check_point(x)?;
        w.add(&x.conjugate())
    }

    fn check_strip(&self, z0: f64) -> Result<()> {
        let limit = 2.0 * self.a;
        if !(z0.abs() < limit - BOUNDARY_GUARD) {
            return Err(Error::StripViolation(format!(
                "|w0 + x0| = {} must be < 2a = {limit}",
                z0.abs()
            )));
        }
        Ok(())
    }

    fn check_halfspace(&self, sign: Sign, z0: f64) -> Result<()> {
        let limit = 2.0 * self.a;
        let ok = match sign {
            Sign::Plus => z0 > -limit + BOUNDARY_GUARD,
            Sign::Minus => z0 < limit - BOUNDARY_GUARD,
        };
        if ok {
            Ok(())
        } else {
            let rel = match sign {
                Sign::Plus => format!("w0 + x0 = {z0} must be > -2a = {}", -limit),
                Sign::Minus => format!("w0 + x0 = {z0} must be < 2a = {limit}"),
            };
            Err(Error::StripViolation(rel))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    RadialBessel,
    TensorOracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed_form",
            Method::RadialBessel => "radial_bessel",
            Method::TensorOracle => "tensor_oracle",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelEvalReport {
    pub value: Multivector,
    pub abs_error_estimate: f64,
    pub method: Method,
}

/// `s + v u/|u|` as a multivector.
pub fn pair_to_multivector(pair: RadialPair, u: &[f64]) -> Multivector {
    let m = u.len();
    let mut out = Multivector::scalar_unchecked(m, Complex64::new(pair.s, 0.0));
    let norm = u.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm > 0.0 {
        for (j, uj) in u.iter().enumerate() {
            out.set_coeff(1 << j, Complex64::new(pair.v * uj / norm, 0.0));
        }
    }
    out
}

fn unit_direction(xi: &[f64]) -> Result<Vec<f64>> {
    check_dim(xi.len())?;
    let norm = xi.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::ZeroFrequency);
    }
    Ok(xi.iter().map(|c| c / norm).collect())
}

/// `χ±(ξ) = ½(1 ± i ξ/|ξ|)`.
pub fn chi(sign: Sign, xi: &[f64]) -> Result<Multivector> {
    let dir = unit_direction(xi)?;
    Ok(chi_from_direction(sign, &dir))
}

pub(crate) fn chi_from_direction(sign: Sign, dir: &[f64]) -> Multivector {
    let m = dir.len();
    let mut out = Multivector::scalar_unchecked(m, Complex64::new(0.5, 0.0));
    for (j, d) in dir.iter().enumerate() {
        out.set_coeff(1 << j, Complex64::new(0.0, 0.5 * sign.factor() * d));
    }
    out
}

/// `e±(x, ξ) = e^{i<x̲,ξ>} e^{∓x₀|ξ|} χ±(ξ)`.
pub fn monogenic_exp_half(sign: Sign, x: &ParaVector, xi: &[f64]) -> Result<Multivector> {
    check_same_dim(x, xi)?;
    let dir = unit_direction(xi)?;
    let r = xi.iter().map(|c| c * c).sum::<f64>().sqrt();
    let phase: f64 = x.vector().iter().zip(xi).map(|(a, b)| a * b).sum();
    let amp = (-sign.factor() * x.x0 * r).exp();
    let factor = Complex64::from_polar(amp, phase);
    Ok(chi_from_direction(sign, &dir).scale(factor))
}

/// `e(x, ξ) = e⁺(x, ξ) + e⁻(x, ξ)`.
pub fn monogenic_exp(x: &ParaVector, xi: &[f64]) -> Result<Multivector> {
    Ok(monogenic_exp_half(Sign::Plus, x, xi)? + monogenic_exp_half(Sign::Minus, x, xi)?)
}

fn check_same_dim(x: &ParaVector, xi: &[f64]) -> Result<()> {
    if x.dim() != xi.len() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: xi.len(),
        });
    }
    Ok(())
}

fn half_sigma_inverse(m: usize) -> Result<f64> {
    Ok(0.5 / GeometricConstants::new(m)?.sigma_m)
}

/// Cauchy kernel `E(x) = x̄ / (2σ_m |x|^{m+1})`.
pub fn cauchy_kernel(x: &ParaVector) -> Result<Multivector> {
    let n = x.norm();
    if n == 0.0 {
        return Err(Error::ZeroParaVector);
    }
    let c = half_sigma_inverse(x.dim())? / n.powi(x.dim() as i32 + 1);
    Ok(x.conjugate().scaled(c).to_multivector())
}

/// `∂E/∂x₀`.
pub fn cauchy_kernel_dx0(x: &ParaVector) -> Result<Multivector> {
    let m = x.dim() as i32;
    let n = x.norm();
    if n == 0.0 {
        return Err(Error::ZeroParaVector);
    }
    let c = half_sigma_inverse(x.dim())?;
    let first = 1.0 / n.powi(m + 1);
    let second = (m + 1) as f64 * x.x0 / n.powi(m + 3);
    let one = ParaVector::origin(x.dim())?.with_x0(1.0);
    Ok((one.scaled(first).to_multivector() - x.conjugate().scaled(second).to_multivector()) * c)
}

fn radial_report(
    m: usize,
    profile: RadialProfile,
    channels: Channels,
    z: &ParaVector,
    tol: f64,
) -> Result<KernelEvalReport> {
    let est = radial_integral(m, &profile, channels, z.x0, z.vector_norm(), tol)?;
    Ok(KernelEvalReport {
        value: pair_to_multivector(est.pair, z.vector()),
        abs_error_estimate: est.abs_error,
        method: Method::RadialBessel,
    })
}

/// Cube sinc: `(2π)^{-m} ∫_{[-π,π]^m} e(x, ξ) dξ` by tensor Gauss-Legendre.
/// The integrand is entire in `ξ`, so the rule converges geometrically.
pub fn sinc_c(x: &ParaVector) -> Result<KernelEvalReport> {
    let m = x.dim();
    if m > 3 {
        return Err(Error::UnsupportedDimension(m));
    }
    let counts = |extra: usize| -> Vec<usize> {
        x.vector()
            .iter()
            .map(|xj| {
                (1.2 * PI * xj.abs().max(x.x0.abs() * (m as f64).sqrt())).ceil() as usize
                    + 24
                    + extra
            })
            .collect()
    };
    let coarse = sinc_c_grid(x, &counts(0))?;
    let fine = sinc_c_grid(x, &counts(10))?;
    Ok(KernelEvalReport {
        value: fine,
        abs_error_estimate: (fine - coarse).norm(),
        method: Method::TensorOracle,
    })
}

fn sinc_c_grid(x: &ParaVector, counts: &[usize]) -> Result<Multivector> {
    let m = x.dim();
    let total: usize = counts.iter().product();
    let cap = 512usize.pow(m as u32);
    if total > cap {
        return Err(Error::ResourceCap(format!(
            "cube quadrature needs {total} nodes, cap is {cap}"
        )));
    }
    let rules: Vec<Vec<(f64, f64)>> = counts
        .iter()
        .map(|&n| GaussLegendre::new(n).mapped(-PI, PI).collect())
        .collect();
    let mut scalar = Complex64::new(0.0, 0.0);
    let mut vector = [Complex64::new(0.0, 0.0); 3];
    let mut idx = vec![0usize; m];
    let xv = x.vector();
    loop {
        let mut weight = 1.0;
        let mut xi = [0.0; 3];
        for j in 0..m {
            let (node, w) = rules[j][idx[j]];
            xi[j] = node;
            weight *= w;
        }
        let r = xi[..m].iter().map(|c| c * c).sum::<f64>().sqrt();
        let phase: f64 = (0..m).map(|j| xv[j] * xi[j]).sum();
        let wave = Complex64::from_polar(weight, phase);
        let xr = x.x0 * r;
        scalar += wave * xr.cosh();
        // -i sinh(x₀ r) ξ_j / r, smooth through r = 0
        let shc = if xr.abs() < 1e-8 { x.x0 } else { xr.sinh() / r };
        for j in 0..m {
            vector[j] += wave * Complex64::new(0.0, -shc * xi[j]);
        }
        let mut j = 0;
        loop {
            idx[j] += 1;
            if idx[j] < counts[j] {
                break;
            }
            idx[j] = 0;
            j += 1;
            if j == m {
                let norm = (2.0 * PI).powi(-(m as i32));
                let mut out = Multivector::scalar_unchecked(m, scalar * norm);
                for (k, v) in vector.iter().take(m).enumerate() {
                    out.set_coeff(1 << k, v * norm);
                }
                return Ok(out);
            }
        }
    }
}

/// Ball sinc: `(2π)^{-m} ∫_{|ξ|<π} e(x, ξ) dξ`.
pub fn sinc_b(x: &ParaVector, tol: f64) -> Result<KernelEvalReport> {
    radial_report(
        x.dim(),
        RadialProfile::Ball { radius: PI },
        Channels::BOTH,
        x,
        tol,
    )
}

/// Paley-Wiener reproducing kernel `P(w, x̄) = sinc_B(w + x̄)`.
pub fn kernel_p(
    geometry: &StripGeometry,
    w: &ParaVector,
    x: &ParaVector,
    tol: f64,
) -> Result<KernelEvalReport> {
    let z = geometry.combine(w, x)?;
    sinc_b(&z, tol)
}

/// Strip Szegő kernel from shifted Cauchy kernels:
/// `S(w, x̄) = E(z + 2a) - E(z - 2a)`.
pub fn kernel_s_closed(
    geometry: &StripGeometry,
    w: &ParaVector,
    x: &ParaVector,
) -> Result<Multivector> {
    let z = geometry.combine(w, x)?;
    geometry.check_strip(z.x0)?;
    let two_a = 2.0 * geometry.a;
    Ok(cauchy_kernel(&z.shifted_x0(two_a))? - cauchy_kernel(&z.shifted_x0(-two_a))?)
}

/// Strip Szegő kernel from its Fourier representation with weight `e^{-2a|ξ|}`.
pub fn kernel_s_integral(
    geometry: &StripGeometry,
    w: &ParaVector,
    x: &ParaVector,
    tol: f64,
) -> Result<KernelEvalReport> {
    let z = geometry.combine(w, x)?;
    geometry.check_strip(z.x0)?;
    radial_report(
        geometry.m,
        RadialProfile::ExpDecay {
            rate: 2.0 * geometry.a,
        },
        Channels::BOTH,
        &z,
        tol,
    )
}

/// Szegő kernels of the half-spaces `x₀ > -a` (`Plus`) and `x₀ < a` (`Minus`):
/// `S₊ = E(z + 2a)`, `S₋ = -E(z - 2a)`.
pub fn kernel_s_halfspace_closed(
    geometry: &StripGeometry,
    sign: Sign,
    w: &ParaVector,
    x: &ParaVector,
) -> Result<Multivector> {
    let z = geometry.combine(w, x)?;
    geometry.check_halfspace(sign, z.x0)?;
    s_halfspace_at(geometry, sign, &z)
}

fn s_halfspace_at(geometry: &StripGeometry, sign: Sign, z: &ParaVector) -> Result<Multivector> {
    let shift = 2.0 * geometry.a * sign.factor();
    Ok(cauchy_kernel(&z.shifted_x0(shift))? * sign.factor())
}

/// Half-space Szegő kernels from the Fourier side, single `χ±` channel.
pub fn kernel_s_halfspace(
    geometry: &StripGeometry,
    sign: Sign,
    w: &ParaVector,
    x: &ParaVector,
    tol: f64,
) -> Result<KernelEvalReport> {
    let z = geometry.combine(w, x)?;
    geometry.check_halfspace(sign, z.x0)?;
    radial_report(
        geometry.m,
        RadialProfile::ExpDecay {
            rate: 2.0 * geometry.a,
        },
        sign.channels(),
        &z,
        tol,
    )
}

/// Strip Bergman kernel, weight `2|ξ| / (e^{2a|ξ|} - e^{-2a|ξ|})`.
pub fn kernel_b(
    geometry: &StripGeometry,
    w: &ParaVector,
    x: &ParaVector,
    tol: f64,
) -> Result<KernelEvalReport> {
    let z = geometry.combine(w, x)?;
    geometry.check_strip(z.x0)?;
    radial_report(
        geometry.m,
        RadialProfile::BergmanWeight { a: geometry.a },
        Channels::BOTH,
        &z,
        tol,
    )
}

/// Half-space Bergman kernels, weight `2|ξ| e^{-2a|ξ|}`, single channel.
pub fn kernel_b_halfspace(
    geometry: &StripGeometry,
    sign: Sign,
    w: &ParaVector,
    x: &ParaVector,
    tol: f64,
) -> Result<KernelEvalReport> {
    let z = geometry.combine(w, x)?;
    geometry.check_halfspace(sign, z.x0)?;
    radial_report(
        geometry.m,
        RadialProfile::BergmanHalfspace { a: geometry.a },
        sign.channels(),
        &z,
        tol,
    )
}

/// Closed form of the half-space Bergman kernels, `B± = ∓2 ∂S±/∂x₀`,
/// i.e. `-2 (∂₀E)(z ± 2a)`.
pub fn kernel_b_halfspace_closed(
    geometry: &StripGeometry,
    sign: Sign,
    w: &ParaVector,
    x: &ParaVector,
) -> Result<Multivector> {
    let z = geometry.combine(w, x)?;
    geometry.check_halfspace(sign, z.x0)?;
    let shift = 2.0 * geometry.a * sign.factor();
    Ok(cauchy_kernel_dx0(&z.shifted_x0(shift))? * -2.0)
}

/// Poisson kernel of the half-space `x₀ > -a`:
/// `(x₀ + 2a) / (2σ_m ((x₀ + 2a)² + |x̲|²)^{(m+1)/2})`.
pub fn poisson_halfspace(geometry: &StripGeometry, x: &ParaVector) -> Result<f64> {
    geometry.check_point(x)?;
    let h = x.x0 + 2.0 * geometry.a;
    if !(h > 0.0) {
        return Err(Error::StripViolation(format!(
            "x0 = {} must be > -2a = {}",
            x.x0,
            -2.0 * geometry.a
        )));
    }
    let r2 = h * h + x.vector_norm().powi(2);
    Ok(half_sigma_inverse(geometry.m)? * h / r2.powf((geometry.m as f64 + 1.0) / 2.0))
}

/// Kernels that reduce to a radial integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum KernelKind {
    #[serde(rename = "P")]
    PaleyWiener,
    #[serde(rename = "S")]
    Szego,
    #[serde(rename = "S+")]
    SzegoPlus,
    #[serde(rename = "S-")]
    SzegoMinus,
    #[serde(rename = "B")]
    Bergman,
    #[serde(rename = "B+")]
    BergmanPlus,
    #[serde(rename = "B-")]
    BergmanMinus,
}

impl KernelKind {
    pub const ALL: [KernelKind; 7] = [
        KernelKind::PaleyWiener,
        KernelKind::Szego,
        KernelKind::SzegoPlus,
        KernelKind::SzegoMinus,
        KernelKind::Bergman,
        KernelKind::BergmanPlus,
        KernelKind::BergmanMinus,
    ];

    pub fn radial_spec(self, geometry: &StripGeometry) -> (RadialProfile, Channels) {
        let a = geometry.a;
        match self {
            KernelKind::PaleyWiener => (RadialProfile::Ball { radius: PI }, Channels::BOTH),
            KernelKind::Szego => (RadialProfile::ExpDecay { rate: 2.0 * a }, Channels::BOTH),
            KernelKind::SzegoPlus => (RadialProfile::ExpDecay { rate: 2.0 * a }, Channels::PLUS),
            KernelKind::SzegoMinus => (RadialProfile::ExpDecay { rate: 2.0 * a }, Channels::MINUS),
            KernelKind::Bergman => (RadialProfile::BergmanWeight { a }, Channels::BOTH),
            KernelKind::BergmanPlus => (RadialProfile::BergmanHalfspace { a }, Channels::PLUS),
            KernelKind::BergmanMinus => (RadialProfile::BergmanHalfspace { a }, Channels::MINUS),
        }
    }

    fn check(self, geometry: &StripGeometry, z0: f64) -> Result<()> {
        match self {
            KernelKind::PaleyWiener => Ok(()),
            KernelKind::Szego | KernelKind::Bergman => geometry.check_strip(z0),
            KernelKind::SzegoPlus | KernelKind::BergmanPlus => {
                geometry.check_halfspace(Sign::Plus, z0)
            }
            KernelKind::SzegoMinus | KernelKind::BergmanMinus => {
                geometry.check_halfspace(Sign::Minus, z0)
            }
        }
    }

    /// Radial-Bessel evaluation of `K(w, x̄)`.
    pub fn evaluate(
        self,
        geometry: &StripGeometry,
        w: &ParaVector,
        x: &ParaVector,
        tol: f64,
    ) -> Result<KernelEvalReport> {
        let z = geometry.combine(w, x)?;
        self.check(geometry, z.x0)?;
        let (profile, channels) = self.radial_spec(geometry);
        radial_report(geometry.m, profile, channels, &z, tol)
    }

    /// Brute-force tensor-grid evaluation of `K(w, x̄)`, `m <= 3`.
    pub fn evaluate_oracle(
        self,
        geometry: &StripGeometry,
        w: &ParaVector,
        x: &ParaVector,
    ) -> Result<(KernelEvalReport, f64)> {
        let z = geometry.combine(w, x)?;
        self.check(geometry, z.x0)?;
        let (profile, channels) = self.radial_spec(geometry);
        let est = tensor_oracle(&profile, channels, &z, 1e-13)?;
        Ok((
            KernelEvalReport {
                value: pair_to_multivector(est.pair, z.vector()),
                abs_error_estimate: est.abs_error,
                method: Method::TensorOracle,
            },
            est.symmetry_defect,
        ))
    }

    /// Closed form where one exists (`S`, `S±`, `B±`).
    pub fn evaluate_closed(
        self,
        geometry: &StripGeometry,
        w: &ParaVector,
        x: &ParaVector,
    ) -> Option<Result<Multivector>> {
        match self {
            KernelKind::Szego => Some(kernel_s_closed(geometry, w, x)),
            KernelKind::SzegoPlus => Some(kernel_s_halfspace_closed(geometry, Sign::Plus, w, x)),
            KernelKind::SzegoMinus => Some(kernel_s_halfspace_closed(geometry, Sign::Minus, w, x)),
            KernelKind::BergmanPlus => Some(kernel_b_halfspace_closed(geometry, Sign::Plus, w, x)),
            KernelKind::BergmanMinus => {
                Some(kernel_b_halfspace_closed(geometry, Sign::Minus, w, x))
            }
            KernelKind::PaleyWiener | KernelKind::Bergman => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            KernelKind::PaleyWiener => "P",
            KernelKind::Szego => "S",
            KernelKind::SzegoPlus => "S+",
            KernelKind::SzegoMinus => "S-",
            KernelKind::Bergman => "B",
            KernelKind::BergmanPlus => "B+",
            KernelKind::BergmanMinus => "B-",
        }
    }
}

impl FromStr for KernelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        KernelKind::ALL
            .into_iter()
            .find(|k| k.label() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown kernel '{s}'")))
    }
}

/// Closed form of `B(w, x̄)` by the image series
/// `B = -2 Σ_{k>=0} [(∂₀E)(z + c_k) + (∂₀E)(z - c_k)]`, `c_k = (4k+2)a`,
/// truncated after `terms` pairs with an integral estimate of the remainder.
pub fn kernel_b_image_series(
    geometry: &StripGeometry,
    w: &ParaVector,
    x: &ParaVector,
    terms: usize,
) -> Result<Multivector> {
    let z = geometry.combine(w, x)?;
    geometry.check_strip(z.x0)?;
    let m = geometry.m;
    let mut acc = Multivector::zero(m)?;
    for k in 0..terms {
        let c = (4 * k + 2) as f64 * geometry.a;
        acc = acc + cauchy_kernel_dx0(&z.shifted_x0(c))? + cauchy_kernel_dx0(&z.shifted_x0(-c))?;
    }
    // leading far-field term of each pair: 2 (∂₀E)(c) = -2m c^{-(m+1)} / (2σ_m)
    let coef = half_sigma_inverse(m)? * 2.0 * m as f64;
    let start = (4.0 * terms as f64 + 2.0 - 2.0) * geometry.a;
    let tail = coef / (4.0 * geometry.a * m as f64) * start.powi(-(m as i32));
    let tail_mv = Multivector::scalar(m, -tail)?;
    Ok((acc + tail_mv) * -2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::dirac_residual;

    const ZETA3: f64 = 1.202_056_903_159_594_2;

    fn pv(c: &[f64]) -> ParaVector {
        ParaVector::from_components(c).unwrap()
    }

    fn geom(m: usize, a: f64) -> StripGeometry {
        StripGeometry::new(m, a).unwrap()
    }

    #[test]
    fn chi_examples() {
        let c = chi(Sign::Plus, &[1.0, 0.0]).unwrap();
        assert_eq!(c.coeff(0), Complex64::new(0.5, 0.0));
        assert_eq!(c.coeff(1), Complex64::new(0.0, 0.5));
        assert_eq!(c.coeff(2), Complex64::new(0.0, 0.0));
        assert_eq!(chi(Sign::Plus, &[0.0, 0.0]), Err(Error::ZeroFrequency));
        let xi = [0.3, -1.2, 0.7];
        let p = chi(Sign::Plus, &xi).unwrap();
        let q = chi(Sign::Minus, &xi).unwrap();
        assert!(((p + q) - Multivector::one(3).unwrap()).norm() < 1e-15);
        assert!((p * q).norm() < 1e-15);
        assert!((p * p - p).norm() < 1e-15);
    }

    #[test]
    fn exponential_examples() {
        let x = pv(&[0.0, 0.4, -1.1]);
        let xi = [0.8, 0.3];
        let e = monogenic_exp(&x, &xi).unwrap();
        let phase = 0.4 * 0.8 - 1.1 * 0.3;
        let want = Multivector::scalar(2, Complex64::from_polar(1.0, phase)).unwrap();
        assert!((e - want).norm() < 1e-15);

        let x = pv(&[1.0, 0.0, 0.0]);
        let e = monogenic_exp(&x, &[1.0, 0.0]).unwrap();
        let want = chi(Sign::Plus, &[1.0, 0.0]).unwrap() * (-1f64).exp()
            + chi(Sign::Minus, &[1.0, 0.0]).unwrap() * 1f64.exp();
        assert!((e - want).norm() < 1e-15);
    }

    #[test]
    fn exponential_is_monogenic() {
        let xi = [0.9, -0.4, 0.3];
        let f = |p: &ParaVector| monogenic_exp(p, &xi);
        let r = dirac_residual(f, &pv(&[0.2, 0.5, -0.3, 1.0]), 1e-3).unwrap();
        assert!(r < 1e-5, "{r:e}");
    }

    #[test]
    fn cauchy_examples() {
        let e = cauchy_kernel(&pv(&[1.0, 0.0, 0.0])).unwrap();
        assert!((e.coeff(0).re - 1.0 / (4.0 * PI)).abs() < 1e-16);
        let x = pv(&[0.3, -0.7, 1.2]);
        let lam: f64 = 2.5;
        let scaled = cauchy_kernel(&x.scaled(lam)).unwrap();
        let want = cauchy_kernel(&x).unwrap() * lam.powi(-2);
        assert!((scaled - want).norm() < 1e-16);
        let c3 = GeometricConstants::new(3).unwrap().sigma_m;
        let e = cauchy_kernel(&pv(&[0.7, 0.0, 0.0, 0.0])).unwrap();
        assert!((e.coeff(0).re - 0.5 / c3 * 0.7f64.powi(-3)).abs() < 1e-14);
        assert_eq!(cauchy_kernel(&pv(&[0.0, 0.0])), Err(Error::ZeroParaVector));
    }

    #[test]
    fn cauchy_derivative_matches_finite_difference() {
        let x = pv(&[0.4, 1.1, -0.6]);
        let h = 1e-5;
        let fd = (cauchy_kernel(&x.shifted_x0(h)).unwrap()
            - cauchy_kernel(&x.shifted_x0(-h)).unwrap())
            * (0.5 / h);
        assert!((fd - cauchy_kernel_dx0(&x).unwrap()).norm() < 1e-9);
    }

    #[test]
    fn sinc_c_values() {
        let r = sinc_c(&pv(&[0.0, 0.0, 0.0])).unwrap();
        assert!((r.value.coeff(0).re - 1.0).abs() < 1e-14);
        let r = sinc_c(&pv(&[0.0, 1.0, 0.0])).unwrap();
        assert!(r.value.norm() < 1e-14);
        let (a, b) = (0.37, -1.6);
        let r = sinc_c(&pv(&[0.0, a, b])).unwrap();
        let sinc = |t: f64| (PI * t).sin() / (PI * t);
        assert!((r.value.coeff(0).re - sinc(a) * sinc(b)).abs() < 1e-14);
        let r = sinc_c(&pv(&[0.6, 0.3, 2.2])).unwrap();
        assert!(r.value.non_paravector_magnitude() < 1e-14);
        assert!(r.value.max_imaginary() < 1e-13);
        assert!(r.abs_error_estimate < 1e-12);
    }

    #[test]
    fn sinc_b_values() {
        let r = sinc_b(&pv(&[0.0, 0.0, 0.0]), 1e-12).unwrap();
        assert!((r.value.coeff(0).re - PI / 4.0).abs() < 1e-13);
        let r = sinc_b(&pv(&[0.0, 0.0, 0.0, 0.0]), 1e-12).unwrap();
        assert!((r.value.coeff(0).re - PI / 6.0).abs() < 1e-13);
    }

    #[test]
    fn paley_wiener_diagonal_positive() {
        let g = geom(2, 1.0);
        for x in [[0.3, -0.5, 1.2], [-1.0, 2.0, 0.1], [0.0, 0.0, 0.0]] {
            let x = pv(&x);
            let r = kernel_p(&g, &x, &x, 1e-11).unwrap();
            assert!(r.value.coeff(0).re > 0.0);
            // z = x + x̄ = 2x₀ has no vector part
            assert!(r.value.non_scalar_part().norm() < 1e-14);
        }
    }

    #[test]
    fn szego_values() {
        let g = geom(2, 1.0);
        let o = pv(&[0.0, 0.0, 0.0]);
        let closed = kernel_s_closed(&g, &o, &o).unwrap();
        // independent arithmetic: 2 · (1/(4π)) · 2/2³
        let want = 2.0 * (1.0 / (4.0 * PI)) * 2.0 / 8.0;
        assert!((closed.coeff(0).re - want).abs() < 1e-16);
        assert!((want - 1.0 / (8.0 * PI)).abs() < 1e-16);
        let int = kernel_s_integral(&g, &o, &o, 1e-13).unwrap();
        assert!((int.value.coeff(0).re - want).abs() < 1e-13);
    }

    #[test]
    fn szego_integral_matches_closed_form() {
        let pts = [
            (2, 1.0, [0.3, -0.2, 0.7, 0.0], [0.4, 1.0, -0.5, 0.0]),
            (2, 0.5, [0.2, 1.5, 0.2, 0.0], [-0.6, -0.3, 0.8, 0.0]),
            (3, 1.0, [0.5, 0.1, 0.2, -1.0], [-0.1, 0.5, 0.5, 0.5]),
            (3, 0.5, [-0.4, 2.0, -1.0, 0.3], [-0.3, 0.0, 1.1, 0.2]),
        ];
        for (m, a, w, x) in pts {
            let g = geom(m, a);
            let w = pv(&w[..=m]);
            let x = pv(&x[..=m]);
            let c = kernel_s_closed(&g, &w, &x).unwrap();
            let i = kernel_s_integral(&g, &w, &x, 1e-14).unwrap();
            assert!(
                (c - i.value).norm() <= 1e-10 * c.norm(),
                "{c:?} vs {:?}",
                i.value
            );
        }
    }

    #[test]
    fn szego_scalar_part_symmetric() {
        let g = geom(3, 1.0);
        let w = pv(&[0.3, 0.4, -0.2, 1.0]);
        let x = pv(&[-0.5, 0.1, 0.9, 0.3]);
        let a = kernel_s_closed(&g, &w, &x).unwrap();
        let b = kernel_s_closed(&g, &x, &w).unwrap();
        assert!((a.coeff(0) - b.coeff(0)).norm() < 1e-15);
    }

    #[test]
    fn szego_blows_up_at_boundary() {
        let g = geom(2, 1.0);
        let x = pv(&[0.0, 0.0, 0.0]);
        let mut last = 0.0;
        for k in 1..12 {
            let w = pv(&[2.0 - 2f64.powi(-k), 0.0, 0.0]);
            let v = kernel_s_integral(&g, &w, &x, 1e-10)
                .unwrap()
                .value
                .coeff(0)
                .re;
            assert!(v > last);
            last = v;
        }
        let err = kernel_s_integral(&g, &pv(&[2.0, 0.0, 0.0]), &x, 1e-10);
        assert!(matches!(err, Err(Error::StripViolation(msg)) if msg.contains("2a")));
        assert!(kernel_s_closed(&g, &pv(&[2.0 - 1e-10, 0.0, 0.0]), &x).is_err());
    }

    #[test]
    fn bergman_origin_value() {
        for a in [0.5, 1.0] {
            let g = geom(2, a);
            let o = pv(&[0.0, 0.0, 0.0]);
            let b = kernel_b(&g, &o, &o, 1e-13).unwrap();
            let want = 7.0 * ZETA3 / (32.0 * PI * a.powi(3));
            assert!((b.value.coeff(0).re - want).abs() <= 1e-11 * want);
            let series = kernel_b_image_series(&g, &o, &o, 4000).unwrap();
            assert!((series.coeff(0).re - want).abs() <= 1e-10 * want);
        }
    }

    #[test]
    fn bergman_matches_image_series() {
        for (m, w, x) in [
            (2, [0.3, 0.5, -0.2, 0.0], [0.1, -0.4, 0.3, 0.0]),
            (3, [-0.6, 0.2, 0.1, 0.4], [0.2, 0.9, -0.3, 0.0]),
        ] {
            let g = geom(m, 1.0);
            let w = pv(&w[..=m]);
            let x = pv(&x[..=m]);
            let b = kernel_b(&g, &w, &x, 1e-13).unwrap().value;
            let s = kernel_b_image_series(&g, &w, &x, 4000).unwrap();
            assert!((b - s).norm() <= 1e-9 * b.norm(), "{b:?} vs {s:?}");
        }
    }

    #[test]
    fn halfspace_bergman_is_derivative_of_szego() {
        let g = geom(2, 1.0);
        let x = pv(&[0.1, 0.2, -0.3]);
        let h = 1e-4;
        for (sign, w) in [
            (Sign::Plus, [0.7, -0.4, 0.9]),
            (Sign::Minus, [-0.5, 1.2, 0.3]),
        ] {
            let w = pv(&w);
            let sp = kernel_s_halfspace_closed(&g, sign, &w.shifted_x0(h), &x).unwrap();
            let sm = kernel_s_halfspace_closed(&g, sign, &w.shifted_x0(-h), &x).unwrap();
            let fd = (sp - sm) * (-2.0 * sign.factor() / (2.0 * h));
            let b = kernel_b_halfspace(&g, sign, &w, &x, 1e-13).unwrap().value;
            assert!((fd - b).norm() < 1e-6, "{sign:?}");
            let closed = kernel_b_halfspace_closed(&g, sign, &w, &x).unwrap();
            assert!((closed - b).norm() < 1e-11 * b.norm());
            let s_int = kernel_s_halfspace(&g, sign, &w, &x, 1e-13).unwrap().value;
            let s_closed = kernel_s_halfspace_closed(&g, sign, &w, &x).unwrap();
            assert!((s_int - s_closed).norm() < 1e-11 * s_closed.norm());
        }
    }

    #[test]
    fn halfspace_sum_is_strictly_below_strip_bergman() {
        let g = geom(2, 1.0);
        let o = pv(&[0.0, 0.0, 0.0]);
        let b = kernel_b(&g, &o, &o, 1e-13).unwrap().value.coeff(0).re;
        let bp = kernel_b_halfspace(&g, Sign::Plus, &o, &o, 1e-13)
            .unwrap()
            .value
            .coeff(0)
            .re;
        let bm = kernel_b_halfspace(&g, Sign::Minus, &o, &o, 1e-13)
            .unwrap()
            .value
            .coeff(0)
            .re;
        assert!(bp + bm < b - 1e-3 * b);
    }

    #[test]
    fn halfspace_conditions() {
        let g = geom(2, 1.0);
        let o = pv(&[0.0, 0.0, 0.0]);
        assert!(kernel_b_halfspace(&g, Sign::Plus, &pv(&[5.0, 0.0, 0.0]), &o, 1e-10).is_ok());
        assert!(kernel_b_halfspace(&g, Sign::Plus, &pv(&[-2.0, 0.0, 0.0]), &o, 1e-10).is_err());
        assert!(kernel_b_halfspace(&g, Sign::Minus, &pv(&[-5.0, 0.0, 0.0]), &o, 1e-10).is_ok());
        assert!(kernel_b_halfspace(&g, Sign::Minus, &pv(&[2.0, 0.0, 0.0]), &o, 1e-10).is_err());
    }

    #[test]
    fn poisson_values() {
        let g = geom(2, 0.5);
        let p = poisson_halfspace(&g, &pv(&[0.0, 0.0, 0.0])).unwrap();
        assert!((p - 1.0 / (4.0 * PI)).abs() < 1e-16);
        assert!(poisson_halfspace(&g, &pv(&[-1.0, 0.0, 0.0])).is_err());
        // radial quadrature of ∫ P dx̲ over R² after r = tan θ
        let rule = GaussLegendre::new(200);
        let total: f64 = rule
            .mapped(0.0, PI / 2.0)
            .map(|(th, w)| {
                let r = th.tan();
                let jac = 1.0 / (th.cos() * th.cos());
                w * jac * 2.0 * PI * r * poisson_halfspace(&g, &pv(&[0.3, r, 0.0])).unwrap()
            })
            .sum();
        assert!((total - 0.5).abs() < 1e-10, "{total}");
    }

    #[test]
    fn kinds_parse_and_dispatch() {
        let g = geom(2, 1.0);
        let w = pv(&[0.2, 0.3, -0.1]);
        let x = pv(&[-0.1, 0.4, 0.2]);
        for k in KernelKind::ALL {
            assert_eq!(k.label().parse::<KernelKind>().unwrap(), k);
            let r = k.evaluate(&g, &w, &x, 1e-12).unwrap();
            assert!(r.value.non_paravector_magnitude() == 0.0);
            if let Some(c) = k.evaluate_closed(&g, &w, &x) {
                assert!((c.unwrap() - r.value).norm() < 1e-10);
            }
        }
        assert!("Q".parse::<KernelKind>().is_err());
    }
}
