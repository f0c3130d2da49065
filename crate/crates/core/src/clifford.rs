//! Complexified Clifford algebra Cl(0, m), 1 <= m <= 4.
//!
//! Multivectors are stored as `2^m` complex coefficients indexed by blade
//! bitmask: bit `j - 1` set means `e_j` is a factor of the blade, and blades
//! are always written with increasing indices. Index 0 is the scalar part.
//! Generators satisfy `e_j e_k + e_k e_j = -2 δ_jk`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 4;
pub const MAX_BLADES: usize = 1 << MAX_DIM;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Sign of `e_A e_B` relative to `e_{A xor B}` for every pair of blade
/// bitmasks with indices below `MAX_DIM`. The sign only depends on the
/// bitmasks, so one table serves every supported `m`.
static PRODUCT_SIGN: [[i8; MAX_BLADES]; MAX_BLADES] = build_sign_table();

const fn blade_product_sign(a: usize, b: usize) -> i8 {
    // transpositions needed to bring the concatenation e_A e_B to canonical order
    let mut swaps = 0u32;
    let mut shifted = a >> 1;
    while shifted != 0 {
        swaps += (shifted & b).count_ones();
        shifted >>= 1;
    }
    // each shared generator contracts as e_j e_j = -1
    swaps += (a & b).count_ones();
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

const fn build_sign_table() -> [[i8; MAX_BLADES]; MAX_BLADES] {
    let mut table = [[0i8; MAX_BLADES]; MAX_BLADES];
    let mut a = 0;
    while a < MAX_BLADES {
        let mut b = 0;
        while b < MAX_BLADES {
            table[a][b] = blade_product_sign(a, b);
            b += 1;
        }
        a += 1;
    }
    table
}

/// Sign picked up by the blade `e_T` under Clifford conjugation:
/// `conj(e_{j1} ... e_{jl}) = conj(e_{jl}) ... conj(e_{j1})` with `conj(e_j) = -e_j`.
pub fn conjugation_sign(blade: usize) -> f64 {
    let grade = blade.count_ones();
    // (-1)^grade from the generators, (-1)^(grade (grade - 1) / 2) from the reversal
    let flips = grade + grade * grade.saturating_sub(1) / 2;
    if flips % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

pub fn check_dim(m: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&m) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(m))
    }
}

/// Human readable blade label, e.g. `1`, `e1`, `e12`.
pub fn blade_label(blade: usize) -> String {
    if blade == 0 {
        return "1".to_string();
    }
    let digits: String = (0..MAX_DIM)
        .filter(|j| blade & (1 << j) != 0)
        .map(|j| char::from(b'1' + j as u8))
        .collect();
    format!("e{digits}")
}

#[derive(Clone, Copy, PartialEq)]
pub struct Multivector {
    dim: usize,
    coeffs: [Complex64; MAX_BLADES],
}

impl Multivector {
    pub fn zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self::zero_unchecked(dim))
    }

    pub(crate) fn zero_unchecked(dim: usize) -> Self {
        debug_assert!((1..=MAX_DIM).contains(&dim));
        Self {
            dim,
            coeffs: [ZERO; MAX_BLADES],
        }
    }

    pub fn scalar(dim: usize, value: impl Into<Complex64>) -> Result<Self> {
        let mut out = Self::zero(dim)?;
        out.coeffs[0] = value.into();
        Ok(out)
    }

    pub(crate) fn scalar_unchecked(dim: usize, value: Complex64) -> Self {
        let mut out = Self::zero_unchecked(dim);
        out.coeffs[0] = value;
        out
    }

    pub fn one(dim: usize) -> Result<Self> {
        Self::scalar(dim, 1.0)
    }

    /// The generator `e_j`, `1 <= j <= m`.
    pub fn basis_vector(dim: usize, j: usize) -> Result<Self> {
        check_dim(dim)?;
        if j == 0 || j > dim {
            return Err(Error::InvalidParameter(format!(
                "basis index {j} outside 1..={dim}"
            )));
        }
        Ok(Self::blade(dim, 1 << (j - 1), 1.0))
    }

    pub(crate) fn blade(dim: usize, blade: usize, value: impl Into<Complex64>) -> Self {
        let mut out = Self::zero_unchecked(dim);
        out.coeffs[blade] = value.into();
        out
    }

    pub fn from_coeffs(dim: usize, coeffs: &[Complex64]) -> Result<Self> {
        check_dim(dim)?;
        if coeffs.len() != 1 << dim {
            return Err(Error::InvalidParameter(format!(
                "expected {} coefficients for m = {dim}, got {}",
                1 << dim,
                coeffs.len()
            )));
        }
        let mut out = Self::zero_unchecked(dim);
        out.coeffs[..coeffs.len()].copy_from_slice(coeffs);
        Ok(out)
    }

    /// Embeds a complex vector `Σ v_j e_j`.
    pub fn from_vector(dim: usize, v: &[Complex64]) -> Result<Self> {
        check_dim(dim)?;
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        let mut out = Self::zero_unchecked(dim);
        for (j, c) in v.iter().enumerate() {
            out.coeffs[1 << j] = *c;
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn blade_count(&self) -> usize {
        1 << self.dim
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs[..1 << self.dim]
    }

    pub fn coeff(&self, blade: usize) -> Complex64 {
        self.coeffs[blade]
    }

    pub fn set_coeff(&mut self, blade: usize, value: Complex64) {
        assert!(blade < self.blade_count(), "blade index out of range");
        self.coeffs[blade] = value;
    }

    /// `Sc{x}`.
    pub fn scalar_part(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// `NSc{x} = x - Sc{x}`.
    pub fn non_scalar_part(&self) -> Self {
        let mut out = *self;
        out.coeffs[0] = ZERO;
        out
    }

    /// Coefficient of `e_j` (1-based).
    pub fn vector_coeff(&self, j: usize) -> Complex64 {
        self.coeffs[1 << (j - 1)]
    }

    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(self.product_unchecked(other))
    }

    pub(crate) fn product_unchecked(&self, other: &Self) -> Self {
        let n = 1 << self.dim;
        let mut out = Self::zero_unchecked(self.dim);
        for a in 0..n {
            let ca = self.coeffs[a];
            if ca == ZERO {
                continue;
            }
            let row = &PRODUCT_SIGN[a];
            for b in 0..n {
                let cb = other.coeffs[b];
                if cb == ZERO {
                    continue;
                }
                let term = ca * cb;
                if row[b] > 0 {
                    out.coeffs[a ^ b] += term;
                } else {
                    out.coeffs[a ^ b] -= term;
                }
            }
        }
        out
    }

    /// Clifford conjugation combined with complex conjugation of the
    /// coefficients: `conj(x) = Σ conj(x_T) conj(e_T)`.
    pub fn conjugate(&self) -> Self {
        let mut out = *self;
        for (blade, c) in out.coeffs[..1 << self.dim].iter_mut().enumerate() {
            *c = c.conj() * conjugation_sign(blade);
        }
        out
    }

    /// `|x| = (Σ_T |x_T|^2)^{1/2}`.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs().iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn scale(&self, factor: impl Into<Complex64>) -> Self {
        let factor = factor.into();
        let mut out = *self;
        for c in out.coeffs[..1 << self.dim].iter_mut() {
            *c *= factor;
        }
        out
    }

    /// Largest coefficient magnitude outside the blades `{1, e_1, ..., e_m}`.
    pub fn non_paravector_magnitude(&self) -> f64 {
        self.coeffs()
            .iter()
            .enumerate()
            .filter(|(blade, _)| blade.count_ones() > 1)
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max)
    }

    /// Largest imaginary part over all coefficients.
    pub fn max_imaginary(&self) -> f64 {
        self.coeffs().iter().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    /// Real para-vector part (real parts of the scalar and vector blades).
    pub fn paravector_part(&self) -> ParaVector {
        let mut xv = [0.0; MAX_DIM];
        for (j, slot) in xv.iter_mut().enumerate().take(self.dim) {
            *slot = self.coeffs[1 << j].re;
        }
        ParaVector {
            dim: self.dim,
            x0: self.coeffs[0].re,
            xv,
        }
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector(m={}; ", self.dim)?;
        let mut first = true;
        for (blade, c) in self.coeffs().iter().enumerate() {
            if *c == ZERO {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}{:+}i){}", c.re, c.im, blade_label(blade))?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in addition");
        let mut out = self;
        for (c, r) in out.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *c += r;
        }
        out
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in subtraction");
        let mut out = self;
        for (c, r) in out.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *c -= r;
        }
        out
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

/// Panics on dimension mismatch; use [`Multivector::geometric_product`] for a
/// checked product.
impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in product");
        self.product_unchecked(&rhs)
    }
}

impl Mul<Complex64> for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Complex64) -> Self {
        self.scale(rhs)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

/// A point `x = x0 + x̲` of `R^{m+1}`.
#[derive(Clone, Copy, PartialEq)]
pub struct ParaVector {
    dim: usize,
    pub x0: f64,
    xv: [f64; MAX_DIM],
}

impl ParaVector {
    pub fn new(x0: f64, xv: &[f64]) -> Result<Self> {
        check_dim(xv.len())?;
        let mut arr = [0.0; MAX_DIM];
        arr[..xv.len()].copy_from_slice(xv);
        Ok(Self {
            dim: xv.len(),
            x0,
            xv: arr,
        })
    }

    pub fn origin(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            x0: 0.0,
            xv: [0.0; MAX_DIM],
        })
    }

    /// Parses `x0,x1,...,xm`.
    pub fn from_components(components: &[f64]) -> Result<Self> {
        match components.split_first() {
            Some((x0, rest)) => Self::new(*x0, rest),
            None => Err(Error::UnsupportedDimension(0)),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vector(&self) -> &[f64] {
        &self.xv[..self.dim]
    }

    pub fn components(&self) -> Vec<f64> {
        std::iter::once(self.x0)
            .chain(self.vector().iter().copied())
            .collect()
    }

    pub fn vector_norm(&self) -> f64 {
        self.vector().iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn norm(&self) -> f64 {
        (self.x0 * self.x0 + self.vector_norm().powi(2)).sqrt()
    }

    /// `x̄ = x0 - x̲`.
    pub fn conjugate(&self) -> Self {
        let mut out = *self;
        for v in out.xv.iter_mut() {
            *v = -*v;
        }
        out
    }

    /// `x^{-1} = x̄ / |x|^2`.
    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.x0 * self.x0 + self.vector().iter().map(|v| v * v).sum::<f64>();
        if n2 == 0.0 {
            return Err(Error::ZeroParaVector);
        }
        Ok(self.conjugate().scaled(1.0 / n2))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = *self;
        out.x0 *= factor;
        for v in out.xv.iter_mut() {
            *v *= factor;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut out = *self;
        out.x0 += other.x0;
        for (v, o) in out.xv.iter_mut().zip(other.xv.iter()) {
            *v += o;
        }
        Ok(out)
    }

    pub fn with_x0(&self, x0: f64) -> Self {
        let mut out = *self;
        out.x0 = x0;
        out
    }

    pub fn shifted_x0(&self, dx0: f64) -> Self {
        self.with_x0(self.x0 + dx0)
    }

    /// Shift along coordinate `k` (0 = x0, j = x_j).
    pub fn shifted(&self, k: usize, delta: f64) -> Self {
        let mut out = *self;
        if k == 0 {
            out.x0 += delta;
        } else {
            out.xv[k - 1] += delta;
        }
        out
    }

    pub fn to_multivector(&self) -> Multivector {
        let mut out = Multivector::zero_unchecked(self.dim);
        out.coeffs[0] = Complex64::new(self.x0, 0.0);
        for j in 0..self.dim {
            out.coeffs[1 << j] = Complex64::new(self.xv[j], 0.0);
        }
        out
    }
}

impl fmt::Debug for ParaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParaVector({}; {:?})", self.x0, self.vector())
    }
}
