//! Bessel functions of the first kind for the small integer and
//! half-integer orders that appear in radial reductions.
//!
//! Strategy:
//! * `t <= 2`: power series (no cancellation at this size).
//! * integer orders, `2 < t <= 60`: Miller backward recurrence normalised
//!   with `J_0 + 2 Σ J_{2n} = 1`.
//! * half-integer orders, `2 < t <= 60`: backward recurrence normalised
//!   against whichever of the closed forms `J_{±1/2}` is larger in magnitude.
//! * `t > 60`: Hankel asymptotic expansion (terminates for half-integers).

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Largest supported `2k`.
pub const MAX_TWICE_K: i32 = 16;

const SERIES_LIMIT: f64 = 2.0;
const ASYMPTOTIC_LIMIT: f64 = 60.0;

/// The order `k = twice_k / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BesselOrder {
    twice_k: i32,
}

impl BesselOrder {
    pub fn from_twice(twice_k: i32) -> Result<Self> {
        if (-1..=MAX_TWICE_K).contains(&twice_k) {
            Ok(Self { twice_k })
        } else {
            Err(Error::UnsupportedOrder { twice_k })
        }
    }

    pub fn integer(k: i32) -> Result<Self> {
        Self::from_twice(2 * k)
    }

    pub fn twice_k(&self) -> i32 {
        self.twice_k
    }

    pub fn value(&self) -> f64 {
        self.twice_k as f64 / 2.0
    }

    pub fn is_integer(&self) -> bool {
        self.twice_k % 2 == 0
    }
}

/// `ln Γ(n / 2)` for a positive integer `n`, by exact recurrence from
/// `Γ(1) = 1` and `Γ(1/2) = √π`.
pub fn ln_gamma_half(twice_x: i32) -> f64 {
    assert!(twice_x > 0, "ln_gamma_half needs a positive argument");
    let mut acc = if twice_x % 2 == 0 { 0.0 } else { 0.5 * PI.ln() };
    let mut n = if twice_x % 2 == 0 { 2 } else { 1 };
    while n < twice_x {
        acc += (n as f64 / 2.0).ln();
        n += 2;
    }
    acc
}

pub fn gamma_half(twice_x: i32) -> f64 {
    ln_gamma_half(twice_x).exp()
}

/// Surface measure of the unit sphere `S^{n-1}` in `R^n`.
pub fn sphere_area(n: usize) -> f64 {
    2.0 * PI.powf(n as f64 / 2.0) / gamma_half(n as i32)
}

/// Dimension dependent constants.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricConstants {
    pub m: usize,
    /// `π^{(m+1)/2} / Γ((m+1)/2)`, half the area of `S^m`.
    pub sigma_m: f64,
    /// `ln ω_k` for `k = (m-2)/2, (m-1)/2, m/2, (m+1)/2`, where
    /// `ω_k = Γ(k + 1/2) Γ(1/2)`; `None` where `k + 1/2 <= 0`.
    pub ln_omega: [Option<f64>; 4],
}

impl GeometricConstants {
    pub fn new(m: usize) -> Result<Self> {
        crate::clifford::check_dim(m)?;
        let sigma_m = PI.powf((m as f64 + 1.0) / 2.0) / gamma_half(m as i32 + 1);
        let mut table = [None; 4];
        for (i, slot) in table.iter_mut().enumerate() {
            let twice_k = m as i32 - 2 + i as i32;
            *slot = ln_omega(twice_k);
        }
        Ok(Self {
            m,
            sigma_m,
            ln_omega: table,
        })
    }

    pub fn omega(&self, index: usize) -> Option<f64> {
        self.ln_omega[index].map(f64::exp)
    }
}

/// `ln(Γ(k + 1/2) Γ(1/2))`, the normaliser of the Poisson integral for `J_k`.
pub fn ln_omega(twice_k: i32) -> Option<f64> {
    (twice_k + 1 > 0).then(|| ln_gamma_half(twice_k + 1) + ln_gamma_half(1))
}

/// `J_k(t)` for `t >= 0`.
pub fn bessel_j(k: BesselOrder, t: f64) -> Result<f64> {
    check_argument(t)?;
    if t == 0.0 {
        return Ok(match k.twice_k {
            0 => 1.0,
            -1 => f64::INFINITY,
            _ => 0.0,
        });
    }
    if t <= SERIES_LIMIT {
        if k.twice_k == -1 {
            return Ok((2.0 / (PI * t)).sqrt() * t.cos());
        }
        return Ok(series_scaled(k.twice_k, t) * t.powf(k.value()));
    }
    Ok(if t > ASYMPTOTIC_LIMIT {
        hankel(k.value(), t)
    } else if k.is_integer() {
        miller_integer(k.twice_k / 2, t)
    } else {
        backward_half_integer(k.twice_k, t)
    })
}

/// `t^{-k} J_k(t)`, continuous at `t = 0` with value `1 / (2^k Γ(k+1))`.
pub fn bessel_scaled(k: BesselOrder, t: f64) -> Result<f64> {
    check_argument(t)?;
    if k.twice_k == -1 {
        // t^{1/2} J_{-1/2}(t) = sqrt(2/π) cos t
        return Ok((2.0 / PI).sqrt() * t.cos());
    }
    if t <= SERIES_LIMIT {
        return Ok(series_scaled(k.twice_k, t));
    }
    Ok(bessel_j(k, t)? / t.powf(k.value()))
}

/// Central-difference residual of `d/dt (t^k J_k(αt)) = α t^k J_{k-1}(αt)`.
pub fn derivative_identity_check(k: BesselOrder, alpha: f64, t: f64, h: f64) -> Result<f64> {
    if !(t > 0.0) || !(h > 0.0) || h >= t {
        return Err(Error::InvalidParameter(format!(
            "need 0 < h < t, got t = {t}, h = {h}"
        )));
    }
    let kv = k.value();
    let f = |s: f64| -> Result<f64> { Ok(s.powf(kv) * bessel_j(k, (alpha * s).abs())?) };
    let lhs = (f(t + h)? - f(t - h)?) / (2.0 * h);
    let rhs = alpha * t.powf(kv) * j_lowered(k, (alpha * t).abs())?;
    Ok((lhs - rhs).abs())
}

/// `J_{k-1}`, using `J_{-1} = -J_1` for the one negative integer order needed.
fn j_lowered(k: BesselOrder, t: f64) -> Result<f64> {
    if k.twice_k == 0 {
        return Ok(-bessel_j(BesselOrder::integer(1)?, t)?);
    }
    bessel_j(BesselOrder::from_twice(k.twice_k - 2)?, t)
}

fn check_argument(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "Bessel argument must be finite and >= 0, got {t}"
        )))
    }
}

/// `t^{-k} J_k(t) = Σ_j (-1)^j (t/2)^{2j} / (2^k j! Γ(j+k+1))`.
fn series_scaled(twice_k: i32, t: f64) -> f64 {
    let k = twice_k as f64 / 2.0;
    let q = -(t * t) / 4.0;
    let mut term = (-(k * std::f64::consts::LN_2) - ln_gamma_half(twice_k + 2)).exp();
    let mut sum = term;
    for j in 1..200 {
        let jf = j as f64;
        term *= q / (jf * (jf + k));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn miller_integer(n: i32, t: f64) -> f64 {
    let top = start_index(n as f64, t);
    let top = top + top % 2;
    let mut next = 0.0; // J_{j+1}
    let mut cur = 1e-300; // J_j
    let mut norm = 0.0;
    let mut wanted = 0.0;
    let mut j = top;
    while j > 0 {
        // J_{j-1} = (2j / t) J_j - J_{j+1}
        let prev = (2.0 * j as f64 / t) * cur - next;
        next = cur;
        cur = prev;
        j -= 1;
        if j % 2 == 0 && j > 0 {
            norm += 2.0 * cur;
        }
        if j == n {
            wanted = cur;
        }
        if cur.abs() > 1e250 {
            next *= 1e-250;
            cur *= 1e-250;
            norm *= 1e-250;
            wanted *= 1e-250;
        }
    }
    if n == 0 {
        wanted = cur;
    }
    norm += cur;
    wanted / norm
}

fn backward_half_integer(twice_k: i32, t: f64) -> f64 {
    let s = (2.0 / (PI * t)).sqrt();
    let j_half = s * t.sin();
    let j_mhalf = s * t.cos();
    if twice_k == -1 {
        return j_mhalf;
    }
    if twice_k == 1 {
        return j_half;
    }
    // backward recurrence over orders top - 1/2, ..., 1/2, -1/2
    let top = start_index(twice_k as f64 / 2.0, t);
    let mut next = 0.0; // J_{ν+1}
    let mut cur = 1e-300; // J_ν with ν = top + 1/2
    let mut wanted = 0.0;
    let mut nu2 = 2 * top + 1; // twice the current order
    while nu2 > -1 {
        let nu = nu2 as f64 / 2.0;
        let prev = (2.0 * nu / t) * cur - next;
        next = cur;
        cur = prev;
        nu2 -= 2;
        if nu2 == twice_k {
            wanted = cur;
        }
        if cur.abs() > 1e250 {
            next *= 1e-250;
            cur *= 1e-250;
            wanted *= 1e-250;
        }
    }
    // now cur ~ J_{-1/2}, next ~ J_{1/2}
    if j_mhalf.abs() >= j_half.abs() {
        wanted * j_mhalf / cur
    } else {
        wanted * j_half / next
    }
}

/// `J_ν(t) ~ sqrt(2/(πt)) (P cos χ - Q sin χ)`, `χ = t - (ν/2 + 1/4)π`.
fn hankel(nu: f64, t: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term: f64 = 1.0;
    for k in 1..100 {
        let odd = (2 * k - 1) as f64;
        let next = term * (mu - odd * odd) / (k as f64 * 8.0 * t);
        if next.abs() > term.abs() {
            break;
        }
        term = next;
        // a_k / t^k enters P (even k) or Q (odd k) with sign (-1)^{floor(k/2)}
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let phase = (nu / 2.0 + 0.25) * PI;
    let (st, ct) = t.sin_cos();
    let (sp, cp) = phase.sin_cos();
    let cos_chi = ct * cp + st * sp;
    let sin_chi = st * cp - ct * sp;
    (2.0 / (PI * t)).sqrt() * (p * cos_chi - q * sin_chi)
}

fn start_index(order: f64, t: f64) -> i32 {
    let base = order.max(t);
    (base + 20.0 + 8.0 * base.cbrt()).ceil() as i32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(twice_k: i32) -> BesselOrder {
        BesselOrder::from_twice(twice_k).unwrap()
    }

    /// Bessel's integral `J_n(t) = (1/π) ∫_0^π cos(nθ - t sin θ) dθ`; the
    /// integrand is smooth and periodic so the trapezoid rule is spectral.
    fn integral_oracle(n: i32, t: f64) -> f64 {
        let steps = 4000;
        let h = PI / steps as f64;
        let f = |th: f64| (n as f64 * th - t * th.sin()).cos();
        let mut sum = 0.5 * (f(0.0) + f(PI));
        for i in 1..steps {
            sum += f(i as f64 * h);
        }
        sum * h / PI
    }

    /// Spherical Bessel closed forms.
    fn half_integer_oracle(twice_k: i32, t: f64) -> f64 {
        let s = (2.0 / (PI * t)).sqrt();
        let (sn, cs) = t.sin_cos();
        s * match twice_k {
            -1 => cs,
            1 => sn,
            3 => sn / t - cs,
            5 => (3.0 / (t * t) - 1.0) * sn - 3.0 * cs / t,
            7 => (15.0 / t.powi(3) - 6.0 / t) * sn - (15.0 / (t * t) - 1.0) * cs,
            _ => unreachable!(),
        }
    }

    fn scale(t: f64, value: f64) -> f64 {
        value.abs().max((2.0 / (PI * t)).sqrt().min(1.0))
    }

    #[test]
    fn frozen_values() {
        assert!((bessel_j(order(2), 1.0).unwrap() - 0.440_050_585_744_933_5).abs() < 1e-15);
        assert!((bessel_j(order(0), 10.0).unwrap() + 0.245_935_764_451_348_3).abs() < 1e-14);
        assert!((bessel_j(order(2), 10.0).unwrap() - 0.043_472_746_168_861_44).abs() < 1e-14);
        let v = bessel_j(order(1), PI / 2.0).unwrap();
        assert!((v - 2.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn values_at_zero() {
        assert_eq!(bessel_j(order(0), 0.0).unwrap(), 1.0);
        for tk in 1..=MAX_TWICE_K {
            assert_eq!(bessel_j(order(tk), 0.0).unwrap(), 0.0);
        }
        assert_eq!(bessel_scaled(order(0), 0.0).unwrap(), 1.0);
        let half = bessel_scaled(order(1), 0.0).unwrap();
        assert!((half - (2.0 / PI).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn integer_orders_match_integral() {
        for n in 0..=4 {
            for i in 0..=120 {
                let t = 0.05 + 0.5 * i as f64;
                let got = bessel_j(BesselOrder::integer(n).unwrap(), t).unwrap();
                let want = integral_oracle(n, t);
                let err = (got - want).abs() / scale(t, want);
                assert!(err < 1e-12, "J_{n}({t}): {got} vs {want}, err {err:e}");
            }
        }
    }

    #[test]
    fn half_integer_orders_match_closed_forms() {
        for tk in [-1, 1, 3, 5, 7] {
            for i in 0..=120 {
                let t = 0.05 + 0.5 * i as f64;
                let got = bessel_j(order(tk), t).unwrap();
                let want = half_integer_oracle(tk, t);
                // the closed forms themselves cancel for small t at higher orders
                let floor = if tk >= 5 && t < 1.0 { 1e-10 } else { 1e-12 };
                let err = (got - want).abs() / scale(t, want);
                assert!(err < floor, "J_{tk}/2({t}): {got} vs {want}, err {err:e}");
            }
        }
    }

    #[test]
    fn large_argument_absolute_accuracy() {
        for n in 0..=3 {
            for t in [31.0, 47.3, 99.9, 250.0, 600.5] {
                let got = bessel_j(BesselOrder::integer(n).unwrap(), t).unwrap();
                let want = integral_oracle(n, t);
                assert!((got - want).abs() < 1e-12, "J_{n}({t})");
            }
        }
    }

    #[test]
    fn scaled_continuity_at_small_arguments() {
        for tk in -1..=8 {
            let k = order(tk);
            let t = 1e-3;
            let direct = bessel_j(k, t).unwrap() / t.powf(k.value());
            let scaled = bessel_scaled(k, t).unwrap();
            assert!((direct - scaled).abs() <= 1e-12 * scaled.abs().max(1.0));
        }
        // scaled at 10 equals J_1(10)/10
        let s = bessel_scaled(order(2), 10.0).unwrap();
        assert!((s - 0.004_347_274_616_886_144).abs() < 1e-15);
    }

    #[test]
    fn recurrence_relation() {
        for tk in 1..=10 {
            let k = tk as f64 / 2.0;
            for i in 0..200 {
                let t = 0.1 + 0.25 * i as f64;
                let lo = if tk == 2 {
                    // k = 1, lower order 0
                    bessel_j(order(0), t).unwrap()
                } else {
                    bessel_j(order(tk - 2), t).unwrap()
                };
                let mid = bessel_j(order(tk), t).unwrap();
                let hi = bessel_j(order(tk + 2), t).unwrap();
                let res = (lo + hi - 2.0 * k / t * mid).abs();
                assert!(res < 1e-10, "k = {k}, t = {t}: {res:e}");
            }
        }
    }

    #[test]
    fn decay_envelope() {
        for tk in -1..=8 {
            let mut worst: f64 = 0.0;
            let mut t = 100.0;
            while t <= 1000.0 {
                worst = worst.max(bessel_j(order(tk), t).unwrap().abs() * t.sqrt());
                t += 0.37;
            }
            assert!(worst <= 1.0, "order {tk}/2: {worst}");
        }
    }

    #[test]
    fn derivative_identity() {
        let r = derivative_identity_check(order(2), 1.0, 2.0, 1e-4).unwrap();
        assert!(r < 1e-7, "{r:e}");
        let r = derivative_identity_check(order(3), 2.0, 1.0, 1e-4).unwrap();
        assert!(r < 1e-7, "{r:e}");
        let r = derivative_identity_check(order(0), 1.5, 3.0, 1e-4).unwrap();
        assert!(r < 1e-7, "{r:e}");
        let r = derivative_identity_check(order(4), 0.0, 1.0, 1e-4).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn constants() {
        assert!((gamma_half(1) - PI.sqrt()).abs() < 1e-15);
        assert!((gamma_half(3) - PI.sqrt() / 2.0).abs() < 1e-15);
        assert!((gamma_half(10) - 24.0).abs() < 1e-12);
        assert!((sphere_area(2) - 2.0 * PI).abs() < 1e-14);
        assert!((sphere_area(3) - 4.0 * PI).abs() < 1e-14);
        let c = GeometricConstants::new(2).unwrap();
        assert!((c.sigma_m - 2.0 * PI).abs() < 1e-14);
        // ω_0 = Γ(1/2)^2 = π
        assert!((c.omega(0).unwrap() - PI).abs() < 1e-14);
        let c3 = GeometricConstants::new(3).unwrap();
        assert!((c3.sigma_m - PI * PI).abs() < 1e-13);
    }

    #[test]
    fn unsupported_orders() {
        assert_eq!(
            BesselOrder::from_twice(-2),
            Err(Error::UnsupportedOrder { twice_k: -2 })
        );
        assert!(BesselOrder::from_twice(MAX_TWICE_K + 1).is_err());
        assert!(bessel_j(order(0), -1.0).is_err());
    }
}
