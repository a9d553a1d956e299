//! Generating-function coefficients for harmonic sums.
//!
//! The finite generating function is
//!
//! ```text
//! sum_{k>=0} S_{a_k}(N) t^(a k) = prod_{n<=N} n^a / (n^a - t^a)
//! ```
//!
//! whose coefficients are complete homogeneous symmetric functions in
//! `1/1^a, ..., 1/N^a`. Newton's identity `k h_k = sum_{r<=k} p_r h_(k-r)`
//! recovers them from power sums: `p_r = sum_{n<=N} n^(-a r)` for finite
//! cutoffs, `p_r = zeta(m r)` in the infinite limit (`m >= 2`).

use num::traits::{FromPrimitive, One, Zero};
use num::{BigInt, BigRational, BigUint};

use crate::special::{zeta_minus_one, zeta_ref};
use crate::{Error, Result};

/// Coefficients of a series in powers of `t^step`: entry `k` multiplies
/// `t^(step k)`. Entry 0 is always 1 for the series built here.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<T> {
    coeffs: Vec<T>,
    step: u32,
}

impl<T> PowerSeries<T> {
    pub fn from_coeffs(coeffs: Vec<T>, step: u32) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("series needs at least entry 0".into()));
        }
        if step == 0 {
            return Err(Error::InvalidInput("series step must be >= 1".into()));
        }
        Ok(Self { coeffs, step })
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&T> {
        self.coeffs.get(k)
    }

    /// Highest retained index `K`; powers of `t^step` beyond it are dropped.
    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn step(&self) -> u32 {
        self.step
    }
}

impl PowerSeries<f64> {
    /// Horner evaluation in `x = t^step`.
    pub fn eval(&self, t: f64) -> f64 {
        let x = t.powi(self.step as i32);
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl PowerSeries<BigRational> {
    pub fn to_f64(&self) -> PowerSeries<f64> {
        use num::ToPrimitive;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect();
        PowerSeries {
            coeffs,
            step: self.step,
        }
    }
}

/// Exact power sums `p_r = sum_{n<=cutoff} n^(-a r)` for `r = 1..=r_max`.
pub fn power_sums(a: u32, cutoff: u64, r_max: usize) -> Result<Vec<BigRational>> {
    if a == 0 {
        return Err(Error::InvalidInput("exponent a must be >= 1".into()));
    }
    if cutoff == 0 {
        return Err(Error::InvalidInput("cutoff must be >= 1".into()));
    }
    let mut out = Vec::with_capacity(r_max);
    for r in 1..=r_max {
        let exp = (r as u64)
            .checked_mul(a as u64)
            .filter(|&e| e <= u32::MAX as u64)
            .ok_or_else(|| Error::InvalidInput("exponent a*r overflows".into()))?
            as u32;
        let mut sum = BigRational::zero();
        for n in 1..=cutoff {
            sum += BigRational::new(BigInt::one(), BigInt::from(BigUint::from(n).pow(exp)));
        }
        out.push(sum);
    }
    Ok(out)
}

/// Newton's identities: complete homogeneous `h_0..h_k_max` from power sums
/// `p_1..p_k_max` (entry `r-1` holds `p_r`). Panics if too few power sums
/// are supplied.
pub fn homogeneous_from_power_sums<T>(power: &[T], k_max: usize) -> Vec<T>
where
    T: Clone
        + Zero
        + One
        + FromPrimitive
        + std::ops::Add<Output = T>
        + std::ops::Mul<Output = T>
        + std::ops::Div<Output = T>,
{
    assert!(
        power.len() >= k_max,
        "need {k_max} power sums, got {}",
        power.len()
    );
    let mut h: Vec<T> = vec![T::one()];
    for k in 1..=k_max {
        let mut s = T::zero();
        for r in 1..=k {
            s = s + power[r - 1].clone() * h[k - r].clone();
        }
        h.push(s / T::from_usize(k).expect("small integer fits"));
    }
    h
}

/// Exact generating-function coefficients for a finite cutoff: entry `k` is
/// `S_{a_k}(cutoff)`.
pub fn genfunc_coeffs_finite(
    a: u32,
    cutoff: u64,
    k_max: usize,
) -> Result<PowerSeries<BigRational>> {
    let p = power_sums(a, cutoff, k_max)?;
    let h = homogeneous_from_power_sums(&p, k_max);
    PowerSeries::from_coeffs(h, a)
}

/// Infinite-limit generating-function coefficients: entry `k` is
/// `S_{m_k}(inf)`, built from `p_r = zeta(m r)`. Requires `m >= 2`.
pub fn genfunc_coeffs_infinite(m: u32, k_max: usize) -> Result<PowerSeries<f64>> {
    if m < 2 {
        return Err(Error::InvalidInput(
            "infinite-limit series needs exponent m >= 2".into(),
        ));
    }
    let p: Vec<f64> = (1..=k_max.max(1))
        .map(|r| match (r as u64).checked_mul(m as u64) {
            Some(e) if e <= u32::MAX as u64 => zeta_ref(e as u32),
            // Exponent beyond representable: every term past n = 1 underflows.
            _ => 1.0,
        })
        .collect();
    let h = homogeneous_from_power_sums(&p[..k_max], k_max);
    PowerSeries::from_coeffs(h, m)
}

/// Supremum of the infinite-limit coefficients,
/// `L_m = lim_k S_{m_k}(inf) = prod_{n>=2} (1 - n^(-m))^(-1)`,
/// computed as `exp(sum_{j>=1} (zeta(j m) - 1) / j)`.
pub fn infinite_coefficient_limit(m: u32) -> Result<f64> {
    if m < 2 {
        return Err(Error::InvalidInput(
            "coefficient limit needs exponent m >= 2".into(),
        ));
    }
    let mut log_sum = 0.0;
    for j in 1u64.. {
        let e = match j.checked_mul(m as u64) {
            Some(e) if e <= u32::MAX as u64 => e as u32,
            _ => break,
        };
        let term = zeta_minus_one(e) / j as f64;
        log_sum += term;
        if term < 1e-18 {
            break;
        }
    }
    Ok(log_sum.exp())
}

/// Upper bound on the truncation error
/// `|sum_{k>k_trunc} S_{m_k}(inf) t^(m k)|` for `|t| < 1`.
///
/// Minimum of the geometric bound `x^(K+1) / (1 - x)` with
/// `x = zeta(m) |t|^m` (valid only when `x < 1`) and the uniform bound
/// `L_m |t|^(m (K+1)) / (1 - |t|^m)`.
pub fn infinite_tail_bound(m: u32, t: f64, k_trunc: usize) -> Result<f64> {
    if m < 2 {
        return Err(Error::InvalidInput(
            "tail bound needs exponent m >= 2".into(),
        ));
    }
    if !t.is_finite() || t.abs() >= 1.0 {
        return Err(Error::InvalidInput("tail bound needs |t| < 1".into()));
    }
    let power = k_trunc as i32 + 1;
    let tm = t.abs().powi(m as i32);
    let x = zeta_ref(m) * tm;
    let geometric = if x < 1.0 {
        x.powi(power) / (1.0 - x)
    } else {
        f64::INFINITY
    };
    let uniform = infinite_coefficient_limit(m)? * tm.powi(power) / (1.0 - tm);
    Ok(geometric.min(uniform))
}
