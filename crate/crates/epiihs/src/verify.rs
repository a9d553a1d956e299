//! Named verification suites shared by the CLI `verify` command and the
//! acceptance tests.
//!
//! Every check compares two independent computation routes (or a route
//! against an analytic constant) and records the measured deviation next to
//! its tolerance, so a report alone is enough to audit a run.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational};

use crate::exact::{
    brute_force_sum, harmonic_sum_exact, partition_sum, partition_weight_sum,
    qseries_coefficient, Cutoff, HarmonicSpec,
};
use crate::quad::{
    mc_harmonic_infinite_with_threads, multibeta_check_with_threads, quad_m2, worker_count,
    McEstimate, Quad1DConfig,
};
use crate::report::Check;
use crate::series::{genfunc_coeffs_finite, genfunc_coeffs_infinite, infinite_tail_bound};
use crate::special::{beta_limit, gamma_complex, gamma_product, zeta_ref};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Exact,
    Series,
    Gamma,
    Integral,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Suite::Exact),
            "series" => Ok(Suite::Series),
            "gamma" => Ok(Suite::Gamma),
            "integral" => Ok(Suite::Integral),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidInput(format!(
                "unknown suite '{other}'; expected exact|series|gamma|integral|all"
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::Exact => "exact",
            Suite::Series => "series",
            Suite::Gamma => "gamma",
            Suite::Integral => "integral",
            Suite::All => "all",
        };
        write!(f, "{name}")
    }
}

/// Runs the chosen suite; `seed` feeds the Monte Carlo checks.
pub fn run_suite(suite: Suite, seed: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Exact | Suite::All) {
        checks.extend(exact_checks()?);
    }
    if matches!(suite, Suite::Series | Suite::All) {
        checks.extend(series_checks()?);
    }
    if matches!(suite, Suite::Gamma | Suite::All) {
        checks.extend(gamma_checks()?);
    }
    if matches!(suite, Suite::Integral | Suite::All) {
        checks.extend(integral_checks(seed)?);
    }
    Ok(checks)
}

fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Exact three-way route equality and the partition-product identity.
fn exact_checks() -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    let mut mismatches = 0u64;
    for a in 1..=3u32 {
        for k in 0..=4u32 {
            for n in 1..=8u64 {
                let spec = HarmonicSpec::new(a, k, Cutoff::Finite(n))?;
                let brute = brute_force_sum(&spec)?;
                if harmonic_sum_exact(&spec)? != brute || partition_sum(&spec)? != brute {
                    mismatches += 1;
                }
            }
        }
    }
    checks.push(Check::from_measurement(
        "exact/three-way-grid",
        mismatches as f64,
        0.0,
    ));

    let mut identity_mismatches = 0u64;
    for n_max in 1..=5u64 {
        for m_order in 0..=12u64 {
            for t in [rational(1, 1), rational(1, 2), rational(2, 3)] {
                for a in [1u32, 2] {
                    let lhs = qseries_coefficient(n_max, m_order, &t, a)?;
                    let rhs = partition_weight_sum(n_max, m_order, &t, a)?;
                    if lhs != rhs {
                        identity_mismatches += 1;
                    }
                }
            }
        }
    }
    checks.push(Check::from_measurement(
        "exact/partition-product-grid",
        identity_mismatches as f64,
        0.0,
    ));

    let one = rational(1, 1);
    let mut empty_mismatches = 0u64;
    for a in [1u32, 3] {
        for n in [1u64, 6] {
            let spec = HarmonicSpec::new(a, 0, Cutoff::Finite(n))?;
            if brute_force_sum(&spec)? != one
                || harmonic_sum_exact(&spec)? != one
                || partition_sum(&spec)? != one
            {
                empty_mismatches += 1;
            }
        }
    }
    checks.push(Check::from_measurement(
        "exact/empty-index-one",
        empty_mismatches as f64,
        0.0,
    ));

    let oversized = HarmonicSpec::new(1, 8, Cutoff::Finite(200))?;
    let guard_ok = matches!(
        brute_force_sum(&oversized),
        Err(Error::EnumerationTooLarge { .. })
    ) && matches!(
        partition_sum(&oversized),
        Err(Error::EnumerationTooLarge { .. })
    );
    checks.push(Check::from_measurement(
        "exact/enumeration-guard",
        if guard_ok { 0.0 } else { 1.0 },
        0.0,
    ));

    Ok(checks)
}

/// Finite generating-function coefficients against the recurrence, and the
/// truncation bound for the infinite series.
fn series_checks() -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    let mut mismatches = 0u64;
    for a in 1..=3u32 {
        for n in 1..=10u64 {
            let series = genfunc_coeffs_finite(a, n, 8)?;
            for k in 0..=8u32 {
                let spec = HarmonicSpec::new(a, k, Cutoff::Finite(n))?;
                if series.coeff(k as usize) != Some(&harmonic_sum_exact(&spec)?) {
                    mismatches += 1;
                }
            }
        }
    }
    checks.push(Check::from_measurement(
        "series/finite-theorem-grid",
        mismatches as f64,
        0.0,
    ));

    for (m, t) in [(2u32, 0.8f64), (3, 0.7)] {
        let short = genfunc_coeffs_infinite(m, 32)?.eval(t);
        let long = genfunc_coeffs_infinite(m, 64)?.eval(t);
        let bound = infinite_tail_bound(m, t, 32)?;
        checks.push(Check::from_measurement(
            format!("series/infinite-tail-bound[m={m},t={t}]"),
            (long - short).abs(),
            bound + 1e-10,
        ));
    }

    Ok(checks)
}

/// Gamma reflection, the product law against the truncated series, and the
/// beta-limit route to gamma.
fn gamma_checks() -> Result<Vec<Check>> {
    use num::complex::Complex64;

    let mut checks = Vec::new();
    let pi = std::f64::consts::PI;

    for i in 1..=9u32 {
        let t = i as f64 / 10.0;
        let product = gamma_product(2, t)?;
        let want = pi * t / (pi * t).sin();
        checks.push(Check::from_measurement(
            format!("gamma/reflection[t={t}]"),
            (product.re - want).abs() / want,
            1e-12,
        ));
    }

    for m in [2u32, 3, 4] {
        for t in [0.2f64, 0.5] {
            let product = gamma_product(m, t)?;
            let series = genfunc_coeffs_infinite(m, 32)?.eval(t);
            // Geometric truncation tail; x < 1 everywhere on this grid.
            let x = zeta_ref(m) * t.powi(m as i32);
            let geometric_tail = x.powi(33) / (1.0 - x);
            checks.push(Check::from_measurement(
                format!("gamma/product-vs-series[m={m},t={t}]"),
                (product.re - series).abs(),
                geometric_tail + 1e-10,
            ));
            checks.push(Check::from_measurement(
                format!("gamma/product-imag[m={m},t={t}]"),
                product.im.abs(),
                1e-11,
            ));
        }
    }

    let sqrt_pi = gamma_complex(Complex64::new(0.5, 0.0))?.re;
    let mut previous = f64::INFINITY;
    let mut monotone_violations = 0u64;
    let mut final_delta = f64::NAN;
    for n in [10u64, 100, 1000, 10_000] {
        let delta = (beta_limit(Complex64::new(0.5, 0.0), n)?.re - sqrt_pi).abs();
        if delta >= previous {
            monotone_violations += 1;
        }
        previous = delta;
        final_delta = delta;
    }
    checks.push(Check::from_measurement(
        "gamma/beta-limit-monotone",
        monotone_violations as f64,
        0.0,
    ));
    checks.push(Check::from_measurement(
        "gamma/beta-limit-final",
        final_delta,
        1e-4,
    ));

    Ok(checks)
}

fn estimates_bitwise_equal(a: &McEstimate, b: &McEstimate) -> bool {
    a.mean.re.to_bits() == b.mean.re.to_bits()
        && a.mean.im.to_bits() == b.mean.im.to_bits()
        && a.stderr.to_bits() == b.stderr.to_bits()
        && a.stderr_im.to_bits() == b.stderr_im.to_bits()
        && a.n_rejected == b.n_rejected
}

/// Quadrature and Monte Carlo against the series references.
fn integral_checks(seed: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    let config = Quad1DConfig::default();
    let reference = genfunc_coeffs_infinite(2, 5)?;
    for k in 0..=5u32 {
        let got = quad_m2(k, &config)?;
        let want = reference.coeff(k as usize).copied().expect("k in range");
        checks.push(Check::from_measurement(
            format!("integral/quad[k={k}]"),
            (got - want).abs(),
            1e-10,
        ));
    }

    let threads = worker_count();
    for (m, k, n_samples) in [(2u32, 1u32, 1_000_000u64), (3, 1, 10_000_000), (4, 1, 10_000_000), (2, 2, 1_000_000)]
    {
        let est = mc_harmonic_infinite_with_threads(m, k, n_samples, seed, threads)?;
        let want = genfunc_coeffs_infinite(m, k as usize)?
            .coeff(k as usize)
            .copied()
            .expect("k in range");
        checks.push(Check::from_measurement(
            format!("integral/mc[m={m},k={k}]"),
            (est.mean.re - want).abs(),
            4.0 * est.stderr,
        ));
        checks.push(Check::from_measurement(
            format!("integral/mc-imag[m={m},k={k}]"),
            est.mean.im.abs(),
            4.0 * est.stderr_im,
        ));
    }

    let uniform = multibeta_check_with_threads(&[1.0, 1.0, 1.0], 1_000_000, seed, threads)?;
    checks.push(Check::from_measurement(
        "integral/multibeta-uniform-exact",
        (uniform.mean.re - 0.5).abs()
            + uniform.mean.im.abs()
            + uniform.stderr
            + uniform.stderr_im,
        0.0,
    ));
    let skewed = multibeta_check_with_threads(&[2.0, 3.0], 1_000_000, seed, threads)?;
    checks.push(Check::from_measurement(
        "integral/multibeta[2,3]",
        (skewed.mean.re - 1.0 / 12.0).abs(),
        4.0 * skewed.stderr,
    ));
    checks.push(Check::from_measurement(
        "integral/multibeta-imag[2,3]",
        skewed.mean.im.abs() + skewed.stderr_im,
        0.0,
    ));

    let single = mc_harmonic_infinite_with_threads(2, 1, 1_000_000, seed, 1)?;
    let quad_threads = mc_harmonic_infinite_with_threads(2, 1, 1_000_000, seed, 4)?;
    checks.push(Check::from_measurement(
        "integral/mc-determinism-threads",
        if estimates_bitwise_equal(&single, &quad_threads) {
            0.0
        } else {
            1.0
        },
        0.0,
    ));

    Ok(checks)
}
