//! End-to-end acceptance checks, one test per shipped guarantee.
//!
//! Each test pins a user-visible contract of the crate: exact-arithmetic
//! identities hold with zero tolerance, analytic constants are met at the
//! stated precision, Monte Carlo estimates sit within four standard errors
//! of their references under the fixed seed, and every run fits its wall
//! clock budget on a single core.

use std::process::Command;
use std::time::{Duration, Instant};

use epiihs::exact::{
    brute_force_sum, harmonic_sum_exact, partition_sum, partition_weight_sum,
    qseries_coefficient, Cutoff, HarmonicSpec,
};
use epiihs::quad::{
    mc_harmonic_infinite_with_threads, multibeta_check, quad_m2, Quad1DConfig,
};
use epiihs::series::{genfunc_coeffs_finite, genfunc_coeffs_infinite};
use epiihs::special::{beta_limit, gamma_product};
use num::complex::Complex64;
use num::{BigInt, BigRational};

const ZETA_2: f64 = 1.6449340668482264;
const ZETA_3: f64 = 1.2020569031595942;

fn zeta_4() -> f64 {
    std::f64::consts::PI.powi(4) / 90.0
}

fn assert_budget(start: Instant, budget: Duration, what: &str) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < budget,
        "{what} took {elapsed:?}, budget {budget:?}"
    );
}

/// The three exact routes agree rationally on the full small grid.
#[test]
fn exact_three_route_grid() {
    let start = Instant::now();
    for a in 1..=3u32 {
        for k in 0..=4u32 {
            for n in 1..=8u64 {
                let spec = HarmonicSpec::new(a, k, Cutoff::Finite(n)).unwrap();
                let brute = brute_force_sum(&spec).unwrap();
                let recurrence = harmonic_sum_exact(&spec).unwrap();
                let partition = partition_sum(&spec).unwrap();
                assert_eq!(brute, recurrence, "a={a} k={k} N={n}");
                assert_eq!(brute, partition, "a={a} k={k} N={n}");
            }
        }
    }
    assert_budget(start, Duration::from_secs(10), "three-route grid");
}

/// The q-series coefficient equals the partition weight sum, exactly, for
/// every order, cutoff, exponent, and rational evaluation point in the grid.
#[test]
fn qseries_equals_partition_weights() {
    let start = Instant::now();
    let points = [
        BigRational::new(BigInt::from(1), BigInt::from(1)),
        BigRational::new(BigInt::from(1), BigInt::from(2)),
        BigRational::new(BigInt::from(2), BigInt::from(3)),
    ];
    for a in 1..=2u32 {
        for n_max in 1..=5u64 {
            for m_order in 0..=12u64 {
                for t in &points {
                    let q = qseries_coefficient(n_max, m_order, t, a).unwrap();
                    let p = partition_weight_sum(n_max, m_order, t, a).unwrap();
                    assert_eq!(q, p, "a={a} N={n_max} M={m_order} t={t}");
                }
            }
        }
    }
    assert_budget(start, Duration::from_secs(10), "q-series grid");
}

/// Generating-function coefficients through Newton's identities reproduce
/// the recurrence values exactly at every retained order.
#[test]
fn genfunc_finite_matches_recurrence() {
    let start = Instant::now();
    for a in 1..=3u32 {
        for n in 1..=10u64 {
            let series = genfunc_coeffs_finite(a, n, 8).unwrap();
            for k in 0..=8u32 {
                let spec = HarmonicSpec::new(a, k, Cutoff::Finite(n)).unwrap();
                let direct = harmonic_sum_exact(&spec).unwrap();
                assert_eq!(
                    series.coeff(k as usize),
                    Some(&direct),
                    "a={a} N={n} k={k}"
                );
            }
        }
    }
    assert_budget(start, Duration::from_secs(5), "finite genfunc grid");
}

/// The gamma product matches its reflection closed form at m = 2 and stays
/// within the geometric tail bound of the truncated coefficient series.
#[test]
fn gamma_product_reflection_and_series_tail() {
    let start = Instant::now();

    // m = 2 collapses to pi t / sin(pi t).
    for i in 1..=9u32 {
        let t = i as f64 / 10.0;
        let reference = std::f64::consts::PI * t / (std::f64::consts::PI * t).sin();
        let product = gamma_product(2, t).unwrap();
        let rel = (product - Complex64::new(reference, 0.0)).norm() / reference;
        assert!(rel <= 1e-12, "t={t}: relative gap {rel:e}");
    }

    // Truncating the coefficient series at K = 32 leaves at most the
    // geometric tail x^(K+1)/(1-x), x = zeta(m) t^m.
    const K: usize = 32;
    for (m, zeta_m) in [(2u32, ZETA_2), (3, ZETA_3), (4, zeta_4())] {
        let series = genfunc_coeffs_infinite(m, K).unwrap();
        for t in [0.2f64, 0.5] {
            let x = zeta_m * t.powi(m as i32);
            let tail = x.powi(K as i32 + 1) / (1.0 - x);
            let product = gamma_product(m, t).unwrap();
            let gap = (product.re - series.eval(t)).abs();
            assert!(
                gap <= tail + 1e-10,
                "m={m} t={t}: gap {gap:e}, allowance {:e}",
                tail + 1e-10
            );
        }
    }
    assert_budget(start, Duration::from_secs(1), "gamma product checks");
}

/// The tanh-sinh moment integral reproduces zeta(2) at k = 1.
#[test]
fn quad_reproduces_zeta_two() {
    let start = Instant::now();
    let value = quad_m2(1, &Quad1DConfig::default()).unwrap();
    let gap = (value - ZETA_2).abs();
    assert!(gap <= 1e-10, "got {value}, gap {gap:e}");
    assert_budget(start, Duration::from_secs(1), "quadrature");
}

/// Seeded simplex Monte Carlo lands within four standard errors of each
/// series reference, with a real-axis imaginary part at the same confidence.
#[test]
fn mc_matches_infinite_references() {
    let start = Instant::now();
    let cases: [(u32, u32, u64, f64); 4] = [
        (2, 1, 1_000_000, ZETA_2),
        (3, 1, 10_000_000, ZETA_3),
        (4, 1, 10_000_000, zeta_4()),
        (2, 2, 1_000_000, 7.0 * std::f64::consts::PI.powi(4) / 360.0),
    ];
    for (m, k, n, reference) in cases {
        let est = mc_harmonic_infinite_with_threads(m, k, n, 42, 0).unwrap();
        assert!(est.stderr.is_finite() && est.stderr > 0.0, "m={m} k={k}");
        let gap = (est.mean.re - reference).abs();
        assert!(
            gap <= 4.0 * est.stderr,
            "m={m} k={k}: gap {gap:e} > 4 stderr {:e}",
            4.0 * est.stderr
        );
        assert!(
            est.mean.im.abs() <= 4.0 * est.stderr_im,
            "m={m} k={k}: imaginary mean {:e} > 4 stderr_im {:e}",
            est.mean.im.abs(),
            4.0 * est.stderr_im
        );
    }
    assert_budget(start, Duration::from_secs(60), "seeded Monte Carlo runs");
}

/// The scaled beta values N^z B(N, z) approach gamma(1/2) monotonically on a
/// decade ladder and land within 1e-4 at N = 10^4.
#[test]
fn beta_limit_monotone_to_sqrt_pi() {
    let start = Instant::now();
    let half = Complex64::new(0.5, 0.0);
    let target = std::f64::consts::PI.sqrt();
    let mut last = f64::INFINITY;
    for n in [10u64, 100, 1_000, 10_000] {
        let value = beta_limit(half, n).unwrap();
        let gap = (value - Complex64::new(target, 0.0)).norm();
        assert!(gap < last, "N={n}: gap {gap:e} did not decrease from {last:e}");
        last = gap;
    }
    assert!(last < 1e-4, "gap at N=10^4 is {last:e}");
    assert_budget(start, Duration::from_secs(1), "beta limit ladder");
}

/// The simplex estimator of the multiple beta integral reproduces the gamma
/// quotient normalization under the fixed seed.
#[test]
fn multibeta_normalizations() {
    let start = Instant::now();
    // Uniform exponents: every sample is the constant 1/(m-1)!.
    let uniform = multibeta_check(&[1.0, 1.0, 1.0], 1_000_000, 42).unwrap();
    assert!((uniform.mean.re - 0.5).abs() <= 4.0 * uniform.stderr);
    let skewed = multibeta_check(&[2.0, 3.0], 1_000_000, 42).unwrap();
    assert!(
        (skewed.mean.re - 1.0 / 12.0).abs() <= 4.0 * skewed.stderr,
        "B(2,3): mean {} stderr {:e}",
        skewed.mean.re,
        skewed.stderr
    );
    assert_budget(start, Duration::from_secs(10), "multibeta runs");
}

/// Re-running every seeded estimate through the binary with
/// `EPIIHS_THREADS` of 1 and 4 reproduces bit-identical results.
#[test]
fn mc_bit_identical_across_thread_env() {
    let bin = env!("CARGO_BIN_EXE_epiihs");
    let result_json = |threads: &str, m: u32, k: u32, n: u64| -> String {
        let output = Command::new(bin)
            .args([
                "integrate",
                "-m",
                &m.to_string(),
                "-k",
                &k.to_string(),
                "--engine",
                "mc",
                "-n",
                &n.to_string(),
                "--seed",
                "42",
            ])
            .env("EPIIHS_THREADS", threads)
            .output()
            .expect("binary runs");
        assert!(
            output.status.success(),
            "m={m} k={k} threads={threads}: {}",
            String::from_utf8_lossy(&output.stderr)
        );
        let report: serde_json::Value =
            serde_json::from_slice(&output.stdout).expect("report is JSON");
        report["result"].to_string()
    };
    for (m, k, n) in [
        (2u32, 1u32, 1_000_000u64),
        (3, 1, 10_000_000),
        (4, 1, 10_000_000),
        (2, 2, 1_000_000),
    ] {
        let single = result_json("1", m, k, n);
        let quad_threads = result_json("4", m, k, n);
        assert_eq!(single, quad_threads, "m={m} k={k}");
    }
}
