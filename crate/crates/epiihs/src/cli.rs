//! Report-producing command implementations behind the `epiihs` binary.
//!
//! Each `cmd_*` function validates its inputs, computes, and assembles a
//! [`RunReport`]; the binary only parses flags, prints the report, and maps
//! errors to exit codes (0 success, 1 failed check, 2 invalid input,
//! 3 enumeration guard).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde_json::json;

use crate::exact::{brute_force_sum, harmonic_sum_exact, partition_sum, Cutoff, HarmonicSpec};
use crate::quad::{mc_harmonic_infinite, quad_m2, Quad1DConfig};
use crate::report::{rational_string, Check, ResultValue, RunReport};
use crate::series::{genfunc_coeffs_finite, genfunc_coeffs_infinite, infinite_tail_bound};
use crate::special::{gamma_product, finite_product, zeta_ref};
use crate::verify::{run_suite, Suite};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumMethod {
    Brute,
    Recurrence,
    Partition,
    Series,
}

impl FromStr for SumMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(SumMethod::Brute),
            "recurrence" => Ok(SumMethod::Recurrence),
            "partition" => Ok(SumMethod::Partition),
            "series" => Ok(SumMethod::Series),
            other => Err(Error::InvalidInput(format!(
                "unknown method '{other}'; expected brute|recurrence|partition|series"
            ))),
        }
    }
}

impl fmt::Display for SumMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SumMethod::Brute => "brute",
            SumMethod::Recurrence => "recurrence",
            SumMethod::Partition => "partition",
            SumMethod::Series => "series",
        };
        write!(f, "{name}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenfuncRoute {
    Gamma,
    Series,
    ProductFinite,
}

impl FromStr for GenfuncRoute {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gamma" => Ok(GenfuncRoute::Gamma),
            "series" => Ok(GenfuncRoute::Series),
            "product-finite" => Ok(GenfuncRoute::ProductFinite),
            other => Err(Error::InvalidInput(format!(
                "unknown route '{other}'; expected gamma|series|product-finite"
            ))),
        }
    }
}

impl fmt::Display for GenfuncRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            GenfuncRoute::Gamma => "gamma",
            GenfuncRoute::Series => "series",
            GenfuncRoute::ProductFinite => "product-finite",
        };
        write!(f, "{name}")
    }
}

/// Exit code for a failed command.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::EnumerationTooLarge { .. } => 3,
        _ => 2,
    }
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// `sum`: evaluate `S_{a_k}(N)` exactly (finite `N`) or through the
/// infinite-limit series (`N = inf`, series method only).
pub fn cmd_sum(a: u32, k: u32, cutoff: Cutoff, method: SumMethod) -> Result<RunReport> {
    let start = Instant::now();
    let spec = HarmonicSpec::new(a, k, cutoff)?;
    let inputs: BTreeMap<String, serde_json::Value> = [
        ("a".to_string(), json!(a)),
        ("k".to_string(), json!(k)),
        ("N".to_string(), json!(cutoff.to_string())),
        ("method".to_string(), json!(method.to_string())),
    ]
    .into_iter()
    .collect();

    let result = match cutoff {
        Cutoff::Finite(n) => {
            let value = match method {
                SumMethod::Brute => brute_force_sum(&spec)?,
                SumMethod::Recurrence => harmonic_sum_exact(&spec)?,
                SumMethod::Partition => partition_sum(&spec)?,
                SumMethod::Series => genfunc_coeffs_finite(a, n, k as usize)?
                    .coeff(k as usize)
                    .cloned()
                    .expect("series truncated at k"),
            };
            ResultValue::Rational {
                value: rational_string(&value),
            }
        }
        Cutoff::Infinite => {
            if method != SumMethod::Series {
                return Err(Error::InvalidInput(
                    "an infinite cutoff requires --method series".into(),
                ));
            }
            let value = genfunc_coeffs_infinite(a, k as usize)?
                .coeff(k as usize)
                .copied()
                .expect("series truncated at k");
            ResultValue::Float { value }
        }
    };

    Ok(RunReport {
        command: "sum".into(),
        inputs,
        result,
        checks: Vec::new(),
        seed: None,
        elapsed_ms: elapsed_ms(start),
    })
}

/// Truncation-independent error allowance of each genfunc route, used to
/// build pairwise tolerances.
fn route_bound(route: GenfuncRoute, m: u32, t: f64, k_trunc: usize, product_terms: u64, value: f64) -> Result<f64> {
    match route {
        // The gamma product is the analytic value; only rounding separates it.
        GenfuncRoute::Gamma => Ok(0.0),
        GenfuncRoute::Series => infinite_tail_bound(m, t, k_trunc),
        GenfuncRoute::ProductFinite => {
            // The dropped factors multiply to exp(sigma) with
            // sigma <= tau x / (1 - x/(N+1)^m), tau the zeta tail past N.
            let x = t.abs().powi(m as i32);
            let mut partial = 0.0;
            for n in (1..=product_terms).rev() {
                partial += (n as f64).powi(-(m as i32));
            }
            let tau = (zeta_ref(m) - partial).max(0.0);
            let y_next = x * ((product_terms + 1) as f64).powi(-(m as i32));
            let sigma = tau * x / (1.0 - y_next);
            Ok(value.abs() * sigma.exp_m1())
        }
    }
}

/// `genfunc`: evaluate the infinite-limit generating function at `t` by the
/// requested routes and cross-check every pair.
pub fn cmd_genfunc(
    m: u32,
    t: f64,
    routes: &[GenfuncRoute],
    product_terms: u64,
    k_trunc: usize,
) -> Result<RunReport> {
    let start = Instant::now();
    if m < 2 {
        return Err(Error::InvalidInput("genfunc needs m >= 2".into()));
    }
    if !t.is_finite() || t.abs() >= 1.0 {
        return Err(Error::InvalidInput("genfunc needs finite |t| < 1".into()));
    }
    if routes.is_empty() {
        return Err(Error::InvalidInput("no routes requested".into()));
    }

    let mut seen: Vec<GenfuncRoute> = Vec::new();
    let mut values: Vec<(GenfuncRoute, ResultValue, f64, f64)> = Vec::new();
    for &route in routes {
        if seen.contains(&route) {
            continue;
        }
        seen.push(route);
        let (result, re) = match route {
            GenfuncRoute::Gamma => {
                let v = gamma_product(m, t)?;
                (ResultValue::Complex { re: v.re, im: v.im }, v.re)
            }
            GenfuncRoute::Series => {
                let v = genfunc_coeffs_infinite(m, k_trunc)?.eval(t);
                (ResultValue::Float { value: v }, v)
            }
            GenfuncRoute::ProductFinite => {
                let v = finite_product(m, product_terms, t)?;
                (ResultValue::Float { value: v }, v)
            }
        };
        let bound = route_bound(route, m, t, k_trunc, product_terms, re)?;
        values.push((route, result, re, bound));
    }

    let mut checks = Vec::new();
    for (i, (route_i, result_i, re_i, bound_i)) in values.iter().enumerate() {
        if let ResultValue::Complex { im, .. } = result_i {
            checks.push(Check::from_measurement(
                format!("genfunc/{route_i}-imag"),
                im.abs(),
                1e-11,
            ));
        }
        for (route_j, _, re_j, bound_j) in values.iter().skip(i + 1) {
            checks.push(Check::from_measurement(
                format!("genfunc/{route_i}-vs-{route_j}"),
                (re_i - re_j).abs(),
                bound_i + bound_j + 1e-10,
            ));
        }
    }

    let inputs: BTreeMap<String, serde_json::Value> = [
        ("m".to_string(), json!(m)),
        ("t".to_string(), json!(t)),
        (
            "routes".to_string(),
            json!(seen.iter().map(|r| r.to_string()).collect::<Vec<_>>()),
        ),
        ("trunc".to_string(), json!(k_trunc)),
        ("product_terms".to_string(), json!(product_terms)),
    ]
    .into_iter()
    .collect();

    Ok(RunReport {
        command: "genfunc".into(),
        inputs,
        result: values[0].1.clone(),
        checks,
        seed: None,
        elapsed_ms: elapsed_ms(start),
    })
}

/// `integrate --engine quad`: the one-dimensional moment route, `m = 2` only.
pub fn cmd_integrate_quad(m: u32, k: u32, config: Quad1DConfig) -> Result<RunReport> {
    let start = Instant::now();
    if m != 2 {
        return Err(Error::InvalidInput(
            "the quad engine implements the m = 2 representation only".into(),
        ));
    }
    let value = quad_m2(k, &config)?;
    let reference = genfunc_coeffs_infinite(2, k as usize)?
        .coeff(k as usize)
        .copied()
        .expect("series truncated at k");
    let checks = vec![Check::from_measurement(
        "integrate/quad-vs-series",
        (value - reference).abs(),
        1e-10,
    )];
    let inputs: BTreeMap<String, serde_json::Value> = [
        ("m".to_string(), json!(m)),
        ("k".to_string(), json!(k)),
        ("engine".to_string(), json!("quad")),
        ("cutoff".to_string(), json!(config.cutoff)),
        ("levels".to_string(), json!(config.levels)),
    ]
    .into_iter()
    .collect();
    Ok(RunReport {
        command: "integrate".into(),
        inputs,
        result: ResultValue::Float { value },
        checks,
        seed: None,
        elapsed_ms: elapsed_ms(start),
    })
}

/// `integrate --engine mc`: the simplex Monte Carlo estimator, checked
/// against the series reference.
pub fn cmd_integrate_mc(m: u32, k: u32, n_samples: u64, seed: u64) -> Result<RunReport> {
    let start = Instant::now();
    let estimate = mc_harmonic_infinite(m, k, n_samples, seed)?;
    let reference = genfunc_coeffs_infinite(m, k as usize)?
        .coeff(k as usize)
        .copied()
        .expect("series truncated at k");
    let checks = vec![
        Check::from_measurement(
            "integrate/mc-vs-series",
            (estimate.mean.re - reference).abs(),
            4.0 * estimate.stderr,
        ),
        Check::from_measurement(
            "integrate/mc-imag",
            estimate.mean.im.abs(),
            4.0 * estimate.stderr_im,
        ),
    ];
    let inputs: BTreeMap<String, serde_json::Value> = [
        ("m".to_string(), json!(m)),
        ("k".to_string(), json!(k)),
        ("engine".to_string(), json!("mc")),
        ("n".to_string(), json!(n_samples)),
        ("seed".to_string(), json!(seed)),
    ]
    .into_iter()
    .collect();
    Ok(RunReport {
        command: "integrate".into(),
        inputs,
        result: ResultValue::from(&estimate),
        checks,
        seed: Some(seed),
        elapsed_ms: elapsed_ms(start),
    })
}

/// `verify`: run a named suite and summarize.
pub fn cmd_verify(suite: Suite, seed: u64) -> Result<RunReport> {
    let start = Instant::now();
    let checks = run_suite(suite, seed)?;
    let passed = checks.iter().filter(|c| c.passed()).count() as u64;
    let failed = checks.len() as u64 - passed;
    let inputs: BTreeMap<String, serde_json::Value> = [
        ("suite".to_string(), json!(suite.to_string())),
        ("seed".to_string(), json!(seed)),
    ]
    .into_iter()
    .collect();
    Ok(RunReport {
        command: "verify".into(),
        inputs,
        result: ResultValue::Summary { passed, failed },
        checks,
        seed: Some(seed),
        elapsed_ms: elapsed_ms(start),
    })
}
