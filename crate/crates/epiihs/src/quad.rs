//! Integral representations of the infinite-limit sums.
//!
//! For `m = 2` the whole column collapses to one-dimensional moments,
//!
//! ```text
//! S_{2_k}(inf) = 1/(2k)! * integral_0^1 log^(2k)(z / (1 - z)) dz
//! ```
//!
//! handled by [`quad_m2`] as a tanh-sinh sum after substituting
//! `u = log(z / (1 - z))`. The general representation integrates
//!
//! ```text
//! (sum_j xi^j ln x_(j+1))^(m k)
//! ```
//!
//! over the uniform unit simplex (`xi` the primitive `m`-th root), handled by
//! [`mc_harmonic_infinite`] with the scale `(-1)^(m k) / (m k)!`; the
//! `(m-1)!` simplex volume cancels against the Dirichlet normalization.
//!
//! Monte Carlo runs are deterministic for a fixed seed regardless of thread
//! count: samples are split into chunks of [`MC_CHUNK`], each chunk draws
//! from its own counter-derived stream and accumulates sequentially, and the
//! per-chunk partials are reduced in fixed index order.

use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::special::RootsOfUnity;
use crate::{Error, Result};

/// Samples per Monte Carlo chunk; chunk `i` draws from RNG stream `i`.
pub const MC_CHUNK: u64 = 1 << 16;

/// Coordinates below this are rejected and the whole point redrawn, keeping
/// every logarithm finite.
const MIN_COORD: f64 = 1e-300;

/// Statistical floor on Monte Carlo sample counts.
const MIN_SAMPLES: u64 = 1000;

/// A point on the open unit simplex: positive coordinates summing to 1
/// within `1e-12`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint {
    coords: Vec<f64>,
}

impl SimplexPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidInput(
                "simplex point needs dimension >= 2".into(),
            ));
        }
        if coords.iter().any(|&x| !x.is_finite() || x <= 0.0) {
            return Err(Error::InvalidInput(
                "simplex coordinates must be finite and positive".into(),
            ));
        }
        let total: f64 = coords.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "simplex coordinates sum to {total}, not 1"
            )));
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// Fills `out` with a uniform simplex point via normalized exponential
/// spacings; returns how many whole points were rejected and redrawn.
fn fill_simplex<R: Rng + ?Sized>(rng: &mut R, out: &mut [f64]) -> u64 {
    let mut rejected = 0u64;
    loop {
        let mut total = 0.0;
        for slot in out.iter_mut() {
            let u: f64 = rng.gen();
            let e = -(1.0 - u).ln();
            *slot = e;
            total += e;
        }
        if total <= 0.0 || !total.is_finite() {
            rejected += 1;
            continue;
        }
        for slot in out.iter_mut() {
            *slot /= total;
        }
        if out.iter().any(|&x| x < MIN_COORD) {
            rejected += 1;
            continue;
        }
        return rejected;
    }
}

/// One uniform draw from the `m`-simplex.
pub fn sample_simplex_uniform<R: Rng + ?Sized>(m: u32, rng: &mut R) -> Result<SimplexPoint> {
    if m < 2 {
        return Err(Error::InvalidInput("simplex dimension must be >= 2".into()));
    }
    let mut coords = vec![0.0; m as usize];
    fill_simplex(rng, &mut coords);
    SimplexPoint::new(coords)
}

fn complex_powu(base: Complex64, mut exp: u32) -> Complex64 {
    let mut result = Complex64::new(1.0, 0.0);
    let mut base = base;
    while exp > 0 {
        if exp & 1 == 1 {
            result *= base;
        }
        base *= base;
        exp >>= 1;
    }
    result
}

fn log_power_value(roots: &[Complex64], mk: u32, coords: &[f64]) -> Complex64 {
    let mut w = Complex64::new(0.0, 0.0);
    for (xi, &x) in roots.iter().zip(coords) {
        w += xi * x.ln();
    }
    complex_powu(w, mk)
}

/// The raw integrand `(sum_j xi^j ln x_(j+1))^(m k)` at one simplex point.
pub fn integrand_log_power(m: u32, k: u32, point: &SimplexPoint) -> Result<Complex64> {
    if k == 0 {
        return Err(Error::InvalidInput("integrand needs k >= 1".into()));
    }
    let mk = m
        .checked_mul(k)
        .ok_or_else(|| Error::InvalidInput("m * k overflows".into()))?;
    let roots = RootsOfUnity::new(m)?;
    if point.dim() != m as usize {
        return Err(Error::InvalidInput(format!(
            "point dimension {} does not match m = {m}",
            point.dim()
        )));
    }
    let value = log_power_value(roots.values(), mk, point.coords());
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite("log-power integrand"))
    }
}

/// A Monte Carlo estimate with per-component standard errors and the run
/// metadata needed to reproduce it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: Complex64,
    pub stderr: f64,
    pub stderr_im: f64,
    pub n_samples: u64,
    pub seed: u64,
    pub n_rejected: u64,
}

#[derive(Default, Clone, Copy)]
struct ChunkSums {
    sum_re: f64,
    sum_im: f64,
    sq_re: f64,
    sq_im: f64,
    rejected: u64,
}

/// Worker count from `EPIIHS_THREADS`; 0 means "let rayon decide".
/// Unset or unparseable values fall back to 0.
pub fn worker_count() -> usize {
    std::env::var("EPIIHS_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&v| v >= 1)
        .unwrap_or(0)
}

fn mc_run<F>(
    m: u32,
    n_samples: u64,
    seed: u64,
    threads: usize,
    f: F,
) -> Result<(Complex64, f64, f64, u64)>
where
    F: Fn(&[f64]) -> Complex64 + Sync,
{
    let n_chunks = n_samples.div_ceil(MC_CHUNK);
    let run_chunk = |chunk: u64| -> ChunkSums {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(chunk);
        let lo = chunk * MC_CHUNK;
        let hi = n_samples.min(lo + MC_CHUNK);
        let mut coords = vec![0.0f64; m as usize];
        let mut acc = ChunkSums::default();
        for _ in lo..hi {
            acc.rejected += fill_simplex(&mut rng, &mut coords);
            let v = f(&coords);
            acc.sum_re += v.re;
            acc.sum_im += v.im;
            acc.sq_re += v.re * v.re;
            acc.sq_im += v.im * v.im;
        }
        acc
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    let partials: Vec<ChunkSums> =
        pool.install(|| (0..n_chunks).into_par_iter().map(run_chunk).collect());
    // Reduction in fixed chunk order; this is what makes the result
    // independent of the thread count.
    let mut total = ChunkSums::default();
    for p in &partials {
        total.sum_re += p.sum_re;
        total.sum_im += p.sum_im;
        total.sq_re += p.sq_re;
        total.sq_im += p.sq_im;
        total.rejected += p.rejected;
    }
    let n = n_samples as f64;
    let mean = Complex64::new(total.sum_re / n, total.sum_im / n);
    let var_re = ((total.sq_re - total.sum_re * total.sum_re / n) / (n - 1.0)).max(0.0);
    let var_im = ((total.sq_im - total.sum_im * total.sum_im / n) / (n - 1.0)).max(0.0);
    let stderr = (var_re / n).sqrt();
    let stderr_im = (var_im / n).sqrt();
    if !(mean.re.is_finite() && mean.im.is_finite() && stderr.is_finite() && stderr_im.is_finite())
    {
        return Err(Error::NonFinite("monte carlo accumulation"));
    }
    Ok((mean, stderr, stderr_im, total.rejected))
}

fn factorial_f64(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, v| acc * v as f64)
}

/// Monte Carlo estimate of `S_{m_k}(inf)` through the simplex representation,
/// with the thread count taken from [`worker_count`].
pub fn mc_harmonic_infinite(m: u32, k: u32, n_samples: u64, seed: u64) -> Result<McEstimate> {
    mc_harmonic_infinite_with_threads(m, k, n_samples, seed, worker_count())
}

/// Same as [`mc_harmonic_infinite`] with an explicit thread count
/// (0 = rayon default). The estimate is bit-identical for any thread count.
pub fn mc_harmonic_infinite_with_threads(
    m: u32,
    k: u32,
    n_samples: u64,
    seed: u64,
    threads: usize,
) -> Result<McEstimate> {
    if m < 2 {
        return Err(Error::InvalidInput("simplex estimator needs m >= 2".into()));
    }
    if k == 0 {
        return Err(Error::InvalidInput("simplex estimator needs k >= 1".into()));
    }
    if n_samples < MIN_SAMPLES {
        return Err(Error::InvalidInput(format!(
            "need at least {MIN_SAMPLES} samples"
        )));
    }
    let mk = m
        .checked_mul(k)
        .filter(|&e| e <= 170)
        .ok_or_else(|| Error::InvalidInput("(m k)! overflows f64; reduce k".into()))?;
    let sign = if mk % 2 == 0 { 1.0 } else { -1.0 };
    let scale = sign / factorial_f64(mk);
    let roots = RootsOfUnity::new(m)?;
    let root_values = roots.values().to_vec();
    let (mean, stderr, stderr_im, n_rejected) = mc_run(m, n_samples, seed, threads, |coords| {
        scale * log_power_value(&root_values, mk, coords)
    })?;
    Ok(McEstimate {
        mean,
        stderr,
        stderr_im,
        n_samples,
        seed,
        n_rejected,
    })
}

/// Monte Carlo estimate of the multivariate beta integral
/// `integral over the simplex of prod_i x_i^(alpha_i - 1)`, which equals
/// `prod Gamma(alpha_i) / Gamma(sum alpha_i)`. Requires every `alpha >= 1`.
pub fn multibeta_check(alphas: &[f64], n_samples: u64, seed: u64) -> Result<McEstimate> {
    multibeta_check_with_threads(alphas, n_samples, seed, worker_count())
}

/// Same as [`multibeta_check`] with an explicit thread count (0 = default).
pub fn multibeta_check_with_threads(
    alphas: &[f64],
    n_samples: u64,
    seed: u64,
    threads: usize,
) -> Result<McEstimate> {
    let m = alphas.len();
    if m < 2 {
        return Err(Error::InvalidInput(
            "multibeta needs at least two exponents".into(),
        ));
    }
    if m > 170 {
        return Err(Error::InvalidInput("(m-1)! overflows f64".into()));
    }
    if alphas.iter().any(|a| !a.is_finite() || *a < 1.0) {
        return Err(Error::InvalidInput(
            "multibeta exponents must be finite and >= 1".into(),
        ));
    }
    if n_samples < MIN_SAMPLES {
        return Err(Error::InvalidInput(format!(
            "need at least {MIN_SAMPLES} samples"
        )));
    }
    let scale = 1.0 / factorial_f64(m as u32 - 1);
    let shifted: Vec<f64> = alphas.iter().map(|a| a - 1.0).collect();
    let (mean, stderr, stderr_im, n_rejected) =
        mc_run(m as u32, n_samples, seed, threads, |coords| {
            let mut prod = scale;
            for (&x, &e) in coords.iter().zip(&shifted) {
                prod *= x.powf(e);
            }
            Complex64::new(prod, 0.0)
        })?;
    Ok(McEstimate {
        mean,
        stderr,
        stderr_im,
        n_samples,
        seed,
        n_rejected,
    })
}

/// Tanh-sinh configuration for [`quad_m2`]: integration cutoff `U`
/// (the `u`-integral is truncated to `[-U, U]`) and the dyadic refinement
/// level (step `h = 2^-levels`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quad1DConfig {
    pub cutoff: f64,
    pub levels: u32,
}

impl Default for Quad1DConfig {
    fn default() -> Self {
        // Passes the truncation budget for k <= 5 with margin.
        Self {
            cutoff: 80.0,
            levels: 8,
        }
    }
}

impl Quad1DConfig {
    pub fn new(cutoff: f64, levels: u32) -> Result<Self> {
        if !cutoff.is_finite() || cutoff < 10.0 {
            return Err(Error::InvalidInput(
                "quadrature cutoff must be finite and >= 10".into(),
            ));
        }
        if !(3..=12).contains(&levels) {
            return Err(Error::InvalidInput(
                "quadrature levels must be in 3..=12".into(),
            ));
        }
        Ok(Self { cutoff, levels })
    }
}

/// `S_{2_k}(inf)` via the moment integral
/// `1/(2k)! * integral of u^(2k) e^u / (1 + e^u)^2 du` over `[-U, U]`,
/// evaluated by a tanh-sinh point sum.
///
/// Refuses configurations whose truncation tail
/// `2 (2k)! e^-U sum_{j<=2k} U^j / j!` is not below `1e-14`.
pub fn quad_m2(k: u32, config: &Quad1DConfig) -> Result<f64> {
    let two_k = k
        .checked_mul(2)
        .filter(|&e| e <= 170)
        .ok_or_else(|| Error::InvalidInput("(2k)! overflows f64; reduce k".into()))?;
    let u_max = config.cutoff;
    let fact = factorial_f64(two_k);

    // Truncation tail of the exact integral beyond [-U, U].
    let mut poisson_sum = 0.0;
    let mut term = 1.0;
    for j in 0..=two_k {
        poisson_sum += term;
        term *= u_max / (j + 1) as f64;
    }
    let tail = 2.0 * fact * (-u_max).exp() * poisson_sum;
    const TAIL_BUDGET: f64 = 1e-14;
    // A NaN bound must fail the budget check, never slip past it.
    if tail.is_nan() || tail >= TAIL_BUDGET {
        return Err(Error::TailBudget {
            bound: tail,
            budget: TAIL_BUDGET,
        });
    }

    // Logistic density written through s = e^-|u| so large |u| cannot
    // overflow: e^u/(1+e^u)^2 = s/(1+s)^2.
    let power = two_k as i32;
    let integrand = |u: f64| -> f64 {
        let s = (-u.abs()).exp();
        u.powi(power) * s / ((1.0 + s) * (1.0 + s))
    };

    let h = (2.0f64).powi(-(config.levels as i32));
    let half_pi = std::f64::consts::FRAC_PI_2;
    // t = 0 node once, then symmetric pairs until the map saturates.
    let mut total = integrand(0.0) * u_max * half_pi;
    let mut j = 1u64;
    loop {
        let t = j as f64 * h;
        let q = half_pi * t.sinh();
        if q > 300.0 {
            break;
        }
        let u = u_max * q.tanh();
        let weight = u_max * half_pi * t.cosh() / (q.cosh() * q.cosh());
        total += 2.0 * weight * integrand(u);
        j += 1;
    }
    let integral = total * h;
    let value = integral / fact;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite("tanh-sinh sum"))
    }
}
