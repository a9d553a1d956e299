//! Complex gamma and friends for the infinite-limit product identity
//!
//! ```text
//! sum_{k>=0} S_{m_k}(inf) t^(m k) = prod_{j<m} Gamma(1 - xi^j t),  xi = exp(2 pi i / m)
//! ```
//!
//! * [`gamma_complex`]: Lanczos approximation with reflection for
//!   `Re z < 1/2`; evaluation within [`POLE_TOLERANCE`] of a non-positive
//!   integer is a typed error.
//! * [`RootsOfUnity`]: the `m`-th roots with exact conjugate symmetry.
//! * [`gamma_product`], [`finite_product`]: both sides of the identity above,
//!   the latter as the elementary cutoff product `prod n^a / (n^a - t^a)`.
//! * [`beta`], [`beta_limit`]: Euler beta and the limit
//!   `N^z B(N, z) -> Gamma(z)`, the latter in an overflow-free product form.
//! * [`zeta_ref`]: reference zeta at integer arguments, direct sum plus an
//!   Euler-Maclaurin tail, absolute error below `1e-15`.

use num::complex::Complex64;

use crate::{Error, Result};

/// Half-width of the disk around each non-positive integer that
/// [`gamma_complex`] refuses as a pole.
pub const POLE_TOLERANCE: f64 = 1e-12;

// Lanczos parameters (g = 607/128, 15 terms). Relative error of the
// resulting gamma stays below 3e-15 on -3 <= Re z <= 5, |Im z| <= 2.
// The coefficients are the published values, digits kept as printed.
const LANCZOS_G: f64 = 607.0 / 128.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_C: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

fn ensure_finite(value: Complex64, what: &'static str) -> Result<Complex64> {
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite(what))
    }
}

/// `Gamma(z)` for complex `z`.
///
/// Lanczos on `Re z >= 1/2`, reflection `Gamma(z) = pi / (sin(pi z)
/// Gamma(1 - z))` otherwise. Arguments within [`POLE_TOLERANCE`] of
/// `0, -1, -2, ...` return [`Error::GammaPole`].
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFinite("gamma argument"));
    }
    if z.re < 0.5 {
        let nearest = z.re.round();
        if nearest <= 0.0
            && (z.re - nearest).abs() <= POLE_TOLERANCE
            && z.im.abs() <= POLE_TOLERANCE
        {
            return Err(Error::GammaPole { re: z.re, im: z.im });
        }
        let pi = std::f64::consts::PI;
        let sin_piz = (pi * z).sin();
        let mirrored = lanczos_gamma(Complex64::new(1.0, 0.0) - z);
        return ensure_finite(pi / (sin_piz * mirrored), "gamma reflection");
    }
    ensure_finite(lanczos_gamma(z), "gamma")
}

fn lanczos_gamma(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut acc = Complex64::new(LANCZOS_C[0], 0.0);
    for (i, &c) in LANCZOS_C.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let shifted = z + LANCZOS_G + 0.5;
    let sqrt_two_pi = (2.0 * std::f64::consts::PI).sqrt();
    sqrt_two_pi * shifted.powc(z + 0.5) * (-shifted).exp() * acc
}

/// The `m`-th roots of unity `xi^j = exp(2 pi i j / m)`, `j = 0..m`.
///
/// Construction guarantees `values[0] = 1`, `values[m/2] = -1` for even `m`,
/// and conjugate symmetry `values[j] = conj(values[m-j])` that is bit-exact
/// for every strictly complex root.
#[derive(Debug, Clone, PartialEq)]
pub struct RootsOfUnity {
    values: Vec<Complex64>,
}

impl RootsOfUnity {
    pub fn new(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidInput("root order must be >= 2".into()));
        }
        let mm = m as usize;
        let mut values = vec![Complex64::new(1.0, 0.0); mm];
        for j in 1..mm {
            if 2 * j == mm {
                values[j] = Complex64::new(-1.0, 0.0);
            } else if 2 * j < mm {
                let theta = std::f64::consts::TAU * j as f64 / m as f64;
                values[j] = Complex64::new(theta.cos(), theta.sin());
            } else {
                values[j] = values[mm - j].conj();
            }
        }
        Ok(Self { values })
    }

    pub fn order(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// `prod_{j<m} Gamma(1 - xi^j t)` for `|t| < 1`.
///
/// Every factor argument satisfies `Re(1 - xi^j t) >= 1 - |t| > 0`, so poles
/// are unreachable on the stated domain.
pub fn gamma_product(m: u32, t: f64) -> Result<Complex64> {
    if !t.is_finite() || t.abs() >= 1.0 {
        return Err(Error::InvalidInput(
            "gamma product needs finite |t| < 1".into(),
        ));
    }
    let roots = RootsOfUnity::new(m)?;
    let mut prod = Complex64::new(1.0, 0.0);
    for &xi in roots.values() {
        prod *= gamma_complex(Complex64::new(1.0, 0.0) - xi * t)?;
    }
    ensure_finite(prod, "gamma product")
}

/// The cutoff product `prod_{n<=n_terms} n^a / (n^a - t^a)`.
pub fn finite_product(a: u32, n_terms: u64, t: f64) -> Result<f64> {
    if a == 0 {
        return Err(Error::InvalidInput("exponent a must be >= 1".into()));
    }
    if n_terms == 0 {
        return Err(Error::InvalidInput("product needs n_terms >= 1".into()));
    }
    if !t.is_finite() || t.abs() >= 1.0 {
        return Err(Error::InvalidInput(
            "finite product needs finite |t| < 1".into(),
        ));
    }
    let ta = t.powi(a as i32);
    let mut prod = 1.0;
    for n in 1..=n_terms {
        let na = (n as f64).powi(a as i32);
        let denom = na - ta;
        if denom == 0.0 {
            return Err(Error::InvalidInput(format!(
                "product factor vanishes at n = {n}"
            )));
        }
        prod *= na / denom;
    }
    if prod.is_finite() {
        Ok(prod)
    } else {
        Err(Error::NonFinite("finite product"))
    }
}

/// Euler beta `B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y)`.
///
/// A pole in any gamma factor surfaces as that factor's error, even where
/// the quotient itself would be finite.
pub fn beta(x: Complex64, y: Complex64) -> Result<Complex64> {
    let gx = gamma_complex(x)?;
    let gy = gamma_complex(y)?;
    let gxy = gamma_complex(x + y)?;
    ensure_finite(gx * gy / gxy, "beta")
}

/// `N^z B(N, z)` for integer `N`, which converges to `Gamma(z)` as
/// `N -> inf`. Requires `Re z > 0`.
///
/// Uses `B(N, z) = (N-1)! / (z (z+1) ... (z+N-1))` arranged as
/// `exp(z ln N) / z * prod_{j<N} j / (z + j)`, which never forms the huge
/// gamma values that overflow past `N ~ 170`.
pub fn beta_limit(z: Complex64, n: u64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFinite("beta limit argument"));
    }
    if z.re <= 0.0 {
        return Err(Error::InvalidInput("beta limit needs Re z > 0".into()));
    }
    if n == 0 {
        return Err(Error::InvalidInput("beta limit needs N >= 1".into()));
    }
    let ln_n = (n as f64).ln();
    let mut acc = (z * ln_n).exp() / z;
    for j in 1..n {
        let jf = j as f64;
        acc = acc * jf / (z + jf);
    }
    ensure_finite(acc, "beta limit")
}

/// `zeta(s)` for integer `s >= 2`: compensated direct sum to `n = 100` plus
/// a four-term Euler-Maclaurin tail. Absolute error below `1e-15`.
pub fn zeta_ref(s: u32) -> f64 {
    assert!(s >= 2, "zeta_ref needs s >= 2");
    1.0 + zeta_minus_one(s)
}

/// `zeta(s) - 1`, kept separate so near-1 values retain relative accuracy.
pub(crate) fn zeta_minus_one(s: u32) -> f64 {
    assert!(s >= 2, "zeta needs s >= 2");
    if s >= 1100 {
        // 2^-s underflows; the n = 1 term is all that survives.
        return 0.0;
    }
    let sf = s as f64;
    // Kahan sum, smallest terms first.
    let mut sum = 0.0;
    let mut carry = 0.0;
    for n in (2..=100u32).rev() {
        let term = (n as f64).powf(-sf);
        let y = term - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    let nf = 100.0f64;
    let tail = nf.powf(1.0 - sf) / (sf - 1.0) - nf.powf(-sf) / 2.0
        + sf * nf.powf(-sf - 1.0) / 12.0
        - sf * (sf + 1.0) * (sf + 2.0) * nf.powf(-sf - 3.0) / 720.0;
    sum + tail
}
