//! Truncated products over the prime table and the reference zeta oracle.
//!
//! All products multiply factors in ascending prime order. The table is cut
//! into fixed chunks of [`CHUNK_LEN`] primes; chunks may be multiplied on
//! different threads, but each chunk is a left fold from 1 and the chunk
//! results are combined left to right, so the floating-point result does not
//! depend on the thread count.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::blocks::{self, FopdtParams, PiParams};
use crate::{ComplexValue, Error, PrimeSlice, PrimeTable, Result};

/// Primes per reduction chunk.
pub const CHUNK_LEN: usize = 1 << 16;

/// Which product (or oracle) to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Euler,
    Pi,
    Fopdt,
    Pade,
    Reference,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Euler,
        Method::Pi,
        Method::Fopdt,
        Method::Pade,
        Method::Reference,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Euler => "euler",
            Method::Pi => "pi",
            Method::Fopdt => "fopdt",
            Method::Pade => "pade",
            Method::Reference => "reference",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown method `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalRequest {
    pub method: Method,
    pub s: ComplexValue,
    /// Number of primes in the product. Ignored by [`Method::Reference`].
    pub prime_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: ComplexValue,
    pub method: Method,
    pub s: ComplexValue,
    pub prime_count: usize,
    /// Oracle value, present when the oracle's domain covers `s` and the
    /// method is not the oracle itself.
    pub reference: Option<ComplexValue>,
    /// `|value - reference|`.
    pub abs_error: Option<f64>,
}

/// Truncated Euler product `∏ 1/(1 - p^-s)`.
pub fn euler_product<'a>(
    s: ComplexValue,
    primes: impl Into<PrimeSlice<'a>>,
) -> Result<ComplexValue> {
    chunked_product(primes.into(), &euler_factor(s))
}

/// PI approximation `∏ (1/2 + 1/(s ln p))`.
///
/// The factors tend to 1/2 as `p` grows, so this product goes to zero as more
/// primes are included; there is no canonical truncation.
pub fn pi_zeta<'a>(s: ComplexValue, primes: impl Into<PrimeSlice<'a>>) -> Result<ComplexValue> {
    check_pi(s)?;
    chunked_product(primes.into(), &pi_factor(s))
}

/// FOPDT approximation `∏ (1 + K̄_p e^(-i b L̄_p) / (1 + i b T_p))` with
/// `s = a + ib`, `a > 0`.
pub fn fopdt_zeta<'a>(s: ComplexValue, primes: impl Into<PrimeSlice<'a>>) -> Result<ComplexValue> {
    check_fopdt(s)?;
    chunked_product(primes.into(), &fopdt_factor(s))
}

/// Pade approximation: each loop `1/(1 - K_p e^(-i b ln p))` with its delay
/// replaced by the first-order Pade approximant, `K_p = p^-a`, `s = a + ib`,
/// `a >= 0`. On the imaginary axis this coincides with [`pi_zeta`].
pub fn pade_zeta<'a>(s: ComplexValue, primes: impl Into<PrimeSlice<'a>>) -> Result<ComplexValue> {
    check_pade(s)?;
    chunked_product(primes.into(), &pade_factor(s))
}

/// Product for any non-oracle method.
pub fn product<'a>(
    method: Method,
    s: ComplexValue,
    primes: impl Into<PrimeSlice<'a>>,
) -> Result<ComplexValue> {
    let primes = primes.into();
    match method {
        Method::Euler => euler_product(s, primes),
        Method::Pi => pi_zeta(s, primes),
        Method::Fopdt => fopdt_zeta(s, primes),
        Method::Pade => pade_zeta(s, primes),
        Method::Reference => Err(Error::invalid("the reference oracle is not a product")),
    }
}

/// Running products `P_1, P_2, …, P_N` in ascending prime order.
///
/// Entry `n - 1` is a plain left fold over the first `n` factors. For
/// `n <= CHUNK_LEN` it is bit-identical to [`product`] over the same prefix.
pub fn partial_products<'a>(
    method: Method,
    s: ComplexValue,
    primes: impl Into<PrimeSlice<'a>>,
) -> Result<Vec<ComplexValue>> {
    let factor = factor_for(method, s)?;
    let mut acc = Complex64::new(1.0, 0.0);
    primes
        .into()
        .iter()
        .map(|(p, ln_p)| {
            acc *= factor(p, ln_p)?;
            Ok(acc)
        })
        .collect()
}

/// Running products like [`partial_products`], carried with a separate
/// binary exponent so they never overflow or underflow.
///
/// The PI product shrinks roughly like `0.55^N` and leaves the f64 range
/// after about 1240 primes at `s = 2`; these values stay exact in range.
pub fn partial_products_scaled<'a>(
    method: Method,
    s: ComplexValue,
    primes: impl Into<PrimeSlice<'a>>,
) -> Result<Vec<ScaledComplex>> {
    let factor = factor_for(method, s)?;
    let mut acc = ScaledComplex::ONE;
    primes
        .into()
        .iter()
        .map(|(p, ln_p)| {
            acc = acc * factor(p, ln_p)?;
            Ok(acc)
        })
        .collect()
}

/// `mantissa * 2^exponent`, with the larger mantissa component in `[1, 2)`
/// (or a zero mantissa and exponent 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledComplex {
    pub mantissa: ComplexValue,
    pub exponent: i64,
}

impl ScaledComplex {
    pub const ONE: ScaledComplex = ScaledComplex {
        mantissa: Complex64::new(1.0, 0.0),
        exponent: 0,
    };

    pub fn new(value: ComplexValue) -> Self {
        Self::normalized(value, 0)
    }

    fn normalized(m: ComplexValue, exponent: i64) -> Self {
        let big = m.re.abs().max(m.im.abs());
        if big == 0.0 || !big.is_finite() {
            return ScaledComplex {
                mantissa: m,
                exponent: if big == 0.0 { 0 } else { exponent },
            };
        }
        let e = binary_exponent(big);
        // two exact halvings of the shift keep subnormal inputs in range
        let first = -e / 2;
        ScaledComplex {
            mantissa: m * pow2(first) * pow2(-e - first),
            exponent: exponent + e,
        }
    }

    /// Nearest f64 value; underflows to zero or overflows to infinity when
    /// the value is out of range.
    pub fn to_complex(self) -> ComplexValue {
        let half = self.exponent / 2;
        let rest = self.exponent - half;
        self.mantissa * clamp_pow2(half) * clamp_pow2(rest)
    }

    /// `log10 |value|`.
    pub fn log10_norm(self) -> f64 {
        self.mantissa.norm().log10() + self.exponent as f64 * std::f64::consts::LOG10_2
    }
}

impl std::ops::Mul<ComplexValue> for ScaledComplex {
    type Output = Self;

    /// Multiplies by `factor`. Rescaling is by exact powers of two, so while
    /// the plain product stays normal the mantissa carries the same bits.
    fn mul(self, factor: ComplexValue) -> Self {
        Self::normalized(self.mantissa * factor, self.exponent)
    }
}

/// `floor(log2 x)` for finite `x > 0`.
fn binary_exponent(x: f64) -> i64 {
    let biased = ((x.to_bits() >> 52) & 0x7ff) as i64;
    if biased == 0 {
        // subnormal
        return binary_exponent(x * pow2(64)) - 64;
    }
    biased - 1023
}

/// Exact `2^e` for `-1022 <= e <= 1023`.
fn pow2(e: i64) -> f64 {
    debug_assert!((-1022..=1023).contains(&e));
    f64::from_bits(((e + 1023) as u64) << 52)
}

fn clamp_pow2(e: i64) -> f64 {
    match e {
        ..=-1100 => 0.0,
        1024.. => f64::INFINITY,
        -1022..=1023 => pow2(e),
        _ => 2f64.powi(e as i32),
    }
}

type BoxedFactor = Box<dyn Fn(u64, f64) -> Result<ComplexValue>>;

fn factor_for(method: Method, s: ComplexValue) -> Result<BoxedFactor> {
    Ok(match method {
        Method::Euler => Box::new(euler_factor(s)),
        Method::Pi => {
            check_pi(s)?;
            Box::new(pi_factor(s))
        }
        Method::Fopdt => {
            check_fopdt(s)?;
            Box::new(fopdt_factor(s))
        }
        Method::Pade => {
            check_pade(s)?;
            Box::new(pade_factor(s))
        }
        Method::Reference => return Err(Error::invalid("the reference oracle is not a product")),
    })
}

/// Dispatches `req` and attaches the oracle value where it is defined.
pub fn evaluate(req: &EvalRequest, table: &PrimeTable) -> Result<EvalResult> {
    if req.method == Method::Reference {
        return Ok(EvalResult {
            value: reference_zeta(req.s)?,
            method: req.method,
            s: req.s,
            prime_count: req.prime_count,
            reference: None,
            abs_error: None,
        });
    }
    let primes = table.prefix(req.prime_count)?;
    let value = product(req.method, req.s, primes)?;
    let reference = reference_zeta(req.s).ok();
    Ok(EvalResult {
        value,
        method: req.method,
        s: req.s,
        prime_count: req.prime_count,
        reference,
        abs_error: reference.map(|r| (value - r).norm()),
    })
}

fn check_pi(s: ComplexValue) -> Result<()> {
    if s.norm() == 0.0 {
        return Err(Error::Pole { prime: None, s });
    }
    Ok(())
}

fn check_fopdt(s: ComplexValue) -> Result<()> {
    if !(s.re > 0.0 && s.re.is_finite()) {
        return Err(Error::invalid(format!(
            "FOPDT approximation needs Re(s) > 0, got s = {s}"
        )));
    }
    Ok(())
}

fn check_pade(s: ComplexValue) -> Result<()> {
    if !(s.re >= 0.0 && s.re.is_finite()) {
        return Err(Error::invalid(format!(
            "Pade approximation needs Re(s) >= 0, got s = {s}"
        )));
    }
    Ok(())
}

fn euler_factor(s: ComplexValue) -> impl Fn(u64, f64) -> Result<ComplexValue> + Sync {
    move |p, ln_p| blocks::base_element_with_log(p, ln_p, s)
}

fn pi_factor(s: ComplexValue) -> impl Fn(u64, f64) -> Result<ComplexValue> + Sync {
    move |p, ln_p| blocks::pi_factor(&PiParams::with_log(p, ln_p), s)
}

fn fopdt_factor(s: ComplexValue) -> impl Fn(u64, f64) -> Result<ComplexValue> + Sync {
    move |p, ln_p| {
        Ok(blocks::fopdt_factor(
            &FopdtParams::with_log(p, ln_p, s.re)?,
            s.im,
        ))
    }
}

fn pade_factor(s: ComplexValue) -> impl Fn(u64, f64) -> Result<ComplexValue> + Sync {
    let freq = ComplexValue::new(0.0, s.im);
    move |p, ln_p| blocks::pade_factor_with_log(p, ln_p, s.re, freq)
}

fn chunked_product<F>(primes: PrimeSlice<'_>, factor: &F) -> Result<ComplexValue>
where
    F: Fn(u64, f64) -> Result<ComplexValue> + Sync,
{
    let n = primes.len();
    let one = Complex64::new(1.0, 0.0);
    let parts: Vec<Result<ComplexValue>> = (0..n.div_ceil(CHUNK_LEN))
        .into_par_iter()
        .map(|chunk| {
            let start = chunk * CHUNK_LEN;
            let end = (start + CHUNK_LEN).min(n);
            primes
                .range(start, end)
                .iter()
                .try_fold(one, |acc, (p, ln_p)| Ok(acc * factor(p, ln_p)?))
        })
        .collect();
    parts.into_iter().try_fold(one, |acc, part| Ok(acc * part?))
}

/// `|1 - 2^(1-s)|` below this is treated as outside the oracle domain.
const ETA_SCALE_TOLERANCE: f64 = 1e-8;
/// Successive accelerated eta estimates must agree to this before returning.
const ETA_CONVERGENCE: f64 = 1e-12;
const ETA_MIN_TERMS: usize = 16;
const ETA_TERM_STEP: usize = 8;
/// The acceleration weights grow like 5.83^n and overflow f64 near n = 400.
const ETA_MAX_TERMS: usize = 320;

/// Independent zeta oracle for `Re(s) > 0`, `s != 1`.
///
/// Evaluates the alternating eta series `Σ (-1)^(n+1) n^-s` with the
/// Cohen–Rodriguez Villegas–Zagier acceleration and divides by `1 - 2^(1-s)`.
/// The number of terms grows until two successive estimates agree to 1e-12.
pub fn reference_zeta(s: ComplexValue) -> Result<ComplexValue> {
    if !(s.re > 0.0 && s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::OracleDomain(format!(
            "needs finite s with Re(s) > 0, got s = {s}"
        )));
    }
    let scale = 1.0 - ((1.0 - s) * std::f64::consts::LN_2).exp();
    if scale.norm() < ETA_SCALE_TOLERANCE {
        let what = if s.im == 0.0 {
            "the pole of zeta"
        } else {
            "a zero of 1 - 2^(1-s)"
        };
        return Err(Error::OracleDomain(format!("s = {s} is at {what}")));
    }

    let mut terms = ETA_MIN_TERMS;
    let mut prev = accelerated_eta(s, terms);
    while terms < ETA_MAX_TERMS {
        terms += ETA_TERM_STEP;
        let next = accelerated_eta(s, terms);
        if (next - prev).norm() < ETA_CONVERGENCE {
            return Ok(next / scale);
        }
        prev = next;
    }
    Err(Error::OracleDomain(format!(
        "eta series did not settle within {ETA_MAX_TERMS} terms at s = {s}"
    )))
}

/// Alternating series `Σ_{k>=0} (-1)^k (k+1)^-s` accelerated with `n` terms.
fn accelerated_eta(s: ComplexValue, n: usize) -> ComplexValue {
    let nf = n as f64;
    let mut d = (3.0 + 8f64.sqrt()).powi(n as i32);
    d = (d + 1.0 / d) / 2.0;
    let mut b = -1.0;
    let mut c = -d;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let kf = k as f64;
        c = b - c;
        sum += c * (-s * ((kf + 1.0).ln())).exp();
        b = (kf + nf) * (kf - nf) * b / ((kf + 0.5) * (kf + 1.0));
    }
    sum / d
}
