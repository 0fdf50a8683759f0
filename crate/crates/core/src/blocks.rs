//! Per-prime block parameterizations.
//!
//! Each prime `p` owns one base element `1 / (1 - e^(-s L))` with delay
//! `L = ln p`. Writing `s = a + ib` splits the delay loop into a static gain
//! `K = e^(-a L) = p^(-a)` and a pure delay evaluated at frequency `b`. The
//! loop and its three approximants are:
//!
//! | block | transfer function |
//! |-------|-------------------|
//! | base element | `1 / (1 - e^(-s L))` |
//! | PI controller | `1/2 + 1/(s L)` |
//! | FOPDT model | `1 + K̄ e^(-s L̄) / (1 + T s)` |
//! | Pade loop | `(1 + sL/2) / ((1 - K) + (1 + K) sL/2)` |
//!
//! FOPDT identification from the staircase transient gives the model gain
//! `K̄ = K/(1-K)` and the average residence time `T + L̄ = L/(1-K)`. The
//! refined identification splits that residence time as `T = √K L/(1-K)` and
//! `L̄ = (1-√K) L/(1-K)`; the naive one keeps all of it in `T` with `L̄ = 0`.

use crate::{ComplexValue, Error, Result};

/// Denominators below this modulus are reported as poles.
pub const POLE_TOLERANCE: f64 = 1e-30;

fn check_prime(p: u64) {
    assert!(p >= 2, "block parameters need a prime p >= 2, got {p}");
}

/// Exact Euler factor `1 / (1 - e^(-s ln p))`.
pub fn base_element(p: u64, s: ComplexValue) -> Result<ComplexValue> {
    check_prime(p);
    base_element_with_log(p, (p as f64).ln(), s)
}

pub(crate) fn base_element_with_log(p: u64, ln_p: f64, s: ComplexValue) -> Result<ComplexValue> {
    let den = 1.0 - (-s * ln_p).exp();
    if den.norm() < POLE_TOLERANCE {
        return Err(Error::pole(p, s));
    }
    Ok(den.inv())
}

/// PI controller matching the midpoints of a unit-gain delay loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiParams {
    /// Originating prime, absent when built directly from a delay.
    pub prime: Option<u64>,
    /// Proportional gain, always 1/2.
    pub gain: f64,
    /// Integration time `ln p`.
    pub integration_time: f64,
}

pub fn pi_params(p: u64) -> PiParams {
    check_prime(p);
    PiParams::with_log(p, (p as f64).ln())
}

impl PiParams {
    pub(crate) fn with_log(prime: u64, ln_p: f64) -> Self {
        PiParams {
            prime: Some(prime),
            gain: 0.5,
            integration_time: ln_p,
        }
    }

    /// PI block for a unit-gain loop with delay `L > 0`.
    pub fn from_delay(delay: f64) -> Result<Self> {
        if !(delay > 0.0 && delay.is_finite()) {
            return Err(Error::invalid(format!(
                "delay must be positive, got L = {delay}"
            )));
        }
        Ok(PiParams {
            prime: None,
            gain: 0.5,
            integration_time: delay,
        })
    }
}

/// PI factor `1/2 + 1/(s ln p)`.
pub fn pi_factor(params: &PiParams, s: ComplexValue) -> Result<ComplexValue> {
    let den = s * params.integration_time;
    if den.norm() < POLE_TOLERANCE {
        return Err(Error::Pole {
            prime: params.prime,
            s,
        });
    }
    Ok(params.gain + den.inv())
}

/// FOPDT block `1 + K̄ e^(-s L̄) / (1 + T s)` identified from a delay loop
/// with gain `K` and delay `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FopdtParams {
    /// Originating prime, absent when built directly from a loop gain and delay.
    pub prime: Option<u64>,
    /// Real part `a` of `s`, so that `K = e^(-a L)`.
    pub a: f64,
    /// Loop delay `L` (equal to `ln p` for prime-derived blocks).
    pub delay: f64,
    /// Loop gain `K`.
    pub loop_gain: f64,
    /// Model gain `K̄ = K/(1-K)`.
    pub model_gain: f64,
    /// Time constant `T`.
    pub time_constant: f64,
    /// Dead time `L̄`.
    pub dead_time: f64,
}

impl FopdtParams {
    /// Refined identification for a loop with gain `0 < K < 1` and delay `L > 0`.
    pub fn from_loop(loop_gain: f64, delay: f64) -> Result<Self> {
        check_loop(loop_gain, delay)?;
        Ok(Self::refined(
            None,
            -loop_gain.ln() / delay,
            delay,
            loop_gain,
        ))
    }

    /// Naive identification (`L̄ = 0`) for a loop with gain `0 < K < 1` and delay `L > 0`.
    pub fn naive_from_loop(loop_gain: f64, delay: f64) -> Result<Self> {
        check_loop(loop_gain, delay)?;
        Ok(Self::naive(None, -loop_gain.ln() / delay, delay, loop_gain))
    }

    pub(crate) fn with_log(prime: u64, ln_p: f64, a: f64) -> Result<Self> {
        check_exponent(a)?;
        Ok(Self::refined(Some(prime), a, ln_p, (-a * ln_p).exp()))
    }

    fn refined(prime: Option<u64>, a: f64, delay: f64, k: f64) -> Self {
        let residence = delay / (1.0 - k);
        let time_constant = residence * k.sqrt();
        FopdtParams {
            prime,
            a,
            delay,
            loop_gain: k,
            model_gain: k / (1.0 - k),
            time_constant,
            // equals residence * (1 - √K) and keeps T + L̄ = residence to the last bit or two
            dead_time: residence - time_constant,
        }
    }

    fn naive(prime: Option<u64>, a: f64, delay: f64, k: f64) -> Self {
        FopdtParams {
            prime,
            a,
            delay,
            loop_gain: k,
            model_gain: k / (1.0 - k),
            time_constant: delay / (1.0 - k),
            dead_time: 0.0,
        }
    }

    /// Average residence time `T + L̄`.
    pub fn residence_time(&self) -> f64 {
        self.time_constant + self.dead_time
    }

    /// Steady-state step response `1 + K̄`.
    pub fn final_value(&self) -> f64 {
        1.0 + self.model_gain
    }
}

fn check_exponent(a: f64) -> Result<()> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::invalid(format!(
            "FOPDT identification needs a > 0 (so that K = p^-a < 1), got a = {a}"
        )));
    }
    Ok(())
}

fn check_loop(k: f64, delay: f64) -> Result<()> {
    if !(k > 0.0 && k < 1.0) {
        return Err(Error::invalid(format!(
            "FOPDT identification needs loop gain 0 < K < 1, got K = {k}"
        )));
    }
    if !(delay > 0.0 && delay.is_finite()) {
        return Err(Error::invalid(format!(
            "delay must be positive, got L = {delay}"
        )));
    }
    Ok(())
}

/// Refined FOPDT parameters for prime `p` at real part `a > 0`.
pub fn fopdt_params(p: u64, a: f64) -> Result<FopdtParams> {
    check_prime(p);
    FopdtParams::with_log(p, (p as f64).ln(), a)
}

/// Naive FOPDT parameters: `T = ln p/(1-K)` and no dead time.
pub fn fopdt_params_naive(p: u64, a: f64) -> Result<FopdtParams> {
    check_prime(p);
    check_exponent(a)?;
    let ln_p = (p as f64).ln();
    Ok(FopdtParams::naive(Some(p), a, ln_p, (-a * ln_p).exp()))
}

/// FOPDT frequency function `1 + K̄ e^(-i b L̄) / (1 + i b T)`.
pub fn fopdt_factor(params: &FopdtParams, b: f64) -> ComplexValue {
    let delay = ComplexValue::from_polar(params.model_gain, -b * params.dead_time);
    1.0 + delay / ComplexValue::new(1.0, b * params.time_constant)
}

/// Base element with its delay replaced by the first-order Pade approximant,
/// `(1 + sL/2) / ((1 - K) + (1 + K) sL/2)` with `K = p^(-a)`.
///
/// This equals `1/(1-K) (1 + sL/2) / (1 + (1+K)/(1-K) L/2 s)` for `a > 0`
/// and reduces to the PI factor `1/2 + 1/(sL)` at `a = 0`.
pub fn pade_factor(p: u64, a: f64, s: ComplexValue) -> Result<ComplexValue> {
    check_prime(p);
    pade_factor_with_log(p, (p as f64).ln(), a, s)
}

pub(crate) fn pade_factor_with_log(
    p: u64,
    ln_p: f64,
    a: f64,
    s: ComplexValue,
) -> Result<ComplexValue> {
    if !(a >= 0.0 && a.is_finite()) {
        return Err(Error::invalid(format!(
            "Pade factor needs a >= 0, got a = {a}"
        )));
    }
    let k = (-a * ln_p).exp();
    let half_delay = s * (0.5 * ln_p);
    let den = (1.0 - k) + (1.0 + k) * half_delay;
    if den.norm() < POLE_TOLERANCE {
        return Err(Error::pole(p, s));
    }
    Ok((1.0 + half_delay) / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn c(re: f64, im: f64) -> ComplexValue {
        ComplexValue::new(re, im)
    }

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol
    }

    fn ulps(x: f64, y: f64) -> u64 {
        (x.to_bits() as i64 - y.to_bits() as i64).unsigned_abs()
    }

    #[test]
    fn base_element_real() {
        let v = base_element(2, c(2.0, 0.0)).unwrap();
        assert!(close(v.re, 4.0 / 3.0, 1e-15) && v.im == 0.0);
    }

    #[test]
    fn base_element_pole_at_zero() {
        let err = base_element(2, c(0.0, 0.0)).unwrap_err();
        assert_eq!(
            err,
            Error::Pole {
                prime: Some(2),
                s: c(0.0, 0.0)
            }
        );
    }

    #[test]
    fn base_element_pole_on_imaginary_axis() {
        // e^(-i b ln 2) = 1 at b = 2π/ln 2, but only up to rounding of b
        let b = 2.0 * std::f64::consts::PI / LN_2;
        assert!(base_element(2, c(0.0, b)).unwrap().norm() > 1e10);
    }

    #[test]
    fn base_element_complex() {
        // 1/(1 - 3^-(2+i)) at 40 digits
        let v = base_element(3, c(2.0, 1.0)).unwrap();
        assert!(close(v.re, 1.04190984133654, 1e-14));
        assert!(close(v.im, -0.10858780425333014, 1e-14));
    }

    #[test]
    fn pi_params_values() {
        let p = pi_params(2);
        assert_eq!(p.gain, 0.5);
        assert_eq!(p.integration_time, LN_2);
        assert_eq!(pi_params(3).integration_time, 3f64.ln());
        assert!(close(
            pi_params(15_485_863).integration_time,
            16.555438101189427,
            1e-12
        ));
    }

    #[test]
    fn pi_factor_values() {
        let v = pi_factor(&pi_params(2), c(0.0, 1.0)).unwrap();
        assert_eq!(v.re, 0.5);
        assert!(close(v.im, -std::f64::consts::LOG2_E, 1e-15));

        let v = pi_factor(&pi_params(2), c(2.0, 0.0)).unwrap();
        assert!(close(v.re, 1.2213475204444817, 1e-15));

        let far = pi_factor(&pi_params(7), c(1e12, -3e12)).unwrap();
        assert!((far - 0.5).norm() < 1e-12);

        assert!(matches!(
            pi_factor(&pi_params(5), c(0.0, 0.0)),
            Err(Error::Pole { prime: Some(5), .. })
        ));
    }

    #[test]
    fn fopdt_params_p2_a2() {
        let f = fopdt_params(2, 2.0).unwrap();
        assert_eq!(f.loop_gain, 0.25);
        assert!(close(f.model_gain, 1.0 / 3.0, 1e-15));
        assert!(close(f.time_constant, 0.462098, 1e-6));
        assert!(close(f.dead_time, 0.462098, 1e-6));
        assert_eq!(f.prime, Some(2));
    }

    #[test]
    fn fopdt_params_p3_a1() {
        // 40-digit evaluation of the closed forms
        let f = fopdt_params(3, 1.0).unwrap();
        assert!(close(f.loop_gain, 1.0 / 3.0, 1e-15));
        assert!(close(f.model_gain, 0.5, 1e-15));
        assert!(close(f.time_constant, 0.951426150896346, 1e-14));
        assert!(close(f.dead_time, 0.6964922821058186, 1e-14));
    }

    #[test]
    fn fopdt_small_gain_limit() {
        let f = fopdt_params(15_485_863, 12.0).unwrap();
        assert!(f.model_gain < 1e-80);
        assert!(f.time_constant < 1e-40);
        assert!(close(f.dead_time, (15_485_863f64).ln(), 1e-12));
    }

    #[test]
    fn fopdt_rejects_nonpositive_a() {
        for a in [0.0, -1.0, f64::NAN] {
            assert!(matches!(fopdt_params(2, a), Err(Error::InvalidArgument(_))));
            assert!(matches!(
                fopdt_params_naive(2, a),
                Err(Error::InvalidArgument(_))
            ));
        }
    }

    #[test]
    fn naive_identification() {
        let n = fopdt_params_naive(2, 2.0).unwrap();
        assert!(close(n.time_constant, 0.924196, 1e-6));
        assert_eq!(n.dead_time, 0.0);
        let n = fopdt_params_naive(3, 1.0).unwrap();
        assert!(close(n.time_constant, 1.6479184330021646, 1e-14));
        let r = fopdt_params(3, 1.0).unwrap();
        assert!(ulps(n.time_constant, r.time_constant + r.dead_time) <= 4);
        assert_eq!(n.model_gain, r.model_gain);
    }

    #[test]
    fn loop_constructors() {
        let f = FopdtParams::from_loop(0.25, LN_2).unwrap();
        let g = fopdt_params(2, 2.0).unwrap();
        assert!(close(f.time_constant, g.time_constant, 1e-15));
        assert!(close(f.a, 2.0, 1e-15));
        assert!(f.prime.is_none());
        assert!(FopdtParams::from_loop(1.0, 1.0).is_err());
        assert!(FopdtParams::from_loop(0.5, 0.0).is_err());
        assert!(FopdtParams::naive_from_loop(0.0, 1.0).is_err());
    }

    #[test]
    fn fopdt_factor_static_gain() {
        let f = fopdt_params(2, 2.0).unwrap();
        let v = fopdt_factor(&f, 0.0);
        assert!(close(v.re, 4.0 / 3.0, 1e-15));
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn fopdt_factor_attenuates() {
        // direct 40-digit evaluation at b = 1
        let v = fopdt_factor(&fopdt_params(2, 2.0).unwrap(), 1.0);
        assert!(close(v.re, 1.1892826508441312, 1e-14));
        assert!(close(v.im, -0.23607620865205906, 1e-14));
        assert!(v.norm() < 4.0 / 3.0);
    }

    #[test]
    fn pade_reduces_to_pi() {
        for s in [c(0.0, 1.0), c(2.0, 0.0), c(-0.3, 4.0), c(50.0, -70.0)] {
            let pade = pade_factor(2, 0.0, s).unwrap();
            let pi = pi_factor(&pi_params(2), s).unwrap();
            assert!((pade - pi).norm() < 1e-12 * pi.norm(), "s = {s}");
        }
    }

    #[test]
    fn pade_static_and_initial_values() {
        let v = pade_factor(2, 2.0, c(0.0, 0.0)).unwrap();
        assert!(close(v.re, 4.0 / 3.0, 1e-15));
        let far = pade_factor(2, 2.0, c(1e14, 0.0)).unwrap();
        assert!(close(far.re, 1.0 / 1.25, 1e-12));
    }

    #[test]
    fn pade_closed_form_at_s2() {
        // (4/3)(1 + ln 2)/(1 + (5/3) ln 2)
        let v = pade_factor(2, 2.0, c(2.0, 0.0)).unwrap();
        assert!(close(v.re, 1.047458297717849, 1e-14));
    }

    #[test]
    fn pade_errors() {
        assert!(matches!(
            pade_factor(2, -1.0, c(1.0, 0.0)),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            pade_factor(3, 0.0, c(0.0, 0.0)),
            Err(Error::Pole { .. })
        ));
        // real pole at s = -(1-K)/((1+K) L/2)
        let k = 0.25;
        let pole = -(1.0 - k) / ((1.0 + k) * LN_2 / 2.0);
        let v = pade_factor(2, 2.0, c(pole, 0.0));
        assert!(v.is_err() || v.unwrap().norm() > 1e12);
    }
}
