//! Step responses of the delay feedback loop and its approximants.
//!
//! The loop `1 / (1 - K e^(-sL))` driven by a unit step is simulated event by
//! event: the summing junction output changes only when a delayed copy of an
//! earlier change leaves the delay line, so its response is an exact
//! staircase with level `1 + K + … + K^n` on `[nL, (n+1)L)`. No time stepping
//! is involved.
//!
//! The approximants have closed-form step responses:
//!
//! * PI line `1/2 + t/L` (unit-gain loop only),
//! * FOPDT curve `1 + K̄ (1 - e^(-(t - L̄)/T))` after the dead time,
//! * Pade curve `1/(1-K) (1 - 2K/(1+K) e^(-t/τ))`, `τ = (1+K)/(1-K) L/2`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::blocks::{FopdtParams, PiParams};
use crate::{Error, Result};

/// Upper bound on the number of delay periods in one simulated trace.
pub const MAX_TRACE_STEPS: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceKind {
    Staircase,
    Line,
    FopdtCurve,
    PadeCurve,
}

/// Parameters of the block a trace was produced from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TraceSource {
    /// Delay loop with gain `K` and delay `L`.
    Loop {
        gain: f64,
        delay: f64,
    },
    Pi(PiParams),
    Fopdt(FopdtParams),
    /// Pade approximant of the loop with gain `K` and delay `L`.
    Pade {
        gain: f64,
        delay: f64,
    },
}

/// Step response as ordered `(t, y)` breakpoints starting at `t = 0`.
///
/// Staircases are right-continuous: the value at a breakpoint is the new
/// level. Smooth kinds carry samples of their closed form; [`StepTrace::value_at`]
/// evaluates the closed form directly.
#[derive(Debug, Clone, PartialEq)]
pub struct StepTrace {
    pub kind: TraceKind,
    pub breakpoints: Vec<(f64, f64)>,
    pub source: TraceSource,
}

impl StepTrace {
    /// Last time covered by the trace.
    pub fn horizon(&self) -> f64 {
        self.breakpoints.last().map_or(0.0, |&(t, _)| t)
    }

    /// Response at `t`, or `None` outside `[0, horizon]`.
    pub fn value_at(&self, t: f64) -> Option<f64> {
        if !(t >= 0.0 && t <= self.horizon()) {
            return None;
        }
        match self.source {
            TraceSource::Loop { .. } => {
                let idx = self.breakpoints.partition_point(|&(bt, _)| bt <= t);
                Some(self.breakpoints[idx - 1].1)
            }
            TraceSource::Pi(params) => Some(pi_step_response(&params, t)),
            TraceSource::Fopdt(params) => Some(fopdt_step_response(&params, t)),
            TraceSource::Pade { gain, delay } => Some(pade_step_response(gain, delay, t)),
        }
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.breakpoints.iter().map(|&(t, _)| t)
    }
}

fn check_loop_gain(k: f64) -> Result<()> {
    if !(k > 0.0 && k <= 1.0) {
        return Err(Error::invalid(format!(
            "loop gain must satisfy 0 < K <= 1, got K = {k}"
        )));
    }
    Ok(())
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::invalid(format!(
            "{name} must be positive and finite, got {v}"
        )));
    }
    Ok(())
}

/// Output of the summing junction when the delayed signal is `delayed`.
#[inline]
fn junction(k: f64, delayed: f64) -> f64 {
    1.0 + k * delayed
}

/// Pure delay holding the pending changes of its input signal.
struct DelayLine {
    pending: VecDeque<(usize, f64)>,
}

impl DelayLine {
    fn push(&mut self, step: usize, value: f64) {
        self.pending.push_back((step, value));
    }

    /// Next change leaving the delay line, as `(step index, value)`.
    fn pop(&mut self) -> Option<(usize, f64)> {
        self.pending.pop_front()
    }
}

/// Exact unit-step response of `1 / (1 - K e^(-sL))` up to `horizon`.
///
/// Breakpoints sit at `t = nL` for every `nL <= horizon`, followed by the
/// level at `horizon` itself when it is not a multiple of `L`.
pub fn simulate_feedback_step(gain: f64, delay: f64, horizon: f64) -> Result<StepTrace> {
    check_loop_gain(gain)?;
    check_positive("delay", delay)?;
    check_positive("horizon", horizon)?;
    let steps = (horizon / delay).floor();
    if steps >= MAX_TRACE_STEPS as f64 {
        return Err(Error::invalid(format!(
            "horizon {horizon} spans more than {MAX_TRACE_STEPS} delays of {delay}"
        )));
    }
    let last_step = steps as usize;

    let mut line = DelayLine {
        pending: VecDeque::new(),
    };
    let mut breakpoints = Vec::with_capacity(last_step + 2);

    // the input step reaches the output at t = 0 with nothing in the loop yet
    let mut y = junction(gain, 0.0);
    breakpoints.push((0.0, y));
    line.push(1, y);

    while let Some((step, delayed)) = line.pop() {
        let t = step as f64 * delay;
        if t > horizon {
            break;
        }
        y = junction(gain, delayed);
        breakpoints.push((t, y));
        line.push(step + 1, y);
    }
    if breakpoints.last().is_some_and(|&(t, _)| t < horizon) {
        breakpoints.push((horizon, y));
    }

    Ok(StepTrace {
        kind: TraceKind::Staircase,
        breakpoints,
        source: TraceSource::Loop { gain, delay },
    })
}

/// Staircase levels after `n = 1..=n_max` delays.
///
/// Uses the same recurrence as [`simulate_feedback_step`], so the values are
/// bit-identical to the simulated levels.
pub fn staircase_levels(gain: f64, n_max: usize) -> Result<Vec<f64>> {
    check_loop_gain(gain)?;
    if n_max == 0 {
        return Err(Error::invalid("n_max must be at least 1"));
    }
    let mut y = junction(gain, 0.0);
    Ok((0..n_max)
        .map(|_| {
            y = junction(gain, y);
            y
        })
        .collect())
}

/// Closed-form geometric partial sum `(1 - K^(n+1)) / (1 - K)`, or `n + 1`
/// when `K = 1`.
pub fn geometric_level(gain: f64, n: usize) -> f64 {
    if gain == 1.0 {
        return (n + 1) as f64;
    }
    (1.0 - gain.powi(n as i32 + 1)) / (1.0 - gain)
}

/// PI step response `1/2 + t/L`.
pub fn pi_step_response(params: &PiParams, t: f64) -> f64 {
    params.gain + t / params.integration_time
}

/// FOPDT step response: 1 until the dead time, then a first-order rise to `1 + K̄`.
pub fn fopdt_step_response(params: &FopdtParams, t: f64) -> f64 {
    if t <= params.dead_time {
        return 1.0;
    }
    1.0 + params.model_gain * (1.0 - (-(t - params.dead_time) / params.time_constant).exp())
}

/// Step response of the Pade loop `(1 + sL/2) / ((1-K) + (1+K) sL/2)`.
///
/// Starts at `1/(1+K)` and settles at `1/(1-K)`; for `K = 1` it is the PI line.
pub fn pade_step_response(gain: f64, delay: f64, t: f64) -> f64 {
    if gain == 1.0 {
        return 0.5 + t / delay;
    }
    let tau = (1.0 + gain) / (1.0 - gain) * delay / 2.0;
    (1.0 - 2.0 * gain / (1.0 + gain) * (-t / tau).exp()) / (1.0 - gain)
}

/// Approximant compared against the exact staircase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApproxKind {
    PiLine,
    FopdtCurve,
    PadeCurve,
}

impl ApproxKind {
    pub fn name(self) -> &'static str {
        match self {
            ApproxKind::PiLine => "pi",
            ApproxKind::FopdtCurve => "fopdt",
            ApproxKind::PadeCurve => "pade",
        }
    }
}

impl fmt::Display for ApproxKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ApproxKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pi" | "pi_line" => Ok(ApproxKind::PiLine),
            "fopdt" | "fopdt_curve" => Ok(ApproxKind::FopdtCurve),
            "pade" | "pade_curve" => Ok(ApproxKind::PadeCurve),
            _ => Err(Error::invalid(format!("unknown approximant `{s}`"))),
        }
    }
}

/// Closed-form approximant built for a loop with gain `K` and delay `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Approximant {
    Pi(PiParams),
    Fopdt(FopdtParams),
    Pade { gain: f64, delay: f64 },
}

impl Approximant {
    /// The PI line needs `K = 1` and the FOPDT curve needs `K < 1`.
    pub fn for_loop(kind: ApproxKind, gain: f64, delay: f64) -> Result<Self> {
        check_loop_gain(gain)?;
        check_positive("delay", delay)?;
        match kind {
            ApproxKind::PiLine if gain == 1.0 => Ok(Approximant::Pi(PiParams::from_delay(delay)?)),
            ApproxKind::PiLine => Err(Error::invalid(format!(
                "the PI line approximates the unit-gain loop only, got K = {gain}"
            ))),
            ApproxKind::FopdtCurve => Ok(Approximant::Fopdt(FopdtParams::from_loop(gain, delay)?)),
            ApproxKind::PadeCurve => Ok(Approximant::Pade { gain, delay }),
        }
    }

    pub fn kind(&self) -> ApproxKind {
        match self {
            Approximant::Pi(_) => ApproxKind::PiLine,
            Approximant::Fopdt(_) => ApproxKind::FopdtCurve,
            Approximant::Pade { .. } => ApproxKind::PadeCurve,
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        match self {
            Approximant::Pi(p) => pi_step_response(p, t),
            Approximant::Fopdt(p) => fopdt_step_response(p, t),
            Approximant::Pade { gain, delay } => pade_step_response(*gain, *delay, t),
        }
    }

    /// Samples the closed form on `points` evenly spaced times over `[0, horizon]`.
    pub fn trace(&self, horizon: f64, points: usize) -> Result<StepTrace> {
        check_positive("horizon", horizon)?;
        if points < 2 {
            return Err(Error::invalid("a sampled trace needs at least 2 points"));
        }
        let last = (points - 1) as f64;
        let breakpoints = (0..points)
            .map(|i| {
                let t = horizon * i as f64 / last;
                (t, self.value(t))
            })
            .collect();
        let (kind, source) = match *self {
            Approximant::Pi(p) => (TraceKind::Line, TraceSource::Pi(p)),
            Approximant::Fopdt(p) => (TraceKind::FopdtCurve, TraceSource::Fopdt(p)),
            Approximant::Pade { gain, delay } => {
                (TraceKind::PadeCurve, TraceSource::Pade { gain, delay })
            }
        };
        Ok(StepTrace {
            kind,
            breakpoints,
            source,
        })
    }
}

/// One sample of an approximation error report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorSample {
    pub t: f64,
    pub exact: f64,
    pub approx: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub kind: ApproxKind,
    pub samples: Vec<ErrorSample>,
    pub max_abs: f64,
    pub mean_abs: f64,
}

/// Sample times used by [`approximation_error`] for `n_max` samples.
///
/// The PI line and Pade curve are compared at the middle of each delay
/// interval, `t = (2n-1)L/2` for `n = 1..=n_max`; the FOPDT curve at the
/// staircase corners `t = nL` for `n = 0..=n_max`.
pub fn sample_times(kind: ApproxKind, delay: f64, n_max: usize) -> Vec<f64> {
    match kind {
        ApproxKind::PiLine | ApproxKind::PadeCurve => (1..=n_max)
            .map(|n| (2 * n - 1) as f64 * delay / 2.0)
            .collect(),
        ApproxKind::FopdtCurve => (0..=n_max).map(|n| n as f64 * delay).collect(),
    }
}

/// Absolute deviation between an exact staircase and an approximant.
pub fn approximation_error(
    exact: &StepTrace,
    kind: ApproxKind,
    n_max: usize,
) -> Result<ErrorReport> {
    let TraceSource::Loop { gain, delay } = exact.source else {
        return Err(Error::invalid(
            "approximation error needs an exact loop staircase",
        ));
    };
    if n_max == 0 {
        return Err(Error::invalid("at least one sample is required"));
    }
    let approx = Approximant::for_loop(kind, gain, delay)?;
    let samples = sample_times(kind, delay, n_max)
        .into_iter()
        .map(|t| {
            let exact_y = exact.value_at(t).ok_or_else(|| {
                Error::invalid(format!(
                    "sample time {t} lies beyond the trace horizon {}",
                    exact.horizon()
                ))
            })?;
            let approx_y = approx.value(t);
            Ok(ErrorSample {
                t,
                exact: exact_y,
                approx: approx_y,
                deviation: (exact_y - approx_y).abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_abs = samples.iter().map(|s| s.deviation).fold(0.0, f64::max);
    let mean_abs = samples.iter().map(|s| s.deviation).sum::<f64>() / samples.len() as f64;
    Ok(ErrorReport {
        kind,
        samples,
        max_abs,
        mean_abs,
    })
}
