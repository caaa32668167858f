//! Adaptive Dormand-Prince 5(4) integration of complex ODE systems.
//!
//! The step controller uses the max-norm of the embedded error estimate
//! scaled by `abs_tol + rel_tol * max(|y_old|, |y_new|)`. Caller-requested
//! sample times are hit exactly by clamping the step, so samples carry the
//! full fifth-order accuracy.

use super::matrix::{C64, ZERO};
use crate::error::{Error, Result};

// Butcher tableau (Hairer, Norsett & Wanner, Table 5.2).
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// Fifth-order minus embedded fourth-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

#[derive(Debug, Clone)]
pub struct OdeOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Initial step; chosen automatically when `None`.
    pub initial_step: Option<f64>,
    pub max_step: Option<f64>,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-8, abs_tol: 1e-10, initial_step: None, max_step: None, max_steps: 50_000_000 }
    }
}

impl OdeOptions {
    pub fn with_tolerances(rel_tol: f64, abs_tol: f64) -> Self {
        Self { rel_tol, abs_tol, ..Self::default() }
    }
}

#[derive(Debug, Clone, Default)]
pub struct OdeStats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

#[derive(Debug, Clone)]
pub struct OdeSolution {
    pub t_final: f64,
    pub y_final: Vec<C64>,
    /// `(t, y(t))` at each requested sample time, in order.
    pub samples: Vec<(f64, Vec<C64>)>,
    pub stats: OdeStats,
}

/// Integrates `dy/dt = rhs(t, y)` over `t_span`.
///
/// `rhs(t, y, dydt)` writes the derivative into `dydt`. `sample_times` must
/// be nondecreasing and lie inside `t_span`.
pub fn integrate_ode<F>(
    mut rhs: F,
    y0: &[C64],
    t_span: (f64, f64),
    sample_times: &[f64],
    opts: &OdeOptions,
) -> Result<OdeSolution>
where
    F: FnMut(f64, &[C64], &mut [C64]),
{
    let (t0, t_end) = t_span;
    if !(opts.rel_tol > 0.0 && opts.abs_tol > 0.0) {
        return Err(Error::InvalidIntegrator("tolerances must be positive".into()));
    }
    if !(t_end > t0) || !t0.is_finite() || !t_end.is_finite() {
        return Err(Error::InvalidIntegrator(format!("empty time span [{t0}, {t_end}]")));
    }
    if sample_times.windows(2).any(|w| w[1] < w[0])
        || sample_times.iter().any(|&s| s < t0 || s > t_end)
    {
        return Err(Error::InvalidIntegrator("sample times must be sorted and inside the span".into()));
    }

    let n = y0.len();
    let span = t_end - t0;
    let min_step = 1e-12 * span;
    let max_step = opts.max_step.unwrap_or(span);

    let mut stats = OdeStats::default();
    let mut samples = Vec::with_capacity(sample_times.len());
    let mut next_sample = 0;
    while next_sample < sample_times.len() && sample_times[next_sample] <= t0 {
        samples.push((sample_times[next_sample], y0.to_vec()));
        next_sample += 1;
    }

    let mut y = y0.to_vec();
    let mut t = t0;
    let mut k1 = vec![ZERO; n];
    let mut k2 = vec![ZERO; n];
    let mut k3 = vec![ZERO; n];
    let mut k4 = vec![ZERO; n];
    let mut k5 = vec![ZERO; n];
    let mut k6 = vec![ZERO; n];
    let mut k7 = vec![ZERO; n];
    let mut stage = vec![ZERO; n];
    let mut y_new = vec![ZERO; n];

    rhs(t, &y, &mut k1);
    stats.evaluations += 1;

    let mut h = match opts.initial_step {
        Some(h0) => h0.min(max_step),
        None => initial_step(&mut rhs, t, &y, &k1, opts, &mut stats).min(max_step),
    };

    let mut fac_prev_err: f64 = 1e-4;
    while t < t_end {
        if stats.accepted + stats.rejected >= opts.max_steps {
            return Err(Error::MaxStepsExceeded(opts.max_steps));
        }
        let target = sample_times.get(next_sample).copied().unwrap_or(t_end).min(t_end);
        let mut hit_target = false;
        let mut h_try = h;
        if t + h_try >= target - 1e-14 * span {
            h_try = target - t;
            hit_target = true;
        }
        if h_try < min_step && !hit_target {
            return Err(Error::StepUnderflow { t, step: h_try, min_step });
        }

        for i in 0..n {
            stage[i] = y[i] + h_try * (A21 * k1[i]);
        }
        rhs(t + C2 * h_try, &stage, &mut k2);
        for i in 0..n {
            stage[i] = y[i] + h_try * (A31 * k1[i] + A32 * k2[i]);
        }
        rhs(t + C3 * h_try, &stage, &mut k3);
        for i in 0..n {
            stage[i] = y[i] + h_try * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        }
        rhs(t + C4 * h_try, &stage, &mut k4);
        for i in 0..n {
            stage[i] = y[i] + h_try * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        }
        rhs(t + C5 * h_try, &stage, &mut k5);
        for i in 0..n {
            stage[i] =
                y[i] + h_try * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        }
        rhs(t + h_try, &stage, &mut k6);
        for i in 0..n {
            y_new[i] =
                y[i] + h_try * (A71 * k1[i] + A73 * k3[i] + A74 * k4[i] + A75 * k5[i] + A76 * k6[i]);
        }
        rhs(t + h_try, &y_new, &mut k7);
        stats.evaluations += 6;

        let mut err: f64 = 0.0;
        for i in 0..n {
            let e = h_try
                * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = opts.abs_tol + opts.rel_tol * y[i].norm().max(y_new[i].norm());
            err = err.max(e.norm() / sc);
        }
        if !err.is_finite() {
            err = f64::INFINITY;
        }

        if err <= 1.0 {
            stats.accepted += 1;
            t = if hit_target { target } else { t + h_try };
            std::mem::swap(&mut y, &mut y_new);
            std::mem::swap(&mut k1, &mut k7);
            while next_sample < sample_times.len() && sample_times[next_sample] <= t {
                samples.push((sample_times[next_sample], y.clone()));
                next_sample += 1;
            }
            // PI controller (Hairer's DOPRI5 constants).
            let err = err.max(1e-10);
            let fac = 0.9 * err.powf(-0.17) * fac_prev_err.powf(0.04);
            fac_prev_err = err;
            let grown = h_try * fac.clamp(0.2, 10.0);
            // A clamped step should not shrink the natural step size.
            h = if hit_target { h.max(grown) } else { grown }.min(max_step);
        } else {
            stats.rejected += 1;
            let fac = (0.9 * err.powf(-0.2)).clamp(0.2, 1.0);
            h = h_try * fac;
            if h < min_step {
                return Err(Error::StepUnderflow { t, step: h, min_step });
            }
        }
    }

    Ok(OdeSolution { t_final: t, y_final: y, samples, stats })
}

/// Starting step heuristic (Hairer, Norsett & Wanner, II.4).
fn initial_step<F>(
    rhs: &mut F,
    t: f64,
    y: &[C64],
    f0: &[C64],
    opts: &OdeOptions,
    stats: &mut OdeStats,
) -> f64
where
    F: FnMut(f64, &[C64], &mut [C64]),
{
    let scale: Vec<f64> = y.iter().map(|z| opts.abs_tol + opts.rel_tol * z.norm()).collect();
    let rms = |v: &[C64]| -> f64 {
        let s: f64 = v.iter().zip(&scale).map(|(z, s)| (z.norm() / s).powi(2)).sum();
        (s / v.len().max(1) as f64).sqrt()
    };
    let d0 = rms(y);
    let d1 = rms(f0);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let y1: Vec<C64> = y.iter().zip(f0).map(|(a, b)| a + h0 * b).collect();
    let mut f1 = vec![ZERO; y.len()];
    rhs(t + h0, &y1, &mut f1);
    stats.evaluations += 1;
    let diff: Vec<C64> = f1.iter().zip(f0).map(|(a, b)| a - b).collect();
    let d2 = rms(&diff) / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    (100.0 * h0).min(h1)
}
