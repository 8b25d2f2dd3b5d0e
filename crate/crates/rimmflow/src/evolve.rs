//! Time integration of the full equation on the invariant constant-mass
//! hyperplane, with decay/growth-rate fitting and limit-cycle detection.
//!
//! Scheme: first-order integrating-factor IMEX (exponential Euler). The
//! constant-coefficient stiff proxy `L v = -v' - b c* (v'' + v'''')` with
//! `c*` the cubed minimum of the steady profile is applied exactly in
//! coefficient space; the remainder `rhs - L` is explicit through the
//! `phi_1` weight, which makes steady states exact fixed points. Mode 0 is
//! never written, so the mean is bitwise constant along the trajectory.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{C64, SpectralField};
use crate::grid::PhysicalGrid;
use crate::params::Params;
use crate::steady::SteadyState;

/// Right-hand side of the evolution equation: minus the theta-derivative of
/// the stationary flux, evaluated alias-free on the padded grid.
pub fn rhs(h: &SpectralField, p: &Params) -> SpectralField {
    let grid = PhysicalGrid::new(h.n_max());
    rhs_on_grid(h, p, &grid).0
}

/// Grid-path right-hand side; also reports the minimum of `h` on the grid.
fn rhs_on_grid(h: &SpectralField, p: &Params, grid: &PhysicalGrid) -> (SpectralField, f64) {
    let n_max = h.n_max();
    let hg = grid.to_grid(h);
    let bhg = grid.to_grid(&h.capillary(p.b));
    let hpg = grid.to_grid(&h.derivative(1));
    let min_h = PhysicalGrid::min_real(&hg);

    let scale_grav = p.eps1 / 3.0;
    let mut flux_g = Vec::with_capacity(grid.len());
    for j in 0..grid.len() {
        let h3 = hg[j] * hg[j] * hg[j];
        let nl = h3 * (bhg[j] + hpg[j] * (p.eps2 * grid.sin_theta[j]) - scale_grav * grid.cos_theta[j]);
        flux_g.push(nl);
    }
    let mut flux = grid.from_grid(flux_g, n_max);
    flux = flux.plus(h);
    if h.is_real_valued(0.0) {
        flux.symmetrize();
    }
    (flux.derivative(1).scaled(-1.0), min_h)
}

/// `phi_1(z) = (e^z - 1)/z`, with the series branch guarding cancellation.
fn phi1(z: C64) -> C64 {
    if z.norm() < 1e-6 {
        Complex::new(1.0, 0.0) + z / 2.0 + z * z / 6.0
    } else {
        (z.exp() - 1.0) / z
    }
}

/// One integrating-factor step owning its precomputed symbol tables.
pub struct Stepper {
    params: Params,
    dt: f64,
    n_max: usize,
    grid: PhysicalGrid,
    /// `exp(dt * l_n)` for the stiff proxy symbol `l_n`.
    exp_l: Vec<C64>,
    /// `dt * phi_1(dt * l_n)`, the exponential-Euler weight of the remainder.
    phi_dt: Vec<C64>,
    /// The proxy symbol itself.
    sym_l: Vec<C64>,
}

impl Stepper {
    pub fn new(steady: &SteadyState, dt: f64) -> Result<Self> {
        if dt <= 0.0 || !dt.is_finite() {
            return Err(Error::InvalidParameter(format!("dt must be positive, got {dt}")));
        }
        let n_max = steady.h.n_max();
        let c_star = steady.min_height.powi(3);
        let b = steady.params.b;
        let mut exp_l = Vec::with_capacity(2 * n_max + 1);
        let mut phi_dt = Vec::with_capacity(2 * n_max + 1);
        let mut sym_l = Vec::with_capacity(2 * n_max + 1);
        for i in 0..(2 * n_max + 1) {
            let n = i as f64 - n_max as f64;
            let l = Complex::new(-b * c_star * (n.powi(4) - n.powi(2)), -n);
            sym_l.push(l);
            exp_l.push((l * dt).exp());
            phi_dt.push(phi1(l * dt) * dt);
        }
        Ok(Self {
            params: steady.params,
            dt,
            n_max,
            grid: PhysicalGrid::new(n_max),
            exp_l,
            phi_dt,
            sym_l,
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Advance one step; returns the new state and the minimum grid height
    /// seen while evaluating the nonlinearity.
    pub fn step(&self, h: &SpectralField) -> Result<(SpectralField, f64)> {
        assert_eq!(h.n_max(), self.n_max);
        let (f, min_h) = rhs_on_grid(h, &self.params, &self.grid);
        let mut out = SpectralField::zero(self.n_max);
        let mut max_abs = 0.0f64;
        for n in -(self.n_max as i64)..=(self.n_max as i64) {
            let i = (n + self.n_max as i64) as usize;
            if n == 0 {
                continue;
            }
            let remainder = f.coeff(n) - self.sym_l[i] * h.coeff(n);
            let c = self.exp_l[i] * h.coeff(n) + self.phi_dt[i] * remainder;
            max_abs = max_abs.max(c.norm());
            out.set_coeff(n, c);
        }
        // Mode 0 carries the conserved mass; copy it bit for bit.
        out.set_coeff(0, h.coeff(0));
        if !max_abs.is_finite() || max_abs > 1e8 {
            return Err(Error::BlowUp { t: f64::NAN });
        }
        Ok((out, min_h))
    }
}

/// Diagnostics of one trajectory.
#[derive(Debug, Clone, Serialize)]
pub struct TrajectorySummary {
    pub times: Vec<f64>,
    /// Mean `(h|1)` per sample; constant along the flow.
    pub mass: Vec<f64>,
    /// `|| h(t) - H ||_{L^2}` per sample.
    pub dist: Vec<f64>,
    /// Projection of `h - H` onto the critical mode: `2 Re (h - H)_{-1}`.
    pub signal: Vec<f64>,
    /// Least-squares slope of `log dist` over the final half of the run.
    pub measured_rate: Option<f64>,
    pub cycle: Option<Cycle>,
    /// First time the grid minimum of `h` dropped to zero or below, if ever.
    pub positivity_lost_at: Option<f64>,
    /// Final state, for restarts.
    pub final_state: SpectralField,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Cycle {
    pub period: f64,
    pub amplitude: f64,
}

#[derive(Debug, Clone)]
pub struct EvolveOptions {
    pub dt: f64,
    pub t_end: f64,
    /// Steps between recorded samples.
    pub sample_every: usize,
    /// Stop once this many oscillation periods (upward zero crossings of the
    /// critical-mode signal) have been observed, if set.
    pub max_periods: Option<usize>,
}

impl EvolveOptions {
    pub fn new(dt: f64, t_end: f64) -> Self {
        // Aim for ~8000 samples so cycle detection stays well resolved.
        let steps = (t_end / dt).ceil() as usize;
        Self {
            dt,
            t_end,
            sample_every: (steps / 8000).max(1),
            max_periods: None,
        }
    }
}

/// Integrate from `h0`, recording diagnostics relative to the steady state.
pub fn evolve(
    h0: &SpectralField,
    steady: &SteadyState,
    opts: &EvolveOptions,
) -> Result<TrajectorySummary> {
    if opts.t_end <= 0.0 || !opts.t_end.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "t_end must be positive, got {}",
            opts.t_end
        )));
    }
    let stepper = Stepper::new(steady, opts.dt)?;
    let steps = (opts.t_end / opts.dt).ceil() as usize;

    let mut h = h0.with_n_max(steady.h.n_max());
    let mut times = Vec::new();
    let mut mass = Vec::new();
    let mut dist = Vec::new();
    let mut signal = Vec::new();
    let mut positivity_lost_at = None;

    let mut record = |t: f64, h: &SpectralField| -> f64 {
        times.push(t);
        mass.push(h.coeff(0).re);
        let u = h.minus(&steady.h);
        dist.push(u.l2_norm());
        let s = 2.0 * u.coeff(-1).re;
        signal.push(s);
        s
    };
    let mut prev_signal = record(0.0, &h);

    let mut periods_seen = 0usize;
    for k in 1..=steps {
        let t = k as f64 * opts.dt;
        let (next, min_h) = stepper.step(&h).map_err(|e| match e {
            Error::BlowUp { .. } => Error::BlowUp { t },
            other => other,
        })?;
        if min_h <= 0.0 && positivity_lost_at.is_none() {
            positivity_lost_at = Some(t);
        }
        h = next;
        if k % opts.sample_every == 0 || k == steps {
            let s = record(t, &h);
            if let Some(cap) = opts.max_periods {
                if prev_signal < 0.0 && s >= 0.0 {
                    periods_seen += 1;
                    if periods_seen >= cap {
                        break;
                    }
                }
            }
            prev_signal = s;
        }
    }

    let half = times.len() / 2;
    let measured_rate = fit_log_slope(&times[half..], &dist[half..]);
    let cycle = detect_cycle(&times[half..], &signal[half..]);

    Ok(TrajectorySummary {
        times,
        mass,
        dist,
        signal,
        measured_rate,
        cycle,
        positivity_lost_at,
        final_state: h,
    })
}

/// Least-squares slope of `log(values)` against time. `None` when fewer than
/// two samples are positive.
pub fn fit_log_slope(times: &[f64], values: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = times
        .iter()
        .zip(values.iter())
        .filter(|(_, &v)| v > 0.0)
        .map(|(&t, &v)| (t, v.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let st: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let stt: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sty: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * stt - st * st;
    if denom.abs() < f64::EPSILON * stt.max(1.0) {
        return None;
    }
    Some((n * sty - st * sy) / denom)
}

/// Period and amplitude of a sustained oscillation in a scalar signal.
///
/// The signal is detrended by its mean; the period is the mean spacing of
/// upward zero crossings (linear interpolation). Returns `None` when there
/// are fewer than five crossings, the relative period jitter exceeds 5%, or
/// the oscillation envelope drifts by more than 5% across the window (a
/// decaying or still-growing transient, not a cycle).
pub fn detect_cycle(times: &[f64], signal: &[f64]) -> Option<Cycle> {
    if times.len() < 8 {
        return None;
    }
    let mean = signal.iter().sum::<f64>() / signal.len() as f64;
    let s: Vec<f64> = signal.iter().map(|v| v - mean).collect();

    let mut crossings = Vec::new();
    for k in 1..s.len() {
        if s[k - 1] < 0.0 && s[k] >= 0.0 {
            let frac = s[k - 1] / (s[k - 1] - s[k]);
            crossings.push(times[k - 1] + frac * (times[k] - times[k - 1]));
        }
    }
    if crossings.len() < 5 {
        return None;
    }
    let spacings: Vec<f64> = crossings.windows(2).map(|w| w[1] - w[0]).collect();
    let period = spacings.iter().sum::<f64>() / spacings.len() as f64;
    if period <= 0.0 {
        return None;
    }
    let jitter = spacings
        .iter()
        .map(|d| (d - period).abs())
        .fold(0.0, f64::max)
        / period;
    if jitter > 0.05 {
        return None;
    }

    let third = s.len() / 3;
    let peak = |w: &[f64]| w.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let first = peak(&s[..third]);
    let last = peak(&s[s.len() - third..]);
    if first <= 0.0 || last <= 0.0 {
        return None;
    }
    if (last / first - 1.0).abs() > 0.05 {
        return None;
    }

    let max = s.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = s.iter().cloned().fold(f64::INFINITY, f64::min);
    Some(Cycle {
        period,
        amplitude: 0.5 * (max - min),
    })
}
