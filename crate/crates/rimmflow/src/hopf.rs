//! Tracing of the critical curve `Re lambda+(eps) = 0` in the parameter
//! plane, stability classification, and path transversality.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::C64;
use crate::linop::{SpectrumOptions, leading_pair};
use crate::params::Params;
use crate::perturb::critical_eps2_linear;
use crate::steady::{SteadyOptions, solve_steady};

#[derive(Debug, Clone)]
pub struct HopfOptions {
    pub n_max: usize,
    pub newton_tol: f64,
    pub newton_max_iter: usize,
    /// Gap threshold forwarded to the spectrum report (default `6 b`).
    pub delta5: Option<f64>,
    /// Half-width of the `Critical` band in `Re lambda+`.
    pub classify_tol: f64,
}

impl Default for HopfOptions {
    fn default() -> Self {
        Self {
            n_max: 32,
            newton_tol: 1e-12,
            newton_max_iter: 25,
            delta5: None,
            classify_tol: 1e-9,
        }
    }
}

impl HopfOptions {
    pub fn with_n_max(n_max: usize) -> Self {
        Self {
            n_max,
            ..Self::default()
        }
    }

    fn steady(&self) -> SteadyOptions {
        SteadyOptions {
            n_max: self.n_max,
            tol: self.newton_tol,
            max_iter: self.newton_max_iter,
        }
    }
}

/// Tracked leading eigenvalue at a parameter point. Errors with
/// `GapViolation` when the pair is not separated from the rest of the
/// spectrum. Returns the eigenvalue for seeding the next nearby evaluation.
pub fn lambda_plus_tracked(p: &Params, opts: &HopfOptions, seed: Option<C64>) -> Result<C64> {
    let s = solve_steady(p, &opts.steady())?;
    let report = leading_pair(
        &s,
        &SpectrumOptions {
            delta5: opts.delta5,
            seed,
        },
    )?;
    if !report.gap_ok {
        return Err(Error::GapViolation {
            second_re: report.second_re(),
            threshold: -report.delta5,
        });
    }
    Ok(report.lambda_plus)
}

/// `Re lambda+` from the assembled spectrum at the steady state.
pub fn re_lambda_numeric(p: &Params, n_max: usize) -> Result<f64> {
    Ok(lambda_plus_tracked(p, &HopfOptions::with_n_max(n_max), None)?.re)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Stability {
    Stable,
    Critical,
    Unstable,
}

/// Classify a parameter point by the sign of `Re lambda+`.
pub fn classify(p: &Params, opts: &HopfOptions) -> Result<Stability> {
    let r = lambda_plus_tracked(p, opts, None)?.re;
    Ok(if r < -opts.classify_tol {
        Stability::Stable
    } else if r > opts.classify_tol {
        Stability::Unstable
    } else {
        Stability::Critical
    })
}

/// One traced point of the critical curve.
#[derive(Debug, Clone, Serialize)]
pub struct HopfCurveSample {
    pub eps1: f64,
    pub e2_numeric: f64,
    pub e2_asymptotic: f64,
    /// `|Re lambda+|` at the returned root.
    pub r_at_root: f64,
    pub gap_ok: bool,
}

/// Locate the root in `eps2` of `Re lambda+(eps1, .)` for a single `eps1`.
///
/// Bracketed on `[0, 3 * linearized value]`, bisected to width 1e-10, then
/// polished with one secant step. The returned eigenvalue seeds the next
/// grid point.
pub fn trace_point(
    b: f64,
    eps1: f64,
    root_tol: f64,
    opts: &HopfOptions,
    seed: Option<C64>,
) -> Result<(HopfCurveSample, C64)> {
    let asym = critical_eps2_linear(b, eps1);
    let mut seed = seed;
    let eval = |eps2: f64, seed: &mut Option<C64>| -> Result<f64> {
        let p = Params::new(b, eps1, eps2)?;
        let lambda = lambda_plus_tracked(&p, opts, *seed)?;
        *seed = Some(lambda);
        Ok(lambda.re)
    };

    let mut lo = 0.0;
    let mut hi = 3.0 * asym;
    let mut r_lo = eval(lo, &mut seed)?;
    let mut r_hi = eval(hi, &mut seed)?;
    if r_lo == 0.0 {
        hi = lo;
        r_hi = r_lo;
    } else if r_lo.signum() == r_hi.signum() {
        return Err(Error::NoBracket { eps1, lo, hi });
    }
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        let r_mid = eval(mid, &mut seed)?;
        if r_mid == 0.0 {
            lo = mid;
            hi = mid;
            r_lo = r_mid;
            break;
        }
        if r_mid.signum() == r_lo.signum() {
            lo = mid;
            r_lo = r_mid;
        } else {
            hi = mid;
            r_hi = r_mid;
        }
    }

    // Secant polish; keep whichever endpoint has the smaller residual.
    let (mut best_x, mut best_r) = if r_lo.abs() <= r_hi.abs() {
        (lo, r_lo)
    } else {
        (hi, r_hi)
    };
    if r_hi != r_lo && hi > lo {
        let x = hi - r_hi * (hi - lo) / (r_hi - r_lo);
        if x.is_finite() && x > 0.0 {
            let r = eval(x, &mut seed)?;
            if r.abs() < best_r.abs() {
                best_x = x;
                best_r = r;
            }
        }
    }
    if best_r.abs() > root_tol {
        return Err(Error::NoBracket { eps1, lo, hi });
    }
    let lambda = seed.unwrap();
    Ok((
        HopfCurveSample {
            eps1,
            e2_numeric: best_x,
            e2_asymptotic: asym,
            r_at_root: best_r.abs(),
            gap_ok: true,
        },
        lambda,
    ))
}

/// Trace the first-quadrant critical curve over a grid of `eps1` values.
pub fn trace_critical_curve(
    b: f64,
    eps1_grid: &[f64],
    root_tol: f64,
    opts: &HopfOptions,
) -> Result<Vec<HopfCurveSample>> {
    let mut out = Vec::with_capacity(eps1_grid.len());
    let mut seed = None;
    for &eps1 in eps1_grid {
        let (sample, lambda) = trace_point(b, eps1, root_tol, opts, seed)?;
        seed = Some(lambda);
        out.push(sample);
    }
    Ok(out)
}

/// One point on a branch of the full zero locus of `Re lambda+`.
#[derive(Debug, Clone, Serialize)]
pub struct BranchSample {
    /// 0/1: the slope-1 branch (eps1 > 0 / < 0); 2/3: the slope -3/4 branch.
    pub branch: usize,
    pub radius: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub r_at_root: f64,
}

/// Locate all four zero branches around the origin on circles of the given
/// radii, by angular bisection seeded at the model tangent directions. The
/// default tracer follows only the first-quadrant branch; this is the
/// all-branches variant.
pub fn trace_branches(
    b: f64,
    radii: &[f64],
    root_tol: f64,
    opts: &HopfOptions,
) -> Result<Vec<BranchSample>> {
    let model = crate::perturb::quadratic_model(b);
    let mut out = Vec::new();
    for (branch, angle) in [
        model.tangent_minus[1].atan2(model.tangent_minus[0]) + std::f64::consts::PI,
        model.tangent_minus[1].atan2(model.tangent_minus[0]),
        model.tangent_plus[1].atan2(model.tangent_plus[0]) + std::f64::consts::PI,
        model.tangent_plus[1].atan2(model.tangent_plus[0]),
    ]
    .into_iter()
    .enumerate()
    {
        for &radius in radii {
            let mut seed = None;
            let r_at = |phi: f64, seed: &mut Option<C64>| -> Result<f64> {
                let p = Params::new(b, radius * phi.cos(), radius * phi.sin())?;
                let lambda = lambda_plus_tracked(&p, opts, *seed)?;
                *seed = Some(lambda);
                Ok(lambda.re)
            };
            let mut lo = angle - 0.3;
            let mut hi = angle + 0.3;
            let mut r_lo = r_at(lo, &mut seed)?;
            let r_hi = r_at(hi, &mut seed)?;
            if r_lo.signum() == r_hi.signum() {
                return Err(Error::NoBracket {
                    eps1: radius * angle.cos(),
                    lo,
                    hi,
                });
            }
            for _ in 0..45 {
                let mid = 0.5 * (lo + hi);
                let r_mid = r_at(mid, &mut seed)?;
                if r_mid.signum() == r_lo.signum() {
                    lo = mid;
                    r_lo = r_mid;
                } else {
                    hi = mid;
                }
            }
            let phi = 0.5 * (lo + hi);
            let residual = r_at(phi, &mut seed)?.abs();
            if residual > root_tol {
                return Err(Error::NoBracket {
                    eps1: radius * phi.cos(),
                    lo,
                    hi,
                });
            }
            out.push(BranchSample {
                branch,
                radius,
                eps1: radius * phi.cos(),
                eps2: radius * phi.sin(),
                r_at_root: residual,
            });
        }
    }
    Ok(out)
}

/// A simple path in the parameter plane.
#[derive(Debug, Clone, Serialize)]
pub enum PathSpec {
    /// Straight segment, parametrized by `s in [0, 1]`.
    Segment { start: [f64; 2], end: [f64; 2] },
    /// Piecewise-linear interpolation of `(s, eps)` samples, sorted in `s`.
    Samples(Vec<(f64, [f64; 2])>),
}

impl PathSpec {
    pub fn domain(&self) -> (f64, f64) {
        match self {
            PathSpec::Segment { .. } => (0.0, 1.0),
            PathSpec::Samples(pts) => (pts.first().unwrap().0, pts.last().unwrap().0),
        }
    }

    pub fn eval(&self, s: f64) -> [f64; 2] {
        match self {
            PathSpec::Segment { start, end } => [
                start[0] + s * (end[0] - start[0]),
                start[1] + s * (end[1] - start[1]),
            ],
            PathSpec::Samples(pts) => {
                if s <= pts.first().unwrap().0 {
                    return pts.first().unwrap().1;
                }
                if s >= pts.last().unwrap().0 {
                    return pts.last().unwrap().1;
                }
                for w in pts.windows(2) {
                    let (s0, p0) = w[0];
                    let (s1, p1) = w[1];
                    if s >= s0 && s <= s1 {
                        let t = if s1 > s0 { (s - s0) / (s1 - s0) } else { 0.0 };
                        return [p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1])];
                    }
                }
                pts.last().unwrap().1
            }
        }
    }
}

/// Derivative of `Re lambda+` along a path at its crossing of the critical
/// curve near `s0_hint` (centered difference). Positive values certify the
/// transversality of the crossing in the path's orientation.
///
/// Crossing location: coarse scan (32 samples) for a sign change, then
/// bisection. A path that stays on the curve (no sign change but
/// `|Re lambda+|` below the classification tolerance somewhere) is treated
/// as crossing at its closest-to-critical sample.
pub fn path_transversality(
    b: f64,
    path: &PathSpec,
    s0_hint: f64,
    opts: &HopfOptions,
) -> Result<f64> {
    let (s_lo, s_hi) = path.domain();
    let span = s_hi - s_lo;
    if span <= 0.0 || !span.is_finite() {
        return Err(Error::InvalidParameter("degenerate path domain".into()));
    }

    let mut seed = None;
    let r_at = |s: f64, b: f64, seed: &mut Option<C64>| -> Result<f64> {
        let [e1, e2] = path.eval(s);
        let p = Params::new(b, e1, e2)?;
        let lambda = lambda_plus_tracked(&p, opts, *seed)?;
        *seed = Some(lambda);
        Ok(lambda.re)
    };

    const SCAN: usize = 32;
    let mut values = Vec::with_capacity(SCAN + 1);
    for k in 0..=SCAN {
        let s = s_lo + span * k as f64 / SCAN as f64;
        values.push((s, r_at(s, b, &mut seed)?));
    }

    // Prefer the sign change nearest the hint.
    let mut crossing: Option<(f64, f64)> = None;
    for w in values.windows(2) {
        let (s0, r0) = w[0];
        let (s1, r1) = w[1];
        if r0 == 0.0 || r0.signum() != r1.signum() {
            let mid = 0.5 * (s0 + s1);
            match crossing {
                Some((best, _)) if (best - s0_hint).abs() <= (mid - s0_hint).abs() => {}
                _ => crossing = Some((mid, s1 - s0)),
            }
        }
    }

    let s_star = match crossing {
        Some((mid, width)) => {
            let mut lo = mid - 0.5 * width;
            let mut hi = mid + 0.5 * width;
            let mut r_lo = r_at(lo, b, &mut seed)?;
            for _ in 0..60 {
                if hi - lo <= span * 1e-12 {
                    break;
                }
                let m = 0.5 * (lo + hi);
                let r_m = r_at(m, b, &mut seed)?;
                if r_m == 0.0 {
                    lo = m;
                    hi = m;
                    break;
                }
                if r_m.signum() == r_lo.signum() {
                    lo = m;
                    r_lo = r_m;
                } else {
                    hi = m;
                }
            }
            0.5 * (lo + hi)
        }
        None => {
            // On-curve path: accept the sample closest to criticality.
            let (s_min, r_min) = values
                .iter()
                .copied()
                .min_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
                .unwrap();
            if r_min.abs() > opts.classify_tol.max(1e-7) {
                return Err(Error::NoCrossing);
            }
            s_min
        }
    };

    let step = span * 1e-3;
    let r_plus = r_at(s_star + step, b, &mut seed)?;
    let r_minus = r_at(s_star - step, b, &mut seed)?;
    Ok((r_plus - r_minus) / (2.0 * step))
}
