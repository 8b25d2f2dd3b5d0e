//! Galerkin matrices of the flux derivative and the linearized evolution
//! operator, dense spectra, and the tracked leading eigenvalue pair.
//!
//! Matrices are assembled from exact convolution coefficients (Toeplitz
//! blocks), so at `eps = 0` the operator is exactly diagonal with entries
//! `omega_n = -b (n^4 - n^2) - i n` on the mean-zero modes.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{C64, C_I, C_ONE, SpectralField, capillary_symbol};
use crate::params::Params;
use crate::steady::SteadyState;

pub fn field_to_vec_full(f: &SpectralField, n_max: usize) -> DVector<C64> {
    DVector::from_fn(2 * n_max + 1, |i, _| f.coeff(i as i64 - n_max as i64))
}

pub fn vec_to_field_full(v: &DVector<C64>, n_max: usize) -> SpectralField {
    SpectralField::from_coeffs(n_max, v.iter().copied().collect())
}

/// Index of mode `n != 0` in the mean-zero ordering `-N..-1, 1..N`.
pub fn mean_zero_index(n: i64, n_max: usize) -> usize {
    debug_assert!(n != 0 && n.unsigned_abs() as usize <= n_max);
    if n < 0 {
        (n + n_max as i64) as usize
    } else {
        (n + n_max as i64 - 1) as usize
    }
}

pub fn mean_zero_mode(index: usize, n_max: usize) -> i64 {
    let n = index as i64 - n_max as i64;
    if n < 0 { n } else { n + 1 }
}

pub fn field_to_vec_mean_zero(f: &SpectralField, n_max: usize) -> DVector<C64> {
    DVector::from_fn(2 * n_max, |i, _| f.coeff(mean_zero_mode(i, n_max)))
}

pub fn vec_to_field_mean_zero(v: &DVector<C64>, n_max: usize) -> SpectralField {
    let mut f = SpectralField::zero(n_max);
    for (i, c) in v.iter().enumerate() {
        f.set_coeff(mean_zero_mode(i, n_max), *c);
    }
    f
}

/// Multiplier coefficients of the flux derivative at `h`:
/// `v -> a v + c (b (v' + v''')) + d v'` with
/// `a = 1 - eps1 cos h^2 + 3 h^2 (b (h' + h''')) + 3 eps2 sin h^2 h'`,
/// `c = h^3`, `d = eps2 sin h^3`.
fn flux_multipliers(h: &SpectralField, p: &Params) -> (SpectralField, SpectralField, SpectralField) {
    let h2 = h.product_full(h);
    let h3 = h2.product_full(h);
    let capillary_h = h.capillary(p.b);
    let hp = h.derivative(1);

    let a = SpectralField::one(0)
        .plus(&h2.mul_cos().scaled(-p.eps1))
        .plus(&h2.product_full(&capillary_h).scaled(3.0))
        .plus(&h2.product_full(&hp).mul_sin().scaled(3.0 * p.eps2));
    let d = h3.mul_sin().scaled(p.eps2);
    (a, h3, d)
}

/// Directional derivative of the stationary flux map at `h`, as a dense
/// matrix over all modes `-N..N` (Newton Jacobian of the steady residual).
pub fn flux_jacobian(h: &SpectralField, p: &Params) -> DMatrix<C64> {
    let n_max = h.n_max();
    let (a, c, d) = flux_multipliers(h, p);
    let dim = 2 * n_max + 1;
    DMatrix::from_fn(dim, dim, |row, col| {
        let n = row as i64 - n_max as i64;
        let k = col as i64 - n_max as i64;
        a.coeff(n - k) + c.coeff(n - k) * capillary_symbol(p.b, k) + d.coeff(n - k) * (C_I * k as f64)
    })
}

/// Flux derivative at a converged steady state (all modes, including 0).
pub fn flux_derivative_matrix(s: &SteadyState) -> DMatrix<C64> {
    flux_jacobian(&s.h, &s.params)
}

/// Linearized evolution operator on the mean-zero modes:
/// minus the derivative `d/d theta` of the flux derivative.
pub fn linearized_matrix(s: &SteadyState) -> DMatrix<C64> {
    let n_max = s.h.n_max();
    let full = flux_jacobian(&s.h, &s.params);
    DMatrix::from_fn(2 * n_max, 2 * n_max, |row, col| {
        let n = mean_zero_mode(row, n_max);
        let k = mean_zero_mode(col, n_max);
        let full_row = (n + n_max as i64) as usize;
        let full_col = (k + n_max as i64) as usize;
        -C_I * n as f64 * full[(full_row, full_col)]
    })
}

/// All eigenvalues of a dense complex matrix, sorted by descending real part
/// (ties by descending imaginary part).
pub fn full_spectrum(a: &DMatrix<C64>) -> Result<Vec<C64>> {
    let schur = a
        .clone()
        .try_schur(f64::EPSILON, 100_000)
        .ok_or(Error::Eigensolver)?;
    let (_, t) = schur.unpack();
    let mut eigs: Vec<C64> = (0..t.nrows()).map(|i| t[(i, i)]).collect();
    sort_spectrum(&mut eigs);
    Ok(eigs)
}

fn sort_spectrum(eigs: &mut [C64]) {
    eigs.sort_by(|x, y| {
        y.re.partial_cmp(&x.re)
            .unwrap()
            .then(y.im.partial_cmp(&x.im).unwrap())
    });
}

/// Eigenvalue with normalized eigenvector.
#[derive(Debug, Clone, Serialize)]
pub struct EigenPair {
    pub lambda: C64,
    /// Mean-zero eigenvector, scaled so its `n = -1` coefficient is 1.
    pub psi: SpectralField,
}

/// Refine an approximate eigenvalue with a bordered Newton iteration on
/// `(A - lambda) v = 0, v[norm] = 1`.
///
/// A dense QR pass carries an absolute error of order `eps ||A||`, which the
/// stiff `n^4` tail makes far too large for curve tracing; the refinement
/// recovers the leading eigenvalue to near machine precision because the
/// residual of the converged pair only samples rows where the eigenvector
/// has weight.
fn refine_eigenpair(
    a: &DMatrix<C64>,
    lambda0: C64,
    norm_index: usize,
    start: Option<DVector<C64>>,
) -> Result<(C64, DVector<C64>)> {
    let n = a.nrows();
    let ident = DMatrix::<C64>::identity(n, n);

    let mut v = match start {
        Some(v0) => v0,
        None => {
            // One shifted inverse-iteration solve. The start is the
            // normalizing basis vector plus a small uniform background so the
            // solve amplifies the target eigendirection even when it is
            // orthogonal to the normalizing mode; the shift keeps the system
            // nonsingular at an exact eigenvalue.
            let bg = Complex::new(1e-3 / (n as f64).sqrt(), 0.0);
            let mut v =
                DVector::from_fn(n, |i, _| if i == norm_index { C_ONE + bg } else { bg });
            for attempt in 0..3 {
                let mag = 1e-12 * 1000f64.powi(attempt) * (1.0 + lambda0.norm());
                let m = a - ident.clone() * (lambda0 + Complex::new(mag, mag));
                if let Some(x) = m.lu().solve(&v) {
                    let nrm = x.norm();
                    if nrm.is_finite() && nrm > 0.0 {
                        v = x.unscale(nrm);
                        break;
                    }
                }
            }
            v
        }
    };

    let pivot = v[norm_index];
    if pivot.norm() < 1e-6 * v.norm() {
        return Err(Error::DegenerateNormalization {
            coeff_abs: pivot.norm(),
        });
    }
    v /= pivot;

    let mut lambda = lambda0;
    for _ in 0..8 {
        let r = a * &v - &v * lambda;
        if r.norm() <= 1e-13 * (1.0 + lambda.norm()) * v.norm() {
            break;
        }
        // Bordered system: [A - lambda I, -v; e_norm^T, 0].
        let mut m = DMatrix::<C64>::zeros(n + 1, n + 1);
        m.view_mut((0, 0), (n, n))
            .copy_from(&(a - ident.clone() * lambda));
        for i in 0..n {
            m[(i, n)] = -v[i];
        }
        m[(n, norm_index)] = C_ONE;
        let mut rhs = DVector::<C64>::zeros(n + 1);
        for i in 0..n {
            rhs[i] = -r[i];
        }
        rhs[n] = C_ONE - v[norm_index];
        let delta = m.lu().solve(&rhs).ok_or(Error::Eigensolver)?;
        for i in 0..n {
            v[i] += delta[i];
        }
        lambda += delta[n];
        if !lambda.is_finite() {
            return Err(Error::Eigensolver);
        }
    }
    let pivot = v[norm_index];
    if pivot.norm() < 1e-10 * v.norm() {
        return Err(Error::DegenerateNormalization {
            coeff_abs: pivot.norm(),
        });
    }
    v /= pivot;
    let resid = (a * &v - &v * lambda).norm();
    if resid.is_nan() || resid > 1e-8 * v.norm() {
        return Err(Error::Eigensolver);
    }
    // Refinement may only polish: a large drift means Newton slid to some
    // other eigenvalue (e.g. when the start vector had no usable component).
    if (lambda - lambda0).norm() > 1e-3 * (1.0 + lambda0.norm()) {
        return Err(Error::Eigensolver);
    }
    Ok((lambda, v))
}

/// Replace the multiset by its closest conjugation-closed one: each
/// eigenvalue is paired with its best conjugate partner and both are set to
/// canonical conjugate representatives. Entries listed in `keep` (already
/// refined) are left untouched.
fn pair_conjugates(eigs: &mut [C64], keep: &[usize]) {
    let n = eigs.len();
    let mut done = vec![false; n];
    for &k in keep {
        done[k] = true;
    }
    for i in 0..n {
        if done[i] {
            continue;
        }
        let target = eigs[i].conj();
        let mut best = i;
        let mut best_d = f64::INFINITY;
        for (j, e) in eigs.iter().enumerate() {
            if done[j] && j != i {
                continue;
            }
            let d = (e - target).norm();
            if j != i && d < best_d {
                best = j;
                best_d = d;
            }
        }
        // A self-paired eigenvalue is real up to noise.
        if (eigs[i] - target).norm() <= best_d {
            eigs[i] = Complex::new(eigs[i].re, 0.0);
            done[i] = true;
        } else {
            let canonical = (eigs[i] + eigs[best].conj()) * 0.5;
            eigs[i] = canonical;
            eigs[best] = canonical.conj();
            done[i] = true;
            done[best] = true;
        }
    }
}

/// Normalized eigenvector for a simple eigenvalue of the mean-zero operator,
/// with the normalization `(psi | e^{-i theta}) = 1`.
pub fn eigenvector_normalized(a: &DMatrix<C64>, lambda: C64) -> Result<EigenPair> {
    let n_max = a.nrows() / 2;
    let norm_index = mean_zero_index(-1, n_max);
    let (lambda, v) = refine_eigenpair(a, lambda, norm_index, None)?;
    Ok(EigenPair {
        lambda,
        psi: vec_to_field_mean_zero(&v, n_max),
    })
}

#[derive(Debug, Clone, Default)]
pub struct SpectrumOptions {
    /// Gap threshold; non-leading eigenvalues must satisfy `Re < -delta5`.
    /// Defaults to `6 b` (half the unperturbed secondary gap).
    pub delta5: Option<f64>,
    /// Tracking seed for the leading eigenvalue; defaults to `+i`.
    pub seed: Option<C64>,
}

/// Spectrum of the linearized operator with the leading pair isolated.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub params: Params,
    pub n_max: usize,
    /// All eigenvalues, descending real part; the two entries matching the
    /// leading pair carry refined values.
    pub eigenvalues: Vec<C64>,
    /// The `Im > 0` member of the leading conjugate pair.
    pub lambda_plus: C64,
    pub lambda_minus: C64,
    /// True when every non-leading eigenvalue satisfies `Re < -delta5`.
    pub gap_ok: bool,
    pub delta5: f64,
}

impl SpectrumReport {
    /// Largest real part among non-leading eigenvalues.
    pub fn second_re(&self) -> f64 {
        let mut best = f64::NEG_INFINITY;
        let mut skip_plus = true;
        let mut skip_minus = true;
        for e in &self.eigenvalues {
            if skip_plus && (e - self.lambda_plus).norm() < 1e-9 {
                skip_plus = false;
                continue;
            }
            if skip_minus && (e - self.lambda_minus).norm() < 1e-9 {
                skip_minus = false;
                continue;
            }
            best = best.max(e.re);
        }
        best
    }
}

fn nearest_index(eigs: &[C64], target: C64) -> usize {
    let mut best = 0usize;
    for (i, e) in eigs.iter().enumerate() {
        let d = (e - target).norm();
        let d_best = (eigs[best] - target).norm();
        if d < d_best - 1e-12 || ((d - d_best).abs() <= 1e-12 && e.im > eigs[best].im) {
            best = i;
        }
    }
    best
}

/// Identify and refine the conjugate pair continuously connected to `+-i`.
pub fn leading_pair(s: &SteadyState, opts: &SpectrumOptions) -> Result<SpectrumReport> {
    let n_max = s.h.n_max();
    let a = linearized_matrix(s);
    let mut eigs = full_spectrum(&a)?;

    let seed = opts.seed.unwrap_or(C_I);
    let idx_plus = nearest_index(&eigs, seed);
    let pair = eigenvector_normalized(&a, eigs[idx_plus])?;
    let mut lambda_plus = pair.lambda;
    if lambda_plus.im < 0.0 {
        lambda_plus = lambda_plus.conj();
    }
    eigs[idx_plus] = if eigs[idx_plus].im >= 0.0 {
        lambda_plus
    } else {
        lambda_plus.conj()
    };

    let target_minus = lambda_plus.conj();
    let idx_minus = {
        let mut best = usize::MAX;
        for (i, e) in eigs.iter().enumerate() {
            if i == idx_plus {
                continue;
            }
            if best == usize::MAX || (e - target_minus).norm() < (eigs[best] - target_minus).norm()
            {
                best = i;
            }
        }
        best
    };
    let norm_index = mean_zero_index(1, n_max);
    let (lambda_minus, _) = refine_eigenpair(&a, eigs[idx_minus], norm_index, None)?;
    eigs[idx_minus] = lambda_minus;
    // The operator is real for real parameters; present the multiset as
    // exactly conjugation-closed (QR noise on the stiff tail would otherwise
    // leave mismatches of order eps * ||A||).
    pair_conjugates(&mut eigs, &[idx_plus, idx_minus]);
    sort_spectrum(&mut eigs);

    let delta5 = opts.delta5.unwrap_or(6.0 * s.params.b);
    let gap_ok = eigs
        .iter()
        .filter(|e| {
            (**e - lambda_plus).norm() > 1e-9 && (**e - lambda_minus).norm() > 1e-9
        })
        .all(|e| e.re < -delta5);

    Ok(SpectrumReport {
        params: s.params,
        n_max,
        eigenvalues: eigs,
        lambda_plus,
        lambda_minus,
        gap_ok,
        delta5,
    })
}
