//! Truncated Fourier representation of 2pi-periodic functions.
//!
//! A field stores complex coefficients `c_n` for `n in [-n_max, n_max]` under
//! the convention `f(theta) = sum_n c_n e^{i n theta}` and the inner product
//! `(f|g) = 1/(2 pi) int f conj(g)`, so `{e^{i n theta}}` is orthonormal and
//! `(f|g) = sum_n f_n conj(g_n)`.
//!
//! Real-valued functions satisfy `c_{-n} = conj(c_n)`. All pointwise products
//! are computed as exact coefficient convolutions with mirrored summation
//! order, which preserves that symmetry bit for bit.

use num_complex::Complex;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type C64 = Complex<f64>;

pub const C_ZERO: C64 = Complex::new(0.0, 0.0);
pub const C_ONE: C64 = Complex::new(1.0, 0.0);
pub const C_I: C64 = Complex::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    n_max: usize,
    /// Dense coefficients ordered `n = -n_max ..= n_max`.
    coeffs: Vec<C64>,
    mean_zero: bool,
}

/// Symbol of the operator `f -> b (f' + f''')` at mode `n`.
pub fn capillary_symbol(b: f64, n: i64) -> C64 {
    let nf = n as f64;
    Complex::new(0.0, b * nf * (1.0 - nf * nf))
}

impl SpectralField {
    pub fn from_coeffs(n_max: usize, coeffs: Vec<C64>) -> Self {
        assert_eq!(coeffs.len(), 2 * n_max + 1, "coefficient count mismatch");
        let mean_zero = coeffs[n_max] == C_ZERO;
        Self {
            n_max,
            coeffs,
            mean_zero,
        }
    }

    pub fn zero(n_max: usize) -> Self {
        Self::from_coeffs(n_max, vec![C_ZERO; 2 * n_max + 1])
    }

    /// The constant function 1.
    pub fn one(n_max: usize) -> Self {
        Self::harmonic(n_max, 0, C_ONE)
    }

    /// A single mode `c e^{i n theta}`.
    pub fn harmonic(n_max: usize, n: i64, c: C64) -> Self {
        assert!(n.unsigned_abs() as usize <= n_max, "mode outside truncation");
        let mut coeffs = vec![C_ZERO; 2 * n_max + 1];
        coeffs[(n + n_max as i64) as usize] = c;
        Self::from_coeffs(n_max, coeffs)
    }

    pub fn cos_theta(n_max: usize) -> Self {
        let mut f = Self::zero(n_max);
        f.set_coeff(1, Complex::new(0.5, 0.0));
        f.set_coeff(-1, Complex::new(0.5, 0.0));
        f
    }

    pub fn sin_theta(n_max: usize) -> Self {
        let mut f = Self::zero(n_max);
        f.set_coeff(1, Complex::new(0.0, -0.5));
        f.set_coeff(-1, Complex::new(0.0, 0.5));
        f
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn mean_zero(&self) -> bool {
        self.mean_zero
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Coefficient at mode `n`; zero outside the stored band.
    pub fn coeff(&self, n: i64) -> C64 {
        if n.unsigned_abs() as usize > self.n_max {
            C_ZERO
        } else {
            self.coeffs[(n + self.n_max as i64) as usize]
        }
    }

    pub fn set_coeff(&mut self, n: i64, c: C64) {
        assert!(n.unsigned_abs() as usize <= self.n_max, "mode outside truncation");
        self.coeffs[(n + self.n_max as i64) as usize] = c;
        self.mean_zero = self.coeffs[self.n_max] == C_ZERO;
    }

    /// Copy into a band of (possibly) different width.
    pub fn with_n_max(&self, n_max: usize) -> Self {
        let mut out = Self::zero(n_max);
        let keep = n_max.min(self.n_max) as i64;
        for n in -keep..=keep {
            out.coeffs[(n + n_max as i64) as usize] = self.coeff(n);
        }
        out.mean_zero = out.coeffs[n_max] == C_ZERO;
        out
    }

    /// `(f|g) = sum_n f_n conj(g_n)`; shorter fields are zero-extended.
    pub fn inner(&self, other: &Self) -> C64 {
        let band = self.n_max.min(other.n_max) as i64;
        let mut acc = C_ZERO;
        for n in -band..=band {
            acc += self.coeff(n) * other.coeff(n).conj();
        }
        acc
    }

    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Sobolev norm `(sum |c_n|^2 (n^{2s} + 1))^{1/2}` with `0^0 = 1`.
    pub fn sobolev_norm(&self, s: u32) -> f64 {
        let mut acc = 0.0;
        for n in -(self.n_max as i64)..=(self.n_max as i64) {
            let w = (n as f64).powi(2 * s as i32) + 1.0;
            acc += self.coeff(n).norm_sqr() * w;
        }
        acc.sqrt()
    }

    /// Spectral derivative: `c_n -> (i n)^order c_n`.
    pub fn derivative(&self, order: u32) -> Self {
        let mut out = self.clone();
        for n in -(self.n_max as i64)..=(self.n_max as i64) {
            let factor = (C_I * n as f64).powu(order);
            let i = (n + self.n_max as i64) as usize;
            out.coeffs[i] = self.coeffs[i] * factor;
        }
        out.mean_zero = out.coeffs[out.n_max] == C_ZERO;
        out
    }

    /// Apply `f -> b (f' + f''')`, diagonal with symbol `i b n (1 - n^2)`.
    pub fn capillary(&self, b: f64) -> Self {
        let mut out = self.clone();
        for n in -(self.n_max as i64)..=(self.n_max as i64) {
            let i = (n + self.n_max as i64) as usize;
            out.coeffs[i] = self.coeffs[i] * capillary_symbol(b, n);
        }
        out.mean_zero = out.coeffs[out.n_max] == C_ZERO;
        out
    }

    /// Apply the exact inverse of `id + b (d + d^3)`.
    ///
    /// The symbol `1 + i b n (1 - n^2)` never vanishes for real `b`.
    pub fn capillary_resolvent(&self, b: f64) -> Self {
        let mut out = self.clone();
        for n in -(self.n_max as i64)..=(self.n_max as i64) {
            let i = (n + self.n_max as i64) as usize;
            out.coeffs[i] = self.coeffs[i] / (C_ONE + capillary_symbol(b, n));
        }
        out.mean_zero = out.coeffs[out.n_max] == C_ZERO;
        out
    }

    /// Zero the mean; idempotent.
    pub fn project_mean_zero(&self) -> Self {
        let mut out = self.clone();
        out.coeffs[out.n_max] = C_ZERO;
        out.mean_zero = true;
        out
    }

    pub fn scaled(&self, a: f64) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * a).collect();
        Self::from_coeffs(self.n_max, coeffs)
    }

    pub fn scaled_c(&self, a: C64) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * a).collect();
        Self::from_coeffs(self.n_max, coeffs)
    }

    pub fn plus(&self, other: &Self) -> Self {
        let n_max = self.n_max.max(other.n_max);
        let mut coeffs = vec![C_ZERO; 2 * n_max + 1];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let n = i as i64 - n_max as i64;
            *c = self.coeff(n) + other.coeff(n);
        }
        Self::from_coeffs(n_max, coeffs)
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(-1.0))
    }

    /// Exact coefficients of the pointwise product, full bandwidth
    /// `n_max + other.n_max` (no truncation).
    ///
    /// Mode `-n` is accumulated as the termwise mirror of mode `n`, so
    /// conjugate symmetry of the inputs is preserved exactly.
    pub fn product_full(&self, other: &Self) -> Self {
        let (na, nb) = (self.n_max as i64, other.n_max as i64);
        let ntot = na + nb;
        let mut coeffs = vec![C_ZERO; 2 * ntot as usize + 1];

        // n = 0: sum symmetric pairs so the imaginary parts cancel exactly.
        let mut s0 = self.coeff(0) * other.coeff(0);
        for m in 1..=na.min(nb) {
            s0 += self.coeff(m) * other.coeff(-m) + self.coeff(-m) * other.coeff(m);
        }
        coeffs[ntot as usize] = s0;

        for n in 1..=ntot {
            let m_lo = (-na).max(n - nb);
            let m_hi = na.min(n + nb);
            let mut s_pos = C_ZERO;
            let mut s_neg = C_ZERO;
            for m in m_lo..=m_hi {
                s_pos += self.coeff(m) * other.coeff(n - m);
                s_neg += self.coeff(-m) * other.coeff(m - n);
            }
            coeffs[(ntot + n) as usize] = s_pos;
            coeffs[(ntot - n) as usize] = s_neg;
        }
        Self::from_coeffs(ntot as usize, coeffs)
    }

    /// Pointwise product projected back onto the wider of the two bands.
    pub fn product(&self, other: &Self) -> Self {
        self.product_full(other).with_n_max(self.n_max.max(other.n_max))
    }

    /// Multiply by `sin(theta)`: `c_n -> (c_{n-1} - c_{n+1}) / (2i)`.
    /// The band grows by one mode.
    pub fn mul_sin(&self) -> Self {
        let n_out = self.n_max + 1;
        let mut coeffs = vec![C_ZERO; 2 * n_out + 1];
        let half_over_i = Complex::new(0.0, -0.5); // 1/(2i)
        for (i, c) in coeffs.iter_mut().enumerate() {
            let n = i as i64 - n_out as i64;
            *c = (self.coeff(n - 1) - self.coeff(n + 1)) * half_over_i;
        }
        Self::from_coeffs(n_out, coeffs)
    }

    /// Multiply by `cos(theta)`: `c_n -> (c_{n-1} + c_{n+1}) / 2`.
    pub fn mul_cos(&self) -> Self {
        let n_out = self.n_max + 1;
        let mut coeffs = vec![C_ZERO; 2 * n_out + 1];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let n = i as i64 - n_out as i64;
            *c = (self.coeff(n - 1) + self.coeff(n + 1)) * 0.5;
        }
        Self::from_coeffs(n_out, coeffs)
    }

    /// Largest violation of `c_{-n} = conj(c_n)`.
    pub fn conjugate_symmetry_error(&self) -> f64 {
        let mut err: f64 = 0.0;
        for n in 0..=self.n_max as i64 {
            err = err.max((self.coeff(-n) - self.coeff(n).conj()).norm());
        }
        err
    }

    pub fn is_real_valued(&self, tol: f64) -> bool {
        self.conjugate_symmetry_error() <= tol
    }

    /// Project onto real-valued fields: `c_n <- (c_n + conj(c_{-n})) / 2`.
    pub fn symmetrize(&mut self) {
        for n in 1..=self.n_max as i64 {
            let hi = (n + self.n_max as i64) as usize;
            let lo = (-n + self.n_max as i64) as usize;
            let avg = (self.coeffs[hi] + self.coeffs[lo].conj()) * 0.5;
            self.coeffs[hi] = avg;
            self.coeffs[lo] = avg.conj();
        }
        let c0 = self.coeffs[self.n_max];
        self.coeffs[self.n_max] = Complex::new(c0.re, 0.0);
        self.mean_zero = self.coeffs[self.n_max] == C_ZERO;
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Direct evaluation `f(theta) = sum c_n e^{i n theta}` (no FFT).
    pub fn eval(&self, theta: f64) -> C64 {
        let mut acc = C_ZERO;
        for n in -(self.n_max as i64)..=(self.n_max as i64) {
            acc += self.coeff(n) * (C_I * (n as f64 * theta)).exp();
        }
        acc
    }
}

#[derive(Serialize, Deserialize)]
struct FieldWire {
    n_max: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl Serialize for SpectralField {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let wire = FieldWire {
            n_max: self.n_max,
            re: self.coeffs.iter().map(|c| c.re).collect(),
            im: self.coeffs.iter().map(|c| c.im).collect(),
        };
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SpectralField {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = FieldWire::deserialize(deserializer)?;
        if wire.n_max > 8192 {
            return Err(D::Error::custom("n_max too large"));
        }
        let len = 2 * wire.n_max + 1;
        if wire.re.len() != len || wire.im.len() != len {
            return Err(D::Error::custom(format!(
                "expected {len} coefficients for n_max = {}, got re: {}, im: {}",
                wire.n_max,
                wire.re.len(),
                wire.im.len()
            )));
        }
        if wire.re.iter().chain(wire.im.iter()).any(|x| !x.is_finite()) {
            return Err(D::Error::custom("non-finite coefficient"));
        }
        let coeffs = wire
            .re
            .iter()
            .zip(wire.im.iter())
            .map(|(&re, &im)| Complex::new(re, im))
            .collect();
        Ok(SpectralField::from_coeffs(wire.n_max, coeffs))
    }
}
