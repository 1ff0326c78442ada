//! Double-precision Hurwitz, Riemann and alternating Lerch zeta functions for
//! `Re(s) > 1`, plus the unit-step forward difference.
//!
//! Hurwitz zeta is evaluated by Euler-Maclaurin summation: `N` leading terms
//! are summed directly and the tail is replaced by its integral, the half
//! endpoint term, and `M` Bernoulli corrections. The reported error bound is
//! twice the first omitted correction (scaled by the usual complex-`s`
//! remainder factor) plus a rounding allowance.

use std::ops::{Add, Mul};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Result, ZetaError};
use crate::exact_poly::{bernoulli_number, binomial, rat_int, rational_to_f64};

pub type ComplexValue = Complex64;

/// Largest Euler-Maclaurin correction order accepted by [`EvalParams`].
pub const MAX_EM_ORDER: usize = 60;

/// Cooperative cancellation flag polled by long-running sums.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

#[derive(Clone, Debug)]
pub struct EvalParams {
    /// Relative accuracy requested from every series evaluation.
    pub target_rel_tol: f64,
    /// Hard cap on directly summed terms.
    pub max_terms: u64,
    /// Number of directly summed Euler-Maclaurin terms; `None` picks
    /// `max(20, ceil|s|, ceil(10 - x))`.
    pub em_shift: Option<u64>,
    pub em_correction_order: usize,
    pub cancel: Option<CancelToken>,
}

impl Default for EvalParams {
    fn default() -> Self {
        EvalParams {
            target_rel_tol: 1e-12,
            max_terms: 10_000_000,
            em_shift: None,
            em_correction_order: 15,
            cancel: None,
        }
    }
}

impl EvalParams {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.target_rel_tol = tol;
        self
    }

    pub fn with_max_terms(mut self, max_terms: u64) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn with_em_shift(mut self, shift: u64) -> Self {
        self.em_shift = Some(shift);
        self
    }

    pub fn with_cancel(mut self, token: CancelToken) -> Self {
        self.cancel = Some(token);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.target_rel_tol.is_finite() && self.target_rel_tol >= 10.0 * f64::EPSILON) {
            return Err(ZetaError::domain(format!(
                "target_rel_tol must be at least {:e}, got {}",
                10.0 * f64::EPSILON,
                self.target_rel_tol
            )));
        }
        if self.max_terms == 0 {
            return Err(ZetaError::domain("max_terms must be positive"));
        }
        if self.em_shift == Some(0) {
            return Err(ZetaError::domain("em_shift must be positive"));
        }
        if self.em_correction_order == 0 || self.em_correction_order > MAX_EM_ORDER {
            return Err(ZetaError::domain(format!("em_correction_order must be in 1..={MAX_EM_ORDER}")));
        }
        Ok(())
    }

    pub(crate) fn check_cancel(&self) -> Result<()> {
        match &self.cancel {
            Some(t) if t.is_cancelled() => Err(ZetaError::Cancelled),
            _ => Ok(()),
        }
    }
}

/// A series value together with a bound on its truncation error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesResult {
    pub value: ComplexValue,
    pub error_bound: f64,
    pub terms_used: u64,
}

impl SeriesResult {
    pub fn exact(value: ComplexValue) -> Self {
        SeriesResult { value, error_bound: 0.0, terms_used: 0 }
    }

    pub(crate) fn finite(self) -> Result<Self> {
        if self.value.re.is_finite() && self.value.im.is_finite() && self.error_bound.is_finite() {
            Ok(self)
        } else {
            Err(ZetaError::NonFinite)
        }
    }
}

/// `base^(-sigma)`, with a `powi`/`sqrt` fast path for integer and
/// half-integer `sigma`.
#[inline]
fn real_power(base: f64, sigma: f64) -> f64 {
    let twice = 2.0 * sigma;
    if twice.abs() <= 64.0 && twice == twice.trunc() {
        let m = sigma.floor();
        let v = base.powi(-(m as i32));
        if sigma == m {
            v
        } else {
            v / base.sqrt()
        }
    } else {
        base.powf(-sigma)
    }
}

/// `base^(-s)` on the real branch of the logarithm.
pub fn complex_power(base: f64, s: ComplexValue) -> ComplexValue {
    let mag = real_power(base, s.re);
    if s.im == 0.0 {
        return Complex64::new(mag, 0.0);
    }
    let (sin, cos) = (-s.im * base.ln()).sin_cos();
    Complex64::new(mag * cos, mag * sin)
}

/// `B_{2k} / (2k)!` for `k = 0..=MAX_EM_ORDER + 1`.
fn em_coefficients() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut fact = BigInt::one();
        let mut out = Vec::with_capacity(MAX_EM_ORDER + 2);
        for k in 0..=MAX_EM_ORDER + 1 {
            if k > 0 {
                fact *= BigInt::from(2 * k - 1) * BigInt::from(2 * k);
            }
            out.push(rational_to_f64(&(bernoulli_number(2 * k) / rat_int(fact.clone()))));
        }
        out
    })
}

fn check_hurwitz_domain(s: ComplexValue, x: f64) -> Result<()> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(ZetaError::domain("s must be finite"));
    }
    if s.re <= 1.0 {
        return Err(ZetaError::domain(format!("zeta(s, x) needs Re(s) > 1, got Re(s) = {}", s.re)));
    }
    if !(x.is_finite() && x > 0.0) {
        return Err(ZetaError::domain(format!("zeta(s, x) needs x > 0, got x = {x}")));
    }
    Ok(())
}

struct EmEval {
    value: ComplexValue,
    truncation: f64,
    rounding: f64,
    terms: u64,
}

fn euler_maclaurin(s: ComplexValue, x: f64, shift: u64, order: usize) -> EmEval {
    let coeffs = em_coefficients();
    // Neumaier-compensated direct sum.
    let mut sum = Complex64::zero();
    let mut comp = Complex64::zero();
    let mut abs_sum = 0.0;
    for n in 0..shift {
        let term = complex_power(n as f64 + x, s);
        abs_sum += term.norm();
        let t = sum + term;
        comp.re += if sum.re.abs() >= term.re.abs() { (sum.re - t.re) + term.re } else { (term.re - t.re) + sum.re };
        comp.im += if sum.im.abs() >= term.im.abs() { (sum.im - t.im) + term.im } else { (term.im - t.im) + sum.im };
        sum = t;
    }
    let direct = sum + comp;

    let t = shift as f64 + x;
    let t_pow = complex_power(t, s);
    let mut tail = t * t_pow / (s - 1.0) + t_pow * 0.5;
    let mut rising = s;
    let mut t_pow_k = t_pow / t;
    let t2 = t * t;
    for (k, &coeff) in coeffs.iter().enumerate().take(order + 1).skip(1) {
        tail += coeff * rising * t_pow_k;
        let kk = (2 * k) as f64;
        rising *= (s + (kk - 1.0)) * (s + kk);
        t_pow_k /= t2;
    }
    let omitted = (coeffs[order + 1] * rising * t_pow_k).norm();
    let m_odd = (2 * order + 1) as f64;
    let remainder_factor = ((s + m_odd).norm() / (s.re + m_odd)).max(1.0);

    let value = direct + tail;
    let log_growth = 1.0 + s.norm() * (t + 1.0).ln();
    EmEval {
        value,
        truncation: 2.0 * omitted * remainder_factor,
        rounding: 8.0 * f64::EPSILON * log_growth * (abs_sum + tail.norm()),
        terms: shift + order as u64,
    }
}

fn auto_shift(s: ComplexValue, x: f64) -> u64 {
    let by_s = s.norm().ceil();
    let by_x = (10.0 - x).ceil();
    20f64.max(by_s).max(by_x) as u64
}

/// Hurwitz zeta `sum_{n>=0} (n + x)^(-s)` for `Re(s) > 1`, `x > 0`.
pub fn hurwitz_zeta(s: ComplexValue, x: f64, params: &EvalParams) -> Result<SeriesResult> {
    check_hurwitz_domain(s, x)?;
    params.validate()?;
    let order = params.em_correction_order;
    let mut shift = params.em_shift.unwrap_or_else(|| auto_shift(s, x));
    loop {
        params.check_cancel()?;
        let em = euler_maclaurin(s, x, shift, order);
        let result = SeriesResult { value: em.value, error_bound: em.truncation + em.rounding, terms_used: em.terms }
            .finite()?;
        let target = params.target_rel_tol * em.value.norm();
        if result.error_bound <= target {
            return Ok(result);
        }
        // Rounding dominates: a longer direct sum would not help.
        if em.truncation <= target || shift.saturating_mul(2) > params.max_terms {
            return Err(ZetaError::NotConverged { partial: result, target });
        }
        shift *= 2;
    }
}

/// Riemann zeta `zeta(s) = zeta(s, 1)`.
pub fn riemann_zeta(s: ComplexValue, params: &EvalParams) -> Result<SeriesResult> {
    hurwitz_zeta(s, 1.0, params)
}

/// `L(-1, s, x) = sum_{n>=0} (-1)^n (n + x)^(-s)` through the even/odd split
/// `2^(-s) [zeta(s, x/2) - zeta(s, (x+1)/2)]`.
pub fn lerch_minus_one(s: ComplexValue, x: f64, params: &EvalParams) -> Result<SeriesResult> {
    check_hurwitz_domain(s, x)?;
    params.validate()?;
    let scale = complex_power(2.0, s);
    let mut inner = params.clone();
    loop {
        let even = hurwitz_zeta(s, x / 2.0, &inner)?;
        let odd = hurwitz_zeta(s, (x + 1.0) / 2.0, &inner)?;
        let value = scale * (even.value - odd.value);
        let cancellation = f64::EPSILON * (even.value.norm() + odd.value.norm());
        let result = SeriesResult {
            value,
            error_bound: scale.norm() * (even.error_bound + odd.error_bound + cancellation),
            terms_used: even.terms_used + odd.terms_used,
        }
        .finite()?;
        let target = params.target_rel_tol * value.norm();
        if result.error_bound <= target {
            return Ok(result);
        }
        // The difference lost digits; ask both halves for more.
        let tighter = inner.target_rel_tol * (target / result.error_bound).max(1e-3) * 0.5;
        if tighter < 10.0 * f64::EPSILON {
            return Err(ZetaError::NotConverged { partial: result, target });
        }
        inner.target_rel_tol = tighter;
    }
}

/// `Δ^p f(x) = sum_{j=0}^{p} (-1)^(p-j) C(p, j) f(x + j)`.
pub fn forward_difference<T, E, F>(mut f: F, x: f64, p: u32) -> std::result::Result<T, E>
where
    T: Zero + Add<Output = T> + Mul<f64, Output = T>,
    F: FnMut(f64) -> std::result::Result<T, E>,
{
    let mut acc = T::zero();
    for j in 0..=p {
        let c = rational_to_f64(&rat_int(binomial(p as u64, j as u64)));
        let sign = if (p - j).is_multiple_of(2) { 1.0 } else { -1.0 };
        acc = acc + f(x + j as f64)? * (sign * c);
    }
    Ok(acc)
}
