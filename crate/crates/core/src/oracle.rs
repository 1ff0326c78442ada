//! Brute-force evaluation of every series in the crate, with rigorous
//! truncation bounds.
//!
//! Nothing here calls the closed forms, and [`z_oracle`] and [`lerch_oracle`]
//! never touch the Euler-Maclaurin evaluator: they use direct powers and
//! running prefix sums only, so agreement with `closed_form` is a genuine
//! two-path check. The sums are deliberately unaccelerated.

use num_complex::Complex64;

use crate::closed_form::Sign;
use crate::error::{Result, ZetaError};
use crate::exact_poly::{bernoulli_polynomial, euler_polynomial, rational_to_f64, Rational};
use crate::zeta_core::{complex_power, hurwitz_zeta, riemann_zeta, ComplexValue, EvalParams, SeriesResult};

/// Terms summed between convergence checks.
const CHECK_EVERY: u64 = 256;
/// Terms summed between cancellation polls.
const POLL_EVERY: u64 = 1 << 16;

/// Neumaier-compensated complex accumulator.
#[derive(Default, Clone, Copy)]
struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
    abs: f64,
}

impl CompensatedSum {
    #[inline]
    fn add(&mut self, term: Complex64) {
        // |re| + |im| bounds the modulus and avoids a hypot per term.
        self.abs += term.re.abs() + term.im.abs();
        let t = self.sum + term;
        self.comp.re += two_sum_err(self.sum.re, term.re, t.re);
        self.comp.im += two_sum_err(self.sum.im, term.im, t.im);
        self.sum = t;
    }

    fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

#[inline]
fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    if a.abs() >= b.abs() {
        (a - s) + b
    } else {
        (b - s) + a
    }
}

/// Per-term rounding allowance for `sum |terms|` when each term is a complex
/// power of size up to `t`.
fn rounding_allowance(s: ComplexValue, t: f64, abs_sum: f64) -> f64 {
    8.0 * f64::EPSILON * (1.0 + s.norm() * (t + 1.0).ln()) * abs_sum
}

fn check_s(s: ComplexValue) -> Result<()> {
    if s.re.is_finite() && s.im.is_finite() {
        Ok(())
    } else {
        Err(ZetaError::domain("s must be finite"))
    }
}

fn check_x(x: f64) -> Result<()> {
    if x.is_finite() && x >= 0.0 {
        Ok(())
    } else {
        Err(ZetaError::domain(format!("x must be finite and >= 0, got {x}")))
    }
}

/// Tail bound of the swapped series `sum_{n>N} (n+x)^(-s) P(n)`.
///
/// Plus: `|P(n)| <= (n+x)^(a+1)/(a+1) + (n+x)^a`, integrated from `N`.
/// Minus: `|P(n)| <= (n+x)^a`, integrated from `N` and doubled.
fn z_tail_bound(sign: Sign, sigma: f64, a: u32, x: f64, n: u64) -> f64 {
    let t = n as f64 + x;
    let a = a as f64;
    match sign {
        Sign::Plus => {
            t.powf(a + 2.0 - sigma) / ((a + 1.0) * (sigma - a - 2.0)) + t.powf(a + 1.0 - sigma) / (sigma - a - 1.0)
        }
        Sign::Minus => 2.0 * t.powf(a + 1.0 - sigma) / (sigma - a - 1.0),
    }
}

/// `true` when `Z-(s, a, x)` is requested in the strip `a+1 < Re(s) <= a+2`,
/// where the swap of summation order is not backed by absolute convergence
/// and the returned bound is only heuristic.
pub fn is_exploratory(sign: Sign, s: ComplexValue, a: u32) -> bool {
    sign == Sign::Minus && s.re <= a as f64 + 2.0
}

/// Brute-force `Z±(s,a,x) = sum_{k>=1} (±1)^k (k+x)^a zeta(s, k+x)`, summed in
/// the swapped order `sum_{n>=1} (n+x)^(-s) P(n)` with the running prefix
/// `P(n) = sum_{k=1}^{n} (±1)^k (k+x)^a`.
///
/// Stops once the tail bound falls below `target_rel_tol * |value|`; if
/// `max_terms` is reached first the best partial result is returned inside
/// [`ZetaError::NotConverged`].
pub fn z_oracle(sign: Sign, s: ComplexValue, a: u32, x: f64, params: &EvalParams) -> Result<SeriesResult> {
    check_s(s)?;
    check_x(x)?;
    params.validate()?;
    let min_re = match sign {
        Sign::Plus => a as f64 + 2.0,
        Sign::Minus => a as f64 + 1.0,
    };
    if s.re <= min_re {
        return Err(ZetaError::domain(format!(
            "Z{}(s, {a}, x) oracle needs Re(s) > {min_re}, got {}",
            if sign == Sign::Plus { "+" } else { "-" },
            s.re
        )));
    }

    let mut total = CompensatedSum::default();
    let mut prefix = 0.0f64;
    let mut prefix_comp = 0.0f64;
    let mut n: u64 = 0;
    loop {
        let chunk_end = (n + CHECK_EVERY).min(params.max_terms);
        while n < chunk_end {
            n += 1;
            let t = n as f64 + x;
            let w = sign.power(n) * t.powi(a as i32);
            let next = prefix + w;
            prefix_comp += two_sum_err(prefix, w, next);
            prefix = next;
            total.add(complex_power(t, s) * (prefix + prefix_comp));
        }
        if n % POLL_EVERY < CHECK_EVERY {
            params.check_cancel()?;
        }
        let value = total.value();
        let bound = z_tail_bound(sign, s.re, a, x, n) + rounding_allowance(s, n as f64 + x, total.abs);
        let result = SeriesResult { value, error_bound: bound, terms_used: n }.finite()?;
        let target = params.target_rel_tol * value.norm();
        if bound <= target {
            return Ok(result);
        }
        if n >= params.max_terms {
            return Err(ZetaError::NotConverged { partial: result, target });
        }
    }
}

/// Same series summed in the defining order, one Hurwitz zeta per `k`:
/// `sum_{k=1}^{K} (±1)^k (k+x)^a zeta(s, k+x)`. Used to check that the swap
/// of summation order in [`z_oracle`] is harmless; unlike `z_oracle` it goes
/// through the Euler-Maclaurin evaluator.
pub fn z_oracle_k_outer(sign: Sign, s: ComplexValue, a: u32, x: f64, params: &EvalParams) -> Result<SeriesResult> {
    check_s(s)?;
    check_x(x)?;
    params.validate()?;
    if s.re <= a as f64 + 2.0 {
        return Err(ZetaError::domain("k-outer oracle needs Re(s) > a + 2"));
    }
    let sigma = s.re;
    let af = a as f64;
    // |zeta(s, t)| <= t^(-sigma) + t^(1-sigma)/(sigma-1); integrate from K.
    let tail = |k: u64| {
        let t = k as f64 + x;
        t.powf(af + 2.0 - sigma) / ((sigma - 1.0) * (sigma - af - 2.0)) + t.powf(af + 1.0 - sigma) / (sigma - af - 1.0)
    };
    let mut total = CompensatedSum::default();
    let mut zeta_bounds = 0.0;
    let mut k = 0u64;
    loop {
        params.check_cancel()?;
        let chunk_end = (k + 64).min(params.max_terms);
        while k < chunk_end {
            k += 1;
            let t = k as f64 + x;
            let z = hurwitz_zeta(s, t, params)?;
            let w = sign.power(k) * t.powi(a as i32);
            total.add(z.value * w);
            zeta_bounds += w.abs() * z.error_bound;
        }
        let value = total.value();
        let bound = tail(k) + zeta_bounds + 4.0 * f64::EPSILON * total.abs;
        let result = SeriesResult { value, error_bound: bound, terms_used: k }.finite()?;
        let target = params.target_rel_tol * value.norm();
        if bound <= target {
            return Ok(result);
        }
        if k >= params.max_terms {
            return Err(ZetaError::NotConverged { partial: result, target });
        }
    }
}

/// Direct alternating sum `L(-1, s, x) = sum_{n>=0} (-1)^n (n+x)^(-s)`,
/// accumulated in consecutive pairs.
///
/// The tail after `2P` terms is bounded by `|s|/Re(s)` times the magnitude of
/// the first omitted term (the plain alternating-series bound when `s` is real).
pub fn lerch_oracle(s: ComplexValue, x: f64, params: &EvalParams) -> Result<SeriesResult> {
    check_s(s)?;
    params.validate()?;
    if s.re <= 1.0 {
        return Err(ZetaError::domain(format!("Lerch oracle needs Re(s) > 1, got {}", s.re)));
    }
    if !(x.is_finite() && x > 0.0) {
        return Err(ZetaError::domain(format!("Lerch oracle needs x > 0, got {x}")));
    }
    let ratio = s.norm() / s.re;
    let mut total = CompensatedSum::default();
    let mut pairs = 0u64;
    loop {
        let chunk_end = (pairs + CHECK_EVERY).min(params.max_terms.div_ceil(2));
        while pairs < chunk_end {
            let n = 2 * pairs;
            total.add(complex_power(n as f64 + x, s) - complex_power(n as f64 + 1.0 + x, s));
            pairs += 1;
        }
        if pairs % POLL_EVERY < CHECK_EVERY {
            params.check_cancel()?;
        }
        let next = 2 * pairs;
        let value = total.value();
        let bound = ratio * (next as f64 + x).powf(-s.re) + rounding_allowance(s, next as f64 + x, total.abs);
        let result = SeriesResult { value, error_bound: bound, terms_used: next }.finite()?;
        let target = params.target_rel_tol * value.norm();
        if bound <= target {
            return Ok(result);
        }
        if next >= params.max_terms {
            return Err(ZetaError::NotConverged { partial: result, target });
        }
    }
}

/// Upper bound on the absolutely summed double series behind `Z±(s,a,x)`:
/// `zeta(1 + eps)` with `eps = Re(s) - a - 2`.
pub fn abs_majorant(s: ComplexValue, a: u32, x: f64) -> Result<f64> {
    check_s(s)?;
    check_x(x)?;
    let eps = s.re - a as f64 - 2.0;
    if eps <= 0.0 {
        return Err(ZetaError::domain(format!("majorant needs Re(s) > a + 2, got eps = {eps}")));
    }
    let z = riemann_zeta(Complex64::new(1.0 + eps, 0.0), &EvalParams::default())?;
    Ok(z.value.re + z.error_bound)
}

/// `sum_{k=1}^{K} (k+x)^a zeta(Re s, k+x)`, the first `K` rows of the
/// absolutely summed double series. Nondecreasing in `K`.
pub fn abs_partial_sum(s: ComplexValue, a: u32, x: f64, k_max: u64, params: &EvalParams) -> Result<f64> {
    check_s(s)?;
    check_x(x)?;
    if s.re <= a as f64 + 2.0 {
        return Err(ZetaError::domain("absolute partial sum needs Re(s) > a + 2"));
    }
    let sigma = Complex64::new(s.re, 0.0);
    let mut total = 0.0;
    let mut comp = 0.0;
    for k in 1..=k_max {
        if k % 4096 == 0 {
            params.check_cancel()?;
        }
        let t = k as f64 + x;
        let term = t.powi(a as i32) * hurwitz_zeta(sigma, t, params)?.value.re;
        let next = total + term;
        comp += two_sum_err(total, term, next);
        total = next;
    }
    Ok(total + comp)
}

/// Partial sum of `sum_{k>=1} w(k) P(k+x) / (k+x)^s` with `|P(t)| <= C t^deg`
/// for `t >= 1`, plus the integral tail bound `C (N+x)^(deg+1-Re s)/(Re s-deg-1)`.
fn polynomial_dirichlet_direct(
    s: ComplexValue,
    x: f64,
    terms: u64,
    poly: &crate::exact_poly::RationalPolynomial,
    alternate: bool,
) -> Result<SeriesResult> {
    let deg = poly.degree().unwrap_or(0) as f64;
    if s.re <= deg + 1.0 {
        return Err(ZetaError::domain(format!("direct sum needs Re(s) > {}, got {}", deg + 1.0, s.re)));
    }
    if terms == 0 {
        return Err(ZetaError::domain("direct sum needs at least one term"));
    }
    let c_bound = rational_to_f64(&poly.abs_coeff_sum());
    let mut total = CompensatedSum::default();
    for k in 1..=terms {
        let t = k as f64 + x;
        let w = if alternate && k % 2 == 0 { -1.0 } else { 1.0 };
        total.add(complex_power(t, s) * (w * poly.eval_f64(t)));
    }
    let t = terms as f64 + x;
    let tail = c_bound * t.powf(deg + 1.0 - s.re) / (s.re - deg - 1.0);
    let bound = tail + rounding_allowance(s, t, total.abs) * (1.0 + deg);
    SeriesResult { value: total.value(), error_bound: bound, terms_used: terms }.finite()
}

/// `sum_{k=1}^{N} B_a(k+x)/(k+x)^s` with a rigorous tail bound.
pub fn dirichlet_bernoulli_direct(s: ComplexValue, a: u32, x: f64, terms: u64) -> Result<SeriesResult> {
    check_s(s)?;
    check_x(x)?;
    polynomial_dirichlet_direct(s, x, terms, &bernoulli_polynomial(a as usize), false)
}

/// `sum_{k=1}^{N} (-1)^(k+1) E_a(k+x+1)/(k+x)^s` with a rigorous tail bound.
pub fn dirichlet_euler_direct(s: ComplexValue, a: u32, x: f64, terms: u64) -> Result<SeriesResult> {
    check_s(s)?;
    check_x(x)?;
    let shifted = euler_polynomial(a as usize).shift(&Rational::from_integer(1.into()));
    polynomial_dirichlet_direct(s, x, terms, &shifted, true)
}

/// Riemann-zeta-free reference for `Z-(s, 0, 0) = -sum_{n odd} n^(-s)`.
pub fn z_minus_zero_telescoped(s: ComplexValue, params: &EvalParams) -> Result<SeriesResult> {
    check_s(s)?;
    if s.re <= 1.0 {
        return Err(ZetaError::domain("needs Re(s) > 1"));
    }
    params.validate()?;
    let mut total = CompensatedSum::default();
    let mut m = 0u64;
    loop {
        let chunk_end = (m + CHECK_EVERY).min(params.max_terms);
        while m < chunk_end {
            total.add(-complex_power((2 * m + 1) as f64, s));
            m += 1;
        }
        // sum_{odd n > 2m} n^(-sigma) <= (2m+1)^(-sigma) + (2m+1)^(1-sigma) / (2 (sigma-1))
        let t = (2 * m + 1) as f64;
        let tail = t.powf(-s.re) + t.powf(1.0 - s.re) / (2.0 * (s.re - 1.0));
        let value = total.value();
        let bound = tail + rounding_allowance(s, t, total.abs);
        let result = SeriesResult { value, error_bound: bound, terms_used: m }.finite()?;
        let target = params.target_rel_tol * value.norm();
        if bound <= target {
            return Ok(result);
        }
        if m >= params.max_terms {
            return Err(ZetaError::NotConverged { partial: result, target });
        }
    }
}

/// Accepts a converged result or the best partial one.
pub fn best_effort(r: Result<SeriesResult>) -> Result<SeriesResult> {
    match r {
        Err(ZetaError::NotConverged { partial, .. }) => Ok(partial),
        other => other,
    }
}
