//! Closed forms for the weighted series `Z±(s, a, x)` and for the
//! Dirichlet-Hurwitz series of Bernoulli and Euler polynomials.
//!
//! Every formula is a finite rational combination of Hurwitz or alternating
//! Lerch zeta values. The rational coefficients (binomials, `B_j`, `E_j`,
//! polynomial values at `x + 1`) are combined exactly, grouped by the zeta
//! value they multiply, and rounded to double once. The reported bound is the
//! first-order propagation `sum |c_i| * bound_i` plus a rounding allowance for
//! the final combination.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Result, ZetaError};
use crate::exact_poly::{
    bernoulli_number, bernoulli_polynomial, binomial, euler_number, euler_polynomial, rat_int, rational_to_f64,
    Rational,
};
use crate::zeta_core::{hurwitz_zeta, lerch_minus_one, ComplexValue, EvalParams, SeriesResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(±1)^k`
    pub fn power(self, k: u64) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus if k.is_multiple_of(2) => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

/// Arguments of `Z±(s, a, x)` inside the region where the closed forms hold.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightedSeriesQuery {
    pub sign: Sign,
    pub s: ComplexValue,
    pub a: u32,
    pub x: f64,
}

impl WeightedSeriesQuery {
    pub fn new(sign: Sign, s: ComplexValue, a: u32, x: f64) -> Result<Self> {
        check_region(s, a, x)?;
        Ok(WeightedSeriesQuery { sign, s, a, x })
    }

    pub fn plus(s: ComplexValue, a: u32, x: f64) -> Result<Self> {
        Self::new(Sign::Plus, s, a, x)
    }

    pub fn minus(s: ComplexValue, a: u32, x: f64) -> Result<Self> {
        Self::new(Sign::Minus, s, a, x)
    }
}

/// `Re(s) > a + 2`, `x >= 0`.
fn check_region(s: ComplexValue, a: u32, x: f64) -> Result<()> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(ZetaError::domain("s must be finite"));
    }
    if s.re <= a as f64 + 2.0 {
        return Err(ZetaError::domain(format!("closed form needs Re(s) > a + 2 = {}, got Re(s) = {}", a + 2, s.re)));
    }
    if !(x.is_finite() && x >= 0.0) {
        return Err(ZetaError::domain(format!("x must be finite and >= 0, got {x}")));
    }
    Ok(())
}

fn exact(x: f64) -> Rational {
    Rational::from_float(x).expect("finite f64 is a dyadic rational")
}

/// Which special function a coefficient multiplies, keyed by the integer
/// offset applied to `s` (the function is evaluated at `s + offset`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Kernel {
    /// Hurwitz zeta at the given argument
    Hurwitz,
    /// Alternating Lerch zeta `L(-1, ., .)`
    Lerch,
}

/// Exact linear combination of zeta values, keyed by `(kernel, offset)`.
#[derive(Default)]
struct Combination {
    terms: BTreeMap<(Kernel, i64), Rational>,
}

impl Combination {
    fn add(&mut self, kernel: Kernel, offset: i64, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        let slot = self.terms.entry((kernel, offset)).or_insert_with(Rational::zero);
        *slot += coef;
    }

    /// Evaluates at `(s, x_arg)`, tightening the inner tolerance when the
    /// combination cancels.
    fn evaluate(&self, s: ComplexValue, x_arg: f64, params: &EvalParams) -> Result<SeriesResult> {
        params.validate()?;
        let coeffs: Vec<((Kernel, i64), f64)> =
            self.terms.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (*k, rational_to_f64(c))).collect();
        if coeffs.is_empty() {
            return Ok(SeriesResult::exact(Complex64::zero()));
        }
        let mut inner = params.clone();
        let mut previous: Option<SeriesResult> = None;
        loop {
            let mut value = Complex64::zero();
            let mut bound = 0.0;
            let mut magnitude = 0.0;
            let mut terms = 0;
            for &((kernel, offset), c) in &coeffs {
                params.check_cancel()?;
                let arg = s + offset as f64;
                let r = match kernel {
                    Kernel::Hurwitz => hurwitz_zeta(arg, x_arg, &inner),
                    Kernel::Lerch => lerch_minus_one(arg, x_arg, &inner),
                };
                let r = match (r, previous) {
                    (Ok(r), _) => r,
                    // A tightened pass hit the rounding floor; keep the last
                    // complete pass.
                    (Err(ZetaError::NotConverged { .. }), Some(last)) => return Ok(last),
                    (Err(e), _) => return Err(e),
                };
                value += r.value * c;
                bound += c.abs() * r.error_bound;
                magnitude += c.abs() * r.value.norm();
                terms += r.terms_used;
            }
            // Coefficient rounding plus the final accumulation.
            bound += (coeffs.len() as f64 + 2.0) * f64::EPSILON * magnitude;
            let result = SeriesResult { value, error_bound: bound, terms_used: terms }.finite()?;
            let target = params.target_rel_tol * value.norm();
            let tighter = inner.target_rel_tol * (target / bound).max(1e-3) * 0.5;
            if bound <= target || tighter < 10.0 * f64::EPSILON {
                // Heavy cancellation leaves the bound above target; it is
                // still reported honestly.
                return Ok(result);
            }
            inner.target_rel_tol = tighter;
            previous = Some(result);
        }
    }
}

/// Non-alternating closed form:
/// `Z+(s,a,x) = -B_{a+1}(x+1) zeta(s,x+1)/(a+1)
///              + (1/(a+1)) sum_{j=0}^{a+1} C(a+1,j) B_j zeta(s-a+j-1, x+1)`.
pub fn z_plus_closed(q: &WeightedSeriesQuery, params: &EvalParams) -> Result<SeriesResult> {
    if q.sign != Sign::Plus {
        return Err(ZetaError::domain("z_plus_closed needs a plus-sign query"));
    }
    check_region(q.s, q.a, q.x)?;
    let a = q.a as u64;
    let inv = Rational::one() / rat_int(a as i64 + 1);
    let shifted = exact(q.x) + Rational::one();
    let mut combo = Combination::default();
    let b_at = bernoulli_polynomial(a as usize + 1).eval(&shifted);
    combo.add(Kernel::Hurwitz, 0, -(&b_at * &inv));
    for j in 0..=a + 1 {
        let c = rat_int(binomial(a + 1, j)) * bernoulli_number(j as usize) * &inv;
        combo.add(Kernel::Hurwitz, j as i64 - a as i64 - 1, c);
    }
    combo.evaluate(q.s, q.x + 1.0, params)
}

/// Alternating closed form:
/// `Z-(s,a,x) = -E_a(x+1) zeta(s,x+1)/2
///              - sum_{j,l} E_j / 2^(a-l+1) C(a,j) C(a-j,l) L(-1, s-l, x+1)`.
pub fn z_minus_closed(q: &WeightedSeriesQuery, params: &EvalParams) -> Result<SeriesResult> {
    if q.sign != Sign::Minus {
        return Err(ZetaError::domain("z_minus_closed needs a minus-sign query"));
    }
    check_region(q.s, q.a, q.x)?;
    let a = q.a as usize;
    let shifted = exact(q.x) + Rational::one();
    let mut combo = Combination::default();
    let e_at = euler_polynomial(a).eval(&shifted);
    combo.add(Kernel::Hurwitz, 0, -e_at / rat_int(2));
    for (offset, c) in euler_lerch_coefficients(a) {
        combo.add(Kernel::Lerch, offset, -c / rat_int(2));
    }
    combo.evaluate(q.s, q.x + 1.0, params)
}

/// Coefficients of `L(-1, s - l, .)` in
/// `sum_{j} sum_{l<=a-j} E_j / 2^(a-l) C(a,j) C(a-j,l) L(-1, s-l, .)`,
/// keyed by the offset `-l`.
fn euler_lerch_coefficients(a: usize) -> Vec<(i64, Rational)> {
    let mut by_l = vec![Rational::zero(); a + 1];
    for j in 0..=a {
        let e = euler_number(j);
        if e.is_zero() {
            continue;
        }
        let outer = rat_int(binomial(a as u64, j as u64)) * e;
        for (l, slot) in by_l.iter_mut().enumerate().take(a - j + 1) {
            let c = &outer * rat_int(binomial((a - j) as u64, l as u64)) / rat_int(BigInt::one() << (a - l));
            *slot += c;
        }
    }
    by_l.into_iter().enumerate().map(|(l, c)| (-(l as i64), c)).collect()
}

/// Dispatches on the sign of the query.
pub fn weighted_series_closed(q: &WeightedSeriesQuery, params: &EvalParams) -> Result<SeriesResult> {
    match q.sign {
        Sign::Plus => z_plus_closed(q, params),
        Sign::Minus => z_minus_closed(q, params),
    }
}

/// `Z+(s, a, 0) = (1/(a+1)) sum_{j=0}^{a} C(a+1,j) B_j zeta(s-a+j-1)`.
pub fn z_plus_riemann(s: ComplexValue, a: u32, params: &EvalParams) -> Result<SeriesResult> {
    check_region(s, a, 0.0)?;
    let a = a as u64;
    let inv = Rational::one() / rat_int(a as i64 + 1);
    let mut combo = Combination::default();
    for j in 0..=a {
        let c = rat_int(binomial(a + 1, j)) * bernoulli_number(j as usize) * &inv;
        combo.add(Kernel::Hurwitz, j as i64 - a as i64 - 1, c);
    }
    combo.evaluate(s, 1.0, params)
}

/// `sum_{k>=1} B_a(k+x)/(k+x)^s
///   = -a zeta(s-a+1, x+1) + sum_{j=0}^{a} C(a,j) B_j zeta(s-a+j, x+1)`.
pub fn dirichlet_hurwitz_bernoulli(s: ComplexValue, a: u32, x: f64, params: &EvalParams) -> Result<SeriesResult> {
    check_region(s, a, x)?;
    let a = a as u64;
    let mut combo = Combination::default();
    if a >= 1 {
        combo.add(Kernel::Hurwitz, 1 - a as i64, -rat_int(a as i64));
    }
    for j in 0..=a {
        let c = rat_int(binomial(a, j)) * bernoulli_number(j as usize);
        combo.add(Kernel::Hurwitz, j as i64 - a as i64, c);
    }
    combo.evaluate(s, x + 1.0, params)
}

/// `sum_{k>=1} (-1)^(k+1) E_a(k+x+1)/(k+x)^s
///   = sum_{j,l} E_j / 2^(a-l) C(a,j) C(a-j,l) L(-1, s-l, x+1)`.
pub fn dirichlet_hurwitz_euler(s: ComplexValue, a: u32, x: f64, params: &EvalParams) -> Result<SeriesResult> {
    check_region(s, a, x)?;
    let mut combo = Combination::default();
    for (offset, c) in euler_lerch_coefficients(a as usize) {
        combo.add(Kernel::Lerch, offset, c);
    }
    combo.evaluate(s, x + 1.0, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{dirichlet_bernoulli_direct, dirichlet_euler_direct, z_oracle};
    use crate::zeta_core::{complex_power, riemann_zeta};

    fn c(re: f64, im: f64) -> ComplexValue {
        Complex64::new(re, im)
    }

    fn p() -> EvalParams {
        EvalParams::default()
    }

    fn oracle(sign: Sign, s: ComplexValue, a: u32, x: f64) -> SeriesResult {
        match z_oracle(sign, s, a, x, &p().with_tol(1e-13)) {
            Ok(r) => r,
            Err(ZetaError::NotConverged { partial, .. }) => partial,
            Err(e) => panic!("{e}"),
        }
    }

    fn agrees(closed: &SeriesResult, other: &SeriesResult, rel: f64) -> bool {
        let diff = (closed.value - other.value).norm();
        diff <= (closed.error_bound + other.error_bound).max(rel * closed.value.norm())
    }

    #[test]
    fn z_plus_examples() {
        let z = z_plus_closed(&WeightedSeriesQuery::plus(c(4.0, 0.0), 0, 0.0).unwrap(), &p()).unwrap();
        assert!((z.value.re - 1.2020569031595943).abs() < 1e-14);
        assert_eq!(z.value.im, 0.0);

        // a = 0, x = 0 collapses to zeta(s - 1) term for term.
        for s in [c(3.0, 0.0), c(2.5, 2.0), c(7.25, -1.0)] {
            let z = z_plus_closed(&WeightedSeriesQuery::plus(s, 0, 0.0).unwrap(), &p()).unwrap();
            let r = riemann_zeta(s - 1.0, &p()).unwrap();
            assert_eq!(z.value, r.value);
        }

        let s = c(5.5, 1.0);
        let closed = z_plus_closed(&WeightedSeriesQuery::plus(s, 2, 0.75).unwrap(), &p()).unwrap();
        let brute = oracle(Sign::Plus, s, 2, 0.75);
        assert!(agrees(&closed, &brute, 1e-8));
        assert!((closed.value - brute.value).norm() <= 1e-8 * closed.value.norm());
    }

    #[test]
    fn z_minus_examples() {
        for s in [c(3.0, 0.0), c(4.0, 0.0), c(6.0, 0.0), c(2.5, 1.0)] {
            let z = z_minus_closed(&WeightedSeriesQuery::minus(s, 0, 0.0).unwrap(), &p()).unwrap();
            let zeta = riemann_zeta(s, &p()).unwrap().value;
            let expect = -(Complex64::one() - complex_power(2.0, s)) * zeta;
            assert!((z.value - expect).norm() <= 1e-12 * expect.norm(), "{s}");
        }
        let z = z_minus_closed(&WeightedSeriesQuery::minus(c(4.0, 0.0), 0, 0.0).unwrap(), &p()).unwrap();
        assert!((z.value.re + 1.014_678_031_604_192).abs() < 1e-14);

        let s = c(6.0, 0.5);
        let closed = z_minus_closed(&WeightedSeriesQuery::minus(s, 1, 1.0 / 3.0).unwrap(), &p()).unwrap();
        let brute = oracle(Sign::Minus, s, 1, 1.0 / 3.0);
        assert!((closed.value - brute.value).norm() <= 1e-8 * closed.value.norm());
    }

    #[test]
    fn riemann_specialization() {
        let z = z_plus_riemann(c(4.0, 0.0), 0, &p()).unwrap();
        assert!((z.value.re - 1.2020569031595943).abs() < 1e-14);
        for a in 0..=5u32 {
            let s = c(a as f64 + 3.0, 0.0);
            let r = z_plus_riemann(s, a, &p()).unwrap();
            let q = WeightedSeriesQuery::plus(s, a, 0.0).unwrap();
            let z = z_plus_closed(&q, &p()).unwrap();
            assert!((r.value - z.value).norm() <= 1e-10 * z.value.norm(), "a={a}");
        }
    }

    #[test]
    fn dirichlet_bernoulli_examples() {
        let s = c(5.0, 0.0);
        let x = 0.25;
        let a0 = dirichlet_hurwitz_bernoulli(s, 0, x, &p()).unwrap();
        assert_eq!(a0.value, hurwitz_zeta(s, x + 1.0, &p()).unwrap().value);

        let a1 = dirichlet_hurwitz_bernoulli(s, 1, x, &p()).unwrap();
        let expect =
            hurwitz_zeta(s - 1.0, x + 1.0, &p()).unwrap().value - hurwitz_zeta(s, x + 1.0, &p()).unwrap().value * 0.5;
        assert!((a1.value - expect).norm() < 1e-14);
        let direct = dirichlet_bernoulli_direct(s, 1, x, 100_000).unwrap();
        assert!(agrees(&a1, &direct, 0.0));

        let s = c(6.0, 0.0);
        let a2 = dirichlet_hurwitz_bernoulli(s, 2, 0.0, &p()).unwrap();
        let direct = dirichlet_bernoulli_direct(s, 2, 0.0, 100_000).unwrap();
        assert!((a2.value - direct.value).norm() <= a2.error_bound + direct.error_bound);
    }

    #[test]
    fn dirichlet_euler_examples() {
        let s = c(4.25, -0.5);
        let a0 = dirichlet_hurwitz_euler(s, 0, 0.6, &p()).unwrap();
        assert_eq!(a0.value, lerch_minus_one(s, 1.6, &p()).unwrap().value);

        let s = c(5.0, 0.0);
        let a1 = dirichlet_hurwitz_euler(s, 1, 0.0, &p()).unwrap();
        let direct = dirichlet_euler_direct(s, 1, 0.0, 100_000).unwrap();
        assert!((a1.value - direct.value).norm() <= a1.error_bound + direct.error_bound);

        let s = c(4.5, 1.0);
        let a2 = dirichlet_hurwitz_euler(s, 2, 0.5, &p()).unwrap();
        let direct = dirichlet_euler_direct(s, 2, 0.5, 100_000).unwrap();
        assert!((a2.value - direct.value).norm() <= 1e-8 * a2.value.norm());
    }

    #[test]
    fn proof_pivots_hold() {
        for a in 0..=3u32 {
            for x in [0.0, 0.3, 1.0, 2.5] {
                for s in [c(a as f64 + 3.5, 0.0), c(a as f64 + 4.0, 3.0)] {
                    // Non-alternating: B_{a+1}(x+1) zeta(s,x+1) + (a+1) Z+(s,a,x)
                    //   = (a+1) zeta(s-a, x+1) + sum_k B_{a+1}(k+x)/(k+x)^s
                    let zx = hurwitz_zeta(s, x + 1.0, &p()).unwrap();
                    let b = bernoulli_polynomial(a as usize + 1).eval_f64(x + 1.0);
                    let zp = oracle(Sign::Plus, s, a, x);
                    let lhs = zx.value * b + zp.value * (a as f64 + 1.0);
                    let shifted = hurwitz_zeta(s - a as f64, x + 1.0, &p()).unwrap();
                    let dh = dirichlet_hurwitz_bernoulli(s, a + 1, x, &p()).unwrap();
                    let rhs = shifted.value * (a as f64 + 1.0) + dh.value;
                    let tol = (a as f64 + 1.0) * zp.error_bound + 1e-9 * rhs.norm().max(1.0);
                    assert!((lhs - rhs).norm() <= tol, "plus a={a} x={x} s={s}");

                    // Alternating: E_a(x+1) zeta(s,x+1) - 2 Z-(s,a,x)
                    //   = DHE(s,a,x) + 2 E_a(x+1) zeta(s,x+1)
                    let e = euler_polynomial(a as usize).eval_f64(x + 1.0);
                    let zm = oracle(Sign::Minus, s, a, x);
                    let lhs = zx.value * e - zm.value * 2.0;
                    let dhe = dirichlet_hurwitz_euler(s, a, x, &p()).unwrap();
                    let rhs = dhe.value + zx.value * (2.0 * e);
                    let tol = 2.0 * zm.error_bound + 1e-9 * rhs.norm().max(1.0);
                    assert!((lhs - rhs).norm() <= tol, "minus a={a} x={x} s={s}");
                }
            }
        }
    }

    #[test]
    fn region_is_enforced() {
        assert!(matches!(WeightedSeriesQuery::plus(c(2.0, 5.0), 0, 0.0), Err(ZetaError::Domain(_))));
        assert!(matches!(WeightedSeriesQuery::minus(c(4.5, 0.0), 3, 0.0), Err(ZetaError::Domain(_))));
        assert!(matches!(WeightedSeriesQuery::plus(c(9.0, 0.0), 0, -0.1), Err(ZetaError::Domain(_))));
        let q = WeightedSeriesQuery::plus(c(9.0, 0.0), 0, 0.0).unwrap();
        assert!(z_minus_closed(&q, &p()).is_err());
        // A query built by hand still gets checked.
        let bad = WeightedSeriesQuery { sign: Sign::Plus, s: c(3.0, 0.0), a: 1, x: 0.0 };
        assert!(matches!(z_plus_closed(&bad, &p()), Err(ZetaError::Domain(_))));
        assert!(z_plus_riemann(c(3.0, 0.0), 1, &p()).is_err());
        assert!(dirichlet_hurwitz_bernoulli(c(4.0, 0.0), 2, 0.0, &p()).is_err());
        assert!(dirichlet_hurwitz_euler(c(4.0, 0.0), 2, 0.0, &p()).is_err());
    }

    #[test]
    fn euler_lerch_coefficients_small_cases() {
        // a = 1: E_1(y+1) = y + 1/2, so coefficients of L(s) and L(s-1) are 1/2 and 1.
        let c1 = euler_lerch_coefficients(1);
        assert_eq!(c1, vec![(0, crate::exact_poly::rat(1, 2)), (-1, Rational::one())]);
        // Coefficients reproduce E_a(y + 1) as a polynomial in y.
        for a in 0..=12usize {
            let shifted = euler_polynomial(a).shift(&Rational::one());
            for (offset, c) in euler_lerch_coefficients(a) {
                assert_eq!(shifted.coeff((-offset) as usize), c, "a={a}");
            }
        }
    }
}
