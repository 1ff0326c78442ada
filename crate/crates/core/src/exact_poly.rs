//! Exact rational arithmetic for Bernoulli and Euler numbers and polynomials.
//!
//! Bernoulli numbers follow the `B_1 = +1/2` convention throughout, i.e.
//! `B_a = B_a(1)`. This is the only convention exposed; the defining
//! recurrence is run internally with `B_1 = -1/2` and converted on the way out.
//!
//! Numbers and polynomials are memoized on demand for indices below the memo
//! cap (default 64). Larger indices are computed without being cached.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Default number of rows kept in each memo table.
pub const DEFAULT_MEMO_CAP: usize = 64;

static MEMO_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_MEMO_CAP);

static BERNOULLI_MINUS: RwLock<Vec<Rational>> = RwLock::new(Vec::new());
static EULER: RwLock<Vec<Rational>> = RwLock::new(Vec::new());
static BERNOULLI_POLY: RwLock<Vec<RationalPolynomial>> = RwLock::new(Vec::new());
static EULER_POLY: RwLock<Vec<RationalPolynomial>> = RwLock::new(Vec::new());

/// Sets how many rows (indices `0..cap`) the memo tables may hold.
/// Rows already cached stay cached.
pub fn set_memo_cap(cap: usize) {
    MEMO_CAP.store(cap, Ordering::Relaxed);
}

pub fn memo_cap() -> usize {
    MEMO_CAP.load(Ordering::Relaxed)
}

/// `n / d` as a rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Renders a rational as `p/q`, including `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Nearest double to `r`.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Ratio::to_f64 only fails on overflow of both parts; fall back to a
        // scaled division.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc * (n - i) is always divisible by (i + 1) at this point.
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Reads row `idx` from a memo table, extending it with `next` when needed.
/// `next(table, m)` must produce row `m` given rows `0..m`.
fn memoized<T: Clone>(table: &RwLock<Vec<T>>, idx: usize, next: impl Fn(&[T], usize) -> T) -> T {
    if let Some(v) = table.read().expect("memo table poisoned").get(idx) {
        return v.clone();
    }
    let cap = memo_cap();
    if idx < cap {
        let mut rows = table.write().expect("memo table poisoned");
        while rows.len() <= idx {
            let m = rows.len();
            let row = next(&rows, m);
            rows.push(row);
        }
        return rows[idx].clone();
    }
    // Past the cap: build a private table seeded from whatever is cached.
    let mut rows: Vec<T> = table.read().expect("memo table poisoned").clone();
    while rows.len() <= idx {
        let m = rows.len();
        let row = next(&rows, m);
        rows.push(row);
    }
    rows.swap_remove(idx)
}

fn bernoulli_minus_row(prev: &[Rational], m: usize) -> Rational {
    if m == 0 {
        return Rational::one();
    }
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    let mut acc = Rational::zero();
    for (j, b) in prev.iter().enumerate().take(m) {
        if b.is_zero() {
            continue;
        }
        acc += rat_int(binomial(m as u64 + 1, j as u64)) * b;
    }
    -acc / rat_int(m as i64 + 1)
}

/// Bernoulli number `B_a` with the convention `B_1 = +1/2`.
pub fn bernoulli_number(a: usize) -> Rational {
    let b = memoized(&BERNOULLI_MINUS, a, bernoulli_minus_row);
    if a == 1 {
        -b
    } else {
        b
    }
}

fn euler_row(prev: &[Rational], m: usize) -> Rational {
    if m == 0 {
        return Rational::one();
    }
    if m % 2 == 1 {
        return Rational::zero();
    }
    // sum_{k even, k <= m} C(m, k) E_k = 0
    let mut acc = Rational::zero();
    for (k, e) in prev.iter().enumerate().take(m).step_by(2) {
        acc += rat_int(binomial(m as u64, k as u64)) * e;
    }
    -acc
}

/// Euler number `E_a = 2^a E_a(1/2)`: 1, 0, -1, 0, 5, 0, -61, ...
pub fn euler_number(a: usize) -> Rational {
    memoized(&EULER, a, euler_row)
}

/// Bernoulli polynomial `B_a(x) = -a x^(a-1) + sum_j C(a,j) B_j x^(a-j)`.
pub fn bernoulli_polynomial(a: usize) -> RationalPolynomial {
    memoized(&BERNOULLI_POLY, a, |_, m| build_bernoulli_polynomial(m))
}

fn build_bernoulli_polynomial(a: usize) -> RationalPolynomial {
    let mut coeffs = vec![Rational::zero(); a + 1];
    for (j, slot) in (0..=a).rev().enumerate() {
        // slot holds the x^(a-j) coefficient; j = a gives x^0 (0^0 = 1).
        coeffs[slot] = rat_int(binomial(a as u64, j as u64)) * bernoulli_number(j);
    }
    if a >= 1 {
        coeffs[a - 1] -= rat_int(a as i64);
    }
    RationalPolynomial::new(coeffs)
}

/// Euler polynomial `E_a(x) = sum_j C(a,j) (E_j / 2^j) (x - 1/2)^(a-j)`.
pub fn euler_polynomial(a: usize) -> RationalPolynomial {
    memoized(&EULER_POLY, a, |_, m| build_euler_polynomial(m))
}

fn build_euler_polynomial(a: usize) -> RationalPolynomial {
    let centered = RationalPolynomial::new(vec![rat(-1, 2), Rational::one()]);
    let mut out = RationalPolynomial::zero();
    for j in 0..=a {
        let e = euler_number(j);
        if e.is_zero() {
            continue;
        }
        let weight = rat_int(binomial(a as u64, j as u64)) * e / rat_int(BigInt::one() << j);
        out = &out + &centered.pow(a - j).scale(&weight);
    }
    out
}

/// Exact Horner evaluation.
pub fn eval_poly(p: &RationalPolynomial, x: &Rational) -> Rational {
    p.eval(x)
}

/// Horner evaluation at a complex point; each coefficient is rounded to a
/// double once.
pub fn eval_poly_complex(p: &RationalPolynomial, x: Complex64) -> Complex64 {
    p.eval_complex(x)
}

/// Dense polynomial over the rationals; `coeffs[j]` multiplies `x^j`.
///
/// The highest stored coefficient is nonzero; the zero polynomial has no
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c x^degree`
    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + rational_to_f64(c))
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::zero(), |acc, c| acc * x + rational_to_f64(c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut out = Self::constant(Rational::one());
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// The polynomial `x -> p(x + c)`.
    pub fn shift(&self, c: &Rational) -> Self {
        let linear = Self::new(vec![c.clone(), Rational::one()]);
        let mut acc = Self::zero();
        for coef in self.coeffs.iter().rev() {
            acc = &(&acc * &linear) + &Self::constant(coef.clone());
        }
        acc
    }

    /// Sum of absolute coefficient values, which bounds `|p(t)| / t^deg` for
    /// `t >= 1`.
    pub fn abs_coeff_sum(&self) -> Rational {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn add(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn sub(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn mul(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::new(out)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = j == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
                if j > 0 && !mag.is_integer() {
                    f.write_str(" ")?;
                }
            }
            match j {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{j}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(cs: &[(i64, i64)]) -> RationalPolynomial {
        RationalPolynomial::new(cs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    /// Pascal's triangle, row by row.
    fn pascal(n: usize, k: usize) -> BigInt {
        let mut row = vec![BigInt::one()];
        for _ in 0..n {
            let mut next = vec![BigInt::one(); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        row.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Akiyama-Tanigawa: produces B_n with B_1 = +1/2 without the defining
    /// recurrence.
    fn akiyama_tanigawa(n: usize) -> Rational {
        let mut a: Vec<Rational> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            a.push(rat(1, m as i64 + 1));
            for j in (1..=m).rev() {
                a[j - 1] = rat_int(j as i64) * (&a[j - 1] - &a[j]);
            }
        }
        a[0].clone()
    }

    /// E_n(x) from the Appell recurrence 2 E_n(x) + sum_{k<n} C(n,k) E_k(x) = 2 x^n.
    fn euler_polys_appell(n: usize) -> Vec<RationalPolynomial> {
        let mut out: Vec<RationalPolynomial> = Vec::new();
        for m in 0..=n {
            let mut acc = RationalPolynomial::monomial(Rational::one(), m);
            for (k, e) in out.iter().enumerate() {
                let w = rat_int(binomial(m as u64, k as u64)) * rat(1, 2);
                acc = &acc - &e.scale(&w);
            }
            out.push(acc);
        }
        out
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(9, 0), BigInt::one());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(3, 5), BigInt::zero());
        for n in 0..30 {
            for k in 0..=n + 2 {
                assert_eq!(binomial(n as u64, k as u64), pascal(n, k), "C({n},{k})");
            }
        }
    }

    #[test]
    fn bernoulli_numbers_examples() {
        assert_eq!(bernoulli_number(0), Rational::one());
        assert_eq!(bernoulli_number(1), rat(1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(3), Rational::zero());
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
        for n in 0..=40 {
            assert_eq!(bernoulli_number(n), akiyama_tanigawa(n), "B_{n}");
        }
    }

    #[test]
    fn euler_numbers_examples() {
        let oracle = euler_polys_appell(20);
        assert_eq!(euler_number(0), Rational::one());
        assert_eq!(euler_number(1), Rational::zero());
        assert_eq!(euler_number(2), rat(-1, 1));
        assert_eq!(euler_number(4), rat(5, 1));
        for a in [1, 3, 5, 7] {
            assert!(euler_number(a).is_zero());
        }
        for (a, e) in oracle.iter().enumerate() {
            let scaled = rat_int(BigInt::one() << a) * e.eval(&rat(1, 2));
            assert_eq!(euler_number(a), scaled, "E_{a}");
            assert!(euler_number(a).is_integer());
        }
    }

    #[test]
    fn bernoulli_polynomial_examples() {
        assert_eq!(bernoulli_polynomial(0), poly(&[(1, 1)]));
        assert_eq!(bernoulli_polynomial(1), poly(&[(-1, 2), (1, 1)]));
        assert_eq!(bernoulli_polynomial(2), poly(&[(1, 6), (-1, 1), (1, 1)]));
        assert_eq!(bernoulli_polynomial(2).to_string(), "x^2 - x + 1/6");
        assert_eq!(euler_polynomial(3).to_string(), "x^3 - 3/2 x^2 + 1/4");
        assert_eq!(bernoulli_polynomial(3).to_string(), "x^3 - 3/2 x^2 + 1/2 x");
    }

    #[test]
    fn euler_polynomial_examples() {
        assert_eq!(euler_polynomial(0), poly(&[(1, 1)]));
        assert_eq!(euler_polynomial(1), poly(&[(-1, 2), (1, 1)]));
        assert_eq!(euler_polynomial(2), poly(&[(0, 1), (-1, 1), (1, 1)]));
        let oracle = euler_polys_appell(20);
        for (a, e) in oracle.iter().enumerate() {
            assert_eq!(&euler_polynomial(a), e, "E_{a}(x)");
        }
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_poly(&bernoulli_polynomial(2), &Rational::zero()), rat(1, 6));
        assert_eq!(eval_poly(&RationalPolynomial::zero(), &rat(7, 3)), Rational::zero());
        assert_eq!(eval_poly(&euler_polynomial(2), &Rational::one()), Rational::zero());
        let z = eval_poly_complex(&bernoulli_polynomial(2), Complex64::new(0.0, 1.0));
        // i^2 - i + 1/6
        assert!((z - Complex64::new(-5.0 / 6.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn degrees_and_normalization() {
        for a in 0..=20 {
            assert_eq!(bernoulli_polynomial(a).degree(), Some(a));
            assert_eq!(euler_polynomial(a).degree(), Some(a));
        }
        assert_eq!(poly(&[(1, 1), (0, 1), (0, 1)]).degree(), Some(0));
        assert_eq!(RationalPolynomial::zero().degree(), None);
    }

    #[test]
    fn difference_identities_are_exact() {
        let one = Rational::one();
        for a in 0..=20usize {
            let b = bernoulli_polynomial(a);
            let lhs = &b.shift(&one) - &b;
            let rhs = if a == 0 {
                RationalPolynomial::zero()
            } else {
                RationalPolynomial::monomial(rat_int(a as i64), a - 1)
            };
            assert_eq!(lhs, rhs, "B_{a}");

            let e = euler_polynomial(a);
            let lhs = &e.shift(&one) + &e;
            assert_eq!(lhs, RationalPolynomial::monomial(rat(2, 1), a), "E_{a}");
        }
    }

    #[test]
    fn numbers_are_polynomial_values() {
        for a in 0..=20usize {
            assert_eq!(bernoulli_polynomial(a).eval(&Rational::one()), bernoulli_number(a));
            let e_half = euler_polynomial(a).eval(&rat(1, 2));
            assert_eq!(rat_int(BigInt::one() << a) * e_half, euler_number(a));
        }
    }

    #[test]
    fn past_the_memo_cap() {
        // Index well above the default cap still matches the independent route.
        assert_eq!(bernoulli_number(80), akiyama_tanigawa(80));
        assert!(euler_number(81).is_zero());
    }

    #[test]
    fn rational_format() {
        assert_eq!(format_rational(&rat(1, 2)), "1/2");
        assert_eq!(format_rational(&rat(-4, 2)), "-2/1");
        assert_eq!(format_rational(&rat(-691, 2730)), "-691/2730");
    }

    fn small_poly() -> impl Strategy<Value = RationalPolynomial> {
        prop::collection::vec((-20i64..20, 1i64..9), 0..6)
            .prop_map(|cs| RationalPolynomial::new(cs.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn ring_ops_commute_with_eval(p in small_poly(), q in small_poly(), n in -9i64..9, d in 1i64..9) {
            let x = rat(n, d);
            prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
            prop_assert_eq!((&p + &q).eval(&x), p.eval(&x) + q.eval(&x));
            prop_assert_eq!(p.shift(&rat(1, 3)).eval(&x), p.eval(&(x.clone() + rat(1, 3))));
        }
    }
}
