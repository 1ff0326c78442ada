//! Solutions of the difference equation `Δf = g` singled out by eventual
//! `p`-convexity, via the limit formula
//!
//! ```text
//! f(x) = -g(x) + lim_n [ sum_{k=1}^{n-1} (g(k) - g(k+x)) + sum_{j=1}^{p} C(x,j) Δ^{j-1} g(n) ]
//! ```
//!
//! and, for `g(x) = Q(x) zeta(s, x)` with a real polynomial `Q`, the closed
//! form built from `Z+`. Both fix the additive constant at zero. Convexity
//! hypotheses on `g` are preconditions and are not checked numerically.

use crate::closed_form::{z_plus_closed, WeightedSeriesQuery};
use crate::error::{Result, ZetaError};
use crate::zeta_core::{forward_difference, hurwitz_zeta, ComplexValue, EvalParams};

/// Default cap on `n` for [`krull_limit_solve`].
pub const DEFAULT_N_CAP: u64 = 1 << 20;

const N_START: u64 = 16;

/// `Δf = Q(x) zeta(s, x)` with `Q(x) = sum_a omegas[a] x^a`.
#[derive(Clone, Debug, PartialEq)]
pub struct DifferenceProblem {
    omegas: Vec<f64>,
    s: f64,
    p: u32,
}

impl DifferenceProblem {
    pub fn new(omegas: Vec<f64>, s: f64, p: u32) -> Result<Self> {
        let Some(&lead) = omegas.last() else {
            return Err(ZetaError::domain("Q needs at least one coefficient"));
        };
        if lead == 0.0 {
            return Err(ZetaError::domain("leading coefficient of Q must be nonzero"));
        }
        if omegas.iter().any(|w| !w.is_finite()) {
            return Err(ZetaError::domain("coefficients of Q must be finite"));
        }
        let degree = omegas.len() - 1;
        if !(s.is_finite() && s > degree as f64 + 2.0) {
            return Err(ZetaError::domain(format!("need real s > deg Q + 2 = {}, got {s}", degree + 2)));
        }
        if p > 1 {
            return Err(ZetaError::domain(format!("p must be 0 or 1, got {p}")));
        }
        Ok(DifferenceProblem { omegas, s, p })
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    pub fn degree(&self) -> usize {
        self.omegas.len() - 1
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self, x: f64) -> f64 {
        self.omegas.iter().rev().fold(0.0, |acc, w| acc * x + w)
    }

    /// Right-hand side `Q(x) zeta(s, x)`.
    pub fn g(&self, x: f64, params: &EvalParams) -> Result<f64> {
        let z = hurwitz_zeta(ComplexValue::new(self.s, 0.0), x, params)?;
        Ok(self.q(x) * z.value.re)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitDiagnostics {
    pub n_used: u64,
    /// Change of the bracketed expression over the last doubling of `n`.
    pub last_delta: f64,
    pub converged: bool,
}

/// Generalized binomial `C(x, j) = x (x-1) ... (x-j+1) / j!`.
pub fn binomial_real(x: f64, j: u32) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (x - i as f64) / (i as f64 + 1.0))
}

/// Evaluates the limit formula at `x` with the constant set to zero.
///
/// The bracket is computed at `n = 16, 32, 64, ...`; iteration stops when two
/// consecutive values differ by at most `tol`, or when doubling would pass
/// `n_cap`. The value is returned either way; `diag.converged` tells which.
pub fn krull_limit_solve<G>(g: G, p: u32, x: f64, tol: f64, n_cap: u64) -> Result<(f64, LimitDiagnostics)>
where
    G: Fn(f64) -> Result<f64>,
{
    if !(x.is_finite() && x > 0.0) {
        return Err(ZetaError::domain(format!("x must be positive, got {x}")));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(ZetaError::domain("tol must be positive"));
    }
    if n_cap < 2 {
        return Err(ZetaError::domain("n_cap must be at least 2"));
    }

    let correction = |n: u64| -> Result<f64> {
        let mut acc = 0.0;
        for j in 1..=p {
            let d = forward_difference(&g, n as f64, j - 1)?;
            acc += binomial_real(x, j) * d;
        }
        Ok(acc)
    };

    // Compensated running sum of g(k) - g(k + x), k = 1..n-1.
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut next_k = 1u64;
    let mut extend_to = |n: u64, sum: &mut f64, comp: &mut f64| -> Result<()> {
        while next_k < n {
            let k = next_k as f64;
            let term = g(k)? - g(k + x)?;
            let t = *sum + term;
            *comp += if sum.abs() >= term.abs() { (*sum - t) + term } else { (term - t) + *sum };
            *sum = t;
            next_k += 1;
        }
        Ok(())
    };

    let mut n = N_START.min(n_cap);
    extend_to(n, &mut sum, &mut comp)?;
    let mut bracket = sum + comp + correction(n)?;
    let mut diag = LimitDiagnostics { n_used: n, last_delta: f64::INFINITY, converged: false };
    while n.saturating_mul(2) <= n_cap {
        n *= 2;
        extend_to(n, &mut sum, &mut comp)?;
        let next = sum + comp + correction(n)?;
        diag.last_delta = (next - bracket).abs();
        diag.n_used = n;
        bracket = next;
        if diag.last_delta <= tol {
            diag.converged = true;
            break;
        }
    }
    Ok((bracket - g(x)?, diag))
}

/// [`krull_limit_solve`] with `g = Q zeta(s, .)` taken from `prob`.
pub fn krull_for_problem(
    prob: &DifferenceProblem,
    x: f64,
    tol: f64,
    n_cap: u64,
    params: &EvalParams,
) -> Result<(f64, LimitDiagnostics)> {
    krull_limit_solve(|t| prob.g(t, params), prob.p, x, tol, n_cap)
}

/// Closed-form solution with zero constant:
/// `f(x) = -Q(x) zeta(s,x) + sum_a w_a Z+(s,a,0) - sum_a w_a Z+(s,a,x)`.
pub fn f_sq_closed(prob: &DifferenceProblem, x: f64, params: &EvalParams) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(ZetaError::domain(format!("x must be positive, got {x}")));
    }
    let s = ComplexValue::new(prob.s, 0.0);
    let mut total = -prob.g(x, params)?;
    for (a, &w) in prob.omegas.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let at_zero = z_plus_closed(&WeightedSeriesQuery::plus(s, a as u32, 0.0)?, params)?;
        let at_x = z_plus_closed(&WeightedSeriesQuery::plus(s, a as u32, x)?, params)?;
        total += w * (at_zero.value.re - at_x.value.re);
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualPoint {
    pub x: f64,
    /// `|f(x+1) - f(x) - g(x)|`, infinite if an evaluation failed.
    pub residual: f64,
    pub passed: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DifferenceReport {
    pub points: Vec<ResidualPoint>,
    pub tol: f64,
}

impl DifferenceReport {
    pub fn passed(&self) -> bool {
        self.points.iter().all(|p| p.passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.points.iter().map(|p| p.residual).fold(0.0, f64::max)
    }
}

/// Checks `|f(x+1) - f(x) - g(x)| <= tol` at each point.
pub fn verify_difference_equation<F, G>(f: F, g: G, xs: &[f64], tol: f64) -> DifferenceReport
where
    F: Fn(f64) -> Result<f64>,
    G: Fn(f64) -> Result<f64>,
{
    let points = xs
        .iter()
        .map(|&x| {
            let resid = (|| Ok::<f64, ZetaError>((f(x + 1.0)? - f(x)? - g(x)?).abs()))();
            match resid {
                Ok(r) => ResidualPoint { x, residual: r, passed: r <= tol, error: None },
                Err(e) => ResidualPoint { x, residual: f64::INFINITY, passed: false, error: Some(e.to_string()) },
            }
        })
        .collect();
    DifferenceReport { points, tol }
}

/// Tabulates `|Δ^p g(n)|` for each `n`; whether it decays is for the caller to
/// judge.
pub fn asymptotic_check<G>(g: G, p: u32, ns: &[u64]) -> Result<Vec<(u64, f64)>>
where
    G: Fn(f64) -> Result<f64>,
{
    ns.iter().map(|&n| forward_difference(&g, n as f64, p).map(|d: f64| (n, d.abs()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::Sign;
    use crate::oracle::{best_effort, z_oracle};

    fn zeta(s: f64, x: f64) -> Result<f64> {
        hurwitz_zeta(ComplexValue::new(s, 0.0), x, &EvalParams::default()).map(|r| r.value.re)
    }

    #[test]
    fn problem_validation() {
        assert!(DifferenceProblem::new(vec![], 4.0, 0).is_err());
        assert!(DifferenceProblem::new(vec![1.0, 0.0], 4.0, 0).is_err());
        assert!(DifferenceProblem::new(vec![0.0, 0.0, 1.0], 4.0, 0).is_err());
        assert!(DifferenceProblem::new(vec![1.0], 4.0, 2).is_err());
        let prob = DifferenceProblem::new(vec![-3.0, 0.0, 1.0], 6.0, 1).unwrap();
        assert_eq!(prob.degree(), 2);
        assert_eq!(prob.q(2.0), 1.0);
    }

    #[test]
    fn binomial_real_values() {
        assert_eq!(binomial_real(2.5, 0), 1.0);
        assert_eq!(binomial_real(2.5, 1), 2.5);
        assert_eq!(binomial_real(5.0, 2), 10.0);
        assert_eq!(binomial_real(2.0, 3), 0.0);
    }

    #[test]
    fn krull_zeta_examples() {
        // p = 0, s = 4, x = 2: zeta(3) - sum_{k>=0} zeta(4, k+2).
        let (f, diag) = krull_limit_solve(|t| zeta(4.0, t), 0, 2.0, 1e-10, DEFAULT_N_CAP).unwrap();
        assert!(diag.converged);
        let tail =
            best_effort(z_oracle(Sign::Plus, ComplexValue::new(4.0, 0.0), 0, 2.0, &EvalParams::default())).unwrap();
        let expect = 1.2020569031595943 - zeta(4.0, 2.0).unwrap() - tail.value.re;
        assert!((f - expect).abs() <= 1e-9 + tail.error_bound, "{f} vs {expect}");
        // which telescopes to zeta(4)
        assert!((f - 1.0823232337111382).abs() < 1e-9);

        // x = 1 cancels exactly.
        let (f, _) = krull_limit_solve(|t| zeta(5.0, t), 0, 1.0, 1e-12, DEFAULT_N_CAP).unwrap();
        assert!(f.abs() < 1e-10);
    }

    #[test]
    fn krull_matches_closed_for_linear_weight() {
        let prob = DifferenceProblem::new(vec![0.0, 1.0], 5.0, 1).unwrap();
        let params = EvalParams::default();
        let (f, diag) = krull_for_problem(&prob, 1.5, 1e-10, DEFAULT_N_CAP, &params).unwrap();
        assert!(diag.converged && diag.last_delta <= 1e-10);
        let closed = f_sq_closed(&prob, 1.5, &params).unwrap();
        assert!((f - closed).abs() < 1e-8, "{f} vs {closed}");
    }

    #[test]
    fn f_sq_closed_matches_marichal_form() {
        let prob = DifferenceProblem::new(vec![1.0], 4.0, 0).unwrap();
        let params = EvalParams::default();
        for x in [0.5, 1.0, 2.0] {
            let f = f_sq_closed(&prob, x, &params).unwrap();
            // zeta(3) - zeta(4, x) - sum_{k>=1} zeta(4, k+x)
            let tail = best_effort(z_oracle(Sign::Plus, ComplexValue::new(4.0, 0.0), 0, x, &params)).unwrap();
            let expect = 1.2020569031595943 - zeta(4.0, x).unwrap() - tail.value.re;
            assert!((f - expect).abs() <= tail.error_bound + 1e-12, "x={x}");
        }
    }

    #[test]
    fn non_convergence_is_reported() {
        // g(x) = x does not satisfy the decay hypothesis.
        let (_, diag) = krull_limit_solve(Ok, 0, 0.5, 1e-12, 1024).unwrap();
        assert!(!diag.converged);
        assert_eq!(diag.n_used, 1024);
    }

    #[test]
    fn difference_equation_reports() {
        let s = 3.5;
        let report = verify_difference_equation(|x| zeta(s, x), |x| Ok(-x.powf(-s)), &[0.5, 1.0, 2.0], 1e-12);
        assert!(report.passed(), "{report:?}");

        let report = verify_difference_equation(|_| Ok(7.0), |_| Ok(0.0), &[0.5, 1.0], 0.0);
        assert!(report.passed());
        assert_eq!(report.max_residual(), 0.0);

        let report = verify_difference_equation(|x| zeta(s, x), |_| Ok(0.0), &[-2.0], 1e-12);
        assert!(!report.passed());
        assert!(report.points[0].error.is_some());
    }

    #[test]
    fn krull_solution_satisfies_difference_equation() {
        let f = |x: f64| krull_limit_solve(|t| zeta(4.0, t), 0, x, 1e-10, DEFAULT_N_CAP).map(|r| r.0);
        let report = verify_difference_equation(f, |x| zeta(4.0, x), &[0.5, 1.0, 2.0, 3.0], 1e-6);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn asymptotic_examples() {
        let rows = asymptotic_check(|t| zeta(4.0, t), 0, &[100, 200]).unwrap();
        let ratio = rows[0].1 / rows[1].1;
        assert!((ratio - 8.0).abs() < 0.15, "ratio {ratio}");

        let rows = asymptotic_check(|_| Ok(3.0), 1, &[1, 10, 100]).unwrap();
        assert!(rows.iter().all(|&(_, d)| d == 0.0));

        let rows = asymptotic_check(|t| zeta(5.0, t).map(|z| t * z), 1, &[10, 100, 1000]).unwrap();
        assert!(rows[0].1 > rows[1].1 && rows[1].1 > rows[2].1 && rows[2].1 < 1e-6);
    }
}
