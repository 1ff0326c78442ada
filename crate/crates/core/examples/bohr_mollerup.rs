//! Solving `f(x+1) - f(x) = Q(x) zeta(s, x)` two ways: by the limit formula
//! and by the closed form built from the weighted series.

use weighted_zeta::bohr_mollerup::{
    asymptotic_check, f_sq_closed, krull_for_problem, verify_difference_equation, DifferenceProblem, DEFAULT_N_CAP,
};
use weighted_zeta::EvalParams;

fn main() -> weighted_zeta::Result<()> {
    let params = EvalParams::default();
    // Q(x) = x^2 - 3, s = 5, eventually convex solutions (p = 1).
    let prob = DifferenceProblem::new(vec![-3.0, 0.0, 1.0], 5.0, 1)?;

    let decay = asymptotic_check(|x| prob.g(x, &params), 1, &[10, 100, 1000])?;
    println!("|Δg(n)|: {decay:?}\n");

    println!("{:>5} {:>22} {:>22} {:>10} {:>9}", "x", "limit", "closed", "|diff|", "n used");
    for x in [0.5, 1.0, 1.5, 2.5] {
        let (limit, diag) = krull_for_problem(&prob, x, 1e-10, DEFAULT_N_CAP, &params)?;
        let closed = f_sq_closed(&prob, x, &params)?;
        println!("{x:>5} {limit:>22.15} {closed:>22.15} {:>10.1e} {:>9}", (limit - closed).abs(), diag.n_used);
    }

    let report =
        verify_difference_equation(|x| f_sq_closed(&prob, x, &params), |x| prob.g(x, &params), &[0.5, 1.0, 3.0], 1e-9);
    println!("\ndifference equation holds: {}, max residual {:.1e}", report.passed(), report.max_residual());
    Ok(())
}
