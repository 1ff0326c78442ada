//! Closed forms for `Z±(s, a, x) = sum_{k>=1} (±1)^k (k+x)^a zeta(s, k+x)`,
//! checked against brute-force summation.

use num_complex::Complex64;
use weighted_zeta::closed_form::{weighted_series_closed, z_plus_riemann, Sign, WeightedSeriesQuery};
use weighted_zeta::oracle::{best_effort, z_oracle};
use weighted_zeta::zeta_core::riemann_zeta;
use weighted_zeta::EvalParams;

fn main() -> weighted_zeta::Result<()> {
    let params = EvalParams::default();
    let oracle_params = EvalParams::default().with_max_terms(2_000_000);

    let s = Complex64::new(4.0, 0.0);
    let z = weighted_series_closed(&WeightedSeriesQuery::plus(s, 0, 0.0)?, &params)?;
    let zeta3 = riemann_zeta(Complex64::new(3.0, 0.0), &params)?;
    println!("sum_k zeta(4, k) = {:.15}, zeta(3) = {:.15}", z.value.re, zeta3.value.re);

    println!("\n{:<6} {:>3} {:>4} {:>40} {:>12}", "sign", "a", "x", "closed form", "|diff|");
    for sign in [Sign::Plus, Sign::Minus] {
        for (a, x, s) in [
            (0, 0.5, Complex64::new(3.0, 0.0)),
            (2, 1.0, Complex64::new(5.5, 1.5)),
            (3, 0.3, Complex64::new(7.0, -2.0)),
        ] {
            let closed = weighted_series_closed(&WeightedSeriesQuery::new(sign, s, a, x)?, &params)?;
            let brute = best_effort(z_oracle(sign, s, a, x, &oracle_params))?;
            println!(
                "{sign:<6} {a:>3} {x:>4} {:>40} {:>12.2e}  (oracle bound {:.1e})",
                format!("{:.14}", closed.value),
                (closed.value - brute.value).norm(),
                brute.error_bound
            );
        }
    }

    let r = z_plus_riemann(Complex64::new(6.0, 0.0), 2, &params)?;
    println!("\nZ+(6, 2, 0) via Riemann zeta values: {:.15}", r.value.re);
    Ok(())
}
