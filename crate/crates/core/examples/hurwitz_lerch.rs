use num_complex::Complex64;
use weighted_zeta::zeta_core::{hurwitz_zeta, lerch_minus_one, riemann_zeta};
use weighted_zeta::EvalParams;

fn main() -> weighted_zeta::Result<()> {
    let params = EvalParams::default();

    let z2 = riemann_zeta(Complex64::new(2.0, 0.0), &params)?;
    println!("zeta(2)         = {:.15} (+/- {:.1e})", z2.value.re, z2.error_bound);
    println!("pi^2/6          = {:.15}", std::f64::consts::PI.powi(2) / 6.0);

    for x in [0.5, 1.0, 2.5] {
        let h = hurwitz_zeta(Complex64::new(3.0, 0.0), x, &params)?;
        println!("zeta(3, {x:<3})    = {:.15}", h.value.re);
    }

    let s = Complex64::new(2.5, 2.0);
    let h = hurwitz_zeta(s, 0.5, &params)?;
    println!("zeta({s}, 0.5) = {:.12}, terms {}", h.value, h.terms_used);

    // Alternating series sum_{n>=0} (-1)^n (n+x)^(-s); at x = 1 this is the eta function.
    let eta = lerch_minus_one(Complex64::new(2.0, 0.0), 1.0, &params)?;
    println!("eta(2)          = {:.15}  (pi^2/12 = {:.15})", eta.value.re, std::f64::consts::PI.powi(2) / 12.0);
    Ok(())
}
