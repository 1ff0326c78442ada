use num_complex::Complex64;
use weighted_zeta::closed_form::{dirichlet_hurwitz_bernoulli, dirichlet_hurwitz_euler};
use weighted_zeta::oracle::{dirichlet_bernoulli_direct, dirichlet_euler_direct};
use weighted_zeta::EvalParams;

fn main() -> weighted_zeta::Result<()> {
    let params = EvalParams::default();
    println!("sum_n B_(a+1)(n+x)/(n+x)^s and sum_n (-1)^n E_a(n+x)/(n+x)^s, closed form vs 1e5 terms\n");
    for a in 0..=3u32 {
        let s = Complex64::new(a as f64 + 4.0, 0.0);
        for x in [0.0, 0.25] {
            let bc = dirichlet_hurwitz_bernoulli(s, a, x, &params)?;
            let bd = dirichlet_bernoulli_direct(s, a, x, 100_000)?;
            let ec = dirichlet_hurwitz_euler(s, a, x, &params)?;
            let ed = dirichlet_euler_direct(s, a, x, 100_000)?;
            println!(
                "a={a} x={x:<4} bernoulli {:>20.15} (diff {:.1e})   euler {:>20.15} (diff {:.1e})",
                bc.value.re,
                (bc.value - bd.value).norm(),
                ec.value.re,
                (ec.value - ed.value).norm()
            );
        }
    }
    Ok(())
}
