use num_complex::Complex64;
use weighted_zeta::oracle::{abs_majorant, abs_partial_sum};
use weighted_zeta::EvalParams;

fn main() -> weighted_zeta::Result<()> {
    let params = EvalParams::default();
    for (s, a, x) in
        [(Complex64::new(4.0, 0.0), 0, 0.0), (Complex64::new(5.5, 3.0), 2, 0.3), (Complex64::new(3.5, 0.0), 1, 1.0)]
    {
        let bound = abs_majorant(s, a, x)?;
        println!("s={s} a={a} x={x}: majorant {bound:.12}");
        for k in [1, 10, 100, 1000, 10_000] {
            let partial = abs_partial_sum(s, a, x, k, &params)?;
            println!("  K={k:<6} sum |terms| = {partial:.12}  slack {:.2e}", bound - partial);
        }
    }
    Ok(())
}
