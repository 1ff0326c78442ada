//! Exact Bernoulli and Euler numbers and polynomials.

use weighted_zeta::exact_poly::{
    bernoulli_number, bernoulli_polynomial, euler_number, euler_polynomial, format_rational, rat,
};

fn main() {
    println!("{:>3}  {:>22}  {:>12}", "n", "B_n", "E_n");
    for n in 0..=12 {
        println!("{n:>3}  {:>22}  {:>12}", format_rational(&bernoulli_number(n)), format_rational(&euler_number(n)));
    }

    let b4 = bernoulli_polynomial(4);
    let e3 = euler_polynomial(3);
    println!("\nB_4(x) = {b4}");
    println!("E_3(x) = {e3}");
    println!("B_4(1/3) = {}", format_rational(&b4.eval(&rat(1, 3))));
    println!("E_3(0.25) = {}", e3.eval_f64(0.25));
}
