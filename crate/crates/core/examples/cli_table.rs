//! Drives the command-line front end in-process and prints a CSV table.

use weighted_zeta::cli;
use weighted_zeta::zeta_core::CancelToken;

fn main() {
    let token = CancelToken::new();
    let args = ["wzeta", "table", "zplus", "s=6", "a=0:3:1", "x=0..1:0.5"];
    let code = cli::run(args, &token, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
