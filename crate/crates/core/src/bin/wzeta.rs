use std::io;
use std::process::ExitCode;

use weighted_zeta::cli;
use weighted_zeta::zeta_core::CancelToken;

fn main() -> ExitCode {
    let token = CancelToken::new();
    let handler_token = token.clone();
    if let Err(e) = ctrlc::set_handler(move || handler_token.cancel()) {
        eprintln!("warning: could not install Ctrl-C handler: {e}");
    }
    let code = cli::run(std::env::args_os(), &token, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
