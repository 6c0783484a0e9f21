use std::io;

fn main() {
    let code = omegaforge::cli::run_cli(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
