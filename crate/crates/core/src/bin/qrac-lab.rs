use std::process::ExitCode;

fn main() -> ExitCode {
    qrac_lab::cli::configure_threads();
    let code = qrac_lab::cli::run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    ExitCode::from(code)
}
