use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(nkpr::cli::run(std::env::args_os()))
}
