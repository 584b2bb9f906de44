use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(sgt::cli::run(std::env::args_os()))
}
